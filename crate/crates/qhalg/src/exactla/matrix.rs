//! Dense matrices over an exact field with deterministic elimination.

use std::fmt;

use thiserror::Error;

use super::scalar::{Field, Scalar};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("dimension mismatch: {0}")]
pub struct DimMismatch(pub String);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Result of reduction to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    pub rref: Matrix,
    pub pivot_cols: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, field, data }
    }

    /// Builds a matrix with the given shape from a row-major entry list.
    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, field, data }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect(),
        )
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(field: Field, len: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), len);
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Scalar) {
        let k = i * self.cols + j;
        self.data[k] = &self.data[k] + v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut r = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        r.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![self.field.zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o = &*o + &(a * x);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            m.set_block(0, off, p);
            off += p.cols;
        }
        m
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            m.set_block(off, 0, p);
            off += p.rows;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                let x = b.get(i, j);
                if !x.is_zero() || !self.get(r0 + i, c0 + j).is_zero() {
                    self.set(r0 + i, c0 + j, x.clone());
                }
            }
        }
    }

    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = self.get(r0 + i, c0 + j);
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                let x = self.get(i, j);
                if !x.is_zero() {
                    m.set(i, jj, x.clone());
                }
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    m.set(ii, j, x.clone());
                }
            }
        }
        m
    }

    /// Reduced row echelon form; pivots chosen as the leftmost column with a
    /// nonzero entry, taking the first such row.
    pub fn rank_rref(&self) -> Rref {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivot_cols = reduce_rows(&mut rows, self.cols);
        let rank = pivot_cols.len();
        let rref = if self.cols == 0 {
            Matrix::zeros(self.field, self.rows, 0)
        } else {
            Matrix::from_rows(self.field, rows)
        };
        Rref { rank, rref, pivot_cols }
    }

    pub fn rank(&self) -> usize {
        self.rank_rref().rank
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { rref, pivot_cols, .. } = self.rank_rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivot_cols.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| is_pivot[c].is_none()).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, self.field.one());
            for (r, &c) in pivot_cols.iter().enumerate() {
                let x = rref.get(r, f);
                if !x.is_zero() {
                    k.set(c, j, -x);
                }
            }
        }
        k
    }

    /// Solves `self * x = b`; free variables are set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>, DimMismatch> {
        if b.rows != self.rows {
            return Err(DimMismatch(format!("{} rows vs {} rows", self.rows, b.rows)));
        }
        let aug = Matrix::hstack(self.field, self.rows, &[self, b]);
        let Rref { rref, pivot_cols, .. } = aug.rank_rref();
        if pivot_cols.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (r, &c) in pivot_cols.iter().enumerate() {
            for j in 0..b.cols {
                let v = rref.get(r, self.cols + j);
                if !v.is_zero() {
                    x.set(c, j, v.clone());
                }
            }
        }
        Ok(Some(x))
    }

    pub fn solve_vec(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let bm = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        self.solve(&bm).ok().flatten().map(|x| x.column(0))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.field, self.rows)).ok()??;
        (self.mul(&x) == Matrix::identity(self.field, self.rows)).then_some(x)
    }

    /// Basis (as columns) of the column space, in canonical form.
    pub fn column_space(&self) -> Matrix {
        let Rref { rref, rank, .. } = self.transpose().rank_rref();
        rref.block(0, rank, 0, self.rows).transpose()
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.get(i, i);
        }
        t
    }

    pub fn pow(&self, e: usize) -> Matrix {
        let mut r = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }
}

/// In-place RREF of a row list; returns pivot columns.
pub fn reduce_rows(rows: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (prow, rest) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(rest.iter_mut()) {
            let f = other[c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..ncols {
                let pj = &prow[j];
                if !pj.is_zero() {
                    other[j] = &other[j] - &(&f * pj);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

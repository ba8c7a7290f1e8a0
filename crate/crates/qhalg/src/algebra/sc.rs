//! Algebras given by structure constants, and recovery of a quiver
//! presentation from them.

use std::collections::HashMap;

use super::{AlgebraPresentation, Arrow, SVec, Term};
use crate::error::{Error, Result};
use crate::exactla::{reduce_rows, Field, Matrix, Scalar};

/// A graded algebra with a homogeneous basis; `elems[x] = (src, tgt, degree)`
/// and `mul[x][y]` is the product `x ∘ y`.
#[derive(Clone, Debug)]
pub struct ScAlgebra {
    pub field: Field,
    pub labels: Vec<String>,
    pub elems: Vec<(usize, usize, i64)>,
    /// Basis index of the idempotent at each vertex.
    pub idempotents: Vec<usize>,
    pub mul: Vec<Vec<SVec>>,
}

impl ScAlgebra {
    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn min_degree(&self) -> i64 {
        self.elems.iter().map(|e| e.2).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> i64 {
        self.elems.iter().map(|e| e.2).max().unwrap_or(0)
    }

    pub fn in_degree(&self, d: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&x| self.elems[x].2 == d).collect()
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.mul[i][j] {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// The opposite algebra on the same basis.
    pub fn opposite(&self) -> ScAlgebra {
        let n = self.dim();
        ScAlgebra {
            field: self.field,
            labels: self.labels.clone(),
            elems: self.elems.iter().map(|&(s, t, d)| (t, s, d)).collect(),
            idempotents: self.idempotents.clone(),
            mul: (0..n).map(|x| (0..n).map(|y| self.mul[y][x].clone()).collect()).collect(),
        }
    }

    /// Checks that the degree-0 part is spanned by orthogonal vertex
    /// idempotents and that every basis element sits in its declared block.
    pub fn check_basic(&self) -> Result<()> {
        let f = self.field;
        let zero_deg = self.in_degree(0);
        if zero_deg.len() != self.n_vertices() || !zero_deg.iter().all(|x| self.idempotents.contains(x)) {
            return Err(Error::NotBasic(format!(
                "degree-0 part has dimension {} for {} vertices",
                zero_deg.len(),
                self.n_vertices()
            )));
        }
        for (v, &e) in self.idempotents.iter().enumerate() {
            if self.elems[e] != (v, v, 0) {
                return Err(Error::NotBasic(format!("idempotent {v} misplaced")));
            }
            for (w, &e2) in self.idempotents.iter().enumerate() {
                let p = &self.mul[e][e2];
                let ok = if v == w { p.len() == 1 && p[0].0 == e && p[0].1 == f.one() } else { p.is_empty() };
                if !ok {
                    return Err(Error::NotBasic("vertex idempotents are not orthogonal".into()));
                }
            }
        }
        for x in 0..self.dim() {
            let (s, t, _) = self.elems[x];
            let unit = vec![(x, f.one())];
            if self.mul[self.idempotents[t]][x] != unit || self.mul[x][self.idempotents[s]] != unit {
                return Err(Error::NotBasic(format!("basis element {x} is not in its block")));
            }
        }
        Ok(())
    }

    fn eval_path(&self, arrows: &[SVec], path: &[usize]) -> Vec<Scalar> {
        let mut v = dense(self.field, self.dim(), &arrows[path[0]]);
        for &a in &path[1..] {
            v = self.multiply(&dense(self.field, self.dim(), &arrows[a]), &v);
        }
        v
    }
}

fn dense(f: Field, n: usize, v: &SVec) -> Vec<Scalar> {
    let mut out = vec![f.zero(); n];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// Result of extraction: the presentation and, for each arrow, the element
/// of the input algebra it names.
#[derive(Clone, Debug)]
pub struct Extracted {
    pub presentation: AlgebraPresentation,
    pub arrow_elements: Vec<SVec>,
}

/// Quiver and relations for a basic positively graded algebra. Arrows are a
/// complement of (rad A)² in each degree; relations are the new kernel
/// elements of the surjection from the path algebra, degree by degree.
pub fn presentation_extract(a: &ScAlgebra, arrow_prefix: &str) -> Result<Extracted> {
    let f = a.field;
    if a.min_degree() < 0 {
        return Err(Error::NotPositivelyGraded(format!("component in degree {}", a.min_degree())));
    }
    a.check_basic()?;
    let top = a.max_degree();
    let n = a.dim();

    // Arrows.
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut arrow_elements: Vec<SVec> = Vec::new();
    for d in 1..=top {
        let comp = a.in_degree(d);
        if comp.is_empty() {
            continue;
        }
        let pos: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let (dx, dy) = (a.elems[x].2, a.elems[y].2);
                if dx >= 1 && dy >= 1 && dx + dy == d && !a.mul[x][y].is_empty() {
                    let mut row = vec![f.zero(); comp.len()];
                    for (k, c) in &a.mul[x][y] {
                        row[pos[k]] = c.clone();
                    }
                    rows.push(row);
                }
            }
        }
        let pivots = reduce_rows(&mut rows, comp.len());
        for (i, &x) in comp.iter().enumerate() {
            if !pivots.contains(&i) {
                let (s, t, _) = a.elems[x];
                arrows.push(Arrow {
                    name: format!("{arrow_prefix}{}", arrows.len() + 1),
                    src: s,
                    tgt: t,
                    degree: d,
                });
                arrow_elements.push(vec![(x, f.one())]);
            }
        }
    }

    // Relations, degree by degree up to top + max arrow degree.
    let max_arrow = arrows.iter().map(|a| a.degree).max().unwrap_or(0);
    let mut paths: Vec<Vec<Vec<usize>>> = vec![Vec::new(); (top + max_arrow + 1) as usize];
    let mut kernels: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); paths.len()];
    let mut relations = Vec::new();
    for d in 1..paths.len() {
        let mut here = Vec::new();
        for (ai, ar) in arrows.iter().enumerate() {
            let ad = ar.degree as usize;
            if ad == d {
                here.push(vec![ai]);
            } else if ad < d {
                for p in &paths[d - ad] {
                    let end = arrows[*p.last().unwrap()].tgt;
                    if end == ar.src {
                        let mut q = p.clone();
                        q.push(ai);
                        here.push(q);
                    }
                }
            }
        }
        paths[d] = here;
        let index: HashMap<&Vec<usize>, usize> = paths[d].iter().enumerate().map(|(i, p)| (p, i)).collect();
        let np = paths[d].len();
        if np == 0 {
            continue;
        }
        // Evaluation matrix: columns are path images.
        let cols: Vec<Vec<Scalar>> = paths[d].iter().map(|p| a.eval_path(&arrow_elements, p)).collect();
        let ev = Matrix::from_columns(f, n, &cols);
        let ker = ev.kernel_basis();
        // Span of the ideal generated in lower degrees: arrow·K and K·arrow.
        let mut ideal: Vec<Vec<Scalar>> = Vec::new();
        for (ai, ar) in arrows.iter().enumerate() {
            let ad = ar.degree as usize;
            if ad >= d {
                continue;
            }
            for k in &kernels[d - ad] {
                for (before, after) in [(vec![], vec![ai]), (vec![ai], vec![])] {
                    let mut row = vec![f.zero(); np];
                    let mut any = false;
                    for (pi, c) in k.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut q: Vec<usize> = before.clone();
                        q.extend(&paths[d - ad][pi]);
                        q.extend(&after);
                        if let Some(&j) = index.get(&q) {
                            row[j] = c.clone();
                            any = true;
                        }
                    }
                    if any {
                        ideal.push(row);
                    }
                }
            }
        }
        let mut span = ideal;
        let mut rank = reduce_rows(&mut span, np).len();
        span.truncate(rank);
        let mut kd = Vec::new();
        for j in 0..ker.cols() {
            let k = ker.column(j);
            let mut trial = span.clone();
            trial.push(k.clone());
            let r = reduce_rows(&mut trial, np).len();
            if r > rank {
                rank = r;
                trial.truncate(r);
                span = trial;
                relations.push(
                    k.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(pi, c)| Term { coeff: c.clone(), path: paths[d][pi].clone() })
                        .collect(),
                );
            }
            kd.push(k);
        }
        kernels[d] = kd;
    }
    Ok(Extracted {
        presentation: AlgebraPresentation {
            field: f,
            vertices: a.labels.clone(),
            arrows,
            relations,
        },
        arrow_elements,
    })
}

/// Checks that sending arrow `k` of `b` to `images[k]` in `a` extends to a
/// graded algebra isomorphism `b → a` (bijective on bases, multiplicative).
pub fn certify_iso_to_sc(b: &super::GradedAlgebra, a: &ScAlgebra, images: &[SVec], vmap: &[usize]) -> bool {
    let f = a.field;
    if b.dim() != a.dim() {
        return false;
    }
    let n = b.dim();
    let mut phi: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for e in b.basis() {
        if e.path.is_empty() {
            phi.push(a.unit_vector(a.idempotents[vmap[e.src]]));
        } else {
            phi.push(a.eval_path(images, &e.path));
        }
    }
    let m = Matrix::from_columns(f, n, &phi);
    if m.rank() != n {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            let xy = dense(f, n, &b.mul_basis(x, y));
            let lhs = m.mul_vec(&xy);
            if lhs != a.multiply(&phi[x], &phi[y]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::corpus;

    #[test]
    fn round_trip_every_bundled_algebra() {
        for name in corpus::NAMES {
            let a = corpus::load(name);
            let sc = a.to_sc();
            let ex = presentation_extract(&sc, "x").unwrap();
            let b = build_algebra(&ex.presentation).unwrap();
            assert_eq!(b.dims(), a.dims(), "{name}");
            let vmap: Vec<usize> = (0..a.n_vertices()).collect();
            assert!(certify_iso_to_sc(&b, &sc, &ex.arrow_elements, &vmap), "{name}");
        }
    }

    #[test]
    fn non_basic_degree_zero_rejected() {
        let f = Field::Q;
        // k × k concentrated at one vertex is not basic over one vertex.
        let sc = ScAlgebra {
            field: f,
            labels: vec!["1".into()],
            elems: vec![(0, 0, 0), (0, 0, 0)],
            idempotents: vec![0],
            mul: vec![vec![vec![(0, f.one())], vec![]], vec![vec![], vec![(1, f.one())]]],
        };
        assert!(matches!(presentation_extract(&sc, "x"), Err(Error::NotBasic(_))));
    }
}

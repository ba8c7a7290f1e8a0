//! Finite-dimensional graded left modules, stored as graded quiver
//! representations.
//!
//! Grading shift: `(M⟨j⟩)_d = M_{d+j}`, so `L⟨−1⟩` sits in degree 1. A map
//! `M → N⟨j⟩` of degree 0 sends `M_{v,d}` into `N_{v,d+j}`.

mod decompose;
mod hom;
mod loewy;
mod sub;

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};

pub use decompose::{decompose, iso_shift_test, Decomposition, Piece};
pub use hom::{hom_at, hom_graded, hom_shift_range, HomSpace};
pub use loewy::{loewy_data, radical, socle, LoewyData};
pub use sub::{
    cokernel, generated_submodule, image, kernel, quotient, sub_module, trace_of_projectives,
    trace_submodule, GradedSubspace, Quotient, Sub,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub vertex: usize,
    pub degree: i64,
    pub dim: usize,
    pub offset: usize,
}

/// Block of an arrow action: target slot and matrix (target dim × source dim).
type Block = Option<(usize, Matrix)>;

#[derive(Clone, Debug)]
pub struct GradedModule {
    alg: Arc<GradedAlgebra>,
    slots: Vec<Slot>,
    index: BTreeMap<(usize, i64), usize>,
    total: usize,
    /// `blocks[a][s]`: action of arrow `a` on slot `s`.
    blocks: Vec<Vec<Block>>,
}

impl PartialEq for GradedModule {
    fn eq(&self, o: &GradedModule) -> bool {
        self.alg.same_as(&o.alg) && self.slots == o.slots && self.blocks == o.blocks
    }
}

impl GradedModule {
    /// Builds a module from slot dimensions `(vertex, degree, dim)` and arrow
    /// blocks keyed by `(arrow, source degree)`; missing blocks are zero.
    /// Relations are checked.
    pub fn from_blocks(
        alg: &Arc<GradedAlgebra>,
        slot_dims: &[(usize, i64, usize)],
        blocks: Vec<(usize, i64, Matrix)>,
    ) -> Result<GradedModule> {
        let m = GradedModule::from_blocks_unchecked(alg, slot_dims, blocks)?;
        if let Some(msg) = m.relation_violation() {
            return Err(Error::Invariant(format!("module violates a relation: {msg}")));
        }
        Ok(m)
    }

    /// As [`from_blocks`](Self::from_blocks) without the relation check; the
    /// result is a representation of the quiver only.
    pub fn from_blocks_unchecked(
        alg: &Arc<GradedAlgebra>,
        slot_dims: &[(usize, i64, usize)],
        blocks: Vec<(usize, i64, Matrix)>,
    ) -> Result<GradedModule> {
        let mut dims: BTreeMap<(i64, usize), usize> = BTreeMap::new();
        for &(v, d, k) in slot_dims {
            if v >= alg.n_vertices() {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            if k > 0 && dims.insert((d, v), k).is_some() {
                return Err(Error::Invariant(format!("slot ({v},{d}) given twice")));
            }
        }
        let mut slots = Vec::new();
        let mut index = BTreeMap::new();
        let mut off = 0;
        for (&(d, v), &k) in &dims {
            index.insert((v, d), slots.len());
            slots.push(Slot { vertex: v, degree: d, dim: k, offset: off });
            off += k;
        }
        let f = alg.field();
        let na = alg.arrows().len();
        let mut bl: Vec<Vec<Block>> = vec![vec![None; slots.len()]; na];
        for (a, d, m) in blocks {
            let ar = &alg.arrows()[a];
            let (Some(&s), t) = (index.get(&(ar.src, d)), index.get(&(ar.tgt, d + ar.degree))) else {
                if m.is_zero() {
                    continue;
                }
                return Err(Error::Invariant(format!("block for arrow {} from empty slot", ar.name)));
            };
            let Some(&t) = t else {
                if m.is_zero() {
                    continue;
                }
                return Err(Error::Invariant(format!("block for arrow {} into empty slot", ar.name)));
            };
            if m.rows() != slots[t].dim || m.cols() != slots[s].dim {
                return Err(Error::Invariant(format!("block shape mismatch for arrow {}", ar.name)));
            }
            bl[a][s] = Some((t, m));
        }
        // Fill absent blocks with zero matrices so every composable pair is present.
        for (a, ar) in alg.arrows().iter().enumerate() {
            for (s, sl) in slots.iter().enumerate() {
                if sl.vertex != ar.src || bl[a][s].is_some() {
                    continue;
                }
                if let Some(&t) = index.get(&(ar.tgt, sl.degree + ar.degree)) {
                    bl[a][s] = Some((t, Matrix::zeros(f, slots[t].dim, sl.dim)));
                }
            }
        }
        Ok(GradedModule { alg: alg.clone(), slots, index, total: off, blocks: bl })
    }

    pub fn zero(alg: &Arc<GradedAlgebra>) -> GradedModule {
        GradedModule::from_blocks_unchecked(alg, &[], vec![]).unwrap()
    }

    pub fn alg(&self) -> &Arc<GradedAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn total_dim(&self) -> usize {
        self.total
    }

    pub fn is_zero(&self) -> bool {
        self.total == 0
    }

    pub fn slot_index(&self, v: usize, d: i64) -> Option<usize> {
        self.index.get(&(v, d)).copied()
    }

    pub fn slot_dim(&self, v: usize, d: i64) -> usize {
        self.slot_index(v, d).map_or(0, |s| self.slots[s].dim)
    }

    pub fn range(&self, s: usize) -> Range<usize> {
        let sl = &self.slots[s];
        sl.offset..sl.offset + sl.dim
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.slots.iter().map(|s| s.degree).min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.slots.iter().map(|s| s.degree).max()
    }

    /// Total dimension of `e_v M`.
    pub fn vertex_dim(&self, v: usize) -> usize {
        self.slots.iter().filter(|s| s.vertex == v).map(|s| s.dim).sum()
    }

    /// Graded dimension vector as `(vertex, degree) → dim`.
    pub fn dim_vector(&self) -> BTreeMap<(usize, i64), usize> {
        self.slots.iter().map(|s| ((s.vertex, s.degree), s.dim)).collect()
    }

    pub fn block(&self, a: usize, s: usize) -> Option<(usize, &Matrix)> {
        self.blocks[a][s].as_ref().map(|(t, m)| (*t, m))
    }

    /// Action of arrow `a` as a `total × total` matrix.
    pub fn arrow_matrix(&self, a: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.total, self.total);
        for (s, b) in self.blocks[a].iter().enumerate() {
            if let Some((t, blk)) = b {
                m.set_block(self.slots[*t].offset, self.slots[s].offset, blk);
            }
        }
        m
    }

    /// Action of a path (first-to-last) as a `total × total` matrix.
    pub fn path_matrix(&self, path: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.total);
        for &a in path {
            m = self.arrow_matrix(a).mul(&m);
        }
        m
    }

    /// Action of a basis element of the algebra.
    pub fn basis_action(&self, b: usize) -> Matrix {
        let e = &self.alg.basis()[b];
        if e.path.is_empty() {
            return self.idempotent(e.src);
        }
        self.path_matrix(&e.path)
    }

    pub fn idempotent(&self, v: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.total, self.total);
        for (s, sl) in self.slots.iter().enumerate() {
            if sl.vertex == v {
                for i in self.range(s) {
                    m.set(i, i, self.field().one());
                }
            }
        }
        m
    }

    /// Describes the first relation that fails, if any.
    pub fn relation_violation(&self) -> Option<String> {
        let p = self.alg.presentation();
        let f = self.field();
        for rel in &p.relations {
            let Ok((src, tgt, deg)) = p.path_ends(&rel[0].path) else { continue };
            for (s, sl) in self.slots.iter().enumerate() {
                if sl.vertex != src {
                    continue;
                }
                let Some(t) = self.slot_index(tgt, sl.degree + deg) else { continue };
                let mut acc = Matrix::zeros(f, self.slots[t].dim, sl.dim);
                for term in rel {
                    if let Some(m) = self.path_block(&term.path, s) {
                        acc = acc.add(&m.scale(&(&f.zero() + &term.coeff)));
                    }
                }
                if !acc.is_zero() {
                    let names: Vec<String> = rel
                        .iter()
                        .map(|t| format!("{}*{}", t.coeff, p.path_name(&t.path)))
                        .collect();
                    return Some(format!("{} at ({}, {})", names.join(" + "), self.alg.label(src), sl.degree));
                }
            }
        }
        None
    }

    /// Applies arrow `a` to a vector.
    pub fn act_arrow_vec(&self, a: usize, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![f.zero(); self.total];
        for (s, b) in self.blocks[a].iter().enumerate() {
            let Some((t, blk)) = b else { continue };
            let r = self.range(s);
            if v[r.clone()].iter().all(Scalar::is_zero) {
                continue;
            }
            let img = blk.mul_vec(&v[r]);
            let off = self.slots[*t].offset;
            for (k, x) in img.into_iter().enumerate() {
                if !x.is_zero() {
                    out[off + k] = &out[off + k] + &x;
                }
            }
        }
        out
    }

    /// Applies a path (first-to-last) to a vector; the empty path at vertex
    /// `v` is the idempotent `e_v`.
    pub fn act_basis_vec(&self, b: usize, v: &[Scalar]) -> Vec<Scalar> {
        let e = &self.alg.basis()[b];
        if e.path.is_empty() {
            let mut out = vec![self.field().zero(); self.total];
            for (s, sl) in self.slots.iter().enumerate() {
                if sl.vertex == e.src {
                    for k in self.range(s) {
                        out[k] = v[k].clone();
                    }
                }
            }
            return out;
        }
        let mut cur = v.to_vec();
        for &a in &e.path {
            cur = self.act_arrow_vec(a, &cur);
        }
        cur
    }

    /// Block of a path starting at slot `s`, or None if it leaves the module.
    pub fn path_block(&self, path: &[usize], s: usize) -> Option<Matrix> {
        let mut cur = s;
        let mut m = Matrix::identity(self.field(), self.slots[s].dim);
        for &a in path {
            let (t, b) = self.block(a, cur)?;
            m = b.mul(&m);
            cur = t;
        }
        Some(m)
    }

    /// The shifted module `M⟨j⟩`, with the same coordinates.
    pub fn shift(&self, j: i64) -> GradedModule {
        let mut out = self.clone();
        for s in out.slots.iter_mut() {
            s.degree -= j;
        }
        out.index = out.slots.iter().enumerate().map(|(i, s)| ((s.vertex, s.degree), i)).collect();
        out
    }

    /// Homogeneous components of a vector, one per nonzero slot part.
    pub fn slot_part(&self, v: &[Scalar], s: usize) -> Vec<Scalar> {
        v[self.range(s)].to_vec()
    }

    /// Restricts to the same module viewed over an algebra with an equal
    /// presentation.
    pub fn over(&self, alg: &Arc<GradedAlgebra>) -> GradedModule {
        assert!(self.alg.same_as(alg), "presentations differ");
        let mut out = self.clone();
        out.alg = alg.clone();
        out
    }
}

/// A degree-0 map `source → target⟨shift⟩`, as a `target × source` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub shift: i64,
    pub mat: Matrix,
}

impl ModuleMap {
    pub fn zero(src: &GradedModule, tgt: &GradedModule, shift: i64) -> ModuleMap {
        ModuleMap { shift, mat: Matrix::zeros(src.field(), tgt.total_dim(), src.total_dim()) }
    }

    pub fn identity(m: &GradedModule) -> ModuleMap {
        ModuleMap { shift: 0, mat: Matrix::identity(m.field(), m.total_dim()) }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        ModuleMap { shift: self.shift + first.shift, mat: self.mat.mul(&first.mat) }
    }

    pub fn add(&self, o: &ModuleMap) -> ModuleMap {
        assert_eq!(self.shift, o.shift, "adding maps of different degrees");
        ModuleMap { shift: self.shift, mat: self.mat.add(&o.mat) }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap { shift: self.shift, mat: self.mat.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }

    /// Checks homogeneity and commutation with every arrow.
    pub fn is_homomorphism(&self, src: &GradedModule, tgt: &GradedModule) -> bool {
        if !src.alg.same_as(&tgt.alg)
            || self.mat.rows() != tgt.total_dim()
            || self.mat.cols() != src.total_dim()
        {
            return false;
        }
        for sl in &src.slots {
            let t = tgt.slot_index(sl.vertex, sl.degree + self.shift);
            for (t2, tl) in tgt.slots.iter().enumerate() {
                if Some(t2) == t {
                    continue;
                }
                if !self.mat.block(tl.offset, tl.dim, sl.offset, sl.dim).is_zero() {
                    return false;
                }
            }
        }
        for a in 0..src.alg.arrows().len() {
            let l = self.mat.mul(&src.arrow_matrix(a));
            let r = tgt.arrow_matrix(a).mul(&self.mat);
            if l != r {
                return false;
            }
        }
        true
    }

    /// Block from source slot `s` into the matching target slot.
    pub fn slot_block(&self, src: &GradedModule, tgt: &GradedModule, s: usize) -> Option<(usize, Matrix)> {
        let sl = src.slots[s];
        let t = tgt.slot_index(sl.vertex, sl.degree + self.shift)?;
        let tl = tgt.slots[t];
        Some((t, self.mat.block(tl.offset, tl.dim, sl.offset, sl.dim)))
    }
}

pub fn check_same_algebra(m: &GradedModule, n: &GradedModule) -> Result<()> {
    if m.alg.same_as(&n.alg) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// Direct sum with inclusion and projection matrices per summand.
pub struct DirectSum {
    pub module: GradedModule,
    pub inclusions: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum(parts: &[&GradedModule]) -> Result<DirectSum> {
    let Some(first) = parts.first() else {
        return Err(Error::Invariant("empty direct sum".into()));
    };
    let alg = first.alg.clone();
    for p in parts {
        check_same_algebra(first, p)?;
    }
    let f = alg.field();
    let mut dims: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    // Offset of each summand's slot within the combined slot.
    let mut local: Vec<Vec<usize>> = Vec::new();
    for p in parts {
        let mut l = Vec::new();
        for sl in &p.slots {
            let e = dims.entry((sl.vertex, sl.degree)).or_insert(0);
            l.push(*e);
            *e += sl.dim;
        }
        local.push(l);
    }
    let slot_dims: Vec<(usize, i64, usize)> = dims.iter().map(|(&(v, d), &k)| (v, d, k)).collect();
    let mut skeleton = GradedModule::from_blocks_unchecked(&alg, &slot_dims, vec![])?;
    let total = skeleton.total;
    let mut incl = Vec::new();
    for (pi, p) in parts.iter().enumerate() {
        let mut m = Matrix::zeros(f, total, p.total);
        for (s, sl) in p.slots.iter().enumerate() {
            let t = skeleton.index[&(sl.vertex, sl.degree)];
            let row0 = skeleton.slots[t].offset + local[pi][s];
            for k in 0..sl.dim {
                m.set(row0 + k, sl.offset + k, f.one());
            }
        }
        incl.push(m);
    }
    for a in 0..alg.arrows().len() {
        let mut full = Matrix::zeros(f, total, total);
        for (p, i) in parts.iter().zip(&incl) {
            full = full.add(&i.mul(&p.arrow_matrix(a)).mul(&i.transpose()));
        }
        for s in 0..skeleton.slots.len() {
            if let Some((t, _)) = skeleton.blocks[a][s].clone() {
                let (ts, ss) = (skeleton.slots[t], skeleton.slots[s]);
                skeleton.blocks[a][s] = Some((t, full.block(ts.offset, ts.dim, ss.offset, ss.dim)));
            }
        }
    }
    let projections = incl.iter().map(|i| ModuleMap { shift: 0, mat: i.transpose() }).collect();
    Ok(DirectSum {
        module: skeleton,
        inclusions: incl.into_iter().map(|mat| ModuleMap { shift: 0, mat }).collect(),
        projections,
    })
}

/// Simple module L(i), concentrated in degree 0.
pub fn simple(alg: &Arc<GradedAlgebra>, i: usize) -> Result<GradedModule> {
    if i >= alg.n_vertices() {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    GradedModule::from_blocks(alg, &[(i, 0, 1)], vec![])
}

/// Indecomposable projective P(i) = A e_i with top in degree 0. Coordinates
/// are the basis elements of A with source i, in basis order.
pub fn projective(alg: &Arc<GradedAlgebra>, i: usize) -> Result<GradedModule> {
    if i >= alg.n_vertices() {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    let (m, _) = projective_with_basis(alg, i);
    Ok(m)
}

/// P(i) together with, for each module coordinate, the algebra basis index.
pub fn projective_with_basis(alg: &Arc<GradedAlgebra>, i: usize) -> (GradedModule, Vec<usize>) {
    let f = alg.field();
    let elems: Vec<usize> = (0..alg.dim()).filter(|&b| alg.basis()[b].src == i).collect();
    let mut dims: BTreeMap<(usize, i64), Vec<usize>> = BTreeMap::new();
    for &b in &elems {
        let e = &alg.basis()[b];
        dims.entry((e.tgt, e.degree)).or_default().push(b);
    }
    let slot_dims: Vec<(usize, i64, usize)> = dims.iter().map(|(&(v, d), bs)| (v, d, bs.len())).collect();
    let mut blocks = Vec::new();
    for (a, ar) in alg.arrows().iter().enumerate() {
        for (&(v, d), bs) in &dims {
            if v != ar.src {
                continue;
            }
            let Some(tb) = dims.get(&(ar.tgt, d + ar.degree)) else { continue };
            let mut m = Matrix::zeros(f, tb.len(), bs.len());
            for (c, &b) in bs.iter().enumerate() {
                for (k, x) in alg.lmul_basis(a, b) {
                    let r = tb.iter().position(|y| y == k).expect("graded product");
                    m.set(r, c, x.clone());
                }
            }
            blocks.push((a, d, m));
        }
    }
    let m = GradedModule::from_blocks(alg, &slot_dims, blocks).expect("projective satisfies relations");
    // Coordinates follow slot order, which is (degree, vertex) then basis order.
    let mut coords = Vec::new();
    for sl in m.slots() {
        coords.extend(dims[&(sl.vertex, sl.degree)].iter().copied());
    }
    (m, coords)
}

/// Vector-space dual over the opposite algebra: degree d goes to −d and
/// each arrow acts by the transpose.
pub fn dualize(m: &GradedModule) -> GradedModule {
    dualize_over(m, &m.alg.opposite())
}

pub fn dualize_over(m: &GradedModule, opp: &Arc<GradedAlgebra>) -> GradedModule {
    let slot_dims: Vec<(usize, i64, usize)> = m.slots.iter().map(|s| (s.vertex, -s.degree, s.dim)).collect();
    let mut blocks = Vec::new();
    for (a, ar) in m.alg.arrows().iter().enumerate() {
        for (s, sl) in m.slots.iter().enumerate() {
            if sl.vertex != ar.src {
                continue;
            }
            if let Some((_, b)) = m.block(a, s) {
                // Opposite arrow a goes tgt → src; its source degree is −(d+e).
                blocks.push((a, -(sl.degree + ar.degree), b.transpose()));
            }
        }
    }
    GradedModule::from_blocks(opp, &slot_dims, blocks).expect("dual of a module is a module")
}

/// Coordinate permutation from `m` to `dualize(dualize(m))`, which is the
/// identity because slot order is restored.
pub fn injective(alg: &Arc<GradedAlgebra>, i: usize) -> Result<GradedModule> {
    let op = alg.opposite();
    let p = projective(&op, i)?;
    Ok(dualize_over(&p, alg))
}

/// Dual of a map `f: M → N⟨j⟩`, as a map `N^* → M^*⟨j⟩`.
pub fn dual_map(m: &GradedModule, n: &GradedModule, f: &ModuleMap) -> ModuleMap {
    // Dual slot order differs from the original; map coordinates through it.
    let pm = dual_permutation(m);
    let pn = dual_permutation(n);
    let t = f.mat.transpose();
    let mut out = Matrix::zeros(m.field(), m.total, n.total);
    for i in 0..m.total {
        for j in 0..n.total {
            let x = t.get(i, j);
            if !x.is_zero() {
                out.set(pm[i], pn[j], x.clone());
            }
        }
    }
    ModuleMap { shift: f.shift, mat: out }
}

/// Position of each coordinate of `m` inside `dualize(m)`.
pub fn dual_permutation(m: &GradedModule) -> Vec<usize> {
    let mut order: Vec<(i64, usize, usize)> = m.slots.iter().enumerate().map(|(s, sl)| (-sl.degree, sl.vertex, s)).collect();
    order.sort();
    let mut pos = vec![0; m.total];
    let mut off = 0;
    for (_, _, s) in order {
        for k in m.range(s) {
            pos[k] = off;
            off += 1;
        }
    }
    pos
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn simple_modules_are_one_dimensional() {
        for name in corpus::NAMES {
            let a = corpus::load(name);
            for i in 0..a.n_vertices() {
                assert_eq!(simple(&a, i).unwrap().total_dim(), 1);
            }
        }
    }

    #[test]
    fn a3_projective_dims() {
        let a = corpus::load("a3_line");
        let d: Vec<usize> = (0..3).map(|i| projective(&a, i).unwrap().total_dim()).collect();
        assert_eq!(d, vec![1, 2, 3]);
    }

    #[test]
    fn sl2_projective_and_injective() {
        let a = corpus::load("sl2_block");
        let p1 = projective(&a, 0).unwrap();
        let dv: Vec<(usize, i64, usize)> = p1.slots().iter().map(|s| (s.vertex, s.degree, s.dim)).collect();
        assert_eq!(dv, vec![(0, 0, 1), (1, 1, 1), (0, 2, 1)]);
        let i2 = injective(&a, 1).unwrap();
        assert_eq!(i2.total_dim(), 2);
        assert_eq!(i2.slot_dim(1, 0), 1);
    }

    #[test]
    fn unknown_vertex_is_an_error() {
        let a = corpus::load("k1");
        assert!(matches!(simple(&a, 3), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn dualize_is_an_involution() {
        for name in corpus::NAMES {
            let a = corpus::load(name);
            for i in 0..a.n_vertices() {
                let p = projective(&a, i).unwrap();
                let dd = dualize_over(&dualize(&p), &a);
                assert_eq!(dd, p, "{name} P({i})");
                let l = simple(&a, i).unwrap();
                assert_eq!(dualize(&l), simple(&a.opposite(), i).unwrap());
                assert_eq!(dualize(&p), injective(&a.opposite(), i).unwrap());
            }
        }
    }

    #[test]
    fn direct_sum_embeds_summands() {
        let a = corpus::load("sl2_block");
        let p1 = projective(&a, 0).unwrap();
        let p2 = projective(&a, 1).unwrap().shift(3);
        let s = direct_sum(&[&p1, &p2]).unwrap();
        assert_eq!(s.module.total_dim(), p1.total_dim() + p2.total_dim());
        assert!(s.inclusions[0].is_homomorphism(&p1, &s.module));
        assert!(s.inclusions[1].is_homomorphism(&p2, &s.module));
        assert!(s.projections[1].is_homomorphism(&s.module, &p2));
    }

    #[test]
    fn relation_violations_are_detected() {
        let a = corpus::load("loop1");
        let f = a.field();
        let m = GradedModule::from_blocks(&a, &[(0, 0, 1), (0, 1, 1), (0, 2, 1)], vec![
            (0, 0, Matrix::identity(f, 1)),
            (0, 1, Matrix::identity(f, 1)),
        ]);
        assert!(m.is_err());
    }
}

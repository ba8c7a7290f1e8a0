//! Standard and costandard modules, Δ-/∇-filtrations, quasi-heredity and
//! BGG reciprocity. The QH order is the vertex order of the presentation.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::modules::{
    dual_permutation, dualize, dualize_over, injective, iso_shift_test, kernel, projective_with_basis,
    quotient, sub_module, trace_of_projectives, GradedModule, GradedSubspace, ModuleMap,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    Standard,
    Costandard,
}

/// Δ(i) = P(i) modulo the trace of `⊕_{j>i} P(j)`, top in degree 0.
pub fn standard(a: &Arc<GradedAlgebra>, i: usize) -> Result<GradedModule> {
    Ok(standard_with_projection(a, i)?.0)
}

/// Δ(i) with the projection `P(i) ↠ Δ(i)` and a linear section of it.
pub fn standard_with_projection(a: &Arc<GradedAlgebra>, i: usize) -> Result<(GradedModule, ModuleMap, Matrix)> {
    if i >= a.n_vertices() {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    let (p, _) = projective_with_basis(a, i);
    let higher: Vec<usize> = (i + 1..a.n_vertices()).collect();
    let q = quotient(&p, &trace_of_projectives(&p, &higher));
    Ok((q.module, q.projection, q.section))
}

/// ∇(i), the dual of the standard module of the opposite algebra.
pub fn costandard(a: &Arc<GradedAlgebra>, i: usize) -> Result<GradedModule> {
    Ok(dualize_over(&standard(&a.opposite(), i)?, a))
}

pub fn std_costd(a: &Arc<GradedAlgebra>, kind: Kind, i: usize) -> Result<GradedModule> {
    match kind {
        Kind::Standard => standard(a, i),
        Kind::Costandard => costandard(a, i),
    }
}

/// A filtration with subquotients Δ(vertex)⟨shift⟩ or ∇(vertex)⟨shift⟩.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub kind: Kind,
    /// Layers from the top of the module down: `(vertex, shift)`.
    pub layers: Vec<(usize, i64)>,
    /// Increasing submodules `0 = c_0 ⊂ … ⊂ c_L = M`; `c_k / c_{k−1}` is
    /// the layer `layers[L − k]`.
    pub chain: Vec<GradedSubspace>,
}

impl Filtration {
    pub fn multiplicity(&self, j: usize) -> usize {
        self.layers.iter().filter(|l| l.0 == j).count()
    }

    /// Checks every subquotient against the recorded layer.
    pub fn verify(&self, m: &GradedModule) -> Result<bool> {
        let a = m.alg();
        let n = self.layers.len();
        if self.chain.len() != n + 1 || !self.chain[0].is_zero() || self.chain[n].dim() != m.total_dim() {
            return Ok(false);
        }
        for k in 1..=n {
            if !self.chain[k].contains(&self.chain[k - 1]) || !self.chain[k].is_submodule(m) {
                return Ok(false);
            }
            let upper = sub_module(m, &self.chain[k]);
            // Lower submodule in the coordinates of the upper one.
            let low_cols = self.chain[k - 1].to_matrix(m);
            let coords = upper.inclusion.mat.solve(&low_cols).ok().flatten().expect("chain is increasing");
            let vecs: Vec<Vec<_>> = coords.columns();
            let low = GradedSubspace::from_vectors(&upper.module, &vecs);
            let sq = quotient(&upper.module, &low).module;
            let (v, s) = self.layers[n - k];
            let expect = std_costd(a, self.kind, v)?.shift(s);
            match iso_shift_test(&sq, &expect)? {
                Some((_, 0)) => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

/// Greedy Δ-filtration: repeatedly take the highest vertex `j` present,
/// map copies of Δ(j) onto `e_j M` and check injectivity.
pub fn delta_filtration(m: &GradedModule) -> Result<Option<Filtration>> {
    let a = m.alg().clone();
    let f = m.field();
    let mut cur = m.clone();
    // Projection from M onto the current quotient.
    let mut pi = Matrix::identity(f, m.total_dim());
    let mut bottom_up = Vec::new();
    let mut chain = vec![GradedSubspace::zero(m)];
    let mut deltas: Vec<Option<(GradedModule, Matrix, Vec<usize>)>> = vec![None; a.n_vertices()];
    while !cur.is_zero() {
        let j = cur.slots().iter().map(|s| s.vertex).max().unwrap();
        if deltas[j].is_none() {
            let (d, _, section) = standard_with_projection(&a, j)?;
            let (_, basis) = projective_with_basis(&a, j);
            deltas[j] = Some((d, section, basis));
        }
        let (delta, section, basis) = deltas[j].as_ref().unwrap();
        // Lowest generator at vertex j; the others survive in the quotient.
        let sl = *cur.slots().iter().find(|s| s.vertex == j).unwrap();
        let mut gen = vec![f.zero(); cur.total_dim()];
        gen[sl.offset] = f.one();
        // P(j)⟨−d⟩ → cur sends the basis path b to b·gen; it kills the
        // trace of higher projectives, so composing with the section of
        // P(j) ↠ Δ(j) gives a module map.
        let mut fp = Matrix::zeros(f, cur.total_dim(), basis.len());
        for (c, &b) in basis.iter().enumerate() {
            let img = cur.basis_action(b).mul_vec(&gen);
            for (r, x) in img.into_iter().enumerate() {
                if !x.is_zero() {
                    fp.set(r, c, x);
                }
            }
        }
        let map = ModuleMap { shift: sl.degree, mat: fp.mul(section) };
        if map.rank() != delta.total_dim() {
            return Ok(None);
        }
        debug_assert!(map.is_homomorphism(delta, &cur));
        bottom_up.push((j, -sl.degree));
        let q = quotient(&cur, &crate::modules::image(delta, &cur, &map));
        pi = q.projection.mat.mul(&pi);
        chain.push(kernel(m, &ModuleMap { shift: 0, mat: pi.clone() }));
        cur = q.module;
    }
    bottom_up.reverse();
    Ok(Some(Filtration { kind: Kind::Standard, layers: bottom_up, chain }))
}

/// ∇-filtration through the dual: M has one iff M^* has a Δ-filtration.
pub fn nabla_filtration(m: &GradedModule) -> Result<Option<Filtration>> {
    let d = dualize(m);
    let Some(fd) = delta_filtration(&d)? else { return Ok(None) };
    // Δ^{op}(i)⟨s⟩ dualizes to ∇(i)⟨−s⟩; top-down in M^* is bottom-up in M.
    let mut layers: Vec<(usize, i64)> = fd.layers.iter().map(|&(v, s)| (v, -s)).collect();
    layers.reverse();
    let perm = dual_permutation(m);
    let n = fd.chain.len() - 1;
    let chain = (0..=n).map(|k| annihilator(m, &d, &perm, &fd.chain[n - k])).collect();
    Ok(Some(Filtration { kind: Kind::Costandard, layers, chain }))
}

/// `U^⊥ ⊂ M` for a subspace `U` of the dual module.
fn annihilator(m: &GradedModule, d: &GradedModule, perm: &[usize], u: &GradedSubspace) -> GradedSubspace {
    let f = m.field();
    let full = u.to_matrix(d);
    let mut cols = Vec::new();
    for sl in m.slots() {
        // Rows of U restricted to the coordinates dual to this slot.
        let idx: Vec<usize> = (sl.offset..sl.offset + sl.dim).map(|k| perm[k]).collect();
        let block = full.select_rows(&idx).transpose();
        let k = if block.rows() == 0 { Matrix::identity(f, sl.dim) } else { block.kernel_basis() };
        cols.push(k.columns());
    }
    GradedSubspace::from_columns(m, cols)
}

pub fn filtration(m: &GradedModule, kind: Kind) -> Result<Option<Filtration>> {
    match kind {
        Kind::Standard => delta_filtration(m),
        Kind::Costandard => nabla_filtration(m),
    }
}

#[derive(Clone, Debug)]
pub struct QhVerdict {
    pub is_qh: bool,
    /// First failing vertex and the reason.
    pub failure: Option<(usize, String)>,
    /// Δ-filtrations of `ker(P(i) ↠ Δ(i))`, one per vertex checked.
    pub certificates: Vec<Filtration>,
}

pub fn verify_quasi_hereditary(a: &Arc<GradedAlgebra>) -> Result<QhVerdict> {
    let mut certs = Vec::new();
    for i in 0..a.n_vertices() {
        let (p, _) = projective_with_basis(a, i);
        let higher: Vec<usize> = (i + 1..a.n_vertices()).collect();
        let tr = trace_of_projectives(&p, &higher);
        let d = quotient(&p, &tr).module;
        let mult = d.vertex_dim(i);
        if mult != 1 {
            return Ok(QhVerdict {
                is_qh: false,
                failure: Some((i, format!("[Δ({}):L({})] = {mult}", a.label(i), a.label(i)))),
                certificates: certs,
            });
        }
        let k = sub_module(&p, &tr).module;
        match delta_filtration(&k)? {
            Some(fl) if fl.layers.iter().all(|l| l.0 > i) => certs.push(fl),
            _ => {
                return Ok(QhVerdict {
                    is_qh: false,
                    failure: Some((i, format!("ker(P({0}) → Δ({0})) has no Δ-filtration by higher Δ(j)", a.label(i)))),
                    certificates: certs,
                })
            }
        }
    }
    Ok(QhVerdict { is_qh: true, failure: None, certificates: certs })
}

pub fn require_qh(a: &Arc<GradedAlgebra>) -> Result<()> {
    let v = verify_quasi_hereditary(a)?;
    match v.failure {
        None => Ok(()),
        Some((_, why)) => Err(Error::PreconditionFailed(format!("not quasi-hereditary: {why}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BggRow {
    pub i: usize,
    pub j: usize,
    /// `[I(i) : ∇(j)]` from a ∇-filtration.
    pub injective_side: usize,
    /// `[Δ(j) : L(i)]` as a composition multiplicity.
    pub standard_side: usize,
    pub equal: bool,
}

pub fn bgg_check(a: &Arc<GradedAlgebra>) -> Result<Vec<BggRow>> {
    let n = a.n_vertices();
    let mut rows = Vec::new();
    let deltas: Vec<GradedModule> = (0..n).map(|j| standard(a, j)).collect::<Result<_>>()?;
    for i in 0..n {
        let fl = nabla_filtration(&injective(a, i)?)?.ok_or(Error::FiltrationMissing(format!(
            "I({}) has no ∇-filtration",
            a.label(i)
        )))?;
        for (j, d) in deltas.iter().enumerate() {
            let l = fl.multiplicity(j);
            let r = d.vertex_dim(i);
            rows.push(BggRow { i, j, injective_side: l, standard_side: r, equal: l == r });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::modules::{projective, simple};

    #[test]
    fn a3_standards_projective_costandards_simple() {
        let a = corpus::load("a3_line");
        for i in 0..3 {
            assert_eq!(standard(&a, i).unwrap(), projective(&a, i).unwrap());
            assert_eq!(costandard(&a, i).unwrap(), simple(&a, i).unwrap());
        }
    }

    #[test]
    fn sl2_dims() {
        let a = corpus::load("sl2_block");
        assert_eq!(standard(&a, 1).unwrap().total_dim(), 2);
        assert_eq!(standard(&a, 0).unwrap().total_dim(), 1);
        assert_eq!(costandard(&a, 1).unwrap().total_dim(), 2);
        let k = corpus::load("k1");
        assert_eq!(standard(&k, 0).unwrap(), simple(&k, 0).unwrap());
        assert_eq!(costandard(&k, 0).unwrap(), simple(&k, 0).unwrap());
    }

    #[test]
    fn qh_verdicts() {
        for name in corpus::QH_NAMES {
            let v = verify_quasi_hereditary(&corpus::load(name)).unwrap();
            assert!(v.is_qh, "{name}: {:?}", v.failure);
        }
        let v = verify_quasi_hereditary(&corpus::load("loop1")).unwrap();
        assert!(!v.is_qh);
        assert!(v.failure.unwrap().1.contains("= 2"));
    }

    #[test]
    fn sl2_projective_delta_layers() {
        let a = corpus::load("sl2_block");
        let p1 = projective(&a, 0).unwrap();
        let fl = delta_filtration(&p1).unwrap().unwrap();
        assert_eq!(fl.layers, vec![(0, 0), (1, -1)]);
        assert!(fl.verify(&p1).unwrap());
        let d = standard(&a, 1).unwrap();
        assert_eq!(delta_filtration(&d).unwrap().unwrap().layers, vec![(1, 0)]);
        // L(2) has no Δ-filtration, P(2) = Δ(2) does.
        assert!(delta_filtration(&simple(&a, 1).unwrap()).unwrap().is_none());
    }

    #[test]
    fn nabla_layers_and_chain() {
        let a = corpus::load("sl2_block");
        let i1 = injective(&a, 0).unwrap();
        let fl = nabla_filtration(&i1).unwrap().unwrap();
        assert!(fl.verify(&i1).unwrap());
        assert_eq!(fl.multiplicity(0), 1);
        assert_eq!(fl.multiplicity(1), 1);
        assert!(nabla_filtration(&simple(&a, 1).unwrap()).unwrap().is_none());
    }

    #[test]
    fn filtration_accounting() {
        for name in corpus::QH_NAMES {
            let a = corpus::load(name);
            for i in 0..a.n_vertices() {
                let p = projective(&a, i).unwrap();
                let fl = delta_filtration(&p).unwrap().unwrap();
                assert!(fl.verify(&p).unwrap(), "{name} P({i})");
                let total: usize = fl.layers.iter().map(|&(j, _)| standard(&a, j).unwrap().total_dim()).sum();
                assert_eq!(total, p.total_dim());
            }
            let n = a.n_vertices();
            assert_eq!(standard(&a, n - 1).unwrap(), projective(&a, n - 1).unwrap());
            assert_eq!(costandard(&a, n - 1).unwrap(), injective(&a, n - 1).unwrap());
        }
    }

    #[test]
    fn bgg_rows_agree() {
        for name in corpus::QH_NAMES {
            let rows = bgg_check(&corpus::load(name)).unwrap();
            assert!(rows.iter().all(|r| r.equal), "{name}");
        }
        let a3 = bgg_check(&corpus::load("a3_line")).unwrap();
        assert!(a3.iter().all(|r| r.standard_side == usize::from(r.i == r.j) || r.i < r.j));
        let sl2 = bgg_check(&corpus::load("sl2_block")).unwrap();
        let r = sl2.iter().find(|r| r.i == 0 && r.j == 1).unwrap();
        assert_eq!((r.injective_side, r.standard_side), (1, 1));
    }
}

//! Indecomposable tilting modules by universal extensions, the Ringel dual,
//! tilting (co)resolutions and the classification predicates.

mod classify;
mod resolution;
mod ringel;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};
use crate::homalg::{ext_graded, realize_ext1};
use crate::modules::{hom_at, hom_graded, GradedModule, HomSpace, ModuleMap};
use crate::qh::{costandard, nabla_filtration, require_qh, standard};

pub use classify::{balanced_check, classify, lt_flags, ClassifyReport, Flags, LtFlags};
pub use resolution::{tilting_resolution, TiltKind, TiltSum, TiltingComplex};
pub use ringel::{reverse_vertices, ringel_dual, ringel_dual_of, HomEntry, RingelDual};

/// Extends M by shifted copies of Δ(j) until `Ext¹(Δ(j), −) = 0`. Returns
/// the extension and the inclusion `M ↪ E` (degree 0).
pub fn universal_extension(m: &GradedModule, j: usize) -> Result<(GradedModule, ModuleMap)> {
    let a = m.alg();
    let dj = standard(a, j)?;
    let mut cur = m.clone();
    let mut incl = ModuleMap::identity(m);
    // Each step kills one dimension of Ext¹(Δ(j), −): Hom(Δ(j), Δ(j)⟨k⟩)
    // is the scalars at k = 0 and Ext¹(Δ(j), Δ(j)) = 0.
    let bound = m.total_dim() * a.dim() + 1;
    for _ in 0..bound {
        let e = ext_graded(&dj, &cur, 1)?;
        let Some((&k, sp)) = e.by_shift.iter().next() else {
            return Ok((cur, incl));
        };
        let xi = realize_ext1(sp, &sp.rep_vector(0))?;
        incl = xi.beta.compose(&incl);
        cur = xi.extension.shift(-k);
    }
    Err(Error::Invariant(format!("universal extension by Δ({}) did not stabilize", a.label(j))))
}

/// T(i) with the degree-0 inclusion `Δ(i) ↪ T(i)`.
pub fn tilting_module(a: &Arc<GradedAlgebra>, i: usize) -> Result<(GradedModule, ModuleMap)> {
    let d = standard(a, i)?;
    let mut t = d.clone();
    let mut incl = ModuleMap::identity(&d);
    for j in (0..i).rev() {
        let (u, e) = universal_extension(&t, j)?;
        incl = e.compose(&incl);
        t = u;
    }
    Ok((t, incl))
}

/// The tilting modules of a quasi-hereditary algebra and the graded Hom
/// spaces between them.
#[derive(Clone, Debug)]
pub struct TiltingData {
    pub alg: Arc<GradedAlgebra>,
    pub modules: Vec<GradedModule>,
    pub embeddings: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
    pub standards: Vec<GradedModule>,
    pub costandards: Vec<GradedModule>,
    /// `homs[i][j]`: bases of `hom(T(i), T(j)⟨d⟩)` for all d.
    pub homs: Vec<Vec<HomSpace>>,
}

/// Builds every T(i), normalizes the projection `T(i) ↠ ∇(i)` and checks
/// the ∇-filtration.
pub fn tilting_data(a: &Arc<GradedAlgebra>) -> Result<TiltingData> {
    require_qh(a)?;
    let n = a.n_vertices();
    let mut modules = Vec::new();
    let mut embeddings = Vec::new();
    let mut projections = Vec::new();
    let mut standards = Vec::new();
    let mut costandards = Vec::new();
    for i in 0..n {
        let (t, e) = tilting_module(a, i)?;
        let nab = costandard(a, i)?;
        let p = hom_at(&t, &nab, 0)?
            .into_iter()
            .find(|g| g.rank() == nab.total_dim())
            .ok_or_else(|| Error::Invariant(format!("no degree-0 surjection T({0}) → ∇({0})", a.label(i))))?;
        if nabla_filtration(&t)?.is_none() {
            return Err(Error::Invariant(format!("T({}) has no ∇-filtration", a.label(i))));
        }
        modules.push(t);
        embeddings.push(e);
        projections.push(p);
        standards.push(standard(a, i)?);
        costandards.push(nab);
    }
    let homs = (0..n)
        .map(|i| (0..n).map(|j| hom_graded(&modules[i], &modules[j])).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(TiltingData { alg: a.clone(), modules, embeddings, projections, standards, costandards, homs })
}

impl TiltingData {
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// Scalar by which an endomorphism of T(i) acts on the one-dimensional
    /// slot `(i, 0)`.
    pub fn top_scalar(&self, i: usize, g: &ModuleMap) -> Scalar {
        let t = &self.modules[i];
        let s = t.slot_index(i, 0).expect("[T(i):L(i)] = 1 in degree 0");
        let k = t.slots()[s].offset;
        g.mat.get(k, k).clone()
    }

    /// Basis of the radical of the category add(T) from T(i) to T(j)⟨d⟩:
    /// everything, except that degree-0 endomorphisms lose their scalar part.
    pub fn radical_homs(&self, i: usize, j: usize, d: i64) -> Vec<ModuleMap> {
        let Some(b) = self.homs[i][j].by_shift.get(&d) else { return vec![] };
        if i != j || d != 0 {
            return b.clone();
        }
        let id = ModuleMap::identity(&self.modules[i]);
        let f = self.alg.field();
        let r: Vec<ModuleMap> = b.iter().map(|g| g.add(&id.scale(&-self.top_scalar(i, g)))).collect();
        independent(f, r)
    }

    /// `hom(T(i), T(j)⟨d⟩)` with the identity first when `i = j, d = 0`.
    pub fn hom_basis(&self, i: usize, j: usize, d: i64) -> Vec<ModuleMap> {
        if i == j && d == 0 {
            let mut v = vec![ModuleMap::identity(&self.modules[i])];
            v.extend(self.radical_homs(i, i, 0));
            v
        } else {
            self.radical_homs(i, j, d)
        }
    }

    /// Every (T(i), T(j), d) with a nonzero Hom space.
    pub fn hom_dims(&self) -> BTreeMap<(usize, usize, i64), usize> {
        let mut out = BTreeMap::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                for (&d, b) in &self.homs[i][j].by_shift {
                    out.insert((i, j, d), b.len());
                }
            }
        }
        out
    }
}

/// Linearly independent subfamily, in order.
pub(crate) fn independent(f: crate::exactla::Field, maps: Vec<ModuleMap>) -> Vec<ModuleMap> {
    let mut out: Vec<ModuleMap> = Vec::new();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in maps {
        let mut cand = rows.clone();
        cand.push(g.mat.entries().to_vec());
        let len = cand[0].len();
        if Matrix::from_rows(f, cand.clone()).rank() > rows.len() && len > 0 {
            rows = cand;
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::homalg::ext_graded;
    use crate::modules::{iso_shift_test, loewy_data, projective};

    #[test]
    fn k1_tilting_is_simple() {
        let td = tilting_data(&corpus::load("k1")).unwrap();
        assert_eq!(td.modules[0].total_dim(), 1);
    }

    #[test]
    fn a3_tilting_are_projective() {
        let a = corpus::load("a3_line");
        let td = tilting_data(&a).unwrap();
        for i in 0..3 {
            assert!(iso_shift_test(&td.modules[i], &projective(&a, i).unwrap()).unwrap().is_some());
        }
        for i in 1..3 {
            for j in 0..i {
                let (u, _) = universal_extension(&td.standards[i], j).unwrap();
                assert_eq!(u.total_dim(), td.standards[i].total_dim());
            }
        }
    }

    #[test]
    fn sl2_tilting_layers() {
        let a = corpus::load("sl2_block");
        let (u, e) = universal_extension(&standard(&a, 1).unwrap(), 0).unwrap();
        assert_eq!(u.total_dim(), 3);
        assert!(e.is_homomorphism(&standard(&a, 1).unwrap(), &u));
        let td = tilting_data(&a).unwrap();
        assert_eq!(td.modules[0].total_dim(), 1);
        let t = &td.modules[1];
        let dv: Vec<_> = t.dim_vector().into_iter().collect();
        assert_eq!(dv, vec![((0, -1), 1), ((0, 1), 1), ((1, 0), 1)]);
        assert_eq!(loewy_data(t).loewy_length, 3);
        let (_, j) = iso_shift_test(&projective(&a, 0).unwrap(), t).unwrap().unwrap();
        assert_eq!(j, -1);
    }

    #[test]
    fn ext_orthogonality_on_corpus() {
        for name in corpus::QH_NAMES {
            let a = corpus::load(name);
            let td = tilting_data(&a).unwrap();
            for i in 0..td.len() {
                assert_eq!(td.modules[i].vertex_dim(i), 1, "{name}");
                for j in 0..td.len() {
                    assert_eq!(ext_graded(&td.standards[j], &td.modules[i], 1).unwrap().total_dim(), 0);
                    assert_eq!(ext_graded(&td.modules[i], &td.costandards[j], 1).unwrap().total_dim(), 0);
                }
            }
        }
    }
}

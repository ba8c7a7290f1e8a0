//! Graded subspaces, submodules, quotients, kernels, images and traces.

use super::{check_same_algebra, hom_graded, GradedModule, ModuleMap};
use crate::error::Result;
use crate::exactla::{Matrix, Scalar};

/// A graded subspace of a module: for each slot, a basis in canonical
/// (reduced column echelon) form, in slot-local coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    pub per_slot: Vec<Matrix>,
}

impl GradedSubspace {
    pub fn zero(m: &GradedModule) -> GradedSubspace {
        GradedSubspace { per_slot: m.slots().iter().map(|s| Matrix::zeros(m.field(), s.dim, 0)).collect() }
    }

    pub fn full(m: &GradedModule) -> GradedSubspace {
        GradedSubspace { per_slot: m.slots().iter().map(|s| Matrix::identity(m.field(), s.dim)).collect() }
    }

    /// Span of per-slot column sets, canonicalized.
    pub fn from_columns(m: &GradedModule, cols: Vec<Vec<Vec<Scalar>>>) -> GradedSubspace {
        let per_slot = cols
            .into_iter()
            .zip(m.slots())
            .map(|(c, s)| canonical(&Matrix::from_columns(m.field(), s.dim, &c)))
            .collect();
        GradedSubspace { per_slot }
    }

    /// Span of the homogeneous components of arbitrary vectors in `m`.
    pub fn from_vectors(m: &GradedModule, vecs: &[Vec<Scalar>]) -> GradedSubspace {
        let mut cols = vec![Vec::new(); m.slots().len()];
        for v in vecs {
            for (s, c) in cols.iter_mut().enumerate() {
                let part = m.slot_part(v, s);
                if part.iter().any(|x| !x.is_zero()) {
                    c.push(part);
                }
            }
        }
        GradedSubspace::from_columns(m, cols)
    }

    pub fn dim(&self) -> usize {
        self.per_slot.iter().map(|b| b.cols()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Basis as columns of a `total × dim` matrix, in slot order.
    pub fn to_matrix(&self, m: &GradedModule) -> Matrix {
        let mut out = Matrix::zeros(m.field(), m.total_dim(), self.dim());
        let mut c = 0;
        for (s, b) in self.per_slot.iter().enumerate() {
            out.set_block(m.slots()[s].offset, c, b);
            c += b.cols();
        }
        out
    }

    pub fn sum(&self, o: &GradedSubspace) -> GradedSubspace {
        let per_slot = self
            .per_slot
            .iter()
            .zip(&o.per_slot)
            .map(|(a, b)| canonical(&Matrix::hstack(a.field(), a.rows(), &[a, b])))
            .collect();
        GradedSubspace { per_slot }
    }

    pub fn intersect(&self, o: &GradedSubspace) -> GradedSubspace {
        let per_slot = self
            .per_slot
            .iter()
            .zip(&o.per_slot)
            .map(|(a, b)| {
                let k = Matrix::hstack(a.field(), a.rows(), &[a, b]).kernel_basis();
                canonical(&a.mul(&k.block(0, a.cols(), 0, k.cols())))
            })
            .collect();
        GradedSubspace { per_slot }
    }

    pub fn contains(&self, o: &GradedSubspace) -> bool {
        self.sum(o) == *self
    }

    /// Is this subspace closed under every arrow?
    pub fn is_submodule(&self, m: &GradedModule) -> bool {
        for a in 0..m.alg().arrows().len() {
            for s in 0..m.slots().len() {
                if let Some((t, b)) = m.block(a, s) {
                    let img = canonical(&b.mul(&self.per_slot[s]));
                    let both = canonical(&Matrix::hstack(m.field(), b.rows(), &[&self.per_slot[t], &img]));
                    if both.cols() != self.per_slot[t].cols() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Canonical basis of a column space (independent of generating set).
pub(super) fn canonical(m: &Matrix) -> Matrix {
    m.column_space()
}

/// The submodule generated by arbitrary vectors.
pub fn generated_submodule(m: &GradedModule, gens: &[Vec<Scalar>]) -> GradedSubspace {
    let start = GradedSubspace::from_vectors(m, gens);
    close_under_arrows(m, start)
}

/// Smallest submodule containing `u`: one pass in slot order suffices since
/// arrows raise degree and slots are sorted by degree.
pub(super) fn close_under_arrows(m: &GradedModule, u: GradedSubspace) -> GradedSubspace {
    let f = m.field();
    let mut per_slot = u.per_slot;
    let na = m.alg().arrows().len();
    for s in 0..m.slots().len() {
        per_slot[s] = canonical(&per_slot[s]);
        for a in 0..na {
            if let Some((t, b)) = m.block(a, s) {
                let img = b.mul(&per_slot[s]);
                per_slot[t] = Matrix::hstack(f, b.rows(), &[&per_slot[t], &img]);
            }
        }
    }
    GradedSubspace { per_slot }
}

/// A submodule as a module in its own right, with its inclusion.
pub struct Sub {
    pub module: GradedModule,
    pub inclusion: ModuleMap,
}

pub fn sub_module(m: &GradedModule, u: &GradedSubspace) -> Sub {
    let slot_dims: Vec<(usize, i64, usize)> =
        m.slots().iter().zip(&u.per_slot).map(|(s, b)| (s.vertex, s.degree, b.cols())).collect();
    let mut blocks = Vec::new();
    for (a, ar) in m.alg().arrows().iter().enumerate() {
        for (s, sl) in m.slots().iter().enumerate() {
            if sl.vertex != ar.src || u.per_slot[s].cols() == 0 {
                continue;
            }
            if let Some((t, b)) = m.block(a, s) {
                let img = b.mul(&u.per_slot[s]);
                let x = u.per_slot[t].solve(&img).expect("shapes agree").expect("subspace is a submodule");
                blocks.push((a, sl.degree, x));
            }
        }
    }
    let module = GradedModule::from_blocks_unchecked(m.alg(), &slot_dims, blocks).expect("valid blocks");
    debug_assert!(module.relation_violation().is_none() || m.relation_violation().is_some());
    let inclusion = ModuleMap { shift: 0, mat: u.to_matrix(m) };
    Sub { module, inclusion }
}

/// A quotient module with projection and a (linear, not module) section.
pub struct Quotient {
    pub module: GradedModule,
    pub projection: ModuleMap,
    pub section: Matrix,
}

/// `M / U`, with quotient coordinates the non-pivot coordinates of U.
pub fn quotient(m: &GradedModule, u: &GradedSubspace) -> Quotient {
    let f = m.field();
    let mut proj_slots = Vec::new();
    let mut sect_slots = Vec::new();
    for (s, b) in u.per_slot.iter().enumerate() {
        let n = m.slots()[s].dim;
        let rr = b.transpose().rank_rref();
        let free: Vec<usize> = (0..n).filter(|c| !rr.pivot_cols.contains(c)).collect();
        // Coordinate c of v mod U: v_c − Σ_r rref[r][c]·v_{pivot_r}.
        let mut p = Matrix::zeros(f, free.len(), n);
        let mut sec = Matrix::zeros(f, n, free.len());
        for (i, &c) in free.iter().enumerate() {
            p.set(i, c, f.one());
            sec.set(c, i, f.one());
            for (r, &pc) in rr.pivot_cols.iter().enumerate() {
                let x = rr.rref.get(r, c);
                if !x.is_zero() {
                    p.set(i, pc, -x);
                }
            }
        }
        proj_slots.push(p);
        sect_slots.push(sec);
    }
    let slot_dims: Vec<(usize, i64, usize)> =
        m.slots().iter().zip(&proj_slots).map(|(s, p)| (s.vertex, s.degree, p.rows())).collect();
    let mut blocks = Vec::new();
    for (a, ar) in m.alg().arrows().iter().enumerate() {
        for (s, sl) in m.slots().iter().enumerate() {
            if sl.vertex != ar.src || sect_slots[s].cols() == 0 {
                continue;
            }
            if let Some((t, b)) = m.block(a, s) {
                blocks.push((a, sl.degree, proj_slots[t].mul(&b.mul(&sect_slots[s]))));
            }
        }
    }
    let module = GradedModule::from_blocks_unchecked(m.alg(), &slot_dims, blocks).expect("valid blocks");
    let mut proj = Matrix::zeros(f, module.total_dim(), m.total_dim());
    let mut section = Matrix::zeros(f, m.total_dim(), module.total_dim());
    let mut r = 0;
    for (s, sl) in m.slots().iter().enumerate() {
        proj.set_block(r, sl.offset, &proj_slots[s]);
        section.set_block(sl.offset, r, &sect_slots[s]);
        r += proj_slots[s].rows();
    }
    Quotient { module, projection: ModuleMap { shift: 0, mat: proj }, section }
}

/// Kernel of `f: M → N⟨j⟩` as a graded subspace of M.
pub fn kernel(m: &GradedModule, f: &ModuleMap) -> GradedSubspace {
    let per_slot = m
        .slots()
        .iter()
        .map(|sl| canonical(&f.mat.block(0, f.mat.rows(), sl.offset, sl.dim).kernel_basis()))
        .collect();
    GradedSubspace { per_slot }
}

/// Image of `f: M → N⟨j⟩` as a graded subspace of N.
pub fn image(m: &GradedModule, n: &GradedModule, f: &ModuleMap) -> GradedSubspace {
    let mut cols = vec![Vec::new(); n.slots().len()];
    for s in 0..m.slots().len() {
        if let Some((t, b)) = f.slot_block(m, n, s) {
            cols[t].extend(b.columns());
        }
    }
    GradedSubspace::from_columns(n, cols)
}

/// Cokernel `N⟨j⟩ / im f`, returned as a quotient of N.
pub fn cokernel(m: &GradedModule, n: &GradedModule, f: &ModuleMap) -> Quotient {
    quotient(n, &image(m, n, f))
}

/// Sum of the images of all homogeneous maps `M → N⟨j⟩`, for every j.
pub fn trace_submodule(m: &GradedModule, n: &GradedModule) -> Result<GradedSubspace> {
    check_same_algebra(m, n)?;
    let h = hom_graded(m, n)?;
    let mut u = GradedSubspace::zero(n);
    for maps in h.by_shift.values() {
        for f in maps {
            u = u.sum(&image(m, n, f));
        }
    }
    Ok(u)
}

/// Trace of `⊕_{j∈vs} P(j)` in M: the submodule generated by `e_j M`.
pub fn trace_of_projectives(m: &GradedModule, vs: &[usize]) -> GradedSubspace {
    let cols: Vec<Vec<Vec<Scalar>>> = m
        .slots()
        .iter()
        .map(|s| if vs.contains(&s.vertex) { Matrix::identity(m.field(), s.dim).columns() } else { vec![] })
        .collect();
    close_under_arrows(m, GradedSubspace::from_columns(m, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::modules::{direct_sum, projective, simple};

    #[test]
    fn trace_examples() {
        let a = corpus::load("a3_line");
        let p1 = projective(&a, 0).unwrap();
        let p2 = projective(&a, 1).unwrap();
        assert!(trace_submodule(&p2, &p1).unwrap().is_zero());
        assert_eq!(trace_submodule(&p2, &p2).unwrap(), GradedSubspace::full(&p2));

        let s = corpus::load("sl2_block");
        let p1 = projective(&s, 0).unwrap();
        let p2 = projective(&s, 1).unwrap();
        let t = trace_submodule(&p2, &p1).unwrap();
        assert_eq!(t.dim(), 2);
        assert_eq!(t, trace_of_projectives(&p1, &[1]));
    }

    #[test]
    fn trace_of_projective_matches_generated() {
        for name in corpus::QH_NAMES {
            let a = corpus::load(name);
            let ps: Vec<_> = (0..a.n_vertices()).map(|i| projective(&a, i).unwrap()).collect();
            let refs: Vec<&GradedModule> = ps.iter().collect();
            let m = direct_sum(&refs).unwrap().module;
            for j in 0..a.n_vertices() {
                assert_eq!(trace_submodule(&ps[j], &m).unwrap(), trace_of_projectives(&m, &[j]), "{name} {j}");
            }
        }
    }

    #[test]
    fn submodule_and_quotient_are_modules() {
        let a = corpus::load("sl2_block");
        let p1 = projective(&a, 0).unwrap();
        let u = trace_of_projectives(&p1, &[1]);
        let s = sub_module(&p1, &u);
        assert!(s.module.relation_violation().is_none());
        assert!(s.inclusion.is_homomorphism(&s.module, &p1));
        let q = quotient(&p1, &u);
        assert_eq!(q.module.total_dim(), 1);
        assert!(q.projection.is_homomorphism(&p1, &q.module));
        assert_eq!(q.module, simple(&a, 0).unwrap());
        let k = kernel(&p1, &q.projection);
        assert_eq!(k, u);
        assert_eq!(image(&s.module, &p1, &s.inclusion), u);
    }

    #[test]
    fn subspace_lattice_operations() {
        let a = corpus::load("a3_line");
        let p3 = projective(&a, 2).unwrap();
        let r = trace_of_projectives(&p3, &[1]);
        let r2 = trace_of_projectives(&p3, &[0]);
        assert_eq!(r.dim(), 2);
        assert_eq!(r2.dim(), 1);
        assert!(r.contains(&r2));
        assert_eq!(r.intersect(&r2), r2);
        assert_eq!(r.sum(&r2), r);
        assert!(r.is_submodule(&p3));
    }
}

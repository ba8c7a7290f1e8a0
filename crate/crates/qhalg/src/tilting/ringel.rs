//! `R(A) = End_A(⊕ T(i))^opp` with the grading induced from Hom spaces.

use std::sync::Arc;

use super::{tilting_data, TiltingData};
use crate::algebra::{build_algebra, presentation_extract, AlgebraPresentation, GradedAlgebra, SVec, ScAlgebra};
use crate::error::Result;
use crate::exactla::Matrix;
use crate::modules::ModuleMap;

/// A basis element `f ∈ hom(T(i), T(j)⟨degree⟩)`, placed in `e_i R e_j`.
#[derive(Clone, Debug)]
pub struct HomEntry {
    pub i: usize,
    pub j: usize,
    pub degree: i64,
    pub map: ModuleMap,
}

/// The Ringel dual. Vertex `r` of `sc` (and of `algebra`) is T(n−1−r), so
/// the vertex order is the quasi-hereditary order of R(A); labels follow
/// the tilting modules.
#[derive(Clone, Debug)]
pub struct RingelDual {
    pub tilting: TiltingData,
    pub sc: ScAlgebra,
    pub basis: Vec<HomEntry>,
    /// R_d = 0 for d < 0 and R_0 spanned by the idempotents.
    pub positive: bool,
    /// Positive and generated by R_0 and R_1.
    pub generated_01: bool,
    pub algebra: Option<Arc<GradedAlgebra>>,
}

impl RingelDual {
    /// Vertex of R for T(i).
    pub fn vertex_of(&self, i: usize) -> usize {
        self.tilting.len() - 1 - i
    }

    /// Basis index of an element of `hom(T(i), T(j)⟨d⟩)`.
    pub fn coordinates(&self, i: usize, j: usize, d: i64, g: &ModuleMap) -> Vec<(usize, crate::exactla::Scalar)> {
        let idx: Vec<usize> =
            (0..self.basis.len()).filter(|&x| self.basis[x].i == i && self.basis[x].j == j && self.basis[x].degree == d).collect();
        let maps: Vec<&ModuleMap> = idx.iter().map(|&x| &self.basis[x].map).collect();
        solve_in(&maps, g).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (idx[k], c)).collect()
    }
}

/// Coefficients of `g` in a family of maps of the same shape.
fn solve_in(maps: &[&ModuleMap], g: &ModuleMap) -> Vec<crate::exactla::Scalar> {
    let f = g.mat.field();
    let len = g.mat.entries().len();
    let cols: Vec<Vec<_>> = maps.iter().map(|m| m.mat.entries().to_vec()).collect();
    let a = Matrix::from_columns(f, len, &cols);
    a.solve_vec(g.mat.entries()).expect("composite lies in the Hom space")
}

pub fn ringel_dual(a: &Arc<GradedAlgebra>) -> Result<RingelDual> {
    ringel_dual_of(tilting_data(a)?)
}

pub fn ringel_dual_of(td: TiltingData) -> Result<RingelDual> {
    let n = td.len();
    let f = td.alg.field();
    let rev = |i: usize| n - 1 - i;
    let mut basis = Vec::new();
    let mut idempotents = vec![0; n];
    for i in 0..n {
        for j in 0..n {
            let shifts: Vec<i64> = td.homs[i][j].by_shift.keys().copied().collect();
            for d in shifts {
                for (k, map) in td.hom_basis(i, j, d).into_iter().enumerate() {
                    if i == j && d == 0 && k == 0 {
                        idempotents[rev(i)] = basis.len();
                    }
                    basis.push(HomEntry { i, j, degree: d, map });
                }
            }
        }
    }
    // x ∘_R y = (y after x) when x: T(i) → T(j) and y: T(j) → T(k).
    let dim = basis.len();
    let mut mul: Vec<Vec<SVec>> = vec![vec![Vec::new(); dim]; dim];
    let mut rd = RingelDual {
        sc: ScAlgebra { field: f, labels: vec![], elems: vec![], idempotents: vec![], mul: vec![] },
        basis,
        positive: false,
        generated_01: false,
        algebra: None,
        tilting: td,
    };
    for x in 0..dim {
        for y in 0..dim {
            let (ex, ey) = (&rd.basis[x], &rd.basis[y]);
            if ex.j != ey.i {
                continue;
            }
            let d = ex.degree + ey.degree;
            let comp = ey.map.compose(&ex.map);
            if comp.is_zero() {
                continue;
            }
            mul[x][y] = rd.coordinates(ex.i, ey.j, d, &comp);
        }
    }
    let elems: Vec<(usize, usize, i64)> = rd.basis.iter().map(|e| (rev(e.j), rev(e.i), e.degree)).collect();
    let positive = elems.iter().enumerate().all(|(x, &(_, _, d))| d > 0 || (d == 0 && idempotents.contains(&x)));
    rd.sc = ScAlgebra {
        field: f,
        labels: (0..n).map(|r| rd.tilting.alg.label(rev(r)).to_string()).collect(),
        elems,
        idempotents,
        mul,
    };
    rd.positive = positive;
    if positive {
        let ex = presentation_extract(&rd.sc, "r")?;
        let alg = build_algebra(&ex.presentation)?;
        rd.generated_01 = alg.arrows().iter().all(|a| a.degree == 1);
        rd.algebra = Some(alg);
    }
    Ok(rd)
}

/// The same algebra with the vertex list reversed.
pub fn reverse_vertices(p: &AlgebraPresentation) -> AlgebraPresentation {
    let n = p.vertices.len();
    let mut q = p.clone();
    q.vertices.reverse();
    for a in q.arrows.iter_mut() {
        a.src = n - 1 - a.src;
        a.tgt = n - 1 - a.tgt;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{iso_search, IsoMode};
    use crate::corpus;

    fn ringel(name: &str) -> (Arc<GradedAlgebra>, RingelDual) {
        let a = corpus::load(name);
        let r = ringel_dual(&a).unwrap();
        (a, r)
    }

    #[test]
    fn k1_is_self_dual() {
        let (a, r) = ringel("k1");
        assert!(r.positive && r.generated_01);
        assert!(iso_search(r.algebra.as_ref().unwrap(), &a, IsoMode::ByPosition, 0).is_witness());
    }

    #[test]
    fn sl2_is_ringel_self_dual() {
        let (a, r) = ringel("sl2_block");
        assert!(r.positive && r.generated_01);
        assert!(iso_search(r.algebra.as_ref().unwrap(), &a, IsoMode::ByPosition, 0).is_witness());
    }

    #[test]
    fn a3_ringel_dual_is_a3_reversed() {
        let (a, r) = ringel("a3_line");
        let ra = r.algebra.as_ref().unwrap();
        assert_eq!(ra.dim(), a.dim());
        assert!(iso_search(ra, &a, IsoMode::ByLabel, 0).is_witness());
        let rev = build_algebra(&reverse_vertices(a.presentation())).unwrap();
        assert!(iso_search(ra, &rev, IsoMode::ByPosition, 0).is_witness());
    }

    #[test]
    fn branch_and_flow_are_not_positive() {
        for name in ["a4_branch", "c4_flow"] {
            let (_, r) = ringel(name);
            assert!(!r.positive, "{name}");
        }
    }

    #[test]
    fn ringel_dual_is_associative() {
        for name in corpus::QH_NAMES {
            let (_, r) = ringel(name);
            let sc = &r.sc;
            for x in 0..sc.dim() {
                for y in 0..sc.dim() {
                    for z in 0..sc.dim() {
                        let (ux, uy, uz) = (sc.unit_vector(x), sc.unit_vector(y), sc.unit_vector(z));
                        assert_eq!(
                            sc.multiply(&sc.multiply(&ux, &uy), &uz),
                            sc.multiply(&ux, &sc.multiply(&uy, &uz)),
                            "{name}"
                        );
                    }
                }
            }
        }
    }
}

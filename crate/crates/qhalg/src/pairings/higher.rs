//! Pairings between `Hom(Δ(j), T_l)` and `Ext^l(∇(i), ∇(j))`, where `T_•`
//! is the minimal tilting resolution of ∇(i).

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{fixed_morphisms, pairing_hom_ext1, scalar_multiple, PairingKind, PairingReport};
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};
use crate::homalg::ext_graded;
use crate::modules::{hom_at, hom_graded, GradedModule, ModuleMap};
use crate::qh::{costandard, require_qh, standard};
use crate::tilting::{ringel_dual_of, tilting_data, tilting_resolution, TiltKind, TiltingComplex, TiltingData};

const HOMOTOPY_TRIALS: usize = 20;
const HOMOTOPY_SEED: u64 = 0x7417;

/// A higher pairing with its per-degree blocks. Left basis elements of
/// shift d pair only with right classes of shift −d.
#[derive(Clone, Debug)]
pub struct HigherPairing {
    pub report: PairingReport,
    /// Shift of each left basis element (`Δ(j) → T_l⟨d⟩`).
    pub left_shifts: Vec<i64>,
    /// Shift of each right class (`T_l → ∇(j)⟨σ⟩`).
    pub right_shifts: Vec<i64>,
    /// `d ↦ (rank of the d-block, multiplicity of T(j)⟨−d⟩ in T_l)`.
    pub blocks: BTreeMap<i64, (usize, usize)>,
}

impl HigherPairing {
    /// The `(left shift d, right shift −d)` block.
    pub fn block(&self, d: i64) -> Matrix {
        let rows: Vec<usize> = (0..self.left_shifts.len()).filter(|&r| self.left_shifts[r] == d).collect();
        let cols: Vec<usize> = (0..self.right_shifts.len()).filter(|&c| self.right_shifts[c] == -d).collect();
        self.report.matrix.select_rows(&rows).select_columns(&cols)
    }
}

fn vec_of(g: &ModuleMap) -> Vec<Scalar> {
    g.mat.entries().to_vec()
}

fn combine(basis: &[ModuleMap], c: &[Scalar], src: &GradedModule, tgt: &GradedModule, shift: i64) -> ModuleMap {
    basis.iter().zip(c).fold(ModuleMap::zero(src, tgt, shift), |acc, (g, x)| acc.add(&g.scale(x)))
}

/// Cohomology of `Hom(T_•, N⟨σ⟩)` at position l: cocycle representatives
/// of a complement of the coboundaries, and the coboundary spanning set.
struct Cohomology {
    reps: Vec<ModuleMap>,
    coboundaries: Vec<ModuleMap>,
}

fn cohomology(f: Field, res: &TiltingComplex, l: usize, n: &GradedModule, sigma: i64) -> Result<Cohomology> {
    let tl = &res.terms[l].module;
    let basis = hom_at(tl, n, sigma)?;
    let cocycles: Vec<ModuleMap> = match res.diffs.get(l) {
        Some(d) if !basis.is_empty() => {
            let src = &res.terms[l + 1].module;
            let len = n.total_dim() * src.total_dim();
            let cols: Vec<Vec<Scalar>> = basis.iter().map(|g| vec_of(&g.compose(d))).collect();
            let k = Matrix::from_columns(f, len, &cols).kernel_basis();
            k.columns().iter().map(|c| combine(&basis, c, tl, n, sigma)).collect()
        }
        _ => basis,
    };
    let coboundaries: Vec<ModuleMap> = match l.checked_sub(1) {
        Some(p) => hom_at(&res.terms[p].module, n, sigma)?.iter().map(|h| h.compose(&res.diffs[p])).collect(),
        None => vec![],
    };
    let len = tl.total_dim() * n.total_dim();
    let mut span: Vec<Vec<Scalar>> = coboundaries.iter().map(vec_of).filter(|v| v.iter().any(|x| !x.is_zero())).collect();
    let mut rank = if span.is_empty() { 0 } else { Matrix::from_columns(f, len, &span).rank() };
    let mut reps = Vec::new();
    for z in cocycles {
        span.push(vec_of(&z));
        let r = Matrix::from_columns(f, len, &span).rank();
        if r > rank {
            rank = r;
            reps.push(z);
        } else {
            span.pop();
        }
    }
    Ok(Cohomology { reps, coboundaries })
}

/// `a` with `g∘f = a·α_j`.
fn evaluate(g: &ModuleMap, f: &ModuleMap, alpha: &ModuleMap) -> Result<Scalar> {
    let h = g.compose(f);
    if h.is_zero() {
        return Ok(alpha.mat.field().zero());
    }
    if h.shift != 0 {
        return Err(Error::Invariant("nonzero map Δ(j) → ∇(j) in nonzero degree".into()));
    }
    scalar_multiple(&h.mat, &alpha.mat).ok_or_else(|| Error::Invariant("g∘f is not a multiple of α_j".into()))
}

/// As `higher_pairing_rank`, reusing tilting data and a computed resolution.
pub fn higher_pairing_with(td: &TiltingData, res: &TiltingComplex, l: usize, i: usize, j: usize) -> Result<HigherPairing> {
    let a = &td.alg;
    let f = a.field();
    let fm = fixed_morphisms(a)?;
    let dj = standard(a, j)?;
    let nj = costandard(a, j)?;
    let kind = PairingKind::Higher(l);
    let Some(term) = res.terms.get(l) else {
        let mut report = PairingReport::new(kind, i, j, vec![], vec![], Matrix::zeros(f, 0, 0));
        report.checks.insert("rank_eq_multiplicity".into(), true);
        return Ok(HigherPairing { report, left_shifts: vec![], right_shifts: vec![], blocks: BTreeMap::new() });
    };
    let tl = &term.module;
    let mut left = Vec::new();
    for (&d, b) in &hom_graded(&dj, tl)?.by_shift {
        left.extend(b.iter().enumerate().map(|(k, g)| (d, format!("hom(Δ({}),T_{l}⟨{d}⟩)#{k}", a.label(j)), g.clone())));
    }
    let mut right = Vec::new();
    let mut coboundaries = Vec::new();
    let mut dims_ok = true;
    let ext = ext_graded(&costandard(a, i)?, &nj, l)?;
    let mut seen = BTreeMap::new();
    for &sigma in hom_graded(tl, &nj)?.by_shift.keys() {
        let c = cohomology(f, res, l, &nj, sigma)?;
        seen.insert(sigma, c.reps.len());
        dims_ok &= c.reps.len() == ext.dim_at(sigma);
        for (k, g) in c.reps.into_iter().enumerate() {
            right.push((sigma, format!("ext{l}(∇({}),∇({})⟨{sigma}⟩)#{k}", a.label(i), a.label(j)), g));
        }
        coboundaries.push((sigma, c.coboundaries));
    }
    dims_ok &= ext.by_shift.iter().all(|(s, sp)| seen.get(s).copied().unwrap_or(0) == sp.dim());
    let mut mat = Matrix::zeros(f, left.len(), right.len());
    for (c, (_, _, g)) in right.iter().enumerate() {
        for (r, (_, _, h)) in left.iter().enumerate() {
            mat.set(r, c, evaluate(g, h, &fm.alpha[j])?);
        }
    }
    // Perturb each class by a random coboundary and re-evaluate.
    let mut rng = ChaCha8Rng::seed_from_u64(HOMOTOPY_SEED);
    let mut invariant = true;
    for _ in 0..HOMOTOPY_TRIALS {
        for (c, (sigma, _, g)) in right.iter().enumerate() {
            let Some((_, cb)) = coboundaries.iter().find(|(s, _)| s == sigma) else { continue };
            let coeffs: Vec<Scalar> = cb.iter().map(|_| f.int(rng.gen_range(-3..=3))).collect();
            let pert = cb.iter().zip(&coeffs).fold(g.clone(), |acc, (b, x)| acc.add(&b.scale(x)));
            for (r, (_, _, h)) in left.iter().enumerate() {
                invariant &= &evaluate(&pert, h, &fm.alpha[j])? == mat.get(r, c);
            }
        }
    }
    let left_shifts: Vec<i64> = left.iter().map(|x| x.0).collect();
    let right_shifts: Vec<i64> = right.iter().map(|x| x.0).collect();
    let mut report = PairingReport::new(
        kind,
        i,
        j,
        left.into_iter().map(|x| x.1).collect(),
        right.into_iter().map(|x| x.1).collect(),
        mat,
    );
    let mut hp = HigherPairing { report: report.clone(), left_shifts, right_shifts, blocks: BTreeMap::new() };
    let shifts: std::collections::BTreeSet<i64> =
        hp.left_shifts.iter().copied().chain(term.summands.iter().filter(|s| s.0 == j).map(|s| -s.1)).collect();
    let mut mult_ok = true;
    for d in shifts {
        let b = hp.block(d);
        let r = if b.rows() == 0 || b.cols() == 0 { 0 } else { b.rank() };
        let m = term.multiplicity(j, -d);
        mult_ok &= r == m;
        hp.blocks.insert(d, (r, m));
    }
    report.checks.insert("ext_dims_match".into(), dims_ok);
    report.checks.insert("homotopy_invariant".into(), invariant);
    report.checks.insert("rank_eq_multiplicity".into(), mult_ok);
    if l == 1 && j + 1 == i {
        let p = pairing_hom_ext1(a, i, j)?;
        report.checks.insert("matches_hom_ext1".into(), p.rank == report.rank);
    }
    hp.report = report;
    Ok(hp)
}

/// The l-th higher pairing for (i, j), with rank checked against the
/// multiplicity of T(j) in position −l.
pub fn higher_pairing_rank(a: &Arc<GradedAlgebra>, l: usize, i: usize, j: usize) -> Result<HigherPairing> {
    require_qh(a)?;
    let td = tilting_data(a)?;
    let res = tilting_resolution(&td, None, &costandard(a, i)?, TiltKind::Resolution)?;
    higher_pairing_with(&td, &res, l, i, j)
}

#[derive(Clone, Debug)]
pub struct GradedPairingVerdict {
    pub l: usize,
    pub i: usize,
    pub j: usize,
    /// `hom(Δ(j)⟨−l⟩, T_l)` against `ext^l(∇(i), ∇(j)⟨−l⟩)`.
    pub report: PairingReport,
    pub nondegenerate: bool,
    /// The same statement over the opposite algebra; `None` when its
    /// preconditions fail there (reason in `dual_note`).
    pub dual_nondegenerate: Option<bool>,
    pub dual_note: Option<String>,
}

fn graded_block(a: &Arc<GradedAlgebra>, l: usize, i: usize, j: usize) -> Result<PairingReport> {
    require_qh(a)?;
    let td = tilting_data(a)?;
    let res = tilting_resolution(&td, None, &costandard(a, i)?, TiltKind::Resolution)?;
    let mut failed = Vec::new();
    if !res.is_linear() {
        failed.push(format!("∇({}) has no linear tilting resolution", a.label(i)));
    }
    if !ringel_dual_of(td.clone())?.positive {
        failed.push("the Ringel dual is not positively graded".to_string());
    }
    if !failed.is_empty() {
        return Err(Error::PreconditionFailed(failed.join("; ")));
    }
    let hp = higher_pairing_with(&td, &res, l, i, j)?;
    let d = l as i64;
    let rows: Vec<usize> = (0..hp.left_shifts.len()).filter(|&r| hp.left_shifts[r] == d).collect();
    let cols: Vec<usize> = (0..hp.right_shifts.len()).filter(|&c| hp.right_shifts[c] == -d).collect();
    let mut report = PairingReport::new(
        PairingKind::GradedHigher(l),
        i,
        j,
        rows.iter().map(|&r| hp.report.left_basis[r].clone()).collect(),
        cols.iter().map(|&c| hp.report.right_basis[c].clone()).collect(),
        hp.block(d),
    );
    report.checks = hp.report.checks.clone();
    Ok(report)
}

pub fn graded_pairing_check(a: &Arc<GradedAlgebra>, l: usize, i: usize, j: usize) -> Result<GradedPairingVerdict> {
    let report = graded_block(a, l, i, j)?;
    let nondegenerate = report.is_nondegenerate();
    let (dual_nondegenerate, dual_note) = match graded_block(&a.opposite(), l, i, j) {
        Ok(r) => (Some(r.is_nondegenerate()), None),
        Err(e @ Error::PreconditionFailed(_)) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(GradedPairingVerdict { l, i, j, report, nondegenerate, dual_nondegenerate, dual_note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn sl2_higher_rank() {
        let a = corpus::load("sl2_block");
        let hp = higher_pairing_rank(&a, 1, 1, 0).unwrap();
        assert_eq!(hp.report.rank, 1);
        assert_eq!(hp.blocks[&1], (1, 1));
        assert!(hp.report.all_checks_pass(), "{:?}", hp.report.checks);
    }

    #[test]
    fn position_zero_and_beyond() {
        let a = corpus::load("sl2_block");
        for i in 0..2 {
            assert_eq!(higher_pairing_rank(&a, 0, i, i).unwrap().report.rank, 1);
        }
        let hp = higher_pairing_rank(&a, 5, 1, 0).unwrap();
        assert_eq!((hp.report.rank, hp.report.matrix.rows(), hp.report.matrix.cols()), (0, 0, 0));
    }

    #[test]
    fn rank_equals_multiplicity_on_corpus() {
        for name in corpus::QH_NAMES {
            let a = corpus::load(name);
            let td = tilting_data(&a).unwrap();
            for i in 0..td.len() {
                let res = tilting_resolution(&td, None, &costandard(&a, i).unwrap(), TiltKind::Resolution).unwrap();
                for l in 0..=res.len() {
                    for j in 0..td.len() {
                        let hp = higher_pairing_with(&td, &res, l, i, j).unwrap();
                        assert!(hp.report.all_checks_pass(), "{name} l={l} i={i} j={j} {:?}", hp.report.checks);
                    }
                }
            }
        }
    }

    #[test]
    fn graded_check_cases() {
        let s = corpus::load("sl2_block");
        let v = graded_pairing_check(&s, 1, 1, 0).unwrap();
        assert_eq!((v.report.left_basis.len(), v.report.right_basis.len()), (1, 1));
        assert!(v.nondegenerate);
        assert_eq!(v.dual_nondegenerate, Some(true));
        let k = corpus::load("k1");
        assert!(graded_pairing_check(&k, 1, 0, 0).unwrap().nondegenerate);
        let b = corpus::load("a4_branch");
        let mut hit = false;
        for i in 0..4 {
            if let Err(e) = graded_pairing_check(&b, 1, i, 0) {
                assert_eq!(e.code(), "precondition_failed");
                hit = true;
            }
        }
        assert!(hit);
    }
}

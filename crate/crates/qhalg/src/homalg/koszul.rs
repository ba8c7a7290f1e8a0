//! Koszulity predicates and the Koszul dual.

use std::sync::Arc;

use serde::Serialize;

use super::{default_cap, partial_resolution, yoneda_ext_algebra};
use crate::algebra::{build_algebra, iso_search, presentation_extract, quadratic_dual, GradedAlgebra, IsoMode};
use crate::error::{Error, Result};
use crate::modules::{simple, GradedModule};
use crate::qh::standard;

/// Total dimension up to which the Yoneda oracle is run.
pub const ORACLE_MAX_DIM: usize = 12;

/// `Some(true)`: linear and complete; `Some(false)`: a nonlinear term
/// appears; `None`: linear up to the cap but unfinished.
pub fn linear_resolution(m: &GradedModule, cap: usize) -> Result<Option<bool>> {
    let r = partial_resolution(m, cap)?;
    if !r.is_linear() {
        return Ok(Some(false));
    }
    Ok(r.complete.then_some(true))
}

fn all_linear(ms: &[GradedModule], cap: usize) -> Result<Option<bool>> {
    let mut out = Some(true);
    for m in ms {
        match linear_resolution(m, cap)? {
            Some(false) => return Ok(Some(false)),
            None => out = None,
            Some(true) => {}
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulFlags {
    pub is_koszul: Option<bool>,
    pub is_standard_koszul: Option<bool>,
}

/// Koszul: every simple has a linear resolution. Standard Koszul: every
/// Δ(i) has a linear projective resolution and every ∇(i) a linear
/// injective coresolution (the dual of a resolution of Δ(i) over A^op).
pub fn koszul_flags(a: &Arc<GradedAlgebra>) -> Result<KoszulFlags> {
    let cap = default_cap(a);
    let n = a.n_vertices();
    let simples: Vec<GradedModule> = (0..n).map(|i| simple(a, i)).collect::<Result<_>>()?;
    let is_koszul = all_linear(&simples, cap)?;
    let opp = a.opposite();
    let mut stds: Vec<GradedModule> = (0..n).map(|i| standard(a, i)).collect::<Result<_>>()?;
    stds.extend((0..n).map(|i| standard(&opp, i)).collect::<Result<Vec<_>>>()?);
    let is_standard_koszul = all_linear(&stds, cap)?;
    Ok(KoszulFlags { is_koszul, is_standard_koszul })
}

#[derive(Clone, Debug)]
pub struct KoszulReport {
    pub flags: KoszulFlags,
    pub dual: Option<Arc<GradedAlgebra>>,
    /// Whether the Yoneda algebra matched the dual; None if not run.
    pub oracle_agrees: Option<bool>,
}

impl KoszulReport {
    pub fn require_dual(&self) -> Result<&Arc<GradedAlgebra>> {
        self.dual.as_ref().ok_or_else(|| Error::NotKoszul(format!("flags {:?}", self.flags)))
    }
}

/// `E(A)` as the quadratic dual, cross-checked against the Yoneda algebra
/// on small inputs.
pub fn koszul_dual(a: &Arc<GradedAlgebra>) -> Result<KoszulReport> {
    if !a.is_generated_in_degree_one() {
        return Err(Error::NotDegreeOneGenerated);
    }
    let flags = koszul_flags(a)?;
    if flags.is_koszul != Some(true) {
        return Ok(KoszulReport { flags, dual: None, oracle_agrees: None });
    }
    let dual = quadratic_dual(a)?;
    let oracle_agrees = if a.dim() <= ORACLE_MAX_DIM {
        let sc = yoneda_ext_algebra(a, default_cap(a))?;
        let e = build_algebra(&presentation_extract(&sc, "y")?.presentation)?;
        let v = iso_search(&e, &dual, IsoMode::ByLabel, 0);
        if !v.is_witness() {
            return Err(Error::Invariant(format!("Yoneda algebra differs from the quadratic dual: {}", v.detail())));
        }
        Some(true)
    } else {
        None
    };
    Ok(KoszulReport { flags, dual: Some(dual), oracle_agrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn corpus_flags() {
        let t = KoszulFlags { is_koszul: Some(true), is_standard_koszul: Some(true) };
        for name in ["k1", "a3_line", "sl2_block", "a4_branch"] {
            assert_eq!(koszul_flags(&corpus::load(name)).unwrap(), t, "{name}");
        }
        let l = koszul_flags(&corpus::load("loop1")).unwrap();
        assert_eq!(l.is_koszul, None);
    }

    #[test]
    fn duals() {
        let k = corpus::load("k1");
        let e = koszul_dual(&k).unwrap();
        assert_eq!(e.require_dual().unwrap().dim(), 1);
        let s = corpus::load("sl2_block");
        let e = koszul_dual(&s).unwrap();
        assert_eq!(e.oracle_agrees, Some(true));
        assert!(iso_search(e.require_dual().unwrap(), &s, IsoMode::ByPosition, 0).is_witness());
        let a3 = koszul_dual(&corpus::load("a3_line")).unwrap();
        assert_eq!(a3.require_dual().unwrap().dim(), 5);
    }

    #[test]
    fn loop_has_no_dual() {
        let r = koszul_dual(&corpus::load("loop1")).unwrap();
        assert_eq!(r.require_dual().unwrap_err().code(), "not_koszul");
    }
}

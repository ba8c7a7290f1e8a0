//! C(A), and the comparison of E(R(A)) with R(E(A)).

use std::sync::Arc;

use serde::Serialize;

use super::LinCat;
use crate::algebra::{iso_search, GradedAlgebra, IsoMode};
use crate::error::{Error, Result};
use crate::homalg::koszul_dual;
use crate::tilting::{balanced_check, lt_flags, ringel_dual, tilting_data};

const ISO_SEED: u64 = 5;

#[derive(Clone, Debug, Serialize)]
pub struct IsoCheck {
    pub left: String,
    pub right: String,
    /// "witness", "distinguisher" or "unknown", vertices matched by label.
    pub by_label: String,
    /// The same with any vertex bijection allowed.
    pub any: String,
    pub detail: String,
}

impl IsoCheck {
    fn run(left: &str, right: &str, x: &GradedAlgebra, y: &GradedAlgebra) -> IsoCheck {
        let l = iso_search(x, y, IsoMode::ByLabel, ISO_SEED);
        let a = iso_search(x, y, IsoMode::Any, ISO_SEED);
        IsoCheck {
            left: left.into(),
            right: right.into(),
            by_label: l.name().into(),
            detail: if l.is_witness() { a.detail() } else { l.detail() },
            any: a.name().into(),
        }
    }

    pub fn holds(&self) -> bool {
        self.any == "witness"
    }
}

#[derive(Clone, Debug)]
pub struct CommuteReport {
    pub c_algebra: Arc<GradedAlgebra>,
    pub e_of_r: Arc<GradedAlgebra>,
    pub r_of_e: Arc<GradedAlgebra>,
    /// Isomorphisms the theory predicts.
    pub checks: Vec<IsoCheck>,
    /// Comparisons reported without a claim.
    pub extra: Vec<IsoCheck>,
}

impl CommuteReport {
    pub fn check(&self, left: &str, right: &str) -> Option<&IsoCheck> {
        self.checks.iter().chain(&self.extra).find(|c| c.left == left && c.right == right)
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(IsoCheck::holds)
    }
}

fn require_balanced(a: &Arc<GradedAlgebra>) -> Result<LinCat> {
    let lc = LinCat::new(a)?;
    let op = tilting_data(&a.opposite())?;
    let sct = lt_flags(&lc.ringel.tilting, &op)?.sct();
    let (bal, why) = balanced_check(&lc.ringel, sct)?;
    if !bal {
        return Err(Error::PreconditionFailed(format!("A is not balanced: {why}")));
    }
    Ok(lc)
}

fn positive_ringel(a: &Arc<GradedAlgebra>, what: &str) -> Result<Arc<GradedAlgebra>> {
    ringel_dual(a)?.algebra.ok_or_else(|| Error::PreconditionFailed(format!("the Ringel dual of {what} is not positively graded")))
}

/// `C(A)`: the Ringel dual of Λ, made opposite.
pub fn c_algebra(a: &Arc<GradedAlgebra>) -> Result<Arc<GradedAlgebra>> {
    let lc = LinCat::new(a)?;
    Ok(positive_ringel(&lc.lambda, "Λ")?.opposite())
}

pub fn verify_commute(a: &Arc<GradedAlgebra>) -> Result<CommuteReport> {
    let lc = require_balanced(a)?;
    let c = positive_ringel(&lc.lambda, "Λ")?.opposite();
    let r = lc.ringel.algebra.clone().expect("balanced implies R(A) positive");
    let e_of_r = koszul_dual(&r)?.require_dual()?.clone();
    let e = koszul_dual(a)?.require_dual()?.clone();
    let r_of_e = positive_ringel(&e, "E(A)")?;
    let cc = c_algebra(&c)?;
    let checks = vec![
        IsoCheck::run("E(R(A))", "R(E(A))", &e_of_r, &r_of_e),
        IsoCheck::run("C(A)", "E(A)", &c, &e),
        IsoCheck::run("C(C(A))", "A", &cc, a),
    ];
    let extra = vec![
        IsoCheck::run("E(R(A))", "E(A)", &e_of_r, &e),
        IsoCheck::run("E(R(A))", "A", &e_of_r, a),
        IsoCheck::run("C(A)", "E(R(A))", &c, &e_of_r),
    ];
    Ok(CommuteReport { c_algebra: c, e_of_r, r_of_e, checks, extra })
}

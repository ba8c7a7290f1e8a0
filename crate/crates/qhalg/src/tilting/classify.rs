//! Classification flags, each computed from its definition.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{ringel_dual_of, tilting_data, tilting_resolution, RingelDual, TiltKind, TiltingData};
use crate::algebra::{quadratic_dual, GradedAlgebra};
use crate::error::{Error, Result};
use crate::homalg::koszul_flags;
use crate::qh::{costandard, standard, verify_quasi_hereditary};

/// Linearity of the minimal tilting resolution of each ∇(i) and
/// coresolution of each Δ(i).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LtFlags {
    pub nabla: Vec<bool>,
    pub delta: Vec<bool>,
}

impl LtFlags {
    pub fn sct(&self) -> bool {
        self.nabla.iter().chain(&self.delta).all(|&x| x)
    }
}

pub fn lt_flags(td: &TiltingData, op: &TiltingData) -> Result<LtFlags> {
    let a = &td.alg;
    let mut nabla = Vec::new();
    let mut delta = Vec::new();
    for i in 0..td.len() {
        nabla.push(tilting_resolution(td, Some(op), &costandard(a, i)?, TiltKind::Resolution)?.is_linear());
        delta.push(tilting_resolution(td, Some(op), &standard(a, i)?, TiltKind::Coresolution)?.is_linear());
    }
    Ok(LtFlags { nabla, delta })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub qh: Option<bool>,
    pub positively_graded: Option<bool>,
    pub koszul: Option<bool>,
    pub standard_koszul: Option<bool>,
    pub sct: Option<bool>,
    pub sck: Option<bool>,
    pub ringel_positive: Option<bool>,
    pub ringel_generated_01: Option<bool>,
    pub balanced: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub flags: Flags,
    /// Witnesses and counterexamples, keyed by flag.
    pub notes: BTreeMap<String, String>,
    pub lt: Option<LtFlags>,
}

fn positively_graded(a: &GradedAlgebra) -> bool {
    a.basis().iter().all(|e| e.degree > 0 || (e.degree == 0 && e.path.is_empty()))
}

/// Balanced: A is SCT and so is the quadratic dual of R(A).
pub fn balanced_check(rd: &RingelDual, sct: bool) -> Result<(bool, String)> {
    if !sct {
        return Ok((false, "A is not SCT".into()));
    }
    let Some(r) = rd.algebra.as_ref().filter(|_| rd.generated_01) else {
        return Ok((false, "R(A) is not generated in degrees 0 and 1".into()));
    };
    let b = quadratic_dual(r)?;
    if !verify_quasi_hereditary(&b)?.is_qh {
        return Ok((false, "R(A)^! is not quasi-hereditary in its order".into()));
    }
    let tb = tilting_data(&b)?;
    let ob = tilting_data(&b.opposite())?;
    let l = lt_flags(&tb, &ob)?;
    Ok((l.sct(), format!("R(A)^! LT flags: ∇ {:?}, Δ {:?}", l.nabla, l.delta)))
}

pub fn classify(a: &Arc<GradedAlgebra>) -> Result<ClassifyReport> {
    let mut flags = Flags::default();
    let mut notes = BTreeMap::new();
    let qh = verify_quasi_hereditary(a)?;
    flags.qh = Some(qh.is_qh);
    flags.positively_graded = Some(positively_graded(a));
    let kf = koszul_flags(a)?;
    flags.koszul = kf.is_koszul;
    if kf.is_koszul.is_none() {
        notes.insert("koszul".into(), "linear up to the resolution cap but unfinished".into());
    }
    if let Some((i, why)) = qh.failure {
        for k in ["standard_koszul", "sct", "sck", "ringel_positive", "ringel_generated_01", "balanced"] {
            notes.insert(k.into(), format!("skipped: not quasi-hereditary at {} ({why})", a.label(i)));
        }
        return Ok(ClassifyReport { flags, notes, lt: None });
    }
    flags.standard_koszul = kf.is_standard_koszul;
    let td = tilting_data(a)?;
    let op = tilting_data(&a.opposite())?;
    let lt = lt_flags(&td, &op)?;
    let rd = ringel_dual_of(td)?;
    flags.ringel_positive = Some(rd.positive);
    flags.ringel_generated_01 = Some(rd.generated_01);
    if !rd.positive {
        let bad = rd.basis.iter().find(|e| e.degree < 0 || (e.degree == 0 && (e.i != e.j || !e.map.mat.inverse().is_some())));
        if let Some(e) = bad {
            notes.insert(
                "ringel_positive".into(),
                format!("hom(T({}), T({})⟨{}⟩) ≠ 0", a.label(e.i), a.label(e.j), e.degree),
            );
        }
    }
    let sct = lt.sct();
    flags.sct = Some(sct);
    for (i, (&n, &d)) in lt.nabla.iter().zip(&lt.delta).enumerate() {
        if !n {
            notes.entry("sct".into()).or_insert(format!("∇({}) has no linear tilting resolution", a.label(i)));
        }
        if !d {
            notes.entry("sct".into()).or_insert(format!("Δ({}) has no linear tilting coresolution", a.label(i)));
        }
    }
    flags.sck = kf.is_standard_koszul.map(|s| s && rd.positive);
    if let Some(sck) = flags.sck {
        if sck != sct {
            return Err(Error::Invariant(format!("SCT = {sct} but SCK = {sck}")));
        }
    }
    let (bal, why) = balanced_check(&rd, sct)?;
    flags.balanced = Some(bal);
    notes.insert("balanced".into(), why);
    Ok(ClassifyReport { flags, notes, lt: Some(lt) })
}

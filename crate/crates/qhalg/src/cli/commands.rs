//! One report builder per subcommand.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::{presentation_json, ObjectArg, PairingArg};
use crate::algebra::{iso_search, GradedAlgebra, IsoMode};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};
use crate::homalg::{ext_graded_with, koszul_dual, koszul_flags, partial_resolution};
use crate::lincat::{verify_commute, IsoCheck, LinCat, LinearTiltingComplex, ObjectKind};
use crate::modules::{hom_graded, loewy_data, projective, simple, GradedModule};
use crate::pairings::{
    bar_pairing_and_n, graded_pairing_check, higher_pairing_rank, pairing_hom_ext1, tau_map, PairingReport,
};
use crate::qh::{bgg_check, costandard, require_qh, standard, verify_quasi_hereditary};
use crate::random::qh_sample;
use crate::tilting::{classify, lt_flags, ringel_dual, tilting_data, tilting_resolution, TiltKind, TiltingComplex};

fn matrix_json(m: &Matrix) -> Value {
    json!((0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn dims_json(d: &BTreeMap<i64, usize>) -> Value {
    Value::Object(d.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn labels(a: &GradedAlgebra) -> Vec<String> {
    (0..a.n_vertices()).map(|v| a.label(v).to_string()).collect()
}

/// A vertex given by label, or else by 1-based position.
fn vertex(a: &GradedAlgebra, s: &str) -> Result<usize> {
    if let Some(v) = (0..a.n_vertices()).find(|&v| a.label(v) == s) {
        return Ok(v);
    }
    match s.parse::<usize>() {
        Ok(k) if (1..=a.n_vertices()).contains(&k) => Ok(k - 1),
        _ => Err(Error::UnknownVertex(s.to_string())),
    }
}

fn summary(a: &GradedAlgebra) -> Value {
    json!({
        "vertices": labels(a),
        "dim": a.dim(),
        "dims_by_degree": a.dims(),
        "presentation": presentation_json(a.presentation()),
    })
}

fn iso_json(x: &GradedAlgebra, y: &GradedAlgebra, seed: u64) -> Value {
    let by_label = iso_search(x, y, IsoMode::ByLabel, seed);
    let any = iso_search(x, y, IsoMode::Any, seed);
    json!({ "by_label": by_label.name(), "any": any.name(), "detail": any.detail() })
}

pub fn info(a: &Arc<GradedAlgebra>) -> Result<Value> {
    let n = a.n_vertices();
    let mut blocks = Vec::new();
    for s in 0..n {
        for t in 0..n {
            for d in 0..=a.top_degree() {
                let k = a.block_dim(s, t, d);
                if k > 0 {
                    blocks.push(json!({ "source": a.label(s), "target": a.label(t), "degree": d, "dim": k }));
                }
            }
        }
    }
    let proj: Vec<Value> = (0..n)
        .map(|i| {
            let p = projective(a, i)?;
            Ok(json!({ "vertex": a.label(i), "dim": p.total_dim(), "loewy_length": loewy_data(&p).loewy_length }))
        })
        .collect::<Result<_>>()?;
    Ok(json!({
        "field": a.field().name(),
        "vertices": labels(a),
        "arrows": a.arrows().len(),
        "relations": a.presentation().relations.len(),
        "dim": a.dim(),
        "top_degree": a.top_degree(),
        "dims_by_degree": a.dims(),
        "generated_in_degree_one": a.is_generated_in_degree_one(),
        "blocks": blocks,
        "projectives": proj,
        "presentation": presentation_json(a.presentation()),
    }))
}

pub fn check(a: &Arc<GradedAlgebra>) -> Result<Value> {
    let v = verify_quasi_hereditary(a)?;
    let c = classify(a)?;
    let mut out = json!({
        "qh": v.is_qh,
        "failure": v.failure.as_ref().map(|(i, why)| json!({ "vertex": a.label(*i), "reason": why })),
        "flags": c.flags,
        "notes": c.notes,
        "lt": c.lt,
    });
    if v.is_qh {
        out["bgg_reciprocity"] = json!(bgg_check(a)?);
    }
    Ok(out)
}

/// Hom and Ext^l dims per shift for all pairs among Δ, ∇, L and T.
pub fn tables(a: &Arc<GradedAlgebra>, max_ext: usize) -> Result<Value> {
    require_qh(a)?;
    let n = a.n_vertices();
    let td = tilting_data(a)?;
    let mut objs: Vec<(String, GradedModule)> = Vec::new();
    for i in 0..n {
        objs.push((format!("Δ({})", a.label(i)), standard(a, i)?));
        objs.push((format!("∇({})", a.label(i)), costandard(a, i)?));
        objs.push((format!("L({})", a.label(i)), simple(a, i)?));
        objs.push((format!("T({})", a.label(i)), td.modules[i].clone()));
    }
    let mut rows = Vec::new();
    for (ln, m) in &objs {
        let res = Arc::new(partial_resolution(m, max_ext + 2)?);
        for (rn, y) in &objs {
            let mut ext = Map::new();
            for l in 1..=max_ext {
                let e = ext_graded_with(&res, y, l)?;
                if e.total_dim() > 0 {
                    ext.insert(l.to_string(), dims_json(&e.dims()));
                }
            }
            rows.push(json!({ "left": ln, "right": rn, "hom": dims_json(&hom_graded(m, y)?.dims()), "ext": ext }));
        }
    }
    Ok(json!({ "max_ext": max_ext, "entries": rows }))
}

fn pairing_json(a: &GradedAlgebra, r: &PairingReport) -> Value {
    json!({
        "kind": r.kind,
        "i": a.label(r.i),
        "j": a.label(r.j),
        "left_basis": r.left_basis,
        "right_basis": r.right_basis,
        "matrix": matrix_json(&r.matrix),
        "reciprocal": r.reciprocal.iter().map(|row| row.iter().map(|x| x.as_ref().map(Scalar::to_string)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "rank": r.rank,
        "left_kernel_dim": r.left_kernel_dim,
        "right_kernel_dim": r.right_kernel_dim,
        "nondegenerate": r.is_nondegenerate(),
        "checks": r.checks,
    })
}

fn one_pairing(a: &Arc<GradedAlgebra>, kind: PairingArg, l: usize, i: usize, j: usize) -> Result<Value> {
    Ok(match kind {
        PairingArg::HomExt1 => pairing_json(a, &pairing_hom_ext1(a, i, j)?),
        PairingArg::Bar => {
            let b = bar_pairing_and_n(a, i, j)?;
            let mut v = pairing_json(a, &b.report);
            v["socle_multiplicity"] = json!(b.socle_multiplicity);
            v["ext_dim"] = json!(b.ext_dim);
            v["n_dim"] = json!(b.n_module.total_dim());
            v
        }
        PairingArg::Tau => {
            let t = tau_map(a, i, j)?;
            json!({
                "kind": "tau",
                "i": a.label(i),
                "j": a.label(j),
                "matrix": matrix_json(&t.matrix),
                "source_dim": t.source_dim,
                "target_dim": t.target_dim,
                "rank": t.rank,
                "pairing_rank": t.pairing_rank,
                "bar_rank": t.bar_rank,
                "checks": t.checks,
            })
        }
        PairingArg::Higher => {
            let h = higher_pairing_rank(a, l, i, j)?;
            let mut v = pairing_json(a, &h.report);
            v["left_shifts"] = json!(h.left_shifts);
            v["right_shifts"] = json!(h.right_shifts);
            v["blocks"] = Value::Object(
                h.blocks.iter().map(|(d, (r, m))| (d.to_string(), json!({ "rank": r, "multiplicity": m }))).collect(),
            );
            v
        }
        PairingArg::Graded => {
            let g = graded_pairing_check(a, l, i, j)?;
            let mut v = pairing_json(a, &g.report);
            v["l"] = json!(g.l);
            v["dual_nondegenerate"] = json!(g.dual_nondegenerate);
            v["dual_note"] = json!(g.dual_note);
            v
        }
    })
}

pub fn pairings(a: &Arc<GradedAlgebra>, kind: PairingArg, l: usize, i: Option<&str>, j: Option<&str>) -> Result<Value> {
    require_qh(a)?;
    let n = a.n_vertices();
    let is: Vec<usize> = match i {
        Some(s) => vec![vertex(a, s)?],
        None => (0..n).collect(),
    };
    let js: Vec<usize> = match j {
        Some(s) => vec![vertex(a, s)?],
        None => (0..n).collect(),
    };
    let ordered = matches!(kind, PairingArg::HomExt1 | PairingArg::Bar | PairingArg::Tau);
    let explicit = i.is_some() && j.is_some();
    let mut out = Vec::new();
    for &x in &is {
        for &y in &js {
            // Without an explicit pair, only j < i is enumerated for the
            // order-restricted kinds.
            if ordered && !explicit && y >= x {
                continue;
            }
            out.push(one_pairing(a, kind, l, x, y)?);
        }
    }
    Ok(json!({ "level": l, "pairings": out }))
}

fn complex_json(a: &GradedAlgebra, c: &TiltingComplex) -> Value {
    json!({
        "kind": c.kind,
        "length": c.len(),
        "terms": c.terms.iter().map(|t| t.summands.iter().map(|&(j, s)| json!([a.label(j), s])).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "linear": c.is_linear(),
        "exact": c.check(),
        "minimal": c.is_minimal(),
    })
}

pub fn tilting(a: &Arc<GradedAlgebra>) -> Result<Value> {
    let td = tilting_data(a)?;
    let op = tilting_data(&a.opposite())?;
    let mut mods = Vec::new();
    for i in 0..td.len() {
        let t = &td.modules[i];
        let ld = loewy_data(t);
        let res = tilting_resolution(&td, Some(&op), &costandard(a, i)?, TiltKind::Resolution)?;
        let cores = tilting_resolution(&td, Some(&op), &standard(a, i)?, TiltKind::Coresolution)?;
        mods.push(json!({
            "vertex": a.label(i),
            "dim": t.total_dim(),
            "loewy_length": ld.loewy_length,
            "rigid": ld.is_rigid,
            "nabla_resolution": complex_json(a, &res),
            "delta_coresolution": complex_json(a, &cores),
        }));
    }
    let homs: Vec<Value> = td
        .hom_dims()
        .iter()
        .map(|(&(i, j, d), &k)| json!({ "source": a.label(i), "target": a.label(j), "shift": d, "dim": k }))
        .collect();
    let lt = lt_flags(&td, &op)?;
    Ok(json!({ "modules": mods, "hom_dims": homs, "sct": lt.sct(), "lt": lt }))
}

pub fn ringel(a: &Arc<GradedAlgebra>, seed: u64) -> Result<Value> {
    let rd = ringel_dual(a)?;
    let mut out = json!({
        "dim": rd.sc.dim(),
        "positive": rd.positive,
        "generated_01": rd.generated_01,
    });
    if let Some(r) = &rd.algebra {
        out["algebra"] = summary(r);
        out["qh"] = json!(verify_quasi_hereditary(r)?.is_qh);
        out["iso_to_input"] = iso_json(r, a, seed);
    }
    Ok(out)
}

pub fn koszul(a: &Arc<GradedAlgebra>, seed: u64) -> Result<Value> {
    let flags = koszul_flags(a)?;
    let mut out = json!({ "flags": flags, "generated_in_degree_one": a.is_generated_in_degree_one() });
    if !a.is_generated_in_degree_one() {
        return Ok(out);
    }
    let k = koszul_dual(a)?;
    out["oracle_agrees"] = json!(k.oracle_agrees);
    if let Some(e) = &k.dual {
        out["dual"] = summary(e);
        out["iso_to_input"] = iso_json(e, a, seed);
    }
    Ok(out)
}

fn object_json(a: &GradedAlgebra, c: &LinearTiltingComplex) -> Value {
    let terms: Vec<Value> = c
        .summands
        .iter()
        .map(|(p, ks)| json!({ "position": p, "summands": ks.iter().map(|&k| a.label(k)).collect::<Vec<_>>() }))
        .collect();
    let homology: Vec<Value> = c
        .homology_support()
        .into_iter()
        .map(|p| {
            let h = c.complex.homology(p);
            let dv: Vec<Value> = h
                .dim_vector()
                .iter()
                .filter(|(_, &k)| k > 0)
                .map(|(&(v, d), &k)| json!({ "vertex": a.label(v), "degree": d, "dim": k }))
                .collect();
            json!({ "position": p, "dim": h.total_dim(), "dim_vector": dv })
        })
        .collect();
    json!({ "lambda_dim": c.x.total_dim(), "terms": terms, "homology": homology })
}

pub fn lincat(a: &Arc<GradedAlgebra>, object: Option<ObjectArg>, i: Option<&str>) -> Result<Value> {
    let lc = LinCat::new(a)?;
    let n = a.n_vertices();
    let mut out = json!({
        "lambda": summary(&lc.lambda),
        "lambda_matches_koszul": lc.lambda_matches_koszul,
    });
    if let Some(kind) = object {
        let kind = match kind {
            ObjectArg::Std => ObjectKind::Std,
            ObjectArg::Costd => ObjectKind::Costd,
            ObjectArg::Simple => ObjectKind::Simple,
            ObjectArg::Tilt => ObjectKind::Tilt,
        };
        let is: Vec<usize> = match i {
            Some(s) => vec![vertex(a, s)?],
            None => (0..n).collect(),
        };
        let objs: Vec<Value> = is
            .iter()
            .map(|&v| {
                let mut o = object_json(a, &lc.canonical_object(kind, v)?);
                o["vertex"] = json!(a.label(v));
                Ok(o)
            })
            .collect::<Result<_>>()?;
        out["objects"] = json!(objs);
        return Ok(out);
    }
    let mut ext = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for l in -2..=2 {
                let e = lc.ext1_in_t(x, y, l)?;
                ext.push(json!({
                    "i": a.label(x),
                    "j": a.label(y),
                    "l": l,
                    "lambda_dim": e.lambda_dim,
                    "hom_dim": e.hom_dim,
                    "agrees": e.agrees(),
                }));
            }
        }
    }
    out["ext1_in_t"] = json!(ext);
    Ok(out)
}

fn iso_check_json(c: &IsoCheck) -> Value {
    json!({ "left": c.left, "right": c.right, "by_label": c.by_label, "any": c.any, "holds": c.holds(), "detail": c.detail })
}

pub fn commute(a: &Arc<GradedAlgebra>) -> Result<Value> {
    let r = verify_commute(a)?;
    Ok(json!({
        "checks": r.checks.iter().map(iso_check_json).collect::<Vec<_>>(),
        "extra": r.extra.iter().map(iso_check_json).collect::<Vec<_>>(),
        "all_hold": r.all_hold(),
        "c_algebra": summary(&r.c_algebra),
    }))
}

/// Scans random QH algebras for candidates that are SCT but not balanced.
pub fn mine(start: u64, count: usize, max_vertices: usize, max_dim: usize) -> Result<Value> {
    let sample = qh_sample(start, count, max_vertices, max_dim);
    let mut rows = Vec::new();
    let mut candidates = Vec::new();
    for (seed, a) in &sample {
        let c = classify(a)?;
        let cand = c.flags.sct == Some(true) && c.flags.balanced == Some(false);
        if cand {
            candidates.push(json!({ "seed": seed, "algebra": summary(a), "balanced_note": c.notes.get("balanced") }));
        }
        rows.push(json!({
            "seed": seed,
            "vertices": a.n_vertices(),
            "dim": a.dim(),
            "sct": c.flags.sct,
            "sck": c.flags.sck,
            "balanced": c.flags.balanced,
            "candidate": cand,
        }));
    }
    let next = sample.last().map_or(start, |(s, _)| s + 1);
    Ok(json!({
        "start_seed": start,
        "next_seed": next,
        "examined": rows.len(),
        "scanned": rows,
        "candidates": candidates,
    }))
}

//! The diagonal Ext algebra `⊕_l Ext^l(L, L⟨−l⟩)` with the Yoneda product,
//! computed by lifting cocycles to chain maps between minimal resolutions.

use super::{min_proj_resolution, ProjSum, Resolution};
use crate::algebra::{GradedAlgebra, SVec, ScAlgebra};
use crate::error::{Error, Result};
use crate::exactla::Scalar;
use crate::modules::{simple, GradedModule, ModuleMap};
use std::sync::Arc;

/// Basis element: source vertex s, term l, generator g of `P^s_l`.
#[derive(Clone, Copy, Debug)]
struct Elem {
    s: usize,
    t: usize,
    l: usize,
    g: usize,
}

/// Restriction of `v ∈ X` to the slot `(vertex, degree)`.
fn part(x: &GradedModule, v: &[Scalar], vertex: usize, degree: i64) -> Vec<Scalar> {
    let mut out = vec![x.field().zero(); x.total_dim()];
    if let Some(t) = x.slot_index(vertex, degree) {
        for k in x.range(t) {
            out[k] = v[k].clone();
        }
    }
    out
}

/// Lifts `y` through `d` inside the slot `(vertex, degree)`.
fn lift(d: &ModuleMap, src: &GradedModule, y: &[Scalar], vertex: usize, degree: i64) -> Result<Vec<Scalar>> {
    if y.iter().all(Scalar::is_zero) {
        return Ok(vec![src.field().zero(); src.total_dim()]);
    }
    let x = d.mat.solve_vec(y).ok_or_else(|| Error::Invariant("chain map does not lift".into()))?;
    Ok(part(src, &x, vertex, degree))
}

/// Generator vertex and degree of summand g.
fn gen_slot(p: &ProjSum, g: usize) -> (usize, i64) {
    let (v, s) = p.summands[g];
    (v, -s)
}

/// Components `ξ_k: P^s_{p+k} → P^t_k` of a chain map lifting the cocycle
/// that sends generator `g` of `P^s_p` to the top of `L_t` (degree −p).
fn chain_lift(rs: &Resolution, p: usize, g: usize, rt: &Resolution, upto: usize) -> Result<Vec<ModuleMap>> {
    let f = rs.module.field();
    let src = &rs.terms[p];
    let t0 = &rt.terms[0];
    let top = rt.augmentation.mat.column(t0.gens[0]);
    let mut comps = Vec::new();
    let first: Vec<Vec<Scalar>> = (0..src.len())
        .map(|h| {
            let y = if h == g { top.clone() } else { vec![f.zero(); rt.module.total_dim()] };
            let (v, dg) = gen_slot(src, h);
            lift(&rt.augmentation, &t0.module, &y, v, dg - p as i64)
        })
        .collect::<Result<_>>()?;
    comps.push(src.map_to(&t0.module, &first, -(p as i64)));
    for k in 0..upto {
        let (Some(s_next), Some(t_next)) = (rs.terms.get(p + k + 1), rt.terms.get(k + 1)) else { break };
        let ds = &rs.diffs[p + k];
        let dt = &rt.diffs[k];
        let prev = comps.last().unwrap().compose(ds);
        let imgs: Vec<Vec<Scalar>> = (0..s_next.len())
            .map(|h| {
                let y = prev.mat.column(s_next.gens[h]);
                let (v, dg) = gen_slot(s_next, h);
                lift(dt, &t_next.module, &y, v, dg - p as i64)
            })
            .collect::<Result<_>>()?;
        comps.push(s_next.map_to(&t_next.module, &imgs, -(p as i64)));
    }
    Ok(comps)
}

/// Structure constants of the diagonal Yoneda algebra, with `Ext(L_s, L_t)`
/// placed in `e_t E e_s` and `x∘y` = first y then x. Needs every simple to
/// have a complete linear minimal resolution (NotKoszul otherwise).
pub fn yoneda_ext_algebra(a: &Arc<GradedAlgebra>, cap: usize) -> Result<ScAlgebra> {
    let f = a.field();
    let n = a.n_vertices();
    let mut res = Vec::new();
    for s in 0..n {
        let r = min_proj_resolution(&simple(a, s)?, cap)?;
        if !r.is_linear() {
            return Err(Error::NotKoszul(format!("L({}) has a nonlinear resolution", a.label(s))));
        }
        res.push(r);
    }
    let mut elems = Vec::new();
    for (s, r) in res.iter().enumerate() {
        for (l, p) in r.terms.iter().enumerate() {
            for (g, &(t, _)) in p.summands.iter().enumerate() {
                elems.push(Elem { s, t, l, g });
            }
        }
    }
    let index = |s: usize, l: usize, g: usize| elems.iter().position(|e| e.s == s && e.l == l && e.g == g);
    let dim = elems.len();
    let mut mul: Vec<Vec<SVec>> = vec![vec![Vec::new(); dim]; dim];
    for (y, ey) in elems.iter().enumerate() {
        // y: L_s → L_t in degree p; x: L_t → L_u in degree q.
        let rs = &res[ey.s];
        let rt = &res[ey.t];
        let max_q = rt.len() - 1;
        let lifts = chain_lift(rs, ey.l, ey.g, rt, max_q)?;
        for (x, ex) in elems.iter().enumerate() {
            if ex.s != ey.t {
                continue;
            }
            let q = ex.l;
            let Some(xi_q) = lifts.get(q) else { continue };
            let Some(src) = rs.terms.get(ey.l + q) else { continue };
            // x∘y evaluated on the generators of P^s_{p+q}.
            let mut out: SVec = Vec::new();
            for h in 0..src.len() {
                let img = xi_q.mat.column(src.gens[h]);
                let pt = &rt.terms[q];
                let c: Scalar = pt
                    .expand(&img)
                    .into_iter()
                    .filter(|&(g, b, _)| g == ex.g && a.basis()[b].path.is_empty())
                    .fold(f.zero(), |acc, (_, _, c)| &acc + &c);
                if !c.is_zero() {
                    let z = index(ey.s, ey.l + q, h).expect("basis element");
                    out.push((z, c));
                }
            }
            mul[x][y] = out;
        }
    }
    let idempotents = (0..n).map(|s| index(s, 0, 0).expect("idempotent")).collect();
    Ok(ScAlgebra {
        field: f,
        labels: (0..n).map(|v| a.label(v).to_string()).collect(),
        elems: elems.iter().map(|e| (e.s, e.t, e.l as i64)).collect(),
        idempotents,
        mul,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, iso_search, presentation_extract, quadratic_dual, IsoMode};
    use crate::corpus;

    fn ext_alg(name: &str) -> (Arc<GradedAlgebra>, Arc<GradedAlgebra>) {
        let a = corpus::load(name);
        let sc = yoneda_ext_algebra(&a, 40).unwrap();
        let e = build_algebra(&presentation_extract(&sc, "y").unwrap().presentation).unwrap();
        (a, e)
    }

    #[test]
    fn yoneda_is_associative_on_sl2() {
        let a = corpus::load("sl2_block");
        let sc = yoneda_ext_algebra(&a, 40).unwrap();
        let n = sc.dim();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (ux, uy, uz) = (sc.unit_vector(x), sc.unit_vector(y), sc.unit_vector(z));
                    let l = sc.multiply(&sc.multiply(&ux, &uy), &uz);
                    let r = sc.multiply(&ux, &sc.multiply(&uy, &uz));
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn yoneda_matches_quadratic_dual() {
        for name in ["k1", "a3_line", "sl2_block", "c4_flow", "a4_branch"] {
            let (a, e) = ext_alg(name);
            let q = quadratic_dual(&a).unwrap();
            assert!(iso_search(&e, &q, IsoMode::ByLabel, 1).is_witness(), "{name}");
            if name == "a3_line" {
                assert!(!iso_search(&e, &q.opposite(), IsoMode::ByLabel, 1).is_witness());
            }
        }
    }

    #[test]
    fn a3_ext_algebra_dimension() {
        let (_, e) = ext_alg("a3_line");
        assert_eq!(e.dim(), 5);
    }
}

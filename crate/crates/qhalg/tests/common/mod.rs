//! Test-side oracles and shared corpora.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use qhalg::algebra::GradedAlgebra;
use qhalg::corpus;
use qhalg::exactla::{Matrix, Scalar};
use qhalg::modules::GradedModule;
use qhalg::random::qh_sample;

/// Largest algebra handed to the bar-complex oracle.
pub const ORACLE_DIM: usize = 12;

/// The bundled quasi-hereditary algebras with their names.
pub fn bundled_qh() -> Vec<(String, Arc<GradedAlgebra>)> {
    corpus::QH_NAMES.iter().map(|n| (n.to_string(), corpus::load(n))).collect()
}

/// 100 random quasi-hereditary algebras, n ≤ 4, total dimension ≤ 12.
pub fn random_qh() -> Vec<(String, Arc<GradedAlgebra>)> {
    qh_sample(0, 100, 4, 12).into_iter().map(|(s, a)| (format!("seed {s}"), a)).collect()
}

pub fn full_corpus() -> Vec<(String, Arc<GradedAlgebra>)> {
    let mut v = bundled_qh();
    v.extend(random_qh());
    v
}

/// Chains `a_1 ⊗ … ⊗ a_l ⊗ m` of the reduced bar complex, one basis
/// element of A_+ per slot and a basis vector of M.
struct Chains {
    list: Vec<(Vec<usize>, usize)>,
    index: HashMap<(Vec<usize>, usize), usize>,
}

fn module_vertex_degree(m: &GradedModule) -> Vec<(usize, i64)> {
    let mut out = vec![(0, 0); m.total_dim()];
    for (s, sl) in m.slots().iter().enumerate() {
        for k in m.range(s) {
            out[k] = (sl.vertex, sl.degree);
        }
    }
    out
}

fn chains(a: &GradedAlgebra, plus: &[usize], mvd: &[(usize, i64)], l: usize) -> Chains {
    let mut list: Vec<(Vec<usize>, usize)> = (0..mvd.len()).map(|m| (vec![], m)).collect();
    for _ in 0..l {
        let mut next = Vec::new();
        for (w, m) in &list {
            // Prepend a_1; it must start where the rest of the chain ends.
            let end = w.first().map_or(mvd[*m].0, |&b| a.basis()[b].tgt);
            for &b in plus {
                if a.basis()[b].src == end {
                    let mut v = vec![b];
                    v.extend(w);
                    next.push((v, *m));
                }
            }
        }
        list = next;
    }
    let index = list.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
    Chains { list, index }
}

fn chain_end(a: &GradedAlgebra, mvd: &[(usize, i64)], c: &(Vec<usize>, usize)) -> (usize, i64) {
    let deg: i64 = c.0.iter().map(|&b| a.basis()[b].degree).sum::<i64>() + mvd[c.1].1;
    (c.0.first().map_or(mvd[c.1].0, |&b| a.basis()[b].tgt), deg)
}

/// Coordinates and their positions.
type Coords = (Vec<(usize, usize)>, HashMap<(usize, usize), usize>);

/// Cochain coordinates at shift j: (chain, basis vector of N) with the
/// value landing in N at the chain's end vertex and degree + j.
fn cochain_coords(
    a: &GradedAlgebra,
    ch: &Chains,
    mvd: &[(usize, i64)],
    n_by_slot: &BTreeMap<(usize, i64), Vec<usize>>,
    j: i64,
) -> Coords {
    let mut coords = Vec::new();
    for (k, c) in ch.list.iter().enumerate() {
        let (v, d) = chain_end(a, mvd, c);
        for &y in n_by_slot.get(&(v, d + j)).map_or(&[][..], Vec::as_slice) {
            coords.push((k, y));
        }
    }
    let idx = coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    (coords, idx)
}

/// `dim ext^l(M, N⟨j⟩)` for every j with a nonzero value, from the reduced
/// bar resolution relative to the vertex idempotents. Independent of the
/// minimal-resolution code: it uses only the multiplication table and the
/// module action matrices.
pub fn bar_ext_dims(m: &GradedModule, n: &GradedModule, l: usize) -> BTreeMap<i64, usize> {
    let a = m.alg().clone();
    let f = a.field();
    let plus: Vec<usize> = (0..a.dim()).filter(|&b| !a.basis()[b].path.is_empty()).collect();
    let mvd = module_vertex_degree(m);
    let nvd = module_vertex_degree(n);
    let mut n_by_slot: BTreeMap<(usize, i64), Vec<usize>> = BTreeMap::new();
    for (y, &vd) in nvd.iter().enumerate() {
        n_by_slot.entry(vd).or_default().push(y);
    }
    let act_m: Vec<Matrix> = (0..a.dim()).map(|b| m.basis_action(b)).collect();
    let act_n: Vec<Matrix> = (0..a.dim()).map(|b| n.basis_action(b)).collect();
    let levels: Vec<Chains> = (0..=l + 1).map(|k| chains(&a, &plus, &mvd, k)).collect();
    let (Some(nlo), Some(nhi)) = (n.min_degree(), n.max_degree()) else { return BTreeMap::new() };
    let (Some(mlo), Some(mhi)) = (m.min_degree(), m.max_degree()) else { return BTreeMap::new() };
    let top = a.top_degree() * (l as i64 + 1);

    // Matrix of d^k: C^k → C^{k+1} at shift j.
    let diff = |k: usize, j: i64| -> Matrix {
        let (src, sidx) = cochain_coords(&a, &levels[k], &mvd, &n_by_slot, j);
        let (tgt, _) = cochain_coords(&a, &levels[k + 1], &mvd, &n_by_slot, j);
        let mut d = Matrix::zeros(f, tgt.len(), src.len());
        let mut add = |r: usize, chain: &(Vec<usize>, usize), y: usize, c: &Scalar| {
            if let Some(&col) = levels[k].index.get(chain).and_then(|&ci| sidx.get(&(ci, y))) {
                d.add_to(r, col, c);
            }
        };
        for (r, &(ci, y2)) in tgt.iter().enumerate() {
            let (w, mi) = levels[k + 1].list[ci].clone();
            // a_1 · f(a_2, …, m)
            let rest = (w[1..].to_vec(), mi);
            for y in 0..n.total_dim() {
                let c = act_n[w[0]].get(y2, y);
                if !c.is_zero() {
                    add(r, &rest, y, c);
                }
            }
            // Σ (−1)^p f(…, a_p a_{p+1}, …)
            for p in 0..k {
                let sign = if p.is_multiple_of(2) { -f.one() } else { f.one() };
                for (b, c) in a.mul_basis(w[p], w[p + 1]) {
                    let mut v = w[..p].to_vec();
                    v.push(b);
                    v.extend(&w[p + 2..]);
                    add(r, &(v, mi), y2, &(&sign * &c));
                }
            }
            // (−1)^{k+1} f(a_1, …, a_k, a_{k+1} m)
            let sign = if k.is_multiple_of(2) { -f.one() } else { f.one() };
            let am = &act_m[w[k]];
            for m2 in 0..m.total_dim() {
                let c = am.get(m2, mi);
                if !c.is_zero() {
                    add(r, &(w[..k].to_vec(), m2), y2, &(&sign * c));
                }
            }
        }
        d
    };

    let mut out = BTreeMap::new();
    for j in (nlo - mhi - top)..=(nhi - mlo) {
        let (c, _) = cochain_coords(&a, &levels[l], &mvd, &n_by_slot, j);
        if c.is_empty() {
            continue;
        }
        let cocycles = c.len() - diff(l, j).rank();
        let boundaries = if l == 0 { 0 } else { diff(l - 1, j).rank() };
        if cocycles > boundaries {
            out.insert(j, cocycles - boundaries);
        }
    }
    out
}

/// Writes one acceptance line straight to stderr, bypassing capture.
pub fn report(criterion: usize, ok: bool, detail: &str) {
    use std::io::Write;
    let line = format!("criterion {criterion:>2}: {} {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
}

//! Graded Hom spaces as null spaces of commutation constraints.

use std::collections::BTreeMap;

use super::{check_same_algebra, GradedModule, ModuleMap};
use crate::error::Result;
use crate::exactla::{reduce_rows, Matrix, Scalar};

/// Bases of `hom(M, N⟨j⟩)` for every shift `j` with a nonzero space.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub by_shift: BTreeMap<i64, Vec<ModuleMap>>,
}

impl HomSpace {
    pub fn dim_at(&self, j: i64) -> usize {
        self.by_shift.get(&j).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.by_shift.values().map(Vec::len).sum()
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.by_shift.iter().map(|(&j, v)| (j, v.len())).collect()
    }
}

/// Shifts at which `hom(M, N⟨j⟩)` can be nonzero.
pub fn hom_shift_range(m: &GradedModule, n: &GradedModule) -> Option<(i64, i64)> {
    let (m0, m1) = (m.min_degree()?, m.max_degree()?);
    let (n0, n1) = (n.min_degree()?, n.max_degree()?);
    Some((n0 - m1, n1 - m0))
}

pub fn hom_graded(m: &GradedModule, n: &GradedModule) -> Result<HomSpace> {
    check_same_algebra(m, n)?;
    let mut by_shift = BTreeMap::new();
    if let Some((lo, hi)) = hom_shift_range(m, n) {
        for j in lo..=hi {
            let b = hom_at(m, n, j)?;
            if !b.is_empty() {
                by_shift.insert(j, b);
            }
        }
    }
    Ok(HomSpace { by_shift })
}

/// Basis of degree-0 maps `M → N⟨j⟩`.
pub fn hom_at(m: &GradedModule, n: &GradedModule, j: i64) -> Result<Vec<ModuleMap>> {
    check_same_algebra(m, n)?;
    let f = m.field();
    // Unknown block F_s : M_s → N_{t(s)} stored row-major at base[s].
    let mut base: Vec<Option<(usize, usize)>> = Vec::with_capacity(m.slots().len());
    let mut nvars = 0;
    for sl in m.slots() {
        match n.slot_index(sl.vertex, sl.degree + j) {
            Some(t) => {
                base.push(Some((t, nvars)));
                nvars += n.slots()[t].dim * sl.dim;
            }
            None => base.push(None),
        }
    }
    if nvars == 0 {
        return Ok(Vec::new());
    }
    let var = |s: usize, p: usize, r: usize| -> Option<usize> {
        base[s].map(|(_, b)| b + p * m.slots()[s].dim + r)
    };
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (a, ar) in m.alg().arrows().iter().enumerate() {
        for (s, sl) in m.slots().iter().enumerate() {
            if sl.vertex != ar.src {
                continue;
            }
            // Target slot of the equation in N.
            let Some(t2) = n.slot_index(ar.tgt, sl.degree + ar.degree + j) else { continue };
            let d_t2 = n.slots()[t2].dim;
            let am = m.block(a, s);
            let an = base[s].and_then(|(t, _)| n.block(a, t));
            // F_{s'} · A^M_a  −  A^N_a · F_s = 0 as a d_t2 × dim(s) matrix.
            for p in 0..d_t2 {
                for q in 0..sl.dim {
                    let mut row = vec![f.zero(); nvars];
                    let mut any = false;
                    if let Some((s2, bm)) = am {
                        for r in 0..bm.rows() {
                            let c = bm.get(r, q);
                            if !c.is_zero() {
                                let v = var(s2, p, r).expect("target slot of F_{s'} is t2");
                                row[v] = &row[v] + c;
                                any = true;
                            }
                        }
                    }
                    if let Some((_, bn)) = an {
                        for r in 0..bn.cols() {
                            let c = bn.get(p, r);
                            if !c.is_zero() {
                                let v = var(s, r, q).unwrap();
                                row[v] = &row[v] - c;
                                any = true;
                            }
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let piv = reduce_rows(&mut rows, nvars);
    let mut is_piv = vec![None; nvars];
    for (r, &c) in piv.iter().enumerate() {
        is_piv[c] = Some(r);
    }
    let mut out = Vec::new();
    for free in (0..nvars).filter(|&c| is_piv[c].is_none()) {
        let mut x = vec![f.zero(); nvars];
        x[free] = f.one();
        for (r, &c) in piv.iter().enumerate() {
            let v = &rows[r][free];
            if !v.is_zero() {
                x[c] = -v;
            }
        }
        let mut mat = Matrix::zeros(f, n.total_dim(), m.total_dim());
        for (s, sl) in m.slots().iter().enumerate() {
            let Some((t, b)) = base[s] else { continue };
            let tl = n.slots()[t];
            for p in 0..tl.dim {
                for r in 0..sl.dim {
                    let v = &x[b + p * sl.dim + r];
                    if !v.is_zero() {
                        mat.set(tl.offset + p, sl.offset + r, v.clone());
                    }
                }
            }
        }
        out.push(ModuleMap { shift: j, mat });
    }
    Ok(out)
}

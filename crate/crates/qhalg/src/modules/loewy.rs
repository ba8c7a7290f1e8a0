//! Radical and socle series.

use super::sub::canonical;
use super::{GradedModule, GradedSubspace};
use crate::exactla::Matrix;

#[derive(Clone, Debug)]
pub struct LoewyData {
    /// `rad^0 M = M ⊇ rad M ⊇ … ⊇ rad^L M = 0`.
    pub radical_series: Vec<GradedSubspace>,
    /// `soc^0 M = 0 ⊆ soc M ⊆ … ⊆ soc^L M = M`.
    pub socle_series: Vec<GradedSubspace>,
    pub loewy_length: usize,
    pub is_rigid: bool,
    /// Radical layers top-down; each entry `(vertex, degree, multiplicity)`.
    pub layers: Vec<Vec<(usize, i64, usize)>>,
}

/// `A_+ · U`, the span of all arrow images of U.
fn arrow_image(m: &GradedModule, u: &GradedSubspace) -> GradedSubspace {
    let f = m.field();
    let mut cols: Vec<Matrix> = m.slots().iter().map(|s| Matrix::zeros(f, s.dim, 0)).collect();
    for a in 0..m.alg().arrows().len() {
        for s in 0..m.slots().len() {
            if let Some((t, b)) = m.block(a, s) {
                let img = b.mul(&u.per_slot[s]);
                cols[t] = Matrix::hstack(f, b.rows(), &[&cols[t], &img]);
            }
        }
    }
    GradedSubspace { per_slot: cols.iter().map(canonical).collect() }
}

pub fn radical(m: &GradedModule) -> GradedSubspace {
    arrow_image(m, &GradedSubspace::full(m))
}

/// Elements sent into `lower` by every arrow.
fn socle_over(m: &GradedModule, lower: &GradedSubspace) -> GradedSubspace {
    let f = m.field();
    let per_slot = (0..m.slots().len())
        .map(|s| {
            let dim = m.slots()[s].dim;
            let mut parts: Vec<Matrix> = Vec::new();
            for a in 0..m.alg().arrows().len() {
                if let Some((t, b)) = m.block(a, s) {
                    // Annihilator of lower_t composed with the arrow block.
                    let ann = lower.per_slot[t].transpose().kernel_basis().transpose();
                    parts.push(ann.mul(b));
                }
            }
            let refs: Vec<&Matrix> = parts.iter().collect();
            canonical(&Matrix::vstack(f, dim, &refs).kernel_basis())
        })
        .collect();
    GradedSubspace { per_slot }
}

pub fn socle(m: &GradedModule) -> GradedSubspace {
    socle_over(m, &GradedSubspace::zero(m))
}

pub fn loewy_data(m: &GradedModule) -> LoewyData {
    let mut rad = vec![GradedSubspace::full(m)];
    while !rad.last().unwrap().is_zero() {
        let next = arrow_image(m, rad.last().unwrap());
        rad.push(next);
    }
    let l = rad.len() - 1;
    let mut soc = vec![GradedSubspace::zero(m)];
    while soc.last().unwrap().dim() < m.total_dim() {
        let next = socle_over(m, soc.last().unwrap());
        soc.push(next);
    }
    debug_assert_eq!(soc.len() - 1, l, "radical and socle lengths agree");
    let is_rigid = (0..=l).all(|k| rad[l - k] == soc[k]);
    let layers = (0..l)
        .map(|k| {
            m.slots()
                .iter()
                .enumerate()
                .filter_map(|(s, sl)| {
                    let mult = rad[k].per_slot[s].cols() - rad[k + 1].per_slot[s].cols();
                    (mult > 0).then_some((sl.vertex, sl.degree, mult))
                })
                .collect()
        })
        .collect();
    LoewyData { radical_series: rad, socle_series: soc, loewy_length: l, is_rigid, layers }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::modules::{direct_sum, projective, simple};

    #[test]
    fn simples_have_length_one() {
        let a = corpus::load("c4_flow");
        for i in 0..a.n_vertices() {
            let d = loewy_data(&simple(&a, i).unwrap());
            assert_eq!(d.loewy_length, 1);
            assert!(d.is_rigid);
        }
    }

    #[test]
    fn sl2_projective_is_rigid_of_length_three() {
        let a = corpus::load("sl2_block");
        let d = loewy_data(&projective(&a, 0).unwrap());
        assert_eq!(d.loewy_length, 3);
        assert!(d.is_rigid);
        assert_eq!(d.layers, vec![vec![(0, 0, 1)], vec![(1, 1, 1)], vec![(0, 2, 1)]]);
        let d2 = loewy_data(&projective(&a, 1).unwrap());
        assert_eq!(d2.loewy_length, 2);
    }

    #[test]
    fn non_rigid_sum() {
        // L(1) ⊕ P(3) over a3_line: socle is L(1) ⊕ L(1)⟨−2⟩, radical is P(3)'s.
        let a = corpus::load("a3_line");
        let m = direct_sum(&[&simple(&a, 0).unwrap(), &projective(&a, 2).unwrap()]).unwrap().module;
        let d = loewy_data(&m);
        assert_eq!(d.loewy_length, 3);
        assert!(!d.is_rigid);
        assert_eq!(socle(&m).dim(), 2);
        assert_eq!(radical(&m).dim(), 2);
    }
}

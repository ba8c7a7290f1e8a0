//! Krull–Schmidt decomposition and graded isomorphism tests.
//!
//! Summands are split off with Fitting decompositions `M = ker y ⊕ im y`,
//! `y = (x − λ)^N`, for degree-0 endomorphisms `x` with a rational eigenvalue
//! `λ` that are not of the form `λ + nilpotent`. Locality of a piece is
//! certified over ℚ by the trace form on `End_0` and over 𝔽_p by exhibiting a
//! nilpotent ideal of codimension one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom_at, image, kernel, sub_module, GradedModule, ModuleMap};
use crate::error::{Error, Result};
use crate::exactla::{minimal_polynomial, rational_roots, Field, Matrix, Scalar};

pub const DEFAULT_SEED: u64 = 0x5eed;
const RANDOM_TRIES: usize = 40;

#[derive(Clone, Debug)]
pub struct Piece {
    /// Indecomposable, normalized so its lowest degree is 0.
    pub module: GradedModule,
    pub multiplicity: usize,
    /// The summand is `module⟨shift⟩`.
    pub shift: i64,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub pieces: Vec<Piece>,
    /// One embedding per summand copy: `(piece index, map piece → M⟨−shift⟩)`.
    pub embeddings: Vec<(usize, ModuleMap)>,
}

impl Decomposition {
    /// Columns of all embeddings side by side; invertible for a valid
    /// decomposition.
    pub fn combined(&self, m: &GradedModule) -> Matrix {
        let mats: Vec<&Matrix> = self.embeddings.iter().map(|(_, e)| &e.mat).collect();
        Matrix::hstack(m.field(), m.total_dim(), &mats)
    }

    /// Checks that every embedding is a homomorphism and that together they
    /// give an isomorphism onto M.
    pub fn verify(&self, m: &GradedModule) -> bool {
        let homs = self.embeddings.iter().all(|(k, e)| e.is_homomorphism(&self.pieces[*k].module, m));
        homs && self.combined(m).inverse().is_some()
    }

    pub fn summand_count(&self) -> usize {
        self.embeddings.len()
    }
}

pub fn decompose(m: &GradedModule) -> Result<Decomposition> {
    decompose_seeded(m, DEFAULT_SEED)
}

pub fn decompose_seeded(m: &GradedModule, seed: u64) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = Vec::new();
    split(m, Matrix::identity(m.field(), m.total_dim()), &mut rng, &mut raw)?;
    let mut pieces: Vec<Piece> = Vec::new();
    let mut embeddings = Vec::new();
    for (s, incl) in raw {
        let lo = s.min_degree().unwrap_or(0);
        let x = s.shift(lo);
        let shift = -lo;
        let mut placed = false;
        for (k, p) in pieces.iter_mut().enumerate() {
            if p.shift != shift {
                continue;
            }
            // Both indecomposable: an iso exists iff some basis hom is invertible.
            if let Some(phi) = hom_at(&p.module, &x, 0)?.into_iter().find(|g| g.mat.inverse().is_some()) {
                p.multiplicity += 1;
                embeddings.push((k, ModuleMap { shift: lo, mat: incl.mul(&phi.mat) }));
                placed = true;
                break;
            }
        }
        if !placed {
            embeddings.push((pieces.len(), ModuleMap { shift: lo, mat: incl }));
            pieces.push(Piece { module: x, multiplicity: 1, shift });
        }
    }
    Ok(Decomposition { pieces, embeddings })
}

/// Recursively splits `s` (embedded in the original module by `incl`).
fn split(
    s: &GradedModule,
    incl: Matrix,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<(GradedModule, Matrix)>,
) -> Result<()> {
    if s.is_zero() {
        return Ok(());
    }
    let end: Vec<Matrix> = hom_at(s, s, 0)?.into_iter().map(|g| g.mat).collect();
    if end.len() == 1 {
        out.push((s.clone(), incl));
        return Ok(());
    }
    let f = s.field();
    if f == Field::Q && semisimple_rank(&end) == 1 {
        out.push((s.clone(), incl));
        return Ok(());
    }
    match find_splitting(&end, s.total_dim(), rng) {
        Some(y) => {
            let map = ModuleMap { shift: 0, mat: y };
            for u in [kernel(s, &map), image(s, s, &map)] {
                let sub = sub_module(s, &u);
                let inc = incl.mul(&sub.inclusion.mat);
                split(&sub.module, inc, rng, out)?;
            }
            Ok(())
        }
        None => {
            if matches!(f, Field::Fp(_)) && fp_local(&end, s.total_dim()) {
                out.push((s.clone(), incl));
                return Ok(());
            }
            Err(Error::FieldUnsupported(format!(
                "no splitting endomorphism found for a module of dimension {} over {}",
                s.total_dim(),
                f.name()
            )))
        }
    }
}

/// Rank of the trace form `(x, y) ↦ tr(xy)` on End_0; equals dim End/rad in
/// characteristic zero.
fn semisimple_rank(end: &[Matrix]) -> usize {
    let f = end[0].field();
    let n = end.len();
    let mut g = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in i..n {
            let t = end[i].mul(&end[j]).trace();
            g.set(i, j, t.clone());
            g.set(j, i, t);
        }
    }
    g.rank()
}

/// If `x` has an eigenvalue λ in the field with `x − λ` not nilpotent,
/// returns `(x − λ)^N`, a non-zero non-invertible element.
fn fitting_power(x: &Matrix, n: usize) -> Option<Matrix> {
    let f = x.field();
    let roots = rational_roots(&minimal_polynomial(x))?;
    for l in roots {
        let y = x.sub(&Matrix::identity(f, n).scale(&l)).pow(n);
        if !y.is_zero() {
            return Some(y);
        }
    }
    None
}

/// `x − λ` when it is nilpotent for the unique eigenvalue λ.
fn nilpotent_part(x: &Matrix, n: usize) -> Option<Matrix> {
    let f = x.field();
    let roots = rational_roots(&minimal_polynomial(x))?;
    if roots.len() != 1 {
        return None;
    }
    let y = x.sub(&Matrix::identity(f, n).scale(&roots[0]));
    (!y.is_zero() && y.pow(n).is_zero()).then_some(y)
}

fn find_splitting(end: &[Matrix], n: usize, rng: &mut ChaCha8Rng) -> Option<Matrix> {
    let f = end[0].field();
    for x in end {
        if let Some(y) = fitting_power(x, n) {
            return Some(y);
        }
    }
    // Nilpotent basis elements times others often give idempotents mod rad.
    for x in end {
        let Some(nil) = nilpotent_part(x, n) else { continue };
        for b in end {
            for c in [nil.mul(b), b.mul(&nil)] {
                if let Some(y) = fitting_power(&c, n) {
                    return Some(y);
                }
            }
        }
    }
    for i in 0..end.len() {
        for j in i + 1..end.len() {
            if let Some(y) = fitting_power(&end[i].add(&end[j]), n) {
                return Some(y);
            }
        }
    }
    for _ in 0..RANDOM_TRIES {
        let mut x = Matrix::zeros(f, n, n);
        for b in end {
            let c: i64 = rng.gen_range(-9..=9);
            x = x.add(&b.scale(&f.int(c)));
        }
        if let Some(y) = fitting_power(&x, n) {
            return Some(y);
        }
    }
    None
}

/// Over a prime field: End_0 is local when `{b − λ_b}` spans a nilpotent
/// two-sided ideal of codimension one.
fn fp_local(end: &[Matrix], n: usize) -> bool {
    let f = end[0].field();
    let mut gens = Vec::new();
    for x in end {
        let roots = rational_roots(&minimal_polynomial(x)).unwrap_or_default();
        if roots.len() != 1 {
            return false;
        }
        let y = x.sub(&Matrix::identity(f, n).scale(&roots[0]));
        if !y.pow(n).is_zero() {
            return false;
        }
        gens.push(y);
    }
    let flat = |ms: &[Matrix]| -> Matrix {
        let cols: Vec<Vec<Scalar>> = ms.iter().map(|m| m.entries().to_vec()).collect();
        Matrix::from_columns(f, n * n, &cols)
    };
    let j = flat(&gens);
    let rj = j.rank();
    if rj + 1 != end.len() {
        return false;
    }
    let span_e = flat(end);
    if span_e.rank() != end.len() {
        return false;
    }
    // Ideal check: E·J and J·E stay in J.
    for b in end {
        for g in &gens {
            for p in [b.mul(g), g.mul(b)] {
                let mut all = gens.clone();
                all.push(p);
                if flat(&all).rank() != rj {
                    return false;
                }
            }
        }
    }
    // J is spanned by nilpotents and is an ideal; confirm J^k reaches 0.
    let mut power = gens.clone();
    for _ in 0..=n {
        let mut next = Vec::new();
        for p in &power {
            for g in &gens {
                let q = p.mul(g);
                if !q.is_zero() {
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            return true;
        }
        let r = flat(&next).column_space();
        power = (0..r.cols())
            .map(|c| Matrix::from_vec(f, n, n, r.column(c)))
            .collect();
    }
    false
}

/// Finds `j` and an invertible map `M → N⟨j⟩`, or `None` when none exists.
pub fn iso_shift_test(m: &GradedModule, n: &GradedModule) -> Result<Option<(ModuleMap, i64)>> {
    super::check_same_algebra(m, n)?;
    if m.total_dim() != n.total_dim() {
        return Ok(None);
    }
    let (Some(m0), Some(n0)) = (m.min_degree(), n.min_degree()) else {
        return Ok(Some((ModuleMap::zero(m, n, 0), 0)));
    };
    let j = n0 - m0;
    for sl in m.slots() {
        if n.slot_dim(sl.vertex, sl.degree + j) != sl.dim {
            return Ok(None);
        }
    }
    let hom = hom_at(m, n, j)?;
    if hom.is_empty() {
        return Ok(None);
    }
    if let Some(g) = hom.iter().find(|g| g.mat.inverse().is_some()) {
        return Ok(Some((g.clone(), j)));
    }
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..12 {
        let mut acc = ModuleMap::zero(m, n, j);
        for g in &hom {
            acc = acc.add(&g.scale(&f.int(rng.gen_range(-50..=50))));
        }
        if acc.mat.inverse().is_some() {
            return Ok(Some((acc, j)));
        }
    }
    // Exact fallback: compare Krull-Schmidt decompositions.
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    let mut used = vec![false; dn.pieces.len()];
    // For each piece of M, the matching piece of N and an iso between them.
    let mut matched: Vec<(usize, Matrix)> = Vec::new();
    for p in &dm.pieces {
        let mut found = None;
        for (k, q) in dn.pieces.iter().enumerate() {
            if used[k] || q.shift + j != p.shift || q.multiplicity != p.multiplicity {
                continue;
            }
            if let Some(phi) = hom_at(&p.module, &q.module, 0)?.into_iter().find(|g| g.mat.inverse().is_some()) {
                found = Some((k, phi.mat));
                break;
            }
        }
        let Some((k, phi)) = found else { return Ok(None) };
        used[k] = true;
        matched.push((k, phi));
    }
    if used.iter().any(|u| !u) {
        return Ok(None);
    }
    // Assemble Σ emb^N ∘ φ ∘ π^M, pairing copies in order.
    let proj_m = dm.combined(m).inverse().expect("decomposition is invertible");
    let mut out = Matrix::zeros(f, n.total_dim(), m.total_dim());
    let mut row = 0;
    let mut next_copy = vec![0usize; dn.pieces.len()];
    for (pk, e) in &dm.embeddings {
        let dim = e.mat.cols();
        let (qk, phi) = &matched[*pk];
        let en = dn
            .embeddings
            .iter()
            .filter(|(k, _)| k == qk)
            .nth(next_copy[*qk])
            .map(|(_, e)| &e.mat)
            .expect("multiplicities agree");
        next_copy[*qk] += 1;
        let pi = proj_m.block(row, dim, 0, m.total_dim());
        out = out.add(&en.mul(phi).mul(&pi));
        row += dim;
    }
    let map = ModuleMap { shift: j, mat: out };
    debug_assert!(map.is_homomorphism(m, n));
    Ok(Some((map, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::modules::{direct_sum, projective, radical, simple, trace_of_projectives};

    #[test]
    fn simple_square() {
        let a = corpus::load("a3_line");
        let l = simple(&a, 0).unwrap();
        let m = direct_sum(&[&l, &l]).unwrap().module;
        let d = decompose(&m).unwrap();
        assert_eq!(d.pieces.len(), 1);
        assert_eq!((d.pieces[0].multiplicity, d.pieces[0].shift), (2, 0));
        assert_eq!(d.pieces[0].module, l);
        assert!(d.verify(&m));
    }

    #[test]
    fn shifted_projectives() {
        let a = corpus::load("sl2_block");
        let p1 = projective(&a, 0).unwrap();
        let p2 = projective(&a, 1).unwrap();
        let m = direct_sum(&[&p1, &p2.shift(3)]).unwrap().module;
        let d = decompose(&m).unwrap();
        let mut got: Vec<(usize, i64)> = d.pieces.iter().map(|p| (p.module.total_dim(), p.shift)).collect();
        got.sort();
        assert_eq!(got, vec![(2, 3), (3, 0)]);
        assert!(d.verify(&m));
    }

    #[test]
    fn radical_of_p3() {
        let a = corpus::load("a3_line");
        let p3 = projective(&a, 2).unwrap();
        let r = sub_module(&p3, &radical(&p3)).module;
        let d = decompose(&r).unwrap();
        assert_eq!(d.pieces.len(), 1);
        assert_eq!((d.pieces[0].multiplicity, d.pieces[0].shift), (1, -1));
        assert!(iso_shift_test(&d.pieces[0].module, &projective(&a, 1).unwrap()).unwrap().is_some());
    }

    #[test]
    fn mixed_multiplicities() {
        let a = corpus::load("a4_branch");
        let ps: Vec<_> = (0..4).map(|i| projective(&a, i).unwrap()).collect();
        let l = simple(&a, 2).unwrap();
        let m = direct_sum(&[&ps[1], &l, &ps[3], &ps[1], &l.shift(-1), &ps[0]]).unwrap().module;
        let d = decompose(&m).unwrap();
        assert!(d.verify(&m));
        let total: usize = d.pieces.iter().map(|p| p.module.total_dim() * p.multiplicity).sum();
        assert_eq!(total, m.total_dim());
        assert_eq!(d.summand_count(), 6);
        assert_eq!(d.pieces.len(), 5);
    }

    #[test]
    fn decomposition_over_prime_field() {
        let mut p = corpus::presentation("sl2_block");
        p.field = Field::Fp(5);
        let a = crate::algebra::build_algebra(&p).unwrap();
        let p1 = projective(&a, 0).unwrap();
        let m = direct_sum(&[&p1, &p1, &simple(&a, 1).unwrap()]).unwrap().module;
        let d = decompose(&m).unwrap();
        assert!(d.verify(&m));
        assert_eq!(d.summand_count(), 3);
    }

    #[test]
    fn iso_tests() {
        let a = corpus::load("sl2_block");
        let p1 = projective(&a, 0).unwrap();
        let (g, j) = iso_shift_test(&p1, &p1.shift(-2)).unwrap().unwrap();
        assert_eq!(j, 2);
        assert!(g.is_homomorphism(&p1, &p1.shift(-2)));
        assert!(iso_shift_test(&simple(&a, 0).unwrap(), &simple(&a, 1).unwrap()).unwrap().is_none());
        // Same dimension vectors, different structure.
        let t = trace_of_projectives(&p1, &[1]);
        let sub = sub_module(&p1, &t).module;
        let l = direct_sum(&[&simple(&a, 1).unwrap().shift(-1), &simple(&a, 0).unwrap().shift(-2)]).unwrap().module;
        assert_eq!(sub.dim_vector(), l.dim_vector());
        assert!(iso_shift_test(&sub, &l).unwrap().is_none());
    }

    #[test]
    fn iso_of_sums_in_different_orders() {
        let a = corpus::load("c4_flow");
        let ms: Vec<_> = (0..4).map(|i| projective(&a, i).unwrap()).collect();
        let x = direct_sum(&[&ms[0], &ms[2], &ms[2]]).unwrap().module;
        let y = direct_sum(&[&ms[2], &ms[0], &ms[2]]).unwrap().module.shift(4);
        let (g, j) = iso_shift_test(&x, &y).unwrap().unwrap();
        assert_eq!(j, -4);
        assert!(g.is_homomorphism(&x, &y) && g.mat.inverse().is_some());
    }
}

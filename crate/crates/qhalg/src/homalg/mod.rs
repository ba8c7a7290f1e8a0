//! Complexes, minimal graded projective resolutions, graded Ext and first
//! extensions, Koszulity.

mod ext;
mod koszul;
mod yoneda;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};
use crate::modules::{
    direct_sum, image, kernel, projective_with_basis, quotient, radical, sub_module, GradedModule,
    GradedSubspace, ModuleMap,
};

pub use ext::{
    class_of_extension, ext_graded, ext_graded_with, ext_space, pullback_pushout_ext1, realize_ext1, split_extension, ExtGraded,
    ExtSpace, Ext1Class, Side,
};
pub use koszul::{koszul_dual, koszul_flags, linear_resolution, KoszulFlags, KoszulReport, ORACLE_MAX_DIM};
pub use yoneda::yoneda_ext_algebra;

/// A bounded cochain complex: `d[i]: X^i → X^{i+1}`, all of degree 0.
#[derive(Clone, Debug)]
pub struct ComplexOfModules {
    pub alg: Arc<GradedAlgebra>,
    pub positions: BTreeMap<i64, GradedModule>,
    pub differentials: BTreeMap<i64, ModuleMap>,
}

impl ComplexOfModules {
    pub fn new(alg: &Arc<GradedAlgebra>) -> ComplexOfModules {
        ComplexOfModules { alg: alg.clone(), positions: BTreeMap::new(), differentials: BTreeMap::new() }
    }

    pub fn term(&self, i: i64) -> GradedModule {
        self.positions.get(&i).cloned().unwrap_or_else(|| GradedModule::zero(&self.alg))
    }

    pub fn differential(&self, i: i64) -> ModuleMap {
        match self.differentials.get(&i) {
            Some(d) => d.clone(),
            None => ModuleMap::zero(&self.term(i), &self.term(i + 1), 0),
        }
    }

    /// Every differential is a homomorphism of degree 0 and `d∘d = 0`.
    pub fn is_complex(&self) -> bool {
        for (&i, d) in &self.differentials {
            if d.shift != 0 || !d.is_homomorphism(&self.term(i), &self.term(i + 1)) {
                return false;
            }
            if let Some(d2) = self.differentials.get(&(i + 1)) {
                if !d2.compose(d).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// `ker d^i / im d^{i−1}`.
    pub fn homology(&self, i: i64) -> GradedModule {
        let x = self.term(i);
        let k = kernel(&x, &self.differential(i));
        let im = image(&self.term(i - 1), &x, &self.differential(i - 1));
        let ks = sub_module(&x, &k);
        let cols = im.to_matrix(&x);
        let coords = ks.inclusion.mat.solve(&cols).ok().flatten().expect("image lies in kernel");
        let low = GradedSubspace::from_vectors(&ks.module, &coords.columns());
        quotient(&ks.module, &low).module
    }

    pub fn range(&self) -> Option<(i64, i64)> {
        let nz: Vec<i64> = self.positions.iter().filter(|(_, m)| !m.is_zero()).map(|(&i, _)| i).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    /// Shifts every term by ⟨j⟩ and every position by `p` (`X[p]^i = X^{i+p}`).
    pub fn shifted(&self, j: i64, p: i64) -> ComplexOfModules {
        let sign = if p % 2 == 0 { self.alg.field().one() } else { -self.alg.field().one() };
        ComplexOfModules {
            alg: self.alg.clone(),
            positions: self.positions.iter().map(|(&i, m)| (i - p, m.shift(j))).collect(),
            differentials: self
                .differentials
                .iter()
                .map(|(&i, d)| (i - p, ModuleMap { shift: 0, mat: d.mat.scale(&sign) }))
                .collect(),
        }
    }
}

/// A direct sum of shifted indecomposable projectives `⊕ P(v)⟨s⟩`.
#[derive(Clone, Debug)]
pub struct ProjSum {
    pub summands: Vec<(usize, i64)>,
    pub module: GradedModule,
    /// Coordinate of the generator `e_v` of each summand.
    pub gens: Vec<usize>,
    /// For each coordinate: summand index and algebra basis element.
    pub coords: Vec<(usize, usize)>,
}

impl ProjSum {
    pub fn new(alg: &Arc<GradedAlgebra>, summands: Vec<(usize, i64)>) -> ProjSum {
        if summands.is_empty() {
            return ProjSum { summands, module: GradedModule::zero(alg), gens: vec![], coords: vec![] };
        }
        let parts: Vec<(GradedModule, Vec<usize>)> = summands
            .iter()
            .map(|&(v, s)| {
                let (p, b) = projective_with_basis(alg, v);
                (p.shift(s), b)
            })
            .collect();
        let refs: Vec<&GradedModule> = parts.iter().map(|p| &p.0).collect();
        let ds = direct_sum(&refs).expect("same algebra");
        let mut coords = vec![(0, 0); ds.module.total_dim()];
        let mut gens = Vec::new();
        for (g, ((_, basis), inc)) in parts.iter().zip(&ds.inclusions).enumerate() {
            let mut gen = None;
            for (c, &b) in basis.iter().enumerate() {
                let row = (0..inc.mat.rows()).find(|&r| !inc.mat.get(r, c).is_zero()).unwrap();
                coords[row] = (g, b);
                if alg.basis()[b].path.is_empty() {
                    gen = Some(row);
                }
            }
            gens.push(gen.expect("projective has its idempotent"));
        }
        ProjSum { summands, module: ds.module, gens, coords }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// The map `self → target⟨shift⟩` sending generator `g` to `images[g]`.
    pub fn map_to(&self, target: &GradedModule, images: &[Vec<Scalar>], shift: i64) -> ModuleMap {
        let f = target.field();
        let mut mat = Matrix::zeros(f, target.total_dim(), self.module.total_dim());
        for (c, &(g, b)) in self.coords.iter().enumerate() {
            let col = target.act_basis_vec(b, &images[g]);
            for (r, x) in col.into_iter().enumerate() {
                if !x.is_zero() {
                    mat.set(r, c, x);
                }
            }
        }
        ModuleMap { shift, mat }
    }

    /// Coefficients of a vector of the sum, grouped per summand as
    /// `(summand, basis element, coefficient)`.
    pub fn expand(&self, v: &[Scalar]) -> Vec<(usize, usize, Scalar)> {
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (self.coords[c].0, self.coords[c].1, x.clone()))
            .collect()
    }

    /// Multiplicity of `P(v)⟨s⟩` among the summands.
    pub fn multiplicity(&self, v: usize, s: i64) -> usize {
        self.summands.iter().filter(|&&x| x == (v, s)).count()
    }
}

/// Projective cover of `m`: summands follow a basis of `m / rad m`, with
/// generator images the corresponding lifts.
pub fn projective_cover(m: &GradedModule) -> (ProjSum, Vec<Vec<Scalar>>) {
    let q = quotient(m, &radical(m));
    let mut summands = Vec::new();
    let mut images = Vec::new();
    for sl in q.module.slots() {
        for k in 0..sl.dim {
            summands.push((sl.vertex, -sl.degree));
            images.push(q.section.column(sl.offset + k));
        }
    }
    (ProjSum::new(m.alg(), summands), images)
}

/// A minimal graded projective resolution `… → P_1 → P_0 → M`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: GradedModule,
    pub terms: Vec<ProjSum>,
    /// `diffs[k]: P_{k+1} → P_k`.
    pub diffs: Vec<ModuleMap>,
    pub augmentation: ModuleMap,
    /// True when the last kernel was zero (the resolution is finished).
    pub complete: bool,
}

pub fn default_cap(a: &GradedAlgebra) -> usize {
    2 * a.dim()
}

/// Full minimal resolution; `CapExceeded` if it needs more than `cap` terms.
pub fn min_proj_resolution(m: &GradedModule, cap: usize) -> Result<Resolution> {
    let r = partial_resolution(m, cap)?;
    if !r.complete {
        return Err(Error::CapExceeded(cap));
    }
    Ok(r)
}

/// The first `len` terms (or fewer if the resolution ends earlier).
pub fn partial_resolution(m: &GradedModule, len: usize) -> Result<Resolution> {
    let (p0, imgs) = projective_cover(m);
    let aug = p0.map_to(m, &imgs, 0);
    let mut terms = vec![p0];
    let mut diffs = Vec::new();
    let mut last = aug.clone();
    loop {
        let pk = terms.last().unwrap();
        let k = kernel(&pk.module, &last);
        if k.is_zero() {
            return Ok(Resolution { module: m.clone(), terms, diffs, augmentation: aug, complete: true });
        }
        if terms.len() >= len {
            return Ok(Resolution { module: m.clone(), terms, diffs, augmentation: aug, complete: false });
        }
        let ks = sub_module(&pk.module, &k);
        let (next, imgs) = projective_cover(&ks.module);
        let lifted: Vec<Vec<Scalar>> = imgs.iter().map(|v| ks.inclusion.mat.mul_vec(v)).collect();
        let d = next.map_to(&pk.module, &lifted, 0);
        terms.push(next);
        diffs.push(d.clone());
        last = d;
    }
}

impl Resolution {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, k: usize) -> Option<&ProjSum> {
        self.terms.get(k)
    }

    /// Positions `−k` hold `P_k`.
    pub fn complex(&self) -> ComplexOfModules {
        let mut c = ComplexOfModules::new(self.module.alg());
        for (k, t) in self.terms.iter().enumerate() {
            c.positions.insert(-(k as i64), t.module.clone());
        }
        for (k, d) in self.diffs.iter().enumerate() {
            c.differentials.insert(-(k as i64) - 1, d.clone());
        }
        c
    }

    /// Linear relative to the top: term k is generated in degree `d0 + k`.
    pub fn is_linear(&self) -> bool {
        let Some(&(_, s0)) = self.terms[0].summands.first() else { return true };
        self.terms.iter().enumerate().all(|(k, t)| t.summands.iter().all(|&(_, s)| s == s0 - k as i64))
    }

    /// Exactness away from position 0, homology there equal to M via the
    /// augmentation, `d∘d = 0`, and radical-valued differentials.
    pub fn check(&self) -> bool {
        let c = self.complex();
        if !c.is_complex() || !self.augmentation.is_homomorphism(&self.terms[0].module, &self.module) {
            return false;
        }
        if let Some(d0) = self.diffs.first() {
            if !self.augmentation.compose(d0).is_zero() {
                return false;
            }
        }
        // Augmentation onto; each kernel equals the next image.
        if self.augmentation.rank() != self.module.total_dim() {
            return false;
        }
        let mut prev = self.augmentation.clone();
        for (k, d) in self.diffs.iter().enumerate() {
            let ker = kernel(&self.terms[k].module, &prev);
            let im = image(&self.terms[k + 1].module, &self.terms[k].module, d);
            if ker != im {
                return false;
            }
            prev = d.clone();
        }
        if self.complete {
            let last = self.terms.last().unwrap();
            if !kernel(&last.module, &prev).is_zero() {
                return false;
            }
        }
        self.is_minimal()
    }

    /// No differential component hits a generator: every image lies in the
    /// radical of the target.
    pub fn is_minimal(&self) -> bool {
        for (k, d) in self.diffs.iter().enumerate() {
            let tgt = &self.terms[k];
            let rad = radical(&tgt.module);
            let im = image(&self.terms[k + 1].module, &tgt.module, d);
            if !rad.contains(&im) {
                return false;
            }
        }
        true
    }
}

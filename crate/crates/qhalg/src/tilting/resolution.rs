//! Minimal tilting resolutions of ∇-filtered modules by iterated minimal
//! add(T)-approximations, and coresolutions of Δ-filtered modules through
//! the opposite algebra.

use serde::Serialize;

use super::{independent, tilting_data, TiltingData};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::homalg::ComplexOfModules;
use crate::modules::{
    direct_sum, dual_map, dualize, dualize_over, hom_graded, kernel, sub_module, GradedModule, ModuleMap,
};
use crate::qh::{delta_filtration, nabla_filtration};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TiltKind {
    Resolution,
    Coresolution,
}

/// `⊕ T(j)⟨s⟩` with summand inclusions and projections.
#[derive(Clone, Debug)]
pub struct TiltSum {
    pub summands: Vec<(usize, i64)>,
    pub module: GradedModule,
    pub inclusions: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
    pub parts: Vec<GradedModule>,
}

impl TiltSum {
    fn new(td: &TiltingData, summands: Vec<(usize, i64)>) -> Result<TiltSum> {
        let parts: Vec<GradedModule> = summands.iter().map(|&(j, s)| td.modules[j].shift(s)).collect();
        if parts.is_empty() {
            return Ok(TiltSum {
                summands,
                module: GradedModule::zero(&td.alg),
                inclusions: vec![],
                projections: vec![],
                parts,
            });
        }
        let refs: Vec<&GradedModule> = parts.iter().collect();
        let ds = direct_sum(&refs)?;
        Ok(TiltSum { summands, module: ds.module, inclusions: ds.inclusions, projections: ds.projections, parts })
    }

    pub fn multiplicity(&self, j: usize, s: i64) -> usize {
        self.summands.iter().filter(|&&x| x == (j, s)).count()
    }
}

/// Resolution: `… → T_1 → T_0 → M`, `T_k` at position −k,
/// `diffs[k]: T_{k+1} → T_k`. Coresolution: `M → T_0 → T_1 → …`, `T_k` at
/// position k, `diffs[k]: T_k → T_{k+1}`.
#[derive(Clone, Debug)]
pub struct TiltingComplex {
    pub kind: TiltKind,
    pub module: GradedModule,
    pub terms: Vec<TiltSum>,
    pub diffs: Vec<ModuleMap>,
    pub augmentation: ModuleMap,
}

impl TiltingComplex {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn position(&self, k: usize) -> i64 {
        match self.kind {
            TiltKind::Resolution => -(k as i64),
            TiltKind::Coresolution => k as i64,
        }
    }

    /// Position −l (resolution) or l (coresolution) lies in add(T⟨∓l⟩).
    pub fn is_linear(&self) -> bool {
        self.terms.iter().enumerate().all(|(k, t)| t.summands.iter().all(|&(_, s)| s == self.position(k)))
    }

    pub fn complex(&self) -> ComplexOfModules {
        let mut c = ComplexOfModules::new(self.module.alg());
        for (k, t) in self.terms.iter().enumerate() {
            c.positions.insert(self.position(k), t.module.clone());
        }
        for (k, d) in self.diffs.iter().enumerate() {
            let p = match self.kind {
                TiltKind::Resolution => -(k as i64) - 1,
                TiltKind::Coresolution => k as i64,
            };
            c.differentials.insert(p, d.clone());
        }
        c
    }

    /// Summands `(vertex, shift)` at a position of the complex.
    pub fn summands_at(&self, position: i64) -> &[(usize, i64)] {
        let k = match self.kind {
            TiltKind::Resolution => -position,
            TiltKind::Coresolution => position,
        };
        if k < 0 {
            return &[];
        }
        self.terms.get(k as usize).map_or(&[], |t| &t.summands[..])
    }

    /// Exactness except at position 0, where the homology is M via the
    /// augmentation.
    pub fn check(&self) -> bool {
        let c = self.complex();
        if !c.is_complex() {
            return false;
        }
        if self.terms.is_empty() {
            return self.module.is_zero();
        }
        let (aug_src, aug_tgt) = match self.kind {
            TiltKind::Resolution => (&self.terms[0].module, &self.module),
            TiltKind::Coresolution => (&self.module, &self.terms[0].module),
        };
        if !self.augmentation.is_homomorphism(aug_src, aug_tgt) {
            return false;
        }
        let mut total: i64 = 0;
        for (k, t) in self.terms.iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            total += sign * t.module.total_dim() as i64;
        }
        let ranks: Vec<usize> = self.diffs.iter().map(ModuleMap::rank).collect();
        // Exactness via ranks: dim T_k = r_{k−1} + r_k, with the augmentation
        // as r_{−1}.
        let aug_rank = self.augmentation.rank();
        if aug_rank != self.module.total_dim() {
            return false;
        }
        for (k, t) in self.terms.iter().enumerate() {
            let before = if k == 0 { aug_rank } else { ranks[k - 1] };
            let after = ranks.get(k).copied().unwrap_or(0);
            if t.module.total_dim() != before + after {
                return false;
            }
        }
        total == self.module.total_dim() as i64
    }

    /// Minimality: the differentials involve no isomorphisms between
    /// summands (every component is a radical map of add(T)).
    pub fn is_minimal(&self) -> bool {
        for (k, d) in self.diffs.iter().enumerate() {
            let (src, tgt) = match self.kind {
                TiltKind::Resolution => (&self.terms[k + 1], &self.terms[k]),
                TiltKind::Coresolution => (&self.terms[k], &self.terms[k + 1]),
            };
            for (a, &(ja, sa)) in src.summands.iter().enumerate() {
                for (b, &(jb, sb)) in tgt.summands.iter().enumerate() {
                    if ja != jb || sa != sb {
                        continue;
                    }
                    let comp = tgt.projections[b].compose(d).compose(&src.inclusions[a]);
                    // An endomorphism of the indecomposable T(j)⟨s⟩.
                    if comp.mat.inverse().is_some() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Minimal right add(T)-approximation `T_M → M`: one summand per basis
/// element of Hom(T(j)⟨s⟩, M) modulo radical maps.
fn approximation(td: &TiltingData, m: &GradedModule) -> Result<(TiltSum, ModuleMap)> {
    let f = m.field();
    let n = td.len();
    let mut summands = Vec::new();
    let mut maps: Vec<ModuleMap> = Vec::new();
    let to_m: Vec<_> = (0..n).map(|k| hom_graded(&td.modules[k], m)).collect::<Result<_>>()?;
    for j in 0..n {
        for (&sigma, basis) in &to_m[j].by_shift {
            // Radical part: f∘g with g a radical map T(j) → T(k)⟨t⟩.
            let mut rad = Vec::new();
            for k in 0..n {
                for &t in td.homs[j][k].by_shift.keys() {
                    let Some(fs) = to_m[k].by_shift.get(&(sigma - t)) else { continue };
                    for g in td.radical_homs(j, k, t) {
                        for h in fs {
                            rad.push(h.compose(&g));
                        }
                    }
                }
            }
            let rad = independent(f, rad.into_iter().filter(|x| !x.is_zero()).collect());
            let mut span = rad.clone();
            for g in basis {
                let before = span.len();
                span.push(g.clone());
                span = independent(f, span);
                if span.len() > before {
                    summands.push((j, -sigma));
                    maps.push(g.clone());
                }
            }
        }
    }
    let ts = TiltSum::new(td, summands)?;
    let mut pi = Matrix::zeros(f, m.total_dim(), ts.module.total_dim());
    for (g, p) in maps.iter().zip(&ts.projections) {
        pi = pi.add(&g.mat.mul(&p.mat));
    }
    Ok((ts, ModuleMap { shift: 0, mat: pi }))
}

fn resolve(td: &TiltingData, m: &GradedModule, cap: usize) -> Result<TiltingComplex> {
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    let mut cur = m.clone();
    let mut incl: Option<ModuleMap> = None;
    let mut augmentation = None;
    while !cur.is_zero() {
        if terms.len() >= cap {
            return Err(Error::CapExceeded(cap));
        }
        let (ts, pi) = approximation(td, &cur)?;
        if pi.rank() != cur.total_dim() {
            return Err(Error::FiltrationMissing("add(T)-approximation is not onto".into()));
        }
        match &incl {
            None => augmentation = Some(pi.clone()),
            Some(i) => diffs.push(i.compose(&pi)),
        }
        let k = sub_module(&ts.module, &kernel(&ts.module, &pi));
        incl = Some(k.inclusion);
        cur = k.module;
        terms.push(ts);
    }
    let augmentation = augmentation.unwrap_or_else(|| ModuleMap::zero(&GradedModule::zero(&td.alg), m, 0));
    Ok(TiltingComplex { kind: TiltKind::Resolution, module: m.clone(), terms, diffs, augmentation })
}

/// Minimal tilting resolution (M ∇-filtered) or coresolution (M
/// Δ-filtered). `dual` is the tilting data of the opposite algebra, used
/// for coresolutions.
pub fn tilting_resolution(
    td: &TiltingData,
    dual: Option<&TiltingData>,
    m: &GradedModule,
    kind: TiltKind,
) -> Result<TiltingComplex> {
    let cap = 2 * td.alg.dim() + td.len() + 2;
    match kind {
        TiltKind::Resolution => {
            if nabla_filtration(m)?.is_none() {
                return Err(Error::FiltrationMissing("module has no ∇-filtration".into()));
            }
            resolve(td, m, cap)
        }
        TiltKind::Coresolution => {
            if delta_filtration(m)?.is_none() {
                return Err(Error::FiltrationMissing("module has no Δ-filtration".into()));
            }
            let owned;
            let op = match dual {
                Some(d) => d,
                None => {
                    owned = tilting_data(&td.alg.opposite())?;
                    &owned
                }
            };
            let dm = dualize(m);
            let r = resolve(op, &dm, cap)?;
            let a = &td.alg;
            let mut terms = Vec::new();
            for t in &r.terms {
                let parts: Vec<GradedModule> = t.parts.iter().map(|p| dualize_over(p, a)).collect();
                let summands = t.summands.iter().map(|&(j, s)| (j, -s)).collect();
                // Coordinates come from dualizing the sum as a whole.
                let whole = dualize_over(&t.module, a);
                let incs: Vec<ModuleMap> =
                    t.parts.iter().zip(&t.projections).map(|(p, pr)| dual_map(&t.module, p, pr)).collect();
                let projs: Vec<ModuleMap> =
                    t.parts.iter().zip(&t.inclusions).map(|(p, inc)| dual_map(p, &t.module, inc)).collect();
                terms.push(TiltSum { summands, module: whole, inclusions: incs, projections: projs, parts });
            }
            let diffs = r
                .diffs
                .iter()
                .enumerate()
                .map(|(k, d)| dual_map(&r.terms[k + 1].module, &r.terms[k].module, d))
                .collect();
            let augmentation = dual_map(&r.terms[0].module, &dm, &r.augmentation);
            Ok(TiltingComplex { kind: TiltKind::Coresolution, module: m.clone(), terms, diffs, augmentation })
        }
    }
}

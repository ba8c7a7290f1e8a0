//! Linear complexes of tilting modules, realized as graded modules over
//! Λ, the opposite of the quadratic dual of the Ringel dual.
//!
//! A Λ-module X gives the complex with position p equal to
//! `⊕_k T(k)⟨p⟩ ⊗ X_{k,p}`. Each arrow of Λ from k to k' is dual to a basis
//! element `f ∈ hom(T(k), T(k')⟨1⟩)` of R_1, and the differential is
//! `Σ f ⊗ (action of the arrow)`.

mod commute;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{iso_search, presentation_extract, quadratic_dual, GradedAlgebra, IsoMode};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};
use crate::homalg::{ext_space, koszul_dual, koszul_flags, ComplexOfModules};
use crate::modules::{direct_sum, hom_at, iso_shift_test, simple, GradedModule, ModuleMap};
use crate::qh::{costandard, require_qh, standard};
use crate::tilting::{
    balanced_check, lt_flags, ringel_dual_of, tilting_data, tilting_resolution, RingelDual, TiltKind, TiltingComplex,
    TiltingData,
};

pub use commute::{verify_commute, CommuteReport, IsoCheck};

/// A linear complex of tilting modules together with the Λ-module it comes
/// from.
#[derive(Clone, Debug)]
pub struct LinearTiltingComplex {
    pub x: GradedModule,
    pub complex: ComplexOfModules,
    /// Vertex k of each summand `T(k)⟨p⟩` at position p, in direct-sum order.
    pub summands: BTreeMap<i64, Vec<usize>>,
}

impl LinearTiltingComplex {
    /// `(k, s)` for each summand `T(k)⟨s⟩` at a position; always `s = p`.
    pub fn summands_at(&self, p: i64) -> Vec<(usize, i64)> {
        self.summands.get(&p).map_or(vec![], |v| v.iter().map(|&k| (k, p)).collect())
    }

    /// Positions with nonzero homology.
    pub fn homology_support(&self) -> Vec<i64> {
        let Some((lo, hi)) = self.complex.range() else { return vec![] };
        (lo..=hi).filter(|&p| !self.complex.homology(p).is_zero()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectKind {
    Std,
    Costd,
    Simple,
    Tilt,
}

/// The category of linear tilting complexes over A, through Λ.
#[derive(Clone, Debug)]
pub struct LinCat {
    pub alg: Arc<GradedAlgebra>,
    pub ringel: RingelDual,
    pub lambda: Arc<GradedAlgebra>,
    /// Per arrow of Λ: `(k, k', f)` with `f ∈ hom(T(k), T(k')⟨1⟩)`.
    pub arrow_maps: Vec<(usize, usize, ModuleMap)>,
    /// Λ against `E(R)^opp` when R is Koszul.
    pub lambda_matches_koszul: Option<bool>,
}

fn td(lc: &LinCat) -> &TiltingData {
    &lc.ringel.tilting
}

/// Λ for A: the opposite of the quadratic dual of R(A), vertex k ↔ T(k).
pub fn lambda_algebra(a: &Arc<GradedAlgebra>) -> Result<Arc<GradedAlgebra>> {
    Ok(LinCat::new(a)?.lambda)
}

impl LinCat {
    pub fn new(a: &Arc<GradedAlgebra>) -> Result<LinCat> {
        require_qh(a)?;
        let rd = ringel_dual_of(tilting_data(a)?)?;
        let r = match (&rd.algebra, rd.generated_01) {
            (Some(r), true) => r.clone(),
            _ => return Err(Error::PreconditionFailed("R(A) is not generated in degrees 0 and 1".into())),
        };
        let lambda = quadratic_dual(&r)?.opposite();
        let ex = presentation_extract(&rd.sc, "r")?;
        let mut arrow_maps = Vec::new();
        for ar in lambda.arrows() {
            let name = ar.name.strip_suffix('*').unwrap_or(&ar.name);
            let idx = ex
                .presentation
                .arrows
                .iter()
                .position(|x| x.name == name)
                .ok_or_else(|| Error::Invariant(format!("no Ringel arrow dual to {}", ar.name)))?;
            let elem = &ex.arrow_elements[idx];
            let first = &rd.basis[elem[0].0];
            let (i, j) = (first.i, first.j);
            if (i, j) != (ar.src, ar.tgt) || elem.iter().any(|(b, _)| rd.basis[*b].degree != 1) {
                return Err(Error::Invariant(format!("arrow {} does not match hom(T({i}),T({j})⟨1⟩)", ar.name)));
            }
            let f = elem.iter().fold(ModuleMap::zero(&td_mod(&rd, i), &td_mod(&rd, j), 1), |acc, (b, c)| {
                acc.add(&rd.basis[*b].map.scale(c))
            });
            arrow_maps.push((i, j, f));
        }
        let lambda_matches_koszul = if koszul_flags(&r)?.is_koszul == Some(true) {
            let e = koszul_dual(&r)?;
            Some(iso_search(&lambda, &e.require_dual()?.opposite(), IsoMode::ByLabel, 1).is_witness())
        } else {
            None
        };
        Ok(LinCat { alg: a.clone(), ringel: rd, lambda, arrow_maps, lambda_matches_koszul })
    }

    /// The complex of a Λ-representation. Rejects X exactly when it breaks
    /// a relation of Λ.
    pub fn realize(&self, x: &GradedModule) -> Result<LinearTiltingComplex> {
        if !x.alg().same_as(&self.lambda) {
            return Err(Error::AlgebraMismatch);
        }
        let a = &self.alg;
        let t = td(self);
        let mut summands: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        // (slot, local index) → summand index at its position.
        let mut place: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (s, sl) in x.slots().iter().enumerate() {
            let v = summands.entry(sl.degree).or_default();
            for u in 0..sl.dim {
                place.insert((s, u), v.len());
                v.push(sl.vertex);
            }
        }
        let mut complex = ComplexOfModules::new(a);
        let mut sums = BTreeMap::new();
        for (&p, ks) in &summands {
            let parts: Vec<GradedModule> = ks.iter().map(|&k| t.modules[k].shift(p)).collect();
            let ds = direct_sum(&parts.iter().collect::<Vec<_>>())?;
            complex.positions.insert(p, ds.module.clone());
            sums.insert(p, ds);
        }
        for (&p, src) in &sums {
            let Some(tgt) = sums.get(&(p + 1)) else { continue };
            let mut d = ModuleMap::zero(&src.module, &tgt.module, 0);
            for (ai, (_, _, f)) in self.arrow_maps.iter().enumerate() {
                for (s, sl) in x.slots().iter().enumerate() {
                    if sl.degree != p {
                        continue;
                    }
                    let Some((tt, b)) = x.block(ai, s) else { continue };
                    for u in 0..b.cols() {
                        for w in 0..b.rows() {
                            let c = b.get(w, u);
                            if c.is_zero() {
                                continue;
                            }
                            let inc = &tgt.inclusions[place[&(tt, w)]];
                            let pr = &src.projections[place[&(s, u)]];
                            let m = inc.mat.mul(&f.mat).mul(&pr.mat).scale(c);
                            d = d.add(&ModuleMap { shift: 0, mat: m });
                        }
                    }
                }
            }
            complex.differentials.insert(p, d);
        }
        let squares_vanish = complex.differentials.iter().all(|(p, d)| {
            complex.differentials.get(&(p + 1)).is_none_or(|e| e.compose(d).is_zero())
        });
        match (x.relation_violation(), squares_vanish) {
            (None, true) => Ok(LinearTiltingComplex { x: x.clone(), complex, summands }),
            (Some(v), false) => Err(Error::NotAComplex(v)),
            (v, _) => Err(Error::Invariant(format!("d² = 0 disagrees with the relations of Λ ({v:?})"))),
        }
    }

    /// The Λ-module of a linear tilting (co)resolution.
    pub fn transport(&self, c: &TiltingComplex) -> Result<GradedModule> {
        if !c.is_linear() {
            return Err(Error::PreconditionFailed("tilting complex is not linear".into()));
        }
        let f = self.alg.field();
        let pos = |k: usize| match c.kind {
            TiltKind::Resolution => -(k as i64),
            TiltKind::Coresolution => k as i64,
        };
        // Local index of each summand within its vertex group.
        let local: Vec<Vec<usize>> = c
            .terms
            .iter()
            .map(|t| {
                let mut seen = BTreeMap::new();
                t.summands
                    .iter()
                    .map(|&(k, _)| {
                        let e = seen.entry(k).or_insert(0);
                        *e += 1;
                        *e - 1
                    })
                    .collect()
            })
            .collect();
        let mut slot_dims = Vec::new();
        for (k, t) in c.terms.iter().enumerate() {
            let mut m: BTreeMap<usize, usize> = BTreeMap::new();
            for &(v, _) in &t.summands {
                *m.entry(v).or_default() += 1;
            }
            slot_dims.extend(m.into_iter().map(|(v, d)| (v, pos(k), d)));
        }
        let dim_of = |v: usize, p: i64| slot_dims.iter().find(|s| s.0 == v && s.1 == p).map_or(0, |s| s.2);
        let mut blocks: BTreeMap<(usize, i64), Matrix> = BTreeMap::new();
        for (k, d) in c.diffs.iter().enumerate() {
            let (s, t) = match c.kind {
                TiltKind::Resolution => (k + 1, k),
                TiltKind::Coresolution => (k, k + 1),
            };
            let (src, tgt) = (&c.terms[s], &c.terms[t]);
            let p = pos(s);
            for (u, &(kv, _)) in src.summands.iter().enumerate() {
                for (w, &(kw, _)) in tgt.summands.iter().enumerate() {
                    let comp = tgt.projections[w].compose(d).compose(&src.inclusions[u]);
                    if comp.is_zero() {
                        continue;
                    }
                    let arrows: Vec<usize> =
                        (0..self.arrow_maps.len()).filter(|&a| self.arrow_maps[a].0 == kv && self.arrow_maps[a].1 == kw).collect();
                    let cols: Vec<Vec<Scalar>> =
                        arrows.iter().map(|&a| self.arrow_maps[a].2.mat.entries().to_vec()).collect();
                    let coeffs = Matrix::from_columns(f, comp.mat.entries().len(), &cols)
                        .solve_vec(comp.mat.entries())
                        .ok_or_else(|| Error::Invariant("differential component outside R_1".into()))?;
                    for (&a, x) in arrows.iter().zip(coeffs) {
                        let b = blocks
                            .entry((a, p))
                            .or_insert_with(|| Matrix::zeros(f, dim_of(kw, p + 1), dim_of(kv, p)));
                        b.add_to(local[t][w], local[s][u], &x);
                    }
                }
            }
        }
        GradedModule::from_blocks(&self.lambda, &slot_dims, blocks.into_iter().map(|((a, p), m)| (a, p, m)).collect())
    }

    /// `dim ext¹` between the simple objects T(i)• and `T(j)•⟨−l⟩[l]`,
    /// computed over Λ, alongside `dim hom(T(i), T(j)⟨1⟩)` when l = −1.
    pub fn ext1_in_t(&self, i: usize, j: usize, l: i64) -> Result<Ext1InT> {
        let lam = ext_space(&simple(&self.lambda, i)?, &simple(&self.lambda, j)?, 1, l)?.dim();
        let hom = if l == -1 { td(self).homs[i][j].dim_at(1) } else { 0 };
        Ok(Ext1InT { i, j, l, lambda_dim: lam, hom_dim: hom })
    }

    fn nabla_or_delta(&self, kind: TiltKind, i: usize) -> Result<(TiltingComplex, GradedModule)> {
        let a = &self.alg;
        let t = td(self);
        let op = tilting_data(&a.opposite())?;
        if !lt_flags(t, &op)?.sct() {
            return Err(Error::PreconditionFailed("A is not SCT".into()));
        }
        let m = match kind {
            TiltKind::Resolution => costandard(a, i)?,
            TiltKind::Coresolution => standard(a, i)?,
        };
        Ok((tilting_resolution(t, Some(&op), &m, kind)?, m))
    }

    /// The canonical object of a kind, with its homology checked: Δ(i), ∇(i)
    /// or T(i) for the first three; L(i) in position 0 for tilting objects.
    pub fn canonical_object(&self, kind: ObjectKind, i: usize) -> Result<LinearTiltingComplex> {
        let a = &self.alg;
        let (obj, expect) = match kind {
            ObjectKind::Simple => (self.realize(&simple(&self.lambda, i)?)?, td(self).modules[i].clone()),
            ObjectKind::Std | ObjectKind::Costd => {
                let k = if kind == ObjectKind::Std { TiltKind::Coresolution } else { TiltKind::Resolution };
                let (c, m) = self.nabla_or_delta(k, i)?;
                (self.realize(&self.transport(&c)?)?, m)
            }
            ObjectKind::Tilt => {
                let op = tilting_data(&a.opposite())?;
                let sct = lt_flags(td(self), &op)?.sct();
                let (bal, why) = balanced_check(&self.ringel, sct)?;
                if !bal {
                    return Err(Error::PreconditionFailed(format!("A is not balanced: {why}")));
                }
                let tl = tilting_data(&self.lambda)?;
                (self.realize(&tl.modules[i])?, simple(a, i)?)
            }
        };
        let support = obj.homology_support();
        let h = obj.complex.homology(0);
        let ok = support.iter().all(|&p| p == 0)
            && iso_shift_test(&h, &expect)?.is_some_and(|(_, j)| j == 0);
        if !ok {
            return Err(Error::Invariant(format!("homology of the {kind:?} object at {} is wrong", a.label(i))));
        }
        Ok(obj)
    }

    /// Dimension of the space of degree-0 chain maps between realized
    /// complexes.
    pub fn chain_map_dim(&self, x: &LinearTiltingComplex, y: &LinearTiltingComplex) -> Result<usize> {
        let f = self.alg.field();
        let ps: Vec<i64> = x.complex.positions.keys().filter(|p| y.complex.positions.contains_key(p)).copied().collect();
        let mut unknowns: Vec<(i64, ModuleMap)> = Vec::new();
        for &p in &ps {
            for g in hom_at(&x.complex.term(p), &y.complex.term(p), 0)? {
                unknowns.push((p, g));
            }
        }
        if unknowns.is_empty() {
            return Ok(0);
        }
        // d_Y∘g_p − g_{p+1}∘d_X for each p, as maps X^p → Y^{p+1}.
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let lo = *x.complex.positions.keys().next().unwrap();
        let hi = *x.complex.positions.keys().last().unwrap();
        for p in lo..=hi {
            let (xs, yt) = (x.complex.term(p), y.complex.term(p + 1));
            let size = xs.total_dim() * yt.total_dim();
            if size == 0 {
                continue;
            }
            let cols: Vec<Vec<Scalar>> = unknowns
                .iter()
                .map(|(q, g)| {
                    if *q == p {
                        y.complex.differential(p).compose(g).mat.entries().to_vec()
                    } else if *q == p + 1 {
                        g.compose(&x.complex.differential(p)).mat.scale(&-f.one()).entries().to_vec()
                    } else {
                        vec![f.zero(); size]
                    }
                })
                .collect();
            let m = Matrix::from_columns(f, size, &cols);
            for r in 0..m.rows() {
                rows.push(m.row(r).to_vec());
            }
        }
        let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(f, rows).rank() };
        Ok(unknowns.len() - rank)
    }
}

fn td_mod(rd: &RingelDual, i: usize) -> GradedModule {
    rd.tilting.modules[i].clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ext1InT {
    pub i: usize,
    pub j: usize,
    pub l: i64,
    pub lambda_dim: usize,
    pub hom_dim: usize,
}

impl Ext1InT {
    pub fn agrees(&self) -> bool {
        self.lambda_dim == self.hom_dim
    }
}

pub fn f_realize(a: &Arc<GradedAlgebra>, x: &GradedModule) -> Result<LinearTiltingComplex> {
    LinCat::new(a)?.realize(x)
}

pub fn ext1_in_t(a: &Arc<GradedAlgebra>, i: usize, j: usize, l: i64) -> Result<Ext1InT> {
    LinCat::new(a)?.ext1_in_t(i, j, l)
}

pub fn canonical_objects(a: &Arc<GradedAlgebra>, kind: ObjectKind, i: usize) -> Result<LinearTiltingComplex> {
    LinCat::new(a)?.canonical_object(kind, i)
}

#[cfg(test)]
mod tests;

//! Graded quiver algebras with homogeneous relations.
//!
//! A path is a list of arrow indices read first-to-last. The product is
//! function composition: `x ∘ y` means "first y, then x", so `e_t A e_s`
//! is spanned by paths from `s` to `t`.

mod iso;
mod sc;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{reduce_rows, Field, Matrix, Scalar};

pub use iso::{iso_search, IsoMode, IsoVerdict, IsoWitness};
pub use sc::{certify_iso_to_sc, presentation_extract, Extracted, ScAlgebra};

/// Sparse vector: (basis index, coefficient) pairs with nonzero coefficients.
pub type SVec = Vec<(usize, Scalar)>;

pub const DEFAULT_DEGREE_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    pub path: Vec<usize>,
}

pub type Relation = Vec<Term>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub field: Field,
    /// Vertex labels; the list order is the quasi-hereditary order.
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

impl AlgebraPresentation {
    pub fn new(field: Field, vertices: &[&str]) -> AlgebraPresentation {
        AlgebraPresentation {
            field,
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: Vec::new(),
            relations: Vec::new(),
        }
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn add_arrow(&mut self, name: &str, src: &str, tgt: &str, degree: i64) -> Result<usize> {
        let s = self.vertex_index(src).ok_or_else(|| Error::UnknownVertex(src.into()))?;
        let t = self.vertex_index(tgt).ok_or_else(|| Error::UnknownVertex(tgt.into()))?;
        self.arrows.push(Arrow { name: name.into(), src: s, tgt: t, degree });
        Ok(self.arrows.len() - 1)
    }

    /// Adds a relation given as (coefficient, arrow names first-to-last).
    pub fn add_relation(&mut self, terms: &[(Scalar, &[&str])]) -> Result<()> {
        let mut rel = Vec::new();
        for (c, names) in terms {
            let path = names
                .iter()
                .map(|n| {
                    self.arrow_index(n)
                        .ok_or_else(|| Error::InvalidPresentation(format!("unknown arrow {n}")))
                })
                .collect::<Result<Vec<_>>>()?;
            rel.push(Term { coeff: c.clone(), path });
        }
        self.relations.push(rel);
        Ok(())
    }

    /// (source, target, degree) of a nonempty composable path.
    pub fn path_ends(&self, path: &[usize]) -> Result<(usize, usize, i64)> {
        let Some(&first) = path.first() else {
            return Err(Error::InvalidPresentation("relation term with empty path".into()));
        };
        let mut at = self.arrows[first].src;
        let mut deg = 0;
        for &a in path {
            let ar = &self.arrows[a];
            if ar.src != at {
                return Err(Error::InvalidPresentation(format!(
                    "path {} is not composable",
                    self.path_name(path)
                )));
            }
            at = ar.tgt;
            deg += ar.degree;
        }
        Ok((self.arrows[first].src, at, deg))
    }

    pub fn path_name(&self, path: &[usize]) -> String {
        path.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
    }

    pub fn validate(&self) -> Result<()> {
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(Error::InvalidPresentation(format!("duplicate vertex {v}")));
            }
        }
        if self.vertices.is_empty() {
            return Err(Error::InvalidPresentation("no vertices".into()));
        }
        for a in &self.arrows {
            if a.src >= self.vertices.len() || a.tgt >= self.vertices.len() {
                return Err(Error::UnknownVertex(a.name.clone()));
            }
            if a.degree <= 0 {
                return Err(Error::NotPositivelyGraded(format!(
                    "arrow {} has degree {}",
                    a.name, a.degree
                )));
            }
        }
        for rel in &self.relations {
            let mut ends = None;
            for t in rel {
                if matches!(t.coeff.field(), Field::Fp(_)) && t.coeff.field() != self.field {
                    return Err(Error::InvalidPresentation("coefficient field mismatch".into()));
                }
                let e = self.path_ends(&t.path)?;
                match ends {
                    None => ends = Some(e),
                    Some(f) if f.2 != e.2 => {
                        return Err(Error::InvalidPresentation(format!(
                            "relation is not homogeneous: {} has degree {}, expected {}",
                            self.path_name(&t.path),
                            e.2,
                            f.2
                        )))
                    }
                    Some(f) if (f.0, f.1) != (e.0, e.1) => {
                        return Err(Error::InvalidPresentation(format!(
                            "relation mixes sources or targets at {}",
                            self.path_name(&t.path)
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Relations with zero terms removed and like paths combined.
    fn normalized_relations(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        for rel in &self.relations {
            let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
            for t in rel {
                let c = acc.entry(t.path.clone()).or_insert_with(|| self.field.zero());
                *c = &*c + &coerce(self.field, &t.coeff);
            }
            let r: Relation = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(path, coeff)| Term { coeff, path })
                .collect();
            if !r.is_empty() {
                out.push(r);
            }
        }
        out
    }
}

fn coerce(f: Field, c: &Scalar) -> Scalar {
    &f.zero() + c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
    /// A representative path (first-to-last); the element is its class.
    pub path: Vec<usize>,
}

/// An algebra presented by a quiver with relations, with a homogeneous
/// monomial basis and left multiplication tables for every arrow.
#[derive(Debug)]
pub struct GradedAlgebra {
    pres: AlgebraPresentation,
    basis: Vec<BasisElem>,
    by_degree: Vec<Vec<usize>>,
    /// `lmul[a][b]` = arrow `a` composed after basis element `b`.
    lmul: Vec<Vec<SVec>>,
    opp: OnceLock<Arc<GradedAlgebra>>,
}

pub fn build_algebra(p: &AlgebraPresentation) -> Result<Arc<GradedAlgebra>> {
    build_algebra_capped(p, DEFAULT_DEGREE_CAP)
}

pub fn build_algebra_capped(p: &AlgebraPresentation, cap: usize) -> Result<Arc<GradedAlgebra>> {
    p.validate()?;
    let f = p.field;
    let n = p.vertices.len();
    let rels = p.normalized_relations();
    let rel_ends: Vec<(usize, usize, i64)> =
        rels.iter().map(|r| p.path_ends(&r[0].path)).collect::<Result<_>>()?;
    let na = p.arrows.len();
    let max_deg = p.arrows.iter().map(|a| a.degree).max().unwrap_or(1).max(1) as usize;

    let mut alg = GradedAlgebra {
        pres: p.clone(),
        basis: (0..n).map(|v| BasisElem { src: v, tgt: v, degree: 0, path: vec![] }).collect(),
        by_degree: vec![(0..n).collect()],
        lmul: vec![vec![Vec::new(); n]; na],
        opp: OnceLock::new(),
    };

    let mut zero_run = 0;
    let mut d = 0usize;
    while zero_run < max_deg {
        d += 1;
        if d > cap {
            return Err(Error::NotFiniteDimensional(cap));
        }
        let mut gens: Vec<(usize, usize)> = Vec::new();
        for (ai, a) in p.arrows.iter().enumerate() {
            let ad = a.degree as usize;
            if ad > d {
                continue;
            }
            for &b in &alg.by_degree[d - ad] {
                if alg.basis[b].tgt == a.src {
                    gens.push((ai, b));
                }
            }
        }
        let col: HashMap<(usize, usize), usize> =
            gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (r, &(rs, _, rd)) in rels.iter().zip(&rel_ends) {
            let rd = rd as usize;
            if rd > d {
                continue;
            }
            for &q in &alg.by_degree[d - rd] {
                if alg.basis[q].tgt != rs {
                    continue;
                }
                let mut row = vec![f.zero(); gens.len()];
                for t in r {
                    let (&last, init) = t.path.split_last().unwrap();
                    let mut v: SVec = vec![(q, f.one())];
                    for &a in init {
                        v = alg.act_arrow(a, &v);
                    }
                    for (b, c) in v {
                        let k = col[&(last, b)];
                        row[k] = &row[k] + &(&t.coeff * &c);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let pivots = reduce_rows(&mut rows, gens.len());
        let mut is_pivot = vec![None; gens.len()];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut new_index = vec![usize::MAX; gens.len()];
        let mut this_degree = Vec::new();
        for (c, &(a, b)) in gens.iter().enumerate() {
            if is_pivot[c].is_none() {
                let mut path = alg.basis[b].path.clone();
                path.push(a);
                let idx = alg.basis.len();
                alg.basis.push(BasisElem {
                    src: alg.basis[b].src,
                    tgt: p.arrows[a].tgt,
                    degree: d as i64,
                    path,
                });
                for l in alg.lmul.iter_mut() {
                    l.push(Vec::new());
                }
                new_index[c] = idx;
                this_degree.push(idx);
            }
        }
        for (c, &(a, b)) in gens.iter().enumerate() {
            alg.lmul[a][b] = match is_pivot[c] {
                None => vec![(new_index[c], f.one())],
                Some(r) => (0..gens.len())
                    .filter(|&c2| is_pivot[c2].is_none() && !rows[r][c2].is_zero())
                    .map(|c2| (new_index[c2], -&rows[r][c2]))
                    .collect(),
            };
        }
        zero_run = if this_degree.is_empty() { zero_run + 1 } else { 0 };
        alg.by_degree.push(this_degree);
    }
    while alg.by_degree.len() > 1 && alg.by_degree.last().unwrap().is_empty() {
        alg.by_degree.pop();
    }
    Ok(Arc::new(alg))
}

impl GradedAlgebra {
    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.pres
    }

    pub fn field(&self) -> Field {
        self.pres.field
    }

    pub fn n_vertices(&self) -> usize {
        self.pres.vertices.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.pres.vertices[v]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.pres.arrows
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// dim A_d for d = 0..=top degree.
    pub fn dims(&self) -> Vec<usize> {
        self.by_degree.iter().map(|b| b.len()).collect()
    }

    pub fn top_degree(&self) -> i64 {
        self.by_degree.len() as i64 - 1
    }

    pub fn basis_in_degree(&self, d: i64) -> &[usize] {
        if d < 0 || d as usize >= self.by_degree.len() {
            return &[];
        }
        &self.by_degree[d as usize]
    }

    /// dim e_t A_d e_s.
    pub fn block_dim(&self, s: usize, t: usize, d: i64) -> usize {
        self.basis_in_degree(d)
            .iter()
            .filter(|&&b| self.basis[b].src == s && self.basis[b].tgt == t)
            .count()
    }

    pub fn same_as(&self, other: &GradedAlgebra) -> bool {
        std::ptr::eq(self, other) || self.pres == other.pres
    }

    /// Arrow `a` composed after basis element `b`.
    pub fn lmul_basis(&self, a: usize, b: usize) -> &SVec {
        &self.lmul[a][b]
    }

    pub fn act_arrow(&self, a: usize, v: &SVec) -> SVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (b, c) in v {
            for (t, x) in &self.lmul[a][*b] {
                let e = acc.entry(*t).or_insert_with(|| self.field().zero());
                *e = &*e + &(c * x);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Basis product `x ∘ y` as a sparse vector.
    pub fn mul_basis(&self, x: usize, y: usize) -> SVec {
        let bx = &self.basis[x];
        if bx.src != self.basis[y].tgt {
            return Vec::new();
        }
        let mut v: SVec = vec![(y, self.field().one())];
        for &a in &bx.path {
            v = self.act_arrow(a, &v);
        }
        v
    }

    /// Product `x ∘ y` of dense coordinate vectors.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.mul_basis(i, j) {
                    out[k] = &out[k] + &(&ab * &c);
                }
            }
        }
        out
    }

    /// Image of arrow `a` in the algebra.
    pub fn arrow_element(&self, a: usize) -> SVec {
        self.lmul[a][self.pres.arrows[a].src].clone()
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); self.dim()];
        v[i] = self.field().one();
        v
    }

    pub fn to_dense(&self, v: &SVec) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.dim()];
        for (i, c) in v {
            out[*i] = c.clone();
        }
        out
    }

    /// True when every A_d, d ≥ 2, is spanned by products with degree-1 elements.
    pub fn is_generated_in_degree_one(&self) -> bool {
        if self.pres.arrows.iter().any(|a| a.degree != 1) {
            // Arrows of higher degree are generators unless they decompose.
            for (ai, a) in self.pres.arrows.iter().enumerate() {
                if a.degree == 1 {
                    continue;
                }
                let target = self.arrow_element(ai);
                if target.is_empty() {
                    continue;
                }
                let d = a.degree;
                let span = self.products_of_degree_one(d);
                let m = Matrix::from_columns(self.field(), self.dim(), &span);
                if m.solve_vec(&self.to_dense(&target)).is_none() {
                    return false;
                }
            }
        }
        true
    }

    fn products_of_degree_one(&self, d: i64) -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        for (ai, a) in self.pres.arrows.iter().enumerate() {
            if a.degree != 1 {
                continue;
            }
            for &b in self.basis_in_degree(d - 1) {
                let v = self.lmul_basis(ai, b);
                if !v.is_empty() {
                    out.push(self.to_dense(v));
                }
            }
        }
        out
    }

    /// Structure-constant view of this algebra.
    pub fn to_sc(&self) -> ScAlgebra {
        let n = self.dim();
        let mul = (0..n).map(|x| (0..n).map(|y| self.mul_basis(x, y)).collect()).collect();
        ScAlgebra {
            field: self.field(),
            labels: self.pres.vertices.clone(),
            elems: self.basis.iter().map(|b| (b.src, b.tgt, b.degree)).collect(),
            idempotents: (0..self.n_vertices()).collect(),
            mul,
        }
    }

    pub fn opposite(self: &Arc<Self>) -> Arc<GradedAlgebra> {
        self.opp
            .get_or_init(|| {
                let p = &self.pres;
                let op = AlgebraPresentation {
                    field: p.field,
                    vertices: p.vertices.clone(),
                    arrows: p
                        .arrows
                        .iter()
                        .map(|a| Arrow { name: a.name.clone(), src: a.tgt, tgt: a.src, degree: a.degree })
                        .collect(),
                    relations: p
                        .relations
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|t| Term {
                                    coeff: t.coeff.clone(),
                                    path: t.path.iter().rev().copied().collect(),
                                })
                                .collect()
                        })
                        .collect(),
                };
                // Same dimensions as the input, so the build cannot fail.
                build_algebra(&op).expect("opposite of a finite-dimensional algebra")
            })
            .clone()
    }

    /// Degree-1 basis elements, each a single arrow.
    pub fn degree_one_basis(&self) -> &[usize] {
        self.basis_in_degree(1)
    }

    /// Kernel of multiplication from composable pairs of degree-1 basis
    /// elements onto A_2; columns indexed like the returned pair list.
    pub fn quadratic_relation_space(&self) -> (Vec<(usize, usize)>, Matrix) {
        let one = self.degree_one_basis();
        let mut pairs = Vec::new();
        for &x in one {
            for &y in one {
                if self.basis[x].tgt == self.basis[y].src {
                    pairs.push((x, y));
                }
            }
        }
        let a2 = self.basis_in_degree(2);
        let pos: HashMap<usize, usize> = a2.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let mut mu = Matrix::zeros(self.field(), a2.len(), pairs.len());
        for (c, &(x, y)) in pairs.iter().enumerate() {
            for (k, v) in self.mul_basis(y, x) {
                mu.set(pos[&k], c, v);
            }
        }
        (pairs, mu.kernel_basis())
    }
}

fn dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(s) => s.to_string(),
        None => format!("{name}*"),
    }
}

/// Quadratic dual with same-orientation dual arrows. The vertex list is
/// reversed (labels kept) since the dual is quasi-hereditary for the
/// opposite order.
pub fn quadratic_dual(a: &GradedAlgebra) -> Result<Arc<GradedAlgebra>> {
    quadratic_dual_capped(a, DEFAULT_DEGREE_CAP)
}

pub fn quadratic_dual_capped(a: &GradedAlgebra, cap: usize) -> Result<Arc<GradedAlgebra>> {
    if !a.is_generated_in_degree_one() {
        return Err(Error::NotDegreeOneGenerated);
    }
    let n = a.n_vertices();
    let rev = |v: usize| n - 1 - v;
    let one = a.degree_one_basis();
    let pos: HashMap<usize, usize> = one.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let arrows: Vec<Arrow> = one
        .iter()
        .map(|&b| {
            let e = &a.basis()[b];
            Arrow {
                name: dual_name(&a.arrows()[e.path[0]].name),
                src: rev(e.src),
                tgt: rev(e.tgt),
                degree: 1,
            }
        })
        .collect();
    let (pairs, k) = a.quadratic_relation_space();
    let ann = k.transpose().kernel_basis();
    let relations = (0..ann.cols())
        .map(|j| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| !ann.get(*i, j).is_zero())
                .map(|(i, &(x, y))| Term { coeff: ann.get(i, j).clone(), path: vec![pos[&x], pos[&y]] })
                .collect()
        })
        .collect();
    let p = AlgebraPresentation {
        field: a.field(),
        vertices: (0..n).map(|k| a.label(rev(k)).to_string()).collect(),
        arrows,
        relations,
    };
    build_algebra_capped(&p, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Q
    }

    #[test]
    fn k1_has_dimension_one() {
        let a = corpus::load("k1");
        assert_eq!(a.dims(), vec![1]);
    }

    #[test]
    fn a3_line_dims_match_path_count() {
        let a = corpus::load("a3_line");
        // Paths: three idempotents, a, b, and b after a... i.e. b.a.
        assert_eq!(a.dims(), vec![3, 2, 1]);
        assert_eq!(a.dim(), 6);
    }

    #[test]
    fn sl2_dims() {
        let a = corpus::load("sl2_block");
        assert_eq!(a.dims(), vec![2, 2, 1]);
    }

    #[test]
    fn idempotents_and_arrows_multiply() {
        let a = corpus::load("a3_line");
        let e = |i: usize| a.unit_vector(i);
        assert_eq!(a.multiply(&e(0), &e(0)), e(0));
        assert!(a.multiply(&e(0), &e(1)).iter().all(|x| x.is_zero()));
        let ai = a.presentation().arrow_index("a").unwrap();
        let av = a.to_dense(&a.arrow_element(ai));
        assert_eq!(a.multiply(&e(0), &av), av);
    }

    #[test]
    fn sl2_relation_holds() {
        let a = corpus::load("sl2_block");
        let p = a.presentation();
        let u = a.to_dense(&a.arrow_element(p.arrow_index("u").unwrap()));
        let v = a.to_dense(&a.arrow_element(p.arrow_index("v").unwrap()));
        assert!(a.multiply(&v, &u).iter().all(|x| x.is_zero()));
        assert!(a.multiply(&u, &v).iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn opposite_reverses_arrows_and_keeps_dims() {
        for name in corpus::NAMES {
            let a = corpus::load(name);
            let o = a.opposite();
            assert_eq!(o.dims(), a.dims(), "{name}");
            assert!(Arc::ptr_eq(&a.opposite(), &o));
        }
        let o = corpus::load("a3_line").opposite();
        let arrows: Vec<(usize, usize)> = o.arrows().iter().map(|a| (a.src, a.tgt)).collect();
        assert_eq!(arrows, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn non_positive_arrow_rejected() {
        let mut p = AlgebraPresentation::new(q(), &["1", "2"]);
        p.add_arrow("a", "1", "2", 0).unwrap();
        assert!(matches!(build_algebra(&p), Err(Error::NotPositivelyGraded(_))));
    }

    #[test]
    fn free_loop_is_infinite() {
        let mut p = AlgebraPresentation::new(q(), &["1"]);
        p.add_arrow("x", "1", "1", 1).unwrap();
        assert!(matches!(build_algebra_capped(&p, 10), Err(Error::NotFiniteDimensional(10))));
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let mut p = AlgebraPresentation::new(q(), &["1"]);
        p.add_arrow("x", "1", "1", 1).unwrap();
        p.add_relation(&[(q().one(), &["x"]), (q().one(), &["x", "x"])]).unwrap();
        assert!(matches!(build_algebra(&p), Err(Error::InvalidPresentation(_))));
    }

    #[test]
    fn degree_two_arrows_are_supported() {
        let mut p = AlgebraPresentation::new(q(), &["1", "2"]);
        p.add_arrow("a", "1", "2", 2).unwrap();
        p.add_arrow("b", "2", "1", 1).unwrap();
        p.add_relation(&[(q().one(), &["a", "b"])]).unwrap();
        p.add_relation(&[(q().one(), &["b", "a"])]).unwrap();
        let a = build_algebra(&p).unwrap();
        assert_eq!(a.dims(), vec![2, 1, 1]);
    }

    #[test]
    fn quadratic_dual_examples() {
        let k1 = corpus::load("k1");
        assert_eq!(quadratic_dual(&k1).unwrap().dims(), vec![1]);
        let a3 = corpus::load("a3_line");
        let d = quadratic_dual(&a3).unwrap();
        assert_eq!(d.dims(), vec![3, 2]);
        assert_eq!(d.dim(), 5);
        let sl2 = corpus::load("sl2_block");
        assert_eq!(quadratic_dual(&sl2).unwrap().dims(), vec![2, 2, 1]);
    }

    #[test]
    fn quadratic_dual_degree_two_count() {
        // loop1's dual is the polynomial ring, which is infinite.
        assert!(quadratic_dual_capped(&corpus::load("loop1"), 8).is_err());
        for name in corpus::QH_NAMES {
            let a = corpus::load(name);
            let (pairs, _) = a.quadratic_relation_space();
            let d = quadratic_dual(&a).unwrap();
            let a2 = a.basis_in_degree(2).len();
            assert_eq!(d.basis_in_degree(2).len(), pairs.len() - a2, "{name}");
        }
    }

    #[test]
    fn associativity_on_corpus() {
        for name in corpus::NAMES {
            let a = corpus::load(name);
            let n = a.dim();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let xy = a.to_dense(&a.mul_basis(x, y));
                        let yz = a.to_dense(&a.mul_basis(y, z));
                        let l = a.multiply(&xy, &a.unit_vector(z));
                        let r = a.multiply(&a.unit_vector(x), &yz);
                        assert_eq!(l, r, "{name}: ({x},{y},{z})");
                    }
                }
            }
        }
    }

    fn random_presentation() -> impl Strategy<Value = AlgebraPresentation> {
        (1usize..=3, proptest::collection::vec((0usize..3, 0usize..3), 0..4), any::<u64>())
            .prop_map(|(n, arrows, seed)| {
                let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
                let mut p = AlgebraPresentation {
                    field: Field::Q,
                    vertices: labels,
                    arrows: Vec::new(),
                    relations: Vec::new(),
                };
                for (k, (s, t)) in arrows.into_iter().enumerate() {
                    if s % n != t % n {
                        p.arrows.push(Arrow { name: format!("x{k}"), src: s % n, tgt: t % n, degree: 1 });
                    }
                }
                // Kill one length-2 path chosen from the seed, when one exists.
                let mut paths = Vec::new();
                for i in 0..p.arrows.len() {
                    for j in 0..p.arrows.len() {
                        if p.arrows[i].tgt == p.arrows[j].src {
                            paths.push(vec![i, j]);
                        }
                    }
                }
                if !paths.is_empty() {
                    let path = paths[(seed as usize) % paths.len()].clone();
                    p.relations.push(vec![Term { coeff: Field::Q.one(), path }]);
                }
                p
            })
    }

    proptest! {
        #[test]
        fn products_are_graded_and_associative(p in random_presentation()) {
            let Ok(a) = build_algebra_capped(&p, 12) else { return Ok(()); };
            let n = a.dim();
            prop_assume!(n <= 20);
            for x in 0..n {
                for y in 0..n {
                    let xy = a.mul_basis(x, y);
                    for (k, _) in &xy {
                        prop_assert_eq!(a.basis()[*k].degree, a.basis()[x].degree + a.basis()[y].degree);
                    }
                    for z in 0..n {
                        let l = a.multiply(&a.to_dense(&xy), &a.unit_vector(z));
                        let r = a.multiply(&a.unit_vector(x), &a.to_dense(&a.mul_basis(y, z)));
                        prop_assert_eq!(l, r);
                    }
                }
            }
        }

        #[test]
        fn double_quadratic_dual_recovers_dims(p in random_presentation()) {
            let Ok(a) = build_algebra_capped(&p, 12) else { return Ok(()); };
            // Only quadratic algebras are recovered by the double dual.
            let Ok(d) = quadratic_dual_capped(&a, 12) else { return Ok(()); };
            let Ok(dd) = quadratic_dual_capped(&d, 12) else { return Ok(()); };
            if p.relations.iter().all(|r| r.iter().all(|t| t.path.len() == 2)) {
                prop_assert_eq!(dd.dims(), a.dims());
            }
        }
    }
}

//! Search for graded isomorphisms between algebras generated in degree one.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sc::certify_iso_to_sc;
use super::{GradedAlgebra, SVec};
use crate::exactla::{Field, Matrix, Scalar};

/// How vertices of the two algebras may be matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoMode {
    /// Vertex k of one algebra goes to vertex k of the other (positions in
    /// the quasi-hereditary order).
    ByPosition,
    /// Vertices with equal labels are matched.
    ByLabel,
    /// Any bijection of vertices.
    Any,
}

#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub vertex_map: Vec<usize>,
    /// Image in the target algebra of each arrow of the source presentation.
    pub arrow_images: Vec<SVec>,
}

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Witness(IsoWitness),
    Distinguisher(String),
    Unknown(String),
}

impl IsoVerdict {
    pub fn is_witness(&self) -> bool {
        matches!(self, IsoVerdict::Witness(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            IsoVerdict::Witness(_) => "witness",
            IsoVerdict::Distinguisher(_) => "distinguisher",
            IsoVerdict::Unknown(_) => "unknown",
        }
    }

    pub fn detail(&self) -> String {
        match self {
            IsoVerdict::Witness(w) => format!("vertex map {:?}", w.vertex_map),
            IsoVerdict::Distinguisher(s) | IsoVerdict::Unknown(s) => s.clone(),
        }
    }
}

const RANDOM_BUDGET: usize = 3000;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn quadratic_relation_dims(a: &GradedAlgebra) -> BTreeMap<(usize, usize), usize> {
    let (pairs, k) = a.quadratic_relation_space();
    let mut out = BTreeMap::new();
    for j in 0..k.cols() {
        let i = (0..pairs.len()).find(|&i| !k.get(i, j).is_zero()).unwrap();
        let (x, y) = pairs[i];
        *out.entry((a.basis()[x].src, a.basis()[y].tgt)).or_insert(0) += 1;
    }
    out
}

/// First invariant that differs under the vertex map, if any.
fn distinguish(a: &GradedAlgebra, b: &GradedAlgebra, pi: &[usize]) -> Option<String> {
    if a.dims() != b.dims() {
        return Some(format!("Hilbert series differ: {:?} vs {:?}", a.dims(), b.dims()));
    }
    let n = a.n_vertices();
    for d in 0..=a.top_degree() {
        for s in 0..n {
            for t in 0..n {
                let (x, y) = (a.block_dim(s, t, d), b.block_dim(pi[s], pi[t], d));
                if x != y {
                    return Some(format!(
                        "dim e_{} A_{d} e_{} is {x} but the matching block has dim {y}",
                        a.label(t),
                        a.label(s)
                    ));
                }
            }
        }
    }
    let (ra, rb) = (quadratic_relation_dims(a), quadratic_relation_dims(b));
    for (&(s, t), &k) in &ra {
        if rb.get(&(pi[s], pi[t])).copied().unwrap_or(0) != k {
            return Some(format!("quadratic relation spaces differ at {} -> {}", a.label(s), a.label(t)));
        }
    }
    if ra.values().sum::<usize>() != rb.values().sum::<usize>() {
        return Some("quadratic relation spaces differ in dimension".into());
    }
    None
}

/// Per-block base changes on degree-1 spaces, as images of a's degree-1
/// basis elements in b's degree-1 basis.
struct Blocks {
    /// (a's degree-1 basis indices, b's degree-1 basis indices) per block.
    blocks: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Blocks {
    fn new(a: &GradedAlgebra, b: &GradedAlgebra, pi: &[usize]) -> Blocks {
        let mut map: BTreeMap<(usize, usize), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for &x in a.degree_one_basis() {
            let e = &a.basis()[x];
            map.entry((e.src, e.tgt)).or_default().0.push(x);
        }
        let inv: Vec<usize> = {
            let mut v = vec![0; pi.len()];
            for (i, &p) in pi.iter().enumerate() {
                v[p] = i;
            }
            v
        };
        for &y in b.degree_one_basis() {
            let e = &b.basis()[y];
            map.entry((inv[e.src], inv[e.tgt])).or_default().1.push(y);
        }
        Blocks { blocks: map.into_values().collect() }
    }

    /// Images of a's arrows given one matrix per block (rows: b basis).
    fn arrow_images(&self, a: &GradedAlgebra, mats: &[Matrix]) -> SVec2 {
        let f = a.field();
        let mut image_of: BTreeMap<usize, SVec> = BTreeMap::new();
        for ((xs, ys), m) in self.blocks.iter().zip(mats) {
            for (j, &x) in xs.iter().enumerate() {
                let v: SVec = ys
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !m.get(*i, j).is_zero())
                    .map(|(i, &y)| (y, m.get(i, j).clone()))
                    .collect();
                image_of.insert(x, v);
            }
        }
        (0..a.arrows().len())
            .map(|ai| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (x, c) in a.arrow_element(ai) {
                    for (y, d) in &image_of[&x] {
                        let e = acc.entry(*y).or_insert_with(|| f.zero());
                        *e = &*e + &(&c * d);
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            })
            .collect()
    }
}

type SVec2 = Vec<SVec>;

fn perm_matrix(f: Field, perm: &[usize], scales: &[Scalar]) -> Matrix {
    let k = perm.len();
    let mut m = Matrix::zeros(f, k, k);
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, scales[j].clone());
    }
    m
}

pub fn iso_search(a: &GradedAlgebra, b: &GradedAlgebra, mode: IsoMode, seed: u64) -> IsoVerdict {
    let n = a.n_vertices();
    if n != b.n_vertices() {
        return IsoVerdict::Distinguisher(format!("{n} vertices vs {}", b.n_vertices()));
    }
    if a.dims() != b.dims() {
        return IsoVerdict::Distinguisher(format!("Hilbert series differ: {:?} vs {:?}", a.dims(), b.dims()));
    }
    let maps: Vec<Vec<usize>> = match mode {
        IsoMode::ByPosition => vec![(0..n).collect()],
        IsoMode::ByLabel => {
            let m: Option<Vec<usize>> =
                (0..n).map(|v| b.presentation().vertex_index(a.label(v))).collect();
            match m {
                Some(m) => vec![m],
                None => return IsoVerdict::Distinguisher("vertex labels differ".into()),
            }
        }
        IsoMode::Any => permutations(n),
    };
    let mut first_reason = None;
    let candidates: Vec<Vec<usize>> = maps
        .into_iter()
        .filter(|pi| match distinguish(a, b, pi) {
            Some(r) => {
                first_reason.get_or_insert(r);
                false
            }
            None => true,
        })
        .collect();
    if candidates.is_empty() {
        return IsoVerdict::Distinguisher(first_reason.unwrap_or_default());
    }
    let degree_one = |g: &GradedAlgebra| g.arrows().iter().all(|x| x.degree == 1);
    if !degree_one(a) || !degree_one(b) {
        return IsoVerdict::Unknown("presentation has arrows of degree above 1".into());
    }
    let f = a.field();
    let bsc = b.to_sc();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for pi in &candidates {
        let blocks = Blocks::new(a, b, pi);
        let sizes: Vec<usize> = blocks.blocks.iter().map(|(x, _)| x.len()).collect();
        let try_mats = |mats: &[Matrix]| -> Option<IsoWitness> {
            let imgs = blocks.arrow_images(a, mats);
            certify_iso_to_sc(a, &bsc, &imgs, pi).then(|| IsoWitness { vertex_map: pi.clone(), arrow_images: imgs })
        };
        let identity: Vec<Matrix> = sizes.iter().map(|&k| Matrix::identity(f, k)).collect();
        if let Some(w) = try_mats(&identity) {
            return IsoVerdict::Witness(w);
        }
        // Sign changes on single arrows, then permutations within blocks.
        let total: usize = sizes.iter().sum();
        if total <= 12 {
            for mask in 1u32..(1 << total) {
                let mut bit = 0;
                let mats: Vec<Matrix> = sizes
                    .iter()
                    .map(|&k| {
                        let s: Vec<Scalar> = (0..k)
                            .map(|_| {
                                bit += 1;
                                if mask & (1 << (bit - 1)) != 0 { f.int(-1) } else { f.one() }
                            })
                            .collect();
                        perm_matrix(f, &(0..k).collect::<Vec<_>>(), &s)
                    })
                    .collect();
                if let Some(w) = try_mats(&mats) {
                    return IsoVerdict::Witness(w);
                }
            }
        }
        let perms: Vec<Vec<Vec<usize>>> = sizes.iter().map(|&k| permutations(k)).collect();
        let combos: usize = perms.iter().map(|p| p.len()).product();
        if combos <= 720 {
            for c in 1..combos {
                let mut rest = c;
                let mats: Vec<Matrix> = perms
                    .iter()
                    .map(|ps| {
                        let p = &ps[rest % ps.len()];
                        rest /= ps.len();
                        perm_matrix(f, p, &vec![f.one(); p.len()])
                    })
                    .collect();
                if let Some(w) = try_mats(&mats) {
                    return IsoVerdict::Witness(w);
                }
            }
        }
        for _ in 0..RANDOM_BUDGET / candidates.len() {
            let mats: Vec<Matrix> = sizes
                .iter()
                .map(|&k| loop {
                    let mut m = Matrix::zeros(f, k, k);
                    for i in 0..k {
                        for j in 0..k {
                            m.set(i, j, f.int(rng.gen_range(-3..=3)));
                        }
                    }
                    if m.rank() == k {
                        break m;
                    }
                })
                .collect();
            if let Some(w) = try_mats(&mats) {
                return IsoVerdict::Witness(w);
            }
        }
    }
    IsoVerdict::Unknown(format!(
        "invariants agree; no isomorphism found within budget over {} vertex maps",
        candidates.len()
    ))
}

use super::*;
use crate::algebra::{iso_search, IsoMode};
use crate::corpus;
use crate::modules::{generated_submodule, projective, quotient};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cats() -> Vec<(&'static str, LinCat)> {
    ["k1", "a3_line", "sl2_block"].into_iter().map(|n| (n, LinCat::new(&corpus::load(n)).unwrap())).collect()
}

/// A random quotient of a shifted projective, or a sum of two of them.
fn random_module(lam: &Arc<GradedAlgebra>, rng: &mut ChaCha8Rng) -> GradedModule {
    let one = |rng: &mut ChaCha8Rng| {
        let p = projective(lam, rng.gen_range(0..lam.n_vertices())).unwrap().shift(rng.gen_range(-1..=1));
        let f = lam.field();
        let gens: Vec<Vec<Scalar>> =
            (0..rng.gen_range(0..=1)).map(|_| (0..p.total_dim()).map(|_| f.int(rng.gen_range(-1..=1))).collect()).collect();
        quotient(&p, &generated_submodule(&p, &gens)).module
    };
    let x = one(rng);
    if rng.gen_bool(0.3) {
        direct_sum(&[&x, &one(rng)]).unwrap().module
    } else {
        x
    }
}

#[test]
fn lambda_examples() {
    let k = corpus::load("k1");
    assert!(iso_search(&lambda_algebra(&k).unwrap(), &k, IsoMode::ByPosition, 1).is_witness());
    let s = corpus::load("sl2_block");
    assert!(iso_search(&lambda_algebra(&s).unwrap(), &s, IsoMode::ByPosition, 1).is_witness());
    assert_eq!(lambda_algebra(&corpus::load("a3_line")).unwrap().dim(), 5);
    for (name, lc) in cats() {
        if name != "k1" {
            assert_eq!(lc.lambda_matches_koszul, Some(true), "{name}");
        }
    }
    assert_eq!(LinCat::new(&corpus::load("a4_branch")).unwrap_err().code(), "precondition_failed");
}

#[test]
fn simple_and_projective_realizations() {
    for (name, lc) in cats() {
        for i in 0..lc.alg.n_vertices() {
            let s = lc.realize(&simple(&lc.lambda, i).unwrap()).unwrap();
            assert_eq!(s.summands_at(0), vec![(i, 0)]);
            assert_eq!(s.summands.len(), 1);
            let p = lc.realize(&projective(&lc.lambda, i).unwrap()).unwrap();
            assert!(p.complex.is_complex(), "{name}");
            // Chain maps P(i)• → T(j)• are the Cartan numbers [P(i) : L(j)] in degree 0.
            for j in 0..lc.alg.n_vertices() {
                let t = lc.realize(&simple(&lc.lambda, j).unwrap()).unwrap();
                assert_eq!(lc.chain_map_dim(&p, &t).unwrap(), usize::from(i == j), "{name} {i} {j}");
            }
        }
    }
}

#[test]
fn relation_breaking_representations_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut rejected = 0;
    for (_, lc) in cats() {
        let lam = &lc.lambda;
        let f = lam.field();
        let n = lam.n_vertices();
        for _ in 0..30 {
            let slots: Vec<(usize, i64, usize)> = (0..3).map(|d| (rng.gen_range(0..n), d, 1)).collect();
            let blocks = (0..lam.arrows().len())
                .flat_map(|a| (0..2).map(move |d| (a, d)))
                .filter(|&(a, d)| {
                    let ar = &lam.arrows()[a];
                    slots[d as usize].0 == ar.src && slots[d as usize + 1].0 == ar.tgt
                })
                .map(|(a, d)| (a, d, Matrix::from_rows(f, vec![vec![f.int(rng.gen_range(1..=2))]])))
                .collect();
            let x = GradedModule::from_blocks_unchecked(lam, &slots, blocks).unwrap();
            match (x.relation_violation(), lc.realize(&x)) {
                (None, Ok(c)) => assert!(c.complex.is_complex()),
                (Some(_), Err(e)) => {
                    assert_eq!(e.code(), "not_a_complex");
                    rejected += 1;
                }
                (v, r) => panic!("relation check {v:?} against realization {:?}", r.err()),
            }
        }
    }
    assert!(rejected > 0);
}

#[test]
fn realization_is_fully_faithful_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (name, lc) in cats() {
        for _ in 0..12 {
            let x = random_module(&lc.lambda, &mut rng);
            let y = random_module(&lc.lambda, &mut rng);
            let h = hom_at(&x, &y, 0).unwrap().len();
            let c = lc.chain_map_dim(&lc.realize(&x).unwrap(), &lc.realize(&y).unwrap()).unwrap();
            assert_eq!(h, c, "{name}");
        }
    }
}

#[test]
fn grading_shift_becomes_shift_and_suspension() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (_, lc) in cats() {
        for _ in 0..8 {
            let x = random_module(&lc.lambda, &mut rng);
            let a = lc.realize(&x.shift(1)).unwrap().complex;
            let b = lc.realize(&x).unwrap().complex.shifted(-1, 1);
            let nz = |c: &ComplexOfModules| -> Vec<i64> { c.positions.iter().filter(|(_, m)| !m.is_zero()).map(|(&p, _)| p).collect() };
            assert_eq!(nz(&a), nz(&b));
            for p in nz(&a) {
                assert_eq!(a.term(p).dim_vector(), b.term(p).dim_vector());
                let (da, db) = (a.differential(p), b.differential(p));
                assert!(da.mat == db.mat || da.mat == db.mat.scale(&-lc.alg.field().one()));
            }
        }
    }
}

#[test]
fn realized_complexes_are_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for (_, lc) in cats() {
        for _ in 0..8 {
            let c = lc.realize(&random_module(&lc.lambda, &mut rng)).unwrap();
            assert!(c.complex.is_complex());
            for &p in c.summands.keys() {
                assert!(c.summands_at(p).iter().all(|&(_, s)| s == p));
            }
        }
    }
}

#[test]
fn ext1_between_simple_objects() {
    for (name, lc) in cats() {
        let n = lc.alg.n_vertices();
        for i in 0..n {
            for j in 0..n {
                for l in -3..=3 {
                    let e = lc.ext1_in_t(i, j, l).unwrap();
                    assert!(e.agrees(), "{name} {i} {j} {l}: {e:?}");
                    if l != -1 {
                        assert_eq!(e.lambda_dim, 0);
                    }
                }
            }
        }
    }
    let s = LinCat::new(&corpus::load("sl2_block")).unwrap();
    assert_eq!(s.ext1_in_t(1, 0, -1).unwrap(), Ext1InT { i: 1, j: 0, l: -1, lambda_dim: 1, hom_dim: 1 });
}

#[test]
fn canonical_objects_on_small_examples() {
    let k = LinCat::new(&corpus::load("k1")).unwrap();
    for kind in [ObjectKind::Std, ObjectKind::Costd, ObjectKind::Simple, ObjectKind::Tilt] {
        let o = k.canonical_object(kind, 0).unwrap();
        assert_eq!(o.summands_at(0), vec![(0, 0)]);
        assert_eq!(o.summands.len(), 1);
    }
    let s = LinCat::new(&corpus::load("sl2_block")).unwrap();
    let t = s.canonical_object(ObjectKind::Tilt, 1).unwrap();
    assert_eq!(t.homology_support(), vec![0]);
    assert_eq!(t.complex.homology(0).dim_vector().into_iter().collect::<Vec<_>>(), vec![((1, 0), 1)]);
}

#[test]
fn standard_objects_are_ext_orthogonal_to_lower_simples() {
    for (name, lc) in cats() {
        let n = lc.alg.n_vertices();
        for i in 0..n {
            let x = lc.canonical_object(ObjectKind::Std, i).unwrap().x;
            for j in 0..=i {
                for l in -4..=4 {
                    let e = ext_space(&x, &simple(&lc.lambda, j).unwrap(), 1, l).unwrap();
                    assert_eq!(e.dim(), 0, "{name} {i} {j} {l}");
                }
            }
        }
    }
}

#[test]
fn commutation_on_balanced_examples() {
    for (name, _) in cats() {
        let r = verify_commute(&corpus::load(name)).unwrap();
        assert!(r.all_hold(), "{name}: {:?}", r.checks);
        assert_eq!(r.check("E(R(A))", "R(E(A))").unwrap().by_label, "witness", "{name}");
    }
    let s = verify_commute(&corpus::load("sl2_block")).unwrap();
    assert!(s.check("E(R(A))", "A").unwrap().holds());
    assert_eq!(verify_commute(&corpus::load("a4_branch")).unwrap_err().code(), "precondition_failed");
}

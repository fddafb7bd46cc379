use proptest::prelude::*;
use rand::Rng;

use crlab_core::borel_search::{
    enumerate_invariant_spaces, triangular_closure, triangular_closure_with, InvariantSpaceSpec,
    RuleSet,
};
use crlab_core::commrank::{dimension_bound, max_commutator_rank};
use crlab_core::constructions::{
    bidiagonal_commutator_diagonal, bidiagonal_witness_pair, rank_one_max_space, schur_space, v_k,
    valid_splits, RankOneVariant,
};
use crlab_core::exact_linalg::mat::{random_integer_matrix, random_invertible, random_unimodular};
use crlab_core::exact_linalg::{charpoly_discriminant, commutator, int, Mat, Rational};
use crlab_core::triangularize::{
    classify_rank_one_family, triangularize_rank_one, verify_triangular, Side,
};
use crlab_core::verify::{find_distinct_eigenvalue_element, structure_check, StructureStatus};
use crlab_core::{rng, MatrixSubspace};

fn random_space(seed: u64, n: usize, dim: usize, bound: u64) -> MatrixSubspace {
    let mut g = rng::seeded(seed);
    let mats: Vec<Mat> = (0..dim)
        .map(|_| random_integer_matrix(&mut g, n, n, bound))
        .collect();
    MatrixSubspace::span(n, &mats).unwrap()
}

/// Random coordinate space, sometimes with the identity added.
fn random_coordinate_space(seed: u64, n: usize) -> MatrixSubspace {
    let mut g = rng::seeded(seed);
    let mut mats: Vec<Mat> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if g.gen_bool(0.4) {
                mats.push(Mat::unit(n, n, i, j));
            }
        }
    }
    if g.gen_bool(0.5) {
        mats.push(Mat::identity(n));
    }
    MatrixSubspace::span(n, &mats).unwrap()
}

/// Random subspace of a space whose commutators have rank at most one.
fn random_rank_one_space(seed: u64, n: usize) -> MatrixSubspace {
    let base = rank_one_max_space(n, RankOneVariant::Generic((n - 1) / 2)).unwrap();
    let mut g = rng::seeded(seed);
    let d = g.gen_range(2..=base.dim());
    let mats: Vec<Mat> = (0..d)
        .map(|_| {
            let c: Vec<Rational> = (0..base.dim()).map(|_| int(g.gen_range(-3..=3))).collect();
            base.combine(&c)
        })
        .collect();
    let q = random_invertible(&mut g, n, 3);
    MatrixSubspace::span(n, &mats)
        .unwrap()
        .conjugate(&q)
        .unwrap()
}

fn krylov_rank(a: &Mat, v: &[Rational]) -> usize {
    let n = a.rows();
    let mut cols = vec![v.to_vec()];
    for i in 1..n {
        let next = a.mul_vec(&cols[i - 1]);
        cols.push(next);
    }
    Mat::from_columns(n, &cols).rank()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_of_transpose(seed in any::<u64>(), r in 1usize..6, c in 1usize..6) {
        let m = random_integer_matrix(&mut rng::seeded(seed), r, c, 3);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_under_unimodular_products(seed in any::<u64>(), n in 1usize..6, sparse in 0u64..3) {
        let mut g = rng::seeded(seed);
        let m = random_integer_matrix(&mut g, n, n, sparse);
        let p = random_unimodular(&mut g, n, 4);
        let q = random_unimodular(&mut g, n, 4);
        prop_assert_eq!((&(&p * &m) * &q).rank(), m.rank());
    }

    #[test]
    fn commutator_antisymmetric_traceless(seed in any::<u64>(), n in 1usize..6) {
        let mut g = rng::seeded(seed);
        let a = random_integer_matrix(&mut g, n, n, 50);
        let b = random_integer_matrix(&mut g, n, n, 50);
        let ab = commutator(&a, &b).unwrap();
        prop_assert_eq!(&ab, &-&commutator(&b, &a).unwrap());
        prop_assert_eq!(ab.trace(), int(0));
    }

    #[test]
    fn discriminant_implies_cyclic(seed in any::<u64>(), n in 1usize..5) {
        let mut g = rng::seeded(seed);
        let a = random_integer_matrix(&mut g, n, n, 4);
        let v: Vec<Rational> = (0..n).map(|_| int(g.gen_range(-1000..=1000))).collect();
        if charpoly_discriminant(&a).unwrap() != int(0) {
            // a random vector is cyclic for a matrix with distinct eigenvalues
            prop_assert_eq!(krylov_rank(&a, &v), n);
        }
    }

    #[test]
    fn span_is_canonical(seed in any::<u64>(), n in 1usize..4, d in 0usize..6) {
        let v = random_space(seed, n, d, 2);
        let again = MatrixSubspace::span(n, v.basis()).unwrap();
        prop_assert_eq!(again.basis(), v.basis());
    }

    #[test]
    fn conjugation_preserves_membership(seed in any::<u64>(), n in 1usize..4, d in 1usize..5) {
        let v = random_space(seed, n, d, 2);
        let mut g = rng::seeded(seed ^ 1);
        let p = random_invertible(&mut g, n, 3);
        let p_inv = p.inverse().unwrap();
        let w = v.conjugate(&p).unwrap();
        prop_assert_eq!(w.dim(), v.dim());
        let inside = v.combine(&(0..v.dim()).map(|_| int(g.gen_range(-5..=5))).collect::<Vec<_>>());
        prop_assert!(w.contains(&(&(&p * &inside) * &p_inv)));
        let outside = random_integer_matrix(&mut g, n, n, 5);
        prop_assert_eq!(w.contains(&(&(&p * &outside) * &p_inv)), v.contains(&outside));
    }

    #[test]
    fn algebra_predicates(seed in any::<u64>(), n in 1usize..5) {
        let v = random_coordinate_space(seed, n);
        if v.is_algebra() {
            prop_assert!(v.is_jordan_closed());
        }
        let t = v.transpose_space();
        prop_assert_eq!(t.dim(), v.dim());
        prop_assert_eq!(t.is_algebra(), v.is_algebra());
        prop_assert_eq!(t.is_jordan_closed(), v.is_jordan_closed());
        prop_assert_eq!(t.transpose_space(), v);
    }

    #[test]
    fn profile_monotone_and_deterministic(seed in any::<u64>(), n in 2usize..4, d in 1usize..6) {
        let v = random_space(seed, n, d, 3);
        let w = MatrixSubspace::span(n, &v.basis()[..v.dim() / 2 + 1]).unwrap();
        let pv = max_commutator_rank(&v, 16, seed).unwrap();
        let pw = max_commutator_rank(&w, 16, seed).unwrap();
        prop_assert!(pw.probable_max <= pv.probable_max);
        prop_assert_eq!(max_commutator_rank(&v, 16, seed).unwrap(), pv);
    }

    #[test]
    fn witness_rank_invariant(seed in any::<u64>(), n in 2usize..5) {
        let v = random_space(seed, n, 3, 3);
        let prof = max_commutator_rank(&v, 8, seed).unwrap();
        let (a, b) = prof.witness.clone().unwrap();
        let r = commutator(&a, &b).unwrap().rank();
        prop_assert_eq!(r, prof.certified_lower);
        let p = random_invertible(&mut rng::seeded(seed ^ 7), n, 3);
        let p_inv = p.inverse().unwrap();
        let pa = &(&p * &a) * &p_inv;
        let pb = &(&p * &b) * &p_inv;
        prop_assert_eq!(commutator(&pa, &pb).unwrap().rank(), r);
        prop_assert_eq!(commutator(&a.transpose(), &b.transpose()).unwrap().rank(), r);
    }

    #[test]
    fn bidiagonal_formula(seed in any::<u64>(), n in 2usize..9) {
        let mut g = rng::seeded(seed);
        let s = g.gen_range(1..n);
        let lambdas: Vec<Rational> = (0..s).map(|_| int(g.gen_range(-20..=20))).collect();
        let mus: Vec<Rational> = (0..s).map(|_| int(g.gen_range(-20..=20))).collect();
        let (a, b) = bidiagonal_witness_pair(n, s, &lambdas, &mus).unwrap();
        let c = commutator(&a, &b).unwrap();
        let diag = bidiagonal_commutator_diagonal(n, &lambdas, &mus);
        prop_assert_eq!(c, Mat::diag(&diag));
    }

    #[test]
    fn triangularization_sound_and_similarity_invariant(seed in any::<u64>(), n in 2usize..6) {
        let v = random_rank_one_space(seed, n);
        let t = triangularize_rank_one(&v).unwrap();
        let p = t.rational().unwrap().p.clone();
        prop_assert!(verify_triangular(&v, &p).unwrap());
        let q = random_invertible(&mut rng::seeded(seed ^ 3), n, 3);
        let w = v.conjugate(&q).unwrap();
        let t2 = triangularize_rank_one(&w).unwrap();
        prop_assert!(verify_triangular(&w, &t2.rational().unwrap().p).unwrap());
        // conjugating by P keeps witness ranks
        let prof = max_commutator_rank(&v, 8, seed).unwrap();
        if let Some((a, b)) = prof.witness {
            let p_inv = p.inverse().unwrap();
            let pa = &(&p_inv * &a) * &p;
            let pb = &(&p_inv * &b) * &p;
            prop_assert_eq!(commutator(&pa, &pb).unwrap().rank(), prof.certified_lower);
        }
    }

    #[test]
    fn classification_swaps_under_transpose(seed in any::<u64>(), n in 2usize..6) {
        let v = random_rank_one_space(seed, n);
        let left = classify_rank_one_family(&v).unwrap();
        let right = classify_rank_one_family(&v.transpose_space()).unwrap();
        // a family consistent on both sides keeps LEFT under either orientation
        if left.side == Side::Left && right.side == Side::Right {
            prop_assert_eq!(left.x0, right.x0);
        } else if left.side == Side::Zero {
            prop_assert_eq!(right.side, Side::Zero);
        }
    }

    #[test]
    fn closure_is_a_closure_operator(seed in any::<u64>(), n in 2usize..6) {
        let mut g = rng::seeded(seed);
        let mut pos = Vec::new();
        let mut more = Vec::new();
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                if g.gen_bool(0.15) {
                    pos.push((i, j));
                    more.push((i, j));
                } else if g.gen_bool(0.15) {
                    more.push((i, j));
                }
            }
        }
        let ones = vec![int(1); n];
        let s = InvariantSpaceSpec::new(n, &pos, std::slice::from_ref(&ones)).unwrap();
        let t = InvariantSpaceSpec::new(n, &more, &[ones]).unwrap();
        let cs = triangular_closure(&s);
        prop_assert!(s.is_subspec_of(&cs));
        prop_assert!(cs.is_subspec_of(&triangular_closure(&t)));
        prop_assert_eq!(&triangular_closure(&cs), &cs);
        prop_assert_eq!(&triangular_closure_with(&s, RuleSet::ThreeCase), &cs);
    }

    #[test]
    fn distinct_eigenvalue_element_is_member(seed in any::<u64>(), n in 2usize..5) {
        let v = random_space(seed, n, n * n - n + 1, 2);
        if let Some(found) = find_distinct_eigenvalue_element(&v, 10, seed) {
            prop_assert!(v.contains(&found.element));
            prop_assert!(charpoly_discriminant(&found.element).unwrap() != int(0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn prime_field_rank_matches(seed in any::<u64>(), r in 1usize..6, c in 1usize..6) {
        let m = random_integer_matrix(&mut rng::seeded(seed), r, c, 2);
        prop_assert_eq!(m.to_fp().unwrap().rank(), m.rank());
    }
}

#[test]
fn bound_identities() {
    for n in 2..=50 {
        assert_eq!(dimension_bound(n, 0).unwrap(), n * n / 4 + 1);
        assert_eq!(dimension_bound(n, n - 1).unwrap(), n * n - n + 1);
        assert_eq!(
            dimension_bound(n, 1).unwrap(),
            (n - 1) * (n - 1) / 4 + n + 1
        );
    }
}

#[test]
fn constructions_reach_the_bound() {
    for n in 2..=10 {
        for k in 0..n {
            for l in valid_splits(n, k) {
                let v = v_k(n, k, l).unwrap();
                assert_eq!(v.dim(), dimension_bound(n, k).unwrap());
                assert!(v.is_algebra());
            }
        }
        assert!(schur_space(n).unwrap().is_algebra());
    }
    for n in 2..=6 {
        for variant in RankOneVariant::all_for(n) {
            assert_eq!(
                rank_one_max_space(n, variant).unwrap().dim(),
                dimension_bound(n, 1).unwrap()
            );
        }
    }
}

#[test]
fn enumerated_specs_are_fixed_by_triangular_conjugation() {
    let mut g = rng::seeded(5);
    for n in 2..=4 {
        for spec in enumerate_invariant_spaces(n).unwrap() {
            let v = spec.realize();
            for i in 0..n {
                for j in i + 1..n {
                    for _ in 0..20 {
                        let lambda =
                            Rational::new(g.gen_range(-50..=50).into(), g.gen_range(1..=9).into());
                        let mut p = Mat::identity(n);
                        p.set(i, j, lambda);
                        assert_eq!(v.conjugate(&p).unwrap(), v, "{spec}");
                    }
                }
            }
            let d: Vec<Rational> = (0..n).map(|_| int(g.gen_range(1..=9))).collect();
            assert_eq!(v.conjugate(&Mat::diag(&d)).unwrap(), v);
        }
    }
}

#[test]
fn structure_round_trip_over_families() {
    for (n, k) in [(4, 1), (5, 1), (5, 3), (6, 2)] {
        for l in valid_splits(n, k) {
            let target = v_k(n, k, l).unwrap();
            for seed in 0..10 {
                let q = random_invertible(&mut rng::seeded(seed), n, 3);
                let v = target.conjugate(&q).unwrap();
                let s = structure_check(&v, 32, seed).unwrap();
                assert_eq!(s.status, StructureStatus::MatchesVk, "{n} {k} {l} {seed}");
                let w = s.witness_basis.unwrap();
                assert_eq!(v.conjugate(&w).unwrap(), v_k(n, k, s.l.unwrap()).unwrap());
            }
        }
    }
}

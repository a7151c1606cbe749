mod common;

use common::*;
use proptest::prelude::*;
use xhermite::exactpoly::{rat, squarefree, wronskian};
use xhermite::hermite::{basis_degree, degree_sequence, eta_squared_embed, membership};
use xhermite::l2lab::{density_demo, inner_product, WeightSpec};
use xhermite::monodromy::triangular_nu;
use xhermite::partitions::{enumerate, inverse_k, PartitionFilter};
use xhermite::{ExactPoly, ExceptionalBasis, Partition, RationalFunction};

fn poly(max_deg: usize) -> impl Strategy<Value = ExactPoly> {
    prop::collection::vec(-6i64..=6, 1..=max_deg + 1).prop_map(|c| ExactPoly::from_ints(&c))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = ExactPoly> {
    poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn partition(max_size: usize) -> impl Strategy<Value = Partition> {
    let all = enumerate(max_size, PartitionFilter::All);
    prop::sample::select(all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_rule(a in poly(6), b in poly(6)) {
        let lhs = (&a * &b).derivative(1);
        let rhs = &(&a.derivative(1) * &b) + &(&a * &b.derivative(1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn two_by_two_wronskian(f in poly(6), g in poly(6)) {
        let w = wronskian(&[f.clone(), g.clone()]);
        prop_assert_eq!(w, &(&f * &g.derivative(1)) - &(&f.derivative(1) * &g));
    }

    #[test]
    fn wronskian_matches_oracle(fs in prop::collection::vec(poly(4), 0..4)) {
        prop_assert_eq!(wronskian(&fs), wronskian_oracle(&fs));
    }

    #[test]
    fn wronskian_degree_for_distinct_degrees(mut degs in prop::collection::btree_set(0usize..8, 1..5), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let ds: Vec<usize> = std::mem::take(&mut degs).into_iter().collect();
        let fs: Vec<ExactPoly> = ds.iter().map(|&d| random_poly(&mut rng, d, 5)).collect();
        let n = ds.len();
        let want = ds.iter().sum::<usize>() - n * (n - 1) / 2;
        prop_assert_eq!(wronskian(&fs).degree(), Some(want));
    }

    #[test]
    fn wronskian_is_multilinear(f in poly(4), g in poly(4), c in -5i64..=5) {
        let scaled = wronskian(&[f.scale(&rat(c)), g.clone()]);
        prop_assert_eq!(scaled, wronskian(&[f, g]).scale(&rat(c)));
    }

    #[test]
    fn squarefree_reconstructs(p in nonzero_poly(5), q in nonzero_poly(3), e in 1u32..4) {
        let f = &p * &q.pow(e);
        let sf = squarefree(&f).unwrap();
        prop_assert_eq!(sf.reconstruct(), f.clone());
        for (part, _) in &sf.parts {
            let g = part.gcd(&part.derivative(1));
            prop_assert!(g.is_constant(), "factor {} not square-free", part);
        }
        let degs: Vec<usize> = sf.parts.iter().map(|(p, _)| p.degree().unwrap()).collect();
        prop_assert!(degs.iter().all(|&d| d > 0));
    }

    #[test]
    fn order_is_additive(a in nonzero_poly(4), b in nonzero_poly(4), k in 0usize..4, j in 0usize..4, r in -3i64..=3) {
        let root = rat(r);
        let lin = ExactPoly::linear_root(&root);
        let f = RationalFunction::new(&a * &lin.pow(k as u32), ExactPoly::one()).unwrap();
        let g = RationalFunction::new(b.clone(), lin.pow(j as u32)).unwrap();
        let lhs = (&f * &g).order_at(&root).unwrap();
        prop_assert_eq!(lhs, f.order_at(&root).unwrap() + g.order_at(&root).unwrap());
    }

    #[test]
    fn text_round_trip(p in poly(8)) {
        let back: ExactPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn membership_recombines(l in partition(6), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let basis = ExceptionalBasis::new(&l);
        let p = random_member(&mut rng, &basis, l.size() + 4);
        let m = basis.membership(&p).unwrap();
        prop_assert!(m.member);
        prop_assert_eq!(m.recombine(&basis).unwrap(), p);
        let gap = *degree_sequence(&l).gaps.iter().next_back().unwrap_or(&0);
        if !l.is_empty() {
            let bad = &basis.element(basis.admissible_indices(1)[0]).unwrap() + &ExactPoly::monomial(rat(1), gap);
            let mb = membership(&l, &bad).unwrap();
            prop_assert!(!mb.member);
            prop_assert!(degree_sequence(&l).is_gap(mb.obstruction_degree.unwrap()));
        }
    }

    #[test]
    fn h_lambda_squared_times_p_is_member(l in partition(5), p in poly(4)) {
        let basis = ExceptionalBasis::new(&l);
        let (q, m) = eta_squared_embed(&basis, &p).unwrap();
        prop_assert_eq!(m.recombine(&basis).unwrap(), q);
    }

    #[test]
    fn basis_degrees_follow_formula(l in partition(7), i in 0usize..12) {
        let basis = ExceptionalBasis::new(&l);
        if basis.is_admissible(i) {
            let e = basis.element(i).unwrap();
            prop_assert_eq!(e.degree(), Some(basis_degree(&l, i)));
        }
    }

    #[test]
    fn multiplicities_are_triangular(l in partition(8)) {
        let sf = squarefree(&xhermite::hermite::h_lambda(&l)).unwrap();
        for (_, m) in sf.parts {
            prop_assert!(triangular_nu(m).is_ok());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inner_product_symmetric_and_positive(a in nonzero_poly(5), b in nonzero_poly(5), which in 0usize..3) {
        let l = [lam(&[]), lam(&[1, 1]), lam(&[2, 2])][which].clone();
        let s = WeightSpec::new(&l).unwrap();
        let fa = |x: f64| a.eval_f64(x);
        let fb = |x: f64| b.eval_f64(x);
        let ab = inner_product(&s, &fa, &fb).unwrap();
        let ba = inner_product(&s, &fb, &fa).unwrap();
        let scale = inner_product(&s, &fa, &fa).unwrap().value.max(inner_product(&s, &fb, &fb).unwrap().value);
        prop_assert!((ab.value - ba.value).abs() <= 1e-14 * scale);
        prop_assert!(inner_product(&s, &fa, &fa).unwrap().value > 0.0);
    }

    #[test]
    fn density_errors_non_increasing(f in nonzero_poly(6), which in 0usize..2) {
        let l = [lam(&[1, 1]), lam(&[2, 2])][which].clone();
        let r = density_demo(&l, &|x| f.eval_f64(x), &[0, 3, 6, 9, 12]).unwrap();
        prop_assert!(r.is_non_increasing(), "{:?}", r.errors());
    }
}

#[test]
fn partition_round_trip_and_counts() {
    // p(n) for n = 0..12
    let counts = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
    let all = enumerate(12, PartitionFilter::All);
    for n in 1..=12 {
        assert_eq!(all.iter().filter(|l| l.size() == n).count(), counts[n], "n = {n}");
    }
    for l in &all {
        assert_eq!(&inverse_k(&l.k_sequence()), l);
        let s = l.to_string();
        let back: Partition = s.parse().unwrap();
        assert_eq!(&back, l);
    }
    // even partitions of 2n correspond to partitions of n (pairs doubled)
    let even = enumerate(12, PartitionFilter::Even);
    for n in 1..=6 {
        assert_eq!(even.iter().filter(|l| l.size() == 2 * n).count(), counts[n]);
    }
}

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use wonderful::models::{build_dcp, DcpInput, SubspaceInput};
use wonderful::properties::{product_flags, propagate_blowup_flags, CenterInfo};
use wonderful::verify::random_dcp_input;
use wonderful::{bundle_factor, wonderful_run, BettiVector, FlagSet, KnownSpaces, Locus, Tri, Verdict};

fn betti() -> impl Strategy<Value = BettiVector> {
    prop::collection::vec(0u64..20, 0..7).prop_map(|v| BettiVector::from_u64s(&v))
}

/// A palindromic vector of top degree `2·half`.
fn symmetric() -> impl Strategy<Value = (BettiVector, usize)> {
    prop::collection::vec(1u64..10, 1..5).prop_map(|half| {
        let mut v = half.clone();
        v.extend(half.iter().rev().skip(1));
        (BettiVector::from_u64s(&v), v.len() - 1)
    })
}

fn tri() -> impl Strategy<Value = Tri> {
    prop_oneof![Just(Tri::Yes), Just(Tri::No), Just(Tri::Unknown)]
}

fn flags() -> impl Strategy<Value = FlagSet> {
    (tri(), tri(), tri()).prop_map(|(e, m, g)| FlagSet::new(e, m, g))
}

/// Forgets some of the known values.
fn coarsen(f: FlagSet, mask: u8) -> FlagSet {
    let forget = |t: Tri, bit: u8| if mask & bit != 0 { Tri::Unknown } else { t };
    FlagSet {
        effective: forget(f.effective, 1),
        maximal: forget(f.maximal, 2),
        galois_maximal: forget(f.galois_maximal, 4),
    }
}

fn point(n: usize, coords: &[&str]) -> Vec<String> {
    assert_eq!(coords.len(), n + 1);
    coords.iter().map(ToString::to_string).collect()
}

proptest! {
    #[test]
    fn kunneth_multiplies_totals_and_euler(a in betti(), b in betti()) {
        let p = a.kunneth(&b);
        prop_assert_eq!(p.total(), a.total() * b.total());
        prop_assert_eq!(p.euler(), a.euler() * b.euler());
        prop_assert_eq!(p, b.kunneth(&a));
    }

    #[test]
    fn kunneth_keeps_duality((a, ta) in symmetric(), (b, tb) in symmetric()) {
        prop_assert!(a.kunneth(&b).is_palindromic(ta + tb));
    }

    #[test]
    fn shifts_add_degrees(a in betti(), j in 0usize..5, k in 0usize..5) {
        prop_assert_eq!(a.shift(j).shift(k), a.shift(j + k));
        prop_assert_eq!(a.shift(j).total(), a.total());
    }

    #[test]
    fn projective_bundle_splits(a in betti(), rank in 1usize..6) {
        // fibre P^{rank-1}: the bundle is the base plus rank − 1 shifted copies
        for locus in [Locus::Complex, Locus::Real] {
            let bundle = a.kunneth(&bundle_factor(rank, locus).unwrap());
            prop_assert_eq!(bundle, a.add(&a.exceptional_sum(rank - 1, locus)));
        }
    }

    #[test]
    fn flag_rules_respect_information_order(
        ambient in flags(),
        centre in flags(),
        empty in any::<bool>(),
        codim in 1usize..5,
        stretched in tri(),
        masks in (0u8..8, 0u8..8),
    ) {
        let fine = propagate_blowup_flags(&ambient, &CenterInfo { flags: centre, real_locus_empty: empty, codim }, stretched);
        let coarse_centre = CenterInfo { flags: coarsen(centre, masks.1).normalized(), real_locus_empty: empty, codim };
        let coarse = propagate_blowup_flags(&coarsen(ambient, masks.0).normalized(), &coarse_centre, Tri::Unknown);
        prop_assert!(fine.refines(&coarse), "{:?} does not refine {:?}", fine, coarse);
    }

    #[test]
    fn product_flags_respect_information_order(a in flags(), b in flags(), mask in 0u8..8) {
        let fine = product_flags(&[a, b]);
        prop_assert!(fine.refines(&product_flags(&[coarsen(a, mask).normalized(), b])));
    }

    #[test]
    fn real_linear_arrangements_are_conjugation_spaces(seed in any::<u64>(), n in 2usize..5) {
        let input = random_dcp_input(&mut StdRng::seed_from_u64(seed), n, false);
        let run = wonderful_run(&build_dcp(&input, &KnownSpaces::default()).unwrap().arrangement).unwrap();
        prop_assert_eq!(run.verdict, Verdict::ConjugationSpace);
        prop_assert_eq!(run.deficiency(), &BigUint::default());
        prop_assert_eq!(run.betti_c.odd_part(), BigUint::default());
    }

    #[test]
    fn arrangements_with_pairs_keep_the_identities(seed in any::<u64>(), n in 3usize..5) {
        let input = random_dcp_input(&mut StdRng::seed_from_u64(seed), n, true);
        let run = wonderful_run(&build_dcp(&input, &KnownSpaces::default()).unwrap().arrangement).unwrap();
        prop_assert_eq!(run.deficiency().clone(), run.betti_c.total() - run.betti_r.total());
        let euler = run.traces.iter().fold(BigInt::from(n + 1), |acc, t| acc + BigInt::from(t.codim - 1) * &t.center_euler);
        prop_assert_eq!(run.betti_c.euler(), euler);
    }

    #[test]
    fn one_linear_centre(n in 2usize..6, k in 0usize..4) {
        prop_assume!(k + 2 <= n);
        let rows = (0..=k).map(|i| (0..=n).map(|j| if i == j { "1".to_string() } else { "0".to_string() }).collect()).collect();
        let input = DcpInput { ambient_dim: n, subspaces: vec![SubspaceInput { label: None, points: rows }] };
        let run = wonderful_run(&build_dcp(&input, &KnownSpaces::default()).unwrap().arrangement).unwrap();
        // P^n plus (codim − 1) copies of P^k
        let expected = BigUint::from((n + 1) + (n - k - 1) * (k + 1));
        prop_assert_eq!(run.betti_c.total(), expected.clone());
        prop_assert_eq!(run.betti_r.total(), expected);
    }
}

#[test]
fn conjugate_pair_of_points() {
    // P^3 blown up at i and −i on the rational normal curve: the real locus stays RP^3
    let input = DcpInput {
        ambient_dim: 3,
        subspaces: vec![
            SubspaceInput { label: Some("p".into()), points: vec![point(3, &["1", "i", "-1", "-i"])] },
            SubspaceInput { label: Some("p̄".into()), points: vec![point(3, &["1", "-i", "-1", "i"])] },
        ],
    };
    let run = wonderful_run(&build_dcp(&input, &KnownSpaces::default()).unwrap().arrangement).unwrap();
    assert_eq!(run.betti_c, BettiVector::from_u64s(&[1, 0, 3, 0, 3, 0, 1]));
    assert_eq!(run.betti_r, BettiVector::real_projective(3));
    assert_eq!(run.deficiency(), &BigUint::from(4u32));
    assert_eq!(run.flags.maximal, Tri::No);
}

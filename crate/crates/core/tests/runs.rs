use wonderful::models::{build_config, build_moduli, ConfigModel, ModuliSpec, SpaceData};
use wonderful::oracle::{keel_complex, keel_real};
use wonderful::properties::KnownSpaces;
use wonderful::{wonderful_run, BettiVector, RunResult, Verdict};

fn moduli(n: usize, sigma: &str) -> RunResult {
    let model = build_moduli(&ModuliSpec::new(n, sigma).unwrap(), &KnownSpaces::default()).unwrap();
    wonderful_run(&model.arrangement).unwrap()
}

fn b(v: &[u64]) -> BettiVector {
    BettiVector::from_u64s(v)
}

#[test]
fn moduli_small_cases() {
    for sigma in ["id", "(1 2)", "(1 2)(3 4)"] {
        let r = moduli(4, sigma);
        assert_eq!((r.betti_c.clone(), r.betti_r.clone()), (b(&[1, 0, 1]), b(&[1, 1])));
    }
    let r = moduli(5, "id");
    assert_eq!(r.betti_c, b(&[1, 0, 5, 0, 1]));
    assert_eq!(r.betti_r, b(&[1, 5, 1]));
    assert_eq!(r.verdict, Verdict::ConjugationSpace);

    let r = moduli(5, "(1 2)");
    assert_eq!((r.betti_c.total(), r.betti_r.total()), (7u32.into(), 5u32.into()));
    assert_eq!(r.verdict, Verdict::EffectiveGaloisMaximal);

    let r = moduli(5, "(1 2)(3 4)");
    assert_eq!(r.betti_r.total(), 3u32.into());
    assert_eq!(*r.deficiency(), 4u32.into());
}

#[test]
fn moduli_larger_cases() {
    let r = moduli(6, "id");
    assert_eq!(r.betti_c, b(&[1, 0, 16, 0, 16, 0, 1]));
    assert_eq!(r.betti_r, b(&[1, 16, 16, 1]));
    let r = moduli(7, "id");
    assert_eq!(r.betti_c, b(&[1, 0, 42, 0, 127, 0, 42, 0, 1]));
    assert_eq!(r.betti_r, b(&[1, 42, 127, 42, 1]));
}

#[test]
fn configuration_examples() {
    let known = KnownSpaces::default();
    let run = |model, n, k| {
        let m = build_config(model, n, &SpaceData::projective(k), None, &known).unwrap();
        wonderful_run(&m.arrangement).unwrap()
    };
    let r = run(ConfigModel::Fm, 2, 2);
    assert_eq!((r.betti_c.total(), r.betti_r.total()), (12u32.into(), 12u32.into()));
    assert_eq!(r.verdict, Verdict::ConjugationSpace);
    let r = run(ConfigModel::Fm, 3, 1);
    assert_eq!((r.betti_c.total(), r.betti_r.total()), (10u32.into(), 10u32.into()));
    let r = run(ConfigModel::Ulyanov, 4, 1);
    assert_eq!(r.verdict, Verdict::ConjugationSpace);
}

#[test]
fn moduli_eight_marks() {
    let r = moduli(8, "id");
    assert_eq!(r.betti_c, keel_complex(8));
    assert_eq!(r.betti_r, keel_real(8));
    assert_eq!(r.verdict, Verdict::ConjugationSpace);
}

#[test]
fn meeting_conjugate_centres_are_indeterminate() {
    // <1,3,5> and <2,4,6> are swapped by σ and meet in a point
    let r = moduli(7, "(1 2)(3 4)(5 6)");
    assert_eq!(r.betti_c, keel_complex(7));
    assert!(r.traces.iter().any(|t| t.pair_meet.is_some()));
    assert_eq!(r.verdict, Verdict::Indeterminate);
    assert_eq!(r.deficiency().clone(), r.betti_c.total() - r.betti_r.total());
}

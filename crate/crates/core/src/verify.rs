//! Self-verification suites run by `wonderful verify`.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::engine::wonderful_run;
use crate::error::{Error, Result};
use crate::geometry::GaussRat;
use crate::hilbert::{deficiency_effective_gm, deficiency_general, rank_mu_effective_gm, SmithData};
use crate::models::{
    braid_linear, braid_partition, build_config, build_dcp, build_moduli, ConfigModel, DcpInput, ModuliSpec, SpaceData,
    SubspaceInput,
};
use crate::oracle::{keel_complex, keel_real};
use crate::properties::{KnownSpaces, Verdict};
use crate::report::{Check, RunReport};

/// Random arrangement in `P^n` spanned by points of the rational normal curve. With
/// `pairs`, some generators come with their complex conjugates.
pub fn random_dcp_input(rng: &mut StdRng, n: usize, pairs: bool) -> DcpInput {
    let mut params: Vec<GaussRat> = Vec::new();
    let mut conj_of: Vec<usize> = Vec::new();
    let real_points = rng.gen_range(n + 1..=n + 3);
    let mut values: Vec<i64> = (-6..=6).collect();
    values.shuffle(rng);
    for &v in values.iter().take(real_points) {
        conj_of.push(params.len());
        params.push(GaussRat::from_int(v));
    }
    if pairs {
        for k in 1..=rng.gen_range(1..=2i64) {
            let re = rng.gen_range(-3..=3);
            let i = params.len();
            params.push(GaussRat::complex(re, k));
            params.push(GaussRat::complex(re, -k));
            conj_of.push(i + 1);
            conj_of.push(i);
        }
    }
    let coords = |i: usize| -> Vec<String> { (0..=n as u32).map(|e| params[i].pow(e).to_string()).collect() };

    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for _ in 0..rng.gen_range(2..=5) {
        let size = rng.gen_range(1..=n - 1);
        let mut idx: Vec<usize> = (0..params.len()).collect();
        idx.shuffle(rng);
        let mut s: Vec<usize> = idx.into_iter().take(size).collect();
        s.sort_unstable();
        let mut c: Vec<usize> = s.iter().map(|&i| conj_of[i]).collect();
        c.sort_unstable();
        for t in [s, c] {
            if !subsets.contains(&t) {
                subsets.push(t);
            }
        }
    }
    let subspaces = subsets
        .into_iter()
        .map(|s| SubspaceInput {
            label: Some(format!("<{}>", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))),
            points: s.into_iter().map(coords).collect(),
        })
        .collect();
    DcpInput { ambient_dim: n, subspaces }
}

/// Random consistent Smith data of an effective Galois maximal space.
pub fn random_smith_data(rng: &mut StdRng) -> SmithData {
    let n = rng.gen_range(1..=5usize);
    let delta: Vec<u64> = (0..2 * n).map(|_| if rng.gen_bool(0.4) { rng.gen_range(0..=4) } else { 0 }).collect();
    let a: u64 = 2 * delta.iter().sum::<u64>();
    let mut beta_fixed = rng.gen_range(1..=40u64);
    if n % 2 == 1 && beta_fixed % 2 == 1 {
        beta_fixed += 1;
    }
    SmithData { n, beta_total: beta_fixed + a, beta_fixed, beta_odd: 0, delta, rank_mu: None, effective_gm: true }
}

/// All involutions of `{0..n}` as image vectors.
pub fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn rec(sigma: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
        let n = sigma.len();
        if i == n {
            out.push(sigma.clone());
            return;
        }
        if sigma[i] != usize::MAX {
            return rec(sigma, i + 1, out);
        }
        sigma[i] = i;
        rec(sigma, i + 1, out);
        for j in i + 1..n {
            if sigma[j] == usize::MAX {
                sigma[i] = j;
                sigma[j] = i;
                rec(sigma, i + 1, out);
                sigma[j] = usize::MAX;
            }
        }
        sigma[i] = usize::MAX;
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; n], 0, &mut out);
    out
}

fn check(name: &str, f: impl FnOnce() -> Result<()>) -> Check {
    match f() {
        Ok(()) => Check { name: name.into(), passed: true, detail: String::new() },
        Err(e) => Check { name: name.into(), passed: false, detail: e.to_string() },
    }
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invariant(what()))
    }
}

/// Runs a named suite; `core` covers every module against oracles and invariants.
pub fn run_suite(name: &str) -> Result<Vec<Check>> {
    if name != "core" {
        return Err(Error::Input(format!("unknown suite {name:?} (available: core)")));
    }
    let known = KnownSpaces::default();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut checks = Vec::new();

    checks.push(check("moduli against the keel recursion", || {
        for n in 4..=7 {
            let model = build_moduli(&ModuliSpec::new(n, "id")?, &known)?;
            let run = wonderful_run(&model.arrangement)?;
            ensure(run.betti_c == keel_complex(n) && run.betti_r == keel_real(n), || {
                format!("n = {n}: engine {} / {}, oracle {}", run.betti_c, run.betti_r, keel_complex(n))
            })?;
            ensure(n < 5 || run.verdict == Verdict::ConjugationSpace, || format!("n = {n}: verdict {}", run.verdict))?;
        }
        Ok(())
    }));

    checks.push(check("moduli with swapped marks", || {
        let run = wonderful_run(&build_moduli(&ModuliSpec::new(5, "(1 2)")?, &known)?.arrangement)?;
        ensure(run.betti_r.total() == 5u32.into() && run.verdict == Verdict::EffectiveGaloisMaximal, || {
            format!("σ = (1 2): real {} verdict {}", run.betti_r, run.verdict)
        })?;
        let run = wonderful_run(&build_moduli(&ModuliSpec::new(5, "(1 2)(3 4)")?, &known)?.arrangement)?;
        ensure(run.betti_r.total() == 3u32.into() && *run.deficiency() == 4u32.into(), || {
            format!("σ = (1 2)(3 4): real {} deficiency {}", run.betti_r, run.deficiency())
        })
    }));

    checks.push(check("moduli complex data independent of σ", || {
        for n in 5..=6 {
            for sigma in involutions(n) {
                let spec = ModuliSpec { n, sigma, params: None };
                if spec.fixed_points().is_empty() {
                    continue;
                }
                let run = wonderful_run(&build_moduli(&spec, &known)?.arrangement)?;
                ensure(run.betti_c == keel_complex(n), || format!("n = {n}, σ = {}", spec.sigma_string()))?;
            }
        }
        Ok(())
    }));

    checks.push(check("random subspace arrangements", || {
        for i in 0..40 {
            let n = 3 + i % 2;
            let pairs = i % 4 >= 2;
            let input = random_dcp_input(&mut rng, n, pairs);
            let run = wonderful_run(&build_dcp(&input, &known)?.arrangement)?;
            if !pairs {
                ensure(run.verdict == Verdict::ConjugationSpace && run.betti_c.odd_part() == 0u32.into(), || {
                    format!("real arrangement #{i} gave {}", run.verdict)
                })?;
            }
        }
        Ok(())
    }));

    checks.push(check("configuration models", || {
        let p = SpaceData::projective;
        let fm22 = wonderful_run(&build_config(ConfigModel::Fm, 2, &p(2), None, &known)?.arrangement)?;
        ensure(fm22.betti_c.total() == 12u32.into() && fm22.betti_r.total() == 12u32.into(), || {
            format!("FM(P², 2): {} / {}", fm22.betti_c, fm22.betti_r)
        })?;
        let fm31 = wonderful_run(&build_config(ConfigModel::Fm, 3, &p(1), None, &known)?.arrangement)?;
        ensure(fm31.betti_c.total() == 10u32.into() && fm31.betti_r.total() == 10u32.into(), || {
            format!("FM(P¹, 3): {} / {}", fm31.betti_c, fm31.betti_r)
        })
    }));

    checks.push(check("partition and linear backends agree", || {
        for model in [ConfigModel::Fm, ConfigModel::Ulyanov] {
            for n in 2..=5 {
                let a = wonderful_run(&braid_linear(model, n, &known)?.arrangement)?;
                let b = wonderful_run(&braid_partition(model, n, &known)?.arrangement)?;
                ensure(a.traces == b.traces, || format!("{} n = {n}: traces differ", model.name()))?;
            }
        }
        Ok(())
    }));

    checks.push(check("hilbert square formulas", || {
        for _ in 0..200 {
            let s = random_smith_data(&mut rng);
            let general = deficiency_general(&SmithData { rank_mu: Some(rank_mu_effective_gm(&s)?), ..s.clone() })?;
            ensure(deficiency_effective_gm(&s)? == general, || format!("mismatch on {s:?}"))?;
        }
        Ok(())
    }));

    checks.push(check("report round trip", || {
        let model = build_moduli(&ModuliSpec::new(6, "(1 2)")?, &known)?;
        let report = RunReport::new(&model, &wonderful_run(&model.arrangement)?)?;
        let text = report.to_json();
        ensure(RunReport::from_json(&text)?.to_json() == text && report.all_checks_pass(), || {
            "report does not round-trip".into()
        })
    }));

    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| involutions(n).len()).collect();
        assert_eq!(counts, [1, 2, 4, 10, 26, 76, 232]);
    }

    #[test]
    fn random_inputs_are_closed_under_conjugation() {
        let mut rng = StdRng::seed_from_u64(3);
        let input = random_dcp_input(&mut rng, 4, true);
        assert!(build_dcp(&input, &KnownSpaces::default()).is_ok());
    }
}

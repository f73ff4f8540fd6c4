//! Smith–Thom deficiency of the Hilbert square `X^{[2]}` from Smith-sequence data.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::engine::RunResult;
use crate::error::{Error, Result};
use crate::properties::{FlagSet, Verdict};

/// Mod-2 data of a real variety `X` entering the Hilbert-square formulas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithData {
    /// Complex dimension of `X`.
    pub n: usize,
    pub beta_total: u64,
    pub beta_fixed: u64,
    /// Total odd-degree Betti number of `X`.
    pub beta_odd: u64,
    /// Ranks `δ_1, …, δ_{2n}` of the connecting maps of the Smith sequence.
    pub delta: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_mu: Option<u64>,
    /// Caller attests that `X` is effective and Galois maximal with `H_odd(X) = 0`.
    #[serde(default)]
    pub effective_gm: bool,
}

impl SmithData {
    /// The deficiency `a = β*(X) − β*(F)`; negative values are reported by [`consistency`].
    pub fn a(&self) -> BigInt {
        BigInt::from(self.beta_total) - BigInt::from(self.beta_fixed)
    }

    /// Data of a run whose verdict is a conjugation space: `a = 0`, `δ = 0`, no odd part.
    pub fn from_run(run: &RunResult, dim_c: usize) -> Result<Self> {
        if run.verdict != Verdict::ConjugationSpace {
            return Err(Error::Input(format!(
                "Smith data can only be derived from a conjugation space (verdict {})",
                run.verdict
            )));
        }
        let total =
            u64::try_from(run.betti_c.total()).map_err(|_| Error::Input("Betti total exceeds 64 bits".into()))?;
        Ok(SmithData {
            n: dim_c,
            beta_total: total,
            beta_fixed: total,
            beta_odd: 0,
            delta: vec![0; 2 * dim_c],
            rank_mu: None,
            effective_gm: true,
        })
    }
}

/// Flags that let [`deficiency_effective_gm`] apply.
pub fn attests_effective_gm(flags: &FlagSet) -> bool {
    flags.effective.is_yes() && flags.galois_maximal.is_yes()
}

/// Consistency of Smith data; an empty list means consistent.
pub fn consistency(s: &SmithData) -> Vec<String> {
    let mut out = Vec::new();
    let a = s.a();
    if a.is_negative() {
        out.push(format!("β*(X) = {} is smaller than β*(F) = {}", s.beta_total, s.beta_fixed));
    }
    if (&a % 2u32) != BigInt::zero() {
        out.push(format!("deficiency a = {a} is odd"));
    }
    if s.delta.len() != 2 * s.n {
        out.push(format!("δ has {} entries, expected 2n = {}", s.delta.len(), 2 * s.n));
    }
    let sum: BigInt = s.delta.iter().map(|&d| BigInt::from(d)).sum();
    if a != &sum * 2u32 {
        out.push(format!("a = {a} but 2·Σδ = {}", &sum * 2u32));
    }
    if s.beta_odd > s.beta_total {
        out.push(format!("β_odd = {} exceeds β*(X) = {}", s.beta_odd, s.beta_total));
    }
    if s.effective_gm {
        if !(s.n as u64 * s.beta_fixed).is_multiple_of(2) {
            out.push(format!(
                "n·β*(F) = {} is odd, so rank μ* = (n/2)β*(F) is not an integer",
                s.n as u64 * s.beta_fixed
            ));
        }
        if s.beta_odd != 0 {
            out.push("effective Galois maximal data must have β_odd = 0".into());
        }
    }
    out
}

fn require_consistent(s: &SmithData) -> Result<()> {
    match consistency(s).first() {
        Some(v) => Err(Error::Input(format!("inconsistent Smith data: {v}"))),
        None => Ok(()),
    }
}

fn common_terms(s: &SmithData) -> BigInt {
    let a = s.a();
    let weighted: BigInt =
        s.delta.iter().enumerate().map(|(i, &d)| BigInt::from(2 * (i as u64 + 1) - 1) * BigInt::from(d)).sum();
    weighted + &a * BigInt::from(s.beta_total) + &a * (&a - 1u32) / 2u32
}

fn non_negative(value: BigInt) -> Result<BigInt> {
    if value.is_negative() {
        return Err(Error::Input(format!("the data give a negative deficiency {value}")));
    }
    Ok(value)
}

/// `2 rank μ* + Σ (2k−1) δ_k + aβ* + a(a−1)/2 − nβ*(F) − β_odd`.
pub fn deficiency_general(s: &SmithData) -> Result<BigInt> {
    require_consistent(s)?;
    let mu = s.rank_mu.ok_or_else(|| Error::Input("rank μ* is required for the general formula".into()))?;
    let value = BigInt::from(mu) * 2u32 + common_terms(s)
        - BigInt::from(s.n as u64) * BigInt::from(s.beta_fixed)
        - BigInt::from(s.beta_odd);
    non_negative(value)
}

/// `Σ (2k−1) δ_k + aβ* + a(a−1)/2`, valid for effective Galois maximal `X` with no odd
/// cohomology (where `rank μ* = (n/2) β*(F)`).
pub fn deficiency_effective_gm(s: &SmithData) -> Result<BigInt> {
    if !s.effective_gm {
        return Err(Error::Input("the specialized formula needs effective Galois maximal data".into()));
    }
    require_consistent(s)?;
    non_negative(common_terms(s))
}

/// `rank μ*` forced by effectivity and Galois maximality.
pub fn rank_mu_effective_gm(s: &SmithData) -> Result<u64> {
    let twice = s.n as u64 * s.beta_fixed;
    if !twice.is_multiple_of(2) {
        return Err(Error::Input("n·β*(F) is odd".into()));
    }
    Ok(twice / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(n: usize, total: u64, fixed: u64, delta: Vec<u64>, mu: Option<u64>) -> SmithData {
        SmithData { n, beta_total: total, beta_fixed: fixed, beta_odd: 0, delta, rank_mu: mu, effective_gm: false }
    }

    #[test]
    fn general_formula_examples() {
        // P¹: its Hilbert square is P², and β(P²) = β(RP²)
        assert_eq!(deficiency_general(&data(1, 2, 2, vec![0, 0], Some(1))).unwrap(), 0.into());
        assert_eq!(deficiency_general(&data(2, 4, 2, vec![0, 1, 0, 0], Some(2))).unwrap(), 12.into());
        // maximal X: 2 rank μ* − nβ*
        assert_eq!(deficiency_general(&data(2, 6, 6, vec![0; 4], Some(7))).unwrap(), 2.into());
        assert!(deficiency_general(&data(1, 2, 2, vec![0, 0], None)).is_err());
        assert!(deficiency_general(&data(2, 6, 6, vec![0; 4], Some(1))).is_err());
    }

    #[test]
    fn effective_gm_examples() {
        let mut s = data(2, 4, 2, vec![0, 1, 0, 0], None);
        s.effective_gm = true;
        assert_eq!(deficiency_effective_gm(&s).unwrap(), 12.into());
        let mut s = data(3, 10, 6, vec![2, 0, 0, 0, 0, 0], None);
        s.effective_gm = true;
        assert_eq!(deficiency_effective_gm(&s).unwrap(), 48.into());
        let mut s = data(4, 9, 9, vec![0; 8], None);
        s.effective_gm = true;
        assert_eq!(deficiency_effective_gm(&s).unwrap(), 0.into());
        assert!(deficiency_effective_gm(&data(4, 9, 9, vec![0; 8], None)).is_err());
    }

    #[test]
    fn consistency_examples() {
        assert!(consistency(&data(1, 4, 2, vec![1, 0], None)).is_empty());
        assert_eq!(consistency(&data(1, 4, 2, vec![0, 0], None)).len(), 1);
        let odd = consistency(&data(1, 5, 2, vec![1, 0], None));
        assert!(odd.iter().any(|v| v.contains("odd")));
        assert!(!consistency(&data(1, 2, 4, vec![0, 0], None)).is_empty());
        let mut s = data(1, 3, 3, vec![0, 0], None);
        s.effective_gm = true;
        assert!(!consistency(&s).is_empty());
    }
}

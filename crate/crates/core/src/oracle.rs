//! Reference values computed without the blow-up engine.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::gradedpoly::BettiVector;

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

fn mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Poincaré polynomial of `M̄₀,ₙ` in `q = t²` from Keel's recursion
/// `P_{n+1} = (1+q) P_n + (q/2) Σ_{j=2}^{n−2} C(n,j) P_{j+1} P_{n−j+1}`.
pub fn keel_poincare(n: usize) -> Vec<BigUint> {
    assert!(n >= 3, "M̄₀,ₙ needs n ≥ 3");
    let mut polys: Vec<Vec<BigUint>> = vec![vec![], vec![], vec![], vec![1u32.into()]];
    for m in 3..n {
        let prev = &polys[m];
        let mut next = vec![BigUint::zero(); prev.len() + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c;
        }
        let mut sum: Vec<BigUint> = Vec::new();
        for j in 2..=m.saturating_sub(2) {
            let term: Vec<BigUint> =
                mul(&polys[j + 1], &polys[m - j + 1]).into_iter().map(|c| c * binomial(m, j)).collect();
            if sum.len() < term.len() {
                sum.resize(term.len(), BigUint::zero());
            }
            for (i, c) in term.into_iter().enumerate() {
                sum[i] += c;
            }
        }
        for (i, c) in sum.into_iter().enumerate() {
            debug_assert!((&c % 2u32).is_zero(), "the symmetric sum is even");
            next[i + 1] += c / 2u32;
        }
        polys.push(next);
    }
    polys.swap_remove(n)
}

/// Complex Betti vector of `M̄₀,ₙ` (odd degrees vanish).
pub fn keel_complex(n: usize) -> BettiVector {
    let mut coeffs = Vec::new();
    for c in keel_poincare(n) {
        coeffs.push(c);
        coeffs.push(BigUint::zero());
    }
    BettiVector::from_coeffs(coeffs)
}

/// Real Betti vector of `M̄₀,ₙ(R)`: the complex one with degrees halved.
pub fn keel_real(n: usize) -> BettiVector {
    BettiVector::from_coeffs(keel_poincare(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let as_u64 = |n| keel_poincare(n).into_iter().map(|c| u64::try_from(c).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_u64(3), [1]);
        assert_eq!(as_u64(4), [1, 1]);
        assert_eq!(as_u64(5), [1, 5, 1]);
        assert_eq!(as_u64(6), [1, 16, 16, 1]);
        assert_eq!(as_u64(7), [1, 42, 127, 42, 1]);
        assert_eq!(as_u64(8), [1, 99, 715, 715, 99, 1]);
        assert_eq!(keel_complex(5), BettiVector::from_u64s(&[1, 0, 5, 0, 1]));
    }
}

//! Graded dimension vectors: mod-2 Poincaré polynomials of complex and real loci.
//!
//! A [`BettiVector`] stores `β_i` at index `i`. Trailing zeros are always
//! trimmed, so the empty space is the zero-length vector and the point is `[1]`.
//! Coefficients are arbitrary precision.

use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Step of the projective-bundle factor: `Complex` uses degree-2 steps, `Real` degree-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Locus {
    Complex,
    Real,
}

impl Locus {
    pub fn step(self) -> usize {
        match self {
            Locus::Complex => 2,
            Locus::Real => 1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BettiVector {
    coeffs: Vec<BigUint>,
}

impl BettiVector {
    pub fn zero() -> Self {
        BettiVector { coeffs: Vec::new() }
    }

    pub fn point() -> Self {
        BettiVector::from_u64s(&[1])
    }

    pub fn from_coeffs(coeffs: Vec<BigUint>) -> Self {
        let mut v = BettiVector { coeffs };
        v.trim();
        v
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        BettiVector::from_coeffs(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// `[1, 0, 1, …, 0, 1]` of length `2k+1`, the complex projective space `P^k`.
    pub fn complex_projective(k: usize) -> Self {
        bundle_factor(k + 1, Locus::Complex).expect("k + 1 >= 1")
    }

    /// `[1; k+1]`, the real projective space `RP^k`.
    pub fn real_projective(k: usize) -> Self {
        bundle_factor(k + 1, Locus::Real).expect("k + 1 >= 1")
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// `β_i`, zero beyond the stored range.
    pub fn get(&self, i: usize) -> BigUint {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest degree with a nonzero coefficient, `None` for the empty space.
    pub fn top_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &BettiVector) -> BettiVector {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.get(i) + other.get(i)).collect();
        BettiVector::from_coeffs(coeffs)
    }

    pub fn shift(&self, k: usize) -> BettiVector {
        if self.is_zero() {
            return BettiVector::zero();
        }
        let mut coeffs = vec![BigUint::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        BettiVector { coeffs }
    }

    /// Polynomial product (Künneth formula over a field).
    pub fn kunneth(&self, other: &BettiVector) -> BettiVector {
        if self.is_zero() || other.is_zero() {
            return BettiVector::zero();
        }
        let mut coeffs = vec![BigUint::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        BettiVector::from_coeffs(coeffs)
    }

    /// `k`-fold Künneth power; the zeroth power is the point.
    pub fn power(&self, k: usize) -> BettiVector {
        (0..k).fold(BettiVector::point(), |acc, _| acc.kunneth(self))
    }

    pub fn scale(&self, factor: u64) -> BettiVector {
        let f = BigUint::from(factor);
        BettiVector::from_coeffs(self.coeffs.iter().map(|c| c * &f).collect())
    }

    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn euler(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let c = BigInt::from(c.clone());
                if i % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    pub fn odd_part(&self) -> BigUint {
        self.coeffs.iter().skip(1).step_by(2).sum()
    }

    /// `p[i] == p[top - i]` for every `i`, with everything above `top` zero.
    pub fn is_palindromic(&self, top: usize) -> bool {
        if self.coeffs.len() > top + 1 {
            return false;
        }
        (0..=top).all(|i| self.get(i) == self.get(top - i))
    }

    /// Σ_{k=1}^{count} shift(self, step·k): the blow-up correction contributed by a
    /// center whose normal bundle has rank `count + 1`.
    pub fn exceptional_sum(&self, count: usize, locus: Locus) -> BettiVector {
        (1..=count).fold(BettiVector::zero(), |acc, k| acc.add(&self.shift(locus.step() * k)))
    }
}

impl Add for &BettiVector {
    type Output = BettiVector;

    fn add(self, rhs: &BettiVector) -> BettiVector {
        BettiVector::add(self, rhs)
    }
}

/// `1 + t^s + … + t^{s(d−1)}`: Betti factor of the fiber of a projectivized rank-`d` bundle.
pub fn bundle_factor(rank: usize, locus: Locus) -> Result<BettiVector> {
    if rank == 0 {
        return Err(Error::Input("bundle_factor: rank must be at least 1".into()));
    }
    let step = locus.step();
    let mut coeffs = vec![BigUint::zero(); step * (rank - 1) + 1];
    for k in 0..rank {
        coeffs[step * k] = BigUint::one();
    }
    Ok(BettiVector::from_coeffs(coeffs))
}

impl fmt::Debug for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

// Coefficients go out as JSON integers; anything wider than u64 falls back to a
// decimal string so precision is never lost.
impl Serialize for BettiVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_u64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for BettiVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Int(u64),
            Text(String),
        }

        struct BettiVisitor;

        impl<'de> Visitor<'de> for BettiVisitor {
            type Value = BettiVector;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of non-negative integers")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<BettiVector, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(c) = seq.next_element::<Coeff>()? {
                    coeffs.push(match c {
                        Coeff::Int(v) => BigUint::from(v),
                        Coeff::Text(s) => s
                            .parse::<BigUint>()
                            .map_err(|_| de::Error::custom(format!("bad Betti coefficient {s:?}")))?,
                    });
                }
                Ok(BettiVector::from_coeffs(coeffs))
            }
        }

        deserializer.deserialize_seq(BettiVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(c: &[u64]) -> BettiVector {
        BettiVector::from_u64s(c)
    }

    #[test]
    fn add_examples() {
        assert_eq!(bv(&[1]).add(&bv(&[0])), bv(&[1]));
        assert_eq!(bv(&[1, 0, 1]).add(&bv(&[0, 2])), bv(&[1, 2, 1]));
        // P² blown up at a point
        let p2 = BettiVector::complex_projective(2);
        assert_eq!(p2.add(&BettiVector::point().shift(2)), bv(&[1, 0, 2, 0, 1]));
        assert_eq!(p2.euler() + 1, bv(&[1, 0, 2, 0, 1]).euler());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(bv(&[1]).shift(2), bv(&[0, 0, 1]));
        assert_eq!(bv(&[1, 1]).shift(1), bv(&[0, 1, 1]));
        assert_eq!(bv(&[1, 0, 1]).shift(4), bv(&[0, 0, 0, 0, 1, 0, 1]));
        assert_eq!(BettiVector::zero().shift(3), BettiVector::zero());
    }

    #[test]
    fn bundle_factor_examples() {
        assert_eq!(bundle_factor(1, Locus::Complex).unwrap(), bv(&[1]));
        assert_eq!(bundle_factor(2, Locus::Complex).unwrap(), bv(&[1, 0, 1]));
        assert_eq!(bundle_factor(3, Locus::Real).unwrap(), bv(&[1, 1, 1]));
        assert!(bundle_factor(0, Locus::Real).is_err());
    }

    #[test]
    fn kunneth_examples() {
        let p1 = bv(&[1, 0, 1]);
        assert_eq!(p1.kunneth(&p1), bv(&[1, 0, 2, 0, 1]));
        assert_eq!(p1.kunneth(&bv(&[1])), p1);
        let s1 = bv(&[1, 1]);
        assert_eq!(s1.kunneth(&s1).kunneth(&s1), bv(&[1, 3, 3, 1]));
        assert_eq!(s1.power(3), bv(&[1, 3, 3, 1]));
        assert_eq!(s1.kunneth(&BettiVector::zero()), BettiVector::zero());
    }

    #[test]
    fn totals() {
        let v = bv(&[1, 0, 5, 0, 1]);
        assert_eq!(v.total(), BigUint::from(7u32));
        assert_eq!(bv(&[1, 1]).euler(), BigInt::zero());
        assert_eq!(v.odd_part(), BigUint::zero());
        assert_eq!(bv(&[1, 3, 3, 1]).odd_part(), BigUint::from(4u32));
    }

    #[test]
    fn palindromes() {
        assert!(bv(&[1, 0, 5, 0, 1]).is_palindromic(4));
        assert!(bv(&[1, 5, 1]).is_palindromic(2));
        assert!(!bv(&[1, 2]).is_palindromic(1));
        assert!(!bv(&[1, 0, 1]).is_palindromic(4));
        assert!(BettiVector::zero().is_palindromic(3));
    }

    #[test]
    fn trailing_zeros_are_canonical() {
        assert_eq!(bv(&[1, 2, 0, 0]), bv(&[1, 2]));
        assert_eq!(bv(&[0, 0]), BettiVector::zero());
        assert_ne!(BettiVector::zero(), BettiVector::point());
    }

    #[test]
    fn serde_handles_wide_coefficients() {
        let big = BigUint::from(u64::MAX) * BigUint::from(3u32);
        let v = BettiVector::from_coeffs(vec![BigUint::one(), big]);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<BettiVector>(&text).unwrap(), v);
        assert_eq!(serde_json::to_string(&bv(&[1, 0, 5])).unwrap(), "[1,0,5]");
    }
}

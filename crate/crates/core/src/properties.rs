//! Tri-state verdict flags and the rules that carry them through blow-ups,
//! projective bundles and products, plus the Smith–Thom deficiency ledger.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gradedpoly::BettiVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    #[default]
    Unknown,
}

impl Tri {
    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }

    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    /// Information order: `Unknown` below both `Yes` and `No`.
    pub fn refines(self, coarser: Tri) -> bool {
        coarser == Tri::Unknown || coarser == self
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct FlagSet {
    pub effective: Tri,
    pub maximal: Tri,
    pub galois_maximal: Tri,
}

impl FlagSet {
    pub fn new(effective: Tri, maximal: Tri, galois_maximal: Tri) -> Self {
        FlagSet { effective, maximal, galois_maximal }.normalized()
    }

    pub fn conjugation_space() -> Self {
        FlagSet::new(Tri::Yes, Tri::Yes, Tri::Yes)
    }

    pub fn unknown() -> Self {
        FlagSet::default()
    }

    /// A disjoint pair swapped by the involution: no real points, so Kalinin
    /// effectivity is vacuous and the Galois cohomology of the free module vanishes.
    pub fn free_pair() -> Self {
        FlagSet::new(Tri::Yes, Tri::No, Tri::Yes)
    }

    /// Maximality forces Galois maximality.
    pub fn normalized(mut self) -> Self {
        if self.maximal == Tri::Yes {
            self.galois_maximal = Tri::Yes;
        }
        self
    }

    pub fn refines(&self, coarser: &FlagSet) -> bool {
        self.effective.refines(coarser.effective)
            && self.maximal.refines(coarser.maximal)
            && self.galois_maximal.refines(coarser.galois_maximal)
    }
}

/// What the flag rules need to know about a blow-up center event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CenterInfo {
    pub flags: FlagSet,
    /// The center event has no real points (a swapped pair, or an invariant
    /// center with empty fixed locus).
    pub real_locus_empty: bool,
    pub codim: usize,
}

pub fn propagate_blowup_flags(ambient: &FlagSet, center: &CenterInfo, stretched: Tri) -> FlagSet {
    let effective = if center.real_locus_empty {
        // the blow-down is a homeomorphism on real loci
        ambient.effective
    } else if stretched.is_yes() && ambient.effective.is_yes() && center.flags.effective.is_yes() {
        Tri::Yes
    } else {
        Tri::Unknown
    };

    let maximal = if ambient.maximal == Tri::No
        || center.flags.maximal == Tri::No
        || (center.real_locus_empty && center.codim >= 2)
    {
        Tri::No
    } else if ambient.maximal.is_yes() && center.flags.maximal.is_yes() {
        Tri::Yes
    } else {
        Tri::Unknown
    };

    let galois_maximal =
        if ambient.galois_maximal.is_yes() && center.flags.galois_maximal.is_yes() { Tri::Yes } else { Tri::Unknown };

    FlagSet { effective, maximal, galois_maximal }.normalized()
}

/// Flags of a projective bundle (or any associated flag bundle) over a base.
pub fn bundle_flags(base: &FlagSet) -> FlagSet {
    FlagSet {
        effective: if base.effective.is_yes() { Tri::Yes } else { Tri::Unknown },
        maximal: base.maximal,
        galois_maximal: base.galois_maximal,
    }
    .normalized()
}

pub fn product_flags(factors: &[FlagSet]) -> FlagSet {
    let all_yes = |get: fn(&FlagSet) -> Tri| factors.iter().all(|f| get(f).is_yes());
    let maximal = if factors.iter().any(|f| f.maximal == Tri::No) {
        Tri::No
    } else if all_yes(|f| f.maximal) {
        Tri::Yes
    } else {
        Tri::Unknown
    };
    FlagSet {
        effective: if all_yes(|f| f.effective) { Tri::Yes } else { Tri::Unknown },
        maximal,
        galois_maximal: if all_yes(|f| f.galois_maximal) { Tri::Yes } else { Tri::Unknown },
    }
    .normalized()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    ConjugationSpace,
    EffectiveGaloisMaximal,
    Maximal,
    Effective,
    GaloisMaximal,
    Indeterminate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Strongest verdict supported by the flags. A conjugation space must have no
/// odd-degree cohomology; anything else is an internal inconsistency.
pub fn verdict(flags: &FlagSet, betti_c: &BettiVector) -> Result<Verdict> {
    let flags = flags.normalized();
    let v = match (flags.effective, flags.maximal, flags.galois_maximal) {
        (Tri::Yes, Tri::Yes, _) => Verdict::ConjugationSpace,
        (Tri::Yes, _, Tri::Yes) => Verdict::EffectiveGaloisMaximal,
        (_, Tri::Yes, _) => Verdict::Maximal,
        (Tri::Yes, _, _) => Verdict::Effective,
        (_, _, Tri::Yes) => Verdict::GaloisMaximal,
        _ => Verdict::Indeterminate,
    };
    if v == Verdict::ConjugationSpace && !betti_c.odd_part().is_zero() {
        return Err(Error::Invariant(format!("conjugation space verdict with odd cohomology {betti_c}")));
    }
    Ok(v)
}

/// Running Smith–Thom deficiency of the ambient, `β*(X) − β*(F)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeficiencyLedger {
    pub value: BigUint,
    pub contributions: Vec<BigUint>,
}

impl DeficiencyLedger {
    pub fn new(initial: BigUint) -> Self {
        DeficiencyLedger { value: initial, contributions: Vec::new() }
    }
}

/// `a' = a + (d − 1)·defi(center)`.
pub fn deficiency_update(ledger: &DeficiencyLedger, codim: usize, center_defi: &BigUint) -> Result<DeficiencyLedger> {
    if codim < 2 {
        return Err(Error::Input(format!("blow-up center of codimension {codim} < 2")));
    }
    let contribution = center_defi * BigUint::from(codim - 1);
    let mut next = ledger.clone();
    next.value += &contribution;
    next.contributions.push(contribution);
    Ok(next)
}

/// Spaces whose flags are taken as axioms. Builders look entries up by name and
/// reports record every entry they used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownSpaces {
    pub entries: BTreeMap<String, FlagSet>,
}

pub const PROJECTIVE_SPACE: &str = "projective-space";

impl Default for KnownSpaces {
    fn default() -> Self {
        let entries = ["projective-space", "grassmannian", "flag-variety", "toric"]
            .into_iter()
            .map(|name| (name.to_string(), FlagSet::conjugation_space()))
            .collect();
        KnownSpaces { entries }
    }
}

impl KnownSpaces {
    pub fn get(&self, name: &str) -> Result<FlagSet> {
        self.entries
            .get(name)
            .copied()
            .map(FlagSet::normalized)
            .ok_or_else(|| Error::Input(format!("unknown space {name:?} in the known-space table")))
    }

    /// Overlays user-declared entries (JSON object of name → flags).
    pub fn merge_json(&mut self, text: &str) -> Result<()> {
        let extra: BTreeMap<String, FlagSet> = serde_json::from_str(text)?;
        self.entries.extend(extra);
        Ok(())
    }
}

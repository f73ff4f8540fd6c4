//! Builders for subspace models, moduli of marked rational curves and
//! configuration-space compactifications.

mod config;
mod dcp;
mod moduli;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Geometry, RealStatus, Seed, Stratum, Tracking};
use crate::error::{Error, Result};
use crate::geometry::ProjSubspace;
use crate::gradedpoly::BettiVector;
use crate::properties::{FlagSet, KnownSpaces, PROJECTIVE_SPACE};

pub use config::{braid_linear, braid_partition, build_config, ConfigModel};
pub use dcp::{build_dcp, DcpInput, SubspaceInput};
pub use moduli::{build_moduli, parse_sigma, ModuliSpec};

/// Abstract factor `X` of a configuration model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceData {
    pub name: String,
    pub dim_c: usize,
    pub betti_c: BettiVector,
    pub betti_r: BettiVector,
    /// Entry of the known-space table supplying the flags; ignored when `flags` is set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<FlagSet>,
    pub real_locus: bool,
}

impl SpaceData {
    /// `P^k` with its standard real structure.
    pub fn projective(k: usize) -> Self {
        SpaceData {
            name: format!("P{k}"),
            dim_c: k,
            betti_c: BettiVector::complex_projective(k),
            betti_r: BettiVector::real_projective(k),
            known: Some(PROJECTIVE_SPACE.into()),
            flags: None,
            real_locus: true,
        }
    }

    /// Built-in spaces: `P1`, `P2`, … (standard real structure).
    pub fn builtin(name: &str) -> Result<Self> {
        name.strip_prefix('P')
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k >= 1)
            .map(SpaceData::projective)
            .ok_or_else(|| Error::Input(format!("unknown built-in space {name:?} (expected P1, P2, ...)")))
    }

    /// Flags from the explicit field, else from the known-space table.
    pub fn resolve_flags(&self, known: &KnownSpaces) -> Result<(FlagSet, FlagSource)> {
        match (&self.flags, &self.known) {
            (Some(f), _) => Ok((f.normalized(), FlagSource::Axiom(format!("space {}", self.name)))),
            (None, Some(k)) => Ok((known.get(k)?, FlagSource::Axiom(k.clone()))),
            (None, None) => Ok((FlagSet::unknown(), FlagSource::Axiom("none declared".into()))),
        }
    }

    /// Smith inequality, parity and Poincaré duality for the factor.
    pub fn validate(&self) -> Result<()> {
        let s = ambient_stratum(
            self.name.clone(),
            Geometry::Abstract,
            self.dim_c,
            self.betti_c.clone(),
            self.betti_r.clone(),
            FlagSet::unknown(),
            self.real_locus,
        );
        s.check_invariants().map_err(|e| Error::Input(format!("space {}: {e}", self.name)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagSource {
    /// Accepted from the known-space table or from user input.
    Axiom(String),
}

/// What was built, with the axioms the seeds rely on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    pub kind: String,
    pub parameters: BTreeMap<String, String>,
    pub axioms: BTreeMap<String, FlagSet>,
}

#[derive(Debug, Clone)]
pub struct Model {
    pub descriptor: ModelDescriptor,
    pub arrangement: Arrangement,
}

pub(crate) fn ambient_stratum(
    label: String,
    geometry: Geometry,
    dim_c: usize,
    betti_c: BettiVector,
    betti_r: BettiVector,
    flags: FlagSet,
    real_locus: bool,
) -> Stratum {
    Stratum {
        id: usize::MAX,
        label,
        geometry,
        dim_c,
        real_status: if real_locus { RealStatus::InvariantWithRealLocus } else { RealStatus::InvariantEmptyRealLocus },
        betti_c,
        betti_r,
        flags,
        tracking: Tracking::Active,
    }
}

pub(crate) fn projective_ambient(n: usize, flags: FlagSet) -> Stratum {
    ambient_stratum(
        format!("P^{n}"),
        Geometry::Subspace(ProjSubspace::full(n)),
        n,
        BettiVector::complex_projective(n),
        BettiVector::real_projective(n),
        flags,
        true,
    )
}

/// Seeds a projective linear stratum: `P^k` and, when invariant, `RP^k`.
pub(crate) fn linear_seed(k: usize, invariant: bool, flags: FlagSet) -> Seed {
    Seed {
        dim_c: k,
        betti_c: BettiVector::complex_projective(k),
        betti_r: if invariant { BettiVector::real_projective(k) } else { BettiVector::zero() },
        flags: if invariant { flags } else { FlagSet::free_pair() },
        real_locus: invariant,
    }
}

/// Assigns the building set (adding the strata the validation asks for until it
/// passes when `complete` is set), orders it and checks conjugation invariance.
pub(crate) fn finish_building(arr: &mut Arrangement, mut members: Vec<usize>, complete: bool) -> Result<()> {
    loop {
        arr.set_building(&members)?;
        let violations = arr.validate_building_set();
        let Some(first) = violations.first() else { break };
        if !complete {
            return Err(Error::BuildingSet(first.to_string()));
        }
        for v in &violations {
            if !members.contains(&v.stratum) {
                members.push(v.stratum);
            }
            if let Some(p) = arr.strata[v.stratum].real_status.partner() {
                if !members.contains(&p) {
                    members.push(p);
                }
            }
        }
    }
    arr.order_building_set()?;
    if let Some(v) = arr.check_g_invariance().first() {
        return Err(Error::Input(format!("arrangement is not closed under conjugation: {v}")));
    }
    Ok(())
}

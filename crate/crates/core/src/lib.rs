//! Exact mod-2 Betti numbers, Smith–Thom deficiency and conjugation-space verdicts
//! for real wonderful compactifications built by iterated equivariant blow-up.

pub mod arrangement;
mod bignum;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod gradedpoly;
pub mod hilbert;
pub mod models;
pub mod oracle;
pub mod properties;
pub mod report;
pub mod verify;

pub use arrangement::{Arrangement, Event, Geometry, Meet, RealStatus, Stratum, StratumId};
pub use engine::{blow_up_step, classify_case, wonderful_run, Case, RunResult, StepTrace};
pub use error::{Error, Result};
pub use gradedpoly::{bundle_factor, BettiVector, Locus};
pub use properties::{FlagSet, KnownSpaces, Tri, Verdict};
pub use report::RunReport;

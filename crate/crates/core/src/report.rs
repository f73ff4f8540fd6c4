//! Machine-readable run reports and their text rendering.
//!
//! Every number in a report can be recomputed from its step traces; [`recheck`] does
//! exactly that, so a parsed report can be audited without rerunning the engine.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::engine::{check_trace, RunResult, StepTrace};
use crate::error::{Error, Result};
use crate::gradedpoly::BettiVector;
use crate::hilbert::{deficiency_effective_gm, SmithData};
use crate::models::{Model, ModelDescriptor};
use crate::properties::{verdict, FlagSet, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub model: ModelDescriptor,
    pub ambient: String,
    pub dim_c: usize,
    pub initial: Initial,
    pub betti_c: BettiVector,
    pub betti_r: BettiVector,
    pub totals: Totals,
    #[serde(with = "crate::bignum::unsigned")]
    pub deficiency: BigUint,
    #[serde(with = "crate::bignum::signed")]
    pub euler: BigInt,
    pub verdict: Verdict,
    pub flags: Vec<FlagRecord>,
    pub steps: Vec<StepTrace>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert_square: Option<HilbertSummary>,
}

/// The ambient before any blow-up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Initial {
    pub betti_c: BettiVector,
    pub betti_r: BettiVector,
    pub flags: FlagSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    #[serde(with = "crate::bignum::unsigned")]
    pub complex: BigUint,
    #[serde(with = "crate::bignum::unsigned")]
    pub real: BigUint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "input axiom")]
    InputAxiom,
    #[serde(rename = "propagated")]
    Propagated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagRecord {
    pub subject: String,
    pub flags: FlagSet,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn new(name: &str, outcome: std::result::Result<(), String>) -> Self {
        match outcome {
            Ok(()) => Check { name: name.into(), passed: true, detail: String::new() },
            Err(detail) => Check { name: name.into(), passed: false, detail },
        }
    }
}

/// Hilbert-square deficiency, filled in when the run is a conjugation space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSummary {
    pub smith: SmithData,
    #[serde(with = "crate::bignum::signed")]
    pub deficiency: BigInt,
}

impl RunReport {
    pub fn new(model: &Model, run: &RunResult) -> Result<Self> {
        let amb = &model.arrangement.ambient;
        let mut flags: Vec<FlagRecord> = model
            .descriptor
            .axioms
            .iter()
            .map(|(name, f)| FlagRecord { subject: name.clone(), flags: *f, provenance: Provenance::InputAxiom })
            .collect();
        flags.push(FlagRecord { subject: amb.label.clone(), flags: run.flags, provenance: Provenance::Propagated });
        let hilbert_square = if run.verdict == Verdict::ConjugationSpace {
            let smith = SmithData::from_run(run, amb.dim_c)?;
            let deficiency = deficiency_effective_gm(&smith)?;
            Some(HilbertSummary { smith, deficiency })
        } else {
            None
        };
        let mut report = RunReport {
            schema_version: SCHEMA_VERSION,
            model: model.descriptor.clone(),
            ambient: amb.label.clone(),
            dim_c: amb.dim_c,
            initial: Initial { betti_c: amb.betti_c.clone(), betti_r: amb.betti_r.clone(), flags: amb.flags },
            betti_c: run.betti_c.clone(),
            betti_r: run.betti_r.clone(),
            totals: Totals { complex: run.betti_c.total(), real: run.betti_r.total() },
            deficiency: run.deficiency().clone(),
            euler: run.betti_c.euler(),
            verdict: run.verdict,
            flags,
            steps: run.traces.clone(),
            checks: Vec::new(),
            hilbert_square,
        };
        report.checks = recheck(&report);
        Ok(report)
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: RunReport = serde_json::from_str(text)?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(Error::Input(format!(
                "report schema version {} is not supported (expected {SCHEMA_VERSION})",
                report.schema_version
            )));
        }
        Ok(report)
    }

    /// Smith data for the Hilbert-square formulas, available for conjugation spaces.
    pub fn smith_data(&self) -> Result<SmithData> {
        self.hilbert_square.as_ref().map(|h| h.smith.clone()).ok_or_else(|| {
            Error::Input(format!(
                "verdict {} does not determine the Smith-sequence data; supply them explicitly",
                self.verdict
            ))
        })
    }
}

/// Recomputes every reported number from the initial data and the step traces.
pub fn recheck(r: &RunReport) -> Vec<Check> {
    let mut checks = Vec::new();

    let chain = || -> std::result::Result<(), String> {
        let (mut c, mut q) = (&r.initial.betti_c, &r.initial.betti_r);
        for (i, s) in r.steps.iter().enumerate() {
            if &s.betti_c_before != c || &s.betti_r_before != q {
                return Err(format!("step {i} does not start where the previous one ended"));
            }
            c = &s.betti_c_after;
            q = &s.betti_r_after;
        }
        if c != &r.betti_c || q != &r.betti_r {
            return Err("final Betti vectors differ from the last step".into());
        }
        if r.totals.complex != c.total() || r.totals.real != q.total() {
            return Err("totals differ from the Betti vectors".into());
        }
        if r.euler != c.euler() {
            return Err("Euler characteristic differs from the Betti vector".into());
        }
        Ok(())
    };
    checks.push(Check::new("betti chain", chain()));

    let ledger = || -> std::result::Result<(), String> {
        let start = r.initial.betti_c.total();
        let real = r.initial.betti_r.total();
        if real > start {
            return Err("initial data violate the Smith inequality".into());
        }
        let mut value = start - real;
        for (i, s) in r.steps.iter().enumerate() {
            check_trace(s).map_err(|e| format!("step {i}: {e}"))?;
            value += BigUint::from(s.codim - 1) * &s.center_deficiency;
        }
        if value != r.deficiency {
            return Err(format!("ledger gives {value}, report says {}", r.deficiency));
        }
        if r.totals.real > r.totals.complex || &r.totals.complex - &r.totals.real != r.deficiency {
            return Err("deficiency differs from the Betti totals".into());
        }
        Ok(())
    };
    checks.push(Check::new("deficiency ledger", ledger()));

    let smith = || -> std::result::Result<(), String> {
        let mut all = vec![("initial", &r.initial.betti_c, &r.initial.betti_r)];
        all.extend(r.steps.iter().map(|s| ("step", &s.betti_c_after, &s.betti_r_after)));
        for (what, c, q) in all {
            if !c.is_palindromic(2 * r.dim_c) || (!q.is_zero() && !q.is_palindromic(r.dim_c)) {
                return Err(format!("{what} Betti data break Poincaré duality"));
            }
            let (tc, tq) = (c.total(), q.total());
            if tq > tc || (&tc - &tq) % 2u32 != BigUint::default() {
                return Err(format!("{what} Betti data break the Smith inequality or parity"));
            }
        }
        Ok(())
    };
    checks.push(Check::new("smith and duality", smith()));

    let flags = || -> std::result::Result<(), String> {
        let last = r.steps.last().map_or(r.initial.flags, |s| s.flags_after);
        let propagated = r.flags.iter().rev().find(|f| f.provenance == Provenance::Propagated);
        if propagated.map(|f| f.flags) != Some(last) {
            return Err("propagated flags differ from the last step".into());
        }
        match verdict(&last, &r.betti_c) {
            Ok(v) if v == r.verdict => Ok(()),
            Ok(v) => Err(format!("flags give verdict {v}, report says {}", r.verdict)),
            Err(e) => Err(e.to_string()),
        }
    };
    checks.push(Check::new("verdict", flags()));

    let hilbert = || -> std::result::Result<(), String> {
        let Some(h) = &r.hilbert_square else { return Ok(()) };
        match deficiency_effective_gm(&h.smith) {
            Ok(d) if d == h.deficiency => Ok(()),
            Ok(d) => Err(format!("formula gives {d}, report says {}", h.deficiency)),
            Err(e) => Err(e.to_string()),
        }
    };
    checks.push(Check::new("hilbert square", hilbert()));
    checks
}

/// Human-readable summary; with `trace` every step is listed.
pub fn render_text(r: &RunReport, trace: bool) -> String {
    let mut out = String::new();
    let params: Vec<String> = r.model.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(out, "model        {} {}", r.model.kind, params.join(" "));
    let _ = writeln!(out, "ambient      {} (complex dimension {})", r.ambient, r.dim_c);
    let _ = writeln!(out, "blow-ups     {}", r.steps.len());
    if trace {
        out.push_str(&render_steps(&r.steps));
    }
    let _ = writeln!(out, "complex      {}  total {}", r.betti_c, r.totals.complex);
    let _ = writeln!(out, "real         {}  total {}", r.betti_r, r.totals.real);
    let _ = writeln!(out, "deficiency   {}", r.deficiency);
    for f in &r.flags {
        let origin = match f.provenance {
            Provenance::InputAxiom => "input axiom",
            Provenance::Propagated => "propagated",
        };
        let _ = writeln!(
            out,
            "flags        {}: effective {}, maximal {}, galois maximal {} ({origin})",
            f.subject, f.flags.effective, f.flags.maximal, f.flags.galois_maximal
        );
    }
    let _ = writeln!(out, "verdict      {}", r.verdict);
    if let Some(h) = &r.hilbert_square {
        let _ = writeln!(out, "hilbert sq.  deficiency {}", h.deficiency);
    }
    let passed = r.checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "checks       {passed}/{} passed", r.checks.len());
    for c in r.checks.iter().filter(|c| !c.passed) {
        let _ = writeln!(out, "  FAILED {}: {}", c.name, c.detail);
    }
    out
}

/// One table row per step.
pub fn render_steps(steps: &[StepTrace]) -> String {
    let mut out = String::new();
    let _ =
        writeln!(out, "  {:>4}  {:<28} {:>2}  {:<24} {:<20} {:>6}", "step", "center", "d", "complex", "real", "defi");
    for (i, s) in steps.iter().enumerate() {
        out.push_str(&render_step(i, s));
    }
    out
}

pub fn render_step(i: usize, s: &StepTrace) -> String {
    let mut center = s.center_labels.join(" + ");
    if !s.center_real_locus {
        center.push_str(" *");
    }
    format!(
        "  {:>4}  {:<28} {:>2}  {:<24} {:<20} {:>6}\n",
        i + 1,
        center,
        s.codim,
        s.betti_c_after.to_string(),
        s.betti_r_after.to_string(),
        s.deficiency_after
    )
}

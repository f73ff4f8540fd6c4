//! One equivariant blow-up step and the iterated wonderful run.
//!
//! A step blows up the current transform of a center `C` of codimension `d`:
//!
//! * the ambient gains `Σ_{k=1}^{d−1} shift(P_C, 2k)` (complex) and
//!   `Σ_{k=1}^{d−1} shift(Q_C, k)` (real, zero for centers without real points);
//! * a stratum inside `C` becomes its projectivized normal bundle;
//! * a stratum meeting `C` in `M` (possibly `M = C`) is blown up along `M`;
//! * the intersection table is rewritten with the containment, proper-meet and
//!   separation rules.
//!
//! A conjugate pair is one event made of two sub-steps. When the members meet, the
//! real side is updated once for the pair along their common real points.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Event, Geometry, Meet, RealStatus, StratumId, Tracking};
use crate::error::{Error, Result};
use crate::geometry::{partition_separation, separation_test, PartitionSeparation, Separation};
use crate::gradedpoly::{bundle_factor, BettiVector, Locus};
use crate::properties::{
    bundle_flags, deficiency_update, propagate_blowup_flags, verdict, CenterInfo, DeficiencyLedger, FlagSet, Tri,
    Verdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    Disjoint,
    InsideCenter,
    ContainsCenter,
    ProperMeet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseEntry {
    pub stratum: StratumId,
    pub label: String,
    pub center: StratumId,
    pub case: Case,
    /// The meet with the center, for `ProperMeet`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub meet: Option<StratumId>,
}

/// `Ã ∩ E` for a stratum (or the ambient, `parent = None`) meeting the center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalPiece {
    pub parent: Option<StratumId>,
    pub over: StratumId,
    pub dim_c: usize,
    pub betti_c: BettiVector,
    pub betti_r: BettiVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepTrace {
    pub centers: Vec<StratumId>,
    pub center_labels: Vec<String>,
    pub codim: usize,
    pub center_real_locus: bool,
    /// Where the members of a conjugate pair meet, if they do.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pair_meet: Option<StratumId>,
    /// `β*(C) − β*(F(C))` summed over members (complex data taken when each member is
    /// blown up); for meeting pairs the real points of the meet are subtracted.
    #[serde(with = "crate::bignum::unsigned")]
    pub center_deficiency: BigUint,
    #[serde(with = "crate::bignum::signed")]
    pub center_euler: BigInt,
    pub cases: Vec<CaseEntry>,
    pub betti_c_before: BettiVector,
    pub betti_r_before: BettiVector,
    pub betti_c_after: BettiVector,
    pub betti_r_after: BettiVector,
    #[serde(with = "crate::bignum::unsigned")]
    pub deficiency_before: BigUint,
    #[serde(with = "crate::bignum::unsigned")]
    pub deficiency_after: BigUint,
    pub flags_after: FlagSet,
    pub exceptional: Vec<ExceptionalPiece>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub untracked: Vec<StratumId>,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub betti_c: BettiVector,
    pub betti_r: BettiVector,
    pub flags: FlagSet,
    pub verdict: Verdict,
    pub ledger: DeficiencyLedger,
    pub traces: Vec<StepTrace>,
    pub arrangement: Arrangement,
}

impl RunResult {
    pub fn deficiency(&self) -> &BigUint {
        &self.ledger.value
    }
}

/// Case of stratum `a` relative to center `c` from the current table.
pub fn classify_case(arr: &Arrangement, a: StratumId, c: StratumId) -> Result<(Case, Option<StratumId>)> {
    if a == c {
        return Err(Error::Invariant("classify_case: stratum is the center itself".into()));
    }
    match arr.meet(a, c) {
        Meet::Empty => Ok((Case::Disjoint, None)),
        Meet::Stratum(m) if m == a => Ok((Case::InsideCenter, None)),
        Meet::Stratum(m) if m == c => Ok((Case::ContainsCenter, None)),
        Meet::Stratum(m) => {
            if !arr.is_inside(m, a) || !arr.is_inside(m, c) {
                return Err(Error::Invariant(format!(
                    "inconsistent table: meet of {} and {} is not inside both",
                    arr.strata[a].label, arr.strata[c].label
                )));
            }
            Ok((Case::ProperMeet, Some(m)))
        }
        Meet::Unresolved => Err(Error::UnsupportedExcessIntersection(format!(
            "{} meets center {} outside the tracked strata",
            arr.strata[a].label, arr.strata[c].label
        ))),
    }
}

fn separated(arr: &Arrangement, a: StratumId, b: StratumId, c: StratumId) -> Result<bool> {
    let (ga, gb, gc) = (&arr.strata[a].geometry, &arr.strata[b].geometry, &arr.strata[c].geometry);
    match (ga, gb, gc) {
        (Geometry::Subspace(u), Geometry::Subspace(v), Geometry::Subspace(w)) => {
            Ok(separation_test(u, v, w)? == Separation::Separated)
        }
        (Geometry::Partition(u), Geometry::Partition(v), Geometry::Partition(w)) => {
            Ok(partition_separation(u, v, w)? == PartitionSeparation::Separated)
        }
        _ => Err(Error::UnsupportedExcessIntersection(format!(
            "cannot decide whether {} and {} separate along {} without concrete geometry",
            arr.strata[a].label, arr.strata[b].label, arr.strata[c].label
        ))),
    }
}

fn center_info(arr: &Arrangement, id: StratumId, codim: usize) -> CenterInfo {
    let s = &arr.strata[id];
    match s.real_status {
        RealStatus::PairedWith(_) => CenterInfo { flags: FlagSet::free_pair(), real_locus_empty: true, codim },
        RealStatus::InvariantEmptyRealLocus => CenterInfo { flags: s.flags, real_locus_empty: true, codim },
        RealStatus::InvariantWithRealLocus => CenterInfo { flags: s.flags, real_locus_empty: false, codim },
    }
}

/// Betti data of a stratum usable as a blow-up locus; untracked strata are refused.
fn usable(arr: &Arrangement, id: StratumId) -> Result<()> {
    match arr.strata[id].tracking {
        Tracking::Active => Ok(()),
        _ => Err(Error::UnsupportedExcessIntersection(format!(
            "{} is needed as a blow-up locus but is no longer tracked",
            arr.strata[id].label
        ))),
    }
}

struct SubStep {
    cases: Vec<CaseEntry>,
    pieces: Vec<ExceptionalPiece>,
    untracked: Vec<StratumId>,
    center_deficiency: BigUint,
    center_euler: BigInt,
}

fn blow_up_single(arr: &mut Arrangement, c: StratumId) -> Result<SubStep> {
    usable(arr, c)?;
    let d = arr.codim(c);
    if d < 2 {
        return Err(Error::Input(format!("center {} has codimension {d} < 2", arr.strata[c].label)));
    }
    let center = arr.strata[c].clone();
    if center.real_status.has_real_locus() && center.betti_r.top_degree() != Some(center.dim_c) {
        return Err(Error::Invariant(format!(
            "real locus of {} does not have real dimension {}",
            center.label, center.dim_c
        )));
    }
    let info = center_info(arr, c, d);
    let n = arr.len();
    let before = arr.clone();

    // ambient
    let amb = &mut arr.ambient;
    amb.betti_c = amb.betti_c.add(&center.betti_c.exceptional_sum(d - 1, Locus::Complex));
    amb.betti_r = amb.betti_r.add(&center.betti_r.exceptional_sum(d - 1, Locus::Real));
    amb.flags = propagate_blowup_flags(&amb.flags, &info, before.stretched);
    let mut pieces = vec![ExceptionalPiece {
        parent: None,
        over: c,
        dim_c: before.ambient.dim_c - 1,
        betti_c: center.betti_c.kunneth(&bundle_factor(d, Locus::Complex)?),
        betti_r: center.betti_r.kunneth(&bundle_factor(d, Locus::Real)?),
    }];

    // classify against the table as it was before this step
    let mut cases = Vec::new();
    let mut inside = vec![false; n];
    let mut untracked = Vec::new();
    for (a, sa) in before.strata.iter().enumerate() {
        if a == c || !sa.is_active() {
            continue;
        }
        let (case, meet) = match classify_case(&before, a, c) {
            Ok(r) => r,
            Err(Error::UnsupportedExcessIntersection(msg)) => {
                if before.building_members().contains(&a) {
                    return Err(Error::UnsupportedExcessIntersection(msg));
                }
                untracked.push(a);
                continue;
            }
            Err(e) => return Err(e),
        };
        cases.push(CaseEntry { stratum: a, label: sa.label.clone(), center: c, case, meet });
        let real = sa.real_status.has_real_locus();
        match case {
            Case::Disjoint => {}
            Case::InsideCenter => {
                inside[a] = true;
                let s = &mut arr.strata[a];
                s.betti_c = sa.betti_c.kunneth(&bundle_factor(d, Locus::Complex)?);
                s.betti_r = sa.betti_r.kunneth(&bundle_factor(d, Locus::Real)?);
                s.dim_c = sa.dim_c + d - 1;
                s.flags = bundle_flags(&sa.flags);
            }
            Case::ContainsCenter | Case::ProperMeet => {
                let m = meet.unwrap_or(c);
                usable(&before, m)?;
                let sm = &before.strata[m];
                let da = sa.dim_c - sm.dim_c;
                let real_m =
                    if real && sm.real_status.has_real_locus() { sm.betti_r.clone() } else { BettiVector::zero() };
                let s = &mut arr.strata[a];
                s.betti_c = sa.betti_c.add(&sm.betti_c.exceptional_sum(da - 1, Locus::Complex));
                if real {
                    s.betti_r = sa.betti_r.add(&real_m.exceptional_sum(da - 1, Locus::Real));
                }
                if da >= 2 {
                    s.flags = match sa.real_status {
                        RealStatus::PairedWith(_) => FlagSet::free_pair(),
                        _ => propagate_blowup_flags(&sa.flags, &center_info(&before, m, da), before.stretched),
                    };
                }
                pieces.push(ExceptionalPiece {
                    parent: Some(a),
                    over: m,
                    dim_c: sa.dim_c - 1,
                    betti_c: sm.betti_c.kunneth(&bundle_factor(da, Locus::Complex)?),
                    betti_r: real_m.kunneth(&bundle_factor(da, Locus::Real)?),
                });
            }
        }
    }

    // rewrite the table among strata that stay tracked
    let live: Vec<StratumId> =
        (0..n).filter(|&a| a != c && before.strata[a].is_active() && !untracked.contains(&a)).collect();
    for (i, &a) in live.iter().enumerate() {
        for &b in &live[i + 1..] {
            let entry = match (inside[a], inside[b]) {
                (true, true) => before.meet(a, b),
                (true, false) => inside_vs_outside(&before, a, b, c, d),
                (false, true) => inside_vs_outside(&before, b, a, c, d),
                (false, false) => match before.meet(a, b) {
                    Meet::Stratum(m) => {
                        let m_inside_center = m == c || before.meet(m, c) == Meet::Stratum(m);
                        if before.meet(m, c) == Meet::Unresolved {
                            Meet::Unresolved
                        } else if !m_inside_center {
                            Meet::Stratum(m)
                        } else if separated(&before, a, b, c)? {
                            Meet::Empty
                        } else {
                            return Err(Error::UnsupportedExcessIntersection(format!(
                                "transforms of {} and {} still meet after blowing up {}",
                                before.strata[a].label, before.strata[b].label, center.label
                            )));
                        }
                    }
                    other => other,
                },
            };
            arr.set_meet(a, b, entry);
        }
    }

    for &u in &untracked {
        arr.strata[u].tracking = Tracking::Untracked;
        for b in 0..n {
            if b != u {
                arr.set_meet(u, b, Meet::Unresolved);
            }
        }
    }
    arr.strata[c].tracking = Tracking::BlownUp;
    for b in 0..n {
        if b != c {
            arr.set_meet(c, b, Meet::Unresolved);
        }
    }
    Ok(SubStep {
        cases,
        pieces,
        untracked,
        center_deficiency: center.deficiency(),
        center_euler: center.betti_c.euler(),
    })
}

/// Table entry after the step for `a` inside the center and `b` not inside it.
/// `π⁻¹(a) ∩ b̃` is `π⁻¹(a ∩ b)` exactly when `b` meets the center transversally
/// (its normal directions fill the whole normal bundle of the center).
fn inside_vs_outside(before: &Arrangement, a: StratumId, b: StratumId, c: StratumId, d: usize) -> Meet {
    match before.meet(a, b) {
        Meet::Empty => Meet::Empty,
        Meet::Unresolved => Meet::Unresolved,
        Meet::Stratum(k) => match before.meet(b, c) {
            Meet::Stratum(m) if before.strata[b].dim_c - before.strata[m].dim_c == d => Meet::Stratum(k),
            _ => Meet::Unresolved,
        },
    }
}

/// Blows up one building event and returns the new arrangement with its trace.
///
/// The members of a conjugate pair are blown up one after the other. When they meet,
/// they must meet transversally in an invariant stratum `M`; the composite is then
/// equivariant and over each real point of `M` the real locus gains the real points of
/// `P^{d−1} × P^{d−1}` under the swap, a complex `P^{d−1}`.
pub fn blow_up_step(arr: &Arrangement, event: &Event) -> Result<(Arrangement, StepTrace)> {
    let members = event.members();
    let codim = arr.codim(members[0]);
    let mut pair_meet = None;
    if let Event::Pair(a, b) = *event {
        if arr.strata[a].real_status != RealStatus::PairedWith(b) {
            return Err(Error::Input(format!("event pairs #{a} and #{b}, which are not conjugate")));
        }
        match arr.meet(a, b) {
            Meet::Empty => {}
            Meet::Stratum(m) => {
                check_pair_meet(arr, a, b, m, codim)?;
                pair_meet = Some(m);
            }
            Meet::Unresolved => {
                return Err(Error::UnsupportedExcessIntersection(format!(
                    "conjugate centers {} and {} meet outside the tracked strata",
                    arr.strata[a].label, arr.strata[b].label
                )))
            }
        }
    } else if let Some(p) = arr.strata[members[0]].real_status.partner() {
        return Err(Error::Input(format!(
            "{} is paired with #{p} and must be blown up together with it",
            arr.strata[members[0]].label
        )));
    }

    let center_real_locus = members.iter().all(|&m| arr.strata[m].real_status.has_real_locus());
    let deficiency_before = arr.ambient.deficiency();

    let mut next = arr.clone();
    let mut cases = Vec::new();
    let mut exceptional = Vec::new();
    let mut untracked = Vec::new();
    let mut center_deficiency = BigUint::default();
    let mut center_euler = BigInt::default();
    for &m in &members {
        let sub = blow_up_single(&mut next, m)?;
        cases.extend(sub.cases);
        exceptional.extend(sub.pieces);
        untracked.extend(sub.untracked);
        center_deficiency += sub.center_deficiency;
        center_euler += sub.center_euler;
    }

    if let Some(m) = pair_meet {
        let fixed = &arr.strata[m].betti_r;
        next.ambient.betti_r = next.ambient.betti_r.add(&fixed.exceptional_sum(codim - 1, Locus::Complex));
        next.ambient.flags = FlagSet::new(Tri::Unknown, Tri::No, Tri::Unknown);
        // strata inside M become P^{d−1} × P^{d−1} bundles whose real points form a complex P^{d−1} bundle
        for s in 0..arr.len() {
            if arr.strata[s].is_active() && arr.is_inside(s, m) && arr.strata[s].real_status.has_real_locus() {
                let q = &arr.strata[s].betti_r;
                next.strata[s].betti_r = q.add(&q.exceptional_sum(codim - 1, Locus::Complex));
                next.strata[s].flags = FlagSet::new(Tri::Unknown, Tri::No, Tri::Unknown);
            }
        }
        center_deficiency -= fixed.total();
    }

    let trace = StepTrace {
        centers: members.clone(),
        center_labels: members.iter().map(|&m| arr.strata[m].label.clone()).collect(),
        codim,
        center_real_locus,
        pair_meet,
        center_deficiency,
        center_euler,
        cases,
        betti_c_before: arr.ambient.betti_c.clone(),
        betti_r_before: arr.ambient.betti_r.clone(),
        betti_c_after: next.ambient.betti_c.clone(),
        betti_r_after: next.ambient.betti_r.clone(),
        deficiency_before,
        deficiency_after: next.ambient.deficiency(),
        flags_after: next.ambient.flags,
        exceptional,
        untracked,
    };
    Ok((next, trace))
}

/// Conjugate centers meeting in `m` are supported when the meet is transversal and
/// no other stratum with real points passes through `m` (their real loci would change
/// in ways the bundle rules do not describe).
fn check_pair_meet(arr: &Arrangement, a: StratumId, b: StratumId, m: StratumId, codim: usize) -> Result<()> {
    let unsupported = |why: String| {
        Err(Error::UnsupportedExcessIntersection(format!(
            "conjugate centers {} and {} meet in {}: {why}",
            arr.strata[a].label, arr.strata[b].label, arr.strata[m].label
        )))
    };
    usable(arr, m)?;
    if arr.codim(m) != 2 * codim {
        return unsupported("the meet is not transversal".into());
    }
    if arr.strata[m].real_status.partner().is_some() {
        return Err(Error::Invariant("the meet of conjugate strata is not invariant".into()));
    }
    for s in 0..arr.len() {
        if s == a || s == b || !arr.strata[s].is_active() || !arr.strata[s].real_status.has_real_locus() {
            continue;
        }
        if arr.is_inside(s, m) {
            continue;
        }
        match arr.meet(s, m) {
            Meet::Empty => {}
            _ => return unsupported(format!("{} has real points through the meet", arr.strata[s].label)),
        }
    }
    Ok(())
}

/// Checks the per-step identities a trace must satisfy: the deficiency recursion and
/// the Euler-characteristic recursion, both exact.
pub fn check_trace(trace: &StepTrace) -> Result<()> {
    let factor = BigUint::from(trace.codim - 1);
    let expected = &trace.deficiency_before + &factor * &trace.center_deficiency;
    if trace.deficiency_after != expected {
        return Err(Error::Invariant(format!(
            "deficiency ledger broken at {:?}: {} ≠ {}",
            trace.center_labels, trace.deficiency_after, expected
        )));
    }
    let euler = trace.betti_c_before.euler() + BigInt::from(trace.codim - 1) * &trace.center_euler;
    if trace.betti_c_after.euler() != euler {
        return Err(Error::Invariant(format!(
            "Euler recursion broken at {:?}: {} ≠ {}",
            trace.center_labels,
            trace.betti_c_after.euler(),
            euler
        )));
    }
    Ok(())
}

/// Runs every building event in order, checking the ledger, the Euler recursion and
/// all stratum invariants after each step.
pub fn wonderful_run(arr: &Arrangement) -> Result<RunResult> {
    arr.check_invariants()?;
    let mut current = arr.clone();
    let mut ledger = DeficiencyLedger::new(current.ambient.deficiency());
    let mut traces = Vec::with_capacity(arr.building.len());
    for event in &arr.building {
        let (next, trace) = blow_up_step(&current, event)?;
        ledger = deficiency_update(&ledger, trace.codim, &trace.center_deficiency)?;
        if ledger.value != next.ambient.deficiency() {
            return Err(Error::Invariant(format!(
                "ledger {} disagrees with Betti totals {} after {:?}",
                ledger.value,
                next.ambient.deficiency(),
                trace.center_labels
            )));
        }
        check_trace(&trace)?;
        next.check_invariants()?;
        traces.push(trace);
        current = next;
    }
    let amb = &current.ambient;
    let verdict = verdict(&amb.flags, &amb.betti_c)?;
    if verdict == Verdict::ConjugationSpace && ledger.value != BigUint::default() {
        return Err(Error::Invariant(format!("conjugation space with deficiency {}", ledger.value)));
    }
    Ok(RunResult {
        betti_c: amb.betti_c.clone(),
        betti_r: amb.betti_r.clone(),
        flags: amb.flags,
        verdict,
        ledger,
        traces,
        arrangement: current,
    })
}

//! Arrangements of strata with Betti payloads, their intersection table, and the
//! building-set designation that drives the iterated blow-up.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{GaussRat, ProjSubspace, SetPartition};
use crate::gradedpoly::BettiVector;
use crate::properties::{FlagSet, Tri};

pub type StratumId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Geometry {
    Subspace(ProjSubspace),
    Partition(SetPartition),
    /// No concrete model: payloads and intersection table are supplied by the caller.
    Abstract,
}

impl Geometry {
    fn kind(&self) -> &'static str {
        match self {
            Geometry::Subspace(_) => "subspace",
            Geometry::Partition(_) => "partition",
            Geometry::Abstract => "abstract",
        }
    }

    /// Intersection of two concrete geometries; `Ok(None)` when empty.
    pub fn intersect(&self, other: &Geometry) -> Result<Option<Geometry>> {
        match (self, other) {
            (Geometry::Subspace(a), Geometry::Subspace(b)) => Ok(a.intersect(b)?.map(Geometry::Subspace)),
            (Geometry::Partition(a), Geometry::Partition(b)) => Ok(Some(Geometry::Partition(a.join(b)))),
            (a, b) => {
                Err(Error::Geometry(format!("cannot intersect {} geometry with {} geometry", a.kind(), b.kind())))
            }
        }
    }

    pub fn conjugate(&self) -> Geometry {
        match self {
            Geometry::Subspace(s) => Geometry::Subspace(s.conjugate()),
            other => other.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealStatus {
    InvariantWithRealLocus,
    InvariantEmptyRealLocus,
    PairedWith(StratumId),
}

impl RealStatus {
    pub fn has_real_locus(self) -> bool {
        self == RealStatus::InvariantWithRealLocus
    }

    pub fn partner(self) -> Option<StratumId> {
        match self {
            RealStatus::PairedWith(j) => Some(j),
            _ => None,
        }
    }
}

/// Lifecycle of a stratum through the iterated blow-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tracking {
    Active,
    /// Already used as a blow-up center; its transform is the exceptional divisor.
    BlownUp,
    /// Its transform met a later center in a locus that is not a stratum; its
    /// Betti data is frozen and may no longer be consulted.
    Untracked,
}

#[derive(Debug, Clone)]
pub struct Stratum {
    pub id: StratumId,
    pub label: String,
    pub geometry: Geometry,
    pub dim_c: usize,
    pub real_status: RealStatus,
    pub betti_c: BettiVector,
    pub betti_r: BettiVector,
    pub flags: FlagSet,
    pub tracking: Tracking,
}

impl Stratum {
    pub fn is_active(&self) -> bool {
        self.tracking == Tracking::Active
    }

    /// `β*(X) − β*(F)`; saturates at zero so a broken payload cannot underflow
    /// (the invariant checks report it instead).
    pub fn deficiency(&self) -> num_bigint::BigUint {
        let (c, r) = (self.betti_c.total(), self.betti_r.total());
        if c >= r {
            c - r
        } else {
            num_bigint::BigUint::default()
        }
    }

    /// Smith inequality, parity, and Poincaré-duality symmetry of both loci.
    pub fn check_invariants(&self) -> Result<()> {
        let (c, r) = (self.betti_c.total(), self.betti_r.total());
        if r > c {
            return Err(Error::Invariant(format!("{}: Smith inequality fails ({r} > {c})", self.label)));
        }
        // a member of a swapped pair is only half of a G-space, so parity is checked on invariant strata
        let paired = self.real_status.partner().is_some();
        if !paired && (&c - &r) % 2u32 != num_bigint::BigUint::default() {
            return Err(Error::Invariant(format!("{}: β*(X) − β*(F) = {} is odd", self.label, &c - &r)));
        }
        if !self.betti_c.is_palindromic(2 * self.dim_c) {
            return Err(Error::Invariant(format!(
                "{}: complex Betti {} not palindromic about {}",
                self.label,
                self.betti_c,
                2 * self.dim_c
            )));
        }
        match self.real_status {
            RealStatus::InvariantWithRealLocus => {
                if !self.betti_r.is_palindromic(self.dim_c) || self.betti_r.is_zero() {
                    return Err(Error::Invariant(format!(
                        "{}: real Betti {} not palindromic about {}",
                        self.label, self.betti_r, self.dim_c
                    )));
                }
            }
            _ => {
                if !self.betti_r.is_zero() {
                    return Err(Error::Invariant(format!(
                        "{}: real Betti on a stratum without real points",
                        self.label
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Meet {
    Empty,
    Stratum(StratumId),
    /// The transforms meet in a locus that is not a tracked stratum.
    Unresolved,
}

/// One blow-up event: a single invariant center, or a conjugate pair blown up together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Event {
    Single(StratumId),
    Pair(StratumId, StratumId),
}

impl Event {
    pub fn members(&self) -> Vec<StratumId> {
        match *self {
            Event::Single(a) => vec![a],
            Event::Pair(a, b) => vec![a, b],
        }
    }
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    pub ambient: Stratum,
    pub strata: Vec<Stratum>,
    table: Vec<Vec<Meet>>,
    /// Blow-up events (codimension ≥ 2).
    pub building: Vec<Event>,
    /// Codimension-1 building members: they count for validation but blowing
    /// them up changes nothing.
    pub divisorial: Vec<StratumId>,
    pub stretched: Tri,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub stratum: StratumId,
    pub label: String,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (#{}): {}", self.label, self.stratum, self.reason)
    }
}

/// Payload for a stratum produced by [`close_under_intersection`].
pub struct Seed {
    pub dim_c: usize,
    pub betti_c: BettiVector,
    pub betti_r: BettiVector,
    pub flags: FlagSet,
    pub real_locus: bool,
}

/// Intersection closure of `generators` inside `ambient`. Strata keep the order in
/// which they are discovered; conjugate pairs are detected from the geometry.
pub fn close_under_intersection(
    ambient: Stratum,
    generators: Vec<(String, Geometry)>,
    mut seed: impl FnMut(&Geometry, bool) -> Result<Seed>,
) -> Result<Arrangement> {
    let mut geoms: Vec<(String, Geometry)> = Vec::new();
    let mut index: HashMap<Geometry, StratumId> = HashMap::new();
    let mut meets: HashMap<(StratumId, StratumId), Option<StratumId>> = HashMap::new();

    for (label, g) in generators {
        if g == Geometry::Abstract {
            return Err(Error::Input(format!("{label}: abstract strata need an explicit intersection table")));
        }
        if g == ambient.geometry {
            return Err(Error::Input(format!("{label}: generator equals the ambient space")));
        }
        if index.contains_key(&g) {
            return Err(Error::Input(format!("{label}: duplicate generator")));
        }
        index.insert(g.clone(), geoms.len());
        geoms.push((label, g));
    }

    // equations of each linear stratum, computed once instead of once per pair
    let equations = |g: &Geometry| match g {
        Geometry::Subspace(s) => Some(s.equations()),
        _ => None,
    };
    let mut eqs: Vec<Option<Vec<Vec<GaussRat>>>> = geoms.iter().map(|(_, g)| equations(g)).collect();
    let mut next = 0;
    while next < geoms.len() {
        for other in 0..next {
            let (ga, gb) = (&geoms[next].1, &geoms[other].1);
            let meet = match (ga, gb, &eqs[next], &eqs[other]) {
                (Geometry::Subspace(a), Geometry::Subspace(b), Some(ea), Some(eb))
                    if a.ambient_dim() == b.ambient_dim() =>
                {
                    ProjSubspace::cut_out(a.ambient_dim(), ea.iter().chain(eb).cloned().collect())
                        .map(Geometry::Subspace)
                }
                _ => ga.intersect(gb)?,
            };
            let meet = meet.map(|g| match index.get(&g) {
                Some(&id) => id,
                None => {
                    let label = format!("{}∧{}", geoms[next].0, geoms[other].0);
                    let id = geoms.len();
                    index.insert(g.clone(), id);
                    eqs.push(equations(&g));
                    geoms.push((label, g));
                    id
                }
            });
            meets.insert((other, next), meet);
        }
        next += 1;
    }

    let n = geoms.len();
    let mut table = vec![vec![Meet::Empty; n]; n];
    for ((a, b), m) in meets {
        let entry = m.map_or(Meet::Empty, Meet::Stratum);
        table[a][b] = entry;
        table[b][a] = entry;
    }
    for (i, row) in table.iter_mut().enumerate() {
        row[i] = Meet::Stratum(i);
    }

    let mut strata = Vec::with_capacity(n);
    for (id, (label, geometry)) in geoms.into_iter().enumerate() {
        let conj = geometry.conjugate();
        let real_status = if conj == geometry {
            None
        } else {
            let partner = *index
                .get(&conj)
                .ok_or_else(|| Error::Input(format!("{label}: conjugate subspace missing from the arrangement")))?;
            Some(RealStatus::PairedWith(partner))
        };
        let s = seed(&geometry, real_status.is_none())?;
        let real_status = real_status.unwrap_or(if s.real_locus {
            RealStatus::InvariantWithRealLocus
        } else {
            RealStatus::InvariantEmptyRealLocus
        });
        strata.push(Stratum {
            id,
            label,
            geometry,
            dim_c: s.dim_c,
            real_status,
            betti_c: s.betti_c,
            betti_r: s.betti_r,
            flags: s.flags,
            tracking: Tracking::Active,
        });
    }

    Arrangement::from_parts(ambient, strata, table, Vec::new(), Vec::new(), Tri::Unknown)
}

impl Arrangement {
    /// Assembles an arrangement from explicit parts (the route for abstract strata),
    /// checking table shape, symmetry, idempotence and pairing.
    pub fn from_parts(
        ambient: Stratum,
        strata: Vec<Stratum>,
        table: Vec<Vec<Meet>>,
        building: Vec<Event>,
        divisorial: Vec<StratumId>,
        stretched: Tri,
    ) -> Result<Self> {
        let n = strata.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Input(format!("intersection table must be {n}×{n}")));
        }
        for (i, s) in strata.iter().enumerate() {
            if s.id != i {
                return Err(Error::Input(format!("stratum {} stored at position {i}", s.id)));
            }
            if s.dim_c >= ambient.dim_c {
                return Err(Error::Input(format!("{}: not a proper stratum of the ambient", s.label)));
            }
            if table[i][i] != Meet::Stratum(i) {
                return Err(Error::Input(format!("{}: table is not idempotent", s.label)));
            }
            for (j, entry) in table[i].iter().enumerate() {
                if *entry != table[j][i] {
                    return Err(Error::Input(format!("table asymmetric at ({i},{j})")));
                }
                if let Meet::Stratum(m) = *entry {
                    if m >= n {
                        return Err(Error::Input(format!("table entry ({i},{j}) points outside")));
                    }
                }
            }
            if let RealStatus::PairedWith(j) = s.real_status {
                let back = strata.get(j).map(|t| t.real_status);
                if j == i || back != Some(RealStatus::PairedWith(i)) {
                    return Err(Error::Input(format!("{}: partner {j} is not paired back", s.label)));
                }
                if strata[j].betti_c != s.betti_c || !s.betti_r.is_zero() {
                    return Err(Error::Input(format!(
                        "{}: paired strata must share complex Betti data and have none real",
                        s.label
                    )));
                }
            }
        }
        let arr = Arrangement { ambient, strata, table, building, divisorial, stretched };
        for e in &arr.building {
            for m in e.members() {
                if m >= n {
                    return Err(Error::Input(format!("building event refers to missing stratum {m}")));
                }
            }
        }
        Ok(arr)
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn meet(&self, a: StratumId, b: StratumId) -> Meet {
        self.table[a][b]
    }

    pub(crate) fn set_meet(&mut self, a: StratumId, b: StratumId, m: Meet) {
        self.table[a][b] = m;
        self.table[b][a] = m;
    }

    /// `a ⊆ b` according to the current table.
    pub fn is_inside(&self, a: StratumId, b: StratumId) -> bool {
        self.table[a][b] == Meet::Stratum(a)
    }

    pub fn codim(&self, id: StratumId) -> usize {
        self.ambient.dim_c - self.strata[id].dim_c
    }

    pub fn building_members(&self) -> Vec<StratumId> {
        self.building.iter().flat_map(Event::members).collect()
    }

    /// Designates building members; codimension-1 members are kept apart as divisorial.
    /// Conjugate partners become one pair event.
    pub fn set_building(&mut self, members: &[StratumId]) -> Result<()> {
        let mut events = Vec::new();
        let mut divisorial = Vec::new();
        let mut seen = vec![false; self.strata.len()];
        for &m in members {
            if m >= self.strata.len() {
                return Err(Error::Input(format!("building member {m} does not exist")));
            }
            if seen[m] {
                continue;
            }
            seen[m] = true;
            match self.codim(m) {
                0 => return Err(Error::Input("the ambient cannot be a building member".into())),
                1 => divisorial.push(m),
                _ => match self.strata[m].real_status {
                    RealStatus::PairedWith(p) => {
                        if !members.contains(&p) {
                            return Err(Error::BuildingSet(format!(
                                "{} is in the building set but its conjugate is not",
                                self.strata[m].label
                            )));
                        }
                        seen[p] = true;
                        events.push(Event::Pair(m.min(p), m.max(p)));
                    }
                    _ => events.push(Event::Single(m)),
                },
            }
        }
        self.building = events;
        self.divisorial = divisorial;
        Ok(())
    }

    /// Checks that every stratum is the transversal intersection of the minimal
    /// building members containing it (codimension additivity). Never fails; an
    /// empty report means the building set is valid.
    pub fn validate_building_set(&self) -> Vec<Violation> {
        let mut members = self.building_members();
        members.extend(&self.divisorial);
        self.validate_against(&members, (0..self.strata.len()).collect())
    }

    fn validate_against(&self, members: &[StratumId], strata: Vec<StratumId>) -> Vec<Violation> {
        let mut out = Vec::new();
        for &e in members {
            if self.codim(e) == 0 {
                out.push(self.violation(e, "building member equals the ambient".into()));
            }
        }
        for a in strata {
            let containing: Vec<StratumId> = members.iter().copied().filter(|&g| self.is_inside(a, g)).collect();
            if containing.is_empty() {
                out.push(self.violation(a, "no building member contains it".into()));
                continue;
            }
            let minimal: Vec<StratumId> = containing
                .iter()
                .copied()
                .filter(|&g| !containing.iter().any(|&h| h != g && self.is_inside(h, g)))
                .collect();
            let mut meet = Meet::Stratum(minimal[0]);
            for &g in &minimal[1..] {
                meet = match meet {
                    Meet::Stratum(m) => self.meet(m, g),
                    other => other,
                };
            }
            if meet != Meet::Stratum(a) {
                out.push(self.violation(a, "minimal building members do not intersect in it".into()));
                continue;
            }
            let sum: usize = minimal.iter().map(|&g| self.codim(g)).sum();
            if sum != self.codim(a) {
                let labels: Vec<&str> = minimal.iter().map(|&g| self.strata[g].label.as_str()).collect();
                out.push(self.violation(
                    a,
                    format!(
                        "codimension {} but minimal members {:?} have codimensions summing to {sum}",
                        self.codim(a),
                        labels
                    ),
                ));
            }
        }
        out
    }

    fn violation(&self, id: StratumId, reason: String) -> Violation {
        Violation { stratum: id, label: self.strata[id].label.clone(), reason }
    }

    /// Orders events by nondecreasing dimension (ties by id) and re-validates every
    /// prefix as a building set of the arrangement it generates.
    pub fn order_building_set(&mut self) -> Result<()> {
        let mut events = self.building.clone();
        events.sort_by_key(|e| {
            let m = e.members();
            (self.strata[m[0]].dim_c, m[0])
        });
        // divisorial members are never blown up, so they sit outside the prefixes
        let mut prefix: Vec<StratumId> = Vec::new();
        for e in &events {
            prefix.extend(e.members());
            // strata generated by the prefix: intersections of prefix members
            let generated: Vec<StratumId> = (0..self.strata.len())
                .filter(|&a| {
                    let containing: Vec<StratumId> = prefix.iter().copied().filter(|&g| self.is_inside(a, g)).collect();
                    let mut meet = match containing.first() {
                        Some(&g) => Meet::Stratum(g),
                        None => return false,
                    };
                    for &g in &containing[1..] {
                        if let Meet::Stratum(m) = meet {
                            meet = self.meet(m, g);
                        }
                    }
                    meet == Meet::Stratum(a)
                })
                .collect();
            let violations = self.validate_against(&prefix, generated);
            if let Some(v) = violations.first() {
                return Err(Error::BuildingSet(format!("prefix ending at event {e:?} is not a building set: {v}")));
            }
        }
        self.building = events;
        Ok(())
    }

    /// Confirms that the recorded real statuses match conjugation of the geometry and
    /// that the building set is closed under conjugation.
    pub fn check_g_invariance(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let index: HashMap<&Geometry, StratumId> =
            self.strata.iter().filter(|s| s.geometry != Geometry::Abstract).map(|s| (&s.geometry, s.id)).collect();
        for s in &self.strata {
            if s.geometry == Geometry::Abstract {
                continue;
            }
            let conj = s.geometry.conjugate();
            match s.real_status {
                RealStatus::PairedWith(p) => {
                    if index.get(&conj) != Some(&p) {
                        out.push(self.violation(s.id, format!("recorded partner #{p} is not its conjugate")));
                    }
                }
                _ => {
                    if conj != s.geometry {
                        out.push(self.violation(s.id, "recorded invariant but conjugation moves it".into()));
                    }
                }
            }
        }
        let members = self.building_members();
        for &m in &members {
            if let Some(p) = self.strata[m].real_status.partner() {
                if !members.contains(&p) {
                    out.push(self.violation(m, "conjugate missing from the building set".into()));
                }
            }
        }
        out
    }

    /// Runs [`Stratum::check_invariants`] on the ambient and every active stratum.
    pub fn check_invariants(&self) -> Result<()> {
        self.ambient.check_invariants()?;
        for s in self.strata.iter().filter(|s| s.is_active()) {
            s.check_invariants()?;
            if let RealStatus::PairedWith(p) = s.real_status {
                let t = &self.strata[p];
                if t.is_active() && t.betti_c != s.betti_c {
                    return Err(Error::Invariant(format!(
                        "{} and {} differ despite being conjugate",
                        s.label, t.label
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rnc_points, span_points, GaussRat};

    fn ambient(n: usize) -> Stratum {
        Stratum {
            id: usize::MAX,
            label: format!("P^{n}"),
            geometry: Geometry::Subspace(ProjSubspace::full(n)),
            dim_c: n,
            real_status: RealStatus::InvariantWithRealLocus,
            betti_c: BettiVector::complex_projective(n),
            betti_r: BettiVector::real_projective(n),
            flags: FlagSet::conjugation_space(),
            tracking: Tracking::Active,
        }
    }

    fn linear_seed(g: &Geometry, invariant: bool) -> Result<Seed> {
        let Geometry::Subspace(s) = g else { unreachable!() };
        let k = s.proj_dim();
        Ok(Seed {
            dim_c: k,
            betti_c: BettiVector::complex_projective(k),
            betti_r: if invariant { BettiVector::real_projective(k) } else { BettiVector::zero() },
            flags: if invariant { FlagSet::conjugation_space() } else { FlagSet::free_pair() },
            real_locus: invariant,
        })
    }

    fn pts(n: usize, params: &[&str]) -> Vec<ProjSubspace> {
        let params: Vec<GaussRat> = params.iter().map(|s| s.parse().unwrap()).collect();
        rnc_points(n, &params).unwrap()
    }

    fn gens(list: Vec<ProjSubspace>) -> Vec<(String, Geometry)> {
        list.into_iter().enumerate().map(|(i, s)| (format!("G{i}"), Geometry::Subspace(s))).collect()
    }

    #[test]
    fn points_in_the_plane() {
        let arr = close_under_intersection(ambient(2), gens(pts(2, &["0", "1", "2", "3"])), linear_seed).unwrap();
        assert_eq!(arr.len(), 4);
        for a in 0..4 {
            for b in 0..4 {
                let expect = if a == b { Meet::Stratum(a) } else { Meet::Empty };
                assert_eq!(arr.meet(a, b), expect);
            }
        }
    }

    #[test]
    fn two_planes_in_p4_and_building_checks() {
        let p = pts(4, &["0", "1", "2", "3", "4", "5"]);
        let u = span_points(&p[0..3]).unwrap();
        let v = span_points(&p[3..6]).unwrap();
        let mut arr = close_under_intersection(ambient(4), gens(vec![u, v]), linear_seed).unwrap();
        assert_eq!(arr.len(), 3);
        assert_eq!(arr.strata[2].dim_c, 0);
        arr.set_building(&[0, 1]).unwrap();
        assert!(arr.validate_building_set().is_empty());
        arr.order_building_set().unwrap();
        assert!(arr.check_g_invariance().is_empty());

        // two planes sharing a line: 2 + 2 ≠ 3
        let u = span_points(&p[0..3]).unwrap();
        let v = span_points(&[p[0].clone(), p[1].clone(), p[3].clone()]).unwrap();
        let mut arr = close_under_intersection(ambient(4), gens(vec![u, v]), linear_seed).unwrap();
        arr.set_building(&[0, 1]).unwrap();
        let report = arr.validate_building_set();
        assert_eq!(report.len(), 1);
        assert_eq!(arr.strata[report[0].stratum].dim_c, 1);
    }

    #[test]
    fn nested_order_is_by_dimension() {
        let p = pts(4, &["0", "1", "2"]);
        let plane = span_points(&p).unwrap();
        let line = span_points(&p[..2]).unwrap();
        let point = p[0].clone();
        let mut arr = close_under_intersection(ambient(4), gens(vec![plane, line, point]), linear_seed).unwrap();
        arr.set_building(&[0, 1, 2]).unwrap();
        arr.order_building_set().unwrap();
        assert_eq!(arr.building, vec![Event::Single(2), Event::Single(1), Event::Single(0)]);
    }

    #[test]
    fn conjugate_pairs_are_detected_and_kept_adjacent() {
        let p = pts(2, &["i", "-i", "0"]);
        let mut arr = close_under_intersection(ambient(2), gens(p), linear_seed).unwrap();
        assert_eq!(arr.strata[0].real_status, RealStatus::PairedWith(1));
        assert_eq!(arr.strata[2].real_status, RealStatus::InvariantWithRealLocus);
        arr.set_building(&[0, 1, 2]).unwrap();
        arr.order_building_set().unwrap();
        assert_eq!(arr.building, vec![Event::Pair(0, 1), Event::Single(2)]);
        assert!(arr.check_g_invariance().is_empty());
        assert!(arr.set_building(&[0, 2]).is_err());
    }

    #[test]
    fn g_invariance_mismatch_is_reported() {
        let q = ProjSubspace::point(1, vec![GaussRat::one(), "i".parse().unwrap()]).unwrap();
        let s = Stratum {
            id: 0,
            label: "[1:i]".into(),
            geometry: Geometry::Subspace(q),
            dim_c: 0,
            real_status: RealStatus::InvariantWithRealLocus,
            betti_c: BettiVector::point(),
            betti_r: BettiVector::point(),
            flags: FlagSet::conjugation_space(),
            tracking: Tracking::Active,
        };
        let arr = Arrangement::from_parts(ambient(1), vec![s], vec![vec![Meet::Stratum(0)]], vec![], vec![], Tri::Yes)
            .unwrap();
        assert_eq!(arr.check_g_invariance().len(), 1);
    }

    #[test]
    fn closure_rejects_abstract_generators() {
        let err = close_under_intersection(ambient(2), vec![("A".into(), Geometry::Abstract)], linear_seed);
        assert!(err.is_err());
    }
}

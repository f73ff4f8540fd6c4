use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arrangement::{close_under_intersection, Arrangement, Geometry, Seed};
use crate::error::{Error, Result};
use crate::geometry::{GaussRat, ProjSubspace, SetPartition};
use crate::gradedpoly::BettiVector;
use crate::models::moduli::subsets;
use crate::models::{ambient_stratum, finish_building, linear_seed, FlagSource, Model, ModelDescriptor, SpaceData};
use crate::properties::{product_flags, FlagSet, KnownSpaces, Tri, PROJECTIVE_SPACE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfigModel {
    /// All diagonals `Δ_I`, `|I| ≥ 2`.
    Fm,
    /// All polydiagonals.
    Ulyanov,
    /// A user-supplied set of polydiagonals.
    Kt,
}

impl ConfigModel {
    pub fn name(self) -> &'static str {
        match self {
            ConfigModel::Fm => "fm",
            ConfigModel::Ulyanov => "ulyanov",
            ConfigModel::Kt => "kt",
        }
    }
}

/// Every set partition of `0..n` in restricted-growth order.
fn all_partitions(n: usize) -> Vec<SetPartition> {
    fn rec(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<SetPartition>) {
        if i == n {
            out.push(SetPartition::from_blocks(n, blocks.clone()).expect("disjoint blocks"));
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// Generator partitions of a model, finest first and otherwise in a fixed order.
fn generator_partitions(model: ConfigModel, n: usize, user: Option<&[SetPartition]>) -> Result<Vec<SetPartition>> {
    let gens = match model {
        ConfigModel::Fm => (2..=n)
            .flat_map(|k| subsets(n, k))
            .map(|set| SetPartition::diagonal(n, &set))
            .collect::<Result<Vec<_>>>()?,
        ConfigModel::Ulyanov => {
            let mut all: Vec<SetPartition> = all_partitions(n).into_iter().filter(|p| p.num_blocks() < n).collect();
            let key = |p: &SetPartition| {
                let blocks: Vec<Vec<usize>> = p.blocks().iter().filter(|b| b.len() > 1).cloned().collect();
                (std::cmp::Reverse(p.num_blocks()), blocks)
            };
            all.sort_by_cached_key(key);
            all
        }
        ConfigModel::Kt => {
            let list = user.ok_or_else(|| Error::Input("the kt model needs an explicit building set".into()))?;
            let mut out: Vec<SetPartition> = Vec::new();
            for p in list {
                if p.n() != n {
                    return Err(Error::Input(format!("partition {p} is not a partition of 1..={n}")));
                }
                if p.num_blocks() == n {
                    return Err(Error::Input("the discrete partition is the whole space".into()));
                }
                if out.contains(p) {
                    return Err(Error::Input(format!("partition {p} listed twice")));
                }
                out.push(p.clone());
            }
            out
        }
    };
    if model != ConfigModel::Kt && user.is_some() {
        return Err(Error::Input(format!("the {} model has a fixed building set", model.name())));
    }
    Ok(gens)
}

fn relabel_partitions(arr: &mut Arrangement) {
    for s in &mut arr.strata {
        if let Geometry::Partition(p) = &s.geometry {
            s.label = format!("Δ{p}");
        }
    }
}

/// Polydiagonal compactification of `X^n` for the chosen building set.
pub fn build_config(
    model: ConfigModel,
    n: usize,
    x: &SpaceData,
    building: Option<&[SetPartition]>,
    known: &KnownSpaces,
) -> Result<Model> {
    if n < 2 {
        return Err(Error::Input(format!("n = {n}: configuration models need n ≥ 2")));
    }
    if x.dim_c == 0 {
        return Err(Error::Input("the factor must have positive dimension".into()));
    }
    x.validate()?;
    let (xflags, source) = x.resolve_flags(known)?;
    let gens = generator_partitions(model, n, building)?;
    let count = gens.len();

    let power = |k: usize| {
        let c = x.betti_c.power(k);
        let r = if x.real_locus { x.betti_r.power(k) } else { BettiVector::zero() };
        (c, r)
    };
    let (ac, ar) = power(n);
    let ambient = ambient_stratum(
        format!("{}^{n}", x.name),
        Geometry::Partition(SetPartition::discrete(n)),
        x.dim_c * n,
        ac,
        ar,
        product_flags(&vec![xflags; n]),
        x.real_locus,
    );
    let generators = gens.into_iter().map(|p| (format!("Δ{p}"), Geometry::Partition(p))).collect();
    let mut arr = close_under_intersection(ambient, generators, |g, _| {
        let Geometry::Partition(p) = g else {
            return Err(Error::Invariant("configuration model produced a non-partition stratum".into()));
        };
        let k = p.num_blocks();
        let (betti_c, betti_r) = power(k);
        Ok(Seed {
            dim_c: x.dim_c * k,
            betti_c,
            betti_r,
            flags: product_flags(&vec![xflags; k]),
            real_locus: x.real_locus,
        })
    })?;
    relabel_partitions(&mut arr);
    finish_building(&mut arr, (0..count).collect(), false)?;
    arr.stretched = Tri::Yes;

    let mut parameters = BTreeMap::new();
    parameters.insert("model".into(), model.name().into());
    parameters.insert("n".into(), n.to_string());
    parameters.insert("space".into(), x.name.clone());
    if model == ConfigModel::Kt {
        let list: Vec<String> = building.unwrap_or_default().iter().map(ToString::to_string).collect();
        parameters.insert("building".into(), list.join(" "));
    }
    let FlagSource::Axiom(name) = source;
    Ok(Model {
        descriptor: ModelDescriptor {
            kind: "config".into(),
            parameters,
            axioms: [(name, xflags)].into_iter().collect(),
        },
        arrangement: arr,
    })
}

fn braid_descriptor(backend: &str, model: ConfigModel, n: usize, flags: FlagSet) -> ModelDescriptor {
    let mut parameters = BTreeMap::new();
    parameters.insert("backend".into(), backend.into());
    parameters.insert("model".into(), model.name().into());
    parameters.insert("n".into(), n.to_string());
    ModelDescriptor {
        kind: "braid".into(),
        parameters,
        axioms: [(PROJECTIVE_SPACE.to_string(), flags)].into_iter().collect(),
    }
}

/// The projective braid arrangement `{z_i = z_j}` in `P^n` (coordinates `z_0..z_n`,
/// with `z_0` the homogenizing one), built by the partition backend: the stratum of
/// `π` is `P^{|π|}`.
pub fn braid_partition(model: ConfigModel, n: usize, known: &KnownSpaces) -> Result<Model> {
    if model == ConfigModel::Kt || n < 2 {
        return Err(Error::Input("braid arrangements use the fm or ulyanov building set with n ≥ 2".into()));
    }
    let flags = known.get(PROJECTIVE_SPACE)?;
    let gens = generator_partitions(model, n, None)?;
    let count = gens.len();
    let ambient = ambient_stratum(
        format!("P^{n}"),
        Geometry::Partition(SetPartition::discrete(n)),
        n,
        BettiVector::complex_projective(n),
        BettiVector::real_projective(n),
        flags,
        true,
    );
    let generators = gens.into_iter().map(|p| (format!("Δ{p}"), Geometry::Partition(p))).collect();
    let mut arr = close_under_intersection(ambient, generators, |g, _| {
        let Geometry::Partition(p) = g else {
            return Err(Error::Invariant("braid model produced a non-partition stratum".into()));
        };
        Ok(linear_seed(p.num_blocks(), true, flags))
    })?;
    relabel_partitions(&mut arr);
    finish_building(&mut arr, (0..count).collect(), false)?;
    arr.stretched = Tri::Yes;
    Ok(Model { descriptor: braid_descriptor("partition", model, n, flags), arrangement: arr })
}

/// The same arrangement as [`braid_partition`] through the linear backend.
pub fn braid_linear(model: ConfigModel, n: usize, known: &KnownSpaces) -> Result<Model> {
    if model == ConfigModel::Kt || n < 2 {
        return Err(Error::Input("braid arrangements use the fm or ulyanov building set with n ≥ 2".into()));
    }
    let flags = known.get(PROJECTIVE_SPACE)?;
    let gens = generator_partitions(model, n, None)?;
    let count = gens.len();
    let subspace = |p: &SetPartition| {
        let mut rows = vec![(0..=n).map(|c| if c == 0 { GaussRat::one() } else { GaussRat::zero() }).collect()];
        for b in p.blocks() {
            rows.push(
                (0..=n)
                    .map(|c| if c > 0 && b.contains(&(c - 1)) { GaussRat::one() } else { GaussRat::zero() })
                    .collect(),
            );
        }
        ProjSubspace::from_rows(n, rows)
    };
    let generators =
        gens.iter().map(|p| Ok((format!("Δ{p}"), Geometry::Subspace(subspace(p)?)))).collect::<Result<Vec<_>>>()?;
    let ambient = crate::models::projective_ambient(n, flags);
    let mut arr = close_under_intersection(ambient, generators, |g, invariant| {
        let Geometry::Subspace(s) = g else {
            return Err(Error::Invariant("linear arrangement produced a non-linear stratum".into()));
        };
        Ok(linear_seed(s.proj_dim(), invariant, flags))
    })?;
    for s in &mut arr.strata {
        if let Geometry::Subspace(sub) = &s.geometry {
            s.label = format!("Δ{}", partition_of(sub, n)?);
        }
    }
    finish_building(&mut arr, (0..count).collect(), false)?;
    arr.stretched = Tri::Yes;
    Ok(Model { descriptor: braid_descriptor("linear", model, n, flags), arrangement: arr })
}

/// Recovers `π` from a braid flat: `i ~ j` when `z_i = z_j` on the whole subspace.
fn partition_of(sub: &ProjSubspace, n: usize) -> Result<SetPartition> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let same = |j: usize| sub.basis().iter().all(|row| row[i + 1] == row[j + 1]);
        match blocks.iter_mut().find(|b| same(b[0])) {
            Some(b) => b.push(i),
            None => blocks.push(vec![i]),
        }
    }
    let p = SetPartition::from_blocks(n, blocks)?;
    if sub.proj_dim() != p.num_blocks() {
        return Err(Error::Invariant(format!("subspace of dimension {} is not the braid flat {p}", sub.proj_dim())));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        assert_eq!(all_partitions(3).len(), 5);
        assert_eq!(all_partitions(4).len(), 15);
        let u = generator_partitions(ConfigModel::Ulyanov, 3, None).unwrap();
        let labels: Vec<String> = u.iter().map(ToString::to_string).collect();
        assert_eq!(labels, ["{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]);
        assert_eq!(generator_partitions(ConfigModel::Fm, 4, None).unwrap().len(), 11);
    }

    #[test]
    fn kt_requires_a_list() {
        assert!(generator_partitions(ConfigModel::Kt, 3, None).is_err());
        let list = [SetPartition::parse(3, "{1,2,3}").unwrap()];
        assert_eq!(generator_partitions(ConfigModel::Kt, 3, Some(&list)).unwrap().len(), 1);
        assert!(generator_partitions(ConfigModel::Fm, 3, Some(&list)).is_err());
    }

    #[test]
    fn fm_on_p1_cubed_keeps_pair_diagonals_divisorial() {
        let m = build_config(ConfigModel::Fm, 3, &SpaceData::projective(1), None, &KnownSpaces::default()).unwrap();
        assert_eq!(m.arrangement.divisorial.len(), 3);
        assert_eq!(m.arrangement.building.len(), 1);
    }

    #[test]
    fn braid_flats_round_trip() {
        let m = braid_linear(ConfigModel::Ulyanov, 4, &KnownSpaces::default()).unwrap();
        let p = braid_partition(ConfigModel::Ulyanov, 4, &KnownSpaces::default()).unwrap();
        let a: Vec<&str> = m.arrangement.strata.iter().map(|s| s.label.as_str()).collect();
        let b: Vec<&str> = p.arrangement.strata.iter().map(|s| s.label.as_str()).collect();
        assert_eq!(a, b);
    }
}

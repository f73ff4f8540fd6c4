use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arrangement::{close_under_intersection, Geometry};
use crate::error::{Error, Result};
use crate::geometry::{rank, GaussRat, ProjSubspace};
use crate::models::{finish_building, linear_seed, projective_ambient, Model, ModelDescriptor};
use crate::properties::{KnownSpaces, Tri, PROJECTIVE_SPACE};

/// Subspace arrangement in `P^N`, each generator spanned by the given points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcpInput {
    pub ambient_dim: usize,
    pub subspaces: Vec<SubspaceInput>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Homogeneous coordinates of spanning points, entries like `"1/2"`, `"-i"`, `"3+2*i"`.
    pub points: Vec<Vec<String>>,
}

impl SubspaceInput {
    fn to_subspace(&self, ambient_dim: usize, label: &str) -> Result<ProjSubspace> {
        let rows = self
            .points
            .iter()
            .map(|p| {
                if p.len() != ambient_dim + 1 {
                    return Err(Error::Input(format!(
                        "{label}: point with {} coordinates in P^{ambient_dim}",
                        p.len()
                    )));
                }
                p.iter().map(|s| s.parse::<GaussRat>()).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() || rank(rows.clone()) != rows.len() {
            return Err(Error::Input(format!("{label}: spanning points are dependent or missing")));
        }
        ProjSubspace::from_rows(ambient_dim, rows)
    }
}

/// Closes the generators under intersection. The building set is the generators
/// (codimension-1 ones kept as divisorial) plus whatever closure strata the
/// building-set condition requires.
pub fn build_dcp(input: &DcpInput, known: &KnownSpaces) -> Result<Model> {
    let n = input.ambient_dim;
    if n == 0 {
        return Err(Error::Input("ambient dimension must be at least 1".into()));
    }
    let flags = known.get(PROJECTIVE_SPACE)?;
    let mut generators = Vec::with_capacity(input.subspaces.len());
    for (i, s) in input.subspaces.iter().enumerate() {
        let label = s.label.clone().unwrap_or_else(|| format!("L{}", i + 1));
        let sub = s.to_subspace(n, &label)?;
        if sub.proj_dim() == n {
            return Err(Error::Input(format!("{label}: equals the ambient space")));
        }
        generators.push((label, Geometry::Subspace(sub)));
    }
    let count = generators.len();
    let mut arr = close_under_intersection(projective_ambient(n, flags), generators, |g, invariant| {
        let Geometry::Subspace(s) = g else {
            return Err(Error::Invariant("linear arrangement produced a non-linear stratum".into()));
        };
        Ok(linear_seed(s.proj_dim(), invariant, flags))
    })?;
    finish_building(&mut arr, (0..count).collect(), true)?;
    arr.stretched = Tri::Yes;

    let mut parameters = BTreeMap::new();
    parameters.insert("ambient_dim".into(), n.to_string());
    parameters.insert("generators".into(), count.to_string());
    Ok(Model {
        descriptor: ModelDescriptor {
            kind: "dcp".into(),
            parameters,
            axioms: [(PROJECTIVE_SPACE.to_string(), flags)].into_iter().collect(),
        },
        arrangement: arr,
    })
}

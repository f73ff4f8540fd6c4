//! Set partitions of `{1..n}` indexing the polydiagonals of `X^n`.
//!
//! The polydiagonal of a partition `π` is the locus where coordinates in the same
//! block agree. Coarser partitions give smaller polydiagonals, so
//! `Δ_π ∩ Δ_ρ = Δ_{π ∨ ρ}` with `∨` the join (finest common coarsening).

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::gauss::GaussRat;
use crate::geometry::subspace::{separation_test, ProjSubspace, Separation};

/// Canonical form: blocks sorted internally and by first element, 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionSeparation {
    Separated,
    /// The excess locus, when it is itself a polydiagonal.
    Excess(Option<SetPartition>),
}

impl SetPartition {
    /// Builds a partition from 0-based blocks; elements not mentioned become singletons.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for &x in blocks.iter().flatten() {
            if x >= n {
                return Err(Error::Input(format!("element {} outside 1..={n}", x + 1)));
            }
            if seen[x] {
                return Err(Error::Input(format!("element {} appears twice", x + 1)));
            }
            seen[x] = true;
        }
        let mut all: Vec<Vec<usize>> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
        all.extend((0..n).filter(|&x| !seen[x]).map(|x| vec![x]));
        Ok(SetPartition::canonical(n, all))
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { n, blocks }
    }

    /// All singletons: the whole product `X^n`.
    pub fn discrete(n: usize) -> Self {
        SetPartition::canonical(n, (0..n).map(|x| vec![x]).collect())
    }

    /// The diagonal `Δ_I` (one block `I`, singletons elsewhere).
    pub fn diagonal(n: usize, set: &[usize]) -> Result<Self> {
        SetPartition::from_blocks(n, vec![set.to_vec()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    fn block_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                owner[x] = i;
            }
        }
        owner
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &SetPartition) -> SetPartition {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for b in self.blocks.iter().chain(&other.blocks) {
            for w in b.windows(2) {
                let (a, c) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = c;
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..self.n {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        SetPartition::canonical(self.n, groups.into_values().collect())
    }

    /// Coarsest common refinement.
    pub fn meet(&self, other: &SetPartition) -> SetPartition {
        let (a, b) = (self.block_of(), other.block_of());
        let mut groups: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
        for x in 0..self.n {
            groups.entry((a[x], b[x])).or_default().push(x);
        }
        SetPartition::canonical(self.n, groups.into_values().collect())
    }

    /// Every block of `other` lies inside a block of `self`, i.e. `Δ_self ⊆ Δ_other`.
    pub fn is_coarser_or_eq(&self, other: &SetPartition) -> bool {
        let owner = self.block_of();
        other.blocks.iter().all(|b| b.iter().all(|&x| owner[x] == owner[b[0]]))
    }

    /// Tangent cone of the polydiagonal inside `C^n` (per unit of `dim X`), as a
    /// projective subspace of `P^{n-1}`.
    pub fn tangent_subspace(&self) -> ProjSubspace {
        let rows = self
            .blocks
            .iter()
            .map(|b| (0..self.n).map(|x| if b.contains(&x) { GaussRat::one() } else { GaussRat::zero() }).collect())
            .collect();
        ProjSubspace::from_rows(self.n - 1, rows).expect("blocks are nonempty")
    }

    /// Tangent sum `T_π + T_ρ`, when it is itself a partition subspace. It always
    /// sits inside `T_{π∧ρ}` and equals it exactly when the dimensions agree.
    pub fn tangent_sum(&self, other: &SetPartition) -> Option<SetPartition> {
        let meet = self.meet(other);
        let dim = self.num_blocks() + other.num_blocks() - self.join(other).num_blocks();
        (dim == meet.num_blocks()).then_some(meet)
    }

    /// Parses `{1,2}{3,4}` (1-based, singletons may be omitted). `{}` or empty text
    /// is the discrete partition.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut blocks = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('{')
                .and_then(|r| r.split_once('}'))
                .ok_or_else(|| Error::Input(format!("malformed partition {text:?}")))?;
            let block = body
                .0
                .split(',')
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::Input(format!("bad element {t:?} in {text:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
            rest = body.1;
        }
        SetPartition::from_blocks(n, blocks)
    }
}

/// Separation test for polydiagonals, combinatorial whenever the tangent sums are
/// partition subspaces, with an exact rank computation otherwise.
pub fn partition_separation(u: &SetPartition, v: &SetPartition, b: &SetPartition) -> Result<PartitionSeparation> {
    if !u.join(v).is_coarser_or_eq(b) {
        return Err(Error::Geometry("separation_test: U ∩ V is not inside B".into()));
    }
    if u.is_coarser_or_eq(b) || v.is_coarser_or_eq(b) {
        return Err(Error::Geometry("separation_test: U or V lies inside B".into()));
    }
    if let (Some(ub), Some(vb)) = (u.tangent_sum(b), v.tangent_sum(b)) {
        let cap = ub.join(&vb);
        return Ok(if &cap == b { PartitionSeparation::Separated } else { PartitionSeparation::Excess(Some(cap)) });
    }
    let outcome = separation_test(&u.tangent_subspace(), &v.tangent_subspace(), &b.tangent_subspace())?;
    Ok(match outcome {
        Separation::Separated => PartitionSeparation::Separated,
        Separation::Excess(_) => PartitionSeparation::Excess(None),
    })
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<&Vec<usize>> = self.blocks.iter().filter(|b| b.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "{{}}");
        }
        for b in nontrivial {
            let items: Vec<String> = b.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> SetPartition {
        SetPartition::parse(n, s).unwrap()
    }

    #[test]
    fn parse_display() {
        assert_eq!(p(4, "{2,1}{4,3}").to_string(), "{1,2}{3,4}");
        assert_eq!(p(3, "").to_string(), "{}");
        assert_eq!(p(3, "{1,2}").num_blocks(), 2);
        assert!(SetPartition::parse(3, "{1,1}").is_err());
        assert!(SetPartition::parse(3, "{4}").is_err());
        assert!(SetPartition::parse(3, "1,2").is_err());
    }

    #[test]
    fn lattice_ops() {
        let a = p(4, "{1,2}");
        let b = p(4, "{3,4}");
        let c = p(4, "{2,3}");
        assert_eq!(a.join(&b), p(4, "{1,2}{3,4}"));
        assert_eq!(a.join(&c), p(4, "{1,2,3}"));
        assert_eq!(a.meet(&c), SetPartition::discrete(4));
        assert_eq!(p(4, "{1,2,3}").meet(&p(4, "{2,3,4}")), p(4, "{2,3}"));
        assert!(p(4, "{1,2,3}").is_coarser_or_eq(&a));
        assert!(!a.is_coarser_or_eq(&c));
    }

    #[test]
    fn tangent_sum_modularity() {
        // {12}{34} + {13}{24}: dim 3, but the meet is discrete (dim 4)
        assert_eq!(p(4, "{1,2}{3,4}").tangent_sum(&p(4, "{1,3}{2,4}")), None);
        assert_eq!(p(3, "{1,2}").tangent_sum(&p(3, "{1,3}")), Some(SetPartition::discrete(3)));
        let t = p(4, "{1,2}{3,4}").tangent_subspace();
        assert_eq!(t.cone_dim(), 2);
    }

    #[test]
    fn separation_matches_linear_algebra() {
        let n = 4;
        let b = p(n, "{1,2,3,4}");
        let u = p(n, "{1,2,3}");
        let v = p(n, "{1,2}{3,4}");
        assert_eq!(partition_separation(&u, &v, &b).unwrap(), PartitionSeparation::Separated);
        let lin = separation_test(&u.tangent_subspace(), &v.tangent_subspace(), &b.tangent_subspace()).unwrap();
        assert_eq!(lin, Separation::Separated);
        assert!(partition_separation(&b, &u, &b).is_err());
    }
}

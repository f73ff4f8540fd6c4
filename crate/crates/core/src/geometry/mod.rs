//! Exact geometry backends: Gaussian-rational projective subspaces and set partitions.

pub mod gauss;
pub mod partition;
pub mod subspace;

pub use gauss::GaussRat;
pub use partition::{partition_separation, PartitionSeparation, SetPartition};
pub use subspace::{null_space, rank, rnc_points, rref, separation_test, span_points, ProjSubspace, Separation};

//! Finite permutation groups and σ-subnormality.
//!
//! Groups are enumerated in full; subgroups are bitsets over the parent's
//! element index. On top of that sit σ-partitions, residuals, the
//! σ-subnormality decision procedures and the join criteria.

pub mod elemset;
pub mod error;
pub mod group;
pub mod joins;
pub mod lattice;
pub mod perm;
pub mod primes;
pub mod residuals;
pub mod sigma;
pub mod subnormality;

pub use elemset::ElemSet;
pub use error::{GroupError, Result};
pub use group::{
    conjugacy_classes, derived_subgroup, group_from_generators, normal_closure, normal_core, normal_subgroups,
    prime_set, quotient, quotient_group, subgroup_from_indices, subgroup_generated, Caps, FiniteGroup, Quotient,
    Subgroup,
};
pub use joins::{is_orthogonal, join, permutes, permutizer, permutizer_in, PermutizerResult};
pub use lattice::{all_subgroups, SubgroupLattice};
pub use perm::Permutation;
pub use residuals::{
    block_residual, pi_residual, residual_outside, sigma_residual, sigma_soluble_residual, tau_residual, ResidualKind,
    ResidualReport,
};
pub use sigma::{
    is_block_group, is_sigma_nilpotent, is_sigma_primary, is_sigma_soluble, sigma_component, BlockId, SigmaPartition,
};
pub use subnormality::{
    is_sigma_embedded, is_sigma_normal, is_strictly_sigma_subnormal, is_subnormal, residual_subnormality_check,
    sigma_normal_step, sigma_subnormal_fast, sigma_subnormal_oracle, ChainViolation, EmbeddingWitness, SigmaChain,
    SigmaOracle, Step,
};

//! Computing with clones and relational clones on finite domains.
//!
//! Operations are full value tables and relations are finite tuple sets.
//! On top of these the crate provides clone closure, the `inv` and `pol`
//! maps at bounded arity, primitive-positive formulas and their
//! evaluation, a pp-definability decision, and generalized diagonal
//! relations built from ideals of the partition lattice.

pub mod algebra;
pub mod clone;
pub mod diagonal;
pub mod error;
pub mod galois;
pub mod limits;
pub mod partition;
pub mod pp;

pub use algebra::{
    compose, is_identifier, kernel_partition, make_projection, preserves, Domain, Operation, Relation, Value,
};
pub use clone::{clone_closure, clone_contains, essential_variables, gamma, EssentialSet, OperationSet};
pub use diagonal::{check_finitary_preservation, diagonal_relation, ideal_downset, DiagonalRelation, PartitionIdeal};
pub use error::{Error, Result};
pub use galois::{inv, invariant_closure, pol, RelationSet};
pub use limits::Limits;
pub use partition::{partition_lattice, Partition, PartitionLattice};
pub use pp::{
    eval_pp, is_pp_definable, parse_pp, parse_pp_file, pp_closure_of, pp_definability, Atom, Definability, PPFormula,
    RelationEnv,
};

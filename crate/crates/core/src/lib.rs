//! Causal structure from low-order conditional independencies.
//!
//! Given every statement `(a ⫫ b | Z)` with `|Z| ≤ k` over a set of variables,
//! [`run_loci`] computes the CPDAG representing all DAGs whose d-separations of
//! order at most `k` match the statements exactly (the k-faithful DAGs), and
//! [`decide_representable`] tells whether any such DAG exists.
//!
//! Modules:
//!
//! - [`graph`]: the partially directed graph type and structural queries
//! - [`dsep`]: d-separation, fast and by path enumeration
//! - [`ci`]: statement sets and their generation from a DAG
//! - [`loci`]: the three-stage construction and the incompatibility predicate
//! - [`meek`]: orientation rules, consistent extensions, CPDAG checks
//! - [`faithful`]: brute-force ground truth and the marginal-independence algorithm
//! - [`experiment`]: the random-DAG study
//! - [`io`]: text formats

pub mod ci;
pub mod dsep;
pub mod error;
pub mod experiment;
pub mod faithful;
pub mod graph;
pub mod io;
pub mod loci;
pub mod meek;

pub use ci::{CISet, CIStatement};
pub use dsep::{d_separated, d_separated_bruteforce, SeparationQuery, Separator};
pub use error::{Error, Result};
pub use faithful::{
    boundary_algorithm_k0, brute_force_representation, check_k0_equivalence,
    decide_representable, enumerate_faithful, is_k_faithful, DagCatalog, FaithfulFamily,
};
pub use graph::{EdgeKind, Graph, VStructure, Vertex, VertexNames};
pub use loci::{incompatible, k_partial_graph, run_loci, run_loci_traced, stage2_remove, Representation};
pub use meek::{consistent_extension, cpdag_of, is_cpdag, meek_closure};

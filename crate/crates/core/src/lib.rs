//! Longest-path statistics of digraphs, digraph compositions, and
//! constructive path-partition certificates.
//!
//! The crate is organized around four layers:
//!
//! * [`Digraph`] / [`CompositionSpec`]: immutable instances, the
//!   composition builder, structural predicates, text/JSON formats
//!   ([`textio`]) and deterministic generators ([`gen`]).
//! * [`solver`]: exact lambda_k computation (maximum k-path
//!   subdigraphs) with three independent routes, maximum-system
//!   enumeration, per-part coverage tables, and the acyclic path
//!   signature.
//! * [`partition`]: partition verification, the exhaustive bipartition
//!   sweep, the acyclic and semicomplete constructions with their
//!   traces, and per-q certificates.
//! * [`samples`]: small shared reference instances.
//!
//! All operations are pure functions of immutable inputs and safe to
//! call concurrently; exponential-time entry points are guarded by a
//! [`Budget`].
//!
//! ```
//! use ppl_core::{lambda_profile, verify_partition, Budget, Digraph, Partition};
//!
//! let budget = Budget::default();
//! // 0 -> 1 -> 2 plus the chord 0 -> 2.
//! let d = Digraph::new(3, [(0, 1), (1, 2), (0, 2)])?;
//! assert_eq!(lambda_profile(&d, &budget)?.values(), &[3, 3, 3]);
//!
//! // {1} vs {0, 2} splits the longest path at q = 1.
//! let p = Partition::new(vec![1], vec![0, 2], 1);
//! assert!(verify_partition(&d, &p, &budget)?.bny_holds());
//! # Ok::<(), ppl_core::Error>(())
//! ```

mod budget;
mod compose;
mod digraph;
mod error;

pub mod gen;
pub mod partition;
pub mod samples;
pub mod solver;
pub mod textio;

pub use budget::Budget;
pub use compose::{BuiltComposition, CompositionSpec, VertexLabel};
pub use digraph::Digraph;
pub use error::{Error, Result};
pub use partition::{
    bny_partition_bruteforce, check_bny, check_bny_composition, check_ppc,
    partition_acyclic_composition, partition_semicomplete_composition, ppc_partition_bruteforce,
    verify_partition, BnyCertificate, CaseTrace, CompositionCertificate, CompositionStrategy,
    Partition, PartitionVerdict, PropertyKind,
};
pub use solver::{
    acyclic_signature, coverage_profile, enumerate_maximum_k_path_subdigraphs, lambda_profile,
    max_k_path_subdigraph, visit_maximum_k_path_subdigraphs, AcyclicPartSignature, CoverageProfile,
    LambdaProfile, PathSystem,
};

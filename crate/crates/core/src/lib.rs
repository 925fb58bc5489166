//! srglab: codegree statistics of dense graphs at desk scale.
//!
//! The crate bundles:
//!
//! - [`graph`]: dense bitset graphs with degree/codegree/density primitives;
//! - [`srg`]: strongly regular graph generators, an exhaustive verifier,
//!   exact parameter algebra, and eigenvalue feasibility;
//! - [`regularity`]: uniform-pair testing (certificate + randomized
//!   falsifier), heuristic equitable partitions, and partition condition
//!   verification;
//! - [`counting`]: exhaustive checks of codegree tail and codegree sum
//!   bounds over uniform pairs;
//! - [`asymptotics`]: limit algebra for parameter sequences and exact
//!   deviation sweeps over the generator families;
//! - [`io`]: the edge-list interchange format.
//!
//! All randomized procedures take explicit seeds and are bit-reproducible;
//! everything measured is carried in exact rational arithmetic.

pub mod asymptotics;
pub mod counting;
pub mod graph;
pub mod instances;
pub mod io;
pub mod ratio;
pub mod regularity;
pub mod srg;
mod util;

pub use graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
pub use ratio::Rat;
pub use srg::{
    disjoint_cliques, lattice, paley, triangular, verify_srg, Family, FamilyError, FamilySpec,
    SrgParams, SrgVerdict,
};

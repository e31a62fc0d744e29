//! Linear programming relaxations of binary polynomial optimization problems
//! over hypergraph-encoded multilinear sets.
//!
//! The crate builds and compares four relaxations of the multilinear set
//! `{ z in {0,1}^{V+E} : z_e = prod_{v in e} z_v }`:
//!
//! * the standard linearization ([`cuts::standard_linearization`]),
//! * the flower relaxation ([`cuts::enumerate_flower`]),
//! * the extended flower relaxation, with its separation routine
//!   ([`cuts::separate_extended_flower`]),
//! * recursive McCormick relaxations for any recursive decomposition
//!   ([`rmc::build_rmc`]), together with their projection onto the original
//!   variables ([`rmc::rmc_projection_system`]).
//!
//! Bounds come from the small dense simplex solver in [`lp`], which also
//! hosts Fourier-Motzkin elimination and exact enumeration used as
//! verification oracles.

pub mod cuts;
mod error;
mod hypergraph;
mod instance;
pub mod lp;
pub mod rmc;
mod vset;

pub use cuts::{FractionalPoint, LinearInequality, Tag};
pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use instance::{generate_random, Constraint, Linearization, PolynomialInstance, Term};
pub use lp::{LpModel, LpSolution, LpStatus};
pub use rmc::{PartitionMap, RecursiveMcCormick, Strategy};
pub use vset::{VarKind, VarRef, VertexSet};

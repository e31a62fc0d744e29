//! Valid inequalities for multilinear sets: the standard linearization,
//! flower and extended flower inequalities, their separation, and a
//! brute-force validity oracle.

mod flower;
mod inequality;
mod point;
mod separation;
mod standard;
mod validity;

pub use flower::{
    enumerate_extended_flower, enumerate_flower, extended_flower_inequality, flower_inequality, flower_template,
    gammas, reduce_neighbors, FlowerFamily, DEFAULT_CANDIDATE_CAP,
};
pub use inequality::{dedup_inequalities, LinearInequality, Meta, ProjFamily, Tag, Witness};
pub use point::FractionalPoint;
pub use separation::{
    brute_force_separation, pruned_neighbors, separate, separate_extended_flower, SeparatedCut,
};
pub use standard::{standard_linearization, vertex_box_rows};
pub use validity::{validity_check, MAX_VALIDITY_VERTICES};

//! The numerical engine: a dense simplex solver for small boxed LPs, the
//! cutting-plane driver and relaxation builders, Fourier-Motzkin
//! elimination, and exact enumeration of binary optima.

mod exact;
mod fm;
mod model;
mod relax;
mod simplex;

pub use exact::{brute_force_optimum, ExactOptimum, MAX_EXACT_VERTICES};
pub use fm::{eliminate_all, fourier_motzkin_eliminate, fourier_motzkin_eliminate_with, DEFAULT_FM_GUARD};
pub use model::{LpModel, LpSolution, LpStatus, SolveOptions};
pub use relax::{
    candidate_estimate, cutting_plane_loop, relaxation_bound, relaxation_bound_lin, CutMode, LoopOutcome, Method,
    RelaxOptions, RelaxationResult, RmcSpec,
};

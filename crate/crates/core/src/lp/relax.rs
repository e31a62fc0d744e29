use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::cuts::{
    enumerate_extended_flower, enumerate_flower, separate, standard_linearization, FlowerFamily, FractionalPoint,
    SeparatedCut, DEFAULT_CANDIDATE_CAP,
};
use crate::error::Result;
use crate::hypergraph::Hypergraph;
use crate::instance::{Linearization, PolynomialInstance};
use crate::lp::model::{LpModel, LpSolution, SolveOptions};
use crate::rmc::{build_rmc, min_size_rmc, rmc_constraints, PartitionMap, RecursiveMcCormick, Strategy, DEFAULT_SEARCH_BUDGET};
use crate::vset::VarRef;

/// Which recursive McCormick relaxation to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RmcSpec {
    Leftmost,
    Balanced,
    MinSize,
    Explicit(PartitionMap),
}

impl RmcSpec {
    pub fn build(&self, h: &Hypergraph) -> Result<RecursiveMcCormick> {
        match self {
            RmcSpec::Leftmost => build_rmc(h, &Strategy::Leftmost),
            RmcSpec::Balanced => build_rmc(h, &Strategy::Balanced),
            RmcSpec::MinSize => {
                let found = min_size_rmc(h, DEFAULT_SEARCH_BUDGET)?;
                if !found.optimal {
                    log::warn!("minimum-size search stopped after {} nodes; using best RMC found", found.nodes);
                }
                Ok(found.rmc)
            }
            RmcSpec::Explicit(map) => build_rmc(h, &Strategy::Explicit(map.clone())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Method {
    Std,
    Flower,
    ExtendedFlower,
    Rmc(RmcSpec),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Std => write!(f, "std"),
            Method::Flower => write!(f, "flower"),
            Method::ExtendedFlower => write!(f, "eflower"),
            Method::Rmc(RmcSpec::Leftmost) => write!(f, "rmc:leftmost"),
            Method::Rmc(RmcSpec::Balanced) => write!(f, "rmc:balanced"),
            Method::Rmc(RmcSpec::MinSize) => write!(f, "rmc:minsize"),
            Method::Rmc(RmcSpec::Explicit(_)) => write!(f, "rmc:explicit"),
        }
    }
}

/// How flower-type families are added to the LP.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CutMode {
    /// Enumerate when the candidate estimate is small, else separate.
    #[default]
    Auto,
    Enumerate,
    Separate,
}

#[derive(Clone, Debug)]
pub struct RelaxOptions {
    /// Minimum violation for a separated cut to be added.
    pub tol: f64,
    pub max_rounds: usize,
    pub cut_mode: CutMode,
    /// Below this candidate estimate `Auto` enumerates.
    pub enumerate_below: usize,
    pub solver: SolveOptions,
}

impl Default for RelaxOptions {
    fn default() -> Self {
        RelaxOptions {
            tol: 1e-6,
            max_rounds: 100,
            cut_mode: CutMode::Auto,
            enumerate_below: 10_000,
            solver: SolveOptions::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RelaxationResult {
    pub bound: f64,
    pub n_vars: usize,
    /// Rows of the final LP, not counting variable bounds.
    pub n_ineqs: usize,
    /// Separation rounds that added cuts.
    pub rounds: usize,
    pub cuts_added: usize,
    /// False when the round limit stopped the loop.
    pub converged: bool,
    pub point: BTreeMap<VarRef, f64>,
}

/// Outcome of [`cutting_plane_loop`].
#[derive(Clone, Debug)]
pub struct LoopOutcome {
    pub model: LpModel,
    pub solution: LpSolution,
    pub bound: f64,
    pub cuts_added: usize,
    pub rounds: usize,
    pub converged: bool,
    /// Bound after each solve, starting with the base model.
    pub history: Vec<f64>,
}

/// Solve, separate at the optimum, add what is violated, repeat.
///
/// Stops when the separator returns nothing new or after `max_rounds`
/// rounds of added cuts. A cut already in the model is never re-added, so a
/// separator that keeps reporting it ends the loop instead of spinning.
pub fn cutting_plane_loop<F>(
    mut model: LpModel,
    mut separator: F,
    max_rounds: usize,
    solver: &SolveOptions,
) -> Result<LoopOutcome>
where
    F: FnMut(&BTreeMap<VarRef, f64>) -> Result<Vec<SeparatedCut>>,
{
    let mut present: HashSet<String> = model.inequalities().iter().map(|i| i.canonical_key()).collect();
    let mut history = Vec::new();
    let mut cuts_added = 0;
    let mut rounds = 0;
    loop {
        let solution = model.solve_with(solver);
        let bound = solution.bound()?;
        if let Some(&last) = history.last() {
            if bound > last + 1e-9 {
                log::warn!("bound rose from {last} to {bound} after adding cuts");
            }
        }
        history.push(bound);
        let fresh: Vec<_> = separator(&solution.point)?
            .into_iter()
            .filter(|c| present.insert(c.inequality.canonical_key()))
            .collect();
        if fresh.is_empty() {
            return Ok(LoopOutcome { model, solution, bound, cuts_added, rounds, converged: true, history });
        }
        if rounds == max_rounds {
            log::warn!("cutting-plane loop stopped at the round limit of {max_rounds}");
            return Ok(LoopOutcome { model, solution, bound, cuts_added, rounds, converged: false, history });
        }
        log::debug!("round {}: bound {bound}, adding {} cuts", rounds + 1, fresh.len());
        cuts_added += fresh.len();
        rounds += 1;
        model.extend(fresh.into_iter().map(|c| c.inequality))?;
    }
}

/// Upper bound on the number of neighbor sets a flower enumeration visits.
pub fn candidate_estimate(h: &Hypergraph) -> Result<usize> {
    let mut total = 0usize;
    for e0 in h.edges() {
        let k = h.adjacent_edges(e0)?.iter().filter(|e| e.intersection(e0).len() >= 2).count();
        let mut binom = 1usize;
        for i in 1..=(e0.len() / 2).min(k) {
            binom = binom.saturating_mul(k + 1 - i) / i;
            total = total.saturating_add(binom);
        }
    }
    Ok(total)
}

fn base_model(lin: &Linearization, variables: Vec<VarRef>, rows: Vec<crate::cuts::LinearInequality>) -> Result<LpModel> {
    let mut m = LpModel::new(variables);
    m.extend(rows)?;
    m.extend(lin.constraints.iter().cloned())?;
    m.set_objective(lin.objective.clone())?;
    Ok(m)
}

fn clamp_point(h: &Hypergraph, z: &BTreeMap<VarRef, f64>) -> FractionalPoint {
    FractionalPoint::new(h.variables().into_iter().map(|v| {
        let x = z.get(&v).copied().unwrap_or(0.0).clamp(0.0, 1.0);
        (v, x)
    }).collect())
}

fn finish(model: &LpModel, solution: LpSolution, rounds: usize, cuts_added: usize, converged: bool) -> Result<RelaxationResult> {
    Ok(RelaxationResult {
        bound: solution.bound()?,
        n_vars: model.variables().len(),
        n_ineqs: model.inequalities().len(),
        rounds,
        cuts_added,
        converged,
        point: solution.point,
    })
}

/// Bound of one relaxation on an already linearized instance.
pub fn relaxation_bound_lin(lin: &Linearization, method: &Method, opts: &RelaxOptions) -> Result<RelaxationResult> {
    let h = &lin.hypergraph;
    match method {
        Method::Std => {
            let m = base_model(lin, h.variables(), standard_linearization(h))?;
            let s = m.solve_with(&opts.solver);
            finish(&m, s, 0, 0, true)
        }
        Method::Rmc(spec) => {
            let r = spec.build(h)?;
            let m = base_model(lin, r.variables(), rmc_constraints(&r))?;
            let s = m.solve_with(&opts.solver);
            finish(&m, s, 0, 0, true)
        }
        Method::Flower | Method::ExtendedFlower => {
            let family = if *method == Method::Flower { FlowerFamily::Flower } else { FlowerFamily::Extended };
            let enumerate = match opts.cut_mode {
                CutMode::Enumerate => true,
                CutMode::Separate => false,
                CutMode::Auto => candidate_estimate(h)? < opts.enumerate_below,
            };
            let mut m = base_model(lin, h.variables(), standard_linearization(h))?;
            if enumerate {
                let cuts = match family {
                    FlowerFamily::Flower => enumerate_flower(h, DEFAULT_CANDIDATE_CAP)?,
                    FlowerFamily::Extended => enumerate_extended_flower(h, DEFAULT_CANDIDATE_CAP)?,
                };
                let n = cuts.len();
                m.extend(cuts)?;
                let s = m.solve_with(&opts.solver);
                return finish(&m, s, 0, n, true);
            }
            let out = cutting_plane_loop(m, |z| separate(h, &clamp_point(h, z), opts.tol, family), opts.max_rounds, &opts.solver)?;
            finish(&out.model, out.solution, out.rounds, out.cuts_added, out.converged)
        }
    }
}

/// Linearizes `instance` and computes the bound of `method`.
pub fn relaxation_bound(instance: &PolynomialInstance, method: &Method, opts: &RelaxOptions) -> Result<RelaxationResult> {
    relaxation_bound_lin(&instance.to_hypergraph(), method, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::separate_extended_flower;
    use crate::rmc::enumerate_rmcs;
    use crate::rmc::tests::{r1_map, r2_map, shared13_map};

    fn example1() -> PolynomialInstance {
        PolynomialInstance::parse(
            r#"{"n":4,"objective":[{"vars":[1,2,3],"coef":-1},{"vars":[2,3,4],"coef":1},{"vars":[1,3,4],"coef":1}]}"#,
        )
        .unwrap()
    }

    fn bound(m: Method) -> f64 {
        relaxation_bound(&example1(), &m, &RelaxOptions::default()).unwrap().bound
    }

    #[test]
    fn example1_golden_bounds() {
        assert!((bound(Method::Std) - 4.0 / 3.0).abs() < 1e-9);
        assert!((bound(Method::Flower) - 1.0).abs() < 1e-9);
        assert!((bound(Method::ExtendedFlower) - 1.0).abs() < 1e-9);
        assert!((bound(Method::Rmc(RmcSpec::Explicit(r1_map()))) - 4.0 / 3.0).abs() < 1e-9);
        assert!((bound(Method::Rmc(RmcSpec::Explicit(shared13_map()))) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn example1_rmc_landscape() {
        // Sharing 34 between the two positive terms does not help: the
        // literal second sequence stays at 4/3.
        assert!((bound(Method::Rmc(RmcSpec::Explicit(r2_map()))) - 4.0 / 3.0).abs() < 1e-9);
        let lin = example1().to_hypergraph();
        let best = enumerate_rmcs(&lin.hypergraph, 100)
            .unwrap()
            .iter()
            .map(|r| {
                let m = base_model(&lin, r.variables(), rmc_constraints(r)).unwrap();
                m.solve().value
            })
            .fold(f64::INFINITY, f64::min);
        assert!((best - 1.0).abs() < 1e-9);
        assert!((bound(Method::Rmc(RmcSpec::MinSize)) - 4.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn example1_eflower_loop_adds_cuts() {
        let opts = RelaxOptions { cut_mode: CutMode::Separate, ..RelaxOptions::default() };
        let r = relaxation_bound(&example1(), &Method::ExtendedFlower, &opts).unwrap();
        assert!((r.bound - 1.0).abs() < 1e-9);
        assert!(r.cuts_added >= 1 && r.rounds >= 1 && r.converged);
    }

    #[test]
    fn cut_free_base_takes_no_rounds() {
        let lin = example1().to_hypergraph();
        let h = &lin.hypergraph;
        let mut m = LpModel::new(h.variables());
        m.extend(standard_linearization(h)).unwrap();
        m.extend(enumerate_extended_flower(h, DEFAULT_CANDIDATE_CAP).unwrap()).unwrap();
        m.set_objective(lin.objective.clone()).unwrap();
        let base = m.solve().value;
        let out = cutting_plane_loop(m, |z| separate_extended_flower(h, &clamp_point(h, z), 1e-6), 100, &SolveOptions::default())
            .unwrap();
        assert_eq!(out.rounds, 0);
        assert_eq!(out.bound, base);
    }

    #[test]
    fn round_limit_is_flagged() {
        let opts = RelaxOptions { cut_mode: CutMode::Separate, max_rounds: 0, ..RelaxOptions::default() };
        let r = relaxation_bound(&example1(), &Method::ExtendedFlower, &opts).unwrap();
        assert!(!r.converged);
        assert!((r.bound - 4.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn estimate_counts_neighbor_sets() {
        let lin = example1().to_hypergraph();
        // each center has two candidates and room for one neighbor
        assert_eq!(candidate_estimate(&lin.hypergraph).unwrap(), 6);
    }
}

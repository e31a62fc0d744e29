use std::collections::{BTreeMap, HashMap};

use crate::cuts::LinearInequality;
use crate::error::{Error, Result};
use crate::lp::simplex;
use crate::vset::VarRef;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    IterationLimit,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub max_pivots: usize,
    /// Consecutive degenerate pivots after which Bland's rule takes over.
    pub bland_after: usize,
    /// Feasibility tolerance reported on the returned point.
    pub feas_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_pivots: 100_000, bland_after: 1000, feas_tol: 1e-9 }
    }
}

/// `max objective · z  s.t.  inequalities, lo <= z <= hi`.
#[derive(Clone, Debug, Default)]
pub struct LpModel {
    variables: Vec<VarRef>,
    index: HashMap<VarRef, usize>,
    bounds: Vec<(f64, f64)>,
    inequalities: Vec<LinearInequality>,
    objective: BTreeMap<VarRef, f64>,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: f64,
    pub point: BTreeMap<VarRef, f64>,
    pub pivots: usize,
    /// Largest `lhs - rhs` over rows and bounds at `point`.
    pub max_violation: f64,
}

impl LpSolution {
    /// The optimal value, or the matching error for any other status.
    pub fn bound(&self) -> Result<f64> {
        match self.status {
            LpStatus::Optimal => Ok(self.value),
            LpStatus::Infeasible => Err(Error::Infeasible),
            LpStatus::IterationLimit | LpStatus::Unbounded => Err(Error::IterationLimit(self.pivots)),
        }
    }
}

impl LpModel {
    /// A model over `variables`, each bounded to `[0, 1]`.
    pub fn new(variables: impl IntoIterator<Item = VarRef>) -> Self {
        let mut m = LpModel::default();
        for v in variables {
            if !m.index.contains_key(&v) {
                m.index.insert(v.clone(), m.variables.len());
                m.variables.push(v);
                m.bounds.push((0.0, 1.0));
            }
        }
        m
    }

    pub fn variables(&self) -> &[VarRef] {
        &self.variables
    }

    pub fn inequalities(&self) -> &[LinearInequality] {
        &self.inequalities
    }

    pub fn objective(&self) -> &BTreeMap<VarRef, f64> {
        &self.objective
    }

    pub fn bounds(&self, v: &VarRef) -> Option<(f64, f64)> {
        self.index.get(v).map(|&i| self.bounds[i])
    }

    fn check(&self, v: &VarRef) -> Result<usize> {
        self.index.get(v).copied().ok_or_else(|| Error::UndeclaredVariable(v.clone()))
    }

    pub fn set_bounds(&mut self, v: &VarRef, lo: f64, hi: f64) -> Result<()> {
        let i = self.check(v)?;
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Malformed(format!("non-finite bounds for {v}")));
        }
        self.bounds[i] = (lo, hi);
        Ok(())
    }

    pub fn add(&mut self, ineq: LinearInequality) -> Result<()> {
        for v in ineq.vars() {
            self.check(v)?;
        }
        self.inequalities.push(ineq);
        Ok(())
    }

    pub fn extend(&mut self, ineqs: impl IntoIterator<Item = LinearInequality>) -> Result<()> {
        for i in ineqs {
            self.add(i)?;
        }
        Ok(())
    }

    pub fn set_objective(&mut self, objective: BTreeMap<VarRef, f64>) -> Result<()> {
        for v in objective.keys() {
            self.check(v)?;
        }
        self.objective = objective;
        Ok(())
    }

    pub fn solve(&self) -> LpSolution {
        self.solve_with(&SolveOptions::default())
    }

    pub fn solve_with(&self, opts: &SolveOptions) -> LpSolution {
        let n = self.variables.len();
        let rows: Vec<(Vec<(usize, f64)>, f64)> = self
            .inequalities
            .iter()
            .map(|i| (i.coeffs().iter().map(|(v, c)| (self.index[v], *c)).collect(), i.rhs()))
            .collect();
        let mut c = vec![0.0; n];
        for (v, x) in &self.objective {
            c[self.index[v]] += x;
        }
        let out = simplex::solve(&c, &self.bounds, &rows, opts);
        let point: BTreeMap<VarRef, f64> =
            self.variables.iter().cloned().zip(out.x.iter().copied()).collect();
        let value = c.iter().zip(&out.x).map(|(a, b)| a * b).sum();
        let max_violation = if out.status == LpStatus::Optimal { self.max_violation(&out.x) } else { f64::NAN };
        if max_violation > opts.feas_tol {
            log::debug!("simplex point violates the model by {max_violation:e}");
        }
        LpSolution { status: out.status, value, point, pivots: out.pivots, max_violation }
    }

    fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for (i, &(lo, hi)) in self.bounds.iter().enumerate() {
            worst = worst.max(lo - x[i]).max(x[i] - hi);
        }
        for ineq in &self.inequalities {
            let lhs: f64 = ineq.coeffs().iter().map(|(v, c)| c * x[self.index[v]]).sum();
            worst = worst.max(lhs - ineq.rhs());
        }
        worst
    }
}

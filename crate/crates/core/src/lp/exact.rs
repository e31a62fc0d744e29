use crate::error::{Error, Result};
use crate::instance::{PolynomialInstance, Term};

pub const MAX_EXACT_VERTICES: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct ExactOptimum {
    pub value: f64,
    /// `argmax[v - 1]` is the value of vertex `v`.
    pub argmax: Vec<bool>,
}

fn masks(terms: &[Term]) -> Vec<(u32, f64)> {
    terms
        .iter()
        .map(|t| (t.vars.iter().fold(0u32, |m, v| m | 1 << (v - 1)), t.coef))
        .collect()
}

fn eval(terms: &[(u32, f64)], x: u32) -> f64 {
    terms.iter().filter(|(m, _)| x & m == *m).map(|(_, c)| c).sum()
}

/// Maximum of the instance over feasible binary points, by enumeration.
/// Ties go to the point with the smallest bitmask.
pub fn brute_force_optimum(instance: &PolynomialInstance) -> Result<ExactOptimum> {
    let n = instance.n();
    if n > MAX_EXACT_VERTICES {
        return Err(Error::GuardExceeded(format!("{n} vertices exceed the exact limit of {MAX_EXACT_VERTICES}")));
    }
    let objective = masks(instance.objective());
    let constraints: Vec<(Vec<(u32, f64)>, f64)> =
        instance.constraints().iter().map(|c| (masks(&c.terms), c.rhs)).collect();
    let mut best: Option<(f64, u32)> = None;
    for x in 0u32..(1u32 << n) {
        if constraints.iter().any(|(t, rhs)| eval(t, x) > rhs + 1e-9) {
            continue;
        }
        let val = eval(&objective, x);
        if best.is_none_or(|(b, _)| val > b) {
            best = Some((val, x));
        }
    }
    let (value, x) = best.ok_or(Error::InfeasibleInstance)?;
    Ok(ExactOptimum { value, argmax: (0..n).map(|i| x >> i & 1 == 1).collect() })
}

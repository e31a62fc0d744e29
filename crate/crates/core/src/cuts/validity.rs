use std::collections::BTreeSet;

use crate::cuts::LinearInequality;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Largest number of distinct vertices an inequality may touch.
pub const MAX_VALIDITY_VERTICES: usize = 20;

/// True iff every binary `x`, extended by `z_S = prod_{v in S} x_v`, satisfies
/// `ineq` (within 1e-9). Vertices outside the inequality's support do not
/// affect it, so only the support is enumerated.
pub fn validity_check(h: &Hypergraph, ineq: &LinearInequality) -> Result<bool> {
    let support: BTreeSet<u32> = ineq.vars().flat_map(|v| v.vertices().iter()).collect();
    if let Some(&v) = support.iter().find(|&&v| v as usize > h.n()) {
        return Err(Error::VertexOutOfRange { vertex: v as i64, n: h.n() });
    }
    if support.len() > MAX_VALIDITY_VERTICES {
        return Err(Error::GuardExceeded(format!("{} vertices in validity check", support.len())));
    }
    let index: Vec<u32> = support.into_iter().collect();
    let terms: Vec<(u32, f64)> = ineq
        .coeffs()
        .iter()
        .map(|(v, &c)| {
            let mask = v.vertices().iter().fold(0u32, |m, x| m | 1 << index.binary_search(&x).unwrap());
            (mask, c)
        })
        .collect();
    let rhs = ineq.rhs() + 1e-9;
    Ok((0u32..1 << index.len()).all(|x| {
        let lhs: f64 = terms.iter().filter(|(m, _)| x & m == *m).map(|(_, c)| c).sum();
        lhs <= rhs
    }))
}

use std::collections::HashSet;

use crate::cuts::{LinearInequality, Tag};
use crate::error::{Error, Result};
use crate::vset::VarRef;

pub const DEFAULT_FM_GUARD: usize = 10_000;

const COEF_EPS: f64 = 1e-12;

/// Projects `v` out of `system` with the default output guard.
pub fn fourier_motzkin_eliminate(system: &[LinearInequality], v: &VarRef) -> Result<Vec<LinearInequality>> {
    fourier_motzkin_eliminate_with(system, v, DEFAULT_FM_GUARD)
}

/// Exact projection of `system` along `v`.
///
/// Rows without `v` pass through. Every (positive, negative) pair is combined
/// with weights `1/|a|`. Variable-free rows that hold are dropped; ones that
/// fail are kept so infeasibility survives the projection. Duplicates are
/// removed by canonical form only.
pub fn fourier_motzkin_eliminate_with(
    system: &[LinearInequality],
    v: &VarRef,
    guard: usize,
) -> Result<Vec<LinearInequality>> {
    let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for row in system {
        let a = row.coeff(v);
        if a > 0.0 {
            pos.push(row);
        } else if a < 0.0 {
            neg.push(row);
        } else {
            rest.push(row.clone());
        }
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |row: LinearInequality, out: &mut Vec<LinearInequality>| {
        if row.is_trivial() && row.rhs() >= -COEF_EPS {
            return;
        }
        if seen.insert(row.canonical_key()) {
            out.push(row);
        }
    };
    for row in rest {
        push(row, &mut out);
    }
    for p in &pos {
        let wp = 1.0 / p.coeff(v);
        for q in &neg {
            let wq = -1.0 / q.coeff(v);
            let terms = p
                .coeffs()
                .iter()
                .map(|(x, c)| (x.clone(), c * wp))
                .chain(q.coeffs().iter().map(|(x, c)| (x.clone(), c * wq)))
                .filter(|(x, _)| x != v);
            let mut row = LinearInequality::new(terms, p.rhs() * wp + q.rhs() * wq, Tag::Eliminated);
            row = LinearInequality::new(
                row.coeffs().iter().filter(|(_, c)| c.abs() > COEF_EPS).map(|(x, c)| (x.clone(), *c)),
                row.rhs(),
                Tag::Eliminated,
            );
            push(row, &mut out);
            if out.len() > guard {
                return Err(Error::GuardExceeded(format!("elimination output exceeds {guard} rows")));
            }
        }
    }
    Ok(out)
}

/// Eliminates each variable of `vars` in turn.
pub fn eliminate_all(system: &[LinearInequality], vars: impl IntoIterator<Item = VarRef>) -> Result<Vec<LinearInequality>> {
    let mut cur = system.to_vec();
    for v in vars {
        cur = fourier_motzkin_eliminate(&cur, &v)?;
    }
    Ok(cur)
}

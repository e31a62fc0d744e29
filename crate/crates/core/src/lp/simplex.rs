//! Dense two-phase primal simplex on
//! `max c·x, A x <= b, lo <= x <= hi`.
//!
//! Bounds are shifted to `0 <= x' <= hi - lo` and the upper bounds become
//! explicit rows, so every row gets a slack. Rows with a negative right-hand
//! side are negated and receive an artificial column for phase one.

use super::model::{LpStatus, SolveOptions};

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;
const ZERO: f64 = 1e-13;

pub(super) struct Outcome {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub pivots: usize,
}

struct Tableau {
    width: usize,
    rows: usize,
    data: Vec<f64>,
    obj: Vec<f64>,
    basis: Vec<usize>,
    /// Columns that may never enter the basis.
    banned: Vec<bool>,
    pivots: usize,
    degenerate_run: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Limit,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width - 1)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width;
        let p = self.at(r, c);
        for k in 0..w {
            self.data[r * w + k] /= p;
        }
        self.data[r * w + c] = 1.0;
        let pivot_row: Vec<f64> = self.data[r * w..(r + 1) * w].to_vec();
        let nz: Vec<usize> = (0..w).filter(|&k| pivot_row[k] != 0.0).collect();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.data[i * w + c];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.data[i * w..(i + 1) * w];
            for &k in &nz {
                row[k] -= f * pivot_row[k];
                if row[k].abs() < ZERO {
                    row[k] = 0.0;
                }
            }
            row[c] = 0.0;
        }
        let f = self.obj[c];
        if f != 0.0 {
            for &k in &nz {
                self.obj[k] -= f * pivot_row[k];
                if self.obj[k].abs() < ZERO {
                    self.obj[k] = 0.0;
                }
            }
            self.obj[c] = 0.0;
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.width - 1 {
            if self.banned[j] || self.obj[j] >= -COST_TOL {
                continue;
            }
            if bland {
                return Some(j);
            }
            if best.is_none_or(|(_, d)| self.obj[j] < d) {
                best = Some((j, self.obj[j]));
            }
        }
        best.map(|(j, _)| j)
    }

    fn leaving(&self, c: usize, bland: bool) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.rows {
            let a = self.at(i, c);
            if a <= PIVOT_TOL {
                continue;
            }
            let ratio = self.rhs(i).max(0.0) / a;
            let better = match best {
                None => true,
                Some((b, r)) => {
                    if ratio < r - 1e-12 {
                        true
                    } else if ratio <= r + 1e-12 {
                        if bland {
                            self.basis[i] < self.basis[b]
                        } else {
                            a > self.at(b, c)
                        }
                    } else {
                        false
                    }
                }
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn run(&mut self, opts: &SolveOptions) -> Step {
        loop {
            let bland = self.degenerate_run >= opts.bland_after;
            let Some(c) = self.entering(bland) else {
                return Step::Optimal;
            };
            let Some(r) = self.leaving(c, bland) else {
                return Step::Unbounded;
            };
            if self.pivots >= opts.max_pivots {
                return Step::Limit;
            }
            if self.rhs(r) / self.at(r, c) <= 1e-12 {
                self.degenerate_run += 1;
            } else {
                self.degenerate_run = 0;
            }
            self.pivot(r, c);
        }
    }
}

pub(super) fn solve(
    c: &[f64],
    bounds: &[(f64, f64)],
    rows: &[(Vec<(usize, f64)>, f64)],
    opts: &SolveOptions,
) -> Outcome {
    let n = c.len();
    let lo: Vec<f64> = bounds.iter().map(|b| b.0).collect();
    let fail = |status| Outcome { status, x: lo.clone(), pivots: 0 };
    if bounds.iter().any(|&(l, h)| h < l - 1e-12) {
        return fail(LpStatus::Infeasible);
    }

    // Shifted rows, then one upper-bound row per column.
    let mut dense: Vec<(Vec<(usize, f64)>, f64)> = Vec::with_capacity(rows.len() + n);
    for (coefs, b) in rows {
        let shift: f64 = coefs.iter().map(|&(j, a)| a * lo[j]).sum();
        dense.push((coefs.clone(), b - shift));
    }
    for j in 0..n {
        dense.push((vec![(j, 1.0)], bounds[j].1 - lo[j]));
    }
    let m = dense.len();
    let n_art = dense.iter().filter(|r| r.1 < 0.0).count();
    let width = n + m + n_art + 1;
    let mut t = Tableau {
        width,
        rows: m,
        data: vec![0.0; m * width],
        obj: vec![0.0; width],
        basis: vec![0; m],
        banned: vec![false; width - 1],
        pivots: 0,
        degenerate_run: 0,
    };
    let mut art = n + m;
    for (i, (coefs, b)) in dense.iter().enumerate() {
        let sign = if *b < 0.0 { -1.0 } else { 1.0 };
        let row = &mut t.data[i * width..(i + 1) * width];
        for &(j, a) in coefs {
            row[j] += sign * a;
        }
        row[n + i] = sign;
        row[width - 1] = sign * b;
        if sign < 0.0 {
            row[art] = 1.0;
            t.basis[i] = art;
            art += 1;
        } else {
            t.basis[i] = n + i;
        }
    }

    if n_art > 0 {
        // Phase one: maximize minus the sum of artificials.
        for j in n + m..n + m + n_art {
            t.obj[j] = 1.0;
        }
        for i in 0..m {
            if t.basis[i] >= n + m {
                for k in 0..width {
                    t.obj[k] -= t.data[i * width + k];
                }
            }
        }
        match t.run(opts) {
            Step::Limit => return Outcome { pivots: t.pivots, ..fail(LpStatus::IterationLimit) },
            Step::Unbounded => return Outcome { pivots: t.pivots, ..fail(LpStatus::Unbounded) },
            Step::Optimal => {}
        }
        let residual = -t.obj[width - 1];
        let scale = 1.0 + dense.iter().fold(0.0f64, |s, r| s.max(r.1.abs()));
        if residual > opts.feas_tol * scale {
            log::debug!("phase one ends with residual {residual:e}");
            return Outcome { pivots: t.pivots, ..fail(LpStatus::Infeasible) };
        }
        // Drive artificials out of the basis where possible.
        for i in 0..m {
            if t.basis[i] < n + m {
                continue;
            }
            if let Some(j) = (0..n + m).find(|&j| t.at(i, j).abs() > PIVOT_TOL) {
                t.pivot(i, j);
            }
        }
        for j in n + m..n + m + n_art {
            t.banned[j] = true;
        }
    }

    // Phase two.
    t.obj.iter_mut().for_each(|x| *x = 0.0);
    for j in 0..n {
        t.obj[j] = -c[j];
    }
    for i in 0..m {
        let b = t.basis[i];
        let f = t.obj[b];
        if f != 0.0 {
            for k in 0..width {
                t.obj[k] -= f * t.data[i * width + k];
            }
            t.obj[b] = 0.0;
        }
    }
    t.degenerate_run = 0;
    let status = match t.run(opts) {
        Step::Optimal => LpStatus::Optimal,
        Step::Unbounded => LpStatus::Unbounded,
        Step::Limit => LpStatus::IterationLimit,
    };
    let mut x = lo.clone();
    for i in 0..m {
        let b = t.basis[i];
        if b < n {
            x[b] += t.rhs(i);
        }
    }
    for j in 0..n {
        x[j] = x[j].clamp(bounds[j].0, bounds[j].1);
    }
    Outcome { status, x, pivots: t.pivots }
}

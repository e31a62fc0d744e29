use std::fmt::Write as _;

use anyhow::bail;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct MethodRow {
    pub method: String,
    pub bound: f64,
    pub n_vars: usize,
    pub n_ineqs: usize,
    pub rounds: usize,
    pub ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub instance: String,
    pub rows: Vec<MethodRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
}

impl CompareReport {
    /// Sorts rows by method name and checks the dominance relations that
    /// hold between the methods present.
    pub fn new(instance: String, mut rows: Vec<MethodRow>, exact: Option<f64>, tol: f64) -> anyhow::Result<Self> {
        rows.sort_by(|a, b| a.method.cmp(&b.method));
        let report = CompareReport { instance, rows, exact };
        report.check_dominance(tol)?;
        Ok(report)
    }

    fn bound(&self, method: &str) -> Option<f64> {
        self.rows.iter().find(|r| r.method == method).map(|r| r.bound)
    }

    fn check_dominance(&self, tol: f64) -> anyhow::Result<()> {
        let mut pairs: Vec<(&str, f64, &str, f64)> = Vec::new();
        let (std, fl, ef) = (self.bound("std"), self.bound("flower"), self.bound("eflower"));
        if let (Some(a), Some(b)) = (ef, fl) {
            pairs.push(("eflower", a, "flower", b));
        }
        if let (Some(a), Some(b)) = (fl, std) {
            pairs.push(("flower", a, "std", b));
        }
        if let (Some(a), Some(b)) = (ef, std) {
            pairs.push(("eflower", a, "std", b));
        }
        if let Some(a) = ef {
            for r in self.rows.iter().filter(|r| r.method.starts_with("rmc:")) {
                pairs.push(("eflower", a, &r.method, r.bound));
            }
        }
        if let Some(x) = self.exact {
            for r in &self.rows {
                pairs.push(("exact", x, &r.method, r.bound));
            }
        }
        for (lo, a, hi, b) in pairs {
            if a > b + tol {
                bail!("dominance chain violated: {lo} = {a} exceeds {hi} = {b}");
            }
        }
        Ok(())
    }

    pub fn table(&self) -> String {
        let width = self.rows.iter().map(|r| r.method.len()).chain([6]).max().unwrap_or(6);
        let mut out = format!("{:<width$}  {:>12}  {:>6}  {:>7}  {:>6}  {:>10}\n", "method", "bound", "vars", "ineqs", "rounds", "ms");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<width$}  {:>12.6}  {:>6}  {:>7}  {:>6}  {:>10.3}",
                r.method, r.bound, r.n_vars, r.n_ineqs, r.rounds, r.ms
            );
        }
        if let Some(x) = self.exact {
            let _ = writeln!(out, "{:<width$}  {:>12.6}", "exact", x);
        }
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("method,bound,n_vars,n_ineqs,rounds,ms\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{},{},{}", r.method, r.bound, r.n_vars, r.n_ineqs, r.rounds, r.ms);
        }
        if let Some(x) = self.exact {
            let _ = writeln!(out, "exact,{x},,,,");
        }
        out
    }
}

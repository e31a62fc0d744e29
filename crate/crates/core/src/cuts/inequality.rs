use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vset::{VarRef, VertexSet};

/// Where an inequality came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Std,
    Flower,
    #[serde(rename = "eflower")]
    ExtendedFlower,
    Rmc,
    Projection,
    /// A linearized row of the instance's own constraints.
    Constraint,
    /// Dominating side inequality recorded by neighbor reduction.
    Side,
    /// Output of Fourier-Motzkin elimination.
    Eliminated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjFamily {
    Proj0,
    Proj1,
    Proj2,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub part: VertexSet,
    pub edge: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Meta {
    Flower {
        center: VertexSet,
        neighbors: Vec<VertexSet>,
    },
    Projection {
        family: ProjFamily,
        edge: Option<VertexSet>,
        parts: Vec<VertexSet>,
        witnesses: Vec<Witness>,
    },
}

/// A sparse inequality `sum coeffs[v] * z_v <= rhs`.
///
/// `>=` rows are stored negated; coefficients are never zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearInequality {
    coeffs: BTreeMap<VarRef, f64>,
    rhs: f64,
    pub tag: Tag,
    pub meta: Option<Meta>,
}

impl LinearInequality {
    /// Builds an inequality, summing repeated variables and dropping zeros.
    pub fn new<I>(terms: I, rhs: f64, tag: Tag) -> Self
    where
        I: IntoIterator<Item = (VarRef, f64)>,
    {
        let mut coeffs = BTreeMap::new();
        for (v, c) in terms {
            *coeffs.entry(v).or_insert(0.0) += c;
        }
        coeffs.retain(|_, c: &mut f64| *c != 0.0);
        LinearInequality { coeffs, rhs, tag, meta: None }
    }

    /// `z <= upper`.
    pub fn upper(var: VarRef, upper: f64, tag: Tag) -> Self {
        Self::new([(var, 1.0)], upper, tag)
    }

    /// `-z <= 0`.
    pub fn nonneg(var: VarRef, tag: Tag) -> Self {
        Self::new([(var, -1.0)], 0.0, tag)
    }

    /// `lhs - rhs_var <= 0`.
    pub fn le_var(lhs: VarRef, rhs_var: VarRef, tag: Tag) -> Self {
        Self::new([(lhs, 1.0), (rhs_var, -1.0)], 0.0, tag)
    }

    pub fn with_meta(mut self, meta: Meta) -> Self {
        self.meta = Some(meta);
        self
    }

    pub fn coeffs(&self) -> &BTreeMap<VarRef, f64> {
        &self.coeffs
    }

    pub fn coeff(&self, v: &VarRef) -> f64 {
        self.coeffs.get(v).copied().unwrap_or(0.0)
    }

    pub fn rhs(&self) -> f64 {
        self.rhs
    }

    pub fn vars(&self) -> impl Iterator<Item = &VarRef> {
        self.coeffs.keys()
    }

    pub fn lhs_with(&self, value: impl Fn(&VarRef) -> Option<f64>) -> Result<f64> {
        let mut s = 0.0;
        for (v, c) in &self.coeffs {
            let x = value(v).ok_or_else(|| Error::IncompletePoint(v.clone()))?;
            s += c * x;
        }
        Ok(s)
    }

    pub fn lhs(&self, point: &BTreeMap<VarRef, f64>) -> Result<f64> {
        self.lhs_with(|v| point.get(v).copied())
    }

    /// `lhs(point) - rhs`; positive means violated.
    pub fn violation(&self, point: &BTreeMap<VarRef, f64>) -> Result<f64> {
        Ok(self.lhs(point)? - self.rhs)
    }

    /// Same inequality with coefficients and rhs scaled so the largest
    /// absolute coefficient is 1.
    pub fn normalized(&self) -> Self {
        let scale = self.coeffs.values().fold(0.0f64, |m, c| m.max(c.abs()));
        if scale == 0.0 {
            return self.clone();
        }
        LinearInequality {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), c / scale)).collect(),
            rhs: self.rhs / scale,
            tag: self.tag,
            meta: self.meta.clone(),
        }
    }

    /// Scale-invariant textual key; equal keys mean the same halfspace.
    pub fn canonical_key(&self) -> String {
        let n = self.normalized();
        let mut key = String::new();
        for (v, c) in &n.coeffs {
            key.push_str(&format!("{}:{:.9};", v.vertices(), c));
        }
        key.push_str(&format!("<={:.9}", n.rhs + 0.0));
        key
    }

    /// `0 <= rhs` with no variables.
    pub fn is_trivial(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (v, c)) in self.coeffs.iter().enumerate() {
            match (i, *c < 0.0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if (mag - 1.0).abs() > 1e-12 {
                write!(f, "{mag} ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, " <= {}", self.rhs)
    }
}

/// Removes inequalities whose canonical key was already seen, keeping first occurrences.
pub fn dedup_inequalities(ineqs: Vec<LinearInequality>) -> Vec<LinearInequality> {
    let mut seen = std::collections::HashSet::new();
    ineqs.into_iter().filter(|i| seen.insert(i.canonical_key())).collect()
}

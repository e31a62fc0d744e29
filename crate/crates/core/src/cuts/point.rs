use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vset::{VarRef, VertexSet};

/// Values for (at least) every vertex and edge variable of a hypergraph.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FractionalPoint {
    values: BTreeMap<VarRef, f64>,
}

#[derive(Serialize, Deserialize)]
struct RawEdgeValue {
    vars: Vec<u32>,
    value: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    vertices: BTreeMap<String, f64>,
    #[serde(default)]
    edges: Vec<RawEdgeValue>,
}

impl FractionalPoint {
    pub fn new(values: BTreeMap<VarRef, f64>) -> Self {
        FractionalPoint { values }
    }

    pub fn values(&self) -> &BTreeMap<VarRef, f64> {
        &self.values
    }

    pub fn get(&self, v: &VarRef) -> Option<f64> {
        self.values.get(v).copied()
    }

    pub fn set(&mut self, v: VarRef, x: f64) {
        self.values.insert(v, x);
    }

    /// Errors with the first vertex or edge of `h` that has no value.
    pub fn require_complete(&self, h: &Hypergraph) -> Result<()> {
        match h.variables().into_iter().find(|v| !self.values.contains_key(v)) {
            Some(v) => Err(Error::IncompletePoint(v)),
            None => Ok(()),
        }
    }

    /// The point `z_v = x_v`, `z_e = prod_{v in e} x_v` for a binary vector (`x[v-1]` is vertex `v`).
    pub fn from_binary(h: &Hypergraph, x: &[bool]) -> Self {
        let values = h
            .variables()
            .into_iter()
            .map(|v| {
                let val = v.eval_binary(|i| x[i as usize - 1]);
                (v, if val { 1.0 } else { 0.0 })
            })
            .collect();
        FractionalPoint { values }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawPoint = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let mut values = BTreeMap::new();
        let check = |x: f64, what: &dyn std::fmt::Display| -> Result<f64> {
            if (-1e-9..=1.0 + 1e-9).contains(&x) {
                Ok(x)
            } else {
                Err(Error::Malformed(format!("value {x} for {what} is outside [0, 1]")))
            }
        };
        for (k, x) in raw.vertices {
            let v: u32 = k.trim().parse().map_err(|_| Error::Malformed(format!("bad vertex key {k:?}")))?;
            if v == 0 {
                return Err(Error::Malformed("vertex ids start at 1".into()));
            }
            values.insert(VarRef::vertex(v), check(x, &v)?);
        }
        for e in raw.edges {
            let s = VertexSet::new(e.vars);
            if s.len() < 2 {
                return Err(Error::Malformed(format!("edge {s} has fewer than two vertices")));
            }
            values.insert(VarRef::from(&s), check(e.value, &s)?);
        }
        Ok(FractionalPoint { values })
    }

    pub fn render(&self) -> String {
        let raw = RawPoint {
            vertices: self
                .values
                .iter()
                .filter(|(v, _)| v.is_vertex())
                .map(|(v, x)| (v.vertices().as_slice()[0].to_string(), *x))
                .collect(),
            edges: self
                .values
                .iter()
                .filter(|(v, _)| !v.is_vertex())
                .map(|(v, x)| RawEdgeValue { vars: v.vertices().as_slice().to_vec(), value: *x })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("point serializes") + "\n"
    }
}

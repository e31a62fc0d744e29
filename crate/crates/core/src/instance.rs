//! Binary polynomial instances, their JSON file format, and linearization
//! onto a hypergraph.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cuts::{LinearInequality, Tag};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vset::{VarRef, VertexSet};

/// A multilinear term `coef * prod_{v in vars} x_v`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub vars: VertexSet,
    pub coef: f64,
}

/// A linearizable constraint `sum terms <= rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub terms: Vec<Term>,
    pub rhs: f64,
}

/// `max sum objective  s.t.  constraints, x in {0,1}^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialInstance {
    n: usize,
    objective: Vec<Term>,
    constraints: Vec<Constraint>,
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    vars: Vec<i64>,
    coef: f64,
}

#[derive(Serialize, Deserialize)]
struct RawConstraint {
    terms: Vec<RawTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sense: Option<String>,
    rhs: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    n: i64,
    objective: Vec<RawTerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    constraints: Vec<RawConstraint>,
}

/// Sorts terms, merges repeated vertex sets and drops zero coefficients.
fn canonical_terms(terms: impl IntoIterator<Item = Term>) -> Vec<Term> {
    let mut merged: BTreeMap<VertexSet, f64> = BTreeMap::new();
    for t in terms {
        *merged.entry(t.vars).or_insert(0.0) += t.coef;
    }
    merged
        .into_iter()
        .filter(|(_, c)| *c != 0.0)
        .map(|(vars, coef)| Term { vars, coef })
        .collect()
}

impl PolynomialInstance {
    /// Builds a canonical instance. Vertices that appear in no term are
    /// removed and the remaining ones renumbered in order.
    pub fn new(n: usize, objective: Vec<Term>, constraints: Vec<Constraint>) -> Result<Self> {
        for t in objective.iter().chain(constraints.iter().flat_map(|c| c.terms.iter())) {
            if t.vars.is_empty() {
                return Err(Error::EmptyTerm);
            }
            if let Some(&v) = t.vars.as_slice().iter().find(|&&v| v == 0 || v as usize > n) {
                return Err(Error::VertexOutOfRange { vertex: v as i64, n });
            }
            if !t.coef.is_finite() {
                return Err(Error::Malformed(format!("non-finite coefficient on {}", t.vars)));
            }
        }
        let objective = canonical_terms(objective);
        let constraints: Vec<Constraint> = constraints
            .into_iter()
            .map(|c| Constraint { terms: canonical_terms(c.terms), rhs: c.rhs })
            .collect();
        let inst = PolynomialInstance { n, objective, constraints };
        if inst.all_terms().next().is_none() {
            return Err(Error::Malformed("instance has no nonzero terms".into()));
        }
        Ok(inst.renumbered())
    }

    fn all_terms(&self) -> impl Iterator<Item = &Term> {
        self.objective.iter().chain(self.constraints.iter().flat_map(|c| c.terms.iter()))
    }

    fn renumbered(self) -> Self {
        let used: BTreeSet<u32> = self.all_terms().flat_map(|t| t.vars.iter()).collect();
        if used.len() == self.n {
            return self;
        }
        let missing: Vec<u32> = (1..=self.n as u32).filter(|v| !used.contains(v)).collect();
        log::warn!("vertices {missing:?} appear in no term; renumbering {} -> {} vertices", self.n, used.len());
        let map: BTreeMap<u32, u32> = used.iter().enumerate().map(|(i, &v)| (v, i as u32 + 1)).collect();
        let relabel = |terms: Vec<Term>| -> Vec<Term> {
            canonical_terms(terms.into_iter().map(|t| Term {
                vars: t.vars.iter().map(|v| map[&v]).collect(),
                coef: t.coef,
            }))
        };
        PolynomialInstance {
            n: used.len(),
            objective: relabel(self.objective),
            constraints: self
                .constraints
                .into_iter()
                .map(|c| Constraint { terms: relabel(c.terms), rhs: c.rhs })
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn objective(&self) -> &[Term] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Parses the JSON instance format.
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawInstance = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        if raw.n < 1 {
            return Err(Error::Malformed(format!("n must be positive, got {}", raw.n)));
        }
        let n = raw.n as usize;
        let term = |t: RawTerm| -> Result<Term> {
            if t.vars.is_empty() {
                return Err(Error::EmptyTerm);
            }
            if let Some(&v) = t.vars.iter().find(|&&v| v < 1 || v > raw.n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            Ok(Term { vars: t.vars.iter().map(|&v| v as u32).collect(), coef: t.coef })
        };
        let objective = raw.objective.into_iter().map(term).collect::<Result<Vec<_>>>()?;
        let mut constraints = Vec::new();
        for c in raw.constraints {
            let sign = match c.sense.as_deref() {
                None | Some("<=") => 1.0,
                Some(">=") => -1.0,
                Some(s) => return Err(Error::Malformed(format!("unsupported constraint sense {s:?}"))),
            };
            let terms = c
                .terms
                .into_iter()
                .map(|t| term(t).map(|t| Term { coef: sign * t.coef, ..t }))
                .collect::<Result<Vec<_>>>()?;
            constraints.push(Constraint { terms, rhs: sign * c.rhs });
        }
        Self::new(n, objective, constraints)
    }

    /// Renders the canonical JSON form; `parse(render(x)) == x`.
    pub fn render(&self) -> String {
        let term = |t: &Term| RawTerm { vars: t.vars.iter().map(i64::from).collect(), coef: t.coef };
        let raw = RawInstance {
            n: self.n as i64,
            objective: self.objective.iter().map(term).collect(),
            constraints: self
                .constraints
                .iter()
                .map(|c| RawConstraint { terms: c.terms.iter().map(term).collect(), sense: None, rhs: c.rhs })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("instance serializes") + "\n"
    }

    /// Lifts the instance onto its hypergraph: every term with two or more
    /// variables becomes an edge, and the objective and constraints become
    /// linear in vertex and edge variables.
    pub fn to_hypergraph(&self) -> Linearization {
        let edges: BTreeSet<VertexSet> =
            self.all_terms().filter(|t| t.vars.len() >= 2).map(|t| t.vars.clone()).collect();
        let hypergraph = Hypergraph::new(self.n, edges).expect("canonical terms form a valid hypergraph");
        let objective = self.objective.iter().map(|t| (VarRef::from(&t.vars), t.coef)).collect();
        let constraints = self
            .constraints
            .iter()
            .map(|c| LinearInequality::new(c.terms.iter().map(|t| (VarRef::from(&t.vars), t.coef)), c.rhs, Tag::Constraint))
            .collect();
        Linearization { hypergraph, objective, constraints }
    }

    /// Exact objective value at a binary point (`x[v-1]` is vertex `v`).
    pub fn objective_at(&self, x: &[bool]) -> f64 {
        eval_terms(&self.objective, x)
    }

    pub fn is_feasible_at(&self, x: &[bool], tol: f64) -> bool {
        self.constraints.iter().all(|c| eval_terms(&c.terms, x) <= c.rhs + tol)
    }
}

fn eval_terms(terms: &[Term], x: &[bool]) -> f64 {
    terms
        .iter()
        .filter(|t| t.vars.iter().all(|v| x[v as usize - 1]))
        .map(|t| t.coef)
        .sum()
}

/// An instance written over the variables of its hypergraph.
#[derive(Clone, Debug)]
pub struct Linearization {
    pub hypergraph: Hypergraph,
    pub objective: BTreeMap<VarRef, f64>,
    pub constraints: Vec<LinearInequality>,
}

impl Linearization {
    /// Vertices that lie in no edge. The usual standing assumption is that
    /// this is empty; it is only enforced by [`Linearization::require_covered`].
    pub fn uncovered_vertices(&self) -> Vec<u32> {
        let covered: BTreeSet<u32> = self.hypergraph.edges().iter().flat_map(|e| e.iter()).collect();
        self.hypergraph.vertices().filter(|v| !covered.contains(v)).collect()
    }

    pub fn require_covered(self) -> Result<Self> {
        let missing = self.uncovered_vertices();
        if missing.is_empty() {
            Ok(self)
        } else {
            Err(Error::UncoveredVertices(missing))
        }
    }
}

/// Draws a random instance with `edges` distinct multilinear terms of
/// cardinality in `[2, rank]` covering all `n` vertices, each with an integer
/// coefficient in `{-10..10} \ {0}`. Deterministic in `seed`.
pub fn generate_random(n: usize, edges: usize, rank: usize, seed: u64) -> Result<PolynomialInstance> {
    if n < 2 || rank < 2 {
        return Err(Error::InfeasibleParameters(format!("need n >= 2 and rank >= 2 (n = {n}, rank = {rank})")));
    }
    let rank = rank.min(n);
    let candidates: Vec<VertexSet> = (2..=rank).flat_map(|k| k_subsets(n as u32, k)).collect();
    if edges > candidates.len() {
        return Err(Error::InfeasibleParameters(format!(
            "only {} possible edges of cardinality 2..={rank} on {n} vertices, {edges} requested",
            candidates.len()
        )));
    }
    if edges * rank < n {
        return Err(Error::InfeasibleParameters(format!(
            "{edges} edges of cardinality <= {rank} cannot cover {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let mut picked: Vec<VertexSet> =
            index::sample(&mut rng, candidates.len(), edges).into_iter().map(|i| candidates[i].clone()).collect();
        picked.sort();
        let covered: BTreeSet<u32> = picked.iter().flat_map(|e| e.iter()).collect();
        if covered.len() != n {
            continue;
        }
        let objective = picked
            .into_iter()
            .map(|vars| {
                let mut c = rng.gen_range(-10i32..=9);
                if c >= 0 {
                    c += 1;
                }
                Term { vars, coef: c as f64 }
            })
            .collect();
        return PolynomialInstance::new(n, objective, Vec::new());
    }
    Err(Error::InfeasibleParameters("could not draw a covering edge set".into()))
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub(crate) fn k_subsets(n: u32, k: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<VertexSet>) {
        if cur.len() == k {
            out.push(VertexSet::new(cur.iter().copied()));
            return;
        }
        for v in start..=n {
            if (n - v + 1) as usize + cur.len() < k {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

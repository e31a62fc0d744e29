use std::fmt;

use serde::{Deserialize, Serialize};

/// A canonical set of vertices: strictly increasing, 1-based ids.
///
/// Ordering is lexicographic on the sorted id list, so `{1,2,3,4} < {1,2,5} < {1,4,8}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<u32>);

impl VertexSet {
    pub fn new<I: IntoIterator<Item = u32>>(vertices: I) -> Self {
        let mut v: Vec<u32> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn singleton(v: u32) -> Self {
        VertexSet(vec![v])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn min(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        VertexSet(out)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.0.iter().any(|&v| other.contains(v))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        !self.intersects(other)
    }
}

impl<const N: usize> From<[u32; N]> for VertexSet {
    fn from(a: [u32; N]) -> Self {
        VertexSet::new(a)
    }
}

impl From<&[u32]> for VertexSet {
    fn from(a: &[u32]) -> Self {
        VertexSet::new(a.iter().copied())
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A variable of a lifted relaxation, identified by its vertex set.
///
/// A singleton set is the vertex variable `z_v`; larger sets are product
/// variables, whether they are edges of the hypergraph or artificial sets
/// introduced by a recursive decomposition. Two references to the same set
/// are the same variable. Variables order vertices first, then by
/// cardinality, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarRef(VertexSet);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarKind {
    Vertex,
    Edge,
    ArtificialEdge,
}

impl VarRef {
    pub fn vertex(v: u32) -> Self {
        VarRef(VertexSet::singleton(v))
    }

    pub fn set(s: VertexSet) -> Self {
        debug_assert!(!s.is_empty());
        VarRef(s)
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.0
    }

    pub fn is_vertex(&self) -> bool {
        self.0.len() == 1
    }

    /// Value of the product `prod_{v in set} x_v` at a binary point given as a predicate.
    pub fn eval_binary(&self, x: impl Fn(u32) -> bool) -> bool {
        self.0.iter().all(x)
    }
}

impl From<VertexSet> for VarRef {
    fn from(s: VertexSet) -> Self {
        VarRef::set(s)
    }
}

impl From<&VertexSet> for VarRef {
    fn from(s: &VertexSet) -> Self {
        VarRef::set(s.clone())
    }
}

impl PartialOrd for VarRef {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VarRef {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_vertex() {
            write!(f, "z_{}", self.0.as_slice()[0])
        } else {
            write!(f, "z_{}", self.0)
        }
    }
}

impl fmt::Debug for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalizes_and_orders() {
        let a = VertexSet::new([3, 1, 2, 3]);
        assert_eq!(a.as_slice(), &[1, 2, 3]);
        let mut sets = vec![VertexSet::from([1, 4, 8]), VertexSet::from([1, 2, 5]), VertexSet::from([1, 2, 3, 4])];
        sets.sort();
        assert_eq!(sets[0], VertexSet::from([1, 2, 3, 4]));
        assert_eq!(sets[2], VertexSet::from([1, 4, 8]));
    }

    #[test]
    fn set_operations() {
        let a = VertexSet::from([1, 2, 3, 4]);
        let b = VertexSet::from([3, 4, 7]);
        assert_eq!(a.intersection(&b), VertexSet::from([3, 4]));
        assert_eq!(a.difference(&b), VertexSet::from([1, 2]));
        assert_eq!(a.union(&b), VertexSet::from([1, 2, 3, 4, 7]));
        assert!(VertexSet::from([3, 4]).is_subset(&a));
        assert!(VertexSet::from([5, 6]).is_disjoint(&a));
    }

    #[test]
    fn vertices_sort_before_products() {
        let mut v = vec![VarRef::set([1, 2].into()), VarRef::vertex(9), VarRef::vertex(2)];
        v.sort();
        assert_eq!(v, vec![VarRef::vertex(2), VarRef::vertex(9), VarRef::set([1, 2].into())]);
        assert_eq!(VarRef::set([1, 3].into()).to_string(), "z_{1,3}");
    }
}

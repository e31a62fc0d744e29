use crate::cuts::{LinearInequality, Tag};
use crate::hypergraph::Hypergraph;
use crate::vset::VarRef;

/// The standard linearization: `z_v <= 1` for every vertex, and for every
/// edge `z_e >= 0`, `z_e >= sum_{v in e} z_v - |e| + 1`, `z_e <= z_v`.
pub fn standard_linearization(h: &Hypergraph) -> Vec<LinearInequality> {
    let mut out: Vec<LinearInequality> =
        h.vertices().map(|v| LinearInequality::upper(VarRef::vertex(v), 1.0, Tag::Std)).collect();
    for e in h.edges() {
        let ze = VarRef::from(e);
        out.push(LinearInequality::nonneg(ze.clone(), Tag::Std));
        out.push(LinearInequality::new(
            e.iter().map(|v| (VarRef::vertex(v), 1.0)).chain([(ze.clone(), -1.0)]),
            e.len() as f64 - 1.0,
            Tag::Std,
        ));
        for v in e.iter() {
            out.push(LinearInequality::le_var(ze.clone(), VarRef::vertex(v), Tag::Std));
        }
    }
    out
}

/// `0 <= z_v <= 1` for every vertex, as explicit rows.
pub fn vertex_box_rows(h: &Hypergraph, tag: Tag) -> Vec<LinearInequality> {
    h.vertices()
        .flat_map(|v| {
            [LinearInequality::upper(VarRef::vertex(v), 1.0, tag), LinearInequality::nonneg(VarRef::vertex(v), tag)]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_count() {
        let h = Hypergraph::new(4, [[1, 2, 3], [2, 3, 4], [1, 3, 4]]).unwrap();
        assert_eq!(standard_linearization(&h).len(), 19);
    }

    #[test]
    fn single_pair_is_mccormick_plus_upper_bounds() {
        let h = Hypergraph::new(2, [[1, 2]]).unwrap();
        let rows: Vec<String> = standard_linearization(&h).iter().map(|i| i.to_string()).collect();
        assert_eq!(
            rows,
            vec![
                "z_1 <= 1",
                "z_2 <= 1",
                "-z_{1,2} <= 0",
                "z_1 + z_2 - z_{1,2} <= 1",
                "-z_1 + z_{1,2} <= 0",
                "-z_2 + z_{1,2} <= 0",
            ]
        );
    }

    #[test]
    fn example4_count() {
        let h = Hypergraph::new(
            9,
            [vec![1, 2, 3, 4, 5, 6, 7, 8, 9], vec![1, 2, 3, 4], vec![4, 5, 6, 7], vec![1, 7, 8, 9]]
                .into_iter()
                .map(crate::VertexSet::new),
        )
        .unwrap();
        assert_eq!(standard_linearization(&h).len(), 38);
    }
}

//! Extendability of colorings of a small tracked set, summarized by the
//! colorings of its neighborhood that extend to the rest of the graph.

use crate::color_core::{search, visit_extensions, Color, ColorSet, PartialColoring};
use crate::planar_core::{Vertex, VertexSet};

/// For each neighborhood coloring that extends outward, the colors it forbids
/// on every tracked vertex. Only the inclusion-minimal rows are kept.
#[derive(Clone, Debug)]
pub struct Projection {
    tracked: Vec<Vertex>,
    rows: Vec<Vec<ColorSet>>,
}

impl Projection {
    pub fn new(adjacency: &[VertexSet], lists: &[ColorSet], tracked: &[Vertex]) -> Self {
        let n = adjacency.len();
        let all = VertexSet((1u64 << n) - 1);
        let tracked_set: VertexSet = tracked.iter().copied().collect();
        let boundary = tracked
            .iter()
            .fold(VertexSet::EMPTY, |acc, &x| acc.union(adjacency[x]))
            .difference(tracked_set);
        let rest = all.difference(tracked_set).difference(boundary);
        let order: Vec<Vertex> = boundary.iter().collect();
        let mut rows: Vec<Vec<ColorSet>> = Vec::new();
        let mut domains = vec![0u64; n];
        let mut assign = vec![0 as Color; n];
        let mut phi = PartialColoring::empty(n);
        visit_extensions(adjacency, lists, &mut phi, &order, &mut |beta| {
            for v in rest.iter() {
                domains[v] = lists[v].difference(beta.neighbor_colors(adjacency, v)).0;
            }
            if search(adjacency, &mut domains, rest.0, &mut assign) {
                rows.push(
                    tracked
                        .iter()
                        .map(|&x| beta.neighbor_colors(adjacency, x))
                        .collect(),
                );
            }
            true
        });
        rows.sort();
        rows.dedup();
        let dominated = |a: &Vec<ColorSet>, b: &Vec<ColorSet>| {
            a != b && a.iter().zip(b).all(|(x, y)| x.is_subset(*y))
        };
        let minimal: Vec<Vec<ColorSet>> = rows
            .iter()
            .filter(|row| !rows.iter().any(|other| dominated(other, row)))
            .cloned()
            .collect();
        Projection {
            tracked: tracked.to_vec(),
            rows: minimal,
        }
    }

    pub fn tracked(&self) -> &[Vertex] {
        &self.tracked
    }

    /// Forbidden colors per tracked vertex, one row per minimal outward extension.
    pub fn rows(&self) -> &[Vec<ColorSet>] {
        &self.rows
    }

    /// Whether a proper coloring of the tracked set (in tracked order)
    /// extends to the whole graph.
    pub fn extends(&self, colors: &[Color]) -> bool {
        self.rows.iter().any(|row| {
            row.iter()
                .zip(colors)
                .all(|(forbidden, &c)| !forbidden.contains(c))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color_core::completes;
    use proptest::prelude::*;

    fn wheel(rim: usize) -> Vec<VertexSet> {
        let mut adj = vec![VertexSet::EMPTY; rim + 1];
        for i in 0..rim {
            let j = (i + 1) % rim;
            adj[i] = adj[i].with(j).with(rim);
            adj[j] = adj[j].with(i);
            adj[rim] = adj[rim].with(i);
        }
        adj
    }

    proptest! {
        #[test]
        fn projection_matches_direct_extension(raw in proptest::collection::vec(1u64..16, 7), a in 0u8..4, b in 0u8..3) {
            let adj = wheel(6);
            let b = if b >= a { b + 1 } else { b };
            let mut lists: Vec<ColorSet> = raw.iter().map(|&m| ColorSet(m)).collect();
            lists[0].insert(a);
            lists[1].insert(b);
            let proj = Projection::new(&adj, &lists, &[0, 1]);
            let phi = PartialColoring::from_pairs(7, &[(0, a), (1, b)]);
            prop_assert_eq!(proj.extends(&[a, b]), completes(&adj, &lists, &phi));
        }
    }

    #[test]
    fn whole_graph_tracked_has_one_empty_row() {
        let adj = wheel(4);
        let lists = vec![ColorSet::range(4); 5];
        let proj = Projection::new(&adj, &lists, &[0, 1, 2, 3, 4]);
        assert_eq!(proj.rows().len(), 1);
        assert!(proj.rows()[0].iter().all(|s| s.is_empty()));
    }
}

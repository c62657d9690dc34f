//! Decides whether a graph is colorable for every choice of lists from given
//! candidates, by sweeping vertices in a narrow order and keeping, for each
//! reachable prefix of choices, the set of frontier colorings that extend
//! over the prefix.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::color_core::{Color, ColorSet};
use crate::planar_core::{Vertex, VertexSet};

/// Candidate lists for every vertex; one is chosen per vertex.
#[derive(Clone, Debug)]
pub struct ListChoices(pub Vec<Vec<ColorSet>>);

impl ListChoices {
    /// Every subset of the given size for each vertex.
    pub fn sized(palette: usize, sizes: &[usize]) -> Self {
        ListChoices(
            sizes
                .iter()
                .map(|&s| super::lists::subsets(palette, s.min(palette)))
                .collect(),
        )
    }

    pub fn fix(mut self, v: Vertex, list: ColorSet) -> Self {
        self.0[v] = vec![list];
        self
    }
}

/// Order that keeps the set of processed vertices with unprocessed
/// neighbors small.
fn sweep_order(adjacency: &[VertexSet], first: &[Vertex]) -> Vec<Vertex> {
    let n = adjacency.len();
    let mut order: Vec<Vertex> = first.to_vec();
    let mut done: VertexSet = first.iter().copied().collect();
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !done.contains(v))
            .min_by_key(|&v| {
                let after = done.with(v);
                let width = after
                    .iter()
                    .filter(|&u| !adjacency[u].is_subset(after))
                    .count();
                (width, usize::MAX - adjacency[v].intersection(done).len(), v)
            })
            .expect("unprocessed vertex");
        order.push(next);
        done.insert(next);
    }
    order
}

const BITS: u32 = 3;

fn color_at(code: u32, slot: usize) -> Color {
    (code >> (slot as u32 * BITS) & 0b111) as Color
}

/// `Ok` when every choice admits a proper coloring; otherwise the lists of
/// one uncolorable choice.
pub fn colorable_for_all(
    adjacency: &[VertexSet],
    choices: &ListChoices,
) -> Result<(), Vec<ColorSet>> {
    colorable_for_all_from(adjacency, choices, &[])
}

/// As [`colorable_for_all`], sweeping `first` before the rest.
pub fn colorable_for_all_from(
    adjacency: &[VertexSet],
    choices: &ListChoices,
    first: &[Vertex],
) -> Result<(), Vec<ColorSet>> {
    let n = adjacency.len();
    let order = sweep_order(adjacency, first);
    let mut frontier: Vec<Vertex> = Vec::new();
    let mut done = VertexSet::EMPTY;
    let mut level: HashMap<Vec<u32>, Vec<ColorSet>> = HashMap::from([(vec![0], Vec::new())]);
    for &v in &order {
        let after = done.with(v);
        let next_frontier: Vec<Vertex> = frontier
            .iter()
            .copied()
            .chain(std::iter::once(v))
            .filter(|&u| !adjacency[u].is_subset(after))
            .collect();
        let sources: Vec<Option<usize>> = next_frontier
            .iter()
            .map(|u| frontier.iter().position(|w| w == u))
            .collect();
        let watch: Vec<usize> = (0..frontier.len())
            .filter(|&i| adjacency[v].contains(frontier[i]))
            .collect();
        let palette: ColorSet = choices.0[v]
            .iter()
            .fold(ColorSet::EMPTY, |acc, &l| acc.union(l));
        let mut next: HashMap<Vec<u32>, Vec<ColorSet>> = HashMap::new();
        let mut by_color: Vec<Vec<u32>> =
            vec![Vec::new(); palette.iter().max().map_or(0, |c| c as usize + 1)];
        for (state, witness) in &level {
            for c in palette.iter() {
                let codes = &mut by_color[c as usize];
                codes.clear();
                for &code in state {
                    if watch.iter().any(|&i| color_at(code, i) == c) {
                        continue;
                    }
                    codes.push(sources.iter().enumerate().fold(0u32, |acc, (slot, src)| {
                        let color = src.map_or(c, |i| color_at(code, i)) as u32;
                        acc | color << (slot as u32 * BITS)
                    }));
                }
                codes.sort_unstable();
                codes.dedup();
            }
            for &list in &choices.0[v] {
                let mut codes: Vec<u32> = list
                    .iter()
                    .flat_map(|c| by_color[c as usize].iter().copied())
                    .collect();
                codes.sort_unstable();
                codes.dedup();
                if codes.is_empty() {
                    let mut out: Vec<ColorSet> = (0..n).map(|u| choices.0[u][0]).collect();
                    for (&u, &l) in order
                        .iter()
                        .zip(witness.iter().chain(std::iter::once(&list)))
                    {
                        out[u] = l;
                    }
                    return Err(out);
                }
                if let Entry::Vacant(slot) = next.entry(codes) {
                    let mut lists = witness.clone();
                    lists.push(list);
                    slot.insert(lists);
                }
            }
        }
        level = next;
        frontier = next_frontier;
        done = after;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color_core::{completes, PartialColoring};
    use proptest::prelude::*;

    fn cycle(n: usize) -> Vec<VertexSet> {
        (0..n)
            .map(|i| VertexSet::single((i + 1) % n).with((i + n - 1) % n))
            .collect()
    }

    fn brute_force(adjacency: &[VertexSet], choices: &ListChoices) -> bool {
        let mut lists = Vec::new();
        fn go(adj: &[VertexSet], ch: &ListChoices, lists: &mut Vec<ColorSet>) -> bool {
            if lists.len() == adj.len() {
                return completes(adj, lists, &PartialColoring::empty(adj.len()));
            }
            ch.0[lists.len()].clone().into_iter().all(|l| {
                lists.push(l);
                let ok = go(adj, ch, lists);
                lists.pop();
                ok
            })
        }
        go(adjacency, choices, &mut lists)
    }

    #[test]
    fn odd_cycles_are_not_two_choosable() {
        let adj = cycle(5);
        let witness = colorable_for_all(&adj, &ListChoices::sized(3, &[2; 5])).unwrap_err();
        assert!(!completes(&adj, &witness, &PartialColoring::empty(5)));
        assert!(colorable_for_all(&cycle(4), &ListChoices::sized(4, &[2; 4])).is_ok());
    }

    #[test]
    fn wheels_with_three_lists_fail_somewhere() {
        let mut adj = cycle(5);
        adj.push(VertexSet::EMPTY);
        for i in 0..5 {
            adj[i].insert(5);
            adj[5].insert(i);
        }
        assert!(colorable_for_all(&adj, &ListChoices::sized(4, &[3; 6])).is_err());
        assert!(colorable_for_all(&adj, &ListChoices::sized(5, &[3, 3, 3, 3, 3, 4])).is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn agrees_with_brute_force(edges in proptest::collection::vec((0usize..6, 0usize..6), 4..9), size in 1usize..3) {
            let mut adj = vec![VertexSet::EMPTY; 6];
            for (a, b) in edges {
                if a != b {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
            let choices = ListChoices::sized(3, &[size; 6]);
            prop_assert_eq!(colorable_for_all(&adj, &choices).is_ok(), brute_force(&adj, &choices));
        }
    }
}

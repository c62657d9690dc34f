//! Sufficient colorings, the End and Crown sets, universal colors and the
//! classifier for 5- and 6-faces.

use serde::Serialize;
use thiserror::Error;

use crate::color_core::{
    completes, extend_raw, visit_extensions, Color, ColorSet, ListAssignment, PartialColoring,
    Rainbow,
};
use crate::planar_core::{induced_path_order, PlanarEmbedding, Vertex, VertexSet};

/// Checks that every proper extension of `phi` over `h` completes to the
/// whole graph, stopping at the first one that does not.
pub fn sufficient_raw(
    adjacency: &[VertexSet],
    lists: &[ColorSet],
    h: VertexSet,
    phi: &PartialColoring,
) -> bool {
    let order: Vec<Vertex> = h.difference(phi.domain()).iter().collect();
    let mut work = phi.clone();
    visit_extensions(adjacency, lists, &mut work, &order, &mut |psi| {
        completes(adjacency, lists, psi)
    })
}

/// Whether `phi` is sufficient for the vertex set `h` of a subgraph: every
/// extension of `phi` to an L-coloring of `dom(phi) ∪ h` extends to all of `g`.
pub fn is_sufficient(
    g: &PlanarEmbedding,
    lists: &ListAssignment,
    h: VertexSet,
    phi: &PartialColoring,
) -> bool {
    if !phi.is_proper(g.adjacency()) || !phi.respects(lists) {
        return true;
    }
    sufficient_raw(g.adjacency(), lists.as_slice(), h, phi)
}

/// All extensions of `phi` over `h` that do not extend to the whole graph,
/// in lexicographic order.
pub fn failing_extensions(
    adjacency: &[VertexSet],
    lists: &[ColorSet],
    h: VertexSet,
    phi: &PartialColoring,
) -> Vec<PartialColoring> {
    let order: Vec<Vertex> = h.difference(phi.domain()).iter().collect();
    let mut work = phi.clone();
    let mut out = Vec::new();
    visit_extensions(adjacency, lists, &mut work, &order, &mut |psi| {
        if !completes(adjacency, lists, psi) {
            out.push(psi.clone());
        }
        true
    });
    out
}

/// Every proper L-coloring of the endpoints of `P` that is `(P, G)`-sufficient.
pub fn end_set(r: &Rainbow) -> Vec<PartialColoring> {
    let adjacency = r.adjacency();
    let lists = r.lists().as_slice();
    let ends = [r.p0(), r.p1()];
    let mut out = Vec::new();
    visit_extensions(
        adjacency,
        lists,
        &mut PartialColoring::empty(r.n()),
        &ends,
        &mut |phi| {
            if sufficient_raw(adjacency, lists, r.path_set(), phi) {
                out.push(phi.clone());
            }
            true
        },
    );
    out.sort();
    out
}

/// The vertices `q`, `q'` next to the ends of `P`.
fn terminal_neighbors(r: &Rainbow) -> VertexSet {
    let path = r.path();
    VertexSet::single(path[1]).with(path[path.len() - 2])
}

/// Extra requirements on a crown search.
#[derive(Clone, Debug, Default)]
pub struct CrownQuery {
    /// Vertices that must be colored.
    pub required: VertexSet,
    /// Vertices whose color is prescribed; they are added to the domain.
    pub fixed: Vec<(Vertex, Color)>,
}

/// Walks the crown in order of domain size, then domain bitmask, then
/// coloring; stops when `visit` returns false.
pub fn visit_crown(
    r: &Rainbow,
    query: &CrownQuery,
    visit: &mut impl FnMut(&PartialColoring) -> bool,
) {
    let adjacency = r.adjacency();
    let lists = r.lists().as_slice();
    let path_set = r.path_set();
    let ends = VertexSet::single(r.p0()).with(r.p1());
    let forbidden = terminal_neighbors(r);
    let fixed_set: VertexSet = query.fixed.iter().map(|&(v, _)| v).collect();
    if !fixed_set.intersection(forbidden).is_empty()
        || !query.required.intersection(forbidden).is_empty()
    {
        return;
    }
    let base = ends.union(fixed_set).union(query.required);
    let free: Vec<Vertex> = r
        .cycle_set()
        .difference(forbidden)
        .difference(base)
        .iter()
        .collect();
    let needs_inner = r.path_len() > 3;
    let inner = r.path_interior().difference(forbidden);

    let mut start = PartialColoring::empty(r.n());
    for &(v, c) in &query.fixed {
        if !lists[v].contains(c) {
            return;
        }
        start.set(v, c);
    }
    if !start.is_proper(adjacency) {
        return;
    }

    let mut subsets: Vec<u64> = (0..1u64 << free.len()).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    for bits in subsets {
        let extra: VertexSet = free
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let domain = base.union(extra);
        if needs_inner && domain.intersection(inner).is_empty() {
            continue;
        }
        let watched = path_set.difference(domain);
        if watched.iter().any(|x| {
            lists[x]
                .difference(start.neighbor_colors(adjacency, x))
                .len()
                < 3
        }) {
            continue;
        }
        let order: Vec<Vertex> = domain.difference(fixed_set).iter().collect();
        let mut phi = start.clone();
        let go_on = crown_dfs(adjacency, lists, watched, path_set, &order, &mut phi, visit);
        if !go_on {
            return;
        }
    }
}

fn crown_dfs(
    adjacency: &[VertexSet],
    lists: &[ColorSet],
    watched: VertexSet,
    path_set: VertexSet,
    order: &[Vertex],
    phi: &mut PartialColoring,
    visit: &mut impl FnMut(&PartialColoring) -> bool,
) -> bool {
    let Some((&v, rest)) = order.split_first() else {
        if sufficient_raw(adjacency, lists, path_set, phi) {
            return visit(phi);
        }
        return true;
    };
    let allowed = lists[v].difference(phi.neighbor_colors(adjacency, v));
    let touched = adjacency[v].intersection(watched);
    for c in allowed.iter() {
        phi.set(v, c);
        let roomy = touched
            .iter()
            .all(|x| lists[x].difference(phi.neighbor_colors(adjacency, x)).len() >= 3);
        let go_on = !roomy || crown_dfs(adjacency, lists, watched, path_set, rest, phi, visit);
        phi.unset(v);
        if !go_on {
            return false;
        }
    }
    true
}

/// Every member of `Crown_L(P, G)`, sorted.
pub fn crown_set(r: &Rainbow) -> Vec<PartialColoring> {
    let mut out = Vec::new();
    visit_crown(r, &CrownQuery::default(), &mut |phi| {
        out.push(phi.clone());
        true
    });
    out.sort();
    out
}

/// The first crown member meeting `query`, if one exists.
pub fn find_crown_member(r: &Rainbow, query: &CrownQuery) -> Option<PartialColoring> {
    let mut found = None;
    visit_crown(r, query, &mut |phi| {
        found = Some(phi.clone());
        false
    });
    found
}

/// Each crown condition evaluated separately for one coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrownMembershipReport {
    #[serde(skip)]
    pub coloring: PartialColoring,
    pub domain_ok: bool,
    pub sufficient: bool,
    pub condition_a: bool,
    pub condition_b: bool,
    /// `(vertex, |L_phi(vertex)|)` for each uncolored vertex of `P`.
    pub residual_sizes: Vec<(Vertex, usize)>,
}

impl CrownMembershipReport {
    pub fn is_member(&self) -> bool {
        self.domain_ok && self.sufficient && self.condition_a && self.condition_b
    }
}

pub fn crown_membership(r: &Rainbow, phi: &PartialColoring) -> CrownMembershipReport {
    let adjacency = r.adjacency();
    let lists = r.lists();
    let domain = phi.domain();
    let allowed = r.cycle_set().difference(terminal_neighbors(r));
    let domain_ok = domain.is_subset(allowed)
        && domain.contains(r.p0())
        && domain.contains(r.p1())
        && phi.is_proper(adjacency)
        && phi.respects(lists);
    let inner = r.path_interior().difference(terminal_neighbors(r));
    let condition_a = r.path_len() <= 3 || !domain.intersection(inner).is_empty();
    let residual_sizes: Vec<(Vertex, usize)> = r
        .path_set()
        .difference(domain)
        .iter()
        .map(|x| {
            (
                x,
                lists
                    .get(x)
                    .difference(phi.neighbor_colors(adjacency, x))
                    .len(),
            )
        })
        .collect();
    let condition_b = residual_sizes.iter().all(|&(_, size)| size >= 3);
    let sufficient = domain_ok && sufficient_raw(adjacency, lists.as_slice(), r.path_set(), phi);
    CrownMembershipReport {
        coloring: phi.clone(),
        domain_ok,
        sufficient,
        condition_a,
        condition_b,
        residual_sizes,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UniversalMode {
    Universal,
    Almost,
}

/// Colors of `L(p0)` that are universal (or almost universal) for the
/// 2-path `p0 q p1`.
pub fn universal_colors(
    g: &PlanarEmbedding,
    lists: &ListAssignment,
    path: [Vertex; 3],
    mode: UniversalMode,
) -> ColorSet {
    let [p0, q, p1] = path;
    let adjacency = g.adjacency();
    let slice = lists.as_slice();
    let n = g.n();
    let extends = |a: Color, b: Color, c: Color| {
        let phi = PartialColoring::from_pairs(n, &[(p0, a), (q, b), (p1, c)]);
        phi.is_proper(adjacency) && completes(adjacency, slice, &phi)
    };
    lists
        .get(p0)
        .iter()
        .filter(|&a| {
            lists.get(q).without(a).iter().all(|b| {
                let good = lists
                    .get(p1)
                    .without(b)
                    .iter()
                    .filter(|&c| extends(a, b, c))
                    .count();
                match mode {
                    UniversalMode::Universal => good == lists.get(p1).without(b).len(),
                    UniversalMode::Almost => good + 1 >= lists.get(p1).len(),
                }
            })
        })
        .collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BohmeError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
}

/// Outcome of classifying a precolored outer 5- or 6-cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BohmeClass {
    Extendable,
    /// A vertex adjacent to all of a 5-cycle whose residual list is empty.
    Hub {
        vertex: u32,
    },
    /// 6-cycle case: a lone vertex with at least five cycle neighbors.
    LoneVertex {
        vertex: u32,
    },
    /// 6-cycle case: an interior edge with equal one-color residual lists.
    Edge {
        vertices: [u32; 2],
        color: u32,
    },
    /// 6-cycle case: an interior triangle with equal two-color residual lists.
    Triangle {
        vertices: [u32; 3],
        colors: [u32; 2],
    },
    /// None of the structures, and yet the coloring does not extend.
    Unclassified,
}

fn is_path_of_length(g: &PlanarEmbedding, set: VertexSet, edges: usize) -> bool {
    set.len() == edges + 1 && induced_path_order(g, set).is_some()
}

/// Classifies a full coloring `phi` of the outer cycle of a short-inseparable
/// graph whose outer cycle has length five or six.
pub fn bohme_classify(
    g: &PlanarEmbedding,
    lists: &ListAssignment,
    phi: &PartialColoring,
) -> Result<BohmeClass, BohmeError> {
    let violation = |msg: &str| Err(BohmeError::HypothesisViolation(msg.to_string()));
    let cycle = match g.outer_cycle() {
        Ok(c) => c,
        Err(e) => return violation(&e.to_string()),
    };
    let cycle_set: VertexSet = cycle.iter().copied().collect();
    if !(5..=6).contains(&cycle.len()) {
        return violation("outer cycle must have length five or six");
    }
    if !g.is_short_inseparable() {
        return violation("graph is not short-inseparable");
    }
    let inner = g.vertices().difference(cycle_set);
    if inner.iter().any(|v| lists.get(v).len() < 5) {
        return violation("interior list shorter than five");
    }
    if phi.domain() != cycle_set || !phi.respects(lists) {
        return violation("coloring must be an L-coloring of exactly the outer cycle");
    }
    if !phi.is_proper(g.adjacency()) {
        return violation("coloring is improper");
    }

    let residual = |v: Vertex| {
        lists
            .get(v)
            .difference(phi.neighbor_colors(g.adjacency(), v))
    };
    let on_cycle = |v: Vertex| g.neighbors(v).intersection(cycle_set);
    let inner_list: Vec<Vertex> = inner.iter().collect();
    let label = |v: Vertex| g.label(v);

    let structure = match (cycle.len(), inner_list.as_slice()) {
        (5, &[v]) if on_cycle(v) == cycle_set && residual(v).is_empty() => {
            Some(BohmeClass::Hub { vertex: label(v) })
        }
        (6, &[v]) if on_cycle(v).len() >= 5 && residual(v).is_empty() => {
            Some(BohmeClass::LoneVertex { vertex: label(v) })
        }
        (6, &[u, v]) if g.has_edge(u, v) => {
            let same = residual(u) == residual(v) && residual(u).len() == 1;
            let shaped = [u, v].iter().all(|&x| is_path_of_length(g, on_cycle(x), 3));
            (same && shaped).then(|| BohmeClass::Edge {
                vertices: [label(u), label(v)],
                color: u32::from(residual(u).first().expect("one color")),
            })
        }
        (6, &[u, v, w]) if g.has_edge(u, v) && g.has_edge(v, w) && g.has_edge(u, w) => {
            let list = residual(u);
            let same = list.len() == 2 && residual(v) == list && residual(w) == list;
            let shaped = [u, v, w]
                .iter()
                .all(|&x| is_path_of_length(g, on_cycle(x), 2));
            (same && shaped).then(|| {
                let colors: Vec<u32> = list.iter().map(u32::from).collect();
                BohmeClass::Triangle {
                    vertices: [label(u), label(v), label(w)],
                    colors: [colors[0], colors[1]],
                }
            })
        }
        _ => None,
    };
    if let Some(found) = structure {
        return Ok(found);
    }
    if extend_raw(g.adjacency(), lists.as_slice(), phi, g.vertices()).is_some() {
        Ok(BohmeClass::Extendable)
    } else {
        Ok(BohmeClass::Unclassified)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{load_fixture, FixtureId};

    fn triangle_rainbow(mid: ColorSet) -> Rainbow {
        let g =
            PlanarEmbedding::from_rotation(vec![vec![1, 2], vec![2, 0], vec![0, 1]], &[0, 1, 2])
                .unwrap();
        let lists = ListAssignment::new(vec![
            ColorSet::from_iter([0, 1]),
            mid,
            ColorSet::from_iter([1, 2]),
        ]);
        Rainbow::new(g, vec![0, 1, 2], lists).unwrap()
    }

    #[test]
    fn end_set_of_triangle_with_roomy_middle_is_every_proper_pair() {
        let r = triangle_rainbow(ColorSet::range(3));
        let ends = end_set(&r);
        // proper pairs from {0,1} x {1,2}: (0,1) (0,2) (1,2)
        assert_eq!(ends.len(), 3);
    }

    #[test]
    fn pair_without_extensions_is_vacuously_sufficient() {
        let r = triangle_rainbow(ColorSet::from_iter([0, 1]));
        let ends = end_set(&r);
        // (0,1) leaves the middle nothing, so it has no extension to fail
        assert_eq!(ends.len(), 3);
        let phi = PartialColoring::from_pairs(3, &[(0, 0), (2, 1)]);
        assert!(
            failing_extensions(r.adjacency(), r.lists().as_slice(), r.path_set(), &phi).is_empty()
        );
    }

    #[test]
    fn fig10_crown_is_empty() {
        let r = load_fixture(FixtureId::Fig10).unwrap();
        assert!(crown_set(&r).is_empty());
    }

    #[test]
    fn five_cycle_crown_contains_colorings_of_the_far_vertices() {
        let g = PlanarEmbedding::from_rotation(
            vec![vec![4, 1], vec![0, 2], vec![1, 3], vec![2, 4], vec![3, 0]],
            &[0, 1, 2, 3, 4],
        )
        .unwrap();
        let lists = ListAssignment::new(vec![
            ColorSet::single(0),
            ColorSet::range(5),
            ColorSet::range(5),
            ColorSet::range(5),
            ColorSet::single(1),
        ]);
        let r = Rainbow::new(g, vec![0, 1, 2, 3, 4], lists).unwrap();
        let crown = crown_set(&r);
        assert!(!crown.is_empty());
        let phi = PartialColoring::from_pairs(5, &[(0, 0), (2, 2), (4, 1)]);
        assert!(crown.contains(&phi));
        assert!(crown.iter().all(|m| crown_membership(&r, m).is_member()));
    }

    #[test]
    fn triangle_universal_when_end_lists_disjoint() {
        let g =
            PlanarEmbedding::from_rotation(vec![vec![1, 2], vec![2, 0], vec![0, 1]], &[0, 1, 2])
                .unwrap();
        let lists = ListAssignment::new(vec![
            ColorSet::from_iter([0, 1]),
            ColorSet::range(5),
            ColorSet::from_iter([2, 3]),
        ]);
        let all = universal_colors(&g, &lists, [0, 1, 2], UniversalMode::Universal);
        assert_eq!(all, lists.get(0));
    }

    #[test]
    fn contained_end_list_blocks_universality() {
        let g =
            PlanarEmbedding::from_rotation(vec![vec![1, 2], vec![2, 0], vec![0, 1]], &[0, 1, 2])
                .unwrap();
        let lists = ListAssignment::new(vec![
            ColorSet::from_iter([0, 1]),
            ColorSet::range(5),
            ColorSet::from_iter([0, 1, 2]),
        ]);
        assert!(universal_colors(&g, &lists, [0, 1, 2], UniversalMode::Universal).is_empty());
    }

    fn wheel5() -> PlanarEmbedding {
        // rim 0..5 clockwise, hub 5
        let mut rot: Vec<Vec<Vertex>> = (0..5).map(|i| vec![(i + 4) % 5, 5, (i + 1) % 5]).collect();
        rot.push(vec![4, 3, 2, 1, 0]);
        PlanarEmbedding::from_rotation(rot, &[0, 1, 2, 3, 4]).unwrap()
    }

    #[test]
    fn wheel_hub_with_rim_colors_is_classified() {
        let g = wheel5();
        let mut lists = ListAssignment::uniform(6, ColorSet::range(5));
        lists.set(5, ColorSet::range(5));
        let phi = PartialColoring::from_pairs(6, &[(0, 0), (1, 1), (2, 2), (3, 3), (4, 4)]);
        assert_eq!(
            bohme_classify(&g, &lists, &phi).unwrap(),
            BohmeClass::Hub { vertex: 5 }
        );
        let phi = PartialColoring::from_pairs(6, &[(0, 0), (1, 1), (2, 0), (3, 1), (4, 2)]);
        assert_eq!(
            bohme_classify(&g, &lists, &phi).unwrap(),
            BohmeClass::Extendable
        );
    }

    #[test]
    fn bare_cycle_is_extendable() {
        let g = PlanarEmbedding::from_rotation(
            vec![vec![4, 1], vec![0, 2], vec![1, 3], vec![2, 4], vec![3, 0]],
            &[0, 1, 2, 3, 4],
        )
        .unwrap();
        let lists = ListAssignment::uniform(5, ColorSet::range(3));
        let phi = PartialColoring::from_pairs(5, &[(0, 0), (1, 1), (2, 0), (3, 1), (4, 2)]);
        assert_eq!(
            bohme_classify(&g, &lists, &phi).unwrap(),
            BohmeClass::Extendable
        );
    }
}

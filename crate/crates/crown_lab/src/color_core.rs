//! Lists, partial colorings, residual lists, the extension solver and
//! Λ-sets.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar_core::{GraphDocument, PlanarEmbedding, PlanarError, Vertex, VertexSet};

/// A color id. Lists are bitsets, so ids stay below [`MAX_COLORS`].
pub type Color = u8;

pub const MAX_COLORS: u32 = 64;

/// A set of colors packed into one machine word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn single(c: Color) -> Self {
        ColorSet(1 << c)
    }

    /// The colors `0..k`.
    pub fn range(k: usize) -> Self {
        if k >= 64 {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << k) - 1)
        }
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 >> c & 1 == 1
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1 << c;
    }

    pub fn without(self, c: Color) -> Self {
        ColorSet(self.0 & !(1 << c))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ColorSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ColorSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<Color> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Color)
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let c = bits.trailing_zeros() as Color;
                bits &= bits - 1;
                c
            })
        })
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut set = ColorSet::EMPTY;
        for c in iter {
            set.insert(c);
        }
        set
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColorError {
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error("color {0} is out of range (colors must be below {MAX_COLORS})")]
    ColorOutOfRange(u32),
    #[error("coloring is improper on edge {0}-{1}")]
    ImproperColoring(u32, u32),
    #[error("color {color} is not in the list of vertex {vertex}")]
    ColorNotInList { vertex: u32, color: u32 },
    #[error("list given for unknown vertex {0}")]
    UnknownVertex(u32),
}

/// One finite color list per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<ColorSet>,
}

impl ListAssignment {
    pub fn new(lists: Vec<ColorSet>) -> Self {
        ListAssignment { lists }
    }

    pub fn uniform(n: usize, list: ColorSet) -> Self {
        ListAssignment {
            lists: vec![list; n],
        }
    }

    /// Lists keyed by external ids; vertices without an entry get an empty list.
    pub fn from_labels(
        g: &PlanarEmbedding,
        lists: &BTreeMap<u32, Vec<u32>>,
    ) -> Result<Self, ColorError> {
        let mut out = vec![ColorSet::EMPTY; g.n()];
        for (&label, colors) in lists {
            let v = g.index_of(label).ok_or(ColorError::UnknownVertex(label))?;
            for &c in colors {
                if c >= MAX_COLORS {
                    return Err(ColorError::ColorOutOfRange(c));
                }
                out[v].insert(c as Color);
            }
        }
        Ok(ListAssignment { lists: out })
    }

    pub fn to_labels(&self, g: &PlanarEmbedding) -> BTreeMap<u32, Vec<u32>> {
        (0..self.lists.len())
            .map(|v| (g.label(v), self.lists[v].iter().map(u32::from).collect()))
            .collect()
    }

    pub fn get(&self, v: Vertex) -> ColorSet {
        self.lists[v]
    }

    pub fn set(&mut self, v: Vertex, list: ColorSet) {
        self.lists[v] = list;
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn as_slice(&self) -> &[ColorSet] {
        &self.lists
    }

    pub fn palette(&self) -> ColorSet {
        self.lists
            .iter()
            .fold(ColorSet::EMPTY, |acc, &l| acc.union(l))
    }
}

/// A partial map from vertices to colors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    colors: Vec<Option<Color>>,
}

impl PartialColoring {
    pub fn empty(n: usize) -> Self {
        PartialColoring {
            colors: vec![None; n],
        }
    }

    pub fn from_pairs(n: usize, pairs: &[(Vertex, Color)]) -> Self {
        let mut phi = Self::empty(n);
        for &(v, c) in pairs {
            phi.set(v, c);
        }
        phi
    }

    pub fn from_labels(g: &PlanarEmbedding, map: &BTreeMap<u32, u32>) -> Result<Self, ColorError> {
        let mut phi = Self::empty(g.n());
        for (&label, &c) in map {
            let v = g.index_of(label).ok_or(ColorError::UnknownVertex(label))?;
            if c >= MAX_COLORS {
                return Err(ColorError::ColorOutOfRange(c));
            }
            phi.set(v, c as Color);
        }
        Ok(phi)
    }

    pub fn to_labels(&self, g: &PlanarEmbedding) -> BTreeMap<u32, u32> {
        self.assignments()
            .map(|(v, c)| (g.label(v), u32::from(c)))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors[v]
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        self.colors[v] = Some(c);
    }

    pub fn unset(&mut self, v: Vertex) {
        self.colors[v] = None;
    }

    pub fn with(&self, v: Vertex, c: Color) -> Self {
        let mut out = self.clone();
        out.set(v, c);
        out
    }

    pub fn domain(&self) -> VertexSet {
        self.assignments().map(|(v, _)| v).collect()
    }

    pub fn assignments(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    /// Restriction to the vertices of `set`.
    pub fn restrict(&self, set: VertexSet) -> Self {
        PartialColoring {
            colors: self
                .colors
                .iter()
                .enumerate()
                .map(|(v, &c)| c.filter(|_| set.contains(v)))
                .collect(),
        }
    }

    /// Colors used on the colored neighbors of `v`.
    pub fn neighbor_colors(&self, adjacency: &[VertexSet], v: Vertex) -> ColorSet {
        adjacency[v].iter().filter_map(|u| self.colors[u]).collect()
    }

    /// The first improperly colored edge, if any.
    pub fn conflict(&self, adjacency: &[VertexSet]) -> Option<(Vertex, Vertex)> {
        self.assignments().find_map(|(v, c)| {
            adjacency[v]
                .iter()
                .find(|&u| u > v && self.colors[u] == Some(c))
                .map(|u| (v, u))
        })
    }

    pub fn is_proper(&self, adjacency: &[VertexSet]) -> bool {
        self.conflict(adjacency).is_none()
    }

    /// True when every colored vertex uses a color from its list.
    pub fn respects(&self, lists: &ListAssignment) -> bool {
        self.assignments().all(|(v, c)| lists.get(v).contains(c))
    }
}

impl Ord for PartialColoring {
    fn cmp(&self, other: &Self) -> Ordering {
        self.assignments().cmp(other.assignments())
    }
}

impl PartialOrd for PartialColoring {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PartialColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.assignments()).finish()
    }
}

/// `L_φ`: lists of uncolored vertices minus colors on colored neighbors.
/// Colored vertices keep the singleton of their own color.
pub fn residual_lists(
    g: &PlanarEmbedding,
    lists: &ListAssignment,
    phi: &PartialColoring,
) -> Result<ListAssignment, ColorError> {
    if let Some((u, v)) = phi.conflict(g.adjacency()) {
        return Err(ColorError::ImproperColoring(g.label(u), g.label(v)));
    }
    Ok(ListAssignment::new(
        (0..g.n())
            .map(|v| match phi.get(v) {
                Some(c) => ColorSet::single(c),
                None => lists
                    .get(v)
                    .difference(phi.neighbor_colors(g.adjacency(), v)),
            })
            .collect(),
    ))
}

/// Size of `L_φ(v)` for an uncolored `v`.
pub fn residual_size(
    adjacency: &[VertexSet],
    lists: &ListAssignment,
    phi: &PartialColoring,
    v: Vertex,
) -> usize {
    lists
        .get(v)
        .difference(phi.neighbor_colors(adjacency, v))
        .len()
}

/// Backtracking search over `todo`: most constrained vertex first (lowest id
/// on ties), colors ascending, forward checking on uncolored neighbors.
pub fn search(
    adjacency: &[VertexSet],
    domains: &mut [u64],
    todo: u64,
    assign: &mut [Color],
) -> bool {
    if todo == 0 {
        return true;
    }
    let mut best = 0;
    let mut best_size = u32::MAX;
    let mut rest = todo;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let size = domains[v].count_ones();
        if size < best_size {
            best_size = size;
            best = v;
            if size <= 1 {
                break;
            }
        }
    }
    if best_size == 0 {
        return false;
    }
    let v = best;
    let remaining = todo & !(1 << v);
    let neighbors = adjacency[v].0 & remaining;
    let mut colors = domains[v];
    while colors != 0 {
        let c = colors.trailing_zeros();
        colors &= colors - 1;
        let bit = 1u64 << c;
        let mut touched = 0u64;
        let mut wiped = false;
        let mut nbrs = neighbors;
        while nbrs != 0 {
            let u = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            if domains[u] & bit != 0 {
                domains[u] &= !bit;
                touched |= 1 << u;
                wiped |= domains[u] == 0;
            }
        }
        if !wiped {
            assign[v] = c as Color;
            if search(adjacency, domains, remaining, assign) {
                return true;
            }
        }
        let mut back = touched;
        while back != 0 {
            let u = back.trailing_zeros() as usize;
            back &= back - 1;
            domains[u] |= bit;
        }
    }
    false
}

/// Decides whether `phi` extends to a proper coloring of `targets` from the
/// lists, ignoring vertices outside `targets`; returns one such coloring.
pub fn extend_raw(
    adjacency: &[VertexSet],
    lists: &[ColorSet],
    phi: &PartialColoring,
    targets: VertexSet,
) -> Option<PartialColoring> {
    let colored = phi.domain();
    let within: Vec<VertexSet> = adjacency
        .iter()
        .map(|a| a.intersection(targets.union(colored)))
        .collect();
    if phi.conflict(&within).is_some() || phi.assignments().any(|(v, c)| !lists[v].contains(c)) {
        return None;
    }
    let todo = targets.difference(colored);
    let mut domains = [0u64; 64];
    for v in todo {
        domains[v] = lists[v].difference(phi.neighbor_colors(&within, v)).0;
        if domains[v] == 0 {
            return None;
        }
    }
    let mut assign = [0 as Color; 64];
    if !search(&within, &mut domains, todo.0, &mut assign) {
        return None;
    }
    let mut out = phi.clone();
    for v in todo {
        out.set(v, assign[v]);
    }
    Some(out)
}

/// Fast check that a proper `phi` respecting the lists extends to every
/// vertex of the graph. Callers guarantee properness.
pub fn completes(adjacency: &[VertexSet], lists: &[ColorSet], phi: &PartialColoring) -> bool {
    let mut domains = [0u64; 64];
    let mut todo = 0u64;
    for v in 0..adjacency.len() {
        if phi.get(v).is_none() {
            let d = lists[v].difference(phi.neighbor_colors(adjacency, v)).0;
            if d == 0 {
                return false;
            }
            domains[v] = d;
            todo |= 1 << v;
        }
    }
    let mut assign = [0 as Color; 64];
    search(adjacency, &mut domains, todo, &mut assign)
}

/// Calls `visit` on every proper extension of `phi` over `order` (ascending
/// lexicographic order); stops early when `visit` returns false. Returns
/// false exactly when stopped early.
pub fn visit_extensions(
    adjacency: &[VertexSet],
    lists: &[ColorSet],
    phi: &mut PartialColoring,
    order: &[Vertex],
    visit: &mut impl FnMut(&PartialColoring) -> bool,
) -> bool {
    let Some((&v, rest)) = order.split_first() else {
        return visit(phi);
    };
    let allowed = lists[v].difference(phi.neighbor_colors(adjacency, v));
    for c in allowed.iter() {
        phi.set(v, c);
        let go_on = visit_extensions(adjacency, lists, phi, rest, visit);
        phi.unset(v);
        if !go_on {
            return false;
        }
    }
    true
}

/// A proper L-coloring of `targets` extending `phi`, or `None` when none exists.
pub fn extend_coloring(
    g: &PlanarEmbedding,
    lists: &ListAssignment,
    phi: &PartialColoring,
    targets: VertexSet,
) -> Option<PartialColoring> {
    extend_raw(g.adjacency(), lists.as_slice(), phi, targets)
}

/// True when `phi` extends to an L-coloring of the whole graph.
pub fn extends_to_all(g: &PlanarEmbedding, lists: &ListAssignment, phi: &PartialColoring) -> bool {
    extend_coloring(g, lists, phi, g.vertices()).is_some()
}

/// Every proper extension of `phi` to `dom(phi) ∪ domain`, in ascending
/// lexicographic order by (vertex, color).
pub fn enumerate_extensions<'a>(
    g: &'a PlanarEmbedding,
    lists: &'a ListAssignment,
    phi: &PartialColoring,
    domain: VertexSet,
) -> Extensions<'a> {
    Extensions::new(g.adjacency(), lists.as_slice(), phi, domain)
}

/// Streaming enumerator behind [`enumerate_extensions`].
pub struct Extensions<'a> {
    adjacency: &'a [VertexSet],
    lists: &'a [ColorSet],
    order: Vec<Vertex>,
    candidates: Vec<u64>,
    current: PartialColoring,
    depth: usize,
    state: ExtState,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ExtState {
    Fresh,
    Running,
    Done,
}

impl<'a> Extensions<'a> {
    pub fn new(
        adjacency: &'a [VertexSet],
        lists: &'a [ColorSet],
        phi: &PartialColoring,
        domain: VertexSet,
    ) -> Self {
        let colored = phi.domain();
        let valid =
            phi.is_proper(adjacency) && phi.assignments().all(|(v, c)| lists[v].contains(c));
        let order: Vec<Vertex> = domain.difference(colored).iter().collect();
        Extensions {
            adjacency,
            lists,
            candidates: vec![0; order.len()],
            order,
            current: phi.clone(),
            depth: 0,
            state: if valid {
                ExtState::Fresh
            } else {
                ExtState::Done
            },
        }
    }

    fn allowed(&self, v: Vertex) -> u64 {
        self.lists[v]
            .difference(self.current.neighbor_colors(self.adjacency, v))
            .0
    }
}

impl Iterator for Extensions<'_> {
    type Item = PartialColoring;

    fn next(&mut self) -> Option<PartialColoring> {
        match self.state {
            ExtState::Done => return None,
            ExtState::Fresh => {
                self.state = ExtState::Running;
                if self.order.is_empty() {
                    self.state = ExtState::Done;
                    return Some(self.current.clone());
                }
                self.depth = 0;
                self.candidates[0] = self.allowed(self.order[0]);
            }
            ExtState::Running => self.depth = self.order.len() - 1,
        }
        loop {
            let d = self.depth;
            let v = self.order[d];
            if self.candidates[d] == 0 {
                self.current.unset(v);
                if d == 0 {
                    self.state = ExtState::Done;
                    return None;
                }
                self.depth -= 1;
                continue;
            }
            let c = self.candidates[d].trailing_zeros() as Color;
            self.candidates[d] &= self.candidates[d] - 1;
            self.current.set(v, c);
            if d + 1 == self.order.len() {
                return Some(self.current.clone());
            }
            self.depth += 1;
            let next = self.order[self.depth];
            self.candidates[self.depth] = self.allowed(next);
        }
    }
}

/// Which position of a 2-path is left free in a Λ-set query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FreeSlot {
    First,
    Middle,
    Last,
}

/// Λ-set of a 2-path `[p1, p2, p3]`: colors for the free position such that,
/// with the two fixed colors on the other positions (in path order), the
/// coloring extends to all of the graph.
pub fn lambda_set(
    g: &PlanarEmbedding,
    lists: &ListAssignment,
    path: [Vertex; 3],
    free: FreeSlot,
    fixed: (Color, Color),
) -> Result<ColorSet, ColorError> {
    let (free_v, others) = match free {
        FreeSlot::First => (path[0], [path[1], path[2]]),
        FreeSlot::Middle => (path[1], [path[0], path[2]]),
        FreeSlot::Last => (path[2], [path[0], path[1]]),
    };
    for (v, c) in others.into_iter().zip([fixed.0, fixed.1]) {
        if !lists.get(v).contains(c) {
            return Err(ColorError::ColorNotInList {
                vertex: g.label(v),
                color: u32::from(c),
            });
        }
    }
    let base = PartialColoring::from_pairs(g.n(), &[(others[0], fixed.0), (others[1], fixed.1)]);
    Ok(lists
        .get(free_v)
        .iter()
        .filter(|&d| extends_to_all(g, lists, &base.with(free_v, d)))
        .collect())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RainbowError {
    #[error(transparent)]
    Color(#[from] ColorError),
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error("path {0:?} is not a subpath of the outer cycle with at least one edge")]
    PathNotOnCycle(Vec<u32>),
    #[error("endpoint {0} has an empty list")]
    EmptyEndpointList(u32),
    #[error("outer vertex {0} off the path has a list of size {1} (needs 3)")]
    ShortOuterList(u32, usize),
    #[error("interior vertex {0} has a list of size {1} (needs 5)")]
    ShortInteriorList(u32, usize),
}

/// A plane graph with outer cycle `C`, a path `P` on `C`, and lists meeting
/// the floors: nonempty at the ends of `P`, three on `C - P`, five inside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rainbow {
    graph: PlanarEmbedding,
    path: Vec<Vertex>,
    lists: ListAssignment,
    cycle: Vec<Vertex>,
    arc: Vec<Vertex>,
}

impl Rainbow {
    pub fn new(
        graph: PlanarEmbedding,
        path: Vec<Vertex>,
        lists: ListAssignment,
    ) -> Result<Self, RainbowError> {
        let rainbow = Self::unchecked(graph, path, lists)?;
        rainbow.check_floors()?;
        Ok(rainbow)
    }

    /// Builds the structure without checking list floors.
    pub fn unchecked(
        graph: PlanarEmbedding,
        path: Vec<Vertex>,
        lists: ListAssignment,
    ) -> Result<Self, RainbowError> {
        let cycle = graph.outer_cycle()?.to_vec();
        let bad = || RainbowError::PathNotOnCycle(graph.labels_of(&path));
        if path.len() < 2 || path.len() > cycle.len() || graph.check_path(&path).is_err() {
            return Err(bad());
        }
        let m = cycle.len();
        let start = cycle.iter().position(|&v| v == path[0]).ok_or_else(bad)?;
        let forward = (0..path.len()).all(|i| cycle[(start + i) % m] == path[i]);
        let backward = (0..path.len()).all(|i| cycle[(start + m - i) % m] == path[i]);
        let cycle: Vec<Vertex> = match (forward, backward) {
            (true, _) => (0..m).map(|i| cycle[(start + i) % m]).collect(),
            (false, true) => (0..m).map(|i| cycle[(start + m - i) % m]).collect(),
            _ => return Err(bad()),
        };
        let k = path.len() - 1;
        let mut arc: Vec<Vertex> = cycle[k..].to_vec();
        arc.push(cycle[0]);
        arc.reverse();
        Ok(Rainbow {
            graph,
            path,
            lists,
            cycle,
            arc,
        })
    }

    fn check_floors(&self) -> Result<(), RainbowError> {
        let g = &self.graph;
        for &p in &[self.p0(), self.p1()] {
            if self.lists.get(p).is_empty() {
                return Err(RainbowError::EmptyEndpointList(g.label(p)));
            }
        }
        for v in self.outer_off_path() {
            let size = self.lists.get(v).len();
            if size < 3 {
                return Err(RainbowError::ShortOuterList(g.label(v), size));
            }
        }
        for v in self.inner_vertices() {
            let size = self.lists.get(v).len();
            if size < 5 {
                return Err(RainbowError::ShortInteriorList(g.label(v), size));
            }
        }
        Ok(())
    }

    /// Reads graph, lists and path from a JSON document.
    pub fn from_document(doc: &GraphDocument) -> Result<Self, RainbowError> {
        let g = doc.embedding()?;
        let lists = ListAssignment::from_labels(&g, &doc.lists)?;
        let path = g.indices_of(&doc.path)?;
        Rainbow::new(g, path, lists)
    }

    pub fn to_document(&self) -> GraphDocument {
        let mut doc = GraphDocument::from_embedding(&self.graph);
        doc.lists = self.lists.to_labels(&self.graph);
        doc.path = self.graph.labels_of(&self.path);
        doc
    }

    pub fn graph(&self) -> &PlanarEmbedding {
        &self.graph
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        self.graph.adjacency()
    }

    pub fn lists(&self) -> &ListAssignment {
        &self.lists
    }

    pub fn with_lists(&self, lists: ListAssignment) -> Self {
        Rainbow {
            lists,
            ..self.clone()
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// The path `P` from `p0` to the other endpoint.
    pub fn path(&self) -> &[Vertex] {
        &self.path
    }

    pub fn path_len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn path_set(&self) -> VertexSet {
        self.path.iter().copied().collect()
    }

    /// Internal vertices of `P`.
    pub fn path_interior(&self) -> VertexSet {
        self.path[1..self.path.len() - 1].iter().copied().collect()
    }

    pub fn p0(&self) -> Vertex {
        self.path[0]
    }

    pub fn p1(&self) -> Vertex {
        self.path[self.path.len() - 1]
    }

    /// Outer cycle, starting at `p0` and running along `P` first.
    pub fn cycle(&self) -> &[Vertex] {
        &self.cycle
    }

    pub fn cycle_set(&self) -> VertexSet {
        self.cycle.iter().copied().collect()
    }

    /// The path `C - P̊` from `p0` to the other endpoint of `P`.
    pub fn arc(&self) -> &[Vertex] {
        &self.arc
    }

    pub fn arc_set(&self) -> VertexSet {
        self.arc.iter().copied().collect()
    }

    /// Vertices of `C` not on `P`.
    pub fn outer_off_path(&self) -> VertexSet {
        self.cycle_set().difference(self.path_set())
    }

    /// Vertices not on `C`.
    pub fn inner_vertices(&self) -> VertexSet {
        self.graph.vertices().difference(self.cycle_set())
    }

    pub fn is_end_linked(&self) -> bool {
        self.lists.get(self.p0()).len() + self.lists.get(self.p1()).len() >= 4
    }
}

//! Plane graphs stored as rotation systems with a designated outer face.
//!
//! Vertices are dense indices `0..n`; each index maps back to the external
//! integer id through [`PlanarEmbedding::label`]. Indices follow ascending
//! external id, so iterating indices in order is iterating ids in order.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index inside one embedding.
pub type Vertex = usize;

/// Largest number of vertices an embedding may hold.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices packed into one machine word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn single(v: Vertex) -> Self {
        VertexSet(1 << v)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: Vertex) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: Vertex) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: Vertex) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: Vertex) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Vertex)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over a [`VertexSet`].
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = Vertex;
    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as Vertex;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("the graph needs at least two vertices and one edge")]
    TooSmall,
    #[error("too many vertices: {0} (limit {MAX_VERTICES})")]
    TooManyVertices(usize),
    #[error("vertex {0} lists itself as a neighbor")]
    Loop(u32),
    #[error("vertex {0} lists neighbor {1} more than once")]
    ParallelEdge(u32, u32),
    #[error("vertex {0} is not a vertex of the graph")]
    UnknownVertex(u32),
    #[error("edge {0}-{1} appears in only one rotation")]
    Asymmetric(u32, u32),
    #[error("the graph is disconnected")]
    Disconnected,
    #[error("rotation system is not planar: V - E + F = {0}")]
    NonPlanarRotation(i64),
    #[error("outer face {0:?} is not a face of the rotation system")]
    BadOuterFace(Vec<u32>),
    #[error("outer face is not a simple cycle")]
    OuterNotCycle,
    #[error("{0:?} is not a path of the graph")]
    NotAPath(Vec<u32>),
    #[error("{0:?} is not a cycle of the graph")]
    NotACycle(Vec<u32>),
    #[error("{0:?} is not a chord path of the outer cycle")]
    NotAChord(Vec<u32>),
    #[error("{0:?} does not meet the outer arc in one vertex or exactly in its two endpoints")]
    BadIntersection(Vec<u32>),
}

/// How the outer face of a new embedding is identified.
#[derive(Clone, Debug)]
enum OuterSpec {
    /// A vertex sequence matched against faces in either orientation.
    Sequence(Vec<Vertex>),
    /// The face containing the dart `u -> v`.
    Dart(Vertex, Vertex),
}

/// A connected plane graph given by clockwise rotations and an outer face.
#[derive(Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    labels: Vec<u32>,
    rotation: Vec<Vec<Vertex>>,
    adjacency: Vec<VertexSet>,
    faces: Vec<Vec<Vertex>>,
    dart_face: Vec<Vec<usize>>,
    outer: usize,
}

impl fmt::Debug for PlanarEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rotation: BTreeMap<u32, Vec<u32>> = (0..self.n())
            .map(|v| {
                (
                    self.labels[v],
                    self.rotation[v].iter().map(|&u| self.labels[u]).collect(),
                )
            })
            .collect();
        f.debug_struct("PlanarEmbedding")
            .field("rotation", &rotation)
            .field("outer", &self.labels_of(self.outer_face()))
            .finish()
    }
}

impl PlanarEmbedding {
    /// Validates a rotation system keyed by external ids and designates the
    /// face matching `outer` (in either direction) as the outer face.
    pub fn build(rotation: &BTreeMap<u32, Vec<u32>>, outer: &[u32]) -> Result<Self, PlanarError> {
        let labels: Vec<u32> = rotation.keys().copied().collect();
        let index: BTreeMap<u32, Vertex> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let lookup = |l: u32| index.get(&l).copied().ok_or(PlanarError::UnknownVertex(l));
        let rot = rotation
            .values()
            .map(|nbrs| {
                nbrs.iter()
                    .map(|&l| lookup(l))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let outer = outer
            .iter()
            .map(|&l| lookup(l))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_parts(labels, rot, OuterSpec::Sequence(outer))
    }

    /// Builds an embedding from dense rotations; labels default to indices.
    pub fn from_rotation(
        rotation: Vec<Vec<Vertex>>,
        outer: &[Vertex],
    ) -> Result<Self, PlanarError> {
        let labels = (0..rotation.len() as u32).collect();
        Self::from_parts(labels, rotation, OuterSpec::Sequence(outer.to_vec()))
    }

    /// Builds an embedding whose outer face is the face containing dart `u -> v`.
    pub fn from_rotation_dart(
        labels: Vec<u32>,
        rotation: Vec<Vec<Vertex>>,
        dart: (Vertex, Vertex),
    ) -> Result<Self, PlanarError> {
        Self::from_parts(labels, rotation, OuterSpec::Dart(dart.0, dart.1))
    }

    fn from_parts(
        labels: Vec<u32>,
        rotation: Vec<Vec<Vertex>>,
        outer: OuterSpec,
    ) -> Result<Self, PlanarError> {
        let n = rotation.len();
        if n > MAX_VERTICES {
            return Err(PlanarError::TooManyVertices(n));
        }
        if n < 2 {
            return Err(PlanarError::TooSmall);
        }
        let mut adjacency = vec![VertexSet::EMPTY; n];
        for (v, nbrs) in rotation.iter().enumerate() {
            for &u in nbrs {
                if u >= n {
                    return Err(PlanarError::UnknownVertex(u as u32));
                }
                if u == v {
                    return Err(PlanarError::Loop(labels[v]));
                }
                if adjacency[v].contains(u) {
                    return Err(PlanarError::ParallelEdge(labels[v], labels[u]));
                }
                adjacency[v].insert(u);
            }
        }
        for v in 0..n {
            for u in adjacency[v] {
                if !adjacency[u].contains(v) {
                    return Err(PlanarError::Asymmetric(labels[v], labels[u]));
                }
            }
        }
        let edge_count: usize = adjacency.iter().map(|a| a.len()).sum::<usize>() / 2;
        if edge_count == 0 {
            return Err(PlanarError::TooSmall);
        }
        if !is_connected(&adjacency) {
            return Err(PlanarError::Disconnected);
        }
        let (faces, dart_face) = trace_faces(&rotation);
        let euler = n as i64 - edge_count as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(PlanarError::NonPlanarRotation(euler));
        }
        let outer = match outer {
            OuterSpec::Dart(u, v) => {
                let pos = rotation
                    .get(u)
                    .and_then(|r| r.iter().position(|&w| w == v))
                    .ok_or_else(|| PlanarError::BadOuterFace(vec![labels[u.min(n - 1)]]))?;
                dart_face[u][pos]
            }
            OuterSpec::Sequence(seq) => faces
                .iter()
                .position(|f| cyclic_match(f, &seq))
                .or_else(|| {
                    let rev: Vec<Vertex> = seq.iter().rev().copied().collect();
                    faces.iter().position(|f| cyclic_match(f, &rev))
                })
                .ok_or_else(|| {
                    PlanarError::BadOuterFace(seq.iter().map(|&v| labels[v]).collect())
                })?,
        };
        Ok(PlanarEmbedding {
            labels,
            rotation,
            adjacency,
            faces,
            dart_face,
            outer,
        })
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn label(&self, v: Vertex) -> u32 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn labels_of(&self, vs: &[Vertex]) -> Vec<u32> {
        vs.iter().map(|&v| self.labels[v]).collect()
    }

    pub fn index_of(&self, label: u32) -> Option<Vertex> {
        self.labels.binary_search(&label).ok()
    }

    pub fn indices_of(&self, labels: &[u32]) -> Result<Vec<Vertex>, PlanarError> {
        labels
            .iter()
            .map(|&l| self.index_of(l).ok_or(PlanarError::UnknownVertex(l)))
            .collect()
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        self.adjacency[v]
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adjacency
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// All edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        (0..self.n())
            .flat_map(|u| {
                self.adjacency[u]
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn faces(&self) -> &[Vec<Vertex>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn outer_face(&self) -> &[Vertex] {
        &self.faces[self.outer]
    }

    pub fn outer_face_index(&self) -> usize {
        self.outer
    }

    /// The outer face as a cycle, when its boundary is a simple cycle.
    pub fn outer_cycle(&self) -> Result<&[Vertex], PlanarError> {
        let face = self.outer_face();
        let distinct: VertexSet = face.iter().copied().collect();
        if face.len() >= 3 && distinct.len() == face.len() {
            Ok(face)
        } else {
            Err(PlanarError::OuterNotCycle)
        }
    }

    fn face_of_dart(&self, u: Vertex, v: Vertex) -> usize {
        let pos = self.rotation[u]
            .iter()
            .position(|&w| w == v)
            .expect("dart exists");
        self.dart_face[u][pos]
    }

    /// Checks that `vs` is a path: distinct vertices, consecutive ones adjacent.
    pub fn check_path(&self, vs: &[Vertex]) -> Result<(), PlanarError> {
        let distinct: VertexSet = vs.iter().copied().collect();
        let ok = !vs.is_empty()
            && vs.iter().all(|&v| v < self.n())
            && distinct.len() == vs.len()
            && vs.windows(2).all(|w| self.has_edge(w[0], w[1]));
        if ok {
            Ok(())
        } else {
            Err(PlanarError::NotAPath(self.labels_of_checked(vs)))
        }
    }

    /// Checks that `vs` (closed implicitly) is a cycle of length at least three.
    pub fn check_cycle(&self, vs: &[Vertex]) -> Result<(), PlanarError> {
        let closes =
            vs.len() >= 3 && self.check_path(vs).is_ok() && self.has_edge(vs[0], vs[vs.len() - 1]);
        if closes {
            Ok(())
        } else {
            Err(PlanarError::NotACycle(self.labels_of_checked(vs)))
        }
    }

    fn labels_of_checked(&self, vs: &[Vertex]) -> Vec<u32> {
        vs.iter()
            .map(|&v| self.labels.get(v).copied().unwrap_or(v as u32))
            .collect()
    }

    /// Faces lying inside the cycle, as a flag per face.
    fn interior_faces(&self, cycle: &[Vertex]) -> Vec<bool> {
        let on_cycle = cycle_edge_flags(self, cycle);
        let mut exterior = vec![false; self.faces.len()];
        let mut stack = vec![self.outer];
        exterior[self.outer] = true;
        while let Some(f) = stack.pop() {
            for w in cycle_pairs(&self.faces[f]) {
                let (u, v) = w;
                if on_cycle(u, v) {
                    continue;
                }
                let g = self.face_of_dart(v, u);
                if !exterior[g] {
                    exterior[g] = true;
                    stack.push(g);
                }
            }
        }
        exterior.iter().map(|&e| !e).collect()
    }

    /// Vertices and edges of `Int(F)` (or `Ext(F)` when `inside` is false).
    pub fn side_of_cycle(&self, cycle: &[Vertex], inside: bool) -> Result<Subgraph, PlanarError> {
        self.check_cycle(cycle)?;
        let interior = self.interior_faces(cycle);
        let mut vertices: VertexSet = cycle.iter().copied().collect();
        let mut adjacency = vec![VertexSet::EMPTY; self.n()];
        for (u, v) in cycle_pairs(cycle) {
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        for (f, face) in self.faces.iter().enumerate() {
            if interior[f] != inside {
                continue;
            }
            for (u, v) in cycle_pairs(face) {
                vertices.insert(u);
                adjacency[u].insert(v);
                adjacency[v].insert(u);
            }
        }
        Ok(Subgraph {
            vertices,
            adjacency,
        })
    }

    /// `Int(F)` as an embedding whose outer face is `F`.
    pub fn interior_of(&self, cycle: &[Vertex]) -> Result<PlanarEmbedding, PlanarError> {
        let sub = self.side_of_cycle(cycle, true)?;
        let interior = self.interior_faces(cycle);
        let (u, v) = (cycle[0], cycle[1]);
        let dart = if interior[self.face_of_dart(u, v)] {
            (v, u)
        } else {
            (u, v)
        };
        self.restrict(&sub, dart)
    }

    /// `Ext(F)` as an embedding keeping the original outer face.
    pub fn exterior_of(&self, cycle: &[Vertex]) -> Result<PlanarEmbedding, PlanarError> {
        let sub = self.side_of_cycle(cycle, false)?;
        let face = self.outer_face();
        let dart = (face[0], face[1 % face.len()]);
        self.restrict(&sub, dart)
    }

    /// The embedding induced on a subgraph, with the outer face containing `dart`.
    /// Vertex indices are renumbered; labels are kept.
    pub fn restrict(
        &self,
        sub: &Subgraph,
        dart: (Vertex, Vertex),
    ) -> Result<PlanarEmbedding, PlanarError> {
        let keep: Vec<Vertex> = sub.vertices.iter().collect();
        let mut new_index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let rotation = keep
            .iter()
            .map(|&v| {
                self.rotation[v]
                    .iter()
                    .filter(|&&u| sub.adjacency[v].contains(u) && sub.vertices.contains(u))
                    .map(|&u| new_index[u])
                    .collect()
            })
            .collect();
        let labels = keep.iter().map(|&v| self.labels[v]).collect();
        Self::from_parts(
            labels,
            rotation,
            OuterSpec::Dart(new_index[dart.0], new_index[dart.1]),
        )
    }

    /// Edges with both ends on the cycle that are not cycle edges.
    pub fn chords_of_cycle(&self, cycle: &[Vertex]) -> Result<Vec<(Vertex, Vertex)>, PlanarError> {
        self.check_cycle(cycle)?;
        let on: VertexSet = cycle.iter().copied().collect();
        let is_cycle_edge = cycle_edge_flags(self, cycle);
        Ok(self
            .edges()
            .into_iter()
            .filter(|&(u, v)| on.contains(u) && on.contains(v) && !is_cycle_edge(u, v))
            .collect())
    }

    /// The two sides of a chord path `Q` of the outer cycle.
    ///
    /// Part 0 is bounded by `Q` and the outer arc running from the last vertex
    /// of `Q` to its first in outer-face order; part 1 uses the other arc.
    pub fn natural_partition(&self, chord: &[Vertex]) -> Result<[PlanarEmbedding; 2], PlanarError> {
        let cycle = self.outer_cycle()?;
        let bad = || PlanarError::NotAChord(self.labels_of_checked(chord));
        if chord.len() < 2 {
            return Err(bad());
        }
        self.check_path(chord).map_err(|_| bad())?;
        let on: VertexSet = cycle.iter().copied().collect();
        let (a, b) = (chord[0], chord[chord.len() - 1]);
        let inner = &chord[1..chord.len() - 1];
        if !on.contains(a) || !on.contains(b) || inner.iter().any(|&v| on.contains(v)) {
            return Err(bad());
        }
        if chord.len() == 2
            && self
                .chords_of_cycle(cycle)?
                .iter()
                .all(|&e| e != (a.min(b), a.max(b)))
        {
            return Err(bad());
        }
        let arc_ab = outer_arc(cycle, a, b);
        let arc_ba = outer_arc(cycle, b, a);
        // cycle_i = arc from one end to the other, then back along Q
        let mut part0: Vec<Vertex> = arc_ba.clone();
        part0.extend(inner.iter().copied());
        let mut part1: Vec<Vertex> = arc_ab.clone();
        part1.extend(inner.iter().rev().copied());
        Ok([self.interior_of(&part0)?, self.interior_of(&part1)?])
    }

    /// True when every cycle on at most four vertices has nothing strictly
    /// inside it or nothing strictly outside it.
    pub fn is_short_inseparable(&self) -> bool {
        short_cycles(self).into_iter().all(|cycle| {
            let on: VertexSet = cycle.iter().copied().collect();
            let inside = self
                .side_of_cycle(&cycle, true)
                .expect("enumerated cycle")
                .vertices;
            let outside = self
                .side_of_cycle(&cycle, false)
                .expect("enumerated cycle")
                .vertices;
            inside == on || outside == on
        })
    }
}

/// A subgraph given by a vertex set and per-vertex neighbor sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub vertices: VertexSet,
    pub adjacency: Vec<VertexSet>,
}

impl Subgraph {
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.vertices
            .iter()
            .flat_map(|u| {
                self.adjacency[u]
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }
}

/// Consecutive pairs of a closed walk, including the closing pair.
pub fn cycle_pairs(walk: &[Vertex]) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    (0..walk.len()).map(move |i| (walk[i], walk[(i + 1) % walk.len()]))
}

fn cycle_edge_flags<'a>(
    g: &PlanarEmbedding,
    cycle: &'a [Vertex],
) -> impl Fn(Vertex, Vertex) -> bool + 'a {
    let mut marks = vec![VertexSet::EMPTY; g.n()];
    for (u, v) in cycle_pairs(cycle) {
        marks[u].insert(v);
        marks[v].insert(u);
    }
    move |u, v| marks[u].contains(v)
}

/// Vertices of the outer cycle from `from` to `to` following face order.
pub fn outer_arc(cycle: &[Vertex], from: Vertex, to: Vertex) -> Vec<Vertex> {
    let start = cycle
        .iter()
        .position(|&v| v == from)
        .expect("vertex on cycle");
    let mut arc = Vec::new();
    for i in 0..cycle.len() {
        let v = cycle[(start + i) % cycle.len()];
        arc.push(v);
        if v == to {
            break;
        }
    }
    arc
}

fn is_connected(adjacency: &[VertexSet]) -> bool {
    let mut seen = VertexSet::single(0);
    let mut frontier = VertexSet::single(0);
    while let Some(v) = frontier.first() {
        frontier.remove(v);
        let fresh = adjacency[v].difference(seen);
        seen = seen.union(fresh);
        frontier = frontier.union(fresh);
    }
    seen.len() == adjacency.len()
}

/// Traces faces: the dart after `u -> v` is `v -> w` where `w` follows `u`
/// in the rotation at `v`.
fn trace_faces(rotation: &[Vec<Vertex>]) -> (Vec<Vec<Vertex>>, Vec<Vec<usize>>) {
    let mut dart_face: Vec<Vec<usize>> =
        rotation.iter().map(|r| vec![usize::MAX; r.len()]).collect();
    let mut faces = Vec::new();
    for u in 0..rotation.len() {
        for i in 0..rotation[u].len() {
            if dart_face[u][i] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut face = Vec::new();
            let (mut a, mut ai) = (u, i);
            while dart_face[a][ai] == usize::MAX {
                dart_face[a][ai] = id;
                face.push(a);
                let b = rotation[a][ai];
                let back = rotation[b]
                    .iter()
                    .position(|&w| w == a)
                    .expect("symmetric rotation");
                let next = (back + 1) % rotation[b].len();
                a = b;
                ai = next;
            }
            faces.push(face);
        }
    }
    (faces, dart_face)
}

fn cyclic_match(face: &[Vertex], seq: &[Vertex]) -> bool {
    if face.len() != seq.len() || seq.is_empty() {
        return false;
    }
    (0..face.len()).any(|shift| (0..face.len()).all(|i| face[(i + shift) % face.len()] == seq[i]))
}

/// All cycles with three or four vertices, each reported once.
pub fn short_cycles(g: &PlanarEmbedding) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        for b in g.neighbors(a).iter().filter(|&b| b > a) {
            for c in g.neighbors(b).iter().filter(|&c| c > a) {
                if c > b && g.has_edge(c, a) {
                    out.push(vec![a, b, c]);
                }
                let closing = g.neighbors(c).intersection(g.neighbors(a));
                for d in closing.iter().filter(|&d| d > b && d != c) {
                    out.push(vec![a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Result of testing a graph against the broken-wheel and wheel shapes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum WheelClass {
    BrokenWheel {
        principal_path: [u32; 3],
        rim_edge_count: usize,
    },
    Wheel {
        central_vertex: u32,
        rim_edge_count: usize,
    },
    Neither,
}

/// Classifies `g` as a broken wheel with the supplied principal path
/// `q1 p qn`, otherwise as a wheel, otherwise neither.
pub fn classify_wheel(g: &PlanarEmbedding, principal: Option<[Vertex; 3]>) -> WheelClass {
    if let Some([first, hub, last]) = principal {
        if let Some(rim) = broken_wheel_rim(g, hub) {
            if rim.len() >= 2 && rim[0] == first && rim[rim.len() - 1] == last
                || rim.len() >= 2 && rim[0] == last && rim[rim.len() - 1] == first
            {
                return WheelClass::BrokenWheel {
                    principal_path: [g.label(first), g.label(hub), g.label(last)],
                    rim_edge_count: rim.len() - 1,
                };
            }
            // with three vertices the rim is an edge and either orientation is fine
        }
    }
    for hub in 0..g.n() {
        let rest = g.vertices().without(hub);
        if g.neighbors(hub) != rest || rest.len() < 3 {
            continue;
        }
        if rest
            .iter()
            .all(|v| g.neighbors(v).intersection(rest).len() == 2)
            && connected_within(g, rest)
        {
            return WheelClass::Wheel {
                central_vertex: g.label(hub),
                rim_edge_count: rest.len(),
            };
        }
    }
    WheelClass::Neither
}

/// When `g - hub` is a path and `hub` sees all of it, the path in order.
pub fn broken_wheel_rim(g: &PlanarEmbedding, hub: Vertex) -> Option<Vec<Vertex>> {
    let rest = g.vertices().without(hub);
    if rest.len() < 2 || g.neighbors(hub) != rest {
        return None;
    }
    induced_path_order(g, rest)
}

/// Orders `set` as a path when the induced subgraph on it is exactly a path.
pub fn induced_path_order(g: &PlanarEmbedding, set: VertexSet) -> Option<Vec<Vertex>> {
    let deg = |v: Vertex| g.neighbors(v).intersection(set).len();
    if set.is_empty() {
        return None;
    }
    if set.len() == 1 {
        return set.first().map(|v| vec![v]);
    }
    let ends: Vec<Vertex> = set.iter().filter(|&v| deg(v) == 1).collect();
    if ends.len() != 2 || set.iter().any(|v| deg(v) > 2 || deg(v) == 0) {
        return None;
    }
    let mut order = vec![ends[0]];
    let mut seen = VertexSet::single(ends[0]);
    while let Some(next) = g
        .neighbors(*order.last().expect("nonempty"))
        .intersection(set)
        .difference(seen)
        .first()
    {
        order.push(next);
        seen.insert(next);
    }
    (order.len() == set.len()).then_some(order)
}

fn connected_within(g: &PlanarEmbedding, set: VertexSet) -> bool {
    let Some(start) = set.first() else {
        return true;
    };
    let mut seen = VertexSet::single(start);
    let mut frontier = seen;
    while let Some(v) = frontier.first() {
        frontier.remove(v);
        let fresh = g.neighbors(v).intersection(set).difference(seen);
        seen = seen.union(fresh);
        frontier = frontier.union(fresh);
    }
    seen == set
}

/// The JSON graph document accepted by the command line.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub rotation: BTreeMap<u32, Vec<u32>>,
    pub outer: Vec<u32>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lists: BTreeMap<u32, Vec<u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub path: Vec<u32>,
}

impl GraphDocument {
    pub fn embedding(&self) -> Result<PlanarEmbedding, PlanarError> {
        PlanarEmbedding::build(&self.rotation, &self.outer)
    }

    pub fn from_embedding(g: &PlanarEmbedding) -> Self {
        GraphDocument {
            rotation: (0..g.n())
                .map(|v| {
                    (
                        g.label(v),
                        g.rotation(v).iter().map(|&u| g.label(u)).collect(),
                    )
                })
                .collect(),
            outer: g.labels_of(g.outer_face()),
            lists: BTreeMap::new(),
            path: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rot(pairs: &[(u32, &[u32])]) -> BTreeMap<u32, Vec<u32>> {
        pairs.iter().map(|(v, r)| (*v, r.to_vec())).collect()
    }

    #[test]
    fn triangle_has_two_faces() {
        let g = PlanarEmbedding::build(
            &rot(&[(1, &[2, 3]), (2, &[3, 1]), (3, &[1, 2])]),
            &[1, 2, 3],
        )
        .unwrap();
        assert_eq!(g.face_count(), 2);
        assert_eq!(g.outer_cycle().unwrap().len(), 3);
    }

    #[test]
    fn rejects_asymmetric_rotation() {
        let err = PlanarEmbedding::build(&rot(&[(1, &[2, 3]), (2, &[1]), (3, &[2])]), &[1, 2, 3])
            .unwrap_err();
        assert!(matches!(err, PlanarError::Asymmetric(..)));
    }

    #[test]
    fn rejects_non_planar_rotation() {
        // K4 with a rotation of genus one
        let r = rot(&[
            (0, &[1, 2, 3]),
            (1, &[0, 2, 3]),
            (2, &[0, 1, 3]),
            (3, &[0, 1, 2]),
        ]);
        let err = PlanarEmbedding::build(&r, &[0, 1, 2]).unwrap_err();
        assert!(matches!(
            err,
            PlanarError::NonPlanarRotation(_) | PlanarError::BadOuterFace(_)
        ));
    }

    #[test]
    fn rejects_disconnected() {
        let r = rot(&[(0, &[1]), (1, &[0]), (2, &[3]), (3, &[2])]);
        assert_eq!(
            PlanarEmbedding::build(&r, &[0, 1]).unwrap_err(),
            PlanarError::Disconnected
        );
    }

    #[test]
    fn rejects_unknown_outer_face() {
        let r = rot(&[(1, &[2, 3]), (2, &[3, 1]), (3, &[1, 2])]);
        assert!(matches!(
            PlanarEmbedding::build(&r, &[1, 2]),
            Err(PlanarError::BadOuterFace(_))
        ));
    }

    #[test]
    fn vertex_set_basics() {
        let s: VertexSet = [3, 1, 7].into_iter().collect();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 7]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(7) && !s.contains(2));
        assert_eq!(s.without(3).len(), 2);
    }
}

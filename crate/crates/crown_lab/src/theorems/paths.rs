//! Verifiers for statements about 2-paths and 3-paths. Exhaustive runs fix
//! the interior of `P` to the whole palette and evaluate every endpoint list
//! pair at once from tables indexed by endpoint colors.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;
use rand_xoshiro::SplitMix64;

use super::generate::{discs, random_disc, Disc};
use super::lists::{for_each_canonical, is_least, subsets, Perm};
use super::projection::Projection;
use super::{
    random_list, run_items, run_sampled, InstanceGenerator, Merge, Mode, Tally, TheoremError,
    VerificationReport,
};
use crate::color_core::{
    visit_extensions, Color, ColorSet, ListAssignment, PartialColoring, Rainbow,
};
use crate::obstructions::{
    base_coloring_verdict, edge_tilt, find_obstructions, is_fully_even, x_vertices, BaseCase,
    Parity,
};
use crate::planar_core::{GraphDocument, Vertex, VertexSet};
use crate::sufficiency::{end_set, is_sufficient};

/// Minimum interior degree of generated discs: interior vertices of smaller
/// degree always take a color last and never change any verdict here.
pub(super) const INTERIOR_DEGREE: usize = 5;

/// A disc with the vertex sequence of `P`.
#[derive(Clone, Debug)]
pub(super) struct Placement {
    pub disc: Disc,
    pub path: Vec<Vertex>,
}

/// One placement per class of (disc, oriented path with `edges` edges).
pub(super) fn placements(
    max_n: usize,
    edges: usize,
    palette: usize,
    min_degree: usize,
) -> Vec<Placement> {
    let mut out = Vec::new();
    for k in edges + 1..=max_n {
        let max_inner = if palette >= 5 { max_n - k } else { 0 };
        for inner in 0..=max_inner {
            for disc in discs(k, inner, min_degree) {
                let mut seen = BTreeSet::new();
                for s in 0..k {
                    for step in [1, k - 1] {
                        if seen.insert(disc.rooted_certificate(s, (s + step) % k)) {
                            let path = (0..=edges).map(|i| (s + i * step) % k).collect();
                            out.push(Placement {
                                disc: disc.clone(),
                                path,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

impl Placement {
    /// Vertices off `P` in index order, with their pinned list sizes.
    pub fn free_vertices(&self) -> Vec<(Vertex, usize)> {
        let k = self.disc.outer_len;
        (0..self.disc.n())
            .filter(|v| !self.path.contains(v))
            .map(|v| (v, if v < k { 3 } else { 5 }))
            .collect()
    }

    pub fn rainbow(&self, lists: Vec<ColorSet>) -> Rainbow {
        Rainbow::new(
            self.disc.embedding(),
            self.path.clone(),
            ListAssignment::new(lists),
        )
        .expect("generated rainbow")
    }
}

/// Endpoint list sizes pinned at the end-linked floor.
const END_LINKED: [(usize, usize); 3] = [(1, 3), (2, 2), (3, 1)];

/// Canonical endpoint list pairs of the given sizes under `stabilizer`.
fn endpoint_pairs(
    palette: usize,
    sizes: &[(usize, usize)],
    stabilizer: &[Perm],
) -> Vec<(ColorSet, ColorSet)> {
    sizes
        .iter()
        .flat_map(|&(sa, sb)| {
            subsets(palette, sa)
                .into_iter()
                .flat_map(move |a| subsets(palette, sb).into_iter().map(move |b| (a, b)))
        })
        .filter(|&(a, b)| is_least(&[a, b], stabilizer))
        .collect()
}

pub(super) fn random_rainbow(
    rng: &mut SplitMix64,
    gen: &InstanceGenerator,
    edges: usize,
    inner_size: impl Fn(&mut SplitMix64) -> usize,
    ends: (usize, usize),
) -> Rainbow {
    let palette = gen.palette_cap;
    let n = rng.random_range(edges + 1..=gen.max_vertices.max(edges + 1));
    let k = rng.random_range(edges + 1..=n);
    let inner = if palette >= 5 { n - k } else { 0 };
    let disc = random_disc(rng, k, inner, 0.35, 0.7);
    let path: Vec<Vertex> = (0..=edges).collect();
    let mut lists: Vec<ColorSet> = (0..disc.n())
        .map(|v| match v {
            _ if v >= k => random_list(rng, palette, 5),
            _ if v > edges => random_list(rng, palette, 3),
            _ => ColorSet::EMPTY,
        })
        .collect();
    for &v in &path[1..edges] {
        let size = inner_size(rng);
        lists[v] = random_list(rng, palette, size);
    }
    lists[0] = random_list(rng, palette, ends.0);
    lists[edges] = random_list(rng, palette, ends.1);
    Rainbow::new(disc.embedding(), path, ListAssignment::new(lists)).expect("sampled rainbow")
}

/// Color pair `(a, b)` as a bit of a 64-bit board.
fn cell(a: Color, b: Color) -> u64 {
    1 << (a as u32 * 8 + b as u32)
}

fn board(a: ColorSet, b: ColorSet) -> u64 {
    a.iter()
        .fold(0, |acc, c| acc | (b.0 & 0xFF) << (c as u32 * 8))
}

fn diagonal() -> u64 {
    (0..8).fold(0, |acc, c| acc | cell(c, c))
}

/// Paths on `C` from `p0` to `p1` through neighbors of `q`, by parity.
fn dominated_path_parities(
    r: &Rainbow,
    q: Vertex,
    from: Vertex,
    to: Vertex,
    allowed: VertexSet,
) -> (bool, bool) {
    fn walk(
        r: &Rainbow,
        allowed: VertexSet,
        to: Vertex,
        at: Vertex,
        seen: VertexSet,
        len: usize,
        found: &mut (bool, bool),
    ) {
        if at == to {
            if len.is_multiple_of(2) {
                found.0 = true;
            } else {
                found.1 = true;
            }
            return;
        }
        for next in r
            .graph()
            .neighbors(at)
            .intersection(allowed)
            .difference(seen)
        {
            walk(r, allowed, to, next, seen.with(next), len + 1, found);
        }
    }
    let allowed = allowed.intersection(r.graph().neighbors(q));
    let mut found = (false, false);
    if allowed.contains(from) && allowed.contains(to) {
        walk(r, allowed, to, from, VertexSet::single(from), 0, &mut found);
    }
    found
}

/// Whether an even path from `p0` to `p1` on `C` has every vertex adjacent to `q`.
pub(super) fn even_dominated_path(r: &Rainbow) -> bool {
    dominated_path_parities(r, r.path()[1], r.p0(), r.p1(), r.cycle_set()).0
}

/// The 2-path table: bit `(a, b)` is set when the endpoint coloring is sufficient.
pub(super) fn two_path_board(
    adjacency: &[VertexSet],
    lists: &[ColorSet],
    path: &[Vertex],
) -> (Projection, u64) {
    let proj = Projection::new(adjacency, lists, path);
    let (p0, q, p1) = (path[0], path[1], path[2]);
    let mut good = 0;
    for a in lists[p0].iter() {
        for b in lists[p1].iter() {
            if a == b && adjacency[p0].contains(p1) {
                continue;
            }
            let needed = lists[q].without(a).without(b);
            let reachable = proj
                .rows()
                .iter()
                .filter(|row| !row[0].contains(a) && !row[2].contains(b))
                .fold(ColorSet::EMPTY, |acc, row| {
                    acc.union(lists[q].difference(row[1]))
                });
            if needed.is_subset(reachable) {
                good |= cell(a, b);
            }
        }
    }
    (proj, good)
}

fn end2_verdict(good: u64, pair: u64, even_path: bool) -> Option<String> {
    match (good & pair).count_ones() {
        0 => Some("End(P,G) is empty".into()),
        1 if !even_path => {
            Some("End(P,G) has one element and no even q-dominated path joins p0 and p1".into())
        }
        _ => None,
    }
}

/// The End statement on one rainbow, from the literal definitions.
pub fn check_end2(r: &Rainbow) -> Option<String> {
    if r.path_len() != 2 || !r.is_end_linked() {
        return None;
    }
    let end = end_set(r);
    match end.len() {
        0 => Some("End(P,G) is empty".into()),
        1 if !even_dominated_path(r) => Some(format!(
            "End(P,G) = {{{:?}}} and no even q-dominated path joins p0 and p1",
            end[0]
        )),
        _ => None,
    }
}

fn confirm(r: &Rainbow, literal: Option<String>, engine: String) -> (GraphDocument, String) {
    let detail =
        literal.unwrap_or_else(|| format!("engine disagreement, literal check passes: {engine}"));
    (r.to_document(), detail)
}

pub fn verify_end_2path(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    gen.check_caps()?;
    let started = Instant::now();
    let palette = gen.palette_cap;
    let tally: Tally = match gen.mode {
        Mode::Exhaustive => {
            let items = placements(gen.max_vertices, 2, palette, INTERIOR_DEGREE);
            run_items(gen, &items, |pl: &Placement, tally: &mut Tally| {
                let free = pl.free_vertices();
                let sizes: Vec<usize> = free.iter().map(|f| f.1).collect();
                let structure = pl.rainbow(full_lists(pl, palette));
                let even_path = even_dominated_path(&structure);
                let adjacency = structure.adjacency().to_vec();
                let all_pairs = endpoint_pairs(palette, &END_LINKED, &[]);
                for_each_canonical(palette, &sizes, &mut |wl, stab| {
                    let mut lists = full_lists(pl, palette);
                    for (&(v, _), &l) in free.iter().zip(wl) {
                        lists[v] = l;
                    }
                    let (_, good) = two_path_board(&adjacency, &lists, &pl.path);
                    let stab_pairs;
                    let pairs = if stab.len() == 1 {
                        &all_pairs
                    } else {
                        stab_pairs = endpoint_pairs(palette, &END_LINKED, stab);
                        &stab_pairs
                    };
                    for &(a, b) in pairs {
                        let outcome = end2_verdict(good, board(a, b), even_path).map(|engine| {
                            lists[pl.path[0]] = a;
                            lists[pl.path[2]] = b;
                            let r = pl.rainbow(lists.clone());
                            confirm(&r, check_end2(&r), engine)
                        });
                        tally.check(outcome);
                    }
                });
            })
        }
        Mode::Sampled => run_sampled(gen, |rng, tally: &mut Tally| {
            let ends = [(1, 3), (2, 2), (3, 1), (3, 3), (2, 3)][rng.random_range(0..5)];
            let r = random_rainbow(rng, gen, 2, |rng| rng.random_range(2..=palette), ends);
            let lists = r.lists().as_slice();
            let (_, good) = two_path_board(r.adjacency(), lists, r.path());
            let pair = board(lists[r.p0()], lists[r.p1()]);
            let outcome = end2_verdict(good, pair, even_dominated_path(&r))
                .map(|e| confirm(&r, check_end2(&r), e));
            tally.check(outcome);
        }),
    };
    Ok(tally.into_report("end2", gen, started))
}

/// Lists with the whole palette on `P` and nothing elsewhere yet.
pub(super) fn full_lists(pl: &Placement, palette: usize) -> Vec<ColorSet> {
    let mut lists = vec![ColorSet::range(palette); pl.disc.n()];
    for (v, size) in pl.free_vertices() {
        lists[v] = ColorSet::range(size.min(palette));
    }
    lists
}

/// Structure of a 3-path placement that does not depend on lists.
#[derive(Clone, Copy, Debug)]
pub(super) struct ThreePathShape {
    pub x0: Vertex,
    pub x1: Vertex,
    pub obstruction: bool,
    pub even_obstruction: bool,
    pub fully_even: bool,
    pub triangle: bool,
    pub tilt_even: [bool; 2],
    pub tilt_odd: [bool; 2],
    pub x1_off_path: bool,
}

impl ThreePathShape {
    pub fn of(r: &Rainbow) -> Self {
        let (x0, x1) = x_vertices(r).expect("3-path");
        let obstructions = find_obstructions(r).expect("3-path");
        let tilts = [
            edge_tilt(r, 0).expect("3-path"),
            edge_tilt(r, 1).expect("3-path"),
        ];
        ThreePathShape {
            x0,
            x1,
            obstruction: !obstructions.is_empty(),
            even_obstruction: obstructions.iter().any(|o| o.parity == Parity::Even),
            fully_even: obstructions
                .iter()
                .any(|o| is_fully_even(r, o).expect("3-path")),
            triangle: obstructions.iter().any(|o| o.triangle_type),
            tilt_even: [tilts[0].even, tilts[1].even],
            tilt_odd: [tilts[0].odd, tilts[1].odd],
            x1_off_path: r.outer_off_path().contains(x1),
        }
    }

    pub fn degenerate(&self, r: &Rainbow) -> bool {
        self.x0 == r.p0() && self.x1 == r.p1()
    }
}

/// Tables for a 3-path indexed by endpoint colors `(a, b)`.
#[derive(Clone, Copy, Debug, Default)]
pub(super) struct ThreePathTables {
    pub proper: u64,
    /// Sufficient colorings of `{p0, p1}`.
    pub end: u64,
    /// Some sufficient coloring of `{p0, x1, p1}` extends `(a, b)`.
    pub with_x1: u64,
    /// Some sufficient coloring of `{p0, x0, x1, p1}` extends `(a, b)`.
    pub with_x: u64,
    /// `(a, b)` is a base-coloring.
    pub base: u64,
}

/// Slot-based evaluation of extensions over `q0, q1` from a projection onto
/// `P` and the `x` vertices. Slots 0..4 are `p0, q0, q1, p1`.
struct ThreePathEngine {
    slots: Vec<Vertex>,
    lists: Vec<ColorSet>,
    /// Slot adjacency as bit masks over slots.
    slot_adj: Vec<u8>,
    x_slot: [usize; 2],
    /// Allowed `(c0, c1)` pairs per projection row.
    row_pairs: Vec<u64>,
    rows: Vec<Vec<ColorSet>>,
    pairs: u64,
}

impl ThreePathEngine {
    fn new(
        adjacency: &[VertexSet],
        lists: &[ColorSet],
        path: &[Vertex],
        x: (Vertex, Vertex),
    ) -> Self {
        let mut slots: Vec<Vertex> = path.to_vec();
        let slot_of = |v: Vertex, slots: &mut Vec<Vertex>| match slots.iter().position(|&s| s == v)
        {
            Some(i) => i,
            None => {
                slots.push(v);
                slots.len() - 1
            }
        };
        let x_slot = [slot_of(x.0, &mut slots), slot_of(x.1, &mut slots)];
        let proj = Projection::new(adjacency, lists, &slots);
        let slot_adj = slots
            .iter()
            .map(|&u| {
                slots
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| adjacency[u].contains(v))
                    .fold(0u8, |m, (i, _)| m | 1 << i)
            })
            .collect();
        let (l0, l1) = (lists[path[1]], lists[path[2]]);
        let row_pairs = proj
            .rows()
            .iter()
            .map(|row| board(l0.difference(row[1]), l1.difference(row[2])) & !diagonal())
            .collect();
        ThreePathEngine {
            lists: slots.iter().map(|&v| lists[v]).collect(),
            slots,
            slot_adj,
            x_slot,
            row_pairs,
            rows: proj.rows().to_vec(),
            pairs: board(l0, l1) & !diagonal(),
        }
    }

    /// Pairs for `q0, q1` that avoid the colors of assigned neighbors.
    fn avoiding(&self, colors: &[Color], assigned: u8) -> u64 {
        let mut pairs = self.pairs;
        for s in (0..self.slots.len()).filter(|&s| assigned >> s & 1 == 1) {
            let c = colors[s] as u32;
            if self.slot_adj[1] >> s & 1 == 1 {
                pairs &= !(0xFFu64 << (c * 8));
            }
            if self.slot_adj[2] >> s & 1 == 1 {
                pairs &= !(0x0101_0101_0101_0101u64 << c);
            }
        }
        pairs
    }

    /// Pairs completing a full assignment of the non-`q` slots to all of `G`.
    fn completing(&self, colors: &[Color], assigned: u8) -> u64 {
        let reach = self
            .rows
            .iter()
            .zip(&self.row_pairs)
            .filter(|(row, _)| {
                (0..self.slots.len())
                    .filter(|&s| s != 1 && s != 2)
                    .all(|s| !row[s].contains(colors[s]))
            })
            .fold(0, |acc, (_, &pairs)| acc | pairs);
        reach & self.avoiding(colors, assigned)
    }

    /// Union of completing pairs over every proper coloring of the unassigned
    /// non-`q` slots.
    fn reachable(&self, colors: &mut [Color], assigned: u8) -> u64 {
        let Some(s) = (0..self.slots.len()).find(|&s| s != 1 && s != 2 && assigned >> s & 1 == 0)
        else {
            return self.completing(colors, assigned);
        };
        let mut out = 0;
        for c in self.lists[s].iter() {
            let clash = (0..self.slots.len()).any(|t| {
                assigned >> t & 1 == 1 && self.slot_adj[s] >> t & 1 == 1 && colors[t] == c
            });
            if !clash {
                colors[s] = c;
                out |= self.reachable(colors, assigned | 1 << s);
            }
        }
        out
    }

    fn sufficient(&self, colors: &mut [Color], assigned: u8) -> bool {
        let needed = self.avoiding(colors, assigned);
        needed & !self.reachable(colors, assigned) == 0
    }

    /// Calls `visit` for each proper coloring of `extra` slots on top of the
    /// assigned ones.
    fn each_coloring(
        &self,
        colors: &mut [Color],
        assigned: u8,
        extra: &[usize],
        visit: &mut impl FnMut(&mut [Color], u8) -> bool,
    ) -> bool {
        let Some((&s, rest)) = extra.split_first() else {
            return visit(colors, assigned);
        };
        if assigned >> s & 1 == 1 {
            return self.each_coloring(colors, assigned, rest, visit);
        }
        for c in self.lists[s].iter() {
            let clash = (0..self.slots.len()).any(|t| {
                assigned >> t & 1 == 1 && self.slot_adj[s] >> t & 1 == 1 && colors[t] == c
            });
            if !clash {
                colors[s] = c;
                if !self.each_coloring(colors, assigned | 1 << s, rest, visit) {
                    return false;
                }
            }
        }
        true
    }

    fn tables(&self, shape: &ThreePathShape) -> ThreePathTables {
        let mut t = ThreePathTables::default();
        let mut colors = vec![0 as Color; self.slots.len()];
        let ends: u8 = 1 | 1 << 3;
        for a in self.lists[0].iter() {
            for b in self.lists[3].iter() {
                if a == b && self.slot_adj[0] >> 3 & 1 == 1 {
                    continue;
                }
                let bit = cell(a, b);
                t.proper |= bit;
                colors[0] = a;
                colors[3] = b;
                let needed = self.avoiding(&colors, ends);
                let failing = needed & !self.reachable(&mut colors, ends);
                if failing == 0 {
                    t.end |= bit;
                }
                if base_pairs(failing, shape) {
                    t.base |= bit;
                }
                let mut found = false;
                self.each_coloring(
                    &mut colors,
                    ends,
                    &[self.x_slot[1]],
                    &mut |colors, assigned| {
                        found = self.sufficient(colors, assigned);
                        !found
                    },
                );
                if found {
                    t.with_x1 |= bit;
                }
                let mut found = false;
                self.each_coloring(&mut colors, ends, &self.x_slot, &mut |colors, assigned| {
                    found = self.sufficient(colors, assigned);
                    !found
                });
                if found {
                    t.with_x |= bit;
                }
            }
        }
        t
    }
}

/// Base-coloring test on a failing set given as `(c0, c1)` pair bits.
fn base_pairs(failing: u64, shape: &ThreePathShape) -> bool {
    match failing.count_ones() {
        0 | 1 => true,
        2 => {
            if !shape.triangle {
                return false;
            }
            let first = failing.trailing_zeros();
            let second = (failing & (failing - 1)).trailing_zeros();
            let (c0, c1, d0, d1) = (first / 8, first % 8, second / 8, second % 8);
            let b2 = (shape.tilt_even[0] && c1 == d1) || (shape.tilt_even[1] && c0 == d0);
            let same_set = (c0.min(c1), c0.max(c1)) == (d0.min(d1), d0.max(d1));
            b2 || (same_set && (shape.tilt_odd[0] || shape.tilt_odd[1]))
        }
        _ => false,
    }
}

pub(super) fn three_path_tables(
    adjacency: &[VertexSet],
    lists: &[ColorSet],
    path: &[Vertex],
    shape: &ThreePathShape,
) -> ThreePathTables {
    ThreePathEngine::new(adjacency, lists, path, (shape.x0, shape.x1)).tables(shape)
}

/// Which of the four statements to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Item {
    T1,
    T2,
    T3,
    T4,
}

const ITEMS: [Item; 4] = [Item::T1, Item::T2, Item::T3, Item::T4];

/// The statement verdicts for endpoint lists `(A, B)`; `None` marks an
/// unmet hypothesis.
fn item_verdict(
    item: Item,
    t: &ThreePathTables,
    shape: &ThreePathShape,
    a: ColorSet,
    b: ColorSet,
    degenerate: bool,
) -> Option<Option<String>> {
    let pair = board(a, b);
    let fail = |msg: &str| Some(Some(msg.to_string()));
    match item {
        Item::T1 => {
            if a.len() + b.len() < 4 {
                return None;
            }
            if t.with_x & pair == 0 {
                return fail("T1: no sufficient coloring of {p0,x0,x1,p1}");
            }
        }
        Item::T2 => {
            let mut applies = false;
            if b.len() >= 3 {
                applies = true;
                let distinct = b
                    .iter()
                    .filter(|&c| t.with_x & board(a, ColorSet::single(c)) != 0)
                    .count();
                if !shape.fully_even && distinct < 2 {
                    return fail("T2: no fully even obstruction and no two sufficient colorings of {p0,x0,x1,p1} differing on p1");
                }
            }
            if degenerate {
                applies = true;
                let insufficient = (t.proper & pair & !t.end).count_ones();
                if !shape.obstruction && insufficient > 1 {
                    return fail("T2: x0=p0, x1=p1, no obstruction and two insufficient colorings of {p0,p1}");
                }
            }
            if !applies {
                return None;
            }
        }
        Item::T3 => {
            if b.len() < 3 {
                return None;
            }
            if t.with_x1 & pair == 0 {
                return fail("T3: no sufficient coloring of {p0,x1,p1}");
            }
            if t.end & pair == 0 && !(shape.even_obstruction && shape.x1_off_path) {
                return fail(
                    "T3: no sufficient coloring of {p0,p1} and no even obstruction with x1 on C-P",
                );
            }
        }
        Item::T4 => {
            if a.len() < 3 && b.len() < 3 {
                return None;
            }
            if t.base & pair == 0 {
                return fail("T4: no base-coloring of {p0,p1}");
            }
        }
    }
    Some(None)
}

/// Colorings of `set` extending nothing, in lexicographic order.
fn colorings_of(r: &Rainbow, set: &[Vertex], visit: &mut impl FnMut(&PartialColoring) -> bool) {
    let mut phi = PartialColoring::empty(r.n());
    visit_extensions(r.adjacency(), r.lists().as_slice(), &mut phi, set, visit);
}

fn dedup(vs: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::new();
    for &v in vs {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn sufficient_colorings(r: &Rainbow, set: &[Vertex]) -> Vec<PartialColoring> {
    let mut out = Vec::new();
    colorings_of(r, &dedup(set), &mut |phi| {
        if is_sufficient(r.graph(), r.lists(), r.path_set(), phi) {
            out.push(phi.clone());
        }
        true
    });
    out
}

fn literal_t(r: &Rainbow, item: Item) -> Option<String> {
    if r.path_len() != 3 {
        return None;
    }
    let (x0, x1) = x_vertices(r).expect("3-path");
    let (p0, p1) = (r.p0(), r.p1());
    let (la, lb) = (r.lists().get(p0).len(), r.lists().get(p1).len());
    let obstructions = find_obstructions(r).expect("3-path");
    match item {
        Item::T1 => {
            if r.is_end_linked() && sufficient_colorings(r, &[p0, x0, x1, p1]).is_empty() {
                return Some("T1: no sufficient coloring of {p0,x0,x1,p1}".into());
            }
        }
        Item::T2 => {
            let fully_even = obstructions
                .iter()
                .any(|o| is_fully_even(r, o).expect("3-path"));
            if lb >= 3 && !fully_even {
                let colors: BTreeSet<_> = sufficient_colorings(r, &[p0, x0, x1, p1])
                    .iter()
                    .map(|s| s.get(p1))
                    .collect();
                if colors.len() < 2 {
                    return Some("T2: no fully even obstruction and no two sufficient colorings of {p0,x0,x1,p1} differing on p1".into());
                }
            }
            if x0 == p0 && x1 == p1 && obstructions.is_empty() {
                let mut insufficient = 0;
                colorings_of(r, &[p0, p1], &mut |phi| {
                    if !is_sufficient(r.graph(), r.lists(), r.path_set(), phi) {
                        insufficient += 1;
                    }
                    true
                });
                if insufficient > 1 {
                    return Some("T2: x0=p0, x1=p1, no obstruction and two insufficient colorings of {p0,p1}".into());
                }
            }
        }
        Item::T3 => {
            if lb >= 3 {
                if sufficient_colorings(r, &[p0, x1, p1]).is_empty() {
                    return Some("T3: no sufficient coloring of {p0,x1,p1}".into());
                }
                let even = obstructions.iter().any(|o| o.parity == Parity::Even);
                if end_set(r).is_empty() && !(even && r.outer_off_path().contains(x1)) {
                    return Some("T3: no sufficient coloring of {p0,p1} and no even obstruction with x1 on C-P".into());
                }
            }
        }
        Item::T4 => {
            if la >= 3 || lb >= 3 {
                let mut found = false;
                colorings_of(r, &[p0, p1], &mut |phi| {
                    found = base_coloring_verdict(r, phi)
                        .expect("endpoint coloring")
                        .case
                        != BaseCase::NotBase;
                    !found
                });
                if !found {
                    return Some("T4: no base-coloring of {p0,p1}".into());
                }
            }
        }
    }
    None
}

/// Item T1 on one rainbow, from the literal definitions.
pub fn check_t1(r: &Rainbow) -> Option<String> {
    literal_t(r, Item::T1)
}

pub fn check_t2(r: &Rainbow) -> Option<String> {
    literal_t(r, Item::T2)
}

pub fn check_t3(r: &Rainbow) -> Option<String> {
    literal_t(r, Item::T3)
}

pub fn check_t4(r: &Rainbow) -> Option<String> {
    literal_t(r, Item::T4)
}

/// Endpoint list sizes at the floors of each item's hypotheses.
fn item_sizes(item: Item) -> &'static [(usize, usize)] {
    match item {
        Item::T1 => &END_LINKED,
        Item::T2 | Item::T3 => &[(1, 3)],
        Item::T4 => &[(1, 3), (3, 1)],
    }
}

impl Merge for [Tally; 4] {
    fn merge(self, other: Self) -> Self {
        let [a, b, c, d] = self;
        let [e, f, g, h] = other;
        [a.merge(e), b.merge(f), c.merge(g), d.merge(h)]
    }
}

fn record(
    tally: &mut Tally,
    verdict: Option<Option<String>>,
    item: Item,
    replay: impl FnOnce() -> Rainbow,
) {
    match verdict {
        None => tally.skipped += 1,
        Some(outcome) => tally.check(outcome.map(|engine| {
            let r = replay();
            confirm(&r, literal_t(&r, item), engine)
        })),
    }
}

/// Runs T1–T4 in one pass; reports in item order.
pub fn verify_t_all(gen: &InstanceGenerator) -> Result<Vec<VerificationReport>, TheoremError> {
    gen.check_caps()?;
    let started = Instant::now();
    let palette = gen.palette_cap;
    let tallies: [Tally; 4] = match gen.mode {
        Mode::Exhaustive => {
            let items = placements(gen.max_vertices, 3, palette, INTERIOR_DEGREE);
            run_items(gen, &items, |pl: &Placement, tallies: &mut [Tally; 4]| {
                let free = pl.free_vertices();
                let sizes: Vec<usize> = free.iter().map(|f| f.1).collect();
                let base = pl.rainbow(full_lists(pl, palette));
                let shape = ThreePathShape::of(&base);
                let degenerate = shape.degenerate(&base);
                let adjacency = base.adjacency().to_vec();
                let full = ColorSet::range(palette);
                for_each_canonical(palette, &sizes, &mut |wl, stab| {
                    let mut lists = full_lists(pl, palette);
                    for (&(v, _), &l) in free.iter().zip(wl) {
                        lists[v] = l;
                    }
                    let tables = three_path_tables(&adjacency, &lists, &pl.path, &shape);
                    for (i, item) in ITEMS.into_iter().enumerate() {
                        let mut pairs = endpoint_pairs(palette, item_sizes(item), stab);
                        if item == Item::T2 && degenerate {
                            pairs.push((full, full));
                        }
                        for (a, b) in pairs {
                            let verdict = item_verdict(
                                item,
                                &tables,
                                &shape,
                                a,
                                b,
                                degenerate && a == full && b == full,
                            );
                            record(&mut tallies[i], verdict, item, || {
                                let mut lists = lists.clone();
                                lists[pl.path[0]] = a;
                                lists[pl.path[3]] = b;
                                pl.rainbow(lists)
                            });
                        }
                    }
                });
            })
        }
        Mode::Sampled => run_sampled(gen, |rng, tallies: &mut [Tally; 4]| {
            let ends = (
                rng.random_range(1..=3),
                if rng.random_bool(0.5) {
                    3
                } else {
                    rng.random_range(1..=2)
                },
            );
            let r = random_rainbow(rng, gen, 3, |rng| rng.random_range(2..=palette), ends);
            let shape = ThreePathShape::of(&r);
            let degenerate = shape.degenerate(&r);
            let lists = r.lists().as_slice();
            let tables = three_path_tables(r.adjacency(), lists, r.path(), &shape);
            let (a, b) = (lists[r.p0()], lists[r.p1()]);
            for (i, item) in ITEMS.into_iter().enumerate() {
                let verdict = item_verdict(item, &tables, &shape, a, b, degenerate);
                record(&mut tallies[i], verdict, item, || r.clone());
            }
        }),
    };
    Ok(tallies
        .into_iter()
        .zip(["T1", "T2", "T3", "T4"])
        .map(|(t, id)| t.into_report(id, gen, started))
        .collect())
}

fn one_item(gen: &InstanceGenerator, index: usize) -> Result<VerificationReport, TheoremError> {
    Ok(verify_t_all(gen)?.swap_remove(index))
}

pub fn verify_t1(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    one_item(gen, 0)
}

pub fn verify_t2(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    one_item(gen, 1)
}

pub fn verify_t3(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    one_item(gen, 2)
}

pub fn verify_t4(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    one_item(gen, 3)
}

/// Endpoint size patterns emitted per path length in exhaustive mode.
fn stream_sizes(edges: usize) -> &'static [(usize, usize)] {
    match edges {
        2 | 3 => &END_LINKED,
        4 => &[(1, 3), (3, 1)],
        _ => &[(1, 3), (3, 1), (3, 3)],
    }
}

pub(super) fn enumerate_path_instances(
    gen: &InstanceGenerator,
    visit: &mut impl FnMut(Rainbow) -> bool,
) -> Result<(), TheoremError> {
    let Some(edges) = gen.shape.path_edges() else {
        return Ok(());
    };
    let palette = gen.palette_cap;
    // internal vertices of longer paths carry 5-lists
    let inner_size = if edges >= 4 { 5 } else { palette };
    if inner_size > palette {
        return Err(TheoremError::PaletteTooSmall(
            "paths with four or more edges",
            5,
        ));
    }
    match gen.mode {
        Mode::Exhaustive => {
            let min_degree = if edges >= 4 { 1 } else { INTERIOR_DEGREE };
            for pl in placements(gen.max_vertices, edges, palette, min_degree) {
                let free = pl.free_vertices();
                let inner: Vec<Vertex> = pl.path[1..edges].to_vec();
                let mut sizes: Vec<usize> = free.iter().map(|f| f.1).collect();
                if edges >= 4 {
                    sizes.extend(inner.iter().map(|_| 5));
                }
                let mut go_on = true;
                for_each_canonical(palette, &sizes, &mut |wl, stab| {
                    if !go_on {
                        return;
                    }
                    let mut lists = full_lists(&pl, palette);
                    let slots = free.iter().map(|f| f.0).chain(if edges >= 4 {
                        inner.clone()
                    } else {
                        vec![]
                    });
                    for (v, &l) in slots.zip(wl) {
                        lists[v] = l;
                    }
                    for (a, b) in endpoint_pairs(palette, stream_sizes(edges), stab) {
                        lists[pl.path[0]] = a;
                        lists[pl.path[edges]] = b;
                        if !visit(pl.rainbow(lists.clone())) {
                            go_on = false;
                            return;
                        }
                    }
                });
                if !go_on {
                    break;
                }
            }
        }
        Mode::Sampled => {
            for i in 0..gen.samples as u64 {
                let mut rng = gen.sample_rng(i);
                let sizes = stream_sizes(edges);
                let ends = sizes[rng.random_range(0..sizes.len())];
                let r = random_rainbow(
                    &mut rng,
                    gen,
                    edges,
                    |rng| {
                        if edges >= 4 {
                            5
                        } else {
                            rng.random_range(2..=palette)
                        }
                    },
                    ends,
                );
                if !visit(r) {
                    break;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::Shape;

    fn engine_cases(edges: usize, max_n: usize, palette: usize) -> Vec<Rainbow> {
        let gen = InstanceGenerator::sampled(
            if edges == 2 {
                Shape::TwoPath
            } else {
                Shape::ThreePath
            },
            max_n,
            palette,
            150,
            11,
        );
        let mut out = Vec::new();
        enumerate_path_instances(&gen, &mut |r| {
            out.push(r);
            true
        })
        .unwrap();
        out
    }

    #[test]
    fn two_path_board_matches_end_set() {
        for r in engine_cases(2, 7, 5) {
            let (_, good) = two_path_board(r.adjacency(), r.lists().as_slice(), r.path());
            let literal: u64 = end_set(&r)
                .iter()
                .map(|phi| cell(phi.get(r.p0()).unwrap(), phi.get(r.p1()).unwrap()))
                .fold(0, |a, b| a | b);
            assert_eq!(good, literal);
        }
    }

    #[test]
    fn three_path_tables_match_literal_definitions() {
        for r in engine_cases(3, 7, 5) {
            let shape = ThreePathShape::of(&r);
            let t = three_path_tables(r.adjacency(), r.lists().as_slice(), r.path(), &shape);
            let (p0, p1) = (r.p0(), r.p1());
            let bits = |set: Vec<PartialColoring>| {
                set.iter()
                    .map(|phi| cell(phi.get(p0).unwrap(), phi.get(p1).unwrap()))
                    .fold(0, |a, b| a | b)
            };
            assert_eq!(t.end, bits(end_set(&r)));
            assert_eq!(
                t.with_x1,
                bits(sufficient_colorings(&r, &[p0, shape.x1, p1]))
            );
            assert_eq!(
                t.with_x,
                bits(sufficient_colorings(&r, &[p0, shape.x0, shape.x1, p1]))
            );
            let mut base = 0;
            colorings_of(&r, &[p0, p1], &mut |phi| {
                if base_coloring_verdict(&r, phi).unwrap().case != BaseCase::NotBase {
                    base |= cell(phi.get(p0).unwrap(), phi.get(p1).unwrap());
                }
                true
            });
            assert_eq!(t.base, base);
        }
    }

    #[test]
    fn triangle_is_the_only_three_vertex_placement() {
        let found = placements(3, 2, 6, INTERIOR_DEGREE);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].disc.n(), 3);
    }

    #[test]
    fn triangle_instances_pass() {
        let gen = InstanceGenerator::exhaustive(Shape::TwoPath, 3, 5);
        let report = verify_end_2path(&gen).unwrap();
        assert!(report.passed());
        assert!(report.checked > 0);
    }

    #[test]
    fn small_exhaustive_runs_pass() {
        let gen = InstanceGenerator::exhaustive(Shape::TwoPath, 5, 5);
        assert!(verify_end_2path(&gen).unwrap().passed());
        let gen = InstanceGenerator::exhaustive(Shape::ThreePath, 5, 5);
        for report in verify_t_all(&gen).unwrap() {
            assert!(report.passed(), "{}", report.to_json());
        }
    }

    #[test]
    fn sampled_stream_is_reproducible() {
        let a: Vec<GraphDocument> = engine_cases(3, 8, 6)
            .iter()
            .map(Rainbow::to_document)
            .collect();
        let b: Vec<GraphDocument> = engine_cases(3, 8, 6)
            .iter()
            .map(Rainbow::to_document)
            .collect();
        assert_eq!(a, b);
    }
}

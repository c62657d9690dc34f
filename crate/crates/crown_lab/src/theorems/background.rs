//! Background statements: colorability for all lists of given sizes,
//! precolored short and medium outer cycles, and the 2-path and 3-path facts
//! used alongside the main verifiers.

use std::time::Instant;

use rand::Rng;

use super::fans::verify_broken_wheel;
use super::generate::{discs, random_disc, Disc};
use super::lists::{apply, is_least, permutations, Perm};
use super::paths::{enumerate_path_instances, INTERIOR_DEGREE};
use super::sweep::{colorable_for_all_from, ListChoices};
use super::{
    run_items, run_sampled, InstanceGenerator, Mode, Shape, Tally, TheoremError, VerificationReport,
};
use crate::color_core::{
    completes, visit_extensions, Color, ColorSet, ListAssignment, PartialColoring, Rainbow,
};
use crate::obstructions::{edge_tilt, find_obstructions, Obstruction};
use crate::planar_core::{
    classify_wheel, short_cycles, GraphDocument, PlanarEmbedding, Vertex, VertexSet, WheelClass,
};
use crate::sufficiency::{bohme_classify, universal_colors, BohmeClass, UniversalMode};

/// Discs with `k` outer vertices for `k` in `outer`, up to `max_n` vertices.
fn all_discs(
    max_n: usize,
    outer: impl Iterator<Item = usize>,
    min_degree: usize,
    inner_allowed: bool,
) -> Vec<Disc> {
    outer
        .filter(|&k| k <= max_n)
        .flat_map(|k| {
            let top = if inner_allowed { max_n - k } else { 0 };
            (0..=top).flat_map(move |inner| discs(k, inner, min_degree))
        })
        .collect()
}

fn sampled_disc(rng: &mut impl Rng, max_n: usize, outer: std::ops::RangeInclusive<usize>) -> Disc {
    let k = rng.random_range(outer);
    let n = rng.random_range(k..=max_n.max(k));
    random_disc(rng, k, n - k, 0.3, 0.6)
}

fn document(g: &PlanarEmbedding, lists: &[ColorSet], path: &[Vertex]) -> GraphDocument {
    let mut doc = GraphDocument::from_embedding(g);
    doc.lists = ListAssignment::new(lists.to_vec()).to_labels(g);
    doc.path = path.iter().map(|&v| g.label(v)).collect();
    doc
}

/// Runs an all-lists colorability check; a reported choice is replayed with
/// the solver before it counts as a violation.
fn all_lists(tally: &mut Tally, disc: &Disc, choices: &ListChoices, first: &[Vertex], claim: &str) {
    let g = disc.embedding();
    let outcome = colorable_for_all_from(g.adjacency(), choices, first)
        .err()
        .map(|lists| {
            let colorable = completes(g.adjacency(), &lists, &PartialColoring::empty(g.n()));
            let detail = if colorable {
                format!("engine disagreement, the reported lists are colorable: {claim}")
            } else {
                format!("{claim}: no coloring from these lists")
            };
            (document(&g, &lists, first), detail)
        });
    tally.check(outcome);
}

fn outer_sizes(disc: &Disc, outer: usize) -> Vec<usize> {
    (0..disc.n())
        .map(|v| if v < disc.outer_len { outer } else { 5 })
        .collect()
}

fn thomassen_instance(tally: &mut Tally, disc: &Disc, palette: usize) {
    let choices = ListChoices::sized(palette, &outer_sizes(disc, 3))
        .fix(0, ColorSet::single(0))
        .fix(1, ColorSet::single(1));
    all_lists(
        tally,
        disc,
        &choices,
        &[0, 1],
        "precolored outer edge with 3-lists on the cycle",
    );
}

/// Colorability with a precolored outer edge, 3-lists on the rest of the
/// outer cycle and 5-lists inside, for every choice of lists.
pub fn verify_thomassen(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    run_all_lists(gen, "thomassen", 3.., thomassen_instance)
}

/// Fixes the first list to `{0..}` and the second to one representative per
/// orbit of the palette permutations that keep the first list.
fn anchored(
    choices: ListChoices,
    palette: usize,
    [(v, v_size), (w, w_size)]: [(Vertex, usize); 2],
) -> ListChoices {
    let first: ColorSet = (0..v_size as Color).collect();
    let overlaps = v_size.min(w_size);
    let second = (0..=overlaps)
        .filter(|&shared| v_size + w_size - shared <= palette)
        .map(|shared| {
            (0..shared)
                .chain(v_size..v_size + w_size - shared)
                .map(|c| c as Color)
                .collect()
        })
        .collect();
    let mut choices = choices.fix(v, first);
    choices.0[w] = second;
    choices
}

fn two_lists_instance(tally: &mut Tally, disc: &Disc, palette: usize) {
    let k = disc.outer_len;
    for v in 0..k {
        for w in v + 1..k {
            let mut sizes = outer_sizes(disc, 3);
            sizes[v] = 2;
            sizes[w] = 2;
            let choices = anchored(
                ListChoices::sized(palette, &sizes),
                palette,
                [(v, 2), (w, 2)],
            );
            all_lists(
                tally,
                disc,
                &choices,
                &[v, w],
                "two 2-lists on the outer cycle",
            );
        }
    }
}

/// Colorability with two 2-lists on the outer cycle, 3-lists on the rest of
/// it and 5-lists inside, for every choice of lists.
pub fn verify_two_lists(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    run_all_lists(gen, "two-lists", 3.., two_lists_instance)
}

/// Proper colorings of the cycle `0..k` with colors numbered by first appearance.
fn canonical_cycle_colorings(k: usize, palette: usize) -> Vec<Vec<Color>> {
    let mut out = Vec::new();
    let mut current: Vec<Color> = Vec::new();
    fn walk(k: usize, palette: usize, current: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if current.len() == k {
            if current[0] != current[k - 1] {
                out.push(current.clone());
            }
            return;
        }
        let fresh = current.iter().max().map_or(0, |&m| m + 1);
        for c in 0..=fresh.min(palette as Color - 1) {
            if current.last() != Some(&c) {
                current.push(c);
                walk(k, palette, current, out);
                current.pop();
            }
        }
    }
    walk(k, palette, &mut current, &mut out);
    out
}

/// Canonical cycle colorings that stay proper across chords of the outer cycle.
fn proper_outer_colorings(g: &PlanarEmbedding, k: usize, palette: usize) -> Vec<Vec<Color>> {
    let mut all = canonical_cycle_colorings(k, palette);
    all.retain(|coloring| {
        (0..k).all(|u| (u + 1..k).all(|v| !g.has_edge(u, v) || coloring[u] != coloring[v]))
    });
    all
}

fn short_cycle_instance(tally: &mut Tally, disc: &Disc, palette: usize) {
    let k = disc.outer_len;
    let outer: Vec<Vertex> = (0..k).collect();
    let g = disc.embedding();
    for coloring in proper_outer_colorings(&g, k, palette) {
        let mut choices = ListChoices::sized(palette, &outer_sizes(disc, 1));
        for (v, &c) in coloring.iter().enumerate() {
            choices = choices.fix(v, ColorSet::single(c));
        }
        all_lists(
            tally,
            disc,
            &choices,
            &outer,
            "precolored outer cycle of length at most four",
        );
    }
}

/// Every coloring of an outer cycle of length at most four extends when the
/// interior has 5-lists.
pub fn verify_short_cycle(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    run_all_lists(gen, "short-cycle", 3..=4, short_cycle_instance)
}

fn run_all_lists(
    gen: &InstanceGenerator,
    tag: &str,
    outer: impl std::ops::RangeBounds<usize> + Clone + Sync,
    one: fn(&mut Tally, &Disc, usize),
) -> Result<VerificationReport, TheoremError> {
    gen.check_caps()?;
    if gen.palette_cap < 5 {
        return Err(TheoremError::PaletteTooSmall("colorability checks", 5));
    }
    let started = Instant::now();
    let palette = gen.palette_cap;
    let lo = match outer.start_bound() {
        std::ops::Bound::Included(&s) => s,
        _ => 3,
    };
    let hi = match outer.end_bound() {
        std::ops::Bound::Included(&e) => e.min(gen.max_vertices),
        _ => gen.max_vertices,
    };
    let tally = match gen.mode {
        Mode::Exhaustive => {
            // interior vertices of degree at most four always take a color last
            let items = all_discs(gen.max_vertices, lo..=hi, INTERIOR_DEGREE, true);
            run_items(gen, &items, |disc, tally: &mut Tally| {
                one(tally, disc, palette)
            })
        }
        Mode::Sampled => run_sampled(gen, |rng, tally: &mut Tally| {
            let disc = sampled_disc(rng, gen.max_vertices, lo..=hi.max(lo));
            one(tally, &disc, palette)
        }),
    };
    Ok(tally.into_report(tag, gen, started))
}

fn bohme_instance(tally: &mut Tally, g: &PlanarEmbedding, palette: usize) {
    let k = g.outer_face().len();
    let five_lists = super::lists::subsets(palette, 5);
    // a 5-list on an interior vertex of degree at most four never blocks an
    // extension and never takes part in a structure, so one list stands for all
    let (inner, low): (Vec<Vertex>, Vec<Vertex>) =
        (k..g.n()).partition(|&v| g.neighbors(v).len() >= INTERIOR_DEGREE);
    for coloring in proper_outer_colorings(g, k, palette) {
        let pairs: Vec<(Vertex, Color)> =
            coloring.iter().enumerate().map(|(v, &c)| (v, c)).collect();
        let phi = PartialColoring::from_pairs(g.n(), &pairs);
        let mut lists: Vec<ColorSet> = coloring.iter().map(|&c| ColorSet::single(c)).collect();
        lists.resize(g.n(), ColorSet::EMPTY);
        for &v in &low {
            lists[v] = five_lists[0];
        }
        // colors the outer coloring leaves unused are interchangeable
        let group: Vec<Perm> = permutations(palette)
            .into_iter()
            .filter(|perm| coloring.iter().all(|&c| perm[c as usize] == c))
            .filter(|perm| low.is_empty() || apply(perm, five_lists[0]) == five_lists[0])
            .collect();
        let total = five_lists.len().pow(inner.len() as u32);
        for code in 0..total {
            let mut rest = code;
            for &v in &inner {
                lists[v] = five_lists[rest % five_lists.len()];
                rest /= five_lists.len();
            }
            let varied: Vec<ColorSet> = inner.iter().map(|&v| lists[v]).collect();
            if !is_least(&varied, &group) {
                continue;
            }
            let assignment = ListAssignment::new(lists.clone());
            let extends = completes(g.adjacency(), &lists, &phi);
            let class = bohme_classify(g, &assignment, &phi);
            let detail = match class {
                Ok(BohmeClass::Extendable) if extends => None,
                Ok(BohmeClass::Unclassified) => {
                    Some("coloring does not extend and matches no listed structure".to_string())
                }
                Ok(BohmeClass::Extendable) => {
                    Some("classifier says extendable, solver disagrees".to_string())
                }
                Ok(other) if extends => Some(format!(
                    "classifier reports {other:?} but the coloring extends"
                )),
                Ok(_) => None,
                Err(e) => Some(format!("classifier rejected a hypothesis instance: {e}")),
            };
            tally.check(detail.map(|d| (document(g, &lists, &[]), d)));
        }
    }
}

/// The classifier of precolored 5- and 6-cycles agrees with the solver on
/// every short-inseparable graph, outer coloring and interior 5-lists.
pub fn verify_bohme(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    gen.check_caps()?;
    if gen.palette_cap < 5 {
        return Err(TheoremError::PaletteTooSmall("bohme", 5));
    }
    let started = Instant::now();
    let palette = gen.palette_cap;
    let keep = |disc: &Disc| {
        let g = disc.embedding();
        g.is_short_inseparable().then_some(g)
    };
    let tally = match gen.mode {
        Mode::Exhaustive => {
            let graphs: Vec<PlanarEmbedding> = all_discs(gen.max_vertices, 5..=6, 1, true)
                .iter()
                .filter_map(keep)
                .collect();
            let mut tally = run_items(gen, &graphs, |g, tally: &mut Tally| {
                bohme_instance(tally, g, palette)
            });
            tally.skipped +=
                all_discs(gen.max_vertices, 5..=6, 1, true).len() as u64 - graphs.len() as u64;
            tally
        }
        Mode::Sampled => run_sampled(gen, |rng, tally: &mut Tally| {
            let disc = sampled_disc(rng, gen.max_vertices.min(10), 5..=6);
            match keep(&disc) {
                Some(g) => bohme_instance(tally, &g, palette),
                None => tally.skipped += 1,
            }
        }),
    };
    Ok(tally.into_report("bohme", gen, started))
}

/// Colorings of `V(P)` (or a subset containing the ends) with their failure flag.
fn path_colorings(r: &Rainbow, domain: VertexSet, visit: &mut impl FnMut(&PartialColoring, bool)) {
    let order: Vec<Vertex> = domain.iter().collect();
    let mut phi = PartialColoring::empty(r.n());
    visit_extensions(
        r.adjacency(),
        r.lists().as_slice(),
        &mut phi,
        &order,
        &mut |psi| {
            visit(psi, completes(r.adjacency(), r.lists().as_slice(), psi));
            true
        },
    );
}

/// Either a chord from a colored interior vertex of `P` reaches `C - P`, or
/// some interior or uncolored vertex of `P` keeps at most two colors.
pub fn check_path_chord(r: &Rainbow) -> Option<String> {
    let inner = r.path_interior();
    let off_path = r.cycle_set().difference(r.path_set());
    let ends = VertexSet::single(r.p0()).with(r.p1());
    let mut found = None;
    for bits in 0..1u64 << inner.len() {
        let chosen: VertexSet = inner
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, v)| v)
            .collect();
        let domain = ends.union(chosen);
        let chord = chosen
            .iter()
            .any(|v| !r.graph().neighbors(v).intersection(off_path).is_empty());
        if chord {
            continue;
        }
        path_colorings(r, domain, &mut |phi, extends| {
            if extends || found.is_some() {
                return;
            }
            let watched = r.inner_vertices().union(inner.difference(chosen));
            let tight = watched.iter().any(|v| {
                r.lists()
                    .get(v)
                    .difference(phi.neighbor_colors(r.adjacency(), v))
                    .len()
                    <= 2
            });
            if !tight {
                found = Some(format!(
                    "{phi:?} does not extend, yet no chord or tight vertex explains it"
                ));
            }
        });
    }
    found
}

fn dominated_path(
    r: &Rainbow,
    q: Vertex,
    allowed: VertexSet,
    from: Vertex,
    to: Vertex,
) -> Option<usize> {
    fn walk(
        g: &PlanarEmbedding,
        allowed: VertexSet,
        to: Vertex,
        at: Vertex,
        seen: VertexSet,
        len: usize,
    ) -> Option<usize> {
        if at == to {
            return Some(len);
        }
        g.neighbors(at)
            .intersection(allowed)
            .difference(seen)
            .iter()
            .find_map(|next| walk(g, allowed, to, next, seen.with(next), len + 1))
    }
    let allowed = allowed.intersection(r.graph().neighbors(q));
    (allowed.contains(from) && allowed.contains(to))
        .then(|| walk(r.graph(), allowed, to, from, VertexSet::single(from), 0))
        .flatten()
}

fn every_chord_at(r: &Rainbow, q: Vertex) -> bool {
    r.graph()
        .chords_of_cycle(r.cycle())
        .expect("outer cycle")
        .iter()
        .all(|&(u, v)| u == q || v == q)
}

fn failing_path_colorings(r: &Rainbow) -> Vec<PartialColoring> {
    let mut failing = Vec::new();
    path_colorings(r, r.path_set(), &mut |phi, extends| {
        if !extends {
            failing.push(phi.clone());
        }
    });
    failing
}

/// Two failing colorings of a 2-path force a `q`-dominated outer path
/// between its ends, and a broken wheel when all chords meet `q`.
pub fn check_dominated_path(r: &Rainbow) -> Option<String> {
    let [p0, q, p1] = [r.p0(), r.path()[1], r.p1()];
    let failing = failing_path_colorings(r);
    if failing.len() < 2 {
        return None;
    }
    let outside_q = r.cycle_set().without(q);
    if dominated_path(r, q, outside_q, p0, p1).is_none() {
        return Some(format!(
            "{} failing colorings of V(P) but no q-dominated path joins the ends",
            failing.len()
        ));
    }
    if r.graph().is_short_inseparable()
        && every_chord_at(r, q)
        && !matches!(
            classify_wheel(r.graph(), Some([p0, q, p1])),
            WheelClass::BrokenWheel { .. }
        )
    {
        return Some("short-inseparable with all chords at q, yet not a broken wheel".into());
    }
    None
}

fn rim_edges(r: &Rainbow) -> Option<usize> {
    match classify_wheel(r.graph(), Some([r.p0(), r.path()[1], r.p1()])) {
        WheelClass::BrokenWheel { rim_edge_count, .. } => Some(rim_edge_count),
        _ => None,
    }
}

/// The four consequences for 2-paths whose outer cycle has every chord at `q`.
pub fn check_chords_at_middle(r: &Rainbow) -> Option<String> {
    let [p0, q, p1] = [r.p0(), r.path()[1], r.p1()];
    let g = r.graph();
    let applies =
        every_chord_at(r, q) && g.is_short_inseparable() && (r.cycle().len() > 3 || g.n() == 3);
    if !applies {
        return None;
    }
    let failing = failing_path_colorings(r);
    let ends = [p0, p1];
    let lists = r.lists();
    let rim = rim_edges(r);
    for i in 0..2 {
        let (own, other) = (ends[i], ends[1 - i]);
        let path = if i == 0 { [p0, q, p1] } else { [p1, q, p0] };
        if lists.get(own).len() >= 2
            && universal_colors(g, lists, path, UniversalMode::Universal).is_empty()
        {
            let Some(_) = rim else {
                return Some(format!(
                    "1: no universal color at end {} but not a broken wheel",
                    g.label(own)
                ));
            };
            if g.n() > 4 {
                let x = g.neighbors(own).without(q).first().expect("outer neighbor");
                let y = g
                    .neighbors(x)
                    .without(q)
                    .without(own)
                    .first()
                    .expect("outer path continues");
                if !lists
                    .get(own)
                    .is_subset(lists.get(x).intersection(lists.get(y)))
                {
                    return Some(format!(
                        "1: L({}) is not inside the next two rim lists",
                        g.label(own)
                    ));
                }
            }
        }
        for (s, psi) in failing.iter().enumerate() {
            for psi2 in &failing[s + 1..] {
                if psi.get(own) != psi2.get(own) || psi.get(other) == psi2.get(other) {
                    continue;
                }
                let mid: ColorSet = [psi.get(q), psi2.get(q)].into_iter().flatten().collect();
                let far: ColorSet = [psi.get(other), psi2.get(other)]
                    .into_iter()
                    .flatten()
                    .collect();
                if mid != far || rim.is_none_or(|e| e % 2 == 1) {
                    return Some(format!(
                        "2: failing pair {psi:?}, {psi2:?} lacks the swap structure"
                    ));
                }
                if failing.len() != 2 {
                    let sharing = failing
                        .iter()
                        .filter(|phi| phi.get(own) == psi.get(own))
                        .count();
                    return Some(format!(
                        "2: failing pair {psi:?}, {psi2:?} but {} failing colorings in all, {sharing} with the same color on {}",
                        failing.len(),
                        g.label(own)
                    ));
                }
            }
        }
    }
    for a in lists.get(p0).iter() {
        for b in lists.get(p1).iter() {
            if a == b && g.has_edge(p0, p1) {
                continue;
            }
            let phi = PartialColoring::from_pairs(r.n(), &[(p0, a), (p1, b)]);
            let residual = lists.get(q).without(a).without(b);
            let lambda: ColorSet = residual
                .iter()
                .filter(|&c| completes(r.adjacency(), lists.as_slice(), &phi.with(q, c)))
                .collect();
            let missing = residual.difference(lambda);
            if missing.len() < 2 {
                continue;
            }
            if missing.len() != 2 || rim.is_none_or(|e| e % 2 == 0) {
                return Some(format!("3: ({a}, {b}) misses {missing:?} on q"));
            }
            let explained = failing.iter().all(|psi| {
                let same = psi.get(p0) == Some(a) && psi.get(p1) == Some(b);
                let equal_in_s =
                    psi.get(p0) == psi.get(p1) && psi.get(p0).is_some_and(|s| missing.contains(s));
                same || equal_in_s
            });
            if !explained {
                return Some(format!(
                    "3: a failing coloring is unrelated to ({a}, {b}) and {missing:?}"
                ));
            }
        }
    }
    let induced = g
        .chords_of_cycle(r.cycle())
        .expect("outer cycle")
        .is_empty();
    if !failing.is_empty() && induced && rim.is_none() {
        let wheel = matches!(classify_wheel(g, None), WheelClass::Wheel { .. });
        if !wheel || r.cycle().len().is_multiple_of(2) {
            return Some("4: failing coloring on an induced cycle that is neither broken wheel nor odd wheel".into());
        }
    }
    None
}

fn obstruction_labels(g: &PlanarEmbedding, found: &[Obstruction]) -> Vec<(Vec<u32>, bool)> {
    let mut out: Vec<(Vec<u32>, bool)> = found
        .iter()
        .map(|o| (g.labels_of(&o.path), o.triangle_type))
        .collect();
    out.sort();
    out
}

fn tilt_signature(r: &Rainbow) -> [(bool, bool); 2] {
    [0, 1].map(|k| {
        let t = edge_tilt(r, k).expect("3-path");
        (t.even, t.odd)
    })
}

fn relabeled(r: &Rainbow, g: PlanarEmbedding) -> Rainbow {
    let path = r.graph().labels_of(r.path());
    let path = g.indices_of(&path).expect("path survives");
    let lists = (0..g.n())
        .map(|v| {
            r.lists()
                .get(r.graph().index_of(g.label(v)).expect("same label"))
        })
        .collect();
    Rainbow::unchecked(g, path, ListAssignment::new(lists)).expect("sub-rainbow")
}

/// Obstructions and tilts do not change when the inside of a short cycle
/// or the far side of a chord is cut away.
pub fn check_cut_invariance(r: &Rainbow) -> Option<String> {
    let g = r.graph();
    let own = (
        obstruction_labels(g, &find_obstructions(r).expect("3-path")),
        tilt_signature(r),
    );
    let inner_path = r.path_interior();
    let compare = |sub: PlanarEmbedding, what: String| {
        let s = relabeled(r, sub);
        let theirs = (
            obstruction_labels(s.graph(), &find_obstructions(&s).expect("3-path")),
            tilt_signature(&s),
        );
        (theirs != own).then(|| format!("{what}: {own:?} becomes {theirs:?}"))
    };
    for cycle in short_cycles(g) {
        let Ok(inside) = g.side_of_cycle(&cycle, true) else {
            continue;
        };
        let on: VertexSet = cycle.iter().copied().collect();
        let strictly_inside = inside.vertices.difference(on);
        if !strictly_inside.intersection(r.path_set()).is_empty() || strictly_inside.is_empty() {
            continue;
        }
        let Ok(ext) = g.exterior_of(&cycle) else {
            continue;
        };
        if let Some(d) = compare(ext, format!("exterior of {:?}", g.labels_of(&cycle))) {
            return Some(d);
        }
    }
    for (u, v) in g.chords_of_cycle(r.cycle()).expect("outer cycle") {
        if inner_path.contains(u) || inner_path.contains(v) {
            continue;
        }
        let Ok(parts) = g.natural_partition(&[u, v]) else {
            continue;
        };
        let labels = g.labels_of(r.path());
        let with_path = parts
            .into_iter()
            .find(|p| labels.iter().all(|&l| p.index_of(l).is_some()));
        if let Some(part) = with_path {
            if let Some(d) = compare(part, format!("side of chord {:?}", g.labels_of(&[u, v]))) {
                return Some(d);
            }
        }
    }
    None
}

/// Recoloring two middle vertices of an outer 3-path under a common neighbor.
pub fn check_middle_recolor(r: &Rainbow) -> Option<String> {
    let g = r.graph();
    if !g.is_short_inseparable() {
        return None;
    }
    let cycle = r.cycle();
    let k = cycle.len();
    let lists = r.lists().as_slice();
    for start in 0..k {
        for step in [1, k - 1] {
            let x: Vec<Vertex> = (0..4).map(|i| cycle[(start + i * step) % k]).collect();
            if k < 4 || x.iter().collect::<std::collections::BTreeSet<_>>().len() < 4 {
                continue;
            }
            if lists[x[1]].len() < 3 || lists[x[2]].len() < 3 {
                continue;
            }
            let hubs =
                (0..g.n()).filter(|&u| !x.contains(&u) && x.iter().all(|&v| g.has_edge(u, v)));
            for _hub in hubs {
                let rest: Vec<Vertex> = (0..g.n()).filter(|&v| v != x[1] && v != x[2]).collect();
                let mut found = None;
                let mut phi = PartialColoring::empty(g.n());
                visit_extensions(g.adjacency(), lists, &mut phi, &rest, &mut |psi| {
                    let (c0, c3) = (
                        psi.get(x[0]).expect("colored"),
                        psi.get(x[3]).expect("colored"),
                    );
                    if c0 != c3 && lists[x[2]].contains(c0) && !completes(g.adjacency(), lists, psi)
                    {
                        found = Some(format!(
                            "{psi:?} does not extend over {:?}",
                            g.labels_of(&x[1..3])
                        ));
                        return false;
                    }
                    true
                });
                if found.is_some() {
                    return found;
                }
            }
        }
    }
    None
}

fn run_path_claim(
    gen: &InstanceGenerator,
    tag: &str,
    shape: Shape,
    check: fn(&Rainbow) -> Option<String>,
) -> Result<VerificationReport, TheoremError> {
    gen.check_caps()?;
    let started = Instant::now();
    let mut tally = Tally::default();
    enumerate_path_instances(&gen.with_shape(shape), &mut |r| {
        tally.check(check(&r).map(|d| (r.to_document(), d)));
        true
    })?;
    Ok(tally.into_report(tag, gen, started))
}

pub fn verify_path_chord(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    run_path_claim(gen, "path-chord", Shape::TwoPath, check_path_chord)
}

pub fn verify_dominated_path(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    run_path_claim(gen, "dominated-path", Shape::TwoPath, check_dominated_path)
}

pub fn verify_chords_at_middle(
    gen: &InstanceGenerator,
) -> Result<VerificationReport, TheoremError> {
    run_path_claim(
        gen,
        "chords-at-middle",
        Shape::TwoPath,
        check_chords_at_middle,
    )
}

pub fn verify_cut_invariance(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    run_path_claim(
        gen,
        "cut-invariance",
        Shape::ThreePath,
        check_cut_invariance,
    )
}

pub fn verify_middle_recolor(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    run_path_claim(
        gen,
        "middle-recolor",
        Shape::ThreePath,
        check_middle_recolor,
    )
}

/// Every background verifier under the same caps, folded into one report.
pub fn verify_background(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    let parts = vec![
        verify_thomassen(&gen.with_shape(Shape::TwoTwoLists))?,
        verify_short_cycle(&gen.with_shape(Shape::TwoTwoLists))?,
        verify_two_lists(&gen.with_shape(Shape::TwoTwoLists))?,
        verify_bohme(&gen.with_shape(Shape::Cycle56))?,
        verify_broken_wheel(&gen.with_shape(Shape::BrokenWheel))?,
        verify_dominated_path(gen)?,
        verify_chords_at_middle(gen)?,
        verify_path_chord(gen)?,
        verify_cut_invariance(gen)?,
        verify_middle_recolor(gen)?,
    ];
    Ok(VerificationReport::combine("background", gen, parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_colorings_are_canonical_and_proper() {
        let four = canonical_cycle_colorings(4, 6);
        assert_eq!(
            four,
            vec![
                vec![0, 1, 0, 1],
                vec![0, 1, 0, 2],
                vec![0, 1, 2, 1],
                vec![0, 1, 2, 3]
            ]
        );
        assert_eq!(canonical_cycle_colorings(3, 6).len(), 1);
    }

    #[test]
    fn small_background_runs_pass() {
        let gen = InstanceGenerator::exhaustive(Shape::TwoTwoLists, 6, 5);
        for verify in [verify_thomassen, verify_short_cycle, verify_two_lists] {
            let report = verify(&gen).unwrap();
            assert!(report.passed(), "{}", report.to_json());
            assert!(report.checked > 0);
        }
    }
}

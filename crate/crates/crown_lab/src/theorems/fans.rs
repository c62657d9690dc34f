//! Parity claims about broken wheels. The rim `p u1 .. ut p''` is swept one
//! vertex at a time; for every coloring `(a, b)` of `p p'` the state records
//! the colors the current rim vertex can take, so the Λ-table at `p''` comes
//! out of the final state without enumerating colorings of the rim.

use std::collections::HashMap;
use std::time::Instant;

use rand::Rng;

use super::generate::Disc;
use super::lists::subsets;
use super::{
    random_list, run_sampled, InstanceGenerator, Mode, Tally, TheoremError, VerificationReport,
};
use crate::color_core::{lambda_set, Color, ColorSet, FreeSlot, ListAssignment};
use crate::planar_core::{GraphDocument, PlanarEmbedding, Vertex};

/// Size of every rim list and of `L(p'')`.
const RIM_LIST: usize = 3;

/// Λ-values indexed by `a * 8 + b` for the coloring `(a, b)` of `p p'`.
type Table = [ColorSet; 64];

/// A fan with rim `0, 1, .., t+1` and hub `t+2`; the principal path is
/// `[0, t+2, t+1]`.
pub(super) fn fan(rim_inner: usize) -> (PlanarEmbedding, [Vertex; 3]) {
    let k = rim_inner + 3;
    let hub = k - 1;
    let chords: Vec<(usize, usize)> = (1..=rim_inner).map(|i| (i, hub)).collect();
    (
        Disc::dissection(k, &chords).embedding(),
        [0, hub, rim_inner + 1],
    )
}

fn lambda_from_rim(last: ColorSet, end: ColorSet, b: Color) -> ColorSet {
    end.without(b)
        .iter()
        .filter(|&c| !last.without(c).is_empty())
        .collect()
}

/// Every violated claim for one Λ-table, as text.
fn claims(
    palette: usize,
    lambda: &Table,
    edges: usize,
    u1: Option<ColorSet>,
    x: Option<ColorSet>,
    end: ColorSet,
    larger: bool,
) -> Option<String> {
    let pairs: Vec<(Color, Color)> = (0..palette as Color)
        .flat_map(|a| {
            (0..palette as Color)
                .filter(move |&b| b != a)
                .map(move |b| (a, b))
        })
        .collect();
    let at = |(a, b): (Color, Color)| lambda[a as usize * 8 + b as usize];
    let tight: Vec<(Color, Color)> = pairs
        .iter()
        .copied()
        .filter(|&p| at(p).len() == 1)
        .collect();
    let even = edges.is_multiple_of(2);
    for &f0 in &tight {
        for &f1 in tight.iter().filter(|&&f| f != f0) {
            let (s0, s1) = (at(f0), at(f1));
            if f0.0 == f1.0 && s0 == s1 && !even {
                return Some(format!(
                    "1A: {f0:?} and {f1:?} share Λ {s0:?} but the rim has {edges} edges"
                ));
            }
            if f0.0 == f1.0 && s0 != s1 && (even || s0 != ColorSet::single(f1.1)) {
                return Some(format!(
                    "1B: {f0:?} -> {s0:?} and {f1:?} -> {s1:?} with {edges} rim edges"
                ));
            }
            if f0.0 != f1.0 && s0 == s1 && (even || f0 != (f1.1, f1.0)) {
                return Some(format!(
                    "1C: {f0:?} and {f1:?} share Λ {s0:?} with {edges} rim edges"
                ));
            }
        }
    }
    for c in 0..palette as Color {
        let on_p = pairs
            .iter()
            .filter(|&&(a, b)| a == c && at((a, b)).len() <= 1)
            .count();
        let on_hub = pairs
            .iter()
            .filter(|&&(a, b)| b == c && at((a, b)).len() <= 1)
            .count();
        if on_p >= 3 || on_hub >= 3 {
            return Some(format!(
                "2: three colorings fixing color {c} all have |Λ| <= 1"
            ));
        }
    }
    if let (Some(u1), Some(x)) = (u1, x) {
        for a in 0..palette as Color {
            if u1.without(a).is_subset(x) {
                continue;
            }
            for b in (0..palette as Color).filter(|&b| b != a) {
                let lam = at((a, b));
                if lam.len() + 1 < end.len() {
                    return Some(format!(
                        "3: color {a} is not almost universal (b = {b}, Λ = {lam:?})"
                    ));
                }
                if larger && lam != end.without(b) {
                    return Some(format!(
                        "3: color {a} is not universal (b = {b}, Λ = {lam:?})"
                    ));
                }
            }
        }
    }
    None
}

/// The claims on one broken wheel, computing every Λ-set from scratch.
/// `p` and `p'` must carry the whole palette.
pub fn check_broken_wheel(
    g: &PlanarEmbedding,
    lists: &ListAssignment,
    principal: [Vertex; 3],
    palette: usize,
) -> Option<String> {
    let [p, hub, end] = principal;
    let mut lambda: Table = [ColorSet::EMPTY; 64];
    for a in 0..palette as Color {
        for b in (0..palette as Color).filter(|&b| b != a) {
            lambda[a as usize * 8 + b as usize] =
                lambda_set(g, lists, principal, FreeSlot::Last, (a, b))
                    .expect("full lists on p and p'");
        }
    }
    let rim_len = g.n() - 2;
    let edges = rim_len;
    let neighbor_on_rim = |v: Vertex, not: Vertex| g.neighbors(v).without(hub).without(not).first();
    let u1 = (g.n() >= 4).then(|| neighbor_on_rim(p, hub).expect("rim continues"));
    let x = u1.map(|u| neighbor_on_rim(u, p).expect("rim continues"));
    claims(
        palette,
        &lambda,
        edges,
        u1.map(|u| lists.get(u)),
        x.map(|v| lists.get(v)),
        lists.get(end),
        g.n() > 4,
    )
}

fn fan_lists(rim_inner: usize, palette: usize, rim: &[ColorSet], end: ColorSet) -> ListAssignment {
    let mut lists = vec![ColorSet::range(palette); rim_inner + 3];
    lists[1..=rim_inner].copy_from_slice(rim);
    lists[rim_inner + 1] = end;
    ListAssignment::new(lists)
}

fn document(rim_inner: usize, lists: &ListAssignment) -> GraphDocument {
    let (g, principal) = fan(rim_inner);
    let mut doc = GraphDocument::from_embedding(&g);
    doc.lists = lists.to_labels(&g).into_iter().collect();
    doc.path = principal.iter().map(|&v| v as u32).collect();
    doc
}

/// Sweep state: lists of `u1` and `u2` (they feed claim 3) and the colors
/// available at the current rim vertex for each `(a, b)`.
#[derive(Clone, PartialEq, Eq, Hash)]
struct RimState {
    u1: ColorSet,
    u2: ColorSet,
    reach: Table,
}

/// Witness rim lists and the number of rim list sequences behind a state.
struct Origin {
    rim: Vec<ColorSet>,
    count: u64,
}

fn exhaustive(gen: &InstanceGenerator, tally: &mut Tally) {
    let palette = gen.palette_cap;
    let choices = subsets(palette, RIM_LIST);
    let colorings: Vec<(Color, Color)> = (0..palette as Color)
        .flat_map(|a| {
            (0..palette as Color)
                .filter(move |&b| b != a)
                .map(move |b| (a, b))
        })
        .collect();
    let mut level: HashMap<RimState, Origin> = HashMap::new();
    for rim_inner in 0..=gen.max_vertices.saturating_sub(3) {
        if rim_inner == 0 {
            let mut lambda: Table = [ColorSet::EMPTY; 64];
            for &end in &choices {
                for &(a, b) in &colorings {
                    lambda[a as usize * 8 + b as usize] = end.without(a).without(b);
                }
                let verdict = claims(palette, &lambda, 1, None, None, end, false);
                record(tally, verdict, 1, rim_inner, palette, &[], end);
            }
            continue;
        }
        level = if rim_inner == 1 {
            let mut first = HashMap::new();
            for &u1 in &choices {
                let mut reach: Table = [ColorSet::EMPTY; 64];
                for &(a, b) in &colorings {
                    reach[a as usize * 8 + b as usize] = u1.without(a).without(b);
                }
                first.insert(
                    RimState {
                        u1,
                        u2: ColorSet::EMPTY,
                        reach,
                    },
                    Origin {
                        rim: vec![u1],
                        count: 1,
                    },
                );
            }
            first
        } else {
            let mut next: HashMap<RimState, Origin> = HashMap::new();
            for (state, origin) in &level {
                for &list in &choices {
                    let mut reach: Table = [ColorSet::EMPTY; 64];
                    for &(a, b) in &colorings {
                        let i = a as usize * 8 + b as usize;
                        reach[i] = lambda_from_rim(state.reach[i], list, b);
                    }
                    let u2 = if rim_inner == 2 { list } else { state.u2 };
                    let entry = next
                        .entry(RimState {
                            u1: state.u1,
                            u2,
                            reach,
                        })
                        .or_insert_with(|| Origin {
                            rim: origin.rim.iter().copied().chain([list]).collect(),
                            count: 0,
                        });
                    entry.count += origin.count;
                }
            }
            next
        };
        for (state, origin) in &level {
            for &end in &choices {
                let mut lambda: Table = [ColorSet::EMPTY; 64];
                for &(a, b) in &colorings {
                    let i = a as usize * 8 + b as usize;
                    lambda[i] = lambda_from_rim(state.reach[i], end, b);
                }
                let x = if rim_inner >= 2 { state.u2 } else { end };
                let verdict = claims(
                    palette,
                    &lambda,
                    rim_inner + 1,
                    Some(state.u1),
                    Some(x),
                    end,
                    rim_inner >= 2,
                );
                record(
                    tally,
                    verdict,
                    origin.count,
                    rim_inner,
                    palette,
                    &origin.rim,
                    end,
                );
            }
        }
    }
}

fn record(
    tally: &mut Tally,
    verdict: Option<String>,
    count: u64,
    rim_inner: usize,
    palette: usize,
    rim: &[ColorSet],
    end: ColorSet,
) {
    tally.checked += count.saturating_sub(1);
    let outcome = verdict.map(|engine| {
        let lists = fan_lists(rim_inner, palette, rim, end);
        let (g, principal) = fan(rim_inner);
        let detail = check_broken_wheel(&g, &lists, principal, palette)
            .unwrap_or_else(|| format!("engine disagreement, literal check passes: {engine}"));
        (document(rim_inner, &lists), detail)
    });
    tally.check(outcome);
}

/// Checks the broken-wheel parity claims on every fan with at most
/// `max_vertices` vertices and rim lists of size three.
pub fn verify_broken_wheel(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    gen.check_caps()?;
    if gen.palette_cap < RIM_LIST {
        return Err(TheoremError::PaletteTooSmall("broken-wheel", RIM_LIST));
    }
    let started = Instant::now();
    let palette = gen.palette_cap;
    let tally = match gen.mode {
        Mode::Exhaustive => {
            let mut tally = Tally::default();
            exhaustive(gen, &mut tally);
            tally
        }
        Mode::Sampled => run_sampled(gen, |rng, tally: &mut Tally| {
            let rim_inner = rng.random_range(0..=gen.max_vertices.max(3) - 3);
            let rim: Vec<ColorSet> = (0..rim_inner)
                .map(|_| random_list(rng, palette, RIM_LIST))
                .collect();
            let end = random_list(rng, palette, RIM_LIST);
            let lists = fan_lists(rim_inner, palette, &rim, end);
            let (g, principal) = fan(rim_inner);
            let outcome = check_broken_wheel(&g, &lists, principal, palette)
                .map(|d| (document(rim_inner, &lists), d));
            tally.check(outcome);
        }),
    };
    Ok(tally.into_report("broken-wheel", gen, started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar_core::{classify_wheel, WheelClass};
    use crate::theorems::Shape;

    #[test]
    fn fans_are_broken_wheels_with_the_stated_principal_path() {
        for rim_inner in 0..5 {
            let (g, principal) = fan(rim_inner);
            match classify_wheel(&g, Some(principal)) {
                WheelClass::BrokenWheel { rim_edge_count, .. } => {
                    assert_eq!(rim_edge_count, rim_inner + 1)
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn swept_tables_match_direct_lambda_sets() {
        let palette = 5;
        let rim = [
            ColorSet::from_iter([0, 1, 2]),
            ColorSet::from_iter([1, 2, 3]),
            ColorSet::from_iter([0, 2, 4]),
        ];
        let end = ColorSet::from_iter([0, 1, 3]);
        let lists = fan_lists(3, palette, &rim, end);
        let (g, principal) = fan(3);
        for a in 0..palette as Color {
            for b in (0..palette as Color).filter(|&b| b != a) {
                let direct = lambda_set(&g, &lists, principal, FreeSlot::Last, (a, b)).unwrap();
                let swept = rim
                    .iter()
                    .skip(1)
                    .fold(rim[0].without(a).without(b), |reach, &l| {
                        lambda_from_rim(reach, l, b)
                    });
                assert_eq!(lambda_from_rim(swept, end, b), direct, "({a}, {b})");
            }
        }
    }

    #[test]
    fn small_fans_pass_both_modes() {
        let report =
            verify_broken_wheel(&InstanceGenerator::exhaustive(Shape::BrokenWheel, 6, 5)).unwrap();
        assert!(report.passed(), "{}", report.to_json());
        assert_eq!(
            report.checked,
            (0..4).map(|t| 10u64.pow(t + 1)).sum::<u64>()
        );
        let report =
            verify_broken_wheel(&InstanceGenerator::sampled(Shape::BrokenWheel, 7, 5, 60, 2))
                .unwrap();
        assert!(report.passed(), "{}", report.to_json());
    }
}

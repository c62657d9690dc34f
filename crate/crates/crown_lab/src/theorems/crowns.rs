//! Verifiers for the crown statements about 4-paths and 5-paths.

use std::time::Instant;

use rand::Rng;
use rand_xoshiro::SplitMix64;

use super::paths::{enumerate_path_instances, random_rainbow};
use super::{run_sampled, InstanceGenerator, Mode, Tally, TheoremError, VerificationReport};
use crate::color_core::Rainbow;
use crate::obstructions::g_obstruction_5path;
use crate::planar_core::VertexSet;
use crate::sufficiency::{find_crown_member, CrownQuery};

/// Draws per sample index before the index is counted as skipped.
const ATTEMPTS: usize = 256;

fn inner_lists_at_least(r: &Rainbow, size: usize) -> bool {
    r.path_interior()
        .iter()
        .all(|v| r.lists().get(v).len() >= size)
}

fn some_end_has(r: &Rainbow, size: usize) -> bool {
    r.lists().get(r.p0()).len() >= size || r.lists().get(r.p1()).len() >= size
}

/// Every internal vertex of `P` sees `C` outside the interior of `P`.
fn interior_reaches_out(r: &Rainbow) -> bool {
    let outside = r.cycle_set().difference(r.path_interior());
    r.path_interior()
        .iter()
        .all(|v| !r.graph().neighbors(v).intersection(outside).is_empty())
}

fn main_applies(r: &Rainbow) -> bool {
    if r.path_len() != 4 {
        return false;
    }
    let path = r.path();
    let off_path = r.cycle_set().difference(r.path_set());
    let common = r
        .graph()
        .neighbors(path[1])
        .intersection(r.graph().neighbors(path[3]))
        .intersection(off_path);
    common.is_empty() && inner_lists_at_least(r, 5) && some_end_has(r, 3)
}

fn crown5_applies(r: &Rainbow) -> bool {
    r.path_len() == 5 && inner_lists_at_least(r, 5) && interior_reaches_out(r) && some_end_has(r, 3)
}

fn nonequal5_applies(r: &Rainbow) -> bool {
    r.path_len() == 5
        && inner_lists_at_least(r, 5)
        && interior_reaches_out(r)
        && [r.p0(), r.p1()]
            .iter()
            .all(|&p| r.lists().get(p).len() >= 3)
}

/// The 4-path crown statement on one rainbow; `None` when it holds or the
/// hypotheses fail.
pub fn check_main(r: &Rainbow) -> Option<String> {
    if !main_applies(r) {
        return None;
    }
    find_crown_member(r, &CrownQuery::default())
        .is_none()
        .then(|| "Crown_L(P,G) is empty".to_string())
}

/// For each end of the middle edge of a 5-path, some crown member colors it.
pub fn check_5path_crown(r: &Rainbow) -> Option<String> {
    if !crown5_applies(r) {
        return None;
    }
    let labels = r.graph().labels();
    [r.path()[2], r.path()[3]].into_iter().find_map(|y| {
        let query = CrownQuery {
            required: VertexSet::single(y),
            fixed: Vec::new(),
        };
        find_crown_member(r, &query)
            .is_none()
            .then(|| format!("no crown member colors vertex {}", labels[y]))
    })
}

/// Either an outer vertex obstructs the 5-path, or for each middle vertex
/// `v_j` some endpoint color `a` on `p_i` combines with every color of the
/// other endpoint inside a crown member coloring `v_j`.
pub fn check_5path_nonequal(r: &Rainbow) -> Option<String> {
    if !nonequal5_applies(r) || !g_obstruction_5path(r).expect("5-path").is_empty() {
        return None;
    }
    let ends = [r.p0(), r.p1()];
    let labels = r.graph().labels();
    [r.path()[2], r.path()[3]].into_iter().find_map(|v| {
        let anchored = (0..2).any(|i| {
            let (own, other) = (ends[i], ends[1 - i]);
            r.lists().get(own).iter().any(|a| {
                r.lists().get(other).iter().all(|b| {
                    let query = CrownQuery {
                        required: VertexSet::single(v),
                        fixed: vec![(own, a), (other, b)],
                    };
                    find_crown_member(r, &query).is_some()
                })
            })
        });
        (!anchored).then(|| {
            format!(
                "no endpoint color anchors crown members coloring vertex {}",
                labels[v]
            )
        })
    })
}

struct CrownStatement {
    tag: &'static str,
    edges: usize,
    ends: &'static [(usize, usize)],
    applies: fn(&Rainbow) -> bool,
    check: fn(&Rainbow) -> Option<String>,
}

const MAIN: CrownStatement = CrownStatement {
    tag: "main",
    edges: 4,
    ends: &[(1, 3), (3, 1)],
    applies: main_applies,
    check: check_main,
};

const CROWN5: CrownStatement = CrownStatement {
    tag: "crown5",
    edges: 5,
    ends: &[(1, 3), (3, 1)],
    applies: crown5_applies,
    check: check_5path_crown,
};

const NONEQUAL5: CrownStatement = CrownStatement {
    tag: "nonequal5",
    edges: 5,
    ends: &[(3, 3)],
    applies: nonequal5_applies,
    check: check_5path_nonequal,
};

/// Redraws until the hypotheses hold, up to `ATTEMPTS` times.
fn draw(
    rng: &mut SplitMix64,
    gen: &InstanceGenerator,
    statement: &CrownStatement,
) -> Option<Rainbow> {
    (0..ATTEMPTS).find_map(|_| {
        let ends = statement.ends[rng.random_range(0..statement.ends.len())];
        let r = random_rainbow(rng, gen, statement.edges, |_| 5, ends);
        (statement.applies)(&r).then_some(r)
    })
}

fn record(tally: &mut Tally, r: &Rainbow, statement: &CrownStatement) {
    if !(statement.applies)(r) {
        tally.skipped += 1;
        return;
    }
    tally.check((statement.check)(r).map(|detail| (r.to_document(), detail)));
}

fn run(
    gen: &InstanceGenerator,
    statement: &CrownStatement,
) -> Result<VerificationReport, TheoremError> {
    gen.check_caps()?;
    if gen.palette_cap < 5 {
        return Err(TheoremError::PaletteTooSmall(statement.tag, 5));
    }
    let started = Instant::now();
    let tally = match gen.mode {
        Mode::Exhaustive => {
            let mut tally = Tally::default();
            enumerate_path_instances(gen, &mut |r| {
                let sizes = (r.lists().get(r.p0()).len(), r.lists().get(r.p1()).len());
                if statement.ends.contains(&sizes) {
                    record(&mut tally, &r, statement);
                }
                true
            })?;
            tally
        }
        Mode::Sampled => run_sampled(gen, |rng, tally: &mut Tally| {
            match draw(rng, gen, statement) {
                Some(r) => record(tally, &r, statement),
                None => tally.skipped += 1,
            }
        }),
    };
    Ok(tally.into_report(statement.tag, gen, started))
}

pub fn verify_main(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    run(gen, &MAIN)
}

pub fn verify_5path_crown(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    run(gen, &CROWN5)
}

pub fn verify_5path_nonequal(gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    run(gen, &NONEQUAL5)
}

//! Instance generators and one verifier per extension statement.
//!
//! Exhaustive runs enumerate plane graphs up to isomorphism and list
//! assignments up to palette permutation, with list sizes pinned at their
//! lower bounds. Sampled runs draw instances from a seeded SplitMix64 stream,
//! one independent stream per sample index, so results do not depend on the
//! number of worker threads.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color_core::{ColorSet, Rainbow};
use crate::planar_core::GraphDocument;

mod background;
mod crowns;
mod fans;
pub mod generate;
pub mod lists;
mod paths;
pub mod projection;
mod sweep;

pub use background::{
    verify_background, verify_bohme, verify_chords_at_middle, verify_cut_invariance,
    verify_dominated_path, verify_middle_recolor, verify_path_chord, verify_short_cycle,
    verify_thomassen, verify_two_lists,
};
pub use crowns::{
    check_5path_crown, check_5path_nonequal, check_main, verify_5path_crown, verify_5path_nonequal,
    verify_main,
};
pub use fans::verify_broken_wheel;
pub use paths::{
    check_end2, check_t1, check_t2, check_t3, check_t4, verify_end_2path, verify_t1, verify_t2,
    verify_t3, verify_t4, verify_t_all,
};
pub use sweep::{colorable_for_all, colorable_for_all_from, ListChoices};

pub const MAX_GENERATOR_VERTICES: usize = 14;
pub const MAX_GENERATOR_PALETTE: usize = 8;
/// Violations kept verbatim in a report; the rest are only counted.
pub const KEPT_VIOLATIONS: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("caps exceed the generator limits: max_vertices {max_vertices} (limit {MAX_GENERATOR_VERTICES}), palette {palette} (limit {MAX_GENERATOR_PALETTE})")]
    CapExceeded { max_vertices: usize, palette: usize },
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("{0} needs a palette of at least {1} colors")]
    PaletteTooSmall(&'static str, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    #[serde(rename = "2-path")]
    TwoPath,
    #[serde(rename = "3-path")]
    ThreePath,
    #[serde(rename = "4-path")]
    FourPath,
    #[serde(rename = "5-path")]
    FivePath,
    #[serde(rename = "cycle-5-6")]
    Cycle56,
    BrokenWheel,
    TwoTwoLists,
}

impl Shape {
    pub fn path_edges(self) -> Option<usize> {
        match self {
            Shape::TwoPath => Some(2),
            Shape::ThreePath => Some(3),
            Shape::FourPath => Some(4),
            Shape::FivePath => Some(5),
            _ => None,
        }
    }
}

/// Caps and seed for one verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceGenerator {
    pub max_vertices: usize,
    pub palette_cap: usize,
    pub mode: Mode,
    pub seed: u64,
    pub shape: Shape,
    /// Number of draws in sampled mode.
    pub samples: usize,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

impl InstanceGenerator {
    pub fn exhaustive(shape: Shape, max_vertices: usize, palette_cap: usize) -> Self {
        InstanceGenerator {
            max_vertices,
            palette_cap,
            mode: Mode::Exhaustive,
            seed: 0,
            shape,
            samples: 0,
            jobs: 0,
        }
    }

    pub fn sampled(
        shape: Shape,
        max_vertices: usize,
        palette_cap: usize,
        samples: usize,
        seed: u64,
    ) -> Self {
        InstanceGenerator {
            max_vertices,
            palette_cap,
            mode: Mode::Sampled,
            seed,
            shape,
            samples,
            jobs: 0,
        }
    }

    pub fn with_jobs(self, jobs: usize) -> Self {
        InstanceGenerator { jobs, ..self }
    }

    pub fn with_shape(self, shape: Shape) -> Self {
        InstanceGenerator { shape, ..self }
    }

    pub fn check_caps(&self) -> Result<(), TheoremError> {
        if self.max_vertices > MAX_GENERATOR_VERTICES || self.palette_cap > MAX_GENERATOR_PALETTE {
            return Err(TheoremError::CapExceeded {
                max_vertices: self.max_vertices,
                palette: self.palette_cap,
            });
        }
        Ok(())
    }

    pub fn caps(&self) -> Caps {
        Caps {
            max_vertices: self.max_vertices,
            palette: self.palette_cap,
            mode: self.mode,
            samples: if self.mode == Mode::Sampled {
                self.samples
            } else {
                0
            },
        }
    }

    /// The independent random stream of sample `index`.
    pub fn sample_rng(&self, index: u64) -> SplitMix64 {
        let mut mixer = SplitMix64::seed_from_u64(self.seed);
        let base: u64 = mixer.random();
        SplitMix64::seed_from_u64(base ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    /// Runs `work` inside a pool with the requested number of threads.
    fn install<T: Send>(&self, work: impl FnOnce() -> T + Send) -> T {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .expect("thread pool");
        pool.install(work)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_vertices: usize,
    pub palette: usize,
    pub mode: Mode,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub instance: GraphDocument,
    pub detail: String,
}

impl Violation {
    pub fn new(instance: GraphDocument, detail: impl Into<String>) -> Self {
        Violation {
            instance,
            detail: detail.into(),
        }
    }

    fn sort_key(&self) -> (String, String) {
        (
            self.detail.clone(),
            serde_json::to_string(&self.instance).expect("serializable"),
        )
    }
}

/// Counts and kept violations; merging is associative and order-free.
#[derive(Clone, Debug, Default)]
pub(crate) struct Tally {
    pub checked: u64,
    pub skipped: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
}

impl Tally {
    pub fn check(&mut self, outcome: Option<(GraphDocument, String)>) {
        self.checked += 1;
        if let Some((instance, detail)) = outcome {
            self.violation(Violation::new(instance, detail));
        }
    }

    pub fn violation(&mut self, v: Violation) {
        self.violation_count += 1;
        self.violations.push(v);
        if self.violations.len() > 2 * KEPT_VIOLATIONS {
            self.trim();
        }
    }

    fn trim(&mut self) {
        self.violations.sort_by_cached_key(Violation::sort_key);
        self.violations.dedup();
        self.violations.truncate(KEPT_VIOLATIONS);
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.trim();
        self
    }

    pub fn into_report(
        mut self,
        theorem: &str,
        gen: &InstanceGenerator,
        started: Instant,
    ) -> VerificationReport {
        self.trim();
        VerificationReport {
            theorem: theorem.to_string(),
            checked: self.checked,
            skipped: self.skipped,
            violation_count: self.violation_count,
            violations: self.violations,
            seed: gen.seed,
            caps: gen.caps(),
            wall_time: started.elapsed(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub checked: u64,
    /// Generated instances rejected by the statement's hypothesis filter.
    pub skipped: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub seed: u64,
    pub caps: Caps,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Folds several reports into one under a new id.
    pub fn combine(
        theorem: &str,
        gen: &InstanceGenerator,
        parts: Vec<VerificationReport>,
    ) -> VerificationReport {
        let wall_time = parts.iter().map(|p| p.wall_time).sum();
        let tally = parts.into_iter().fold(Tally::default(), |acc, p| {
            acc.merge(Tally {
                checked: p.checked,
                skipped: p.skipped,
                violation_count: p.violation_count,
                violations: p
                    .violations
                    .into_iter()
                    .map(|v| Violation {
                        detail: format!("{}: {}", p.theorem, v.detail),
                        ..v
                    })
                    .collect(),
            })
        });
        let mut report = tally.into_report(theorem, gen, Instant::now());
        report.wall_time = wall_time;
        report
    }
}

/// Per-worker results that combine associatively.
pub(crate) trait Merge: Default + Send {
    fn merge(self, other: Self) -> Self;
}

impl Merge for Tally {
    fn merge(self, other: Self) -> Self {
        Tally::merge(self, other)
    }
}

/// Runs `one` on every sample index in parallel and merges the results.
pub(crate) fn run_sampled<A: Merge>(
    gen: &InstanceGenerator,
    one: impl Fn(&mut SplitMix64, &mut A) + Sync,
) -> A {
    gen.install(|| {
        (0..gen.samples as u64)
            .into_par_iter()
            .fold(A::default, |mut acc, i| {
                let mut rng = gen.sample_rng(i);
                one(&mut rng, &mut acc);
                acc
            })
            .reduce(A::default, A::merge)
    })
}

/// Runs `one` on every work item in parallel and merges the results.
pub(crate) fn run_items<T: Sync, A: Merge>(
    gen: &InstanceGenerator,
    items: &[T],
    one: impl Fn(&T, &mut A) + Sync,
) -> A {
    gen.install(|| {
        items
            .par_iter()
            .fold(A::default, |mut acc, item| {
                one(item, &mut acc);
                acc
            })
            .reduce(A::default, A::merge)
    })
}

pub(crate) fn random_list<R: Rng>(rng: &mut R, palette: usize, size: usize) -> ColorSet {
    sample(rng, palette, size.min(palette))
        .into_iter()
        .map(|c| c as u8)
        .collect()
}

/// Statements with a verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    End2,
    T1,
    T2,
    T3,
    T4,
    Main,
    Crown5,
    Nonequal5,
    Background,
    Thomassen,
    ShortCycle,
    TwoLists,
    Bohme,
    BrokenWheel,
    DominatedPath,
    ChordsAtMiddle,
    PathChord,
    CutInvariance,
    MiddleRecolor,
}

impl TheoremId {
    pub const ALL: [TheoremId; 19] = [
        TheoremId::End2,
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::Main,
        TheoremId::Crown5,
        TheoremId::Nonequal5,
        TheoremId::Background,
        TheoremId::Thomassen,
        TheoremId::ShortCycle,
        TheoremId::TwoLists,
        TheoremId::Bohme,
        TheoremId::BrokenWheel,
        TheoremId::DominatedPath,
        TheoremId::ChordsAtMiddle,
        TheoremId::PathChord,
        TheoremId::CutInvariance,
        TheoremId::MiddleRecolor,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            TheoremId::End2 => "end2",
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::T4 => "T4",
            TheoremId::Main => "main",
            TheoremId::Crown5 => "crown5",
            TheoremId::Nonequal5 => "nonequal5",
            TheoremId::Background => "background",
            TheoremId::Thomassen => "thomassen",
            TheoremId::ShortCycle => "short-cycle",
            TheoremId::TwoLists => "two-lists",
            TheoremId::Bohme => "bohme",
            TheoremId::BrokenWheel => "broken-wheel",
            TheoremId::DominatedPath => "dominated-path",
            TheoremId::ChordsAtMiddle => "chords-at-middle",
            TheoremId::PathChord => "path-chord",
            TheoremId::CutInvariance => "cut-invariance",
            TheoremId::MiddleRecolor => "middle-recolor",
        }
    }

    /// The instance shape each verifier draws from.
    pub fn shape(self) -> Shape {
        match self {
            TheoremId::End2
            | TheoremId::DominatedPath
            | TheoremId::ChordsAtMiddle
            | TheoremId::PathChord => Shape::TwoPath,
            TheoremId::T1
            | TheoremId::T2
            | TheoremId::T3
            | TheoremId::T4
            | TheoremId::CutInvariance
            | TheoremId::MiddleRecolor => Shape::ThreePath,
            TheoremId::Main => Shape::FourPath,
            TheoremId::Crown5 | TheoremId::Nonequal5 => Shape::FivePath,
            TheoremId::Bohme => Shape::Cycle56,
            TheoremId::BrokenWheel => Shape::BrokenWheel,
            TheoremId::Thomassen
            | TheoremId::ShortCycle
            | TheoremId::TwoLists
            | TheoremId::Background => Shape::TwoTwoLists,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TheoremId {
    type Err = TheoremError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| TheoremError::UnknownTheorem(s.to_string()))
    }
}

/// Dispatches to the verifier for `id`, using `id`'s shape.
pub fn verify(id: TheoremId, gen: &InstanceGenerator) -> Result<VerificationReport, TheoremError> {
    let gen = &gen.with_shape(id.shape());
    match id {
        TheoremId::End2 => verify_end_2path(gen),
        TheoremId::T1 => verify_t1(gen),
        TheoremId::T2 => verify_t2(gen),
        TheoremId::T3 => verify_t3(gen),
        TheoremId::T4 => verify_t4(gen),
        TheoremId::Main => verify_main(gen),
        TheoremId::Crown5 => verify_5path_crown(gen),
        TheoremId::Nonequal5 => verify_5path_nonequal(gen),
        TheoremId::Background => verify_background(gen),
        TheoremId::Thomassen => verify_thomassen(gen),
        TheoremId::ShortCycle => verify_short_cycle(gen),
        TheoremId::TwoLists => verify_two_lists(gen),
        TheoremId::Bohme => verify_bohme(gen),
        TheoremId::BrokenWheel => verify_broken_wheel(gen),
        TheoremId::DominatedPath => verify_dominated_path(gen),
        TheoremId::ChordsAtMiddle => verify_chords_at_middle(gen),
        TheoremId::PathChord => verify_path_chord(gen),
        TheoremId::CutInvariance => verify_cut_invariance(gen),
        TheoremId::MiddleRecolor => verify_middle_recolor(gen),
    }
}

/// Calls `visit` on every rainbow of a path shape: in exhaustive mode one per
/// class of plane graph, path placement and pinned lists; in sampled mode
/// `samples` seeded draws. Stops when `visit` returns false.
pub fn enumerate_instances(
    gen: &InstanceGenerator,
    visit: &mut impl FnMut(Rainbow) -> bool,
) -> Result<(), TheoremError> {
    gen.check_caps()?;
    paths::enumerate_path_instances(gen, visit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_tags_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.tag().parse::<TheoremId>().unwrap(), id);
        }
        assert!(matches!(
            "nope".parse::<TheoremId>(),
            Err(TheoremError::UnknownTheorem(_))
        ));
    }

    #[test]
    fn caps_are_enforced() {
        let gen = InstanceGenerator::exhaustive(Shape::TwoPath, 15, 6);
        assert!(matches!(
            gen.check_caps(),
            Err(TheoremError::CapExceeded { .. })
        ));
        let gen = InstanceGenerator::exhaustive(Shape::TwoPath, 8, 9);
        assert!(matches!(
            gen.check_caps(),
            Err(TheoremError::CapExceeded { .. })
        ));
    }

    #[test]
    fn sample_streams_depend_only_on_seed_and_index() {
        let gen = InstanceGenerator::sampled(Shape::TwoPath, 8, 6, 10, 7);
        let a: u64 = gen.sample_rng(3).random();
        let b: u64 = gen.with_jobs(4).sample_rng(3).random();
        assert_eq!(a, b);
        let c: u64 = gen.sample_rng(4).random();
        assert_ne!(a, c);
    }

    #[test]
    fn tally_merge_is_order_free() {
        let doc = GraphDocument::default();
        let make = |d: &str| {
            let mut t = Tally::default();
            t.check(Some((doc.clone(), d.to_string())));
            t
        };
        let left = make("a").merge(make("b")).merge(make("c"));
        let right = make("c").merge(make("a").merge(make("b")));
        assert_eq!(left.violations, right.violations);
        assert_eq!(left.checked, 3);
    }
}

//! The two counterexample graphs shipped with the workbench.
//!
//! `fig7`: vertices `p0=1, q0=2, u1=3, u2=4, p1=5, q1=6, w=7`; outer cycle
//! `p0 u1 u2 p1 q1 q0`; path `p0 q0 q1 p1`; `w` sits inside, adjacent to
//! `q0, u1, u2, p1, q1`. Symbolic colors in first-appearance order over that
//! vertex order: `c0=0, c1=1, s=2, d0=3, d1=4`. Endpoint lists have size two,
//! and so do the lists on `q0` and `q1`, exactly as drawn.
//!
//! `fig10`: vertices `p0=1, u1=2, p1=3, q0=4, q1=5, z=6`; outer cycle
//! `p1 u1 p0 q0 z q1`; path `p0 q0 z q1 p1`; chords `u1q0, u1z, u1q1`.
//! Colors: `a=0, b=1, c=2, f=3, r=4, s=5, d=6`.

use std::str::FromStr;

use thiserror::Error;

use crate::color_core::{Rainbow, RainbowError};
use crate::planar_core::GraphDocument;

pub const FIG7_JSON: &str = include_str!("../fixtures/fig7.json");
pub const FIG10_JSON: &str = include_str!("../fixtures/fig10.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureId {
    Fig7,
    Fig10,
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture {0:?} (expected fig7 or fig10)")]
    UnknownFixture(String),
    #[error("fixture document is malformed: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Rainbow(#[from] RainbowError),
}

impl FromStr for FixtureId {
    type Err = FixtureError;
    fn from_str(s: &str) -> Result<Self, FixtureError> {
        match s {
            "fig7" => Ok(FixtureId::Fig7),
            "fig10" => Ok(FixtureId::Fig10),
            other => Err(FixtureError::UnknownFixture(other.to_string())),
        }
    }
}

impl FixtureId {
    pub fn document(self) -> Result<GraphDocument, FixtureError> {
        let text = match self {
            FixtureId::Fig7 => FIG7_JSON,
            FixtureId::Fig10 => FIG10_JSON,
        };
        Ok(serde_json::from_str(text)?)
    }
}

pub fn load_fixture(id: FixtureId) -> Result<Rainbow, FixtureError> {
    Ok(Rainbow::from_document(&id.document()?)?)
}

/// Parses a fixture tag and loads it.
pub fn load_fixture_by_name(name: &str) -> Result<Rainbow, FixtureError> {
    load_fixture(name.parse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color_core::ColorSet;

    fn list_of(r: &Rainbow, label: u32) -> ColorSet {
        r.lists()
            .get(r.graph().index_of(label).expect("label present"))
    }

    #[test]
    fn fig10_matches_the_drawing() {
        let r = load_fixture(FixtureId::Fig10).unwrap();
        assert_eq!(r.n(), 6);
        assert_eq!(r.graph().labels_of(r.path()), [1, 4, 6, 5, 3]);
        let expected: [(u32, &[u8]); 6] = [
            (1, &[0]),
            (2, &[0, 1, 2]),
            (3, &[1, 2, 3]),
            (4, &[0, 1, 2, 4, 5]),
            (5, &[1, 2, 3, 5, 6]),
            (6, &[1, 2, 4, 5, 6]),
        ];
        for (label, colors) in expected {
            assert_eq!(
                list_of(&r, label),
                colors.iter().copied().collect(),
                "vertex {label}"
            );
        }
    }

    #[test]
    fn fig7_has_its_hub() {
        let r = load_fixture(FixtureId::Fig7).unwrap();
        assert_eq!(r.n(), 7);
        assert_eq!(r.path_len(), 3);
        assert_eq!(list_of(&r, 7), ColorSet::range(5));
        let hub = r.graph().index_of(7).unwrap();
        assert_eq!(r.graph().neighbors(hub).len(), 5);
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(matches!(
            load_fixture_by_name("fig8"),
            Err(FixtureError::UnknownFixture(_))
        ));
        assert!(load_fixture_by_name("fig10").is_ok());
    }
}

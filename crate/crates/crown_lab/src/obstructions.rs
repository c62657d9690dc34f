//! Obstructions and tilts for 3-paths, base-colorings of the endpoint pair,
//! and the vertex obstruction for 5-paths.

use serde::Serialize;
use thiserror::Error;

use crate::color_core::{PartialColoring, Rainbow};
use crate::planar_core::{Vertex, VertexSet};
use crate::sufficiency::failing_extensions;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("path must have {expected} edges, found {found}")]
    PathLength { expected: usize, found: usize },
    #[error("coloring must be a proper L-coloring of exactly the two endpoints")]
    NotEndpointColoring,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(edges: usize) -> Self {
        if edges.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    /// Vertices of `Q*` from `x0` to `x1`.
    pub path: Vec<Vertex>,
    pub triangle_type: bool,
    pub witness_hub: Option<Vertex>,
    pub parity: Parity,
}

impl Obstruction {
    pub fn edge_count(&self) -> usize {
        self.path.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TiltReport {
    /// The terminal edge `p_k q_k`.
    pub edge: (Vertex, Vertex),
    pub even: bool,
    pub odd: bool,
    pub witness_paths: Vec<Vec<Vertex>>,
}

fn require_len(r: &Rainbow, expected: usize) -> Result<(), ObstructionError> {
    if r.path_len() == expected {
        Ok(())
    } else {
        Err(ObstructionError::PathLength {
            expected,
            found: r.path_len(),
        })
    }
}

/// For `P = p0 q0 q1 p1`, the neighbor of each `q_i` on `C - P̊` farthest
/// from `p_i`.
pub fn x_vertices(r: &Rainbow) -> Result<(Vertex, Vertex), ObstructionError> {
    require_len(r, 3)?;
    let arc = r.arc();
    let (q0, q1) = (r.path()[1], r.path()[2]);
    let x0 = arc
        .iter()
        .rev()
        .find(|&&v| r.graph().has_edge(q0, v))
        .copied()
        .unwrap_or(r.p0());
    let x1 = arc
        .iter()
        .find(|&&v| r.graph().has_edge(q1, v))
        .copied()
        .unwrap_or(r.p1());
    Ok((x0, x1))
}

/// All simple paths from `from` to `to` inside `allowed`.
fn simple_paths(r: &Rainbow, allowed: VertexSet, from: Vertex, to: Vertex) -> Vec<Vec<Vertex>> {
    fn walk(
        r: &Rainbow,
        allowed: VertexSet,
        to: Vertex,
        path: &mut Vec<Vertex>,
        seen: VertexSet,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let last = *path.last().expect("nonempty");
        if last == to {
            out.push(path.clone());
            return;
        }
        for next in r
            .graph()
            .neighbors(last)
            .intersection(allowed)
            .difference(seen)
        {
            path.push(next);
            walk(r, allowed, to, path, seen.with(next), out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    if allowed.contains(from) && allowed.contains(to) {
        walk(
            r,
            allowed,
            to,
            &mut vec![from],
            VertexSet::single(from),
            &mut out,
        );
    }
    out
}

/// Every obstruction for a 3-path.
pub fn find_obstructions(r: &Rainbow) -> Result<Vec<Obstruction>, ObstructionError> {
    let (x0, x1) = x_vertices(r)?;
    if x0 == x1 {
        return Ok(vec![Obstruction {
            path: vec![x0],
            triangle_type: r.outer_off_path().contains(x0),
            witness_hub: None,
            parity: Parity::Even,
        }]);
    }
    let (q0, q1) = (r.path()[1], r.path()[2]);
    let inner = r.inner_vertices();
    let mut out = Vec::new();
    for path in simple_paths(r, r.arc_set(), x0, x1) {
        if path.len() < 3 {
            continue;
        }
        let cycle: VertexSet = path.iter().copied().chain([q0, q1]).collect();
        let hub = inner
            .iter()
            .find(|&w| cycle.is_subset(r.graph().neighbors(w)));
        if let Some(w) = hub {
            let parity = Parity::of(path.len() - 1);
            out.push(Obstruction {
                path,
                triangle_type: false,
                witness_hub: Some(w),
                parity,
            });
        }
    }
    Ok(out)
}

/// Parities of paths on `C - P̊` from `p_k` to `x_k` whose vertices all see `q_k`.
pub fn edge_tilt(r: &Rainbow, k: usize) -> Result<TiltReport, ObstructionError> {
    let (x0, x1) = x_vertices(r)?;
    let (p, q, x) = if k == 0 {
        (r.p0(), r.path()[1], x0)
    } else {
        (r.p1(), r.path()[2], x1)
    };
    let allowed = r.arc_set().intersection(r.graph().neighbors(q));
    let witness_paths = simple_paths(r, allowed, p, x);
    let even = witness_paths.iter().any(|w| (w.len() - 1) % 2 == 0);
    let odd = witness_paths.iter().any(|w| (w.len() - 1) % 2 == 1);
    Ok(TiltReport {
        edge: (p, q),
        even,
        odd,
        witness_paths,
    })
}

pub fn is_fully_even(r: &Rainbow, obstruction: &Obstruction) -> Result<bool, ObstructionError> {
    Ok(obstruction.parity == Parity::Even && edge_tilt(r, 0)?.even && edge_tilt(r, 1)?.even)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BaseCase {
    B1,
    B2,
    B3,
    #[serde(rename = "none")]
    NotBase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseColoringVerdict {
    pub coloring: PartialColoring,
    pub case: BaseCase,
    /// Extensions to `V(P)` that do not extend to the whole graph.
    pub failing_extensions: Vec<PartialColoring>,
}

/// Decides which base-coloring case (if any) a coloring of `{p0, p1}` meets.
pub fn base_coloring_verdict(
    r: &Rainbow,
    phi: &PartialColoring,
) -> Result<BaseColoringVerdict, ObstructionError> {
    require_len(r, 3)?;
    let ends = VertexSet::single(r.p0()).with(r.p1());
    if phi.domain() != ends || !phi.is_proper(r.adjacency()) || !phi.respects(r.lists()) {
        return Err(ObstructionError::NotEndpointColoring);
    }
    let failing = failing_extensions(r.adjacency(), r.lists().as_slice(), r.path_set(), phi);
    let case = base_case(r, &failing)?;
    Ok(BaseColoringVerdict {
        coloring: phi.clone(),
        case,
        failing_extensions: failing,
    })
}

/// The base-coloring case for a given failing set.
pub fn base_case(r: &Rainbow, failing: &[PartialColoring]) -> Result<BaseCase, ObstructionError> {
    if failing.len() <= 1 {
        return Ok(BaseCase::B1);
    }
    if failing.len() > 2 {
        return Ok(BaseCase::NotBase);
    }
    let triangle = find_obstructions(r)?.iter().any(|o| o.triangle_type);
    if !triangle {
        return Ok(BaseCase::NotBase);
    }
    let q = [r.path()[1], r.path()[2]];
    let tilts = [edge_tilt(r, 0)?, edge_tilt(r, 1)?];
    let constant_on = |v: Vertex| failing.iter().all(|psi| psi.get(v) == failing[0].get(v));
    if (0..2).any(|j| tilts[j].even && constant_on(q[1 - j])) {
        return Ok(BaseCase::B2);
    }
    let pair = |psi: &PartialColoring| {
        let (a, b) = (psi.get(q[0]), psi.get(q[1]));
        (a.min(b), a.max(b))
    };
    if failing.iter().all(|psi| pair(psi) == pair(&failing[0])) && tilts.iter().any(|t| t.odd) {
        return Ok(BaseCase::B3);
    }
    Ok(BaseCase::NotBase)
}

/// Outer vertices adjacent to all four internal vertices of a 5-path, or to
/// an endpoint `p` and the two internal vertices away from its subpath `pqv`.
pub fn g_obstruction_5path(r: &Rainbow) -> Result<VertexSet, ObstructionError> {
    require_len(r, 5)?;
    let path = r.path();
    let sees_all = |x: Vertex, vs: &[Vertex]| vs.iter().all(|&v| r.graph().has_edge(x, v));
    Ok(r.cycle_set()
        .iter()
        .filter(|&x| {
            sees_all(x, &path[1..5])
                || sees_all(x, &[path[0], path[3], path[4]])
                || sees_all(x, &[path[5], path[1], path[2]])
        })
        .collect())
}

//! Plane graphs whose outer face is the cycle `0, 1, .., k-1`, built by
//! chord dissection followed by interior-vertex insertion into faces.

use std::collections::BTreeMap;

use rand::Rng;

use crate::planar_core::{PlanarEmbedding, Vertex};

/// A plane graph as a rotation system. Vertex `i < outer_len` sits on the
/// outer cycle with rotation `[i-1, .., i+1]`; the rest are interior.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Disc {
    pub rot: Vec<Vec<u8>>,
    pub outer_len: usize,
}

impl Disc {
    pub fn cycle(k: usize) -> Self {
        Self::dissection(k, &[])
    }

    /// The `k`-cycle with the given pairwise non-crossing chords.
    pub fn dissection(k: usize, chords: &[(usize, usize)]) -> Self {
        let mut nbrs: Vec<Vec<usize>> =
            (0..k).map(|i| vec![(i + k - 1) % k, (i + 1) % k]).collect();
        for &(a, b) in chords {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        let rot = nbrs
            .into_iter()
            .enumerate()
            .map(|(i, mut ns)| {
                // sweep from i-1 to i+1 through the inside: decreasing offset
                ns.sort_by_key(|&j| std::cmp::Reverse((j + k - i) % k));
                ns.into_iter().map(|j| j as u8).collect()
            })
            .collect();
        Disc { rot, outer_len: k }
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rot[u].contains(&(v as u8))
    }

    fn next_dart(&self, u: usize, v: usize) -> (usize, usize) {
        let rv = &self.rot[v];
        let pos = rv.iter().position(|&x| x as usize == u).expect("dart");
        (v, rv[(pos + 1) % rv.len()] as usize)
    }

    /// Boundary walks of the inner faces, each as its vertex sequence.
    pub fn inner_faces(&self) -> Vec<Vec<usize>> {
        let mut seen: Vec<Vec<bool>> = self.rot.iter().map(|r| vec![false; r.len()]).collect();
        let mark = |seen: &mut Vec<Vec<bool>>, u: usize, v: usize| {
            let pos = self.rot[u]
                .iter()
                .position(|&x| x as usize == v)
                .expect("dart");
            std::mem::replace(&mut seen[u][pos], true)
        };
        // the outer face runs 1 -> 0 -> k-1 -> ...
        let (mut u, mut v) = (1usize, 0usize);
        while !mark(&mut seen, u, v) {
            (u, v) = self.next_dart(u, v);
        }
        let mut faces = Vec::new();
        for s in 0..self.n() {
            for idx in 0..self.rot[s].len() {
                let t = self.rot[s][idx] as usize;
                if seen[s][idx] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut u, mut v) = (s, t);
                while !mark(&mut seen, u, v) {
                    walk.push(u);
                    (u, v) = self.next_dart(u, v);
                }
                faces.push(walk);
            }
        }
        faces
    }

    /// Adds a vertex inside `face` adjacent to the walk positions in `corners`
    /// (increasing, with distinct vertices).
    pub fn insert(&self, face: &[usize], corners: &[usize]) -> Disc {
        let mut rot = self.rot.clone();
        let v = self.n() as u8;
        let len = face.len();
        for &j in corners {
            let (prev, here) = (face[(j + len - 1) % len], face[j]);
            let pos = rot[here]
                .iter()
                .position(|&x| x as usize == prev)
                .expect("corner");
            rot[here].insert(pos + 1, v);
        }
        rot.push(corners.iter().rev().map(|&j| face[j] as u8).collect());
        Disc {
            rot,
            outer_len: self.outer_len,
        }
    }

    /// Planar code from the root dart, reading rotations backwards when mirrored.
    fn code(&self, root: (usize, usize), mirror: bool, out: &mut Vec<u8>) {
        let n = self.n();
        let mut number = vec![0u8; n];
        let mut start = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        number[root.0] = 1;
        start[root.0] = root.1;
        order.push(root.0);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            let r = &self.rot[x];
            let d = r.len();
            let s = r
                .iter()
                .position(|&y| y as usize == start[x])
                .expect("start");
            for step in 0..d {
                let idx = if mirror {
                    (s + d - step) % d
                } else {
                    (s + step) % d
                };
                let y = r[idx] as usize;
                if number[y] == 0 {
                    number[y] = order.len() as u8 + 1;
                    start[y] = x;
                    order.push(y);
                }
                out.push(number[y]);
            }
            out.push(0);
        }
    }

    fn code_from(&self, root: (usize, usize), mirror: bool) -> Vec<u8> {
        let mut out = Vec::with_capacity(3 * self.n() + 4 * self.n());
        self.code(root, mirror, &mut out);
        out
    }

    /// Certificate invariant under isomorphisms that preserve the outer face,
    /// orientation-reversing ones included.
    pub fn certificate(&self) -> Vec<u8> {
        let k = self.outer_len;
        (0..k)
            .flat_map(|i| [(((i + 1) % k, i), false), ((i, (i + 1) % k), true)])
            .map(|(root, mirror)| self.code_from(root, mirror))
            .min()
            .expect("nonempty cycle")
    }

    /// Certificate of the disc with a distinguished outer dart `from -> to`.
    pub fn rooted_certificate(&self, from: usize, to: usize) -> Vec<u8> {
        let k = self.outer_len;
        let outer_forward = (from + k - 1) % k == to;
        [false, true]
            .into_iter()
            .map(|mirror| {
                let mut out = vec![u8::from(outer_forward != mirror)];
                self.code((from, to), mirror, &mut out);
                out
            })
            .min()
            .expect("two orientations")
    }

    pub fn embedding(&self) -> PlanarEmbedding {
        let rot: Vec<Vec<Vertex>> = self
            .rot
            .iter()
            .map(|r| r.iter().map(|&x| x as Vertex).collect())
            .collect();
        let outer: Vec<Vertex> = (0..self.outer_len).collect();
        PlanarEmbedding::from_rotation(rot, &outer).expect("generated discs are plane")
    }
}

/// All non-crossing chord sets of the `k`-cycle, each exactly once.
pub fn dissections(k: usize) -> Vec<Disc> {
    let chords: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (a + 2..k).map(move |b| (a, b)))
        .filter(|&(a, b)| !(a == 0 && b == k - 1))
        .collect();
    let crosses = |(a, b): (usize, usize), (c, d): (usize, usize)| {
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    };
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn walk(
        i: usize,
        chords: &[(usize, usize)],
        chosen: &mut Vec<(usize, usize)>,
        crosses: &dyn Fn((usize, usize), (usize, usize)) -> bool,
        k: usize,
        out: &mut Vec<Disc>,
    ) {
        if i == chords.len() {
            out.push(Disc::dissection(k, chosen));
            return;
        }
        walk(i + 1, chords, chosen, crosses, k, out);
        if chosen.iter().all(|&c| !crosses(c, chords[i])) {
            chosen.push(chords[i]);
            walk(i + 1, chords, chosen, crosses, k, out);
            chosen.pop();
        }
    }
    walk(0, &chords, &mut chosen, &crosses, k, &mut out);
    out
}

fn distinct(face: &[usize], corners: &[usize]) -> bool {
    let mut seen = 0u64;
    corners.iter().all(|&j| {
        let fresh = seen >> face[j] & 1 == 0;
        seen |= 1 << face[j];
        fresh
    })
}

/// Corner subsets of a face walk with distinct vertices and at least `min` of them.
fn corner_subsets(face: &[usize], min: usize) -> Vec<Vec<usize>> {
    let len = face.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << len) {
        if (mask.count_ones() as usize) < min {
            continue;
        }
        let corners: Vec<usize> = (0..len).filter(|j| mask >> j & 1 == 1).collect();
        if distinct(face, &corners) {
            out.push(corners);
        }
    }
    out
}

/// Every disc with outer cycle length `k` and exactly `interior` interior
/// vertices of degree at least `min_degree`, one per isomorphism class.
pub fn discs(k: usize, interior: usize, min_degree: usize) -> Vec<Disc> {
    let mut level: BTreeMap<Vec<u8>, Disc> = dissections(k)
        .into_iter()
        .map(|d| (d.certificate(), d))
        .collect();
    for step in 0..interior {
        let later = interior - 1 - step;
        let need = min_degree.saturating_sub(later).max(1);
        let mut next = BTreeMap::new();
        for disc in level.values() {
            for face in disc.inner_faces() {
                for corners in corner_subsets(&face, need) {
                    let grown = disc.insert(&face, &corners);
                    let viable = (k..grown.n()).all(|u| grown.degree(u) + later >= min_degree);
                    if viable {
                        next.entry(grown.certificate()).or_insert(grown);
                    }
                }
            }
        }
        level = next;
    }
    level.into_values().collect()
}

/// A random disc with outer cycle length `k` and `interior` interior vertices.
pub fn random_disc<R: Rng>(
    rng: &mut R,
    k: usize,
    interior: usize,
    chord_rate: f64,
    corner_rate: f64,
) -> Disc {
    let mut chords: Vec<(usize, usize)> = Vec::new();
    let crosses = |(a, b): (usize, usize), (c, d): (usize, usize)| {
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    };
    if k > 3 {
        for _ in 0..k {
            if !rng.random_bool(chord_rate) {
                continue;
            }
            let a = rng.random_range(0..k);
            let b = rng.random_range(0..k);
            let (a, b) = (a.min(b), a.max(b));
            let ok = b >= a + 2
                && !(a == 0 && b == k - 1)
                && !chords.contains(&(a, b))
                && chords.iter().all(|&c| !crosses(c, (a, b)));
            if ok {
                chords.push((a, b));
            }
        }
    }
    let mut disc = Disc::dissection(k, &chords);
    for _ in 0..interior {
        let faces = disc.inner_faces();
        let face = &faces[rng.random_range(0..faces.len())];
        let mut corners: Vec<usize> = Vec::new();
        for j in 0..face.len() {
            if rng.random_bool(corner_rate) && !corners.iter().any(|&i| face[i] == face[j]) {
                corners.push(j);
            }
        }
        if corners.is_empty() {
            corners.push(rng.random_range(0..face.len()));
        }
        disc = disc.insert(face, &corners);
    }
    disc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dissection_counts_match_little_schroeder_numbers() {
        let counts: Vec<usize> = (3..=8).map(|k| dissections(k).len()).collect();
        assert_eq!(counts, vec![1, 3, 11, 45, 197, 903]);
    }

    #[test]
    fn dissections_are_plane() {
        for d in dissections(6) {
            let g = d.embedding();
            assert_eq!(g.n(), 6);
        }
    }

    #[test]
    fn dissection_classes_under_the_dihedral_group() {
        // polygon dissections up to rotation and reflection
        let classes: Vec<usize> = (3..=7).map(|k| discs(k, 0, 0).len()).collect();
        assert_eq!(classes, vec![1, 2, 3, 9, 20]);
    }

    #[test]
    fn wheel_is_the_only_single_hub_over_a_pentagon() {
        let found = discs(5, 1, 5);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].degree(5), 5);
        found[0].embedding();
    }

    #[test]
    fn inserted_vertices_give_plane_embeddings() {
        for d in discs(4, 2, 1) {
            let g = d.embedding();
            assert_eq!(g.n(), 6);
        }
    }

    #[test]
    fn inner_faces_of_the_wheel_are_triangles() {
        let wheel = &discs(5, 1, 5)[0];
        let faces = wheel.inner_faces();
        assert_eq!(faces.len(), 5);
        assert!(faces.iter().all(|f| f.len() == 3));
    }
}

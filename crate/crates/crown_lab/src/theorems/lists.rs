//! Orderly enumeration of list sequences up to permutations of the palette.

use crate::color_core::ColorSet;

/// A permutation of the palette, `perm[c]` being the image of color `c`.
pub type Perm = Vec<u8>;

pub fn apply(perm: &[u8], set: ColorSet) -> ColorSet {
    set.iter().map(|c| perm[c as usize]).collect()
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current: Perm = (0..k as u8).collect();
    loop {
        out.push(current.clone());
        let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..k)
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .expect("successor");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

/// All `size`-subsets of a `k`-color palette in increasing numeric order.
pub fn subsets(k: usize, size: usize) -> Vec<ColorSet> {
    (0u64..1 << k)
        .filter(|m| m.count_ones() as usize == size)
        .map(ColorSet)
        .collect()
}

/// Visits every list sequence with the given sizes that is lexicographically
/// least in its orbit under palette permutations, passing the stabilizer.
pub fn for_each_canonical(k: usize, sizes: &[usize], visit: &mut impl FnMut(&[ColorSet], &[Perm])) {
    let choices: Vec<Vec<ColorSet>> = sizes.iter().map(|&s| subsets(k, s)).collect();
    let mut prefix = Vec::with_capacity(sizes.len());
    descend(&choices, &mut prefix, &permutations(k), visit);
}

fn descend(
    choices: &[Vec<ColorSet>],
    prefix: &mut Vec<ColorSet>,
    stabilizer: &[Perm],
    visit: &mut impl FnMut(&[ColorSet], &[Perm]),
) {
    let depth = prefix.len();
    if depth == choices.len() {
        visit(prefix, stabilizer);
        return;
    }
    'candidates: for &set in &choices[depth] {
        let mut kept = Vec::new();
        for perm in stabilizer {
            let image = apply(perm, set);
            if image.0 < set.0 {
                continue 'candidates;
            }
            if image == set {
                kept.push(perm.clone());
            }
        }
        prefix.push(set);
        descend(choices, prefix, &kept, visit);
        prefix.pop();
    }
}

/// Whether the sequence is least in its orbit under `group`.
pub fn is_least(seq: &[ColorSet], group: &[Perm]) -> bool {
    group.iter().all(|perm| {
        seq.iter()
            .map(|&s| (apply(perm, s).0, s.0))
            .find(|(image, own)| image != own)
            .is_none_or(|(image, own)| image > own)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn orbit_count_by_brute_force(k: usize, sizes: &[usize]) -> usize {
        let perms = permutations(k);
        let mut seqs: Vec<Vec<ColorSet>> = vec![vec![]];
        for &s in sizes {
            seqs = seqs
                .into_iter()
                .flat_map(|p| {
                    subsets(k, s)
                        .into_iter()
                        .map(move |c| [p.clone(), vec![c]].concat())
                })
                .collect();
        }
        let orbits: BTreeSet<Vec<u64>> = seqs
            .iter()
            .map(|seq| {
                perms
                    .iter()
                    .map(|p| seq.iter().map(|&s| apply(p, s).0).collect::<Vec<_>>())
                    .min()
                    .unwrap()
            })
            .collect();
        orbits.len()
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(1), vec![vec![0]]);
    }

    #[test]
    fn canonical_sequences_are_orbit_representatives() {
        for (k, sizes) in [
            (4, vec![2, 2, 3]),
            (5, vec![3, 3, 3]),
            (5, vec![1, 3, 4, 2]),
        ] {
            let mut seen = Vec::new();
            for_each_canonical(k, &sizes, &mut |seq, _| seen.push(seq.to_vec()));
            assert_eq!(
                seen.len(),
                orbit_count_by_brute_force(k, &sizes),
                "k={k} sizes={sizes:?}"
            );
            let perms = permutations(k);
            assert!(seen.iter().all(|s| is_least(s, &perms)));
        }
    }

    #[test]
    fn stabilizer_fixes_the_sequence() {
        for_each_canonical(5, &[3, 2], &mut |seq, stab| {
            for p in stab {
                assert!(seq.iter().all(|&s| apply(p, s) == s));
            }
        });
    }
}

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::braid::Sign;
use crate::foliation::{SkSing, Skeleton};

use super::signature::{canonical_form, canonical_signature, DiscSignature};

/// Edges of the labelled tree with the given Prüfer sequence on `p`
/// vertices, each as `(smaller, larger)`.
pub fn prufer_tree(seq: &[usize], p: usize) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len() + 2, p.max(2));
    let mut degree = vec![1usize; p];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(p.saturating_sub(1));
    for &x in seq {
        let leaf = (0..p).find(|&y| degree[y] == 1).expect("a leaf exists");
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..p).filter(|&y| degree[y] == 1).collect();
    if rest.len() == 2 {
        edges.push((rest[0], rest[1]));
    }
    edges
}

/// All `p^(p-2)` Prüfer sequences of length `p-2`, in lexicographic order.
fn prufer_sequences(p: usize) -> Vec<Vec<usize>> {
    if p < 2 {
        return Vec::new();
    }
    if p == 2 {
        return vec![Vec::new()];
    }
    (0..p - 2).map(|_| 0..p).multi_cartesian_product().collect()
}

/// The positive discs built on one labelled tree: every circular θ order
/// of its edges (edge 0 pinned first, since θ rotation is a symmetry) and
/// every sign assignment. Vertex labels are axis ranks and each vertex's
/// rotation follows θ, which is the only rotation that can pass test (i).
fn discs_on_tree(edges: &[(usize, usize)], p: usize) -> Vec<Skeleton> {
    let s = edges.len();
    let mut out = Vec::new();
    for rest in (1..s).permutations(s - 1) {
        let order: Vec<usize> = std::iter::once(0).chain(rest).collect();
        for mask in 0..(1u32 << s) {
            let sings = order
                .iter()
                .enumerate()
                .map(|(k, &e)| {
                    let sign = if mask >> k & 1 == 1 {
                        Sign::Neg
                    } else {
                        Sign::Pos
                    };
                    SkSing::aa(sign, edges[e].0 as u8, edges[e].1 as u8)
                })
                .collect();
            out.push(Skeleton {
                vsign: vec![Sign::Pos; p],
                sings,
            });
        }
    }
    out
}

/// Every positive embeddable tiled disc on `p` vertices, one canonical
/// representative per isomorphism class, sorted by signature.
pub fn enumerate_positive_discs(p: usize) -> Vec<(DiscSignature, Skeleton)> {
    assert!(p >= 1, "a disc has at least one vertex");
    if p == 1 {
        let t = Skeleton::trivial();
        return vec![(canonical_signature(&t), t)];
    }
    let classes: HashMap<DiscSignature, Skeleton> = prufer_sequences(p)
        .into_par_iter()
        .fold(HashMap::new, |mut acc, seq| {
            for sk in discs_on_tree(&prufer_tree(&seq, p), p) {
                if !sk.is_embeddable() {
                    continue;
                }
                let sig = canonical_signature(&sk);
                acc.entry(sig).or_insert_with(|| canonical_form(&sk));
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                a.entry(k).or_insert(v);
            }
            a
        });
    let mut v: Vec<(DiscSignature, Skeleton)> = classes.into_iter().collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prufer_counts_and_trees() {
        for p in 2..=6 {
            let seqs = prufer_sequences(p);
            assert_eq!(seqs.len(), p.pow(p as u32 - 2));
            let mut trees: Vec<Vec<(usize, usize)>> = seqs
                .iter()
                .map(|s| {
                    let mut e = prufer_tree(s, p);
                    e.sort();
                    e
                })
                .collect();
            trees.sort();
            trees.dedup();
            assert_eq!(trees.len(), seqs.len(), "Prüfer decoding is a bijection");
        }
    }

    #[test]
    fn small_positive_counts() {
        assert_eq!(enumerate_positive_discs(1).len(), 1);
        let two = enumerate_positive_discs(2);
        assert_eq!(two.len(), 2);
    }
}

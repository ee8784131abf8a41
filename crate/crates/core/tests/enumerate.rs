mod common;

use std::collections::BTreeSet;

use common::*;
use rand::{rngs::SmallRng, seq::SliceRandom, SeedableRng};
use unknot_core::enumerate::{
    canonical_signature, enumerate_complexity, enumerate_discs, enumerate_positive_discs,
    insert_ab_tile, read_layer, write_layer, Complexity, EnumeratedDisc,
};
use unknot_core::foliation::{Skeleton, TiledSurface};

fn all_up_to(n: usize, v_max: usize) -> Vec<EnumeratedDisc> {
    enumerate_discs(n, v_max).collect()
}

#[test]
fn smallest_layers() {
    let one = all_up_to(1, 1);
    assert_eq!(one.len(), 1);
    assert!(one[0].word.is_empty() && one[0].word.strands() == 1);
    let two = all_up_to(2, 2);
    let words: BTreeSet<String> = two.iter().map(|d| d.word.to_string()).collect();
    assert_eq!(
        words,
        BTreeSet::from(["n=2; a(2,1)".to_string(), "n=2; a(2,1)^-1".to_string()])
    );
}

#[test]
fn positive_classes_match_brute_force() {
    for p in 1..=4 {
        let brute = classes(&brute_force_positive_discs(p));
        let listed = enumerate_positive_discs(p);
        assert_eq!(listed.len(), brute.len(), "P = {p}");
        assert_eq!(
            enumerate_complexity(Complexity::new(p, p).unwrap()).len(),
            brute.len()
        );
        // every brute-force class is hit, and signatures separate classes
        let sigs: BTreeSet<_> = listed.iter().map(|(s, _)| s.clone()).collect();
        for rep in &brute {
            assert!(sigs.contains(&canonical_signature(rep)), "P = {p}: {rep:?}");
        }
    }
    assert_eq!(classes(&brute_force_positive_discs(3)).len(), 4);
}

#[test]
fn signatures_are_complete_invariants_for_small_discs() {
    for p in 2..=4 {
        let discs = brute_force_positive_discs(p);
        for (i, a) in discs.iter().enumerate() {
            for b in &discs[i + 1..] {
                assert_eq!(
                    isomorphic(a, b),
                    canonical_signature(a) == canonical_signature(b),
                    "{a:?} {b:?}"
                );
            }
        }
    }
}

#[test]
fn enumerated_discs_satisfy_every_invariant() {
    for (n, v) in [(1, 3), (2, 4), (3, 5), (1, 5), (2, 6), (4, 6)] {
        let discs = enumerate_complexity(Complexity::new(n, v).unwrap());
        for d in &discs {
            let sk = &d.skeleton;
            assert_eq!((sk.v(), sk.braid_index()), (v, n as i64));
            let fs = TiledSurface::from_skeleton(sk).unwrap();
            assert!(fs.validate().is_valid());
            assert!(fs.is_disc());
            assert!(fs.embeddability_test().unwrap().is_embeddable());
            assert!(fs.embeddability_test_full().unwrap().is_embeddable());
            assert_eq!(fs.essentiality_test().unwrap(), None);
            let table = sk.fiber_table().unwrap();
            assert!(table
                .intervals
                .iter()
                .all(|iv| iv.barcs.len() == sk.n_neg()));
            let ex = sk.boundary_word().unwrap();
            assert_eq!(ex.word, d.word);
            assert_eq!(ex.word.components().len(), 1);
            assert_eq!(canonical_signature(sk), d.signature);
        }
        let sigs: BTreeSet<_> = discs.iter().map(|d| &d.signature).collect();
        assert_eq!(sigs.len(), discs.len());
    }
}

#[test]
fn insertion_round_trips_through_ab_stabilization() {
    let mut pool: Vec<Skeleton> = Vec::new();
    for (n, v) in [(2, 2), (3, 3), (4, 4), (2, 4), (3, 5), (1, 3)] {
        pool.extend(
            enumerate_complexity(Complexity::new(n, v).unwrap())
                .into_iter()
                .map(|d| d.skeleton),
        );
    }
    let mut rng = SmallRng::seed_from_u64(31);
    let mut checked = 0;
    while checked < 100 {
        let parent = pool.choose(&mut rng).unwrap();
        let children = insert_ab_tile(parent);
        let Some((ins, child)) = children.choose(&mut rng) else {
            continue;
        };
        let back = child.ab_stabilize(ins.theta).unwrap();
        assert_eq!(canonical_signature(&back), canonical_signature(parent));
        checked += 1;
    }
}

#[test]
fn positive_discs_prune_to_a_point() {
    for p in 1..=6 {
        for (_, sk) in enumerate_positive_discs(p) {
            let mut cur = sk;
            while cur.v() > 1 {
                let leaf = cur
                    .incidences()
                    .iter()
                    .position(|inc| inc.len() == 1)
                    .unwrap();
                cur = cur.aa_destabilize(leaf).unwrap();
            }
            assert_eq!(cur, Skeleton::trivial());
        }
    }
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let c = Complexity::new(2, 4).unwrap();
    let discs = enumerate_complexity(c);
    assert_eq!(read_layer(dir.path(), c).unwrap(), None);
    let layer_dir = write_layer(dir.path(), c, &discs).unwrap();
    assert!(layer_dir.ends_with("n2/v4"));
    assert_eq!(read_layer(dir.path(), c).unwrap(), Some(discs));
}

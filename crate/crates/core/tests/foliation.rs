use std::collections::BTreeSet;

use unknot_core::foliation::{
    fig6, parse_surface, positive_six_vertex_disc, write_surface, EmbedFailure, FiberTable,
    SingType, TiledSurface,
};
use unknot_core::garside::{conjugate_test, DEFAULT_SUMMIT_CAP};
use unknot_core::BraidWord;

fn w(s: &str) -> BraidWord {
    s.parse().unwrap()
}

/// One row per fiber interval, with arcs written by vertex name.
fn table_rows(fs: &TiledSurface, table: &FiberTable) -> Vec<BTreeSet<String>> {
    let name = |r: u8| fs.vertex_name(r as usize).to_string();
    table
        .intervals
        .iter()
        .map(|iv| {
            let mut row: BTreeSet<String> = iv
                .barcs
                .iter()
                .map(|&(p, n)| format!("b({},{})", name(p), name(n)))
                .collect();
            if let Some((x, y)) = iv.gb {
                let mut pair = [name(x), name(y)];
                pair.sort();
                row.insert(format!("gb({},{})", pair[0], pair[1]));
            }
            row
        })
        .collect()
}

fn row(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

#[test]
fn fig6_fiber_table_matches_reference_table() {
    let fs = fig6();
    let rows = table_rows(&fs, &fs.fiber_table().unwrap());
    let early = ["b(4,2.2)", "b(5,2.1)"];
    let mid = ["b(4,2.2)", "b(1,2.1)"];
    let late = ["b(6,2.2)", "b(1,2.1)"];
    let expected = vec![
        row(&[early[0], early[1], "gb(1,2)"]),
        row(&[early[0], early[1], "gb(1,2)"]),
        row(&[early[0], early[1], "gb(1,6)"]),
        row(&early),
        row(&mid),
        row(&[late[0], late[1], "gb(3,5)"]),
        row(&[late[0], late[1], "gb(3,5)"]),
        row(&[late[0], late[1], "gb(3,5)"]),
        row(&late),
        row(&mid),
        row(&[early[0], early[1], "gb(1,2)"]),
    ];
    assert_eq!(rows, expected);
}

#[test]
fn fig6_validates_and_has_expected_types() {
    let fs = fig6();
    let report = fs.validate();
    assert!(report.is_valid(), "{:?}", report.violations);
    // One boundary circle and Euler characteristic 8 - 11: genus two, not a disc.
    assert_eq!((fs.mu(), fs.euler_characteristic()), (1, -3));
    assert!(!fs.is_disc());
    assert_eq!((fs.p(), fs.n_neg(), fs.s()), (6, 2, 11));
    assert_eq!(fs.skeleton().unwrap().type_counts(), (7, 4, 0));
    assert_eq!(fs.singularity_type("e"), Some(SingType::AB));
    assert_eq!(fs.singularity_type("d"), Some(SingType::AA));
    assert_eq!(fs.braid_index().unwrap(), 4);
}

#[test]
fn fig6_extended_boundary_word_is_byte_exact() {
    let eb = fig6().extended_boundary_word().unwrap();
    assert_eq!(
        eb.letters_string(),
        "a(2,1)^3 a(6,1)^-1 a(5,1)^-1 a(6,4)^-1 a(5,3)^3 a(6,4) a(5,1)"
    );
    assert_eq!(eb.strands(), 6);
}

#[test]
fn fig6_boundary_word_deletes_negative_circles() {
    let fs = fig6();
    let eb = fs.extended_boundary_word().unwrap();
    let cycles = eb.permutation().cycles();
    assert_eq!(cycles.len(), 3);
    let fixed: BTreeSet<usize> = cycles
        .iter()
        .filter(|c| c.len() == 1)
        .map(|c| c[0])
        .collect();
    assert_eq!(fixed, BTreeSet::from([4, 5]));
    let ex = fs.boundary_word().unwrap();
    assert_eq!(ex.deleted, vec![4, 5]);
    assert_eq!(ex.word.strands(), 4);
    assert_eq!(ex.word.components().len(), 1);
}

#[test]
fn fig6_is_embeddable_and_essential() {
    let fs = fig6();
    assert!(fs.embeddability_test().unwrap().is_embeddable());
    assert!(fs.embeddability_test_full().unwrap().is_embeddable());
    assert_eq!(fs.essentiality_test().unwrap(), None);
}

/// FIG6 with the axis order changed to (1, 2, 4, 2.1, 2.2, 3, 5, 6).
pub fn mutated_fig6() -> TiledSurface {
    let mut fs = fig6();
    let order = ["1", "2", "4", "2.1", "2.2", "3", "5", "6"];
    for v in &mut fs.vertices {
        v.axis_rank = order.iter().position(|&n| n == v.name).unwrap();
    }
    fs
}

#[test]
fn mutated_axis_order_fails_separation_with_witness() {
    let fs = mutated_fig6();
    let report = fs.embeddability_test().unwrap();
    assert!(!report.is_embeddable());
    let name = |r: u8| fs.vertex_name(r as usize).to_string();
    let witnesses: Vec<(String, String)> = report
        .failures
        .iter()
        .filter_map(|f| match f {
            EmbedFailure::Separation { gb, b, .. } => Some((
                format!("{},{}", name(gb.0), name(gb.1)),
                format!("{},{}", name(b.0), name(b.1)),
            )),
            _ => None,
        })
        .collect();
    assert!(!witnesses.is_empty(), "{:?}", report.failures);
    // The b-arcs b(4,2.2) and b(5,2.1) interleave once 4 sits between 2 and 2.1.
    let pair = |a: &str, b: &str| {
        witnesses
            .iter()
            .any(|(g, x)| (g == a && x == b) || (g == b && x == a))
    };
    assert!(pair("4,2.2", "5,2.1"), "{witnesses:?}");
    assert!(!fs.embeddability_test_full().unwrap().is_embeddable());
}

#[test]
fn text_format_round_trips() {
    let fs = fig6();
    let text = write_surface(&fs);
    let back = parse_surface(&text).unwrap();
    assert_eq!(back, fs);
    assert_eq!(write_surface(&back), text);
    assert!(parse_surface("VERTICES\n1 + x\n").is_err());
    assert!(parse_surface("1 + 0\n").is_err());
}

#[test]
fn positive_six_vertex_disc_boundary() {
    let fs = positive_six_vertex_disc();
    assert!(fs.validate().is_valid());
    assert_eq!(fs.n_neg(), 0);
    assert_eq!(
        fs.extended_boundary_word().unwrap().letters_string(),
        "a(6,4) a(6,2) a(3,2) a(2,1) a(5,1)^-1"
    );
    let ex = fs.boundary_word().unwrap();
    assert!(ex.deleted.is_empty());
    assert_eq!(ex.word.components().len(), 1);
}

#[test]
fn ab_stabilization_of_fig6_lowers_complexity() {
    let fs = fig6();
    for s in ["e", "f", "j", "k"] {
        let g = fs.ab_stabilize(s).unwrap();
        assert_eq!((g.p(), g.n_neg(), g.s()), (6, 1, 10), "at {s}");
        assert!(g.validate().is_valid());
        let before = fs.boundary_word().unwrap().word;
        let after = g.boundary_word().unwrap().word;
        assert_eq!(after.strands(), 5);
        assert_eq!(
            (after.exponent_sum() - before.exponent_sum()).abs(),
            1,
            "at {s}"
        );
    }
    assert!(fs.ab_stabilize("a").is_err());
}

#[test]
fn aa_destabilization_prunes_positive_disc_to_a_point() {
    let mut fs = positive_six_vertex_disc();
    while fs.vertices.len() > 1 {
        let sk = fs.skeleton().unwrap();
        let leaf = sk
            .incidences()
            .iter()
            .position(|inc| inc.len() == 1)
            .expect("a tree has a leaf");
        let name = fs.vertex_name(leaf).to_string();
        let smaller = fs.aa_destabilize(&name).unwrap();
        assert_eq!(smaller.vertices.len() + 1, fs.vertices.len());
        let (a, b) = (
            fs.boundary_word().unwrap().word,
            smaller.boundary_word().unwrap().word,
        );
        assert_eq!(b.strands() + 1, a.strands());
        fs = smaller;
    }
    assert!(fs.sings.is_empty());
    assert!(fs.boundary_word().unwrap().word.is_empty());
}

#[test]
fn two_ab_tiles_on_positive_disc_reach_the_hard_unknot() {
    use unknot_core::enumerate::insert_ab_tile;
    let target = w(
        "n=4; a(4,2) a(3,2) a(2,1) a(4,3) a(3,2)^2 a(2,1) a(3,2)^-1 a(4,3)^-1 a(2,1)^-1 a(3,2)^-1",
    );
    let start = positive_six_vertex_disc().skeleton().unwrap();
    let found = insert_ab_tile(&start)
        .into_iter()
        .flat_map(|(_, one)| insert_ab_tile(&one))
        .any(|(_, two)| {
            let word = two.boundary_word().unwrap().word;
            word.exponent_sum() == target.exponent_sum()
                && conjugate_test(&word, &target, DEFAULT_SUMMIT_CAP).unwrap()
        });
    assert!(found);
}

#[test]
fn three_negative_bands_bound_the_negative_trefoil() {
    use unknot_core::foliation::{SkSing, Skeleton};
    use unknot_core::Sign;
    let sk = Skeleton {
        vsign: vec![Sign::Pos; 2],
        sings: vec![SkSing::aa(Sign::Neg, 0, 1); 3],
    };
    assert_eq!(sk.type_counts(), (3, 0, 0));
    assert_eq!(sk.extended_boundary_word().to_string(), "n=2; a(2,1)^-3");
    assert!(sk.is_embeddable());
}

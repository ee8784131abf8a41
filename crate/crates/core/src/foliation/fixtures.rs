//! Reference surfaces.

use crate::braid::Sign;

use super::format::parse_surface;
use super::skeleton::{SkSing, Skeleton};
use super::surface::TiledSurface;

/// A genus-two surface with one boundary component, six positive vertices
/// `1..6`, two negative vertices `2.1`, `2.2` and eleven singularities
/// `a..k`, whose boundary is a closed 4-braid.
pub const FIG6_TEXT: &str = include_str!("../../fixtures/fig6.surface");

pub fn fig6() -> TiledSurface {
    parse_surface(FIG6_TEXT).expect("bundled fixture parses")
}

/// The same surface, built from its rank-indexed data.
pub fn fig6_skeleton() -> Skeleton {
    use Sign::{Neg, Pos};
    // axis order 1, 2, 2.1, 2.2, 3, 4, 5, 6
    let vsign = vec![Pos, Pos, Neg, Neg, Pos, Pos, Pos, Pos];
    let (v1, v2, w1, w2, v3, v4, v5, v6) = (0, 1, 2, 3, 4, 5, 6, 7);
    let ab = |sign, x, w, y| SkSing {
        sign,
        slots: [Some(x), Some(w), Some(y), None],
    };
    let sings = vec![
        SkSing::aa(Pos, v2, v1),
        SkSing::aa(Pos, v2, v1),
        SkSing::aa(Pos, v2, v1),
        SkSing::aa(Neg, v6, v1),
        ab(Neg, v5, w1, v1),
        ab(Neg, v4, w2, v6),
        SkSing::aa(Pos, v5, v3),
        SkSing::aa(Pos, v5, v3),
        SkSing::aa(Pos, v5, v3),
        ab(Pos, v6, w2, v4),
        ab(Pos, v1, w1, v5),
    ];
    Skeleton { vsign, sings }
}

#[cfg(test)]
pub(crate) fn fig6_names() -> (Vec<String>, Vec<String>) {
    let v = ["1", "2", "2.1", "2.2", "3", "4", "5", "6"]
        .map(String::from)
        .to_vec();
    let s = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"]
        .map(String::from)
        .to_vec();
    (v, s)
}

/// A six-vertex positive disc with boundary
/// `a(6,4) a(6,2) a(3,2) a(2,1) a(5,1)^-1`.
pub fn positive_six_vertex_disc() -> TiledSurface {
    use Sign::{Neg, Pos};
    let sk = Skeleton {
        vsign: vec![Pos; 6],
        sings: vec![
            SkSing::aa(Pos, 5, 3),
            SkSing::aa(Pos, 5, 1),
            SkSing::aa(Pos, 2, 1),
            SkSing::aa(Pos, 1, 0),
            SkSing::aa(Neg, 4, 0),
        ],
    };
    let v: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
    let s = ["a", "c", "d", "e", "g"].map(String::from).to_vec();
    TiledSurface::from_skeleton_named(&sk, &v, &s).expect("tree disc builds")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_text_matches_rank_data() {
        let (v, s) = fig6_names();
        let built = TiledSurface::from_skeleton_named(&fig6_skeleton(), &v, &s).unwrap();
        assert_eq!(fig6(), built);
        assert_eq!(fig6().skeleton().unwrap(), fig6_skeleton());
    }
}

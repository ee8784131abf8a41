use crate::braid::Sign;
use crate::foliation::{SingType, SkSing, Skeleton};

/// Where a new ab-tile goes: the new negative vertex takes axis rank
/// `axis`, the new singularity takes θ rank `theta`, and just after it the
/// new vertex is joined by a b-arc to the positive vertex `after`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Insertion {
    pub axis: usize,
    pub theta: usize,
    pub after: usize,
}

/// Builds the candidate for one insertion choice, or `None` if the partner
/// of the new vertex cannot be followed consistently around the θ circle.
///
/// Once the b-arc leaving the new singularity is fixed, everything else is
/// forced: a vertex holding a b-arc has no a-arc, so every later
/// singularity at which the current partner is a free corner must gain the
/// new vertex on the adjacent branch (aa becomes ab, ab becomes bb), and
/// the partner moves to the opposite corner. The partner on returning to
/// the start is the other corner of the new singularity.
pub fn build_insertion(sk: &Skeleton, ins: Insertion) -> Option<Skeleton> {
    let v = sk.v();
    let shift = |r: u8| if (r as usize) < ins.axis { r } else { r + 1 };
    let mut vsign = sk.vsign.clone();
    vsign.insert(ins.axis, Sign::Neg);
    let w = ins.axis as u8;
    let z = shift(u8::try_from(ins.after).ok()?);
    if ins.after >= v || !sk.vsign[ins.after].is_pos() {
        return None;
    }
    let mut sings: Vec<SkSing> = sk
        .sings
        .iter()
        .map(|s| SkSing {
            sign: s.sign,
            slots: s.slots.map(|x| x.map(shift)),
        })
        .collect();
    // placeholder, filled in once the returning partner is known
    sings.insert(
        ins.theta,
        SkSing {
            sign: Sign::Pos,
            slots: [None; 4],
        },
    );
    let s = sings.len();
    let mut c = z;
    for step in 1..s {
        let t = &mut sings[(ins.theta + step) % s];
        let Some(cs) = t.slots.iter().position(|&x| x == Some(c)) else {
            continue;
        };
        match t.kind() {
            SingType::AA => {
                let ws = if cs == 0 { 1 } else { 3 };
                t.slots[ws] = Some(w);
                c = t.slots[(ws + 1) % 4].expect("corner");
            }
            SingType::AB => {
                let us = if t.slots[1].is_some() { 1 } else { 3 };
                let (_, u_after) = t.partners(us);
                if u_after != c {
                    return None;
                }
                let ws = (us + 2) % 4;
                t.slots[ws] = Some(w);
                c = t.slots[(ws + 1) % 4].expect("corner");
            }
            SingType::BB => return None,
        }
    }
    let y = c;
    if y == z {
        return None;
    }
    let ascending = (y < w && w < z) || (w < z && z < y) || (z < y && y < w);
    let sign = if ascending { Sign::Pos } else { Sign::Neg };
    sings[ins.theta] = SkSing {
        sign,
        slots: [Some(y), Some(w), Some(z), None],
    };
    Some(Skeleton { vsign, sings })
}

/// Every insertion choice for `sk`, up to the rotations that the
/// canonical signature quotients out.
pub fn insertion_choices(sk: &Skeleton) -> Vec<Insertion> {
    let (v, s) = (sk.v(), sk.s().max(1));
    let mut out = Vec::new();
    for axis in 0..v {
        for theta in 0..s {
            for after in (0..v).filter(|&x| sk.vsign[x].is_pos()) {
                out.push(Insertion { axis, theta, after });
            }
        }
    }
    out
}

/// Every disc obtained from `sk` by adding one ab-tile that is valid,
/// embeddable and essential. Candidates are not deduplicated.
pub fn insert_ab_tile(sk: &Skeleton) -> Vec<(Insertion, Skeleton)> {
    insertion_choices(sk)
        .into_iter()
        .filter_map(|ins| build_insertion(sk, ins).map(|d| (ins, d)))
        .filter(|(_, d)| d.is_connected() && d.is_embeddable() && d.is_essential())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_ab_stabilization() {
        let d = Skeleton {
            vsign: vec![Sign::Pos; 3],
            sings: vec![
                SkSing::aa(Sign::Pos, 0, 1),
                SkSing::aa(Sign::Neg, 1, 2),
                SkSing::aa(Sign::Pos, 0, 1),
            ],
        };
        let kids = insert_ab_tile(&d);
        for (ins, k) in &kids {
            assert_eq!(k.ab_stabilize(ins.theta).unwrap(), d);
            assert_eq!(k.braid_index(), 2);
        }
    }

    #[test]
    fn two_vertex_disc_gives_unknotted_one_braids() {
        for sign in [Sign::Pos, Sign::Neg] {
            let d = Skeleton {
                vsign: vec![Sign::Pos; 2],
                sings: vec![SkSing::aa(sign, 0, 1)],
            };
            for (_, k) in insert_ab_tile(&d) {
                let b = k.boundary_word().unwrap();
                assert_eq!(b.word.strands(), 1);
                assert!(b.word.is_empty());
            }
        }
    }
}

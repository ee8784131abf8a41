//! Reading a braid word off a diagram whose Seifert circles are pairwise
//! coherent.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::braid::{BandLetter, BraidWord};

use super::pd::KnotDiagram;
use super::seifert::{seifert_smooth, vogel_move, SeifertDiagram, VogelSite};
use super::VogelError;

/// Bookkeeping for one accepted move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRecord {
    pub site: VogelSite,
    pub circles: (usize, usize),
    pub incoherent: (usize, usize),
    pub writhe: (i64, i64),
    pub crossings: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VogelTrace {
    pub moves: Vec<MoveRecord>,
    pub initial_crossings: usize,
    pub final_diagram: KnotDiagram,
    pub word: BraidWord,
}

/// Applies Vogel moves until all circles are coherent. Among the sites of
/// the current diagram, the first (by face, then position) whose move
/// strictly reduces the number of incoherent pairs is used.
pub fn make_coherent(d: &KnotDiagram) -> Result<(SeifertDiagram, Vec<MoveRecord>), VogelError> {
    let mut sd = seifert_smooth(d)?;
    let mut moves = Vec::new();
    while sd.incoherent_pairs() > 0 {
        let mut next = None;
        for site in sd.vogel_sites() {
            let d2 = vogel_move(&sd, site)?;
            let sd2 = seifert_smooth(&d2)?;
            if sd2.n() == sd.n() && sd2.incoherent_pairs() < sd.incoherent_pairs() {
                next = Some((site, sd2));
                break;
            }
        }
        let (site, sd2) = next.ok_or(VogelError::Stuck)?;
        moves.push(MoveRecord {
            site,
            circles: (sd.n(), sd2.n()),
            incoherent: (sd.incoherent_pairs(), sd2.incoherent_pairs()),
            writhe: (sd.diagram.writhe(), sd2.diagram.writhe()),
            crossings: (sd.diagram.crossing_count(), sd2.diagram.crossing_count()),
        });
        sd = sd2;
    }
    Ok((sd, moves))
}

/// Braid word of a coherent Seifert diagram: circles are numbered from the
/// innermost, each circle is cut where a ray from the axis crosses it, and
/// the ties are read in an angular order compatible with every circle.
pub fn read_braid(sd: &SeifertDiagram) -> Result<BraidWord, VogelError> {
    let n = sd.n();
    let o = &sd.diagram;
    if o.crossing_count() == 0 {
        return Ok(BraidWord::empty(1));
    }
    // level of a circle = number of circles inside it
    let level: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| sd.left_of[i][j]).count())
        .collect();
    let mut by_level = vec![usize::MAX; n];
    for (i, &l) in level.iter().enumerate() {
        if by_level[l] != usize::MAX {
            return Err(VogelError::NoNesting);
        }
        by_level[l] = i;
    }
    // cut each circle along a ray from the innermost face outward
    let mut cuts = vec![0usize; n];
    let mut face = sd.left_face[sd.circles[by_level[0]][0]];
    for (l, &c) in by_level.iter().enumerate() {
        let cyc = &sd.circles[c];
        let idx = cyc
            .iter()
            .position(|&e| sd.left_face[e] == face)
            .ok_or(VogelError::NoNesting)?;
        cuts[l] = idx;
        face = sd.right_face[cyc[idx]];
    }
    let k = o.crossing_count();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut indeg = vec![0usize; k];
    for (l, &c) in by_level.iter().enumerate() {
        let cyc = &sd.circles[c];
        let seq: Vec<usize> = (0..cyc.len())
            .map(|t| o.head[cyc[(cuts[l] + t) % cyc.len()]].0)
            .collect();
        for w in seq.windows(2) {
            succ[w[0]].push(w[1]);
            indeg[w[1]] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..k).filter(|&x| indeg[x] == 0).map(Reverse).collect();
    let mut letters = Vec::with_capacity(k);
    while let Some(Reverse(x)) = heap.pop() {
        let t = sd.ties[x];
        let (la, lb) = (level[t.circles.0], level[t.circles.1]);
        if la.abs_diff(lb) != 1 {
            return Err(VogelError::NoNesting);
        }
        letters.push(BandLetter::sigma(la.min(lb) + 1, t.sign));
        for &y in &succ[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                heap.push(Reverse(y));
            }
        }
    }
    if letters.len() != k {
        return Err(VogelError::NoNesting);
    }
    Ok(BraidWord::new(n, letters).expect("levels fit"))
}

/// Full conversion with the per-move record.
pub fn vogel_trace(d: &KnotDiagram) -> Result<VogelTrace, VogelError> {
    let (sd, moves) = make_coherent(d)?;
    let word = read_braid(&sd)?;
    Ok(VogelTrace {
        moves,
        initial_crossings: d.len(),
        final_diagram: sd.diagram.to_diagram(),
        word,
    })
}

pub fn to_closed_braid(d: &KnotDiagram) -> Result<BraidWord, VogelError> {
    vogel_trace(d).map(|t| t.word)
}

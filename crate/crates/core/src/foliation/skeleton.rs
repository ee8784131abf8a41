//! Rank-indexed core of a tiled surface.
//!
//! Vertices are indexed by their position on the (circular) braid axis and
//! singularities by their position in the (circular) order of singular
//! fibers. Each singularity records which vertex ends each of its four
//! branches, in counterclockwise order viewed from the positive side; slots
//! 0 and 2 end at positive vertices, slots 1 and 3 at negative vertices or
//! at the boundary (`None`).
//!
//! Everything the embeddability, essentiality and boundary machinery needs
//! is a function of this data, so the enumerator works on it directly.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::braid::{BandLetter, BraidWord, Sign};

use super::FoliationError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SingType {
    AA,
    AB,
    BB,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkSing {
    pub sign: Sign,
    pub slots: [Option<u8>; 4],
}

impl SkSing {
    pub fn aa(sign: Sign, x: u8, y: u8) -> SkSing {
        SkSing {
            sign,
            slots: [Some(x), None, Some(y), None],
        }
    }

    pub fn kind(&self) -> SingType {
        match (self.slots[1].is_some(), self.slots[3].is_some()) {
            (false, false) => SingType::AA,
            (true, true) => SingType::BB,
            _ => SingType::AB,
        }
    }

    /// The two positive corner vertices (slots 0 and 2).
    pub fn corners(&self) -> (u8, u8) {
        (
            self.slots[0].expect("slot 0 is a vertex"),
            self.slots[2].expect("slot 2 is a vertex"),
        )
    }

    pub fn touches(&self, v: u8) -> bool {
        self.slots.contains(&Some(v))
    }

    /// Partner of a negative vertex on `slot` just before / just after this
    /// singularity.
    pub fn partners(&self, slot: usize) -> (u8, u8) {
        let before = self.slots[(slot + 3) % 4].expect("even slot");
        let after = self.slots[(slot + 1) % 4].expect("even slot");
        (before, after)
    }

    /// Representative of the slot labelling modulo rotation by two.
    pub fn canonical_slots(slots: [Option<u8>; 4]) -> [Option<u8>; 4] {
        let rot = [slots[2], slots[3], slots[0], slots[1]];
        let key = |s: &[Option<u8>; 4]| s.map(|x| x.map_or(0u16, |v| v as u16 + 1));
        if key(&rot) < key(&slots) {
            rot
        } else {
            slots
        }
    }
}

/// One fiber interval `(θ_{i-1}, θ_i)`, identified by the singularity `end`
/// that closes it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub end: usize,
    /// `(positive, negative)` vertex pairs, sorted by negative vertex.
    pub barcs: Vec<(u8, u8)>,
    /// The extra gb-arc of an aa singularity at `end`, smaller rank first.
    pub gb: Option<(u8, u8)>,
}

impl Interval {
    pub fn start(&self, s: usize) -> usize {
        (self.end + s - 1) % s
    }

    /// All gb-arcs: the b-arcs plus the aa arc, if any.
    pub fn gb_arcs(&self) -> Vec<(u8, u8)> {
        let mut v = self.barcs.clone();
        v.extend(self.gb);
        v
    }
}

/// The b-arcs and gb-arcs of every fiber interval, starting with
/// `(θ_1, θ_2)` and ending with `(θ_S, θ_1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberTable {
    pub intervals: Vec<Interval>,
}

impl FiberTable {
    /// The interval closed by the singularity at `end`.
    pub fn ending_at(&self, end: usize) -> &Interval {
        let s = self.intervals.len();
        &self.intervals[(end + s - 1) % s]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EmbedFailure {
    /// Singularities around a vertex are not in the required θ order.
    RotationOrder { vertex: usize },
    /// Vertices around a singularity are not in the required axis order.
    AxisOrder { sing: usize },
    /// In the interval closed by `end`, the gb-arc `gb` separates the
    /// endpoints of the b-arc `b`.
    Separation {
        end: usize,
        gb: (u8, u8),
        b: (u8, u8),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FullFailure {
    RotationOrder {
        vertex: usize,
    },
    AxisOrder {
        sing: usize,
    },
    BArcCrossing {
        end: usize,
        b1: (u8, u8),
        b2: (u8, u8),
    },
    AaSeparated {
        sing: usize,
        by: (u8, u8),
    },
    AbSeparated {
        sing: usize,
        by: (u8, u8),
    },
    BbSeparated {
        sing: usize,
        by: (u8, u8),
    },
}

/// Outcome of an embeddability test: every failing test with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EmbedReport<F> {
    pub failures: Vec<F>,
}

impl<F> EmbedReport<F> {
    pub fn is_embeddable(&self) -> bool {
        self.failures.is_empty()
    }
}

/// An inessential b-arc: the interval end and its `(positive, negative)` ranks.
pub type InessentialArc = (usize, (u8, u8));

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryExtraction {
    pub extended: BraidWord,
    /// Start positions of the deleted negative-vertex circles, ascending.
    pub deleted: Vec<usize>,
    pub word: BraidWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Skeleton {
    pub vsign: Vec<Sign>,
    pub sings: Vec<SkSing>,
}

fn cyclic_rotation_is_sorted(seq: &[usize], ascending: bool) -> bool {
    if seq.len() <= 2 {
        return true;
    }
    let (start, _) = seq
        .iter()
        .enumerate()
        .min_by_key(|(_, &r)| if ascending { r as i64 } else { -(r as i64) })
        .expect("non-empty");
    (1..seq.len()).all(|i| {
        let a = seq[(start + i - 1) % seq.len()];
        let b = seq[(start + i) % seq.len()];
        if ascending {
            a < b
        } else {
            a > b
        }
    })
}

/// `true` when exactly one of `c`, `d` lies strictly inside the circular arc
/// running from `a` to `b`; shared endpoints never separate.
fn separates(a: u8, b: u8, c: u8, d: u8) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let inside = |x: u8| lo < x && x < hi;
    inside(c) != inside(d)
}

impl Skeleton {
    /// The single-vertex disc.
    pub fn trivial() -> Skeleton {
        Skeleton {
            vsign: vec![Sign::Pos],
            sings: Vec::new(),
        }
    }

    pub fn v(&self) -> usize {
        self.vsign.len()
    }

    pub fn s(&self) -> usize {
        self.sings.len()
    }

    pub fn p(&self) -> usize {
        self.vsign.iter().filter(|s| s.is_pos()).count()
    }

    pub fn n_neg(&self) -> usize {
        self.v() - self.p()
    }

    pub fn braid_index(&self) -> i64 {
        self.p() as i64 - self.n_neg() as i64
    }

    /// 1-based rank of each positive vertex among positive vertices.
    pub fn positive_ranks(&self) -> Vec<Option<usize>> {
        let mut next = 0;
        self.vsign
            .iter()
            .map(|s| {
                s.is_pos().then(|| {
                    next += 1;
                    next
                })
            })
            .collect()
    }

    pub fn type_counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for s in &self.sings {
            match s.kind() {
                SingType::AA => c.0 += 1,
                SingType::AB => c.1 += 1,
                SingType::BB => c.2 += 1,
            }
        }
        c
    }

    /// Slot sign rules and distinctness of the vertices around each singularity.
    pub fn check_slots(&self) -> Result<(), FoliationError> {
        let v = self.v();
        for (i, s) in self.sings.iter().enumerate() {
            for (k, slot) in s.slots.iter().enumerate() {
                match slot {
                    Some(x) if *x as usize >= v => {
                        return Err(FoliationError::BadSlot {
                            sing: i,
                            slot: k,
                            reason: "vertex out of range",
                        })
                    }
                    Some(x) => {
                        let want = if k % 2 == 0 { Sign::Pos } else { Sign::Neg };
                        if self.vsign[*x as usize] != want {
                            return Err(FoliationError::BadSlot {
                                sing: i,
                                slot: k,
                                reason: "vertex of wrong sign",
                            });
                        }
                    }
                    None if k % 2 == 0 => {
                        return Err(FoliationError::BadSlot {
                            sing: i,
                            slot: k,
                            reason: "even slot must end at a vertex",
                        })
                    }
                    None => {}
                }
            }
            if s.slots[0] == s.slots[2] {
                return Err(FoliationError::BadSlot {
                    sing: i,
                    slot: 2,
                    reason: "repeats the slot-0 vertex",
                });
            }
            if s.slots[1].is_some() && s.slots[1] == s.slots[3] {
                return Err(FoliationError::BadSlot {
                    sing: i,
                    slot: 3,
                    reason: "repeats the slot-1 vertex",
                });
            }
        }
        Ok(())
    }

    /// Incidences `(sing, slot)` of each vertex, in increasing θ.
    pub fn incidences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.v()];
        for (i, s) in self.sings.iter().enumerate() {
            for (k, slot) in s.slots.iter().enumerate() {
                if let Some(x) = slot {
                    inc[*x as usize].push((i, k));
                }
            }
        }
        inc
    }

    /// Whether the graph of vertices and singularities is connected.
    pub fn is_connected(&self) -> bool {
        let v = self.v();
        if v == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..v).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nxt = p[y];
                p[y] = r;
                y = nxt;
            }
            r
        }
        for s in &self.sings {
            let vs: Vec<usize> = s.slots.iter().flatten().map(|&x| x as usize).collect();
            for w in vs.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        (1..v).all(|x| find(&mut parent, x) == root)
    }

    /// Partners of every negative vertex, propagated around the θ circle,
    /// with the consistency checks that make them a legal movie of arcs.
    pub fn fiber_table(&self) -> Result<FiberTable, FoliationError> {
        self.check_slots()?;
        let s_count = self.s();
        if s_count == 0 {
            if self.n_neg() > 0 {
                let w = self.vsign.iter().position(|s| !s.is_pos()).unwrap_or(0);
                return Err(FoliationError::IsolatedNegative { vertex: w });
            }
            return Ok(FiberTable {
                intervals: Vec::new(),
            });
        }
        let inc = self.incidences();
        // partner[w][i]: partner of w in the interval closed by singularity i
        let mut partner: Vec<(u8, Vec<u8>)> = Vec::new();
        for (w, sign) in self.vsign.iter().enumerate() {
            if sign.is_pos() {
                continue;
            }
            let list = &inc[w];
            if list.is_empty() {
                return Err(FoliationError::IsolatedNegative { vertex: w });
            }
            for j in 0..list.len() {
                let (si, sk) = list[j];
                let (ni, nk) = list[(j + 1) % list.len()];
                let after = self.sings[si].partners(sk).1;
                let before = self.sings[ni].partners(nk).0;
                if after != before {
                    return Err(FoliationError::NonPeriodic {
                        vertex: w,
                        sing: ni,
                    });
                }
            }
            let mut row = vec![0u8; s_count];
            let mut j = 0;
            for (i, slot) in row.iter_mut().enumerate() {
                while j < list.len() && list[j].0 < i {
                    j += 1;
                }
                let (ni, nk) = list[j % list.len()];
                *slot = self.sings[ni].partners(nk).0;
            }
            partner.push((w as u8, row));
        }
        let mut intervals = Vec::with_capacity(s_count);
        for step in 1..=s_count {
            let end = step % s_count;
            let mut barcs: Vec<(u8, u8)> = partner.iter().map(|(w, row)| (row[end], *w)).collect();
            barcs.sort_by_key(|&(_, w)| w);
            let mut busy = BTreeSet::new();
            for &(x, _) in &barcs {
                if !busy.insert(x) {
                    return Err(FoliationError::PartnerCollision {
                        end,
                        vertex: x as usize,
                    });
                }
            }
            let sing = &self.sings[end];
            let (c0, c2) = sing.corners();
            let gb = match sing.kind() {
                SingType::AA => {
                    for c in [c0, c2] {
                        if busy.contains(&c) {
                            return Err(FoliationError::BusyCorner {
                                sing: end,
                                vertex: c as usize,
                            });
                        }
                    }
                    Some((c0.min(c2), c0.max(c2)))
                }
                SingType::AB => {
                    let slot = if sing.slots[1].is_some() { 1 } else { 3 };
                    let (before, _) = sing.partners(slot);
                    let free = if before == c0 { c2 } else { c0 };
                    if busy.contains(&free) {
                        return Err(FoliationError::BusyCorner {
                            sing: end,
                            vertex: free as usize,
                        });
                    }
                    None
                }
                SingType::BB => None,
            };
            intervals.push(Interval { end, barcs, gb });
        }
        Ok(FiberTable { intervals })
    }

    /// Test (ii): vertices around a positive (negative) singularity are in
    /// increasing (decreasing) cyclic axis order.
    pub fn axis_order_failures(&self) -> Vec<usize> {
        self.sings
            .iter()
            .enumerate()
            .filter(|(_, s)| {
                let seq: Vec<usize> = s.slots.iter().flatten().map(|&x| x as usize).collect();
                !cyclic_rotation_is_sorted(&seq, s.sign.is_pos())
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Test (iii): no gb-arc separates the endpoints of a b-arc of the same
    /// interval.
    pub fn separation_failures(&self, table: &FiberTable) -> Vec<EmbedFailure> {
        let mut out = Vec::new();
        for iv in &table.intervals {
            for g in iv.gb_arcs() {
                for &b in &iv.barcs {
                    if g != b && separates(g.0, g.1, b.0, b.1) {
                        out.push(EmbedFailure::Separation {
                            end: iv.end,
                            gb: g,
                            b,
                        });
                    }
                }
            }
        }
        out
    }

    /// Tests (ii) and (iii); test (i) concerns the rotation system, which a
    /// skeleton takes from the θ order.
    pub fn embeddability(&self) -> Result<EmbedReport<EmbedFailure>, FoliationError> {
        let table = self.fiber_table()?;
        let mut failures: Vec<EmbedFailure> = self
            .axis_order_failures()
            .into_iter()
            .map(|sing| EmbedFailure::AxisOrder { sing })
            .collect();
        failures.extend(self.separation_failures(&table));
        Ok(EmbedReport { failures })
    }

    /// Quick yes/no form of [`Skeleton::embeddability`] that stops early.
    pub fn is_embeddable(&self) -> bool {
        let Ok(table) = self.fiber_table() else {
            return false;
        };
        if !self.axis_order_failures().is_empty() {
            return false;
        }
        table.intervals.iter().all(|iv| {
            iv.gb_arcs().iter().all(|&g| {
                iv.barcs
                    .iter()
                    .all(|&b| g == b || !separates(g.0, g.1, b.0, b.1))
            })
        })
    }

    /// Tests (2)–(6) of the long-form criterion, written independently of
    /// the short form: orientation by descent counting, separation by
    /// circular betweenness, and the singularity-local tests.
    pub fn full_failures(&self, table: &FiberTable) -> Vec<FullFailure> {
        let v = self.v();
        let mut out = Vec::new();
        // (2) a cyclic sequence is positively ordered iff it has exactly one
        // descent (for length >= 3)
        for (i, s) in self.sings.iter().enumerate() {
            let seq: Vec<u8> = s.slots.iter().flatten().copied().collect();
            if seq.len() < 3 {
                continue;
            }
            let descents = (0..seq.len())
                .filter(|&j| seq[j] > seq[(j + 1) % seq.len()])
                .count();
            let ascents = seq.len() - descents;
            let ok = if s.sign.is_pos() {
                descents == 1
            } else {
                ascents == 1
            };
            if !ok {
                out.push(FullFailure::AxisOrder { sing: i });
            }
        }
        let between = |a: u8, x: u8, b: u8| {
            // x strictly inside the arc travelling upward from a to b
            let d = |p: u8, q: u8| (q as usize + v - p as usize) % v;
            x != a && x != b && d(a, x) < d(a, b)
        };
        let side = |c: (u8, u8), p: u8| between(c.0, p, c.1);
        let splits = |c: (u8, u8), p: u8, q: u8| side(c, p) != side(c, q);
        let off = |c: (u8, u8), xs: &[u8]| xs.iter().all(|x| *x != c.0 && *x != c.1);
        for iv in &table.intervals {
            // (3)
            for (j, &b1) in iv.barcs.iter().enumerate() {
                for &b2 in &iv.barcs[j + 1..] {
                    if off(b1, &[b2.0, b2.1]) && splits(b1, b2.0, b2.1) {
                        out.push(FullFailure::BArcCrossing {
                            end: iv.end,
                            b1,
                            b2,
                        });
                    }
                }
            }
            let sing = &self.sings[iv.end];
            let (c0, c2) = sing.corners();
            match sing.kind() {
                // (4)
                SingType::AA => {
                    for &b in &iv.barcs {
                        if off(b, &[c0, c2]) && splits(b, c0, c2) {
                            out.push(FullFailure::AaSeparated {
                                sing: iv.end,
                                by: b,
                            });
                        }
                    }
                }
                // (5)
                SingType::AB => {
                    let slot = if sing.slots[1].is_some() { 1 } else { 3 };
                    let w = sing.slots[slot].expect("ab vertex");
                    let (u, _) = sing.partners(slot);
                    let x = if u == c0 { c2 } else { c0 };
                    for &b in &iv.barcs {
                        if b == (u, w) || !off(b, &[x, u, w]) {
                            continue;
                        }
                        // x on one side, the b-arc uw wholly on the other
                        if !splits(b, u, w) && splits(b, x, u) {
                            out.push(FullFailure::AbSeparated {
                                sing: iv.end,
                                by: b,
                            });
                        }
                    }
                }
                // (6) the tile's two b-arcs, in boundary order u v w x
                SingType::BB => {
                    let s = sing.slots.map(|x| x.expect("bb slots"));
                    for &b in &iv.barcs {
                        if b == (s[0], s[1]) || b == (s[2], s[3]) || !off(b, &s) {
                            continue;
                        }
                        if !splits(b, s[0], s[1]) && !splits(b, s[2], s[3]) && splits(b, s[0], s[2])
                        {
                            out.push(FullFailure::BbSeparated {
                                sing: iv.end,
                                by: b,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Every b-arc must join vertices that are not neighbours on the axis.
    pub fn essentiality_failure(&self, table: &FiberTable) -> Option<InessentialArc> {
        let v = self.v();
        for iv in &table.intervals {
            for &(x, w) in &iv.barcs {
                let d = (x as usize + v - w as usize) % v;
                if d == 1 || d == v - 1 {
                    return Some((iv.end, (x, w)));
                }
            }
        }
        None
    }

    pub fn is_essential(&self) -> bool {
        self.fiber_table()
            .map(|t| self.essentiality_failure(&t).is_none())
            .unwrap_or(false)
    }

    /// One band letter per singularity, in θ order, on the positive vertices.
    pub fn extended_boundary_word(&self) -> BraidWord {
        let ranks = self.positive_ranks();
        let letters = self
            .sings
            .iter()
            .map(|s| {
                let (a, b) = s.corners();
                let (ra, rb) = (
                    ranks[a as usize].expect("positive"),
                    ranks[b as usize].expect("positive"),
                );
                BandLetter::new(ra.max(rb), ra.min(rb), s.sign)
            })
            .collect();
        BraidWord::new(self.p(), letters).expect("ranks fit")
    }

    /// The boundary braid: the extended word with the trivial circles of the
    /// negative vertices deleted.
    pub fn boundary_word(&self) -> Result<BoundaryExtraction, FoliationError> {
        let table = self.fiber_table()?;
        let extended = self.extended_boundary_word();
        let ranks = self.positive_ranks();
        let perm = extended.permutation();
        let mut deleted = BTreeSet::new();
        if let Some(base) = table.intervals.last() {
            for &(x, w) in &base.barcs {
                let pos = ranks[x as usize].expect("positive partner");
                if perm.image(pos) != pos {
                    return Err(FoliationError::NotFixedPoint {
                        vertex: w as usize,
                        position: pos,
                    });
                }
                deleted.insert(pos);
            }
        }
        let word = extended.delete_strands(&deleted)?;
        let comps = word.components().len();
        if comps != 1 {
            return Err(FoliationError::Disconnected { components: comps });
        }
        Ok(BoundaryExtraction {
            extended,
            deleted: deleted.into_iter().collect(),
            word,
        })
    }

    fn remove_vertex(&mut self, q: usize) {
        self.vsign.remove(q);
        for s in &mut self.sings {
            for x in s.slots.iter_mut().flatten() {
                debug_assert_ne!(*x as usize, q);
                if *x as usize > q {
                    *x -= 1;
                }
            }
        }
    }

    /// Pushes the boundary across the ab singularity `sing`, removing it and
    /// its negative vertex; every other branch to that vertex is re-aimed at
    /// the boundary.
    pub fn ab_stabilize(&self, sing: usize) -> Result<Skeleton, FoliationError> {
        let s = self
            .sings
            .get(sing)
            .ok_or(FoliationError::NoSuchSingularity { sing })?;
        if s.kind() != SingType::AB {
            return Err(FoliationError::WrongType {
                sing,
                expected: SingType::AB,
            });
        }
        let w = s.slots[1].or(s.slots[3]).expect("ab vertex");
        let mut out = self.clone();
        out.sings.remove(sing);
        for t in &mut out.sings {
            for k in [1, 3] {
                if t.slots[k] == Some(w) {
                    t.slots[k] = None;
                }
            }
        }
        out.remove_vertex(w as usize);
        Ok(out)
    }

    /// Removes a positive valence-1 vertex together with its aa singularity.
    pub fn aa_destabilize(&self, vertex: usize) -> Result<Skeleton, FoliationError> {
        if vertex >= self.v() || !self.vsign[vertex].is_pos() {
            return Err(FoliationError::Precondition(
                "vertex must be positive".into(),
            ));
        }
        let inc = self.incidences();
        if inc[vertex].len() != 1 {
            return Err(FoliationError::Precondition(format!(
                "vertex has valence {}, not 1",
                inc[vertex].len()
            )));
        }
        let (sing, _) = inc[vertex][0];
        if self.sings[sing].kind() != SingType::AA {
            return Err(FoliationError::WrongType {
                sing,
                expected: SingType::AA,
            });
        }
        let mut out = self.clone();
        out.sings.remove(sing);
        out.remove_vertex(vertex);
        Ok(out)
    }

    /// Rotates the θ circle by `dt` and the axis circle by `da`.
    pub fn rotated(&self, dt: usize, da: usize) -> Skeleton {
        let (v, s) = (self.v(), self.s());
        let mut vsign = vec![Sign::Pos; v];
        for (i, &sg) in self.vsign.iter().enumerate() {
            vsign[(i + da) % v] = sg;
        }
        let mut sings = self.sings.clone();
        for (i, sg) in self.sings.iter().enumerate() {
            let slots = sg.slots.map(|x| x.map(|r| ((r as usize + da) % v) as u8));
            sings[(i + dt) % s.max(1)] = SkSing {
                sign: sg.sign,
                slots,
            };
        }
        Skeleton { vsign, sings }
    }
}

//! Independent oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use rand::{rngs::SmallRng, Rng};
use unknot_core::foliation::{fig6, SkSing, Skeleton, TiledSurface};
use unknot_core::vogel::KnotDiagram;
use unknot_core::{BandLetter, BraidWord, Sign};

// ---------------------------------------------------------------------------
// Exact unreduced Burau representation over Z[t, 1/t].

/// Laurent polynomial: exponent -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent(BTreeMap<i32, i128>);

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn monomial(c: i128, e: i32) -> Laurent {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, c);
        }
        Laurent(m)
    }

    fn add_term(&mut self, e: i32, c: i128) {
        let x = self.0.entry(e).or_insert(0);
        *x += c;
        if *x == 0 {
            self.0.remove(&e);
        }
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (&e, &c) in &o.0 {
            r.add_term(e, c);
        }
        r
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut r = Laurent::zero();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &o.0 {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

pub type LMatrix = Vec<Vec<Laurent>>;

fn lidentity(n: usize) -> LMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Laurent::monomial((i == j) as i128, 0))
                .collect()
        })
        .collect()
}

fn lmul(a: &LMatrix, b: &LMatrix) -> LMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n).fold(vec![Laurent::zero(); n], |mut row, k| {
                if !a[i][k].0.is_empty() {
                    for j in 0..n {
                        row[j] = row[j].add(&a[i][k].mul(&b[k][j]));
                    }
                }
                row
            })
        })
        .collect()
}

/// Artin letters `(i, ±1)` of a band word, expanding
/// `a(t,s) = (s_{t-1} ... s_{s+1}) s_s^{±1} (s_{t-1} ... s_{s+1})^{-1}`.
pub fn artin_letters(w: &BraidWord) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    for l in w.letters() {
        for i in (l.s + 1..l.t).rev() {
            out.push((i, 1));
        }
        out.push((l.s, l.sign.to_i64()));
        for i in l.s + 1..l.t {
            out.push((i, -1));
        }
    }
    out
}

/// Unreduced Burau matrix of `s_i^{e}`: the block at rows/columns `i-1, i`
/// (0-based) is `[[1-t, t], [1, 0]]`, or its inverse `[[0, 1], [1/t, 1-1/t]]`.
fn burau_generator(n: usize, i: usize, e: i64) -> LMatrix {
    let mut m = lidentity(n);
    let (a, b) = (i - 1, i);
    let one = Laurent::monomial(1, 0);
    if e > 0 {
        m[a][a] = one.add(&Laurent::monomial(-1, 1));
        m[a][b] = Laurent::monomial(1, 1);
        m[b][a] = one;
        m[b][b] = Laurent::zero();
    } else {
        m[a][a] = Laurent::zero();
        m[a][b] = one.clone();
        m[b][a] = Laurent::monomial(1, -1);
        m[b][b] = one.add(&Laurent::monomial(-1, -1));
    }
    m
}

pub fn burau_exact(w: &BraidWord) -> LMatrix {
    artin_letters(w)
        .into_iter()
        .fold(lidentity(w.strands()), |acc, (i, e)| {
            lmul(&acc, &burau_generator(w.strands(), i, e))
        })
}

/// Equality in the braid group for at most three strands, where the Burau
/// representation is faithful.
pub fn burau_equal(a: &BraidWord, b: &BraidWord) -> bool {
    assert!(
        a.strands() <= 3,
        "Burau is faithful only up to three strands"
    );
    burau_exact(a) == burau_exact(b)
}

// ---------------------------------------------------------------------------
// Random words.

pub fn random_letter(rng: &mut SmallRng, n: usize) -> BandLetter {
    let t = rng.gen_range(2..=n);
    let s = rng.gen_range(1..t);
    BandLetter::new(t, s, if rng.gen() { Sign::Pos } else { Sign::Neg })
}

pub fn random_word(rng: &mut SmallRng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    BraidWord::new(n, (0..len).map(|_| random_letter(rng, n)).collect()).unwrap()
}

/// One random rewrite by a defining relation: a free insertion `x x^-1`, or
/// one of `a(3,2) a(2,1) = a(2,1) a(3,1) = a(3,1) a(3,2)` (or its inverse)
/// applied to any matching window, shifted to any triple of strands.
pub fn random_rewrite(rng: &mut SmallRng, w: &BraidWord) -> BraidWord {
    let n = w.strands();
    let mut letters = w.letters().to_vec();
    let windows: Vec<(usize, usize)> = (0..letters.len().saturating_sub(1))
        .filter_map(|i| band_relation_partner(letters[i], letters[i + 1]).map(|_| (i, 0)))
        .collect();
    if windows.is_empty() || rng.gen_bool(0.3) {
        let x = random_letter(rng, n.max(2));
        let at = rng.gen_range(0..=letters.len());
        letters.splice(at..at, [x, x.inverse()]);
    } else {
        let (i, _) = windows[rng.gen_range(0..windows.len())];
        let options = band_relation_partner(letters[i], letters[i + 1]).unwrap();
        let (x, y) = options[rng.gen_range(0..options.len())];
        letters[i] = x;
        letters[i + 1] = y;
    }
    BraidWord::new(n, letters).unwrap()
}

/// For `r > q > p`, the equal products `a(r,q) a(q,p) = a(q,p) a(r,p) =
/// a(r,p) a(r,q)`; returns the other two spellings of a matching pair.
fn band_relation_partner(x: BandLetter, y: BandLetter) -> Option<Vec<(BandLetter, BandLetter)>> {
    if x.sign != y.sign {
        return None;
    }
    let sign = x.sign;
    let (x, y) = if sign == Sign::Pos { (x, y) } else { (y, x) };
    let mut pts = vec![x.s, x.t, y.s, y.t];
    pts.sort_unstable();
    pts.dedup();
    if pts.len() != 3 {
        return None;
    }
    let (p, q, r) = (pts[0], pts[1], pts[2]);
    let mk = |t, s| BandLetter::pos(t, s);
    let forms = [
        (mk(r, q), mk(q, p)),
        (mk(q, p), mk(r, p)),
        (mk(r, p), mk(r, q)),
    ];
    let xy = (BandLetter::pos(x.t, x.s), BandLetter::pos(y.t, y.s));
    if !forms.contains(&xy) {
        return None;
    }
    let others = forms.into_iter().filter(|f| *f != xy);
    Some(if sign == Sign::Pos {
        others.collect()
    } else {
        others.map(|(a, b)| (b.inverse(), a.inverse())).collect()
    })
}

// ---------------------------------------------------------------------------
// Alexander polynomial modulo a prime, normalized up to units ±c·t^k.

pub const P: u64 = 1_000_000_007;

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powm(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a);
        }
        a = mulm(a, a);
        e >>= 1;
    }
    r
}

fn invm(a: u64) -> u64 {
    powm(a, P - 2)
}

fn subm(a: u64, b: u64) -> u64 {
    (a + P - b) % P
}

fn detm(mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let mut det = 1;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            m.swap(piv, c);
            det = subm(0, det);
        }
        det = mulm(det, m[c][c]);
        let inv = invm(m[c][c]);
        for r in c + 1..n {
            let f = mulm(m[r][c], inv);
            if f != 0 {
                for k in c..n {
                    m[r][k] = subm(m[r][k], mulm(f, m[c][k]));
                }
            }
        }
    }
    det
}

/// Coefficients (low degree first) of the polynomial of degree `< pts`
/// through the values of `f` at `1, 2, ..., pts`.
fn interpolate(pts: usize, f: impl Fn(u64) -> u64) -> Vec<u64> {
    let xs: Vec<u64> = (1..=pts as u64).collect();
    let ys: Vec<u64> = xs.iter().map(|&x| f(x)).collect();
    let mut coef = vec![0u64; pts];
    for i in 0..pts {
        // Lagrange basis polynomial for node i.
        let mut basis = vec![1u64];
        let mut denom = 1u64;
        for j in 0..pts {
            if i != j {
                let mut next = vec![0u64; basis.len() + 1];
                for (k, &b) in basis.iter().enumerate() {
                    next[k + 1] = (next[k + 1] + b) % P;
                    next[k] = subm(next[k], mulm(b, xs[j]));
                }
                basis = next;
                denom = mulm(denom, subm(xs[i], xs[j]));
            }
        }
        let scale = mulm(ys[i], invm(denom));
        for k in 0..pts {
            coef[k] = (coef[k] + mulm(basis[k], scale)) % P;
        }
    }
    coef
}

/// Strips zero coefficients at both ends and makes the result monic.
fn normalize(mut c: Vec<u64>) -> Vec<u64> {
    while c.last() == Some(&0) {
        c.pop();
    }
    let lead = c.iter().position(|&x| x != 0).unwrap_or(c.len());
    c.drain(..lead);
    if let Some(&top) = c.last() {
        let inv = invm(top);
        c.iter_mut().for_each(|x| *x = mulm(*x, inv));
    }
    c
}

fn polymul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + mulm(x, y)) % P;
        }
    }
    r
}

/// Alexander polynomial of a knot diagram from the Wirtinger presentation:
/// arcs are unions of over-strand edges, and each crossing contributes a
/// Fox-calculus row. Returned as `Δ(t)·(1 + t + ... + t^{n-1})`, normalized,
/// for comparison with [`braid_alexander_times`].
pub fn pd_alexander_times(d: &KnotDiagram, n: usize) -> Vec<u64> {
    let k = d.crossings.len();
    let base: Vec<u64> = if k == 0 {
        vec![1]
    } else {
        let edges: Vec<usize> = {
            let mut e: Vec<usize> = d.crossings.iter().flatten().copied().collect();
            e.sort_unstable();
            e.dedup();
            e
        };
        let idx = |e: usize| edges.binary_search(&e).unwrap();
        // Orient edges: head[e] = true once e is known to enter its crossing
        // at the slot we store.
        let mut parent: Vec<usize> = (0..edges.len()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for c in &d.crossings {
            let (a, b) = (find(&mut parent, idx(c[1])), find(&mut parent, idx(c[3])));
            parent[a] = b;
        }
        let mut arc_of = vec![usize::MAX; edges.len()];
        let mut arcs = 0;
        for e in 0..edges.len() {
            let r = find(&mut parent, e);
            if arc_of[r] == usize::MAX {
                arc_of[r] = arcs;
                arcs += 1;
            }
            arc_of[e] = arc_of[r];
        }
        assert_eq!(
            arcs, k,
            "every arc of a reduced knot diagram ends at an undercrossing"
        );
        let signs = crossing_signs(d);
        interpolate(k, |t| {
            let mut m = vec![vec![0u64; k]; k];
            for (r, c) in d.crossings.iter().enumerate() {
                let o = arc_of[idx(c[1])];
                let (i, j) = (arc_of[idx(c[0])], arc_of[idx(c[2])]);
                let (ti, tj) = if signs[r] {
                    (t, subm(0, 1))
                } else {
                    (subm(0, 1), t)
                };
                m[r][o] = (m[r][o] + subm(1, t)) % P;
                m[r][i] = (m[r][i] + ti) % P;
                m[r][j] = (m[r][j] + tj) % P;
            }
            let minor: Vec<Vec<u64>> = m[..k - 1].iter().map(|row| row[..k - 1].to_vec()).collect();
            detm(minor)
        })
    };
    normalize(polymul(&base, &vec![1u64; n.max(1)]))
}

/// Crossing signs from a PD code whose under-strand runs from slot 0 to
/// slot 2: positive iff the over-strand enters at slot 3. Edge directions
/// are propagated from the under-strands through the over-strands.
pub fn crossing_signs(d: &KnotDiagram) -> Vec<bool> {
    use std::collections::HashMap;
    // incoming[(crossing, slot)] for over slots; an edge entering at an
    // under slot 0 leaves its other end, and so on.
    let mut ends: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (c, x) in d.crossings.iter().enumerate() {
        for (s, &e) in x.iter().enumerate() {
            ends.entry(e).or_default().push((c, s));
        }
    }
    let other = |e: usize, at: (usize, usize)| -> (usize, usize) {
        let v = &ends[&e];
        if v[0] == at && v.len() > 1 {
            v[1]
        } else if v.len() > 1 {
            v[0]
        } else {
            at
        }
    };
    // enters[(c, s)] = Some(true) if the edge at that slot enters c there.
    let mut enters: HashMap<(usize, usize), bool> = HashMap::new();
    for c in 0..d.crossings.len() {
        enters.insert((c, 0), true);
        enters.insert((c, 2), false);
    }
    loop {
        let mut changed = false;
        for (c, x) in d.crossings.iter().enumerate() {
            for s in 0..4 {
                if let Some(&v) = enters.get(&(c, s)) {
                    let o = other(x[s], (c, s));
                    if o != (c, s) && !enters.contains_key(&o) {
                        enters.insert(o, !v);
                        changed = true;
                    }
                    if s % 2 == 1 && !enters.contains_key(&(c, 4 - s)) {
                        enters.insert((c, 4 - s), !v);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..d.crossings.len()).map(|c| enters[&(c, 3)]).collect()
}

/// Reduced Burau matrix of `s_i^{±1}` at `t`, scaled by `t` for inverses so
/// that every entry is a polynomial of degree at most one.
fn reduced_burau_at(n: usize, i: usize, e: i64, t: u64) -> Vec<Vec<u64>> {
    let m = n - 1;
    let mut a: Vec<Vec<u64>> = (0..m)
        .map(|r| (0..m).map(|c| (r == c) as u64).collect())
        .collect();
    let k = i - 1;
    a[k][k] = subm(0, t);
    if k > 0 {
        a[k - 1][k] = t;
    }
    if k + 1 < m {
        a[k + 1][k] = 1;
    }
    if e > 0 {
        return a;
    }
    // t · A^{-1}: A^{-1} has -1/t on the diagonal entry and ±1/t, 1 beside it.
    let mut inv: Vec<Vec<u64>> = (0..m)
        .map(|r| (0..m).map(|c| if r == c { t } else { 0 }).collect())
        .collect();
    inv[k][k] = subm(0, 1);
    if k > 0 {
        inv[k - 1][k] = t;
    }
    if k + 1 < m {
        inv[k + 1][k] = 1;
    }
    inv
}

/// `det(I - B(β))` up to units, where `B` is the reduced Burau
/// representation; equals `Δ(t)·(1 + t + ... + t^{n-1})` up to units.
pub fn braid_alexander_times(w: &BraidWord) -> Vec<u64> {
    let n = w.strands();
    if n == 1 {
        return vec![1];
    }
    let letters = artin_letters(w);
    let negs = letters.iter().filter(|l| l.1 < 0).count() as u64;
    let pts = (n - 1) * letters.len().max(1) + 1;
    normalize(interpolate(pts, |t| {
        let m = n - 1;
        let mut b: Vec<Vec<u64>> = (0..m)
            .map(|r| (0..m).map(|c| (r == c) as u64).collect())
            .collect();
        for &(i, e) in &letters {
            let g = reduced_burau_at(n, i, e, t);
            b = (0..m)
                .map(|r| {
                    (0..m)
                        .map(|c| (0..m).fold(0, |acc, k| (acc + mulm(b[r][k], g[k][c])) % P))
                        .collect()
                })
                .collect();
        }
        // b = t^negs · B(β), so t^negs·I - b = t^negs (I - B(β)).
        let tn = powm(t, negs);
        let mat: Vec<Vec<u64>> = (0..m)
            .map(|r| {
                (0..m)
                    .map(|c| subm(if r == c { tn } else { 0 }, b[r][c]))
                    .collect()
            })
            .collect();
        detm(mat)
    }))
}

/// Knot type agreement as far as the Alexander polynomial sees.
pub fn same_alexander(d: &KnotDiagram, w: &BraidWord) -> bool {
    pd_alexander_times(d, w.strands()) == braid_alexander_times(w)
}

// ---------------------------------------------------------------------------
// Brute-force positive discs and isomorphism classes.

/// Every decoration of `p` positive vertices by `p - 1` aa singularities
/// (ordered corner pairs and signs, in every fiber order) that forms a tree,
/// realizes a tiled surface, and passes both embeddability tests.
pub fn brute_force_positive_discs(p: usize) -> Vec<Skeleton> {
    let s = p - 1;
    let choices: Vec<SkSing> = (0..p as u8)
        .flat_map(|x| (0..p as u8).filter(move |&y| y != x).map(move |y| (x, y)))
        .flat_map(|(x, y)| [Sign::Pos, Sign::Neg].map(|sg| SkSing::aa(sg, x, y)))
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; s];
    loop {
        let sk = Skeleton {
            vsign: vec![Sign::Pos; p],
            sings: idx.iter().map(|&i| choices[i].clone()).collect(),
        };
        if is_tree(&sk) && passes_all_tests(&sk) {
            out.push(sk);
        }
        // odometer
        let mut k = 0;
        while k < s {
            idx[k] += 1;
            if idx[k] < choices.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == s {
            return out;
        }
    }
}

fn is_tree(sk: &Skeleton) -> bool {
    let v = sk.vsign.len();
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for s in &sk.sings {
        let (x, y) = s.corners();
        let (a, b) = (find(&mut parent, x as usize), find(&mut parent, y as usize));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    sk.sings.len() + 1 == v
}

fn passes_all_tests(sk: &Skeleton) -> bool {
    let Ok(fs) = TiledSurface::from_skeleton(sk) else {
        return false;
    };
    fs.validate().is_valid()
        && fs.embeddability_test().is_ok_and(|r| r.is_embeddable())
        && fs
            .embeddability_test_full()
            .is_ok_and(|r| r.is_embeddable())
        && fs
            .boundary_word()
            .is_ok_and(|b| b.word.components().len() == 1)
}

/// The skeleton with vertex ranks shifted by `da` and fiber order by `dt`,
/// each singularity written with its smaller corner labelling first.
fn shifted(sk: &Skeleton, dt: usize, da: usize) -> Skeleton {
    let v = sk.vsign.len();
    let s = sk.sings.len();
    let vsign = (0..v).map(|r| sk.vsign[(r + v - da) % v]).collect();
    let sings = (0..s)
        .map(|i| {
            let old = &sk.sings[(i + dt) % s];
            let slots = old.slots.map(|x| x.map(|r| ((r as usize + da) % v) as u8));
            let rot = [slots[2], slots[3], slots[0], slots[1]];
            let key = |z: &[Option<u8>; 4]| z.map(|x| x.map_or(-1i32, |r| r as i32));
            SkSing {
                sign: old.sign,
                slots: if key(&rot) < key(&slots) { rot } else { slots },
            }
        })
        .collect();
    Skeleton { vsign, sings }
}

pub fn isomorphic(a: &Skeleton, b: &Skeleton) -> bool {
    let (v, s) = (a.vsign.len(), a.sings.len());
    if v != b.vsign.len() || s != b.sings.len() {
        return false;
    }
    let target = shifted(b, 0, 0);
    (0..s.max(1)).any(|dt| (0..v).any(|da| shifted(a, dt, da) == target))
}

/// Representatives of the isomorphism classes, by pairwise comparison.
pub fn classes(discs: &[Skeleton]) -> Vec<Skeleton> {
    let mut reps: Vec<Skeleton> = Vec::new();
    for d in discs {
        if !reps.iter().any(|r| isomorphic(r, d)) {
            reps.push(d.clone());
        }
    }
    reps
}

// ---------------------------------------------------------------------------
// Surfaces.

/// FIG6 with the axis order changed to (1, 2, 4, 2.1, 2.2, 3, 5, 6).
pub fn mutated_fig6() -> TiledSurface {
    let mut fs = fig6();
    let order = ["1", "2", "4", "2.1", "2.2", "3", "5", "6"];
    for v in &mut fs.vertices {
        v.axis_rank = order.iter().position(|&n| n == v.name).unwrap();
    }
    fs
}

/// A random redecoration of `fs`: shuffled axis order, fiber order,
/// rotation at one vertex, or singularity signs.
pub fn mutate(rng: &mut SmallRng, fs: &TiledSurface) -> TiledSurface {
    use rand::seq::SliceRandom;
    use unknot_core::foliation::Endpoint;
    let mut g = fs.clone();
    let rounds = rng.gen_range(1..=2);
    for _ in 0..rounds {
        match rng.gen_range(0..4) {
            0 => {
                let mut ranks: Vec<usize> = (0..g.vertices.len()).collect();
                ranks.shuffle(rng);
                g.vertices
                    .iter_mut()
                    .zip(ranks)
                    .for_each(|(v, r)| v.axis_rank = r);
            }
            1 => {
                let mut ranks: Vec<usize> = (0..g.sings.len()).collect();
                ranks.shuffle(rng);
                g.sings
                    .iter_mut()
                    .zip(ranks)
                    .for_each(|(s, r)| s.theta_rank = r);
            }
            2 if !g.vertices.is_empty() => {
                let v = rng.gen_range(0..g.vertices.len());
                let mut slots: Vec<usize> = g
                    .sings
                    .iter()
                    .flat_map(|s| s.branches.iter())
                    .filter_map(|b| match b {
                        Endpoint::Vertex { vertex, vslot } if *vertex == v => Some(*vslot),
                        _ => None,
                    })
                    .collect();
                let original = slots.clone();
                slots.shuffle(rng);
                for s in &mut g.sings {
                    for b in &mut s.branches {
                        if let Endpoint::Vertex { vertex, vslot } = b {
                            if *vertex == v {
                                let i = original.iter().position(|x| x == vslot).unwrap();
                                *vslot = slots[i];
                            }
                        }
                    }
                }
            }
            _ if !g.sings.is_empty() => {
                let i = rng.gen_range(0..g.sings.len());
                g.sings[i].sign = -g.sings[i].sign;
            }
            _ => {}
        }
    }
    g
}

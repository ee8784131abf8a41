//! Simple elements of the band-generator monoid.
//!
//! Every simple element (positive divisor of `δ`) is a product over the
//! blocks of a non-crossing partition of `{1..n}`; a block
//! `t_1 < t_2 < ... < t_k` contributes `a(t_k,t_{k-1}) ... a(t_2,t_1)`, which
//! cyclically shifts the positions `t_1 -> t_2 -> ... -> t_k -> t_1`. The
//! element is therefore determined by its permutation, which is what we
//! store.

use std::fmt;

use crate::braid::{BandLetter, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    perm: Vec<u8>,
}

impl Factor {
    pub fn identity(n: usize) -> Factor {
        Factor {
            perm: (0..n as u8).collect(),
        }
    }

    pub fn delta(n: usize) -> Factor {
        Factor {
            perm: (0..n).map(|i| ((i + 1) % n) as u8).collect(),
        }
    }

    pub fn letter(n: usize, t: usize, s: usize) -> Factor {
        let mut f = Factor::identity(n);
        f.perm.swap(t - 1, s - 1);
        f
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.n();
        n > 0
            && self
                .perm
                .iter()
                .enumerate()
                .all(|(i, &x)| (i + 1) % n == x as usize)
    }

    pub(crate) fn from_perm_unchecked(perm: Vec<u8>) -> Factor {
        let f = Factor { perm };
        debug_assert!(f.is_simple(), "not a simple element: {:?}", f.perm);
        f
    }

    /// Returns the simple element with the given permutation, if there is one.
    pub fn from_permutation(p: &Permutation) -> Option<Factor> {
        let f = Factor {
            perm: p.images0().iter().map(|&x| x as u8).collect(),
        };
        f.is_simple().then_some(f)
    }

    /// Builds from 1-based blocks; singletons may be omitted.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Option<Factor> {
        let mut perm: Vec<u8> = (0..n as u8).collect();
        let mut seen = vec![false; n];
        for b in blocks {
            let mut b = b.clone();
            b.sort_unstable();
            for &x in &b {
                if x == 0 || x > n || seen[x - 1] {
                    return None;
                }
                seen[x - 1] = true;
            }
            for i in 0..b.len() {
                perm[b[i] - 1] = (b[(i + 1) % b.len()] - 1) as u8;
            }
        }
        let f = Factor { perm };
        f.is_simple().then_some(f)
    }

    pub fn permutation(&self) -> Permutation {
        Permutation::from_images(self.perm.iter().map(|&x| x as usize).collect())
    }

    /// Block id (smallest member, 0-based) of each element.
    fn block_ids(&self) -> Vec<u8> {
        let n = self.n();
        let mut id = vec![u8::MAX; n];
        for start in 0..n {
            if id[start] != u8::MAX {
                continue;
            }
            let mut x = start;
            while id[x] == u8::MAX {
                id[x] = start as u8;
                x = self.perm[x] as usize;
            }
        }
        id
    }

    /// Blocks with at least two elements, 1-based and ascending, ordered by
    /// smallest element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let ids = self.block_ids();
        let n = self.n();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if ids[start] as usize == start && self.perm[start] as usize != start {
                out.push(
                    (start..n)
                        .filter(|&x| ids[x] as usize == start)
                        .map(|x| x + 1)
                        .collect(),
                );
            }
        }
        out
    }

    fn is_simple(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        for &x in &self.perm {
            if x as usize >= n || seen[x as usize] {
                return false;
            }
            seen[x as usize] = true;
        }
        // each cycle must be an ascending cyclic shift of its members
        let ids = self.block_ids();
        for start in 0..n {
            if ids[start] as usize != start {
                continue;
            }
            let members: Vec<usize> = (start..n).filter(|&x| ids[x] as usize == start).collect();
            for i in 0..members.len() {
                if self.perm[members[i]] as usize != members[(i + 1) % members.len()] {
                    return false;
                }
            }
        }
        // non-crossing: no a < b < c < d with a,c in one block and b,d in another
        for a in 0..n {
            for b in a + 1..n {
                if ids[b] == ids[a] {
                    continue;
                }
                for c in b + 1..n {
                    if ids[c] != ids[a] {
                        continue;
                    }
                    if (c + 1..n).any(|d| ids[d] == ids[b]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The letters of this element, block by block, each block descending.
    pub fn letters(&self) -> Vec<BandLetter> {
        let mut out = Vec::new();
        for b in self.blocks() {
            for i in (1..b.len()).rev() {
                out.push(BandLetter::pos(b[i], b[i - 1]));
            }
        }
        out
    }

    /// Greatest common prefix: the common refinement of both partitions.
    pub fn meet(&self, other: &Factor) -> Factor {
        let n = self.n();
        let ia = self.block_ids();
        let ib = other.block_ids();
        let mut first = vec![u8::MAX; n * n];
        let mut last = vec![u8::MAX; n * n];
        let mut perm: Vec<u8> = (0..n as u8).collect();
        for x in 0..n {
            let key = ia[x] as usize * n + ib[x] as usize;
            if first[key] == u8::MAX {
                first[key] = x as u8;
            } else {
                perm[last[key] as usize] = x as u8;
            }
            last[key] = x as u8;
        }
        for key in 0..n * n {
            if first[key] != u8::MAX {
                perm[last[key] as usize] = first[key];
            }
        }
        Factor { perm }
    }

    /// Prefix order, which coincides with refinement of partitions.
    pub fn is_prefix_of(&self, other: &Factor) -> bool {
        let ia = self.block_ids();
        let ib = other.block_ids();
        (0..self.n()).all(|x| ib[x] == ib[ia[x] as usize])
    }

    /// Product of two permutations, `self` first. Only meaningful when the
    /// braid product is known to be simple.
    pub(crate) fn then_perm(&self, other: &Factor) -> Vec<u8> {
        self.perm.iter().map(|&x| other.perm[x as usize]).collect()
    }

    /// `perm` followed by `self`, as a simple element (caller guarantees it is one).
    pub(crate) fn after_raw(&self, perm: &[u8]) -> Factor {
        Factor::from_perm_unchecked(perm.iter().map(|&x| self.perm[x as usize]).collect())
    }

    pub(crate) fn inverse_perm(&self) -> Vec<u8> {
        let mut inv = vec![0u8; self.n()];
        for (i, &x) in self.perm.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        inv
    }

    /// Right complement `self⁻¹ δ`.
    pub fn right_complement(&self) -> Factor {
        let n = self.n();
        let inv = self.inverse_perm();
        Factor::from_perm_unchecked(inv.iter().map(|&x| ((x as usize + 1) % n) as u8).collect())
    }

    /// Left complement `δ self⁻¹`.
    pub fn left_complement(&self) -> Factor {
        let n = self.n();
        let inv = self.inverse_perm();
        Factor::from_perm_unchecked((0..n).map(|i| inv[(i + 1) % n]).collect())
    }

    /// `τ^k(self) = δ^-k self δ^k`: relabels every block by `+k` mod `n`.
    pub fn tau(&self, k: i64) -> Factor {
        let n = self.n();
        if n == 0 {
            return self.clone();
        }
        let k = k.rem_euclid(n as i64) as usize;
        if k == 0 {
            return self.clone();
        }
        let mut perm = vec![0u8; n];
        for x in 0..n {
            perm[(x + k) % n] = ((self.perm[x] as usize + k) % n) as u8;
        }
        Factor { perm }
    }

    /// Every simple element on `n` strands, identity first.
    pub fn all(n: usize) -> Vec<Factor> {
        let mut out = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        all_partitions(n, 1, &mut blocks, &mut out);
        out.sort();
        out
    }
}

fn all_partitions(n: usize, next: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Factor>) {
    if next > n {
        if let Some(f) = Factor::from_blocks(n, blocks) {
            out.push(f);
        }
        return;
    }
    for i in 0..blocks.len() {
        blocks[i].push(next);
        all_partitions(n, next + 1, blocks, out);
        blocks[i].pop();
    }
    blocks.push(vec![next]);
    all_partitions(n, next + 1, blocks, out);
    blocks.pop();
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.letters();
        if letters.is_empty() {
            return write!(f, "e");
        }
        for l in letters {
            write!(f, "({},{})", l.t, l.s)?;
        }
        Ok(())
    }
}

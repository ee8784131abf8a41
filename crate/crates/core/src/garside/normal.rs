//! Left canonical form `δ^p A_1 ... A_k` with every adjacent pair
//! left-weighted.

use std::fmt;

use crate::braid::{fundamental_delta, BraidError, BraidWord, Sign};

use super::factor::Factor;
use super::GarsideError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    n: usize,
    p: i64,
    factors: Vec<Factor>,
}

impl NormalForm {
    pub fn identity(n: usize) -> NormalForm {
        NormalForm {
            n,
            p: 0,
            factors: Vec::new(),
        }
    }

    pub fn from_word(w: &BraidWord) -> NormalForm {
        let n = w.strands();
        if n <= 1 {
            return NormalForm::identity(n);
        }
        let (p, factors) = lift_factors(w);
        NormalForm::normalize(n, p, factors)
    }

    /// Normal form of `δ^p F_1 ... F_m` for arbitrary simple `F_i`.
    pub fn normalize(n: usize, p: i64, factors: Vec<Factor>) -> NormalForm {
        if n <= 1 {
            return NormalForm::identity(n);
        }
        let mut out: Vec<Factor> = Vec::with_capacity(factors.len());
        for f in factors {
            if f.is_identity() {
                continue;
            }
            out.push(f);
            let mut i = out.len() - 1;
            while i > 0 {
                let (a, b) = (&out[i - 1], &out[i]);
                let t = a.right_complement().meet(b);
                if t.is_identity() {
                    break;
                }
                let na = Factor::from_perm_unchecked(a.then_perm(&t));
                let nb = b.after_raw(&t.inverse_perm());
                out[i - 1] = na;
                out[i] = nb;
                i -= 1;
            }
            while out.last().is_some_and(|f| f.is_identity()) {
                out.pop();
            }
        }
        let leading = out.iter().take_while(|f| f.is_delta()).count();
        out.drain(..leading);
        let nf = NormalForm {
            n,
            p: p + leading as i64,
            factors: out,
        };
        debug_assert!(nf.is_left_weighted(), "normalization failed: {nf}");
        nf
    }

    pub fn is_left_weighted(&self) -> bool {
        self.factors
            .iter()
            .all(|f| !f.is_identity() && !f.is_delta())
            && self
                .factors
                .windows(2)
                .all(|w| w[0].right_complement().meet(&w[1]).is_identity())
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn inf(&self) -> i64 {
        self.p
    }

    pub fn sup(&self) -> i64 {
        self.p + self.factors.len() as i64
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn to_word(&self) -> BraidWord {
        let d = fundamental_delta(self.n);
        let dp = if self.p >= 0 { d.clone() } else { d.inverse() };
        let mut letters = Vec::new();
        for _ in 0..self.p.unsigned_abs() {
            letters.extend_from_slice(dp.letters());
        }
        for f in &self.factors {
            letters.extend(f.letters());
        }
        BraidWord::new(self.n, letters).expect("factor letters fit")
    }

    /// Conjugation `x ↦ s⁻¹ x s` by a simple element.
    pub fn conjugate_by_simple(&self, s: &Factor) -> NormalForm {
        let mut fs = Vec::with_capacity(self.factors.len() + 2);
        fs.push(s.right_complement().tau(self.p - 1));
        fs.extend(self.factors.iter().cloned());
        fs.push(s.clone());
        NormalForm::normalize(self.n, self.p - 1, fs)
    }

    /// Cycling: conjugation by `τ^-p(A_1)`, moving the first factor to the end.
    pub fn cycling(&self) -> Result<NormalForm, GarsideError> {
        if self.factors.is_empty() {
            return Err(GarsideError::PureDeltaPower);
        }
        Ok(self.cycle_step())
    }

    /// Decycling: conjugation by `A_k⁻¹`, moving the last factor to the front.
    pub fn decycling(&self) -> Result<NormalForm, GarsideError> {
        if self.factors.is_empty() {
            return Err(GarsideError::PureDeltaPower);
        }
        Ok(self.decycle_step())
    }

    /// Cycling that leaves pure `δ` powers fixed.
    pub(crate) fn cycle_step(&self) -> NormalForm {
        if self.factors.is_empty() {
            return self.clone();
        }
        let mut fs: Vec<Factor> = self.factors[1..].to_vec();
        fs.push(self.factors[0].tau(-self.p));
        NormalForm::normalize(self.n, self.p, fs)
    }

    pub(crate) fn decycle_step(&self) -> NormalForm {
        let Some(last) = self.factors.last() else {
            return self.clone();
        };
        let mut fs = vec![last.tau(self.p)];
        fs.extend(self.factors[..self.factors.len() - 1].iter().cloned());
        NormalForm::normalize(self.n, self.p, fs)
    }
}

/// Splits `w` as `δ^p · pos` with `pos` positive: every `a⁻¹` becomes
/// `δ⁻¹ (δ a⁻¹)` and the `δ⁻¹` are pulled to the front. No normalization.
pub fn positive_lift(w: &BraidWord) -> (i64, BraidWord) {
    let n = w.strands();
    if n <= 1 {
        return (0, BraidWord::empty(n));
    }
    let (p, factors) = lift_factors(w);
    let letters = factors.iter().flat_map(|f| f.letters()).collect();
    (p, BraidWord::new(n, letters).expect("factor letters fit"))
}

fn lift_factors(w: &BraidWord) -> (i64, Vec<Factor>) {
    let n = w.strands();
    let mut pieces: Vec<(Factor, bool)> = Vec::with_capacity(w.len());
    for l in w.letters() {
        let f = Factor::letter(n, l.t, l.s);
        match l.sign {
            Sign::Pos => pieces.push((f, false)),
            Sign::Neg => pieces.push((f.left_complement(), true)),
        }
    }
    let negs = pieces.iter().filter(|(_, neg)| *neg).count() as i64;
    let mut to_right = 0i64;
    let mut factors: Vec<Factor> = vec![Factor::identity(n); pieces.len()];
    for (i, (f, neg)) in pieces.iter().enumerate().rev() {
        factors[i] = f.tau(-to_right);
        if *neg {
            to_right += 1;
        }
    }
    (-negs, factors)
}

/// The simple element a positive word represents, if it is one.
pub fn is_canonical_factor(pos: &BraidWord) -> Option<Factor> {
    if pos.letters().iter().any(|l| !l.sign.is_pos()) {
        return None;
    }
    let f = Factor::from_permutation(&pos.permutation())?;
    let fw = BraidWord::new(pos.strands(), f.letters()).ok()?;
    (NormalForm::from_word(pos) == NormalForm::from_word(&fw)).then_some(f)
}

/// Word problem: two words are equal iff their canonical forms coincide.
pub fn equal_test(w1: &BraidWord, w2: &BraidWord) -> Result<bool, BraidError> {
    if w1.strands() != w2.strands() {
        return Err(BraidError::StrandMismatch(w1.strands(), w2.strands()));
    }
    Ok(NormalForm::from_word(w1) == NormalForm::from_word(w2))
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.p)?;
        for fac in &self.factors {
            write!(f, " | {fac}")?;
        }
        Ok(())
    }
}

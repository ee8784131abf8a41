//! Band-generator braid words.
//!
//! A letter `a(t,s)` with `t > s` exchanges the occupants of positions `s`
//! and `t`, both passing in front of every strand strictly between them.
//! Artin generators are the special case `s<i> = a(i+1,i)`.
//!
//! Words act on *positions*: the permutation of a word maps the position a
//! strand starts at to the position it ends at, reading letters left to
//! right.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("letter a({t},{s}) is out of range for {n} strands (need n >= t > s >= 1)")]
    IndexOutOfRange { t: usize, s: usize, n: usize },
    #[error("strand set {0:?} is not a union of closed-braid components")]
    NotWholeComponents(Vec<usize>),
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn from_i64(x: i64) -> Sign {
        if x < 0 {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn is_pos(self) -> bool {
        self == Sign::Pos
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// `a(t,s)^sign`, 1-based, `t > s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BandLetter {
    pub t: usize,
    pub s: usize,
    pub sign: Sign,
}

impl BandLetter {
    pub fn new(t: usize, s: usize, sign: Sign) -> BandLetter {
        debug_assert!(t > s && s >= 1);
        BandLetter { t, s, sign }
    }

    pub fn pos(t: usize, s: usize) -> BandLetter {
        BandLetter::new(t, s, Sign::Pos)
    }

    pub fn neg(t: usize, s: usize) -> BandLetter {
        BandLetter::new(t, s, Sign::Neg)
    }

    /// Artin generator `s<i>`.
    pub fn sigma(i: usize, sign: Sign) -> BandLetter {
        BandLetter::new(i + 1, i, sign)
    }

    pub fn inverse(self) -> BandLetter {
        BandLetter {
            sign: -self.sign,
            ..self
        }
    }

    pub fn fits(&self, n: usize) -> bool {
        n >= self.t && self.t > self.s && self.s >= 1
    }

    /// Conjugation by `δ^by`: `δ^-1 a(t,s) δ = a(t+1,s+1)`, indices mod `n`.
    pub fn delta_shift(self, by: i64, n: usize) -> BandLetter {
        let n_i = n as i64;
        let shift = |x: usize| ((x as i64 - 1 + by).rem_euclid(n_i) + 1) as usize;
        let (a, b) = (shift(self.t), shift(self.s));
        BandLetter {
            t: a.max(b),
            s: a.min(b),
            sign: self.sign,
        }
    }
}

/// A permutation of `{1..n}`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation((0..n).collect())
    }

    /// From 0-based images; panics if not a bijection.
    pub fn from_images(images: Vec<usize>) -> Permutation {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            assert!(x < images.len() && !seen[x], "not a permutation");
            seen[x] = true;
        }
        Permutation(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based image of a 1-based position.
    pub fn image(&self, pos: usize) -> usize {
        self.0[pos - 1] + 1
    }

    pub fn images0(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| then.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// Cycles as 1-based position lists, each starting at its smallest
    /// element and following the map; cycles sorted by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.0[x];
            }
            out.push(cyc);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BandLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BandLetter>) -> Result<BraidWord, BraidError> {
        if let Some(l) = letters.iter().find(|l| !l.fits(strands)) {
            return Err(BraidError::IndexOutOfRange {
                t: l.t,
                s: l.s,
                n: strands,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> BraidWord {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// Builds from `(t, s, exponent)` triples; exponents fold repeated letters.
    pub fn from_powers(
        strands: usize,
        powers: &[(usize, usize, i64)],
    ) -> Result<BraidWord, BraidError> {
        let mut letters = Vec::new();
        for &(t, s, e) in powers {
            let l = BandLetter {
                t,
                s,
                sign: Sign::from_i64(e),
            };
            letters.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        }
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BandLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// `g · self · g⁻¹`.
    pub fn conjugated_by(&self, g: &BraidWord) -> Result<BraidWord, BraidError> {
        g.concat(self)?.concat(&g.inverse())
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.to_i64()).sum()
    }

    pub fn permutation(&self) -> Permutation {
        // occupant[pos] = start position of the strand now at pos
        let mut occupant: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            occupant.swap(l.t - 1, l.s - 1);
        }
        let mut image = vec![0; self.strands];
        for (pos, &start) in occupant.iter().enumerate() {
            image[start] = pos;
        }
        Permutation(image)
    }

    /// Cycle decomposition of the permutation: one cycle per component of
    /// the closed braid.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.permutation().cycles()
    }

    pub fn band_to_artin(&self) -> BraidWord {
        let mut out = Vec::new();
        for l in &self.letters {
            push_artin_expansion(&mut out, *l);
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// Conjugation of every letter by `δ^by`.
    pub fn delta_shift(&self, by: i64) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .map(|l| l.delta_shift(by, self.strands))
                .collect(),
        }
    }

    /// Removes whole closed-braid components, given by their start positions.
    ///
    /// Letters between two surviving strands are kept and reindexed by rank
    /// among surviving positions. Letters touching a doomed strand are
    /// expanded into Artin generators and the doomed strand erased, so a
    /// survivor that passed in front of intermediate strands keeps those
    /// crossings.
    pub fn delete_strands(&self, doomed: &BTreeSet<usize>) -> Result<BraidWord, BraidError> {
        let perm = self.permutation();
        if doomed
            .iter()
            .any(|&d| d == 0 || d > self.strands || !doomed.contains(&perm.image(d)))
        {
            return Err(BraidError::NotWholeComponents(
                doomed.iter().copied().collect(),
            ));
        }
        if doomed.is_empty() {
            return Ok(self.clone());
        }
        let n = self.strands;
        let mut occupant: Vec<usize> = (1..=n).collect();
        let is_doomed = |occ: &[usize], pos: usize| doomed.contains(&occ[pos - 1]);
        let rank = |occ: &[usize], pos: usize| {
            (1..=pos).filter(|&p| !doomed.contains(&occ[p - 1])).count()
        };
        let mut out = Vec::new();
        for &l in &self.letters {
            let dt = is_doomed(&occupant, l.t);
            let ds = is_doomed(&occupant, l.s);
            if !dt && !ds {
                out.push(BandLetter {
                    t: rank(&occupant, l.t),
                    s: rank(&occupant, l.s),
                    sign: l.sign,
                });
                occupant.swap(l.t - 1, l.s - 1);
            } else if dt && ds {
                occupant.swap(l.t - 1, l.s - 1);
            } else {
                let mut artin = Vec::new();
                push_artin_expansion(&mut artin, l);
                for a in artin {
                    if !is_doomed(&occupant, a.t) && !is_doomed(&occupant, a.s) {
                        let r = rank(&occupant, a.s);
                        out.push(BandLetter::sigma(r, a.sign));
                    }
                    occupant.swap(a.t - 1, a.s - 1);
                }
            }
        }
        Ok(BraidWord {
            strands: n - doomed.len(),
            letters: out,
        })
    }

    /// Letters without the `n=` header, exponents folded, e.g. `a(2,1)^3 a(3,2)^-1`.
    pub fn letters_string(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let count = (j - i) as i64 * l.sign.to_i64();
            if count == 1 {
                parts.push(format!("a({},{})", l.t, l.s));
            } else {
                parts.push(format!("a({},{})^{}", l.t, l.s, count));
            }
            i = j;
        }
        parts.join(" ")
    }
}

fn push_artin_expansion(out: &mut Vec<BandLetter>, l: BandLetter) {
    for i in (l.s + 1..l.t).rev() {
        out.push(BandLetter::sigma(i, Sign::Pos));
    }
    out.push(BandLetter::sigma(l.s, l.sign));
    for i in l.s + 1..l.t {
        out.push(BandLetter::sigma(i, Sign::Neg));
    }
}

/// `δ = a(n,n-1) a(n-1,n-2) ... a(2,1)`.
pub fn fundamental_delta(n: usize) -> BraidWord {
    BraidWord {
        strands: n,
        letters: (1..n).rev().map(|s| BandLetter::pos(s + 1, s)).collect(),
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            write!(f, "n={};", self.strands)
        } else {
            write!(f, "n={}; {}", self.strands, self.letters_string())
        }
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;
    fn from_str(text: &str) -> Result<BraidWord, BraidError> {
        parse_braid_word(text)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, BraidError> {
        Err(BraidError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), BraidError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn int(&mut self) -> Result<i64, BraidError> {
        let start = self.pos;
        let mut end = start;
        let bytes = self.text.as_bytes();
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        match self.text[start..end].parse::<i64>() {
            Ok(v) => {
                self.pos = end;
                Ok(v)
            }
            Err(_) => self.err("expected integer"),
        }
    }

    fn index(&mut self) -> Result<usize, BraidError> {
        let at = self.pos;
        let v = self.int()?;
        if v < 1 {
            return Err(BraidError::Syntax {
                pos: at,
                msg: "strand index must be positive".into(),
            });
        }
        Ok(v as usize)
    }
}

/// Parses `n=<int>; <letter>*` where a letter is `a(t,s)` or `s<i>`, each
/// optionally followed by `^<nonzero int>`.
pub fn parse_braid_word(text: &str) -> Result<BraidWord, BraidError> {
    let mut c = Cursor { text, pos: 0 };
    c.skip_ws();
    c.expect('n')?;
    c.skip_ws();
    c.expect('=')?;
    c.skip_ws();
    let n = c.index()?;
    c.skip_ws();
    c.expect(';')?;
    let mut letters = Vec::new();
    loop {
        c.skip_ws();
        if c.rest().is_empty() {
            break;
        }
        let (t, s) = if c.eat('a') {
            c.skip_ws();
            c.expect('(')?;
            c.skip_ws();
            let t = c.index()?;
            c.skip_ws();
            c.expect(',')?;
            c.skip_ws();
            let s = c.index()?;
            c.skip_ws();
            c.expect(')')?;
            (t, s)
        } else if c.eat('s') {
            let i = c.index()?;
            (i + 1, i)
        } else {
            return c.err("expected 'a(' or 's'");
        };
        if !(n >= t && t > s) {
            return Err(BraidError::IndexOutOfRange { t, s, n });
        }
        let mut exp = 1;
        if c.eat('^') {
            let at = c.pos;
            exp = c.int()?;
            if exp == 0 {
                return Err(BraidError::Syntax {
                    pos: at,
                    msg: "exponent must be nonzero".into(),
                });
            }
        }
        let letter = BandLetter {
            t,
            s,
            sign: Sign::from_i64(exp),
        };
        letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
    }
    Ok(BraidWord {
        strands: n,
        letters,
    })
}

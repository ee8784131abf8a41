//! Super summit sets and the conjugacy test.

use std::collections::{HashSet, VecDeque};

use crate::braid::BraidWord;

use super::factor::Factor;
use super::normal::NormalForm;
use super::GarsideError;

pub const DEFAULT_SUMMIT_CAP: usize = 1_000_000;

fn iterate_to_fixed<F, K>(start: NormalForm, step: F, key: K) -> NormalForm
where
    F: Fn(&NormalForm) -> NormalForm,
    K: Fn(&NormalForm) -> i64,
{
    // Follow the orbit; whenever the key improves, restart the orbit. Once
    // the orbit closes up without improvement, the key is optimal.
    let mut x = start;
    let mut seen: HashSet<NormalForm> = HashSet::new();
    loop {
        if !seen.insert(x.clone()) {
            return x;
        }
        let y = step(&x);
        if key(&y) > key(&x) {
            seen.clear();
        }
        x = y;
    }
}

/// An element of the super summit set of the conjugacy class of `x`,
/// reached by iterated cycling and then iterated decycling.
pub fn summit_element(x: &NormalForm) -> NormalForm {
    let up = iterate_to_fixed(x.clone(), NormalForm::cycle_step, NormalForm::inf);
    let down = iterate_to_fixed(up, NormalForm::decycle_step, |y| -y.sup());
    debug_assert_eq!(down.inf(), summit_inf_check(&down));
    down
}

fn summit_inf_check(x: &NormalForm) -> i64 {
    iterate_to_fixed(x.clone(), NormalForm::cycle_step, NormalForm::inf).inf()
}

/// The full super summit set, closed under conjugation by simple elements.
#[derive(Debug, Clone)]
pub struct SuperSummitSet {
    n: usize,
    inf: i64,
    sup: i64,
    elements: HashSet<NormalForm>,
}

impl SuperSummitSet {
    pub fn of_word(w: &BraidWord, cap: usize) -> Result<SuperSummitSet, GarsideError> {
        SuperSummitSet::from_summit(summit_element(&NormalForm::from_word(w)), cap)
    }

    /// `start` must already be a summit element.
    pub fn from_summit(start: NormalForm, cap: usize) -> Result<SuperSummitSet, GarsideError> {
        let n = start.strands();
        let (inf, sup) = (start.inf(), start.sup());
        let simples: Vec<Factor> = Factor::all(n)
            .into_iter()
            .filter(|f| !f.is_identity())
            .collect();
        let mut elements = HashSet::new();
        let mut queue = VecDeque::new();
        elements.insert(start.clone());
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for s in &simples {
                let y = x.conjugate_by_simple(s);
                if y.inf() == inf && y.sup() == sup && !elements.contains(&y) {
                    if elements.len() >= cap {
                        return Err(GarsideError::CapExceeded { cap });
                    }
                    elements.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(SuperSummitSet {
            n,
            inf,
            sup,
            elements,
        })
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn sup(&self) -> i64 {
        self.sup
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &NormalForm) -> bool {
        self.elements.contains(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = &NormalForm> {
        self.elements.iter()
    }

    /// Whether `w` is conjugate to the braids of this set.
    pub fn contains_conjugate_of(&self, w: &BraidWord) -> bool {
        if w.strands() != self.n {
            return false;
        }
        let s = summit_element(&NormalForm::from_word(w));
        s.inf() == self.inf && s.sup() == self.sup && self.contains(&s)
    }

    /// Sorted elements, for deterministic output.
    pub fn sorted(&self) -> Vec<NormalForm> {
        let mut v: Vec<NormalForm> = self.elements.iter().cloned().collect();
        v.sort();
        v
    }
}

/// Conjugacy test: equal summit `(inf, sup)` and a summit element of `w2`
/// lying in the super summit set of `w1`.
pub fn conjugate_test(w1: &BraidWord, w2: &BraidWord, cap: usize) -> Result<bool, GarsideError> {
    if w1.strands() != w2.strands() {
        return Err(GarsideError::StrandMismatch(w1.strands(), w2.strands()));
    }
    let s1 = summit_element(&NormalForm::from_word(w1));
    let s2 = summit_element(&NormalForm::from_word(w2));
    if (s1.inf(), s1.sup()) != (s2.inf(), s2.sup()) {
        return Ok(false);
    }
    let sss = SuperSummitSet::from_summit(s1, cap)?;
    Ok(sss.contains(&s2))
}

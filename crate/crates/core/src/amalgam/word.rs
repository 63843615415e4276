use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::scheme::AmalgamScheme;
use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Syllable {
    pub copy: usize,
    pub elt: Perm,
}

impl Syllable {
    pub fn new(copy: usize, elt: Perm) -> Self {
        Syllable { copy, elt }
    }
}

/// A raw word: a sequence of syllables, each an element of one factor.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    pub syllables: Vec<Syllable>,
}

impl Word {
    pub fn new(syllables: Vec<Syllable>) -> Self {
        Word { syllables }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut syllables = self.syllables.clone();
        syllables.extend(other.syllables.iter().cloned());
        Word { syllables }
    }
}

impl From<Vec<(usize, Perm)>> for Word {
    fn from(v: Vec<(usize, Perm)>) -> Self {
        Word::new(v.into_iter().map(|(c, e)| Syllable::new(c, e)).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for s in &self.syllables {
            write!(f, "[{}:{}]", s.copy, s.elt)?;
        }
        Ok(())
    }
}

/// Canonical form `head · t_1 ⋯ t_s`: `head` lies in `H` (as seen in copy 0),
/// each `t_i` is a non-identity canonical right-coset representative of
/// `H_λ` in its factor, and consecutive copies differ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalForm {
    pub head: Perm,
    pub tail: Vec<Syllable>,
}

impl NormalForm {
    /// Syllable length `s`; zero exactly when the element lies in `H`.
    pub fn length(&self) -> usize {
        self.tail.len()
    }

    pub fn is_identity(&self) -> bool {
        self.tail.is_empty() && self.head.is_identity()
    }

    pub fn to_word(&self) -> Word {
        let mut syllables = Vec::with_capacity(self.tail.len() + 1);
        if !self.head.is_identity() {
            syllables.push(Syllable::new(0, self.head.clone()));
        }
        syllables.extend(self.tail.iter().cloned());
        Word { syllables }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        for s in &self.tail {
            write!(f, " · [{}:{}]", s.copy, s.elt)?;
        }
        Ok(())
    }
}

impl AmalgamScheme {
    /// Checks that every syllable names an existing copy and an element of it.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        for (position, s) in w.syllables.iter().enumerate() {
            if s.copy >= self.copies() {
                return Err(Error::BadSyllable {
                    position,
                    reason: format!("copy {} out of range 0..{}", s.copy, self.copies()),
                });
            }
            if !self.factor(s.copy).contains(&s.elt) {
                return Err(Error::BadSyllable {
                    position,
                    reason: format!("{} is not in factor {}", s.elt, s.copy),
                });
            }
        }
        Ok(())
    }

    /// Canonical form of a word.
    ///
    /// Syllables are absorbed right to left into an already canonical suffix:
    /// the head is transported into the incoming copy, merged with the first
    /// tail syllable when the copies agree, and the result is split as
    /// `h · t` with `t` the canonical representative of `H_λ x`.
    pub fn reduce(&self, w: &Word) -> Result<NormalForm> {
        self.check_word(w)?;
        let mut head = 0usize;
        let mut tail: VecDeque<(usize, usize)> = VecDeque::new();
        for s in w.syllables.iter().rev() {
            let lam = s.copy;
            let g = self.factor(lam);
            let a = g.idx(&s.elt);
            let h_lam = self.transport_idx(0, lam, head);
            let mut c = g.mul_idx(a, h_lam);
            if tail.front().is_some_and(|&(copy, _)| copy == lam) {
                let (_, t) = tail.pop_front().expect("checked non-empty");
                c = g.mul_idx(c, t);
            }
            let cosets = self.transversal_data(lam);
            let t = cosets.rep_of(c);
            let h = g.mul_idx(c, g.inv_idx(t));
            head = self.transport_idx(lam, 0, h);
            if t != 0 {
                tail.push_front((lam, t));
            }
        }
        Ok(NormalForm {
            head: self.factor(0).element(head).clone(),
            tail: tail
                .into_iter()
                .map(|(copy, t)| Syllable::new(copy, self.factor(copy).element(t).clone()))
                .collect(),
        })
    }

    pub fn equal(&self, w1: &Word, w2: &Word) -> Result<bool> {
        Ok(self.reduce(w1)? == self.reduce(w2)?)
    }

    pub fn multiply(&self, w1: &Word, w2: &Word) -> Result<NormalForm> {
        self.reduce(&w1.concat(w2))
    }

    pub fn invert(&self, w: &Word) -> Result<NormalForm> {
        self.reduce(&inverse_word(w))
    }

    /// Relabels copy indices by the permutation `pi` of `0..copies`. Only
    /// defined for generalized free powers, where it is an automorphism.
    pub fn copy_automorphism(&self, pi: &[usize], w: &Word) -> Result<Word> {
        if !self.is_power() {
            return Err(Error::NotAPower);
        }
        let k = self.copies();
        let mut seen = vec![false; k];
        if pi.len() != k || pi.iter().any(|&i| i >= k || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::Scheme(format!(
                "{pi:?} is not a permutation of the {k} copies"
            )));
        }
        self.check_word(w)?;
        Ok(Word::new(
            w.syllables
                .iter()
                .map(|s| Syllable::new(pi[s.copy], s.elt.clone()))
                .collect(),
        ))
    }
}

pub fn inverse_word(w: &Word) -> Word {
    Word::new(
        w.syllables
            .iter()
            .rev()
            .map(|s| Syllable::new(s.copy, s.elt.inv()))
            .collect(),
    )
}

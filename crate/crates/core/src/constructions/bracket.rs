use std::collections::HashMap;

use super::word::{word_semiring, Word, WordSemiring};
use crate::error::{Error, Result};

/// A nonletter factor of a host word, by the 1-based positions of its first
/// and last letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bracket {
    pub start: usize,
    pub end: usize,
}

impl Bracket {
    pub fn new(start: usize, end: usize) -> Self {
        assert!(start <= end, "bracket ({start},{end}) is reversed");
        Bracket { start, end }
    }

    /// `(i1,j1)(i2,j2) = (i1,j2)` when `i2 = j1 + 1`, zero (`None`) otherwise.
    pub fn compose(self, other: Bracket) -> Option<Bracket> {
        (other.start == self.end + 1).then(|| Bracket::new(self.start, other.end))
    }
}

/// Bracket representation of `S(w)` for a word whose nonletter factors are unique.
#[derive(Clone, Debug)]
pub struct BracketMap {
    pub semiring: WordSemiring,
    pub word: Word,
    brackets: HashMap<Bracket, usize>,
}

impl BracketMap {
    pub fn element(&self, b: Bracket) -> Option<usize> {
        if b.start == b.end {
            return self.semiring.letter(&self.word.letters()[b.start - 1]);
        }
        self.brackets.get(&b).copied()
    }

    /// Nonletter brackets with their elements, sorted by bracket.
    pub fn brackets(&self) -> Vec<(Bracket, usize)> {
        let mut v: Vec<_> = self.brackets.iter().map(|(b, e)| (*b, *e)).collect();
        v.sort();
        v
    }

    /// Product of two elements given as brackets (letters as `(i,i)`), by the
    /// position rule rather than by the table.
    fn rule_product(&self, x: Bracket, y: Bracket) -> usize {
        let len = self.word.len();
        let letters = self.word.letters();
        let is_letter = |b: Bracket| b.start == b.end;
        let result = match (is_letter(x), is_letter(y)) {
            (false, false) => x.compose(y),
            // a letter adjoins wherever it occurs next to the other factor
            (true, false) => (y.start >= 2 && letters[y.start - 2] == letters[x.start - 1])
                .then(|| Bracket::new(y.start - 1, y.end)),
            (false, true) => (x.end < len && letters[x.end] == letters[y.start - 1])
                .then(|| Bracket::new(x.start, x.end + 1)),
            (true, true) => (1..len)
                .find(|&i| letters[i - 1] == letters[x.start - 1] && letters[i] == letters[y.start - 1])
                .map(|i| Bracket::new(i, i + 1)),
        };
        result.map_or(0, |b| self.element(b).expect("bracket inside the word"))
    }
}

/// Builds `S(w)` and its bracket representation, checking that every
/// nonletter factor occurs once and that the position rule reproduces the table.
pub fn bracket_elements(w: &Word) -> Result<BracketMap> {
    if w.is_commutative() {
        return Err(Error::Precondition("brackets need a noncommutative word".into()));
    }
    let letters = w.letters();
    let len = letters.len();
    let mut first_seen: HashMap<&[_], usize> = HashMap::new();
    for i in 0..len {
        for j in i + 2..=len {
            if let Some(prev) = first_seen.insert(&letters[i..j], i + 1) {
                return Err(Error::Precondition(format!(
                    "factor `{}` occurs at positions {prev} and {}",
                    Word::new(letters[i..j].to_vec(), false)?,
                    i + 1
                )));
            }
        }
    }
    let semiring = word_semiring(std::slice::from_ref(w), false, false)?;
    let mut brackets = HashMap::new();
    for i in 1..=len {
        for j in i + 1..=len {
            let e = semiring
                .element(&letters[i - 1..j])
                .expect("every factor is an element");
            brackets.insert(Bracket::new(i, j), e);
        }
    }
    let map = BracketMap {
        semiring,
        word: w.clone(),
        brackets,
    };
    // Letters are represented by their first position.
    let mut reps: Vec<(Bracket, usize)> = map.brackets();
    for (pos, s) in letters.iter().enumerate() {
        let e = map.semiring.letter(s).expect("letters are elements");
        if !reps.iter().any(|(_, x)| *x == e) {
            reps.push((Bracket::new(pos + 1, pos + 1), e));
        }
    }
    let s = &map.semiring.semiring;
    for &(bx, x) in &reps {
        for &(by, y) in &reps {
            if s.mul(x, y) != map.rule_product(bx, by) {
                return Err(Error::Construction(format!(
                    "bracket rule disagrees with S({w}) on {bx:?} * {by:?}"
                )));
            }
        }
    }
    Ok(map)
}

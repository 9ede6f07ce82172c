use std::collections::BTreeSet;

use super::{fresh_variable, satisfies};
use crate::algebra::FiniteSemiring;
use crate::constructions::{Symbol, Word};
use crate::error::{Error, Result};
use crate::term::Statement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotermVerdict {
    /// No word `v != w` of length at most `max_len` satisfies `v <= w`. This is
    /// not a statement about longer words.
    UpToBound { max_len: usize, candidates: u64 },
    /// The shortlex-least `v != w` with `S |= v <= w`.
    NotIsoterm { witness: Word },
}

impl IsotermVerdict {
    pub fn is_isoterm_up_to_bound(&self) -> bool {
        matches!(self, IsotermVerdict::UpToBound { .. })
    }
}

struct Search<'a> {
    s: &'a FiniteSemiring,
    w: Vec<usize>,
    /// alphabet of `w` in first-occurrence order, then the fresh letter
    letters: usize,
    fresh: usize,
    /// assignments (values of w's letters) under which `w` is not the zero
    tests: Vec<Vec<usize>>,
    targets: Vec<usize>,
    /// `left_divides[u * n + t]`: some `e` has `u e = t` (or `u = t`)
    left_divides: Vec<bool>,
    budget: u64,
    spent: u64,
    candidates: u64,
}

impl Search<'_> {
    fn charge(&mut self, amount: u64) -> Result<()> {
        self.spent += amount;
        if self.spent > self.budget {
            return Err(Error::Budget {
                budget: self.budget,
                required: self.spent as u128,
            });
        }
        Ok(())
    }

    fn collect_tests(&mut self, asg: &mut Vec<usize>, zero: usize) -> Result<()> {
        self.charge(1)?;
        let k = asg.len();
        // longest prefix of w whose letters are all assigned
        let prefix = self.w.iter().take_while(|&&l| l < k).count();
        let value = self.w[..prefix]
            .iter()
            .fold(None, |acc: Option<usize>, &l| {
                Some(acc.map_or(asg[l], |a| self.s.mul(a, asg[l])))
            });
        if value == Some(zero) {
            return Ok(());
        }
        if k == self.letters {
            let v = value.expect("w is nonempty");
            self.tests.push(asg.clone());
            self.targets.push(v);
            return Ok(());
        }
        for x in 0..self.s.order() {
            asg.push(x);
            self.collect_tests(asg, zero)?;
            asg.pop();
        }
        Ok(())
    }

    /// Depth-first over words of exactly `len` letters; `vals[t]` is the value
    /// of the current prefix under test `t`.
    fn extend(
        &mut self,
        prefix: &mut Vec<usize>,
        vals: &[usize],
        len: usize,
    ) -> Result<Option<Vec<usize>>> {
        if prefix.len() == len {
            self.candidates += 1;
            let matches = vals.iter().zip(&self.targets).all(|(v, t)| v == t);
            return Ok((matches && *prefix != self.w).then(|| prefix.clone()));
        }
        let n = self.s.order();
        for l in 0..=self.fresh {
            // Sending the fresh letter to the zero kills v but not w.
            if l == self.fresh && !self.tests.is_empty() {
                continue;
            }
            self.charge(self.tests.len() as u64 + 1)?;
            let mut next = Vec::with_capacity(vals.len());
            let mut viable = true;
            for (t, asg) in self.tests.iter().enumerate() {
                let u = if prefix.is_empty() {
                    asg[l]
                } else {
                    self.s.mul(vals[t], asg[l])
                };
                let target = self.targets[t];
                if u != target && !self.left_divides[u * n + target] {
                    viable = false;
                    break;
                }
                next.push(u);
            }
            if !viable {
                continue;
            }
            prefix.push(l);
            let found = self.extend(prefix, &next, len)?;
            prefix.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

fn fresh_symbol(alphabet: &[Symbol]) -> Symbol {
    let used: BTreeSet<String> = alphabet.iter().map(|s| s.to_string()).collect();
    Symbol::parse(&fresh_variable(&used)).expect("fresh names are identifiers")
}

/// Searches words `v != w` over the letters of `w` plus one fresh letter, up
/// to length `|w| + max_extra_len`, for the shortlex-least `v` with
/// `S |= v <= w` (letters ordered by first occurrence in `w`, fresh last).
///
/// For flat `S` the condition reduces to `v(s) = w(s)` for the finitely many
/// assignments with `w(s) != 0`, which the search uses to prune prefixes that
/// cannot be extended. Other semirings are checked candidate by candidate.
pub fn is_isoterm_bounded(
    s: &FiniteSemiring,
    w: &Word,
    max_extra_len: usize,
    budget: u64,
) -> Result<IsotermVerdict> {
    if w.is_commutative() {
        return Err(Error::Precondition("isoterms are noncommutative words".into()));
    }
    let mut alphabet = w.alphabet();
    let fresh = fresh_symbol(&alphabet);
    let k = alphabet.len();
    alphabet.push(fresh);
    let w_idx: Vec<usize> = w
        .letters()
        .iter()
        .map(|l| alphabet.iter().position(|a| a == l).expect("in alphabet"))
        .collect();
    let max_len = w.len() + max_extra_len;
    let to_word = |v: &[usize]| Word::new(v.iter().map(|&i| alphabet[i].clone()).collect(), false);

    let (found, candidates) = if let (true, Some(zero)) = (s.is_flat(), s.zero()) {
        let n = s.order();
        let mut left_divides = vec![false; n * n];
        for u in 0..n {
            for e in 0..n {
                left_divides[u * n + s.mul(u, e)] = true;
            }
        }
        let mut search = Search {
            s,
            w: w_idx,
            letters: k,
            fresh: k,
            tests: Vec::new(),
            targets: Vec::new(),
            left_divides,
            budget,
            spent: 0,
            candidates: 0,
        };
        search.collect_tests(&mut Vec::with_capacity(k), zero)?;
        let mut found = None;
        for len in 1..=max_len {
            if let Some(v) = search.extend(&mut Vec::new(), &[], len)? {
                found = Some(v);
                break;
            }
        }
        (found.map(|v| to_word(&v)).transpose()?, search.candidates)
    } else {
        brute_force(s, w, &alphabet, max_len, budget)?
    };
    let Some(v) = found else {
        return Ok(IsotermVerdict::UpToBound {
            max_len,
            candidates,
        });
    };
    // Independent confirmation through the general satisfaction engine.
    let st = Statement::order(v.to_term(), w.to_term());
    if !satisfies(s, &st, budget, 1)?.holds {
        return Err(Error::Construction(format!(
            "isoterm witness {v} does not satisfy {v} <= {w}"
        )));
    }
    Ok(IsotermVerdict::NotIsoterm { witness: v })
}

fn brute_force(
    s: &FiniteSemiring,
    w: &Word,
    alphabet: &[Symbol],
    max_len: usize,
    budget: u64,
) -> Result<(Option<Word>, u64)> {
    let a = alphabet.len();
    let mut spent = 0u64;
    let mut candidates = 0u64;
    for len in 1..=max_len {
        let mut digits = vec![0usize; len];
        loop {
            let v = Word::new(digits.iter().map(|&i| alphabet[i].clone()).collect(), false)?;
            if v != *w {
                candidates += 1;
                let st = Statement::order(v.to_term(), w.to_term());
                let verdict = satisfies(s, &st, budget.saturating_sub(spent), 1)?;
                spent += verdict.evaluations;
                if verdict.holds {
                    return Ok((Some(v), candidates));
                }
            }
            // next word of this length in lexicographic order
            let mut i = len;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < a {
                    break;
                }
                digits[i] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    Ok((None, candidates))
}

use std::collections::{BTreeMap, BTreeSet};

use super::{satisfies_all, Verdict};
use crate::algebra::FiniteSemiring;
use crate::constructions::{Symbol, Word};
use crate::error::{Error, Result};
use crate::term::{parse_statement, Statement, Term};

/// First of `z`, `z0`, `z1`, ... not among `used`.
pub fn fresh_variable(used: &BTreeSet<String>) -> String {
    std::iter::once("z".to_string())
        .chain((0..).map(|i| format!("z{i}")))
        .find(|c| !used.contains(c))
        .expect("unbounded supply")
}

/// The `v`-free laws `v = v + z`, `v = zv`, `v = vz` for a fresh `z`.
pub fn check_free_laws(s: &FiniteSemiring, v: &Term, budget: u64, jobs: usize) -> Result<Verdict> {
    if v.as_word().is_none() {
        return Err(Error::Precondition(format!("`{v}` is not a product of variables")));
    }
    let z = Term::var(fresh_variable(&v.variables()));
    let laws = [
        Statement::identity(v.clone(), Term::sum([v.clone(), z.clone()])),
        Statement::identity(v.clone(), Term::product([z.clone(), v.clone()])),
        Statement::identity(v.clone(), Term::product([v.clone(), z])),
    ];
    satisfies_all(s, &laws, budget, jobs)
}

/// `xy + yx = xy + yx + z = (xy + yx)z = z(xy + yx)`.
pub fn check_anticommutative(s: &FiniteSemiring, budget: u64, jobs: usize) -> Result<Verdict> {
    let laws = [
        "x*y + y*x = x*y + y*x + z",
        "x*y + y*x = (x*y + y*x)*z",
        "x*y + y*x = z*(x*y + y*x)",
    ]
    .iter()
    .map(|t| parse_statement(t))
    .collect::<Result<Vec<_>>>()?;
    satisfies_all(s, &laws, budget, jobs)
}

/// A factor of `w` that is an image of `v` under a substitution of nonempty words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    /// 1-based position where the image starts in `w`.
    pub start: usize,
    pub substitution: BTreeMap<Symbol, Vec<Symbol>>,
}

fn match_from(
    w: &[Symbol],
    pos: usize,
    v: &[Symbol],
    k: usize,
    sub: &mut BTreeMap<Symbol, Vec<Symbol>>,
) -> bool {
    if k == v.len() {
        return true;
    }
    if let Some(img) = sub.get(&v[k]).cloned() {
        let end = pos + img.len();
        return end <= w.len() && w[pos..end] == img[..] && match_from(w, end, v, k + 1, sub);
    }
    // leave room for at least one letter per remaining symbol of v
    let remaining = v.len() - k - 1;
    for end in pos + 1..=w.len().saturating_sub(remaining) {
        sub.insert(v[k].clone(), w[pos..end].to_vec());
        if match_from(w, end, v, k + 1, sub) {
            return true;
        }
        sub.remove(&v[k]);
    }
    false
}

/// `None` when `w` is `v`-free; otherwise the leftmost occurrence of an image of `v`.
pub fn is_v_free_word(w: &Word, v: &Word) -> Result<Option<Occurrence>> {
    if w.is_commutative() || v.is_commutative() {
        return Err(Error::Precondition("v-freeness is defined for noncommutative words".into()));
    }
    let (wl, vl) = (w.letters(), v.letters());
    for start in 0..wl.len() {
        let mut sub = BTreeMap::new();
        if match_from(wl, start, vl, 0, &mut sub) {
            return Ok(Some(Occurrence {
                start: start + 1,
                substitution: sub,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::word_semiring_of;

    fn w(s: &str) -> Word {
        Word::parse(s, false).unwrap()
    }

    #[test]
    fn lee_words_are_mutually_free() {
        assert!(is_v_free_word(&w("ell(4)"), &w("ell(3)")).unwrap().is_none());
        assert!(is_v_free_word(&w("ell(3)"), &w("ell(4)")).unwrap().is_none());
        let occ = is_v_free_word(&w("ell(3)"), &w("ell(3)")).unwrap().unwrap();
        assert_eq!(occ.start, 1);
        assert!(occ.substitution.values().all(|img| img.len() == 1));
    }

    #[test]
    fn squares() {
        assert!(is_v_free_word(&w("abacdc"), &w("xx")).unwrap().is_none());
        let occ = is_v_free_word(&w("abcbc"), &w("xx")).unwrap().unwrap();
        assert_eq!(occ.start, 2);
    }

    #[test]
    fn free_laws_in_small_semirings() {
        let b = crate::DEFAULT_BUDGET;
        let scab = word_semiring_of("ab", true, false).unwrap().semiring;
        assert!(check_free_laws(&scab, &Term::word(&["x", "x"]), b, 1).unwrap().holds);
        assert!(!check_anticommutative(&scab, b, 1).unwrap().holds);
        assert!(check_anticommutative(&FiniteSemiring::trivial(), b, 1).unwrap().holds);
        let l3 = word_semiring_of("ell(3)", false, false).unwrap().semiring;
        let v3 = w("ell(3)").to_term();
        assert!(!check_free_laws(&l3, &v3, b, 1).unwrap().holds);
        assert!(check_free_laws(&l3, &w("ell(4)").to_term(), b, 1).unwrap().holds);
        assert!(check_anticommutative(&l3, b, 1).unwrap().holds);
    }

    #[test]
    fn fresh_names() {
        let used: BTreeSet<String> = ["z".to_string(), "z0".to_string()].into();
        assert_eq!(fresh_variable(&used), "z1");
    }
}

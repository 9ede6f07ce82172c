use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::algebra::{check_cap, FiniteSemiring, Table};
use crate::error::{Error, Result};

/// An alphabet symbol: a base name with an optional integer index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub base: String,
    pub index: Option<i64>,
}

impl Symbol {
    pub fn new(base: &str, index: i64) -> Self {
        Symbol {
            base: base.to_string(),
            index: Some(index),
        }
    }

    pub fn plain(base: &str) -> Self {
        Symbol {
            base: base.to_string(),
            index: None,
        }
    }

    /// Splits an identifier into a base and a trailing decimal index.
    pub fn parse(ident: &str) -> Result<Self> {
        if !crate::term::is_identifier(ident) {
            return Err(Error::Parameter(format!("`{ident}` is not a valid letter")));
        }
        let cut = ident.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        if cut == ident.len() || cut == 0 {
            return Ok(Symbol::plain(ident));
        }
        let (base, digits) = ident.split_at(cut);
        match digits.parse() {
            Ok(i) => Ok(Symbol::new(base, i)),
            Err(_) => Ok(Symbol::plain(ident)),
        }
    }

    fn index_key(&self) -> (u8, i64) {
        match self.index {
            None => (0, 0),
            Some(i) if i >= 0 => (1, i),
            // negative indices sit above every positive one
            Some(i) => (2, i),
        }
    }

    /// Single character with no index; such words print without separators.
    pub fn is_single_char(&self) -> bool {
        self.index.is_none() && self.base.chars().count() == 1
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then_with(|| self.index_key().cmp(&other.index_key()))
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}{}", self.base, i),
            None => f.write_str(&self.base),
        }
    }
}

/// A nonempty word; commutative words are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Symbol>,
    commutative: bool,
}

impl Word {
    pub fn new(mut letters: Vec<Symbol>, commutative: bool) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Parameter("words must be nonempty".into()));
        }
        if commutative {
            letters.sort();
        }
        Ok(Word {
            letters,
            commutative,
        })
    }

    /// Parses CLI word syntax: a family such as `ell(4)`, space separated
    /// identifiers, or a bare run of single letters (`abacdc`).
    pub fn parse(text: &str, commutative: bool) -> Result<Self> {
        let text = text.trim();
        if text.contains('(') {
            let w = Family::parse(text)?.word()?;
            return Word::new(w.letters, commutative);
        }
        if text == "1" {
            return Err(Error::Parameter(
                "`1` is the empty word; it is added by monoid constructions".into(),
            ));
        }
        let letters = if text.split_whitespace().count() > 1 {
            text.split_whitespace()
                .map(Symbol::parse)
                .collect::<Result<Vec<_>>>()?
        } else if !text.is_empty() && text.chars().all(|c| c.is_ascii_alphabetic()) {
            text.chars().map(|c| Symbol::plain(&c.to_string())).collect()
        } else {
            vec![Symbol::parse(text)?]
        };
        Word::new(letters, commutative)
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Distinct letters in order of first occurrence.
    pub fn alphabet(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = Vec::new();
        for s in &self.letters {
            if !out.contains(s) {
                out.push(s.clone());
            }
        }
        out
    }

    /// True when no factor has the form `uu`.
    pub fn is_square_free(&self) -> bool {
        let w = &self.letters;
        (0..w.len()).all(|i| {
            (1..=(w.len() - i) / 2).all(|half| w[i..i + half] != w[i + half..i + 2 * half])
        })
    }

    /// The word as a product term over its letters.
    pub fn to_term(&self) -> crate::term::Term {
        let names: Vec<String> = self.letters.iter().map(|s| s.to_string()).collect();
        crate::term::Term::word(&names)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&spell(&self.letters, self.letters.iter().all(Symbol::is_single_char)))
    }
}

fn spell(letters: &[Symbol], compact: bool) -> String {
    if letters.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = letters.iter().map(|s| s.to_string()).collect();
    parts.join(if compact { "" } else { " " })
}

/// The word patterns used for independent systems of laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `x1 x2 x1 x3 x2 ... xn x(n-1) xn`
    Ell(usize),
    /// `Ell(n)` with the occurrences of `x_i`, `x_(i+1)` renamed to `y`/`z`.
    K(usize, usize),
    S(usize),
    P(usize),
}

impl Family {
    /// Parses `ell(4)`, `k(4,2)`, `s(2)` or `p(3)`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("unknown word family `{text}`"));
        let text = text.trim();
        let open = text.find('(').ok_or_else(bad)?;
        let inner = text[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let args = inner
            .split(',')
            .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let fam = match (&text[..open], args.as_slice()) {
            ("ell", [n]) => Family::Ell(*n),
            ("k", [n, i]) => Family::K(*n, *i),
            ("s", [n]) => Family::S(*n),
            ("p", [n]) => Family::P(*n),
            _ => return Err(bad()),
        };
        Ok(fam)
    }

    pub fn word(&self) -> Result<Word> {
        generate_pattern(*self)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Ell(n) => write!(f, "ell({n})"),
            Family::K(n, i) => write!(f, "k({n},{i})"),
            Family::S(n) => write!(f, "s({n})"),
            Family::P(n) => write!(f, "p({n})"),
        }
    }
}

fn ell_letters(n: usize) -> Vec<Symbol> {
    let x = |i: usize| Symbol::new("x", i as i64);
    let mut out = vec![x(1)];
    for i in 1..n {
        out.push(x(i + 1));
        out.push(x(i));
    }
    out.push(x(n));
    out
}

/// Expands a word family to its letter sequence.
pub fn generate_pattern(family: Family) -> Result<Word> {
    let bad = |msg: &str| Err(Error::Parameter(format!("{family}: {msg}")));
    let letters = match family {
        Family::Ell(n) => {
            if n < 2 {
                return bad("needs n >= 2");
            }
            ell_letters(n)
        }
        Family::K(n, i) => {
            if !(1 < i && i + 1 < n) {
                return bad("needs 1 < i < n-1");
            }
            let mut w = ell_letters(n);
            for (j, first, second) in [(i, "y", "z"), (i + 1, "y", "z")] {
                let target = Symbol::new("x", j as i64);
                let mut seen = 0;
                for s in w.iter_mut().filter(|s| **s == target) {
                    *s = Symbol::new(if seen == 0 { first } else { second }, j as i64);
                    seen += 1;
                }
            }
            w
        }
        Family::S(n) => {
            if n < 1 {
                return bad("needs n >= 1");
            }
            let x = |i: usize| Symbol::new("x", i as i64);
            let y = |i: usize| Symbol::new("y", i as i64);
            let mut w = vec![y(0)];
            w.extend((1..=5).map(x));
            w.push(y(0));
            for i in 1..=n {
                w.extend([y(i), x(i + 5), y(i)]);
            }
            w.push(y(n + 1));
            w.extend((n + 6..=n + 10).map(x));
            w.push(y(n + 1));
            w
        }
        Family::P(n) => {
            if n < 1 {
                return bad("needs n >= 1");
            }
            let mut w = vec![Symbol::new("x", 0); 3];
            for i in 1..=n {
                w.extend([Symbol::new("y", i as i64), Symbol::new("y", i as i64)]);
            }
            w.extend(vec![Symbol::new("x", 1); 3]);
            w
        }
    };
    Word::new(letters, false)
}

/// A word semiring together with the word behind each element (`None` is the zero).
#[derive(Clone, Debug)]
pub struct WordSemiring {
    pub semiring: FiniteSemiring,
    pub elements: Vec<Option<Vec<Symbol>>>,
    index: HashMap<Vec<Symbol>, usize>,
}

impl WordSemiring {
    pub fn element(&self, letters: &[Symbol]) -> Option<usize> {
        self.index.get(letters).copied()
    }

    pub fn letter(&self, s: &Symbol) -> Option<usize> {
        self.element(std::slice::from_ref(s))
    }

    /// Letters of the host words, in carrier order.
    pub fn letter_elements(&self) -> Vec<usize> {
        self.elements
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e, Some(w) if w.len() == 1))
            .map(|(i, _)| i)
            .collect()
    }
}

fn sub_multisets(sorted: &[Symbol]) -> Vec<Vec<Symbol>> {
    let mut groups: Vec<(Symbol, usize)> = Vec::new();
    for s in sorted {
        match groups.last_mut() {
            Some((t, c)) if t == s => *c += 1,
            _ => groups.push((s.clone(), 1)),
        }
    }
    let mut out = vec![Vec::new()];
    for (s, c) in groups {
        let mut next = Vec::new();
        for base in &out {
            for k in 0..=c {
                let mut w = base.clone();
                w.extend(std::iter::repeat(s.clone()).take(k));
                next.push(w);
            }
        }
        out = next;
    }
    out.retain(|w| !w.is_empty());
    out
}

fn shortlex(a: &Vec<Symbol>, b: &Vec<Symbol>) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// `S(W)`, `S_c(W)`, `M(W)` or `M_c(W)`: the flat semiring on the nonempty
/// factors (sub-multisets when commutative) of the words in `W` plus a zero,
/// and the empty word when `monoid` is set.
pub fn word_semiring(words: &[Word], commutative: bool, monoid: bool) -> Result<WordSemiring> {
    if words.is_empty() {
        return Err(Error::Parameter("the word set is empty".into()));
    }
    if words.iter().any(|w| w.commutative != commutative) {
        return Err(Error::Parameter("all words must share the commutativity flag".into()));
    }
    let mut count: usize = 0;
    for w in words {
        let n = w.len();
        let c = if commutative {
            let mut groups: HashMap<&Symbol, usize> = HashMap::new();
            for s in &w.letters {
                *groups.entry(s).or_default() += 1;
            }
            groups
                .values()
                .try_fold(1usize, |acc, &c| acc.checked_mul(c + 1))
                .unwrap_or(usize::MAX)
        } else {
            n * (n + 1) / 2
        };
        count = count.saturating_add(c);
    }
    // `count` overestimates the carrier; only reject sizes that cannot fit anyway.
    if count > 1 << 22 {
        return Err(Error::OrderCap {
            requested: count,
            cap: crate::ORDER_CAP,
        });
    }

    let mut factors: Vec<Vec<Symbol>> = Vec::new();
    for w in words {
        if commutative {
            factors.extend(sub_multisets(&w.letters));
        } else {
            for i in 0..w.len() {
                for j in i + 1..=w.len() {
                    factors.push(w.letters[i..j].to_vec());
                }
            }
        }
    }
    factors.sort_by(shortlex);
    factors.dedup();
    let mut elements: Vec<Option<Vec<Symbol>>> = vec![None];
    if monoid {
        elements.push(Some(Vec::new()));
    }
    elements.extend(factors.into_iter().map(Some));
    let n = elements.len();
    check_cap(n)?;

    let index: HashMap<Vec<Symbol>, usize> = elements
        .iter()
        .enumerate()
        .filter_map(|(i, e)| e.clone().map(|w| (w, i)))
        .collect();
    let compact = words
        .iter()
        .all(|w| w.letters.iter().all(Symbol::is_single_char));
    let labels: Vec<String> = elements
        .iter()
        .map(|e| match e {
            None => "0".to_string(),
            Some(w) => spell(w, compact),
        })
        .collect();
    let mul = Table::from_fn(n, |a, b| match (&elements[a], &elements[b]) {
        (Some(u), Some(v)) => {
            let mut uv = u.clone();
            uv.extend(v.iter().cloned());
            if commutative {
                uv.sort();
            }
            index.get(&uv).copied().unwrap_or(0)
        }
        _ => 0,
    });
    let semiring = FiniteSemiring::flat(mul, Some(labels))?;
    Ok(WordSemiring {
        semiring,
        elements,
        index,
    })
}

/// Parses and builds the word semiring of a single word given in CLI syntax.
pub fn word_semiring_of(text: &str, commutative: bool, monoid: bool) -> Result<WordSemiring> {
    word_semiring(&[Word::parse(text, commutative)?], commutative, monoid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, false).unwrap()
    }

    #[test]
    fn symbol_order_puts_negatives_last() {
        let mut v = vec![Symbol::new("x", -1), Symbol::new("x", 3), Symbol::new("x", -4), Symbol::new("x", 1)];
        v.sort();
        let idx: Vec<i64> = v.iter().map(|s| s.index.unwrap()).collect();
        assert_eq!(idx, vec![1, 3, -4, -1]);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(w("abacdc").len(), 6);
        assert_eq!(w("x1 x2 x1").letters()[1], Symbol::new("x", 2));
        assert_eq!(w("ell(3)").to_string(), "x1 x2 x1 x3 x2 x3");
        assert!(Word::parse("1", false).is_err());
        assert!(Family::parse("q(3)").is_err());
        assert_eq!(Family::parse("k(4,2)").unwrap(), Family::K(4, 2));
    }

    #[test]
    fn families() {
        assert_eq!(w("ell(4)").len(), 8);
        assert_eq!(w("p(1)").to_string(), "x0 x0 x0 y1 y1 x1 x1 x1");
        assert_eq!(
            w("s(1)").to_string(),
            "y0 x1 x2 x3 x4 x5 y0 y1 x6 y1 y2 x7 x8 x9 x10 x11 y2"
        );
        assert_eq!(w("k(4,2)").to_string(), "x1 y2 x1 y3 z2 x4 z3 x4");
        assert!(generate_pattern(Family::K(4, 3)).is_err());
        assert!(generate_pattern(Family::Ell(1)).is_err());
    }

    #[test]
    fn square_freeness() {
        assert!(w("abacdc").is_square_free());
        assert!(!w("ell(2)").is_square_free());
        assert!(!w("abab").is_square_free());
    }

    #[test]
    fn small_word_semirings() {
        let sc_ab = word_semiring_of("ab", true, false).unwrap();
        assert_eq!(sc_ab.semiring.order(), 4);
        let sc_abc = word_semiring_of("abc", true, false).unwrap();
        assert_eq!(sc_abc.semiring.order(), 8);
        let ma = word_semiring_of("a", false, true).unwrap();
        assert_eq!(ma.semiring.order(), 3);
        let a = ma.element(&[Symbol::plain("a")]).unwrap();
        assert_eq!(ma.semiring.mul(a, a), 0);
        assert_eq!(ma.semiring.one(), Some(1));
        let l3 = word_semiring_of("ell(3)", false, false).unwrap();
        assert_eq!(l3.semiring.order(), 19);
    }

    #[test]
    fn commutative_product_is_multiset_union() {
        let s = word_semiring_of("ab", true, false).unwrap();
        let a = s.element(&[Symbol::plain("a")]).unwrap();
        let b = s.element(&[Symbol::plain("b")]).unwrap();
        let ab = s.element(&[Symbol::plain("a"), Symbol::plain("b")]).unwrap();
        assert_eq!(s.semiring.mul(b, a), ab);
        assert_eq!(s.semiring.mul(a, ab), 0);
    }
}

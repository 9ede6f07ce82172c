use std::fmt;

use super::morphism::closure;
use super::{check_cap, Structure, Table, TableAlgebra};
use crate::error::{Error, Result};

/// A finite group given by its Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mul: Table,
    identity: usize,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
    generators: Vec<(String, usize)>,
}

/// Validates a Cayley table: identity, inverses, associativity.
pub fn validate_group(mul: &[Vec<usize>]) -> Result<FiniteGroup> {
    let table = Table::from_rows(mul)?;
    FiniteGroup::new(table, None)
}

impl FiniteGroup {
    pub fn new(mul: Table, labels: Option<Vec<String>>) -> Result<Self> {
        check_cap(mul.order())?;
        let n = mul.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul.get(mul.get(a, b), c) != mul.get(a, mul.get(b, c)) {
                        return Err(Error::Invalid(format!(
                            "multiplication is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Self::from_associative(mul, labels)
    }

    /// Locates identity and inverses; associativity is assumed (checked in debug builds).
    pub(crate) fn from_associative(mul: Table, labels: Option<Vec<String>>) -> Result<Self> {
        check_cap(mul.order())?;
        let n = mul.order();
        debug_assert!((0..n).all(|a| (0..n)
            .all(|b| (0..n).all(|c| mul.get(mul.get(a, b), c) == mul.get(a, mul.get(b, c))))));
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul.get(e, x) == x && mul.get(x, e) == x))
            .ok_or_else(|| Error::Invalid("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| mul.get(x, y) == identity && mul.get(y, x) == identity)
                .ok_or_else(|| Error::Invalid(format!("element {x} has no inverse")))?;
            inverse.push(inv);
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::Dimension(format!("{} labels for {n} elements", l.len())));
            }
        }
        Ok(FiniteGroup {
            mul,
            identity,
            inverse,
            labels,
            generators: Vec::new(),
        })
    }

    pub fn with_generators(mut self, gens: Vec<(String, usize)>) -> Self {
        self.generators = gens;
        self
    }

    /// Named generators recorded by the constructor (empty for loaded groups).
    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    /// The element recorded under a generator name.
    pub fn gen(&self, name: &str) -> usize {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, x)| x)
            .unwrap_or_else(|| panic!("group has no generator named `{name}`"))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.get(a, b)
    }

    pub fn order(&self) -> usize {
        self.mul.order()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn mul_table(&self) -> &Table {
        &self.mul
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn pow(&self, x: usize, mut k: u64) -> usize {
        let (mut base, mut acc) = (x, self.identity);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Product of `x^k` over the listed factors, left to right; negative
    /// exponents use inverses.
    pub fn eval_word(&self, factors: &[(usize, i64)]) -> usize {
        factors.iter().fold(self.identity, |acc, &(x, k)| {
            let base = if k < 0 { self.inv(x) } else { x };
            self.mul(acc, self.pow(base, k.unsigned_abs()))
        })
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// `[x, y] = x^-1 y^-1 x y`.
pub fn commutator(g: &FiniteGroup, x: usize, y: usize) -> usize {
    g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y))
}

/// Least common multiple of the element orders.
pub fn group_exponent(g: &FiniteGroup) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (0..g.order()).fold(1, |acc, x| {
        let o = g.element_order(x);
        acc / gcd(acc, o) * o
    })
}

/// Outcome of [`is_minimal_nonabelian`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimalNonabelian {
    pub holds: bool,
    /// A non-commuting pair generating a proper subgroup, when one exists.
    pub witness: Option<(usize, usize)>,
}

/// Nonabelian with every proper subgroup abelian. A proper nonabelian subgroup
/// contains a non-commuting pair, and that pair generates a proper subgroup, so
/// it suffices to close every non-commuting pair.
pub fn is_minimal_nonabelian(g: &FiniteGroup) -> MinimalNonabelian {
    let n = g.order();
    let mut nonabelian = false;
    for x in 0..n {
        for y in x + 1..n {
            if g.mul(x, y) == g.mul(y, x) {
                continue;
            }
            nonabelian = true;
            if closure(g, &[x, y]).len() < n {
                return MinimalNonabelian {
                    holds: false,
                    witness: Some((x, y)),
                };
            }
        }
    }
    MinimalNonabelian {
        holds: nonabelian,
        witness: None,
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("identity", &self.identity)
            .field("mul", &self.mul)
            .field("generators", &self.generators)
            .finish()
    }
}

impl Structure for FiniteGroup {
    fn order(&self) -> usize {
        self.mul.order()
    }
    fn binary_count(&self) -> usize {
        1
    }
    fn binary(&self, _op: usize, a: usize, b: usize) -> usize {
        self.mul(a, b)
    }
    fn unary_count(&self) -> usize {
        1
    }
    fn unary(&self, _op: usize, a: usize) -> usize {
        self.inverse[a]
    }
    fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }
}

impl TableAlgebra for FiniteGroup {
    fn induced_from<S: Structure>(s: &S, elems: &[usize]) -> Result<Self> {
        check_cap(elems.len())?;
        let index = super::morphism::index_of(s.order(), elems);
        let mul = Table::from_fn(elems.len(), |a, b| index[s.binary(0, elems[a], elems[b])]);
        let labels = elems.iter().map(|&e| s.label(e)).collect();
        Self::from_associative(mul, Some(labels))
    }

    fn profiles(&self) -> Vec<Vec<u64>> {
        let n = self.order();
        (0..n)
            .map(|x| {
                let centralizer = (0..n).filter(|&y| self.mul(x, y) == self.mul(y, x)).count();
                let square_roots = (0..n).filter(|&y| self.mul(y, y) == x).count();
                vec![self.element_order(x), centralizer as u64, square_roots as u64]
            })
            .collect()
    }

    fn kind_name(&self) -> &'static str {
        "group"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_rows(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    #[test]
    fn z4_is_a_group() {
        let g = validate_group(&cyclic_rows(4)).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 3);
        assert_eq!(group_exponent(&g), 4);
        assert!(!is_minimal_nonabelian(&g).holds);
    }

    #[test]
    fn left_zero_semigroup_has_no_identity() {
        let rows: Vec<Vec<usize>> = (0..3).map(|a| vec![a; 3]).collect();
        match validate_group(&rows) {
            Err(Error::Invalid(msg)) => assert!(msg.contains("identity")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_inverse() {
        // {0, 1} under multiplication of {1, 0} as a monoid: 1 is identity... use max.
        let rows = vec![vec![0, 1], vec![1, 1]];
        match validate_group(&rows) {
            Err(Error::Invalid(msg)) => assert!(msg.contains("inverse"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn z6_exponent() {
        let g = validate_group(&cyclic_rows(6)).unwrap();
        assert_eq!(group_exponent(&g), 6);
        assert_eq!(g.pow(1, 6), 0);
        assert_eq!(g.eval_word(&[(1, 2), (1, -3)]), 5);
    }
}

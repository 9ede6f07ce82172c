use super::{FiniteSemiring, Structure, Table};
use crate::error::{Error, Result};

/// A partition of the carrier, stored as block indices numbered by first appearance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl Congruence {
    pub fn from_blocks(raw: &[usize]) -> Self {
        let mut renum = std::collections::HashMap::new();
        let blocks = raw
            .iter()
            .map(|b| {
                let next = renum.len();
                *renum.entry(*b).or_insert(next)
            })
            .collect();
        Congruence { blocks }
    }

    pub fn identity(n: usize) -> Self {
        Congruence {
            blocks: (0..n).collect(),
        }
    }

    /// Rees congruence of an ideal: the ideal is one block, everything else singleton.
    pub fn rees(n: usize, ideal: &[usize]) -> Self {
        let rep = ideal.iter().copied().min().unwrap_or(0);
        let mut raw: Vec<usize> = (0..n).collect();
        for &i in ideal {
            raw[i] = rep;
        }
        Self::from_blocks(&raw)
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.iter().max().map_or(0, |m| m + 1)
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.blocks[x] == self.blocks[y]
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.blocks.len()
    }

    pub fn is_full(&self) -> bool {
        self.block_count() <= 1
    }

    /// Classes as sorted element lists, ordered by least element.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.blocks.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// Every pair related here is related in `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        let n = self.blocks.len();
        let mut rep = vec![usize::MAX; self.block_count()];
        for x in 0..n {
            let b = self.blocks[x];
            if rep[b] == usize::MAX {
                rep[b] = x;
            } else if !other.related(rep[b], x) {
                return false;
            }
        }
        true
    }

    /// Checks compatibility with every operation exhaustively.
    pub fn is_compatible<S: Structure>(&self, a: &S) -> bool {
        let n = a.order();
        let classes = self.classes();
        classes.iter().all(|cls| {
            cls.windows(2).all(|w| {
                let (u, v) = (w[0], w[1]);
                (0..a.unary_count()).all(|op| self.related(a.unary(op, u), a.unary(op, v)))
                    && (0..a.binary_count()).all(|op| {
                        (0..n).all(|c| {
                            self.related(a.binary(op, u, c), a.binary(op, v, c))
                                && self.related(a.binary(op, c, u), a.binary(op, c, v))
                        })
                    })
            })
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// The least congruence relating `x` and `y`.
///
/// Every pair that gets merged is pushed through all basic translations
/// `op(-, c)`, `op(c, -)` and unary operations until nothing new merges.
pub fn principal_congruence<S: Structure + ?Sized>(a: &S, x: usize, y: usize) -> Congruence {
    let n = a.order();
    let mut uf = UnionFind::new(n);
    let mut work = Vec::new();
    if uf.union(x, y) {
        work.push((x, y));
    }
    while let Some((u, v)) = work.pop() {
        for op in 0..a.unary_count() {
            let (p, q) = (a.unary(op, u), a.unary(op, v));
            if uf.union(p, q) {
                work.push((p, q));
            }
        }
        for op in 0..a.binary_count() {
            for c in 0..n {
                for (p, q) in [
                    (a.binary(op, u, c), a.binary(op, v, c)),
                    (a.binary(op, c, u), a.binary(op, c, v)),
                ] {
                    if uf.union(p, q) {
                        work.push((p, q));
                    }
                }
            }
        }
    }
    let raw: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
    Congruence::from_blocks(&raw)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiVerdict {
    pub si: bool,
    /// Least nontrivial congruence, when the algebra is subdirectly irreducible.
    pub monolith: Option<Congruence>,
    /// Two distinct minimal nontrivial congruences (meeting in the identity) otherwise.
    pub witness: Option<(Congruence, Congruence)>,
}

/// Subdirect irreducibility via principal congruences: the algebra is SI iff
/// exactly one principal congruence is minimal among the nontrivial ones.
///
/// For flat semirings the verdict is recomputed from multiplicative ideals and
/// the two answers must agree.
pub fn subdirectly_irreducible<S: Structure + ?Sized>(a: &S) -> Result<SiVerdict> {
    let n = a.order();
    if n < 2 {
        return Err(Error::Precondition(
            "subdirect irreducibility needs at least two elements".into(),
        ));
    }
    let mut principal: Vec<Congruence> = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let c = principal_congruence(a, x, y);
            if !principal.contains(&c) {
                principal.push(c);
            }
        }
    }
    let minimal: Vec<&Congruence> = principal
        .iter()
        .filter(|c| !principal.iter().any(|d| d != *c && d.refines(c)))
        .collect();
    let verdict = if minimal.len() == 1 {
        SiVerdict {
            si: true,
            monolith: Some(minimal[0].clone()),
            witness: None,
        }
    } else {
        SiVerdict {
            si: false,
            monolith: None,
            witness: Some((minimal[0].clone(), minimal[1].clone())),
        }
    };
    if let Some(s) = a.as_flat_semiring() {
        let by_ideals = multiplicative_ideals(s)?.len() == 1;
        if by_ideals != verdict.si {
            return Err(Error::Construction(format!(
                "congruence and ideal criteria disagree on subdirect irreducibility \
                 (congruences: {}, ideals: {by_ideals})",
                verdict.si
            )));
        }
    }
    Ok(verdict)
}

/// Ideal generated by `x` together with the zero.
fn principal_ideal(s: &FiniteSemiring, zero: usize, x: usize) -> Vec<usize> {
    let n = s.order();
    let mut inside = vec![false; n];
    let mut elems = vec![zero];
    inside[zero] = true;
    if !inside[x] {
        inside[x] = true;
        elems.push(x);
    }
    let mut i = 0;
    while i < elems.len() {
        let u = elems[i];
        i += 1;
        for c in 0..n {
            for p in [s.mul(u, c), s.mul(c, u)] {
                if !inside[p] {
                    inside[p] = true;
                    elems.push(p);
                }
            }
        }
    }
    elems.sort_unstable();
    elems
}

/// The 0-minimal multiplicative ideals of a flat semiring, each sorted, the
/// list ordered lexicographically.
pub fn multiplicative_ideals(s: &FiniteSemiring) -> Result<Vec<Vec<usize>>> {
    if !s.is_flat() {
        return Err(Error::Precondition("multiplicative ideals need a flat semiring".into()));
    }
    let zero = s.zero().expect("flat semirings have a zero");
    let mut ideals: Vec<Vec<usize>> = Vec::new();
    for x in (0..s.order()).filter(|&x| x != zero) {
        let j = principal_ideal(s, zero, x);
        if !ideals.contains(&j) {
            ideals.push(j);
        }
    }
    let subset = |a: &Vec<usize>, b: &Vec<usize>| a.iter().all(|x| b.binary_search(x).is_ok());
    let mut minimal: Vec<Vec<usize>> = ideals
        .iter()
        .filter(|j| !ideals.iter().any(|k| k != *j && subset(k, j)))
        .cloned()
        .collect();
    minimal.sort();
    Ok(minimal)
}

/// Collapses the ideal `ideal` to a single element, placed first; the other
/// elements keep their relative order.
pub fn rees_quotient(s: &FiniteSemiring, ideal: &[usize]) -> Result<FiniteSemiring> {
    let n = s.order();
    let zero = s
        .zero()
        .ok_or_else(|| Error::Precondition("the semiring has no zero".into()))?;
    let mut inside = vec![false; n];
    for &i in ideal {
        if i >= n {
            return Err(Error::Precondition(format!("{i} is outside the carrier")));
        }
        inside[i] = true;
    }
    if !inside[zero] {
        return Err(Error::Precondition("the ideal must contain the zero".into()));
    }
    for i in (0..n).filter(|&i| inside[i]) {
        for x in 0..n {
            if !inside[s.mul(i, x)] || !inside[s.mul(x, i)] {
                return Err(Error::Precondition(format!(
                    "not an ideal: product of {} and {} leaves it",
                    s.label(i),
                    s.label(x)
                )));
            }
            if !inside[s.add(x, i)] {
                return Err(Error::Precondition(format!(
                    "{} + {} leaves the ideal",
                    s.label(x),
                    s.label(i)
                )));
            }
        }
    }
    let mut elems = vec![zero];
    elems.extend((0..n).filter(|&x| !inside[x]));
    let class = |x: usize| -> usize {
        if inside[x] {
            0
        } else {
            elems[1..].binary_search(&x).expect("outside the ideal") + 1
        }
    };
    let m = elems.len();
    let add = Table::from_fn(m, |a, b| class(s.add(elems[a], elems[b])));
    let mul = Table::from_fn(m, |a, b| class(s.mul(elems[a], elems[b])));
    let labels = elems.iter().map(|&e| s.label(e)).collect();
    FiniteSemiring::from_tables(add, mul, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_product, Algebra};

    fn s_a() -> FiniteSemiring {
        FiniteSemiring::flat(Table::from_fn(2, |_, _| 0), None).unwrap()
    }

    #[test]
    fn trivial_pairs() {
        let s = s_a();
        assert!(principal_congruence(&s, 1, 1).is_identity());
        assert!(principal_congruence(&s, 0, 1).is_full());
    }

    #[test]
    fn product_of_two_copies_is_not_si() {
        let p = direct_product(&[Algebra::from(s_a()), Algebra::from(s_a())]).unwrap();
        let v = subdirectly_irreducible(&p).unwrap();
        assert!(!v.si);
        let (c, d) = v.witness.unwrap();
        assert_ne!(c, d);
        assert!(c.is_compatible(&p) && d.is_compatible(&p));
    }

    #[test]
    fn rees_by_zero_is_identity() {
        let s = s_a();
        let q = rees_quotient(&s, &[0]).unwrap();
        assert_eq!(q.add_table(), s.add_table());
        assert_eq!(q.mul_table(), s.mul_table());
    }

    #[test]
    fn rees_rejects_non_ideal() {
        let m1 = FiniteSemiring::flat(Table::from_fn(3, |a, b| if a == 0 || b == 0 { 0 } else { (a + b - 2) % 2 + 1 }), None)
            .unwrap();
        assert!(matches!(rees_quotient(&m1, &[0, 1]), Err(Error::Precondition(_))));
    }
}

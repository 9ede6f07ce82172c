//! Table-based finite algebras.

mod congruence;
mod group;
mod iso;
mod morphism;
mod semiring;

use std::fmt;

pub use congruence::{
    multiplicative_ideals, principal_congruence, rees_quotient, subdirectly_irreducible,
    Congruence, SiVerdict,
};
pub use group::{
    commutator, group_exponent, is_minimal_nonabelian, validate_group, FiniteGroup, MinimalNonabelian,
};
pub use iso::{is_isomorphic, is_isomorphic_with_jobs};
pub use morphism::{
    closure, direct_product, hom_from_generator_images, induced, product_subalgebra,
    product_subalgebra_tuples,
    projection, subalgebra_closure, Morphism,
};
pub use semiring::{validate_semiring, FiniteSemiring, ValidationReport, Violation};

use crate::error::{Error, Result};
use crate::ORDER_CAP;

/// A square operation table over `0..n`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Table {
    n: usize,
    data: Vec<u16>,
}

impl Table {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Table {
        let mut data = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = f(a, b);
                debug_assert!(v < n);
                data.push(v as u16);
            }
        }
        Table { n, data }
    }

    /// Builds a table from rows, checking shape and range.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Table> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Dimension("empty table".into()));
        }
        if n > ORDER_CAP {
            return Err(Error::OrderCap {
                requested: n,
                cap: ORDER_CAP,
            });
        }
        let mut data = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::OutOfRange {
                        row: r,
                        col: c,
                        value: v,
                        order: n,
                    });
                }
                data.push(v as u16);
            }
        }
        Ok(Table { n, data })
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.data[a * self.n + b] as usize
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.data
            .chunks(self.n)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.data.iter().map(|&v| v as usize)
    }
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Anything with a finite carrier `0..order()` and finitely many basic operations.
pub trait Structure {
    fn order(&self) -> usize;
    fn binary_count(&self) -> usize;
    fn binary(&self, op: usize, a: usize, b: usize) -> usize;
    fn unary_count(&self) -> usize {
        0
    }
    fn unary(&self, _op: usize, _a: usize) -> usize {
        unreachable!("structure has no unary operations")
    }
    fn label(&self, x: usize) -> String {
        x.to_string()
    }
    /// The semiring itself when this structure is a flat semiring.
    fn as_flat_semiring(&self) -> Option<&FiniteSemiring> {
        None
    }
}

/// Table algebras that can be rebuilt from a subset of a structure of the same signature.
pub trait TableAlgebra: Structure + Clone + Sized {
    /// The algebra induced on `elems` (which must be closed), in the given order.
    fn induced_from<S: Structure>(s: &S, elems: &[usize]) -> Result<Self>;

    /// Per-element isomorphism invariants.
    fn profiles(&self) -> Vec<Vec<u64>>;

    fn kind_name(&self) -> &'static str;
}

/// A direct product evaluated on the fly; elements are mixed-radix indices with
/// the first factor most significant.
pub struct ProductView<'a, T: Structure> {
    factors: Vec<&'a T>,
    order: usize,
}

impl<'a, T: Structure> ProductView<'a, T> {
    pub fn new(factors: Vec<&'a T>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Precondition("product of an empty list".into()));
        }
        let mut order: usize = 1;
        for f in &factors {
            order = order.checked_mul(f.order()).ok_or(Error::OrderCap {
                requested: usize::MAX,
                cap: ORDER_CAP,
            })?;
        }
        Ok(ProductView { factors, order })
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, f)| acc * f.order() + c)
    }

    pub fn decode(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (i, f) in self.factors.iter().enumerate().rev() {
            out[i] = x % f.order();
            x /= f.order();
        }
        out
    }

    pub fn factors(&self) -> &[&'a T] {
        &self.factors
    }
}

impl<T: Structure> Structure for ProductView<'_, T> {
    fn order(&self) -> usize {
        self.order
    }
    fn binary_count(&self) -> usize {
        self.factors[0].binary_count()
    }
    fn binary(&self, op: usize, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.decode(a), self.decode(b));
        let out: Vec<usize> = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| f.binary(op, ca[i], cb[i]))
            .collect();
        self.encode(&out)
    }
    fn unary_count(&self) -> usize {
        self.factors[0].unary_count()
    }
    fn unary(&self, op: usize, a: usize) -> usize {
        let ca = self.decode(a);
        let out: Vec<usize> = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| f.unary(op, ca[i]))
            .collect();
        self.encode(&out)
    }
    fn label(&self, x: usize) -> String {
        let parts: Vec<String> = self
            .decode(x)
            .iter()
            .zip(&self.factors)
            .map(|(&c, f)| f.label(c))
            .collect();
        format!("({})", parts.join(","))
    }
}

/// Either kind of algebra, as read from or written to disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    Semiring(FiniteSemiring),
    Group(FiniteGroup),
}

impl Algebra {
    pub fn kind(&self) -> &'static str {
        match self {
            Algebra::Semiring(_) => "semiring",
            Algebra::Group(_) => "group",
        }
    }

    pub fn as_semiring(&self) -> Option<&FiniteSemiring> {
        match self {
            Algebra::Semiring(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_group(&self) -> Option<&FiniteGroup> {
        match self {
            Algebra::Group(g) => Some(g),
            _ => None,
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        match self {
            Algebra::Semiring(s) => s.labels(),
            Algebra::Group(g) => g.labels(),
        }
    }
}

impl From<FiniteSemiring> for Algebra {
    fn from(s: FiniteSemiring) -> Self {
        Algebra::Semiring(s)
    }
}

impl From<FiniteGroup> for Algebra {
    fn from(g: FiniteGroup) -> Self {
        Algebra::Group(g)
    }
}

impl Structure for Algebra {
    fn order(&self) -> usize {
        match self {
            Algebra::Semiring(s) => s.order(),
            Algebra::Group(g) => Structure::order(g),
        }
    }
    fn binary_count(&self) -> usize {
        match self {
            Algebra::Semiring(s) => s.binary_count(),
            Algebra::Group(g) => g.binary_count(),
        }
    }
    fn binary(&self, op: usize, a: usize, b: usize) -> usize {
        match self {
            Algebra::Semiring(s) => s.binary(op, a, b),
            Algebra::Group(g) => g.binary(op, a, b),
        }
    }
    fn unary_count(&self) -> usize {
        match self {
            Algebra::Semiring(s) => s.unary_count(),
            Algebra::Group(g) => g.unary_count(),
        }
    }
    fn unary(&self, op: usize, a: usize) -> usize {
        match self {
            Algebra::Semiring(s) => s.unary(op, a),
            Algebra::Group(g) => g.unary(op, a),
        }
    }
    fn label(&self, x: usize) -> String {
        match self {
            Algebra::Semiring(s) => s.label(x),
            Algebra::Group(g) => g.label(x),
        }
    }
    fn as_flat_semiring(&self) -> Option<&FiniteSemiring> {
        match self {
            Algebra::Semiring(s) => s.as_flat_semiring(),
            Algebra::Group(_) => None,
        }
    }
}

pub(crate) fn check_cap(n: usize) -> Result<()> {
    if n > ORDER_CAP {
        Err(Error::OrderCap {
            requested: n,
            cap: ORDER_CAP,
        })
    } else {
        Ok(())
    }
}

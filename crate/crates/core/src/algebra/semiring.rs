use std::fmt;

use super::{check_cap, Structure, Table, TableAlgebra};
use crate::error::{Error, Result};

/// A finite semiring given by its addition and multiplication tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemiring {
    add: Table,
    mul: Table,
    labels: Option<Vec<String>>,
    is_ai: bool,
    is_flat: bool,
    zero: Option<usize>,
}

/// One violated axiom together with the elements witnessing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.axiom, self.witness)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub is_ai: bool,
    pub is_flat: bool,
    pub zero: Option<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(
                f,
                "valid semiring (ai: {}, flat: {}, zero: {:?})",
                self.is_ai, self.is_flat, self.zero
            );
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn first_triple(n: usize, bad: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if bad(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

fn multiplicative_zero(mul: &Table) -> Option<usize> {
    let n = mul.order();
    (0..n).find(|&z| (0..n).all(|x| mul.get(z, x) == z && mul.get(x, z) == z))
}

fn flags(add: &Table, mul: &Table) -> (bool, bool, Option<usize>) {
    let n = add.order();
    let is_ai = (0..n).all(|a| add.get(a, a) == a);
    let zero = multiplicative_zero(mul);
    let is_flat = is_ai
        && zero.is_some_and(|z| {
            (0..n).all(|a| (0..n).all(|b| a == b || add.get(a, b) == z))
        });
    (is_ai, is_flat, zero)
}

fn check_tables(add: &Table, mul: &Table) -> Vec<Violation> {
    let n = add.order();
    let (a, m) = (add, mul);
    let mut out = Vec::new();
    let mut record = |axiom, w: Option<Vec<usize>>| {
        if let Some(witness) = w {
            out.push(Violation { axiom, witness });
        }
    };
    record(
        "addition is commutative",
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| a.get(x, y) != a.get(y, x))
            .map(|(x, y)| vec![x, y]),
    );
    record(
        "addition is associative",
        first_triple(n, |x, y, z| a.get(a.get(x, y), z) != a.get(x, a.get(y, z))),
    );
    record(
        "multiplication is associative",
        first_triple(n, |x, y, z| m.get(m.get(x, y), z) != m.get(x, m.get(y, z))),
    );
    record(
        "x(y+z) = xy+xz",
        first_triple(n, |x, y, z| m.get(x, a.get(y, z)) != a.get(m.get(x, y), m.get(x, z))),
    );
    record(
        "(x+y)z = xz+yz",
        first_triple(n, |x, y, z| m.get(a.get(x, y), z) != a.get(m.get(x, z), m.get(y, z))),
    );
    out
}

/// Checks every semiring axiom on the given tables.
///
/// Shape problems are errors; axiom failures are listed in the report, one
/// witness per violated axiom.
pub fn validate_semiring(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<ValidationReport> {
    if add.len() != mul.len() {
        return Err(Error::Dimension(format!(
            "addition table has {} rows, multiplication table has {}",
            add.len(),
            mul.len()
        )));
    }
    let add = Table::from_rows(add)?;
    let mul = Table::from_rows(mul)?;
    Ok(report_for(&add, &mul))
}

fn report_for(add: &Table, mul: &Table) -> ValidationReport {
    let violations = check_tables(add, mul);
    let (is_ai, is_flat, zero) = flags(add, mul);
    ValidationReport {
        violations,
        is_ai,
        is_flat,
        zero,
    }
}

impl FiniteSemiring {
    /// Validates the tables and builds the semiring.
    pub fn new(add: Table, mul: Table, labels: Option<Vec<String>>) -> Result<Self> {
        if add.order() != mul.order() {
            return Err(Error::Dimension(format!(
                "addition table is {0}x{0}, multiplication table is {1}x{1}",
                add.order(),
                mul.order()
            )));
        }
        check_cap(add.order())?;
        let report = report_for(&add, &mul);
        if !report.is_valid() {
            return Err(Error::Invalid(report.to_string()));
        }
        Self::with_labels(add, mul, labels)
    }

    /// Builds the semiring computing flags only; the full axiom check runs in
    /// debug builds. For constructors whose output is valid by construction.
    pub fn from_tables(add: Table, mul: Table, labels: Option<Vec<String>>) -> Result<Self> {
        check_cap(add.order())?;
        debug_assert!(
            check_tables(&add, &mul).is_empty(),
            "constructed tables violate the semiring axioms: {:?}",
            check_tables(&add, &mul)
        );
        Self::with_labels(add, mul, labels)
    }

    fn with_labels(add: Table, mul: Table, labels: Option<Vec<String>>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != add.order() {
                return Err(Error::Dimension(format!(
                    "{} labels for {} elements",
                    l.len(),
                    add.order()
                )));
            }
        }
        let (is_ai, is_flat, zero) = flags(&add, &mul);
        Ok(FiniteSemiring {
            add,
            mul,
            labels,
            is_ai,
            is_flat,
            zero,
        })
    }

    /// The flat semiring on `0..n` with element 0 as zero and the given products.
    pub fn flat(mul: Table, labels: Option<Vec<String>>) -> Result<Self> {
        let n = mul.order();
        let add = Table::from_fn(n, |a, b| if a == b { a } else { 0 });
        Self::from_tables(add, mul, labels)
    }

    pub fn trivial() -> Self {
        Self::from_tables(Table::from_fn(1, |_, _| 0), Table::from_fn(1, |_, _| 0), None)
            .expect("one-element semiring")
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.get(a, b)
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn add_table(&self) -> &Table {
        &self.add
    }

    pub fn mul_table(&self) -> &Table {
        &self.mul
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) {
        if let Some(l) = &labels {
            assert_eq!(l.len(), self.order());
        }
        self.labels = labels;
    }

    /// Index of the element with the given label.
    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn is_ai(&self) -> bool {
        self.is_ai
    }

    pub fn is_flat(&self) -> bool {
        self.is_flat
    }

    /// The multiplicative zero, if any.
    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    /// Element absorbing for addition, if any (the zero of a flat semiring).
    pub fn additive_top(&self) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&t| (0..n).all(|x| self.add(t, x) == t))
    }

    /// Multiplicative identity, if any.
    pub fn one(&self) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&e| (0..n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Full axiom check.
    pub fn validate(&self) -> ValidationReport {
        report_for(&self.add, &self.mul)
    }

    /// `ab = ac != 0` implies `b = c`, and dually.
    pub fn is_zero_cancellative(&self) -> bool {
        let Some(z) = self.zero else { return false };
        let n = self.order();
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                let r = self.mul(a, b);
                if r != z {
                    if row[r] {
                        return false;
                    }
                    row[r] = true;
                }
                let c = self.mul(b, a);
                if c != z {
                    if col[c] {
                        return false;
                    }
                    col[c] = true;
                }
            }
        }
        true
    }
}

impl fmt::Debug for FiniteSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemiring")
            .field("order", &self.order())
            .field("add", &self.add)
            .field("mul", &self.mul)
            .field("labels", &self.labels)
            .finish()
    }
}

impl Structure for FiniteSemiring {
    fn order(&self) -> usize {
        self.add.order()
    }
    fn binary_count(&self) -> usize {
        2
    }
    fn binary(&self, op: usize, a: usize, b: usize) -> usize {
        if op == 0 {
            self.add(a, b)
        } else {
            self.mul(a, b)
        }
    }
    fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }
    fn as_flat_semiring(&self) -> Option<&FiniteSemiring> {
        self.is_flat.then_some(self)
    }
}

impl TableAlgebra for FiniteSemiring {
    fn induced_from<S: Structure>(s: &S, elems: &[usize]) -> Result<Self> {
        check_cap(elems.len())?;
        let index = super::morphism::index_of(s.order(), elems);
        let add = Table::from_fn(elems.len(), |a, b| index[s.binary(0, elems[a], elems[b])]);
        let mul = Table::from_fn(elems.len(), |a, b| index[s.binary(1, elems[a], elems[b])]);
        let labels = elems.iter().map(|&e| s.label(e)).collect();
        Self::from_tables(add, mul, Some(labels))
    }

    fn profiles(&self) -> Vec<Vec<u64>> {
        let n = self.order();
        let zero = self.zero;
        let mut as_product = vec![0u64; n];
        for a in 0..n {
            for b in 0..n {
                as_product[self.mul(a, b)] += 1;
            }
        }
        (0..n)
            .map(|x| {
                let row_zero = (0..n).filter(|&y| Some(self.mul(x, y)) == zero).count();
                let col_zero = (0..n).filter(|&y| Some(self.mul(y, x)) == zero).count();
                let below = (0..n).filter(|&y| self.add(x, y) == x).count();
                let sq = self.mul(x, x);
                vec![
                    (sq == x) as u64,
                    (Some(sq) == zero) as u64,
                    (self.add(x, x) == x) as u64,
                    row_zero as u64,
                    col_zero as u64,
                    below as u64,
                    as_product[x],
                ]
            })
            .collect()
    }

    fn kind_name(&self) -> &'static str {
        "semiring"
    }
}

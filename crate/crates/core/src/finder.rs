//! Finite model search for ai-semirings, flat ones in particular.
//!
//! Tables are filled cell by cell in row-major order with values ascending, so
//! completed models come out in lexicographic order of their tables. After
//! every assignment the associative and distributive laws (and, for flat
//! models, 0-cancellativity) are checked on all triples whose products are
//! already known. A completed model is kept only if its tables are the least
//! among all relabellings, which leaves exactly one representative per
//! isomorphism class.

use rayon::prelude::*;

use crate::algebra::{
    is_isomorphic, multiplicative_ideals, subdirectly_irreducible, FiniteSemiring, Table,
};
use crate::error::{Error, Result};
use crate::satisfaction::satisfies;
use crate::term::Statement;

/// Largest order accepted for flat searches.
pub const MAX_FLAT_ORDER: usize = 12;
/// Largest order accepted for unrestricted ai-semiring searches.
pub const MAX_AI_ORDER: usize = 6;
/// Above this order canonical forms are skipped and completed models are
/// compared against the representatives kept so far instead.
pub const CANONICAL_ORDER: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub order: usize,
    pub require_flat: bool,
    /// Statements every model must satisfy.
    pub constraints: Vec<Statement>,
    /// Statements every model must fail.
    pub fails: Vec<Statement>,
    pub require_si: bool,
    pub limit: Option<usize>,
}

impl SearchSpec {
    pub fn flat(order: usize) -> Self {
        SearchSpec {
            order,
            require_flat: true,
            constraints: Vec::new(),
            fails: Vec::new(),
            require_si: false,
            limit: None,
        }
    }

    pub fn satisfying(mut self, st: Statement) -> Self {
        self.constraints.push(st);
        self
    }

    pub fn failing(mut self, st: Statement) -> Self {
        self.fails.push(st);
        self
    }

    pub fn si(mut self) -> Self {
        self.require_si = true;
        self
    }

    pub fn limit(mut self, k: usize) -> Self {
        self.limit = Some(k);
        self
    }

    /// Stable textual form used for cache keys.
    pub fn canonical_text(&self) -> String {
        let list = |v: &[Statement]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ; ");
        format!(
            "order={} flat={} si={} limit={:?} sat=[{}] fail=[{}]",
            self.order,
            self.require_flat,
            self.require_si,
            self.limit,
            list(&self.constraints),
            list(&self.fails)
        )
    }
}

const UNSET: u8 = u8::MAX;

#[derive(Clone)]
struct State {
    n: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl State {
    fn a(&self, x: usize, y: usize) -> Option<usize> {
        let v = self.add[x * self.n + y];
        (v != UNSET).then_some(v as usize)
    }

    fn m(&self, x: usize, y: usize) -> Option<usize> {
        let v = self.mul[x * self.n + y];
        (v != UNSET).then_some(v as usize)
    }
}

#[derive(Clone, Copy, Debug)]
enum Cell {
    /// `x + y` (and `y + x`), `x < y`.
    Add(usize, usize),
    Mul(usize, usize),
}

struct Search {
    n: usize,
    flat: bool,
    cells: Vec<Cell>,
}

impl Search {
    fn new(n: usize, flat: bool) -> (Search, State) {
        let mut st = State {
            n,
            add: vec![UNSET; n * n],
            mul: vec![UNSET; n * n],
        };
        let mut cells = Vec::new();
        if flat {
            for x in 0..n {
                for y in 0..n {
                    st.add[x * n + y] = if x == y { x as u8 } else { 0 };
                    if x == 0 || y == 0 {
                        st.mul[x * n + y] = 0;
                    } else {
                        cells.push(Cell::Mul(x, y));
                    }
                }
            }
        } else {
            for x in 0..n {
                st.add[x * n + x] = x as u8;
                for y in x + 1..n {
                    cells.push(Cell::Add(x, y));
                }
            }
            for x in 0..n {
                for y in 0..n {
                    cells.push(Cell::Mul(x, y));
                }
            }
        }
        (Search { n, flat, cells }, st)
    }

    fn set(&self, st: &mut State, cell: Cell, v: usize) {
        let n = self.n;
        match cell {
            Cell::Add(x, y) => {
                st.add[x * n + y] = v as u8;
                st.add[y * n + x] = v as u8;
            }
            Cell::Mul(x, y) => st.mul[x * n + y] = v as u8,
        }
    }

    fn unset(&self, st: &mut State, cell: Cell) {
        let n = self.n;
        match cell {
            Cell::Add(x, y) => {
                st.add[x * n + y] = UNSET;
                st.add[y * n + x] = UNSET;
            }
            Cell::Mul(x, y) => st.mul[x * n + y] = UNSET,
        }
    }

    /// Every law whose instance is fully determined holds.
    fn consistent(&self, st: &State, cell: Cell) -> bool {
        let n = self.n;
        if self.flat {
            if let Cell::Mul(x, y) = cell {
                let v = st.m(x, y);
                if v != Some(0) {
                    // 0-cancellativity along the row and the column of the new cell
                    if (0..n).any(|z| z != y && st.m(x, z) == v)
                        || (0..n).any(|z| z != x && st.m(z, y) == v)
                    {
                        return false;
                    }
                }
            }
        }
        let eq = |l: Option<usize>, r: Option<usize>| match (l, r) {
            (Some(l), Some(r)) => l == r,
            _ => true,
        };
        let bind = |o: Option<usize>, f: &dyn Fn(usize) -> Option<usize>| o.and_then(f);
        for x in 0..n {
            for y in 0..n {
                let xy_m = st.m(x, y);
                let xy_a = st.a(x, y);
                for z in 0..n {
                    // (xy)z = x(yz)
                    let l = bind(xy_m, &|p| st.m(p, z));
                    let r = bind(st.m(y, z), &|p| st.m(x, p));
                    if !eq(l, r) {
                        return false;
                    }
                    // x(y+z) = xy + xz
                    let l = bind(st.a(y, z), &|p| st.m(x, p));
                    let r = match (xy_m, st.m(x, z)) {
                        (Some(p), Some(q)) => st.a(p, q),
                        _ => None,
                    };
                    if !eq(l, r) {
                        return false;
                    }
                    // (x+y)z = xz + yz
                    let l = bind(xy_a, &|p| st.m(p, z));
                    let r = match (st.m(x, z), st.m(y, z)) {
                        (Some(p), Some(q)) => st.a(p, q),
                        _ => None,
                    };
                    if !eq(l, r) {
                        return false;
                    }
                    if !self.flat {
                        // (x+y)+z = x+(y+z)
                        let l = bind(xy_a, &|p| st.a(p, z));
                        let r = bind(st.a(y, z), &|p| st.a(x, p));
                        if !eq(l, r) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn dfs(&self, st: &mut State, k: usize, out: &mut Vec<(Vec<u8>, Vec<u8>)>) {
        if k == self.cells.len() {
            if self.n > CANONICAL_ORDER || is_canonical(st, self.flat) {
                out.push((st.add.clone(), st.mul.clone()));
            }
            return;
        }
        let cell = self.cells[k];
        for v in 0..self.n {
            self.set(st, cell, v);
            if self.consistent(st, cell) {
                self.dfs(st, k + 1, out);
            }
        }
        self.unset(st, cell);
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// No relabelling gives lexicographically smaller `(add, mul)` tables.
/// Flat models keep `0` fixed; it is the only multiplicative zero.
fn is_canonical(st: &State, flat: bool) -> bool {
    let n = st.n;
    let mut perm: Vec<usize> = (0..n).collect();
    let start = usize::from(flat);
    let mut inv = vec![0; n];
    while next_permutation(&mut perm[start..]) {
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        // entry (x, y) of the relabelled table is perm[t[inv x][inv y]]
        let mut ord = std::cmp::Ordering::Equal;
        'cmp: for table in [&st.add, &st.mul] {
            for x in 0..n {
                for y in 0..n {
                    let relabelled = perm[table[inv[x] * n + inv[y]] as usize];
                    let here = table[x * n + y] as usize;
                    ord = relabelled.cmp(&here);
                    if ord != std::cmp::Ordering::Equal {
                        break 'cmp;
                    }
                }
            }
        }
        if ord == std::cmp::Ordering::Less {
            return false;
        }
    }
    true
}

fn admissible(s: &FiniteSemiring, spec: &SearchSpec) -> Result<bool> {
    if spec.require_flat && !s.is_flat() {
        return Ok(false);
    }
    for st in &spec.constraints {
        if !satisfies(s, st, crate::DEFAULT_BUDGET, 1)?.holds {
            return Ok(false);
        }
    }
    for st in &spec.fails {
        if satisfies(s, st, crate::DEFAULT_BUDGET, 1)?.holds {
            return Ok(false);
        }
    }
    if spec.require_si {
        let si = if s.order() < 2 {
            false
        } else if s.is_flat() {
            multiplicative_ideals(s)?.len() == 1
        } else {
            subdirectly_irreducible(s)?.si
        };
        if !si {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One representative per isomorphism class of the models of `spec`, in
/// lexicographic order of their tables. `jobs > 1` splits the search on the
/// first cell; the output does not depend on it.
pub fn enumerate_models(spec: &SearchSpec, jobs: usize) -> Result<Vec<FiniteSemiring>> {
    let n = spec.order;
    if n == 0 {
        return Err(Error::Parameter("order must be at least 1".into()));
    }
    let cap = if spec.require_flat { MAX_FLAT_ORDER } else { MAX_AI_ORDER };
    if n > cap {
        return Err(Error::OrderCap { requested: n, cap });
    }
    let (search, root) = Search::new(n, spec.require_flat);
    let raw: Vec<(Vec<u8>, Vec<u8>)> = if search.cells.is_empty() {
        let mut out = Vec::new();
        search.dfs(&mut root.clone(), 0, &mut out);
        out
    } else {
        let first = search.cells[0];
        let branch = |v: usize| {
            let mut st = root.clone();
            let mut out = Vec::new();
            search.set(&mut st, first, v);
            if search.consistent(&st, first) {
                search.dfs(&mut st, 1, &mut out);
            }
            out
        };
        if jobs <= 1 {
            (0..n).flat_map(branch).collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
            let parts: Vec<Vec<_>> = pool.install(|| (0..n).into_par_iter().map(branch).collect());
            parts.into_iter().flatten().collect()
        }
    };
    let mut models = Vec::new();
    for (add, mul) in raw {
        let to_table = |t: &[u8]| Table::from_fn(n, |x, y| t[x * n + y] as usize);
        let s = FiniteSemiring::new(to_table(&add), to_table(&mul), None)?;
        if spec.require_flat {
            let forced = Table::from_fn(n, |x, y| if x == y { x } else { 0 });
            assert_eq!(s.add_table(), &forced, "flat addition is forced");
        }
        if n > CANONICAL_ORDER && models.iter().any(|m| is_isomorphic(m, &s).is_some()) {
            continue;
        }
        if admissible(&s, spec)? {
            models.push(s);
            if spec.limit.is_some_and(|k| models.len() >= k) {
                break;
            }
        }
    }
    Ok(models)
}

/// Models of every order in `orders`, concatenated by order.
pub fn enumerate_orders(
    spec: &SearchSpec,
    orders: impl IntoIterator<Item = usize>,
    jobs: usize,
) -> Result<Vec<FiniteSemiring>> {
    let mut out = Vec::new();
    for order in orders {
        let s = SearchSpec {
            order,
            ..spec.clone()
        };
        out.extend(enumerate_models(&s, jobs)?);
    }
    Ok(out)
}

/// The first model, at the least order up to `max_order`, that satisfies
/// every statement of `sat` and fails every statement of `fail`.
pub fn find_separating_algebra(
    sat: &[Statement],
    fail: &[Statement],
    max_order: usize,
    flat: bool,
    si: bool,
    jobs: usize,
) -> Result<Option<FiniteSemiring>> {
    for order in 1..=max_order {
        let spec = SearchSpec {
            order,
            require_flat: flat,
            constraints: sat.to_vec(),
            fails: fail.to_vec(),
            require_si: si,
            limit: Some(1),
        };
        if let Some(s) = enumerate_models(&spec, jobs)?.into_iter().next() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Largest order accepted by [`naive_flat_class_count`].
pub const NAIVE_MAX_ORDER: usize = 3;

/// Number of flat semirings of order `n` up to isomorphism, by brute force:
/// every multiplication table on `0..n` is paired with the flat addition,
/// validated as a semiring, and compared against the classes found so far.
/// Shares no code with [`enumerate_models`].
pub fn naive_flat_class_count(n: usize) -> Result<usize> {
    if n == 0 || n > NAIVE_MAX_ORDER {
        return Err(Error::Parameter(format!(
            "brute-force enumeration needs 1 <= order <= {NAIVE_MAX_ORDER}"
        )));
    }
    let total = n.pow((n * n) as u32);
    let add: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| if x == y { x } else { 0 }).collect())
        .collect();
    let mut reps: Vec<FiniteSemiring> = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mul: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let v = c % n;
                        c /= n;
                        v
                    })
                    .collect()
            })
            .collect();
        let Ok(s) = FiniteSemiring::new(Table::from_rows(&add)?, Table::from_rows(&mul)?, None)
        else {
            continue;
        };
        if s.is_flat() && !reps.iter().any(|r| is_isomorphic(r, &s).is_some()) {
            reps.push(s);
        }
    }
    Ok(reps.len())
}

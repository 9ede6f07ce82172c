//! Two-generated subgroups of `G x G` that are minimal nonabelian and larger
//! than `G`, for each family of minimal nonabelian p-groups.

use std::fmt;

use super::groups::{group_metacyclic, group_nonmetacyclic, group_q8};
use crate::algebra::{
    commutator, is_isomorphic, product_subalgebra_tuples, FiniteGroup, Morphism,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairCase {
    /// `G = Q8`, `H = <(a,1), (ab,b)>`.
    Quaternion,
    /// `G = M_p(m,n)` with `n >= m`, `H = <(a,b), (b,1)>`.
    MetacyclicWide { p: usize, m: usize, n: usize },
    /// `G = M_p(m,n)` with `m > n`, `H = <(a,b), (1,a)>`.
    MetacyclicTall { p: usize, m: usize, n: usize },
    /// `G = M_p(m,n,1)` with `m > n`, `H = <(a,b), (1,a)>`.
    Nonmetacyclic { p: usize, m: usize, n: usize },
}

impl fmt::Display for PairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PairCase::Quaternion => write!(f, "<(a,1),(ab,b)> in Q8^2"),
            PairCase::MetacyclicWide { p, m, n } => write!(f, "<(a,b),(b,1)> in M({p},{m},{n})^2"),
            PairCase::MetacyclicTall { p, m, n } => write!(f, "<(a,b),(1,a)> in M({p},{m},{n})^2"),
            PairCase::Nonmetacyclic { p, m, n } => {
                write!(f, "<(a,b),(1,a)> in M({p},{m},{n},1)^2")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct PairSubgroup {
    pub case: PairCase,
    pub ambient: FiniteGroup,
    pub subgroup: FiniteGroup,
    /// Coordinates in `G x G` of each element of `subgroup`.
    pub tuples: Vec<Vec<usize>>,
    pub expected_name: String,
    pub expected: FiniteGroup,
    /// An isomorphism `subgroup -> expected`, if there is one.
    pub iso: Option<Morphism>,
    /// Defining relations of the generating pair, each checked in `G x G`.
    pub relations: Vec<(String, bool)>,
}

type Pair = (usize, usize);

fn pmul(g: &FiniteGroup, x: Pair, y: Pair) -> Pair {
    (g.mul(x.0, y.0), g.mul(x.1, y.1))
}

fn ppow(g: &FiniteGroup, x: Pair, k: u64) -> Pair {
    (g.pow(x.0, k), g.pow(x.1, k))
}

fn pcomm(g: &FiniteGroup, x: Pair, y: Pair) -> Pair {
    (commutator(g, x.0, y.0), commutator(g, x.1, y.1))
}

fn central(g: &FiniteGroup, z: Pair, gens: &[Pair]) -> bool {
    gens.iter().all(|&x| pmul(g, x, z) == pmul(g, z, x))
}

/// Builds `H` for the given case, checks the relations of its generating
/// pair and searches for an isomorphism onto the expected group.
pub fn pair_subgroup(case: PairCase) -> Result<PairSubgroup> {
    let (ambient, expected_name, expected) = match case {
        PairCase::Quaternion => (group_q8()?, "M(2,2,2)".to_string(), group_metacyclic(2, 2, 2)?),
        PairCase::MetacyclicWide { p, m, n } => {
            if n < m {
                return Err(Error::Parameter(format!("needs n >= m, got m={m}, n={n}")));
            }
            (group_metacyclic(p, m, n)?, format!("M({p},{n},{n},1)"), group_nonmetacyclic(p, n, n)?)
        }
        PairCase::MetacyclicTall { p, m, n } => {
            if m <= n {
                return Err(Error::Parameter(format!("needs m > n, got m={m}, n={n}")));
            }
            (group_metacyclic(p, m, n)?, format!("M({p},{m},{m})"), group_metacyclic(p, m, m)?)
        }
        PairCase::Nonmetacyclic { p, m, n } => {
            if m <= n {
                return Err(Error::Parameter(format!("needs m > n, got m={m}, n={n}")));
            }
            (
                group_nonmetacyclic(p, m, n)?,
                format!("M({p},{m},{m},1)"),
                group_nonmetacyclic(p, m, m)?,
            )
        }
    };
    let g = &ambient;
    let (a, b, e) = (g.gen("a"), g.gen("b"), g.identity());
    let (x, y) = match case {
        PairCase::Quaternion => ((a, e), (g.mul(a, b), b)),
        PairCase::MetacyclicWide { .. } => ((a, b), (b, e)),
        _ => ((a, b), (e, a)),
    };
    let one = (e, e);
    let mut relations = Vec::new();
    let mut rel = |name: String, ok: bool| relations.push((name, ok));
    match case {
        PairCase::Quaternion => {
            rel("x^4 = y^4 = 1".into(), ppow(g, x, 4) == one && ppow(g, y, 4) == one);
            let b3 = (g.pow(b, 3), b);
            rel(
                "xy = yx^3 = (b^3, b)".into(),
                pmul(g, x, y) == pmul(g, y, ppow(g, x, 3)) && pmul(g, x, y) == b3,
            );
        }
        PairCase::MetacyclicWide { p, m, n } => {
            let pn = (p as u64).pow(n as u32);
            rel("x^(p^n) = y^(p^n) = 1".into(), ppow(g, x, pn) == one && ppow(g, y, pn) == one);
            let c = pcomm(g, x, y);
            let am = (g.pow(a, (p as u64).pow(m as u32 - 1)), e);
            rel("[x,y] = (a^(p^(m-1)), 1)".into(), c == am);
            rel(
                "[x,y] is central of order p".into(),
                central(g, c, &[x, y]) && ppow(g, c, p as u64) == one,
            );
        }
        PairCase::MetacyclicTall { p, m, .. } => {
            let pm = (p as u64).pow(m as u32);
            rel("x^(p^m) = y^(p^m) = 1".into(), ppow(g, x, pm) == one && ppow(g, y, pm) == one);
            let r = (p as u64).pow(m as u32 - 1) + 1;
            rel(
                "yx = xy^(p^(m-1)+1)".into(),
                pmul(g, y, x) == pmul(g, x, ppow(g, y, r)),
            );
        }
        PairCase::Nonmetacyclic { p, m, .. } => {
            let pm = (p as u64).pow(m as u32);
            rel("x^(p^m) = y^(p^m) = 1".into(), ppow(g, x, pm) == one && ppow(g, y, pm) == one);
            let c = pcomm(g, x, y);
            rel("[x,y] = (1, c^-1)".into(), c == (e, g.inv(g.gen("c"))));
            rel(
                "[x,y] is central of order p".into(),
                central(g, c, &[x, y]) && ppow(g, c, p as u64) == one,
            );
        }
    }
    let (subgroup, tuples) =
        product_subalgebra_tuples(&[g, g], &[vec![x.0, x.1], vec![y.0, y.1]])?;
    let iso = is_isomorphic(&subgroup, &expected);
    Ok(PairSubgroup {
        case,
        ambient,
        subgroup,
        tuples,
        expected_name,
        expected,
        iso,
        relations,
    })
}

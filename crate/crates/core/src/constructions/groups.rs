//! The minimal nonabelian `p`-group families, cyclic and abelian groups, and
//! flat extensions.
//!
//! Groups are built from closed-form normal-form products. Associativity is
//! checked with Light's test on the generators and every defining relation is
//! re-checked on the finished table.

use crate::algebra::{check_cap, FiniteGroup, FiniteSemiring, Table};
use crate::error::{Error, Result};

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn checked_pow(p: usize, e: usize) -> Result<usize> {
    let mut acc: usize = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p).filter(|&v| v <= crate::ORDER_CAP).ok_or(Error::OrderCap {
            requested: usize::MAX,
            cap: crate::ORDER_CAP,
        })?;
    }
    Ok(acc)
}

fn mixed_radix_decode(moduli: &[usize], mut x: usize) -> Vec<usize> {
    let mut out = vec![0; moduli.len()];
    for (i, &m) in moduli.iter().enumerate().rev() {
        out[i] = x % m;
        x /= m;
    }
    out
}

fn mixed_radix_encode(moduli: &[usize], coords: &[usize]) -> usize {
    coords
        .iter()
        .zip(moduli)
        .fold(0, |acc, (&c, &m)| acc * m + c % m)
}

/// Element `g1^e1 g2^e2 ...` printed with exponents, `1` for the identity.
fn power_label(names: &[&str], exps: &[usize]) -> String {
    let mut out = String::new();
    for (name, &e) in names.iter().zip(exps) {
        match e {
            0 => {}
            1 => out.push_str(name),
            _ => out.push_str(&format!("{name}^{e}")),
        }
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}

/// Light's associativity test: `(xg)y = x(gy)` for every generator `g`.
fn light_associative(t: &Table, gens: &[usize]) -> bool {
    let n = t.order();
    gens.iter().all(|&g| {
        (0..n).all(|x| (0..n).all(|y| t.get(t.get(x, g), y) == t.get(x, t.get(g, y))))
    })
}

/// A relation between words in the named generators, as `(generator, exponent)` lists.
type Relation = (Vec<(&'static str, i64)>, Vec<(&'static str, i64)>);

fn finish(
    name: &str,
    moduli: &[usize],
    coord_names: &[&str],
    product: impl Fn(&[usize], &[usize]) -> Vec<usize>,
    generators: &[(&str, Vec<usize>)],
    relations: &[Relation],
) -> Result<FiniteGroup> {
    let n: usize = moduli.iter().product();
    check_cap(n)?;
    let mul = Table::from_fn(n, |x, y| {
        let (cx, cy) = (mixed_radix_decode(moduli, x), mixed_radix_decode(moduli, y));
        mixed_radix_encode(moduli, &product(&cx, &cy))
    });
    let labels = (0..n)
        .map(|x| power_label(coord_names, &mixed_radix_decode(moduli, x)))
        .collect();
    let gens: Vec<(String, usize)> = generators
        .iter()
        .map(|(g, c)| (g.to_string(), mixed_radix_encode(moduli, c)))
        .collect();
    let gen_ids: Vec<usize> = gens.iter().map(|g| g.1).collect();
    if !light_associative(&mul, &gen_ids) {
        return Err(Error::Construction(format!("{name}: product is not associative")));
    }
    let g = FiniteGroup::from_associative(mul, Some(labels))
        .map_err(|e| Error::Construction(format!("{name}: {e}")))?
        .with_generators(gens);
    if crate::algebra::closure(&g, &gen_ids).len() != n {
        return Err(Error::Construction(format!("{name}: generators do not generate")));
    }
    let eval = |w: &[(&str, i64)]| {
        let factors: Vec<(usize, i64)> = w.iter().map(|&(s, e)| (g.gen(s), e)).collect();
        g.eval_word(&factors)
    };
    for (lhs, rhs) in relations {
        if eval(lhs) != eval(rhs) {
            return Err(Error::Construction(format!(
                "{name}: relation {lhs:?} = {rhs:?} fails"
            )));
        }
    }
    Ok(g)
}

/// The quaternion group `<a, b | a^4 = 1, a^2 = b^2, aba = b>`; elements `a^i b^j`.
pub fn group_q8() -> Result<FiniteGroup> {
    finish(
        "Q8",
        &[4, 2],
        &["a", "b"],
        |x, y| {
            // b a = a^-1 b and b^2 = a^2
            let i = if x[1] == 1 { x[0] + 4 - y[0] } else { x[0] + y[0] };
            let extra = if x[1] == 1 && y[1] == 1 { 2 } else { 0 };
            vec![(i + extra) % 4, (x[1] + y[1]) % 2]
        },
        &[("a", vec![1, 0]), ("b", vec![0, 1])],
        &[
            (vec![("a", 4)], vec![]),
            (vec![("a", 2)], vec![("b", 2)]),
            (vec![("a", 1), ("b", 1), ("a", 1)], vec![("b", 1)]),
        ],
    )
}

fn pow_mod(base: usize, e: usize, m: usize) -> usize {
    let mut acc = 1 % m;
    for _ in 0..e {
        acc = acc * base % m;
    }
    acc
}

/// `M_p(m,n) = <a, b | a^(p^m) = b^(p^n) = 1, ab = ba^(1+p^(m-1))>`, order `p^(m+n)`.
/// Elements are `b^j a^i`.
pub fn group_metacyclic(p: usize, m: usize, n: usize) -> Result<FiniteGroup> {
    if !is_prime(p) || m < 2 || n < 1 {
        return Err(Error::Parameter(format!(
            "M({p},{m},{n}) needs p prime, m >= 2, n >= 1"
        )));
    }
    let (pm, pn) = (checked_pow(p, m)?, checked_pow(p, n)?);
    check_cap(pm.saturating_mul(pn))?;
    let r = 1 + checked_pow(p, m - 1)?;
    let a_r = ("a", r as i64);
    finish(
        &format!("M({p},{m},{n})"),
        &[pn, pm],
        &["b", "a"],
        |x, y| vec![(x[0] + y[0]) % pn, (x[1] * pow_mod(r, y[0], pm) + y[1]) % pm],
        &[("a", vec![0, 1]), ("b", vec![1, 0])],
        &[
            (vec![("a", pm as i64)], vec![]),
            (vec![("b", pn as i64)], vec![]),
            (vec![("a", 1), ("b", 1)], vec![("b", 1), a_r]),
        ],
    )
    .and_then(|g| check_generator_orders(g, &[("a", pm), ("b", pn)]))
}

/// `M_p(m,n,1) = <a, b | a^(p^m) = b^(p^n) = c^p = 1, ab = bac, ac = ca, bc = cb>`,
/// order `p^(m+n+1)`. Elements are `b^j a^i c^k`.
pub fn group_nonmetacyclic(p: usize, m: usize, n: usize) -> Result<FiniteGroup> {
    if !is_prime(p) || m < 1 || n < 1 {
        return Err(Error::Parameter(format!(
            "M({p},{m},{n},1) needs p prime, m >= 1, n >= 1"
        )));
    }
    let (pm, pn) = (checked_pow(p, m)?, checked_pow(p, n)?);
    check_cap(pm.saturating_mul(pn).saturating_mul(p))?;
    finish(
        &format!("M({p},{m},{n},1)"),
        &[pn, pm, p],
        &["b", "a", "c"],
        |x, y| {
            vec![
                (x[0] + y[0]) % pn,
                (x[1] + y[1]) % pm,
                (x[2] + y[2] + x[1] * y[0]) % p,
            ]
        },
        &[("a", vec![0, 1, 0]), ("b", vec![1, 0, 0]), ("c", vec![0, 0, 1])],
        &[
            (vec![("a", pm as i64)], vec![]),
            (vec![("b", pn as i64)], vec![]),
            (vec![("c", p as i64)], vec![]),
            (vec![("a", 1), ("b", 1)], vec![("b", 1), ("a", 1), ("c", 1)]),
            (vec![("a", 1), ("c", 1)], vec![("c", 1), ("a", 1)]),
            (vec![("b", 1), ("c", 1)], vec![("c", 1), ("b", 1)]),
        ],
    )
    .and_then(|g| check_generator_orders(g, &[("a", pm), ("b", pn), ("c", p)]))
}

fn check_generator_orders(g: FiniteGroup, orders: &[(&str, usize)]) -> Result<FiniteGroup> {
    for &(name, ord) in orders {
        if g.element_order(g.gen(name)) != ord as u64 {
            return Err(Error::Construction(format!(
                "generator {name} should have order {ord}"
            )));
        }
    }
    Ok(g)
}

/// Direct product of cyclic groups `Z(k1) x Z(k2) x ...`, generators `g1, g2, ...`.
pub fn abelian_group(moduli: &[usize]) -> Result<FiniteGroup> {
    if moduli.is_empty() || moduli.contains(&0) {
        return Err(Error::Parameter("cyclic factors must have positive order".into()));
    }
    let n = moduli
        .iter()
        .try_fold(1usize, |acc, &k| acc.checked_mul(k))
        .unwrap_or(usize::MAX);
    check_cap(n)?;
    let names: Vec<String> = (1..=moduli.len()).map(|i| format!("g{i}")).collect();
    let name_refs: Vec<&str> = if moduli.len() == 1 {
        vec!["g"]
    } else {
        names.iter().map(String::as_str).collect()
    };
    let generators: Vec<(&str, Vec<usize>)> = (0..moduli.len())
        .map(|i| {
            let mut c = vec![0; moduli.len()];
            c[i] = 1 % moduli[i];
            (name_refs[i], c)
        })
        .collect();
    finish(
        &format!("Z{moduli:?}"),
        moduli,
        &name_refs,
        |x, y| x.iter().zip(y).zip(moduli).map(|((a, b), m)| (a + b) % m).collect(),
        &generators,
        &[],
    )
}

pub fn cyclic_group(n: usize) -> Result<FiniteGroup> {
    abelian_group(&[n])
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One representative of every abelian group of order `n`, as lists of
/// prime-power cyclic factors.
pub fn abelian_types(n: usize) -> Vec<Vec<usize>> {
    let mut m = n;
    let mut prime_powers: Vec<(usize, usize)> = Vec::new();
    let mut p = 2;
    while m > 1 {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            prime_powers.push((p, e));
        }
        p += 1;
    }
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for (p, e) in prime_powers {
        let mut next = Vec::new();
        for base in &out {
            for part in partitions(e, e) {
                let mut t = base.clone();
                t.extend(part.iter().map(|&k| p.pow(k as u32)));
                next.push(t);
            }
        }
        out = next;
    }
    if n == 1 {
        return vec![vec![1]];
    }
    out
}

/// Parses `Q8`, `M(p,m,n)`, `M(p,m,n,1)` and `Z(n)` (also `Z(k1,k2,...)`).
pub fn group_by_name(name: &str) -> Result<FiniteGroup> {
    let name = name.trim();
    if name.eq_ignore_ascii_case("q8") {
        return group_q8();
    }
    let bad = || Error::Parameter(format!("unknown group `{name}`"));
    let open = name.find('(').ok_or_else(bad)?;
    let args = name[open + 1..]
        .strip_suffix(')')
        .ok_or_else(bad)?
        .split(',')
        .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    match (&name[..open], args.as_slice()) {
        ("M", [p, m, n]) => group_metacyclic(*p, *m, *n),
        ("M", [p, m, n, 1]) => group_nonmetacyclic(*p, *m, *n),
        ("Z", ks) if !ks.is_empty() => abelian_group(ks),
        _ => Err(bad()),
    }
}

/// `♭(G)`: the group with a new element `0` (index 0) that is multiplicatively
/// absorbing and the additive top; distinct elements add to `0`.
pub fn flat_extension(g: &FiniteGroup) -> Result<FiniteSemiring> {
    let n = g.order() + 1;
    check_cap(n)?;
    let mul = Table::from_fn(n, |x, y| {
        if x == 0 || y == 0 {
            0
        } else {
            g.mul(x - 1, y - 1) + 1
        }
    });
    let mut labels = vec!["0".to_string()];
    labels.extend((0..g.order()).map(|x| match g.labels() {
        Some(l) => l[x].clone(),
        None => x.to_string(),
    }));
    let s = FiniteSemiring::flat(mul, Some(labels))?;
    if !s.is_zero_cancellative() {
        return Err(Error::Construction("flat extension is not 0-cancellative".into()));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(group_q8().unwrap().order(), 8);
        assert_eq!(group_metacyclic(2, 2, 2).unwrap().order(), 16);
        assert_eq!(group_nonmetacyclic(3, 1, 1).unwrap().order(), 27);
    }

    #[test]
    fn metacyclic_relation_in_m2_2_2() {
        let g = group_metacyclic(2, 2, 2).unwrap();
        let (a, b) = (g.gen("a"), g.gen("b"));
        assert_eq!(g.mul(a, b), g.mul(b, g.pow(a, 3)));
    }

    #[test]
    fn nonmetacyclic_commutator_is_c() {
        let g = group_nonmetacyclic(3, 1, 1).unwrap();
        let (a, b, c) = (g.gen("a"), g.gen("b"), g.gen("c"));
        assert_eq!(g.mul(a, b), g.mul(g.mul(b, a), c));
        assert!((0..27).all(|x| g.mul(x, c) == g.mul(c, x)));
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(group_metacyclic(4, 2, 1), Err(Error::Parameter(_))));
        assert!(matches!(group_metacyclic(2, 1, 1), Err(Error::Parameter(_))));
        assert!(matches!(group_nonmetacyclic(2, 0, 1), Err(Error::Parameter(_))));
        assert!(matches!(group_nonmetacyclic(2, 6, 6), Err(Error::OrderCap { .. })));
        assert!(group_by_name("M(2,2)").is_err());
    }

    #[test]
    fn abelian_type_counts() {
        let counts: Vec<usize> = (1..=16).map(|n| abelian_types(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
    }

    #[test]
    fn flat_extensions() {
        let triv = flat_extension(&cyclic_group(1).unwrap()).unwrap();
        assert_eq!(triv.order(), 2);
        assert_eq!(triv.mul(1, 1), 1);
        let z2 = flat_extension(&cyclic_group(2).unwrap()).unwrap();
        assert_eq!(z2.add(1, 2), 0);
        assert_eq!(flat_extension(&group_nonmetacyclic(3, 1, 1).unwrap()).unwrap().order(), 28);
    }
}

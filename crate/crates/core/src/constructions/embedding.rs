use super::word::{word_semiring, word_semiring_of, Family, Symbol, Word};
use crate::algebra::{
    closure, hom_from_generator_images, induced, multiplicative_ideals, product_subalgebra_tuples,
    rees_quotient, FiniteSemiring, Morphism, Structure,
};
use crate::error::{Error, Result};
use crate::term::parse_statement;

fn check_index(n: usize, i: usize) -> Result<()> {
    if 1 < i && i + 1 < n {
        Ok(())
    } else {
        Err(Error::Parameter(format!("index {i} must satisfy 1 < i < {}", n.saturating_sub(1))))
    }
}

/// `T_i(w)` for `w = ell(n)` or `k(n,i)`: the subsemiring of `S(w)` without the
/// letters of index `i` and `i+1`.
pub fn t_subsemiring(family: Family, i: usize) -> Result<FiniteSemiring> {
    let (n, drop): (usize, Vec<Symbol>) = match family {
        Family::Ell(n) => (n, vec![Symbol::new("x", i as i64), Symbol::new("x", i as i64 + 1)]),
        Family::K(n, k) if k == i => (
            n,
            ["y", "z"]
                .iter()
                .flat_map(|b| [Symbol::new(b, i as i64), Symbol::new(b, i as i64 + 1)])
                .collect(),
        ),
        Family::K(_, k) => {
            return Err(Error::Parameter(format!(
                "T_{i} of k(.,{k}) is only defined for the matching index"
            )))
        }
        _ => return Err(Error::Parameter(format!("T_i is defined for ell and k words, not {family}"))),
    };
    check_index(n, i)?;
    let ws = word_semiring(&[family.word()?], false, false)?;
    let dropped: Vec<usize> = drop.iter().filter_map(|s| ws.letter(s)).collect();
    let keep: Vec<usize> = (0..ws.semiring.order()).filter(|x| !dropped.contains(x)).collect();
    if closure(&ws.semiring, &keep) != keep {
        return Err(Error::Construction(format!("T_{i}({family}) is not closed")));
    }
    let (t, _) = induced::<_, FiniteSemiring>(&ws.semiring, &keep)?;
    Ok(t)
}

/// Embeds a flat SI semiring satisfying `xy = yx`, `xxy = xx` and
/// `x1x2x3 = y1y2y3` into a Rees quotient `T/I` of a subsemiring `T` of
/// `S_c(ab)^m`, with `m` least such that `|S| <= 2^m + 2`.
///
/// Returns `T/I` and the verified embedding.
pub fn scab_power_embedding(s: &FiniteSemiring) -> Result<(FiniteSemiring, Morphism)> {
    if !s.is_flat() {
        return Err(Error::Precondition("the semiring must be flat".into()));
    }
    for law in ["x*y = y*x", "x*x*y = x*x", "x1*x2*x3 = y1*y2*y3"] {
        let st = parse_statement(law)?;
        let v = crate::satisfaction::satisfies(s, &st, crate::DEFAULT_BUDGET, 1)?;
        if !v.holds {
            return Err(Error::Precondition(format!("the semiring fails {law}")));
        }
    }
    let ideals = multiplicative_ideals(s)?;
    if ideals.len() != 1 {
        return Err(Error::Precondition("the semiring is not subdirectly irreducible".into()));
    }
    let zero = s.zero().expect("flat");
    let omega_class: Vec<usize> = ideals[0].iter().copied().filter(|&x| x != zero).collect();
    let [omega] = omega_class[..] else {
        return Err(Error::Construction(format!(
            "the 0-minimal ideal has {} nonzero elements, expected one",
            omega_class.len()
        )));
    };
    let n = s.order();
    let mut m = 1usize;
    while n > (1usize << m) + 2 {
        m += 1;
    }
    // Pair every other element with its unique partner x' with x x' = omega.
    let mut partner = vec![usize::MAX; n];
    for x in (0..n).filter(|&x| x != zero && x != omega) {
        let ps: Vec<usize> = (0..n).filter(|&y| s.mul(x, y) == omega).collect();
        match ps[..] {
            [y] if y != zero && y != omega => partner[x] = y,
            _ => {
                return Err(Error::Construction(format!(
                    "element {} has {} partners with product omega",
                    s.label(x),
                    ps.len()
                )))
            }
        }
    }
    let scab = word_semiring_of("ab", true, false)?;
    let a = scab.letter(&Symbol::plain("a")).expect("a");
    let b = scab.letter(&Symbol::plain("b")).expect("b");
    let ab = scab
        .element(&[Symbol::plain("a"), Symbol::plain("b")])
        .expect("ab");
    let complement = |c: usize| if c == a { b } else { a };

    // Codewords in counting order: first coordinate a, bit k of the counter picks
    // coordinate k+1.
    let mut images: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut next_code = 0usize;
    for x in 0..n {
        if x == zero || x == omega || images[x].is_some() {
            continue;
        }
        if next_code >= 1 << (m - 1) {
            return Err(Error::Construction("ran out of codewords".into()));
        }
        let code: Vec<usize> = (0..m)
            .map(|k| if k > 0 && (next_code >> (k - 1)) & 1 == 1 { b } else { a })
            .collect();
        next_code += 1;
        images[partner[x]] = Some(code.iter().map(|&c| complement(c)).collect());
        images[x] = Some(code);
    }
    images[omega] = Some(vec![ab; m]);

    let factors = vec![&scab.semiring; m];
    let gens: Vec<Vec<usize>> = (0..1usize << m)
        .map(|bits| (0..m).map(|k| if (bits >> k) & 1 == 1 { b } else { a }).collect())
        .collect();
    let (t, tuples) = product_subalgebra_tuples(&factors, &gens)?;
    let tzero = |tup: &Vec<usize>| tup.iter().any(|&c| c == 0);
    let ideal: Vec<usize> = (0..t.order()).filter(|&x| tzero(&tuples[x])).collect();
    let quotient = rees_quotient(&t, &ideal)?;
    // class of a T-element in T/I: 0 for the ideal, otherwise rank among the rest
    let outside: Vec<usize> = (0..t.order()).filter(|&x| !tzero(&tuples[x])).collect();
    let class_of = |tup: &Vec<usize>| -> Result<usize> {
        if tzero(tup) {
            return Ok(0);
        }
        // T's elements are in mixed-radix order, which is lexicographic on tuples
        let idx = tuples
            .binary_search(tup)
            .map_err(|_| Error::Construction(format!("{tup:?} is not in T")))?;
        Ok(outside.binary_search(&idx).expect("outside the ideal") + 1)
    };
    let mut map = vec![0; n];
    for x in 0..n {
        if x != zero {
            map[x] = class_of(images[x].as_ref().expect("assigned"))?;
        }
    }
    let hom = Morphism::check(s, &quotient, map)?;
    if !hom.is_embedding() {
        return Err(Error::Construction(format!(
            "the codeword map is not an embedding (hom: {}, injective: {})",
            hom.verified_hom, hom.injective
        )));
    }
    Ok((quotient, hom))
}

/// Generator images of the matching of `k(n,i)` into `ell(m)` with the central
/// portion split as `x(i+1) x(i) x(i+2) | rest`.
pub fn kni_generator_images(n: usize, i: usize, m: usize) -> Result<Vec<(Symbol, Vec<Symbol>)>> {
    check_index(n, i)?;
    if m < n + 2 {
        return Err(Error::Parameter(format!(
            "k({n},{i}) embeds in ell(m) only for m >= n+2, got m = {m}"
        )));
    }
    let d = (m - n) as i64;
    let (i, n) = (i as i64, n as i64);
    let x = |j: i64| Symbol::new("x", j);
    let mut images: Vec<(Symbol, Vec<Symbol>)> = Vec::new();
    for j in 1..i {
        images.push((x(j), vec![x(j)]));
    }
    images.push((Symbol::new("y", i), vec![x(i)]));
    // central portion: blocks x(j) x(j-1) for j = i+1 ..= i+1+d
    let central: Vec<Symbol> = (i + 1..=i + 1 + d).flat_map(|j| [x(j), x(j - 1)]).collect();
    images.push((Symbol::new("y", i + 1), central[..3].to_vec()));
    images.push((Symbol::new("z", i), central[3..].to_vec()));
    images.push((Symbol::new("z", i + 1), vec![x(i + 1 + d)]));
    for j in i + 2..=n {
        images.push((x(j), vec![x(j + d)]));
    }
    Ok(images)
}

/// Verified injective homomorphism `S(k(n,i)) -> S(ell(m))` for `m >= n+2`.
pub fn verify_kni_embedding(n: usize, i: usize, m: usize) -> Result<Morphism> {
    let images = kni_generator_images(n, i, m)?;
    let src = word_semiring(&[Family::K(n, i).word()?], false, false)?;
    let tgt = word_semiring(&[Family::Ell(m).word()?], false, false)?;
    let pairs = images
        .iter()
        .map(|(s, img)| {
            let from = src
                .letter(s)
                .ok_or_else(|| Error::Construction(format!("{s} is not a letter of k({n},{i})")))?;
            let to = tgt.element(img).ok_or_else(|| {
                Error::Construction(format!(
                    "{} is not a factor of ell({m})",
                    Word::new(img.clone(), false).map(|w| w.to_string()).unwrap_or_default()
                ))
            })?;
            Ok((from, to))
        })
        .collect::<Result<Vec<_>>>()?;
    let hom = hom_from_generator_images(&src.semiring, &tgt.semiring, &pairs)
        .map_err(|e| Error::Construction(format!("k({n},{i}) -> ell({m}): {e}")))?;
    if !hom.is_embedding() {
        return Err(Error::Construction(format!(
            "k({n},{i}) -> ell({m}) is not injective"
        )));
    }
    Ok(hom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_isomorphic;

    #[test]
    fn t2_of_ell4() {
        let s = word_semiring_of("ell(4)", false, false).unwrap();
        let t = t_subsemiring(Family::Ell(4), 2).unwrap();
        assert_eq!(t.order(), s.semiring.order() - 2);
        assert!(t.validate().is_valid());
        let tk = t_subsemiring(Family::K(4, 2), 2).unwrap();
        assert!(is_isomorphic(&t, &tk).is_some());
    }

    #[test]
    fn index_range() {
        assert!(t_subsemiring(Family::Ell(4), 3).is_err());
        assert!(matches!(verify_kni_embedding(4, 2, 4), Err(Error::Parameter(_))));
        assert!(matches!(verify_kni_embedding(4, 2, 5), Err(Error::Parameter(_))));
    }

    #[test]
    fn kni_embeddings() {
        for (n, i, m) in [(4, 2, 6), (5, 3, 7), (4, 2, 8)] {
            let h = verify_kni_embedding(n, i, m).unwrap();
            assert!(h.is_embedding());
        }
    }

    #[test]
    fn scab_embeds_into_itself() {
        let s = word_semiring_of("ab", true, false).unwrap().semiring;
        let (q, h) = scab_power_embedding(&s).unwrap();
        assert!(h.is_embedding());
        assert_eq!(q.order(), 4);
    }

    #[test]
    fn scabc_is_rejected() {
        let s = word_semiring_of("abc", true, false).unwrap().semiring;
        assert!(matches!(scab_power_embedding(&s), Err(Error::Precondition(_))));
    }
}

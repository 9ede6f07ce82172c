use std::collections::{BTreeMap, HashMap};

use proptest::prelude::*;

use srw_core::algebra::{
    commutator, group_exponent, is_isomorphic, multiplicative_ideals, subdirectly_irreducible,
    validate_group, validate_semiring, FiniteGroup, FiniteSemiring, Table,
};
use srw_core::constructions::{
    bracket_elements, flat_extension, group_metacyclic, group_nonmetacyclic, group_q8,
    word_semiring, word_semiring_of, Family,
};
use srw_core::finder::{enumerate_models, SearchSpec};
use srw_core::satisfaction::{check_free_laws, satisfies};
use srw_core::term::{eval_statement, eval_term, parse_statement, parse_term, Statement, Term};
use srw_core::DEFAULT_BUDGET;

fn corpus() -> Vec<(String, FiniteSemiring)> {
    let mut out = Vec::new();
    for (w, c, m) in [
        ("a", false, false),
        ("a", false, true),
        ("ab", false, false),
        ("ab", true, false),
        ("aba", false, false),
        ("abc", true, false),
        ("ab", true, true),
    ] {
        let s = word_semiring_of(w, c, m).unwrap().semiring;
        out.push((format!("{w} c={c} m={m}"), s));
    }
    out.push(("flat Q8".into(), flat_extension(&group_q8().unwrap()).unwrap()));
    let boolean = FiniteSemiring::new(
        Table::from_fn(2, |x, y| x.max(y)),
        Table::from_fn(2, |x, y| x.min(y)),
        None,
    )
    .unwrap();
    out.push(("boolean".into(), boolean));
    let ai = SearchSpec {
        require_flat: false,
        ..SearchSpec::flat(3)
    };
    for (k, s) in enumerate_models(&ai, 1).unwrap().into_iter().step_by(7).enumerate() {
        out.push((format!("ai order 3 #{k}"), s));
    }
    out
}

/// Every assignment in lexicographic order; the first falsifier is the witness.
fn naive_verdict(s: &FiniteSemiring, st: &Statement) -> Option<BTreeMap<String, usize>> {
    let vars: Vec<String> = st.variables().into_iter().collect();
    let n = s.order();
    let total = n.pow(vars.len() as u32);
    for code in 0..total {
        let mut digits = vec![0; vars.len()];
        let mut c = code;
        for d in digits.iter_mut().rev() {
            *d = c % n;
            c /= n;
        }
        let asg: HashMap<String, usize> = vars.iter().cloned().zip(digits).collect();
        if !eval_statement(st, s, &asg).unwrap() {
            return Some(asg.into_iter().collect());
        }
    }
    None
}

fn term_strategy(vars: &'static [&'static str]) -> impl Strategy<Value = Term> {
    let leaf = proptest::sample::select(vars).prop_map(Term::var);
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 2..4).prop_map(Term::sum),
            proptest::collection::vec(inner, 2..4).prop_map(Term::product),
        ]
    })
}

const VARS: &[&str] = &["x", "y", "z", "u"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn format_then_parse_is_identity(t in term_strategy(VARS)) {
        let back = parse_term(&t.to_string()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn pruned_search_matches_naive_enumeration(
        l in term_strategy(VARS),
        r in term_strategy(VARS),
        p in term_strategy(VARS),
        q in term_strategy(VARS),
        kind in 0..3usize,
        pick in any::<proptest::sample::Index>(),
    ) {
        let algebras = corpus();
        let (name, s) = &algebras[pick.index(algebras.len())];
        let st = match kind {
            0 => Statement::identity(l, r),
            1 => Statement::order(l, r),
            _ => parse_statement(&format!("{p} = {q} => {l} = {r}")).unwrap(),
        };
        let fast = satisfies(s, &st, DEFAULT_BUDGET, 1).unwrap();
        let naive = naive_verdict(s, &st);
        prop_assert_eq!(fast.holds, naive.is_none(), "{} on {}", st, name);
        prop_assert_eq!(fast.witness, naive, "{} on {}", st, name);
    }

    #[test]
    fn relabelled_copies_are_isomorphic(
        pick in any::<proptest::sample::Index>(),
        perm_seed in any::<proptest::sample::Index>(),
    ) {
        let algebras = corpus();
        let (_, s) = &algebras[pick.index(algebras.len())];
        let n = s.order();
        // a permutation from the seed, via the factorial number system
        let mut pool: Vec<usize> = (0..n).collect();
        let mut k = perm_seed.index(usize::MAX);
        let mut perm = Vec::new();
        while !pool.is_empty() {
            perm.push(pool.remove(k % pool.len()));
            k /= perm.len().max(1);
        }
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let add = Table::from_fn(n, |x, y| perm[s.add(inv[x], inv[y])]);
        let mul = Table::from_fn(n, |x, y| perm[s.mul(inv[x], inv[y])]);
        let t = FiniteSemiring::new(add, mul, None).unwrap();
        let m = is_isomorphic(s, &t).unwrap();
        prop_assert!(m.is_isomorphism());
    }
}

#[test]
fn sums_evaluate_like_hand_folded_sums() {
    let a = Term::var("a");
    let b = Term::var("b");
    let c = Term::var("c");
    let nested = Term::sum([a.clone(), Term::sum([b.clone(), c.clone()])]);
    let nested_product = Term::product([Term::product([a, b]), c]);
    for order in 1..=4 {
        let ai = SearchSpec {
            require_flat: false,
            ..SearchSpec::flat(order)
        };
        for s in enumerate_models(&ai, 1).unwrap() {
            for x in 0..order {
                for y in 0..order {
                    for z in 0..order {
                        let asg: HashMap<String, usize> =
                            [("a".into(), x), ("b".into(), y), ("c".into(), z)].into();
                        assert_eq!(eval_term(&nested, &s, &asg).unwrap(), s.add(s.add(x, y), z));
                        assert_eq!(
                            eval_term(&nested_product, &s, &asg).unwrap(),
                            s.mul(s.mul(x, y), z)
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn order_statements_mean_sum_equals_right_side() {
    let t1 = parse_term("x*y + z").unwrap();
    let t2 = parse_term("y*x").unwrap();
    let st = Statement::order(t1.clone(), t2.clone());
    for (_, s) in corpus() {
        let n = s.order();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let asg: HashMap<String, usize> =
                        [("x".into(), x), ("y".into(), y), ("z".into(), z)].into();
                    let (v1, v2) = (eval_term(&t1, &s, &asg).unwrap(), eval_term(&t2, &s, &asg).unwrap());
                    assert_eq!(eval_statement(&st, &s, &asg).unwrap(), s.add(v1, v2) == v2);
                }
            }
        }
    }
}

#[test]
fn flat_order_is_zero_or_equality() {
    let st = parse_statement("x <= y*z").unwrap();
    for (_, s) in corpus().into_iter().filter(|(_, s)| s.is_flat()) {
        let zero = s.zero().unwrap();
        let n = s.order();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let asg: HashMap<String, usize> =
                        [("x".into(), x), ("y".into(), y), ("z".into(), z)].into();
                    let t = s.mul(y, z);
                    assert_eq!(eval_statement(&st, &s, &asg).unwrap(), t == zero || x == t);
                }
            }
        }
    }
}

#[test]
fn parallel_splits_do_not_change_verdicts() {
    let statements = [
        "x*y = y*x",
        "x*x*y = x*x",
        "x1*x2*x3 = y1*y2*y3",
        "x*y + y*x = x*y + y*x + z",
        "x*y = x*z => y = z",
        "x <= x*x",
    ];
    for (name, s) in corpus() {
        for text in statements {
            let st = parse_statement(text).unwrap();
            let one = satisfies(&s, &st, DEFAULT_BUDGET, 1).unwrap();
            for jobs in [2, 8] {
                let many = satisfies(&s, &st, DEFAULT_BUDGET, jobs).unwrap();
                assert_eq!(one.holds, many.holds, "{text} on {name}");
                assert_eq!(one.witness, many.witness, "{text} on {name}");
                assert_eq!(one.evaluations, many.evaluations, "{text} on {name}");
            }
            if let Some(w) = &one.witness {
                let asg: HashMap<String, usize> = w.clone().into_iter().collect();
                assert!(!eval_statement(&st, &s, &asg).unwrap());
            }
        }
    }
}

#[test]
fn isomorphism_is_an_equivalence() {
    let mut algebras: Vec<FiniteSemiring> = corpus().into_iter().map(|(_, s)| s).collect();
    // two presentations of the same semiring
    algebras.push(word_semiring_of("ba", true, false).unwrap().semiring);
    algebras.push(word_semiring_of("b", false, false).unwrap().semiring);
    assert!(algebras.len() >= 10);
    let n = algebras.len();
    let iso: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| is_isomorphic(&algebras[i], &algebras[j]).is_some()).collect())
        .collect();
    for i in 0..n {
        assert!(iso[i][i]);
        for j in 0..n {
            assert_eq!(iso[i][j], iso[j][i]);
            for k in 0..n {
                if iso[i][j] && iso[j][k] {
                    assert!(iso[i][k]);
                }
            }
        }
    }
    assert!(iso[3][n - 2], "S_c(ab) and S_c(ba)");
    assert!(iso[0][n - 1], "S(a) and S(b)");
}

#[test]
fn si_by_congruences_matches_si_by_ideals() {
    let mut flats: Vec<FiniteSemiring> = Vec::new();
    for order in 2..=6 {
        flats.extend(enumerate_models(&SearchSpec::flat(order), 4).unwrap());
    }
    for (w, c) in [("abc", true), ("aba", false), ("abab", false), ("abcb", false)] {
        let s = word_semiring_of(w, c, false).unwrap().semiring;
        assert!(s.order() <= 8 || w == "abcb");
        flats.push(s);
    }
    flats.push(flat_extension(&group_q8().unwrap()).unwrap());
    for s in &flats {
        let by_ideals = multiplicative_ideals(s).unwrap().len() == 1;
        // the congruence route, on the structure without its flat shortcut
        let by_congruences = subdirectly_irreducible(&AsPlain(s)).unwrap().si;
        assert_eq!(by_ideals, by_congruences, "{:?}", s.mul_table());
    }
}

/// Hides the semiring type so the generic congruence computation runs alone.
struct AsPlain<'a>(&'a FiniteSemiring);

impl srw_core::algebra::Structure for AsPlain<'_> {
    fn order(&self) -> usize {
        self.0.order()
    }
    fn binary_count(&self) -> usize {
        2
    }
    fn binary(&self, op: usize, a: usize, b: usize) -> usize {
        if op == 0 {
            self.0.add(a, b)
        } else {
            self.0.mul(a, b)
        }
    }
    fn unary_count(&self) -> usize {
        0
    }
    fn unary(&self, _: usize, _: usize) -> usize {
        unreachable!("no unary operations")
    }
    fn label(&self, x: usize) -> String {
        x.to_string()
    }
}

#[test]
fn class_two_commutator_identities() {
    for (p, m, n) in [(3, 1, 1), (2, 2, 2), (5, 1, 1)] {
        let g = group_nonmetacyclic(p, m, n).unwrap();
        let e = group_exponent(&g);
        let o = g.order();
        for x in 0..o {
            for y in 0..o {
                for k in 1..=e {
                    let c = g.pow(commutator(&g, y, x), k * (k - 1) / 2);
                    assert_eq!(g.pow(g.mul(x, y), k), g.mul(g.mul(g.pow(x, k), g.pow(y, k)), c));
                    let cxy = g.pow(commutator(&g, x, y), k);
                    assert_eq!(cxy, commutator(&g, g.pow(x, k), y));
                    assert_eq!(cxy, commutator(&g, x, g.pow(y, k)));
                }
            }
        }
    }
}

fn revalidate_group(g: &FiniteGroup) {
    validate_group(&g.mul_table().rows()).unwrap();
}

#[test]
fn constructed_algebras_validate() {
    revalidate_group(&group_q8().unwrap());
    for (p, m, n) in [(2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1)] {
        let g = group_metacyclic(p, m, n).unwrap();
        assert_eq!(g.order(), p.pow((m + n) as u32));
        revalidate_group(&g);
    }
    for (p, m, n) in [(2, 1, 1), (3, 1, 1), (2, 2, 1), (5, 1, 1)] {
        let g = group_nonmetacyclic(p, m, n).unwrap();
        assert_eq!(g.order(), p.pow((m + n + 1) as u32));
        revalidate_group(&g);
        let f = flat_extension(&g).unwrap();
        assert!(f.is_zero_cancellative());
        assert!(validate_semiring(&f.add_table().rows(), &f.mul_table().rows()).unwrap().is_valid());
    }
    for (_, s) in corpus() {
        assert!(validate_semiring(&s.add_table().rows(), &s.mul_table().rows()).unwrap().is_valid());
    }
}

#[test]
fn flat_extensions_are_zero_cancellative() {
    for g in [
        group_q8().unwrap(),
        group_metacyclic(3, 2, 1).unwrap(),
        srw_core::constructions::abelian_group(&[2, 4]).unwrap(),
    ] {
        let f = flat_extension(&g).unwrap();
        let n = f.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if b != c {
                        assert!(f.mul(a, b) != f.mul(a, c) || f.mul(a, b) == 0);
                        assert!(f.mul(b, a) != f.mul(c, a) || f.mul(b, a) == 0);
                    }
                }
            }
        }
    }
}

#[test]
fn word_products_agree_with_brackets() {
    for fam in [Family::Ell(3), Family::Ell(4), Family::Ell(6), Family::K(4, 2), Family::S(1)] {
        let w = fam.word().unwrap();
        let b = bracket_elements(&w).unwrap();
        let pairs = b.brackets();
        for &(x, ex) in &pairs {
            for &(y, ey) in &pairs {
                let by_rule = x.compose(y).and_then(|z| b.element(z)).unwrap_or(0);
                assert_eq!(b.semiring.semiring.mul(ex, ey), by_rule, "{fam}: {x:?} {y:?}");
            }
        }
    }
}

#[test]
fn lee_words_are_square_free_with_unique_factors() {
    for n in 3..=8 {
        let w = Family::Ell(n).word().unwrap();
        assert!(w.is_square_free());
        let l = w.letters();
        for len in 2..=l.len() {
            let mut seen = std::collections::HashSet::new();
            assert!(l.windows(len).all(|f| seen.insert(f)), "ell({n})");
        }
    }
}

#[test]
fn lee_matrix_up_to_six() {
    for n in 3..=6 {
        let s = word_semiring(&[Family::Ell(n).word().unwrap()], false, false).unwrap().semiring;
        for m in 3..=6 {
            let v = Family::Ell(m).word().unwrap().to_term();
            let verdict = check_free_laws(&s, &v, DEFAULT_BUDGET, 4).unwrap();
            assert_eq!(verdict.holds, n != m, "S(ell({n})) against ell({m})");
        }
    }
}

#[test]
fn cube_law_in_p_words() {
    let law = parse_statement("x*y*z + y*z*x = x*y*z + y*z*x + x*x*x").unwrap();
    for n in 1..=3 {
        let s = word_semiring(&[Family::P(n).word().unwrap()], false, false).unwrap().semiring;
        assert!(satisfies(&s, &law, DEFAULT_BUDGET, 4).unwrap().holds, "p({n})");
    }
}

#[test]
fn finder_output_is_sound() {
    for order in 1..=4 {
        let spec = SearchSpec::flat(order).satisfying(parse_statement("x*y = y*x").unwrap());
        let models = enumerate_models(&spec, 1).unwrap();
        for (i, a) in models.iter().enumerate() {
            assert!(a.is_flat());
            assert!(validate_semiring(&a.add_table().rows(), &a.mul_table().rows()).unwrap().is_valid());
            assert!(naive_verdict(a, &spec.constraints[0]).is_none());
            for b in &models[i + 1..] {
                assert!(is_isomorphic(a, b).is_none());
            }
        }
    }
}

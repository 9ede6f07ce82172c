//! Registered verification checks, grouped into named suites.
//!
//! Each check states the claim it verifies, runs it exhaustively and reports
//! pass or fail with details. A failing check also writes a JSON witness file.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    commutator, group_exponent, is_isomorphic, is_minimal_nonabelian, FiniteGroup, FiniteSemiring,
    Table,
};
use crate::constructions::{
    abelian_group, abelian_types, group_metacyclic, group_nonmetacyclic, group_q8, pair_subgroup,
    scab_power_embedding, t_subsemiring, verify_kni_embedding, word_semiring, word_semiring_of,
    Family, PairCase, Word,
};
use crate::error::{Error, Result};
use crate::finder::{enumerate_models, naive_flat_class_count, SearchSpec};
use crate::satisfaction::{
    check_anticommutative, check_free_laws, is_isoterm_bounded, satisfies, IsotermVerdict,
};
use crate::term::{eval_statement, parse_statement, Statement};

pub const SUITE_NAMES: [&str; 5] = ["groups", "semirings", "lee", "isoterm", "all"];

/// Scale of the suite checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    /// Lee words `ell(n)` for `3 <= n <= lee_max_n`.
    pub lee_max_n: usize,
    /// Largest order of finder models fed to the `S_c(ab)` power embedding.
    pub embed_max_order: usize,
    /// Largest order searched in the classification inside `xy + x = xy = yx`.
    pub classify_max_order: usize,
    /// Largest order compared against the brute-force enumerator.
    pub oracle_max_order: usize,
    /// Extra letters allowed beyond `|w|` in isoterm searches.
    pub isoterm_bound: usize,
    pub budget: u64,
    pub jobs: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            lee_max_n: 5,
            embed_max_order: 6,
            classify_max_order: 5,
            oracle_max_order: 3,
            isoterm_bound: 2,
            budget: crate::DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub name: String,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_file: Option<PathBuf>,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: SuiteParams,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(
            f,
            "suite {} (lee n <= {}, embedding orders <= {}, classification orders <= {}, \
             oracle orders <= {}, isoterm bound {}, budget {}, jobs {})",
            self.suite,
            p.lee_max_n,
            p.embed_max_order,
            p.classify_max_order,
            p.oracle_max_order,
            p.isoterm_bound,
            p.budget,
            p.jobs
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "{} {}/{} [{}] ({} ms)",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite,
                c.name,
                c.claim,
                c.millis
            )?;
            for line in c.detail.lines() {
                writeln!(f, "    {line}")?;
            }
            if let Some(w) = &c.witness_file {
                writeln!(f, "    witness: {}", w.display())?;
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

struct Outcome {
    passed: bool,
    detail: String,
    witness: Option<Value>,
}

/// Collects sub-results of a check.
#[derive(Default)]
struct Log {
    lines: Vec<String>,
    failures: Vec<Value>,
}

impl Log {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.lines.push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
        if !ok {
            self.failures.push(Value::String(what));
        }
    }

    fn expect_with(&mut self, ok: bool, what: impl Into<String>, witness: Value) {
        let what = what.into();
        self.lines.push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
        if !ok {
            self.failures.push(json!({ "check": what, "witness": witness }));
        }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.lines.push(format!("     {}", line.into()));
    }

    fn finish(self) -> Result<Outcome> {
        Ok(Outcome {
            passed: self.failures.is_empty(),
            detail: self.lines.join("\n"),
            witness: (!self.failures.is_empty()).then(|| Value::Array(self.failures)),
        })
    }
}

type CheckFn = fn(&SuiteParams) -> Result<Outcome>;

struct Check {
    suite: &'static str,
    name: &'static str,
    claim: &'static str,
    run: CheckFn,
}

const CHECKS: &[Check] = &[
    Check {
        suite: "groups",
        name: "orders",
        claim: "Q8 and the families M_p(m,n), M_p(m,n,1) have orders 8, p^(m+n), p^(m+n+1) and satisfy their presentations",
        run: check_group_orders,
    },
    Check {
        suite: "groups",
        name: "dihedral",
        claim: "M_2(2,1) and M_2(1,1,1) are both the dihedral group of order 8; Q8 is not",
        run: check_dihedral,
    },
    Check {
        suite: "groups",
        name: "pair-subgroups",
        claim: "each minimal nonabelian p-group G has a two-generated subgroup of G x G that is minimal nonabelian of larger order",
        run: check_pair_subgroups,
    },
    Check {
        suite: "groups",
        name: "exponent-minimality",
        claim: "exp(M_p(m,m,1)) = p^m; Q8, M_2(2,2), M_3(1,1,1) are minimal nonabelian and abelian groups are not",
        run: check_exponent_minimality,
    },
    Check {
        suite: "groups",
        name: "class-two-identities",
        claim: "in groups of nilpotency class 2, (xy)^n = x^n y^n [y,x]^C(n,2) and [x,y]^n = [x^n,y] = [x,y^n]",
        run: check_class_two,
    },
    Check {
        suite: "semirings",
        name: "identities",
        claim: "S_c(ab) satisfies xy = yx, xxy = xx, x1x2x3 = y1y2y3 but not x1x2 = y1y2; S_c(abc) satisfies the first two and x1x2x3x4 = y1y2y3y4 but not x1x2x3 = y1y2y3; S_c(a) satisfies x1x2 = y1y2",
        run: check_identity_suite,
    },
    Check {
        suite: "semirings",
        name: "scab-power-embedding",
        claim: "every flat SI model of xy = yx, xxy = xx, x1x2x3 = y1y2y3 embeds into a Rees quotient of a subsemiring of a power of S_c(ab)",
        run: check_scab_embedding,
    },
    Check {
        suite: "semirings",
        name: "kni-embedding",
        claim: "S(k(n,i)) embeds into S(ell(m)) for m >= n+2, and T_i(ell(n)) is isomorphic to T_i(k(n,i))",
        run: check_kni,
    },
    Check {
        suite: "semirings",
        name: "anticommutativity",
        claim: "S(ell(n)) is anticommutative and S_c(ab) is not; S(p(n)) satisfies xyz+yzx = xyz+yzx+xxx and S_c(abc) does not",
        run: check_anticommutativity,
    },
    Check {
        suite: "semirings",
        name: "maxplus-classification",
        claim: "the flat SI semirings satisfying xy + x = xy and xy = yx are exactly S(a) and M(1)",
        run: check_maxplus,
    },
    Check {
        suite: "semirings",
        name: "finder-oracle",
        claim: "the propagating finder and a brute-force enumerator count the same flat semirings up to isomorphism",
        run: check_finder_oracle,
    },
    Check {
        suite: "lee",
        name: "lee-words",
        claim: "ell(n) is square-free and each of its factors of length at least 2 occurs once",
        run: check_lee_words,
    },
    Check {
        suite: "lee",
        name: "lee-matrix",
        claim: "S(ell(n)) satisfies the ell(m)-free laws if and only if n != m",
        run: check_lee_matrix,
    },
    Check {
        suite: "isoterm",
        name: "abacdc",
        claim: "s(1) is an isoterm for M(abacdc) up to the length bound",
        run: check_isoterm_abacdc,
    },
    Check {
        suite: "isoterm",
        name: "scab-xy",
        claim: "xy is not an isoterm for S_c(ab): yx <= xy holds there",
        run: check_isoterm_scab,
    },
];

/// Runs every check of `name` (or of all suites for `all`) in registration
/// order. Failing checks write `<suite>-<check>.json` into `witness_dir`.
pub fn run_suite(name: &str, params: &SuiteParams, witness_dir: &Path) -> Result<SuiteReport> {
    if !SUITE_NAMES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let mut checks = Vec::new();
    for c in CHECKS.iter().filter(|c| name == "all" || c.suite == name) {
        let start = Instant::now();
        let outcome = (c.run)(params).unwrap_or_else(|e| Outcome {
            passed: false,
            detail: format!("error: {e}"),
            witness: Some(json!({ "error": e.to_string() })),
        });
        let mut report = CheckReport {
            suite: c.suite.to_string(),
            name: c.name.to_string(),
            claim: c.claim.to_string(),
            passed: outcome.passed,
            detail: outcome.detail,
            witness: outcome.witness,
            witness_file: None,
            millis: start.elapsed().as_millis(),
        };
        if !report.passed {
            fs::create_dir_all(witness_dir)?;
            let path = witness_dir.join(format!("{}-{}.json", c.suite, c.name));
            fs::write(&path, serde_json::to_string_pretty(&report)? + "\n")?;
            report.witness_file = Some(path);
        }
        checks.push(report);
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        params: params.clone(),
        checks,
    })
}

fn st(text: &str) -> Result<Statement> {
    parse_statement(text)
}

fn labelled(s: &FiniteSemiring, w: &std::collections::BTreeMap<String, usize>) -> Value {
    let m: serde_json::Map<String, Value> = w
        .iter()
        .map(|(k, &v)| {
            let label = s
                .labels()
                .map(|l| l[v].clone())
                .unwrap_or_else(|| v.to_string());
            (k.clone(), Value::String(label))
        })
        .collect();
    Value::Object(m)
}

const GROUP_PARAMS: [(usize, usize, usize); 5] = [(2, 2, 1), (2, 2, 2), (3, 1, 1), (3, 2, 1), (5, 1, 1)];

fn check_group_orders(_: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    log.expect(group_q8()?.order() == 8, "|Q8| = 8");
    for (p, m, n) in GROUP_PARAMS {
        let e = (p as u64).pow((m + n) as u32) as usize;
        if m >= 2 {
            let g = group_metacyclic(p, m, n)?;
            log.expect(g.order() == e, format!("|M({p},{m},{n})| = {} (expected {e})", g.order()));
        } else {
            log.expect(
                matches!(group_metacyclic(p, m, n), Err(Error::Parameter(_))),
                format!("M({p},{m},{n}) is rejected (the metacyclic family needs m >= 2)"),
            );
        }
        let g = group_nonmetacyclic(p, m, n)?;
        log.expect(
            g.order() == e * p,
            format!("|M({p},{m},{n},1)| = {} (expected {})", g.order(), e * p),
        );
    }
    log.note("presentation relations are verified by each constructor");
    log.finish()
}

/// The symmetries of a square as pairs `(i, j)` for `r^i s^j`.
fn dihedral8() -> Result<FiniteGroup> {
    let code = |i: usize, j: usize| i * 2 + j;
    let mul = Table::from_fn(8, |x, y| {
        let (i, j, k, l) = (x / 2, x % 2, y / 2, y % 2);
        let k = if j == 1 { (4 - k) % 4 } else { k };
        code((i + k) % 4, (j + l) % 2)
    });
    FiniteGroup::new(mul, None)
}

fn check_dihedral(_: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    let d8 = dihedral8()?;
    let m221 = group_metacyclic(2, 2, 1)?;
    let m2111 = group_nonmetacyclic(2, 1, 1)?;
    let q8 = group_q8()?;
    log.expect(is_isomorphic(&m221, &d8).is_some(), "M(2,2,1) is dihedral of order 8");
    log.expect(is_isomorphic(&m2111, &d8).is_some(), "M(2,1,1,1) is dihedral of order 8");
    log.expect(is_isomorphic(&m221, &m2111).is_some(), "M(2,2,1) and M(2,1,1,1) are isomorphic");
    log.expect(is_isomorphic(&q8, &m221).is_none(), "Q8 is not isomorphic to M(2,2,1)");
    log.finish()
}

fn check_pair_subgroups(_: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    let cases = [
        (PairCase::Quaternion, 16),
        (PairCase::MetacyclicWide { p: 2, m: 2, n: 2 }, 32),
        (PairCase::MetacyclicTall { p: 3, m: 2, n: 1 }, 81),
        (PairCase::Nonmetacyclic { p: 3, m: 2, n: 1 }, 243),
    ];
    for (case, order) in cases {
        let h = pair_subgroup(case)?;
        for (rel, ok) in &h.relations {
            log.expect(*ok, format!("{case}: {rel}"));
        }
        log.expect(
            h.subgroup.order() == order && h.subgroup.order() > h.ambient.order(),
            format!(
                "{case}: |H| = {} > |G| = {} (expected {order})",
                h.subgroup.order(),
                h.ambient.order()
            ),
        );
        log.expect(
            h.iso.as_ref().is_some_and(|m| m.is_isomorphism()),
            format!("{case}: H is isomorphic to {}", h.expected_name),
        );
    }
    log.finish()
}

fn check_exponent_minimality(_: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    for (p, m) in [(3, 1), (2, 2), (3, 2), (5, 1)] {
        let g = group_nonmetacyclic(p, m, m)?;
        let e = group_exponent(&g);
        let want = (p as u64).pow(m as u32);
        log.expect(e == want, format!("exp(M({p},{m},{m},1)) = {e} (expected {want})"));
    }
    for (name, g) in [
        ("Q8", group_q8()?),
        ("M(2,2,2)", group_metacyclic(2, 2, 2)?),
        ("M(3,1,1,1)", group_nonmetacyclic(3, 1, 1)?),
    ] {
        let v = is_minimal_nonabelian(&g);
        log.expect_with(v.holds, format!("{name} is minimal nonabelian"), json!(v.witness));
    }
    let mut count = 0;
    for n in 1..=16 {
        for t in abelian_types(n) {
            let g = abelian_group(&t)?;
            log.expect(!is_minimal_nonabelian(&g).holds, format!("Z{t:?} is not minimal nonabelian"));
            count += 1;
        }
    }
    log.note(format!("{count} abelian groups of order <= 16 checked"));
    log.finish()
}

fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn check_class_two(_: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    let groups = [
        ("Q8", group_q8()?),
        ("M(2,2,2)", group_metacyclic(2, 2, 2)?),
        ("M(3,2,1)", group_metacyclic(3, 2, 1)?),
        ("M(2,2,1,1)", group_nonmetacyclic(2, 2, 1)?),
        ("M(3,1,1,1)", group_nonmetacyclic(3, 1, 1)?),
    ];
    for (name, g) in groups {
        let n = g.order();
        let mut bad = None;
        'all: for x in 0..n {
            for y in 0..n {
                for k in 1..=4u64 {
                    let lhs = g.pow(g.mul(x, y), k);
                    let c = g.pow(commutator(&g, y, x), binom2(k));
                    let rhs = g.mul(g.mul(g.pow(x, k), g.pow(y, k)), c);
                    let cxy = commutator(&g, x, y);
                    let ok = lhs == rhs
                        && g.pow(cxy, k) == commutator(&g, g.pow(x, k), y)
                        && g.pow(cxy, k) == commutator(&g, x, g.pow(y, k));
                    if !ok {
                        bad = Some((x, y, k));
                        break 'all;
                    }
                }
            }
        }
        log.expect_with(bad.is_none(), format!("{name}: both identities for n <= 4"), json!(bad));
    }
    log.finish()
}

const I1: &str = "x*y = y*x";
const I2: &str = "x*x*y = x*x";
const I3: &str = "x1*x2*x3 = y1*y2*y3";
const I4: &str = "x1*x2 = y1*y2";

fn check_identity_suite(p: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    let scab = word_semiring_of("ab", true, false)?.semiring;
    let scabc = word_semiring_of("abc", true, false)?.semiring;
    let sca = word_semiring_of("a", true, false)?.semiring;
    let cases: [(&str, &FiniteSemiring, &str, bool); 8] = [
        ("S_c(ab)", &scab, I1, true),
        ("S_c(ab)", &scab, I2, true),
        ("S_c(ab)", &scab, I3, true),
        ("S_c(ab)", &scab, I4, false),
        ("S_c(abc)", &scabc, I1, true),
        ("S_c(abc)", &scabc, I2, true),
        ("S_c(abc)", &scabc, "x1*x2*x3*x4 = y1*y2*y3*y4", true),
        ("S_c(abc)", &scabc, I3, false),
    ];
    for (name, s, law, want) in cases.into_iter().chain([("S_c(a)", &sca, I4, true)]) {
        let v = satisfies(s, &st(law)?, p.budget, p.jobs)?;
        let what = if want { "satisfies" } else { "fails" };
        log.expect(v.holds == want, format!("{name} {what} {law}"));
        if let Some(w) = &v.witness {
            log.note(format!("least falsifier {}", labelled(s, w)));
        }
    }
    // the falsifier x1=a, x2=b, x3=c, y1=y2=y3=a of x1x2x3 = y1y2y3 in S_c(abc)
    let asg: HashMap<String, usize> = [("x1", "a"), ("x2", "b"), ("x3", "c"), ("y1", "a"), ("y2", "a"), ("y3", "a")]
        .iter()
        .map(|&(v, l)| (v.to_string(), scabc.element(l).expect("letter")))
        .collect();
    log.expect(
        !eval_statement(&st(I3)?, &scabc, &asg)?,
        "S_c(abc): x1=a, x2=b, x3=c, y1=y2=y3=a falsifies x1x2x3 = y1y2y3",
    );
    log.finish()
}

fn check_scab_embedding(p: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    let mut total = 0;
    for order in 2..=p.embed_max_order {
        let spec = SearchSpec::flat(order)
            .si()
            .satisfying(st(I1)?)
            .satisfying(st(I2)?)
            .satisfying(st(I3)?);
        let models = enumerate_models(&spec, p.jobs)?;
        for (k, s) in models.iter().enumerate() {
            total += 1;
            let what = format!("order {order} model {k}");
            match scab_power_embedding(s) {
                Ok((q, m)) => log.expect_with(
                    m.is_embedding(),
                    format!("{what}: embeds into T/I of order {}", q.order()),
                    json!({ "mul": s.mul_table().rows() }),
                ),
                Err(e) => log.expect_with(
                    false,
                    format!("{what}: {e}"),
                    json!({ "mul": s.mul_table().rows() }),
                ),
            }
        }
    }
    log.note(format!("{total} models up to order {}", p.embed_max_order));
    log.finish()
}

fn check_kni(_: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    for (n, i, m) in [(4, 2, 6), (5, 2, 7), (5, 3, 7)] {
        let phi = verify_kni_embedding(n, i, m)?;
        log.expect(phi.is_embedding(), format!("S(k({n},{i})) embeds into S(ell({m}))"));
        let a = t_subsemiring(Family::Ell(n), i)?;
        let b = t_subsemiring(Family::K(n, i), i)?;
        log.expect(
            is_isomorphic(&a, &b).is_some(),
            format!("T_{i}(ell({n})) is isomorphic to T_{i}(k({n},{i})) (order {})", a.order()),
        );
    }
    log.finish()
}

fn check_anticommutativity(p: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    for n in 3..=5 {
        let s = word_semiring(&[Family::Ell(n).word()?], false, false)?.semiring;
        log.expect(
            check_anticommutative(&s, p.budget, p.jobs)?.holds,
            format!("S(ell({n})) is anticommutative"),
        );
    }
    let scab = word_semiring_of("ab", true, false)?.semiring;
    let v = check_anticommutative(&scab, p.budget, p.jobs)?;
    log.expect(!v.holds, "S_c(ab) is not anticommutative");
    if let Some(w) = &v.witness {
        log.note(format!("least falsifier {}", labelled(&scab, w)));
    }
    let law = st("x*y*z + y*z*x = x*y*z + y*z*x + x*x*x")?;
    for n in [1, 2] {
        let s = word_semiring(&[Family::P(n).word()?], false, false)?.semiring;
        log.expect(
            satisfies(&s, &law, p.budget, p.jobs)?.holds,
            format!("S(p({n})) satisfies {law}"),
        );
    }
    let scabc = word_semiring_of("abc", true, false)?.semiring;
    let v = satisfies(&scabc, &law, p.budget, p.jobs)?;
    let got = v.witness.as_ref().map(|w| labelled(&scabc, w));
    log.expect_with(
        !v.holds && got == Some(json!({"x": "a", "y": "b", "z": "c"})),
        "S_c(abc) fails it with x=a, y=b, z=c",
        json!(got),
    );
    log.finish()
}

fn check_maxplus(p: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    let mut found = Vec::new();
    for order in 1..=p.classify_max_order {
        let spec = SearchSpec::flat(order)
            .si()
            .satisfying(st("x*y + x = x*y")?)
            .satisfying(st(I1)?);
        found.extend(enumerate_models(&spec, p.jobs)?);
    }
    let sa = word_semiring_of("a", false, false)?.semiring;
    let m1 = FiniteSemiring::flat(Table::from_fn(2, |x, y| x * y), None)?;
    log.expect(found.len() == 2, format!("{} models up to order {}", found.len(), p.classify_max_order));
    log.expect(found.iter().any(|s| is_isomorphic(s, &sa).is_some()), "S(a) is among them");
    log.expect(found.iter().any(|s| is_isomorphic(s, &m1).is_some()), "M(1) is among them");
    log.finish()
}

fn check_finder_oracle(p: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    for order in 1..=p.oracle_max_order.min(crate::finder::NAIVE_MAX_ORDER) {
        let fast = enumerate_models(&SearchSpec::flat(order), p.jobs)?.len();
        let naive = naive_flat_class_count(order)?;
        log.expect(fast == naive, format!("order {order}: finder {fast}, brute force {naive}"));
    }
    log.finish()
}

fn check_lee_words(p: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    for n in 3..=p.lee_max_n.max(8) {
        let w = Family::Ell(n).word()?;
        log.expect(w.is_square_free(), format!("ell({n}) is square-free"));
        let l = w.letters();
        let mut repeated = None;
        'f: for len in 2..=l.len() {
            let mut seen = std::collections::HashSet::new();
            for f in l.windows(len) {
                if !seen.insert(f) {
                    repeated = Some(Word::new(f.to_vec(), false)?.to_string());
                    break 'f;
                }
            }
        }
        log.expect_with(
            repeated.is_none(),
            format!("factors of ell({n}) of length >= 2 are unique"),
            json!(repeated),
        );
    }
    log.finish()
}

fn check_lee_matrix(p: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    let par = if p.jobs > 1 { p.jobs } else { 8 };
    for n in 3..=p.lee_max_n {
        let s = word_semiring(&[Family::Ell(n).word()?], false, false)?.semiring;
        for m in 3..=p.lee_max_n {
            let v = Family::Ell(m).word()?.to_term();
            let seq = check_free_laws(&s, &v, p.budget, 1)?;
            let parallel = check_free_laws(&s, &v, p.budget, par)?;
            let same = seq.holds == parallel.holds && seq.witness == parallel.witness;
            log.expect_with(
                seq.holds == (n != m) && same,
                format!(
                    "S(ell({n})) {} the ell({m})-free laws ({} nodes; jobs 1 and {par} agree: {same})",
                    if seq.holds { "satisfies" } else { "fails" },
                    seq.evaluations
                ),
                json!({ "witness": seq.witness, "statement": seq.failed_statement }),
            );
        }
    }
    log.finish()
}

fn check_isoterm_abacdc(p: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    let m = word_semiring_of("abacdc", false, true)?.semiring;
    let w = Family::S(1).word()?;
    let v = is_isoterm_bounded(&m, &w, p.isoterm_bound, p.budget)?;
    let what = match &v {
        IsotermVerdict::UpToBound { max_len, candidates } => {
            format!("{w} is an isoterm up to length {max_len} ({candidates} candidates)")
        }
        IsotermVerdict::NotIsoterm { witness } => format!("{witness} <= {w} holds"),
    };
    log.expect(v.is_isoterm_up_to_bound(), what);
    log.finish()
}

fn check_isoterm_scab(p: &SuiteParams) -> Result<Outcome> {
    let mut log = Log::default();
    let s = word_semiring_of("ab", true, false)?.semiring;
    let w = Word::parse("xy", false)?;
    let v = is_isoterm_bounded(&s, &w, p.isoterm_bound, p.budget)?;
    let yx = Word::parse("yx", false)?;
    log.expect_with(
        v == IsotermVerdict::NotIsoterm { witness: yx },
        "the least witness is yx",
        json!(format!("{v:?}")),
    );
    log.finish()
}

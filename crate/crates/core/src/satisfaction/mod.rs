//! Exhaustive satisfaction checking with pruning.
//!
//! Assignments are enumerated depth first, variables in name order and values
//! ascending. At every node both sides of each equation are evaluated as far
//! as the assigned prefix allows: a product containing a run of known factors
//! that multiplies to the absorbing zero is zero, and a sum with a known
//! summand equal to the additive top is the top. Once the statement is decided
//! for every completion of the prefix the whole subtree is skipped, and a
//! falsified subtree yields its least completion (remaining values 0) as the
//! witness, which is the lexicographically least falsifier overall.

mod freeword;
mod isoterm;

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::algebra::FiniteSemiring;
use crate::error::{Error, Result};
use crate::term::{eval_statement, Equation, Statement, Term};

pub use crate::constructions::verify_kni_embedding;
pub use freeword::{check_anticommutative, check_free_laws, fresh_variable, is_v_free_word};
pub use isoterm::{is_isoterm_bounded, IsotermVerdict};

/// Outcome of a satisfaction check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Least falsifying assignment, variables by name.
    pub witness: Option<BTreeMap<String, usize>>,
    /// The statement the witness falsifies.
    pub failed_statement: Option<String>,
    pub statements_checked: usize,
    /// Assignments decided, counted as if the search ran sequentially.
    pub assignments_covered: u128,
    /// Search nodes visited (the unit the budget is charged in).
    pub evaluations: u64,
}

impl Verdict {
    fn merge(&mut self, other: Verdict) {
        self.holds = other.holds;
        self.witness = other.witness;
        self.failed_statement = other.failed_statement;
        self.statements_checked += other.statements_checked;
        self.assignments_covered += other.assignments_covered;
        self.evaluations += other.evaluations;
    }

    fn empty() -> Verdict {
        Verdict {
            holds: true,
            witness: None,
            failed_statement: None,
            statements_checked: 0,
            assignments_covered: 0,
            evaluations: 0,
        }
    }
}

#[derive(Clone, Debug)]
enum CTerm {
    Var(usize),
    Sum(Vec<CTerm>),
    Prod(Vec<CTerm>),
}

impl CTerm {
    fn compile(t: &Term, vars: &[String]) -> CTerm {
        match t {
            Term::Var(v) => CTerm::Var(vars.binary_search(v).expect("variable collected")),
            Term::Sum(cs) => CTerm::Sum(cs.iter().map(|c| CTerm::compile(c, vars)).collect()),
            Term::Product(cs) => {
                CTerm::Prod(cs.iter().map(|c| CTerm::compile(c, vars)).collect())
            }
        }
    }
}

struct Engine<'a> {
    s: &'a FiniteSemiring,
    n: usize,
    nvars: usize,
    /// Multiplicatively absorbing element.
    zero: Option<usize>,
    /// Additively absorbing element.
    top: Option<usize>,
    premises: Vec<(CTerm, CTerm)>,
    conclusion: (CTerm, CTerm),
}

enum Decision {
    Holds,
    Fails,
    Open,
}

impl Engine<'_> {
    fn eval(&self, t: &CTerm, asg: &[usize], depth: usize) -> Option<usize> {
        match t {
            CTerm::Var(v) => (*v < depth).then(|| asg[*v]),
            CTerm::Prod(cs) => {
                let mut run: Option<usize> = None;
                let mut complete = true;
                for c in cs {
                    match self.eval(c, asg, depth) {
                        Some(x) => run = Some(run.map_or(x, |r| self.s.mul(r, x))),
                        None => {
                            if run.is_some() && run == self.zero {
                                return run;
                            }
                            complete = false;
                            run = None;
                        }
                    }
                }
                if complete || (run.is_some() && run == self.zero) {
                    run
                } else {
                    None
                }
            }
            CTerm::Sum(cs) => {
                let mut acc: Option<usize> = None;
                let mut complete = true;
                for c in cs {
                    match self.eval(c, asg, depth) {
                        Some(x) => {
                            if Some(x) == self.top {
                                return Some(x);
                            }
                            acc = Some(acc.map_or(x, |a| self.s.add(a, x)));
                        }
                        None => complete = false,
                    }
                }
                if complete {
                    acc
                } else {
                    None
                }
            }
        }
    }

    fn equation(&self, eq: &(CTerm, CTerm), asg: &[usize], depth: usize) -> Option<bool> {
        let l = self.eval(&eq.0, asg, depth)?;
        let r = self.eval(&eq.1, asg, depth)?;
        Some(l == r)
    }

    fn decide(&self, asg: &[usize], depth: usize) -> Decision {
        let mut all_true = true;
        for p in &self.premises {
            match self.equation(p, asg, depth) {
                Some(false) => return Decision::Holds,
                Some(true) => {}
                None => all_true = false,
            }
        }
        match self.equation(&self.conclusion, asg, depth) {
            Some(true) => Decision::Holds,
            Some(false) if all_true => Decision::Fails,
            _ => Decision::Open,
        }
    }

    fn subtree_size(&self, depth: usize) -> u128 {
        (self.n as u128).saturating_pow((self.nvars - depth) as u32)
    }
}

struct Subtree {
    covered: u128,
    evaluations: u64,
    witness: Option<Vec<usize>>,
}

struct Run<'a> {
    engine: &'a Engine<'a>,
    budget: u64,
    spent: &'a AtomicU64,
    /// Least subtree index known to hold a witness; later subtrees may stop.
    best: &'a AtomicUsize,
    index: usize,
}

impl Run<'_> {
    fn dfs(&self, asg: &mut Vec<usize>, depth: usize, out: &mut Subtree) -> Result<bool> {
        out.evaluations += 1;
        if out.evaluations % 4096 == 0 {
            let total = self.spent.fetch_add(4096, Ordering::Relaxed) + 4096;
            if total > self.budget {
                return Err(Error::Budget {
                    budget: self.budget,
                    required: self.engine.subtree_size(0),
                });
            }
            if self.best.load(Ordering::Relaxed) < self.index {
                return Ok(true);
            }
        }
        match self.engine.decide(asg, depth) {
            Decision::Holds => {
                out.covered += self.engine.subtree_size(depth);
                Ok(false)
            }
            Decision::Fails => {
                let mut w = asg[..depth].to_vec();
                w.resize(self.engine.nvars, 0);
                out.covered += 1;
                out.witness = Some(w);
                Ok(true)
            }
            Decision::Open => {
                debug_assert!(depth < self.engine.nvars, "complete assignments are decided");
                for x in 0..self.engine.n {
                    asg[depth] = x;
                    if self.dfs(asg, depth + 1, out)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }
}

fn check_one(s: &FiniteSemiring, st: &Statement, budget: u64, jobs: usize) -> Result<Verdict> {
    let vars: Vec<String> = st.variables().into_iter().collect();
    let (premises, conclusion) = st.parts();
    let compile = |eq: &Equation| (CTerm::compile(&eq.lhs, &vars), CTerm::compile(&eq.rhs, &vars));
    let n = s.order();
    let absorbing_mul = (0..n).find(|&z| (0..n).all(|x| s.mul(z, x) == z && s.mul(x, z) == z));
    let engine = Engine {
        s,
        n,
        nvars: vars.len(),
        zero: absorbing_mul,
        top: s.additive_top(),
        premises: premises.iter().map(compile).collect(),
        conclusion: compile(&conclusion),
    };
    let spent = AtomicU64::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let mut asg = vec![0; vars.len()];

    // The root may already be decided; otherwise split on the first variable.
    let root = match engine.decide(&asg, 0) {
        Decision::Open => None,
        d => Some(d),
    };
    let subtrees: Vec<Subtree> = match root {
        Some(Decision::Holds) => vec![Subtree {
            covered: engine.subtree_size(0),
            evaluations: 1,
            witness: None,
        }],
        Some(_) => vec![Subtree {
            covered: 1,
            evaluations: 1,
            witness: Some(asg.clone()),
        }],
        None => {
            let work = |x: usize| -> Result<Subtree> {
                let run = Run {
                    engine: &engine,
                    budget,
                    spent: &spent,
                    best: &best,
                    index: x,
                };
                let mut out = Subtree {
                    covered: 0,
                    evaluations: 0,
                    witness: None,
                };
                let mut a = vec![0; engine.nvars];
                a[0] = x;
                if best.load(Ordering::Relaxed) >= x {
                    run.dfs(&mut a, 1, &mut out)?;
                }
                if out.witness.is_some() {
                    best.fetch_min(x, Ordering::Relaxed);
                }
                Ok(out)
            };
            if jobs <= 1 {
                let mut v = Vec::new();
                for x in 0..n {
                    let t = work(x)?;
                    let done = t.witness.is_some();
                    v.push(t);
                    if done {
                        break;
                    }
                }
                v
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
                pool.install(|| (0..n).into_par_iter().map(work).collect::<Result<Vec<_>>>())?
            }
        }
    };
    asg.clear();

    let mut verdict = Verdict::empty();
    verdict.statements_checked = 1;
    verdict.evaluations = root.is_none() as u64;
    for t in subtrees {
        verdict.assignments_covered += t.covered;
        verdict.evaluations += t.evaluations;
        if let Some(w) = t.witness {
            let witness: BTreeMap<String, usize> = vars.iter().cloned().zip(w).collect();
            // Independent re-check with the plain evaluator.
            let map: HashMap<String, usize> = witness.clone().into_iter().collect();
            if eval_statement(st, s, &map)? {
                return Err(Error::Construction(format!(
                    "witness {witness:?} does not falsify `{st}`"
                )));
            }
            verdict.holds = false;
            verdict.witness = Some(witness);
            verdict.failed_statement = Some(st.to_string());
            break;
        }
    }
    // Workers charge the shared budget in blocks; this is the exact count.
    if verdict.evaluations > budget {
        return Err(Error::Budget {
            budget,
            required: engine.subtree_size(0),
        });
    }
    Ok(verdict)
}

/// Decides `S |= st` exhaustively. `budget` bounds the number of search nodes;
/// `jobs > 1` splits on the first variable without changing the result.
pub fn satisfies(s: &FiniteSemiring, st: &Statement, budget: u64, jobs: usize) -> Result<Verdict> {
    check_one(s, st, budget, jobs)
}

/// Checks statements in order, stopping at the first failure.
pub fn satisfies_all(
    s: &FiniteSemiring,
    sts: &[Statement],
    budget: u64,
    jobs: usize,
) -> Result<Verdict> {
    let mut total = Verdict::empty();
    for st in sts {
        let v = check_one(s, st, budget.saturating_sub(total.evaluations), jobs)?;
        let failed = !v.holds;
        total.merge(v);
        if failed {
            break;
        }
    }
    Ok(total)
}

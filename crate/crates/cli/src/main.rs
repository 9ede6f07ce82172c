use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use srw_core::algebra::{Algebra, FiniteSemiring};
use srw_core::cache::{cached_isomorphism, cached_models, Cache, Lookup};
use srw_core::constructions::{flat_extension, group_by_name, word_semiring_of};
use srw_core::error::Error;
use srw_core::finder::{find_separating_algebra, SearchSpec};
use srw_core::io::{load_algebra, store_algebra, to_value};
use srw_core::satisfaction::{is_isoterm_bounded, satisfies, IsotermVerdict};
use srw_core::suite::{run_suite, SuiteParams};
use srw_core::term::{parse_statement, Statement};

const EXIT_FAIL: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Finite semiring and group workbench.
#[derive(Parser)]
#[command(name = "srw", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Search-node budget for exhaustive checks.
    #[arg(long, global = true, env = "SRW_BUDGET", default_value_t = srw_core::DEFAULT_BUDGET)]
    budget: u64,
    /// Skip the on-disk result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Recompute cached results and fail if they differ from the cache.
    #[arg(long, global = true, conflicts_with = "no_cache")]
    check_cache: bool,
    /// Worker threads for the searches that can split their work.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Directory for written algebras and witness files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// The flat extension of a named group.
    FlatGroup,
    /// A word semiring S(w), S_c(w), M(w) or M_c(w).
    Word,
    /// A named group.
    Group,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a named algebra and store it as JSON.
    Build {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Q8, M(p,m,n), M(p,m,n,1), Z(k,...) for groups; a word or a family
        /// such as ell(4) or k(4,2) for word semirings.
        #[arg(long)]
        name: String,
        /// Commutative words (S_c, M_c).
        #[arg(long)]
        commutative: bool,
        /// Adjoin the empty word (M, M_c).
        #[arg(long)]
        monoid: bool,
        /// Output file; defaults to a file named after the algebra in --out.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Decide identities, order statements or quasi-identities.
    Check {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long = "statement", required = true)]
        statements: Vec<String>,
    },
    /// Search for an isomorphism between two stored algebras.
    Iso { a: PathBuf, b: PathBuf },
    /// Enumerate models up to isomorphism.
    Find(FindArgs),
    /// Run a verification suite.
    Verify {
        /// groups, semirings, lee, isoterm or all.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        lee_max_n: Option<usize>,
        #[arg(long)]
        embed_max_order: Option<usize>,
        #[arg(long)]
        classify_max_order: Option<usize>,
        #[arg(long)]
        oracle_max_order: Option<usize>,
        #[arg(long)]
        isoterm_bound: Option<usize>,
    },
    /// Search for the least word v != w with v + w = w in the algebra.
    Isoterm {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        word: String,
        /// Extra letters allowed beyond the length of the word.
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
}

#[derive(Args)]
struct FindArgs {
    #[arg(long)]
    order: usize,
    /// Search every order from 1 to --order.
    #[arg(long)]
    up_to: bool,
    /// Restrict to flat semirings (otherwise all ai-semirings).
    #[arg(long)]
    flat: bool,
    #[arg(long = "satisfies")]
    satisfies: Vec<String>,
    #[arg(long = "fails")]
    fails: Vec<String>,
    /// Only subdirectly irreducible models.
    #[arg(long)]
    si: bool,
    #[arg(long)]
    limit: Option<usize>,
    /// Report only the first model at the least order up to --order.
    #[arg(long, conflicts_with_all = ["up_to", "limit"])]
    separating: bool,
}

fn parse_all(texts: &[String]) -> Result<Vec<Statement>> {
    texts
        .iter()
        .map(|t| parse_statement(t).with_context(|| format!("in statement `{t}`")))
        .collect()
}

fn load_semiring(path: &Path) -> Result<FiniteSemiring> {
    match load_algebra(path).with_context(|| format!("loading {}", path.display()))? {
        Algebra::Semiring(s) => Ok(s),
        Algebra::Group(_) => bail!("{} holds a group, a semiring is needed", path.display()),
    }
}

fn cache_for(g: &Global) -> Cache {
    if g.no_cache {
        Cache::disabled()
    } else {
        Cache::from_env()
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("plain data serializes"));
}

fn format_table(s: &FiniteSemiring) -> String {
    let n = s.order();
    let label = |x: usize| s.labels().map_or_else(|| x.to_string(), |l| l[x].clone());
    let width = (0..n).map(|x| label(x).len()).max().unwrap_or(1);
    let mut out = String::new();
    out.push_str(&format!("{:>width$} |", "*"));
    for y in 0..n {
        out.push_str(&format!(" {:>width$}", label(y)));
    }
    out.push('\n');
    for x in 0..n {
        out.push_str(&format!("{:>width$} |", label(x)));
        for y in 0..n {
            out.push_str(&format!(" {:>width$}", label(s.mul(x, y))));
        }
        out.push('\n');
    }
    out
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect::<String>()
        .trim_matches('_')
        .to_string()
}

fn build(
    g: &Global,
    kind: Kind,
    name: &str,
    commutative: bool,
    monoid: bool,
    file: Option<PathBuf>,
) -> Result<u8> {
    let (algebra, stem): (Algebra, String) = match kind {
        Kind::Group => (group_by_name(name)?.into(), format!("group-{}", file_stem(name))),
        Kind::FlatGroup => (
            flat_extension(&group_by_name(name)?)?.into(),
            format!("flat-{}", file_stem(name)),
        ),
        Kind::Word => {
            let prefix = match (monoid, commutative) {
                (false, false) => "S",
                (false, true) => "Sc",
                (true, false) => "M",
                (true, true) => "Mc",
            };
            (
                word_semiring_of(name, commutative, monoid)?.semiring.into(),
                format!("{prefix}-{}", file_stem(name)),
            )
        }
    };
    let path = file.unwrap_or_else(|| {
        g.out
            .clone()
            .unwrap_or_else(|| PathBuf::from("."))
            .join(format!("{stem}.json"))
    });
    store_algebra(&algebra, &path)?;
    if g.json {
        print_json(&json!({
            "kind": algebra.kind(),
            "order": srw_core::algebra::Structure::order(&algebra),
            "path": path,
        }));
    } else {
        println!(
            "{} of order {} written to {}",
            algebra.kind(),
            srw_core::algebra::Structure::order(&algebra),
            path.display()
        );
    }
    Ok(0)
}

fn check(g: &Global, algebra: &Path, statements: &[String]) -> Result<u8> {
    let s = load_semiring(algebra)?;
    let sts = parse_all(statements)?;
    let mut all = true;
    let mut reports = Vec::new();
    for st in &sts {
        let v = satisfies(&s, st, g.budget, g.jobs)?;
        all &= v.holds;
        let witness = v.witness.as_ref().map(|w| {
            w.iter()
                .map(|(k, &x)| {
                    let label = s.labels().map_or_else(|| x.to_string(), |l| l[x].clone());
                    (k.clone(), json!(label))
                })
                .collect::<serde_json::Map<_, _>>()
        });
        if g.json {
            reports.push(json!({
                "statement": st.to_string(),
                "holds": v.holds,
                "witness": witness,
                "evaluations": v.evaluations,
            }));
        } else {
            println!("{} {st}", if v.holds { "holds:" } else { "fails:" });
            if let Some(w) = witness {
                let parts: Vec<String> = w.iter().map(|(k, v)| format!("{k}={}", v.as_str().unwrap_or(""))).collect();
                println!("    witness: {}", parts.join(", "));
            }
        }
    }
    if g.json {
        print_json(&json!({ "algebra": algebra, "all_hold": all, "statements": reports }));
    }
    Ok(if all { 0 } else { EXIT_FAIL })
}

fn lookup_note(l: Lookup) -> &'static str {
    match l {
        Lookup::Hit => "cache hit",
        Lookup::Miss => "computed",
        Lookup::Corrupt => "recomputed (corrupt cache entry)",
        Lookup::Disabled => "computed (cache disabled)",
    }
}

fn iso(g: &Global, a: &Path, b: &Path) -> Result<u8> {
    let x = load_algebra(a).with_context(|| format!("loading {}", a.display()))?;
    let y = load_algebra(b).with_context(|| format!("loading {}", b.display()))?;
    let (m, lookup) = cached_isomorphism(&cache_for(g), &x, &y)?;
    if g.check_cache {
        let (fresh, _) = cached_isomorphism(&Cache::disabled(), &x, &y)?;
        if fresh.as_ref().map(|m| &m.map) != m.as_ref().map(|m| &m.map) {
            bail!("cached isomorphism differs from recomputation");
        }
    }
    if g.json {
        print_json(&json!({
            "isomorphic": m.is_some(),
            "map": m.as_ref().map(|m| &m.map),
            "source": lookup_note(lookup),
        }));
    } else {
        match &m {
            Some(m) => {
                println!("isomorphic ({})", lookup_note(lookup));
                let parts: Vec<String> = m
                    .map
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| format!("{} -> {}", x.label_of(i), y.label_of(j)))
                    .collect();
                println!("    {}", parts.join(", "));
            }
            None => println!("not isomorphic ({})", lookup_note(lookup)),
        }
    }
    Ok(if m.is_some() { 0 } else { EXIT_FAIL })
}

trait LabelOf {
    fn label_of(&self, x: usize) -> String;
}

impl LabelOf for Algebra {
    fn label_of(&self, x: usize) -> String {
        self.labels().map_or_else(|| x.to_string(), |l| l[x].clone())
    }
}

fn find(g: &Global, f: &FindArgs) -> Result<u8> {
    let sat = parse_all(&f.satisfies)?;
    let fail = parse_all(&f.fails)?;
    let models: Vec<FiniteSemiring> = if f.separating {
        find_separating_algebra(&sat, &fail, f.order, f.flat, f.si, g.jobs)?
            .into_iter()
            .collect()
    } else {
        let orders: Vec<usize> = if f.up_to { (1..=f.order).collect() } else { vec![f.order] };
        let cache = cache_for(g);
        let mut out = Vec::new();
        for order in orders {
            let spec = SearchSpec {
                order,
                require_flat: f.flat,
                constraints: sat.clone(),
                fails: fail.clone(),
                require_si: f.si,
                limit: f.limit.map(|k| k.saturating_sub(out.len())),
            };
            if spec.limit == Some(0) {
                break;
            }
            let (models, lookup) = cached_models(&cache, &spec, g.jobs)?;
            if g.check_cache {
                let (fresh, _) = cached_models(&Cache::disabled(), &spec, g.jobs)?;
                if fresh != models {
                    bail!("cached models for order {order} differ from recomputation");
                }
            }
            if !g.json {
                println!("order {order}: {} model(s) ({})", models.len(), lookup_note(lookup));
            }
            out.extend(models);
        }
        out
    };
    let mut paths = Vec::new();
    if let Some(dir) = &g.out {
        for (k, m) in models.iter().enumerate() {
            let path = dir.join(format!("model-{k}.json"));
            store_algebra(&m.clone().into(), &path)?;
            paths.push(path);
        }
    }
    if g.json {
        let list: Vec<_> = models.iter().map(|m| to_value(&m.clone().into())).collect();
        print_json(&json!({ "count": models.len(), "models": list, "files": paths }));
    } else {
        for (k, m) in models.iter().enumerate() {
            println!("model {k} (order {}):", m.order());
            print!("{}", format_table(m));
        }
        if f.separating && models.is_empty() {
            println!("no separating model up to order {}", f.order);
        }
        for p in &paths {
            println!("written {}", p.display());
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    g: &Global,
    suite: &str,
    lee_max_n: Option<usize>,
    embed_max_order: Option<usize>,
    classify_max_order: Option<usize>,
    oracle_max_order: Option<usize>,
    isoterm_bound: Option<usize>,
) -> Result<u8> {
    let d = SuiteParams::default();
    let params = SuiteParams {
        lee_max_n: lee_max_n.unwrap_or(d.lee_max_n),
        embed_max_order: embed_max_order.unwrap_or(d.embed_max_order),
        classify_max_order: classify_max_order.unwrap_or(d.classify_max_order),
        oracle_max_order: oracle_max_order.unwrap_or(d.oracle_max_order),
        isoterm_bound: isoterm_bound.unwrap_or(d.isoterm_bound),
        budget: g.budget,
        jobs: g.jobs,
    };
    let dir = g.out.clone().unwrap_or_else(|| PathBuf::from("srw-witnesses"));
    let report = run_suite(suite, &params, &dir)?;
    if g.json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
    }
    Ok(if report.passed() { 0 } else { EXIT_FAIL })
}

fn isoterm(g: &Global, algebra: &Path, word: &str, bound: usize) -> Result<u8> {
    let s = load_semiring(algebra)?;
    let w = srw_core::constructions::Word::parse(word, false)?;
    let v = is_isoterm_bounded(&s, &w, bound, g.budget)?;
    match &v {
        IsotermVerdict::UpToBound { max_len, candidates } => {
            if g.json {
                print_json(&json!({
                    "word": w.to_string(),
                    "isoterm_up_to_bound": true,
                    "max_len": max_len,
                    "candidates": candidates,
                }));
            } else {
                println!("{w} is an isoterm up to length {max_len} ({candidates} candidates)");
            }
            Ok(0)
        }
        IsotermVerdict::NotIsoterm { witness } => {
            if g.json {
                print_json(&json!({
                    "word": w.to_string(),
                    "isoterm_up_to_bound": false,
                    "witness": witness.to_string(),
                }));
            } else {
                println!("not an isoterm: {witness} + {w} = {w} holds");
            }
            Ok(EXIT_FAIL)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let g = &cli.global;
    if g.jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    match &cli.command {
        Command::Build {
            kind,
            name,
            commutative,
            monoid,
            file,
        } => build(g, *kind, name, *commutative, *monoid, file.clone()),
        Command::Check {
            algebra,
            statements,
        } => check(g, algebra, statements),
        Command::Iso { a, b } => iso(g, a, b),
        Command::Find(f) => find(g, f),
        Command::Verify {
            suite,
            lee_max_n,
            embed_max_order,
            classify_max_order,
            oracle_max_order,
            isoterm_bound,
        } => verify(
            g,
            suite,
            *lee_max_n,
            *embed_max_order,
            *classify_max_order,
            *oracle_max_order,
            *isoterm_bound,
        ),
        Command::Isoterm {
            algebra,
            word,
            bound,
        } => isoterm(g, algebra, word, *bound),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::Budget { .. })));
            ExitCode::from(if budget { EXIT_BUDGET } else { EXIT_ERROR })
        }
    }
}

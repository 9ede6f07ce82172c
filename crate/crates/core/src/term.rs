//! Semiring terms and statements.
//!
//! Grammar (whitespace is insignificant between tokens):
//!
//! ```text
//! sum  := prod ('+' prod)*
//! prod := atom (atom | '*' atom)*
//! atom := identifier | '(' sum ')'
//! ```
//!
//! An identifier is `[A-Za-z][A-Za-z0-9_]*`, so `xyx` is a single variable and
//! the word `x y x` has to be written with spaces or stars. Statements are
//! `L = R` (or `L == R`), `L <= R` (read as `L + R = R`) and quasi-identities
//! `P1 = Q1 & ... & Pk = Qk => L = R`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::algebra::FiniteSemiring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    /// Flattened: no child is itself a `Sum`; at least two children.
    Sum(Vec<Term>),
    /// Flattened: no child is itself a `Product`; at least two children.
    Product(Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    /// Builds a sum, splicing nested sums into the parent.
    pub fn sum(children: impl IntoIterator<Item = Term>) -> Term {
        let mut out = Vec::new();
        for c in children {
            match c {
                Term::Sum(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        assert!(!out.is_empty(), "empty sum");
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Term::Sum(out)
        }
    }

    /// Builds a product, splicing nested products into the parent.
    pub fn product(children: impl IntoIterator<Item = Term>) -> Term {
        let mut out = Vec::new();
        for c in children {
            match c {
                Term::Product(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        assert!(!out.is_empty(), "empty product");
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Term::Product(out)
        }
    }

    /// The product of the given variable names, in order.
    pub fn word<S: AsRef<str>>(letters: &[S]) -> Term {
        Term::product(letters.iter().map(|s| Term::var(s.as_ref())))
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Sum(cs) | Term::Product(cs) => cs.iter().for_each(|c| c.collect_vars(out)),
        }
    }

    /// Letters of a pure product term (a single variable counts), or `None`.
    pub fn as_word(&self) -> Option<Vec<String>> {
        match self {
            Term::Var(v) => Some(vec![v.clone()]),
            Term::Product(cs) => cs
                .iter()
                .map(|c| match c {
                    Term::Var(v) => Some(v.clone()),
                    _ => None,
                })
                .collect(),
            Term::Sum(_) => None,
        }
    }

    /// Checks the flattening and identifier invariants.
    pub fn is_well_formed(&self) -> bool {
        match self {
            Term::Var(v) => is_identifier(v),
            Term::Sum(cs) => {
                cs.len() >= 2
                    && cs
                        .iter()
                        .all(|c| !matches!(c, Term::Sum(_)) && c.is_well_formed())
            }
            Term::Product(cs) => {
                cs.len() >= 2
                    && cs
                        .iter()
                        .all(|c| !matches!(c, Term::Product(_)) && c.is_well_formed())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Sum(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            Term::Product(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    match c {
                        Term::Sum(_) => write!(f, "({c})")?,
                        _ => write!(f, "{c}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Statement {
    Identity(Equation),
    /// `lo <= hi`, meaning `lo + hi = hi`.
    Order { lo: Term, hi: Term },
    QuasiIdentity {
        premises: Vec<Equation>,
        conclusion: Equation,
    },
}

impl Statement {
    pub fn identity(lhs: Term, rhs: Term) -> Self {
        Statement::Identity(Equation::new(lhs, rhs))
    }

    /// `lo <= hi` already rewritten to `lo + hi = hi`.
    pub fn order(lo: Term, hi: Term) -> Self {
        Statement::identity(Term::sum([lo, hi.clone()]), hi)
    }

    /// Rewrites every order statement into its identity form.
    pub fn normalize(self) -> Statement {
        match self {
            Statement::Order { lo, hi } => Statement::order(lo, hi),
            other => other,
        }
    }

    /// Premises and conclusion of the normalized statement.
    pub fn parts(&self) -> (Vec<Equation>, Equation) {
        match self.clone().normalize() {
            Statement::Identity(eq) => (Vec::new(), eq),
            Statement::QuasiIdentity {
                premises,
                conclusion,
            } => (premises, conclusion),
            Statement::Order { .. } => unreachable!(),
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let (premises, conclusion) = self.parts();
        let mut out = BTreeSet::new();
        for eq in premises.iter().chain(std::iter::once(&conclusion)) {
            out.extend(eq.lhs.variables());
            out.extend(eq.rhs.variables());
        }
        out
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Identity(eq) => write!(f, "{eq}"),
            Statement::Order { lo, hi } => write!(f, "{lo} <= {hi}"),
            Statement::QuasiIdentity {
                premises,
                conclusion,
            } => {
                for (i, p) in premises.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, " => {conclusion}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Plus,
    Star,
    LParen,
    RParen,
    Eq,
    Le,
    Implies,
    And,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let next = chars.get(i + 1).copied();
        match c {
            c if c.is_whitespace() => i += 1,
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((col, Tok::Ident(chars[start..i].iter().collect())));
            }
            '+' => {
                toks.push((col, Tok::Plus));
                i += 1;
            }
            '*' => {
                toks.push((col, Tok::Star));
                i += 1;
            }
            '(' => {
                toks.push((col, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((col, Tok::RParen));
                i += 1;
            }
            '&' => {
                toks.push((col, Tok::And));
                i += 1;
            }
            '=' if next == Some('>') => {
                toks.push((col, Tok::Implies));
                i += 2;
            }
            '=' if next == Some('=') => {
                toks.push((col, Tok::Eq));
                i += 2;
            }
            '=' => {
                toks.push((col, Tok::Eq));
                i += 1;
            }
            '<' if next == Some('=') => {
                toks.push((col, Tok::Le));
                i += 2;
            }
            '!' if next == Some('=') => {
                return Err(Error::Syntax {
                    pos: col,
                    msg: "`!=` is not supported; premises and conclusions are equalities".into(),
                })
            }
            other => {
                return Err(Error::Syntax {
                    pos: col,
                    msg: format!("illegal character `{other}`"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.at).map_or(self.end_col, |(c, _)| *c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.col(),
            msg: msg.into(),
        })
    }

    fn sum(&mut self) -> Result<Term> {
        let mut parts = vec![self.prod()?];
        while self.peek() == Some(&Tok::Plus) {
            self.at += 1;
            parts.push(self.prod()?);
        }
        Ok(Term::sum(parts))
    }

    fn prod(&mut self) -> Result<Term> {
        let mut parts = vec![self.atom()?];
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    parts.push(self.atom()?);
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) => parts.push(self.atom()?),
                _ => break,
            }
        }
        Ok(Term::product(parts))
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(Term::Var(name))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.at += 1;
                Ok(inner)
            }
            Some(Tok::RParen) => self.err("empty operand before `)`"),
            Some(_) => self.err("empty operand"),
            None => self.err("unexpected end of input: empty operand"),
        }
    }

    fn equation(&mut self) -> Result<(Term, Tok, Term)> {
        let lhs = self.sum()?;
        let rel = match self.peek() {
            Some(Tok::Eq) => Tok::Eq,
            Some(Tok::Le) => Tok::Le,
            _ => return self.err("expected `=`, `==` or `<=`"),
        };
        self.at += 1;
        let rhs = self.sum()?;
        Ok((lhs, rel, rhs))
    }
}

fn equation_of(lhs: Term, rel: Tok, rhs: Term) -> Equation {
    match rel {
        Tok::Le => Equation::new(Term::sum([lhs, rhs.clone()]), rhs),
        _ => Equation::new(lhs, rhs),
    }
}

fn parser_for(text: &str) -> Result<Parser> {
    if text.trim().is_empty() {
        return Err(Error::Syntax {
            pos: 1,
            msg: "empty input".into(),
        });
    }
    Ok(Parser {
        toks: tokenize(text)?,
        at: 0,
        end_col: text.chars().count() + 1,
    })
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = parser_for(text)?;
    let t = p.sum()?;
    match p.peek() {
        None => Ok(t),
        Some(Tok::RParen) => p.err("unbalanced `)`"),
        Some(_) => p.err("unexpected token after term"),
    }
}

/// Parses an identity, order statement or quasi-identity. Order statements
/// come back already normalized to identities.
pub fn parse_statement(text: &str) -> Result<Statement> {
    let mut p = parser_for(text)?;
    let mut eqs = vec![p.equation()?];
    while p.peek() == Some(&Tok::And) {
        p.at += 1;
        eqs.push(p.equation()?);
    }
    let st = match p.peek() {
        None if eqs.len() == 1 => {
            let (lhs, rel, rhs) = eqs.pop().unwrap();
            Statement::Identity(equation_of(lhs, rel, rhs))
        }
        None => return p.err("`&` is only allowed between premises of a quasi-identity"),
        Some(Tok::Implies) => {
            p.at += 1;
            let (lhs, rel, rhs) = p.equation()?;
            match p.peek() {
                None => {}
                Some(Tok::Implies) => return p.err("more than one `=>`"),
                Some(Tok::RParen) => return p.err("unbalanced `)`"),
                Some(_) => return p.err("unexpected token after conclusion"),
            }
            Statement::QuasiIdentity {
                premises: eqs
                    .into_iter()
                    .map(|(l, r, h)| equation_of(l, r, h))
                    .collect(),
                conclusion: equation_of(lhs, rel, rhs),
            }
        }
        Some(Tok::RParen) => return p.err("unbalanced `)`"),
        Some(_) => return p.err("unexpected token"),
    };
    Ok(st)
}

/// Evaluates `t` in `s`, folding sums and products left to right.
pub fn eval_term(t: &Term, s: &FiniteSemiring, asg: &HashMap<String, usize>) -> Result<usize> {
    match t {
        Term::Var(v) => {
            let x = *asg
                .get(v)
                .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            if x >= s.order() {
                return Err(Error::Precondition(format!(
                    "value {x} for `{v}` is outside the carrier"
                )));
            }
            Ok(x)
        }
        Term::Sum(cs) => {
            let mut acc = eval_term(&cs[0], s, asg)?;
            for c in &cs[1..] {
                acc = s.add(acc, eval_term(c, s, asg)?);
            }
            Ok(acc)
        }
        Term::Product(cs) => {
            let mut acc = eval_term(&cs[0], s, asg)?;
            for c in &cs[1..] {
                acc = s.mul(acc, eval_term(c, s, asg)?);
            }
            Ok(acc)
        }
    }
}

/// Whether `eq` holds under `asg`.
pub fn eval_equation(eq: &Equation, s: &FiniteSemiring, asg: &HashMap<String, usize>) -> Result<bool> {
    Ok(eval_term(&eq.lhs, s, asg)? == eval_term(&eq.rhs, s, asg)?)
}

/// Whether a statement holds under one assignment (premises failing counts as holding).
pub fn eval_statement(st: &Statement, s: &FiniteSemiring, asg: &HashMap<String, usize>) -> Result<bool> {
    let (premises, conclusion) = st.parts();
    for p in &premises {
        if !eval_equation(p, s, asg)? {
            return Ok(true);
        }
    }
    eval_equation(&conclusion, s, asg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Term {
        Term::var(s)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse_term("x*y + y*x").unwrap(),
            Term::Sum(vec![
                Term::Product(vec![v("x"), v("y")]),
                Term::Product(vec![v("y"), v("x")])
            ])
        );
        assert_eq!(
            parse_term("(x+y)*z").unwrap(),
            Term::Product(vec![Term::Sum(vec![v("x"), v("y")]), v("z")])
        );
        assert_eq!(
            parse_term("x1 x2 x1 x3 x2 x3").unwrap(),
            Term::Product(["x1", "x2", "x1", "x3", "x2", "x3"].map(v).to_vec())
        );
        assert_eq!(parse_term("xyx").unwrap(), v("xyx"));
    }

    #[test]
    fn nested_groups_flatten() {
        assert_eq!(
            parse_term("x + (y + z)").unwrap(),
            Term::Sum(vec![v("x"), v("y"), v("z")])
        );
        assert_eq!(
            parse_term("x (y z) (w)").unwrap(),
            Term::Product(vec![v("x"), v("y"), v("z"), v("w")])
        );
        assert!(parse_term("(x y)(y+x) + x").unwrap().is_well_formed());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        for bad in ["(x + y", "x + y)", "x +", "x + + y", "()", "x * ", "x $ y", "   "] {
            match parse_term(bad) {
                Err(Error::Syntax { pos, .. }) => assert!(pos >= 1, "{bad}"),
                other => panic!("{bad}: {other:?}"),
            }
        }
        match parse_term("x # y") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn statements() {
        assert_eq!(
            parse_statement("x*y = y*x").unwrap(),
            Statement::identity(parse_term("x y").unwrap(), parse_term("y x").unwrap())
        );
        assert_eq!(
            parse_statement("x*y == y*x").unwrap(),
            parse_statement("x*y = y*x").unwrap()
        );
        assert_eq!(
            parse_statement("u <= w").unwrap(),
            Statement::identity(parse_term("u + w").unwrap(), v("w"))
        );
        let q = parse_statement("x*y = x*z & y x = z x => y = z").unwrap();
        match q {
            Statement::QuasiIdentity {
                premises,
                conclusion,
            } => {
                assert_eq!(premises.len(), 2);
                assert_eq!(conclusion, Equation::new(v("y"), v("z")));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_statement("x*y = x*z & x*y != 0 => y = z"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_statement("x = y => y = x => x = x"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(parse_statement("x = y & y = x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_statement("x y"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn display_round_trip_examples() {
        for s in ["x*y + y*x", "(x+y)*z", "x1 x2 x1", "x (y + z) w + z", "a"] {
            let t = parse_term(s).unwrap();
            assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }
        let st = parse_statement("x y = x z & z <= y => y = z").unwrap();
        assert_eq!(parse_statement(&st.to_string()).unwrap(), st);
    }

    #[test]
    fn unbound_variable() {
        let s = FiniteSemiring::trivial();
        let t = parse_term("x y").unwrap();
        let mut asg = HashMap::new();
        asg.insert("x".to_string(), 0);
        assert!(matches!(eval_term(&t, &s, &asg), Err(Error::UnboundVariable(n)) if n == "y"));
    }
}

//! Boolean queries over ring flags and matrix properties, answered by the first
//! corpus hit.
//!
//! Grammar: `expr := term (('|' | '∨' | 'or') term)*`,
//! `term := factor (('&' | '∧' | 'and') factor)*`,
//! `factor := ('!' | '¬' | 'not') factor | '(' expr ')' | atom`.
//! Ring atoms are classifier flag names and the tags `char2`, `reduced`, `local`,
//! `field`, `product`.  Matrix atoms (`unimodular`, `zero_det`, `non_full`, `se`,
//! `e`, `dl`, `wdl`, `diag_red`) turn the query into a search over 2×2 matrices.

use super::corpus::Corpus;
use crate::classify::{Classifier, FlagId, RingTags};
use crate::error::{Error, Result};
use crate::lift::{det, is_unimodular, non_full, render_m2, Property, M2};
use crate::search::Truth;
use serde::Serialize;
use serde_json::{json, Value};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tag {
    Char2,
    Reduced,
    Local,
    Field,
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixAtom {
    Unimodular,
    ZeroDet,
    NonFull,
    Prop(Property),
    DiagRed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    Flag(FlagId),
    Tag(Tag),
    Matrix(MatrixAtom),
}

impl Atom {
    fn parse(name: &str) -> Option<Atom> {
        let tag = match name {
            "char2" => Some(Tag::Char2),
            "reduced" => Some(Tag::Reduced),
            "local" => Some(Tag::Local),
            "field" => Some(Tag::Field),
            "product" => Some(Tag::Product),
            _ => None,
        };
        if let Some(t) = tag {
            return Some(Atom::Tag(t));
        }
        let m = match name {
            "unimodular" => Some(MatrixAtom::Unimodular),
            "zero_det" => Some(MatrixAtom::ZeroDet),
            "non_full" => Some(MatrixAtom::NonFull),
            "se" | "simply_extendable" => Some(MatrixAtom::Prop(Property::SimplyExtendable)),
            "e" | "extendable" => Some(MatrixAtom::Prop(Property::Extendable)),
            "dl" | "det_liftable" => Some(MatrixAtom::Prop(Property::DetLiftable)),
            "wdl" | "weakly_det_liftable" => Some(MatrixAtom::Prop(Property::WeaklyDetLiftable)),
            "diag_red" | "diagonal_reduction" => Some(MatrixAtom::DiagRed),
            _ => None,
        };
        if let Some(m) = m {
            return Some(Atom::Matrix(m));
        }
        FlagId::parse(name).map(Atom::Flag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn has_matrix_atom(&self) -> bool {
        match self {
            Expr::Atom(Atom::Matrix(_)) => true,
            Expr::Atom(_) => false,
            Expr::Not(e) => e.has_matrix_atom(),
            Expr::And(a, b) | Expr::Or(a, b) => a.has_matrix_atom() || b.has_matrix_atom(),
        }
    }

    fn eval(&self, atom: &mut impl FnMut(Atom) -> Truth) -> Truth {
        match self {
            Expr::Atom(a) => atom(*a),
            Expr::Not(e) => match e.eval(atom) {
                Truth::True => Truth::False,
                Truth::False => Truth::True,
                Truth::Unknown => Truth::Unknown,
            },
            Expr::And(a, b) => match a.eval(atom) {
                Truth::False => Truth::False,
                x => match (x, b.eval(atom)) {
                    (_, Truth::False) => Truth::False,
                    (Truth::True, Truth::True) => Truth::True,
                    _ => Truth::Unknown,
                },
            },
            Expr::Or(a, b) => match a.eval(atom) {
                Truth::True => Truth::True,
                x => match (x, b.eval(atom)) {
                    (_, Truth::True) => Truth::True,
                    (Truth::False, Truth::False) => Truth::False,
                    _ => Truth::Unknown,
                },
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    And,
    Or,
    Not,
    Open,
    Close,
    Word(String),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '&' | '∧' => {
                chars.next();
                if c == '&' && chars.peek() == Some(&'&') {
                    chars.next();
                }
                out.push(Tok::And);
            }
            '|' | '∨' => {
                chars.next();
                if c == '|' && chars.peek() == Some(&'|') {
                    chars.next();
                }
                out.push(Tok::Or);
            }
            '!' | '¬' | '~' => {
                chars.next();
                out.push(Tok::Not);
            }
            '(' => {
                chars.next();
                out.push(Tok::Open);
            }
            ')' => {
                chars.next();
                out.push(Tok::Close);
            }
            c if c.is_ascii_alphanumeric() || c == '_' || c == '-' => {
                let mut w = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                        w.push(c.to_ascii_lowercase());
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(match w.as_str() {
                    "and" => Tok::And,
                    "or" => Tok::Or,
                    "not" => Tok::Not,
                    _ => Tok::Word(w.replace('-', "_")),
                });
            }
            other => return Err(Error::Query(format!("unexpected `{other}` in query"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            e = Expr::Or(Box::new(e), Box::new(self.term()?));
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.factor()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            e = Expr::And(Box::new(e), Box::new(self.factor()?));
        }
        Ok(e)
    }

    fn factor(&mut self) -> Result<Expr> {
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Not) => Ok(Expr::Not(Box::new(self.factor()?))),
            Some(Tok::Open) => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(Error::Query("missing `)` in query".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Word(w)) => Atom::parse(&w)
                .map(Expr::Atom)
                .ok_or_else(|| Error::Query(format!("unknown atom `{w}`"))),
            other => Err(Error::Query(format!("unexpected token {other:?} in query"))),
        }
    }
}

/// A parsed query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuntQuery {
    pub text: String,
    pub expr: Expr,
}

impl HuntQuery {
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser {
            toks: tokenize(text)?,
            pos: 0,
        };
        let expr = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Query(format!("trailing input in query `{text}`")));
        }
        Ok(HuntQuery {
            text: text.to_string(),
            expr,
        })
    }

    pub fn is_matrix_query(&self) -> bool {
        self.expr.has_matrix_atom()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HuntHit {
    pub ring: String,
    /// The matrix for matrix queries.
    pub matrix: Option<String>,
    /// Atom values and flag evidence at the hit.
    pub witness: Value,
}

/// Outcome of a hunt: the first hit plus rings where the query stayed undecided.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HuntOutcome {
    pub query: String,
    pub hit: Option<HuntHit>,
    pub rings_scanned: usize,
    pub undecided: Vec<String>,
}

fn atoms(e: &Expr, out: &mut Vec<Atom>) {
    match e {
        Expr::Atom(a) => {
            if !out.contains(a) {
                out.push(*a)
            }
        }
        Expr::Not(x) => atoms(x, out),
        Expr::And(a, b) | Expr::Or(a, b) => {
            atoms(a, out);
            atoms(b, out);
        }
    }
}

fn atom_name(a: Atom) -> String {
    match a {
        Atom::Flag(f) => f.name().to_string(),
        Atom::Tag(t) => format!("{t:?}").to_lowercase(),
        Atom::Matrix(MatrixAtom::Prop(p)) => p.short().to_string(),
        Atom::Matrix(MatrixAtom::Unimodular) => "unimodular".into(),
        Atom::Matrix(MatrixAtom::ZeroDet) => "zero_det".into(),
        Atom::Matrix(MatrixAtom::NonFull) => "non_full".into(),
        Atom::Matrix(MatrixAtom::DiagRed) => "diag_red".into(),
    }
}

fn ring_atom(cls: &Classifier, tags: &RingTags, a: Atom) -> Truth {
    match a {
        Atom::Flag(f) => cls.truth(f),
        Atom::Tag(t) => Truth::from_bool(match t {
            Tag::Char2 => tags.char2,
            Tag::Reduced => tags.reduced,
            Tag::Local => tags.local,
            Tag::Field => tags.field,
            Tag::Product => tags.product,
        }),
        Atom::Matrix(_) => Truth::Unknown,
    }
}

/// Scans the corpus in order and returns the first ring (or matrix class
/// representative) on which the query is true.
pub fn hunt(query: &HuntQuery, corpus: &Corpus, budget: u64) -> HuntOutcome {
    let mut used = Vec::new();
    atoms(&query.expr, &mut used);
    let mut undecided = Vec::new();
    let mut scanned = 0;
    for entry in &corpus.entries {
        scanned += 1;
        let r = &entry.ring;
        let cls = Classifier::new(Arc::clone(r), budget);
        let tags = &entry.tags;
        if !query.is_matrix_query() {
            let v = query.expr.eval(&mut |a| ring_atom(&cls, tags, a));
            match v {
                Truth::True => {
                    let mut w = serde_json::Map::new();
                    for &a in &used {
                        let val = match a {
                            Atom::Flag(f) => json!(cls.flag(f)),
                            _ => json!(ring_atom(&cls, tags, a)),
                        };
                        w.insert(atom_name(a), val);
                    }
                    let hit = HuntHit {
                        ring: entry.spec.clone(),
                        matrix: None,
                        witness: Value::Object(w),
                    };
                    return HuntOutcome {
                        query: query.text.clone(),
                        hit: Some(hit),
                        rings_scanned: scanned,
                        undecided,
                    };
                }
                Truth::Unknown => undecided.push(entry.spec.clone()),
                Truth::False => {}
            }
            continue;
        }
        let dr = match cls.reducer() {
            Ok(d) => d,
            Err(_) => {
                undecided.push(entry.spec.clone());
                continue;
            }
        };
        let matrix_atom = |m: M2, a: MatrixAtom| -> bool {
            match a {
                MatrixAtom::Unimodular => is_unimodular(r, m),
                MatrixAtom::ZeroDet => det(r, m) == r.zero(),
                MatrixAtom::NonFull => non_full(r, m).is_some(),
                MatrixAtom::Prop(p) => is_unimodular(r, m) && p.holds(r, m),
                MatrixAtom::DiagRed => dr.reduces(m),
            }
        };
        let mut any_unknown = false;
        for &m in &dr.matrices.reps {
            let v = query.expr.eval(&mut |a| match a {
                Atom::Matrix(x) => Truth::from_bool(matrix_atom(m, x)),
                other => ring_atom(&cls, tags, other),
            });
            match v {
                Truth::True => {
                    let mut w = serde_json::Map::new();
                    for &a in &used {
                        let val = match a {
                            Atom::Matrix(x) => json!(matrix_atom(m, x)),
                            other => json!(ring_atom(&cls, tags, other)),
                        };
                        w.insert(atom_name(a), val);
                    }
                    if let Some(f) = non_full(r, m) {
                        w.insert("non_full_factors".into(), json!(r.render_all(&f)));
                    }
                    let hit = HuntHit {
                        ring: entry.spec.clone(),
                        matrix: Some(render_m2(r, m)),
                        witness: Value::Object(w),
                    };
                    return HuntOutcome {
                        query: query.text.clone(),
                        hit: Some(hit),
                        rings_scanned: scanned,
                        undecided,
                    };
                }
                Truth::Unknown => any_unknown = true,
                Truth::False => {}
            }
        }
        if any_unknown {
            undecided.push(entry.spec.clone());
        }
    }
    HuntOutcome {
        query: query.text.clone(),
        hit: None,
        rings_scanned: scanned,
        undecided,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::DEFAULT_BUDGET;

    #[test]
    fn parses_both_notations() {
        let a = HuntQuery::parse("bezout ∧ ¬hermite").unwrap();
        let b = HuntQuery::parse("bezout & !hermite").unwrap();
        let c = HuntQuery::parse("bezout and not hermite").unwrap();
        assert_eq!(a.expr, b.expr);
        assert_eq!(b.expr, c.expr);
        assert!(!a.is_matrix_query());
        assert!(HuntQuery::parse("zero_det & (unimodular | se)")
            .unwrap()
            .is_matrix_query());
        assert!(HuntQuery::parse("bezout &").is_err());
        assert!(HuntQuery::parse("nonsense").is_err());
        assert!(HuntQuery::parse("(edr").is_err());
    }

    #[test]
    fn non_bezout_hit_is_the_table_ring() {
        let corpus = Corpus::named("Zmod:4, GF:4, Table:builtin:f2xy, Zmod:6").unwrap();
        let q = HuntQuery::parse("¬bezout").unwrap();
        let out = hunt(&q, &corpus, DEFAULT_BUDGET);
        assert_eq!(out.hit.unwrap().ring, "Table:builtin:f2xy");
        let q = HuntQuery::parse("bezout ∧ ¬hermite").unwrap();
        assert!(hunt(&q, &corpus, DEFAULT_BUDGET).hit.is_none());
    }

    #[test]
    fn matrix_hunt_finds_full_zero_det_matrix() {
        let corpus = Corpus::named("Zmod:6, Zmod:4").unwrap();
        let q = HuntQuery::parse("zero_det ∧ ¬non_full").unwrap();
        let out = hunt(&q, &corpus, DEFAULT_BUDGET);
        let hit = out.hit.unwrap();
        assert_eq!(hit.ring, "Zmod:4");
        assert_eq!(hit.matrix.as_deref(), Some("[[0,2],[2,0]]"));
        assert_eq!(hit.witness["non_full"], false);
        let q = HuntQuery::parse("unimodular ∧ zero_det ∧ ¬non_full").unwrap();
        assert!(hunt(&q, &corpus, DEFAULT_BUDGET).hit.is_none());
    }
}

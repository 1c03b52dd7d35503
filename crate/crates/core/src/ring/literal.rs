//! Parsing and printing of element literals.

use super::expr::{parse_expr, Evaluator, Expr};
use super::{Elem, FiniteRing, Structure};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

impl Evaluator for FiniteRing {
    type Value = Elem;

    fn int(&self, k: &BigInt) -> std::result::Result<Elem, String> {
        let c = BigInt::from(self.characteristic());
        let r = ((k % &c) + &c) % &c;
        Ok(self.from_int(r.to_i64().expect("residue fits")))
    }

    fn ident(&self, name: &str) -> std::result::Result<Elem, String> {
        match self.structure() {
            Structure::Table { names } => names
                .iter()
                .position(|n| n == name)
                .map(|i| Elem(i as u32))
                .ok_or_else(|| format!("unknown element name `{name}`")),
            Structure::Ext { base, modulus, var } => {
                if name == var {
                    let deg = modulus.len() - 1;
                    if deg == 1 {
                        Ok(base.neg(modulus[0]))
                    } else {
                        Ok(Elem(base.size() as u32))
                    }
                } else {
                    base.ident(name)
                }
            }
            Structure::Quotient {
                parent, coset_of, ..
            } => parent.ident(name).map(|x| Elem(coset_of[x.idx()])),
            Structure::Prod { .. } => Err(format!(
                "`{name}` is ambiguous in a product ring; write a tuple"
            )),
            Structure::Zmod { .. } => Err(format!("unexpected identifier `{name}`")),
        }
    }

    fn tuple(&self, items: &[Expr]) -> std::result::Result<Elem, String> {
        match self.structure() {
            Structure::Prod { factors } => {
                if items.len() != factors.len() {
                    return Err(format!(
                        "expected a {}-tuple, got {} entries",
                        factors.len(),
                        items.len()
                    ));
                }
                let parts = factors
                    .iter()
                    .zip(items)
                    .map(|(f, e)| f.eval(e))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(self.from_components(&parts))
            }
            Structure::Ext { base, .. } => base.tuple(items),
            Structure::Quotient {
                parent, coset_of, ..
            } => parent.tuple(items).map(|x| Elem(coset_of[x.idx()])),
            _ => Err("tuples only make sense in product rings".into()),
        }
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteRing::add(self, *a, *b)
    }

    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteRing::sub(self, *a, *b)
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteRing::mul(self, *a, *b)
    }

    fn neg(&self, a: &Elem) -> Elem {
        FiniteRing::neg(self, *a)
    }

    fn one(&self) -> Elem {
        FiniteRing::one(self)
    }
}

impl FiniteRing {
    /// Parses an element literal such as `3`, `x+1`, `(g+1)x^2` or `(1,x)`.
    pub fn parse_elem(&self, literal: &str) -> Result<Elem> {
        let lit = literal.trim();
        if let Structure::Table { names } = self.structure() {
            if let Some(i) = names.iter().position(|n| n == lit) {
                return Ok(Elem(i as u32));
            }
        }
        let err = |reason: String| Error::Literal {
            literal: literal.to_string(),
            ring: self.spec().to_string(),
            reason,
        };
        let expr = parse_expr(lit).map_err(err)?;
        self.eval(&expr).map_err(err)
    }

    /// Canonical text for an element; [`FiniteRing::parse_elem`] reads it back.
    pub fn render(&self, a: Elem) -> String {
        match self.structure() {
            Structure::Zmod { .. } => a.0.to_string(),
            Structure::Table { names } => names[a.idx()].clone(),
            Structure::Quotient { parent, reps, .. } => parent.render(reps[a.idx()]),
            Structure::Prod { factors } => {
                let parts: Vec<String> = factors
                    .iter()
                    .zip(self.components(a))
                    .map(|(f, x)| f.render(x))
                    .collect();
                format!("({})", parts.join(","))
            }
            Structure::Ext { base, var, .. } => {
                let coeffs = self.coefficients(a);
                let mut terms = Vec::new();
                for (i, &c) in coeffs.iter().enumerate().rev() {
                    if c == base.zero() {
                        continue;
                    }
                    let mut cs = base.render(c);
                    if has_top_level_sum(&cs) {
                        cs = format!("({cs})");
                    }
                    let power = match i {
                        0 => String::new(),
                        1 => var.clone(),
                        _ => format!("{var}^{i}"),
                    };
                    let term = if i == 0 {
                        cs
                    } else if c == base.one() {
                        power
                    } else if cs.ends_with(|ch: char| ch.is_ascii_digit() || ch == ')') {
                        format!("{cs}{power}")
                    } else {
                        format!("{cs}*{power}")
                    };
                    terms.push(term);
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
        }
    }

    /// Renders a list of elements as `(a, b, …)`.
    pub fn render_all(&self, v: &[Elem]) -> Vec<String> {
        v.iter().map(|&x| self.render(x)).collect()
    }
}

fn has_top_level_sum(s: &str) -> bool {
    let mut depth = 0;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}

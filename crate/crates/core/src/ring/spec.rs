//! The ring-spec mini-language.
//!
//! ```text
//! Zmod:n                      ℤ/n
//! GF:q  or  GF:p^k            finite field (generator `g` when k > 1)
//! Quot:<ring>[v]/(<poly>)     quotient by a monic polynomial in v
//! Prod:<ring>*<ring>*…        direct product (parenthesize nested specs)
//! Table:<path.json>           operation tables; Table:builtin:f2xy is built in
//! Int:H=<bound>               ℤ, searched over |x| ≤ bound
//! PolyF:p=<p>,D=<deg>         F_p[x], searched over degree ≤ deg
//! ```

use super::expr::{parse_expr, split_top_level, Evaluator, Expr};
use super::poly::{is_prime, prime_power, smallest_irreducible};
use super::profile::{IntProfile, PolyProfile};
use super::table::{builtin_f2xy, load_table_json, BUILTIN_F2XY};
use super::{Elem, FiniteRing, Structure, MAX_ELEMENTS};
use crate::error::{spec_err, Error, Result};
use num_bigint::BigInt;
use std::sync::Arc;

/// A ring the library can compute in.
#[derive(Clone, Debug)]
pub enum RingHandle {
    Finite(Arc<FiniteRing>),
    Integers(IntProfile),
    PolyOverField(PolyProfile),
}

impl RingHandle {
    pub fn spec(&self) -> String {
        match self {
            RingHandle::Finite(r) => r.spec().to_string(),
            RingHandle::Integers(z) => z.spec(),
            RingHandle::PolyOverField(f) => f.spec(),
        }
    }

    /// Number of elements, `None` for infinite rings.
    pub fn cardinality(&self) -> Option<usize> {
        match self {
            RingHandle::Finite(r) => Some(r.size()),
            _ => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            RingHandle::Finite(r) => r.characteristic(),
            RingHandle::Integers(_) => 0,
            RingHandle::PolyOverField(f) => f.p,
        }
    }

    pub fn as_finite(&self) -> Option<&Arc<FiniteRing>> {
        match self {
            RingHandle::Finite(r) => Some(r),
            _ => None,
        }
    }
}

/// Parses and validates a ring spec.
pub fn make_ring(spec: &str) -> Result<RingHandle> {
    let s = spec.trim();
    if let Some(rest) = s.strip_prefix("Int:") {
        let h = rest
            .strip_prefix("H=")
            .ok_or_else(|| spec_err(s, "expected Int:H=<bound>"))?;
        let bound: u64 = h.trim().parse().map_err(|_| spec_err(s, "bad bound"))?;
        return Ok(RingHandle::Integers(IntProfile::new(bound)?));
    }
    if let Some(rest) = s.strip_prefix("PolyF:") {
        let mut p = None;
        let mut d = None;
        for part in rest.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| spec_err(s, "expected PolyF:p=<p>,D=<deg>"))?;
            let v: u64 = v.trim().parse().map_err(|_| spec_err(s, "bad number"))?;
            match k.trim() {
                "p" => p = Some(v),
                "D" => d = Some(v),
                other => return Err(spec_err(s, format!("unknown key `{other}`"))),
            }
        }
        let (p, d) = p
            .zip(d)
            .ok_or_else(|| spec_err(s, "expected PolyF:p=<p>,D=<deg>"))?;
        if !is_prime(p) {
            return Err(spec_err(s, format!("{p} is not prime")));
        }
        let d = u32::try_from(d).map_err(|_| spec_err(s, "degree bound too large"))?;
        return Ok(RingHandle::PolyOverField(PolyProfile::new(p, d)?));
    }
    Ok(RingHandle::Finite(make_finite_ring(s)?))
}

/// Parses a spec that must describe a finite ring.
pub fn make_finite_ring(spec: &str) -> Result<Arc<FiniteRing>> {
    parse_finite(spec.trim()).map(Arc::new)
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') {
        let inner = &t[1..t.len() - 1];
        let mut depth = 0i32;
        for c in inner.chars() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                _ => {}
            }
            if depth < 0 {
                return t;
            }
        }
        if depth == 0 {
            return strip_parens(inner);
        }
    }
    t
}

fn parse_finite(spec: &str) -> Result<FiniteRing> {
    let s = strip_parens(spec);
    if let Some(rest) = s.strip_prefix("Zmod:") {
        let n: u64 = rest
            .trim()
            .parse()
            .map_err(|_| spec_err(s, "bad modulus"))?;
        if n == 0 {
            return Err(spec_err(s, "modulus must be positive"));
        }
        if n == 1 {
            return Err(Error::ZeroRing);
        }
        if n > MAX_ELEMENTS as u64 {
            return Err(Error::TooLarge {
                what: "finite ring",
                size: n as usize,
                limit: MAX_ELEMENTS,
            });
        }
        return FiniteRing::build(s.to_string(), Structure::Zmod { modulus: n as u32 }, false);
    }
    if let Some(rest) = s.strip_prefix("GF:") {
        let rest = rest.trim();
        let (p, k) = match rest.split_once('^') {
            Some((p, k)) => {
                let p: u64 = p.trim().parse().map_err(|_| spec_err(s, "bad prime"))?;
                let k: u32 = k.trim().parse().map_err(|_| spec_err(s, "bad exponent"))?;
                if !is_prime(p) || k == 0 {
                    return Err(spec_err(s, "expected GF:p^k with p prime, k ≥ 1"));
                }
                (p, k)
            }
            None => {
                let q: u64 = rest.parse().map_err(|_| spec_err(s, "bad field size"))?;
                prime_power(q).ok_or_else(|| spec_err(s, format!("{q} is not a prime power")))?
            }
        };
        if (p as u128).pow(k) > MAX_ELEMENTS as u128 {
            return Err(Error::TooLarge {
                what: "finite ring",
                size: usize::MAX,
                limit: MAX_ELEMENTS,
            });
        }
        if k == 1 {
            return FiniteRing::build(s.to_string(), Structure::Zmod { modulus: p as u32 }, false);
        }
        let base = FiniteRing::build(
            format!("Zmod:{p}"),
            Structure::Zmod { modulus: p as u32 },
            false,
        )?;
        let f = smallest_irreducible(p, k);
        let modulus = f.coeffs().iter().map(|&c| Elem(c as u32)).collect();
        return FiniteRing::build(
            s.to_string(),
            Structure::Ext {
                base: Arc::new(base),
                modulus,
                var: "g".into(),
            },
            false,
        );
    }
    if let Some(rest) = s.strip_prefix("Quot:") {
        let (base_spec, var, poly) = split_quot(s, rest)?;
        let base = Arc::new(parse_finite(base_spec)?);
        let expr = parse_expr(poly).map_err(|e| spec_err(s, e))?;
        let coeffs = PolyEval { ring: &base, var }
            .eval(&expr)
            .map_err(|e| spec_err(s, e))?;
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && *coeffs.last().unwrap() == base.zero() {
            coeffs.pop();
        }
        if coeffs.len() < 2 || *coeffs.last().unwrap() != base.one() {
            return Err(Error::NotMonic(poly.to_string()));
        }
        return FiniteRing::build(
            s.to_string(),
            Structure::Ext {
                base,
                modulus: coeffs,
                var: var.to_string(),
            },
            false,
        );
    }
    if let Some(rest) = s.strip_prefix("Prod:") {
        let parts = split_top_level(rest, '*');
        if parts.len() < 2 {
            return Err(spec_err(s, "a product needs at least two factors"));
        }
        let factors = parts
            .iter()
            .map(|p| parse_finite(p).map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        return FiniteRing::build(s.to_string(), Structure::Prod { factors }, false);
    }
    if let Some(rest) = s.strip_prefix("Table:") {
        let rest = rest.trim();
        if rest == BUILTIN_F2XY {
            return builtin_f2xy(s);
        }
        let text = std::fs::read_to_string(rest)?;
        return load_table_json(s, &text);
    }
    Err(spec_err(s, "unknown ring kind"))
}

/// Splits `Quot:<base>[v]/(<poly>)` into its three parts.
fn split_quot<'a>(s: &str, rest: &'a str) -> Result<(&'a str, &'a str, &'a str)> {
    let bad = || spec_err(s, "expected Quot:<ring>[v]/(<monic poly>)");
    let rest = rest.trim();
    if !rest.ends_with(')') {
        return Err(bad());
    }
    let bytes = rest.as_bytes();
    let mut depth = 0i32;
    let mut open = None;
    for i in (0..bytes.len()).rev() {
        match bytes[i] {
            b')' => depth += 1,
            b'(' => {
                depth -= 1;
                if depth == 0 {
                    open = Some(i);
                    break;
                }
            }
            _ => {}
        }
    }
    let open = open.ok_or_else(bad)?;
    let head = rest[..open].strip_suffix("]/").ok_or_else(bad)?;
    let lb = head.rfind('[').ok_or_else(bad)?;
    let var = head[lb + 1..].trim();
    if var.is_empty() || !var.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(bad());
    }
    Ok((&head[..lb], var, &rest[open + 1..rest.len() - 1]))
}

/// Evaluates an expression as a polynomial in `var` over `ring`.
struct PolyEval<'a> {
    ring: &'a FiniteRing,
    var: &'a str,
}

impl Evaluator for PolyEval<'_> {
    type Value = Vec<Elem>;

    fn int(&self, k: &BigInt) -> std::result::Result<Vec<Elem>, String> {
        Ok(vec![self.ring.int(k)?])
    }
    fn ident(&self, name: &str) -> std::result::Result<Vec<Elem>, String> {
        if name == self.var {
            Ok(vec![self.ring.zero(), self.ring.one()])
        } else {
            Ok(vec![self.ring.ident(name)?])
        }
    }
    fn tuple(&self, items: &[Expr]) -> std::result::Result<Vec<Elem>, String> {
        Ok(vec![self.ring.tuple(items)?])
    }
    fn add(&self, a: &Vec<Elem>, b: &Vec<Elem>) -> Vec<Elem> {
        let r = self.ring;
        (0..a.len().max(b.len()))
            .map(|i| {
                r.add(
                    a.get(i).copied().unwrap_or(r.zero()),
                    b.get(i).copied().unwrap_or(r.zero()),
                )
            })
            .collect()
    }
    fn sub(&self, a: &Vec<Elem>, b: &Vec<Elem>) -> Vec<Elem> {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Vec<Elem>, b: &Vec<Elem>) -> Vec<Elem> {
        let r = self.ring;
        let mut out = vec![r.zero(); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = r.add(out[i + j], r.mul(x, y));
            }
        }
        out
    }
    fn neg(&self, a: &Vec<Elem>) -> Vec<Elem> {
        a.iter().map(|&x| self.ring.neg(x)).collect()
    }
    fn one(&self) -> Vec<Elem> {
        vec![self.ring.one()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        assert_eq!(make_finite_ring("Zmod:6").unwrap().size(), 6);
        assert_eq!(make_finite_ring("GF:4").unwrap().characteristic(), 2);
        assert_eq!(make_finite_ring("GF:3^2").unwrap().size(), 9);
        assert_eq!(make_finite_ring("Quot:GF:2[x]/(x^2)").unwrap().size(), 4);
        assert_eq!(
            make_finite_ring("Quot:GF:3[x]/(x*x+1)")
                .unwrap()
                .unit_count(),
            8
        );
        assert_eq!(make_finite_ring("Prod:Zmod:4*GF:9").unwrap().size(), 36);
        assert_eq!(
            make_finite_ring("Prod:Zmod:2*Zmod:3*Zmod:5")
                .unwrap()
                .size(),
            30
        );
        assert_eq!(make_finite_ring("Table:builtin:f2xy").unwrap().size(), 8);
        assert_eq!(make_finite_ring("(Zmod:5)").unwrap().size(), 5);
        assert!(matches!(
            make_ring("Int:H=10").unwrap(),
            RingHandle::Integers(_)
        ));
        assert!(matches!(
            make_ring("PolyF:p=3,D=2").unwrap(),
            RingHandle::PolyOverField(_)
        ));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(make_ring("Zmod:1"), Err(Error::ZeroRing)));
        assert!(matches!(make_ring("GF:6"), Err(Error::RingSpec { .. })));
        assert!(matches!(
            make_ring("Quot:GF:2[x]/(x^2+x^2)"),
            Err(Error::NotMonic(_))
        ));
        assert!(matches!(
            make_ring("Quot:Zmod:4[x]/(2x^2+1)"),
            Err(Error::NotMonic(_))
        ));
        assert!(matches!(
            make_ring("Quot:Zmod:4[x]/(3)"),
            Err(Error::NotMonic(_))
        ));
        assert!(make_ring("Foo:3").is_err());
        assert!(make_ring("Prod:Zmod:3").is_err());
        assert!(make_ring("Zmod:70000").is_err());
        assert!(make_ring("PolyF:p=4,D=2").is_err());
        assert!(make_ring("Table:/nonexistent.json").is_err());
    }

    #[test]
    fn quotient_splitting_handles_nesting() {
        let r = make_finite_ring("Quot:Quot:GF:2[x]/(x^2)[y]/(y^2)").unwrap();
        assert_eq!(r.size(), 16);
        let y = r.parse_elem("y").unwrap();
        let x = r.parse_elem("x").unwrap();
        assert_eq!(r.mul(y, y), r.zero());
        assert_ne!(r.mul(x, y), r.zero());
    }
}

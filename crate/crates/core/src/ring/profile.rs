//! Bounded views of the infinite rings ℤ and F_p[x].
//!
//! Arithmetic is exact; only searches are confined to a finite box of elements, so a
//! search that comes back empty proves nothing.

use super::expr::{parse_expr, Evaluator, Expr};
use super::poly::FpPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Largest search box a profile may materialize.
pub const PROFILE_BOX_LIMIT: usize = 1 << 20;

/// ℤ with searches over `|x| ≤ bound`.
#[derive(Clone, Debug)]
pub struct IntProfile {
    pub bound: u64,
    search_box: Vec<BigInt>,
}

impl IntProfile {
    pub fn new(bound: u64) -> Result<Self> {
        if bound as usize > PROFILE_BOX_LIMIT / 2 {
            return Err(Error::TooLarge {
                what: "integer search box",
                size: 2 * bound as usize + 1,
                limit: PROFILE_BOX_LIMIT,
            });
        }
        // 0, 1, -1, 2, -2, … so that small witnesses come first.
        let mut search_box = vec![BigInt::zero()];
        for k in 1..=bound as i64 {
            search_box.push(BigInt::from(k));
            search_box.push(BigInt::from(-k));
        }
        Ok(IntProfile { bound, search_box })
    }

    pub fn search_box(&self) -> &[BigInt] {
        &self.search_box
    }

    pub fn spec(&self) -> String {
        format!("Int:H={}", self.bound)
    }

    pub fn parse_elem(&self, literal: &str) -> Result<BigInt> {
        let err = |reason: String| Error::Literal {
            literal: literal.to_string(),
            ring: self.spec(),
            reason,
        };
        let e = parse_expr(literal.trim()).map_err(err)?;
        IntEval.eval(&e).map_err(err)
    }
}

struct IntEval;

impl Evaluator for IntEval {
    type Value = BigInt;
    fn int(&self, k: &BigInt) -> std::result::Result<BigInt, String> {
        Ok(k.clone())
    }
    fn ident(&self, name: &str) -> std::result::Result<BigInt, String> {
        Err(format!("unexpected identifier `{name}` in an integer"))
    }
    fn tuple(&self, _: &[Expr]) -> std::result::Result<BigInt, String> {
        Err("tuples are not integers".into())
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
}

/// F_p[x] with searches over polynomials of degree at most `deg_bound`.
#[derive(Clone, Debug)]
pub struct PolyProfile {
    pub p: u64,
    pub deg_bound: u32,
    search_box: Vec<FpPoly>,
}

impl PolyProfile {
    pub fn new(p: u64, deg_bound: u32) -> Result<Self> {
        let count = (p as u128).checked_pow(deg_bound + 1).unwrap_or(u128::MAX);
        if count > PROFILE_BOX_LIMIT as u128 {
            return Err(Error::TooLarge {
                what: "polynomial search box",
                size: count.min(usize::MAX as u128) as usize,
                limit: PROFILE_BOX_LIMIT,
            });
        }
        // Ordered by degree, then by coefficients read as a base-p number.
        let mut search_box = vec![FpPoly::zero(p)];
        for d in 0..=deg_bound {
            let lo = (p as usize).pow(d);
            let hi = lo * p as usize;
            for code in lo..hi {
                let mut c = Vec::with_capacity(d as usize + 1);
                let mut x = code;
                for _ in 0..=d {
                    c.push((x % p as usize) as u64);
                    x /= p as usize;
                }
                search_box.push(FpPoly::new(p, c));
            }
        }
        Ok(PolyProfile {
            p,
            deg_bound,
            search_box,
        })
    }

    pub fn search_box(&self) -> &[FpPoly] {
        &self.search_box
    }

    pub fn spec(&self) -> String {
        format!("PolyF:p={},D={}", self.p, self.deg_bound)
    }

    pub fn parse_elem(&self, literal: &str) -> Result<FpPoly> {
        let err = |reason: String| Error::Literal {
            literal: literal.to_string(),
            ring: self.spec(),
            reason,
        };
        let e = parse_expr(literal.trim()).map_err(err)?;
        PolyEval(self.p).eval(&e).map_err(err)
    }
}

struct PolyEval(u64);

impl Evaluator for PolyEval {
    type Value = FpPoly;
    fn int(&self, k: &BigInt) -> std::result::Result<FpPoly, String> {
        let p = BigInt::from(self.0);
        let r = ((k % &p) + &p) % &p;
        Ok(FpPoly::new(
            self.0,
            vec![r.try_into().expect("residue fits")],
        ))
    }
    fn ident(&self, name: &str) -> std::result::Result<FpPoly, String> {
        if name == "x" {
            Ok(FpPoly::x(self.0))
        } else {
            Err(format!("unknown variable `{name}`; polynomials use `x`"))
        }
    }
    fn tuple(&self, _: &[Expr]) -> std::result::Result<FpPoly, String> {
        Err("tuples are not polynomials".into())
    }
    fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.add(b)
    }
    fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.sub(b)
    }
    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.mul(b)
    }
    fn neg(&self, a: &FpPoly) -> FpPoly {
        a.neg()
    }
    fn one(&self) -> FpPoly {
        FpPoly::constant(self.0, 1)
    }
}

//! The common interface used by witness searches, over finite rings and over the
//! bounded profiles of ℤ and F_p[x].

use crate::constructive::{bezout_coefficients, gcd_all, Euclidean};
use crate::ring::{Elem, FiniteRing, FpPoly, IntProfile, PolyProfile};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt::Debug;

/// Outcome of a witness search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds(W),
    Fails,
    /// A bounded search came back empty; nothing is known.
    Unknown,
}

/// Tri-state label used in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl<W> Verdict<W> {
    /// `Holds` when found, else `Fails` for exhaustive searches and `Unknown` otherwise.
    pub fn from_search(found: Option<W>, exhaustive: bool) -> Self {
        match found {
            Some(w) => Verdict::Holds(w),
            None if exhaustive => Verdict::Fails,
            None => Verdict::Unknown,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds(w) => Some(w),
            _ => None,
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown)
    }

    pub fn truth(&self) -> Truth {
        match self {
            Verdict::Holds(_) => Truth::True,
            Verdict::Fails => Truth::False,
            Verdict::Unknown => Truth::Unknown,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds(w) => Verdict::Holds(f(w)),
            Verdict::Fails => Verdict::Fails,
            Verdict::Unknown => Verdict::Unknown,
        }
    }
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Unknown => "unknown",
        }
    }
}

/// A ring in which witness searches can run.
pub trait SearchRing: Sync {
    type E: Clone + PartialEq + Debug + Send + Sync;

    fn spec(&self) -> String;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn is_unit(&self, a: &Self::E) -> bool;
    /// Exact test, independent of any search bound.
    fn is_unimodular(&self, v: &[Self::E]) -> bool;
    fn unimodular_coefficients(&self, v: &[Self::E]) -> Option<Vec<Self::E>>;
    /// Elements searched over, in scan order.
    fn search_box(&self) -> &[Self::E];
    /// Whether [`SearchRing::search_box`] is the whole ring.
    fn is_exhaustive(&self) -> bool;
    /// The set `d·box`, without repetitions, in scan order.
    fn multiples(&self, d: &Self::E) -> Vec<Self::E>;
    fn render(&self, a: &Self::E) -> String;
    fn parse(&self, literal: &str) -> crate::Result<Self::E>;
}

impl SearchRing for FiniteRing {
    type E = Elem;

    fn spec(&self) -> String {
        FiniteRing::spec(self).to_string()
    }
    fn zero(&self) -> Elem {
        FiniteRing::zero(self)
    }
    fn one(&self) -> Elem {
        FiniteRing::one(self)
    }
    #[inline]
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteRing::add(self, *a, *b)
    }
    #[inline]
    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteRing::sub(self, *a, *b)
    }
    #[inline]
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteRing::mul(self, *a, *b)
    }
    #[inline]
    fn neg(&self, a: &Elem) -> Elem {
        FiniteRing::neg(self, *a)
    }
    #[inline]
    fn is_unit(&self, a: &Elem) -> bool {
        FiniteRing::is_unit(self, *a)
    }
    #[inline]
    fn is_unimodular(&self, v: &[Elem]) -> bool {
        FiniteRing::is_unimodular(self, v)
    }
    fn unimodular_coefficients(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        FiniteRing::unimodular_coefficients(self, v)
    }
    fn search_box(&self) -> &[Elem] {
        self.all()
    }
    fn is_exhaustive(&self) -> bool {
        true
    }
    fn multiples(&self, d: &Elem) -> Vec<Elem> {
        self.principal_ideal(*d)
    }
    fn render(&self, a: &Elem) -> String {
        FiniteRing::render(self, *a)
    }
    fn parse(&self, literal: &str) -> crate::Result<Elem> {
        self.parse_elem(literal)
    }
}

fn dedup_in_order<T: PartialEq + Clone>(v: impl Iterator<Item = T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for x in v {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

impl SearchRing for IntProfile {
    type E = BigInt;

    fn spec(&self) -> String {
        IntProfile::spec(self)
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
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
    fn is_unit(&self, a: &BigInt) -> bool {
        Euclidean::is_unit(a)
    }
    fn is_unimodular(&self, v: &[BigInt]) -> bool {
        gcd_all(&BigInt::zero(), v).is_one()
    }
    fn unimodular_coefficients(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        bezout_coefficients(&BigInt::zero(), v)
    }
    fn search_box(&self) -> &[BigInt] {
        IntProfile::search_box(self)
    }
    fn is_exhaustive(&self) -> bool {
        false
    }
    fn multiples(&self, d: &BigInt) -> Vec<BigInt> {
        if Zero::is_zero(d) {
            return vec![BigInt::zero()];
        }
        self.search_box().iter().map(|x| d * x).collect()
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, literal: &str) -> crate::Result<BigInt> {
        self.parse_elem(literal)
    }
}

impl SearchRing for PolyProfile {
    type E = FpPoly;

    fn spec(&self) -> String {
        PolyProfile::spec(self)
    }
    fn zero(&self) -> FpPoly {
        FpPoly::zero(self.p)
    }
    fn one(&self) -> FpPoly {
        FpPoly::constant(self.p, 1)
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
    fn is_unit(&self, a: &FpPoly) -> bool {
        Euclidean::is_unit(a)
    }
    fn is_unimodular(&self, v: &[FpPoly]) -> bool {
        Euclidean::is_unit(&gcd_all(&self.zero(), v))
    }
    fn unimodular_coefficients(&self, v: &[FpPoly]) -> Option<Vec<FpPoly>> {
        bezout_coefficients(&self.zero(), v)
    }
    fn search_box(&self) -> &[FpPoly] {
        PolyProfile::search_box(self)
    }
    fn is_exhaustive(&self) -> bool {
        false
    }
    fn multiples(&self, d: &FpPoly) -> Vec<FpPoly> {
        dedup_in_order(self.search_box().iter().map(|x| d.mul(x)))
    }
    fn render(&self, a: &FpPoly) -> String {
        a.to_string()
    }
    fn parse(&self, literal: &str) -> crate::Result<FpPoly> {
        self.parse_elem(literal)
    }
}

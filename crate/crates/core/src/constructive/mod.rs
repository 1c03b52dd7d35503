//! Algorithms over the Euclidean domains ℤ and F_p[x]: extended gcd, Smith normal
//! form with certificates, explicit 3×3 completions, the SL₂ matrix relating two
//! generators of the same principal ideal, and bounded witness searches over ℤ.

mod extension;
mod lemma1;
mod snf;
mod witness;

pub use extension::{simple_extension, simple_extension_z, SimpleExtension};
pub use lemma1::{lemma1_matrix, Lemma1Matrix};
pub use snf::{minor_gcds, snf, SnfCertificate};
pub use witness::{
    cr3_predicate, cr3_witness, eq4_holds, eq4_witness, max_abs, Cr3Route, Cr3Witness, Eq4Witness,
};

use crate::ring::FpPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt::{Debug, Display};

/// A Euclidean domain with canonical associates.
pub trait Euclidean: Clone + PartialEq + Debug + Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division with remainder of smaller [`Euclidean::norm`].
    fn div_rem(&self, d: &Self) -> (Self, Self);
    fn norm(&self) -> u64;
    /// A unit `u` such that `u·self` is the canonical associate (1 for zero).
    fn canonical_unit(&self) -> Self;
    fn is_unit(&self) -> bool;

    fn canonical(&self) -> Self {
        self.canonical_unit().mul(self)
    }

    fn divides(&self, b: &Self) -> bool {
        if self.is_zero() {
            return b.is_zero();
        }
        b.div_rem(self).1.is_zero()
    }
}

impl Euclidean for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        // Euclidean division with a nonnegative remainder.
        let (q, r) = self.div_mod_floor(d);
        if r.is_negative() {
            (q + 1, r - d)
        } else {
            (q, r)
        }
    }
    fn norm(&self) -> u64 {
        let a = self.abs();
        u64::try_from(&a).unwrap_or(u64::MAX)
    }
    fn canonical_unit(&self) -> Self {
        if self.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

impl Euclidean for FpPoly {
    fn zero_like(&self) -> Self {
        FpPoly::zero(self.modulus())
    }
    fn one_like(&self) -> Self {
        FpPoly::constant(self.modulus(), 1)
    }
    fn is_zero(&self) -> bool {
        FpPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        FpPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FpPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FpPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        FpPoly::neg(self)
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        FpPoly::div_rem(self, d)
    }
    fn norm(&self) -> u64 {
        self.degree().map_or(0, |d| d as u64 + 1)
    }
    fn canonical_unit(&self) -> Self {
        if FpPoly::is_zero(self) {
            return self.one_like();
        }
        let p = self.modulus();
        FpPoly::constant(p, crate::ring::poly_inv_mod(self.lead(), p) as i64)
    }
    fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }
}

/// `(g, s, t)` with `s·p + t·q = g` and `g` the canonical gcd; `gcd(0, 0) = 0`
/// with coefficients `(0, 1)`.
pub fn ext_gcd<T: Euclidean>(p: &T, q: &T) -> (T, T, T) {
    let zero = p.zero_like();
    let one = p.one_like();
    if p.is_zero() && q.is_zero() {
        return (zero.clone(), zero, one);
    }
    let (mut r0, mut r1) = (p.clone(), q.clone());
    let (mut s0, mut s1) = (one.clone(), zero.clone());
    let (mut t0, mut t1) = (zero, one);
    while !r1.is_zero() {
        let (quo, rem) = r0.div_rem(&r1);
        let s2 = s0.sub(&quo.mul(&s1));
        let t2 = t0.sub(&quo.mul(&t1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let u = r0.canonical_unit();
    (u.mul(&r0), u.mul(&s0), u.mul(&t0))
}

/// Canonical gcd of a list (0 for an empty or all-zero list).
pub fn gcd_all<T: Euclidean>(zero: &T, v: &[T]) -> T {
    v.iter().fold(zero.clone(), |g, x| ext_gcd(&g, x).0)
}

/// Coefficients `c` with `Σ cᵢ·vᵢ = 1`, when the entries are coprime.
pub fn bezout_coefficients<T: Euclidean>(zero: &T, v: &[T]) -> Option<Vec<T>> {
    let mut g = zero.clone();
    let mut coeffs: Vec<T> = Vec::with_capacity(v.len());
    for x in v {
        let (d, s, t) = ext_gcd(&g, x);
        for c in coeffs.iter_mut() {
            *c = c.mul(&s);
        }
        coeffs.push(t);
        g = d;
    }
    if g == g.one_like() {
        Some(coeffs)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(k: i64) -> BigInt {
        BigInt::from(k)
    }

    #[test]
    fn integer_gcd_examples() {
        assert_eq!(ext_gcd(&z(12), &z(8)), (z(4), z(1), z(-1)));
        assert_eq!(ext_gcd(&z(0), &z(0)), (z(0), z(0), z(1)));
        assert_eq!(ext_gcd(&z(0), &z(-5)).0, z(5));
    }

    #[test]
    fn polynomial_gcd_example() {
        let a = FpPoly::new(3, vec![2, 0, 1]); // x^2 - 1
        let b = FpPoly::new(3, vec![2, 1]); // x - 1
        let (g, s, t) = ext_gcd(&a, &b);
        assert_eq!(g, b);
        assert!(Euclidean::is_zero(&s));
        assert_eq!(t, FpPoly::constant(3, 1));
    }

    proptest! {
        #[test]
        fn integer_bezout_identity(p in -10_000i64..10_000, q in -10_000i64..10_000) {
            let (g, s, t) = ext_gcd(&z(p), &z(q));
            prop_assert_eq!(&s * z(p) + &t * z(q), g.clone());
            prop_assert!(g >= z(0));
            if p != 0 || q != 0 {
                prop_assert!(Euclidean::divides(&g, &z(p)) && Euclidean::divides(&g, &z(q)));
            }
        }

        #[test]
        fn polynomial_bezout_identity(a in proptest::collection::vec(0u64..5, 0..6),
                                      b in proptest::collection::vec(0u64..5, 0..6)) {
            let (a, b) = (FpPoly::new(5, a), FpPoly::new(5, b));
            let (g, s, t) = ext_gcd(&a, &b);
            prop_assert_eq!(s.mul(&a).add(&t.mul(&b)), g.clone());
            prop_assert!(g.is_zero() || g.lead() == 1);
            prop_assert!(g.divides(&a) && g.divides(&b));
        }

        #[test]
        fn euclidean_division_shrinks(a in -1000i64..1000, d in -50i64..50) {
            prop_assume!(d != 0);
            let (q, r) = Euclidean::div_rem(&z(a), &z(d));
            prop_assert_eq!(q * z(d) + &r, z(a));
            prop_assert!(r >= z(0) && r < z(d.abs()));
        }
    }

    #[test]
    fn bezout_lists() {
        let v = [z(6), z(10), z(15)];
        let c = bezout_coefficients(&z(0), &v).unwrap();
        let sum: BigInt = c.iter().zip(&v).map(|(a, b)| a * b).sum();
        assert_eq!(sum, z(1));
        assert!(bezout_coefficients(&z(0), &[z(4), z(6)]).is_none());
        assert_eq!(gcd_all(&z(0), &[z(4), z(-6)]), z(2));
    }
}

//! Bounded witness searches over ℤ for two equation-style EDD tests:
//!
//! * the pair `(e, f)` with `(e, f)`, `(a, e)` and `(be + af, 1 − bs − a)` all unimodular;
//! * the triple `(s, l, z)` solving `(1−us−al)² + l − usl − al² − (s+t−ust)·z = 0`.
//!
//! Searches walk the box `|·| ≤ H` in shells of increasing max-norm, so the first
//! witness found has the least possible max-norm.

use crate::search::Verdict;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

fn coprime(x: &BigInt, y: &BigInt) -> bool {
    x.gcd(y).is_one()
}

/// Whether `(e, f)` satisfies the full statement for `(a, b, s)`.
pub fn cr3_predicate(a: &BigInt, b: &BigInt, s: &BigInt, e: &BigInt, f: &BigInt) -> bool {
    let t = BigInt::one() - b * s - a;
    coprime(e, f) && coprime(a, e) && coprime(&(b * e + a * f), &t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum Cr3Route {
    /// `(e, f) = (s, 1)` because `gcd(a, s) = 1`.
    CoprimeAS,
    /// `(e, f) = (1, 0)` because `gcd(1 − a, b) = 1`.
    CoprimeOneMinusAB,
    /// `(e, f) = (1 − a, q + b)` for the recorded `q`.
    Shift { q: String },
    /// Found by the shell scan.
    Scan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cr3Witness {
    pub e: BigInt,
    pub f: BigInt,
    pub route: Cr3Route,
}

/// Signed integers in the order 0, 1, −1, 2, −2, … up to `|k| ≤ h`.
fn ordered(h: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=h).flat_map(|k| [k, -k]))
}

/// Pairs of the box `|x|, |y| ≤ h`, shell by shell.
fn shell_pairs(h: i64) -> impl Iterator<Item = (i64, i64)> {
    (0..=h).flat_map(move |r| {
        ordered(r).flat_map(move |x| {
            ordered(r)
                .filter(move |&y| x.abs().max(y.abs()) == r)
                .map(move |y| (x, y))
        })
    })
}

/// Finds `(e, f)` for `(a, b, s)`: the three shortcut cases first, then the shell
/// scan over `|e|, |f| ≤ bound`.
pub fn cr3_witness(a: &BigInt, b: &BigInt, s: &BigInt, bound: u64) -> Verdict<Cr3Witness> {
    let one = BigInt::one();
    let t = &one - b * s - a;
    if coprime(a, s) && cr3_predicate(a, b, s, s, &one) {
        return Verdict::Holds(Cr3Witness {
            e: s.clone(),
            f: one,
            route: Cr3Route::CoprimeAS,
        });
    }
    let zero = BigInt::zero();
    if coprime(&(&one - a), b) && cr3_predicate(a, b, s, &one, &zero) {
        return Verdict::Holds(Cr3Witness {
            e: one,
            f: zero,
            route: Cr3Route::CoprimeOneMinusAB,
        });
    }
    let h = bound as i64;
    for q in ordered(h).map(BigInt::from) {
        if coprime(&(b + a * &q), &t) {
            let (e, f) = (&one - a, &q + b);
            if cr3_predicate(a, b, s, &e, &f) {
                return Verdict::Holds(Cr3Witness {
                    e,
                    f,
                    route: Cr3Route::Shift { q: q.to_string() },
                });
            }
        }
    }
    for (e, f) in shell_pairs(h) {
        let (e, f) = (BigInt::from(e), BigInt::from(f));
        if cr3_predicate(a, b, s, &e, &f) {
            return Verdict::Holds(Cr3Witness {
                e,
                f,
                route: Cr3Route::Scan,
            });
        }
    }
    Verdict::Unknown
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eq4Witness {
    pub s: BigInt,
    pub l: BigInt,
    pub z: BigInt,
}

fn eq4_parts(a: &BigInt, u: &BigInt, t: &BigInt, s: &BigInt, l: &BigInt) -> (BigInt, BigInt) {
    let one = BigInt::one();
    let us = u * s;
    let m = &one - &us - a * l;
    let p = &m * &m + l - &us * l - a * l * l;
    let k = s + t - &us * t;
    (p, k)
}

/// Whether `(s, l, z)` solves the equation for `(a, u, t)`.
pub fn eq4_holds(a: &BigInt, u: &BigInt, t: &BigInt, s: &BigInt, l: &BigInt, z: &BigInt) -> bool {
    let (p, k) = eq4_parts(a, u, t, s, l);
    (p - k * z).is_zero()
}

/// Scans `|s|, |l| ≤ bound` shell by shell and solves for `z` exactly.
pub fn eq4_witness(
    a: &BigInt,
    u: &BigInt,
    t: &BigInt,
    bound: u64,
) -> crate::Result<Verdict<Eq4Witness>> {
    if u.is_zero() {
        return Err(crate::Error::Precondition("u must be nonzero".into()));
    }
    for (s, l) in shell_pairs(bound as i64) {
        let (s, l) = (BigInt::from(s), BigInt::from(l));
        let (p, k) = eq4_parts(a, u, t, &s, &l);
        let z = if k.is_zero() {
            if p.is_zero() {
                Some(BigInt::zero())
            } else {
                None
            }
        } else {
            let (q, r) = p.div_rem(&k);
            r.is_zero().then_some(q)
        };
        if let Some(z) = z {
            debug_assert!(eq4_holds(a, u, t, &s, &l, &z));
            return Ok(Verdict::Holds(Eq4Witness { s, l, z }));
        }
    }
    Ok(Verdict::Unknown)
}

/// Largest absolute value among the given integers, for reporting witness sizes.
pub fn max_abs(v: &[&BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn z(k: i64) -> BigInt {
        BigInt::from(k)
    }

    #[test]
    fn shells_cover_the_box_once_in_norm_order() {
        let v: Vec<(i64, i64)> = shell_pairs(3).collect();
        assert_eq!(v.len(), 49);
        assert_eq!(v[0], (0, 0));
        let norms: Vec<i64> = v.iter().map(|(x, y)| x.abs().max(y.abs())).collect();
        assert!(norms.windows(2).all(|w| w[0] <= w[1]));
        let mut sorted = v.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 49);
    }

    #[test]
    fn cr3_examples() {
        let w = cr3_witness(&z(3), &z(5), &z(2), 25)
            .witness()
            .cloned()
            .unwrap();
        assert_eq!((w.e, w.f, w.route), (z(2), z(1), Cr3Route::CoprimeAS));
        let w = cr3_witness(&z(0), &z(1), &z(0), 25)
            .witness()
            .cloned()
            .unwrap();
        assert_eq!((w.e, w.f), (z(1), z(0)));
    }

    #[test]
    fn shift_route_needs_the_full_check() {
        // The first q with (b+aq, 1-bs-a) coprime gives (e,f) = (12,-39), which is not
        // unimodular; the search must move on.
        let (a, b, s) = (z(-11), z(-10), z(-11));
        assert!(!cr3_predicate(&a, &b, &s, &z(12), &z(-39)));
        let w = cr3_witness(&a, &b, &s, 30).witness().cloned().unwrap();
        assert!(cr3_predicate(&a, &b, &s, &w.e, &w.f));
    }

    #[test]
    fn eq4_examples() {
        assert!(eq4_holds(&z(0), &z(1), &z(0), &z(1), &z(0), &z(0)));
        let w = eq4_witness(&z(1), &z(1), &z(1), 30)
            .unwrap()
            .witness()
            .cloned()
            .unwrap();
        assert_eq!((w.s, w.l, w.z), (z(0), z(0), z(1)));
        let w = eq4_witness(&z(0), &z(1), &z(0), 30)
            .unwrap()
            .witness()
            .cloned()
            .unwrap();
        assert!(eq4_holds(&z(0), &z(1), &z(0), &w.s, &w.l, &w.z));
        assert!(eq4_witness(&z(1), &z(0), &z(1), 5).is_err());
    }

    #[test]
    fn random_triples_find_witnesses() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = z(rng.gen_range(-25..=25));
            let b = z(rng.gen_range(-25..=25));
            let s = z(rng.gen_range(-25..=25));
            let w = cr3_witness(&a, &b, &s, 30);
            let w = w.witness().expect("cr3 witness");
            assert!(cr3_predicate(&a, &b, &s, &w.e, &w.f));
            let mut u = z(rng.gen_range(-25..=25));
            if u.is_zero() {
                u = z(1);
            }
            let v = eq4_witness(&a, &u, &s, 30).unwrap();
            let v = v.witness().expect("eq4 witness");
            assert!(eq4_holds(&a, &u, &s, &v.s, &v.l, &v.z));
        }
    }
}

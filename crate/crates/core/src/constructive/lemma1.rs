//! The determinant-1 matrix carrying `diag(d, 0)` to `diag(e, 0)` when `Rd = Re`.

use crate::error::{Error, Result};
use crate::mat::{det2, mul, Mat};
use crate::ring::{Elem, FiniteRing};

/// `N = [[v, −1], [1 − uv, u]]` with `e·u = d` and `d·v = e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Matrix {
    pub u: Elem,
    pub v: Elem,
    pub n: Mat<Elem>,
}

/// Least `x` (trying 1 first, then index order) with `a·x = b`.
fn first_solution(r: &FiniteRing, a: Elem, b: Elem) -> Option<Elem> {
    std::iter::once(r.one())
        .chain(r.elements())
        .find(|&x| r.mul(a, x) == b)
}

pub fn lemma1_matrix(r: &FiniteRing, d: Elem, e: Elem) -> Result<Lemma1Matrix> {
    let not_associated = || {
        Error::Precondition(format!(
            "{} and {} generate different ideals",
            r.render(d),
            r.render(e)
        ))
    };
    let u = first_solution(r, e, d).ok_or_else(not_associated)?;
    let v = first_solution(r, d, e).ok_or_else(not_associated)?;
    let n = Mat::m2(v, r.neg(r.one()), r.sub(r.one(), r.mul(u, v)), u);
    debug_assert_eq!(det2(r, &n).ok(), Some(r.one()));
    Ok(Lemma1Matrix { u, v, n })
}

impl Lemma1Matrix {
    /// Checks `det N = 1` and `N·diag(d, 0) = diag(e, 0)`.
    pub fn verify(&self, r: &FiniteRing, d: Elem, e: Elem) -> bool {
        let z = r.zero();
        let lhs = mul(r, &self.n, &Mat::m2(d, z, z, z)).expect("2×2");
        det2(r, &self.n).ok() == Some(r.one()) && lhs == Mat::m2(e, z, z, z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::render_matrix;
    use crate::ring::make_finite_ring;

    #[test]
    fn zmod9_example() {
        let r = make_finite_ring("Zmod:9").unwrap();
        let l = lemma1_matrix(&r, Elem(3), Elem(6)).unwrap();
        assert_eq!((l.u, l.v), (Elem(2), Elem(2)));
        assert_eq!(
            l.n,
            Mat::m2(Elem(2), r.from_int(-1), r.from_int(-3), Elem(2))
        );
        assert_eq!(render_matrix(r.as_ref(), &l.n), "[[2,8],[6,2]]");
        assert!(l.verify(&r, Elem(3), Elem(6)));
    }

    #[test]
    fn trivial_cases() {
        let r = make_finite_ring("Zmod:12").unwrap();
        let l = lemma1_matrix(&r, Elem(4), Elem(4)).unwrap();
        assert_eq!((l.u, l.v), (r.one(), r.one()));
        assert_eq!(l.n, Mat::m2(r.one(), r.from_int(-1), r.zero(), r.one()));
        let l = lemma1_matrix(&r, r.zero(), r.zero()).unwrap();
        assert_eq!((l.u, l.v), (r.one(), r.one()));
        assert!(lemma1_matrix(&r, Elem(2), Elem(4)).is_err());
    }

    #[test]
    fn all_associated_pairs_small_rings() {
        for s in [
            "Zmod:8",
            "Zmod:12",
            "GF:9",
            "Quot:GF:2[x]/(x^3)",
            "Table:builtin:f2xy",
        ] {
            let r = make_finite_ring(s).unwrap();
            for d in r.elements() {
                for e in r.elements() {
                    let same = r.divides(d, e) && r.divides(e, d);
                    match lemma1_matrix(&r, d, e) {
                        Ok(l) => assert!(same && l.verify(&r, d, e)),
                        Err(_) => assert!(!same),
                    }
                }
            }
        }
    }
}

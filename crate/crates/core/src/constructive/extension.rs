//! Completion of a unimodular 2×2 matrix to a 3×3 matrix of determinant 1 with a
//! zero corner, computed from its Smith form.

use super::snf::{det, mat_mul};
use super::{gcd_all, snf, Euclidean};
use crate::error::{Error, Result};
use num_bigint::BigInt;

/// `a_plus` has `A` as its top-left block, determinant 1 and `(3,3)` entry 0.
/// `(e, f) = (−a⁺₂₃, a⁺₁₃)` is the row with `(e, f)` and `(e, f)·A` unimodular.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleExtension<T> {
    pub a_plus: Vec<Vec<T>>,
    pub e: T,
    pub f: T,
}

impl<T: Euclidean> SimpleExtension<T> {
    /// Re-checks the block, the corner, the determinant and the `(e, f)` row.
    pub fn verify(&self, a: &[Vec<T>]) -> bool {
        let p = &self.a_plus;
        let zero = self.e.zero_like();
        let block = (0..2).all(|i| (0..2).all(|j| p[i][j] == a[i][j]));
        let row = [
            self.e.mul(&a[0][0]).add(&self.f.mul(&a[1][0])),
            self.e.mul(&a[0][1]).add(&self.f.mul(&a[1][1])),
        ];
        block
            && p[2][2] == zero
            && det(p) == zero.one_like()
            && gcd_all(&zero, &[self.e.clone(), self.f.clone()]).is_unit()
            && gcd_all(&zero, &row).is_unit()
    }
}

fn inverse2<T: Euclidean>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let w = det(m).canonical_unit();
    vec![
        vec![w.mul(&m[1][1]), w.mul(&m[0][1]).neg()],
        vec![w.mul(&m[1][0]).neg(), w.mul(&m[0][0])],
    ]
}

/// Builds the completion `diag(M⁻¹, 1) · [[1,0,0],[0,δ,1],[0,−1,0]] · diag(N⁻¹, s)`
/// where `M·A·N = diag(1, δ)` and `s = det M · det N`.
pub fn simple_extension<T: Euclidean>(a: &[Vec<T>]) -> Result<SimpleExtension<T>> {
    if a.len() != 2 || a.iter().any(|r| r.len() != 2) {
        return Err(Error::Shape("simple extension needs a 2×2 matrix".into()));
    }
    let zero = a[0][0].zero_like();
    let one = zero.one_like();
    let entries: Vec<T> = a.iter().flatten().cloned().collect();
    if !gcd_all(&zero, &entries).is_unit() {
        return Err(Error::Precondition("matrix is not unimodular".into()));
    }
    let cert = snf(a)?;
    let delta = cert.d[1][1].clone();
    let s = det(&cert.m).mul(&det(&cert.n));
    let lift = |b: Vec<Vec<T>>, corner: T| {
        vec![
            vec![b[0][0].clone(), b[0][1].clone(), zero.clone()],
            vec![b[1][0].clone(), b[1][1].clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), corner],
        ]
    };
    let left = lift(inverse2(&cert.m), one.clone());
    let right = lift(inverse2(&cert.n), s);
    let middle = vec![
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), delta, one.clone()],
        vec![zero.clone(), one.neg(), zero.clone()],
    ];
    let a_plus = mat_mul(&mat_mul(&left, &middle), &right);
    let e = a_plus[1][2].neg();
    let f = a_plus[0][2].clone();
    let out = SimpleExtension { a_plus, e, f };
    debug_assert!(out.verify(a));
    Ok(out)
}

/// [`simple_extension`] over ℤ.
pub fn simple_extension_z(a: &[Vec<BigInt>]) -> Result<SimpleExtension<BigInt>> {
    simple_extension(a)
}

//! Smith normal form with transformation matrices.

use super::{ext_gcd, Euclidean};
use crate::error::{Error, Result};
use serde::Serialize;

/// Largest matrix dimension accepted by [`snf`].
pub const SNF_MAX_DIM: usize = 8;

/// `M·B·N = D` with `D` diagonal, each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SnfCertificate<T> {
    pub b: Vec<Vec<T>>,
    pub m: Vec<Vec<T>>,
    pub n: Vec<Vec<T>>,
    pub d: Vec<Vec<T>>,
}

#[derive(Serialize)]
struct SnfJson {
    input: Vec<Vec<String>>,
    left: Vec<Vec<String>>,
    right: Vec<Vec<String>>,
    diagonal: Vec<Vec<String>>,
    invariant_factors: Vec<String>,
    verified: bool,
}

fn strings<T: Euclidean>(a: &[Vec<T>]) -> Vec<Vec<String>> {
    a.iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

impl<T: Euclidean> SnfCertificate<T> {
    /// The diagonal entries `d₁, …, d_min(m,n)`.
    pub fn invariant_factors(&self) -> Vec<T> {
        let k = self.d.len().min(self.d[0].len());
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }

    /// Re-checks every claim of the certificate from scratch.
    pub fn verify(&self) -> bool {
        let zero = self.b[0][0].zero_like();
        let prod = mat_mul(&mat_mul(&self.m, &self.b), &self.n);
        if prod != self.d {
            return false;
        }
        for (i, row) in self.d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j && *x != zero {
                    return false;
                }
            }
        }
        let f = self.invariant_factors();
        if f.iter().any(|x| *x != x.canonical()) {
            return false;
        }
        if f.windows(2).any(|w| !w[0].divides(&w[1])) {
            return false;
        }
        det(&self.m).is_unit() && det(&self.n).is_unit()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SnfJson {
            input: strings(&self.b),
            left: strings(&self.m),
            right: strings(&self.n),
            diagonal: strings(&self.d),
            invariant_factors: self
                .invariant_factors()
                .iter()
                .map(|x| x.to_string())
                .collect(),
            verified: self.verify(),
        })
        .expect("serializable")
    }
}

pub(crate) fn identity<T: Euclidean>(like: &T, k: usize) -> Vec<Vec<T>> {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        like.one_like()
                    } else {
                        like.zero_like()
                    }
                })
                .collect()
        })
        .collect()
}

pub(crate) fn mat_mul<T: Euclidean>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let zero = a[0][0].zero_like();
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).fold(zero.clone(), |acc, k| acc.add(&a[i][k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn det<T: Euclidean>(a: &[Vec<T>]) -> T {
    let n = a.len();
    let zero = a[0][0].zero_like();
    let mut m: Vec<Vec<T>> = a.to_vec();
    let mut sign_flip = false;
    let mut prev = zero.one_like();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign_flip = !sign_flip;
                }
                None => return zero,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_rem(&prev).0;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

/// For each `k`, the canonical gcd of all `k×k` minors.
pub fn minor_gcds<T: Euclidean>(b: &[Vec<T>]) -> Vec<T> {
    let (m, n) = (b.len(), b[0].len());
    let zero = b[0][0].zero_like();
    (1..=m.min(n))
        .map(|k| {
            let mut g = zero.clone();
            for rows in subsets(m, k) {
                for cols in subsets(n, k) {
                    let minor: Vec<Vec<T>> = rows
                        .iter()
                        .map(|&i| cols.iter().map(|&j| b[i][j].clone()).collect())
                        .collect();
                    g = ext_gcd(&g, &det(&minor)).0;
                }
            }
            g
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

struct Work<T> {
    d: Vec<Vec<T>>,
    m: Vec<Vec<T>>,
    n: Vec<Vec<T>>,
}

impl<T: Euclidean> Work<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.d.swap(i, j);
        self.m.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.d.iter_mut() {
            r.swap(i, j);
        }
        for r in self.n.iter_mut() {
            r.swap(i, j);
        }
    }

    /// row_i ← row_i − q·row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &T) {
        for k in 0..self.d[0].len() {
            let t = self.d[i][k].sub(&q.mul(&self.d[j][k]));
            self.d[i][k] = t;
        }
        for k in 0..self.m[0].len() {
            let t = self.m[i][k].sub(&q.mul(&self.m[j][k]));
            self.m[i][k] = t;
        }
    }

    /// col_i ← col_i − q·col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &T) {
        for r in self.d.iter_mut() {
            let t = r[i].sub(&q.mul(&r[j]));
            r[i] = t;
        }
        for r in self.n.iter_mut() {
            let t = r[i].sub(&q.mul(&r[j]));
            r[i] = t;
        }
    }

    fn scale_row(&mut self, i: usize, u: &T) {
        for x in self.d[i].iter_mut() {
            *x = u.mul(x);
        }
        for x in self.m[i].iter_mut() {
            *x = u.mul(x);
        }
    }
}

/// Smith normal form over ℤ or F_p[x], with the transforming matrices.
pub fn snf<T: Euclidean>(b: &[Vec<T>]) -> Result<SnfCertificate<T>> {
    let rows = b.len();
    if rows == 0 || b[0].is_empty() || b.iter().any(|r| r.len() != b[0].len()) {
        return Err(Error::Shape(
            "matrix needs equal-length nonempty rows".into(),
        ));
    }
    let cols = b[0].len();
    if rows > SNF_MAX_DIM || cols > SNF_MAX_DIM {
        return Err(Error::Shape(format!(
            "Smith form supports at most {SNF_MAX_DIM}×{SNF_MAX_DIM}"
        )));
    }
    let like = b[0][0].clone();
    let mut w = Work {
        d: b.to_vec(),
        m: identity(&like, rows),
        n: identity(&like, cols),
    };
    for t in 0..rows.min(cols) {
        loop {
            // Bring the smallest nonzero entry of the trailing block to (t, t).
            let mut best: Option<(u64, usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &w.d[i][j];
                    if !x.is_zero() && best.is_none_or(|(nb, _, _)| x.norm() < nb) {
                        best = Some((x.norm(), i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                break;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let mut dirty = false;
            for i in t + 1..rows {
                if !w.d[i][t].is_zero() {
                    let q = w.d[i][t].div_rem(&w.d[t][t]).0;
                    w.row_sub(i, t, &q);
                    dirty |= !w.d[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.d[t][j].is_zero() {
                    let q = w.d[t][j].div_rem(&w.d[t][t]).0;
                    w.col_sub(j, t, &q);
                    dirty |= !w.d[t][j].is_zero();
                }
            }
            if dirty {
                continue;
            }
            // The pivot must divide the whole trailing block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !w.d[t][t].divides(&w.d[i][j]));
            match bad {
                Some((i, _)) => {
                    let minus_one = like.one_like().neg();
                    w.row_sub(t, i, &minus_one);
                }
                None => break,
            }
        }
        let u = w.d[t][t].canonical_unit();
        w.scale_row(t, &u);
    }
    Ok(SnfCertificate {
        b: b.to_vec(),
        m: w.m,
        n: w.n,
        d: w.d,
    })
}

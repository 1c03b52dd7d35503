//! Small dense matrices: determinants, unimodularity, GL/SL enumeration and matrix literals.

use crate::error::{Error, Result};
use crate::ring::{split_top_level, Elem, FiniteRing};
use crate::search::SearchRing;
use serde::Serialize;

/// A dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}×{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("rows of different lengths".into()));
        }
        Mat::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: E) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        self.data.chunks(self.cols).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn is_square(&self, n: usize) -> bool {
        self.rows == n && self.cols == n
    }
}

impl Mat<Elem> {
    /// The 2×2 matrix `[[a, b], [c, d]]`.
    pub fn m2(a: Elem, b: Elem, c: Elem, d: Elem) -> Self {
        Mat {
            rows: 2,
            cols: 2,
            data: vec![a, b, c, d],
        }
    }

    pub fn as_m2(&self) -> Option<[Elem; 4]> {
        self.is_square(2)
            .then(|| [self.data[0], self.data[1], self.data[2], self.data[3]])
    }
}

pub fn identity<R: SearchRing>(r: &R, n: usize) -> Mat<R::E> {
    let data = (0..n * n)
        .map(|k| if k / n == k % n { r.one() } else { r.zero() })
        .collect();
    Mat {
        rows: n,
        cols: n,
        data,
    }
}

pub fn mul<R: SearchRing>(r: &R, a: &Mat<R::E>, b: &Mat<R::E>) -> Result<Mat<R::E>> {
    if a.cols != b.rows {
        return Err(Error::Shape(format!(
            "cannot multiply {}×{} by {}×{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut data = Vec::with_capacity(a.rows * b.cols);
    for i in 0..a.rows {
        for j in 0..b.cols {
            let mut acc = r.zero();
            for k in 0..a.cols {
                acc = r.add(&acc, &r.mul(a.get(i, k), b.get(k, j)));
            }
            data.push(acc);
        }
    }
    Ok(Mat {
        rows: a.rows,
        cols: b.cols,
        data,
    })
}

pub fn det2<R: SearchRing>(r: &R, a: &Mat<R::E>) -> Result<R::E> {
    if !a.is_square(2) {
        return Err(Error::Shape("det2 needs a 2×2 matrix".into()));
    }
    Ok(r.sub(
        &r.mul(a.get(0, 0), a.get(1, 1)),
        &r.mul(a.get(0, 1), a.get(1, 0)),
    ))
}

pub fn det3<R: SearchRing>(r: &R, a: &Mat<R::E>) -> Result<R::E> {
    if !a.is_square(3) {
        return Err(Error::Shape("det3 needs a 3×3 matrix".into()));
    }
    let g = |i, j| a.get(i, j);
    let minor = |i0, j0, i1, j1| r.sub(&r.mul(g(i0, j0), g(i1, j1)), &r.mul(g(i0, j1), g(i1, j0)));
    let t0 = r.mul(g(0, 0), &minor(1, 1, 2, 2));
    let t1 = r.mul(g(0, 1), &minor(1, 0, 2, 2));
    let t2 = r.mul(g(0, 2), &minor(1, 0, 2, 1));
    Ok(r.add(&r.sub(&t0, &t1), &t2))
}

/// Determinant of a 2×2 or 3×3 matrix.
pub fn det<R: SearchRing>(r: &R, a: &Mat<R::E>) -> Result<R::E> {
    match (a.rows, a.cols) {
        (1, 1) => Ok(a.get(0, 0).clone()),
        (2, 2) => det2(r, a),
        (3, 3) => det3(r, a),
        (m, n) => Err(Error::Shape(format!("no determinant for {m}×{n}"))),
    }
}

/// Whether the entries generate the unit ideal, with coefficients when they do.
pub fn unimodular_vector<R: SearchRing>(r: &R, v: &[R::E]) -> Result<Option<Vec<R::E>>> {
    if v.is_empty() {
        return Err(Error::Shape("empty vector".into()));
    }
    Ok(r.unimodular_coefficients(v))
}

pub fn is_unimodular_matrix<R: SearchRing>(r: &R, a: &Mat<R::E>) -> bool {
    r.is_unimodular(a.entries())
}

/// Parses `[[a,b],[c,d]]` (any rectangular shape) into element literals.
pub fn parse_matrix_literal(s: &str) -> Result<Vec<Vec<String>>> {
    let err = |reason: &str| Error::MatrixLiteral {
        literal: s.to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| err("expected [[…],[…]]"))?;
    let mut rows = Vec::new();
    for row in split_top_level(inner, ',') {
        let row = row.trim();
        let cells = row
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| err("each row must be bracketed"))?;
        let cells: Vec<String> = split_top_level(cells, ',')
            .into_iter()
            .map(|c| c.trim().to_string())
            .collect();
        if cells.iter().any(String::is_empty) {
            return Err(err("empty entry"));
        }
        rows.push(cells);
    }
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(err("rows must be nonempty and of equal length"));
    }
    Ok(rows)
}

/// Parses a matrix literal over `r`.
pub fn parse_matrix<R: SearchRing>(r: &R, s: &str) -> Result<Mat<R::E>> {
    let rows = parse_matrix_literal(s)?;
    let rows = rows
        .iter()
        .map(|row| row.iter().map(|c| r.parse(c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(rows)
}

pub fn render_matrix<R: SearchRing>(r: &R, a: &Mat<R::E>) -> String {
    let rows: Vec<String> = a
        .to_rows()
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|x| r.render(x)).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// Rows of rendered entries, for JSON output.
pub fn matrix_json<R: SearchRing>(r: &R, a: &Mat<R::E>) -> Vec<Vec<String>> {
    a.to_rows()
        .iter()
        .map(|row| row.iter().map(|x| r.render(x)).collect())
        .collect()
}

/// All invertible `n×n` matrices over a finite ring, with the determinant-1 ones tagged.
#[derive(Clone, Debug)]
pub struct GlCache {
    pub n: usize,
    pub matrices: Vec<Mat<Elem>>,
    pub special: Vec<bool>,
}

impl GlCache {
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn sl(&self) -> impl Iterator<Item = &Mat<Elem>> {
        self.matrices
            .iter()
            .zip(&self.special)
            .filter(|(_, &s)| s)
            .map(|(m, _)| m)
    }

    pub fn sl_len(&self) -> usize {
        self.special.iter().filter(|&&s| s).count()
    }
}

#[derive(Serialize)]
pub struct GlSummary {
    pub n: usize,
    pub gl: usize,
    pub sl: usize,
}

/// Enumerates `GL_n(R)` for `n ∈ {2, 3}` by scanning rows, keeping only unimodular
/// rows and filtering by the determinant.  Fails when `|R|^(n²)` exceeds `budget`.
pub fn enumerate_gl(r: &FiniteRing, n: usize, budget: u64) -> Result<GlCache> {
    if !(2..=3).contains(&n) {
        return Err(Error::Shape(format!(
            "GL enumeration supports n = 2, 3, not {n}"
        )));
    }
    let size = r.size() as u64;
    let total = (size as u128).pow((n * n) as u32);
    if total > budget as u128 {
        return Err(Error::Budget(budget));
    }
    let rows: Vec<Vec<Elem>> = tuples(r, n)
        .into_iter()
        .filter(|v| r.is_unimodular(v))
        .collect();
    let mut matrices = Vec::new();
    let mut special = Vec::new();
    let mut pick = vec![0usize; n];
    loop {
        let data: Vec<Elem> = pick.iter().flat_map(|&i| rows[i].iter().copied()).collect();
        let m = Mat::new(n, n, data)?;
        let d = det(r, &m)?;
        if r.is_unit(d) {
            special.push(d == r.one());
            matrices.push(m);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(GlCache {
                    n,
                    matrices,
                    special,
                });
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < rows.len() {
                break;
            }
            pick[k] = 0;
        }
    }
}

/// All `n`-tuples of elements in lexicographic index order.
pub fn tuples(r: &FiniteRing, n: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                r.elements().map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_finite_ring;
    use rand::{Rng, SeedableRng};

    #[test]
    fn determinant_examples() {
        let r = make_finite_ring("Zmod:6").unwrap();
        let i = identity(r.as_ref(), 2);
        assert_eq!(det2(r.as_ref(), &i).unwrap(), r.one());
        let a = parse_matrix(r.as_ref(), "[[2,1],[0,3]]").unwrap();
        assert_eq!(det2(r.as_ref(), &a).unwrap(), r.zero());
        assert!(det2(r.as_ref(), &identity(r.as_ref(), 3)).is_err());
    }

    #[test]
    fn det3_matches_leibniz() {
        let r = make_finite_ring("Zmod:7").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let perms = [
            ([0, 1, 2], 1),
            ([0, 2, 1], -1),
            ([1, 0, 2], -1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([2, 1, 0], -1),
        ];
        for _ in 0..500 {
            let data: Vec<Elem> = (0..9).map(|_| Elem(rng.gen_range(0..7))).collect();
            let m = Mat::new(3, 3, data).unwrap();
            let mut acc = 0i64;
            for (p, s) in perms {
                let t: i64 = (0..3).map(|i| m.get(i, p[i]).0 as i64).product();
                acc += s * t;
            }
            assert_eq!(det3(r.as_ref(), &m).unwrap(), r.from_int(acc));
        }
    }

    #[test]
    fn det_is_multiplicative() {
        for s in ["Zmod:12", "GF:8", "Table:builtin:f2xy"] {
            let r = make_finite_ring(s).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
            let n = r.size() as u32;
            for _ in 0..1000 {
                for k in [2usize, 3] {
                    let a = Mat::new(
                        k,
                        k,
                        (0..k * k).map(|_| Elem(rng.gen_range(0..n))).collect(),
                    )
                    .unwrap();
                    let b = Mat::new(
                        k,
                        k,
                        (0..k * k).map(|_| Elem(rng.gen_range(0..n))).collect(),
                    )
                    .unwrap();
                    let ab = mul(r.as_ref(), &a, &b).unwrap();
                    let lhs = det(r.as_ref(), &ab).unwrap();
                    let rhs = r.mul(det(r.as_ref(), &a).unwrap(), det(r.as_ref(), &b).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn unimodularity_examples() {
        let r = make_finite_ring("Zmod:6").unwrap();
        let c = unimodular_vector(r.as_ref(), &[Elem(2), Elem(3)])
            .unwrap()
            .unwrap();
        assert_eq!(r.add(r.mul(c[0], Elem(2)), r.mul(c[1], Elem(3))), r.one());
        assert!(unimodular_vector(r.as_ref(), &[Elem(2), Elem(4)])
            .unwrap()
            .is_none());
        assert!(unimodular_vector(r.as_ref(), &[Elem(0), Elem(0), Elem(1)])
            .unwrap()
            .is_some());
        assert!(unimodular_vector(r.as_ref(), &[]).is_err());
        let a = parse_matrix(r.as_ref(), "[[2,1],[0,3]]").unwrap();
        assert!(is_unimodular_matrix(r.as_ref(), &a));
        let b = parse_matrix(r.as_ref(), "[[2,0],[0,2]]").unwrap();
        assert!(!is_unimodular_matrix(r.as_ref(), &b));
        let z = parse_matrix(r.as_ref(), "[[0,0],[0,0]]").unwrap();
        assert!(!is_unimodular_matrix(r.as_ref(), &z));
    }

    #[test]
    fn group_orders() {
        let f2 = make_finite_ring("GF:2").unwrap();
        assert_eq!(
            enumerate_gl(&f2, 2, 1 << 20).unwrap().len(),
            (4 - 1) * (4 - 2)
        );
        let f3 = make_finite_ring("GF:3").unwrap();
        assert_eq!(
            enumerate_gl(&f3, 2, 1 << 20).unwrap().len(),
            (9 - 1) * (9 - 3)
        );
        let z4 = make_finite_ring("Zmod:4").unwrap();
        let brute = tuples(&z4, 4)
            .iter()
            .filter(|v| z4.sub(z4.mul(v[0], v[3]), z4.mul(v[1], v[2])) == z4.one())
            .count();
        assert_eq!(brute, 48);
        assert_eq!(enumerate_gl(&z4, 2, 1 << 20).unwrap().sl_len(), 48);
        assert_eq!(enumerate_gl(&f2, 3, 1 << 20).unwrap().len(), 168);
        assert!(matches!(enumerate_gl(&z4, 3, 1000), Err(Error::Budget(_))));
    }

    #[test]
    fn matrix_literals() {
        let rows = parse_matrix_literal("[[x+1, (1,2)], [3, -g]]").unwrap();
        assert_eq!(rows, vec![vec!["x+1", "(1,2)"], vec!["3", "-g"]]);
        assert!(parse_matrix_literal("[[1,2],[3]]").is_err());
        assert!(parse_matrix_literal("[1,2]").is_err());
        let r = make_finite_ring("Prod:Zmod:2*Zmod:3").unwrap();
        let m = parse_matrix(r.as_ref(), "[[(1,2),0],[1,(0,1)]]").unwrap();
        assert_eq!(
            render_matrix(r.as_ref(), &m),
            "[[(1,2),(0,0)],[(1,1),(0,1)]]"
        );
    }
}

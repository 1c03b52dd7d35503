//! Dense polynomials over a prime field F_p.

use std::fmt;

/// A polynomial over F_p with coefficients low degree first and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn constant(p: u64, k: i64) -> Self {
        Self::new(p, vec![k.rem_euclid(p as i64) as u64])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0))
            .collect();
        Self::new(self.p, v)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.c.iter().map(|&x| self.p - x).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut v = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + a * b) % self.p;
            }
        }
        Self::new(self.p, v)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&x| x * (k % self.p)).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p;
        let inv = inv_mod(d.lead(), p);
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (Self::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let t = r[top] * inv % p;
            if t == 0 {
                continue;
            }
            q[top - dd] = t;
            for (j, &dj) in d.c.iter().enumerate() {
                let k = top - dd + j;
                r[k] = (r[k] + p - t * dj % p) % p;
            }
        }
        (Self::new(p, q), Self::new(p, r))
    }

    /// The monic associate (zero stays zero) and the unit it was divided by.
    pub fn monic(&self) -> (Self, u64) {
        if self.is_zero() {
            return (self.clone(), 1);
        }
        let l = self.lead();
        (self.scale(inv_mod(l, self.p)), l)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &c| (acc * x + c) % self.p)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (g, s, _) = super::ext_gcd_i64(a as i64, p as i64);
    assert_eq!(g, 1, "{a} is not invertible mod {p}");
    s.rem_euclid(p as i64) as u64
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Writes `q = p^k` with `p` prime, if possible.
pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// The first monic irreducible polynomial of degree `k` over F_p, ordering
/// candidates by their coefficient vector read as a base-p number.
pub(crate) fn smallest_irreducible(p: u64, k: u32) -> FpPoly {
    let k = k as usize;
    let count = p.pow(k as u32);
    'cand: for code in 0..count {
        let mut c = Vec::with_capacity(k + 1);
        let mut x = code;
        for _ in 0..k {
            c.push(x % p);
            x /= p;
        }
        c.push(1);
        let f = FpPoly::new(p, c);
        for d in 1..=k / 2 {
            for dcode in 0..p.pow(d as u32) {
                let mut dc = Vec::with_capacity(d + 1);
                let mut y = dcode;
                for _ in 0..d {
                    dc.push(y % p);
                    y /= p;
                }
                dc.push(1);
                let g = FpPoly::new(p, dc);
                if f.div_rem(&g).1.is_zero() {
                    continue 'cand;
                }
            }
        }
        return f;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let a = FpPoly::new(5, vec![3, 0, 2, 4, 1]);
        let b = FpPoly::new(5, vec![1, 2, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn irreducibles_have_no_roots() {
        assert_eq!(smallest_irreducible(2, 2).to_string(), "x^2+x+1");
        assert_eq!(smallest_irreducible(3, 2).to_string(), "x^2+1");
        assert_eq!(smallest_irreducible(2, 3).to_string(), "x^3+x+1");
        for (p, k) in [(2, 4), (3, 3), (5, 2), (7, 3)] {
            let f = smallest_irreducible(p, k);
            assert!((0..p).all(|x| f.eval(x) != 0));
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}

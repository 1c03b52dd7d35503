//! Finite commutative rings with identity, plus the bounded profiles of ℤ and F_p[x].
//!
//! A [`FiniteRing`] numbers its elements `0..n` and stores either full operation
//! tables (small rings) or enough structure to compute sums and products on demand.
//! Units, unimodularity and maximal-ideal membership are answered through a
//! per-element bit mask: bit `i` is set when the element lies in the `i`-th
//! maximal ideal.

mod expr;
mod ideal;
mod literal;
mod poly;
mod profile;
mod spec;
mod table;

pub use expr::{parse_expr, split_top_level, Evaluator, Expr};
pub use ideal::{quotient, quotient_by_ideal, Ideal, Quotient, UnitGroup, IDEAL_LIMIT};
pub(crate) use poly::inv_mod as poly_inv_mod;
pub use poly::FpPoly;
pub use profile::{IntProfile, PolyProfile};
pub use spec::{make_finite_ring, make_ring, RingHandle};
pub use table::{load_table_json, BUILTIN_F2XY, TABLE_RING_LIMIT};

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use std::sync::Arc;

/// Rings above this size keep no operation tables.
pub const TABLE_LIMIT: usize = 1024;
/// Largest supported finite ring.
pub const MAX_ELEMENTS: usize = 1 << 16;
/// Rings up to this size get an exhaustive axiom check at construction.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 64;

const NO_INVERSE: u32 = u32::MAX;

/// An element of a [`FiniteRing`], identified by its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u32);

impl Elem {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// How the element indices of a ring are laid out.
#[derive(Debug)]
pub enum Structure {
    /// ℤ/nℤ with index = residue.
    Zmod { modulus: u32 },
    /// `base[var]/(modulus)`, index = Σ cᵢ·|base|ⁱ; `modulus` is monic, low degree first.
    Ext {
        base: Arc<FiniteRing>,
        modulus: Vec<Elem>,
        var: String,
    },
    /// Direct product, index = lexicographic mixed radix (first factor most significant).
    Prod { factors: Vec<Arc<FiniteRing>> },
    /// User-supplied operation tables.
    Table { names: Vec<String> },
    /// Quotient of `parent` by an ideal; cosets are numbered by their least member.
    Quotient {
        parent: Arc<FiniteRing>,
        reps: Vec<Elem>,
        coset_of: Vec<u32>,
    },
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
}

/// A finite commutative ring with identity.
pub struct FiniteRing {
    spec: String,
    n: usize,
    zero: Elem,
    one: Elem,
    characteristic: u64,
    structure: Structure,
    tables: Option<Tables>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    mask: Vec<u64>,
    maximal_ideals: usize,
    unit_count: usize,
    all: Vec<Elem>,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteRing({}, {} elements)", self.spec, self.n)
    }
}

impl FiniteRing {
    /// Builds a ring from its structure, validating the axioms.
    pub(crate) fn build(spec: String, structure: Structure, allow_zero: bool) -> Result<Self> {
        let (n, zero, one) = match &structure {
            Structure::Zmod { modulus } => (*modulus as usize, Elem(0), Elem(1 % *modulus)),
            Structure::Ext { base, modulus, .. } => {
                let deg = modulus.len() - 1;
                let n = checked_pow(base.n, deg)?;
                (n, Elem(0), base.one)
            }
            Structure::Prod { factors } => {
                let mut n = 1usize;
                let mut one = 0u32;
                for f in factors {
                    n = n.checked_mul(f.n).filter(|&m| m <= MAX_ELEMENTS).ok_or(
                        Error::TooLarge {
                            what: "finite ring",
                            size: usize::MAX,
                            limit: MAX_ELEMENTS,
                        },
                    )?;
                    one = one * f.n as u32 + f.one.0;
                }
                (n, Elem(0), Elem(one))
            }
            Structure::Table { .. } => unreachable!("table rings are built by from_tables"),
            Structure::Quotient {
                reps,
                parent,
                coset_of,
            } => (
                reps.len(),
                Elem(coset_of[parent.zero.idx()]),
                Elem(coset_of[parent.one.idx()]),
            ),
        };
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                what: "finite ring",
                size: n,
                limit: MAX_ELEMENTS,
            });
        }
        if n == 1 && !allow_zero {
            return Err(Error::ZeroRing);
        }
        let mut ring = FiniteRing {
            spec,
            n,
            zero,
            one,
            characteristic: 0,
            structure,
            tables: None,
            neg: Vec::new(),
            inv: Vec::new(),
            mask: Vec::new(),
            maximal_ideals: 0,
            unit_count: 0,
            all: Vec::new(),
        };
        if n <= TABLE_LIMIT {
            let mut add = vec![0u16; n * n];
            let mut mul = vec![0u16; n * n];
            for a in 0..n {
                for b in a..n {
                    let s = ring.raw_add(Elem(a as u32), Elem(b as u32)).0 as u16;
                    let p = ring.raw_mul(Elem(a as u32), Elem(b as u32)).0 as u16;
                    add[a * n + b] = s;
                    add[b * n + a] = s;
                    mul[a * n + b] = p;
                    mul[b * n + a] = p;
                }
            }
            ring.tables = Some(Tables { add, mul });
        }
        ring.neg = (0..n as u32).map(|a| ring.raw_neg(Elem(a)).0).collect();
        ring.check_axioms()?;
        ring.finish();
        Ok(ring)
    }

    /// Builds a table ring; tables are indexed `a * n + b`.
    pub(crate) fn from_tables(
        spec: String,
        names: Vec<String>,
        add: Vec<u16>,
        mul: Vec<u16>,
    ) -> Result<Self> {
        let n = names.len();
        let zero = (0..n)
            .find(|&z| (0..n).all(|a| add[z * n + a] as usize == a))
            .ok_or_else(|| Error::TableAxiom {
                law: "additive identity",
                detail: "no element z with z+a=a for all a".into(),
            })?;
        let one = (0..n)
            .find(|&e| (0..n).all(|a| mul[e * n + a] as usize == a))
            .ok_or_else(|| Error::TableAxiom {
                law: "multiplicative identity",
                detail: "no element e with e*a=a for all a".into(),
            })?;
        if n == 1 || zero == one {
            return Err(Error::ZeroRing);
        }
        let mut neg = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n)
                .find(|&b| add[a * n + b] as usize == zero)
                .ok_or_else(|| Error::TableAxiom {
                    law: "additive inverse",
                    detail: format!("`{}` has no negative", names[a]),
                })?;
            neg.push(b as u32);
        }
        let mut ring = FiniteRing {
            spec,
            n,
            zero: Elem(zero as u32),
            one: Elem(one as u32),
            characteristic: 0,
            structure: Structure::Table { names },
            tables: Some(Tables { add, mul }),
            neg,
            inv: Vec::new(),
            mask: Vec::new(),
            maximal_ideals: 0,
            unit_count: 0,
            all: Vec::new(),
        };
        ring.check_table_axioms()?;
        ring.finish();
        Ok(ring)
    }

    fn finish(&mut self) {
        let n = self.n;
        self.all = (0..n as u32).map(Elem).collect();
        let mut c = 1u64;
        let mut x = self.one;
        while x != self.zero {
            x = self.add(x, self.one);
            c += 1;
        }
        self.characteristic = if n == 1 { 1 } else { c };

        let idempotents: Vec<Elem> = self
            .elements()
            .filter(|&e| e != self.zero && self.mul(e, e) == e)
            .collect();
        let primitive: Vec<Elem> = idempotents
            .iter()
            .copied()
            .filter(|&e| idempotents.iter().all(|&f| f == e || self.mul(e, f) != f))
            .collect();
        self.maximal_ideals = primitive.len();
        let squarings = usize::BITS - n.leading_zeros() + 1;
        let is_nilpotent = |r: &FiniteRing, mut x: Elem| {
            for _ in 0..squarings {
                if x == r.zero {
                    return true;
                }
                x = r.mul(x, x);
            }
            x == r.zero
        };
        let mask: Vec<u64> = (0..n as u32)
            .map(|x| {
                let mut m = 0u64;
                for (i, &e) in primitive.iter().enumerate() {
                    if is_nilpotent(self, self.mul(Elem(x), e)) {
                        m |= 1 << i;
                    }
                }
                m
            })
            .collect();
        self.mask = mask;
        self.unit_count = self.mask.iter().filter(|&&m| m == 0).count();

        let mut inv = vec![NO_INVERSE; n];
        if let Some(t) = &self.tables {
            for a in 0..n {
                if self.mask[a] == 0 && inv[a] == NO_INVERSE {
                    let row = &t.mul[a * n..(a + 1) * n];
                    let b = row
                        .iter()
                        .position(|&p| p as u32 == self.one.0)
                        .expect("unit has an inverse");
                    inv[a] = b as u32;
                    inv[b] = a as u32;
                }
            }
        } else {
            let e = (self.unit_count - 1) as u64;
            for (a, slot) in inv.iter_mut().enumerate().take(n) {
                if self.mask[a] == 0 {
                    *slot = self.pow(Elem(a as u32), e).0;
                }
            }
        }
        self.inv = inv;
    }

    fn check_table_axioms(&self) -> Result<()> {
        let n = self.n;
        let name = |a: usize| self.render(Elem(a as u32));
        for a in 0..n {
            for b in 0..n {
                let (ea, eb) = (Elem(a as u32), Elem(b as u32));
                if self.add(ea, eb) != self.add(eb, ea) {
                    return Err(Error::TableAxiom {
                        law: "commutativity of +",
                        detail: format!("{} + {}", name(a), name(b)),
                    });
                }
                if self.mul(ea, eb) != self.mul(eb, ea) {
                    return Err(Error::TableAxiom {
                        law: "commutativity of *",
                        detail: format!("{} * {}", name(a), name(b)),
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (x, y, z) = (Elem(a as u32), Elem(b as u32), Elem(c as u32));
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return Err(Error::TableAxiom {
                            law: "associativity of +",
                            detail: format!("({}, {}, {})", name(a), name(b), name(c)),
                        });
                    }
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return Err(Error::TableAxiom {
                            law: "associativity of *",
                            detail: format!("({}, {}, {})", name(a), name(b), name(c)),
                        });
                    }
                    if self.mul(x, self.add(y, z)) != self.add(self.mul(x, y), self.mul(x, z)) {
                        return Err(Error::TableAxiom {
                            law: "distributivity",
                            detail: format!("({}, {}, {})", name(a), name(b), name(c)),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_triple(&self, x: Elem, y: Elem, z: Elem) -> Result<()> {
        let fail = |law: &'static str| {
            Err(Error::Axiom {
                law,
                detail: format!(
                    "({}, {}, {}) in {}",
                    self.render(x),
                    self.render(y),
                    self.render(z),
                    self.spec
                ),
            })
        };
        if self.add(x, y) != self.add(y, x) {
            return fail("commutativity of +");
        }
        if self.mul(x, y) != self.mul(y, x) {
            return fail("commutativity of *");
        }
        if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
            return fail("associativity of +");
        }
        if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
            return fail("associativity of *");
        }
        if self.mul(x, self.add(y, z)) != self.add(self.mul(x, y), self.mul(x, z)) {
            return fail("distributivity");
        }
        if self.add(x, self.zero) != x || self.mul(x, self.one) != x {
            return fail("identity");
        }
        if self.add(x, self.neg(x)) != self.zero {
            return fail("additive inverse");
        }
        Ok(())
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.n;
        if n <= EXHAUSTIVE_AXIOM_LIMIT {
            for a in 0..n as u32 {
                for b in 0..n as u32 {
                    for c in 0..n as u32 {
                        self.check_triple(Elem(a), Elem(b), Elem(c))?;
                    }
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x0005_eed0_fa11 ^ n as u64);
            for _ in 0..10_000 {
                let x = Elem(rng.gen_range(0..n as u32));
                let y = Elem(rng.gen_range(0..n as u32));
                let z = Elem(rng.gen_range(0..n as u32));
                self.check_triple(x, y, z)?;
            }
        }
        Ok(())
    }

    fn raw_add(&self, a: Elem, b: Elem) -> Elem {
        match &self.structure {
            Structure::Zmod { modulus } => {
                let s = a.0 as u64 + b.0 as u64;
                Elem((s % *modulus as u64) as u32)
            }
            Structure::Ext { base, modulus, .. } => {
                let deg = modulus.len() - 1;
                let (mut x, mut y) = (a.idx(), b.idx());
                let mut out = 0usize;
                let mut place = 1usize;
                for _ in 0..deg {
                    let c = base.add(Elem((x % base.n) as u32), Elem((y % base.n) as u32));
                    out += c.idx() * place;
                    place *= base.n;
                    x /= base.n;
                    y /= base.n;
                }
                Elem(out as u32)
            }
            Structure::Prod { factors } => self.prod_zip(factors, a, b, |f, x, y| f.add(x, y)),
            Structure::Table { .. } => unreachable!(),
            Structure::Quotient {
                parent,
                reps,
                coset_of,
            } => Elem(coset_of[parent.add(reps[a.idx()], reps[b.idx()]).idx()]),
        }
    }

    fn raw_mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.structure {
            Structure::Zmod { modulus } => {
                let s = a.0 as u64 * b.0 as u64;
                Elem((s % *modulus as u64) as u32)
            }
            Structure::Ext { base, modulus, .. } => {
                let x = self.coefficients(a);
                let y = self.coefficients(b);
                let deg = modulus.len() - 1;
                let mut prod = vec![base.zero; 2 * deg - 1];
                for (i, &xi) in x.iter().enumerate() {
                    if xi == base.zero {
                        continue;
                    }
                    for (j, &yj) in y.iter().enumerate() {
                        prod[i + j] = base.add(prod[i + j], base.mul(xi, yj));
                    }
                }
                for top in (deg..prod.len()).rev() {
                    let t = prod[top];
                    if t == base.zero {
                        continue;
                    }
                    for (j, &m) in modulus[..deg].iter().enumerate() {
                        let k = top - deg + j;
                        prod[k] = base.sub(prod[k], base.mul(t, m));
                    }
                    prod[top] = base.zero;
                }
                self.pack_coefficients(&prod[..deg])
            }
            Structure::Prod { factors } => self.prod_zip(factors, a, b, |f, x, y| f.mul(x, y)),
            Structure::Table { .. } => unreachable!(),
            Structure::Quotient {
                parent,
                reps,
                coset_of,
            } => Elem(coset_of[parent.mul(reps[a.idx()], reps[b.idx()]).idx()]),
        }
    }

    fn raw_neg(&self, a: Elem) -> Elem {
        match &self.structure {
            Structure::Zmod { modulus } => Elem((*modulus - a.0) % *modulus),
            Structure::Ext { base, .. } => {
                let c: Vec<Elem> = self.coefficients(a).iter().map(|&x| base.neg(x)).collect();
                self.pack_coefficients(&c)
            }
            Structure::Prod { factors } => {
                let parts = self.components(a);
                let negs: Vec<Elem> = parts.iter().zip(factors).map(|(&x, f)| f.neg(x)).collect();
                self.from_components(&negs)
            }
            Structure::Table { .. } => unreachable!(),
            Structure::Quotient {
                parent,
                reps,
                coset_of,
            } => Elem(coset_of[parent.neg(reps[a.idx()]).idx()]),
        }
    }

    fn prod_zip(
        &self,
        factors: &[Arc<FiniteRing>],
        a: Elem,
        b: Elem,
        op: impl Fn(&FiniteRing, Elem, Elem) -> Elem,
    ) -> Elem {
        let (mut x, mut y) = (a.idx(), b.idx());
        let mut out = 0usize;
        let mut place = 1usize;
        for f in factors.iter().rev() {
            let c = op(f, Elem((x % f.n) as u32), Elem((y % f.n) as u32));
            out += c.idx() * place;
            place *= f.n;
            x /= f.n;
            y /= f.n;
        }
        Elem(out as u32)
    }

    /// Coefficients (low degree first) of an element of a polynomial quotient.
    pub fn coefficients(&self, a: Elem) -> Vec<Elem> {
        match &self.structure {
            Structure::Ext { base, modulus, .. } => {
                let mut x = a.idx();
                (0..modulus.len() - 1)
                    .map(|_| {
                        let c = Elem((x % base.n) as u32);
                        x /= base.n;
                        c
                    })
                    .collect()
            }
            _ => vec![a],
        }
    }

    fn pack_coefficients(&self, c: &[Elem]) -> Elem {
        match &self.structure {
            Structure::Ext { base, .. } => {
                let mut out = 0usize;
                for &x in c.iter().rev() {
                    out = out * base.n + x.idx();
                }
                Elem(out as u32)
            }
            _ => c[0],
        }
    }

    /// Components of an element of a product ring (a single component otherwise).
    pub fn components(&self, a: Elem) -> Vec<Elem> {
        match &self.structure {
            Structure::Prod { factors } => {
                let mut x = a.idx();
                let mut out: Vec<Elem> = factors
                    .iter()
                    .rev()
                    .map(|f| {
                        let c = Elem((x % f.n) as u32);
                        x /= f.n;
                        c
                    })
                    .collect();
                out.reverse();
                out
            }
            _ => vec![a],
        }
    }

    /// Inverse of [`FiniteRing::components`] for product rings.
    pub fn from_components(&self, parts: &[Elem]) -> Elem {
        match &self.structure {
            Structure::Prod { factors } => {
                let mut out = 0usize;
                for (f, x) in factors.iter().zip(parts) {
                    out = out * f.n + x.idx();
                }
                Elem(out as u32)
            }
            _ => parts[0],
        }
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.n as u32).map(Elem)
    }

    /// All elements, in index order.
    pub fn all(&self) -> &[Elem] {
        &self.all
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.add[a.idx() * self.n + b.idx()] as u32),
            None => self.raw_add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.mul[a.idx() * self.n + b.idx()] as u32),
            None => self.raw_mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.idx()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The image of the integer `k` under ℤ → R.
    pub fn from_int(&self, k: i64) -> Elem {
        let c = self.characteristic as i64;
        let r = k.rem_euclid(c) as u64;
        let mut acc = self.zero;
        let mut step = self.one;
        let mut e = r;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(acc, step);
            }
            step = self.add(step, step);
            e >>= 1;
        }
        acc
    }

    /// Bit mask of the maximal ideals containing `a`.
    #[inline]
    pub fn mask(&self, a: Elem) -> u64 {
        self.mask[a.idx()]
    }

    pub fn maximal_ideal_count(&self) -> usize {
        self.maximal_ideals
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        self.mask[a.idx()] == 0
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        match self.inv[a.idx()] {
            NO_INVERSE => None,
            b => Some(Elem(b)),
        }
    }

    pub fn unit_count(&self) -> usize {
        self.unit_count
    }

    /// Whether the entries generate the unit ideal.
    #[inline]
    pub fn is_unimodular(&self, v: &[Elem]) -> bool {
        v.iter().fold(u64::MAX, |m, &x| m & self.mask[x.idx()]) == 0
    }

    #[inline]
    pub fn is_unimodular2(&self, a: Elem, b: Elem) -> bool {
        self.mask[a.idx()] & self.mask[b.idx()] == 0
    }

    /// Whether `a` divides `b`.
    pub fn divides(&self, a: Elem, b: Elem) -> bool {
        self.quotient_of(b, a).is_some()
    }

    /// Some `q` with `q·a = b`.
    pub fn quotient_of(&self, b: Elem, a: Elem) -> Option<Elem> {
        if let Some(ai) = self.inverse(a) {
            return Some(self.mul(ai, b));
        }
        self.elements().find(|&q| self.mul(q, a) == b)
    }

    /// Coefficients `c` with `Σ cᵢ·vᵢ = 1`, or `None` when `v` is not unimodular.
    pub fn unimodular_coefficients(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        if v.is_empty() || !self.is_unimodular(v) {
            return None;
        }
        if let Structure::Zmod { modulus } = self.structure {
            return Some(zmod_coefficients(modulus as i64, v));
        }
        if let Some(i) = v.iter().position(|&x| self.is_unit(x)) {
            let mut c = vec![self.zero; v.len()];
            c[i] = self.inverse(v[i]).unwrap();
            return Some(c);
        }
        // Grow the ideal v₁R + … + v_kR and remember one way to reach every member.
        let n = self.n;
        let unset = u32::MAX;
        let mut steps: Vec<Vec<u32>> = Vec::with_capacity(v.len());
        let mut members = vec![self.zero];
        for &g in v {
            let mut prev = vec![unset; n];
            let mut coef = vec![unset; n];
            let multiples: Vec<(Elem, Elem)> = {
                let mut seen = vec![false; n];
                let mut out = Vec::new();
                for r in self.elements() {
                    let m = self.mul(r, g);
                    if !seen[m.idx()] {
                        seen[m.idx()] = true;
                        out.push((m, r));
                    }
                }
                out
            };
            let mut next = Vec::new();
            for &x in &members {
                for &(m, r) in &multiples {
                    let y = self.add(x, m);
                    if prev[y.idx()] == unset {
                        prev[y.idx()] = x.0;
                        coef[y.idx()] = r.0;
                        next.push(y);
                    }
                }
            }
            members = next;
            steps.push(prev);
            steps.push(coef);
        }
        let mut out = vec![self.zero; v.len()];
        let mut cur = self.one;
        for k in (0..v.len()).rev() {
            let prev = &steps[2 * k];
            let coef = &steps[2 * k + 1];
            out[k] = Elem(coef[cur.idx()]);
            cur = Elem(prev[cur.idx()]);
        }
        debug_assert_eq!(cur, self.zero);
        Some(out)
    }

    /// The set `Ra` as a sorted list.
    pub fn principal_ideal(&self, a: Elem) -> Vec<Elem> {
        let mut seen = vec![false; self.n];
        for r in self.elements() {
            seen[self.mul(r, a).idx()] = true;
        }
        (0..self.n as u32)
            .filter(|&i| seen[i as usize])
            .map(Elem)
            .collect()
    }

    /// Names of table-ring elements, if this is a table ring.
    pub fn table_names(&self) -> Option<&[String]> {
        match &self.structure {
            Structure::Table { names } => Some(names),
            _ => None,
        }
    }

    /// Whether the additive order of 1 is 2.
    pub fn is_char2(&self) -> bool {
        self.characteristic == 2
    }
}

fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    let mut n = 1usize;
    for _ in 0..exp {
        n = n
            .checked_mul(base)
            .filter(|&m| m <= MAX_ELEMENTS)
            .ok_or(Error::TooLarge {
                what: "finite ring",
                size: usize::MAX,
                limit: MAX_ELEMENTS,
            })?;
    }
    Ok(n)
}

/// Bézout coefficients in ℤ/m for a unimodular vector, by running extended gcd
/// over representatives.
fn zmod_coefficients(m: i64, v: &[Elem]) -> Vec<Elem> {
    // gcd(v₁, …, v_k, m) = 1; fold the extended gcd left to right.
    let mut g = m;
    let mut coeffs: Vec<i64> = vec![0; v.len()];
    // invariant: g = Σ coeffs[i]·v[i] + t·m for some t (t is irrelevant mod m)
    for (i, &x) in v.iter().enumerate() {
        let (d, s, t) = ext_gcd_i64(g, x.0 as i64);
        for c in coeffs.iter_mut().take(i) {
            *c = (*c as i128 * s as i128).rem_euclid(m as i128) as i64;
        }
        coeffs[i] = t.rem_euclid(m);
        g = d;
    }
    debug_assert_eq!(g, 1);
    coeffs.into_iter().map(|c| Elem(c as u32)).collect()
}

pub(crate) fn ext_gcd_i64(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Arc<FiniteRing> {
        make_finite_ring(s).unwrap()
    }

    #[test]
    fn sizes_and_characteristics() {
        let r = ring("Zmod:6");
        assert_eq!((r.size(), r.characteristic()), (6, 6));
        let r = ring("GF:4");
        assert_eq!((r.size(), r.characteristic()), (4, 2));
        let r = ring("Quot:GF:2[x]/(x^2)");
        assert_eq!((r.size(), r.characteristic()), (4, 2));
        let x = r.parse_elem("x").unwrap();
        assert_ne!(x, r.zero());
        assert_eq!(r.mul(x, x), r.zero());
    }

    #[test]
    fn unit_masks_match_inverse_scan() {
        for s in [
            "Zmod:12",
            "GF:9",
            "Quot:GF:3[x]/(x^2)",
            "Prod:Zmod:4*GF:3",
            "Table:builtin:f2xy",
        ] {
            let r = ring(s);
            for a in r.elements() {
                let scan = r.elements().any(|b| r.mul(a, b) == r.one());
                assert_eq!(r.is_unit(a), scan, "{s} {}", r.render(a));
                if let Some(b) = r.inverse(a) {
                    assert_eq!(r.mul(a, b), r.one());
                }
            }
        }
    }

    #[test]
    fn unimodular_coefficients_solve_the_equation() {
        for s in [
            "Zmod:12",
            "Prod:Zmod:4*Zmod:6",
            "Table:builtin:f2xy",
            "Quot:Zmod:4[x]/(x^2+1)",
        ] {
            let r = ring(s);
            for a in r.elements() {
                for b in r.elements() {
                    let v = [a, b];
                    let ideal_has_one = r.elements().any(|x| {
                        r.elements()
                            .any(|y| r.add(r.mul(x, a), r.mul(y, b)) == r.one())
                    });
                    assert_eq!(r.is_unimodular(&v), ideal_has_one);
                    if let Some(c) = r.unimodular_coefficients(&v) {
                        assert_eq!(r.add(r.mul(c[0], a), r.mul(c[1], b)), r.one());
                    }
                }
            }
        }
    }

    #[test]
    fn large_structural_ring_has_no_tables_but_agrees() {
        let r = ring("GF:2^11");
        assert_eq!(r.size(), 2048);
        assert!(r.tables.is_none());
        assert_eq!(r.unit_count(), 2047);
        let g = r.parse_elem("g").unwrap();
        assert_eq!(r.mul(g, r.inverse(g).unwrap()), r.one());
        let big = ring("Zmod:4096");
        assert_eq!(big.unit_count(), 2048);
    }

    #[test]
    fn from_int_respects_characteristic() {
        let r = ring("Zmod:6");
        assert_eq!(r.from_int(-1), Elem(5));
        assert_eq!(r.from_int(13), Elem(1));
    }
}

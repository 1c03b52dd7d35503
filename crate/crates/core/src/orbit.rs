//! Equivalence classes of 2×2 matrices (and of 1×2 rows) under `A ↦ M·A·N`.
//!
//! Over a finite ring `SL₂` is generated by elementary matrices, so `GL₂` is
//! generated by `E₁₂(g)`, `E₂₁(g)` for additive generators `g` together with
//! `diag(u, 1)` for generators `u` of the unit group.  Orbits are found by
//! breadth-first search over these moves on both sides.

use crate::error::{Error, Result};
use crate::mat::{identity, mul, Mat};
use crate::ring::{Elem, FiniteRing};
use std::collections::{HashMap, VecDeque};

/// Default cap on `|R|⁴` for a full partition of `M₂(R)`.
pub const PARTITION_LIMIT: u64 = 1 << 25;

/// A one-sided generator of `GL₂(R)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    /// `[[1, g], [0, 1]]`
    Upper(Elem),
    /// `[[1, 0], [g, 1]]`
    Lower(Elem),
    /// `[[u, 0], [0, 1]]`
    Scale(Elem),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Left(Gen),
    Right(Gen),
}

impl Gen {
    pub fn matrix(self, r: &FiniteRing) -> Mat<Elem> {
        let (o, z) = (r.one(), r.zero());
        match self {
            Gen::Upper(g) => Mat::m2(o, g, z, o),
            Gen::Lower(g) => Mat::m2(o, z, g, o),
            Gen::Scale(u) => Mat::m2(u, z, z, o),
        }
    }
}

/// Greedy generating set of `(R, +)`.
pub fn additive_generators(r: &FiniteRing) -> Vec<Elem> {
    let mut span = vec![false; r.size()];
    span[r.zero().idx()] = true;
    let mut members = vec![r.zero()];
    let mut gens = Vec::new();
    for x in r.elements() {
        if span[x.idx()] {
            continue;
        }
        gens.push(x);
        let mut k = 0;
        while k < members.len() {
            let y = r.add(members[k], x);
            if !span[y.idx()] {
                span[y.idx()] = true;
                members.push(y);
            }
            k += 1;
        }
    }
    gens
}

/// Greedy generating set of the unit group.
pub fn unit_generators(r: &FiniteRing) -> Vec<Elem> {
    let mut span = vec![false; r.size()];
    span[r.one().idx()] = true;
    let mut members = vec![r.one()];
    let mut gens = Vec::new();
    for x in r.elements().filter(|&x| r.is_unit(x)) {
        if span[x.idx()] {
            continue;
        }
        gens.push(x);
        let mut k = 0;
        while k < members.len() {
            let y = r.mul(members[k], x);
            if !span[y.idx()] {
                span[y.idx()] = true;
                members.push(y);
            }
            k += 1;
        }
    }
    gens
}

/// All generator moves on both sides.
pub fn moves(r: &FiniteRing) -> Vec<Move> {
    moves_with(r, true)
}

/// Generator moves, without the unit scalings when `scaling` is false (so that
/// they generate `SL₂ × SL₂`).
pub fn moves_with(r: &FiniteRing, scaling: bool) -> Vec<Move> {
    let add = additive_generators(r);
    let units = if scaling {
        unit_generators(r)
    } else {
        Vec::new()
    };
    let one_side: Vec<Gen> = add
        .iter()
        .map(|&g| Gen::Upper(g))
        .chain(add.iter().map(|&g| Gen::Lower(g)))
        .chain(units.iter().map(|&u| Gen::Scale(u)))
        .collect();
    one_side
        .iter()
        .map(|&g| Move::Left(g))
        .chain(one_side.iter().map(|&g| Move::Right(g)))
        .collect()
}

/// Applies a move to `[a, b, c, d] = [[a, b], [c, d]]`.
#[inline]
pub fn apply(r: &FiniteRing, m: [Elem; 4], mv: Move) -> [Elem; 4] {
    let [a, b, c, d] = m;
    match mv {
        Move::Left(Gen::Upper(g)) => [r.add(a, r.mul(g, c)), r.add(b, r.mul(g, d)), c, d],
        Move::Left(Gen::Lower(g)) => [a, b, r.add(c, r.mul(g, a)), r.add(d, r.mul(g, b))],
        Move::Left(Gen::Scale(u)) => [r.mul(u, a), r.mul(u, b), c, d],
        Move::Right(Gen::Upper(g)) => [a, r.add(b, r.mul(a, g)), c, r.add(d, r.mul(c, g))],
        Move::Right(Gen::Lower(g)) => [r.add(a, r.mul(b, g)), b, r.add(c, r.mul(d, g)), d],
        Move::Right(Gen::Scale(u)) => [r.mul(a, u), b, r.mul(c, u), d],
    }
}

#[inline]
pub fn encode(n: usize, m: [Elem; 4]) -> usize {
    ((m[0].idx() * n + m[1].idx()) * n + m[2].idx()) * n + m[3].idx()
}

#[inline]
pub fn decode(n: usize, mut code: usize) -> [Elem; 4] {
    let mut out = [Elem(0); 4];
    for k in (0..4).rev() {
        out[k] = Elem((code % n) as u32);
        code /= n;
    }
    out
}

fn check_size(r: &FiniteRing, budget: u64) -> Result<usize> {
    let n = r.size() as u64;
    let total = n.checked_pow(4).unwrap_or(u64::MAX);
    if total > budget.min(u32::MAX as u64) {
        return Err(Error::TooLarge {
            what: "2×2 matrix space",
            size: total as usize,
            limit: budget as usize,
        });
    }
    Ok(total as usize)
}

/// The partition of `M₂(R)` into equivalence classes.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub n: usize,
    /// Class index of every matrix code.
    pub label: Vec<u32>,
    /// Least matrix (in code order) of each class.
    pub reps: Vec<[Elem; 4]>,
    pub sizes: Vec<u32>,
}

impl OrbitPartition {
    pub fn build(r: &FiniteRing, budget: u64) -> Result<Self> {
        Self::build_with(r, budget, true)
    }

    /// Classes under `SL₂ × SL₂` instead of `GL₂ × GL₂`.
    pub fn build_special(r: &FiniteRing, budget: u64) -> Result<Self> {
        Self::build_with(r, budget, false)
    }

    fn build_with(r: &FiniteRing, budget: u64, scaling: bool) -> Result<Self> {
        let total = check_size(r, budget)?;
        let n = r.size();
        let mv = moves_with(r, scaling);
        let mut label = vec![u32::MAX; total];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut queue = Vec::new();
        for start in 0..total {
            if label[start] != u32::MAX {
                continue;
            }
            let cls = reps.len() as u32;
            reps.push(decode(n, start));
            label[start] = cls;
            queue.clear();
            queue.push(start);
            let mut head = 0;
            while head < queue.len() {
                let m = decode(n, queue[head]);
                head += 1;
                for &x in &mv {
                    let c = encode(n, apply(r, m, x));
                    if label[c] == u32::MAX {
                        label[c] = cls;
                        queue.push(c);
                    }
                }
            }
            sizes.push(queue.len() as u32);
        }
        Ok(OrbitPartition {
            n,
            label,
            reps,
            sizes,
        })
    }

    pub fn class_of(&self, m: [Elem; 4]) -> u32 {
        self.label[encode(self.n, m)]
    }

    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    /// Members of class `cls` in code order.
    pub fn members(&self, cls: u32) -> impl Iterator<Item = [Elem; 4]> + '_ {
        self.label
            .iter()
            .enumerate()
            .filter(move |(_, &l)| l == cls)
            .map(|(c, _)| decode(self.n, c))
    }
}

/// `(M, N)` with `M·A·N = B`, from a breadth-first search out of `A`.
pub fn equivalence_witness(
    r: &FiniteRing,
    a: [Elem; 4],
    b: [Elem; 4],
    budget: u64,
) -> Result<Option<(Mat<Elem>, Mat<Elem>)>> {
    let n = r.size();
    let mv = moves(r);
    let start = encode(n, a);
    let goal = encode(n, b);
    let mut parent: HashMap<usize, (usize, u16)> = HashMap::new();
    parent.insert(start, (start, u16::MAX));
    let mut queue = VecDeque::from([start]);
    let mut found = start == goal;
    while !found {
        let Some(c) = queue.pop_front() else { break };
        let m = decode(n, c);
        for (k, &x) in mv.iter().enumerate() {
            let d = encode(n, apply(r, m, x));
            if let std::collections::hash_map::Entry::Vacant(v) = parent.entry(d) {
                v.insert((c, k as u16));
                if d == goal {
                    found = true;
                    break;
                }
                queue.push_back(d);
            }
        }
        if parent.len() as u64 > budget {
            return Err(Error::Budget(budget));
        }
    }
    if !found {
        return Ok(None);
    }
    let mut left = identity(r, 2);
    let mut right = identity(r, 2);
    let mut c = goal;
    while c != start {
        let (p, k) = parent[&c];
        match mv[k as usize] {
            Move::Left(g) => left = mul(r, &left, &g.matrix(r))?,
            Move::Right(g) => right = mul(r, &g.matrix(r), &right)?,
        }
        c = p;
    }
    Ok(Some((left, right)))
}

/// Classes of 1×2 rows `(a, b)` under `(a, b) ↦ u·(a, b)·N`, `u ∈ U(R)`, `N ∈ GL₂(R)`.
#[derive(Clone, Debug)]
pub struct RowPartition {
    pub n: usize,
    pub label: Vec<u32>,
    pub reps: Vec<[Elem; 2]>,
}

impl RowPartition {
    pub fn build(r: &FiniteRing) -> Self {
        let n = r.size();
        let add = additive_generators(r);
        let units = unit_generators(r);
        let mut label = vec![u32::MAX; n * n];
        let mut reps = Vec::new();
        let step = |v: [Elem; 2]| {
            let [a, b] = v;
            let mut out = Vec::new();
            for &g in &add {
                out.push([a, r.add(b, r.mul(a, g))]);
                out.push([r.add(a, r.mul(b, g)), b]);
            }
            for &u in &units {
                out.push([r.mul(a, u), b]);
                out.push([r.mul(a, u), r.mul(b, u)]);
            }
            out
        };
        for start in 0..n * n {
            if label[start] != u32::MAX {
                continue;
            }
            let cls = reps.len() as u32;
            reps.push([Elem((start / n) as u32), Elem((start % n) as u32)]);
            label[start] = cls;
            let mut queue = vec![start];
            let mut head = 0;
            while head < queue.len() {
                let c = queue[head];
                head += 1;
                for [x, y] in step([Elem((c / n) as u32), Elem((c % n) as u32)]) {
                    let d = x.idx() * n + y.idx();
                    if label[d] == u32::MAX {
                        label[d] = cls;
                        queue.push(d);
                    }
                }
            }
        }
        RowPartition { n, label, reps }
    }

    pub fn class_of(&self, v: [Elem; 2]) -> u32 {
        self.label[v[0].idx() * self.n + v[1].idx()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::enumerate_gl;
    use crate::ring::make_finite_ring;

    fn sandwich(r: &FiniteRing, m: &Mat<Elem>, a: [Elem; 4], n: &Mat<Elem>) -> [Elem; 4] {
        let a = Mat::m2(a[0], a[1], a[2], a[3]);
        mul(r, &mul(r, m, &a).unwrap(), n).unwrap().as_m2().unwrap()
    }

    #[test]
    fn generators_span() {
        let r = make_finite_ring("Prod:Zmod:4*Zmod:2").unwrap();
        assert_eq!(additive_generators(&r).len(), 2);
        let r = make_finite_ring("Zmod:15").unwrap();
        let g = unit_generators(&r);
        assert!(g.len() >= 2);
    }

    #[test]
    fn moves_match_matrix_products() {
        let r = make_finite_ring("Zmod:6").unwrap();
        let a = [Elem(2), Elem(5), Elem(3), Elem(4)];
        let am = Mat::m2(a[0], a[1], a[2], a[3]);
        for mv in moves(&r) {
            let expect = match mv {
                Move::Left(g) => mul(r.as_ref(), &g.matrix(&r), &am),
                Move::Right(g) => mul(r.as_ref(), &am, &g.matrix(&r)),
            }
            .unwrap();
            assert_eq!(apply(&r, a, mv), expect.as_m2().unwrap());
        }
    }

    /// Classes found by search agree with classes from scanning all of GL₂ × GL₂.
    #[test]
    fn partition_matches_group_scan() {
        for s in ["Zmod:4", "Zmod:6", "GF:4", "Table:builtin:f2xy"] {
            let r = make_finite_ring(s).unwrap();
            let p = OrbitPartition::build(&r, PARTITION_LIMIT).unwrap();
            let gl = enumerate_gl(&r, 2, 1 << 20).unwrap();
            for (cls, rep) in p.reps.iter().enumerate().take(12) {
                let mut orbit = std::collections::HashSet::new();
                for m in &gl.matrices {
                    for n in &gl.matrices {
                        orbit.insert(encode(p.n, sandwich(&r, m, *rep, n)));
                    }
                }
                assert_eq!(orbit.len() as u32, p.sizes[cls], "{s}");
                assert!(orbit.iter().all(|&c| p.label[c] == cls as u32));
            }
        }
    }

    #[test]
    fn witnesses_compose() {
        let r = make_finite_ring("Zmod:9").unwrap();
        let a = [Elem(3), Elem(0), Elem(0), Elem(0)];
        let b = [Elem(6), Elem(0), Elem(0), Elem(0)];
        let (m, n) = equivalence_witness(&r, a, b, 1 << 20).unwrap().unwrap();
        assert_eq!(sandwich(&r, &m, a, &n), b);
        let (m2, n2) = equivalence_witness(&r, b, a, 1 << 20).unwrap().unwrap();
        assert_eq!(sandwich(&r, &m2, b, &n2), a);
        let c = [Elem(0), Elem(3), Elem(0), Elem(0)];
        let (m3, n3) = equivalence_witness(&r, b, c, 1 << 20).unwrap().unwrap();
        let mm = mul(r.as_ref(), &m3, &m).unwrap();
        let nn = mul(r.as_ref(), &n, &n3).unwrap();
        assert_eq!(sandwich(&r, &mm, a, &nn), c);
        let id = [Elem(1), Elem(0), Elem(0), Elem(0)];
        let zero = [Elem(0); 4];
        assert!(equivalence_witness(&r, id, zero, 1 << 20)
            .unwrap()
            .is_none());
        let (m, n) = equivalence_witness(&r, a, a, 10).unwrap().unwrap();
        assert_eq!((m, n), (identity(r.as_ref(), 2), identity(r.as_ref(), 2)));
    }

    #[test]
    fn row_classes() {
        let r = make_finite_ring("Zmod:12").unwrap();
        let p = RowPartition::build(&r);
        // Over ℤ/12 each row (a, b) is equivalent to (gcd-class, 0): one class per ideal.
        assert_eq!(p.reps.len(), 6);
        assert_eq!(
            p.class_of([Elem(4), Elem(6)]),
            p.class_of([Elem(2), Elem(0)])
        );
    }
}

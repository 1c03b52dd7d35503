//! Ideals, unit groups, radicals and quotient rings of finite rings.

use super::{Elem, FiniteRing, Structure};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Ideals are materialized only up to this ring size.
pub const IDEAL_LIMIT: usize = 1 << 16;

/// A materialized ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub generators: Vec<Elem>,
    /// Sorted, duplicate-free members.
    pub elements: Vec<Elem>,
}

impl Ideal {
    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Membership indicator indexed by element.
    pub fn indicator(&self, n: usize) -> Vec<bool> {
        let mut v = vec![false; n];
        for x in &self.elements {
            v[x.idx()] = true;
        }
        v
    }
}

/// The group of units with inverses.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    pub elements: Vec<Elem>,
    pub inverses: Vec<Elem>,
}

impl UnitGroup {
    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn sorted_set(n: usize, it: impl Iterator<Item = Elem>) -> Vec<Elem> {
    let mut seen = vec![false; n];
    for x in it {
        seen[x.idx()] = true;
    }
    (0..n as u32)
        .filter(|&i| seen[i as usize])
        .map(Elem)
        .collect()
}

impl FiniteRing {
    fn require_materializable(&self) -> Result<()> {
        if self.size() > IDEAL_LIMIT {
            return Err(Error::TooLarge {
                what: "ideal materialization",
                size: self.size(),
                limit: IDEAL_LIMIT,
            });
        }
        Ok(())
    }

    pub fn units(&self) -> UnitGroup {
        let elements: Vec<Elem> = self.elements().filter(|&x| self.is_unit(x)).collect();
        let inverses = elements
            .iter()
            .map(|&x| self.inverse(x).expect("unit"))
            .collect();
        UnitGroup { elements, inverses }
    }

    /// The ideal generated by `gens`.
    pub fn ideal(&self, gens: &[Elem]) -> Result<Ideal> {
        self.require_materializable()?;
        let n = self.size();
        let mut members = vec![self.zero()];
        let mut seen = vec![false; n];
        seen[self.zero().idx()] = true;
        for &g in gens {
            let multiples = self.principal_ideal(g);
            let mut next = members.clone();
            for &x in &members {
                for &m in &multiples {
                    let y = self.add(x, m);
                    if !seen[y.idx()] {
                        seen[y.idx()] = true;
                        next.push(y);
                    }
                }
            }
            members = next;
        }
        members.sort();
        Ok(Ideal {
            generators: gens.to_vec(),
            elements: members,
        })
    }

    pub fn annihilator(&self, a: Elem) -> Result<Ideal> {
        self.require_materializable()?;
        let elements = self
            .elements()
            .filter(|&x| self.mul(a, x) == self.zero())
            .collect();
        Ok(Ideal {
            generators: Vec::new(),
            elements,
        })
    }

    /// Whether `xᵏ = 0` for some `k ≤ |R|`.
    pub fn is_nilpotent(&self, x: Elem) -> bool {
        let mut y = x;
        for _ in 0..self.size() {
            if y == self.zero() {
                return true;
            }
            y = self.mul(y, x);
        }
        y == self.zero()
    }

    pub fn nilradical(&self) -> Result<Ideal> {
        self.require_materializable()?;
        let elements = self.elements().filter(|&x| self.is_nilpotent(x)).collect();
        Ok(Ideal {
            generators: Vec::new(),
            elements,
        })
    }

    /// `{x : 1 − xy is a unit for all y}`; evaluated pairwise for rings up to 4096
    /// elements and through the maximal-ideal masks above that.
    pub fn jacobson(&self) -> Result<Ideal> {
        self.require_materializable()?;
        let elements = if self.size() <= 4096 {
            self.elements()
                .filter(|&x| {
                    self.elements()
                        .all(|y| self.is_unit(self.sub(self.one(), self.mul(x, y))))
                })
                .collect()
        } else {
            let all = (1u64 << self.maximal_ideal_count()) - 1;
            self.elements().filter(|&x| self.mask(x) == all).collect()
        };
        Ok(Ideal {
            generators: Vec::new(),
            elements,
        })
    }

    /// Elements `x` with `xy = 0` for some `y ≠ 0`; includes 0.
    pub fn zero_divisors(&self) -> Vec<Elem> {
        let n = self.size();
        sorted_set(
            n,
            self.elements().filter(|&x| {
                self.elements()
                    .any(|y| y != self.zero() && self.mul(x, y) == self.zero())
            }),
        )
    }

    pub fn is_reduced(&self) -> bool {
        self.elements()
            .all(|x| x == self.zero() || !self.is_nilpotent(x))
    }
}

/// A quotient ring together with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ring: Arc<FiniteRing>,
    /// `projection[x]` is the class of `x`.
    pub projection: Vec<Elem>,
}

impl Quotient {
    pub fn project(&self, x: Elem) -> Elem {
        self.projection[x.idx()]
    }
}

/// `R/I`; the zero ring is allowed here because quotients by unit ideals occur.
pub fn quotient_by_ideal(r: &Arc<FiniteRing>, ideal: &Ideal) -> Result<Quotient> {
    let n = r.size();
    let unset = u32::MAX;
    let mut coset_of = vec![unset; n];
    let mut reps = Vec::new();
    for x in r.elements() {
        if coset_of[x.idx()] != unset {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &i in &ideal.elements {
            coset_of[r.add(x, i).idx()] = id;
        }
    }
    let gens = if ideal.generators.is_empty() {
        format!("{} elements", ideal.len())
    } else {
        r.render_all(&ideal.generators).join(",")
    };
    let spec = format!("{}/({})", r.spec(), gens);
    let projection = coset_of.iter().map(|&c| Elem(c)).collect();
    let ring = FiniteRing::build(
        spec,
        Structure::Quotient {
            parent: Arc::clone(r),
            reps,
            coset_of,
        },
        true,
    )?;
    Ok(Quotient {
        ring: Arc::new(ring),
        projection,
    })
}

/// `R/Ra`.
pub fn quotient(r: &Arc<FiniteRing>, a: Elem) -> Result<Quotient> {
    let ideal = r.ideal(&[a])?;
    quotient_by_ideal(r, &ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_finite_ring;

    fn names(r: &FiniteRing, v: &[Elem]) -> Vec<String> {
        r.render_all(v)
    }

    #[test]
    fn unit_groups() {
        let r = make_finite_ring("Zmod:6").unwrap();
        assert_eq!(names(&r, &r.units().elements), ["1", "5"]);
        let f = make_finite_ring("GF:4").unwrap();
        assert_eq!(f.units().len(), 3);
        let d = make_finite_ring("Quot:GF:2[x]/(x^2)").unwrap();
        let mut u = names(&d, &d.units().elements);
        u.sort();
        assert_eq!(u, ["1", "x+1"]);
    }

    #[test]
    fn annihilators_and_radicals() {
        let r = make_finite_ring("Zmod:6").unwrap();
        assert_eq!(
            names(&r, &r.annihilator(Elem(2)).unwrap().elements),
            ["0", "3"]
        );
        assert_eq!(names(&r, &r.annihilator(Elem(1)).unwrap().elements), ["0"]);
        assert_eq!(names(&r, &r.zero_divisors()), ["0", "2", "3", "4"]);
        let d = make_finite_ring("Quot:GF:2[x]/(x^2)").unwrap();
        let x = d.parse_elem("x").unwrap();
        let mut ann = names(&d, &d.annihilator(x).unwrap().elements);
        ann.sort();
        assert_eq!(ann, ["0", "x"]);
        let z12 = make_finite_ring("Zmod:12").unwrap();
        assert_eq!(names(&z12, &z12.nilradical().unwrap().elements), ["0", "6"]);
        let f = make_finite_ring("GF:4").unwrap();
        assert_eq!(f.jacobson().unwrap().elements, vec![f.zero()]);
    }

    #[test]
    fn quotients() {
        let r = make_finite_ring("Zmod:6").unwrap();
        let q = quotient(&r, Elem(2)).unwrap();
        assert_eq!(q.ring.size(), 2);
        let q0 = quotient(&r, Elem(0)).unwrap();
        assert_eq!(q0.ring.size(), 6);
        let d = make_finite_ring("Quot:GF:2[x]/(x^2)").unwrap();
        let x = d.parse_elem("x").unwrap();
        let q = quotient(&d, x).unwrap();
        assert_eq!(q.ring.size(), 2);
        assert_eq!(q.ring.unit_count(), 1);
        let trivial = quotient(&r, Elem(5)).unwrap();
        assert_eq!(trivial.ring.size(), 1);
        assert!(trivial.ring.is_unit(trivial.ring.zero()));
    }

    #[test]
    fn projection_is_a_homomorphism() {
        for s in ["Zmod:12", "Prod:Zmod:4*GF:3", "Table:builtin:f2xy"] {
            let r = make_finite_ring(s).unwrap();
            for a in r.elements() {
                let q = quotient(&r, a).unwrap();
                assert_eq!(r.size(), r.principal_ideal(a).len() * q.ring.size());
                assert_eq!(q.project(r.one()), q.ring.one());
                for x in r.elements() {
                    for y in r.elements() {
                        assert_eq!(
                            q.project(r.add(x, y)),
                            q.ring.add(q.project(x), q.project(y))
                        );
                        assert_eq!(
                            q.project(r.mul(x, y)),
                            q.ring.mul(q.project(x), q.project(y))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn radical_inclusions() {
        for s in [
            "Zmod:24",
            "Quot:GF:3[x]/(x^3)",
            "Prod:Zmod:8*GF:2",
            "Table:builtin:f2xy",
        ] {
            let r = make_finite_ring(s).unwrap();
            let nil = r.nilradical().unwrap();
            let jac = r.jacobson().unwrap();
            assert!(nil.elements.iter().all(|&x| jac.contains(x)));
            let all = (1u64 << r.maximal_ideal_count()) - 1;
            for x in r.elements() {
                assert_eq!(jac.contains(x), r.mask(x) == all, "{s}");
            }
        }
    }
}

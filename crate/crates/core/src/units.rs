//! The product map `υ_{a,b,c}: U(R/Rac) × U(R/Rbc) → U(R/Rc)`, the U₂ test, the
//! Boolean-cokernel test and the factorization statements of Hermite rings.
//!
//! Residue classes are handled inside `R`: the class of `x` modulo `Rc` is named by
//! the least element of `x + Rc`, and `x` is a unit modulo `Rc` iff `(x, c)` is
//! unimodular.

use crate::error::{Error, Result};
use crate::lift::non_full;
use crate::ring::{Elem, FiniteRing};
use serde::Serialize;
use std::collections::HashMap;

/// Canonical representatives modulo a principal ideal.
#[derive(Clone, Debug)]
pub struct Residues {
    pub modulus: Elem,
    /// `rep[x]` is the least element of `x + R·modulus`.
    pub rep: Vec<Elem>,
}

impl Residues {
    pub fn new(r: &FiniteRing, c: Elem) -> Self {
        let ideal = r.principal_ideal(c);
        let mut rep = vec![Elem(u32::MAX); r.size()];
        for x in r.elements() {
            if rep[x.idx()].0 != u32::MAX {
                continue;
            }
            // Elements are visited in increasing order, so `x` is the least of its class.
            for &i in &ideal {
                rep[r.add(x, i).idx()] = x;
            }
        }
        Residues { modulus: c, rep }
    }

    pub fn of(&self, x: Elem) -> Elem {
        self.rep[x.idx()]
    }

    /// Sorted representatives of `U(R/R·modulus)`.
    pub fn units(&self, r: &FiniteRing) -> Vec<Elem> {
        let mut out: Vec<Elem> = r
            .elements()
            .filter(|&x| self.rep[x.idx()] == x && r.is_unimodular2(x, self.modulus))
            .collect();
        out.sort();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitMapImage {
    pub a: String,
    pub b: String,
    pub c: String,
    /// Representatives of `U(R/Rac)`.
    pub left_domain: Vec<String>,
    /// Representatives of `U(R/Rbc)`.
    pub right_domain: Vec<String>,
    /// Representatives of `U(R/Rc)`.
    pub target: Vec<String>,
    pub image: Vec<String>,
    pub surjective: bool,
    #[serde(skip)]
    pub target_elems: Vec<Elem>,
    #[serde(skip)]
    pub image_elems: Vec<Elem>,
}

impl UnitMapImage {
    pub fn contains(&self, class_rep: Elem) -> bool {
        self.image_elems.binary_search(&class_rep).is_ok()
    }
}

fn image_elems(r: &FiniteRing, left: &[Elem], right: &[Elem], target: &Residues) -> Vec<Elem> {
    let mut hit = vec![false; r.size()];
    for &x in left {
        for &y in right {
            hit[target.of(r.mul(x, y)).idx()] = true;
        }
    }
    r.elements().filter(|x| hit[x.idx()]).collect()
}

/// The image of `υ_{a,b,c}`, by enumerating both domains.
pub fn upsilon_image(r: &FiniteRing, a: Elem, b: Elem, c: Elem) -> UnitMapImage {
    let target = Residues::new(r, c);
    let left = Residues::new(r, r.mul(a, c)).units(r);
    let right = Residues::new(r, r.mul(b, c)).units(r);
    let target_elems = target.units(r);
    let image = image_elems(r, &left, &right, &target);
    UnitMapImage {
        a: r.render(a),
        b: r.render(b),
        c: r.render(c),
        left_domain: r.render_all(&left),
        right_domain: r.render_all(&right),
        target: r.render_all(&target_elems),
        image: r.render_all(&image),
        surjective: image.len() == target_elems.len(),
        target_elems,
        image_elems: image,
    }
}

/// An instance `(a, c, u)` where `υ_{a,1−a,c}` misses the class of the unit `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct U2Failure {
    pub a: String,
    pub c: String,
    pub missed: String,
}

/// Whether `υ_{a,1−a,c}` is onto for all `(a, c)`; otherwise the first failure.
pub fn is_u2_ring(r: &FiniteRing) -> std::result::Result<(), U2Failure> {
    let residues: Vec<Residues> = r.elements().map(|c| Residues::new(r, c)).collect();
    let units: Vec<Vec<Elem>> = residues.iter().map(|m| m.units(r)).collect();
    for a in r.elements() {
        let b = r.sub(r.one(), a);
        for c in r.elements() {
            let target = &residues[c.idx()];
            let left = &units[r.mul(a, c).idx()];
            let right = &units[r.mul(b, c).idx()];
            let image = image_elems(r, left, right, target);
            let want = &units[c.idx()];
            if image.len() != want.len() {
                let missed = want
                    .iter()
                    .find(|u| image.binary_search(u).is_err())
                    .copied();
                return Err(U2Failure {
                    a: r.render(a),
                    c: r.render(c),
                    missed: r.render(missed.expect("image is a proper subset")),
                });
            }
        }
    }
    Ok(())
}

/// Whether every square of `U(R/Rc)` lies in the image of `υ_{a,b,c}`.
pub fn coker_is_boolean(r: &FiniteRing, a: Elem, b: Elem, c: Elem) -> Result<bool> {
    if !r.is_unimodular2(a, b) {
        return Err(Error::Precondition(format!(
            "({}, {}) is not unimodular",
            r.render(a),
            r.render(b)
        )));
    }
    let img = upsilon_image(r, a, b, c);
    let target = Residues::new(r, c);
    Ok(img
        .target_elems
        .iter()
        .all(|&x| img.contains(target.of(r.mul(x, x)))))
}

/// The two sides for `A = [[ac, u], [0, (1−a)c]]`: whether `A` is non-full and
/// whether `u + Rc` lies in the image of `υ_{a,1−a,c}`.
pub fn ex10_correspondence(r: &FiniteRing, a: Elem, c: Elem, u: Elem) -> Result<(bool, bool)> {
    if !ex10_admissible(r, a, c, u) {
        return Err(Error::Precondition(format!(
            "need Rac ∩ R(1−a)c = 0 and (c, u) unimodular; got a={}, c={}, u={}",
            r.render(a),
            r.render(c),
            r.render(u)
        )));
    }
    let b = r.sub(r.one(), a);
    let m = [r.mul(a, c), u, r.zero(), r.mul(b, c)];
    let img = upsilon_image(r, a, b, c);
    let in_image = img.contains(Residues::new(r, c).of(u));
    Ok((non_full(r, m).is_some(), in_image))
}

/// Whether `(a, c, u)` meets the hypotheses of [`ex10_correspondence`].
pub fn ex10_admissible(r: &FiniteRing, a: Elem, c: Elem, u: Elem) -> bool {
    let left = r.principal_ideal(r.mul(a, c));
    let right = r.principal_ideal(r.mul(r.sub(r.one(), a), c));
    let meet_zero = left
        .iter()
        .all(|x| *x == r.zero() || right.binary_search(x).is_err());
    meet_zero && r.is_unimodular2(c, u)
}

/// Outcome of the two factorization statements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorCheck {
    /// First `(a, b, c, d)` with no `t`, `d + ct = d₁d₂`, `(a,d₁)`, `(b,d₂)` unimodular.
    pub pairs_failure: Option<[String; 4]>,
    /// First `(a, d, c)` with `c ∈ 1 + Rd` and no such factorization for `b = 1 − a`.
    pub shifted_failure: Option<[String; 3]>,
}

impl FactorCheck {
    pub fn pairs_hold(&self) -> bool {
        self.pairs_failure.is_none()
    }

    pub fn shifted_hold(&self) -> bool {
        self.shifted_failure.is_none()
    }
}

/// Per principal ideal: its id for every generator and its residue map.
struct IdealTable {
    id_of: Vec<usize>,
    residues: Vec<Residues>,
}

impl IdealTable {
    fn new(r: &FiniteRing) -> Self {
        let mut ids: HashMap<Vec<Elem>, usize> = HashMap::new();
        let mut residues = Vec::new();
        let mut id_of = Vec::with_capacity(r.size());
        for c in r.elements() {
            let key = r.principal_ideal(c);
            let next = ids.len();
            let id = *ids.entry(key).or_insert(next);
            if id == residues.len() {
                residues.push(Residues::new(r, c));
            }
            id_of.push(id);
        }
        IdealTable { id_of, residues }
    }

    /// For each ideal, which residue classes meet `good`.
    fn classes_meeting(&self, r: &FiniteRing, good: &[bool]) -> Vec<Vec<bool>> {
        self.residues
            .iter()
            .map(|res| {
                let mut hit = vec![false; r.size()];
                for x in r.elements() {
                    if good[x.idx()] {
                        hit[res.of(x).idx()] = true;
                    }
                }
                hit
            })
            .collect()
    }

    fn meets(&self, hits: &[Vec<bool>], c: Elem, d: Elem) -> bool {
        let id = self.id_of[c.idx()];
        hits[id][self.residues[id].of(d).idx()]
    }
}

/// Values `d₁d₂` with `(a, d₁)` and `(b, d₂)` unimodular.
fn factorable(r: &FiniteRing, a: Elem, b: Elem) -> Vec<bool> {
    let left: Vec<Elem> = r.elements().filter(|&x| r.is_unimodular2(a, x)).collect();
    let right: Vec<Elem> = r.elements().filter(|&x| r.is_unimodular2(b, x)).collect();
    let mut good = vec![false; r.size()];
    for &x in &left {
        for &y in &right {
            good[r.mul(x, y).idx()] = true;
        }
    }
    good
}

/// Evaluates the unimodular-pairs factorization statement and its shifted variant.
pub fn th3_factor_check(r: &FiniteRing) -> FactorCheck {
    let table = IdealTable::new(r);
    let mut pairs_failure = None;
    'pairs: for a in r.elements() {
        for b in r.elements() {
            if !r.is_unimodular2(a, b) {
                continue;
            }
            let hits = table.classes_meeting(r, &factorable(r, a, b));
            for c in r.elements() {
                for d in r.elements() {
                    if r.is_unimodular2(c, d) && !table.meets(&hits, c, d) {
                        pairs_failure = Some([a, b, c, d].map(|x| r.render(x)));
                        break 'pairs;
                    }
                }
            }
        }
    }
    let mut shifted_failure = None;
    'shifted: for a in r.elements() {
        let hits = table.classes_meeting(r, &factorable(r, a, r.sub(r.one(), a)));
        for d in r.elements() {
            for k in r.principal_ideal(d) {
                let c = r.add(r.one(), k);
                if !table.meets(&hits, c, d) {
                    shifted_failure = Some([a, d, c].map(|x| r.render(x)));
                    break 'shifted;
                }
            }
        }
    }
    FactorCheck {
        pairs_failure,
        shifted_failure,
    }
}

/// The factorization statement for one tuple, by direct search over `(t, d₁, d₂)`.
pub fn factor_witness(r: &FiniteRing, a: Elem, b: Elem, c: Elem, d: Elem) -> Option<[Elem; 3]> {
    for t in r.elements() {
        let v = r.add(d, r.mul(c, t));
        for d1 in r.elements().filter(|&x| r.is_unimodular2(a, x)) {
            for d2 in r.elements() {
                if r.mul(d1, d2) == v && r.is_unimodular2(b, d2) {
                    return Some([t, d1, d2]);
                }
            }
        }
    }
    None
}

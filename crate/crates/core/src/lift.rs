//! Extendability, determinant liftability and non-fullness of 2×2 matrices over a
//! finite ring, with the upper-triangular criteria and the universal test matrices.

use crate::error::{Error, Result};
use crate::mat::{det3, mul, Mat};
use crate::orbit::{equivalence_witness, OrbitPartition, RowPartition};
use crate::ring::{Elem, FiniteRing};
use serde::Serialize;
use serde_json::{json, Value};

/// `[a, b, c, d]` stands for `[[a, b], [c, d]]`.
pub type M2 = [Elem; 4];

pub fn det(r: &FiniteRing, m: M2) -> Elem {
    r.sub(r.mul(m[0], m[3]), r.mul(m[1], m[2]))
}

pub fn is_unimodular(r: &FiniteRing, m: M2) -> bool {
    r.is_unimodular(&m)
}

pub fn to_mat(m: M2) -> Mat<Elem> {
    Mat::m2(m[0], m[1], m[2], m[3])
}

pub fn render_m2(r: &FiniteRing, m: M2) -> String {
    format!(
        "[[{},{}],[{},{}]]",
        r.render(m[0]),
        r.render(m[1]),
        r.render(m[2]),
        r.render(m[3])
    )
}

fn render_list(r: &FiniteRing, v: &[Elem]) -> Vec<String> {
    v.iter().map(|&x| r.render(x)).collect()
}

fn check_unimodular(r: &FiniteRing, m: M2) -> Result<()> {
    if is_unimodular(r, m) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{} is not unimodular",
            render_m2(r, m)
        )))
    }
}

fn completion(r: &FiniteRing, m: M2, simple: bool) -> Option<Mat<Elem>> {
    let [a, b, c, d] = m;
    let delta = det(r, m);
    // det [[a,b,x],[c,d,y],[p,q,k]] = x(cq − dp) + y(bp − aq) + k·det(A).
    for p in r.elements() {
        for q in r.elements() {
            let alpha = r.sub(r.mul(c, q), r.mul(d, p));
            let beta = r.sub(r.mul(b, p), r.mul(a, q));
            let v: &[Elem] = if simple {
                &[alpha, beta]
            } else {
                &[alpha, beta, delta]
            };
            if !r.is_unimodular(v) {
                continue;
            }
            let co = r.unimodular_coefficients(v).expect("unimodular");
            let k = if simple { r.zero() } else { co[2] };
            let out = Mat::new(3, 3, vec![a, b, co[0], c, d, co[1], p, q, k]).expect("3×3");
            debug_assert_eq!(det3(r, &out).ok(), Some(r.one()));
            return Some(out);
        }
    }
    None
}

/// A completion in `SL₃(R)` with `(3,3)` entry 0, choosing the first third row
/// `(p, q)` in scan order for which one exists.
pub fn simple_completion(r: &FiniteRing, m: M2) -> Result<Option<Mat<Elem>>> {
    check_unimodular(r, m)?;
    Ok(completion(r, m, true))
}

/// A completion in `SL₃(R)`.
pub fn full_completion(r: &FiniteRing, m: M2) -> Result<Option<Mat<Elem>>> {
    check_unimodular(r, m)?;
    Ok(completion(r, m, false))
}

/// Completion by scanning all five unknown entries, for small rings.
pub fn completion_by_scan(r: &FiniteRing, m: M2, simple: bool) -> Option<Mat<Elem>> {
    let [a, b, c, d] = m;
    let corners: Vec<Elem> = if simple {
        vec![r.zero()]
    } else {
        r.elements().collect()
    };
    for x in r.elements() {
        for y in r.elements() {
            for p in r.elements() {
                for q in r.elements() {
                    for &k in &corners {
                        let out = Mat::new(3, 3, vec![a, b, x, c, d, y, p, q, k]).expect("3×3");
                        if det3(r, &out).ok() == Some(r.one()) {
                            return Some(out);
                        }
                    }
                }
            }
        }
    }
    None
}

/// A matrix `B ≡ A (mod R·det A)` with `det B = 0`, unimodular when `unimodular`.
pub fn det_lift(r: &FiniteRing, m: M2, unimodular: bool) -> Option<M2> {
    let ideal = r.principal_ideal(det(r, m));
    for &i1 in &ideal {
        let b11 = r.add(m[0], i1);
        for &i2 in &ideal {
            let b12 = r.add(m[1], i2);
            for &i3 in &ideal {
                let b21 = r.add(m[2], i3);
                let target = r.mul(b12, b21);
                for &i4 in &ideal {
                    let b22 = r.add(m[3], i4);
                    if r.mul(b11, b22) != target {
                        continue;
                    }
                    let b = [b11, b12, b21, b22];
                    if !unimodular || is_unimodular(r, b) {
                        return Some(b);
                    }
                }
            }
        }
    }
    None
}

/// `(l, m, o, q)` with `B = [l; m]·[o, q]`.
pub fn non_full(r: &FiniteRing, b: M2) -> Option<[Elem; 4]> {
    non_full_mod(r, b, &[r.zero()])
}

/// `(l, m, o, q)` with `B ≡ [l; m]·[o, q]` modulo the ideal with the given elements.
pub fn non_full_mod(r: &FiniteRing, b: M2, ideal: &[Elem]) -> Option<[Elem; 4]> {
    let mut member = vec![false; r.size()];
    for &i in ideal {
        member[i.idx()] = true;
    }
    let congruent = |x: Elem, y: Elem| member[r.sub(x, y).idx()];
    for l in r.elements() {
        for m in r.elements() {
            let o = r
                .elements()
                .find(|&o| congruent(r.mul(l, o), b[0]) && congruent(r.mul(m, o), b[2]));
            let Some(o) = o else { continue };
            let q = r
                .elements()
                .find(|&q| congruent(r.mul(l, q), b[1]) && congruent(r.mul(m, q), b[3]));
            if let Some(q) = q {
                return Some([l, m, o, q]);
            }
        }
    }
    None
}

/// `(e, f)` unimodular with `(ae, be + cf)` unimodular, for `[[a, b], [0, c]]`.
pub fn triangular_simple_row(r: &FiniteRing, a: Elem, b: Elem, c: Elem) -> Option<(Elem, Elem)> {
    for e in r.elements() {
        for f in r.elements() {
            if r.is_unimodular2(e, f)
                && r.is_unimodular2(r.mul(a, e), r.add(r.mul(b, e), r.mul(c, f)))
            {
                return Some((e, f));
            }
        }
    }
    None
}

/// `(e, f)` with `(ae, be + cf, ac)` unimodular, for `[[a, b], [0, c]]`.
pub fn triangular_extension_row(r: &FiniteRing, a: Elem, b: Elem, c: Elem) -> Option<(Elem, Elem)> {
    let ac = r.mul(a, c);
    for e in r.elements() {
        for f in r.elements() {
            if r.is_unimodular(&[r.mul(a, e), r.add(r.mul(b, e), r.mul(c, f)), ac]) {
                return Some((e, f));
            }
        }
    }
    None
}

/// `(x, y, z, w)` with `ax + by + cw = 1` and `xw = yz`.
pub fn triangular_det_lift(r: &FiniteRing, a: Elem, b: Elem, c: Elem) -> Option<[Elem; 4]> {
    for x in r.elements() {
        for y in r.elements() {
            let partial = r.add(r.mul(a, x), r.mul(b, y));
            for w in r.elements() {
                if r.add(partial, r.mul(c, w)) != r.one() {
                    continue;
                }
                let xw = r.mul(x, w);
                if let Some(z) = r.elements().find(|&z| r.mul(y, z) == xw) {
                    return Some([x, y, z, w]);
                }
            }
        }
    }
    None
}

/// `(x, y, z, w)` with `1 − ax − by − cw + ac(xw − yz) = 0`.
pub fn triangular_weak_lift(r: &FiniteRing, a: Elem, b: Elem, c: Elem) -> Option<[Elem; 4]> {
    let ac = r.mul(a, c);
    for x in r.elements() {
        for y in r.elements() {
            let base = r.sub(r.sub(r.one(), r.mul(a, x)), r.mul(b, y));
            for w in r.elements() {
                let lhs = r.sub(base, r.mul(c, w));
                let xw = r.mul(x, w);
                for z in r.elements() {
                    let t = r.mul(ac, r.sub(xw, r.mul(y, z)));
                    if r.add(lhs, t) == r.zero() {
                        return Some([x, y, z, w]);
                    }
                }
            }
        }
    }
    None
}

/// The four properties of a unimodular 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    SimplyExtendable,
    Extendable,
    DetLiftable,
    WeaklyDetLiftable,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::SimplyExtendable,
        Property::Extendable,
        Property::DetLiftable,
        Property::WeaklyDetLiftable,
    ];

    pub fn short(self) -> &'static str {
        match self {
            Property::SimplyExtendable => "se",
            Property::Extendable => "e",
            Property::DetLiftable => "dl",
            Property::WeaklyDetLiftable => "wdl",
        }
    }

    /// Decides the property for a unimodular `m`.
    pub fn holds(self, r: &FiniteRing, m: M2) -> bool {
        match self {
            Property::SimplyExtendable => completion(r, m, true).is_some(),
            Property::Extendable => completion(r, m, false).is_some(),
            Property::DetLiftable => det_lift(r, m, true).is_some(),
            Property::WeaklyDetLiftable => det_lift(r, m, false).is_some(),
        }
    }

    /// The upper-triangular criterion for `[[a, b], [0, c]]`.
    pub fn holds_triangular(self, r: &FiniteRing, a: Elem, b: Elem, c: Elem) -> bool {
        match self {
            Property::SimplyExtendable => triangular_simple_row(r, a, b, c).is_some(),
            Property::Extendable => triangular_extension_row(r, a, b, c).is_some(),
            Property::DetLiftable => triangular_det_lift(r, a, b, c).is_some(),
            Property::WeaklyDetLiftable => triangular_weak_lift(r, a, b, c).is_some(),
        }
    }
}

/// One flag of a [`Prop4`] report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Flag {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Flag {
    fn from<T>(found: Option<T>, show: impl FnOnce(T) -> Value) -> Self {
        match found {
            Some(w) => Flag {
                holds: true,
                witness: Some(show(w)),
            },
            None => Flag {
                holds: false,
                witness: None,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop4 {
    pub matrix: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simply_extendable: Option<Flag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extendable: Option<Flag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_liftable: Option<Flag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weakly_det_liftable: Option<Flag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_full_mod_det: Option<Flag>,
}

/// Which flags of [`prop4`] to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropSelection {
    pub se: bool,
    pub e: bool,
    pub dl: bool,
    pub wdl: bool,
    pub nf: bool,
}

impl PropSelection {
    pub const ALL: PropSelection = PropSelection {
        se: true,
        e: true,
        dl: true,
        wdl: true,
        nf: true,
    };

    /// Parses `all` or a comma list of `se, e, dl, wdl, nf`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim() == "all" {
            return Ok(Self::ALL);
        }
        let mut out = PropSelection {
            se: false,
            e: false,
            dl: false,
            wdl: false,
            nf: false,
        };
        for part in s.split(',') {
            match part.trim() {
                "se" => out.se = true,
                "e" => out.e = true,
                "dl" => out.dl = true,
                "wdl" => out.wdl = true,
                "nf" => out.nf = true,
                other => {
                    return Err(Error::Precondition(format!("unknown property `{other}`")));
                }
            }
        }
        Ok(out)
    }
}

fn mat_json(r: &FiniteRing, m: &Mat<Elem>) -> Value {
    json!(crate::mat::matrix_json(r, m))
}

/// Evaluates the selected properties of a unimodular matrix, with witnesses.
pub fn prop4(r: &FiniteRing, m: M2, sel: PropSelection) -> Result<Prop4> {
    check_unimodular(r, m)?;
    let se = sel.se.then(|| {
        Flag::from(
            completion(r, m, true),
            |w| json!({ "a_plus": mat_json(r, &w) }),
        )
    });
    let e = sel.e.then(|| {
        Flag::from(
            completion(r, m, false),
            |w| json!({ "a_plus": mat_json(r, &w) }),
        )
    });
    let dl = sel.dl.then(|| {
        Flag::from(
            det_lift(r, m, true),
            |b| json!({ "b": mat_json(r, &to_mat(b)) }),
        )
    });
    let wdl = sel.wdl.then(|| {
        Flag::from(
            det_lift(r, m, false),
            |b| json!({ "b": mat_json(r, &to_mat(b)) }),
        )
    });
    let nf = sel.nf.then(|| {
        let ideal = r.principal_ideal(det(r, m));
        Flag::from(
            non_full_mod(r, m, &ideal),
            |w| json!({ "l_m_o_q": render_list(r, &w) }),
        )
    });
    let out = Prop4 {
        matrix: render_m2(r, m),
        simply_extendable: se,
        extendable: e,
        det_liftable: dl,
        weakly_det_liftable: wdl,
        non_full_mod_det: nf,
    };
    Ok(out)
}

impl Prop4 {
    /// Violations of the implications among the computed flags.
    pub fn diagram_violations(&self) -> Vec<&'static str> {
        let h = |f: &Option<Flag>| f.as_ref().map(|f| f.holds);
        let (se, e, dl, wdl) = (
            h(&self.simply_extendable),
            h(&self.extendable),
            h(&self.det_liftable),
            h(&self.weakly_det_liftable),
        );
        let mut out = Vec::new();
        let implies = |p: Option<bool>, q: Option<bool>| !(p == Some(true) && q == Some(false));
        if !implies(se, e) {
            out.push("simply extendable ⇒ extendable");
        }
        if !implies(se, dl) {
            out.push("simply extendable ⇒ determinant liftable");
        }
        if !implies(e, wdl) {
            out.push("extendable ⇒ weakly determinant liftable");
        }
        if !implies(dl, wdl) {
            out.push("determinant liftable ⇒ weakly determinant liftable");
        }
        out
    }
}

/// Diagonal reduction through the equivalence classes of `M₂(R)` and of rows.
pub struct DiagonalReducer {
    pub matrices: OrbitPartition,
    pub rows: RowPartition,
    /// Per matrix class: the least diagonal `diag(d₁, d₂)` with `d₁ | d₂` in it.
    pub good: Vec<Option<M2>>,
    /// Per row class: whether it contains some `(d, 0)`.
    pub good_rows: Vec<bool>,
}

impl DiagonalReducer {
    pub fn new(r: &FiniteRing, budget: u64) -> Result<Self> {
        Ok(Self::from_partition(r, OrbitPartition::build(r, budget)?))
    }

    pub fn from_partition(r: &FiniteRing, matrices: OrbitPartition) -> Self {
        let rows = RowPartition::build(r);
        let mut good = vec![None; matrices.class_count()];
        for d1 in r.elements() {
            for d2 in r.elements() {
                if r.divides(d1, d2) {
                    let m = [d1, r.zero(), r.zero(), d2];
                    let cls = matrices.class_of(m) as usize;
                    if good[cls].is_none() {
                        good[cls] = Some(m);
                    }
                }
            }
        }
        let mut good_rows = vec![false; rows.reps.len()];
        for d in r.elements() {
            good_rows[rows.class_of([d, r.zero()]) as usize] = true;
        }
        DiagonalReducer {
            matrices,
            rows,
            good,
            good_rows,
        }
    }

    pub fn reduces(&self, m: M2) -> bool {
        self.good[self.matrices.class_of(m) as usize].is_some()
    }

    /// `(M, N, D)` with `M·B·N = D` diagonal and `d₁ | d₂`.
    pub fn witness(&self, r: &FiniteRing, m: M2) -> Result<Option<Reduction>> {
        let Some(target) = self.good[self.matrices.class_of(m) as usize] else {
            return Ok(None);
        };
        let (left, right) = equivalence_witness(r, m, target, u64::MAX)?.expect("same class");
        Ok(Some((left, right, target)))
    }

    /// Whether the row `(a, b)` is equivalent to some `(d, 0)`.
    pub fn row_reduces(&self, a: Elem, b: Elem) -> bool {
        self.good_rows[self.rows.class_of([a, b]) as usize]
    }

    /// First 2×2 matrix, 1×2 row or 2×1 column without a diagonal reduction.
    pub fn first_failure(&self, r: &FiniteRing) -> Option<Mat<Elem>> {
        for a in r.elements() {
            for b in r.elements() {
                if !self.row_reduces(a, b) {
                    return Some(Mat::new(1, 2, vec![a, b]).expect("1×2"));
                }
            }
        }
        // Columns reduce exactly when the transposed rows do.
        for (cls, rep) in self.matrices.reps.iter().enumerate() {
            if self.good[cls].is_none() {
                return Some(to_mat(*rep));
            }
        }
        None
    }
}

/// The universal test matrices of the two cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TestTag {
    /// `[[x(1−yz), y], [0, (1−x)(1−yz)]]`
    D,
    /// `[[x, y], [0, (1−x)(1−yz)²]]`
    E,
    /// `[[x, y], [0, (1−x)(1−yz)]]`
    F,
    /// `[[x, y], [0, 1−x−yz]]`
    G,
}

pub fn specialize(r: &FiniteRing, tag: TestTag, x: Elem, y: Elem, z: Elem) -> M2 {
    let o = r.one();
    let k = r.sub(o, r.mul(y, z));
    let one_x = r.sub(o, x);
    let zero = r.zero();
    match tag {
        TestTag::D => [r.mul(x, k), y, zero, r.mul(one_x, k)],
        TestTag::E => [x, y, zero, r.mul(one_x, r.mul(k, k))],
        TestTag::F => [x, y, zero, r.mul(one_x, k)],
        TestTag::G => [x, y, zero, r.sub(one_x, r.mul(y, z))],
    }
}

/// `(L, R)` with `L·D·R = E` at the same specialization.
pub fn d_to_e(r: &FiniteRing, x: Elem, y: Elem, z: Elem) -> (Mat<Elem>, Mat<Elem>) {
    let (o, zero) = (r.one(), r.zero());
    let k = r.sub(o, r.mul(y, z));
    let low = r.mul(r.mul(z, r.sub(x, o)), k);
    (Mat::m2(o, zero, low, o), Mat::m2(o, zero, r.mul(x, z), o))
}

/// Companion test matrices `[[aa′, b], [0, cc′]]` for the upper-triangular
/// members `[[a, b], [0, c]]` of the class of `m`.
pub fn companion_test_matrices<'p>(
    r: &'p FiniteRing,
    part: &'p OrbitPartition,
    m: M2,
) -> impl Iterator<Item = M2> + 'p {
    let cls = part.class_of(m);
    part.members(cls)
        .filter(|t| t[2] == r.zero())
        .flat_map(move |t| {
            r.elements().flat_map(move |a1| {
                r.elements()
                    .map(move |c1| [r.mul(t[0], a1), t[1], r.zero(), r.mul(t[3], c1)])
            })
        })
        .filter(move |b| is_unimodular(r, *b))
}

/// Result of comparing the test-matrix route with the direct quantifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop2Scan {
    pub via_test_matrix: bool,
    pub direct: bool,
    /// First `(x, y, z)` whose image of the test matrix fails.
    pub failing_specialization: Option<[String; 3]>,
}

/// Whether every image of the upper-triangular universal test matrix has the
/// property; when `zero_det` is set only images with `x(1−x−yz) = 0` count.
/// Also evaluates the direct statement over all upper-triangular unimodular matrices.
pub fn prop2_scan(r: &FiniteRing, p: Property, zero_det: bool) -> Prop2Scan {
    prop2_scan_with(r, zero_det, |m| p.holds(r, m))
}

/// [`prop2_scan`] with the property supplied as an oracle on unimodular matrices.
pub fn prop2_scan_with(
    r: &FiniteRing,
    zero_det: bool,
    mut holds: impl FnMut(M2) -> bool,
) -> Prop2Scan {
    let mut failing = None;
    'outer: for x in r.elements() {
        for y in r.elements() {
            for z in r.elements() {
                let g = specialize(r, TestTag::G, x, y, z);
                if zero_det && det(r, g) != r.zero() {
                    continue;
                }
                if !holds(g) {
                    failing = Some([r.render(x), r.render(y), r.render(z)]);
                    break 'outer;
                }
            }
        }
    }
    let mut direct = true;
    'direct: for a in r.elements() {
        for b in r.elements() {
            for c in r.elements() {
                let m = [a, b, r.zero(), c];
                if !is_unimodular(r, m) || (zero_det && det(r, m) != r.zero()) {
                    continue;
                }
                if !holds(m) {
                    direct = false;
                    break 'direct;
                }
            }
        }
    }
    Prop2Scan {
        via_test_matrix: failing.is_none(),
        direct,
        failing_specialization: failing,
    }
}

/// `M·A·N` for 2×2 matrices.
/// Transforming matrices `(M, N)` and the diagonal form `D = M·B·N`.
pub type Reduction = (Mat<Elem>, Mat<Elem>, M2);

pub fn sandwich(r: &FiniteRing, m: &Mat<Elem>, a: M2, n: &Mat<Elem>) -> M2 {
    let ma = mul(r, m, &to_mat(a)).expect("2×2");
    mul(r, &ma, n).expect("2×2").as_m2().expect("2×2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::PARTITION_LIMIT;
    use crate::ring::make_finite_ring;

    fn all_m2(r: &FiniteRing) -> impl Iterator<Item = M2> + '_ {
        r.elements().flat_map(move |a| {
            r.elements().flat_map(move |b| {
                r.elements()
                    .flat_map(move |c| r.elements().map(move |d| [a, b, c, d]))
            })
        })
    }

    #[test]
    fn zmod6_examples() {
        let r = make_finite_ring("Zmod:6").unwrap();
        let a = [Elem(2), Elem(1), Elem(0), Elem(3)];
        let p = prop4(&r, a, PropSelection::ALL).unwrap();
        assert!(p.extendable.as_ref().unwrap().holds);
        assert!(p.simply_extendable.as_ref().unwrap().holds);
        assert!(completion_by_scan(&r, a, false).is_some());
        let (e, f) = (Elem(1), Elem(2));
        assert!(r.is_unimodular2(e, f));
        assert!(r.is_unimodular2(r.mul(Elem(2), e), r.add(Elem(1), r.mul(Elem(3), f))));
        assert!(triangular_simple_row(&r, Elem(2), Elem(1), Elem(3)).is_some());
        // (x, y, z, w) = (0, 1, 0, 0): 2·0 + 1·1 + 3·0 = 1 and 0·0 = 1·0.
        let w = [Elem(0), Elem(1), Elem(0), Elem(0)];
        assert_eq!(
            r.add(
                r.add(r.mul(Elem(2), w[0]), r.mul(Elem(1), w[1])),
                r.mul(Elem(3), w[3])
            ),
            r.one()
        );
        assert!(triangular_det_lift(&r, Elem(2), Elem(1), Elem(3)).is_some());
        assert!(p.det_liftable.unwrap().holds);
        let nf = non_full(&r, a).unwrap();
        let [l, m, o, q] = nf;
        assert_eq!([r.mul(l, o), r.mul(l, q), r.mul(m, o), r.mul(m, q)], a);
        assert!(non_full(&r, [Elem(1), Elem(0), Elem(0), Elem(1)]).is_none());
        assert!(prop4(&r, [Elem(2), Elem(0), Elem(0), Elem(2)], PropSelection::ALL).is_err());
    }

    #[test]
    fn identity_completes_to_identity_block() {
        let r = make_finite_ring("Zmod:5").unwrap();
        let id = [r.one(), r.zero(), r.zero(), r.one()];
        let a = full_completion(&r, id).unwrap().unwrap();
        assert_eq!(det3(r.as_ref(), &a).unwrap(), r.one());
        let u = [Elem(2), r.zero(), r.zero(), Elem(3)];
        assert!(simple_completion(&r, u).unwrap().is_some());
    }

    #[test]
    fn first_row_scan_matches_five_unknown_scan() {
        for s in ["Zmod:4", "Zmod:6", "GF:4", "Table:builtin:f2xy"] {
            let r = make_finite_ring(s).unwrap();
            let n = r.size();
            for m in all_m2(&r)
                .filter(|&m| is_unimodular(&r, m))
                .step_by(if n > 4 { 7 } else { 1 })
            {
                for simple in [true, false] {
                    assert_eq!(
                        completion(&r, m, simple).is_some(),
                        completion_by_scan(&r, m, simple).is_some(),
                        "{s} {m:?} {simple}"
                    );
                }
            }
        }
    }

    #[test]
    fn triangular_criteria_agree_with_definitions() {
        for n in 2..=8 {
            let r = make_finite_ring(&format!("Zmod:{n}")).unwrap();
            for a in r.elements() {
                for b in r.elements() {
                    for c in r.elements() {
                        let m = [a, b, r.zero(), c];
                        if !is_unimodular(&r, m) {
                            continue;
                        }
                        for p in [
                            Property::SimplyExtendable,
                            Property::Extendable,
                            Property::DetLiftable,
                        ] {
                            assert_eq!(
                                p.holds(&r, m),
                                p.holds_triangular(&r, a, b, c),
                                "{n} {m:?} {p:?}"
                            );
                        }
                        if triangular_weak_lift(&r, a, b, c).is_some() {
                            assert!(Property::WeaklyDetLiftable.holds(&r, m));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn weak_criterion_iff_on_reduced_rings() {
        for s in ["Zmod:2", "Zmod:3", "Zmod:5", "Zmod:6", "Zmod:7", "GF:4"] {
            let r = make_finite_ring(s).unwrap();
            for a in r.elements() {
                for b in r.elements() {
                    for c in r.elements() {
                        let m = [a, b, r.zero(), c];
                        if is_unimodular(&r, m) {
                            assert_eq!(
                                Property::WeaklyDetLiftable.holds(&r, m),
                                triangular_weak_lift(&r, a, b, c).is_some()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn diagram_holds_exhaustively_small() {
        for s in [
            "Zmod:4",
            "Zmod:8",
            "Table:builtin:f2xy",
            "Quot:GF:2[x]/(x^2)",
        ] {
            let r = make_finite_ring(s).unwrap();
            for m in all_m2(&r).filter(|&m| is_unimodular(&r, m)) {
                let p = prop4(&r, m, PropSelection::ALL).unwrap();
                assert!(p.diagram_violations().is_empty(), "{s} {m:?}");
            }
        }
    }

    #[test]
    fn test_matrix_specializations() {
        let r = make_finite_ring("Zmod:6").unwrap();
        let (o, z) = (r.one(), r.zero());
        assert_eq!(specialize(&r, TestTag::G, o, z, z), [o, z, z, z]);
        assert_eq!(specialize(&r, TestTag::D, z, z, z), [z, z, z, o]);
        for x in r.elements() {
            for y in r.elements() {
                for w in r.elements() {
                    let (left, right) = d_to_e(&r, x, y, w);
                    let d = specialize(&r, TestTag::D, x, y, w);
                    assert_eq!(
                        sandwich(&r, &left, d, &right),
                        specialize(&r, TestTag::E, x, y, w)
                    );
                    let w2 = r.sub(r.mul(Elem(2), w), r.mul(y, r.mul(w, w)));
                    assert_eq!(
                        specialize(&r, TestTag::F, x, y, w2),
                        specialize(&r, TestTag::E, x, y, w)
                    );
                    for tag in [TestTag::D, TestTag::E, TestTag::F, TestTag::G] {
                        assert!(is_unimodular(&r, specialize(&r, tag, x, y, w)));
                    }
                }
            }
        }
    }

    #[test]
    fn prop2_routes_agree() {
        for n in 2..=8 {
            let r = make_finite_ring(&format!("Zmod:{n}")).unwrap();
            for p in [Property::SimplyExtendable, Property::DetLiftable] {
                for zero_det in [false, true] {
                    let s = prop2_scan(&r, p, zero_det);
                    assert_eq!(s.via_test_matrix, s.direct);
                    assert!(s.direct);
                }
            }
        }
    }

    #[test]
    fn companions_transfer_properties() {
        let r = make_finite_ring("Zmod:4").unwrap();
        let part = OrbitPartition::build(&r, PARTITION_LIMIT).unwrap();
        let a = [Elem(2), Elem(1), Elem(1), Elem(2)];
        let comps: Vec<M2> = companion_test_matrices(&r, &part, a).collect();
        assert!(!comps.is_empty());
        for b in comps.iter().take(50) {
            for p in Property::ALL {
                if p.holds(&r, *b) {
                    assert!(p.holds(&r, a));
                }
            }
        }
    }

    #[test]
    fn diagonal_reduction_examples() {
        let r = make_finite_ring("Zmod:6").unwrap();
        let dr = DiagonalReducer::new(&r, PARTITION_LIMIT).unwrap();
        assert!(dr.first_failure(&r).is_none());
        let b = [Elem(2), Elem(1), Elem(4), Elem(3)];
        let (m, n, d) = dr.witness(&r, b).unwrap().unwrap();
        assert_eq!(sandwich(&r, &m, b, &n), d);
        assert!(r.divides(d[0], d[3]) && d[1] == r.zero() && d[2] == r.zero());
        let f = make_finite_ring("Table:builtin:f2xy").unwrap();
        let dr = DiagonalReducer::new(&f, PARTITION_LIMIT).unwrap();
        assert!(dr.first_failure(&r).is_some());
    }
}

//! Ring-class predicates of a finite ring, each with a witness or counterexample.
//!
//! Matrix-quantified flags run over representatives of the equivalence classes of
//! `M₂(R)`: unimodularity, the determinant ideal and all four lifting properties
//! are constant on classes.  The strict symmetrization flag uses `SL₂ × SL₂` classes.

use crate::error::Result;
use crate::lift::{
    det, det_lift, is_unimodular, non_full, render_m2, triangular_weak_lift, DiagonalReducer,
    Property, M2,
};
use crate::mat::{det3, matrix_json, Mat};
use crate::orbit::{OrbitPartition, PARTITION_LIMIT};
use crate::ring::{quotient_by_ideal, Elem, FiniteRing, Ideal, Structure};
use crate::search::Truth;
use crate::units::is_u2_ring;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// Default node budget per flag.
pub const DEFAULT_BUDGET: u64 = PARTITION_LIMIT;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FlagId {
    Bezout,
    Hermite,
    PreSchreier,
    Pi2,
    E2,
    Se2,
    Edr,
    U2,
    Wsu2,
    Wsu2Prime,
    Sr1,
    Ssr1,
    Asr1,
    Wh21,
    Wh31,
    Wh32,
    AllDetLiftable,
    AllWeaklyDetLiftable,
    ZeroDetNonFull,
}

impl FlagId {
    pub const ALL: [FlagId; 19] = [
        FlagId::Bezout,
        FlagId::Hermite,
        FlagId::PreSchreier,
        FlagId::Pi2,
        FlagId::E2,
        FlagId::Se2,
        FlagId::Edr,
        FlagId::U2,
        FlagId::Wsu2,
        FlagId::Wsu2Prime,
        FlagId::Sr1,
        FlagId::Ssr1,
        FlagId::Asr1,
        FlagId::Wh21,
        FlagId::Wh31,
        FlagId::Wh32,
        FlagId::AllDetLiftable,
        FlagId::AllWeaklyDetLiftable,
        FlagId::ZeroDetNonFull,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FlagId::Bezout => "bezout",
            FlagId::Hermite => "hermite",
            FlagId::PreSchreier => "pre_schreier",
            FlagId::Pi2 => "pi2",
            FlagId::E2 => "e2",
            FlagId::Se2 => "se2",
            FlagId::Edr => "edr",
            FlagId::U2 => "u2",
            FlagId::Wsu2 => "wsu2",
            FlagId::Wsu2Prime => "wsu2_prime",
            FlagId::Sr1 => "sr1",
            FlagId::Ssr1 => "ssr1",
            FlagId::Asr1 => "asr1",
            FlagId::Wh21 => "wh_2_1",
            FlagId::Wh31 => "wh_3_1",
            FlagId::Wh32 => "wh_3_2",
            FlagId::AllDetLiftable => "all_det_liftable",
            FlagId::AllWeaklyDetLiftable => "all_weakly_det_liftable",
            FlagId::ZeroDetNonFull => "zero_det_non_full",
        }
    }

    pub fn parse(s: &str) -> Option<FlagId> {
        FlagId::ALL.into_iter().find(|f| f.name() == s.trim())
    }

    /// Parses `all` or a comma list of flag names.
    pub fn parse_list(s: &str) -> std::result::Result<Vec<FlagId>, String> {
        if s.trim() == "all" {
            return Ok(FlagId::ALL.to_vec());
        }
        s.split(',')
            .map(|p| FlagId::parse(p).ok_or_else(|| format!("unknown flag `{}`", p.trim())))
            .collect()
    }
}

/// Value of one flag with its evidence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlagResult {
    pub value: Truth,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Value>,
}

impl FlagResult {
    fn holds() -> Self {
        FlagResult {
            value: Truth::True,
            evidence: None,
        }
    }

    fn fails(evidence: Value) -> Self {
        FlagResult {
            value: Truth::False,
            evidence: Some(json!({ "counterexample": evidence })),
        }
    }

    fn unknown(reason: impl Into<String>) -> Self {
        FlagResult {
            value: Truth::Unknown,
            evidence: Some(json!({ "reason": reason.into() })),
        }
    }

    fn from_failure(failure: Option<Value>) -> Self {
        match failure {
            None => Self::holds(),
            Some(v) => Self::fails(v),
        }
    }

    pub fn is_true(&self) -> bool {
        self.value == Truth::True
    }

    pub fn is_false(&self) -> bool {
        self.value == Truth::False
    }
}

/// Structural tags, recomputed from the ring itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingTags {
    pub characteristic: u64,
    pub char2: bool,
    pub reduced: bool,
    pub local: bool,
    pub field: bool,
    pub product: bool,
}

impl RingTags {
    pub fn of(r: &FiniteRing) -> Self {
        RingTags {
            characteristic: r.characteristic(),
            char2: r.is_char2(),
            reduced: r.is_reduced(),
            local: r.maximal_ideal_count() == 1,
            field: r.unit_count() + 1 == r.size(),
            product: matches!(r.structure(), Structure::Prod { .. }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassReport {
    pub ring: String,
    pub size: usize,
    pub tags: RingTags,
    pub flags: BTreeMap<&'static str, FlagResult>,
}

/// Lazily evaluates and caches the flags of one ring.
pub struct Classifier {
    ring: Arc<FiniteRing>,
    budget: u64,
    reducer: OnceLock<std::result::Result<DiagonalReducer, String>>,
    special: OnceLock<std::result::Result<OrbitPartition, String>>,
    cache: Mutex<BTreeMap<FlagId, FlagResult>>,
}

impl Classifier {
    pub fn new(ring: Arc<FiniteRing>, budget: u64) -> Self {
        Classifier {
            ring,
            budget,
            reducer: OnceLock::new(),
            special: OnceLock::new(),
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Diagonal reduction data, including the partition of `M₂(R)`.
    pub fn reducer(&self) -> std::result::Result<&DiagonalReducer, String> {
        self.reducer
            .get_or_init(|| {
                DiagonalReducer::new(&self.ring, self.budget).map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn partition(&self) -> std::result::Result<&OrbitPartition, String> {
        self.reducer().map(|d| &d.matrices)
    }

    fn special_partition(&self) -> std::result::Result<&OrbitPartition, String> {
        self.special
            .get_or_init(|| {
                OrbitPartition::build_special(&self.ring, self.budget).map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn flag(&self, id: FlagId) -> FlagResult {
        if let Some(v) = self.cache.lock().expect("cache").get(&id) {
            return v.clone();
        }
        let v = self.compute(id);
        self.cache.lock().expect("cache").insert(id, v.clone());
        v
    }

    pub fn truth(&self, id: FlagId) -> Truth {
        self.flag(id).value
    }

    pub fn report(&self, ids: &[FlagId]) -> ClassReport {
        let flags = ids.iter().map(|&id| (id.name(), self.flag(id))).collect();
        ClassReport {
            ring: self.ring.spec().to_string(),
            size: self.ring.size(),
            tags: RingTags::of(&self.ring),
            flags,
        }
    }

    fn over_classes(
        &self,
        special: bool,
        keep: impl Fn(M2) -> bool,
        good: impl Fn(M2) -> bool,
    ) -> FlagResult {
        let part = if special {
            self.special_partition()
        } else {
            self.partition()
        };
        match part {
            Err(e) => FlagResult::unknown(e),
            Ok(p) => FlagResult::from_failure(
                p.reps
                    .iter()
                    .find(|&&m| keep(m) && !good(m))
                    .map(|&m| json!(render_m2(&self.ring, m))),
            ),
        }
    }

    fn compute(&self, id: FlagId) -> FlagResult {
        let r: &FiniteRing = &self.ring;
        let unimodular = |m: M2| is_unimodular(r, m);
        let show2 = |p: Elem, q: Elem| json!([r.render(p), r.render(q)]);
        match id {
            FlagId::Bezout => FlagResult::from_failure(bezout_failure(r).map(|(p, q)| show2(p, q))),
            FlagId::Hermite => {
                FlagResult::from_failure(hermite_failure(r).map(|(p, q)| show2(p, q)))
            }
            FlagId::PreSchreier => {
                FlagResult::from_failure(pre_schreier_failure(r).map(|v| json!(r.render_all(&v))))
            }
            FlagId::Pi2 => self.over_classes(
                false,
                |m| unimodular(m) && det(r, m) == r.zero(),
                |m| Property::Extendable.holds(r, m),
            ),
            FlagId::E2 => {
                self.over_classes(false, unimodular, |m| Property::Extendable.holds(r, m))
            }
            FlagId::Se2 => self.over_classes(false, unimodular, |m| {
                Property::SimplyExtendable.holds(r, m)
            }),
            FlagId::AllDetLiftable => {
                self.over_classes(false, unimodular, |m| Property::DetLiftable.holds(r, m))
            }
            FlagId::AllWeaklyDetLiftable => self.over_classes(false, unimodular, |m| {
                Property::WeaklyDetLiftable.holds(r, m)
            }),
            FlagId::ZeroDetNonFull => self.over_classes(
                false,
                |m| det(r, m) == r.zero(),
                |m| non_full(r, m).is_some(),
            ),
            FlagId::Edr => match self.reducer() {
                Err(e) => FlagResult::unknown(e),
                Ok(d) => {
                    FlagResult::from_failure(d.first_failure(r).map(|m| json!(matrix_json(r, &m))))
                }
            },
            FlagId::U2 => match is_u2_ring(r) {
                Ok(()) => FlagResult::holds(),
                Err(f) => FlagResult::fails(json!(f)),
            },
            FlagId::Wsu2 => {
                self.over_classes(false, unimodular, |m| symmetrizer(r, m, false).is_some())
            }
            FlagId::Wsu2Prime => {
                self.over_classes(true, unimodular, |m| symmetrizer(r, m, true).is_some())
            }
            FlagId::Sr1 => FlagResult::from_failure(sr1_failure(r).map(|(a, b)| show2(a, b))),
            FlagId::Ssr1 => FlagResult::from_failure(ssr1_failure(r).map(|(a, b)| show2(a, b))),
            FlagId::Asr1 => {
                FlagResult::from_failure(asr1_failure(r).map(|v| json!(r.render_all(&v))))
            }
            FlagId::Wh21 => self.over_classes(false, unimodular, |m| {
                trace_killer2(r, &[m], false).is_some()
            }),
            FlagId::Wh31 => wh3(r, 1, false, self.budget),
            FlagId::Wh32 => wh3(r, 2, false, self.budget),
        }
    }
}

/// Convenience: classify with the default budget.
pub fn classify(r: &Arc<FiniteRing>, ids: &[FlagId]) -> ClassReport {
    Classifier::new(Arc::clone(r), DEFAULT_BUDGET).report(ids)
}

/// Principal ideals: an id per element and the membership table per id.
pub struct PrincipalIdeals {
    pub id_of: Vec<usize>,
    /// Least generator of each ideal.
    pub generator: Vec<Elem>,
    pub member: Vec<Vec<bool>>,
}

impl PrincipalIdeals {
    pub fn new(r: &FiniteRing) -> Self {
        let mut ids: HashMap<Vec<Elem>, usize> = HashMap::new();
        let mut id_of = Vec::with_capacity(r.size());
        let mut generator = Vec::new();
        let mut member = Vec::new();
        for x in r.elements() {
            let elems = r.principal_ideal(x);
            let next = ids.len();
            let id = *ids.entry(elems.clone()).or_insert(next);
            if id == generator.len() {
                generator.push(x);
                let mut m = vec![false; r.size()];
                for e in elems {
                    m[e.idx()] = true;
                }
                member.push(m);
            }
            id_of.push(id);
        }
        PrincipalIdeals {
            id_of,
            generator,
            member,
        }
    }

    /// Whether `a` divides `b`.
    pub fn divides(&self, a: Elem, b: Elem) -> bool {
        self.member[self.id_of[a.idx()]][b.idx()]
    }
}

/// First `(p, q)` with `Rp + Rq` not principal.
pub fn bezout_failure(r: &FiniteRing) -> Option<(Elem, Elem)> {
    let ideals = PrincipalIdeals::new(r);
    let mut memo: HashMap<(usize, usize), bool> = HashMap::new();
    for p in r.elements() {
        for q in r.elements() {
            let key = (ideals.id_of[p.idx()], ideals.id_of[q.idx()]);
            let ok = *memo.entry(key).or_insert_with(|| {
                let (ip, iq) = (&ideals.member[key.0], &ideals.member[key.1]);
                let mut sum = vec![false; r.size()];
                for x in r.elements().filter(|x| ip[x.idx()]) {
                    for y in r.elements().filter(|y| iq[y.idx()]) {
                        sum[r.add(x, y).idx()] = true;
                    }
                }
                ideals.member.contains(&sum)
            });
            if !ok {
                return Some((p, q));
            }
        }
    }
    None
}

/// `(r, s, t)` with `p = rs`, `q = rt` and `(s, t)` unimodular.
pub fn hermite_factor(r: &FiniteRing, p: Elem, q: Elem) -> Option<[Elem; 3]> {
    for g in r.elements() {
        for s in r.elements().filter(|&s| r.mul(g, s) == p) {
            for t in r.elements() {
                if r.mul(g, t) == q && r.is_unimodular2(s, t) {
                    return Some([g, s, t]);
                }
            }
        }
    }
    None
}

/// First `(p, q)` without a Hermite factorization.
pub fn hermite_failure(r: &FiniteRing) -> Option<(Elem, Elem)> {
    for p in r.elements() {
        for q in r.elements() {
            if hermite_factor(r, p, q).is_none() {
                return Some((p, q));
            }
        }
    }
    None
}

/// First `(x, y, z)` with `x | yz` but no `x = uv`, `u | y`, `v | z`.
///
/// Divisibility by `x` depends on `y` and `z` only through `Ry` and `Rz`, so one
/// generator per principal ideal is tried.
pub fn pre_schreier_failure(r: &FiniteRing) -> Option<[Elem; 3]> {
    let ideals = PrincipalIdeals::new(r);
    let mut factors: Vec<Vec<(Elem, Elem)>> = vec![Vec::new(); r.size()];
    for u in r.elements() {
        for v in r.elements() {
            factors[r.mul(u, v).idx()].push((u, v));
        }
    }
    for x in r.elements() {
        for &y in &ideals.generator {
            for &z in &ideals.generator {
                if !ideals.divides(x, r.mul(y, z)) {
                    continue;
                }
                let split = factors[x.idx()]
                    .iter()
                    .any(|&(u, v)| ideals.divides(u, y) && ideals.divides(v, z));
                if !split {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

/// First unimodular `(a, b)` with no `t` making `a + bt` a unit.
pub fn sr1_failure(r: &FiniteRing) -> Option<(Elem, Elem)> {
    stable_failure(r, |a| a)
}

/// First unimodular `(a, b)` with no `t` making `a² + bt` a unit.
pub fn ssr1_failure(r: &FiniteRing) -> Option<(Elem, Elem)> {
    stable_failure(r, |a| r.mul(a, a))
}

fn stable_failure(r: &FiniteRing, f: impl Fn(Elem) -> Elem) -> Option<(Elem, Elem)> {
    for a in r.elements() {
        let fa = f(a);
        for b in r.elements() {
            if r.is_unimodular2(a, b) && !r.elements().any(|t| r.is_unit(r.add(fa, r.mul(b, t)))) {
                return Some((a, b));
            }
        }
    }
    None
}

/// First `(a, x, y)` with `a ≠ 0` where stable range 1 fails in `R/Ra` at the
/// residues of `(x, y)`.
pub fn asr1_failure(r: &FiniteRing) -> Option<[Elem; 3]> {
    for a in r.elements().filter(|&a| a != r.zero()) {
        for x in r.elements() {
            for y in r.elements() {
                if !r.is_unimodular(&[x, y, a]) {
                    continue;
                }
                if !r
                    .elements()
                    .any(|t| r.is_unimodular2(r.add(x, r.mul(y, t)), a))
                {
                    return Some([a, x, y]);
                }
            }
        }
    }
    None
}

/// `N` invertible (determinant 1 when `strict`) with `A·N` symmetric.
pub fn symmetrizer(r: &FiniteRing, m: M2, strict: bool) -> Option<Mat<Elem>> {
    let [a, b, c, d] = m;
    if b == c {
        return Some(Mat::m2(r.one(), r.zero(), r.zero(), r.one()));
    }
    // A·N is symmetric iff a·n₂ + b·n₄ = c·n₁ + d·n₃.
    for n1 in r.elements() {
        for n3 in r.elements() {
            if !r.is_unimodular2(n1, n3) {
                continue;
            }
            let rhs = r.add(r.mul(c, n1), r.mul(d, n3));
            for n2 in r.elements() {
                let partial = r.mul(a, n2);
                for n4 in r.elements() {
                    if r.add(partial, r.mul(b, n4)) != rhs {
                        continue;
                    }
                    let dn = r.sub(r.mul(n1, n4), r.mul(n2, n3));
                    if (strict && dn == r.one()) || (!strict && r.is_unit(dn)) {
                        return Some(Mat::m2(n1, n2, n3, n4));
                    }
                }
            }
        }
    }
    None
}

/// `N` invertible (determinant 1 when `strict`) with `tr(AᵢN) = 0` for all `i`.
pub fn trace_killer2(r: &FiniteRing, ms: &[M2], strict: bool) -> Option<Mat<Elem>> {
    // tr([[a,b],[c,d]]·[[n₁,n₂],[n₃,n₄]]) = a·n₁ + b·n₃ + c·n₂ + d·n₄.
    for n1 in r.elements() {
        for n2 in r.elements() {
            for n3 in r.elements() {
                for n4 in r.elements() {
                    let dn = r.sub(r.mul(n1, n4), r.mul(n2, n3));
                    let inv = if strict { dn == r.one() } else { r.is_unit(dn) };
                    if !inv {
                        continue;
                    }
                    let killed = ms.iter().all(|m| {
                        let t = r.add(
                            r.add(r.mul(m[0], n1), r.mul(m[1], n3)),
                            r.add(r.mul(m[2], n2), r.mul(m[3], n4)),
                        );
                        t == r.zero()
                    });
                    if killed {
                        return Some(Mat::m2(n1, n2, n3, n4));
                    }
                }
            }
        }
    }
    None
}

fn trace3(r: &FiniteRing, a: &[Elem; 9], n: &[Elem; 9]) -> Elem {
    let mut t = r.zero();
    for i in 0..3 {
        for j in 0..3 {
            t = r.add(t, r.mul(a[3 * i + j], n[3 * j + i]));
        }
    }
    t
}

fn odometer(r: &FiniteRing, v: &mut [Elem]) -> bool {
    let top = r.size() as u32;
    for x in v.iter_mut().rev() {
        x.0 += 1;
        if x.0 < top {
            return true;
        }
        x.0 = 0;
    }
    false
}

/// The 3×3 trace condition for `m` simultaneous matrices, within `budget` nodes.
pub fn wh3(r: &FiniteRing, m: u32, strict: bool, budget: u64) -> FlagResult {
    let n = r.size() as u64;
    let tuples = n.checked_pow(9 * m);
    if tuples.is_none_or(|t| t > budget) {
        return FlagResult::unknown(format!(
            "{} tuples of 3×3 matrices exceed the budget of {budget}",
            if m == 1 { "|R|⁹" } else { "|R|¹⁸" }
        ));
    }
    let mut nodes: u64 = 0;
    let mut mats: Vec<[Elem; 9]> = vec![[r.zero(); 9]; m as usize];
    loop {
        if mats.iter().all(|a| r.is_unimodular(a)) {
            let mut nm = [r.zero(); 9];
            let mut found = false;
            loop {
                nodes += 1;
                if mats.iter().all(|a| trace3(r, a, &nm) == r.zero()) {
                    let dn = det3(r, &Mat::new(3, 3, nm.to_vec()).expect("3×3")).expect("3×3");
                    if (strict && dn == r.one()) || (!strict && r.is_unit(dn)) {
                        found = true;
                        break;
                    }
                }
                if !odometer(r, &mut nm) {
                    break;
                }
            }
            if nodes > budget {
                return FlagResult::unknown(format!("search budget of {budget} nodes exhausted"));
            }
            if !found {
                let shown: Vec<Value> = mats
                    .iter()
                    .map(|a| json!(matrix_json(r, &Mat::new(3, 3, a.to_vec()).expect("3×3"))))
                    .collect();
                return FlagResult::fails(json!(shown));
            }
        }
        let flat: &mut [Elem] = mats.as_flattened_mut();
        if !odometer(r, flat) {
            break;
        }
    }
    FlagResult::holds()
}

/// The set `{(ax + by + cz + dw, xw − yz)}` and its three membership flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllSet {
    pub pairs: Vec<[String; 2]>,
    /// `(1, 0)` is in the set.
    pub det_liftable: bool,
    /// `(0, 1)` is in the set.
    pub strict_trace_instance: bool,
    /// The set meets `{0} × U(R)`.
    pub trace_instance: bool,
    #[serde(skip)]
    pub members: Vec<(Elem, Elem)>,
}

impl EllSet {
    pub fn contains(&self, psi: Elem, delta: Elem) -> bool {
        self.members.binary_search(&(psi, delta)).is_ok()
    }
}

pub fn ell_set(r: &FiniteRing, m: M2) -> Result<EllSet> {
    if !is_unimodular(r, m) {
        return Err(crate::Error::Precondition(format!(
            "{} is not unimodular",
            render_m2(r, m)
        )));
    }
    let [a, b, c, d] = m;
    let n = r.size();
    let mut hit = vec![false; n * n];
    for x in r.elements() {
        for y in r.elements() {
            let s = r.add(r.mul(a, x), r.mul(b, y));
            for z in r.elements() {
                let s2 = r.add(s, r.mul(c, z));
                let yz = r.mul(y, z);
                for w in r.elements() {
                    let psi = r.add(s2, r.mul(d, w));
                    let delta = r.sub(r.mul(x, w), yz);
                    hit[psi.idx() * n + delta.idx()] = true;
                }
            }
        }
    }
    let members: Vec<(Elem, Elem)> = (0..n * n)
        .filter(|&k| hit[k])
        .map(|k| (Elem((k / n) as u32), Elem((k % n) as u32)))
        .collect();
    let (o, z) = (r.one(), r.zero());
    let out = EllSet {
        pairs: members
            .iter()
            .map(|&(p, q)| [r.render(p), r.render(q)])
            .collect(),
        det_liftable: hit[o.idx() * n + z.idx()],
        strict_trace_instance: hit[z.idx() * n + o.idx()],
        trace_instance: r
            .elements()
            .any(|u| r.is_unit(u) && hit[z.idx() * n + u.idx()]),
        members,
    };
    Ok(out)
}

/// First upper-triangular unimodular `[[a, b], [0, c]]` without the property.
pub fn triangular_failure(r: &FiniteRing, p: Property) -> Option<M2> {
    for a in r.elements() {
        for b in r.elements() {
            for c in r.elements() {
                let m = [a, b, r.zero(), c];
                if is_unimodular(r, m) && !p.holds(r, m) {
                    return Some(m);
                }
            }
        }
    }
    None
}

/// First `(a, b, c)` in `Um(R³)` for which `1 − ax − by − cw + ac(xw − yz) = 0`
/// has no solution.  Triples are taken up to a common unit factor when `|R| > 16`.
pub fn weak_equation_failure(r: &FiniteRing) -> Option<[Elem; 3]> {
    let reduce = r.size() > 16;
    let units = r.units().elements;
    for a in r.elements() {
        for b in r.elements() {
            for c in r.elements() {
                if !r.is_unimodular(&[a, b, c]) {
                    continue;
                }
                // The equation is invariant under (a, b, c) ↦ u·(a, b, c).
                if reduce
                    && units
                        .iter()
                        .any(|&u| [r.mul(u, a), r.mul(u, b), r.mul(u, c)] < [a, b, c])
                {
                    continue;
                }
                if triangular_weak_lift(r, a, b, c).is_none() {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// `R/I` as a classifier input; `None` for the zero quotient.
pub fn quotient_ring(r: &Arc<FiniteRing>, ideal: &Ideal) -> Result<Option<Arc<FiniteRing>>> {
    if ideal.len() == r.size() {
        return Ok(None);
    }
    Ok(Some(quotient_by_ideal(r, ideal)?.ring))
}

/// Whether some zero-determinant unimodular matrix fails to be det-liftable modulo
/// its own determinant; used only as a cross-check of the class scan.
pub fn det_lift_by_scan(r: &FiniteRing) -> Option<M2> {
    for a in r.elements() {
        for b in r.elements() {
            for c in r.elements() {
                for d in r.elements() {
                    let m = [a, b, c, d];
                    if is_unimodular(r, m) && det_lift(r, m, true).is_none() {
                        return Some(m);
                    }
                }
            }
        }
    }
    None
}

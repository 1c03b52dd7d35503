use edrlab_core::ring::{make_finite_ring, quotient, FiniteRing};
use edrlab_core::Elem;
use proptest::prelude::*;
use std::sync::Arc;

const SPECS: &[&str] = &[
    "Zmod:12",
    "GF:8",
    "GF:9",
    "Quot:GF:3[x]/(x^3)",
    "Table:builtin:f2xy",
    "Prod:Zmod:4*GF:3",
];

fn rings() -> Vec<Arc<FiniteRing>> {
    SPECS.iter().map(|s| make_finite_ring(s).unwrap()).collect()
}

fn pick(r: &FiniteRing, k: u32) -> Elem {
    Elem(k % r.size() as u32)
}

proptest! {
    #[test]
    fn ring_axioms(i in 0..SPECS.len(), x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let r = &rings()[i];
        let (a, b, c) = (pick(r, x), pick(r, y), pick(r, z));
        prop_assert_eq!(r.add(r.add(a, b), c), r.add(a, r.add(b, c)));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.add(a, r.neg(a)), r.zero());
        prop_assert_eq!(r.mul(a, r.one()), a);
        prop_assert_eq!(r.sub(a, b), r.add(a, r.neg(b)));
    }

    #[test]
    fn units_have_inverses(i in 0..SPECS.len(), x in any::<u32>()) {
        let r = &rings()[i];
        let a = pick(r, x);
        match r.inverse(a) {
            Some(b) => {
                prop_assert!(r.is_unit(a));
                prop_assert_eq!(r.mul(a, b), r.one());
            }
            None => prop_assert!(!r.is_unit(a)),
        }
    }

    #[test]
    fn unimodular_coefficients_certify(i in 0..SPECS.len(), x in any::<u32>(), y in any::<u32>()) {
        let r = &rings()[i];
        let v = [pick(r, x), pick(r, y)];
        match r.unimodular_coefficients(&v) {
            Some(c) => prop_assert_eq!(r.add(r.mul(v[0], c[0]), r.mul(v[1], c[1])), r.one()),
            None => prop_assert!(!r.is_unimodular(&v)),
        }
    }

    #[test]
    fn quotient_projection_is_a_homomorphism(i in 0..SPECS.len(), g in any::<u32>(), x in any::<u32>(), y in any::<u32>()) {
        let r = &rings()[i];
        let gen = pick(r, g);
        let Ok(q) = quotient(r, gen) else {
            // The zero quotient is rejected as a ring.
            prop_assert!(r.is_unit(gen));
            return Ok(());
        };
        let (a, b) = (pick(r, x), pick(r, y));
        let p = |e: Elem| q.projection[e.idx()];
        prop_assert_eq!(p(r.add(a, b)), q.ring.add(p(a), p(b)));
        prop_assert_eq!(p(r.mul(a, b)), q.ring.mul(p(a), p(b)));
        prop_assert_eq!(p(gen), q.ring.zero());
        prop_assert_eq!(q.ring.size() * r.principal_ideal(gen).len(), r.size());
    }

    #[test]
    fn literals_round_trip(i in 0..SPECS.len(), x in any::<u32>()) {
        let r = &rings()[i];
        let a = pick(r, x);
        prop_assert_eq!(r.parse_elem(&r.render(a)).unwrap(), a);
    }
}

#[test]
fn annihilator_and_nilradical_match_definitions() {
    for r in rings() {
        let nil = r.nilradical().unwrap();
        for a in r.elements() {
            let nilpotent = (1..=r.size()).any(|k| {
                let mut p = r.one();
                for _ in 0..k {
                    p = r.mul(p, a);
                }
                p == r.zero()
            });
            assert_eq!(nil.contains(a), nilpotent, "{}", r.spec());
            let ann = r.annihilator(a).unwrap();
            for b in r.elements() {
                assert_eq!(ann.contains(b), r.mul(a, b) == r.zero());
            }
        }
        assert_eq!(r.is_reduced(), nil.len() == 1);
    }
}

use edrlab_core::constructive::lemma1_matrix;
use edrlab_core::lift::{
    completion_by_scan, det, full_completion, non_full, sandwich, simple_completion, Property, M2,
};
use edrlab_core::mat::{det2, det3, enumerate_gl, GlCache, Mat};
use edrlab_core::ring::{make_finite_ring, FiniteRing};
use edrlab_core::Elem;
use proptest::prelude::*;
use std::sync::{Arc, OnceLock};

const SPECS: &[&str] = &["Zmod:6", "Zmod:8", "GF:4", "Table:builtin:f2xy", "Zmod:9"];

struct Fixture {
    ring: Arc<FiniteRing>,
    gl: GlCache,
}

fn fixtures() -> &'static Vec<Fixture> {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        SPECS
            .iter()
            .map(|s| {
                let ring = make_finite_ring(s).unwrap();
                let gl = enumerate_gl(&ring, 2, 1 << 20).unwrap();
                Fixture { ring, gl }
            })
            .collect()
    })
}

fn matrix(r: &FiniteRing, k: [u32; 4]) -> M2 {
    k.map(|x| Elem(x % r.size() as u32))
}

fn invariants(r: &FiniteRing, m: M2) -> [bool; 5] {
    [
        Property::SimplyExtendable.holds(r, m),
        Property::Extendable.holds(r, m),
        Property::DetLiftable.holds(r, m),
        Property::WeaklyDetLiftable.holds(r, m),
        non_full(r, m).is_some(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn properties_are_equivalence_invariant(
        i in 0..SPECS.len(),
        k in any::<[u32; 4]>(),
        p in any::<usize>(),
        q in any::<usize>(),
    ) {
        let f = &fixtures()[i];
        let r = &f.ring;
        let m = matrix(r, k);
        prop_assume!(r.is_unimodular(&m));
        let left = &f.gl.matrices[p % f.gl.len()];
        let right = &f.gl.matrices[q % f.gl.len()];
        let moved = sandwich(r, left, m, right);
        prop_assert_eq!(invariants(r, m), invariants(r, moved));
    }

    #[test]
    fn completions_are_in_sl3(i in 0..SPECS.len(), k in any::<[u32; 4]>()) {
        let r = &fixtures()[i].ring;
        let m = matrix(r, k);
        prop_assume!(r.is_unimodular(&m));
        let simple = simple_completion(r, m).unwrap();
        let full = full_completion(r, m).unwrap();
        for (c, is_simple) in [(&simple, true), (&full, false)] {
            if let Some(a) = c {
                prop_assert_eq!(det3(r.as_ref(), a).unwrap(), r.one());
                prop_assert_eq!([*a.get(0, 0), *a.get(0, 1), *a.get(1, 0), *a.get(1, 1)], m);
                if is_simple {
                    prop_assert_eq!(*a.get(2, 2), r.zero());
                }
            }
        }
        // The row criterion and the direct five-unknown scan agree.
        prop_assert_eq!(simple.is_some(), completion_by_scan(r, m, true).is_some());
        prop_assert_eq!(full.is_some(), completion_by_scan(r, m, false).is_some());
    }

    #[test]
    fn non_full_witness_factors_the_matrix(i in 0..SPECS.len(), k in any::<[u32; 4]>()) {
        let r = &fixtures()[i].ring;
        let m = matrix(r, k);
        if let Some([l, mm, o, q]) = non_full(r, m) {
            prop_assert_eq!(m, [r.mul(l, o), r.mul(l, q), r.mul(mm, o), r.mul(mm, q)]);
            prop_assert_eq!(det(r, m), r.zero());
        }
    }

    #[test]
    fn associate_pairs_give_sl2_matrices(i in 0..SPECS.len(), x in any::<u32>(), w in any::<u32>()) {
        let f = &fixtures()[i];
        let r = &f.ring;
        let d = Elem(x % r.size() as u32);
        let unit = r.units().elements[w as usize % r.unit_count()];
        let e = r.mul(unit, d);
        let l = lemma1_matrix(r, d, e).unwrap();
        prop_assert!(l.verify(r, d, e));
        prop_assert_eq!(det2(r.as_ref(), &l.n).unwrap(), r.one());
        let diag = Mat::m2(d, r.zero(), r.zero(), r.zero());
        let prod = edrlab_core::mat::mul(r.as_ref(), &l.n, &diag).unwrap();
        prop_assert_eq!(*prod.get(0, 0), e);
        prop_assert_eq!(*prod.get(1, 0), r.zero());
    }
}

#[test]
fn non_full_witness_on_zmod6() {
    let r = make_finite_ring("Zmod:6").unwrap();
    let m = [2, 1, 0, 3].map(Elem);
    // det = 6 = 0 in Z/6.
    assert_eq!(det(&r, m), r.zero());
    let w = non_full(&r, m).unwrap();
    assert_eq!(r.render_all(&w), ["1", "3", "2", "1"]);
}

#[test]
fn lemma_example_zmod9() {
    let r = make_finite_ring("Zmod:9").unwrap();
    let (d, e) = (r.parse_elem("3").unwrap(), r.parse_elem("6").unwrap());
    let l = lemma1_matrix(&r, d, e).unwrap();
    assert_eq!(r.render_all(&[l.u, l.v]), ["2", "2"]);
    assert_eq!(
        r.render_all(l.n.entries()),
        ["2", "8", "6", "2"],
        "N = [[2,-1],[-3,2]] in Z/9"
    );
}

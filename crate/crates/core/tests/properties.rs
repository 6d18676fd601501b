//! Randomized invariants of complexes, subdivisions and homology.

use proptest::prelude::*;

use treenest::complex::{barycentric_subdivision, stellar_subdivision};
use treenest::homology::{chain_complex, reduced_betti, reduced_euler_from_betti, DEFAULT_PRIME};
use treenest::{FieldChoice, SimplicialComplex};

fn complex_from_masks(masks: &[u8]) -> SimplicialComplex {
    SimplicialComplex::from_facets(masks.iter().filter(|&&m| m != 0).map(|&m| {
        (0..7)
            .filter(|i| m >> i & 1 == 1)
            .map(|i| format!("v{i}"))
            .collect::<Vec<_>>()
    }))
}

fn complexes() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(1u8..128, 1..7).prop_map(|m| complex_from_masks(&m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_characteristic_matches_betti(k in complexes()) {
        let betti = reduced_betti(&k, FieldChoice::Rational).unwrap();
        prop_assert_eq!(k.euler_characteristic() - 1, reduced_euler_from_betti(&betti));
    }

    #[test]
    fn fields_agree(k in complexes()) {
        prop_assert_eq!(
            reduced_betti(&k, FieldChoice::Rational).unwrap(),
            reduced_betti(&k, FieldChoice::Prime(DEFAULT_PRIME)).unwrap()
        );
    }

    #[test]
    fn boundaries_compose_to_zero(k in complexes()) {
        let cc = chain_complex(&k);
        for d in 1..cc.boundaries.len() {
            let lower = cc.boundaries[d - 1].to_dense();
            for col in &cc.boundaries[d].columns {
                for row in &lower {
                    let s: i64 = col.iter().map(|&(i, v)| row[i] * v).sum();
                    prop_assert_eq!(s, 0);
                }
            }
        }
    }

    #[test]
    fn stellar_subdivision_preserves_homology(k in complexes(), pick in any::<prop::sample::Index>(), size in 2usize..4) {
        let facet = &k.facets()[pick.index(k.num_facets())];
        prop_assume!(facet.len() >= 2);
        let face: Vec<String> = k.labels_of(&facet[..size.min(facet.len())]);
        let sub = stellar_subdivision(&k, &face, "new").unwrap();
        prop_assert_eq!(
            reduced_betti(&k, FieldChoice::Rational).unwrap(),
            reduced_betti(&sub, FieldChoice::Rational).unwrap()
        );
        prop_assert!(sub.contains_face_labels(&["new"]));
        prop_assert!(!sub.contains_face_labels(&face));
    }

    #[test]
    fn barycentric_subdivision_preserves_homology(k in complexes()) {
        prop_assert_eq!(
            reduced_betti(&k, FieldChoice::Rational).unwrap(),
            reduced_betti(&barycentric_subdivision(&k), FieldChoice::Rational).unwrap()
        );
    }

    #[test]
    fn json_round_trip(k in complexes()) {
        let text = serde_json::to_string(&k).unwrap();
        let back: SimplicialComplex = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, k);
    }
}

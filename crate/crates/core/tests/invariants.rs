//! Property checks of the code algebra against explicit enumeration.

use std::sync::{Arc, OnceLock};

use chaincodes::ambient::{Ambient, MPoly};
use chaincodes::codes::SemisimpleCode;
use chaincodes::decompose::Decomposition;
use chaincodes::distance::{distance_bound, min_distance};
use chaincodes::duality::{dual, is_selfdual};
use chaincodes::oracle::{distance_bruteforce, dual_bruteforce, ideal_span};
use chaincodes::ring::{ChainRing, ChainRingDesc};
use num_bigint::BigUint;
use proptest::prelude::*;

fn build(desc: ChainRingDesc, moduli: &[&str]) -> Arc<Decomposition> {
    let ring = ChainRing::new(&desc).unwrap();
    let m: Vec<String> = moduli.iter().map(|s| s.to_string()).collect();
    Arc::new(Decomposition::new(Ambient::parse(ring, &m, true).unwrap(), 0).unwrap())
}

fn ambients() -> &'static [Arc<Decomposition>] {
    static CELL: OnceLock<Vec<Arc<Decomposition>>> = OnceLock::new();
    CELL.get_or_init(|| {
        vec![
            build(ChainRingDesc::galois(2, 2, 1), &["x^7-1"]),
            build(ChainRingDesc::galois(2, 2, 1), &["x^3-1", "y^3-1"]),
            build(ChainRingDesc::galois(3, 2, 1), &["x^2-1", "y^2-1"]),
            build(ChainRingDesc::truncated(2, 1, 3), &["x^3-1"]),
            build(ChainRingDesc::galois(2, 3, 1), &["x^5-1"]),
        ]
    })
}

fn element(amb: &Ambient, digits: &[u64]) -> MPoly {
    let ring = amb.ring();
    let size = ring.size_u64().unwrap();
    digits.iter().enumerate().fold(amb.zero(), |acc, (i, &d)| {
        amb.add(&acc, &amb.scale(&ring.element_at(d % size), &amb.unit_vector(i)))
    })
}

fn arb_ambient() -> impl Strategy<Value = Arc<Decomposition>> {
    (0..ambients().len()).prop_map(|i| ambients()[i].clone())
}

fn arb_code() -> impl Strategy<Value = SemisimpleCode> {
    arb_ambient().prop_flat_map(|dec| {
        let t = dec.ambient().ring().t();
        let nc = dec.num_classes();
        proptest::collection::vec(0..=t, nc)
            .prop_map(move |j| SemisimpleCode::from_exponents(&dec, j).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_ideal_matches_span(
        dec in arb_ambient(),
        raw in proptest::collection::vec(proptest::collection::vec(any::<u64>(), 9), 1..3),
    ) {
        let amb = dec.ambient();
        let gens: Vec<MPoly> = raw.iter().map(|d| element(amb, &d[..amb.n()])).collect();
        let k = SemisimpleCode::from_generators(&dec, &gens).unwrap();
        let span = ideal_span(amb, &gens);
        prop_assert_eq!(k.cardinality(), span.cardinality(amb.ring()));
        prop_assert_eq!(ideal_span(amb, &[k.generator()]), span);
        for g in &gens {
            prop_assert!(k.contains(g));
        }
    }

    #[test]
    fn canonical_generator_round_trips(k in arb_code()) {
        let back = SemisimpleCode::from_generators(k.decomposition(), &[k.generator()]).unwrap();
        prop_assert_eq!(back, k);
    }

    #[test]
    fn dual_is_involutive_and_sizes_multiply(k in arb_code()) {
        let amb = k.ambient();
        let d = dual(&k).unwrap();
        prop_assert_eq!(dual(&d).unwrap(), k.clone());
        let total: BigUint = amb.ring().size().pow(amb.n() as u32);
        prop_assert_eq!(k.cardinality() * d.cardinality(), total);
        let span = ideal_span(amb, &[k.generator()]);
        prop_assert_eq!(dual_bruteforce(amb, &span, 1 << 18).unwrap(), ideal_span(amb, &[d.generator()]));
        prop_assert_eq!(is_selfdual(&k).unwrap(), d == k);
    }

    #[test]
    fn lattice_operations_follow_exponents(a in arb_code(), b in arb_code()) {
        prop_assume!(Arc::ptr_eq(a.decomposition(), b.decomposition()));
        let amb = a.ambient();
        let ring = amb.ring();
        let sa = ideal_span(amb, &[a.generator()]);
        let sb = ideal_span(amb, &[b.generator()]);
        prop_assert_eq!(ideal_span(amb, &[a.sum(&b).generator()]), sa.sum(ring, &sb));
        let meet = a.intersect(&b);
        prop_assert!(a.contains(&meet.generator()) && b.contains(&meet.generator()));
        prop_assert_eq!(meet.cardinality() * a.sum(&b).cardinality(), a.cardinality() * b.cardinality());
    }

    #[test]
    fn distance_agrees_with_enumeration(k in arb_code()) {
        prop_assume!(!k.is_zero());
        let amb = k.ambient();
        let d = min_distance(&k, 1 << 20).unwrap();
        let bf = distance_bruteforce(amb.ring(), &ideal_span(amb, &[k.generator()]), 1 << 20).unwrap();
        prop_assert_eq!(d, bf);
        prop_assert!(distance_bound(&k, 1 << 20).unwrap() <= d);
    }
}

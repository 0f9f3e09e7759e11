use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quartic_euclid::admissible::{
    brute_force_surjectivity, check_conditions, construct_witness, search_pair, search_pair_with_twists, theorem_a, verify_certificate,
    CertificateJson, CheckOutcome, Conclusion, SearchStrategy, DEFAULT_ENUMERATION_CAP,
};
use quartic_euclid::field::registry_entry;
use quartic_euclid::ntheory::ResidueClass;
use quartic_euclid::residue::{degree_one_primes_above, reduce_mod_p2};
use quartic_euclid::units::unit_data;
use quartic_euclid::Error;

const SMALL: [&str; 6] = ["K_1", "K_2", "K_9", "K_19", "5", "29"];

#[test]
fn certificates_on_small_primes_are_surjective() {
    for label in SMALL {
        let u = unit_data(&registry_entry(label).unwrap().spec);
        let (cert, _) = search_pair_with_twists(&u, 200, SearchStrategy::default()).unwrap();
        let u = cert.units.clone();
        assert!(
            brute_force_surjectivity(&u, &cert.p1, &cert.p2, 2, 2, 5 * DEFAULT_ENUMERATION_CAP).unwrap(),
            "{label}: {:?}",
            cert.pair()
        );
        assert!(brute_force_surjectivity(&u, &cert.p1, &cert.p2, 1, 1, DEFAULT_ENUMERATION_CAP).unwrap());
    }
}

#[test]
fn search_is_deterministic_and_round_trips() {
    for label in SMALL {
        let u = unit_data(&registry_entry(label).unwrap().spec);
        for strategy in [SearchStrategy::SmallestP2First, SearchStrategy::SmallestP1First] {
            let (a, _) = search_pair_with_twists(&u, 300, strategy).unwrap();
            let (b, _) = search_pair_with_twists(&u, 300, strategy).unwrap();
            assert_eq!(a, b);
            let text = serde_json::to_string(&a.to_json(Some(label))).unwrap();
            assert_eq!(text, serde_json::to_string(&b.to_json(Some(label))).unwrap());
            let back: CertificateJson = serde_json::from_str(&text).unwrap();
            let again = verify_certificate(&back, false, 0).unwrap().certificate;
            assert_eq!(again, a);
            assert_eq!((again.ord_eps_p1, again.ord_eta_p1, again.ord_eps_p2), (a.ord_eps_p1, a.ord_eta_p1, a.ord_eps_p2));
        }
    }
}

#[test]
fn smallest_p2_strategy_really_minimizes_p2() {
    let u = unit_data(&registry_entry("K_1").unwrap().spec);
    let cert = search_pair(&u, 300, SearchStrategy::SmallestP2First).unwrap();
    let (_, p2) = cert.pair();
    for q2 in quartic_euclid::ntheory::odd_primes_up_to(p2 - 1) {
        for q1 in quartic_euclid::ntheory::odd_primes_up_to(300) {
            let (Ok(a1), Ok(a2)) = (degree_one_primes_above(u.eta.field(), q1), degree_one_primes_above(u.eta.field(), q2)) else {
                continue;
            };
            for a in &a1 {
                for b in &a2 {
                    if q1 != q2 {
                        assert!(matches!(check_conditions(&u, a, b).unwrap(), CheckOutcome::Failed(_)));
                    }
                }
            }
        }
    }
}

#[test]
fn witnesses_hit_random_targets() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for label in ["K_1", "16"] {
        let u = unit_data(&registry_entry(label).unwrap().spec);
        let (cert, _) = search_pair_with_twists(&u, 200, SearchStrategy::default()).unwrap();
        let u = cert.units.clone();
        let (p1, p2) = cert.pair();
        for _ in 0..100 {
            let x = loop {
                let v = rng.gen_range(1..p1 * p1);
                if v % p1 != 0 {
                    break v;
                }
            };
            let y = loop {
                let v = rng.gen_range(1..p2 * p2);
                if v % p2 != 0 {
                    break v;
                }
            };
            let w = construct_witness(&cert, ResidueClass::new(x as i128, p1 * p1), ResidueClass::new(y as i128, p2 * p2))
                .unwrap();
            let eta1 = reduce_mod_p2(&u.eta, &cert.p1).pow(w.z.eta_exp);
            let eta2 = reduce_mod_p2(&u.eta, &cert.p2).pow(w.z.eta_exp);
            let e1: u64 = (&w.z.eps_exp % cert.p1.unit_group_order()).try_into().unwrap();
            let e2: u64 = (&w.z.eps_exp % cert.p2.unit_group_order()).try_into().unwrap();
            assert_eq!(eta1.mul(reduce_mod_p2(&u.epsilon, &cert.p1).pow(e1)).value, x);
            assert_eq!(eta2.mul(reduce_mod_p2(&u.epsilon, &cert.p2).pow(e2)).value, y);
        }
    }
}

#[test]
fn theorem_a_needs_its_hypotheses() {
    assert_eq!(theorem_a(1, 2, true).unwrap(), Conclusion::Euclidean { r: 1, s: 2 });
    assert_eq!(theorem_a(1, 2, false).unwrap_err(), Error::MissingAssumption);
    assert!(matches!(theorem_a(1, 1, true), Err(Error::RankTooSmall { .. })));
}

#[test]
fn same_prime_is_rejected() {
    let u = unit_data(&registry_entry("K_1").unwrap().spec);
    let above = degree_one_primes_above(u.eta.field(), 29).unwrap();
    assert!(matches!(check_conditions(&u, &above[0], &above[1]), Err(Error::SamePrime(_))));
}

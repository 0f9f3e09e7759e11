use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quartic_euclid::admissible::find_prime_element;
use quartic_euclid::field::{registry, registry_entry};
use quartic_euclid::ntheory::{odd_primes_up_to, pow_mod};
use quartic_euclid::residue::{
    degree_one_primes_above, reduce_mod_p2, reduce_mod_power, reduce_via_power_basis, unit_order_mod_p2, DegreeOnePrime,
};
use quartic_euclid::units::unit_data;
use quartic_euclid::{Error, FieldSpec, NFElement};

fn split_primes(k: &Arc<FieldSpec>, bound: u64) -> Vec<DegreeOnePrime> {
    odd_primes_up_to(bound)
        .into_iter()
        .filter_map(|p| degree_one_primes_above(k, p).ok())
        .flatten()
        .collect()
}

fn random_element(rng: &mut ChaCha8Rng, k: &Arc<FieldSpec>) -> NFElement {
    NFElement::from_i64(k, [0; 4].map(|_| rng.gen_range(-10_000..=10_000)))
}

#[test]
fn reduction_is_a_ring_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for e in registry() {
        let k = &e.spec;
        for prime in split_primes(k, 120) {
            let m = prime.p_squared();
            assert!(reduce_mod_p2(&NFElement::one(k), &prime).is_one());
            for _ in 0..20 {
                let (x, y) = (random_element(&mut rng, k), random_element(&mut rng, k));
                let (rx, ry) = (reduce_mod_p2(&x, &prime).value, reduce_mod_p2(&y, &prime).value);
                assert_eq!(reduce_mod_p2(&(&x + &y), &prime).value, (rx + ry) % m, "{}", e.label);
                assert_eq!(reduce_mod_p2(&(&x * &y), &prime).value, rx * ry % m, "{}", e.label);
                if let Some(via) = reduce_via_power_basis(&x, &prime) {
                    assert_eq!(via.value, rx);
                }
                assert_eq!(reduce_mod_power(&x, &prime, 1).value, rx % prime.p());
            }
        }
    }
}

#[test]
fn kernel_of_reduction_is_the_square_of_the_prime() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for label in ["K_1", "K_8", "K_14", "K_20", "5", "16", "61"] {
        let k = registry_entry(label).unwrap().spec;
        for prime in split_primes(&k, 60) {
            let pi = find_prime_element(&prime, 50).unwrap();
            assert_eq!(pi.norm().abs(), BigInt::from(prime.p()));
            assert_eq!(reduce_mod_power(&pi, &prime, 1).value, 0);
            assert_ne!(reduce_mod_p2(&pi, &prime).value, 0, "{label}: generator lies in pi^2");
            let pi2 = &pi * &pi;
            for _ in 0..20 {
                let x = random_element(&mut rng, &k);
                assert_eq!(reduce_mod_p2(&(&x * &pi2), &prime).value, 0);
            }
            assert_eq!(reduce_mod_p2(&NFElement::from_int(&k, prime.p() as i64), &prime).value % prime.p(), 0);
        }
    }
}

#[test]
fn unit_orders_divide_the_group_order() {
    for e in registry() {
        let u = unit_data(&e.spec);
        let minus_one = NFElement::from_int(&e.spec, -1);
        for prime in split_primes(&e.spec, 150) {
            let group = prime.unit_group_order();
            for a in 0..u.g {
                for b in 0..4 {
                    let x = &u.eta.pow(a) * &u.epsilon.pow(b);
                    let r = reduce_mod_p2(&x, &prime);
                    assert_eq!(pow_mod(r.value, group, prime.p_squared()), 1);
                    assert_eq!(group % unit_order_mod_p2(&x, &prime).unwrap(), 0);
                }
            }
            assert_eq!(unit_order_mod_p2(&minus_one, &prime).unwrap(), 2, "{}", e.label);
        }
    }
}

#[test]
fn conjugates_are_distinct_and_stable() {
    for e in registry() {
        for p in odd_primes_up_to(100) {
            match degree_one_primes_above(&e.spec, p) {
                Ok(primes) => {
                    assert!(primes.is_empty() || primes.len() == 4, "{} at {p}", e.label);
                    for (i, a) in primes.iter().enumerate() {
                        assert_eq!(a.conjugate_index(), i);
                        assert!(primes[i + 1..].iter().all(|b| b.basis_images() != a.basis_images()));
                    }
                    assert_eq!(degree_one_primes_above(&e.spec, p).unwrap(), primes);
                }
                Err(Error::Ramified { .. }) => assert_eq!(e.spec.discriminant() % BigInt::from(p), BigInt::from(0)),
                Err(other) => panic!("{}: {other}", e.label),
            }
        }
    }
}

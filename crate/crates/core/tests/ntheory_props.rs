use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quartic_euclid::ntheory::{
    continued_fraction_fundamental_unit, factorize, hensel_lift, is_prime, is_squarefree, mult_order,
    odd_primes_up_to, poly_roots_mod_p, pow_mod, ResidueClass,
};
use quartic_euclid::poly::IntPoly;

#[test]
fn primality_agrees_with_trial_division() {
    for n in 0u64..50_000 {
        let trial = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        assert_eq!(is_prime(n), trial, "n = {n}");
    }
}

#[test]
fn hensel_lifts_of_random_simple_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let primes = odd_primes_up_to(300);
    let mut done = 0;
    while done < 1000 {
        let deg = rng.gen_range(2..=4);
        let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.gen_range(-50..=50)).collect();
        coeffs.push(1);
        let f = IntPoly::from_i64(&coeffs);
        let p = primes[rng.gen_range(0..primes.len())];
        let df = f.derivative();
        for c in poly_roots_mod_p(&f, p) {
            if df.eval_mod(c.value, p) == 0 {
                assert!(hensel_lift(&f, c).is_err());
                continue;
            }
            let lifted = hensel_lift(&f, c).unwrap();
            assert_eq!(lifted.modulus, p * p);
            assert_eq!(lifted.value % p, c.value);
            assert_eq!(f.eval_mod(lifted.value, p * p), 0, "f = {f}, p = {p}, c = {}", c.value);
            done += 1;
        }
    }
}

fn check_order(u: u64, m: u64, group: u64) {
    let ord = mult_order(ResidueClass::new(u as i128, m), group).unwrap();
    assert_eq!(group % ord, 0);
    assert_eq!(pow_mod(u, ord, m), 1 % m);
    for (q, _) in factorize(ord) {
        assert_ne!(pow_mod(u, ord / q, m), 1, "u = {u}, m = {m}, order = {ord}");
    }
}

fn primes_below(n: u64) -> impl Strategy<Value = u64> {
    prop::sample::select(odd_primes_up_to(n))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn order_properties_mod_p(p in primes_below(5000), u in 1u64..5000) {
        prop_assume!(u % p != 0);
        check_order(u % p, p, p - 1);
    }

    #[test]
    fn order_properties_mod_p_squared(p in primes_below(3000), u in 1u64..10_000_000) {
        prop_assume!(u % p != 0);
        check_order(u % (p * p), p * p, p * (p - 1));
    }
}

#[test]
fn order_rejects_non_units() {
    assert!(mult_order(ResidueClass::new(10, 25), 20).is_err());
}

#[test]
fn fundamental_units_are_minimal() {
    for d in (2..=50i64).filter(|&d| is_squarefree(d)) {
        let unit = continued_fraction_fundamental_unit(d);
        let (u, v) = unit.sqrt_form();
        let scale = if unit.half_integral() { 4 } else { 1 };
        let norm = &u * &u - BigInt::from(d) * &v * &v;
        assert!(norm == BigInt::from(scale) || norm == BigInt::from(-scale), "d = {d}");
        assert_eq!(norm.sign() == num_bigint::Sign::Minus, unit.norm == -1);
        let v: u64 = v.try_into().unwrap();
        for y in 1..v {
            for target in [d as i128 * (y * y) as i128 + scale as i128, d as i128 * (y * y) as i128 - scale as i128] {
                let r = (target as f64).sqrt().round() as i128;
                assert!((r - 1..=r + 1).all(|x| x * x != target), "d = {d}: smaller unit at y = {y}");
            }
        }
    }
}

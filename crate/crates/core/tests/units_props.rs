use num_bigint::BigInt;

use quartic_euclid::field::registry;
use quartic_euclid::units::{torsion_order, unit_data, verify_unit_data};
use quartic_euclid::NFElement;

#[test]
fn units_have_the_stated_invariants() {
    for e in registry() {
        let u = unit_data(&e.spec);
        assert_eq!(u.g, e.expected_g, "{}", e.label);
        assert!(verify_unit_data(&u), "{}", e.label);
        assert!(u.eta.pow(u.g).is_one(), "{}", e.label);
        assert_eq!(torsion_order(&u.eta), Some(u.g));
        let n = u.epsilon.norm();
        assert!(n == BigInt::from(1) || n == BigInt::from(-1), "{}", e.label);
        let mut power = NFElement::one(&e.spec);
        for k in 1..=240 {
            power = &power * &u.epsilon;
            assert!(!power.is_one(), "{}: epsilon^{k} = 1", e.label);
        }
        assert!(u.epsilon.inverse_unit().is_ok());
    }
}

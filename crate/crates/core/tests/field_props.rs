use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use quartic_euclid::field::{registry, FieldRegistryEntry};
use quartic_euclid::ntheory::{quadratic_discriminant, squarefree_part};
use quartic_euclid::{FieldKind, NFElement};

fn entries() -> Vec<FieldRegistryEntry> {
    registry()
}

#[test]
fn discriminants_follow_the_formulas() {
    for e in entries() {
        let expected = match e.spec.kind() {
            FieldKind::Biquadratic { m, n } => {
                BigInt::from(quadratic_discriminant(m))
                    * quadratic_discriminant(n)
                    * quadratic_discriminant(squarefree_part(m * n))
            }
            FieldKind::CyclicQuartic { conductor } => {
                BigInt::from(conductor * conductor) * quadratic_discriminant(e.spec.real_subfield_d())
            }
        };
        assert_eq!(e.spec.discriminant(), &expected, "{}", e.label);
    }
}

#[test]
fn every_basis_passes_the_closure_check() {
    for e in entries() {
        assert!(e.spec.integral_basis_closure_check(), "{}", e.label);
    }
}

#[test]
fn theta_is_a_root_of_its_minimal_polynomial() {
    for e in entries() {
        let theta = NFElement::theta(&e.spec);
        let mut acc = NFElement::zero(&e.spec);
        for c in e.spec.theta_minpoly().coeffs().iter().rev() {
            acc = &(&acc * &theta) + &NFElement::one(&e.spec).scale(c);
        }
        assert!(acc.is_zero(), "{}", e.label);
        let power = theta.to_power_basis();
        assert!(power[1].is_one() && power.iter().enumerate().all(|(i, c)| i == 1 || c.is_zero()));
    }
}

#[test]
fn real_subfield_square_root_squares_to_d() {
    for e in entries() {
        let d = e.spec.real_subfield_d();
        let root = quartic_euclid::units::infinite_order_unit(&e.spec);
        assert!(root.in_real_subfield(), "{}", e.label);
        let s = NFElement::from_int(&e.spec, d).sqrt().expect("sqrt(d) lies in the field");
        assert_eq!(&s * &s, NFElement::from_int(&e.spec, d), "{}", e.label);
        assert!(s.in_real_subfield());
        let rational: Vec<BigRational> = s.to_power_basis();
        assert!(!rational.iter().skip(1).all(Zero::is_zero));
    }
}

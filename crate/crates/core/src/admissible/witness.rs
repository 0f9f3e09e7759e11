use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::AdmissibleCertificate;
use crate::element::NFElement;
use crate::error::{Error, Result};
use crate::ntheory::{discrete_log, gcd, inv_mod, pow_mod, ResidueClass};
use crate::residue::{reduce_mod_p2, DegreeOnePrime};
use crate::units::UnitData;

/// The unit `eta^eta_exp * epsilon^eps_exp`. Witness exponents are far too
/// large to expand `z` into coordinates, so it is kept in this form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitWord {
    pub eta_exp: u64,
    pub eps_exp: BigUint,
}

impl UnitWord {
    /// Image in `O_K / pi^2` from the reductions of `eta` and `epsilon`.
    pub fn reduce(&self, units: &UnitData, prime: &DegreeOnePrime) -> ResidueClass {
        let m = prime.p_squared();
        let eta = reduce_mod_p2(&units.eta, prime);
        let eps = reduce_mod_p2(&units.epsilon, prime);
        let order = BigUint::from(prime.unit_group_order());
        let e = (&self.eps_exp % &order).to_u64().expect("reduced exponent fits");
        let value = crate::ntheory::mul_mod(eta.pow(self.eta_exp).value, pow_mod(eps.value, e, m), m);
        ResidueClass { value, modulus: m }
    }

    /// Exact element, when the exponent is small enough to expand.
    pub fn to_element(&self, units: &UnitData, max_exp: u64) -> Option<NFElement> {
        let e = self.eps_exp.to_u64().filter(|&e| e <= max_exp)?;
        Some(&units.eta.pow(self.eta_exp) * &units.epsilon.pow(e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessResult {
    /// `alpha = eta beta^k epsilon` modulo `pi_1^2` and `pi_2^2`.
    pub alpha: (ResidueClass, ResidueClass),
    /// `beta = epsilon^(p1 (p1 - 1) / g)` modulo `pi_1^2` and `pi_2^2`.
    pub beta: (ResidueClass, ResidueClass),
    pub k: u64,
    pub e: u64,
    pub f_exp: u64,
    /// `z = alpha^e beta^f`.
    pub z: UnitWord,
}

/// A unit congruent to `x` modulo `pi_1^2` and to `y` modulo `pi_2^2`.
pub fn construct_witness(cert: &AdmissibleCertificate, x: ResidueClass, y: ResidueClass) -> Result<WitnessResult> {
    let units = &cert.units;
    let (m1, m2) = (cert.p1.p_squared(), cert.p2.p_squared());
    let (q1, q2) = (cert.p1.unit_group_order(), cert.p2.unit_group_order());
    if x.modulus != m1 || gcd(x.value, cert.p1.p()) != 1 {
        return Err(Error::NotCoprime { value: x.value, p: cert.p1.p() });
    }
    if y.modulus != m2 || gcd(y.value, cert.p2.p()) != 1 {
        return Err(Error::NotCoprime { value: y.value, p: cert.p2.p() });
    }
    let n1 = cert.n1();
    let eta = (reduce_mod_p2(&units.eta, &cert.p1), reduce_mod_p2(&units.eta, &cert.p2));
    let eps = (reduce_mod_p2(&units.epsilon, &cert.p1), reduce_mod_p2(&units.epsilon, &cert.p2));
    let beta = (eps.0.pow(n1), eps.1.pow(n1));

    // beta^k (eta eps) = 1 mod pi_2^2
    let eta_eps2 = eta.1.mul(eps.1);
    let target = inv_mod(eta_eps2.value, m2).ok_or(Error::NotGenerator("eta * epsilon"))?;
    let k = discrete_log(beta.1.value, target, m2, q2).ok_or(Error::NotGenerator("beta"))?;

    let alpha = (eta.0.mul(beta.0.pow(k)).mul(eps.0), eta.1.mul(beta.1.pow(k)).mul(eps.1));
    debug_assert!(alpha.1.is_one());
    let e = discrete_log(alpha.0.value, x.value, m1, q1).ok_or(Error::NotGenerator("alpha"))?;
    let f_exp = discrete_log(beta.1.value, y.value, m2, q2).ok_or(Error::NotGenerator("beta"))?;

    // alpha^e beta^f = eta^e epsilon^(e + n1 (k e + f))
    let eps_exp = BigUint::from(e) + BigUint::from(n1) * (BigUint::from(k) * e + f_exp);
    let z = UnitWord { eta_exp: e % units.g, eps_exp };
    if z.reduce(units, &cert.p1) != x || z.reduce(units, &cert.p2) != y {
        return Err(Error::NotGenerator("alpha"));
    }
    Ok(WitnessResult { alpha, beta, k, e, f_exp, z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::tests::worked_example_units;
    use crate::admissible::{search_pair, SearchStrategy};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_targets() {
        let u = worked_example_units();
        let cert = search_pair(&u, 200, SearchStrategy::default()).unwrap();
        let (m1, m2) = (cert.p1.p_squared(), cert.p2.p_squared());
        let w = construct_witness(&cert, ResidueClass::new(1, m1), ResidueClass::new(1, m2)).unwrap();
        assert_eq!((w.e, w.f_exp), (0, 0));
        assert!(w.z.to_element(&u, 0).unwrap().is_one());
        let w1 = construct_witness(&cert, w.alpha.0, w.beta.1).unwrap();
        assert_eq!((w1.e, w1.f_exp), (1, 1));
        assert!(construct_witness(&cert, ResidueClass::new(0, m1), ResidueClass::new(1, m2)).is_err());
    }

    #[test]
    fn random_targets() {
        let u = worked_example_units();
        let cert = search_pair(&u, 200, SearchStrategy::default()).unwrap();
        let (p1, p2) = cert.pair();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
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
            assert_eq!(w.z.reduce(&u, &cert.p1).value, x);
            assert_eq!(w.z.reduce(&u, &cert.p2).value, y);
        }
    }
}

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::{certificate_from, evaluate, AdmissibleCertificate, PrimeOrders, SearchDiagnostics};
use crate::error::{Error, Result};
use crate::ntheory::{mul_mod, odd_primes_up_to};
use crate::residue::{degree_one_primes_above, reduce_mod_power, DegreeOnePrime};
use crate::units::UnitData;

/// Default limit on the number of group elements enumerated by
/// [`brute_force_surjectivity`].
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Ascending `p2`, then ascending `p1`, then conjugate indices.
    #[default]
    SmallestP2First,
    /// Ascending `p1`, then ascending `p2`, then conjugate indices.
    SmallestP1First,
}

/// Orders at every degree-one prime below the bound, grouped by rational
/// prime in ascending order. Primes are processed in parallel.
pub(crate) fn prime_table(units: &UnitData, bound: u64) -> Result<(Vec<Vec<PrimeOrders>>, SearchDiagnostics)> {
    let spec = units.eta.field();
    let candidates: Vec<u64> = odd_primes_up_to(bound)
        .into_iter()
        .filter(|&p| !(spec.discriminant() % BigInt::from(p)).is_zero())
        .collect();
    let rows: Vec<Vec<PrimeOrders>> = candidates
        .par_iter()
        .map(|&p| {
            degree_one_primes_above(spec, p)?
                .into_iter()
                .map(|pr| PrimeOrders::new(units, pr))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let diag = SearchDiagnostics {
        prime_bound: bound,
        primes_considered: candidates.len() as u64,
        split_primes: rows.iter().filter(|r| !r.is_empty()).count() as u64,
        ..Default::default()
    };
    Ok((rows.into_iter().filter(|r| !r.is_empty()).collect(), diag))
}

/// The first pair passing all five conditions under `strategy`, over odd
/// unramified primes up to `prime_bound`.
pub fn search_pair(units: &UnitData, prime_bound: u64, strategy: SearchStrategy) -> Result<AdmissibleCertificate> {
    let (rows, mut diag) = prime_table(units, prime_bound)?;
    let g = units.g;
    let try_pair = |a: &PrimeOrders, b: &PrimeOrders, diag: &mut SearchDiagnostics| {
        if a.prime.p() == b.prime.p() {
            return None;
        }
        diag.pairs_tested += 1;
        match evaluate(g, a, b).1 {
            None => Some(certificate_from(units, a, b)),
            Some((c, _)) => {
                diag.failed[c as usize - 1] += 1;
                None
            }
        }
    };
    for outer in &rows {
        for inner in &rows {
            for x in outer {
                for y in inner {
                    let (a, b) = match strategy {
                        SearchStrategy::SmallestP2First => (y, x),
                        SearchStrategy::SmallestP1First => (x, y),
                    };
                    if let Some(cert) = try_pair(a, b, &mut diag) {
                        return Ok(cert);
                    }
                }
            }
        }
    }
    Err(Error::SearchExhausted(diag))
}

/// [`search_pair`] for `epsilon * eta^j`, `j = 0, 1, ..., g - 1` in turn,
/// returning the first certificate found together with `j`. Diagnostics of an
/// exhausted search are summed over all twists.
pub fn search_pair_with_twists(
    units: &UnitData,
    prime_bound: u64,
    strategy: SearchStrategy,
) -> Result<(AdmissibleCertificate, u64)> {
    let mut total = SearchDiagnostics::default();
    for j in 0..units.g {
        let twisted = if j == 0 { units.clone() } else { units.with_torsion_twist(j) };
        match search_pair(&twisted, prime_bound, strategy) {
            Ok(cert) => return Ok((cert, j)),
            Err(Error::SearchExhausted(d)) => {
                total.prime_bound = d.prime_bound;
                total.primes_considered = d.primes_considered;
                total.split_primes = d.split_primes;
                total.pairs_tested += d.pairs_tested;
                for (t, f) in total.failed.iter_mut().zip(d.failed) {
                    *t += f;
                }
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::SearchExhausted(total))
}

fn euler_phi_prime_power(p: u64, a: u32) -> u64 {
    if a == 0 {
        1
    } else {
        p.pow(a - 1) * (p - 1)
    }
}

/// Whether the images of `eta` and `epsilon` generate
/// `(O_K / pi_1^a1)^x x (O_K / pi_2^a2)^x`, by enumerating the generated
/// subgroup element by element. Exponents are at most 2.
pub fn brute_force_surjectivity(
    units: &UnitData,
    p1: &DegreeOnePrime,
    p2: &DegreeOnePrime,
    a1: u32,
    a2: u32,
    cap: u128,
) -> Result<bool> {
    let m1 = p1.p().pow(a1);
    let m2 = p2.p().pow(a2);
    let target = euler_phi_prime_power(p1.p(), a1) as u128 * euler_phi_prime_power(p2.p(), a2) as u128;
    if target > cap {
        return Err(Error::CapExceeded { size: target, cap });
    }
    let gens: Vec<(u64, u64)> = [&units.eta, &units.epsilon]
        .iter()
        .map(|x| (reduce_mod_power(x, p1, a1).value, reduce_mod_power(x, p2, a2).value))
        .collect();
    let index = |(x, y): (u64, u64)| (x * m2 + y) as usize;
    let mut seen = vec![false; (m1 * m2) as usize];
    let start = (1 % m1, 1 % m2);
    seen[index(start)] = true;
    let mut stack = vec![start];
    let mut count: u128 = 1;
    while let Some((x, y)) = stack.pop() {
        for &(gx, gy) in &gens {
            let next = (mul_mod(x, gx, m1), mul_mod(y, gy, m2));
            if !seen[index(next)] {
                seen[index(next)] = true;
                count += 1;
                stack.push(next);
            }
        }
    }
    Ok(count == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::tests::worked_example_units;
    use crate::element::NFElement;
    use crate::field::registry_entry;
    use crate::units::unit_data;

    #[test]
    fn worked_example_search() {
        let u = worked_example_units();
        let cert = search_pair(&u, 200, SearchStrategy::SmallestP2First).unwrap();
        assert!(cert.p1.p() <= 200);
        let again = search_pair(&u, 200, SearchStrategy::SmallestP2First).unwrap();
        assert_eq!(cert, again);
    }

    #[test]
    fn first_table_field() {
        let e = registry_entry("K_1").unwrap();
        let u = unit_data(&e.spec);
        assert!(search_pair(&u, 100, SearchStrategy::SmallestP2First).is_ok());
        assert!(search_pair(&u, 100, SearchStrategy::SmallestP1First).is_ok());
        assert!(matches!(search_pair(&u, 3, SearchStrategy::default()), Err(Error::SearchExhausted(_))));
    }

    #[test]
    fn twists_rescue_conductor_five() {
        let e = registry_entry("5").unwrap();
        let u = unit_data(&e.spec);
        assert!(matches!(search_pair(&u, 50, SearchStrategy::default()), Err(Error::SearchExhausted(_))));
        let (cert, j) = search_pair_with_twists(&u, 50, SearchStrategy::default()).unwrap();
        assert!(j > 0);
        assert_eq!(cert.units, u.with_torsion_twist(j));
        let k1 = unit_data(&registry_entry("K_1").unwrap().spec);
        assert_eq!(search_pair_with_twists(&k1, 100, SearchStrategy::default()).unwrap().1, 0);
    }

    #[test]
    fn surjectivity_oracle() {
        let u = worked_example_units();
        let cert = search_pair(&u, 200, SearchStrategy::SmallestP2First).unwrap();
        assert!(brute_force_surjectivity(&u, &cert.p1, &cert.p2, 0, 0, DEFAULT_ENUMERATION_CAP).unwrap());
        assert!(brute_force_surjectivity(&u, &cert.p1, &cert.p2, 2, 2, DEFAULT_ENUMERATION_CAP).unwrap());
        let broken = UnitData { epsilon: NFElement::one(u.eta.field()), ..u.clone() };
        assert!(!brute_force_surjectivity(&broken, &cert.p1, &cert.p2, 2, 2, DEFAULT_ENUMERATION_CAP).unwrap());
        assert!(matches!(
            brute_force_surjectivity(&u, &cert.p1, &cert.p2, 2, 2, 10),
            Err(Error::CapExceeded { .. })
        ));
    }
}

//! Admissible prime pairs: the five order conditions, the search over
//! degree-one primes, the definition-level surjectivity oracle, the explicit
//! witness for a residue pair, and the Euclidean conclusion.

mod certificate;
mod prime_element;
mod search;
mod witness;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::ntheory::gcd;
use crate::residue::{unit_order_mod_p2, DegreeOnePrime};
use crate::units::UnitData;

pub use certificate::{
    verify_certificate, CertificateJson, ConclusionJson, GcdsJson, OrdersJson, VerifyReport, CERT_VERSION,
};
pub use prime_element::find_prime_element;
pub use search::{
    brute_force_surjectivity, search_pair, search_pair_with_twists, SearchStrategy, DEFAULT_ENUMERATION_CAP,
};
pub use witness::{construct_witness, UnitWord, WitnessResult};

/// Unit rank of every imaginary quartic field.
pub const UNIT_RANK: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    AdmissiblePair,
    /// Recorded only after the class-number-one assumption is supplied.
    Euclidean { r: u32, s: u32 },
}

/// Everything computed while checking a candidate pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionValues {
    /// `p1 (p1 - 1) / g`, when `g` divides `p1 (p1 - 1)`.
    pub n1: Option<u64>,
    pub ord_eps_p1: u64,
    pub ord_eta_p1: u64,
    pub ord_eps_p2: u64,
    /// `gcd(n1, p2 (p2 - 1))`.
    pub gcd_n1_p2: Option<u64>,
    /// `gcd(n1, g)`.
    pub gcd_n1_g: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleCertificate {
    pub field: Arc<FieldSpec>,
    pub units: UnitData,
    pub p1: DegreeOnePrime,
    pub p2: DegreeOnePrime,
    pub ord_eps_p1: u64,
    pub ord_eta_p1: u64,
    pub ord_eps_p2: u64,
    pub gcd_checks: (bool, bool),
    pub conclusion: Conclusion,
}

impl AdmissibleCertificate {
    /// `p1 (p1 - 1) / g`.
    pub fn n1(&self) -> u64 {
        self.p1.unit_group_order() / self.units.g
    }

    pub fn pair(&self) -> (u64, u64) {
        (self.p1.p(), self.p2.p())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureReport {
    /// First failing condition, numbered 1 to 5.
    pub condition: u8,
    pub detail: String,
    pub values: ConditionValues,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Passed(Box<AdmissibleCertificate>),
    Failed(FailureReport),
}

/// Per-condition failure counters gathered by [`search_pair`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchDiagnostics {
    pub prime_bound: u64,
    /// Odd unramified primes up to the bound.
    pub primes_considered: u64,
    /// Those that split completely.
    pub split_primes: u64,
    pub pairs_tested: u64,
    /// `failed[i]`: pairs whose first failing condition was `i + 1`.
    pub failed: [u64; 5],
}

impl fmt::Display for SearchDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bound {}, {} unramified odd primes, {} split completely, {} pairs tested; first failure counts (1)-(5): {:?}",
            self.prime_bound, self.primes_considered, self.split_primes, self.pairs_tested, self.failed
        )
    }
}

/// Orders needed from one prime, computed once and reused for every pair.
#[derive(Clone, Debug)]
pub(crate) struct PrimeOrders {
    pub prime: DegreeOnePrime,
    pub ord_eps: u64,
    pub ord_eta: u64,
}

impl PrimeOrders {
    pub fn new(units: &UnitData, prime: DegreeOnePrime) -> Result<Self> {
        let ord_eps = unit_order_mod_p2(&units.epsilon, &prime)?;
        let ord_eta = unit_order_mod_p2(&units.eta, &prime)?;
        Ok(PrimeOrders { prime, ord_eps, ord_eta })
    }
}

/// Evaluate conditions (1) to (5) in order.
pub(crate) fn evaluate(g: u64, a: &PrimeOrders, b: &PrimeOrders) -> (ConditionValues, Option<(u8, String)>) {
    let (p1, p2) = (a.prime.p(), b.prime.p());
    let group1 = a.prime.unit_group_order();
    let group2 = b.prime.unit_group_order();
    let n1 = group1.is_multiple_of(g).then(|| group1 / g);
    let values = ConditionValues {
        n1,
        ord_eps_p1: a.ord_eps,
        ord_eta_p1: a.ord_eta,
        ord_eps_p2: b.ord_eps,
        gcd_n1_p2: n1.map(|n| gcd(n, group2)),
        gcd_n1_g: n1.map(|n| gcd(n, g)),
    };
    let failure = match n1 {
        None => Some((1, format!("g = {g} does not divide {p1}*{}", p1 - 1))),
        Some(n) if a.ord_eps != n => Some((1, format!("ord(eps) mod pi_1^2 is {}, expected {n}", a.ord_eps))),
        Some(n) if values.gcd_n1_p2 != Some(1) => {
            Some((2, format!("gcd({n}, {group2}) = {}", values.gcd_n1_p2.unwrap())))
        }
        Some(n) if values.gcd_n1_g != Some(1) => Some((3, format!("gcd({n}, {g}) = {}", values.gcd_n1_g.unwrap()))),
        Some(_) if a.ord_eta != g => Some((4, format!("ord(eta) mod pi_1^2 is {}, expected {g}", a.ord_eta))),
        Some(_) if b.ord_eps != group2 => {
            Some((5, format!("ord(eps) mod pi_2^2 is {}, expected {group2} (p2 = {p2})", b.ord_eps)))
        }
        Some(_) => None,
    };
    (values, failure)
}

pub(crate) fn certificate_from(units: &UnitData, a: &PrimeOrders, b: &PrimeOrders) -> AdmissibleCertificate {
    AdmissibleCertificate {
        field: Arc::clone(units.eta.field()),
        units: units.clone(),
        p1: a.prime.clone(),
        p2: b.prime.clone(),
        ord_eps_p1: a.ord_eps,
        ord_eta_p1: a.ord_eta,
        ord_eps_p2: b.ord_eps,
        gcd_checks: (true, true),
        conclusion: Conclusion::AdmissiblePair,
    }
}

/// Check the five conditions for `(P1, P2)` exactly.
pub fn check_conditions(units: &UnitData, p1: &DegreeOnePrime, p2: &DegreeOnePrime) -> Result<CheckOutcome> {
    if p1.p() == p2.p() {
        return Err(Error::SamePrime(p1.p()));
    }
    let spec = units.eta.field();
    if p1.field() != spec || p2.field() != spec || units.epsilon.field() != spec {
        return Err(Error::FieldMismatch);
    }
    let a = PrimeOrders::new(units, p1.clone())?;
    let b = PrimeOrders::new(units, p2.clone())?;
    let (values, failure) = evaluate(units.g, &a, &b);
    Ok(match failure {
        None => CheckOutcome::Passed(Box::new(certificate_from(units, &a, &b))),
        Some((condition, detail)) => CheckOutcome::Failed(FailureReport { condition, detail, values }),
    })
}

/// Theorem A for fields of unit rank `r` with an admissible set of `s` primes.
pub fn theorem_a(r: u32, s: u32, class_number_one: bool) -> Result<Conclusion> {
    if !class_number_one {
        return Err(Error::MissingAssumption);
    }
    if r + s < 3 {
        return Err(Error::RankTooSmall { r, s });
    }
    Ok(Conclusion::Euclidean { r, s })
}

/// Upgrade an admissible-pair certificate to the Euclidean conclusion. The
/// class-number-one property is an external input.
pub fn conclude_euclidean(cert: &AdmissibleCertificate, class_number_one: bool) -> Result<AdmissibleCertificate> {
    let conclusion = theorem_a(UNIT_RANK, 2, class_number_one)?;
    Ok(AdmissibleCertificate { conclusion, ..cert.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{from_sqrt_coords, NFElement};
    use crate::field::build_biquadratic;
    use crate::residue::degree_one_primes_above;
    use crate::units::{torsion, UnitProvenance};

    pub(crate) fn worked_example_units() -> UnitData {
        let k = build_biquadratic(-1, 11).unwrap();
        let (_, eta) = torsion(&k);
        let eps = -&from_sqrt_coords(&k, [[(-3, 2), (1, 2)], [(3, 2), (-1, 2)]]).unwrap();
        UnitData { g: 4, eta, epsilon: eps, provenance: UnitProvenance::Supplied }
    }

    #[test]
    fn worked_example_passes() {
        let u = worked_example_units();
        let k = Arc::clone(u.eta.field());
        let mut passed = None;
        for a in degree_one_primes_above(&k, 157).unwrap() {
            for b in degree_one_primes_above(&k, 5).unwrap() {
                if let CheckOutcome::Passed(c) = check_conditions(&u, &a, &b).unwrap() {
                    passed.get_or_insert(c);
                }
            }
        }
        let cert = passed.expect("some conjugate pair passes");
        assert_eq!(cert.ord_eps_p1, 6123);
        assert_eq!(cert.n1(), 6123);
        assert_eq!(cert.ord_eta_p1, 4);
        assert_eq!(cert.ord_eps_p2, 20);
        assert_eq!(gcd(6123, 20), 1);
        assert_eq!(gcd(6123, 4), 1);
        let e = conclude_euclidean(&cert, true).unwrap();
        assert_eq!(e.conclusion, Conclusion::Euclidean { r: 1, s: 2 });
        assert_eq!(conclude_euclidean(&cert, false).unwrap_err(), Error::MissingAssumption);
        assert_eq!(theorem_a(1, 1, true).unwrap_err(), Error::RankTooSmall { r: 1, s: 1 });
    }

    #[test]
    fn same_prime_is_rejected() {
        let u = worked_example_units();
        let k = Arc::clone(u.eta.field());
        let p = degree_one_primes_above(&k, 5).unwrap();
        assert_eq!(check_conditions(&u, &p[0], &p[1]).unwrap_err(), Error::SamePrime(5));
    }

    #[test]
    fn failure_names_condition() {
        let u = worked_example_units();
        let k = Arc::clone(u.eta.field());
        let broken = UnitData { epsilon: NFElement::one(&k), ..u };
        let a = &degree_one_primes_above(&k, 157).unwrap()[0];
        let b = &degree_one_primes_above(&k, 5).unwrap()[0];
        let CheckOutcome::Failed(r) = check_conditions(&broken, a, b).unwrap() else { panic!() };
        assert_eq!(r.condition, 1);
        assert_eq!(r.values.ord_eps_p1, 1);
    }
}

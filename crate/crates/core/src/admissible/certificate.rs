use serde::{Deserialize, Serialize};

use super::search::brute_force_surjectivity;
use super::{check_conditions, theorem_a, AdmissibleCertificate, CheckOutcome, Conclusion, UNIT_RANK};
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::residue::{DegreeOnePrime, DegreeOnePrimeJson};
use crate::units::{verify_unit_data, UnitData, UnitDataJson};

pub const CERT_VERSION: &str = "cert/v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdersJson {
    #[serde(rename = "ord_eps_P1")]
    pub ord_eps_p1: String,
    #[serde(rename = "ord_eta_P1")]
    pub ord_eta_p1: String,
    #[serde(rename = "ord_eps_P2")]
    pub ord_eps_p2: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdsJson {
    /// `p1 (p1 - 1) / g`.
    pub n1: String,
    /// `gcd(n1, p2 (p2 - 1))`.
    pub gcd_n1_p2_group: String,
    /// `gcd(n1, g)`.
    pub gcd_n1_g: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConclusionJson {
    /// `admissible_pair` or `euclidean`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(default)]
    pub class_number_one_assumed: bool,
}

/// Versioned certificate with every integer written as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub field: FieldDescriptor,
    pub units: UnitDataJson,
    #[serde(rename = "P1")]
    pub p1: DegreeOnePrimeJson,
    #[serde(rename = "P2")]
    pub p2: DegreeOnePrimeJson,
    pub orders: OrdersJson,
    pub gcds: GcdsJson,
    pub conclusion: ConclusionJson,
}

impl AdmissibleCertificate {
    pub fn to_json(&self, label: Option<&str>) -> CertificateJson {
        let n1 = self.n1();
        let conclusion = match self.conclusion {
            Conclusion::AdmissiblePair => ConclusionJson {
                kind: "admissible_pair".into(),
                r: None,
                s: None,
                class_number_one_assumed: false,
            },
            Conclusion::Euclidean { r, s } => ConclusionJson {
                kind: "euclidean".into(),
                r: Some(r.to_string()),
                s: Some(s.to_string()),
                class_number_one_assumed: true,
            },
        };
        CertificateJson {
            version: CERT_VERSION.into(),
            label: label.map(str::to_string),
            field: self.field.descriptor(),
            units: self.units.to_json(),
            p1: self.p1.to_json(),
            p2: self.p2.to_json(),
            orders: OrdersJson {
                ord_eps_p1: self.ord_eps_p1.to_string(),
                ord_eta_p1: self.ord_eta_p1.to_string(),
                ord_eps_p2: self.ord_eps_p2.to_string(),
            },
            gcds: GcdsJson {
                n1: n1.to_string(),
                gcd_n1_p2_group: crate::ntheory::gcd(n1, self.p2.unit_group_order()).to_string(),
                gcd_n1_g: crate::ntheory::gcd(n1, self.units.g).to_string(),
            },
            conclusion,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub certificate: AdmissibleCertificate,
    /// Whether the brute-force surjectivity check ran (and agreed).
    pub oracle_checked: bool,
}

fn stored_matches(stored: &str, computed: u64, condition: u8, what: &str) -> Result<()> {
    if stored.trim() == computed.to_string() {
        Ok(())
    } else {
        Err(Error::ConditionFailed { condition, detail: format!("stored {what} = {stored}, recomputed {computed}") })
    }
}

/// Re-verify a certificate from scratch. Stored orders and gcds are compared
/// against recomputed values and never used as inputs. With `oracle`, the
/// surjectivity of the unit group onto both residue groups is also checked by
/// enumeration when the groups have at most `cap` elements.
pub fn verify_certificate(j: &CertificateJson, oracle: bool, cap: u128) -> Result<VerifyReport> {
    if j.version != CERT_VERSION {
        return Err(Error::Schema(format!("unsupported version `{}`", j.version)));
    }
    let spec = j.field.rebuild()?;
    let units = UnitData::from_json(&spec, &j.units)?;
    if !verify_unit_data(&units) {
        return Err(Error::InvalidUnitData);
    }
    let p1 = DegreeOnePrime::from_json(&spec, &j.p1)?;
    let p2 = DegreeOnePrime::from_json(&spec, &j.p2)?;
    let mut cert = match check_conditions(&units, &p1, &p2)? {
        CheckOutcome::Passed(c) => *c,
        CheckOutcome::Failed(r) => return Err(Error::ConditionFailed { condition: r.condition, detail: r.detail }),
    };
    stored_matches(&j.orders.ord_eps_p1, cert.ord_eps_p1, 1, "ord_eps_P1")?;
    stored_matches(&j.gcds.n1, cert.n1(), 1, "n1")?;
    stored_matches(&j.gcds.gcd_n1_p2_group, 1, 2, "gcd_n1_p2_group")?;
    stored_matches(&j.gcds.gcd_n1_g, 1, 3, "gcd_n1_g")?;
    stored_matches(&j.orders.ord_eta_p1, cert.ord_eta_p1, 4, "ord_eta_P1")?;
    stored_matches(&j.orders.ord_eps_p2, cert.ord_eps_p2, 5, "ord_eps_P2")?;
    match j.conclusion.kind.as_str() {
        "admissible_pair" => {}
        "euclidean" => {
            let parse = |s: &Option<String>| -> Result<u32> {
                s.as_deref()
                    .ok_or_else(|| Error::Schema("euclidean conclusion needs r and s".into()))?
                    .parse()
                    .map_err(|e| Error::Schema(format!("bad rank: {e}")))
            };
            let (r, s) = (parse(&j.conclusion.r)?, parse(&j.conclusion.s)?);
            if r != UNIT_RANK || s != 2 {
                return Err(Error::Schema(format!("recorded r = {r}, s = {s}; expected r = {UNIT_RANK}, s = 2")));
            }
            cert.conclusion = theorem_a(r, s, j.conclusion.class_number_one_assumed)?;
        }
        other => return Err(Error::Schema(format!("unknown conclusion `{other}`"))),
    }
    let mut oracle_checked = false;
    if oracle {
        match brute_force_surjectivity(&units, &p1, &p2, 2, 2, cap) {
            Ok(true) => oracle_checked = true,
            Ok(false) => return Err(Error::OracleMismatch),
            Err(Error::CapExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(VerifyReport { certificate: cert, oracle_checked })
}

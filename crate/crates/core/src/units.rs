//! Torsion and an infinite-order unit for each field.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::element::NFElement;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, RootOfUnity};
use crate::field::cyclotomic_polynomial;
use crate::ntheory::{continued_fraction_fundamental_unit, factorize, QuadraticUnit};
use crate::poly::IntPoly;

/// Orders `n` with `phi(n) | 4`: the only roots of unity a quartic field can
/// contain.
const QUARTIC_ROOT_ORDERS: [u64; 9] = [1, 2, 3, 4, 5, 6, 8, 10, 12];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitProvenance {
    /// Fundamental unit of the real quadratic subfield.
    RealQuadraticSubfield,
    /// Square root in `K` of a torsion multiple of that unit.
    SubfieldUnitSquareRoot,
    Supplied,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitData {
    pub g: u64,
    pub eta: NFElement,
    pub epsilon: NFElement,
    pub provenance: UnitProvenance,
}

/// Torsion order `g` and the canonical generator `eta = -zeta`, where `zeta`
/// is the primitive root of unity recorded by the field builder.
pub fn torsion(spec: &Arc<FieldSpec>) -> (u64, NFElement) {
    match spec.root_of_unity() {
        RootOfUnity::Primitive { order, power } => {
            let zeta = NFElement::from_power_basis(spec, power).expect("roots of unity are integral");
            let g = if order % 2 == 1 { 2 * order } else { *order };
            (g, -&zeta)
        }
        RootOfUnity::None => (2, NFElement::from_int(spec, -1)),
    }
}

/// Fundamental unit of `Q(sqrt d)` as a pair of power-basis vectors for `K`.
fn embed_quadratic(spec: &Arc<FieldSpec>, u: &QuadraticUnit) -> NFElement {
    let (a, b) = u.sqrt_form();
    let den = if u.half_integral() { 2 } else { 1 };
    let half = |x: &BigInt| BigRational::new(x.clone(), BigInt::from(den));
    let s = spec.sqrt_real_d_power();
    let v: Vec<BigRational> = (0..s.len())
        .map(|i| {
            let c = if i == 0 { half(&a) } else { BigRational::from_integer(0.into()) };
            c + half(&b) * &s[i]
        })
        .collect();
    NFElement::from_power_basis(spec, &v).expect("quadratic integers are integral in K")
}

/// The fundamental unit of the real quadratic subfield embedded in `K`.
pub fn infinite_order_unit(spec: &Arc<FieldSpec>) -> NFElement {
    embed_quadratic(spec, &continued_fraction_fundamental_unit(spec.real_subfield_d()))
}

/// Canonical unit data: the torsion generator and an infinite-order unit
/// generating the unit group modulo torsion. When a torsion multiple of the
/// embedded quadratic unit is a square in `K`, its square root is used.
pub fn unit_data(spec: &Arc<FieldSpec>) -> UnitData {
    let (g, eta) = torsion(spec);
    let eps0 = infinite_order_unit(spec);
    let mut zeta_power = NFElement::one(spec);
    for _ in 0..g {
        if let Some(root) = (&zeta_power * &eps0).sqrt() {
            return UnitData { g, eta, epsilon: root, provenance: UnitProvenance::SubfieldUnitSquareRoot };
        }
        zeta_power = &zeta_power * &eta;
    }
    UnitData { g, eta, epsilon: eps0, provenance: UnitProvenance::RealQuadraticSubfield }
}

/// True when `f` is a product of cyclotomic polynomials `Phi_n` with
/// `phi(n) | 4`, i.e. when every root of `f` is a root of unity.
pub fn is_cyclotomic_product(f: &IntPoly) -> bool {
    let mut rest = f.clone();
    for n in QUARTIC_ROOT_ORDERS {
        let phi = cyclotomic_polynomial(n);
        loop {
            if rest.degree() < phi.degree() || rest.is_zero() {
                break;
            }
            let (q, r) = rest.div_rem_monic(&phi);
            if !r.is_zero() {
                break;
            }
            rest = q;
        }
    }
    rest.degree() == 0 && rest.coeff(0).is_one()
}

/// Exact order of `x` if it is a root of unity.
pub fn torsion_order(x: &NFElement) -> Option<u64> {
    if !is_cyclotomic_product(&x.charpoly()) {
        return None;
    }
    QUARTIC_ROOT_ORDERS.into_iter().find(|&n| x.pow(n).is_one())
}

fn is_unit(x: &NFElement) -> bool {
    x.norm().abs().is_one()
}

/// Exact check of every invariant of [`UnitData`], including that `g` is the
/// full torsion order of the field.
pub fn verify_unit_data(u: &UnitData) -> bool {
    let spec = u.eta.field();
    if u.epsilon.field() != spec || u.g == 0 {
        return false;
    }
    if torsion(spec).0 != u.g {
        return false;
    }
    if !u.eta.pow(u.g).is_one() {
        return false;
    }
    if factorize(u.g).iter().any(|&(q, _)| u.eta.pow(u.g / q).is_one()) {
        return false;
    }
    is_unit(&u.eta) && is_unit(&u.epsilon) && !is_cyclotomic_product(&u.epsilon.charpoly())
}

/// JSON form: `{g, eta_coords, epsilon_coords, provenance}` with integers as
/// decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitDataJson {
    pub g: String,
    pub eta_coords: Vec<String>,
    pub epsilon_coords: Vec<String>,
    pub provenance: UnitProvenance,
}

fn coords_to_strings(x: &NFElement) -> Vec<String> {
    x.coords().iter().map(ToString::to_string).collect()
}

pub(crate) fn parse_coords(spec: &Arc<FieldSpec>, s: &[String], what: &str) -> Result<NFElement> {
    if s.len() != 4 {
        return Err(Error::Schema(format!("`{what}` must have 4 coordinates")));
    }
    let c: Vec<BigInt> = s
        .iter()
        .map(|x| x.parse::<BigInt>().map_err(|e| Error::Schema(format!("bad `{what}` coordinate: {e}"))))
        .collect::<Result<_>>()?;
    Ok(NFElement::from_slice(spec, &c))
}

impl UnitData {
    pub fn to_json(&self) -> UnitDataJson {
        UnitDataJson {
            g: self.g.to_string(),
            eta_coords: coords_to_strings(&self.eta),
            epsilon_coords: coords_to_strings(&self.epsilon),
            provenance: self.provenance,
        }
    }

    pub fn from_json(spec: &Arc<FieldSpec>, j: &UnitDataJson) -> Result<Self> {
        Ok(UnitData {
            g: j.g.parse().map_err(|e| Error::Schema(format!("bad `g`: {e}")))?,
            eta: parse_coords(spec, &j.eta_coords, "eta_coords")?,
            epsilon: parse_coords(spec, &j.epsilon_coords, "epsilon_coords")?,
            provenance: j.provenance,
        })
    }

    /// Same data with `epsilon` replaced by `epsilon * eta^j`.
    pub fn with_torsion_twist(&self, j: u64) -> Self {
        let epsilon = &self.epsilon * &self.eta.pow(j);
        UnitData { epsilon, provenance: UnitProvenance::Supplied, ..self.clone() }
    }
}

//! Imaginary quartic Galois fields: biquadratic `Q(sqrt m, sqrt n)` and the
//! cyclic quartic subfields of cyclotomic fields.
//!
//! A [`FieldSpec`] carries a primitive element `theta`, its minimal
//! polynomial, an integral basis written in the power basis of `theta`, and
//! the multiplication table of that basis. Integral bases are found by taking
//! the lattice spanned by known algebraic integers, putting it in Hermite
//! normal form and enlarging it at primes whose square still divides the
//! discriminant ratio, until the basis discriminant equals the value given by
//! the conductor-discriminant formula.

mod biquadratic;
mod cyclic;
pub mod registry;
mod tower;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, rat, RatMatrix};
use crate::ntheory::{factorize, quadratic_discriminant};
use crate::poly::IntPoly;

pub use biquadratic::build_biquadratic;
pub use cyclic::{build_cyclic_quartic, cyclotomic_polynomial, SUPPORTED_CONDUCTORS};
pub use registry::{label_of, registry, registry_entry, registry_labels, FieldRegistryEntry};
pub(crate) use tower::QuadraticSubfield;

/// The two families of fields handled here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldKind {
    Biquadratic { m: i64, n: i64 },
    CyclicQuartic { conductor: u64 },
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Biquadratic { m, n } => write!(f, "Q(sqrt({m}), sqrt({n}))"),
            FieldKind::CyclicQuartic { conductor } => {
                write!(f, "cyclic quartic field of conductor {conductor}")
            }
        }
    }
}

/// Where torsion generators come from, recorded so that [`crate::units`] can
/// build them without redoing the cyclotomic computations.
#[derive(Clone, Debug)]
pub(crate) enum RootOfUnity {
    /// Power-basis coordinates of a primitive `order`-th root of unity.
    Primitive { order: u64, power: Vec<BigRational> },
    /// Only `+-1`.
    None,
}

#[derive(Clone, Debug)]
pub struct FieldSpec {
    kind: FieldKind,
    theta_minpoly: IntPoly,
    /// Row `i` holds the power-basis coordinates of basis element `b_i`.
    basis: RatMatrix,
    basis_inv: RatMatrix,
    discriminant: BigInt,
    index: BigInt,
    real_subfield_d: i64,
    /// `b_i * b_j = sum_k table[(4i + j) * 4 + k] b_k`.
    table: Vec<BigInt>,
    /// `Tr(theta^k)` for `k = 0..7`.
    power_traces: Vec<BigInt>,
    sqrt_real_d: Vec<BigRational>,
    tower: QuadraticSubfield,
    root_of_unity: RootOfUnity,
    /// Power-basis coordinates of `sqrt m` and `sqrt n` (biquadratic only).
    generators: Option<(Vec<BigRational>, Vec<BigRational>)>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}
impl Eq for FieldSpec {}

pub const DEGREE: usize = 4;

/// Ingredients collected by the two family-specific builders.
pub(crate) struct FieldParts {
    pub kind: FieldKind,
    pub minpoly: IntPoly,
    /// Power-basis coordinates of a set of algebraic integers spanning a
    /// full-rank sublattice of `O_K` (not necessarily maximal).
    pub integer_generators: Vec<Vec<BigRational>>,
    /// Matrix whose rows express a convenient Q-basis in the power basis;
    /// HNF is taken in these coordinates. The first row must be `1`.
    pub coordinate_frame: RatMatrix,
    pub expected_discriminant: BigInt,
    pub real_subfield_d: i64,
    pub sqrt_real_d: Vec<BigRational>,
    /// Power-basis coordinates of an element `alpha` with `alpha^2` in the
    /// real quadratic subfield and `alpha` outside it.
    pub imaginary_generator: Vec<BigRational>,
    pub root_of_unity: RootOfUnity,
    pub generators: Option<(Vec<BigRational>, Vec<BigRational>)>,
}

impl FieldSpec {
    pub(crate) fn assemble(parts: FieldParts) -> Result<Arc<FieldSpec>> {
        let FieldParts {
            kind,
            minpoly,
            integer_generators,
            coordinate_frame,
            expected_discriminant,
            real_subfield_d,
            sqrt_real_d,
            imaginary_generator,
            root_of_unity,
            generators,
        } = parts;
        assert_eq!(minpoly.degree(), DEGREE);
        assert!(minpoly.is_monic());

        let power_traces = power_traces(&minpoly);
        let arith = PowerArith { minpoly: &minpoly, traces: &power_traces };

        let mut gens = integer_generators;
        gens.push(unit_vector(0));
        let frame_inv = linalg::inverse(&coordinate_frame).expect("coordinate frame is a basis");
        let mut basis = hnf_in_frame(&gens, &coordinate_frame, &frame_inv);
        loop {
            let disc = arith.basis_discriminant(&basis);
            let ratio = &disc / &expected_discriminant;
            assert!((&disc % &expected_discriminant).is_zero() && ratio.is_positive(),
                "order discriminant {disc} is not a square multiple of {expected_discriminant}");
            if ratio.is_one() {
                break;
            }
            let ratio_u = ratio.to_u64().expect("small discriminant ratio");
            let enlargement = factorize(ratio_u)
                .into_iter()
                .filter(|&(_, e)| e >= 2)
                .find_map(|(q, _)| arith.find_enlargement(&basis, q));
            let Some(extra) = enlargement else {
                panic!("order of index^2 {ratio} could not be enlarged for {kind}");
            };
            let mut all = basis.clone();
            all.push(extra);
            basis = hnf_in_frame(&all, &coordinate_frame, &frame_inv);
        }

        let basis_inv = linalg::inverse(&basis).expect("integral basis is a Q-basis");
        let mut table = Vec::with_capacity(64);
        for i in 0..DEGREE {
            for j in 0..DEGREE {
                let prod = arith.mul(&basis[i], &basis[j]);
                let coords = linalg::vec_mat(&prod, &basis_inv);
                for c in coords {
                    assert!(c.is_integer(), "integral basis not closed under multiplication");
                    table.push(c.to_integer());
                }
            }
        }

        let poly_disc = arith.basis_discriminant(&linalg::identity(DEGREE));
        let index_sq = &poly_disc / &expected_discriminant;
        let index = index_sq.sqrt();
        assert_eq!(&index * &index, index_sq);

        let tower = QuadraticSubfield::new(
            real_subfield_d,
            &sqrt_real_d,
            &imaginary_generator,
            &arith,
        );

        Ok(Arc::new(FieldSpec {
            kind,
            theta_minpoly: minpoly,
            basis,
            basis_inv,
            discriminant: expected_discriminant,
            index,
            real_subfield_d,
            table,
            power_traces,
            sqrt_real_d,
            tower,
            root_of_unity,
            generators,
        }))
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn theta_minpoly(&self) -> &IntPoly {
        &self.theta_minpoly
    }

    pub fn integral_basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    /// `[O_K : Z[theta]]`.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    pub fn real_subfield_d(&self) -> i64 {
        self.real_subfield_d
    }

    pub fn polynomial_discriminant(&self) -> BigInt {
        self.power_arith().basis_discriminant(&linalg::identity(DEGREE))
    }

    /// Structure constant `c_{ijk}` with `b_i b_j = sum_k c_{ijk} b_k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.table[(i * DEGREE + j) * DEGREE + k]
    }

    pub(crate) fn table(&self) -> &[BigInt] {
        &self.table
    }

    pub(crate) fn power_arith(&self) -> PowerArith<'_> {
        PowerArith { minpoly: &self.theta_minpoly, traces: &self.power_traces }
    }

    pub(crate) fn tower(&self) -> &QuadraticSubfield {
        &self.tower
    }

    pub(crate) fn root_of_unity(&self) -> &RootOfUnity {
        &self.root_of_unity
    }

    pub(crate) fn sqrt_real_d_power(&self) -> &[BigRational] {
        &self.sqrt_real_d
    }

    pub(crate) fn sqrt_generators_power(&self) -> Option<&(Vec<BigRational>, Vec<BigRational>)> {
        self.generators.as_ref()
    }

    /// Coordinates over the integral basis of a power-basis vector.
    pub fn power_to_basis(&self, v: &[BigRational]) -> Vec<BigRational> {
        linalg::vec_mat(v, &self.basis_inv)
    }

    pub fn basis_to_power(&self, coords: &[BigInt]) -> Vec<BigRational> {
        let v: Vec<BigRational> = coords.iter().map(linalg::rat_from_big).collect();
        linalg::vec_mat(&v, &self.basis)
    }

    /// Integral-basis coordinates of `theta`.
    pub fn theta_coords(&self) -> Vec<BigInt> {
        self.power_to_basis(&unit_vector(1))
            .into_iter()
            .map(|c| c.to_integer())
            .collect()
    }

    /// Closure of the basis under multiplication, membership of `1`, and the
    /// basis discriminant matching the conductor-discriminant value.
    pub fn integral_basis_closure_check(&self) -> bool {
        integral_basis_closure_check(&self.theta_minpoly, &self.basis, &self.discriminant)
    }

    /// A copy of this field with its basis replaced, used to exercise the
    /// closure check on non-maximal orders.
    pub fn basis_is_valid_for(&self, basis: &RatMatrix) -> bool {
        integral_basis_closure_check(&self.theta_minpoly, basis, &self.discriminant)
    }

    /// Field discriminant predicted independently of any basis: product of
    /// the three quadratic discriminants, or `f^2` times the discriminant of
    /// the quadratic subfield.
    pub fn expected_discriminant(kind: FieldKind) -> BigInt {
        match kind {
            FieldKind::Biquadratic { m, n } => {
                let k = biquadratic::third_subfield(m, n);
                BigInt::from(quadratic_discriminant(m))
                    * quadratic_discriminant(n)
                    * quadratic_discriminant(k)
            }
            FieldKind::CyclicQuartic { conductor } => {
                let d = cyclic::real_subfield_of(conductor);
                BigInt::from(conductor).pow(2) * quadratic_discriminant(d)
            }
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        let (m, n, conductor) = match self.kind {
            FieldKind::Biquadratic { m, n } => (Some(m.to_string()), Some(n.to_string()), None),
            FieldKind::CyclicQuartic { conductor } => (None, None, Some(conductor.to_string())),
        };
        FieldDescriptor {
            kind: match self.kind {
                FieldKind::Biquadratic { .. } => "biquadratic".into(),
                FieldKind::CyclicQuartic { .. } => "cyclic_quartic".into(),
            },
            m,
            n,
            conductor,
            minpoly: self.theta_minpoly.coeffs().iter().map(ToString::to_string).collect(),
            basis: self
                .basis
                .iter()
                .map(|row| row.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect())
                .collect(),
            discriminant: self.discriminant.to_string(),
            index: self.index.to_string(),
            real_subfield_d: self.real_subfield_d.to_string(),
        }
    }
}

/// Exact JSON form of a field: integers as decimal strings and basis entries
/// as `"num/den"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub conductor: Option<String>,
    pub minpoly: Vec<String>,
    pub basis: Vec<Vec<String>>,
    pub discriminant: String,
    pub index: String,
    pub real_subfield_d: String,
}

impl FieldDescriptor {
    /// Rebuild the field named by the descriptor and check that every stored
    /// quantity agrees with the rebuilt one.
    pub fn rebuild(&self) -> Result<Arc<FieldSpec>> {
        let parse_i64 = |s: &Option<String>, name: &str| -> Result<i64> {
            s.as_deref()
                .ok_or_else(|| Error::Schema(format!("missing field `{name}`")))?
                .parse()
                .map_err(|e| Error::Schema(format!("bad `{name}`: {e}")))
        };
        let field = match self.kind.as_str() {
            "biquadratic" => build_biquadratic(parse_i64(&self.m, "m")?, parse_i64(&self.n, "n")?)?,
            "cyclic_quartic" => {
                let f = parse_i64(&self.conductor, "conductor")?;
                build_cyclic_quartic(u64::try_from(f).map_err(|_| Error::UnsupportedConductor(0))?)?
            }
            other => return Err(Error::Schema(format!("unknown field kind `{other}`"))),
        };
        if &field.descriptor() != self {
            return Err(Error::Schema("field descriptor does not match the rebuilt field".into()));
        }
        Ok(field)
    }
}

pub(crate) fn unit_vector(i: usize) -> Vec<BigRational> {
    (0..DEGREE).map(|j| if i == j { rat(1) } else { rat(0) }).collect()
}

/// Arithmetic in `Q[x]/(minpoly)` on power-basis coordinate vectors.
pub(crate) struct PowerArith<'a> {
    pub minpoly: &'a IntPoly,
    pub traces: &'a [BigInt],
}

impl PowerArith<'_> {
    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut prod = vec![BigRational::zero(); 2 * DEGREE - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for k in (DEGREE..prod.len()).rev() {
            let lead = std::mem::take(&mut prod[k]);
            if lead.is_zero() {
                continue;
            }
            for (j, c) in self.minpoly.coeffs().iter().take(DEGREE).enumerate() {
                prod[k - DEGREE + j] -= &lead * linalg::rat_from_big(c);
            }
        }
        prod.truncate(DEGREE);
        prod
    }

    pub fn trace(&self, a: &[BigRational]) -> BigRational {
        a.iter()
            .zip(self.traces)
            .fold(BigRational::zero(), |acc, (x, t)| acc + x * linalg::rat_from_big(t))
    }

    /// Matrix of multiplication by `a` acting on column vectors.
    pub fn mult_matrix(&self, a: &[BigRational]) -> RatMatrix {
        let cols: Vec<Vec<BigRational>> = (0..DEGREE).map(|j| self.mul(a, &unit_vector(j))).collect();
        (0..DEGREE).map(|i| (0..DEGREE).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn charpoly(&self, a: &[BigRational]) -> Vec<BigRational> {
        linalg::charpoly(&self.mult_matrix(a))
    }

    pub fn is_integral(&self, a: &[BigRational]) -> bool {
        self.charpoly(a).iter().all(BigRational::is_integer)
    }

    pub fn basis_discriminant(&self, basis: &RatMatrix) -> BigInt {
        let gram: RatMatrix = basis
            .iter()
            .map(|bi| basis.iter().map(|bj| self.trace(&self.mul(bi, bj))).collect())
            .collect();
        let d = linalg::det(&gram);
        assert!(d.is_integer(), "discriminant of an order must be an integer");
        d.to_integer()
    }

    /// An algebraic integer `(sum c_i b_i) / q` outside the lattice, if one
    /// exists.
    fn find_enlargement(&self, basis: &RatMatrix, q: u64) -> Option<Vec<BigRational>> {
        let q_rat = rat(q as i64);
        let total = (q as usize).pow(DEGREE as u32);
        (1..total).find_map(|code| {
            let mut digits = [0u64; DEGREE];
            let mut c = code;
            for d in digits.iter_mut() {
                *d = (c % q as usize) as u64;
                c /= q as usize;
            }
            let mut v = vec![BigRational::zero(); DEGREE];
            for (i, &d) in digits.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                for (k, b) in basis[i].iter().enumerate() {
                    v[k] += b * rat(d as i64);
                }
            }
            let v: Vec<BigRational> = v.into_iter().map(|x| x / &q_rat).collect();
            self.is_integral(&v).then_some(v)
        })
    }
}

fn power_traces(minpoly: &IntPoly) -> Vec<BigInt> {
    // Newton's identities for a monic quartic.
    let e = |k: usize| -> BigInt {
        // x^4 + a3 x^3 + ... ; elementary symmetric e_k = (-1)^k a_{4-k}
        let a = minpoly.coeff(DEGREE - k);
        if k.is_multiple_of(2) { a } else { -a }
    };
    let mut s = vec![BigInt::from(DEGREE as i64)];
    for k in 1..2 * DEGREE {
        let mut acc = BigInt::zero();
        for i in 1..k.min(DEGREE + 1) {
            let term = e(i) * &s[k - i];
            if i % 2 == 1 { acc += term } else { acc -= term }
        }
        if k <= DEGREE {
            let term = e(k) * BigInt::from(k as i64);
            if k % 2 == 1 { acc += term } else { acc -= term }
        }
        s.push(acc);
    }
    s
}

/// HNF of the lattice spanned by `gens` (power-basis rows), computed in the
/// coordinates given by `frame`, with pivots taken from the last coordinate
/// backwards so that the first returned row is `1`.
fn hnf_in_frame(gens: &[Vec<BigRational>], frame: &RatMatrix, frame_inv: &RatMatrix) -> RatMatrix {
    let in_frame: Vec<Vec<BigRational>> = gens.iter().map(|g| linalg::vec_mat(g, frame_inv)).collect();
    let den = linalg::common_denominator(in_frame.iter().flatten());
    let scaled: Vec<Vec<BigInt>> = in_frame
        .iter()
        .map(|row| {
            row.iter()
                .rev()
                .map(|c| (c * linalg::rat_from_big(&den)).to_integer())
                .collect()
        })
        .collect();
    let h = linalg::hnf(&scaled);
    assert_eq!(h.len(), DEGREE, "generators must span a full-rank lattice");
    let den_rat = linalg::rat_from_big(&den);
    h.iter()
        .rev()
        .map(|row| {
            let frame_coords: Vec<BigRational> =
                row.iter().rev().map(|c| linalg::rat_from_big(c) / &den_rat).collect();
            linalg::vec_mat(&frame_coords, frame)
        })
        .collect()
}

/// See [`FieldSpec::integral_basis_closure_check`].
pub fn integral_basis_closure_check(minpoly: &IntPoly, basis: &RatMatrix, expected_disc: &BigInt) -> bool {
    let traces = power_traces(minpoly);
    let arith = PowerArith { minpoly, traces: &traces };
    let Some(inv) = linalg::inverse(basis) else {
        return false;
    };
    let one = linalg::vec_mat(&unit_vector(0), &inv);
    if !one.iter().all(BigRational::is_integer) {
        return false;
    }
    for bi in basis {
        for bj in basis {
            let coords = linalg::vec_mat(&arith.mul(bi, bj), &inv);
            if !coords.iter().all(BigRational::is_integer) {
                return false;
            }
        }
    }
    let gram: RatMatrix = basis
        .iter()
        .map(|bi| basis.iter().map(|bj| arith.trace(&arith.mul(bi, bj))).collect())
        .collect();
    let disc = linalg::det(&gram);
    disc == linalg::rat_from_big(expected_disc)
}

pub(crate) fn int_gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_power_sums() {
        // x^4 - 20x^2 + 144: roots +-i +- sqrt(11); sum of squares = 4 * (-1 + 11)
        let f = IntPoly::from_i64(&[144, 0, -20, 0, 1]);
        let s = power_traces(&f);
        assert_eq!(s[0], BigInt::from(4));
        assert_eq!(s[1], BigInt::from(0));
        assert_eq!(s[2], BigInt::from(40));
        // roots of x^4+x^3+x^2+x+1: primitive 5th roots; Tr(z^k) = -1 unless 5 | k
        let g = IntPoly::from_i64(&[1, 1, 1, 1, 1]);
        let s = power_traces(&g);
        assert_eq!(s[1..5].to_vec(), vec![BigInt::from(-1); 4]);
        assert_eq!(s[5], BigInt::from(4));
    }
}

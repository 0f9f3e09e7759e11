//! Algebraic integers as integer coordinate vectors over a field's integral
//! basis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, DEGREE};
use crate::linalg::{self, rat_from_big, RatMatrix};
use crate::poly::IntPoly;

#[derive(Clone)]
pub struct NFElement {
    field: Arc<FieldSpec>,
    coords: [BigInt; DEGREE],
}

impl PartialEq for NFElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coords == other.coords
    }
}
impl Eq for NFElement {}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NFElement{:?}", self.coords.iter().map(ToString::to_string).collect::<Vec<_>>())
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl NFElement {
    pub fn new(field: &Arc<FieldSpec>, coords: [BigInt; DEGREE]) -> Self {
        NFElement { field: Arc::clone(field), coords }
    }

    pub fn from_i64(field: &Arc<FieldSpec>, coords: [i64; DEGREE]) -> Self {
        Self::new(field, coords.map(BigInt::from))
    }

    pub fn from_slice(field: &Arc<FieldSpec>, coords: &[BigInt]) -> Self {
        assert_eq!(coords.len(), DEGREE);
        Self::new(field, std::array::from_fn(|i| coords[i].clone()))
    }

    pub fn zero(field: &Arc<FieldSpec>) -> Self {
        Self::from_i64(field, [0; DEGREE])
    }

    /// The basis always starts with 1.
    pub fn one(field: &Arc<FieldSpec>) -> Self {
        Self::from_i64(field, [1, 0, 0, 0])
    }

    pub fn from_int(field: &Arc<FieldSpec>, n: i64) -> Self {
        Self::from_i64(field, [n, 0, 0, 0])
    }

    pub fn theta(field: &Arc<FieldSpec>) -> Self {
        Self::from_slice(field, &field.theta_coords())
    }

    /// Element with the given power-basis coordinates; fails unless it is an
    /// algebraic integer.
    pub fn from_power_basis(field: &Arc<FieldSpec>, v: &[BigRational]) -> Result<Self> {
        let c = field.power_to_basis(v);
        if !c.iter().all(BigRational::is_integer) {
            return Err(Error::NotIntegral);
        }
        Ok(Self::from_slice(field, &c.iter().map(|x| x.to_integer()).collect::<Vec<_>>()))
    }

    pub fn to_power_basis(&self) -> Vec<BigRational> {
        self.field.basis_to_power(&self.coords)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coords(&self) -> &[BigInt; DEGREE] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::new(&self.field, std::array::from_fn(|i| &self.coords[i] + &other.coords[i])))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::new(&self.field, std::array::from_fn(|i| &self.coords[i] - &other.coords[i])))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let table = self.field.table();
        let mut out: [BigInt; DEGREE] = Default::default();
        for (i, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &table[(i * DEGREE + j) * DEGREE + k];
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        Ok(Self::new(&self.field, out))
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(&self.field, std::array::from_fn(|i| &self.coords[i] * s))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Matrix of multiplication by `self` acting on coordinate columns.
    pub fn mult_matrix(&self) -> Vec<Vec<BigInt>> {
        let cols: Vec<NFElement> = (0..DEGREE)
            .map(|j| {
                let mut e = [0i64; DEGREE];
                e[j] = 1;
                self * &NFElement::from_i64(&self.field, e)
            })
            .collect();
        (0..DEGREE).map(|i| (0..DEGREE).map(|j| cols[j].coords[i].clone()).collect()).collect()
    }

    fn rat_mult_matrix(&self) -> RatMatrix {
        self.mult_matrix().iter().map(|r| r.iter().map(rat_from_big).collect()).collect()
    }

    pub fn norm(&self) -> BigInt {
        linalg::det(&self.rat_mult_matrix()).to_integer()
    }

    pub fn trace(&self) -> BigInt {
        let m = self.mult_matrix();
        (0..DEGREE).fold(BigInt::zero(), |acc, i| acc + &m[i][i])
    }

    /// Characteristic polynomial of multiplication by `self`.
    pub fn charpoly(&self) -> IntPoly {
        IntPoly::new(linalg::charpoly(&self.rat_mult_matrix()).iter().map(|c| c.to_integer()).collect())
    }

    /// Inverse of a unit, by solving `self * y = 1` exactly.
    pub fn inverse_unit(&self) -> Result<Self> {
        let n = self.norm();
        if n.abs() != BigInt::one() {
            return Err(Error::NotAUnit(n.to_string()));
        }
        let m = self.rat_mult_matrix();
        let inv = linalg::inverse(&m).ok_or_else(|| Error::NotAUnit(n.to_string()))?;
        // y = M^-1 e_0
        let y: Vec<BigInt> = (0..DEGREE).map(|i| inv[i][0].to_integer()).collect();
        debug_assert!((0..DEGREE).all(|i| inv[i][0].is_integer()));
        Ok(Self::from_slice(&self.field, &y))
    }

    /// Square root in the field, if `self` is a square.
    pub fn sqrt(&self) -> Option<Self> {
        let arith = self.field.power_arith();
        let root = self.field.tower().sqrt(&self.to_power_basis(), &arith)?;
        Self::from_power_basis(&self.field, &root).ok()
    }

    /// True when the element lies in the real quadratic subfield.
    pub fn in_real_subfield(&self) -> bool {
        self.field.tower().in_real_subfield(&self.to_power_basis())
    }
}

impl Add for &NFElement {
    type Output = NFElement;
    fn add(self, rhs: &NFElement) -> NFElement {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &NFElement {
    type Output = NFElement;
    fn sub(self, rhs: &NFElement) -> NFElement {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &NFElement {
    type Output = NFElement;
    fn mul(self, rhs: &NFElement) -> NFElement {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &NFElement {
    type Output = NFElement;
    fn neg(self) -> NFElement {
        NFElement::new(&self.field, std::array::from_fn(|i| -&self.coords[i]))
    }
}

/// Element `sum q_ij a^i b^j` of `Q(sqrt m, sqrt n)` where `a = sqrt m`,
/// `b = sqrt n`; `q[i][j]` are rationals given as `(num, den)`. This is the
/// notation commonly used for biquadratic fields.
pub fn from_sqrt_coords(field: &Arc<FieldSpec>, q: [[(i64, i64); 2]; 2]) -> Result<NFElement> {
    let (a, b) = field
        .sqrt_generators_power()
        .ok_or_else(|| Error::Schema("field is not biquadratic".into()))?;
    let arith = field.power_arith();
    let ab = arith.mul(a, b);
    let one = crate::field::unit_vector(0);
    let terms = [[&one, b], [a, &ab]];
    let mut v = vec![BigRational::zero(); DEGREE];
    for i in 0..2 {
        for j in 0..2 {
            let (num, den) = q[i][j];
            let c = BigRational::new(num.into(), den.into());
            for (x, t) in v.iter_mut().zip(terms[i][j].iter()) {
                *x += &c * t;
            }
        }
    }
    NFElement::from_power_basis(field, &v)
}

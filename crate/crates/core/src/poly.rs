//! Dense univariate polynomials over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Integer polynomial, constant term first. The coefficient vector never has
/// trailing zeros, so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// `x - a`
    pub fn linear(a: i64) -> Self {
        Self::from_i64(&[-a, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.degree();
        if self.is_zero() || self.degree() < d {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - d + 1];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + d].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &lead * c;
            }
            quot[k] = lead;
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation modulo `modulus`, result in `[0, modulus)`.
    pub fn eval_mod(&self, x: u64, modulus: u64) -> u64 {
        let m = modulus as u128;
        let x = x as u128 % m;
        self.coeffs.iter().rev().fold(0u128, |acc, c| {
            (acc * x + reduce_bigint(c, modulus) as u128) % m
        }) as u64
    }

    /// True when every coefficient is divisible by `p`.
    pub fn is_zero_mod(&self, p: u64) -> bool {
        self.coeffs.iter().all(|c| reduce_bigint(c, p) == 0)
    }

    /// True when the polynomial has no real roots. Uses Sturm sequences with
    /// exact rational arithmetic.
    pub fn has_no_real_roots(&self) -> bool {
        count_real_roots(self) == 0
    }
}

/// Number of distinct real roots, by a Sturm sequence over the rationals.
pub fn count_real_roots(f: &IntPoly) -> usize {
    if f.degree() == 0 {
        return 0;
    }
    let to_rat = |p: &IntPoly| -> Vec<BigRational> {
        p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    };
    let mut seq = vec![to_rat(f), to_rat(&f.derivative())];
    loop {
        let n = seq.len();
        let r = rat_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    // Sign changes at -inf and +inf from leading coefficients and degrees.
    let sign_changes = |signs: Vec<i8>| -> usize {
        let nz: Vec<i8> = signs.into_iter().filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let lead_sign = |p: &Vec<BigRational>| -> i8 {
        if p.last().unwrap().is_positive() { 1 } else { -1 }
    };
    let at_pos: Vec<i8> = seq.iter().map(lead_sign).collect();
    let at_neg: Vec<i8> = seq
        .iter()
        .map(|p| if (p.len() - 1) % 2 == 0 { lead_sign(p) } else { -lead_sign(p) })
        .collect();
    sign_changes(at_neg) - sign_changes(at_pos)
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r: Vec<BigRational> = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let factor = r.last().unwrap() / b.last().unwrap();
        for (j, c) in b.iter().enumerate() {
            r[k + j] -= &factor * c;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// `c mod m` as a value in `[0, m)`.
pub fn reduce_bigint(c: &BigInt, m: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits")
}

impl From<IntPoly> for Vec<String> {
    fn from(p: IntPoly) -> Self {
        p.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl TryFrom<Vec<String>> for IntPoly {
    type Error = String;
    fn try_from(v: Vec<String>) -> Result<Self, String> {
        v.iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| format!("bad coefficient `{s}`: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(IntPoly::new)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_trimmed() {
        let p = IntPoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert!(IntPoly::from_i64(&[0, 0]).is_zero());
    }

    #[test]
    fn division_by_monic() {
        // x^4 - 20x^2 + 144 = (x^2 - 4)(x^2 - 16) + 80
        let f = IntPoly::from_i64(&[144, 0, -20, 0, 1]);
        let g = IntPoly::from_i64(&[-4, 0, 1]);
        let (q, r) = f.div_rem_monic(&g);
        assert_eq!(q, IntPoly::from_i64(&[-16, 0, 1]));
        assert_eq!(r, IntPoly::from_i64(&[80]));
        assert_eq!(q.mul(&g).add(&r), f);
    }

    #[test]
    fn modular_evaluation() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(f.eval_mod(2, 5), 0);
        assert_eq!(f.eval_mod(7, 25), 0);
        let g = IntPoly::from_i64(&[-11, 0, 1]);
        assert_eq!(g.eval_mod(9, 49), 70 % 49);
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[144, 0, -20, 0, 1]).to_string(), "x^4 - 20x^2 + 144");
        assert_eq!(IntPoly::from_i64(&[-1, 1]).to_string(), "x - 1");
    }

    #[test]
    fn real_roots() {
        assert!(IntPoly::from_i64(&[144, 0, -20, 0, 1]).has_no_real_roots());
        assert!(!IntPoly::from_i64(&[-4, 0, 1]).has_no_real_roots());
        assert!(!IntPoly::from_i64(&[4, 0, -5, 0, 1]).has_no_real_roots());
        assert!(IntPoly::from_i64(&[1, 1, 1, 1, 1]).has_no_real_roots());
        assert!(IntPoly::from_i64(&[1, 0, 1]).has_no_real_roots());
    }
}

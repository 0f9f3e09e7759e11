use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::element::NFElement;
use crate::error::{Error, Result};
use crate::field::DEGREE;
use crate::residue::{reduce_mod_power, DegreeOnePrime};

/// Fraction-free determinant; `None` on overflow.
fn bareiss_det(mut m: [[i128; DEGREE]; DEGREE]) -> Option<i128> {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..DEGREE - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..DEGREE).find(|&r| m[r][k] != 0)?;
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..DEGREE {
            for j in k + 1..DEGREE {
                let v = m[i][j].checked_mul(m[k][k])?.checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    Some(sign * m[DEGREE - 1][DEGREE - 1])
}

/// `(x1, x2, x3)` in `[-s, s]^3`, lexicographically.
fn cube(s: i64) -> impl Iterator<Item = [i64; 3]> {
    (-s..=s).flat_map(move |a| (-s..=s).flat_map(move |b| (-s..=s).map(move |c| [a, b, c])))
}

/// A generator of the prime ideal `P`: an element of norm `+-p` in the
/// kernel of the reduction map of `P`. Coordinate vectors are enumerated by
/// increasing sup-norm up to `coord_bound`, lexicographically within each
/// sup-norm; the first coordinate is determined modulo `p` by the congruence.
pub fn find_prime_element(prime: &DegreeOnePrime, coord_bound: u64) -> Result<NFElement> {
    let spec = prime.field();
    let p = prime.p() as i64;
    let images: Vec<i64> = prime.basis_images().iter().map(|&y| (y % prime.p()) as i64).collect();
    let table: Vec<i128> =
        spec.table().iter().map(|c| c.to_i128().expect("structure constants are small")).collect();
    let norm_of = |x: &[i64; DEGREE]| -> Option<i128> {
        let mut m = [[0i128; DEGREE]; DEGREE];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for j in 0..DEGREE {
                for k in 0..DEGREE {
                    m[k][j] += xi as i128 * table[(i * DEGREE + j) * DEGREE + k];
                }
            }
        }
        bareiss_det(m)
    };
    let bound = coord_bound as i64;
    for s in 1..=bound {
        for [a, b, c] in cube(s) {
            let tail_sup = a.abs().max(b.abs()).max(c.abs());
            let r = (-(a * images[1] + b * images[2] + c * images[3])).rem_euclid(p);
            // x0 = r (mod p), |x0| <= s, and the full vector has sup-norm s
            let mut x0 = -s + (r + s).rem_euclid(p);
            while x0 <= s {
                if tail_sup == s || x0.abs() == s {
                    let x = [x0, a, b, c];
                    let n = norm_of(&x).unwrap_or_else(|| {
                        NFElement::from_i64(spec, x).norm().to_i128().unwrap_or(i128::MAX)
                    });
                    if n.abs() == p as i128 {
                        let elt = NFElement::from_i64(spec, x);
                        debug_assert_eq!(reduce_mod_power(&elt, prime, 1).value, 0);
                        debug_assert_eq!(elt.norm().abs(), BigInt::from(p));
                        return Ok(elt);
                    }
                }
                x0 += p;
            }
        }
    }
    Err(Error::BoundExceeded(coord_bound))
}

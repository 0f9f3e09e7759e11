//! Unramified degree-one primes and the ring maps `O_K -> Z/p^2`.
//!
//! A degree-one prime `pi` above `p` is the kernel of a ring homomorphism
//! `phi: O_K -> F_p`. When `p` is unramified, `phi` lifts uniquely to
//! `O_K -> Z/p^2`, and this lift identifies `O_K / pi^2` with `Z/p^2`. The lift
//! is stored as the images of the integral basis, so reduction of an element
//! is one dot product.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::element::NFElement;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, DEGREE};
use crate::ntheory::{hensel_lift, inv_mod, is_prime, mult_order, mul_mod, poly_roots_mod_p, ResidueClass};
use crate::poly::reduce_bigint;

#[derive(Clone)]
pub struct DegreeOnePrime {
    field: Arc<FieldSpec>,
    p: u64,
    root_c: ResidueClass,
    lifted_c: ResidueClass,
    conjugate_index: usize,
    /// Images of the integral basis in `Z/p^2`.
    images: [u64; DEGREE],
}

impl PartialEq for DegreeOnePrime {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.p == other.p && self.images == other.images
    }
}
impl Eq for DegreeOnePrime {}

impl fmt::Debug for DegreeOnePrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DegreeOnePrime")
            .field("p", &self.p)
            .field("root_c", &self.root_c.value)
            .field("lifted_c", &self.lifted_c.value)
            .field("conjugate_index", &self.conjugate_index)
            .finish()
    }
}

impl DegreeOnePrime {
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn p_squared(&self) -> u64 {
        self.p * self.p
    }

    /// Image of `theta` modulo `p`.
    pub fn root_c(&self) -> ResidueClass {
        self.root_c
    }

    /// Image of `theta` modulo `p^2`.
    pub fn lifted_c(&self) -> ResidueClass {
        self.lifted_c
    }

    pub fn conjugate_index(&self) -> usize {
        self.conjugate_index
    }

    pub fn basis_images(&self) -> &[u64; DEGREE] {
        &self.images
    }

    /// Group order of `(Z/p^2)^x`.
    pub fn unit_group_order(&self) -> u64 {
        self.p * (self.p - 1)
    }

    pub fn to_json(&self) -> DegreeOnePrimeJson {
        DegreeOnePrimeJson {
            p: self.p.to_string(),
            root_c: self.root_c.value.to_string(),
            lifted_c: self.lifted_c.value.to_string(),
            conjugate_index: self.conjugate_index.to_string(),
        }
    }

    /// Recompute the primes above `p` and pick the recorded conjugate; the
    /// stored roots must agree with the recomputed ones.
    pub fn from_json(spec: &Arc<FieldSpec>, j: &DegreeOnePrimeJson) -> Result<Self> {
        let num = |s: &str, what: &str| -> Result<u64> {
            s.parse().map_err(|e| Error::Schema(format!("bad `{what}`: {e}")))
        };
        let p = num(&j.p, "p")?;
        let index = num(&j.conjugate_index, "conjugate_index")? as usize;
        let all = degree_one_primes_above(spec, p)?;
        let count = all.len();
        let prime = all.into_iter().nth(index).ok_or(Error::NoSuchConjugate { p, index, count })?;
        if prime.root_c.value != num(&j.root_c, "root_c")? || prime.lifted_c.value != num(&j.lifted_c, "lifted_c")? {
            return Err(Error::Schema(format!("stored roots do not match conjugate {index} above {p}")));
        }
        Ok(prime)
    }
}

/// JSON form `{p, root_c, lifted_c, conjugate_index}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeOnePrimeJson {
    pub p: String,
    pub root_c: String,
    pub lifted_c: String,
    pub conjugate_index: String,
}

/// Value of a rational in `Z/m`, assuming its denominator is invertible.
fn rat_mod(x: &BigRational, m: u64) -> Option<u64> {
    let num = reduce_bigint(x.numer(), m);
    let den = inv_mod(reduce_bigint(x.denom(), m), m)?;
    Some(mul_mod(num, den, m))
}

/// Evaluate power-basis coordinates at `theta = c` modulo `m`.
fn eval_power(v: &[BigRational], c: u64, m: u64) -> Option<u64> {
    let mut acc = 0u64;
    let mut power = 1 % m;
    for x in v {
        acc = (acc + mul_mod(rat_mod(x, m)?, power, m)) % m;
        power = mul_mod(power, c, m);
    }
    Some(acc)
}

fn structure_mod(spec: &FieldSpec, m: u64) -> Vec<u64> {
    spec.table().iter().map(|c| reduce_bigint(c, m)).collect()
}

fn is_hom(table: &[u64], x: &[u64; DEGREE], m: u64) -> bool {
    if x[0] != 1 % m {
        return false;
    }
    for i in 1..DEGREE {
        for j in i..DEGREE {
            let lhs = mul_mod(x[i], x[j], m);
            let rhs = (0..DEGREE).fold(0u64, |acc, k| (acc + mul_mod(table[(i * DEGREE + j) * DEGREE + k], x[k], m)) % m);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Solve `A t = b` over `F_p`; `None` if inconsistent or not uniquely solvable.
fn solve_mod_p(mut a: Vec<Vec<u64>>, mut b: Vec<u64>, p: u64) -> Option<Vec<u64>> {
    let n = a[0].len();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..a.len()).find(|&r| a[r][col] != 0) else {
            return None;
        };
        a.swap(row, r);
        b.swap(row, r);
        let inv = inv_mod(a[row][col], p)?;
        for x in a[row].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        b[row] = mul_mod(b[row], inv, p);
        for r in 0..a.len() {
            if r != row && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..n {
                    a[r][c] = (a[r][c] + p - mul_mod(f, a[row][c], p)) % p;
                }
                b[r] = (b[r] + p - mul_mod(f, b[row], p)) % p;
            }
        }
        row += 1;
    }
    if b[row..].iter().any(|&x| x != 0) {
        return None;
    }
    Some(b[..n].to_vec())
}

/// Lift a homomorphism `O_K -> F_p` to `O_K -> Z/p^2` by solving the
/// linearised multiplication relations.
fn lift_hom(table_p2: &[u64], x: &[u64; DEGREE], p: u64) -> [u64; DEGREE] {
    let p2 = p * p;
    // y_i = x_i + p t_i with t_0 = 0. For each relation b_i b_j = sum c_ijk b_k:
    // sum_k c_ijk t_k - x_i t_j - x_j t_i = (x_i x_j - sum_k c_ijk x_k) / p  (mod p)
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..DEGREE {
        for j in i..DEGREE {
            let base = (i * DEGREE + j) * DEGREE;
            let defect = (0..DEGREE).fold(mul_mod(x[i], x[j], p2), |acc, k| {
                (acc + p2 - mul_mod(table_p2[base + k], x[k], p2)) % p2
            });
            debug_assert_eq!(defect % p, 0);
            let mut r = vec![0u64; DEGREE - 1];
            for k in 1..DEGREE {
                r[k - 1] = (r[k - 1] + table_p2[base + k]) % p;
            }
            if j >= 1 {
                r[j - 1] = (r[j - 1] + p - x[i] % p) % p;
            }
            if i >= 1 {
                r[i - 1] = (r[i - 1] + p - x[j] % p) % p;
            }
            rows.push(r);
            rhs.push(defect / p);
        }
    }
    let t = solve_mod_p(rows, rhs, p).expect("unramified primes lift uniquely");
    let mut y = *x;
    for k in 1..DEGREE {
        y[k] = (x[k] + p * t[k - 1]) % p2;
    }
    y
}

/// Homomorphisms `O_K -> F_p` found as left eigenvectors of multiplication
/// matrices, for primes where `Z[theta]` is not maximal.
fn homs_mod_p_generic(spec: &Arc<FieldSpec>, p: u64) -> Vec<[u64; DEGREE]> {
    let table = structure_mod(spec, p);
    let mut found: Vec<[u64; DEGREE]> = Vec::new();
    let range: Vec<i64> = if p <= 3 { (0..p as i64).collect() } else { vec![-1, 0, 1, 2] };
    let try_gamma = |c: [i64; DEGREE], found: &mut Vec<[u64; DEGREE]>| {
        let gamma = NFElement::from_i64(spec, c);
        let m: Vec<Vec<u64>> =
            gamma.mult_matrix().iter().map(|r| r.iter().map(|x| reduce_bigint(x, p)).collect()).collect();
        for lambda in 0..p {
            // x^T M = lambda x^T  <=>  (M^T - lambda) x = 0 ; fix x_0 = 1.
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for j in 0..DEGREE {
                let mut r = vec![0u64; DEGREE - 1];
                for i in 1..DEGREE {
                    r[i - 1] = (m[i][j] + if i == j { p - lambda } else { 0 }) % p;
                }
                let c0 = (m[0][j] + if j == 0 { p - lambda } else { 0 }) % p;
                rows.push(r);
                rhs.push((p - c0) % p);
            }
            if let Some(t) = solve_mod_p(rows, rhs, p) {
                let x = [1, t[0], t[1], t[2]];
                if is_hom(&table, &x, p) && !found.contains(&x) {
                    found.push(x);
                }
            }
        }
    };
    'outer: for a in &range {
        for b in &range {
            for c in &range {
                try_gamma([0, *a, *b, *c], &mut found);
                if found.len() == DEGREE {
                    break 'outer;
                }
            }
        }
    }
    found
}

/// All degree-one primes above the odd unramified prime `p`, ordered by the
/// image of `theta` (ascending) and then by the basis images.
pub fn degree_one_primes_above(spec: &Arc<FieldSpec>, p: u64) -> Result<Vec<DegreeOnePrime>> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if (spec.discriminant() % BigInt::from(p)).is_zero() {
        return Err(Error::Ramified { p });
    }
    let p2 = p * p;
    let theta = spec.theta_coords();
    let mut found: Vec<(ResidueClass, ResidueClass, [u64; DEGREE])> = Vec::new();
    if !(spec.polynomial_discriminant() % BigInt::from(p)).is_zero() {
        for r in poly_roots_mod_p(spec.theta_minpoly(), p) {
            let lifted = hensel_lift(spec.theta_minpoly(), r)?;
            let images: [u64; DEGREE] = std::array::from_fn(|i| {
                eval_power(&spec.integral_basis()[i], lifted.value, p2).expect("p does not divide the index")
            });
            found.push((r, lifted, images));
        }
    } else {
        let table_p2 = structure_mod(spec, p2);
        for x in homs_mod_p_generic(spec, p) {
            let images = lift_hom(&table_p2, &x, p);
            let dot = |m: u64| {
                theta.iter().zip(&images).fold(0u64, |acc, (c, y)| (acc + mul_mod(reduce_bigint(c, m), y % m, m)) % m)
            };
            found.push((ResidueClass { value: dot(p), modulus: p }, ResidueClass { value: dot(p2), modulus: p2 }, images));
        }
    }
    found.sort_by_key(|a| (a.0.value, a.2));
    Ok(found
        .into_iter()
        .enumerate()
        .map(|(i, (root_c, lifted_c, images))| DegreeOnePrime {
            field: Arc::clone(spec),
            p,
            root_c,
            lifted_c,
            conjugate_index: i,
            images,
        })
        .collect())
}

/// Image of `x` in `O_K / pi^2 = Z/p^2`.
pub fn reduce_mod_p2(x: &NFElement, prime: &DegreeOnePrime) -> ResidueClass {
    reduce_mod_power(x, prime, 2)
}

/// Image of `x` in `O_K / pi^a = Z/p^a` for `a <= 2`.
pub fn reduce_mod_power(x: &NFElement, prime: &DegreeOnePrime, a: u32) -> ResidueClass {
    assert!(a <= 2, "only exponents up to 2 are supported");
    let m = prime.p.pow(a);
    let value = x
        .coords()
        .iter()
        .zip(&prime.images)
        .fold(0u64, |acc, (c, y)| (acc + mul_mod(reduce_bigint(c, m), y % m, m)) % m);
    ResidueClass { value, modulus: m }
}

/// The same reduction through the power basis, evaluating at `lifted_c`.
/// Only defined when `p` does not divide the index of `Z[theta]`.
pub fn reduce_via_power_basis(x: &NFElement, prime: &DegreeOnePrime) -> Option<ResidueClass> {
    let m = prime.p_squared();
    eval_power(&x.to_power_basis(), prime.lifted_c.value, m).map(|v| ResidueClass { value: v, modulus: m })
}

/// Multiplicative order of the image of `x` in `(O_K / pi^2)^x`.
pub fn unit_order_mod_p2(x: &NFElement, prime: &DegreeOnePrime) -> Result<u64> {
    mult_order(reduce_mod_p2(x, prime), prime.unit_group_order())
}

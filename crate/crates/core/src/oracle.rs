//! Naive ground-truth computations for cross-checking the main algorithms.
//! Nothing here calls into the polynomial, residue or unit code it checks.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::field::FieldSpec;

fn poly_mod_p(spec: &FieldSpec, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    spec.theta_minpoly()
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect()
}

fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Quotient of monic `f` by `x - r`.
fn deflate(f: &[u64], r: u64, p: u64) -> Vec<u64> {
    let n = f.len() - 1;
    let mut q = vec![0u64; n];
    let mut carry = 0u64;
    for i in (0..n).rev() {
        carry = (f[i + 1] + carry * r) % p;
        q[i] = carry;
    }
    q
}

/// Remainder of monic `f` modulo monic `g`.
fn rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (i, &c) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
        }
        r.pop();
    }
    r
}

/// Degrees of the irreducible factors of the minimal polynomial of `theta`
/// modulo `p`, ascending, found by stripping roots one at a time and testing
/// the remaining quartic against every monic quadratic.
pub fn oracle_splitting(spec: &Arc<FieldSpec>, p: u64) -> Vec<usize> {
    let mut f = poly_mod_p(spec, p);
    let mut degrees = Vec::new();
    'strip: while f.len() > 1 {
        for r in 0..p {
            if eval(&f, r, p) == 0 {
                f = deflate(&f, r, p);
                degrees.push(1);
                continue 'strip;
            }
        }
        break;
    }
    match f.len() - 1 {
        0 => {}
        4 => {
            let splits = (0..p).any(|a| (0..p).any(|b| rem(&f, &[b, a, 1], p).iter().all(|&c| c == 0)));
            if splits {
                degrees.extend([2, 2]);
            } else {
                degrees.push(4);
            }
        }
        d => degrees.push(d),
    }
    degrees.sort_unstable();
    degrees
}

/// Order of `u` modulo `m` by repeated multiplication; `None` unless
/// `gcd(u, m) = 1`.
pub fn oracle_order(u: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    let u = u % m;
    let mut x = u;
    for k in 1..=m {
        if x == 1 {
            return Some(k);
        }
        x = (x as u128 * u as u128 % m as u128) as u64;
    }
    None
}

const FILTERS: [u64; 4] = [64, 63, 65, 11];

struct SquareFilter {
    tables: Vec<Vec<bool>>,
}

impl SquareFilter {
    fn new() -> Self {
        let tables = FILTERS
            .iter()
            .map(|&m| {
                let mut t = vec![false; m as usize];
                for x in 0..m {
                    t[(x * x % m) as usize] = true;
                }
                t
            })
            .collect();
        SquareFilter { tables }
    }
}

fn exact_sqrt(n: u128) -> Option<u64> {
    let r = (n as f64).sqrt() as u128;
    (r.saturating_sub(2)..=r + 2).find(|&x| x * x == n).map(|x| x as u64)
}

/// Smallest unit `> 1` of `Q(sqrt d)` with norm `+-1`, by sweeping `y = 1, 2,
/// ...`: returns `(x, y)` with unit `x + y sqrt(d)`, or `(u, v)` with unit
/// `(u + v sqrt(d)) / 2` when `d = 1 (mod 4)`. Gives up after `max_y`.
pub fn oracle_unit_minimality(d: u64, max_y: Option<u64>) -> Option<(u64, u64)> {
    let half = d % 4 == 1;
    let shift: u64 = if half { 4 } else { 1 };
    let filter = SquareFilter::new();
    // residues of d y^2 and of the increment d (2y + 1) for each filter modulus
    let mut res: Vec<u64> = FILTERS.iter().map(|&m| d % m).collect();
    let mut inc: Vec<u64> = FILTERS.iter().map(|&m| 3 * d % m).collect();
    let step: Vec<u64> = FILTERS.iter().map(|&m| 2 * d % m).collect();
    let mut y: u64 = 1;
    loop {
        if max_y.is_some_and(|m| y > m) {
            return None;
        }
        // norm -1 side first: it gives the smaller x for the same y
        for (sign, s) in [(-1i8, shift), (1, shift)] {
            let passes = FILTERS.iter().enumerate().all(|(i, &m)| {
                let v = if sign < 0 { (res[i] + m - s % m) % m } else { (res[i] + s) % m };
                filter.tables[i][v as usize]
            });
            if passes {
                let dy2 = d as u128 * y as u128 * y as u128;
                let n = if sign < 0 { dy2 - s as u128 } else { dy2 + s as u128 };
                if let Some(x) = exact_sqrt(n) {
                    return Some((x, y));
                }
            }
        }
        for i in 0..FILTERS.len() {
            let m = FILTERS[i];
            res[i] = (res[i] + inc[i]) % m;
            inc[i] = (inc[i] + step[i]) % m;
        }
        y += 1;
    }
}

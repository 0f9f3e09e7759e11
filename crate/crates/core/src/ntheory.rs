//! Elementary number theory on machine integers and a few arbitrary-precision
//! helpers: primality, factorisation, modular powering, multiplicative orders,
//! discrete logarithms, roots of polynomials modulo p and their Hensel lifts,
//! and fundamental units of real quadratic fields.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// A residue `value mod modulus` with `0 <= value < modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueClass {
    pub value: u64,
    pub modulus: u64,
}

impl ResidueClass {
    pub fn new(value: i128, modulus: u64) -> Self {
        assert!(modulus > 0);
        let v = value.rem_euclid(modulus as i128) as u64;
        ResidueClass { value: v, modulus }
    }

    pub fn mul(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        ResidueClass { value: mul_mod(self.value, other.value, self.modulus), modulus: self.modulus }
    }

    pub fn pow(self, exp: u64) -> Self {
        ResidueClass { value: pow_mod(self.value, exp, self.modulus), modulus: self.modulus }
    }

    pub fn is_one(self) -> bool {
        self.value == 1 % self.modulus
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Deterministic Miller-Rabin; the base set is exact for every `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Odd primes in `[3, bound]`, ascending.
pub fn odd_primes_up_to(bound: u64) -> Vec<u64> {
    (3..=bound).step_by(2).filter(|&n| is_prime(n)).collect()
}

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize needs n >= 1");
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Multiplicative order of `u` in `(Z/m)^x`, where `group_order` is a
/// multiple of that order (for `m = p^2` it is `p(p-1)`).
pub fn mult_order(u: ResidueClass, group_order: u64) -> Result<u64> {
    let m = u.modulus;
    if gcd(u.value, m) != 1 {
        return Err(Error::NotCoprime { value: u.value, p: m });
    }
    debug_assert_eq!(pow_mod(u.value, group_order, m), 1 % m);
    let mut order = group_order;
    for (q, _) in factorize(group_order) {
        while order.is_multiple_of(q) && pow_mod(u.value, order / q, m) == 1 % m {
            order /= q;
        }
    }
    Ok(order)
}

/// Smallest `k >= 0` with `base^k == target (mod m)`, where the order of
/// `base` divides `order`. Brute force below 10^6, baby-step giant-step above.
pub fn discrete_log(base: u64, target: u64, m: u64, order: u64) -> Option<u64> {
    let target = target % m;
    if order < 1_000_000 {
        let mut acc = 1 % m;
        for k in 0..order {
            if acc == target {
                return Some(k);
            }
            acc = mul_mod(acc, base, m);
        }
        return None;
    }
    let step = (order as f64).sqrt().ceil() as u64;
    let mut baby = HashMap::with_capacity(step as usize);
    let mut acc = 1 % m;
    for j in 0..step {
        baby.entry(acc).or_insert(j);
        acc = mul_mod(acc, base, m);
    }
    let giant = inv_mod(pow_mod(base, step, m), m)?;
    let mut gamma = target;
    for i in 0..=step {
        if let Some(&j) = baby.get(&gamma) {
            let k = i * step + j;
            if k < order {
                return Some(k);
            }
        }
        gamma = mul_mod(gamma, giant, m);
    }
    None
}

/// All roots of `f` modulo the odd prime `p`, ascending, by exhaustive
/// evaluation.
pub fn poly_roots_mod_p(f: &IntPoly, p: u64) -> Vec<ResidueClass> {
    debug_assert!(!f.is_zero_mod(p));
    (0..p)
        .filter(|&c| f.eval_mod(c, p) == 0)
        .map(|c| ResidueClass { value: c, modulus: p })
        .collect()
}

/// Lift a simple root `c` of `f` modulo `p` to the unique root modulo `p^2`
/// congruent to it.
pub fn hensel_lift(f: &IntPoly, c: ResidueClass) -> Result<ResidueClass> {
    let p = c.modulus;
    let p2 = p * p;
    let df = f.derivative().eval_mod(c.value, p);
    let inv = inv_mod(df, p).ok_or(Error::NonSimpleRoot { root: c.value, p })?;
    let fc = f.eval_mod(c.value, p2);
    debug_assert_eq!(fc % p, 0);
    // c* = c - f(c) / f'(c); f(c) is divisible by p so only f'(c)^-1 mod p matters.
    let correction = mul_mod(fc / p, inv, p) * p;
    let lifted = (c.value + p2 - correction % p2) % p2;
    Ok(ResidueClass { value: lifted, modulus: p2 })
}

pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    factorize(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Squarefree kernel with sign: `n = s^2 * squarefree_part(n)`.
pub fn squarefree_part(n: i64) -> i64 {
    assert!(n != 0);
    let core: i64 = factorize(n.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(q, _)| q as i64)
        .product();
    core * n.signum()
}

/// Discriminant of the quadratic field `Q(sqrt(d))`.
pub fn quadratic_discriminant(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

/// Fundamental unit `x + y*omega` of the ring of integers of `Q(sqrt(d))`,
/// with `omega = sqrt(d)` for `d = 2, 3 (mod 4)` and `(1 + sqrt(d))/2` for
/// `d = 1 (mod 4)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticUnit {
    pub d: i64,
    pub x: BigInt,
    pub y: BigInt,
    /// Norm of the unit, `+1` or `-1`.
    pub norm: i8,
}

impl QuadraticUnit {
    pub fn half_integral(&self) -> bool {
        self.d.rem_euclid(4) == 1
    }

    /// Coordinates `(u, v)` of the unit written as `(u + v*sqrt(d)) / 2` when
    /// half-integral, `u + v*sqrt(d)` otherwise.
    pub fn sqrt_form(&self) -> (BigInt, BigInt) {
        if self.half_integral() {
            (BigInt::from(2) * &self.x + &self.y, self.y.clone())
        } else {
            (self.x.clone(), self.y.clone())
        }
    }
}

/// Fundamental unit of the real quadratic field `Q(sqrt(d))` from the
/// continued fraction of `sqrt(d)` (or of `(sqrt(d) - 1)/2` when
/// `d = 1 mod 4`): the first convergent `x/y` whose norm form is `+-1`.
pub fn continued_fraction_fundamental_unit(d: i64) -> QuadraticUnit {
    assert!(d > 1 && is_squarefree(d), "d must be squarefree and > 1");
    let half = d.rem_euclid(4) == 1;
    let c = (d - 1) / 4;
    let norm_form = |x: &BigInt, y: &BigInt| -> BigInt {
        if half {
            x * x + x * y - BigInt::from(c) * y * y
        } else {
            x * x - BigInt::from(d) * y * y
        }
    };
    // Expansion of (P + sqrt(d)) / Q.
    let (mut p_num, mut q_den): (i64, i64) = if half { (-1, 2) } else { (0, 1) };
    let s = (d as u64).sqrt() as i64;
    let floor_quot = |p_num: i64, q_den: i64| -> i64 {
        if q_den > 0 {
            Integer::div_floor(&(p_num + s), &q_den)
        } else {
            Integer::div_floor(&(p_num + s + 1), &q_den)
        }
    };
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    loop {
        let a = floor_quot(p_num, q_den);
        let a_big = BigInt::from(a);
        (h_prev, h) = (h.clone(), &a_big * &h + &h_prev);
        (k_prev, k) = (k.clone(), &a_big * &k + &k_prev);
        if k.is_positive() {
            let n = norm_form(&h, &k);
            if n.is_one() || n == -BigInt::one() {
                let norm = if n.is_one() { 1 } else { -1 };
                return QuadraticUnit { d, x: h, y: k, norm };
            }
        }
        p_num = a * q_den - p_num;
        q_den = (d - p_num * p_num) / q_den;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|q| q * q <= n).all(|q| !n.is_multiple_of(q))
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(157));
        assert!(!is_prime(1));
        assert!(!is_prime(24649));
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime(n), trial_division_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn factorisations() {
        assert_eq!(factorize(156), vec![(2, 2), (3, 1), (13, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(20), vec![(2, 2), (5, 1)]);
        assert_eq!(factorize(6123), vec![(3, 1), (13, 1), (157, 1)]);
    }

    #[test]
    fn roots_mod_p() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        let r: Vec<u64> = poly_roots_mod_p(&f, 5).iter().map(|c| c.value).collect();
        assert_eq!(r, vec![2, 3]);
        assert!(poly_roots_mod_p(&f, 7).is_empty());
        let g = IntPoly::from_i64(&[144, 0, -20, 0, 1]);
        let roots = poly_roots_mod_p(&g, 157);
        assert_eq!(roots.len(), 4);
        let brute: Vec<u64> = (0..157u64)
            .filter(|&c| (c.pow(4) + 144 + 157 * 157 * 20 - 20 * c * c) % 157 == 0)
            .collect();
        assert_eq!(roots.iter().map(|c| c.value).collect::<Vec<_>>(), brute);
    }

    #[test]
    fn hensel_examples() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        let lifted = hensel_lift(&f, ResidueClass { value: 2, modulus: 5 }).unwrap();
        assert_eq!(lifted, ResidueClass { value: 7, modulus: 25 });

        // x^2 - 11 at 2 mod 7: c* = c - f(c) f'(c)^-1 mod 49.
        let g = IntPoly::from_i64(&[-11, 0, 1]);
        let lifted = hensel_lift(&g, ResidueClass { value: 2, modulus: 7 }).unwrap();
        let oracle = {
            let fc: i128 = 4 - 11;
            let inv = inv_mod(4, 49).unwrap() as i128;
            (2 - fc * inv).rem_euclid(49) as u64
        };
        assert_eq!(lifted.value, oracle);
        assert_eq!(lifted.value, 16);
        assert_eq!(g.eval_mod(lifted.value, 49), 0);

        let h = IntPoly::from_i64(&[-3, 1]);
        let lifted = hensel_lift(&h, ResidueClass { value: 3, modulus: 5 }).unwrap();
        assert_eq!(lifted, ResidueClass { value: 3, modulus: 25 });
    }

    #[test]
    fn hensel_rejects_double_root() {
        let f = IntPoly::from_i64(&[0, 0, 1]);
        let err = hensel_lift(&f, ResidueClass { value: 0, modulus: 7 }).unwrap_err();
        assert_eq!(err, Error::NonSimpleRoot { root: 0, p: 7 });
    }

    #[test]
    fn orders() {
        assert_eq!(mult_order(ResidueClass::new(-1, 25), 20).unwrap(), 2);
        assert_eq!(mult_order(ResidueClass::new(1, 49), 42).unwrap(), 1);
        assert!(matches!(
            mult_order(ResidueClass::new(10, 25), 20),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn discrete_logs() {
        let m = 157 * 157;
        let order = 157 * 156;
        // find a generator
        let g = (2..m)
            .find(|&g| mult_order(ResidueClass { value: g, modulus: m }, order).unwrap() == order)
            .unwrap();
        for k in [0, 1, 77, 6122, 24491] {
            let t = pow_mod(g, k, m);
            assert_eq!(discrete_log(g, t, m, order), Some(k));
        }
        let big_p = 1_000_003u64;
        let big_order = big_p - 1;
        let h = (2..).find(|&g| mult_order(ResidueClass { value: g, modulus: big_p }, big_order).unwrap() == big_order).unwrap();
        let t = pow_mod(h, 987_654, big_p);
        assert_eq!(discrete_log(h, t, big_p, big_order), Some(987_654));
    }

    #[test]
    fn fundamental_units() {
        let u = continued_fraction_fundamental_unit(11);
        assert_eq!((u.x, u.y, u.norm), (BigInt::from(10), BigInt::from(3), 1));
        let u = continued_fraction_fundamental_unit(5);
        assert_eq!((u.x.clone(), u.y.clone(), u.norm), (BigInt::from(0), BigInt::from(1), -1));
        assert_eq!(u.sqrt_form(), (BigInt::from(1), BigInt::from(1)));
        let u = continued_fraction_fundamental_unit(2);
        assert_eq!((u.x, u.y, u.norm), (BigInt::from(1), BigInt::from(1), -1));
        let u = continued_fraction_fundamental_unit(29);
        assert_eq!(u.sqrt_form(), (BigInt::from(5), BigInt::from(1)));
        let u = continued_fraction_fundamental_unit(94);
        assert_eq!(u.sqrt_form(), (BigInt::from(2143295), BigInt::from(221064)));
    }

    #[test]
    fn squarefree_helpers() {
        assert!(is_squarefree(-11));
        assert!(!is_squarefree(12));
        assert_eq!(squarefree_part(-44), -11);
        assert_eq!(squarefree_part(22), 22);
        assert_eq!(quadratic_discriminant(-1), -4);
        assert_eq!(quadratic_discriminant(-11), -11);
        assert_eq!(quadratic_discriminant(11), 44);
    }
}

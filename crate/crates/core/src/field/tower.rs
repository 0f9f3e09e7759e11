//! The relative quadratic extension `K = k(alpha)` over the real quadratic
//! subfield `k = Q(sqrt d)`, used to take exact square roots in `K`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{unit_vector, PowerArith};
use crate::linalg::{self, rat, RatMatrix};

/// `a + b sqrt(d)` with rational `a, b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RealQuad {
    pub a: BigRational,
    pub b: BigRational,
}

impl RealQuad {
    fn zero() -> Self {
        RealQuad { a: BigRational::zero(), b: BigRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        RealQuad { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    fn sub(&self, o: &Self) -> Self {
        RealQuad { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    fn mul(&self, o: &Self, d: &BigRational) -> Self {
        RealQuad {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    fn scale(&self, s: &BigRational) -> Self {
        RealQuad { a: &self.a * s, b: &self.b * s }
    }

    fn div(&self, o: &Self, d: &BigRational) -> Self {
        let norm = &o.a * &o.a - &o.b * &o.b * d;
        let conj = RealQuad { a: o.a.clone(), b: -o.b.clone() };
        self.mul(&conj, d).scale(&(BigRational::from_integer(1.into()) / norm))
    }
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let m = x.denom().sqrt();
    (&n * &n == *x.numer() && &m * &m == *x.denom()).then(|| BigRational::new(n, m))
}

#[derive(Clone, Debug)]
pub(crate) struct QuadraticSubfield {
    d: BigRational,
    /// Rows `1, s, alpha, s*alpha` in the power basis.
    frame: RatMatrix,
    frame_inv: RatMatrix,
    /// `alpha^2` as an element of `k`.
    delta: RealQuad,
}

impl QuadraticSubfield {
    pub fn new(d: i64, sqrt_d: &[BigRational], alpha: &[BigRational], arith: &PowerArith<'_>) -> Self {
        let frame = vec![
            unit_vector(0),
            sqrt_d.to_vec(),
            alpha.to_vec(),
            arith.mul(sqrt_d, alpha),
        ];
        let frame_inv = linalg::inverse(&frame).expect("tower frame is a Q-basis of K");
        let alpha_sq = linalg::vec_mat(&arith.mul(alpha, alpha), &frame_inv);
        assert!(alpha_sq[2].is_zero() && alpha_sq[3].is_zero(), "alpha^2 must lie in k");
        let delta = RealQuad { a: alpha_sq[0].clone(), b: alpha_sq[1].clone() };
        QuadraticSubfield { d: rat(d), frame, frame_inv, delta }
    }

    fn split(&self, v: &[BigRational]) -> (RealQuad, RealQuad) {
        let c = linalg::vec_mat(v, &self.frame_inv);
        (
            RealQuad { a: c[0].clone(), b: c[1].clone() },
            RealQuad { a: c[2].clone(), b: c[3].clone() },
        )
    }

    fn join(&self, w0: &RealQuad, w1: &RealQuad) -> Vec<BigRational> {
        let c = vec![w0.a.clone(), w0.b.clone(), w1.a.clone(), w1.b.clone()];
        linalg::vec_mat(&c, &self.frame)
    }

    /// Projection onto `k` along `alpha`: true when `v` lies in `k`.
    pub fn in_real_subfield(&self, v: &[BigRational]) -> bool {
        self.split(v).1.is_zero()
    }

    fn sqrt_real(&self, u: &RealQuad) -> Vec<RealQuad> {
        let d = &self.d;
        let mut out = Vec::new();
        if u.is_zero() {
            return vec![RealQuad::zero()];
        }
        if u.b.is_zero() {
            if let Some(r) = rational_sqrt(&u.a) {
                out.push(RealQuad { a: r, b: BigRational::zero() });
            }
            if let Some(r) = rational_sqrt(&(&u.a / d)) {
                out.push(RealQuad { a: BigRational::zero(), b: r });
            }
            return out;
        }
        let norm = &u.a * &u.a - &u.b * &u.b * d;
        let Some(n) = rational_sqrt(&norm) else {
            return out;
        };
        let two = rat(2);
        for x_sq in [(&u.a + &n) / &two, (&u.a - &n) / &two] {
            if let Some(x) = rational_sqrt(&x_sq) {
                if x.is_zero() {
                    continue;
                }
                let z = &u.b / (&two * &x);
                let cand = RealQuad { a: x, b: z };
                if cand.mul(&cand, d) == *u {
                    out.push(cand);
                }
            }
        }
        out
    }

    /// A square root of `v` in `K`, or `None` if `v` is not a square.
    pub fn sqrt(&self, v: &[BigRational], arith: &PowerArith<'_>) -> Option<Vec<BigRational>> {
        let d = &self.d;
        let (w0, w1) = self.split(v);
        let mut candidates: Vec<(RealQuad, RealQuad)> = Vec::new();
        if w1.is_zero() {
            candidates.extend(self.sqrt_real(&w0).into_iter().map(|s| (s, RealQuad::zero())));
            let t_sq = w0.div(&self.delta, d);
            candidates.extend(self.sqrt_real(&t_sq).into_iter().map(|t| (RealQuad::zero(), t)));
        } else {
            // s^2 + delta t^2 = w0, 2 s t = w1
            let rel_norm = w0.mul(&w0, d).sub(&self.delta.mul(&w1.mul(&w1, d), d));
            for r in self.sqrt_real(&rel_norm) {
                for signed in [r.clone(), r.scale(&rat(-1))] {
                    let t_sq = w0.add(&signed).div(&self.delta.scale(&rat(2)), d);
                    for t in self.sqrt_real(&t_sq) {
                        if t.is_zero() {
                            continue;
                        }
                        let s = w1.div(&t.scale(&rat(2)), d);
                        candidates.push((s, t));
                    }
                }
            }
        }
        candidates.into_iter().map(|(s, t)| self.join(&s, &t)).find(|y| arith.mul(y, y) == v)
    }
}

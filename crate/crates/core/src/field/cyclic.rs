//! Cyclic quartic fields as fixed fields inside `Q(zeta_f)`, generated by a
//! Gauss period. All cyclotomic arithmetic is exact in `Z[x]/(Phi_f)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{unit_vector, FieldKind, FieldParts, FieldSpec, RootOfUnity, DEGREE};
use crate::error::{Error, Result};
use crate::linalg::{self, rat_from_big};
use crate::ntheory::{gcd, pow_mod};
use crate::poly::IntPoly;

/// Conductors of the imaginary cyclic quartic fields with class number one.
pub const SUPPORTED_CONDUCTORS: [u64; 7] = [5, 13, 16, 29, 37, 53, 61];

pub(crate) fn real_subfield_of(conductor: u64) -> i64 {
    if conductor.is_power_of_two() {
        2
    } else {
        conductor as i64
    }
}

/// `Phi_f` by dividing `x^f - 1` by the cyclotomic polynomials of the proper
/// divisors.
pub fn cyclotomic_polynomial(f: u64) -> IntPoly {
    let mut num = {
        let mut c = vec![BigInt::zero(); f as usize + 1];
        c[0] = -BigInt::one();
        c[f as usize] = BigInt::one();
        IntPoly::new(c)
    };
    for d in 1..f {
        if f.is_multiple_of(d) {
            let (q, r) = num.div_rem_monic(&cyclotomic_polynomial(d));
            debug_assert!(r.is_zero());
            num = q;
        }
    }
    num
}

/// Elements of `Z[zeta_f]` as coefficient vectors modulo `Phi_f`.
struct Cyclotomic {
    f: u64,
    phi: IntPoly,
}

impl Cyclotomic {
    fn new(f: u64) -> Self {
        Cyclotomic { f, phi: cyclotomic_polynomial(f) }
    }

    fn dim(&self) -> usize {
        self.phi.degree()
    }

    fn reduce(&self, p: IntPoly) -> Vec<BigInt> {
        let (_, r) = p.div_rem_monic(&self.phi);
        let mut v = r.coeffs().to_vec();
        v.resize(self.dim(), BigInt::zero());
        v
    }

    fn zeta_pow(&self, a: u64) -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); (a % self.f) as usize + 1];
        c[(a % self.f) as usize] = BigInt::one();
        self.reduce(IntPoly::new(c))
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.reduce(IntPoly::new(a.to_vec()).mul(&IntPoly::new(b.to_vec())))
    }

    fn sum_of_powers(&self, exps: impl IntoIterator<Item = u64>) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.dim()];
        for e in exps {
            for (x, y) in acc.iter_mut().zip(self.zeta_pow(e)) {
                *x += y;
            }
        }
        acc
    }
}

fn closure(gens: &[u64], f: u64) -> BTreeSet<u64> {
    let mut set = BTreeSet::from([1u64]);
    loop {
        let next: BTreeSet<u64> = set
            .iter()
            .flat_map(|&x| gens.iter().map(move |&g| x * g % f))
            .chain(set.iter().copied())
            .collect();
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

/// The unique subgroup `H` of index 4 in `(Z/f)^x` with cyclic quotient and
/// `-1` outside `H`, together with an element whose image generates the
/// quotient.
fn period_subgroup(f: u64) -> (BTreeSet<u64>, u64) {
    let units: Vec<u64> = (1..f).filter(|&a| gcd(a, f) == 1).collect();
    let target = units.len() / 4;
    let mut found: Vec<(BTreeSet<u64>, u64)> = Vec::new();
    for (i, &a) in units.iter().enumerate() {
        for &b in &units[i..] {
            let h = closure(&[a, b], f);
            if h.len() != target || h.contains(&(f - 1)) || found.iter().any(|(g, _)| *g == h) {
                continue;
            }
            if let Some(&g0) = units.iter().find(|&&g| !h.contains(&(g * g % f))) {
                found.push((h, g0));
            }
        }
    }
    assert_eq!(found.len(), 1, "expected a unique imaginary cyclic quartic subfield");
    found.pop().unwrap()
}

pub fn build_cyclic_quartic(f: u64) -> Result<Arc<FieldSpec>> {
    if !SUPPORTED_CONDUCTORS.contains(&f) {
        return Err(Error::UnsupportedConductor(f));
    }
    let cyc = Cyclotomic::new(f);
    let (h, g0) = period_subgroup(f);
    let coset = |j: u32| -> Vec<u64> {
        let shift = pow_mod(g0, j as u64, f);
        h.iter().map(|&x| x * shift % f).collect()
    };
    let periods: Vec<Vec<BigInt>> = (0..4).map(|j| cyc.sum_of_powers(coset(j))).collect();
    let theta = periods[0].clone();

    let mut powers = vec![cyc.zeta_pow(0)];
    for _ in 0..DEGREE {
        let next = cyc.mul(powers.last().unwrap(), &theta);
        powers.push(next);
    }
    let as_rat = |v: &[BigInt]| -> Vec<BigRational> { v.iter().map(rat_from_big).collect() };
    let power_rows: Vec<Vec<BigRational>> = powers[..DEGREE].iter().map(|v| as_rat(v)).collect();
    let in_power = |v: &[BigInt]| -> Vec<BigRational> {
        linalg::express_in(&power_rows, &as_rat(v)).expect("element lies in the quartic subfield")
    };
    let top = in_power(&powers[DEGREE]);
    let mut minpoly_coeffs: Vec<BigInt> = top.iter().map(|c| -c.to_integer()).collect();
    assert!(top.iter().all(BigRational::is_integer));
    minpoly_coeffs.push(BigInt::one());
    let minpoly = IntPoly::new(minpoly_coeffs);

    // Z[zeta_f] has a Z-basis permuted up to sign by (Z/f)^x: zeta^a for
    // a = 1..f-1 when f is prime, zeta^a for a = 0..f/2-1 when f = 2^k. The
    // H-invariants are spanned by the orbit sums.
    let basis_exps: Vec<u64> = if f.is_power_of_two() { (0..f / 2).collect() } else { (1..f).collect() };
    let mut gens: Vec<Vec<BigRational>> = Vec::new();
    for &a in &basis_exps {
        let orbit: BTreeSet<u64> = h.iter().map(|&x| x * a % f).collect();
        let self_negating = f.is_power_of_two() && orbit.contains(&((a + f / 2) % f));
        if self_negating {
            continue;
        }
        gens.push(in_power(&cyc.sum_of_powers(orbit)));
    }

    let d = real_subfield_of(f);
    let sqrt_d = if f.is_power_of_two() {
        // zeta_8 + zeta_8^-1
        cyc.sum_of_powers([2, f - 2])
    } else {
        // quadratic Gauss sum; f = 1 mod 4 so it equals +sqrt(f)
        let mut acc = vec![BigInt::zero(); cyc.dim()];
        for a in 1..f {
            let chi = if pow_mod(a, (f - 1) / 2, f) == 1 { 1 } else { -1 };
            for (x, y) in acc.iter_mut().zip(cyc.zeta_pow(a)) {
                *x += y * chi;
            }
        }
        acc
    };
    let alpha: Vec<BigInt> = periods[0].iter().zip(&periods[2]).map(|(x, y)| x - y).collect();

    let root_of_unity = if f == 5 {
        RootOfUnity::Primitive { order: 5, power: in_power(&cyc.zeta_pow(1)) }
    } else {
        RootOfUnity::None
    };

    FieldSpec::assemble(FieldParts {
        kind: FieldKind::CyclicQuartic { conductor: f },
        expected_discriminant: FieldSpec::expected_discriminant(FieldKind::CyclicQuartic { conductor: f }),
        integer_generators: gens,
        coordinate_frame: (0..DEGREE).map(unit_vector).collect(),
        real_subfield_d: d,
        sqrt_real_d: in_power(&sqrt_d),
        imaginary_generator: in_power(&alpha),
        root_of_unity,
        generators: None,
        minpoly,
    })
}

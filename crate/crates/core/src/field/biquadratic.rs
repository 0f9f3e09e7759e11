use std::sync::Arc;

use num_rational::BigRational;

use super::{int_gcd, unit_vector, FieldKind, FieldParts, FieldSpec, PowerArith, RootOfUnity};
use crate::error::{Error, Result};
use crate::linalg::{rat, RatMatrix};
use crate::ntheory::is_squarefree;
use crate::poly::IntPoly;

/// Squarefree `k` with `Q(sqrt k)` the third quadratic subfield of
/// `Q(sqrt m, sqrt n)`.
pub(crate) fn third_subfield(m: i64, n: i64) -> i64 {
    let g = int_gcd(m, n);
    (m / g) * (n / g)
}

fn scale(v: &[BigRational], s: &BigRational) -> Vec<BigRational> {
    v.iter().map(|x| x * s).collect()
}

fn add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `omega` for `Q(sqrt d)` given the power-basis coordinates of `sqrt d`.
fn quadratic_omega(d: i64, sqrt_d: &[BigRational]) -> Vec<BigRational> {
    if d.rem_euclid(4) == 1 {
        scale(&add(&unit_vector(0), sqrt_d), &BigRational::new(1.into(), 2.into()))
    } else {
        sqrt_d.to_vec()
    }
}

/// `theta = sqrt m + sqrt n`, with minimal polynomial
/// `x^4 - 2(m+n) x^2 + (m-n)^2`.
pub fn build_biquadratic(m: i64, n: i64) -> Result<Arc<FieldSpec>> {
    for d in [m, n] {
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
    }
    if m == n || m == 1 || n == 1 {
        return Err(Error::DegenerateField { m, n });
    }
    let k = third_subfield(m, n);
    if k == 1 {
        return Err(Error::DegenerateField { m, n });
    }
    if m > 0 && n > 0 {
        return Err(Error::NotImaginary { m, n });
    }
    let real_d = [m, n, k].into_iter().find(|&d| d > 0).expect("one subfield is real");

    let minpoly = IntPoly::from_i64(&[(m - n) * (m - n), 0, -2 * (m + n), 0, 1]);
    let traces = super::power_traces(&minpoly);
    let arith = PowerArith { minpoly: &minpoly, traces: &traces };

    // theta^3 = (m + 3n) sqrt m + (3m + n) sqrt n
    let sqrt_m: Vec<BigRational> = {
        let den = rat(2 * (n - m));
        vec![rat(0), rat(-(3 * m + n)) / &den, rat(0), rat(1) / &den]
    };
    let sqrt_n: Vec<BigRational> = add(&unit_vector(1), &scale(&sqrt_m, &rat(-1)));
    let sqrt_mn = arith.mul(&sqrt_m, &sqrt_n);
    let sqrt_k = scale(&sqrt_mn, &(rat(1) / rat(int_gcd(m, n))));
    debug_assert_eq!(arith.mul(&sqrt_m, &sqrt_m), scale(&unit_vector(0), &rat(m)));
    debug_assert_eq!(arith.mul(&sqrt_k, &sqrt_k), scale(&unit_vector(0), &rat(k)));

    let sqrt_of = |d: i64| -> Vec<BigRational> {
        if d == m {
            sqrt_m.clone()
        } else if d == n {
            sqrt_n.clone()
        } else {
            sqrt_k.clone()
        }
    };

    let omegas: Vec<Vec<BigRational>> =
        [m, n, k].iter().map(|&d| quadratic_omega(d, &sqrt_of(d))).collect();
    let mut gens = omegas.clone();
    for i in 0..3 {
        for j in i + 1..3 {
            gens.push(arith.mul(&omegas[i], &omegas[j]));
        }
    }
    gens.push(arith.mul(&arith.mul(&omegas[0], &omegas[1]), &omegas[2]));

    let frame: RatMatrix = vec![unit_vector(0), sqrt_m.clone(), sqrt_n.clone(), sqrt_k.clone()];

    let imaginary = [m, n, k].into_iter().find(|&d| d < 0).expect("one subfield is imaginary");
    let has = |d: i64| m == d || n == d || k == d;
    let half = BigRational::new(1.into(), 2.into());
    let root_of_unity = if has(-1) && (has(2) || has(-2)) {
        // zeta_8 = (1 + i) sqrt(2) / 2
        let s2 = if has(2) { sqrt_of(2) } else { arith.mul(&sqrt_of(-2), &scale(&sqrt_of(-1), &rat(-1))) };
        let z = scale(&arith.mul(&add(&unit_vector(0), &sqrt_of(-1)), &s2), &half);
        RootOfUnity::Primitive { order: 8, power: z }
    } else if has(-1) && (has(3) || has(-3)) {
        // zeta_12 = (sqrt 3 + i) / 2
        let s3 = if has(3) { sqrt_of(3) } else { arith.mul(&sqrt_of(-3), &scale(&sqrt_of(-1), &rat(-1))) };
        let z = scale(&add(&s3, &sqrt_of(-1)), &half);
        RootOfUnity::Primitive { order: 12, power: z }
    } else if has(-1) {
        RootOfUnity::Primitive { order: 4, power: sqrt_of(-1) }
    } else if has(-3) {
        // zeta_3 = (-1 + sqrt(-3)) / 2
        let z = scale(&add(&scale(&unit_vector(0), &rat(-1)), &sqrt_of(-3)), &half);
        RootOfUnity::Primitive { order: 3, power: z }
    } else {
        RootOfUnity::None
    };

    FieldSpec::assemble(FieldParts {
        kind: FieldKind::Biquadratic { m, n },
        expected_discriminant: FieldSpec::expected_discriminant(FieldKind::Biquadratic { m, n }),
        integer_generators: gens,
        coordinate_frame: frame,
        real_subfield_d: real_d,
        sqrt_real_d: sqrt_of(real_d),
        imaginary_generator: sqrt_of(imaginary),
        root_of_unity,
        generators: Some((sqrt_m.clone(), sqrt_n.clone())),
        minpoly,
    })
}

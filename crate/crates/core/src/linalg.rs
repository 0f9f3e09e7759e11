//! Small exact linear algebra over Q and Z: the matrices here are at most
//! 28 columns wide, so straightforward Gaussian elimination is plenty.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_from_big(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

pub fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
        .collect()
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat(v: &[BigRational], m: &RatMatrix) -> Vec<BigRational> {
    let cols = m[0].len();
    (0..cols)
        .map(|j| v.iter().zip(m).fold(BigRational::zero(), |acc, (x, row)| acc + x * &row[j]))
        .collect()
}

pub fn det(m: &RatMatrix) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let pivot = a[col][col].clone();
        d *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let t = &factor * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    d
}

pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let pivot = a[col][col].clone();
        for c in 0..2 * n {
            a[col][c] /= &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..2 * n {
                let t = &factor * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Coefficients `c` with `sum_i c_i * vectors[i] == target`, if the system is
/// consistent. The vectors must be linearly independent.
pub fn express_in(vectors: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = vectors.len();
    let len = target.len();
    // Augmented system: rows are coordinates, columns the unknowns.
    let mut a: RatMatrix = (0..len)
        .map(|r| {
            let mut row: Vec<BigRational> = vectors.iter().map(|v| v[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivot_rows = Vec::with_capacity(k);
    let mut row = 0;
    for col in 0..k {
        let piv = (row..len).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, row);
        let pivot = a[row][col].clone();
        for c in col..=k {
            a[row][c] /= &pivot;
        }
        for r in 0..len {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=k {
                let t = &factor * &a[row][c];
                a[r][c] -= t;
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some(pivot_rows.iter().map(|&r| a[r][k].clone()).collect())
}

/// Characteristic polynomial `det(xI - M)`, constant term first, by
/// Faddeev-LeVerrier.
pub fn charpoly(m: &RatMatrix) -> Vec<BigRational> {
    let n = m.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut work = identity(n);
    let zero_mat: RatMatrix = vec![vec![BigRational::zero(); n]; n];
    let mut prev = zero_mat;
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut mk = mat_mul(m, &prev);
        for i in 0..n {
            mk[i][i] += &coeffs[n - k + 1] * &work[i][i];
        }
        let am = mat_mul(m, &mk);
        let tr = (0..n).fold(BigRational::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -tr / rat(k as i64);
        prev = mk;
        work = identity(n);
    }
    coeffs
}

/// Hermite normal form of the lattice spanned by integer row vectors:
/// returns a basis of nonzero rows, upper triangular with positive pivots.
pub fn hnf(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = gens.to_vec();
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut pivot_row = 0;
    for col in 0..cols {
        loop {
            let nonzero: Vec<usize> =
                (pivot_row..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let min = *nonzero
                .iter()
                .min_by_key(|&&r| rows[r][col].abs())
                .unwrap();
            rows.swap(pivot_row, min);
            let pivot = rows[pivot_row][col].clone();
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&pivot);
                for c in 0..cols {
                    let t = &q * &rows[pivot_row][c];
                    rows[r][c] -= t;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < rows.len() && !rows[pivot_row][col].is_zero() {
            if rows[pivot_row][col].is_negative() {
                for c in 0..cols {
                    rows[pivot_row][c] = -rows[pivot_row][c].clone();
                }
            }
            let pivot = rows[pivot_row][col].clone();
            for r in 0..pivot_row {
                let q = rows[r][col].div_floor(&pivot);
                if q.is_zero() {
                    continue;
                }
                for c in 0..cols {
                    let t = &q * &rows[pivot_row][c];
                    rows[r][c] -= t;
                }
            }
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Least common multiple of the denominators of a rational vector.
pub fn common_denominator<'a>(vals: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    vals.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

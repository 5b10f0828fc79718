use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::GaussianRational as GR;

/// `λ1^m1 λ2^m2 = λ_j` with `m1 + m2 >= 2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Resonance {
    pub m1: u32,
    pub m2: u32,
    pub j: u8,
}

pub fn find_resonances(l1: &GR, l2: &GR, max_degree: u32) -> Result<Vec<Resonance>> {
    if l1.is_zero() || l2.is_zero() {
        return Err(Error::InvalidArgument("eigenvalues must be nonzero".into()));
    }
    if max_degree < 2 {
        return Err(Error::InvalidArgument("degree bound must be at least 2".into()));
    }
    let p1: Vec<GR> = (0..=max_degree).map(|e| l1.pow(e)).collect();
    let p2: Vec<GR> = (0..=max_degree).map(|e| l2.pow(e)).collect();
    let mut out = Vec::new();
    for s in 2..=max_degree {
        for m1 in (0..=s).rev() {
            let m2 = s - m1;
            let v = &p1[m1 as usize] * &p2[m2 as usize];
            if &v == l1 {
                out.push(Resonance { m1, m2, j: 1 });
            }
            if &v == l2 {
                out.push(Resonance { m1, m2, j: 2 });
            }
        }
    }
    Ok(out)
}

fn int_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    // Bareiss fraction-free elimination.
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Whether `(B, λ)` lies in `SL_λ(n, Z)`: `det B = ±1` is required, and the
/// answer is whether `(B - I) λ` is an integer vector.
pub fn sla_membership(b: &[Vec<i64>], lambda: &[BigRational]) -> Result<bool> {
    let n = b.len();
    if n == 0 || b.iter().any(|r| r.len() != n) || lambda.len() != n {
        return Err(Error::InvalidArgument("matrix must be square and match λ".into()));
    }
    let m: Vec<Vec<BigInt>> = b.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    if !int_det(m).abs().is_one() {
        return Err(Error::NotInSl);
    }
    for (i, row) in b.iter().enumerate() {
        let mut s = -lambda[i].clone();
        for (j, &v) in row.iter().enumerate() {
            s += &lambda[j] * BigRational::from_integer(BigInt::from(v));
        }
        if !s.is_integer() {
            return Ok(false);
        }
    }
    Ok(true)
}

use num_traits::{One, Zero};

use super::GaussianRational as GR;

/// Determinant by Gaussian elimination over Q(i).
pub fn determinant(mut m: Vec<Vec<GR>>) -> GR {
    let n = m.len();
    let mut det = GR::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return GR::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = &det * &p;
        let pinv = p.inv().unwrap();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &pinv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= &t;
            }
        }
    }
    det
}

/// Solution set of `A u = b`: a particular solution (free variables zero)
/// and a basis of the null space, or `None` if inconsistent.
#[derive(Debug, Clone)]
pub struct Solution {
    pub particular: Vec<GR>,
    pub nullspace: Vec<Vec<GR>>,
}

pub fn solve(a: &[Vec<GR>], b: &[GR]) -> Option<Solution> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<GR>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(piv, r);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut particular = vec![GR::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = m[i][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&fc| {
            let mut v = vec![GR::zero(); cols];
            v[fc] = GR::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -&m[i][fc];
            }
            v
        })
        .collect();
    Some(Solution { particular, nullspace })
}

use germ_core::scalar::GaussianRational as GR;
use num_traits::{One, Zero};

/// Solution of a linear system with the free unknowns set to zero.
pub struct Solution {
    pub values: Vec<GR>,
    /// `true` where every solution shares the value.
    pub determined: Vec<bool>,
}

/// Gauss-Jordan elimination of `rows · u = rhs`; `None` when inconsistent.
pub fn solve(mut rows: Vec<Vec<GR>>, mut rhs: Vec<GR>, n: usize) -> Option<Solution> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = GR::one().checked_div(&rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        rhs[r] = &rhs[r] * &inv;
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let m = rows[i][c].clone();
                for j in 0..n {
                    let d = &m * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &d;
                }
                let d = &m * &rhs[r];
                rhs[i] = &rhs[i] - &d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rhs[r..].iter().any(|b| !b.is_zero()) {
        return None;
    }
    let mut values = vec![GR::zero(); n];
    let mut determined = vec![false; n];
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    for (i, &c) in pivots.iter().enumerate() {
        values[c] = rhs[i].clone();
        determined[c] = free.iter().all(|&f| rows[i][f].is_zero());
    }
    Some(Solution { values, determined })
}

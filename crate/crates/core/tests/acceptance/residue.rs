//! One-dimensional formal normal form by undetermined coefficients.

use germ_core::scalar::GaussianRational as GR;
use num_traits::{One, Zero};

use super::linsolve::solve;

fn mul(a: &[GR], b: &[GR]) -> Vec<GR> {
    let n = a.len();
    let mut out = vec![GR::zero(); n];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b[..n - i].iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// `f ∘ g` through the common length.
fn compose(f: &[GR], g: &[GR]) -> Vec<GR> {
    let n = f.len();
    let mut out = vec![GR::zero(); n];
    let mut pw = vec![GR::zero(); n];
    pw[0] = GR::one();
    for c in f.iter().take(n) {
        for (o, q) in out.iter_mut().zip(&pw) {
            *o = &*o + &(c * q);
        }
        pw = mul(&pw, g);
    }
    out
}

/// `β` with `φ∘h = N∘φ`, `N = x + a x^{k+1} + β x^{2k+1}`, found degree by degree.
/// `h` holds the coefficients of `x^0 ..`, with `h[1] = 1` and `k` the first nonlinear index minus one.
pub fn normal_form_coefficient(h: &[GR], k: usize) -> GR {
    let n = 2 * k + 2;
    let mut hh: Vec<GR> = h.iter().take(n).cloned().collect();
    hh.resize(n, GR::zero());
    let mut phi = vec![GR::zero(); n];
    phi[1] = GR::one();
    let mut norm = vec![GR::zero(); n];
    norm[1] = GR::one();
    norm[k + 1] = hh[k + 1].clone();
    let residual = |phi: &[GR], norm: &[GR]| {
        let a = compose(phi, &hh);
        let b = compose(norm, phi);
        a.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<_>>()
    };
    for m in k + 2..=2 * k + 1 {
        let j = m - k;
        let r0 = residual(&phi, &norm);
        let mut cols = Vec::new();
        let mut trial = phi.clone();
        trial[j] = &trial[j] + &GR::one();
        cols.push(&residual(&trial, &norm)[m] - &r0[m]);
        if m == 2 * k + 1 {
            let mut tn = norm.clone();
            tn[m] = GR::one();
            cols.push(&residual(&phi, &tn)[m] - &r0[m]);
        }
        let sol = solve(vec![cols.clone()], vec![-&r0[m]], cols.len()).expect("degree-by-degree system");
        phi[j] = &phi[j] + &sol.values[0];
        if m == 2 * k + 1 {
            assert!(sol.determined[1]);
            norm[m] = sol.values[1].clone();
        }
    }
    assert!(residual(&phi, &norm).iter().all(|c| c.is_zero()));
    norm[2 * k + 1].clone()
}

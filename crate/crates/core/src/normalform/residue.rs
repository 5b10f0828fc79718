use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::jets::Jet1;
use crate::scalar::GaussianRational as GR;

/// For `h = x + a x^{k+1} + …`, returns `k` and the coefficient `c` of `x^{-1}`
/// in `1/(h(x) - x)`.
pub fn residue_1d(h: &Jet1) -> Result<(u32, GR)> {
    if !h.coeff(0).is_zero() || !h.coeff(1).is_one() {
        return Err(Error::NotTangentToIdentity);
    }
    let n = h.order();
    let m = (2..=n).find(|&d| !h.coeff(d).is_zero()).ok_or(Error::InvalidArgument(
        "germ is the identity to its order".into(),
    ))?;
    let k = m - 1;
    if n < 2 * k + 1 {
        return Err(Error::InsufficientOrder(format!("need order {} for k = {k}", 2 * k + 1)));
    }
    // h - x = x^{k+1} (a_0 + a_1 x + …); invert the bracket through x^k.
    let a: Vec<GR> = (0..=k).map(|j| h.coeff(m + j)).collect();
    let inv0 = a[0].inv().ok_or(Error::DivisionByZero)?;
    let mut b: Vec<GR> = vec![inv0.clone()];
    for j in 1..=k as usize {
        let mut s = GR::zero();
        for i in 1..=j {
            s += &(&a[i] * &b[j - i]);
        }
        b.push(-&(&s * &inv0));
    }
    Ok((k, b[k as usize].clone()))
}

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{GaussianRational as GR, Poly1};
use crate::error::{Error, Result};

/// Largest norm whose rational factorisation is attempted by trial division.
const MAX_NORM: u128 = 1 << 56;

type GInt = (BigInt, BigInt);

fn gmul(a: &GInt, b: &GInt) -> GInt {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gnorm(a: &GInt) -> BigInt {
    &a.0 * &a.0 + &a.1 * &a.1
}

/// `a / b` if `b` divides `a` in Z[i].
fn gdiv(a: &GInt, b: &GInt) -> Option<GInt> {
    let n = gnorm(b);
    let re = &a.0 * &b.0 + &a.1 * &b.1;
    let im = &a.1 * &b.0 - &a.0 * &b.1;
    if (&re % &n).is_zero() && (&im % &n).is_zero() {
        Some((re / &n, im / &n))
    } else {
        None
    }
}

fn factor_u128(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn two_squares(p: u128) -> (u128, u128) {
    let mut u = 1u128;
    loop {
        let rem = p - u * u;
        let v = (rem as f64).sqrt() as u128;
        for w in v.saturating_sub(1)..=v + 1 {
            if w * w == rem {
                return (u, w);
            }
        }
        u += 1;
    }
}

/// One representative of every associate class of divisors of `a != 0`.
fn gaussian_divisors(a: &GInt) -> Result<Vec<GInt>> {
    let n = gnorm(a)
        .to_u128()
        .filter(|&n| n <= MAX_NORM)
        .ok_or_else(|| Error::SearchTooLarge("coefficient norm too large".into()))?;
    let mut primes: Vec<GInt> = Vec::new();
    for (q, _) in factor_u128(n) {
        if q == 2 {
            primes.push((BigInt::one(), BigInt::one()));
        } else if q % 4 == 3 {
            primes.push((BigInt::from(q), BigInt::zero()));
        } else {
            let (u, v) = two_squares(q);
            primes.push((BigInt::from(u), BigInt::from(v)));
            primes.push((BigInt::from(u), -BigInt::from(v)));
        }
    }
    let mut divisors: Vec<GInt> = vec![(BigInt::one(), BigInt::zero())];
    let mut rest = a.clone();
    for pi in &primes {
        let mut m = 0;
        while let Some(r) = gdiv(&rest, pi) {
            rest = r;
            m += 1;
        }
        let mut next = Vec::with_capacity(divisors.len() * (m + 1));
        for d in &divisors {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..m {
                cur = gmul(&cur, pi);
                next.push(cur.clone());
            }
        }
        divisors = next;
    }
    Ok(divisors)
}

/// Scales `p` to coefficients in Z[i].
fn integral_coeffs(p: &Poly1) -> Vec<GInt> {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.parts().2));
    p.coeffs()
        .iter()
        .map(|c| {
            let (a, b, d) = c.parts();
            let s = &l / d;
            (a * &s, b * &s)
        })
        .collect()
}

/// Roots of `p` lying in Q(i), with multiplicities.
pub fn exact_roots(p: &Poly1) -> Result<Vec<(GR, usize)>> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("roots of the zero polynomial".into()));
    }
    let mut roots = Vec::new();
    let mut q = p.clone();
    let zero_mult = q.valuation().unwrap();
    if zero_mult > 0 {
        roots.push((GR::zero(), zero_mult));
        q = Poly1::new(q.coeffs()[zero_mult..].to_vec());
    }
    let sf = q.squarefree();
    if sf.is_constant() {
        return Ok(roots);
    }
    let ints = integral_coeffs(&sf);
    let a0 = ints.first().unwrap();
    let an = ints.last().unwrap();
    let tops = gaussian_divisors(a0)?;
    let bottoms = gaussian_divisors(an)?;
    let units: [GInt; 4] = [
        (BigInt::one(), BigInt::zero()),
        (BigInt::zero(), BigInt::one()),
        (-BigInt::one(), BigInt::zero()),
        (BigInt::zero(), -BigInt::one()),
    ];
    let mut found: Vec<GR> = Vec::new();
    let deg = sf.degree().unwrap();
    'outer: for b in &bottoms {
        let bg = GR::from_parts(b.0.clone(), b.1.clone(), BigInt::one());
        let binv = bg.inv().unwrap();
        for t in &tops {
            for u in &units {
                let a = gmul(t, u);
                let cand = &GR::from_parts(a.0, a.1, BigInt::one()) * &binv;
                if !found.contains(&cand) && sf.eval(&cand).is_zero() {
                    found.push(cand);
                    if found.len() == deg {
                        break 'outer;
                    }
                }
            }
        }
    }
    for r in found {
        let lin = Poly1::new(vec![-&r, GR::one()]);
        let mut m = 0;
        loop {
            let (quot, rem) = q.div_rem(&lin)?;
            if !rem.is_zero() {
                break;
            }
            q = quot;
            m += 1;
        }
        roots.push((r, m));
    }
    Ok(roots)
}

/// All complex roots (with multiplicity) by Aberth iteration and Newton polishing.
pub fn numeric_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let mut zeros = 0;
    while c[0].norm() == 0.0 {
        c.remove(0);
        zeros += 1;
    }
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    let dmonic: Vec<Complex64> = (1..=n).map(|d| monic[d] * d as f64).collect();
    let eval = |cs: &[Complex64], z: Complex64| cs.iter().rev().fold(Complex64::new(0.0, 0.0), |a, &b| a * z + b);
    let radius = 1.0 + monic[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let pz = eval(&monic, z[i]);
            let dz = eval(&dmonic, z[i]);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / dz;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if i != j {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = eval(&dmonic, *zi);
            if d.norm() == 0.0 {
                break;
            }
            let step = eval(&monic, *zi) / d;
            if !step.is_finite() {
                break;
            }
            *zi -= step;
        }
    }
    z.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), zeros));
    z
}

/// Newton refinement of a single root of `p`.
pub fn refine_root(p: &Poly1, z0: Complex64) -> Complex64 {
    let dp = p.derivative();
    let mut z = z0;
    for _ in 0..50 {
        let d = dp.eval_complex(z);
        if d.norm() == 0.0 {
            break;
        }
        let step = p.eval_complex(z) / d;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 1e-17 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Roots of `p`: those in Q(i) exactly, the rest numerically.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub exact: Vec<(GR, usize)>,
    pub numeric: Vec<Complex64>,
}

pub fn roots(p: &Poly1) -> Result<RootSet> {
    let exact = exact_roots(p)?;
    let mut rest = p.clone();
    for (r, m) in &exact {
        let lin = Poly1::new(vec![-r, GR::one()]);
        for _ in 0..*m {
            rest = rest.div_exact(&lin)?;
        }
    }
    let numeric = numeric_roots(&rest.to_complex())
        .into_iter()
        .map(|z| refine_root(&rest, z))
        .collect();
    Ok(RootSet { exact, numeric })
}

/// Nearest rational with denominator at most `max_den`, and its distance.
pub fn nearest_small_rational(x: f64, max_den: i64) -> (i64, i64, f64) {
    let mut best = (x.round() as i64, 1, (x - x.round()).abs());
    for q in 2..=max_den {
        let p = (x * q as f64).round();
        let d = (x - p / q as f64).abs();
        if d < best.2 {
            best = (p as i64, q, d);
        }
    }
    best
}

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::orbit::{iterate_float, FloatMap};
use crate::blowup::direction_data;
use crate::error::{Error, Result};
use crate::jets::MapGerm;
use crate::lie::{is_dicritic, Dicriticity};
use crate::scalar::Poly1;

const MAX_REJECTIONS: usize = 10_000;

/// `(−π, π]`.
fn arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= -PI {
        a + 2.0 * PI
    } else {
        a
    }
}

/// The region `{|v| < r, |arg(−w/p0 − 2R/|p0|)| < aperture}` on one sheet of `w = 1/x^k`.
#[derive(Clone, Copy, Debug)]
pub struct SectorSpec {
    pub k: u32,
    pub p0: Complex64,
    pub big_r: f64,
    pub r: f64,
    pub aperture: f64,
    pub branch: u32,
}

impl SectorSpec {
    pub fn new(k: u32, p0: Complex64, big_r: f64, r: f64) -> Self {
        SectorSpec { k, p0, big_r, r, aperture: 2.0 * PI / 3.0, branch: 0 }
    }

    /// The point `x` on the selected sheet with `1/x^k = w`.
    pub fn x_from_w(&self, w: Complex64) -> Complex64 {
        let k = self.k as f64;
        let theta = -(arg(w) + 2.0 * PI * self.branch as f64) / k;
        Complex64::from_polar(w.norm().powf(-1.0 / k), theta)
    }
}

/// Index `b` in `[0, k)` with `x = |w|^{-1/k} e^{-i(Arg w + 2πb)/k}`.
pub fn sheet(x: Complex64, k: u32) -> u32 {
    let w = 1.0 / x.powu(k);
    let b = ((-(k as f64) * arg(x) - arg(w)) / (2.0 * PI)).round() as i64;
    b.rem_euclid(k as i64) as u32
}

pub fn in_sector(spec: &SectorSpec, x: Complex64, v: Complex64) -> Result<bool> {
    if x.norm() == 0.0 {
        return Err(Error::InvalidArgument("x = 0 is on the divisor".into()));
    }
    if v.norm() >= spec.r {
        return Ok(false);
    }
    if sheet(x, spec.k) != spec.branch % spec.k {
        return Ok(false);
    }
    let w = 1.0 / x.powu(spec.k);
    let z = -w / spec.p0 - spec.big_r * 2.0 / spec.p0.norm();
    Ok(arg(z).abs() < spec.aperture)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadiusChoice {
    Fixed(f64),
    /// Double from the given value until all samples converge or the fraction stalls.
    Auto(f64),
}

#[derive(Clone, Debug)]
pub struct FlowerParams {
    pub samples: usize,
    pub n_max: usize,
    pub radius: RadiusChoice,
    /// Bound on `|v|` for the sampled directions.
    pub r: f64,
    pub aperture: f64,
    /// Directions with `|p(v)|` below this are redrawn.
    pub p_floor: f64,
    pub seed: u64,
}

impl Default for FlowerParams {
    fn default() -> Self {
        FlowerParams {
            samples: 500,
            n_max: 10_000,
            radius: RadiusChoice::Auto(1.0),
            r: 2.0,
            aperture: 2.0 * PI / 3.0,
            p_floor: 0.25,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SignReport {
    pub big_r: f64,
    pub tried: Vec<(f64, f64)>,
    pub samples: usize,
    /// Direction draws rejected for `|p(v)|` below the floor.
    pub excluded: usize,
    pub converged: usize,
    pub max_residual: f64,
    /// Indices of non-convergent samples.
    pub failures: Vec<usize>,
}

impl SignReport {
    pub fn fraction(&self) -> f64 {
        self.converged as f64 / self.samples.max(1) as f64
    }

    fn to_json(&self) -> serde_json::Value {
        json!({
            "R": self.big_r,
            "calibration": self.tried.iter().map(|(r, f)| json!({"R": r, "fraction": f})).collect::<Vec<_>>(),
            "samples": self.samples,
            "excluded": self.excluded,
            "converged": self.converged,
            "fraction": self.fraction(),
            "max_residual": self.max_residual,
            "failures": self.failures,
        })
    }
}

#[derive(Clone, Debug)]
pub struct FlowerReport {
    pub k: u32,
    pub forward: SignReport,
    pub backward: SignReport,
}

impl FlowerReport {
    pub fn success(&self) -> bool {
        self.forward.fraction() == 1.0 && self.backward.fraction() == 1.0
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "k": self.k,
            "forward": self.forward.to_json(),
            "backward": self.backward.to_json(),
            "success": self.success(),
        })
    }
}

struct Sample {
    /// Direction draws rejected before this sample's `v`.
    rejected: usize,
    converged: bool,
    residual: f64,
}

/// Samples orbits starting in the sectors `V+` (iterating `F`) and `V-`
/// (iterating `F^{-1}`) and counts those converging to the divisor.
pub fn flower_verify(f: &MapGerm, params: &FlowerParams) -> Result<FlowerReport> {
    let k = match is_dicritic(f) {
        Dicriticity::Dicritic { k, .. } => k,
        _ => return Err(Error::NotDicritic),
    };
    let d = direction_data(f).ok_or(Error::NotDicritic)?;
    let (p, r) = (&d.p, &d.r);
    if p.is_zero() {
        return Err(Error::NotDicritic);
    }
    let fwd = FloatMap::new(f);
    let bwd = FloatMap::new(&f.invert());
    let forward = calibrate(&fwd, p, r, k, 1.0, params, 0)?;
    let backward = calibrate(&bwd, p, r, k, -1.0, params, 1)?;
    Ok(FlowerReport { k, forward, backward })
}

fn calibrate(
    map: &FloatMap,
    p: &Poly1,
    r: &Poly1,
    k: u32,
    sign: f64,
    params: &FlowerParams,
    stream: u64,
) -> Result<SignReport> {
    let (mut big_r, auto) = match params.radius {
        RadiusChoice::Fixed(r) => (r, false),
        RadiusChoice::Auto(r) => (r, true),
    };
    let mut tried: Vec<(f64, f64)> = Vec::new();
    loop {
        let mut rep = run_sign(map, p, r, k, sign, big_r, params, stream)?;
        let frac = rep.fraction();
        let stalled = tried.last().is_some_and(|&(_, prev)| prev == frac && frac > 0.0);
        tried.push((big_r, frac));
        if !auto || frac == 1.0 || stalled || tried.len() >= 12 {
            rep.tried = tried;
            return Ok(rep);
        }
        big_r *= 2.0;
    }
}

fn run_sign(
    map: &FloatMap,
    p: &Poly1,
    r: &Poly1,
    k: u32,
    sign: f64,
    big_r: f64,
    params: &FlowerParams,
    stream: u64,
) -> Result<SignReport> {
    let results: Vec<Sample> = (0..params.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            rng.set_stream(2 * i as u64 + stream);
            sample(map, p, r, k, sign, big_r, params, &mut rng)
        })
        .collect::<Result<_>>()?;
    let mut rep = SignReport {
        big_r,
        tried: Vec::new(),
        samples: 0,
        excluded: 0,
        converged: 0,
        max_residual: 0.0,
        failures: Vec::new(),
    };
    for (i, s) in results.iter().enumerate() {
        rep.excluded += s.rejected;
        rep.samples += 1;
        if s.converged {
            rep.converged += 1;
            rep.max_residual = rep.max_residual.max(s.residual);
        } else {
            rep.failures.push(i);
        }
    }
    Ok(rep)
}

fn sample(
    map: &FloatMap,
    p: &Poly1,
    r: &Poly1,
    k: u32,
    sign: f64,
    big_r: f64,
    params: &FlowerParams,
    rng: &mut ChaCha8Rng,
) -> Result<Sample> {
    let mut rejected = 0;
    let mut v;
    loop {
        v = Complex64::from_polar(params.r * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI));
        if p.eval_complex(v).norm() >= params.p_floor {
            break;
        }
        rejected += 1;
        if rejected >= MAX_REJECTIONS {
            return Err(Error::InvalidArgument("no direction with |p(v)| above the floor".into()));
        }
    }
    let theta = rng.gen_range(-params.aperture..params.aperture) * 0.98;
    let rho = big_r * rng.gen_range(1.0..4.0);
    let branch = rng.gen_range(0..k);
    // F^{-1} has leading coefficient -p.
    let p0 = p.eval_complex(v) * sign;
    let w = -p0 * (2.0 * big_r / p0.norm() + Complex64::from_polar(rho, theta));
    let spec = SectorSpec { k, p0, big_r, r: params.r, aperture: params.aperture, branch };
    let x = spec.x_from_w(w);
    if !in_sector(&spec, x, v)? {
        return Err(Error::Internal("sample outside its sector".into()));
    }
    let orbit = iterate_float(map, (x, v * x), params.n_max, 1.0)?;
    match orbit.limit_direction() {
        Some(vl) => Ok(Sample { rejected, converged: true, residual: r.eval_complex(vl).norm() }),
        None => Ok(Sample { rejected, converged: false, residual: 0.0 }),
    }
}

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

use super::orbit::{iterate_float, FloatMap, StopReason};
use crate::blowup::direction_data;
use crate::error::{Error, Result};
use crate::jets::MapGerm;
use crate::scalar::roots::refine_root;

/// Empirical behaviour of orbits near a characteristic direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Orbits of `F` and of `F^{-1}` entering the divisor near the direction approach it.
    Attracting,
    /// Such orbits move away from it.
    Repelling,
    Undetermined,
}

impl Orientation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Orientation::Attracting => "attracting",
            Orientation::Repelling => "repelling",
            Orientation::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProbeParams {
    pub probes: usize,
    /// `|1/x^k|` at the start of a probe.
    pub big_r: f64,
    /// Initial distance `|v - v0|`.
    pub eps: f64,
    pub steps: usize,
}

impl Default for ProbeParams {
    fn default() -> Self {
        ProbeParams { probes: 50, big_r: 100.0, eps: 0.05, steps: 2000 }
    }
}

#[derive(Clone, Debug)]
pub struct RootClassification {
    pub v0: Complex64,
    /// `r'(v0) / p(v0)`.
    pub ratio: Complex64,
    pub orientation: Orientation,
    pub forward_attracted: usize,
    pub forward_repelled: usize,
    pub backward_attracted: usize,
    pub backward_repelled: usize,
    pub probes: usize,
}

impl RootClassification {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "v0": [self.v0.re, self.v0.im],
            "ratio": [self.ratio.re, self.ratio.im],
            "orientation": self.orientation.as_str(),
            "forward": {"attracted": self.forward_attracted, "repelled": self.forward_repelled},
            "backward": {"attracted": self.backward_attracted, "repelled": self.backward_repelled},
            "probes": self.probes,
        })
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Outcome {
    Attracted,
    Repelled,
    Neither,
}

/// Probes each simple root of `r` with orbits of `F` and `F^{-1}` started
/// near the divisor in the direction `v0 + eps e^{iφ}`.
pub fn classify_characteristic_roots(
    f: &MapGerm,
    tolerance: f64,
    params: &ProbeParams,
) -> Result<Vec<RootClassification>> {
    let d = direction_data(f).ok_or(Error::NotTangentToIdentity)?;
    if d.is_dicritic() {
        return Err(Error::Dicritic);
    }
    let dr = d.r.derivative();
    let mut roots: Vec<Complex64> = d
        .rational_roots
        .iter()
        .filter(|(_, m)| *m == 1)
        .map(|(v, _)| v.to_complex())
        .collect();
    roots.extend(d.numeric_roots.iter().map(|&z| refine_root(&d.r, z)));
    let fwd = FloatMap::new(f);
    let bwd = FloatMap::new(&f.invert());
    let mut out = Vec::new();
    for v0 in roots {
        let p0 = d.p.eval_complex(v0);
        let ratio = dr.eval_complex(v0) / p0;
        if p0.norm() < 1e-12 || dr.eval_complex(v0).norm() < 1e-12 {
            continue;
        }
        let fw = probe(&fwd, d.k, v0, p0, params);
        let bw = probe(&bwd, d.k, v0, -p0, params);
        let count = |v: &[Outcome], o: Outcome| v.iter().filter(|&&x| x == o).count();
        let (fa, fr) = (count(&fw, Outcome::Attracted), count(&fw, Outcome::Repelled));
        let (ba, br) = (count(&bw, Outcome::Attracted), count(&bw, Outcome::Repelled));
        let n = params.probes;
        let orientation = if ratio.re.abs() < tolerance {
            Orientation::Undetermined
        } else if fa == n && ba == n {
            Orientation::Attracting
        } else if fr == n && br == n {
            Orientation::Repelling
        } else {
            Orientation::Undetermined
        };
        out.push(RootClassification {
            v0,
            ratio,
            orientation,
            forward_attracted: fa,
            forward_repelled: fr,
            backward_attracted: ba,
            backward_repelled: br,
            probes: n,
        });
    }
    Ok(out)
}

fn probe(map: &FloatMap, k: u32, v0: Complex64, p0: Complex64, params: &ProbeParams) -> Vec<Outcome> {
    (0..params.probes)
        .into_par_iter()
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / params.probes as f64;
            let v = v0 + Complex64::from_polar(params.eps, phi);
            // x^k = -1/(p0 R): the orbit of x tends to 0.
            let base = -1.0 / (p0 * params.big_r);
            let sheet = (j as u32) % k;
            let x = Complex64::from_polar(
                base.norm().powf(1.0 / k as f64),
                (base.arg() + 2.0 * PI * sheet as f64) / k as f64,
            );
            let Ok(orbit) = iterate_float(map, (x, v * x), params.steps, 1.0) else {
                return Outcome::Neither;
            };
            if orbit.stopped == StopReason::Escaped {
                return Outcome::Repelled;
            }
            let (xe, ye) = *orbit.points.last().unwrap();
            let e = (ye / xe - v0).norm();
            if e < 0.5 * params.eps {
                Outcome::Attracted
            } else if e > 2.0 * params.eps {
                Outcome::Repelled
            } else {
                Outcome::Neither
            }
        })
        .collect()
}

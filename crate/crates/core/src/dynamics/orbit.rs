use std::io::Write;

use num_complex::Complex64;
use serde_json::json;

use crate::blowup::direction_data;
use crate::error::{Error, Result};
use crate::jets::{FlatOrder, Jet2, MapGerm};
use crate::scalar::Poly1;

/// Orbits stop once the point is this close to the origin.
pub const ORIGIN_EPS: f64 = 1e-30;
/// Tail length and tolerance of the Cauchy test on `v_n`.
pub const TAIL: usize = 100;
pub const TAIL_TOL: f64 = 1e-8;

/// Polynomial representative of a jet, evaluated in double precision.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    terms: Vec<(u32, u32, Complex64)>,
    max_x: usize,
    max_y: usize,
}

impl FloatPoly {
    pub fn new(j: &Jet2) -> Self {
        let terms: Vec<_> = j.terms().map(|(&(a, b), c)| (a, b, c.to_complex())).collect();
        let max_x = terms.iter().map(|t| t.0 as usize).max().unwrap_or(0);
        let max_y = terms.iter().map(|t| t.1 as usize).max().unwrap_or(0);
        FloatPoly { terms, max_x, max_y }
    }

    fn eval_with(&self, xp: &[Complex64], yp: &[Complex64]) -> Complex64 {
        self.terms.iter().map(|&(a, b, c)| c * xp[a as usize] * yp[b as usize]).sum()
    }
}

fn powers(z: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=n {
        out.push(acc);
        acc *= z;
    }
    out
}

/// A map germ evaluated as a polynomial map of C^2.
#[derive(Clone, Debug)]
pub struct FloatMap {
    fx: FloatPoly,
    fy: FloatPoly,
}

impl FloatMap {
    pub fn new(f: &MapGerm) -> Self {
        FloatMap { fx: FloatPoly::new(f.fx()), fy: FloatPoly::new(f.fy()) }
    }

    pub fn apply(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        let nx = self.fx.max_x.max(self.fy.max_x);
        let ny = self.fx.max_y.max(self.fy.max_y);
        let xp = powers(x, nx);
        let yp = powers(y, ny);
        (self.fx.eval_with(&xp, &yp), self.fy.eval_with(&xp, &yp))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    MaxIterations,
    Escaped,
    Converged,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::MaxIterations => "max-iterations",
            StopReason::Escaped => "escaped",
            StopReason::Converged => "converged",
        }
    }
}

/// The points `(x_n, y_n)`, `n = 0 ..`, of an orbit.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub points: Vec<(Complex64, Complex64)>,
    pub stopped: StopReason,
}

impl OrbitRecord {
    /// `v_n = y_n / x_n`, `None` where `x_n = 0`.
    pub fn blowup_track(&self) -> Vec<Option<Complex64>> {
        self.points
            .iter()
            .map(|&(x, y)| (x != Complex64::new(0.0, 0.0)).then(|| y / x))
            .collect()
    }

    /// `1/(n x_n^k)` for `n >= 1`.
    pub fn seq1_samples(&self, k: u32) -> Vec<Complex64> {
        self.points
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, &(x, _))| 1.0 / (n as f64 * x.powu(k)))
            .collect()
    }

    /// Limit of `v_n` if the orbit tends to the origin along a direction.
    pub fn limit_direction(&self) -> Option<Complex64> {
        if self.stopped == StopReason::Escaped {
            return None;
        }
        let n = self.points.len();
        if self.stopped == StopReason::Converged {
            return self.blowup_track().into_iter().rev().flatten().next();
        }
        if n <= TAIL {
            return None;
        }
        let (x0, _) = self.points[0];
        let (xa, _) = self.points[n - 1 - TAIL];
        let (xb, _) = self.points[n - 1];
        if !(xb.norm() < xa.norm() && xb.norm() < x0.norm()) {
            return None;
        }
        let track = self.blowup_track();
        let tail: Vec<Complex64> = track[n - 1 - TAIL..].iter().flatten().copied().collect();
        let last = *tail.last()?;
        let spread = tail.iter().map(|v| (v - last).norm()).fold(0.0, f64::max);
        (spread < TAIL_TOL * (1.0 + last.norm())).then_some(last)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (x, y) = *self.points.last().unwrap();
        json!({
            "steps": self.points.len() - 1,
            "stopped": self.stopped.as_str(),
            "last": [[x.re, x.im], [y.re, y.im]],
        })
    }

    /// CSV with columns `n, Re x, Im x, Re v, Im v, |1/(n x^k) + k p(v)|`.
    pub fn write_csv<W: Write>(&self, out: W, k: u32, p: &Poly1) -> Result<()> {
        let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "re_x", "im_x", "re_v", "im_v", "seq1_error"]).map_err(io)?;
        for (n, &(x, y)) in self.points.iter().enumerate() {
            let v = y / x;
            let err = if n == 0 {
                f64::NAN
            } else {
                (1.0 / (n as f64 * x.powu(k)) + k as f64 * p.eval_complex(v)).norm()
            };
            w.write_record([
                n.to_string(),
                x.re.to_string(),
                x.im.to_string(),
                v.re.to_string(),
                v.im.to_string(),
                err.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        Ok(())
    }
}

pub fn iterate_orbit(
    f: &MapGerm,
    start: (Complex64, Complex64),
    n_max: usize,
    escape_radius: f64,
) -> Result<OrbitRecord> {
    iterate_float(&FloatMap::new(f), start, n_max, escape_radius)
}

pub(crate) fn iterate_float(
    map: &FloatMap,
    start: (Complex64, Complex64),
    n_max: usize,
    escape_radius: f64,
) -> Result<OrbitRecord> {
    let size = |(x, y): (Complex64, Complex64)| x.norm().max(y.norm());
    if size(start) == 0.0 {
        return Err(Error::FixedPoint);
    }
    let mut points = Vec::with_capacity(n_max + 1);
    points.push(start);
    let mut cur = start;
    let mut stopped = StopReason::MaxIterations;
    for _ in 0..n_max {
        cur = map.apply(cur.0, cur.1);
        points.push(cur);
        let s = size(cur);
        if !s.is_finite() || s > escape_radius {
            stopped = StopReason::Escaped;
            break;
        }
        if s < ORIGIN_EPS {
            stopped = StopReason::Converged;
            break;
        }
    }
    Ok(OrbitRecord { points, stopped })
}

fn flatness(f: &MapGerm) -> Result<u32> {
    match f.flat_order() {
        FlatOrder::Flat(m) => Ok(m - 1),
        FlatOrder::NotTangent => Err(Error::NotTangentToIdentity),
        FlatOrder::Identity => Err(Error::OrbitHypothesis),
    }
}

#[derive(Clone, Debug)]
pub struct Seq1Result {
    pub estimate: Complex64,
    pub target: Complex64,
    pub error: f64,
    pub v_limit: Complex64,
    pub steps: usize,
}

impl Seq1Result {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "estimate": [self.estimate.re, self.estimate.im],
            "target": [self.target.re, self.target.im],
            "error": self.error,
            "v_limit": [self.v_limit.re, self.v_limit.im],
            "steps": self.steps,
        })
    }
}

/// Compares `1/(n x_n^k)` with `-k p(v)` along the orbit of `start`.
pub fn seq1_check(f: &MapGerm, start: (Complex64, Complex64), n_max: usize) -> Result<Seq1Result> {
    let k = flatness(f)?;
    let d = direction_data(f).ok_or(Error::OrbitHypothesis)?;
    let orbit = iterate_orbit(f, start, n_max, 1.0)?;
    if orbit.stopped != StopReason::MaxIterations || orbit.points.len() < 4 {
        return Err(Error::OrbitHypothesis);
    }
    let track = orbit.blowup_track();
    let v_limit = (*track.last().unwrap()).ok_or(Error::OrbitHypothesis)?;
    let n = orbit.points.len();
    let (xa, _) = orbit.points[n / 2];
    let (xb, _) = orbit.points[n - 1];
    let v_mid = track[n / 2].ok_or(Error::OrbitHypothesis)?;
    // x_n must shrink and v_n settle; the v test is loose since v_n may converge slowly.
    if !(xb.norm() < xa.norm()) || (v_mid - v_limit).norm() > 1e-2 * (1.0 + v_limit.norm()) {
        return Err(Error::OrbitHypothesis);
    }
    let samples = orbit.seq1_samples(k);
    let tail = &samples[samples.len() / 2..];
    let estimate = tail.iter().sum::<Complex64>() / tail.len() as f64;
    let target = -(k as f64) * d.p.eval_complex(v_limit);
    Ok(Seq1Result { estimate, target, error: (estimate - target).norm(), v_limit, steps: n - 1 })
}

/// The limit direction of a convergent orbit and `|r(v_limit)|`.
pub fn limit_direction_check(f: &MapGerm, orbit: &OrbitRecord) -> Result<(Complex64, f64)> {
    let d = direction_data(f).ok_or(Error::OrbitHypothesis)?;
    let v = orbit.limit_direction().ok_or(Error::OrbitHypothesis)?;
    Ok((v, d.r.eval_complex(v).norm()))
}

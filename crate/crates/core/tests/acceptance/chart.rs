//! Brute-force conjugation of blown-up germs in the chart `y = v x`.
//!
//! A germ is held as two truncated series in `x` whose coefficients are
//! rational functions of `v`. The oracle looks for `H` and the free part of a
//! target `G` with `G∘H = H∘F`, one `x`-degree at a time, by writing every
//! unknown coefficient function in a fixed basis and solving the resulting
//! linear system over Q(i).

use germ_core::jets::MapGerm;
use germ_core::scalar::{GaussianRational as GR, Poly1, RatFunc};
use num_traits::{One, Zero};

use super::linsolve::solve;

pub type Ser = Vec<RatFunc>;

fn add(a: &Ser, b: &Ser) -> Ser {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &Ser, b: &Ser) -> Ser {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mul(a: &Ser, b: &Ser) -> Ser {
    let m = a.len();
    let mut out = vec![RatFunc::zero(); m];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b[..m - i].iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn var() -> RatFunc {
    RatFunc::var()
}

/// `c(v + δ)` through `x^budget`, with `δ = O(x)`.
fn taylor(c: &RatFunc, delta: &Ser, budget: usize) -> Ser {
    let m = delta.len();
    let mut out = vec![RatFunc::zero(); m];
    out[0] = c.clone();
    let mut term = vec![RatFunc::zero(); m];
    term[0] = RatFunc::one();
    let mut deriv = c.clone();
    let mut fact = GR::one();
    for n in 1..=budget {
        term = mul(&term, delta);
        for t in term.iter_mut().skip(budget + 1) {
            *t = RatFunc::zero();
        }
        deriv = deriv.derivative();
        if deriv.is_zero() || term.iter().all(|t| t.is_zero()) {
            break;
        }
        fact = fact.mul_int(n as i64);
        let d = deriv.scale(&fact.inv().unwrap());
        for (o, t) in out.iter_mut().zip(&term) {
            if !t.is_zero() {
                *o = &*o + &(&d * t);
            }
        }
    }
    out
}

/// Coefficients of `x^0 ..= x^m` of both components.
#[derive(Clone, Debug)]
pub struct Chart {
    pub x: Ser,
    pub v: Ser,
}

impl Chart {
    pub fn identity(m: usize) -> Chart {
        let mut x = vec![RatFunc::zero(); m + 1];
        let mut v = vec![RatFunc::zero(); m + 1];
        x[1] = RatFunc::one();
        v[0] = var();
        Chart { x, v }
    }

    pub fn m(&self) -> usize {
        self.x.len() - 1
    }

    /// `x1 = F_x(x, vx)`, `v1 = F_y(x, vx) / F_x(x, vx)`; the v-component is kept through `x^{m-1}`.
    pub fn of_germ(f: &MapGerm, m: usize) -> Chart {
        assert!(f.order() as usize >= m);
        let spread = |j: &germ_core::jets::Jet2| {
            let mut out = vec![Poly1::zero(); m + 2];
            for (&(a, b), c) in j.terms() {
                let d = (a + b) as usize;
                if d <= m + 1 {
                    out[d] = &out[d] + &Poly1::monomial(b as usize, c.clone());
                }
            }
            out
        };
        let xs = spread(f.fx());
        let ys = spread(f.fy());
        let mut v = vec![Poly1::zero(); m + 1];
        for j in 0..m {
            let mut w = ys[j + 1].clone();
            for i in 1..=j {
                w = &w - &(&xs[i + 1] * &v[j - i]);
            }
            v[j] = w;
        }
        Chart {
            x: xs[..=m].iter().cloned().map(RatFunc::from_poly).collect(),
            v: v.into_iter().map(RatFunc::from_poly).collect(),
        }
    }

    /// `self ∘ h`.
    pub fn compose(&self, h: &Chart) -> Chart {
        let m = self.m();
        let mut delta = h.v.clone();
        delta[0] = &delta[0] - &var();
        assert!(delta[0].is_zero(), "conjugator must fix the divisor pointwise");
        let mut pows = vec![vec![RatFunc::zero(); m + 1]];
        pows[0][0] = RatFunc::one();
        for j in 1..=m {
            pows.push(mul(&pows[j - 1], &h.x));
        }
        let apply = |comp: &Ser| {
            let mut out = vec![RatFunc::zero(); m + 1];
            for (j, c) in comp.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out = add(&out, &mul(&taylor(c, &delta, m - j), &pows[j]));
            }
            out
        };
        Chart { x: apply(&self.x), v: apply(&self.v) }
    }
}

/// Where an unknown coefficient function sits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Slot {
    /// Coefficient of `x^j` in `H_x`.
    Hx(usize),
    /// Coefficient of `x^j` in `H_v`.
    Hv(usize),
    /// Coefficient of `x^j` in `G_x`.
    Gx(usize),
}

/// How residual coefficient functions become scalar equations.
pub enum Mode {
    /// Coefficient functions are rational with poles only at zeros of `p`;
    /// unknowns are `v^i / p^t`, the degree of `v^i` bounded by `t deg p + t + 2`.
    Rational,
    /// Coefficient functions are polynomials truncated at `v^deg`.
    Local { deg: usize },
}

pub struct Outcome {
    /// The conjugator found.
    #[allow(dead_code)]
    pub h: Chart,
    /// The `x^{2k+1}` coefficient of `G_x`.
    pub target: RatFunc,
}

fn get<'a>(h: &'a Chart, g: &'a Chart, s: Slot) -> &'a RatFunc {
    match s {
        Slot::Hx(j) => &h.x[j],
        Slot::Hv(j) => &h.v[j],
        Slot::Gx(j) => &g.x[j],
    }
}

fn set(h: &mut Chart, g: &mut Chart, s: Slot, val: RatFunc) {
    match s {
        Slot::Hx(j) => h.x[j] = val,
        Slot::Hv(j) => h.v[j] = val,
        Slot::Gx(j) => g.x[j] = val,
    }
}

fn residual(f: &Chart, g: &Chart, h: &Chart) -> Chart {
    let a = g.compose(h);
    let b = h.compose(f);
    Chart { x: sub(&a.x, &b.x), v: sub(&a.v, &b.v) }
}

/// Polynomial `num` with `r = num / p^e`, for the smallest such `e <= 64`.
fn clear_p(r: &RatFunc, p: &Poly1) -> (Poly1, usize) {
    let mut acc = r.clone();
    let pr = RatFunc::from_poly(p.clone());
    for e in 0..=64 {
        if let Some(n) = acc.as_poly() {
            return (n.clone(), e);
        }
        acc = &acc * &pr;
    }
    panic!("pole outside the zeros of p: {r}");
}

fn equations(funcs: &[RatFunc], p: &Poly1, mode: &Mode) -> Vec<Poly1> {
    match mode {
        Mode::Rational => {
            let e = funcs.iter().map(|r| clear_p(r, p).1).max().unwrap_or(0);
            let pe = RatFunc::from_poly(p.pow(e as u32));
            funcs.iter().map(|r| (r * &pe).as_poly().unwrap().clone()).collect()
        }
        Mode::Local { deg } => funcs
            .iter()
            .map(|r| {
                let n = r.as_poly().expect("local mode keeps polynomial coefficients");
                Poly1::new(n.coeffs().iter().take(deg + 1).cloned().collect())
            })
            .collect(),
    }
}

fn basis(mode: &Mode, p: &Poly1, t: usize, slot: Slot) -> Vec<RatFunc> {
    match mode {
        Mode::Rational => {
            let dp = p.degree().unwrap_or(0);
            let den = RatFunc::from_poly(p.pow(t as u32));
            (0..=t * dp + t + 2)
                .map(|i| RatFunc::from_poly(Poly1::monomial(i, GR::one())).checked_div(&den).unwrap())
                .collect()
        }
        Mode::Local { deg } => match slot {
            Slot::Gx(_) => vec![RatFunc::one()],
            _ => (0..=*deg).map(|i| RatFunc::from_poly(Poly1::monomial(i, GR::one()))).collect(),
        },
    }
}

/// Solves `G∘H = H∘F` for `G = (x + x^{k+1} p + x^{2k+1} γ, v + x^k r)` with
/// `p`, `r` read from `f`, and `H = (x + Σ_{j=2}^{k+1} x^j α_j, v + Σ_{j=1}^{k} x^j β_j)`.
pub fn conjugate_to_normal_form(f: &Chart, k: usize, mode: Mode) -> Result<Outcome, String> {
    let m = 2 * k + 1;
    assert_eq!(f.m(), m);
    let p = f.x[k + 1].as_poly().cloned().ok_or("p is not a polynomial")?;
    let mut h = Chart::identity(m);
    let mut g = Chart::identity(m);
    g.x[k + 1] = f.x[k + 1].clone();
    g.v[k] = f.v[k].clone();
    let mut t = 1;
    for l in 1..=k {
        let mut slots = vec![Slot::Hx(l + 1), Slot::Hv(l)];
        if l == k {
            slots.push(Slot::Gx(m));
        }
        let max_t = if matches!(mode, Mode::Rational) { 4 * k + 4 } else { 1 };
        let mut solved = false;
        while t <= max_t {
            let r0 = residual(f, &g, &h);
            let mut cols: Vec<(Slot, RatFunc, Chart)> = Vec::new();
            for &s in &slots {
                for b in basis(&mode, &p, t, s) {
                    let (mut h1, mut g1) = (h.clone(), g.clone());
                    set(&mut h1, &mut g1, s, b.clone());
                    let r = residual(f, &g1, &h1);
                    cols.push((s, b, Chart { x: sub(&r.x, &r0.x), v: sub(&r.v, &r0.v) }));
                }
            }
            let mut funcs = vec![r0.x[k + 1 + l].clone(), r0.v[k + l].clone()];
            for (_, _, c) in &cols {
                funcs.push(c.x[k + 1 + l].clone());
                funcs.push(c.v[k + l].clone());
            }
            let eqs = equations(&funcs, &p, &mode);
            let rows_of = |e: usize| {
                let deg = (0..eqs.len())
                    .filter(|i| i % 2 == e)
                    .filter_map(|i| eqs[i].degree())
                    .max()
                    .unwrap_or(0);
                (0..=deg)
                    .map(|d| (0..cols.len()).map(|c| eqs[2 + 2 * c + e].coeff(d)).collect::<Vec<_>>())
                    .zip((0..=deg).map(|d| -eqs[e].coeff(d)))
                    .collect::<Vec<_>>()
            };
            let (rows, rhs): (Vec<_>, Vec<_>) = rows_of(0).into_iter().chain(rows_of(1)).unzip();
            if let Some(sol) = solve(rows, rhs, cols.len()) {
                for &s in &slots {
                    let mut acc = RatFunc::zero();
                    for (i, (cs, b, _)) in cols.iter().enumerate() {
                        if *cs == s {
                            if matches!(s, Slot::Gx(_)) && !sol.determined[i] {
                                return Err(format!("target not determined at step {l}"));
                            }
                            acc = &acc + &b.scale(&sol.values[i]);
                        }
                    }
                    set(&mut h, &mut g, s, acc);
                }
                solved = true;
                break;
            }
            t += 1;
        }
        if !solved {
            return Err(format!("no solution in the ansatz at step {l}"));
        }
    }
    let r = residual(f, &g, &h);
    let clean = |c: &RatFunc| match &mode {
        Mode::Rational => c.is_zero(),
        Mode::Local { deg } => c.as_poly().map_or(false, |n| n.coeffs().iter().take(deg + 1).all(|a| a.is_zero())),
    };
    if !r.x.iter().all(clean) || !r.v[..m].iter().all(clean) {
        return Err("conjugation check failed".into());
    }
    let target = get(&h, &g, Slot::Gx(m)).clone();
    Ok(Outcome { h, target })
}

//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod acceptance {
    pub mod chart;
    pub mod linsolve;
    pub mod residue;
}

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use acceptance::chart::{conjugate_to_normal_form, Chart, Mode};
use acceptance::residue::normal_form_coefficient;
use germ_core::blowup::{blowup_chart1, direction_data};
use germ_core::dynamics::{
    classify_characteristic_roots, flower_verify, iterate_orbit, seq1_check,
    FlowerParams, Orientation, ProbeParams, StopReason,
};
use germ_core::jets::{pushforward, FlatOrder, Jet1, Jet2, MapGerm, Mat2, VFieldGerm};
use germ_core::lie::{
    abelian_structure, average_linearizer, exp_field, flow_power, group_commutator, is_dicritic,
    lie_bracket, linearize_radial, log_diffeo, Dicriticity, FlowMembership,
};
use germ_core::normalform::{dicritic_normal_form, lambda_invariant, residue_1d, Scalar};
use germ_core::scalar::{GaussianRational as GR, RatFunc};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(20240611);
    r.set_stream(stream);
    r
}

fn small(r: &mut ChaCha8Rng) -> GR {
    match r.gen_range(0..6) {
        0 => GR::ratio(r.gen_range(-3..=3), r.gen_range(1..=4)),
        1 => GR::gaussian_int(r.gen_range(-2..=2), r.gen_range(-2..=2)),
        _ => GR::from_int(r.gen_range(-3..=3)),
    }
}

fn nonzero(r: &mut ChaCha8Rng) -> GR {
    loop {
        let c = small(r);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Sparse jet with `terms` random monomials of degree in `lo..=hi`.
fn random_jet(r: &mut ChaCha8Rng, order: u32, lo: u32, hi: u32, terms: usize) -> Jet2 {
    let ts: Vec<_> = (0..terms)
        .map(|_| {
            let d = r.gen_range(lo..=hi);
            let j = r.gen_range(0..=d);
            ((d - j, j), small(r))
        })
        .collect();
    Jet2::from_terms(order, ts)
}

fn homogeneous(r: &mut ChaCha8Rng, order: u32, d: u32) -> Jet2 {
    loop {
        let j = Jet2::from_terms(order, (0..=d).map(|j| ((d - j, j), small(r))));
        if !j.is_zero() {
            return j;
        }
    }
}

/// `id + (terms of degree >= lo)`.
fn random_flat_map(r: &mut ChaCha8Rng, order: u32, lo: u32, terms: usize) -> MapGerm {
    let a = random_jet(r, order, lo, order, terms);
    let b = random_jet(r, order, lo, order, terms);
    MapGerm::identity_plus(&a, &b).unwrap()
}

/// `id + F_d + (terms of degree > d)` with a nonzero homogeneous `F_d`.
fn flat_with_leading(r: &mut ChaCha8Rng, order: u32, d: u32, terms: usize) -> MapGerm {
    loop {
        let (a, b) = (random_jet(r, order, d, d, 2), random_jet(r, order, d, d, 2));
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let a = &a + &random_jet(r, order, d + 1, order, terms);
        let b = &b + &random_jet(r, order, d + 1, order, terms);
        return MapGerm::identity_plus(&a, &b).unwrap();
    }
}

fn random_flat_field(r: &mut ChaCha8Rng, order: u32, terms: usize) -> VFieldGerm {
    let a = random_jet(r, order, 2, order, terms);
    let b = random_jet(r, order, 2, order, terms);
    VFieldGerm::new(a, b).unwrap()
}

/// `X + f X + (terms of degree in k+2..=hi)` with `f` homogeneous of degree `k`.
fn dicritic_germ(r: &mut ChaCha8Rng, order: u32, k: u32, hi: u32, terms: usize) -> MapGerm {
    let f = homogeneous(r, order, k);
    let x = Jet2::x(order);
    let y = Jet2::y(order);
    let a = &(&f * &x) + &random_jet(r, order, k + 2, hi, terms);
    let b = &(&f * &y) + &random_jet(r, order, k + 2, hi, terms);
    MapGerm::identity_plus(&a, &b).unwrap()
}

fn conj(f: &MapGerm, h: &MapGerm) -> MapGerm {
    h.compose(f).unwrap().compose(&h.invert()).unwrap()
}

fn parse_field(order: u32, src: &str) -> VFieldGerm {
    let text = format!("field X(x,y) = {src} order {order}");
    germ_core::text::parse_germ(&text).unwrap().as_field().unwrap()
}

fn parse_map(order: u32, src: &str) -> MapGerm {
    let text = format!("map F(x,y) = {src} order {order}");
    germ_core::text::parse_germ(&text).unwrap().as_map().unwrap()
}

fn c1() -> Check {
    let f = parse_field(12, "((x^2+3*x*y), (3*x*y+y^2))");
    let g = parse_field(12, "(3*x^3-5*x^2*y+x*y^2+y^3, x^3+x^2*y-5*x*y^2+3*y^3)");
    let br = lie_bracket(&f, &g).map_err(|e| e.to_string())?;
    ensure(br.is_zero(), || format!("bracket = {}", br.render()))?;
    let comm = group_commutator(&exp_field(&f).unwrap(), &exp_field(&g).unwrap()).map_err(|e| e.to_string())?;
    ensure(comm.is_identity(), || "commutator of the exponentials is not the identity".into())?;
    Ok("[f, g] = 0 and exp f, exp g commute at order 12".into())
}

fn c2() -> Check {
    let mut r = rng(2);
    for i in 0..50 {
        let x = random_flat_field(&mut r, 10, 3 + i % 4);
        let back = log_diffeo(&exp_field(&x).unwrap()).unwrap();
        ensure(back == x, || format!("log(exp X) != X for {}", x.render()))?;
        let f = random_flat_map(&mut r, 10, 2, 3 + i % 4);
        let back = exp_field(&log_diffeo(&f).unwrap()).unwrap();
        ensure(back == f, || format!("exp(log F) != F for {}", f.render()))?;
    }
    Ok("50 fields and 50 maps at order 10".into())
}

/// `∇A · B` for the homogeneous displacement parts `A`, `B`.
fn grad_apply(a: &(Jet2, Jet2), b: &(Jet2, Jet2)) -> (Jet2, Jet2) {
    let f = |c: &Jet2| &(&c.partial_x() * &b.0) + &(&c.partial_y() * &b.1);
    (f(&a.0), f(&a.1))
}

fn c3() -> Check {
    let n = 10;
    let mut r = rng(3);
    for _ in 0..50 {
        let rr = r.gen_range(1..=8u32);
        let s = r.gen_range(1..=9 - rr);
        let f = flat_with_leading(&mut r, n, rr + 1, 3);
        let g = flat_with_leading(&mut r, n, s + 1, 3);
        let d = rr + s + 1;
        let fg = f.compose(&g).unwrap();
        let gf = g.compose(&f).unwrap();
        let lhs = (
            (fg.fx() - gf.fx()).homogeneous_part(d),
            (fg.fy() - gf.fy()).homogeneous_part(d),
        );
        // One order up, so the gradients keep degree n.
        let lift = |(a, b): (Jet2, Jet2)| {
            let up = |j: &Jet2| Jet2::from_terms(n + 1, j.terms().map(|(e, c)| (*e, c.clone())));
            (up(&a), up(&b))
        };
        let fr = lift(f.homogeneous_part(rr + 1));
        let gs = lift(g.homogeneous_part(s + 1));
        let (a, b) = (grad_apply(&fr, &gs), grad_apply(&gs, &fr));
        let rhs = ((&a.0 - &b.0).homogeneous_part(d), (&a.1 - &b.1).homogeneous_part(d));
        ensure(lhs == rhs, || format!("leading term differs for r={rr}, s={s}"))?;
        let comm = group_commutator(&f, &g).unwrap();
        match comm.flat_order() {
            FlatOrder::Identity => {}
            FlatOrder::Flat(m) if m >= d => {}
            o => return Err(format!("commutator flat order {o:?} below {d}")),
        }
    }
    Ok("50 pairs with r+s+1 <= 10".into())
}

fn c4() -> Check {
    let n = 8;
    let mut r = rng(4);
    let mut family = 0;
    for k in [1u32, 2] {
        for _ in 0..3 {
            let f = dicritic_germ(&mut r, n, k, n, 3);
            let fo = f.flat_order();
            let mut members = Vec::new();
            for t in [GR::from_int(2), GR::from_int(-1), GR::ratio(1, 2), GR::gaussian_int(1, 1), GR::ratio(3, 7)] {
                members.push(flow_power(&f, &t).unwrap());
            }
            members.push(members[0].compose(&members[3]).unwrap());
            members.push(f.pow(3));
            for g in &members {
                ensure(f.compose(g).unwrap() == g.compose(&f).unwrap(), || "family member does not commute".into())?;
                ensure(
                    matches!(is_dicritic(g), Dicriticity::Dicritic { k: kg, .. } if kg == k),
                    || format!("commuting germ is not dicritic: {}", g.render()),
                )?;
                ensure(g.flat_order() == fo, || "flat orders differ".into())?;
                family += 1;
            }
            let controls = [
                MapGerm::identity_plus(&Jet2::monomial(n, 0, k + 1, GR::one()), &Jet2::zero(n)).unwrap(),
                MapGerm::identity_plus(&Jet2::monomial(n, k + 1, 0, GR::one()), &Jet2::monomial(n, 0, k + 1, GR::from_int(2))).unwrap(),
                random_flat_map(&mut r, n, k + 1, 3),
            ];
            for g in &controls {
                ensure(f.compose(g).unwrap() != g.compose(&f).unwrap(), || "control commutes".into())?;
                ensure(!is_dicritic(g).is_dicritic(), || "control is dicritic".into())?;
            }
        }
    }
    Ok(format!("{family} commuting germs dicritic with matching flat order; 18 controls rejected"))
}

fn c5() -> Check {
    let fld = parse_field(8, "((x+2*y)*x + x^3, (x+2*y)*y + y^3 + x^2*y)");
    let f = exp_field(&fld).unwrap();
    ensure(is_dicritic(&f).is_dicritic(), || "F is not dicritic".into())?;
    let ts = [GR::from_int(2), GR::from_int(-1), GR::gaussian_int(1, 1), GR::ratio(3, 7)];
    for t in &ts {
        let g = flow_power(&f, t).unwrap();
        let got = abelian_structure(&f, &g).map_err(|e| e.to_string())?;
        ensure(got == FlowMembership::Time(t.clone()), || format!("t = {t}: got {got:?}"))?;
    }
    Ok("t = 2, -1, 1+i, 3/7 recovered".into())
}

fn c6() -> Check {
    let n = 10;
    let mut r = rng(6);
    let gens = [(2, [[-1, 0], [0, -1]]), (3, [[0, -1], [1, -1]]), (4, [[0, -1], [1, 0]])];
    for (ord, m) in gens {
        for _ in 0..3 {
            let l = MapGerm::linear(n, &Mat2::from_ints(m)).unwrap();
            let h = random_flat_map(&mut r, n, 2, 4);
            let f = conj(&l, &h);
            let g = average_linearizer(&[f.clone()], 256).map_err(|e| e.to_string())?;
            let lin = conj(&f, &g);
            ensure(lin == MapGerm::linear(n, &lin.linear_part()).unwrap(), || format!("order {ord}: g F g^-1 not linear"))?;
        }
    }
    Ok("orders 2, 3, 4 linearized exactly at order 10".into())
}

fn c7() -> Check {
    let n = 8;
    let mut r = rng(7);
    let radial = VFieldGerm::radial(n);
    for _ in 0..20 {
        let x = radial.add(&random_flat_field(&mut r, n, 5));
        let g = linearize_radial(&x).map_err(|e| e.to_string())?;
        ensure(pushforward(&g, &x).unwrap() == radial, || format!("g_* X != R for {}", x.render()))?;
    }
    Ok("20 perturbations at order 8".into())
}

fn c8() -> Check {
    let mut r = rng(8);
    let mut germs = vec![(1u32, parse_map(3, "(x + x^2 + x*y, y + x*y + y^2)"))];
    for i in 0..9 {
        let k = if i < 4 { 1 } else { 2 };
        let n = 2 * k + 1;
        germs.push((k, dicritic_germ(&mut r, n, k, n, 3)));
    }
    let mut runs = 0;
    let mut shapes = Vec::new();
    for (k, f) in &germs {
        let nf = dicritic_normal_form(f).map_err(|e| e.to_string())?;
        ensure(nf.k == *k, || "wrong k".into())?;
        let m = 2 * *k as usize + 1;
        let oracle = conjugate_to_normal_form(&Chart::of_germ(f, m), *k as usize, Mode::Rational)?;
        ensure(oracle.target == nf.q, || format!("oracle q = {}, iterative q = {}", oracle.target, nf.q))?;
        let check_shape = |q: &RatFunc| -> Result<(), String> {
            let pk = RatFunc::from_poly(nf.p.pow(2 * *k + 1));
            let s = (q * &pk).as_poly().cloned().ok_or_else(|| format!("denominator of {q} does not divide p^(2k+1)"))?;
            let bound = 2 * *k as usize + 2 + 2 * *k as usize * nf.p.degree().unwrap();
            ensure(s.degree().map_or(true, |d| d <= bound), || format!("deg s = {:?} > {bound}", s.degree()))
        };
        check_shape(&nf.q)?;
        for _ in 0..10 {
            let h = random_flat_map(&mut r, f.order(), 2, 3);
            let g = conj(f, &h);
            let other = dicritic_normal_form(&g).map_err(|e| e.to_string())?;
            ensure(other.q == nf.q, || format!("q changed under conjugation: {} vs {}", other.q, nf.q))?;
            check_shape(&other.q)?;
            runs += 1;
        }
        shapes.push(format!("k={} q={}", k, nf.q));
    }
    Ok(format!("10 germs match the oracle, {runs} conjugates agree; first: {}", shapes[0]))
}

/// `1/(h(x) - x) x^{k+1}` coefficient of `x^k`, computed by series division.
fn residue_oracle(h: &Jet1, k: usize) -> GR {
    let d: Vec<GR> = (0..=k).map(|j| h.coeff((k + 1 + j) as u32)).collect();
    let mut inv = vec![GR::zero(); k + 1];
    inv[0] = GR::one().checked_div(&d[0]).unwrap();
    for j in 1..=k {
        let mut s = GR::zero();
        for i in 1..=j {
            s = &s + &(&d[i] * &inv[j - i]);
        }
        inv[j] = -(&s * &inv[0]);
    }
    inv[k].clone()
}

fn c9() -> Check {
    let n = 12;
    let mut r = rng(9);
    for i in 0..30 {
        let k = 1 + i % 3;
        let mut cs = vec![GR::zero(), GR::one()];
        for d in 2..=n {
            cs.push(if d < k + 1 { GR::zero() } else if d == k + 1 { nonzero(&mut r) } else { small(&mut r) });
        }
        let h = Jet1::new(n as u32, cs);
        let mut gs = vec![GR::zero(), GR::one()];
        gs.extend((2..=n).map(|_| small(&mut r)));
        let g = Jet1::new(n as u32, gs);
        let conj = g.compose(&h).unwrap().compose(&g.invert().unwrap()).unwrap();
        let (ka, ca) = residue_1d(&h).map_err(|e| e.to_string())?;
        let (kb, cb) = residue_1d(&conj).map_err(|e| e.to_string())?;
        ensure(ka as usize == k && kb as usize == k && ca == cb, || format!("residue {ca} vs {cb}"))?;
        ensure(ca == residue_oracle(&h, k), || "residue differs from the series oracle".into())?;
        let a = h.coeff(k as u32 + 1);
        let beta = normal_form_coefficient(h.coeffs(), k);
        ensure(beta == -(&(&a * &a) * &ca), || format!("k={k}: beta = {beta}, a = {a}, c = {ca}"))?;
    }
    Ok("30 germs, k = 1..3; the x^(2k+1) normal-form coefficient is -a^2 c".into())
}

fn raw_seq1(f: &MapGerm, start: (Complex64, Complex64), n: usize) -> Result<(f64, Complex64), String> {
    let orbit = iterate_orbit(f, start, n, 1.0).map_err(|e| e.to_string())?;
    ensure(orbit.stopped == StopReason::MaxIterations, || "orbit stopped early".into())?;
    let (x, y) = orbit.points[n];
    let v = y / x;
    let d = direction_data(f).unwrap();
    let target = -d.p.eval_complex(v);
    Ok(((1.0 / (n as f64 * x) - target).norm(), v))
}

fn c10() -> Check {
    let start = (Complex64::new(-0.1, 0.0), Complex64::new(-0.03, 0.0));
    let a = parse_map(4, "(x + x^2, y + x*y)");
    let b = parse_map(4, "(x + x^2 + x*y, y + x*y + y^2)");
    let (ea, _) = raw_seq1(&a, start, 10_000)?;
    let (eb, vb) = raw_seq1(&b, start, 10_000)?;
    let d = direction_data(&b).unwrap();
    ensure(d.p.eval_complex(vb).norm() > 0.5, || "p(v) too small".into())?;
    ensure(ea < 1e-2 && eb < 1e-2, || format!("errors {ea:.3e}, {eb:.3e}"))?;
    let sa = seq1_check(&a, start, 10_000).unwrap().error;
    let sb = seq1_check(&b, start, 10_000).unwrap().error;
    Ok(format!("|1/(n x_n) + k p(v)| = {ea:.2e}, {eb:.2e} (tail means {sa:.2e}, {sb:.2e})"))
}

fn c11() -> Check {
    let mut notes = Vec::new();
    for src in ["(x + x^2, y + x*y)", "(x + x^2 + x*y, y + x*y + y^2)"] {
        let f = parse_map(4, src);
        let rep = flower_verify(&f, &FlowerParams::default()).map_err(|e| e.to_string())?;
        for (name, side) in [("forward", &rep.forward), ("backward", &rep.backward)] {
            ensure(side.samples == 500 && side.converged == side.samples, || {
                format!("{src} {name}: {}/{} converged", side.converged, side.samples)
            })?;
            ensure(side.max_residual < 1e-6, || format!("{src} {name}: residual {:.2e}", side.max_residual))?;
        }
        notes.push(format!(
            "R = {:.3}/{:.3}, residual {:.1e}",
            rep.forward.big_r,
            rep.backward.big_r,
            rep.forward.max_residual.max(rep.backward.max_residual)
        ));
    }
    Ok(format!("500/500 per sign on both germs ({})", notes.join("; ")))
}

fn c12() -> Check {
    let params = ProbeParams::default();
    let f = parse_map(4, "(x + x^2, y + y^2)");
    let roots = classify_characteristic_roots(&f, 1e-9, &params).map_err(|e| e.to_string())?;
    ensure(roots.len() == 2, || format!("{} roots", roots.len()))?;
    ensure(roots[0].orientation != roots[1].orientation, || "orientations agree".into())?;
    let mut checked = 0;
    let others = [
        "(x + x^2, y + 3*x*y + y^2)",
        "(x + x^2, y - x*y + y^2)",
        "(x + x^2, y + 1/2*x*y + y^2)",
        "(x + x^2, y + (2+i)*x*y + y^2)",
        "(x + x^2 + x*y, y + 2*y^2)",
    ];
    let all: Vec<_> = std::iter::once(roots)
        .chain(others.iter().map(|s| classify_characteristic_roots(&parse_map(4, s), 1e-9, &params).unwrap()))
        .collect();
    for rs in &all {
        for c in rs {
            ensure(c.probes >= 50, || "too few probes".into())?;
            let want = if c.ratio.re > 0.0 { Orientation::Attracting } else { Orientation::Repelling };
            ensure(c.orientation == want, || format!("v0 = {}: ratio {} but {:?}", c.v0, c.ratio, c.orientation))?;
            let unanimous = match c.orientation {
                Orientation::Attracting => c.forward_attracted == c.probes && c.backward_attracted == c.probes,
                Orientation::Repelling => c.forward_repelled == c.probes && c.backward_repelled == c.probes,
                Orientation::Undetermined => false,
            };
            ensure(unanimous, || format!("v0 = {}: probes not unanimous", c.v0))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} roots on 6 germs; Re(r'/p) > 0 is attracting throughout"))
}

fn c13() -> Check {
    let f = parse_map(5, "(x + i*x^2 + x^3 + 2*x^2*y, y + (1+i)*x*y + y^3 - x^3 + x*y^2)");
    let d = direction_data(&f).unwrap();
    ensure(d.p.coeffs() == [GR::i()] && d.r.coeffs() == [GR::zero(), GR::one()], || "not the p = i, r = v model".into())?;
    let v0 = GR::zero();
    let lam = |g: &MapGerm| -> Result<GR, String> {
        match lambda_invariant(&blowup_chart1(g).unwrap(), &v0, None).map_err(|e| e.to_string())?.lambda {
            Scalar::Exact(l) => Ok(l),
            Scalar::Numeric(_) => Err("numeric λ".into()),
        }
    };
    let oracle = |g: &MapGerm| -> Result<GR, String> {
        let out = conjugate_to_normal_form(&Chart::of_germ(&g.truncate(3), 3), 1, Mode::Local { deg: 8 })?;
        out.target.as_poly().filter(|p| p.is_constant()).map(|p| p.coeff(0)).ok_or("λ is not a constant".into())
    };
    let l0 = lam(&f)?;
    let o0 = oracle(&f)?;
    ensure(l0 == o0, || format!("λ = {l0}, oracle {o0}"))?;
    let mut r = rng(13);
    for _ in 0..5 {
        let h = random_flat_map(&mut r, 5, 2, 3);
        let g = conj(&f, &h);
        let (l, o) = (lam(&g)?, oracle(&g)?);
        ensure(l == l0 && o == l0, || format!("conjugate: λ = {l}, oracle {o}, expected {l0}"))?;
    }
    Ok(format!("λ_0 = {l0} matches the oracle and 5 conjugates"))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Check, Option<u64>); 13] = [
        (1, "bracket of the commuting pair", c1, Some(5)),
        (2, "exp/log bijection", c2, Some(60)),
        (3, "commutator leading term", c3, None),
        (4, "commuting germs stay dicritic", c4, None),
        (5, "flow time recovery", c5, None),
        (6, "averaging linearizes finite groups", c6, None),
        (7, "radial linearization", c7, None),
        (8, "dicritic q against the oracle", c8, Some(600)),
        (9, "residue invariance", c9, None),
        (10, "1/(n x_n^k) limit", c10, Some(5)),
        (11, "flower convergence", c11, Some(120)),
        (12, "attracting directions", c12, None),
        (13, "λ against the oracle", c13, None),
    ];
    let mut failed = 0;
    for (n, name, run, limit) in criteria {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let dt = t.elapsed();
        let out = match (out, limit) {
            (Ok(_), Some(s)) if dt > Duration::from_secs(s) => Err(format!("took {:.1}s, limit {s}s", dt.as_secs_f64())),
            (o, _) => o,
        };
        match out {
            Ok(msg) => println!("PASS {n:>2} {name}: {msg} [{:.2}s]", dt.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {n:>2} {name}: {msg} [{:.2}s]", dt.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

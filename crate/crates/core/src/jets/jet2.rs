use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::scalar::GaussianRational as GR;

fn tri_index(i: u32, j: u32) -> usize {
    let d = (i + j) as usize;
    d * (d + 1) / 2 + j as usize
}

fn tri_size(n: u32) -> usize {
    let n = n as usize;
    (n + 1) * (n + 2) / 2
}

fn tri_exponents(n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(tri_size(n));
    for d in 0..=n {
        for j in 0..=d {
            out.push((d - j, j));
        }
    }
    out
}

/// Truncated power series in `x, y` over Q(i), keyed by exponent pairs `(i, j)`
/// for `x^i y^j`. Only nonzero coefficients of total degree `<= order` are kept.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Jet2 {
    order: u32,
    coeffs: BTreeMap<(u32, u32), GR>,
}

impl Jet2 {
    pub fn zero(order: u32) -> Self {
        Jet2 { order, coeffs: BTreeMap::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), GR)>>(order: u32, terms: I) -> Self {
        let mut coeffs: BTreeMap<(u32, u32), GR> = BTreeMap::new();
        for ((i, j), c) in terms {
            if i + j <= order && !c.is_zero() {
                let e = coeffs.entry((i, j)).or_insert_with(GR::zero);
                *e += &c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Jet2 { order, coeffs }
    }

    pub fn monomial(order: u32, i: u32, j: u32, c: GR) -> Self {
        Self::from_terms(order, [((i, j), c)])
    }

    pub fn constant(order: u32, c: GR) -> Self {
        Self::monomial(order, 0, 0, c)
    }

    pub fn x(order: u32) -> Self {
        Self::monomial(order, 1, 0, GR::one())
    }

    pub fn y(order: u32) -> Self {
        Self::monomial(order, 0, 1, GR::one())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> GR {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(GR::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GR)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn min_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(i, j)| i + j).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(i, j)| i + j).max()
    }

    pub fn homogeneous_part(&self, d: u32) -> Jet2 {
        Jet2 {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|((i, j), _)| i + j == d)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Terms of total degree in `lo..=hi`.
    pub fn degree_range(&self, lo: u32, hi: u32) -> Jet2 {
        Jet2 {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|((i, j), _)| (lo..=hi).contains(&(i + j)))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Drops terms above degree `n`; `n` must not exceed the current order.
    pub fn truncate(&self, n: u32) -> Jet2 {
        assert!(n <= self.order, "cannot truncate upwards");
        self.with_order(n)
    }

    /// Re-labels the truncation order. Raising it is only sound when the
    /// caller knows the missing coefficients vanish.
    pub(crate) fn with_order(&self, n: u32) -> Jet2 {
        Jet2 {
            order: n,
            coeffs: self
                .coeffs
                .iter()
                .filter(|((i, j), _)| i + j <= n)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &GR) -> Jet2 {
        if c.is_zero() {
            return Jet2::zero(self.order);
        }
        Jet2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    pub fn partial_x(&self) -> Jet2 {
        Jet2::from_terms(
            self.order.saturating_sub(1),
            self.coeffs
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c.mul_int(i as i64))),
        )
    }

    pub fn partial_y(&self) -> Jet2 {
        Jet2::from_terms(
            self.order.saturating_sub(1),
            self.coeffs
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c.mul_int(j as i64))),
        )
    }

    /// Product truncated at degree `n`.
    pub(crate) fn mul_to(&self, other: &Jet2, n: u32) -> Jet2 {
        if self.is_zero() || other.is_zero() {
            return Jet2::zero(n);
        }
        let mut acc: Vec<Option<GR>> = vec![None; tri_size(n)];
        let rhs: Vec<(u32, u32, &GR)> = other
            .coeffs
            .iter()
            .filter(|((i, j), _)| i + j <= n)
            .map(|(&(i, j), c)| (i, j, c))
            .collect();
        for (&(i1, j1), a) in &self.coeffs {
            let d1 = i1 + j1;
            if d1 > n {
                continue;
            }
            for &(i2, j2, b) in &rhs {
                if d1 + i2 + j2 > n {
                    continue;
                }
                let slot = &mut acc[tri_index(i1 + i2, j1 + j2)];
                let p = a * b;
                match slot {
                    Some(s) => *s += &p,
                    None => *slot = Some(p),
                }
            }
        }
        let exps = tri_exponents(n);
        let coeffs = acc
            .into_iter()
            .zip(exps)
            .filter_map(|(c, e)| c.filter(|c| !c.is_zero()).map(|c| (e, c)))
            .collect();
        Jet2 { order: n, coeffs }
    }

    pub fn pow(&self, e: u32) -> Jet2 {
        let mut acc = Jet2::constant(self.order, GR::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(gx, gy)` for substitutions without constant term. The result
    /// carries the smallest of the three orders.
    pub fn compose(&self, gx: &Jet2, gy: &Jet2) -> Jet2 {
        assert!(
            gx.coeff(0, 0).is_zero() && gy.coeff(0, 0).is_zero(),
            "substitution must vanish at the origin"
        );
        let n = self.order.min(gx.order).min(gy.order);
        let mut by_x: BTreeMap<u32, Vec<(u32, &GR)>> = BTreeMap::new();
        for (&(i, j), c) in &self.coeffs {
            if i + j <= n {
                by_x.entry(i).or_default().push((j, c));
            }
        }
        let max_j = by_x
            .values()
            .flat_map(|v| v.iter().map(|(j, _)| *j))
            .max()
            .unwrap_or(0);
        let mut gy_pows = vec![Jet2::constant(n, GR::one())];
        for j in 1..=max_j {
            let next = gy_pows[j as usize - 1].mul_to(gy, n);
            gy_pows.push(next);
        }
        let q = |i: u32| -> Jet2 {
            let mut acc: BTreeMap<(u32, u32), GR> = BTreeMap::new();
            if let Some(terms) = by_x.get(&i) {
                let cap = n - i;
                for (j, c) in terms {
                    for (&(a, b), g) in &gy_pows[*j as usize].coeffs {
                        if a + b <= cap {
                            let e = acc.entry((a, b)).or_insert_with(GR::zero);
                            *e += &(*c * g);
                        }
                    }
                }
            }
            acc.retain(|_, c| !c.is_zero());
            Jet2 { order: n - i, coeffs: acc }
        };
        let max_i = by_x.keys().copied().max().unwrap_or(0);
        let mut acc = q(max_i);
        for i in (0..max_i).rev() {
            let cap = n - i;
            let prod = gx.mul_to(&acc.with_order(cap), cap);
            acc = &q(i) + &prod;
        }
        acc.with_order(n)
    }

    pub fn eval(&self, x: &GR, y: &GR) -> GR {
        let mut acc = GR::zero();
        for (&(i, j), c) in &self.coeffs {
            acc += &(&(c * &x.pow(i)) * &y.pow(j));
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&(i, j), c)| c.to_complex() * x.powu(i) * y.powu(j))
            .sum()
    }

    /// Canonical text: ascending total degree, higher `x` power first within a degree.
    pub fn render(&self, xname: &str, yname: &str) -> String {
        let mut keys: Vec<&(u32, u32)> = self.coeffs.keys().collect();
        keys.sort_by_key(|(i, j)| (i + j, std::cmp::Reverse(*i)));
        let mono = |v: &str, e: u32| match e {
            0 => None,
            1 => Some(v.to_string()),
            _ => Some(format!("{v}^{e}")),
        };
        let terms: Vec<(GR, String)> = keys
            .into_iter()
            .map(|k| {
                let parts: Vec<String> = [mono(xname, k.0), mono(yname, k.1)]
                    .into_iter()
                    .flatten()
                    .collect();
                (self.coeffs[k].clone(), parts.join("*"))
            })
            .collect();
        crate::text::render_sum(&terms)
    }
}

impl fmt::Display for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x", "y"))
    }
}

impl fmt::Debug for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet2[{}]({self})", self.order)
    }
}

fn add_jets(a: &Jet2, b: &Jet2, sub: bool) -> Jet2 {
    let n = a.order.min(b.order);
    let mut coeffs: BTreeMap<(u32, u32), GR> = a
        .coeffs
        .iter()
        .filter(|((i, j), _)| i + j <= n)
        .map(|(k, c)| (*k, c.clone()))
        .collect();
    for (k, c) in &b.coeffs {
        if k.0 + k.1 > n {
            continue;
        }
        let e = coeffs.entry(*k).or_insert_with(GR::zero);
        if sub {
            *e -= c;
        } else {
            *e += c;
        }
    }
    coeffs.retain(|_, c| !c.is_zero());
    Jet2 { order: n, coeffs }
}

impl<'a> Add<&'a Jet2> for &'a Jet2 {
    type Output = Jet2;
    fn add(self, rhs: &'a Jet2) -> Jet2 {
        add_jets(self, rhs, false)
    }
}

impl<'a> Sub<&'a Jet2> for &'a Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: &'a Jet2) -> Jet2 {
        add_jets(self, rhs, true)
    }
}

impl<'a> Mul<&'a Jet2> for &'a Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: &'a Jet2) -> Jet2 {
        self.mul_to(rhs, self.order.min(rhs.order))
    }
}

impl Neg for &Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

use num_traits::{One, Zero};

use crate::scalar::GaussianRational as GR;

fn coefficient_is_atomic(c: &GR) -> bool {
    c.is_real() || c.re().is_zero()
}

/// Joins `coeff * monomial` terms into a canonical sum; an empty monomial
/// string denotes the constant term.
pub fn render_sum(terms: &[(GR, String)]) -> String {
    let mut out = String::new();
    for (c, mono) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let term = if mono.is_empty() {
            if coefficient_is_atomic(c) {
                c.to_string()
            } else {
                format!("({c})")
            }
        } else if c.is_one() {
            mono.clone()
        } else if (-c).is_one() {
            format!("-{mono}")
        } else if coefficient_is_atomic(c) {
            format!("{c}*{mono}")
        } else {
            format!("({c})*{mono}")
        };
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

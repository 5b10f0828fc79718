//! Homological equations for blown-up germs: the dicritic normal form and its
//! invariant `q(v)`, the local invariants `λ_{v0}` at characteristic roots, the
//! polynomial `L_F` and the residue of a one-dimensional germ.

mod dicritic;
mod lambda;
mod residue;

pub use dicritic::{
    dicritic_normal_form, dicritic_normal_form_with, normal_form_series, solve_homological_dicritic,
    ConjugatorStep, DicriticNormalForm,
};
pub use lambda::{
    lagrange_lf, lambda_invariant, lambda_invariant_numeric, LagrangePoly, LocalInvariant, RootValue,
    Scalar,
};
pub use residue::residue_1d;

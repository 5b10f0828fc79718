//! Lie brackets, the exponential and logarithm of formal germs, flows,
//! finite-group averaging and the dicritic/abelian structure checks.

mod dicritic;
mod groups;
mod resonance;
mod series;

pub use dicritic::{
    abelian_structure, binary_form_coeffs, binary_resultant, is_dicritic, Dicriticity,
    FlowMembership,
};
pub use groups::{
    average_linearizer, generate_group, germ_order, is_invariant_field, linearize_radial,
    GermOrder,
};
pub use resonance::{find_resonances, sla_membership, Resonance};
pub use series::{exp_field, flow_power, group_commutator, lie_bracket, log_diffeo};

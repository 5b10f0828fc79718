use thiserror::Error;

/// Failures raised by the exact and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("interpolation nodes not distinct")]
    NodesNotDistinct,
    #[error("pole at the evaluation point")]
    Pole,
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(u32, u32),
    #[error("germ does not fix the origin")]
    NotAtOrigin,
    #[error("linear part is not invertible")]
    SingularLinearPart,
    #[error("germ is not tangent to the identity")]
    NotTangentToIdentity,
    #[error("exp restricted to flat fields")]
    NotFlatField,
    #[error("group not finite within bound {0}")]
    GroupNotFinite(usize),
    #[error("linear part of the field is not the radial field")]
    NotRadial,
    #[error("germ is not dicritic")]
    NotDicritic,
    #[error("germ is dicritic, use flower_verify")]
    Dicritic,
    #[error("inputs do not commute")]
    NonCommuting,
    #[error("genericity condition fails: gcd(f, h) is not constant")]
    NotGeneric,
    #[error("matrix is not in SL(n, Z)")]
    NotInSl,
    #[error("resonant step, use dicritic_normal_form")]
    ResonantStep,
    #[error("truncation order too low: {0}")]
    InsufficientOrder(String),
    #[error("{0} is not a root of r")]
    NotARoot(String),
    #[error("non-simple root of r")]
    NonSimpleRoot,
    #[error("resonant ratio p(v0)/r'(v0) is rational")]
    ResonantRatio,
    #[error("degenerate direction: p(v0) = 0")]
    DegenerateDirection,
    #[error("per-degree system singular at u-degree {0}")]
    SingularSystem(usize),
    #[error("degenerate r, L_F undefined")]
    DegenerateR,
    #[error("coefficients have a pole on the patching locus: {0}")]
    PatchingPole(String),
    #[error("fixed point, no orbit to follow")]
    FixedPoint,
    #[error("orbit hypothesis not met: no convergence to the origin along a direction")]
    OrbitHypothesis,
    #[error("exact search infeasible: {0}")]
    SearchTooLarge(String),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable module-qualified identifier, e.g. `scalar.division_by_zero`.
    pub fn code(&self) -> &'static str {
        use Error::*;
        match self {
            DivisionByZero => "scalar.division_by_zero",
            DivisionByZeroPolynomial => "scalar.division_by_zero_polynomial",
            NodesNotDistinct => "scalar.nodes_not_distinct",
            Pole => "scalar.pole",
            OrderMismatch(..) => "jets.order_mismatch",
            NotAtOrigin => "jets.not_at_origin",
            SingularLinearPart => "jets.singular_linear_part",
            NotTangentToIdentity => "jets.not_tangent_to_identity",
            NotFlatField => "lie.not_flat_field",
            GroupNotFinite(_) => "lie.group_not_finite",
            NotRadial => "lie.not_radial",
            NotDicritic => "lie.not_dicritic",
            Dicritic => "dynamics.dicritic",
            NonCommuting => "lie.non_commuting",
            NotGeneric => "lie.not_generic",
            NotInSl => "lie.not_in_sl",
            ResonantStep => "normalform.resonant_step",
            InsufficientOrder(_) => "normalform.insufficient_order",
            NotARoot(_) => "normalform.not_a_root",
            NonSimpleRoot => "normalform.non_simple_root",
            ResonantRatio => "normalform.resonant_ratio",
            DegenerateDirection => "normalform.degenerate_direction",
            SingularSystem(_) => "normalform.singular_system",
            DegenerateR => "normalform.degenerate_r",
            PatchingPole(_) => "blowup.patching_pole",
            FixedPoint => "dynamics.fixed_point",
            OrbitHypothesis => "dynamics.orbit_hypothesis",
            SearchTooLarge(_) => "scalar.search_too_large",
            Internal(_) => "internal",
            InvalidArgument(_) => "invalid_argument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

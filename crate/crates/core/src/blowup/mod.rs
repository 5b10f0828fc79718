//! Blow-up of germs tangent to the identity into the charts `y = v x` and
//! `x = s y`, and the direction data of the first nonlinear term.

mod chart;
mod coeff;
mod directions;
mod local;
mod semiseries;

pub use chart::{blowup_chart1, blowup_chart2, chart_transition, satisfies_degree_bounds};
pub use coeff::Coeff;
pub use directions::{
    characteristic_directions, direction_data, CharacteristicDirection, CharacteristicDirections,
    DirectionData, DirectionPoint,
};
pub use local::LocalSeries;
pub use semiseries::SemiSeries;

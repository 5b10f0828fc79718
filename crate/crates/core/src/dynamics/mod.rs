//! Double-precision orbits of polynomial germs and numerical checks of their
//! behaviour near the exceptional divisor.

mod classify;
mod flower;
mod orbit;

pub use classify::{classify_characteristic_roots, Orientation, ProbeParams, RootClassification};
pub use flower::{
    flower_verify, in_sector, sheet, FlowerParams, FlowerReport, RadiusChoice, SectorSpec, SignReport,
};
pub use orbit::{
    iterate_orbit, limit_direction_check, seq1_check, FloatMap, OrbitRecord, Seq1Result, StopReason,
};

//! Truncated jets in one and two variables, map and vector-field germs.

mod germ;
mod jet1;
mod jet2;

pub use germ::{pushforward, FlatOrder, MapGerm, Mat2, VFieldGerm};
pub use jet1::Jet1;
pub use jet2::Jet2;

//! Text format for germs: parsing and canonical rendering.

mod parse;
mod render;

pub use parse::{
    parse_germ, parse_germ_with_order, parse_scalar, GermDocument, GermKind, ParseError, ParseErrorKind, Pos, DEFAULT_ORDER,
};
pub use render::render_sum;

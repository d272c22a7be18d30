//! The dotted cobordism category: flat tangles, cobordisms in canonical form,
//! composition, horizontal gluing and closure.

pub mod cob;
pub mod surface;
pub mod tangle;

pub use cob::{dot_difference, dot_sum_minus_h, CobError, CobLinComb, DottedCobordism, RawPiece};
pub use surface::AElem;
pub use tangle::{Cycles, FlatTangle, GlueInfo, TangleError};

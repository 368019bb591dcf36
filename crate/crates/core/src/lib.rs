//! Exact verification engine for lines, conics and double lines on the quintic
//! del Pezzo fourfold `Y = Gr(2,5) ∩ {p12 - p03 = p13 - p24 = 0}`.

pub mod algebra;
pub mod classifier;
pub mod error;
pub mod ffcount;
pub mod grassmann;
pub mod groebner;
pub mod poincare;
pub mod report;

pub use error::{Error, Result};

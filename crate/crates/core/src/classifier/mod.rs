//! Classification of lines and conics on `Y`, and the chart computations on `Gr(4,5)`.

mod charts;
mod conics;
mod lines;

pub use charts::*;
pub use conics::*;
pub use lines::*;

//! Homotopy colimits on the descent side: Čech nerves of covers, the bar construction,
//! strict colimits and Van Kampen checks.

pub mod cech;
pub mod diagram;
pub mod vankampen;

pub use cech::{cech_diagonal, CoverSpec};
pub use diagram::{bar_diagonal, colimit, DiagramSpec};
pub use vankampen::{van_kampen_check, MayerVietorisRow, VanKampenReport};

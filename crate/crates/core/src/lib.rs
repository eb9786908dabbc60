pub mod billiards;
pub mod circle_space;
pub mod curves;
pub mod error;
pub mod geodesics;
pub mod geom;
pub mod magnetic_geometry;
pub mod metrics;
pub mod numerics;
pub mod pompeiu;

pub use error::{Error, Result};

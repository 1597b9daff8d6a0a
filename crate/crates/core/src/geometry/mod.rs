//! The primal side: rational convex polygons, support values, common
//! supporting tangents, and the exact sweep extracting a support
//! configuration and swap pair from an arrangement.

mod arrangement;
mod polygon;
mod tangents;

pub use arrangement::{points_arrangement, Arrangement, SupportConfiguration};
pub use polygon::{Face, Polygon};
pub use tangents::{common_tangents, Crossing};

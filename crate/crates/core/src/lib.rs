pub mod dyadic;
pub mod error;
pub mod mesh;

pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use mesh::{Direction, Domain, LRMesh, MeshBox, Meshline, Region, Span, Violation};
pub mod bspline;
pub mod eg;
pub mod format;
pub mod lrset;
pub mod render;
pub mod scenario;
pub mod shadow;
pub mod verify;

//! Planar geometry in the contracting plane K_c.

pub mod near;
pub mod nice;
pub mod overlap;
pub mod patch;
pub mod plane;
pub mod svg;

pub use near::near_membership;
pub use nice::{check_nice, NiceReport};
pub use patch::{
    boundary_loops, boundary_segments, coverage, finiteness_probe, periodic_candidates, project_chain, project_face,
    projects_well, stepped_surface, surrounds, FacePolygon, Patch, PeriodicElement,
};

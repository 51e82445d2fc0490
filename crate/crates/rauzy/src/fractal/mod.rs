//! Polygonal and sampled approximations of the Rauzy fractals and their audits.

pub mod approx;
pub mod audit;
pub mod checks;
pub mod hausdorff;

pub use approx::{approx_of_chain, rauzy_approx, ApproxTile};
pub use audit::{aperiodic_tiling_audit, periodic_tiling_audit, tiling_audit, TilingReport};
pub use checks::{
    area_conservation, boundary_convergence_report, decomposition_check, decomposition_identities, measure_eigen_check,
    set_equation_check, two_oracle_agreement, corrected_identity_3_5,
};
pub use hausdorff::hausdorff_distance;

//! Exact polynomial algebra, Pisot classification, Q(β) arithmetic and projections.

pub mod field;
pub mod pisot;
pub mod poly;
pub mod projection;

pub use field::{sign_of, AlgNum, NumberField};
pub use pisot::{char_poly, check_hypothesis_n, factor_over_q, pisot_split, HypothesisN, PisotData};
pub use poly::{IntPoly, QPoly};
pub use projection::{delta_identity, redundancy_witness, LatticeData, Projection, RedundancyWitness};

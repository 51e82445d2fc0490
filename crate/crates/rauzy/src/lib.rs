//! Geometric machinery for reducible unit Pisot substitutions: dual maps on wedge faces,
//! stepped surfaces, Rauzy fractal approximations, strong coincidences and domain exchanges.

pub mod algebra;
pub mod chain;
pub mod dual;
pub mod dynamics;
pub mod error;
pub mod fractal;
pub mod geometry;
pub mod matrix;
pub mod model;
pub mod par;
pub mod subst;

pub use error::{Error, Result};
pub use subst::Substitution;

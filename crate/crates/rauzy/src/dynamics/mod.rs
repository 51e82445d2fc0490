//! Numeration graphs, strong coincidences, the χ-modified stepped line and domain exchanges.

pub mod chi;
pub mod coincidence;
pub mod exchange;
pub mod graph;
pub mod numeration;

pub use chi::{chi_apply, modified_cloud, ChiVariant};
pub use coincidence::{strong_coincidence, CoincidenceTable, Outcome};
pub use exchange::{coding_cross_check, exchange_orbit, first_return_check, ClassifierKind, Partition};
pub use graph::WedgeSuffixGraph;

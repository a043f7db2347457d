//! Locality-sensitive filtering over the Hamming cube, with structured
//! (product-code) filter vectors, plus the near-neighbour variant of Dumer's
//! decoder built on top of it.
//!
//! Filters partition the space into overlapping balls of radius `alpha`
//! around codewords of a product code; queries scan all `beta`-close buckets
//! for vectors within the target distance `gamma`.

mod code;
mod nn_decoder;
mod structure;

pub use code::{build_filter_code, build_filter_code_with_block_factor, FilterCode, LsfError};
pub use nn_decoder::{nn_dumer_solve, NnParams};
pub use structure::{LsfParams, LsfStructure, QueryStats};

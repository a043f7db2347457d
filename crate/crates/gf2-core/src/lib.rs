//! Packed GF(2) linear algebra for syndrome decoding.
//!
//! Bit vectors and matrices are stored row-major in 64-bit words. The only
//! "solver" this crate knows is the reduction of a permuted parity-check
//! matrix to windowed systematic form; everything else (instances, list
//! merging, filtering) lives in the crates built on top of it.

mod bitmat;
mod bitvec;
pub mod comb;
mod perm;
mod systematic;

pub use bitmat::BitMatrix;
pub use bitvec::BitVector;
pub use perm::Permutation;
pub use systematic::{to_systematic, RankFailure, SystematicForm};

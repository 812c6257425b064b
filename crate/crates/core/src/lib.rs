//! Exact tools for symbolic dynamics: run-length encoded words, lazily
//! addressed points of shift spaces, a recursive counterexample
//! construction with its length identities and refutation certificates,
//! finite-horizon pair and sensitivity checks, and an exact-rational
//! interval map.

pub mod construction;
pub mod dynamics;
pub mod error;
pub mod interval_map;
pub mod rle_word;
mod serde_dec;
pub mod symbolic_point;

pub use error::{Error, Result};
pub use rle_word::{find_first, Position, RleWord, Run, Symbol, MATERIALIZATION_CAP};
pub use symbolic_point::{
    Cylinder, Generator, PointDescriptor, RunLocation, RunSpan, SymbolicPoint,
};

pub mod error;
pub mod excision;
pub mod exec;
pub mod extension;
pub mod group;
pub mod hom;
pub mod rational;
pub mod realization;
pub mod sample;
pub mod tame;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use word::{AlphabetSet, Bound, Cut, Letter, Position, Segment, Sign, Tail, Word};

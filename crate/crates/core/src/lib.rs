//! Combinatorics on finite words: subword complexity profiles, de Bruijn
//! words, Sturmian and balanced words, and censuses of complexity sequences.

pub mod complexity;
pub mod debruijn;
pub mod enumeration;
pub mod error;
pub mod sturmian;
pub mod word;

pub use error::{Error, Result};
pub use word::{Letter, Occurrence, PackedBinary, Word};

use num_bigint::BigInt;
use sturmian::{QuadraticSurd, SlopeIntercept};

pub type Surd64 = QuadraticSurd<i64>;
pub type Surd128 = QuadraticSurd<i128>;
pub type BigSurd = QuadraticSurd<BigInt>;

pub type SlopeIntercept64 = SlopeIntercept<i64>;
pub type SlopeIntercept128 = SlopeIntercept<i128>;
pub type BigSlopeIntercept = SlopeIntercept<BigInt>;

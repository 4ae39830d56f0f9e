//! Rate-1/2 convolutional coding, random interleaving, soft Viterbi.

mod conv;
mod interleave;

pub use conv::{ConvCode, FLUSH_BITS};
pub use interleave::Interleaver;

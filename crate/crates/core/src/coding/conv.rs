//! The industry-standard rate-1/2, constraint-length-7 convolutional code
//! with generators 133/171 (octal), zero-state start and zero-tail
//! termination, and a soft-input Viterbi decoder over its 64-state trellis.

use crate::error::{Error, Result};
use crate::scalar::Real;

const CONSTRAINT_LEN: usize = 7;
const NUM_STATES: usize = 1 << (CONSTRAINT_LEN - 1);
const GENERATORS: [u32; 2] = [0o133, 0o171];

/// Zero-tail flush bits appended to every frame.
pub const FLUSH_BITS: usize = CONSTRAINT_LEN - 1;

/// Precomputed trellis for the fixed code: per state and input bit, the
/// successor state and the two output bits (generator 133 first).
#[derive(Debug, Clone)]
pub struct ConvCode {
    next_state: Vec<[usize; 2]>,
    outputs: Vec<[[u8; 2]; 2]>,
}

impl ConvCode {
    /// The rate-1/2, K=7, [133 171] code.
    pub fn rate_half_k7() -> Self {
        let mut next_state = Vec::with_capacity(NUM_STATES);
        let mut outputs = Vec::with_capacity(NUM_STATES);
        for state in 0..NUM_STATES {
            let mut nexts = [0usize; 2];
            let mut outs = [[0u8; 2]; 2];
            for input in 0..2usize {
                // Current input occupies the register's most significant bit.
                let reg = ((input as u32) << (CONSTRAINT_LEN - 1)) | state as u32;
                for (gi, &g) in GENERATORS.iter().enumerate() {
                    outs[input][gi] = ((reg & g).count_ones() & 1) as u8;
                }
                nexts[input] = (reg >> 1) as usize;
            }
            next_state.push(nexts);
            outputs.push(outs);
        }
        Self {
            next_state,
            outputs,
        }
    }

    /// Coded length for a given number of information bits.
    pub fn coded_len(info_len: usize) -> usize {
        2 * (info_len + FLUSH_BITS)
    }

    /// Encode from the zero state, appending six flush zeros so the encoder
    /// terminates back in the zero state. Output interleaves the two
    /// generator streams: the 133 bit of each step precedes the 171 bit.
    pub fn encode(&self, info: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(Self::coded_len(info.len()));
        let mut state = 0usize;
        for &bit in info.iter().chain(std::iter::repeat_n(&0, FLUSH_BITS)) {
            debug_assert!(bit <= 1);
            let input = bit as usize;
            out.extend_from_slice(&self.outputs[state][input]);
            state = self.next_state[state][input];
        }
        out
    }

    /// Maximum-likelihood soft decoding. LLR convention: positive favors
    /// bit 0. The path metric maximizes the per-bit correlation (`+llr` for
    /// an expected 0, `-llr` for an expected 1); traceback starts in the
    /// zero state, which the zero tail guarantees, and the flush decisions
    /// are dropped. Expects `2 * (info_len + 6)` finite values.
    pub fn decode_soft<T: Real>(&self, llrs: &[T]) -> Result<Vec<u8>> {
        if llrs.len() % 2 != 0 || llrs.len() / 2 <= FLUSH_BITS {
            return Err(Error::InvalidInput(format!(
                "LLR length {} is not 2*(info_len + {FLUSH_BITS}) for info_len >= 1",
                llrs.len()
            )));
        }
        if let Some(i) = llrs.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite LLR at index {i}")));
        }
        let steps = llrs.len() / 2;
        let info_len = steps - FLUSH_BITS;

        let mut metric = vec![T::neg_infinity(); NUM_STATES];
        metric[0] = T::zero();
        let mut survivor_state = vec![[0u8; NUM_STATES]; steps];
        let mut survivor_input = vec![[0u8; NUM_STATES]; steps];

        let mut next_metric = vec![T::neg_infinity(); NUM_STATES];
        for t in 0..steps {
            let (l0, l1) = (llrs[2 * t], llrs[2 * t + 1]);
            next_metric.fill(T::neg_infinity());
            for state in 0..NUM_STATES {
                let base = metric[state];
                if base == T::neg_infinity() {
                    continue;
                }
                for input in 0..2usize {
                    let out = self.outputs[state][input];
                    let mut m = base;
                    m += if out[0] == 0 { l0 } else { -l0 };
                    m += if out[1] == 0 { l1 } else { -l1 };
                    let ns = self.next_state[state][input];
                    if m > next_metric[ns] {
                        next_metric[ns] = m;
                        survivor_state[t][ns] = state as u8;
                        survivor_input[t][ns] = input as u8;
                    }
                }
            }
            std::mem::swap(&mut metric, &mut next_metric);
        }

        let mut state = 0usize; // zero-tail termination
        let mut bits = vec![0u8; steps];
        for t in (0..steps).rev() {
            bits[t] = survivor_input[t][state];
            state = survivor_state[t][state] as usize;
        }
        bits.truncate(info_len);
        Ok(bits)
    }
}

impl Default for ConvCode {
    fn default() -> Self {
        Self::rate_half_k7()
    }
}

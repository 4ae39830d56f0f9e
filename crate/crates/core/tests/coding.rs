//! Encoder, interleaver, and Viterbi behavior against hand traces and
//! exhaustive ML search.

use proptest::prelude::*;
use rand::Rng;

use sorlink::coding::{ConvCode, Interleaver};
use sorlink::oracle;
use sorlink::rng::substream;

/// Independent impulse-response oracle: direct modulo-2 convolution of the
/// input with each generator's tap vector (most significant octal bit is
/// the coefficient of the current input).
fn convolve_reference(info: &[u8]) -> Vec<u8> {
    let taps_133 = [1u8, 0, 1, 1, 0, 1, 1];
    let taps_171 = [1u8, 1, 1, 1, 0, 0, 1];
    let padded: Vec<u8> = info.iter().copied().chain([0; 6]).collect();
    let mut out = Vec::with_capacity(2 * padded.len());
    for t in 0..padded.len() {
        for taps in [&taps_133, &taps_171] {
            let mut acc = 0u8;
            for (lag, &g) in taps.iter().enumerate() {
                if lag <= t {
                    acc ^= g & padded[t - lag];
                }
            }
            out.push(acc);
        }
    }
    out
}

#[test]
fn impulse_response_matches_convolution_oracle() {
    let code = ConvCode::rate_half_k7();
    let got = code.encode(&[1]);
    let want = convolve_reference(&[1]);
    assert_eq!(got, want);
    // Frozen from the oracle: the generator taps read out in time order.
    assert_eq!(got, vec![1, 1, 0, 1, 1, 1, 1, 1, 0, 0, 1, 0, 1, 1]);
}

#[test]
fn encoder_matches_convolution_oracle_on_random_frames() {
    let code = ConvCode::rate_half_k7();
    let mut rng = substream(17, 60, 0, 0);
    for _ in 0..50 {
        let len = rng.random_range(1..40usize);
        let info: Vec<u8> = (0..len).map(|_| rng.random_range(0..2u8)).collect();
        assert_eq!(code.encode(&info), convolve_reference(&info));
    }
}

#[test]
fn free_distance_is_ten() {
    // Minimum weight over all nonzero terminated codewords of short frames;
    // the info length comfortably exceeds the constraint length, so the
    // minimum-weight path is captured.
    let code = ConvCode::rate_half_k7();
    let info_len = 12usize;
    let mut d_free = usize::MAX;
    for word in 1u32..(1 << info_len) {
        let bits: Vec<u8> = (0..info_len).map(|i| ((word >> i) & 1) as u8).collect();
        let weight = code.encode(&bits).iter().map(|&b| b as usize).sum();
        d_free = d_free.min(weight);
    }
    assert_eq!(d_free, 10);
}

#[test]
fn noiseless_decoding_is_exact() {
    let code = ConvCode::rate_half_k7();
    for frame in 0..1000u64 {
        let mut rng = substream(18, 61, frame, 0);
        let info: Vec<u8> = (0..128).map(|_| rng.random_range(0..2u8)).collect();
        let coded = code.encode(&info);
        let llrs: Vec<f64> = coded
            .iter()
            .map(|&b| if b == 0 { 3.0 } else { -3.0 })
            .collect();
        assert_eq!(code.decode_soft(&llrs).unwrap(), info, "frame {frame}");
    }
}

#[test]
fn single_flipped_bit_is_corrected() {
    let code = ConvCode::rate_half_k7();
    let mut rng = substream(19, 62, 0, 0);
    let info: Vec<u8> = (0..64).map(|_| rng.random_range(0..2u8)).collect();
    let coded = code.encode(&info);
    for flip in [0usize, 17, 63, coded.len() - 1] {
        let llrs: Vec<f64> = coded
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let val = if b == 0 { 3.0 } else { -3.0 };
                if i == flip {
                    -val
                } else {
                    val
                }
            })
            .collect();
        assert_eq!(code.decode_soft(&llrs).unwrap(), info, "flip at {flip}");
    }
}

#[test]
fn viterbi_equals_exhaustive_ml() {
    let code = ConvCode::rate_half_k7();
    for trial in 0..100u64 {
        let info_len = if trial % 2 == 0 { 8 } else { 12 };
        let mut rng = substream(20, 63, trial, 0);
        let llrs: Vec<f64> = (0..ConvCode::coded_len(info_len))
            .map(|_| rng.random_range(-4.0..4.0))
            .collect();
        let viterbi = code.decode_soft(&llrs).unwrap();
        let ml = oracle::ml_decode_exhaustive(&code, &llrs, info_len);
        assert_eq!(viterbi, ml, "trial {trial}");
    }
}

#[test]
fn llr_magnitude_does_not_change_decisions() {
    // The max-correlation path is invariant under positive scaling.
    let code = ConvCode::rate_half_k7();
    let mut rng = substream(21, 64, 0, 0);
    let llrs: Vec<f64> = (0..ConvCode::coded_len(40))
        .map(|_| rng.random_range(-2.0..2.0))
        .collect();
    let scaled: Vec<f64> = llrs.iter().map(|&l| 25.0 * l).collect();
    assert_eq!(
        code.decode_soft(&llrs).unwrap(),
        code.decode_soft(&scaled).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Convolutional codes are linear: encode(a ^ b) = encode(a) ^ encode(b).
    #[test]
    fn encoder_linearity(seed in 0u64..1_000_000, len in 1usize..64) {
        let code = ConvCode::rate_half_k7();
        let mut rng = substream(seed, 65, 0, 0);
        let a: Vec<u8> = (0..len).map(|_| rng.random_range(0..2u8)).collect();
        let b: Vec<u8> = (0..len).map(|_| rng.random_range(0..2u8)).collect();
        let xored: Vec<u8> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
        let lhs = code.encode(&xored);
        let rhs: Vec<u8> = code
            .encode(&a)
            .iter()
            .zip(code.encode(&b))
            .map(|(x, y)| x ^ y)
            .collect();
        prop_assert_eq!(lhs, rhs);
    }

    /// deinterleave(interleave(x)) == x for random permutations and data.
    #[test]
    fn interleaver_inverse(seed in 0u64..1_000_000, len in 1usize..256) {
        let il = Interleaver::random(len, &mut substream(seed, 66, 0, 0));
        let mut rng = substream(seed, 67, 0, 0);
        let data: Vec<u16> = (0..len).map(|_| rng.random()).collect();
        let there = il.interleave(&data).unwrap();
        prop_assert_eq!(il.deinterleave(&there).unwrap(), data);
    }
}

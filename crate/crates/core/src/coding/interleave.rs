//! Random bit interleaver with its inverse permutation.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A fixed permutation of coded-bit indices and its inverse.
#[derive(Debug, Clone)]
pub struct Interleaver {
    perm: Vec<usize>,
    inv: Vec<usize>,
}

impl Interleaver {
    /// Uniformly random permutation drawn from the given generator.
    pub fn random<R: Rng>(len: usize, rng: &mut R) -> Self {
        let mut perm: Vec<usize> = (0..len).collect();
        perm.shuffle(rng);
        Self::from_perm(perm)
    }

    pub fn identity(len: usize) -> Self {
        Self::from_perm((0..len).collect())
    }

    fn from_perm(perm: Vec<usize>) -> Self {
        let mut inv = vec![0usize; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Self { perm, inv }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Apply the permutation: `out[i] = input[perm[i]]`.
    pub fn interleave<X: Copy>(&self, input: &[X]) -> Result<Vec<X>> {
        self.check(input.len())?;
        Ok(self.perm.iter().map(|&p| input[p]).collect())
    }

    /// Apply the inverse permutation (used on LLRs at the receiver).
    pub fn deinterleave<X: Copy>(&self, input: &[X]) -> Result<Vec<X>> {
        self.check(input.len())?;
        Ok(self.inv.iter().map(|&p| input[p]).collect())
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.perm.len() {
            return Err(Error::InvalidInput(format!(
                "input length {len} does not match permutation size {}",
                self.perm.len()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;

    #[test]
    fn roundtrip() {
        let il = Interleaver::random(64, &mut substream(3, 0, 0, 0));
        let data: Vec<u32> = (0..64).collect();
        let mixed = il.interleave(&data).unwrap();
        assert_ne!(mixed, data);
        assert_eq!(il.deinterleave(&mixed).unwrap(), data);
    }

    #[test]
    fn identity_is_identity() {
        let il = Interleaver::identity(8);
        let data = [5u8, 4, 3, 2, 1, 0, 7, 6];
        assert_eq!(il.interleave(&data).unwrap(), data.to_vec());
    }

    #[test]
    fn fixed_seed_fixed_permutation() {
        let a = Interleaver::random(32, &mut substream(7, 1, 0, 0));
        let b = Interleaver::random(32, &mut substream(7, 1, 0, 0));
        assert_eq!(a.perm, b.perm);
    }

    #[test]
    fn size_mismatch_rejected() {
        let il = Interleaver::identity(4);
        assert!(il.interleave(&[1u8, 2, 3]).is_err());
        assert!(il.deinterleave(&[1u8, 2, 3, 4, 5]).is_err());
    }
}

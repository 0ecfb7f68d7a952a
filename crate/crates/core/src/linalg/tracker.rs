use super::bits::{words_for, BitVec};
use super::dense::axpy;
use crate::error::{Error, Result};
use crate::gf::Field;

/// Outcome of offering a column to a [`RankTracker`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Offer {
    /// The column increased the rank.
    Novel,
    /// The column lies in the span of the columns seen so far.
    Redundant,
}

const NO_SLOT: u32 = u32::MAX;

/// Incremental rank of a growing set of length-`k` columns.
///
/// The basis is kept in semi-echelon form: each stored vector has a distinct
/// leading (lowest-index) nonzero coordinate, normalized to one, and is zero
/// below it. Reducing an arriving column is a single ascending sweep; a
/// column is novel the moment the sweep meets an unclaimed leading position.
#[derive(Clone, Debug)]
pub struct RankTracker {
    field: Field,
    dim: usize,
    rank: usize,
    // owner of each coordinate as a leading position, or NO_SLOT
    slot_of: Vec<u32>,
    basis: Basis,
}

#[derive(Clone, Debug)]
enum Basis {
    Binary {
        stride: usize,
        store: Vec<u64>,
        scratch: Vec<u64>,
    },
    Generic {
        store: Vec<u16>,
        scratch: Vec<u16>,
    },
}

impl RankTracker {
    pub fn new(field: &Field, dim: usize) -> Self {
        let basis = if field.is_binary() {
            let stride = words_for(dim);
            Basis::Binary {
                stride,
                store: Vec::with_capacity(dim * stride),
                scratch: vec![0; stride],
            }
        } else {
            Basis::Generic {
                store: Vec::with_capacity(dim * dim),
                scratch: vec![0; dim],
            }
        };
        RankTracker {
            field: field.clone(),
            dim,
            rank: 0,
            slot_of: vec![NO_SLOT; dim],
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.dim
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Forgets every offered column, keeping allocations.
    pub fn reset(&mut self) {
        self.rank = 0;
        self.slot_of.fill(NO_SLOT);
        match &mut self.basis {
            Basis::Binary { store, .. } => store.clear(),
            Basis::Generic { store, .. } => store.clear(),
        }
    }

    /// Offers a packed GF(2) column. Only valid for binary trackers.
    pub fn offer_bits(&mut self, col: &BitVec) -> Result<Offer> {
        if col.len() != self.dim {
            return Err(Error::usage(format!(
                "column length {} does not match tracker dimension {}",
                col.len(),
                self.dim
            )));
        }
        let Basis::Binary {
            stride,
            store,
            scratch,
        } = &mut self.basis
        else {
            return Err(Error::usage("packed columns need a GF(2) tracker"));
        };
        let stride = *stride;
        scratch.copy_from_slice(col.words());
        for w in 0..stride {
            loop {
                let word = scratch[w];
                if word == 0 {
                    break;
                }
                let bit = w * 64 + word.trailing_zeros() as usize;
                let slot = self.slot_of[bit];
                if slot == NO_SLOT {
                    self.slot_of[bit] = self.rank as u32;
                    store.extend_from_slice(scratch);
                    self.rank += 1;
                    return Ok(Offer::Novel);
                }
                let base = slot as usize * stride;
                for (s, b) in scratch[w..].iter_mut().zip(&store[base + w..base + stride]) {
                    *s ^= b;
                }
            }
        }
        Ok(Offer::Redundant)
    }

    /// Offers a column of raw field elements.
    pub fn offer_column(&mut self, col: &[u16]) -> Result<Offer> {
        if col.len() != self.dim {
            return Err(Error::usage(format!(
                "column length {} does not match tracker dimension {}",
                col.len(),
                self.dim
            )));
        }
        if let Some(&bad) = col.iter().find(|&&v| v as usize >= self.field.order()) {
            return Err(Error::usage(format!("entry {bad} outside {:?}", self.field)));
        }
        if self.field.is_binary() {
            let mut bits = BitVec::zeros(self.dim);
            for (i, &v) in col.iter().enumerate() {
                if v != 0 {
                    bits.set(i, true);
                }
            }
            return self.offer_bits(&bits);
        }
        let Basis::Generic { store, scratch } = &mut self.basis else {
            unreachable!("non-binary trackers use the generic basis");
        };
        let dim = self.dim;
        scratch.copy_from_slice(col);
        for pos in 0..dim {
            let lead = scratch[pos];
            if lead == 0 {
                continue;
            }
            let slot = self.slot_of[pos];
            if slot == NO_SLOT {
                let inv = self.field.inv_raw(lead).expect("nonzero");
                for v in &mut scratch[pos..] {
                    *v = self.field.mul_raw(*v, inv);
                }
                self.slot_of[pos] = self.rank as u32;
                store.extend_from_slice(scratch);
                self.rank += 1;
                return Ok(Offer::Novel);
            }
            let base = slot as usize * dim;
            axpy(&self.field, &mut scratch[pos..], &store[base + pos..base + dim], lead);
        }
        Ok(Offer::Redundant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_column_is_redundant() {
        for field in [Field::binary(), Field::gf256()] {
            let mut t = RankTracker::new(&field, 5);
            assert_eq!(t.offer_column(&[0; 5]).unwrap(), Offer::Redundant);
            assert_eq!(t.rank(), 0);
        }
    }

    #[test]
    fn standard_basis_fills() {
        for field in [Field::binary(), Field::gf256()] {
            let mut t = RankTracker::new(&field, 70);
            for i in 0..70 {
                let mut e = vec![0u16; 70];
                e[i] = 1;
                assert_eq!(t.offer_column(&e).unwrap(), Offer::Novel);
            }
            assert!(t.is_full());
            let ones = vec![1u16; 70];
            assert_eq!(t.offer_column(&ones).unwrap(), Offer::Redundant);
        }
    }

    #[test]
    fn redundant_offer_leaves_state_unchanged() {
        let f = Field::gf256();
        let mut t = RankTracker::new(&f, 3);
        t.offer_column(&[1, 2, 3]).unwrap();
        t.offer_column(&[0, 5, 7]).unwrap();
        let before = t.rank();
        // 4 * (1,2,3) + (0,5,7) in GF(256)
        let combo: Vec<u16> = (0..3)
            .map(|i| f.mul_raw(4, [1, 2, 3][i]) ^ [0, 5, 7][i])
            .collect();
        assert_eq!(t.offer_column(&combo).unwrap(), Offer::Redundant);
        assert_eq!(t.offer_column(&combo).unwrap(), Offer::Redundant);
        assert_eq!(t.rank(), before);
    }

    #[test]
    fn dimension_mismatch() {
        let mut t = RankTracker::new(&Field::binary(), 4);
        assert!(t.offer_column(&[1, 0, 1]).is_err());
        assert!(t.offer_bits(&BitVec::zeros(5)).is_err());
        let mut g = RankTracker::new(&Field::gf256(), 4);
        assert!(g.offer_bits(&BitVec::zeros(4)).is_err());
    }

    #[test]
    fn streaming_matches_batch_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for field in [Field::binary(), Field::with_degree(3).unwrap(), Field::gf256()] {
            for _ in 0..30 {
                let rows = rng.gen_range(1..40);
                let cols = rng.gen_range(1..60);
                let mut m = Matrix::zeros(&field, rows, cols);
                // sparse entries so rank deficiency actually happens
                for r in 0..rows {
                    for c in 0..cols {
                        if rng.gen_bool(0.15) {
                            m.set_raw(r, c, rng.gen_range(1..field.order()) as u16);
                        }
                    }
                }
                let mut t = RankTracker::new(&field, rows);
                for c in 0..cols {
                    t.offer_column(&m.column(c)).unwrap();
                }
                assert_eq!(t.rank(), m.rank());
            }
        }
    }
}

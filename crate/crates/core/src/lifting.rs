//! Rewriting codes over GF(2^m) as binary codes.
//!
//! Every scalar `g` of a generator becomes the `m x m` block of the map
//! `b -> g * b` on coefficient vectors. Under the row-vector convention
//! `c = u G`, the block stored at `(i, j)` is the transpose of
//! [`FieldElement::imat`](crate::gf::FieldElement::imat), which makes
//!
//! ```text
//! vec(u) * lift(G) = vec(u * G)
//! ```
//!
//! where `vec` concatenates the LSB-first coefficient vectors of each
//! symbol. Symbol `j` owns the contiguous binary columns `j*m .. j*m + m`.

use std::ops::Range;

use crate::codes::CodeSpec;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::{BitMatrix, BitVec, Matrix};

/// Binary image of a code, with its columns grouped into symbol blocks.
#[derive(Clone, Debug)]
pub struct LiftedCode {
    base: CodeSpec,
    block_size: usize,
    generator: BitMatrix,
    columns: Vec<BitVec>,
}

/// Concatenated coefficient vectors of `symbols`.
pub fn vectorize(field: &Field, symbols: &[u16]) -> BitVec {
    let m = field.degree() as usize;
    let mut out = BitVec::zeros(symbols.len() * m);
    for (j, &s) in symbols.iter().enumerate() {
        for b in 0..m {
            if (s >> b) & 1 == 1 {
                out.set(j * m + b, true);
            }
        }
    }
    out
}

/// Inverse of [`vectorize`].
pub fn devectorize(field: &Field, bits: &BitVec) -> Result<Vec<u16>> {
    let m = field.degree() as usize;
    if bits.len() % m != 0 {
        return Err(Error::usage(format!(
            "bit vector of length {} is not a multiple of {m}",
            bits.len()
        )));
    }
    Ok((0..bits.len() / m)
        .map(|j| {
            (0..m).fold(0u16, |acc, b| acc | ((bits.get(j * m + b) as u16) << b))
        })
        .collect())
}

/// Binary generator of `code`; blocks are the `m` columns of each symbol.
pub fn lift_generator(code: &CodeSpec) -> LiftedCode {
    let field = code.field();
    let m = field.degree() as usize;
    let g = code.generator();
    let (k, n) = (g.rows(), g.cols());
    let mut columns = vec![BitVec::zeros(k * m); n * m];
    for i in 0..k {
        for j in 0..n {
            let scalar = g.get_raw(i, j);
            if scalar == 0 {
                continue;
            }
            for (a, image) in field.imat_columns(scalar).into_iter().enumerate() {
                for b in 0..m {
                    if (image >> b) & 1 == 1 {
                        columns[j * m + b].set(i * m + a, true);
                    }
                }
            }
        }
    }
    let generator = BitMatrix::from_columns(k * m, &columns);
    LiftedCode {
        base: code.clone(),
        block_size: m,
        generator,
        columns,
    }
}

/// Binary parity-check matrix with block `(i, j)` equal to `imat(H[i][j])`;
/// its nullspace, read through [`devectorize`], is the original code.
pub fn lift_parity(code: &CodeSpec) -> Result<Matrix> {
    let h = code
        .parity()
        .ok_or_else(|| Error::usage("code carries no parity-check matrix"))?;
    let field = code.field();
    if field.is_binary() {
        return Ok(h.clone());
    }
    let m = field.degree() as usize;
    let mut out = BitMatrix::zeros(h.rows() * m, h.cols() * m);
    for i in 0..h.rows() {
        for j in 0..h.cols() {
            let scalar = h.get_raw(i, j);
            if scalar == 0 {
                continue;
            }
            for (col, image) in field.imat_columns(scalar).into_iter().enumerate() {
                for row in 0..m {
                    if (image >> row) & 1 == 1 {
                        out.set(i * m + row, j * m + col, true);
                    }
                }
            }
        }
    }
    Ok(Matrix::from_bit_matrix(&out))
}

impl LiftedCode {
    /// Regroups the columns of a binary code into blocks of `block_size`
    /// consecutive positions, e.g. bytes of an LDPC codeword.
    pub fn binary_blocks(code: &CodeSpec, block_size: usize) -> Result<LiftedCode> {
        if !code.field().is_binary() {
            return Err(Error::usage("block regrouping applies to binary codes only"));
        }
        if block_size == 0 || code.n() % block_size != 0 {
            return Err(Error::usage(format!(
                "block size {block_size} does not divide n = {}",
                code.n()
            )));
        }
        let mut lifted = lift_generator(code);
        lifted.block_size = block_size;
        Ok(lifted)
    }

    pub fn base(&self) -> &CodeSpec {
        &self.base
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn num_blocks(&self) -> usize {
        self.columns.len() / self.block_size
    }

    /// Binary dimension, `k * m`.
    pub fn dim(&self) -> usize {
        self.generator.rows()
    }

    pub fn lifted_generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn block(&self, j: usize) -> Range<usize> {
        j * self.block_size..(j + 1) * self.block_size
    }

    pub fn blocks(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        (0..self.num_blocks()).map(|j| self.block(j))
    }

    /// Binary columns making up block `j`.
    pub fn block_columns(&self, j: usize) -> &[BitVec] {
        &self.columns[self.block(j)]
    }

    /// Column submatrix made of the requested blocks, in request order.
    pub fn select_blocks(&self, block_indices: &[usize]) -> Result<BitMatrix> {
        let mut seen = vec![false; self.num_blocks()];
        let mut cols = Vec::with_capacity(block_indices.len() * self.block_size);
        for &j in block_indices {
            if j >= self.num_blocks() {
                return Err(Error::usage(format!(
                    "block {j} out of range {}",
                    self.num_blocks()
                )));
            }
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::usage(format!("block {j} requested twice")));
            }
            cols.extend(self.block_columns(j).iter().cloned());
        }
        Ok(BitMatrix::from_columns(self.dim(), &cols))
    }

    /// `vec(u) * lift(G)`.
    pub fn encode_bits(&self, u: &BitVec) -> Result<BitVec> {
        if u.len() != self.dim() {
            return Err(Error::usage(format!(
                "message has {} bits, expected {}",
                u.len(),
                self.dim()
            )));
        }
        Ok(self.generator.vec_mul(u))
    }
}

use std::fmt;

use super::bits::{BitMatrix, BitVec};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Dense row-major matrix over a GF(2^m).
///
/// Entries are raw element representations. Rank queries over GF(2) are
/// routed through the bit-packed [`BitMatrix`] path.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows.min(16) {
            writeln!(f, "{:?}", &self.row(r)[..self.cols.min(16)])?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    /// `pivots[i]` is the pivot column of row `i`; `pivots.len()` is the rank.
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set_raw(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u16>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::usage("ragged rows"));
            }
            for &v in row {
                if v as usize >= field.order() {
                    return Err(Error::usage(format!("entry {v} outside {field:?}")));
                }
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_bit_matrix(bits: &BitMatrix) -> Self {
        let mut m = Matrix::zeros(&Field::binary(), bits.rows(), bits.cols());
        for r in 0..bits.rows() {
            for c in BitVec::from_words(bits.cols(), bits.row_words(r).to_vec()).iter_ones() {
                m.set_raw(r, c, 1);
            }
        }
        m
    }

    /// Bit-packed copy; only valid over GF(2).
    pub fn to_bit_matrix(&self) -> Result<BitMatrix> {
        if !self.field.is_binary() {
            return Err(Error::usage("bit packing requires a GF(2) matrix"));
        }
        let mut b = BitMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get_raw(r, c) != 0 {
                    b.set(r, c, true);
                }
            }
        }
        Ok(b)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get_raw(&self, r: usize, c: usize) -> u16 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set_raw(&mut self, r: usize, c: usize, v: u16) {
        debug_assert!((v as usize) < self.field.order());
        self.data[r * self.cols + c] = v;
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.field
            .element(self.get_raw(r, c))
            .expect("entries are kept in range")
    }

    pub fn set(&mut self, r: usize, c: usize, v: &FieldElement) -> Result<()> {
        if *v.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.degree(),
                right: v.field().degree(),
            });
        }
        self.set_raw(r, c, v.value());
        Ok(())
    }

    pub fn row(&self, r: usize) -> &[u16] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u16> {
        (0..self.rows).map(|r| self.get_raw(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set_raw(c, r, self.get_raw(r, c));
            }
        }
        t
    }

    pub fn select_columns(&self, indices: &[usize]) -> Result<Matrix> {
        if let Some(&bad) = indices.iter().find(|&&c| c >= self.cols) {
            return Err(Error::usage(format!(
                "column {bad} out of range {}",
                self.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, indices.len());
        for r in 0..self.rows {
            for (j, &c) in indices.iter().enumerate() {
                out.set_raw(r, j, self.get_raw(r, c));
            }
        }
        Ok(out)
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::usage("hconcat needs equal row counts"));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.data[r * out.cols..r * out.cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * out.cols + self.cols..(r + 1) * out.cols].copy_from_slice(other.row(r));
        }
        Ok(out)
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.degree(),
                right: other.field.degree(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for i in 0..self.cols {
                let a = self.get_raw(r, i);
                if a != 0 {
                    let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                    axpy(&self.field, dst, other.row(i), a);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, `u * self`.
    pub fn vec_mul(&self, u: &[u16]) -> Result<Vec<u16>> {
        if u.len() != self.rows {
            return Err(Error::usage(format!(
                "vector length {} does not match {} rows",
                u.len(),
                self.rows
            )));
        }
        let mut out = vec![0u16; self.cols];
        for (i, &a) in u.iter().enumerate() {
            if a as usize >= self.field.order() {
                return Err(Error::usage(format!("symbol {a} outside {:?}", self.field)));
            }
            if a != 0 {
                axpy(&self.field, &mut out, self.row(i), a);
            }
        }
        Ok(out)
    }

    /// Matrix times column vector, `self * x^T`.
    pub fn mul_vec(&self, x: &[u16]) -> Result<Vec<u16>> {
        if x.len() != self.cols {
            return Err(Error::usage(format!(
                "vector length {} does not match {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(0u16, |acc, (&a, &b)| acc ^ self.field.mul_raw(a, b))
            })
            .collect())
    }

    /// Binary matrix times a packed column vector.
    pub fn mul_bits(&self, x: &BitVec) -> Result<BitVec> {
        Ok(self.to_bit_matrix()?.mul_vec(x))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn rank(&self) -> usize {
        if self.field.is_binary() {
            self.to_bit_matrix().expect("binary").rank()
        } else {
            self.rank_generic()
        }
    }

    /// Rank through field-generic elimination, regardless of the field.
    pub fn rank_generic(&self) -> usize {
        let order: Vec<usize> = (0..self.cols).collect();
        self.echelon_generic(&order).pivots.len()
    }

    pub fn echelon(&self) -> Echelon {
        let order: Vec<usize> = (0..self.cols).collect();
        self.echelon_in_order(&order)
    }

    /// Gauss-Jordan elimination visiting candidate pivot columns in `order`.
    ///
    /// Columns absent from `order` never become pivots.
    pub fn echelon_in_order(&self, order: &[usize]) -> Echelon {
        if self.field.is_binary() {
            let (m, pivots) = self.to_bit_matrix().expect("binary").echelon_in_order(order);
            return Echelon {
                matrix: Matrix::from_bit_matrix(&m),
                pivots,
            };
        }
        self.echelon_generic(order)
    }

    fn echelon_generic(&self, order: &[usize]) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let cols = m.cols;
        for &c in order {
            let r = pivots.len();
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get_raw(i, c) != 0) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.field.inv_raw(m.get_raw(r, c)).expect("nonzero pivot");
            if inv != 1 {
                for v in &mut m.data[r * cols..(r + 1) * cols] {
                    *v = m.field.mul_raw(*v, inv);
                }
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get_raw(i, c);
                if f != 0 {
                    let field = m.field.clone();
                    axpy(&field, &mut m.data[i * cols..(i + 1) * cols], &pivot_row, f);
                }
            }
            pivots.push(c);
        }
        Echelon { matrix: m, pivots }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Rows form a basis of `{x : self * x^T = 0}`.
    pub fn nullspace(&self) -> Matrix {
        let ech = self.echelon();
        nullspace_from_echelon(&ech, self.cols)
    }
}

pub(crate) fn nullspace_from_echelon(ech: &Echelon, cols: usize) -> Matrix {
    let field = ech.matrix.field().clone();
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut out = Matrix::zeros(&field, free.len(), cols);
    for (row, &f) in free.iter().enumerate() {
        out.set_raw(row, f, 1);
        for (i, &p) in ech.pivots.iter().enumerate() {
            // x_p = -R[i][f], and negation is the identity in characteristic 2
            out.set_raw(row, p, ech.matrix.get_raw(i, f));
        }
    }
    out
}

/// `dst += factor * src`.
#[inline]
pub(crate) fn axpy(field: &Field, dst: &mut [u16], src: &[u16], factor: u16) {
    if factor == 1 {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d ^= s;
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d ^= field.mul_raw(s, factor);
        }
    }
}

/// Recovers the unique `u` with `u * gt = c`.
///
/// `gt` is `k x r` (the columns of the generator that arrived) and `c` holds
/// the `r` received symbols.
pub fn solve(gt: &Matrix, c: &[u16]) -> Result<Vec<u16>> {
    let k = gt.rows();
    let r = gt.cols();
    if c.len() != r {
        return Err(Error::usage(format!(
            "received {} symbols for {} columns",
            c.len(),
            r
        )));
    }
    let field = gt.field();
    if let Some(&bad) = c.iter().find(|&&v| v as usize >= field.order()) {
        return Err(Error::usage(format!("symbol {bad} outside {field:?}")));
    }
    // gt^T u^T = c^T as an r x (k + 1) augmented system
    let mut aug = Matrix::zeros(field, r, k + 1);
    for j in 0..r {
        for i in 0..k {
            aug.set_raw(j, i, gt.get_raw(i, j));
        }
        aug.set_raw(j, k, c[j]);
    }
    let order: Vec<usize> = (0..k).collect();
    let ech = aug.echelon_in_order(&order);
    let rank = ech.pivots.len();
    if rank < k {
        return Err(Error::NotDecodable { rank, needed: k });
    }
    if (rank..r).any(|j| ech.matrix.get_raw(j, k) != 0) {
        return Err(Error::CorruptInput);
    }
    Ok((0..k).map(|i| ech.matrix.get_raw(i, k)).collect())
}

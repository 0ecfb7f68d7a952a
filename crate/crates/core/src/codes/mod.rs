//! Linear block codes: the generic `[n, k]_q` abstraction plus the
//! Reed-Solomon, random linear and AR4JA LDPC constructions.

mod alist;
mod ar4ja;
mod rln;
mod rs;

pub use alist::{ldpc_from_alist, to_alist};
pub use ar4ja::{ar4ja_parity, make_ar4ja, Ar4jaRate};
pub use rln::make_rln;
pub use rs::make_rs;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::{nullspace_from_echelon, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Rs,
    Rln,
    Ldpc,
}

impl std::fmt::Display for CodeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CodeKind::Rs => "rs",
            CodeKind::Rln => "rln",
            CodeKind::Ldpc => "ldpc",
        })
    }
}

/// Mother code of a punctured construction.
#[derive(Clone, Debug)]
struct Puncturing {
    full_generator: Matrix,
    transmitted: Vec<usize>,
}

/// An `[n, k]_q` linear code.
///
/// `generator` is `k x n` over the transmitted positions. For punctured
/// codes the parity-check matrix spans every variable node, including the
/// punctured ones, and the full mother generator is kept alongside.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    kind: CodeKind,
    generator: Matrix,
    parity: Option<Matrix>,
    puncturing: Option<Puncturing>,
}

impl CodeSpec {
    /// Validates `rank(G) = k` and, when present, `G H^T = 0`.
    pub fn new(kind: CodeKind, generator: Matrix, parity: Option<Matrix>) -> Result<Self> {
        if generator.rows() > generator.cols() {
            return Err(Error::construction(format!(
                "k = {} exceeds n = {}",
                generator.rows(),
                generator.cols()
            )));
        }
        if generator.rank() != generator.rows() {
            return Err(Error::construction("generator is rank deficient"));
        }
        if let Some(h) = &parity {
            check_orthogonal(&generator, h)?;
        }
        Ok(CodeSpec {
            kind,
            generator,
            parity,
            puncturing: None,
        })
    }

    /// A code whose transmitted symbols are the `transmitted` positions of
    /// the mother code generated by `full_generator` and checked by `parity`.
    pub fn punctured(
        kind: CodeKind,
        full_generator: Matrix,
        parity: Matrix,
        transmitted: Vec<usize>,
    ) -> Result<Self> {
        check_orthogonal(&full_generator, &parity)?;
        let generator = full_generator.select_columns(&transmitted)?;
        if generator.rank() != generator.rows() {
            return Err(Error::construction(
                "generator restricted to transmitted positions is rank deficient",
            ));
        }
        Ok(CodeSpec {
            kind,
            generator,
            parity: Some(parity),
            puncturing: Some(Puncturing {
                full_generator,
                transmitted,
            }),
        })
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.n() as f64
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity(&self) -> Option<&Matrix> {
        self.parity.as_ref()
    }

    pub fn transmitted_positions(&self) -> Option<&[usize]> {
        self.puncturing.as_ref().map(|p| p.transmitted.as_slice())
    }

    /// Generator over all variable nodes (equals `generator` when unpunctured).
    pub fn full_generator(&self) -> &Matrix {
        self.puncturing
            .as_ref()
            .map_or(&self.generator, |p| &p.full_generator)
    }

    /// `c = u G` over the transmitted positions.
    pub fn encode(&self, u: &[u16]) -> Result<Vec<u16>> {
        self.check_message(u)?;
        self.generator.vec_mul(u)
    }

    /// Codeword of the mother code, punctured positions included.
    pub fn encode_full(&self, u: &[u16]) -> Result<Vec<u16>> {
        self.check_message(u)?;
        self.full_generator().vec_mul(u)
    }

    fn check_message(&self, u: &[u16]) -> Result<()> {
        if u.len() != self.k() {
            return Err(Error::usage(format!(
                "message length {} does not match k = {}",
                u.len(),
                self.k()
            )));
        }
        Ok(())
    }

    /// `H c^T` for a full-length word; zero iff `c` is a codeword.
    pub fn syndrome(&self, c_full: &[u16]) -> Result<Vec<u16>> {
        let h = self
            .parity
            .as_ref()
            .ok_or_else(|| Error::usage("code carries no parity-check matrix"))?;
        h.mul_vec(c_full)
    }
}

fn check_orthogonal(g: &Matrix, h: &Matrix) -> Result<()> {
    if g.cols() != h.cols() {
        return Err(Error::construction(format!(
            "generator has {} columns but parity has {}",
            g.cols(),
            h.cols()
        )));
    }
    if !g.mul(&h.transpose())?.is_zero() {
        return Err(Error::construction("G H^T is not zero"));
    }
    Ok(())
}

/// Parity-check matrix spanning the dual of the row space of `g`.
pub fn parity_from_generator(g: &Matrix) -> Matrix {
    g.nullspace()
}

/// Mother generator of the code `{c : H c^T = 0}`, systematic on its
/// information set.
///
/// Pivots (the redundancy positions) are chosen greedily, punctured columns
/// first and then the remaining columns from last to first, so the
/// information set favours early transmitted positions and never contains
/// a punctured one.
pub fn full_generator_from_parity(h: &Matrix, punctured: &[usize]) -> Result<Matrix> {
    let n = h.cols();
    if n == 0 {
        return Err(Error::construction("parity matrix has no columns"));
    }
    let mut is_punctured = vec![false; n];
    for &p in punctured {
        if p >= n {
            return Err(Error::construction(format!("punctured position {p} >= {n}")));
        }
        is_punctured[p] = true;
    }
    let order: Vec<usize> = punctured
        .iter()
        .copied()
        .chain((0..n).rev().filter(|&c| !is_punctured[c]))
        .collect();
    let ech = h.echelon_in_order(&order);
    let mut is_pivot = vec![false; n];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    if let Some(&p) = punctured.iter().find(|&&p| !is_pivot[p]) {
        return Err(Error::construction(format!(
            "punctured position {p} cannot be determined by the transmitted ones"
        )));
    }
    if ech.pivots.len() == n {
        return Err(Error::construction("parity matrix leaves a zero-dimensional code"));
    }
    Ok(nullspace_from_echelon(&ech, n))
}

/// Unpunctured binary LDPC code with parity-check matrix `h`.
pub fn make_ldpc(h: Matrix) -> Result<CodeSpec> {
    if !h.field().is_binary() {
        return Err(Error::construction("LDPC parity-check matrix must be binary"));
    }
    let g = generator_from_parity(&h, None)?;
    CodeSpec::new(CodeKind::Ldpc, g, Some(h))
}

/// Generator from a parity-check matrix, restricted to `transmitted`
/// positions (all positions when `None`).
pub fn generator_from_parity(h: &Matrix, transmitted: Option<&[usize]>) -> Result<Matrix> {
    let n = h.cols();
    let punctured: Vec<usize> = match transmitted {
        None => Vec::new(),
        Some(t) => {
            let mut keep = vec![false; n];
            for &c in t {
                if c >= n {
                    return Err(Error::construction(format!("transmitted position {c} >= {n}")));
                }
                keep[c] = true;
            }
            (0..n).filter(|&c| !keep[c]).collect()
        }
    };
    let full = full_generator_from_parity(h, &punctured)?;
    match transmitted {
        None => Ok(full),
        Some(t) => full.select_columns(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn hamming_h() -> Matrix {
        let rows = vec![
            vec![1, 0, 1, 0, 1, 0, 1],
            vec![0, 1, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 1],
        ];
        Matrix::from_rows(&Field::binary(), &rows).unwrap()
    }

    #[test]
    fn hamming_generator() {
        let h = hamming_h();
        let g = generator_from_parity(&h, None).unwrap();
        assert_eq!((g.rows(), g.cols()), (4, 7));
        assert_eq!(g.rank(), 4);
        assert!(g.mul(&h.transpose()).unwrap().is_zero());
    }

    #[test]
    fn systematic_duality() {
        // H = [P | I] gives G = [I | P^T]
        let f = Field::binary();
        let p = [[1u16, 1, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]];
        let mut h = Matrix::zeros(&f, 3, 7);
        for r in 0..3 {
            for c in 0..4 {
                h.set_raw(r, c, p[r][c]);
            }
            h.set_raw(r, 4 + r, 1);
        }
        let g = generator_from_parity(&h, None).unwrap();
        let mut expected = Matrix::zeros(&f, 4, 7);
        for r in 0..4 {
            expected.set_raw(r, r, 1);
            for c in 0..3 {
                expected.set_raw(r, 4 + c, p[c][r]);
            }
        }
        assert_eq!(g, expected);
    }

    #[test]
    fn punctured_positions_are_never_information() {
        let h = hamming_h();
        let transmitted = [0, 1, 2, 3, 4, 5];
        let g = generator_from_parity(&h, Some(&transmitted)).unwrap();
        assert_eq!((g.rows(), g.cols()), (4, 6));
        assert_eq!(g.rank(), 4);
    }

    #[test]
    fn ldpc_from_hamming() {
        let code = make_ldpc(hamming_h()).unwrap();
        assert_eq!((code.n(), code.k(), code.kind()), (7, 4, CodeKind::Ldpc));
        assert!(make_ldpc(Matrix::identity(&Field::gf256(), 3)).is_err());
    }

    #[test]
    fn full_rank_h_rejected() {
        let h = Matrix::identity(&Field::binary(), 4);
        assert!(generator_from_parity(&h, None).is_err());
    }

    #[test]
    fn unrecoverable_puncturing_rejected() {
        // no check touches column 0, so puncturing it loses information
        let rows: Vec<Vec<u16>> = vec![vec![0, 1, 0], vec![0, 0, 1]];
        let h = Matrix::from_rows(&Field::binary(), &rows).unwrap();
        assert!(generator_from_parity(&h, Some(&[1, 2])).is_err());
    }

    #[test]
    fn code_spec_validates() {
        let h = hamming_h();
        let g = generator_from_parity(&h, None).unwrap();
        let code = CodeSpec::new(CodeKind::Ldpc, g.clone(), Some(h.clone())).unwrap();
        assert_eq!((code.n(), code.k()), (7, 4));
        // wrong H
        let bad_h = Matrix::identity(&Field::binary(), 7)
            .select_columns(&[0, 1, 2, 3, 4, 5, 6])
            .unwrap();
        assert!(CodeSpec::new(CodeKind::Ldpc, g.clone(), Some(bad_h)).is_err());
        // rank deficient G
        let rows: Vec<Vec<u16>> = vec![g.row(0).to_vec(), g.row(0).to_vec()];
        let dup = Matrix::from_rows(&Field::binary(), &rows).unwrap();
        assert!(CodeSpec::new(CodeKind::Ldpc, dup, None).is_err());
    }
}

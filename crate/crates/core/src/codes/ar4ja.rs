//! AR4JA protograph LDPC codes (CCSDS 131.0-B) with k = 1024.
//!
//! The parity-check matrix is assembled from M x M circulant-like
//! permutation blocks `Pi_k`. The last M variable nodes are punctured.

use super::{full_generator_from_parity, CodeKind, CodeSpec};
use crate::error::{Error, Result};
use crate::linalg::{BitMatrix, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ar4jaRate {
    R1_2,
    R2_3,
    R4_5,
}

impl Ar4jaRate {
    /// Parses `"1/2"`, `"2/3"` or `"4/5"`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "1/2" => Ok(Ar4jaRate::R1_2),
            "2/3" => Ok(Ar4jaRate::R2_3),
            "4/5" => Ok(Ar4jaRate::R4_5),
            other => Err(Error::construction(format!("unsupported AR4JA rate {other:?}"))),
        }
    }

    /// Rate of a code with `n` transmitted bits and `k` information bits.
    pub fn from_lengths(n: usize, k: usize) -> Result<Self> {
        match (n, k) {
            (n, k) if n == 2 * k => Ok(Ar4jaRate::R1_2),
            (n, k) if 2 * n == 3 * k => Ok(Ar4jaRate::R2_3),
            (n, k) if 4 * n == 5 * k => Ok(Ar4jaRate::R4_5),
            _ => Err(Error::construction(format!("no AR4JA rate gives [{n}, {k}]"))),
        }
    }

    fn extra_column_blocks(self) -> usize {
        match self {
            Ar4jaRate::R1_2 => 0,
            Ar4jaRate::R2_3 => 2,
            Ar4jaRate::R4_5 => 6,
        }
    }

    /// log2 of the block size M for k = 1024.
    fn log2_m(self) -> u32 {
        match self {
            Ar4jaRate::R1_2 => 9,
            Ar4jaRate::R2_3 => 8,
            Ar4jaRate::R4_5 => 7,
        }
    }
}

const SUPPORTED_K: usize = 1024;

struct Permutations {
    log2_m: u32,
}

impl Permutations {
    /// `Pi_k(i)`: M/4 * ((theta_k + floor(4i/M)) mod 4) + (phi_k(floor(4i/M)) + i) mod M/4
    fn pi(&self, k: usize, i: usize) -> usize {
        let m = 1usize << self.log2_m;
        let quarter = m / 4;
        let j = 4 * i / m;
        let theta = THETA[k - 1] as usize;
        let phi = PHI[j][k - 1][(self.log2_m - 7) as usize] as usize;
        quarter * ((theta + j) % 4) + (phi + i) % quarter
    }
}

/// Parity-check matrix of the AR4JA code with k = 1024 at `rate`:
/// `3M x (extra + 5) M`, punctured nodes last.
pub fn ar4ja_parity(k: usize, rate: Ar4jaRate) -> Result<Matrix> {
    if k != SUPPORTED_K {
        return Err(Error::construction(format!(
            "AR4JA with k = {k} is not supported (only k = {SUPPORTED_K})"
        )));
    }
    let p = Permutations {
        log2_m: rate.log2_m(),
    };
    let m = 1usize << p.log2_m;
    let extra = m * rate.extra_column_blocks();
    let mut h = BitMatrix::zeros(3 * m, extra + 5 * m);
    let base = extra;
    for i in 0..m {
        // rate-1/2 core
        h.toggle(i, base + 2 * m + i);
        h.toggle(i, base + 4 * m + i);
        h.toggle(i, base + 4 * m + p.pi(1, i));
        h.toggle(m + i, base + i);
        h.toggle(m + i, base + m + i);
        h.toggle(m + i, base + 3 * m + i);
        h.toggle(m + i, base + 4 * m + p.pi(2, i));
        h.toggle(m + i, base + 4 * m + p.pi(3, i));
        h.toggle(m + i, base + 4 * m + p.pi(4, i));
        h.toggle(2 * m + i, base + i);
        h.toggle(2 * m + i, base + m + p.pi(5, i));
        h.toggle(2 * m + i, base + m + p.pi(6, i));
        h.toggle(2 * m + i, base + 3 * m + p.pi(7, i));
        h.toggle(2 * m + i, base + 3 * m + p.pi(8, i));
        h.toggle(2 * m + i, base + 4 * m + i);
    }
    if rate != Ar4jaRate::R1_2 {
        let off = if rate == Ar4jaRate::R2_3 { 0 } else { 4 * m };
        for i in 0..m {
            h.toggle(m + i, off + p.pi(9, i));
            h.toggle(m + i, off + p.pi(10, i));
            h.toggle(m + i, off + p.pi(11, i));
            h.toggle(m + i, off + m + i);
            h.toggle(2 * m + i, off + i);
            h.toggle(2 * m + i, off + m + p.pi(12, i));
            h.toggle(2 * m + i, off + m + p.pi(13, i));
            h.toggle(2 * m + i, off + m + p.pi(14, i));
        }
    }
    if rate == Ar4jaRate::R4_5 {
        for i in 0..m {
            h.toggle(m + i, p.pi(21, i));
            h.toggle(m + i, p.pi(22, i));
            h.toggle(m + i, p.pi(23, i));
            h.toggle(m + i, m + i);
            h.toggle(m + i, 2 * m + p.pi(15, i));
            h.toggle(m + i, 2 * m + p.pi(16, i));
            h.toggle(m + i, 2 * m + p.pi(17, i));
            h.toggle(m + i, 3 * m + i);
            h.toggle(2 * m + i, i);
            h.toggle(2 * m + i, m + p.pi(24, i));
            h.toggle(2 * m + i, m + p.pi(25, i));
            h.toggle(2 * m + i, m + p.pi(26, i));
            h.toggle(2 * m + i, 2 * m + i);
            h.toggle(2 * m + i, 3 * m + p.pi(18, i));
            h.toggle(2 * m + i, 3 * m + p.pi(19, i));
            h.toggle(2 * m + i, 3 * m + p.pi(20, i));
        }
    }
    Ok(Matrix::from_bit_matrix(&h))
}

/// AR4JA code over GF(2) with the last M variable nodes punctured, e.g.
/// `[1280, 1024]_2` at rate 4/5.
pub fn make_ar4ja(k: usize, rate: Ar4jaRate) -> Result<CodeSpec> {
    let h = ar4ja_parity(k, rate)?;
    let m = 1usize << rate.log2_m();
    let total = h.cols();
    let punctured: Vec<usize> = (total - m..total).collect();
    let transmitted: Vec<usize> = (0..total - m).collect();
    let full = full_generator_from_parity(&h, &punctured)?;
    if full.rows() != k {
        return Err(Error::construction(format!(
            "AR4JA parity matrix yields dimension {}, expected {k}",
            full.rows()
        )));
    }
    CodeSpec::punctured(CodeKind::Ldpc, full, h, transmitted)
}

static THETA: [u8; 26] = [
    3, 0, 1, 2, 2, 3, 0, 1, 0, 1, 2, 0, 2, 3, 0, 1, 2, 0, 1, 2, 0, 1, 2, 1, 2, 3,
];

// phi_k(j) for M = 128, 256, 512
static PHI: [[[u16; 3]; 26]; 4] = [
    // j = 0
    [
        [1, 59, 16],
        [22, 18, 103],
        [0, 52, 105],
        [26, 23, 0],
        [0, 11, 50],
        [10, 7, 29],
        [5, 22, 115],
        [18, 25, 30],
        [3, 27, 92],
        [22, 30, 78],
        [3, 43, 70],
        [8, 14, 66],
        [25, 46, 39],
        [25, 62, 84],
        [2, 44, 79],
        [27, 12, 70],
        [7, 38, 29],
        [7, 47, 32],
        [15, 1, 45],
        [10, 52, 113],
        [4, 61, 86],
        [19, 10, 1],
        [7, 55, 42],
        [9, 7, 118],
        [26, 12, 33],
        [17, 2, 126],
    ],
    // j = 1
    [
        [0, 0, 0],
        [27, 32, 53],
        [30, 21, 74],
        [28, 36, 45],
        [7, 30, 47],
        [1, 29, 0],
        [8, 44, 59],
        [20, 29, 102],
        [26, 39, 25],
        [24, 14, 3],
        [4, 22, 88],
        [12, 15, 65],
        [23, 48, 62],
        [15, 55, 68],
        [15, 39, 91],
        [22, 11, 70],
        [31, 1, 115],
        [3, 50, 31],
        [29, 40, 121],
        [21, 62, 45],
        [2, 27, 56],
        [5, 38, 54],
        [11, 40, 108],
        [26, 15, 14],
        [9, 11, 30],
        [17, 18, 116],
    ],
    // j = 2
    [
        [0, 0, 0],
        [12, 46, 8],
        [30, 45, 119],
        [18, 27, 89],
        [10, 48, 31],
        [16, 37, 122],
        [13, 41, 1],
        [9, 13, 69],
        [7, 9, 92],
        [15, 49, 47],
        [16, 36, 11],
        [18, 10, 31],
        [4, 11, 19],
        [23, 18, 66],
        [5, 54, 49],
        [3, 40, 81],
        [29, 27, 96],
        [11, 35, 38],
        [4, 25, 83],
        [8, 46, 42],
        [2, 24, 58],
        [11, 33, 24],
        [11, 18, 25],
        [3, 37, 92],
        [15, 35, 38],
        [13, 21, 120],
    ],
    // j = 3
    [
        [0, 0, 0],
        [13, 44, 35],
        [19, 51, 97],
        [14, 12, 112],
        [15, 15, 64],
        [20, 12, 93],
        [17, 4, 99],
        [4, 7, 94],
        [4, 2, 103],
        [11, 30, 91],
        [17, 53, 3],
        [20, 23, 6],
        [8, 29, 39],
        [22, 37, 113],
        [19, 42, 92],
        [15, 48, 119],
        [5, 4, 74],
        [21, 10, 73],
        [17, 18, 116],
        [9, 56, 31],
        [20, 9, 127],
        [18, 11, 98],
        [31, 23, 23],
        [13, 8, 38],
        [2, 7, 18],
        [18, 24, 62],
    ],
];

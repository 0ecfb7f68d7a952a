//! Rank of a received block set without expanding extension-field symbols.
//!
//! For a code over GF(2^m) lifted symbol-wise, the `m` binary columns of the
//! block with generator column `g` span exactly `{psi(lambda g)}` for
//! `lambda` in GF(2^m), where `psi: GF(2^m)^k -> GF(2)^(mk)` sends `h` to the
//! bit-0 column of its lifted block. The binary span of several such blocks is
//! therefore `psi` of their GF(2^m) span, whose binary dimension is `m` times
//! the field rank. Binary blocks are pulled back through `psi`, reduced modulo
//! that span, and the residuals ranked over GF(2).
//!
//! For mixtures dominated by dense GF(256) codes this does the elimination
//! on bytes instead of bits, several times faster than feeding the lifted
//! columns to a binary [`RankTracker`].

use crate::gf::Field;
use crate::lifting::LiftedCode;
use crate::linalg::{BitVec, RankTracker};

/// What the lifted columns of one block span, seen through `psi`.
enum BlockForm {
    /// The coordinate line `{lambda e_j}`.
    Unit(usize),
    /// The line `{lambda g}` for the stored `g`.
    Line(Vec<u8>),
    /// Anything else: the pulled-back binary columns.
    Bits(Vec<Vec<u8>>),
}

pub(crate) struct SymbolRanker {
    m: usize,
    k: usize,
    q: usize,
    mul: Vec<u8>,
    inv: Vec<u8>,
    /// `forms[source][block]`.
    forms: Vec<Vec<BlockForm>>,
}

/// Reusable per-thread buffers.
#[derive(Default)]
pub(crate) struct Scratch {
    is_unit: Vec<bool>,
    coords: Vec<usize>,
    basis: Vec<u8>,
    lead_slot: Vec<u32>,
    leads: Vec<usize>,
    work: Vec<u8>,
}

const NONE: u32 = u32::MAX;

impl SymbolRanker {
    /// `None` when the sources do not fit the byte-level method: every
    /// source must be either a symbol-wise lift over one common field of
    /// degree `m <= 8` or a binary code regrouped into `m`-bit blocks.
    pub(crate) fn new(sources: &[LiftedCode]) -> Option<SymbolRanker> {
        let m = sources.first()?.block_size();
        if m > 8 || sources.iter().any(|s| s.block_size() != m || s.dim() % m != 0) {
            return None;
        }
        let k = sources[0].dim() / m;
        let mut field: Option<Field> = None;
        for s in sources {
            let f = s.base().field();
            if f.is_binary() {
                continue;
            }
            if f.degree() as usize != m || field.as_ref().is_some_and(|g| g != f) {
                return None;
            }
            field = Some(f.clone());
        }
        let field = match field {
            Some(f) => f,
            None => Field::with_degree(m as u32).ok()?,
        };
        let q = 1usize << m;
        let mut mul = vec![0u8; q * q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                mul[a * q + b] = field.mul_raw(a as u16, b as u16) as u8;
            }
            inv[a] = field.inv_raw(a as u16).unwrap_or(0) as u8;
        }
        // psi restricted to one coordinate: bit a of the pattern is bit 0 of h x^a
        let mut from_bits = vec![0u8; q];
        for h in 0..q {
            let pattern = (0..m).fold(0usize, |acc, a| {
                acc | ((field.mul_raw(h as u16, 1 << a) as usize & 1) << a)
            });
            from_bits[pattern] = h as u8;
        }
        let mut ranker = SymbolRanker {
            m,
            k,
            q,
            mul,
            inv,
            forms: Vec::new(),
        };
        let forms = sources
            .iter()
            .map(|s| {
                if s.base().field().is_binary() {
                    let g = s.lifted_generator().transpose();
                    (0..s.num_blocks())
                        .map(|j| {
                            let cols: Vec<Vec<u8>> = s
                                .block(j)
                                .map(|c| pull_back(&g.row(c), k, m, &from_bits))
                                .collect();
                            ranker.classify_bits(cols)
                        })
                        .collect()
                } else {
                    let g = s.base().generator();
                    (0..g.cols())
                        .map(|j| line_form(g.column(j).into_iter().map(|v| v as u8).collect()))
                        .collect()
                }
            })
            .collect();
        ranker.forms = forms;
        Some(ranker)
    }

    #[inline]
    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    /// Recognizes binary blocks whose span is a whole line `{lambda g}`,
    /// e.g. the systematic blocks of a binary code.
    fn classify_bits(&self, cols: Vec<Vec<u8>>) -> BlockForm {
        let Some(g) = cols.iter().find(|c| c.iter().any(|&x| x != 0)).cloned() else {
            return BlockForm::Bits(cols);
        };
        let p = g.iter().position(|&x| x != 0).expect("nonzero");
        let g_inv = self.inv[g[p] as usize];
        let mut lambdas = Vec::with_capacity(cols.len());
        for c in &cols {
            let lambda = self.mul(c[p], g_inv);
            if c.iter().zip(&g).any(|(&x, &y)| x != self.mul(lambda, y)) {
                return BlockForm::Bits(cols);
            }
            lambdas.push(lambda);
        }
        if binary_rank(&lambdas) < self.m {
            return BlockForm::Bits(cols);
        }
        line_form(g)
    }

    #[inline]
    fn axpy(&self, dst: &mut [u8], src: &[u8], factor: u8) {
        let row = &self.mul[factor as usize * self.q..(factor as usize + 1) * self.q];
        for (d, &s) in dst.iter_mut().zip(src) {
            *d ^= row[s as usize];
        }
    }

    /// Binary rank of the lifted columns of `blocks` (`(source, block)`
    /// pairs); at most `m * k`.
    pub(crate) fn rank(&self, blocks: &[(usize, usize)], sc: &mut Scratch) -> usize {
        let (k, m) = (self.k, self.m);

        // coordinate lines are projected out up front
        sc.is_unit.clear();
        sc.is_unit.resize(k, false);
        let mut units = 0;
        for &(src, j) in blocks {
            if let BlockForm::Unit(c) = self.forms[src][j] {
                units += !std::mem::replace(&mut sc.is_unit[c], true) as usize;
            }
        }
        if units == k {
            return m * k;
        }
        sc.coords.clear();
        sc.coords.extend((0..k).filter(|&c| !sc.is_unit[c]));
        let kk = sc.coords.len();

        sc.basis.clear();
        sc.leads.clear();
        sc.lead_slot.clear();
        sc.lead_slot.resize(kk, NONE);
        sc.work.resize(kk, 0);
        let mut has_bits = false;
        for &(src, j) in blocks {
            let g = match &self.forms[src][j] {
                BlockForm::Line(g) => g,
                BlockForm::Bits(_) => {
                    has_bits = true;
                    continue;
                }
                BlockForm::Unit(_) => continue,
            };
            if sc.leads.len() == kk {
                break;
            }
            let mut v = std::mem::take(&mut sc.work);
            for (x, &c) in v.iter_mut().zip(&sc.coords) {
                *x = g[c];
            }
            for p in 0..kk {
                let lead = v[p];
                if lead == 0 {
                    continue;
                }
                let slot = sc.lead_slot[p];
                if slot == NONE {
                    let inv = self.inv[lead as usize];
                    let row = &self.mul[inv as usize * self.q..(inv as usize + 1) * self.q];
                    for x in &mut v[p..] {
                        *x = row[*x as usize];
                    }
                    sc.lead_slot[p] = sc.leads.len() as u32;
                    sc.leads.push(p);
                    sc.basis.extend_from_slice(&v);
                    break;
                }
                let base = slot as usize * kk;
                self.axpy(&mut v[p..], &sc.basis[base + p..base + kk], lead);
            }
            sc.work = v;
        }
        let r = sc.leads.len();
        if r == kk || !has_bits {
            return m * (units + r);
        }

        // clear every entry sitting at another vector's lead, largest lead first
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_unstable_by_key(|&t| std::cmp::Reverse(sc.leads[t]));
        for &t in &order {
            for p in sc.leads[t] + 1..kk {
                let s = sc.lead_slot[p] as usize;
                if s == NONE as usize {
                    continue;
                }
                let factor = sc.basis[t * kk + p];
                if factor == 0 {
                    continue;
                }
                let (head, tail) = sc.basis.split_at_mut(t.max(s) * kk);
                let (dst, src) = if t < s {
                    (&mut head[t * kk..t * kk + kk], &tail[..kk])
                } else {
                    (&mut tail[..kk], &head[s * kk..s * kk + kk])
                };
                self.axpy(&mut dst[p..], &src[p..], factor);
            }
        }

        let free: Vec<usize> = (0..kk).filter(|&p| sc.lead_slot[p] == NONE).collect();
        let bits_len = m * free.len();
        let mut tracker = RankTracker::new(&Field::binary(), bits_len);
        let mut h = std::mem::take(&mut sc.work);
        let mut words = vec![0u64; bits_len.div_ceil(64)];
        'blocks: for &(src, j) in blocks {
            let BlockForm::Bits(cols) = &self.forms[src][j] else {
                continue;
            };
            for col in cols {
                for (x, &c) in h.iter_mut().zip(&sc.coords) {
                    *x = col[c];
                }
                for (t, &p) in sc.leads.iter().enumerate() {
                    let factor = h[p];
                    if factor != 0 {
                        self.axpy(&mut h[p..], &sc.basis[t * kk + p..t * kk + kk], factor);
                    }
                }
                words.fill(0);
                for (idx, &i) in free.iter().enumerate() {
                    let byte = h[i] as u64;
                    if byte == 0 {
                        continue;
                    }
                    let pos = idx * m;
                    words[pos / 64] |= byte << (pos % 64);
                    if pos % 64 + m > 64 {
                        words[pos / 64 + 1] |= byte >> (64 - pos % 64);
                    }
                }
                let packed = BitVec::from_words(bits_len, words.clone());
                tracker.offer_bits(&packed).expect("residual matches tracker");
                if tracker.is_full() {
                    break 'blocks;
                }
            }
        }
        sc.work = h;
        m * (units + r) + tracker.rank()
    }

    pub(crate) fn dim(&self) -> usize {
        self.m * self.k
    }
}

fn line_form(g: Vec<u8>) -> BlockForm {
    let mut nonzero = g.iter().enumerate().filter(|(_, &x)| x != 0);
    match (nonzero.next(), nonzero.next()) {
        (Some((j, _)), None) => BlockForm::Unit(j),
        _ => BlockForm::Line(g),
    }
}

/// Rank over GF(2) of elements read as bit vectors.
fn binary_rank(values: &[u8]) -> usize {
    let mut basis = [0u8; 8];
    let mut rank = 0;
    for &v in values {
        let mut x = v;
        for b in (0..8).rev() {
            if (x >> b) & 1 == 0 {
                continue;
            }
            if basis[b] == 0 {
                basis[b] = x;
                rank += 1;
                break;
            }
            x ^= basis[b];
        }
    }
    rank
}

/// Coordinate-wise inverse of `psi` for one binary column.
fn pull_back(col: &BitVec, k: usize, m: usize, from_bits: &[u8]) -> Vec<u8> {
    (0..k)
        .map(|i| {
            let pattern = (0..m).fold(0usize, |acc, a| acc | ((col.get(i * m + a) as usize) << a));
            from_bits[pattern]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_rln, make_rs};
    use crate::lifting::lift_generator;
    use crate::linalg::Matrix;
    use rand::seq::index::sample;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tracker_rank(sources: &[LiftedCode], blocks: &[(usize, usize)]) -> usize {
        let mut t = RankTracker::new(&Field::binary(), sources[0].dim());
        for &(s, j) in blocks {
            for col in sources[s].block_columns(j) {
                t.offer_bits(col).unwrap();
            }
        }
        t.rank()
    }

    #[test]
    fn matches_binary_tracker() {
        let f = Field::with_degree(4).unwrap();
        let sources = vec![
            lift_generator(&make_rln(10, 5, &f, 3).unwrap()),
            lift_generator(&make_rs(10, 5, &f).unwrap()),
            LiftedCode::binary_blocks(&make_rln(40, 20, &Field::binary(), 4).unwrap(), 4)
                .unwrap(),
            // sparse binary code so the binary part is often deficient
            LiftedCode::binary_blocks(&sparse_binary_code(), 4).unwrap(),
            // binary image of a GF(16) code: every block is a whole line
            LiftedCode::binary_blocks(&binary_image(&make_rs(10, 5, &f).unwrap()), 4).unwrap(),
        ];
        let ranker = SymbolRanker::new(&sources).unwrap();
        let mut scratch = Scratch::default();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..400 {
            let mut blocks = Vec::new();
            for (s, src) in sources.iter().enumerate() {
                let c = rng.gen_range(0..=4);
                for j in sample(&mut rng, src.num_blocks(), c) {
                    blocks.push((s, j));
                }
            }
            assert_eq!(ranker.rank(&blocks, &mut scratch), tracker_rank(&sources, &blocks));
        }
    }

    fn binary_image(code: &crate::codes::CodeSpec) -> crate::codes::CodeSpec {
        let g = Matrix::from_bit_matrix(lift_generator(code).lifted_generator());
        crate::codes::CodeSpec::new(crate::codes::CodeKind::Rln, g, None).unwrap()
    }

    #[test]
    fn classifies_blocks() {
        let f = Field::with_degree(4).unwrap();
        let sources = vec![
            LiftedCode::binary_blocks(&binary_image(&make_rs(10, 5, &f).unwrap()), 4).unwrap(),
            LiftedCode::binary_blocks(&sparse_binary_code(), 4).unwrap(),
        ];
        let ranker = SymbolRanker::new(&sources).unwrap();
        assert!(ranker.forms[0].iter().all(|b| !matches!(b, BlockForm::Bits(_))));
        assert!(ranker.forms[1][..5].iter().all(|b| matches!(b, BlockForm::Unit(_))));
        assert!(ranker.forms[1][5..].iter().all(|b| matches!(b, BlockForm::Bits(_))));
    }

    fn sparse_binary_code() -> crate::codes::CodeSpec {
        let b = Field::binary();
        let mut g = Matrix::zeros(&b, 20, 40);
        for i in 0..20 {
            g.set_raw(i, i, 1);
            g.set_raw(i, 20 + (i * 7) % 20, 1);
            g.set_raw(i, 20 + (i * 3 + 1) % 20, 1);
        }
        crate::codes::CodeSpec::new(crate::codes::CodeKind::Ldpc, g, None).unwrap()
    }

    #[test]
    fn rejects_unsupported_shapes() {
        let f16 = Field::with_degree(4).unwrap();
        let f8 = Field::with_degree(3).unwrap();
        let mixed_fields = vec![
            lift_generator(&make_rs(6, 3, &f8).unwrap()),
            lift_generator(&make_rln(8, 2, &f16, 1).unwrap()),
        ];
        assert!(SymbolRanker::new(&mixed_fields).is_none());
        let wide = vec![lift_generator(&make_rs(6, 3, &Field::with_degree(9).unwrap()).unwrap())];
        assert!(SymbolRanker::new(&wide).is_none());
    }
}

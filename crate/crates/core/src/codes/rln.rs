use rand::Rng;

use super::{parity_from_generator, CodeKind, CodeSpec};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::Matrix;
use crate::seed;

/// Random linear code with i.i.d. uniform generator entries.
///
/// The matrix is a pure function of `(n, k, field, seed)`. A rank-deficient
/// draw is discarded and redrawn from the next sub-seed.
pub fn make_rln(n: usize, k: usize, field: &Field, seed: u64) -> Result<CodeSpec> {
    if k == 0 || k > n {
        return Err(Error::construction(format!("invalid RLN dimension k = {k}, n = {n}")));
    }
    let q = field.order();
    for attempt in 0u64.. {
        let mut rng = seed::rng(seed, &[n as u64, k as u64, field.degree() as u64, attempt]);
        let mut g = Matrix::zeros(field, k, n);
        for r in 0..k {
            for c in 0..n {
                g.set_raw(r, c, rng.gen_range(0..q) as u16);
            }
        }
        if g.rank() == k {
            let h = (k < n).then(|| parity_from_generator(&g));
            return CodeSpec::new(CodeKind::Rln, g, h);
        }
    }
    unreachable!()
}

use super::{parity_from_generator, CodeKind, CodeSpec};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::Matrix;

/// Reed-Solomon code as polynomial evaluation: `G[i][j] = x_j^i` with
/// evaluation points `0, a^0, a^1, ...` for a primitive element `a`.
///
/// Any `k` columns form a Vandermonde matrix on distinct points, so the
/// code is MDS.
pub fn make_rs(n: usize, k: usize, field: &Field) -> Result<CodeSpec> {
    if n > field.order() {
        return Err(Error::construction(format!(
            "RS length {n} exceeds field size {}",
            field.order()
        )));
    }
    if k == 0 || k > n {
        return Err(Error::construction(format!("invalid RS dimension k = {k}, n = {n}")));
    }
    let points: Vec<u16> = std::iter::once(0)
        .chain((0..n - 1).map(|i| field.exp_raw(i)))
        .collect();
    let mut g = Matrix::zeros(field, k, n);
    for (j, &x) in points.iter().enumerate() {
        for i in 0..k {
            g.set_raw(i, j, field.pow_raw(x, i as u64));
        }
    }
    let h = (k < n).then(|| parity_from_generator(&g));
    CodeSpec::new(CodeKind::Rs, g, h)
}

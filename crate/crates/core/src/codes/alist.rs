//! The alist sparse-matrix interchange format for binary parity-check
//! matrices:
//!
//! ```text
//! cols rows
//! max_col_weight max_row_weight
//! <cols column weights>
//! <rows row weights>
//! <one line per column: 1-based row indices, optionally 0-padded>
//! <one line per row: 1-based column indices, optionally 0-padded>
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::Matrix;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next non-blank line as (1-based line number, parsed integers).
    fn next_numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        for (idx, raw) in self.inner.by_ref() {
            let line = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let nums = raw
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line,
                        message: format!("expected a non-negative integer, found {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok((line, nums));
        }
        Err(Error::Parse {
            line: 0,
            message: format!("unexpected end of input while reading {what}"),
        })
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn expect_len(line: usize, nums: &[usize], len: usize, what: &str) -> Result<()> {
    if nums.len() != len {
        return Err(parse_err(
            line,
            format!("{what}: expected {len} values, found {}", nums.len()),
        ));
    }
    Ok(())
}

/// Parses an alist description into a binary parity-check matrix.
pub fn ldpc_from_alist(text: &str) -> Result<Matrix> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (line, dims) = lines.next_numbers("dimensions")?;
    expect_len(line, &dims, 2, "dimensions")?;
    let (cols, rows) = (dims[0], dims[1]);
    let (line, maxes) = lines.next_numbers("maximum weights")?;
    expect_len(line, &maxes, 2, "maximum weights")?;
    let (max_col, max_row) = (maxes[0], maxes[1]);

    let (line, col_weights) = lines.next_numbers("column weights")?;
    expect_len(line, &col_weights, cols, "column weights")?;
    if let Some(&w) = col_weights.iter().find(|&&w| w > max_col) {
        return Err(parse_err(line, format!("column weight {w} exceeds maximum {max_col}")));
    }
    let (line, row_weights) = lines.next_numbers("row weights")?;
    expect_len(line, &row_weights, rows, "row weights")?;
    if let Some(&w) = row_weights.iter().find(|&&w| w > max_row) {
        return Err(parse_err(line, format!("row weight {w} exceeds maximum {max_row}")));
    }

    let mut h = Matrix::zeros(&Field::binary(), rows, cols);
    for (c, &weight) in col_weights.iter().enumerate() {
        let (line, entries) = lines.next_numbers("column support")?;
        let support = nonzero_support(line, &entries, weight, rows, "row")?;
        for r in support {
            if h.get_raw(r, c) != 0 {
                return Err(parse_err(line, format!("row {} listed twice", r + 1)));
            }
            h.set_raw(r, c, 1);
        }
    }
    for (r, &weight) in row_weights.iter().enumerate() {
        let (line, entries) = lines.next_numbers("row support")?;
        let mut support = nonzero_support(line, &entries, weight, cols, "column")?;
        support.sort_unstable();
        let expected: Vec<usize> = (0..cols).filter(|&c| h.get_raw(r, c) != 0).collect();
        if support != expected {
            return Err(parse_err(
                line,
                format!("row {} support disagrees with the column lists", r + 1),
            ));
        }
    }
    Ok(h)
}

fn nonzero_support(
    line: usize,
    entries: &[usize],
    weight: usize,
    bound: usize,
    what: &str,
) -> Result<Vec<usize>> {
    let support: Vec<usize> = entries.iter().copied().filter(|&v| v != 0).collect();
    if support.len() != weight {
        return Err(parse_err(
            line,
            format!("expected {weight} {what} indices, found {}", support.len()),
        ));
    }
    if let Some(&bad) = support.iter().find(|&&v| v > bound) {
        return Err(parse_err(line, format!("{what} index {bad} exceeds {bound}")));
    }
    Ok(support.into_iter().map(|v| v - 1).collect())
}

/// Writes a binary matrix in alist form, zero-padding short lists.
///
/// Empty supports are written as a single `0`.
pub fn to_alist(h: &Matrix) -> Result<String> {
    if !h.field().is_binary() {
        return Err(Error::usage("alist export needs a GF(2) matrix"));
    }
    let (rows, cols) = (h.rows(), h.cols());
    let col_support: Vec<Vec<usize>> = (0..cols)
        .map(|c| (0..rows).filter(|&r| h.get_raw(r, c) != 0).collect())
        .collect();
    let row_support: Vec<Vec<usize>> = (0..rows)
        .map(|r| (0..cols).filter(|&c| h.get_raw(r, c) != 0).collect())
        .collect();
    let max_col = col_support.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = row_support.iter().map(Vec::len).max().unwrap_or(0);

    let mut out = String::new();
    let join = |v: &mut dyn Iterator<Item = usize>| {
        v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    };
    writeln!(out, "{cols} {rows}").unwrap();
    writeln!(out, "{max_col} {max_row}").unwrap();
    writeln!(out, "{}", join(&mut col_support.iter().map(Vec::len))).unwrap();
    writeln!(out, "{}", join(&mut row_support.iter().map(Vec::len))).unwrap();
    for (support, max) in col_support
        .iter()
        .map(|s| (s, max_col))
        .chain(row_support.iter().map(|s| (s, max_row)))
    {
        let mut padded = support.iter().map(|&i| i + 1).collect::<Vec<_>>();
        // an all-zero list still needs a line the reader can see
        padded.resize(max.max(1), 0);
        writeln!(out, "{}", join(&mut padded.into_iter())).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: &str = "4 2\n2 3\n1 2 1 1\n3 2\n1 0\n1 2\n2 0\n1 0\n1 2 4\n2 3\n";

    const HAMMING: &str = "\
7 3
3 4
1 1 2 1 2 2 3
4 4 4
1 0
2 0
1 2
3 0
1 3
2 3
1 2 3
1 3 5 7
2 3 6 7
4 5 6 7
";

    #[test]
    fn toy_matrix_transcribed() {
        let h = ldpc_from_alist(TOY).unwrap();
        let expected = [[1, 1, 0, 1], [0, 1, 1, 0]];
        for r in 0..2 {
            for c in 0..4 {
                assert_eq!(h.get_raw(r, c), expected[r][c]);
            }
        }
    }

    #[test]
    fn hamming_has_rank_three() {
        let h = ldpc_from_alist(HAMMING).unwrap();
        assert_eq!((h.rows(), h.cols()), (3, 7));
        assert_eq!(h.rank(), 3);
    }

    #[test]
    fn roundtrip() {
        for text in [TOY, HAMMING] {
            let h = ldpc_from_alist(text).unwrap();
            let again = ldpc_from_alist(&to_alist(&h).unwrap()).unwrap();
            assert_eq!(h, again);
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad_index = TOY.replace("1 2 4\n", "1 2 9\n");
        assert!(matches!(ldpc_from_alist(&bad_index), Err(Error::Parse { line: 9, .. })));
        let bad_count = TOY.replace("1 2 1 1\n", "1 2 1\n");
        assert!(matches!(ldpc_from_alist(&bad_count), Err(Error::Parse { line: 3, .. })));
        let garbage = TOY.replace("2 3\n1 2", "2 x\n1 2");
        assert!(matches!(ldpc_from_alist(&garbage), Err(Error::Parse { line: 2, .. })));
        let truncated: String = TOY.lines().take(6).collect::<Vec<_>>().join("\n");
        assert!(matches!(ldpc_from_alist(&truncated), Err(Error::Parse { .. })));
        let inconsistent = TOY.replace("2 3\n", "2 4\n");
        assert!(ldpc_from_alist(&inconsistent).is_err());
    }
}

//! The structured matrices used by the representation.
//!
//! All parameters are 1-based, matching interval numbering. Every builder
//! checks its ranges up front and fails with [`MatrixError::OutOfRange`]
//! instead of clamping.

use super::{BitMatrix, MatrixError};

fn check(what: &'static str, value: usize, min: usize, max: usize) -> Result<(), MatrixError> {
    if (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(MatrixError::OutOfRange {
            what,
            value,
            min,
            max,
        })
    }
}

/// `B_{n,k}`: the `(n+2)×n` connectivity between the upper intervals
/// (columns) and lower intervals (rows) of a cap inserted at position `k`.
/// Entry `(i, j)` is one iff `i = j < k` or `i = j + 2 > k`.
pub fn cap_connectivity(n: usize, k: usize) -> Result<BitMatrix, MatrixError> {
    check("n", n, 1, usize::MAX - 2)?;
    check("k", k, 2, n + 1)?;
    Ok(BitMatrix::from_fn(n + 2, n, |i, j| {
        let (i, j) = (i + 1, j + 1);
        (i == j && i < k) || (i == j + 2 && i > k)
    }))
}

/// `D_{n,k}`: the `n×n` matrix with a single one at `(k, k)`.
pub fn unit_diagonal(n: usize, k: usize) -> Result<BitMatrix, MatrixError> {
    check("k", k, 1, n)?;
    Ok(single(n, n, k, k))
}

/// `e_{n,k}`: the `n×1` column with a single one in row `k`.
pub fn unit_column(n: usize, k: usize) -> Result<BitMatrix, MatrixError> {
    check("k", k, 1, n)?;
    Ok(single(n, 1, k, 1))
}

/// `S_n`: the anti-diagonal, `s_{i,j} = 1` iff `i + j = n + 1`.
pub fn reversal(n: usize) -> BitMatrix {
    BitMatrix::from_fn(n, n, |i, j| i + j + 1 == n)
}

/// `E_n`: the `(n+2)×n` embedding shifting every interval down by one,
/// `e_{i,j} = 1` iff `i - 1 = j`.
pub fn shift_embedding(n: usize) -> BitMatrix {
    BitMatrix::from_fn(n + 2, n, |i, j| i == j + 1)
}

/// `F_m`: the `m×m` matrix whose ones are exactly the four corners.
pub fn corner_block(m: usize) -> Result<BitMatrix, MatrixError> {
    check("m", m, 1, usize::MAX)?;
    Ok(BitMatrix::from_fn(m, m, |i, j| {
        (i == 0 || i + 1 == m) && (j == 0 || j + 1 == m)
    }))
}

/// `Q_{α,β} = e_α e_βᵗ`, a `rows×cols` matrix with one entry set.
pub fn single_entry(
    rows: usize,
    cols: usize,
    row: usize,
    col: usize,
) -> Result<BitMatrix, MatrixError> {
    check("row", row, 1, rows)?;
    check("col", col, 1, cols)?;
    Ok(single(rows, cols, row, col))
}

/// `C_{m×n}`: ones exactly where `i - j` is even.
pub fn chessboard(rows: usize, cols: usize) -> BitMatrix {
    BitMatrix::from_fn(rows, cols, |i, j| (i + j) % 2 == 0)
}

/// `X_k = B_{n,k}ᵗ (I − D_{n+2,k+1})`: `B_{n,k}ᵗ` with the `(k-1, k+1)`
/// entry cleared.
pub fn cut_cap_transpose(n: usize, k: usize) -> Result<BitMatrix, MatrixError> {
    let bt = cap_connectivity(n, k)?.transpose();
    let keep = BitMatrix::identity(n + 2).minus(&unit_diagonal(n + 2, k + 1)?)?;
    bt.mul(&keep)
}

/// `A_k = B_{n,k} D_{n,k-1} B_{n,k}ᵗ`: links lower intervals `k-1` and
/// `k+1`, the two halves of the interval split by the cap.
pub fn split_pair(n: usize, k: usize) -> Result<BitMatrix, MatrixError> {
    let b = cap_connectivity(n, k)?;
    let d = unit_diagonal(n, k - 1)?;
    Ok(&(&b * &d) * &b.transpose())
}

fn single(rows: usize, cols: usize, row: usize, col: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    m.set(row - 1, col - 1, true);
    m
}

/// A named structured matrix together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structured {
    CapConnectivity { n: usize, k: usize },
    UnitDiagonal { n: usize, k: usize },
    UnitColumn { n: usize, k: usize },
    Reversal { n: usize },
    ShiftEmbedding { n: usize },
    CornerBlock { m: usize },
    SingleEntry { rows: usize, cols: usize, row: usize, col: usize },
    Chessboard { rows: usize, cols: usize },
    CutCapTranspose { n: usize, k: usize },
    SplitPair { n: usize, k: usize },
    Identity { n: usize },
    Zero { rows: usize, cols: usize },
}

impl Structured {
    pub fn build(self) -> Result<BitMatrix, MatrixError> {
        use Structured::*;
        match self {
            CapConnectivity { n, k } => cap_connectivity(n, k),
            UnitDiagonal { n, k } => unit_diagonal(n, k),
            UnitColumn { n, k } => unit_column(n, k),
            Reversal { n } => Ok(reversal(n)),
            ShiftEmbedding { n } => Ok(shift_embedding(n)),
            CornerBlock { m } => corner_block(m),
            SingleEntry {
                rows,
                cols,
                row,
                col,
            } => single_entry(rows, cols, row, col),
            Chessboard { rows, cols } => Ok(chessboard(rows, cols)),
            CutCapTranspose { n, k } => cut_cap_transpose(n, k),
            SplitPair { n, k } => split_pair(n, k),
            Identity { n } => Ok(BitMatrix::identity(n)),
            Zero { rows, cols } => Ok(BitMatrix::zeros(rows, cols)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> BitMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn cap_connectivity_small() {
        assert_eq!(cap_connectivity(1, 2).unwrap(), m("1/0/1"));
        assert_eq!(
            cap_connectivity(3, 2).unwrap(),
            m("100/000/100/010/001")
        );
    }

    #[test]
    fn cap_connectivity_range() {
        assert!(cap_connectivity(3, 1).is_err());
        assert!(cap_connectivity(3, 5).is_err());
        assert!(cap_connectivity(3, 4).is_ok());
        assert!(cap_connectivity(0, 2).is_err());
    }

    #[test]
    fn reversal_squares_to_identity() {
        let s = reversal(3);
        assert_eq!(s, m("001/010/100"));
        assert_eq!(&s * &s, BitMatrix::identity(3));
    }

    #[test]
    fn remaining_builders() {
        assert_eq!(unit_column(3, 2).unwrap(), m("0/1/0"));
        assert_eq!(shift_embedding(1), m("0/1/0"));
        assert_eq!(corner_block(3).unwrap(), m("101/000/101"));
        assert_eq!(chessboard(2, 3), m("101/010"));
        assert_eq!(single_entry(2, 2, 1, 2).unwrap(), m("01/00"));
        assert_eq!(cut_cap_transpose(1, 2).unwrap(), m("100"));
        assert_eq!(split_pair(1, 2).unwrap(), m("101/000/101"));
        assert!(unit_diagonal(3, 0).is_err());
        assert!(unit_diagonal(3, 4).is_err());
        assert!(single_entry(2, 2, 3, 1).is_err());
    }

    #[test]
    fn enum_dispatch() {
        assert_eq!(
            Structured::CapConnectivity { n: 1, k: 2 }.build().unwrap(),
            m("1/0/1")
        );
        assert_eq!(
            Structured::Zero { rows: 1, cols: 2 }.build().unwrap(),
            m("00")
        );
        assert!(Structured::CapConnectivity { n: 1, k: 3 }.build().is_err());
    }
}

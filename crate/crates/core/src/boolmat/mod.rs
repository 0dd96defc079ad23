//! Dense matrices over the two-element Boolean semiring.
//!
//! Entries are packed row-major into `u64` words. Sum is entrywise OR
//! (`1 + 1 = 1`), product is the usual sum of products under that sum, and
//! the order is entrywise. Everything the tangle representation needs is
//! expressed through these few operations plus the structured builders in
//! [`structured`].
//!
//! Indices passed to [`BitMatrix::get`] and [`BitMatrix::set`] are 0-based.
//! The structured builders take the 1-based interval parameters used
//! throughout the rest of the crate.

pub mod structured;

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("{op}: dimension mismatch between {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op}: matrix must be square, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("{what} = {value} is outside {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("transitive closure did not stabilise within {bound} squarings")]
    ClosureBound { bound: usize },
    #[error("cannot parse matrix: {0}")]
    Parse(String),
}

/// A rectangular Boolean matrix with immutable dimensions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD).max(1);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix whose `(i, j)` entry (0-based) is `f(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        let w = &mut self.data[i * self.stride + j / WORD];
        if bit {
            *w |= 1 << (j % WORD);
        } else {
            *w &= !(1 << (j % WORD));
        }
    }

    /// The single entry of a 1x1 matrix, e.g. the result of `e_iᵗ R e_j`.
    pub fn scalar(&self) -> Option<bool> {
        (self.rows == 1 && self.cols == 1).then(|| self.get(0, 0))
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<(), MatrixError> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(MatrixError::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    fn zip_words(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        BitMatrix {
            rows: self.rows,
            cols: self.cols,
            stride: self.stride,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Entrywise OR.
    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.same_shape(other, "add")?;
        Ok(self.zip_words(other, |a, b| a | b))
    }

    /// Boolean matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let src = other.row_words(k);
                    let dst = &mut out.data[i * out.stride..(i + 1) * out.stride];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d |= s;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Ones exactly where `self` has a one and `other` a zero.
    pub fn minus(&self, other: &Self) -> Result<Self, MatrixError> {
        self.same_shape(other, "minus")?;
        Ok(self.zip_words(other, |a, b| a & !b))
    }

    /// Entrywise `self ≤ other`.
    pub fn leq(&self, other: &Self) -> Result<bool, MatrixError> {
        self.same_shape(other, "leq")?;
        Ok(self.data.iter().zip(&other.data).all(|(&a, &b)| a & !b == 0))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Number of ones.
    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The least transitive matrix above `self`, `A + A² + A³ + …`.
    ///
    /// Each pass replaces `C` by `C + C²`, doubling the path lengths
    /// accounted for, so a fixpoint is reached after at most
    /// `⌈log₂ dim⌉ + 1` passes.
    pub fn transitive_closure(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                op: "transitive_closure",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let bound = ceil_log2(self.rows) + 1;
        let mut c = self.clone();
        for _ in 0..bound {
            let next = &c + &(&c * &c);
            if next == c {
                return Ok(c);
            }
            c = next;
        }
        Err(MatrixError::ClosureBound { bound })
    }

    pub fn is_transitive(&self) -> bool {
        self.is_square() && (self * self).leq(self).unwrap_or(false)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// `self` raised to the power `p` (`p = 0` gives the identity).
    pub fn pow(&self, p: u32) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                op: "pow",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..p {
            acc = &acc * self;
        }
        Ok(acc)
    }
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Panics on a dimension mismatch; use [`BitMatrix::add`] for the checked form.
impl Add for &BitMatrix {
    type Output = BitMatrix;

    fn add(self, rhs: &BitMatrix) -> BitMatrix {
        BitMatrix::add(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

/// Panics on a dimension mismatch; use [`BitMatrix::mul`] for the checked form.
impl Mul for &BitMatrix {
    type Output = BitMatrix;

    fn mul(self, rhs: &BitMatrix) -> BitMatrix {
        BitMatrix::mul(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

/// One row per line, each row a string of `0`/`1`.
impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("/")?;
            }
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        f.write_str("]")
    }
}

/// Parses rows of `0`/`1` separated by `/`, `;`, or whitespace, e.g.
/// `"101/010/101"`.
impl FromStr for BitMatrix {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows: Vec<&str> = s
            .split(|c: char| c == '/' || c == ';' || c.is_whitespace())
            .filter(|r| !r.is_empty())
            .collect();
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(MatrixError::Parse(format!(
                    "row {} has {} entries, expected {cols}",
                    i + 1,
                    r.len()
                )));
            }
            for (j, ch) in r.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    other => {
                        return Err(MatrixError::Parse(format!(
                            "unexpected {other:?} in row {}",
                            i + 1
                        )))
                    }
                }
            }
        }
        Ok(m)
    }
}

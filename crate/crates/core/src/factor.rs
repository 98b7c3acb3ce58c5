//! Bidiagonal factors and factor chains: the input form `A = B_1 B_2 ... B_K`.

use crate::dense::Dense;
use crate::representation::ReprError;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FactorError {
    #[error("factor {index}: {message}")]
    InvalidFactor { index: usize, message: String },
    #[error("chain dimension mismatch between factor {index} ({ncols} cols) and factor {next} ({nrows} rows)")]
    ChainMismatch {
        index: usize,
        ncols: usize,
        next: usize,
        nrows: usize,
    },
    #[error("empty factor chain")]
    EmptyChain,
    #[error(transparent)]
    Repr(#[from] ReprError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Lower,
    Upper,
}

/// One nontrivial element pair of a factor: 1-based band index, diagonal
/// value `bar` at `(i,i)` and off value at `(i+1,i)` (lower) or `(i,i+1)`
/// (upper).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactorPair {
    pub index: usize,
    pub bar: f64,
    pub off: f64,
}

/// One rectangular lower or upper bidiagonal factor, stored sparsely by its
/// nontrivial element pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct BidiagonalFactor {
    pub orientation: Orientation,
    pub nrows: usize,
    pub ncols: usize,
    pub pairs: Vec<FactorPair>,
}

impl BidiagonalFactor {
    pub fn new(
        orientation: Orientation,
        nrows: usize,
        ncols: usize,
        pairs: Vec<FactorPair>,
    ) -> Result<Self, FactorError> {
        let f = BidiagonalFactor {
            orientation,
            nrows,
            ncols,
            pairs,
        };
        f.validate(0)?;
        Ok(f)
    }

    /// Identity factor (orientation is irrelevant for expansion).
    pub fn identity(nrows: usize, ncols: usize) -> Self {
        BidiagonalFactor {
            orientation: Orientation::Lower,
            nrows,
            ncols,
            pairs: Vec::new(),
        }
    }

    /// Elementary factor `E_i(x, y)`: identity with `(i,i) = x` and either
    /// `(i+1,i) = y` (lower) or `(i,i+1) = y` (upper). 1-based `i`.
    pub fn elementary(
        orientation: Orientation,
        n: usize,
        i: usize,
        bar: f64,
        off: f64,
    ) -> Result<Self, FactorError> {
        BidiagonalFactor::new(
            orientation,
            n,
            n,
            vec![FactorPair { index: i, bar, off }],
        )
    }

    pub(crate) fn validate(&self, chain_index: usize) -> Result<(), FactorError> {
        let err = |message: String| FactorError::InvalidFactor {
            index: chain_index,
            message,
        };
        if self.nrows == 0 || self.ncols == 0 {
            return Err(err("dimensions must be positive".into()));
        }
        let (n, m) = (self.nrows, self.ncols);
        let mut prev = 0usize;
        for p in &self.pairs {
            if p.index == 0 {
                return Err(err("pair indices are 1-based".into()));
            }
            if p.index <= prev {
                return Err(err(format!("pair indices must be strictly increasing, saw {}", p.index)));
            }
            prev = p.index;
            if !(p.bar.is_finite() && p.bar >= 0.0 && p.off.is_finite() && p.off >= 0.0) {
                return Err(err(format!("pair {} has negative or non-finite values", p.index)));
            }
            let i = p.index;
            let (bar_ok, off_ok) = match self.orientation {
                Orientation::Lower => (i <= n.min(m), i + 1 <= n && i <= m),
                Orientation::Upper => (i <= n.min(m), i <= n && i + 1 <= m),
            };
            if !bar_ok {
                return Err(err(format!("pair index {} outside the bidiagonal band", i)));
            }
            if !off_ok && p.off != 0.0 {
                return Err(err(format!("off value at index {} falls outside the matrix", i)));
            }
        }
        Ok(())
    }

    /// The square factor `B'` of the rewriting `B = B' I_{n,m}` (lower) or
    /// `B = I_{n,m} B'` (upper): same pairs, square dimension.
    pub(crate) fn square_part(&self) -> BidiagonalFactor {
        let dim = match self.orientation {
            Orientation::Lower => self.nrows,
            Orientation::Upper => self.ncols,
        };
        BidiagonalFactor {
            orientation: self.orientation,
            nrows: dim,
            ncols: dim,
            pairs: self.pairs.clone(),
        }
    }

    /// Transposed factor (lower <-> upper, dimensions swapped, same pairs).
    pub fn transpose(&self) -> BidiagonalFactor {
        BidiagonalFactor {
            orientation: match self.orientation {
                Orientation::Lower => Orientation::Upper,
                Orientation::Upper => Orientation::Lower,
            },
            nrows: self.ncols,
            ncols: self.nrows,
            pairs: self.pairs.clone(),
        }
    }

    pub fn dense(&self) -> Dense<f64> {
        let mut d = Dense::<f64>::rect_identity(self.nrows, self.ncols);
        for p in &self.pairs {
            let i = p.index - 1;
            if i < self.nrows.min(self.ncols) {
                d[(i, i)] = p.bar;
            }
            match self.orientation {
                Orientation::Lower => {
                    if i + 1 < self.nrows && i < self.ncols {
                        d[(i + 1, i)] = p.off;
                    }
                }
                Orientation::Upper => {
                    if i < self.nrows && i + 1 < self.ncols {
                        d[(i, i + 1)] = p.off;
                    }
                }
            }
        }
        d
    }

    pub fn dense_rational(&self) -> Dense<num::BigRational> {
        let d = self.dense();
        Dense::from_fn(self.nrows, self.ncols, |i, j| {
            crate::scalar::rational_from_f64(d[(i, j)])
        })
    }
}

/// An ordered chain of bidiagonal factors with compatible dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct BidiagonalProduct {
    factors: Vec<BidiagonalFactor>,
}

impl BidiagonalProduct {
    pub fn new(factors: Vec<BidiagonalFactor>) -> Result<Self, FactorError> {
        if factors.is_empty() {
            return Err(FactorError::EmptyChain);
        }
        for (i, f) in factors.iter().enumerate() {
            f.validate(i)?;
        }
        for i in 0..factors.len() - 1 {
            if factors[i].ncols != factors[i + 1].nrows {
                return Err(FactorError::ChainMismatch {
                    index: i,
                    ncols: factors[i].ncols,
                    next: i + 1,
                    nrows: factors[i + 1].nrows,
                });
            }
        }
        Ok(BidiagonalProduct { factors })
    }

    pub fn factors(&self) -> &[BidiagonalFactor] {
        &self.factors
    }

    pub fn nrows(&self) -> usize {
        self.factors[0].nrows
    }

    pub fn ncols(&self) -> usize {
        self.factors.last().unwrap().ncols
    }

    /// The dimension sequence `n_0, n_1, ..., n_K`.
    pub fn dims(&self) -> Vec<usize> {
        let mut d = Vec::with_capacity(self.factors.len() + 1);
        d.push(self.factors[0].nrows);
        for f in &self.factors {
            d.push(f.ncols);
        }
        d
    }

    /// Total number of nontrivial element pairs `S`.
    pub fn pair_count(&self) -> usize {
        self.factors.iter().map(|f| f.pairs.len()).sum()
    }

    /// Chain of the transposed product (factors reversed and transposed).
    pub fn transpose(&self) -> BidiagonalProduct {
        BidiagonalProduct {
            factors: self.factors.iter().rev().map(|f| f.transpose()).collect(),
        }
    }
}

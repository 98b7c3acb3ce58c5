//! The element-pair representation `BD(A)` of a nonnegative bidiagonal
//! product, its dense expansion, transposition, and the row/column updating
//! and downdating procedures.
//!
//! A representation is an `n x m` grid of pairs `{bar, off}`. The matrix it
//! generates is the bidiagonal product
//!
//! ```text
//! A = L_{n-1} ... L_1 D U_1 ... U_{m-1}
//! ```
//!
//! where `D = diag(off(i,i))`, the lower factor `L_k` holds the pairs of grid
//! cells `(i, i-k)` below the diagonal (`bar` on the factor diagonal, `off`
//! on its subdiagonal), and the upper factor `U_l` holds the pairs of cells
//! `(i, i+l)` above the diagonal. Diagonal bars have no effect on the product
//! and are stored canonically as 1.

use crate::dense::Dense;
use crate::scalar::PassScalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReprError {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("negative or non-finite value at ({row}, {col})")]
    InvalidValue { row: usize, col: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
}

/// One `{bar, off}` pair of nonnegative values, the atom of all
/// representations.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementPair<T = f64> {
    pub bar: T,
    pub off: T,
}

impl<T: PassScalar> ElementPair<T> {
    pub fn new(bar: T, off: T) -> Self {
        ElementPair { bar, off }
    }

    /// The neutral pair `{1, 0}`.
    pub fn trivial() -> Self {
        ElementPair {
            bar: T::one(),
            off: T::zero(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.bar.is_one() && self.off.is_zero()
    }
}

/// An `n x m` grid of element pairs encoding a matrix as a bidiagonal
/// product.
#[derive(Clone, Debug, PartialEq)]
pub struct BDRepr<T = f64> {
    nrows: usize,
    ncols: usize,
    grid: Vec<ElementPair<T>>,
}

impl<T: PassScalar> BDRepr<T> {
    /// Representation of the rectangular identity `I_{n,m}`.
    pub fn identity(nrows: usize, ncols: usize) -> Self {
        assert!(nrows > 0 && ncols > 0, "dimensions must be positive");
        let mut r = BDRepr {
            nrows,
            ncols,
            grid: vec![ElementPair::trivial(); nrows * ncols],
        };
        for i in 0..nrows.min(ncols) {
            r.grid[i * ncols + i].off = T::one();
        }
        r
    }

    /// Builds a representation from a pair-valued function. Diagonal bars are
    /// normalized to 1; all values must be nonnegative and finite.
    pub fn from_fn(
        nrows: usize,
        ncols: usize,
        mut f: impl FnMut(usize, usize) -> ElementPair<T>,
    ) -> Result<Self, ReprError> {
        if nrows == 0 || ncols == 0 {
            return Err(ReprError::Dimension("dimensions must be positive".into()));
        }
        let mut grid = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                let mut p = f(i, j);
                if !p.bar.is_nonneg() || !p.off.is_nonneg() {
                    return Err(ReprError::InvalidValue { row: i, col: j });
                }
                if i == j {
                    p.bar = T::one();
                }
                grid.push(p);
            }
        }
        Ok(BDRepr { nrows, ncols, grid })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &ElementPair<T> {
        &self.grid[i * self.ncols + j]
    }

    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut ElementPair<T> {
        &mut self.grid[i * self.ncols + j]
    }

    /// A canonical input representation has `off(i,i) != 0` for every
    /// `i < min(n,m)`. Intermediate deflation states may violate this.
    pub fn is_canonical(&self) -> bool {
        let d = self.nrows.min(self.ncols);
        (0..d.saturating_sub(1)).all(|i| !self.get(i, i).off.is_zero())
    }

    /// Dense lower factor `L_k` (an `n x n` matrix), `1 <= k <= n-1`.
    fn lower_factor_dense(&self, k: usize) -> Dense<T>
    where
        T: num::Zero + num::One + std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
    {
        let n = self.nrows;
        let mut f = Dense::identity(n);
        // pair of grid cell (r, r-k) sits at factor positions (r-1, r-1) / (r, r-1)
        for r in k..n {
            if r - k >= self.ncols {
                break;
            }
            let p = self.get(r, r - k);
            f[(r - 1, r - 1)] = p.bar.clone();
            f[(r, r - 1)] = p.off.clone();
        }
        f
    }

    /// Dense upper factor `U_l` (an `m x m` matrix), `1 <= l <= m-1`.
    fn upper_factor_dense(&self, l: usize) -> Dense<T>
    where
        T: num::Zero + num::One + std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
    {
        let m = self.ncols;
        let mut f = Dense::identity(m);
        for c in l..m {
            if c - l >= self.nrows {
                break;
            }
            let p = self.get(c - l, c);
            f[(c - 1, c - 1)] = p.bar.clone();
            f[(c - 1, c)] = p.off.clone();
        }
        f
    }

    /// Expands the representation by explicit factor multiplication
    /// `L_{n-1} ... L_1 D U_1 ... U_{m-1}`. Used by tests and oracles only,
    /// never inside the accurate pipeline.
    pub fn expand_dense(&self) -> Dense<T>
    where
        T: num::Zero + num::One + std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
    {
        let (n, m) = (self.nrows, self.ncols);
        let mut d = Dense::zeros(n, m);
        for i in 0..n.min(m) {
            d[(i, i)] = self.get(i, i).off.clone();
        }
        let mut acc = d;
        for k in 1..n {
            acc = self.lower_factor_dense(k).matmul(&acc);
        }
        for l in 1..m {
            acc = acc.matmul(&self.upper_factor_dense(l));
        }
        acc
    }

    /// Elementwise transpose of the grid; represents the transposed matrix.
    pub fn transpose(&self) -> Self {
        let mut grid = Vec::with_capacity(self.grid.len());
        for j in 0..self.ncols {
            for i in 0..self.nrows {
                grid.push(self.grid[i * self.ncols + j].clone());
            }
        }
        BDRepr {
            nrows: self.ncols,
            ncols: self.nrows,
            grid,
        }
    }

    /// Attaches `t - n` zero rows after the last row.
    pub fn append_trailing_rows(&self, t: usize) -> Result<Self, ReprError> {
        if t <= self.nrows {
            return Err(ReprError::Dimension(format!(
                "append requires t > nrows, got t={t}, nrows={}",
                self.nrows
            )));
        }
        let mut grid = self.grid.clone();
        grid.extend(std::iter::repeat(ElementPair::trivial()).take((t - self.nrows) * self.ncols));
        Ok(BDRepr {
            nrows: t,
            ncols: self.ncols,
            grid,
        })
    }

    /// Deletes the last `n - t` rows. Row `t` absorbs the bars of row `t+1`
    /// as cumulative products into its off values; everything above is
    /// unchanged. Costs `2 * min(t, m)` multiplications, no subtractions.
    pub fn drop_trailing_rows(&self, t: usize) -> Result<Self, ReprError> {
        if t == 0 || t >= self.nrows {
            return Err(ReprError::Dimension(format!(
                "drop requires 1 <= t < nrows, got t={t}, nrows={}",
                self.nrows
            )));
        }
        let m = self.ncols;
        let mut grid = self.grid[..t * m].to_vec();
        let last = t - 1; // 0-based index of the surviving last row
        let mut prod = T::one();
        for j in 0..t.min(m) {
            prod = T::mul(&prod, &self.get(last + 1, j).bar);
            let cell = &mut grid[last * m + j];
            cell.off = T::mul(&cell.off, &prod);
        }
        Ok(BDRepr {
            nrows: t,
            ncols: m,
            grid,
        })
    }

    /// Column analogue of [`append_trailing_rows`] via transposition.
    pub fn append_trailing_cols(&self, t: usize) -> Result<Self, ReprError> {
        Ok(self.transpose().append_trailing_rows(t)?.transpose())
    }

    /// Column analogue of [`drop_trailing_rows`] via transposition.
    pub fn drop_trailing_cols(&self, t: usize) -> Result<Self, ReprError> {
        Ok(self.transpose().drop_trailing_rows(t)?.transpose())
    }
}

impl BDRepr<f64> {
    /// Checks all stored values are nonnegative and finite.
    pub fn check_nonnegative(&self) -> Result<(), ReprError> {
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let p = self.get(i, j);
                if !p.bar.is_nonneg() || !p.off.is_nonneg() {
                    return Err(ReprError::InvalidValue { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Exact conversion to a rational-valued grid.
    pub fn to_rational(&self) -> BDRepr<num::BigRational> {
        BDRepr {
            nrows: self.nrows,
            ncols: self.ncols,
            grid: self
                .grid
                .iter()
                .map(|p| ElementPair {
                    bar: crate::scalar::rational_from_f64(p.bar),
                    off: crate::scalar::rational_from_f64(p.off),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational_from_f64;
    use num::BigRational;

    fn dyadic_grid(n: usize, m: usize, seed: u64) -> BDRepr<f64> {
        // Small dyadic values so that f64 and rational arithmetic agree
        // bit for bit.
        let mut state = seed;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) & 0xff) as f64 / 16.0
        };
        BDRepr::from_fn(n, m, |_, _| ElementPair::new(next(), next())).unwrap()
    }

    #[test]
    fn identity_expands_to_identity() {
        let r: BDRepr<f64> = BDRepr::identity(4, 4);
        let d = r.expand_dense();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(d[(i, j)], if i == j { 1.0 } else { 0.0 });
            }
        }
        let rect: BDRepr<f64> = BDRepr::identity(3, 5);
        let d = rect.expand_dense();
        for i in 0..3 {
            for j in 0..5 {
                assert_eq!(d[(i, j)], if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn transpose_is_involution_and_matches_dense() {
        let r = dyadic_grid(3, 4, 7);
        assert_eq!(r.transpose().transpose(), r);
        let a = r.to_rational().expand_dense();
        let at = r.transpose().to_rational().expand_dense();
        for i in 0..3 {
            for j in 0..4 {
                assert_eq!(a[(i, j)], at[(j, i)]);
            }
        }
    }

    #[test]
    fn append_rows_adds_zero_rows() {
        let r = dyadic_grid(3, 3, 1);
        let up = r.append_trailing_rows(5).unwrap();
        assert_eq!(up.nrows(), 5);
        let d = up.to_rational().expand_dense();
        let d0 = r.to_rational().expand_dense();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[(i, j)], d0[(i, j)]);
            }
        }
        for i in 3..5 {
            for j in 0..3 {
                assert!(d[(i, j)].is_zero());
            }
        }
        assert!(r.append_trailing_rows(3).is_err());
    }

    #[test]
    fn drop_rows_matches_truncated_dense() {
        for (n, m, t) in [(7usize, 4usize, 5usize), (7, 4, 2), (4, 7, 3)] {
            let r = dyadic_grid(n, m, (n * 31 + m * 7 + t) as u64);
            let dropped = r.drop_trailing_rows(t).unwrap();
            let d = dropped.to_rational().expand_dense();
            let full = r.to_rational().expand_dense();
            for i in 0..t {
                for j in 0..m {
                    assert_eq!(d[(i, j)], full[(i, j)], "mismatch at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn drop_row_formula_from_worked_example() {
        // 7x4 grid, t = 5: row-5 pairs become {bar(5,j), off(5,j) * prod_{k<=j} bar(6,k)}
        // (1-based); t = 2 mirrors with row 3 bars.
        let r = dyadic_grid(7, 4, 99);
        let d5 = r.drop_trailing_rows(5).unwrap();
        let mut prod = 1.0;
        for j in 0..4 {
            prod *= r.get(5, j).bar;
            assert_eq!(d5.get(4, j).bar, r.get(4, j).bar);
            assert_eq!(d5.get(4, j).off, r.get(4, j).off * prod);
        }
        let d2 = r.drop_trailing_rows(2).unwrap();
        let mut prod = 1.0;
        for j in 0..2 {
            prod *= r.get(2, j).bar;
            assert_eq!(d2.get(1, j).bar, r.get(1, j).bar);
            assert_eq!(d2.get(1, j).off, r.get(1, j).off * prod);
        }
    }

    #[test]
    fn neutral_multipliers_leave_row_unchanged() {
        let mut r = dyadic_grid(5, 4, 3);
        for j in 0..4 {
            r.get_mut(3, j).bar = 1.0;
        }
        let dropped = r.drop_trailing_rows(3).unwrap();
        for j in 0..4 {
            assert_eq!(dropped.get(2, j), r.get(2, j));
        }
    }

    #[test]
    fn drop_after_append_roundtrips_exactly() {
        let r = dyadic_grid(4, 6, 11);
        let round = r.append_trailing_rows(7).unwrap().drop_trailing_rows(4).unwrap();
        assert_eq!(round, r);
    }

    #[test]
    fn col_variants_mirror_row_variants() {
        let r = dyadic_grid(3, 2, 5);
        let wide = r.append_trailing_cols(4).unwrap();
        assert_eq!(wide.ncols(), 4);
        for i in 0..3 {
            for j in 2..4 {
                assert!(wide.get(i, j).is_trivial());
            }
        }
        let r2 = dyadic_grid(3, 4, 8);
        let narrowed = r2.drop_trailing_cols(2).unwrap();
        let d = narrowed.to_rational().expand_dense();
        let full = r2.to_rational().expand_dense();
        for i in 0..3 {
            for j in 0..2 {
                assert_eq!(d[(i, j)], full[(i, j)]);
            }
        }
    }

    #[test]
    fn rational_and_float_paths_agree_on_dyadics() {
        // The five operations performed in f64 must equal the same
        // operations performed exactly, entry for entry, on dyadic input.
        let r = dyadic_grid(5, 4, 21);
        let f = r.drop_trailing_rows(3).unwrap();
        let q = r.to_rational().drop_trailing_rows(3).unwrap();
        for i in 0..3 {
            for j in 0..4 {
                assert_eq!(rational_from_f64(f.get(i, j).off), q.get(i, j).off);
                assert_eq!(rational_from_f64(f.get(i, j).bar), q.get(i, j).bar);
            }
        }
    }

    #[test]
    fn constructor_rejects_negative_and_normalizes_diag_bars() {
        let bad = BDRepr::<f64>::from_fn(2, 2, |i, j| {
            if (i, j) == (1, 0) {
                ElementPair::new(-1.0, 0.0)
            } else {
                ElementPair::trivial()
            }
        });
        assert!(matches!(bad, Err(ReprError::InvalidValue { row: 1, col: 0 })));

        let r = BDRepr::<f64>::from_fn(2, 2, |_, _| ElementPair::new(7.0, 2.0)).unwrap();
        assert_eq!(r.get(0, 0).bar, 1.0);
        assert_eq!(r.get(1, 1).bar, 1.0);
        assert_eq!(r.get(1, 0).bar, 7.0);
    }

    #[test]
    fn canonical_flag_tracks_diagonal_offs() {
        let mut r: BDRepr<f64> = BDRepr::identity(3, 3);
        assert!(r.is_canonical());
        r.get_mut(2, 2).off = 0.0; // last diagonal may vanish
        assert!(r.is_canonical());
        r.get_mut(0, 0).off = 0.0;
        assert!(!r.is_canonical());
        let _ = BigRational::from_float(1.0); // keep num import exercised
    }
}

//! Minimal dense matrix used for factor expansion, orthogonal accumulators
//! and test oracles. Not part of the accurate pipeline: plain arithmetic,
//! generic over the scalar.

use std::ops::{Add, Mul};

#[derive(Clone, Debug, PartialEq)]
pub struct Dense<T> {
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<T>,
}

impl<T: Clone> Dense<T> {
    pub fn filled(nrows: usize, ncols: usize, v: T) -> Self {
        Dense {
            nrows,
            ncols,
            data: vec![v; nrows * ncols],
        }
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Dense { nrows, ncols, data }
    }

    pub fn transpose(&self) -> Self {
        Dense::from_fn(self.ncols, self.nrows, |i, j| self[(j, i)].clone())
    }
}

impl<T> std::ops::Index<(usize, usize)> for Dense<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.ncols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Dense<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.ncols + j]
    }
}

impl<T> Dense<T>
where
    T: Clone + num::Zero + num::One + Add<Output = T> + Mul<Output = T>,
{
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Dense::filled(nrows, ncols, T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Dense::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Rectangular identity `I_{n,m}`.
    pub fn rect_identity(nrows: usize, ncols: usize) -> Self {
        Dense::from_fn(
            nrows,
            ncols,
            |i, j| if i == j { T::one() } else { T::zero() },
        )
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch");
        let mut out = Dense::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols {
                    let t = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + t;
                }
            }
        }
        out
    }
}

impl Dense<f64> {
    /// Largest absolute entry.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &x| m.max(x.abs()))
    }

    /// `max |(self^T self - I)_{ij}|`, the orthogonality defect.
    pub fn orthogonality_defect(&self) -> f64 {
        let g = self.transpose().matmul(self);
        let mut worst = 0.0f64;
        for i in 0..g.nrows {
            for j in 0..g.ncols {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - target).abs());
            }
        }
        worst
    }
}

//! Dense matrices with exact elimination, and the Toeplitz / Hankel types.
//!
//! A Toeplitz matrix is stored by its coordinates in the basis
//! `Z^{m-1}, …, Z, I, Zᵀ, …, (Zᵀ)^{n-1}`: coordinate `k` (0-based) is the value
//! on the diagonal `i - j = m - 1 - k`, so coordinate 0 is the bottom-left
//! corner and the last coordinate is the top-right corner. With this order the
//! rank-one matrix `[ξ^{m-1}, …, 1]ᵀ[1, ξ, …, ξ^{n-1}]` has coordinates
//! `[1, ξ, …, ξ^{m+n-2}]`.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Field> DenseMatrix<F> {
    /// Row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Self::new(nrows, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Self { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| F::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn diagonal(diag: Vec<F>) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i].clone() } else { F::zero() })
    }

    /// Outer product `u vᵀ`.
    pub fn outer(u: &[F], v: &[F]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i].clone() * v[j].clone())
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

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(F::zero(), |acc, k| {
                acc + self[(i, k)].clone() * rhs[(k, j)].clone()
            })
        }))
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Fraction-free (Bareiss) forward elimination on a copy; returns the
    /// echelon rows, rank and the parity of row swaps.
    fn bareiss(&self) -> (Vec<Vec<F>>, usize, bool) {
        let mut a = self.to_rows();
        let mut prev = F::one();
        let mut rank = 0;
        let mut odd_swaps = false;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            if p != rank {
                a.swap(p, rank);
                odd_swaps = !odd_swaps;
            }
            let pivot = a[rank][col].clone();
            for i in rank + 1..self.rows {
                let factor = a[i][col].clone();
                for j in col + 1..self.cols {
                    let v = pivot.clone() * a[i][j].clone() - factor.clone() * a[rank][j].clone();
                    a[i][j] = v / prev.clone();
                }
                a[i][col] = F::zero();
            }
            prev = pivot;
            rank += 1;
        }
        (a, rank, odd_swaps)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1
    }

    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(F::one());
        }
        let (a, rank, odd_swaps) = self.bareiss();
        if rank < n {
            return Ok(F::zero());
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if odd_swaps { -d } else { d })
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            let p = (col..n).find(|&i| !a[i][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(p, col);
            inv.swap(p, col);
            let s = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = a[col][j].clone() * s.clone();
                inv[col][j] = inv[col][j].clone() * s.clone();
            }
            for i in 0..n {
                if i == col || a[i][col].is_zero() {
                    continue;
                }
                let f = a[i][col].clone();
                for j in 0..n {
                    a[i][j] = a[i][j].clone() - f.clone() * a[col][j].clone();
                    inv[i][j] = inv[i][j].clone() - f.clone() * inv[col][j].clone();
                }
            }
        }
        Self::from_rows(inv)
    }

    pub fn is_toeplitz(&self) -> bool {
        (1..self.rows).all(|i| (1..self.cols).all(|j| self[(i, j)] == self[(i - 1, j - 1)]))
    }

    pub fn is_hankel(&self) -> bool {
        (1..self.rows).all(|i| (0..self.cols - 1).all(|j| self[(i, j)] == self[(i - 1, j + 1)]))
    }
}

impl<F> Index<(usize, usize)> for DenseMatrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for DenseMatrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

/// Panics on a dimension mismatch; see [`DenseMatrix::matmul`].
impl<F: Field> Mul for &DenseMatrix<F> {
    type Output = DenseMatrix<F>;
    fn mul(self, rhs: &DenseMatrix<F>) -> DenseMatrix<F> {
        self.matmul(rhs).expect("dimension mismatch")
    }
}

impl<F: fmt::Debug> fmt::Debug for DenseMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.cols.max(1))).finish()
    }
}

fn check_structured(rows: usize, cols: usize, len: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidShape {
            rows,
            cols,
            reason: "dimensions must be positive",
        });
    }
    if len != rows + cols - 1 {
        return Err(Error::LengthMismatch {
            expected: rows + cols - 1,
            found: len,
        });
    }
    Ok(())
}

/// An `m x n` Toeplitz matrix (`m <= n`) stored by its `m + n - 1` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ToeplitzMatrix<F> {
    rows: usize,
    cols: usize,
    coords: Vec<F>,
}

impl<F: Field> ToeplitzMatrix<F> {
    pub fn from_coords(rows: usize, cols: usize, coords: Vec<F>) -> Result<Self> {
        check_structured(rows, cols, coords.len())?;
        if rows > cols {
            return Err(Error::InvalidShape {
                rows,
                cols,
                reason: "rectangular Toeplitz matrices need rows <= cols; transpose first",
            });
        }
        Ok(Self { rows, cols, coords })
    }

    pub fn square(n: usize, coords: Vec<F>) -> Result<Self> {
        Self::from_coords(n, n, coords)
    }

    pub fn from_dense(a: &DenseMatrix<F>) -> Result<Self> {
        let (m, n) = a.shape();
        if m == 0 || n == 0 || m > n {
            return Err(Error::InvalidShape {
                rows: m,
                cols: n,
                reason: "rectangular Toeplitz matrices need 0 < rows <= cols",
            });
        }
        if !a.is_toeplitz() {
            return Err(Error::NotToeplitz);
        }
        // bottom-left corner up the first column, then along the first row
        let mut coords: Vec<F> = (0..m).rev().map(|i| a[(i, 0)].clone()).collect();
        coords.extend((1..n).map(|j| a[(0, j)].clone()));
        Ok(Self { rows: m, cols: n, coords })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<F> {
        self.coords
    }

    pub fn entry(&self, i: usize, j: usize) -> &F {
        &self.coords[self.rows - 1 - i + j]
    }

    pub fn dense(&self) -> DenseMatrix<F> {
        DenseMatrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).clone())
    }

    pub fn rank(&self) -> usize {
        self.dense().rank()
    }
}

/// A Hankel matrix stored by its anti-diagonal values: entry `(i, j)` is
/// coordinate `i + j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HankelMatrix<F> {
    rows: usize,
    cols: usize,
    coords: Vec<F>,
}

impl<F: Field> HankelMatrix<F> {
    pub fn from_coords(rows: usize, cols: usize, coords: Vec<F>) -> Result<Self> {
        check_structured(rows, cols, coords.len())?;
        Ok(Self { rows, cols, coords })
    }

    pub fn from_dense(a: &DenseMatrix<F>) -> Result<Self> {
        let (m, n) = a.shape();
        if m == 0 || n == 0 {
            return Err(Error::InvalidShape {
                rows: m,
                cols: n,
                reason: "dimensions must be positive",
            });
        }
        if !a.is_hankel() {
            return Err(Error::NotHankel);
        }
        let mut coords: Vec<F> = (0..n).map(|j| a[(0, j)].clone()).collect();
        coords.extend((1..m).map(|i| a[(i, n - 1)].clone()));
        Ok(Self { rows: m, cols: n, coords })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn entry(&self, i: usize, j: usize) -> &F {
        &self.coords[i + j]
    }

    pub fn dense(&self) -> DenseMatrix<F> {
        DenseMatrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).clone())
    }
}

/// The Hankel matrix `F_n A` of a square Toeplitz matrix `A`. Row reversal
/// turns the diagonal index `m - 1 - i + j` into `i + j`, so the coordinate
/// vector carries over unchanged.
pub fn hankel_conjugate<F: Field>(a: &ToeplitzMatrix<F>) -> Result<HankelMatrix<F>> {
    if a.rows != a.cols {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    Ok(HankelMatrix {
        rows: a.rows,
        cols: a.cols,
        coords: a.coords.clone(),
    })
}

/// Inverse of [`hankel_conjugate`]: the Toeplitz matrix `F_n H`.
pub fn toeplitz_conjugate<F: Field>(h: &HankelMatrix<F>) -> Result<ToeplitzMatrix<F>> {
    if h.rows != h.cols {
        return Err(Error::NotSquare {
            rows: h.rows,
            cols: h.cols,
        });
    }
    ToeplitzMatrix::square(h.rows, h.coords.clone())
}

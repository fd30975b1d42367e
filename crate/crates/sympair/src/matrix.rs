//! Dense matrices over the exact rationals, together with the structure maps
//! of the symmetric pair (GL_{n+k}, GL_n × GL_k): the involution θ(g) = εgε,
//! the antiinvolution σ(g) = θ(g⁻¹), and the symmetrization s(g) = g·σ(g).
//!
//! All matrices are immutable values; every operation returns a fresh matrix
//! and is exact (Gaussian elimination over `Q`, no pivots lost to rounding).

use std::fmt;
use std::ops::{Index, IndexMut};

use num::{One, Zero};
use thiserror::Error;

use crate::rational::{rint, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system is underdetermined")]
    Underdetermined,
    #[error("malformed matrix text: {0}")]
    Parse(String),
}

/// Dense row-major matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Scalar matrix `c·Id`.
    pub fn scalar(size: usize, c: Rational) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Test/fixture helper; panics on ragged input.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| rint(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            &self[(i, j)] + &other[(i, j)]
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            &self[(i, j)] - &other[(i, j)]
        }))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    /// Exact matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                if self[(i, l)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other[(l, j)].is_zero() {
                        continue;
                    }
                    let v = &out[(i, j)] + &(&self[(i, l)] * &other[(l, j)]);
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    /// Commutator `[a, b] = ab - ba`.
    pub fn commutator(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn trace(&self) -> Result<Rational, LinAlgError> {
        self.require_square()?;
        let mut t = Rational::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        Ok(t)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// True iff the matrix is `c·Id` for some scalar `c`.
    pub fn is_scalar(&self) -> bool {
        if !self.is_diagonal() || self.rows == 0 {
            return false;
        }
        let c = &self[(0, 0)];
        (1..self.rows).all(|i| &self[(i, i)] == c)
    }

    pub fn column(&self, j: usize) -> Self {
        Self::from_fn(self.rows, 1, |i, _| self[(i, j)].clone())
    }

    /// Stacks column vectors (each `rows×1`) into a single matrix.
    pub fn from_columns(cols: &[RationalMatrix]) -> Result<Self, LinAlgError> {
        let Some(first) = cols.first() else {
            return Err(LinAlgError::Dimension("no columns given".into()));
        };
        let rows = first.rows;
        if cols.iter().any(|c| c.cols != 1 || c.rows != rows) {
            return Err(LinAlgError::Dimension(
                "columns must all be vectors of equal length".into(),
            ));
        }
        Ok(Self::from_fn(rows, cols.len(), |i, j| {
            cols[j][(i, 0)].clone()
        }))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduces in place to reduced row echelon form (pivots normalized to 1,
    /// pivot columns cleared above and below); returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    let v = &self[(i, j)] - &(&f * &self[(r, j)]);
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Exact basis of the kernel, as column vectors.
    ///
    /// Convention: reduced echelon form with pivot columns normalized to 1 and
    /// one basis vector per free column, in increasing column order; the basis
    /// vector for free column `f` has entry 1 at position `f`.
    pub fn nullspace(&self) -> Vec<RationalMatrix> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        let mut piv = pivots.iter().copied().peekable();
        let mut free_cols = Vec::new();
        for c in 0..self.cols {
            if piv.peek() == Some(&c) {
                piv.next();
            } else {
                free_cols.push(c);
            }
        }
        for f in free_cols {
            let mut v = RationalMatrix::zeros(self.cols, 1);
            v[(f, 0)] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[(pc, 0)] = -m[(row, f)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse; errors on non-square or singular input.
    pub fn inverse(&self) -> Result<Self, LinAlgError> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(LinAlgError::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    /// Solves `self * X = rhs` exactly. Requires the system to be consistent
    /// with a unique solution (full column rank).
    pub fn solve(&self, rhs: &Self) -> Result<Self, LinAlgError> {
        if self.rows != rhs.rows {
            return Err(LinAlgError::Dimension(format!(
                "lhs has {} rows, rhs has {}",
                self.rows, rhs.rows
            )));
        }
        let mut aug = Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(LinAlgError::Inconsistent);
        }
        if pivots.len() < self.cols {
            return Err(LinAlgError::Underdetermined);
        }
        let mut x = Self::zeros(self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(pc, j)] = aug[(row, self.cols + j)].clone();
            }
        }
        Ok(x)
    }

    /// Canonical text form: `rows cols` header line, then one line per row of
    /// whitespace-separated `p/q` or integer tokens. Round-trips bit-exactly
    /// through [`RationalMatrix::from_text`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(s: &str) -> Result<Self, LinAlgError> {
        let mut tok = s.split_whitespace();
        let rows: usize = tok
            .next()
            .ok_or_else(|| LinAlgError::Parse("missing row count".into()))?
            .parse()
            .map_err(|e| LinAlgError::Parse(format!("bad row count: {e}")))?;
        let cols: usize = tok
            .next()
            .ok_or_else(|| LinAlgError::Parse("missing column count".into()))?
            .parse()
            .map_err(|e| LinAlgError::Parse(format!("bad column count: {e}")))?;
        let mut data = Vec::with_capacity(rows * cols);
        for idx in 0..rows * cols {
            let t = tok
                .next()
                .ok_or_else(|| LinAlgError::Parse(format!("expected {} entries, got {idx}", rows * cols)))?;
            let r: Rational = t
                .parse()
                .map_err(|_| LinAlgError::Parse(format!("bad entry `{t}`")))?;
            data.push(r);
        }
        if let Some(extra) = tok.next() {
            return Err(LinAlgError::Parse(format!("trailing token `{extra}`")));
        }
        Self::new(rows, cols, data)
    }

    fn same_shape(&self, other: &Self) -> Result<(), LinAlgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn require_square(&self) -> Result<(), LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::Dimension(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )));
        }
        Ok(())
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The signature form ε = diag(Id_n, −Id_k). Defines the involution
/// θ(g) = εgε whose fixed group is H = GL_n × GL_k (block-diagonal), the
/// antiinvolution σ(g) = θ(g⁻¹), and the symmetrization map s(g) = g·σ(g).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpsilonForm {
    pub n: usize,
    pub k: usize,
}

impl EpsilonForm {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n >= 1 && k >= 1, "epsilon form needs n, k >= 1");
        Self { n, k }
    }

    pub fn size(&self) -> usize {
        self.n + self.k
    }

    /// +1 on the first n basis vectors, −1 on the last k.
    pub fn sign(&self, i: usize) -> i64 {
        if i < self.n {
            1
        } else {
            -1
        }
    }

    pub fn matrix(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.size(), self.size(), |i, j| {
            if i == j {
                rint(self.sign(i))
            } else {
                Rational::zero()
            }
        })
    }

    /// θ(g) = εgε.
    pub fn theta(&self, g: &RationalMatrix) -> Result<RationalMatrix, LinAlgError> {
        self.check_size(g)?;
        Ok(RationalMatrix::from_fn(self.size(), self.size(), |i, j| {
            if self.sign(i) == self.sign(j) {
                g[(i, j)].clone()
            } else {
                -g[(i, j)].clone()
            }
        }))
    }

    /// σ(g) = θ(g⁻¹). Errors on singular g.
    pub fn sigma(&self, g: &RationalMatrix) -> Result<RationalMatrix, LinAlgError> {
        self.check_size(g)?;
        self.theta(&g.inverse()?)
    }

    /// Symmetrization s(g) = g·σ(g); the result x satisfies σ(x) = x,
    /// i.e. εxεx = Id.
    pub fn symmetrize(&self, g: &RationalMatrix) -> Result<RationalMatrix, LinAlgError> {
        g.mul(&self.sigma(g)?)
    }

    /// True iff θ(x) = −x, i.e. x lies in the odd part g^σ of the Lie algebra
    /// (x is block-antidiagonal for this ε).
    pub fn is_odd_part(&self, x: &RationalMatrix) -> Result<bool, LinAlgError> {
        self.check_size(x)?;
        for i in 0..self.size() {
            for j in 0..self.size() {
                if self.sign(i) == self.sign(j) && !x[(i, j)].is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_size(&self, g: &RationalMatrix) -> Result<(), LinAlgError> {
        if g.rows() != self.size() || g.cols() != self.size() {
            return Err(LinAlgError::Dimension(format!(
                "expected {0}x{0} matrix for epsilon form (n={1}, k={2}), got {3}x{4}",
                self.size(),
                self.n,
                self.k,
                g.rows(),
                g.cols()
            )));
        }
        Ok(())
    }
}

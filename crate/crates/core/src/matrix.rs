//! Dense exact matrices: fraction-free integer determinants, rational
//! elimination, the division-free Berkowitz determinant for arbitrary
//! commutative rings, Kronecker products and minors.

use crate::error::{Error, Result};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RationalMatrix = Matrix<BigRational>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// The submatrix with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != c).collect();
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn map<S: Clone>(&self, f: impl Fn(&T) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sub(other.get(i, j)))
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc.add(&self.get(i, k).mul(other.get(k, j))))
        })
    }

    /// Kronecker product: the block matrix whose `(i, j)` block is `a_ij * other`.
    pub fn kronecker(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self.get(i / other.rows, j / other.cols)
                .mul(other.get(i % other.rows, j % other.cols))
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => T::zero(),
            }
        })
    }

    /// Division-free determinant (Berkowitz). Works over any commutative ring
    /// using `O(n^4)` ring operations.
    pub fn det_berkowitz(&self) -> Result<T> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let charpoly = berkowitz_vector(self, 0);
        let last = charpoly[n].clone();
        Ok(if n.is_multiple_of(2) { last } else { last.neg() })
    }

    /// Determinant by cofactor expansion along the first row. Exponential;
    /// used only as an independent check on tiny matrices.
    pub fn det_cofactor(&self) -> Result<T> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        if n == 1 {
            return Ok(self.get(0, 0).clone());
        }
        let mut acc = T::zero();
        for j in 0..n {
            if self.get(0, j).is_zero() {
                continue;
            }
            let term = self.get(0, j).mul(&self.minor(0, j).det_cofactor()?);
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        Ok(acc)
    }
}

/// Coefficients `[1, c_1, ..., c_m]` of `det(x I - A')` where `A'` is the
/// trailing principal submatrix of `a` starting at `offset`.
fn berkowitz_vector<T: Ring>(a: &Matrix<T>, offset: usize) -> Vec<T> {
    let n = a.rows - offset;
    if n == 0 {
        return vec![T::one()];
    }
    let a00 = a.get(offset, offset).clone();
    if n == 1 {
        return vec![T::one(), a00.neg()];
    }
    // Partition A' = [[a00, R], [C, S]].
    let m = n - 1;
    let s = |i: usize, j: usize| a.get(offset + 1 + i, offset + 1 + j);
    let r = |j: usize| a.get(offset, offset + 1 + j);
    let mut col: Vec<T> = (0..m).map(|i| a.get(offset + 1 + i, offset).clone()).collect();
    // diags = [1, -a00, -R C, -R S C, ..., -R S^{m-1} C]
    let mut diags = vec![T::one(), a00.neg()];
    for step in 0..m {
        let rc = (0..m).fold(T::zero(), |acc, j| acc.add(&r(j).mul(&col[j])));
        diags.push(rc.neg());
        if step + 1 < m {
            col = (0..m)
                .map(|i| (0..m).fold(T::zero(), |acc, j| acc.add(&s(i, j).mul(&col[j]))))
                .collect();
        }
    }
    let sub = berkowitz_vector(a, offset + 1);
    // Lower-triangular Toeplitz (n+1) x n matrix times sub (length n).
    (0..=n)
        .map(|i| {
            (0..n.min(i + 1)).fold(T::zero(), |acc, j| acc.add(&diags[i - j].mul(&sub[j])))
        })
        .collect()
}

impl IntMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("rectangular input")
    }

    /// Fraction-free (Bareiss) determinant with row pivoting.
    pub fn det_bareiss(&self) -> Result<BigInt> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(<BigInt as One>::one());
        }
        let mut m = self.to_rows();
        let mut sign = 1i32;
        let mut prev = <BigInt as One>::one();
        for k in 0..n - 1 {
            if Zero::is_zero(&m[k][k]) {
                match (k + 1..n).find(|&i| !Zero::is_zero(&m[i][k])) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(<BigInt as Zero>::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if sign < 0 { -det } else { det })
    }
}

impl RationalMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        m.map(|x| BigRational::from_integer(x.clone()))
    }

    /// Exact determinant: each row is scaled to integers by the lcm of its
    /// denominators, then the integer matrix goes through Bareiss.
    pub fn det_exact(&self) -> Result<BigRational> {
        self.require_square()?;
        let mut scale = <BigInt as One>::one();
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let l = self
                    .row(i)
                    .iter()
                    .fold(<BigInt as One>::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &l;
                self.row(i)
                    .iter()
                    .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect();
        let det = Matrix::from_rows(rows)?.det_bareiss()?;
        Ok(BigRational::new(det, scale))
    }

    /// Rank by Gaussian elimination over the rationals.
    pub fn rank(&self) -> usize {
        let mut m = self.to_rows();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !Zero::is_zero(&m[i][c])) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][c].clone();
            for i in 0..self.rows {
                if i != rank && !Zero::is_zero(&m[i][c]) {
                    let f = &m[i][c] / &pivot;
                    for j in c..self.cols {
                        let delta = &f * &m[rank][j];
                        m[i][j] -= delta;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Serialized as nested arrays of decimal strings.
impl<T: Clone + ToString> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(serializer)
    }
}

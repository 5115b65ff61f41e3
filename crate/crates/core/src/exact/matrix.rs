//! Dense matrices over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::UniPoly;
use super::rational::{format_rational, rat, JsonRational, Rational};
use super::ExactError;

/// Row-major dense matrix with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, s: &Rational) -> Self {
        Self::identity(n).scale(s)
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.clone();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    /// An empty row list gives a 0×`cols_if_empty` matrix.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols_if_empty: usize) -> Result<Self, ExactError> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(cols_if_empty, Vec::len);
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n_cols {
                return Err(ExactError::Shape(format!(
                    "row {i} has {} entries, expected {n_cols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Self::new(n_rows, n_cols, entries)
    }

    /// Convenience constructor from small integer rows. Panics on ragged input.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_rows(data, cols).expect("ragged integer matrix")
    }

    pub fn from_columns(columns: &[Vec<Rational>], rows_if_empty: usize) -> Self {
        let rows = columns.first().map_or(rows_if_empty, Vec::len);
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, ExactError> {
        if self.rows != other.rows {
            return Err(ExactError::Shape(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        if self.cols != rhs.rows {
            return Err(ExactError::Shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn pow(&self, exp: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rows scaled to integer entries (each row by the lcm of its denominators).
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect()
    }

    /// Rank over ℚ, via fraction-free (Bareiss) elimination on integer-scaled rows.
    pub fn rank(&self) -> usize {
        let mut a = self.integer_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    a[i][j] = v / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }

    /// Basis of the null space `{v : M·v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -red.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `M·x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let aug = self
            .hstack(&Self::from_columns(&[b.to_vec()], self.rows))
            .expect("row counts agree");
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn column_space(&self) -> Vec<Vec<Rational>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&j| self.column(j)).collect()
    }

    pub fn determinant(&self) -> Result<Rational, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare(self.rows, self.cols));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &pivot;
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// `det(x·Id − M)` by the Faddeev–LeVerrier recursion.
    pub fn char_poly(&self) -> Result<UniPoly, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            m = &(self * &m) + &Self::scalar(n, &coeffs[n + 1 - k]);
            let am = self * &m;
            let trace = (0..n).fold(Rational::zero(), |acc, i| acc + am.get(i, i));
            coeffs[n - k] = -trace / rat(k as i64);
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n)).ok()?;
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn to_json_rows(&self) -> Vec<Vec<JsonRational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().cloned().map(JsonRational).collect())
            .collect()
    }

    pub fn from_json_rows(rows: Vec<Vec<JsonRational>>, cols_if_empty: usize) -> Result<Self, ExactError> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| x.0).collect())
                .collect(),
            cols_if_empty,
        )
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;

    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;

    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;

    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

/// Panics on incompatible shapes; use [`RatMatrix::try_mul`] for a checked product.
impl Mul for &RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::identity(2).rank(), 2);
        assert_eq!(RatMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(RatMatrix::identity(3).kernel().is_empty());
        assert_eq!(RatMatrix::zeros(2, 3).kernel().len(), 3);
        let k = RatMatrix::from_ints(&[&[1, 1]]).kernel();
        assert_eq!(k, vec![vec![rat(-1), rat(1)]]);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = RatMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.determinant().unwrap(), rat(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RatMatrix::identity(2));
        assert!(RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(m.char_poly().unwrap(), UniPoly::from_ints(&[1, -3, 1]));
        let nil = RatMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(nil.char_poly().unwrap(), UniPoly::from_ints(&[0, 0, 0, 1]));
        assert!(matches!(
            RatMatrix::zeros(2, 3).determinant(),
            Err(ExactError::NotSquare(2, 3))
        ));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = RatMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        let x = m.solve(&[rat(3), rat(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat(3), rat(6)]);
        assert!(m.solve(&[rat(1), rat(3)]).is_none());
    }

    #[test]
    fn rational_entries_rank() {
        let m = RatMatrix::from_rows(
            vec![
                vec![ratio(1, 2), ratio(1, 3)],
                vec![ratio(3, 2), rat(1)],
            ],
            2,
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    fn small_matrix() -> impl Strategy<Value = RatMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-4i64..5, 1i64..4), r * c).prop_map(move |v| {
                let entries = v.into_iter().map(|(n, d)| ratio(n, d)).collect();
                RatMatrix::new(r, c, entries).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn rank_of_transpose(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}

//! Matrices of linear forms in the homogeneous coordinates z₀..z₃.

use std::fmt;

use num_traits::Zero;

use super::matrix::RatMatrix;
use super::multipoly::{MultiPoly, PolyMatrix};
use super::rational::Rational;
use super::ExactError;

/// `Σ cᵢ zᵢ` with `i = 0..4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LinForm(pub [Rational; 4]);

impl LinForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::linear(&self.0)
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Matrix with degree-one entries in z₀..z₃.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinFormMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LinForm>,
}

impl LinFormMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![LinForm::zero(); rows * cols] }
    }

    /// `M₀z₀ + M₁z₁ + M₂z₂ + M₃z₃`; `None` stands for a zero coefficient.
    pub fn from_coefficients(rows: usize, cols: usize, coeffs: [Option<&RatMatrix>; 4]) -> Result<Self, ExactError> {
        let mut out = Self::zeros(rows, cols);
        for (k, m) in coeffs.iter().enumerate() {
            let Some(m) = m else { continue };
            if m.shape() != (rows, cols) {
                return Err(ExactError::Shape(format!(
                    "coefficient of z{k} is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
            for i in 0..rows {
                for j in 0..cols {
                    out.entries[i * cols + j].0[k] += m.get(i, j);
                }
            }
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LinForm {
        &self.entries[i * self.cols + j]
    }

    /// Numeric coefficient matrix of `z_k`.
    pub fn coefficient(&self, k: usize) -> RatMatrix {
        let entries = self.entries.iter().map(|f| f.0[k].clone()).collect();
        RatMatrix::new(self.rows, self.cols, entries).expect("shape preserved")
    }

    pub fn negate(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|f| LinForm(f.0.clone().map(|c| -c)))
                .collect(),
        }
    }

    pub fn vstack(blocks: &[&Self]) -> Result<Self, ExactError> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(ExactError::Shape("vertical blocks differ in column count".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let entries = blocks.iter().flat_map(|b| b.entries.iter().cloned()).collect();
        Ok(Self { rows, cols, entries })
    }

    pub fn hstack(blocks: &[&Self]) -> Result<Self, ExactError> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(ExactError::Shape("horizontal blocks differ in row count".into()));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                entries.extend(b.entries[i * b.cols..(i + 1) * b.cols].iter().cloned());
            }
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn to_poly_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_entries(self.rows, self.cols, 4, self.entries.iter().map(LinForm::to_poly).collect())
            .expect("shape preserved")
    }

    /// Symbolic product; entries are quadratic forms in z₀..z₃.
    pub fn product(&self, rhs: &Self) -> Result<PolyMatrix, ExactError> {
        self.to_poly_matrix().try_mul(&rhs.to_poly_matrix())
    }

    pub fn eval(&self, z: &[Rational; 4]) -> RatMatrix {
        let entries = self
            .entries
            .iter()
            .map(|f| f.0.iter().zip(z).fold(Rational::zero(), |acc, (c, x)| acc + c * x))
            .collect();
        RatMatrix::new(self.rows, self.cols, entries).expect("shape preserved")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn blocks_and_product() {
        let id = RatMatrix::identity(1);
        let a = LinFormMatrix::from_coefficients(1, 1, [None, None, Some(&id), None]).unwrap();
        let b = LinFormMatrix::from_coefficients(1, 1, [None, None, None, Some(&id)]).unwrap();
        let col = LinFormMatrix::vstack(&[&a, &b]).unwrap();
        let row = LinFormMatrix::hstack(&[&b.negate(), &a]).unwrap();
        assert_eq!(col.rows(), 2);
        assert_eq!(row.cols(), 2);
        assert!(row.product(&col).unwrap().is_zero());
        let z = [rat(1), rat(2), rat(3), rat(4)];
        assert_eq!(col.eval(&z), RatMatrix::from_ints(&[&[3], &[4]]));
        assert_eq!(col.coefficient(3), RatMatrix::from_ints(&[&[0], &[1]]));
    }

    #[test]
    fn shape_errors() {
        let m = RatMatrix::zeros(2, 1);
        assert!(LinFormMatrix::from_coefficients(1, 1, [Some(&m), None, None, None]).is_err());
        let a = LinFormMatrix::zeros(1, 2);
        let b = LinFormMatrix::zeros(1, 3);
        assert!(LinFormMatrix::vstack(&[&a, &b]).is_err());
    }
}

//! Sparse multivariate polynomials and matrices with polynomial entries.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{format_rational, Rational};
use super::ExactError;

/// Polynomial in a fixed number of variables, stored as exponent vector → coefficient.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The variable with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exponents: Vec<u32>, c: Rational) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// Linear form `Σ coeffs[i]·x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        debug_assert_eq!(exponents.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[u32]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True when every term has total degree exactly `d`.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * s);
        }
        p
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong arity");
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Appends `extra` new variables (all exponents zero).
    pub fn extend_vars(&self, extra: usize) -> Self {
        let mut p = Self::zero(self.nvars + extra);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.resize(self.nvars + extra, 0);
            p.add_term(e, c.clone());
        }
        p
    }

    /// Coefficients of the powers of variable `i`, ascending; each coefficient
    /// no longer involves that variable (its slot is removed).
    pub fn collect_in(&self, i: usize) -> Vec<MultiPoly> {
        let deg = self.terms.keys().map(|e| e[i]).max().unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.nvars - 1); deg + 1];
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest.remove(i) as usize;
            out[k].add_term(rest, c.clone());
        }
        out
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let negative = *c < Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let name = names.get(i).copied().map(str::to_string).unwrap_or(format!("x{i}"));
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&format_rational(&mag));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&["z0", "z1", "z2", "z3"]))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }
}

/// Dense matrix whose entries are [`MultiPoly`] values in a common ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        Self { rows, cols, nvars, entries: vec![MultiPoly::zero(nvars); rows * cols] }
    }

    pub fn from_entries(rows: usize, cols: usize, nvars: usize, entries: Vec<MultiPoly>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|p| p.nvars() != nvars) {
            return Err(ExactError::Shape("entries live in different polynomial rings".into()));
        }
        Ok(Self { rows, cols, nvars, entries })
    }

    /// `Σ_k M_k · x_k` for numeric coefficient matrices `M_k` of equal shape.
    pub fn linear_combination(mats: &[&super::RatMatrix]) -> Result<Self, ExactError> {
        let Some(first) = mats.first() else {
            return Err(ExactError::Shape("no coefficient matrices".into()));
        };
        let (rows, cols) = first.shape();
        if mats.iter().any(|m| m.shape() != (rows, cols)) {
            return Err(ExactError::Shape("coefficient matrices differ in shape".into()));
        }
        let n = mats.len();
        let entries = (0..rows * cols)
            .map(|idx| {
                let coeffs: Vec<Rational> = mats.iter().map(|m| m.get(idx / cols, idx % cols).clone()).collect();
                MultiPoly::linear(&coeffs)
            })
            .collect();
        Ok(Self { rows, cols, nvars: n, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        assert_eq!(p.nvars(), self.nvars, "entry ring mismatch");
        self.entries[i * self.cols + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        if self.cols != rhs.rows || self.nvars != rhs.nvars {
            return Err(ExactError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = MultiPoly::zero(self.nvars);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rational]) -> super::RatMatrix {
        let entries = self.entries.iter().map(|p| p.eval(point)).collect();
        super::RatMatrix::new(self.rows, self.cols, entries).expect("shape preserved")
    }

    pub fn extend_vars(&self, extra: usize) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars + extra,
            entries: self.entries.iter().map(|p| p.extend_vars(extra)).collect(),
        }
    }

    /// Determinant by cofactor expansion along rows, memoized over column subsets.
    pub fn determinant(&self) -> Result<MultiPoly, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(MultiPoly::one(self.nvars));
        }
        if n > 24 {
            return Err(ExactError::Shape(format!("{n}x{n} is too large for cofactor expansion")));
        }
        let mut memo: HashMap<u32, MultiPoly> = HashMap::new();
        Ok(self.minor_det(0, (1u32 << n) - 1, &mut memo))
    }

    /// Determinant of rows `row..n` restricted to the columns in `mask`.
    fn minor_det(&self, row: usize, mask: u32, memo: &mut HashMap<u32, MultiPoly>) -> MultiPoly {
        if mask == 0 {
            return MultiPoly::one(self.nvars);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let mut acc = MultiPoly::zero(self.nvars);
        let mut position = 0;
        for j in 0..self.cols {
            if mask & (1 << j) == 0 {
                continue;
            }
            let entry = self.get(row, j);
            if !entry.is_zero() {
                let sub = self.minor_det(row + 1, mask & !(1 << j), memo);
                if !sub.is_zero() {
                    let term = entry * &sub;
                    acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
                }
            }
            position += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }
}

/// Characteristic polynomial `det(x·Id − M)` with coefficients in the entry ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    /// Coefficient of `x^k` at index `k`.
    pub coeffs: Vec<MultiPoly>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// True iff the polynomial is exactly `x^n` with `n` its degree.
    pub fn is_pure_power(&self) -> bool {
        match self.coeffs.split_last() {
            Some((lead, rest)) => {
                rest.iter().all(MultiPoly::is_zero)
                    && *lead == MultiPoly::one(lead.nvars())
            }
            None => false,
        }
    }

    /// Numeric coefficients after substituting a point for the entry variables.
    pub fn eval_coeffs(&self, point: &[Rational]) -> Vec<Rational> {
        self.coeffs.iter().map(|p| p.eval(point)).collect()
    }
}

pub fn char_poly_poly_entries(m: &PolyMatrix) -> Result<CharPoly, ExactError> {
    if m.rows() != m.cols() {
        return Err(ExactError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let k = m.nvars();
    let x = MultiPoly::var(k + 1, k);
    let ext = m.extend_vars(1);
    let mut shifted = PolyMatrix::zeros(n, n, k + 1);
    for i in 0..n {
        for j in 0..n {
            let neg = -ext.get(i, j);
            shifted.set(i, j, if i == j { &x + &neg } else { neg });
        }
    }
    let det = shifted.determinant()?;
    let mut coeffs = det.collect_in(k);
    coeffs.resize(n + 1, MultiPoly::zero(k));
    Ok(CharPoly { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, RatMatrix};
    use proptest::prelude::*;

    fn z(i: usize) -> MultiPoly {
        MultiPoly::var(2, i)
    }

    #[test]
    fn char_poly_examples() {
        let zero = PolyMatrix::zeros(2, 2, 2);
        let cp = char_poly_poly_entries(&zero).unwrap();
        assert!(cp.is_pure_power());
        assert_eq!(cp.degree(), 2);

        let mut diag = PolyMatrix::zeros(2, 2, 2);
        diag.set(0, 0, z(0));
        diag.set(1, 1, z(1));
        let cp = char_poly_poly_entries(&diag).unwrap();
        assert_eq!(cp.coeffs[2], MultiPoly::one(2));
        assert_eq!(cp.coeffs[1], -&(&z(0) + &z(1)));
        assert_eq!(cp.coeffs[0], &z(0) * &z(1));

        let mut nil = PolyMatrix::zeros(2, 2, 2);
        nil.set(0, 1, z(0));
        assert!(char_poly_poly_entries(&nil).unwrap().is_pure_power());

        let rect = PolyMatrix::zeros(2, 3, 2);
        assert!(matches!(char_poly_poly_entries(&rect), Err(ExactError::NotSquare(2, 3))));
    }

    #[test]
    fn determinant_of_linear_pencil() {
        let a0 = RatMatrix::from_ints(&[&[1, 0], &[0, 0]]);
        let a1 = RatMatrix::zeros(2, 2);
        let id = RatMatrix::identity(2);
        let pencil = PolyMatrix::linear_combination(&[&a0, &a1, &id]).unwrap();
        let det = pencil.determinant().unwrap();
        let z0 = MultiPoly::var(3, 0);
        let z2 = MultiPoly::var(3, 2);
        assert_eq!(det, &(&z0 + &z2) * &z2);
    }

    #[test]
    fn collect_and_display() {
        let p = &(&z(0) * &z(0)) - &z(1).scale(&rat(3));
        assert_eq!(p.display_with(&["a", "b"]), "a^2 - 3*b");
        let parts = p.collect_in(0);
        assert_eq!(parts.len(), 3);
        assert!(parts[1].is_zero());
        assert_eq!(parts[2], MultiPoly::one(1));
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
        (
            proptest::collection::vec(-3i64..=3, n * n),
            proptest::collection::vec(-3i64..=3, n * n),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]
        #[test]
        fn char_poly_specializes((m0, m1) in small_matrix(3), s0 in -4i64..=4, s1 in -4i64..=4, x in -5i64..=5) {
            let to_mat = |v: &[i64]| {
                RatMatrix::new(3, 3, v.iter().map(|&k| rat(k)).collect()).unwrap()
            };
            let (a, b) = (to_mat(&m0), to_mat(&m1));
            let pencil = PolyMatrix::linear_combination(&[&a, &b]).unwrap();
            let cp = char_poly_poly_entries(&pencil).unwrap();
            let point = [rat(s0), rat(s1)];
            let numeric = &a.scale(&rat(s0)) + &b.scale(&rat(s1));
            let direct = (&RatMatrix::scalar(3, &rat(x)) - &numeric).determinant().unwrap();
            let via_symbolic = cp
                .eval_coeffs(&point)
                .iter()
                .rev()
                .fold(Rational::zero(), |acc, c| acc * rat(x) + c);
            prop_assert_eq!(direct, via_symbolic);
        }
    }
}

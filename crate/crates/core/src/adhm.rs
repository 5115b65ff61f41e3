//! ADHM data on P³: equations, gauge action, monads, stability and P_E.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{
    rat, ratio, twisted_euler_cubic, ExactError, JsonRational, LinFormMatrix, MultiPoly, PolyMatrix, RatMatrix,
    Rational, UniPoly,
};

#[derive(Debug, Error)]
pub enum AdhmError {
    #[error("malformed ADHM JSON at `{path}`: {message}")]
    Parse { path: String, message: String },
    #[error("ADHM schema error: {0}")]
    Schema(String),
    #[error("gauge element is singular")]
    SingularGauge,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The eight matrices of an ADHM datum with `dim V = c`, `dim W = r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdhmDatum {
    pub c: usize,
    pub r: usize,
    pub a0: RatMatrix,
    pub a1: RatMatrix,
    pub b0: RatMatrix,
    pub b1: RatMatrix,
    pub i0: RatMatrix,
    pub i1: RatMatrix,
    pub j0: RatMatrix,
    pub j1: RatMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AdhmJson {
    c: usize,
    r: usize,
    #[serde(rename = "A0")]
    a0: Vec<Vec<JsonRational>>,
    #[serde(rename = "A1")]
    a1: Vec<Vec<JsonRational>>,
    #[serde(rename = "B0")]
    b0: Vec<Vec<JsonRational>>,
    #[serde(rename = "B1")]
    b1: Vec<Vec<JsonRational>>,
    #[serde(rename = "I0")]
    i0: Vec<Vec<JsonRational>>,
    #[serde(rename = "I1")]
    i1: Vec<Vec<JsonRational>>,
    #[serde(rename = "J0")]
    j0: Vec<Vec<JsonRational>>,
    #[serde(rename = "J1")]
    j1: Vec<Vec<JsonRational>>,
}

impl AdhmDatum {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        c: usize,
        r: usize,
        a0: RatMatrix,
        a1: RatMatrix,
        b0: RatMatrix,
        b1: RatMatrix,
        i0: RatMatrix,
        i1: RatMatrix,
        j0: RatMatrix,
        j1: RatMatrix,
    ) -> Result<Self, AdhmError> {
        let x = Self { c, r, a0, a1, b0, b1, i0, i1, j0, j1 };
        x.validate_shapes()?;
        Ok(x)
    }

    pub fn zero(c: usize, r: usize) -> Self {
        let sq = RatMatrix::zeros(c, c);
        Self {
            c,
            r,
            a0: sq.clone(),
            a1: sq.clone(),
            b0: sq.clone(),
            b1: sq,
            i0: RatMatrix::zeros(c, r),
            i1: RatMatrix::zeros(c, r),
            j0: RatMatrix::zeros(r, c),
            j1: RatMatrix::zeros(r, c),
        }
    }

    fn validate_shapes(&self) -> Result<(), AdhmError> {
        if self.c == 0 || self.r == 0 {
            return Err(AdhmError::Schema(format!("c and r must be positive (c={}, r={})", self.c, self.r)));
        }
        let (c, r) = (self.c, self.r);
        let expected = [
            ("A0", &self.a0, (c, c)),
            ("A1", &self.a1, (c, c)),
            ("B0", &self.b0, (c, c)),
            ("B1", &self.b1, (c, c)),
            ("I0", &self.i0, (c, r)),
            ("I1", &self.i1, (c, r)),
            ("J0", &self.j0, (r, c)),
            ("J1", &self.j1, (r, c)),
        ];
        for (name, m, shape) in expected {
            if m.shape() != shape {
                return Err(AdhmError::Schema(format!(
                    "{name} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    shape.0,
                    shape.1
                )));
            }
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self, AdhmError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: AdhmJson = serde_path_to_error::deserialize(de).map_err(|e| AdhmError::Parse {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        let conv = |name: &str, rows: Vec<Vec<JsonRational>>, cols: usize| {
            RatMatrix::from_json_rows(rows, cols).map_err(|e| AdhmError::Schema(format!("{name}: {e}")))
        };
        let (c, r) = (raw.c, raw.r);
        Self::new(
            c,
            r,
            conv("A0", raw.a0, c)?,
            conv("A1", raw.a1, c)?,
            conv("B0", raw.b0, c)?,
            conv("B1", raw.b1, c)?,
            conv("I0", raw.i0, r)?,
            conv("I1", raw.i1, r)?,
            conv("J0", raw.j0, c)?,
            conv("J1", raw.j1, c)?,
        )
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = AdhmJson {
            c: self.c,
            r: self.r,
            a0: self.a0.to_json_rows(),
            a1: self.a1.to_json_rows(),
            b0: self.b0.to_json_rows(),
            b1: self.b1.to_json_rows(),
            i0: self.i0.to_json_rows(),
            i1: self.i1.to_json_rows(),
            j0: self.j0.to_json_rows(),
            j1: self.j1.to_json_rows(),
        };
        serde_json::to_value(raw).expect("ADHM data always serialize")
    }

    /// The four endomorphisms A₀, A₁, B₀, B₁.
    pub fn endomorphisms(&self) -> [&RatMatrix; 4] {
        [&self.a0, &self.a1, &self.b0, &self.b1]
    }

    pub fn j_is_zero(&self) -> bool {
        self.j0.is_zero() && self.j1.is_zero()
    }
}

impl fmt::Display for AdhmDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ADHM datum c={} r={}", self.c, self.r)?;
        let named = [
            ("A0", &self.a0),
            ("A1", &self.a1),
            ("B0", &self.b0),
            ("B1", &self.b1),
            ("I0", &self.i0),
            ("I1", &self.i1),
            ("J0", &self.j0),
            ("J1", &self.j1),
        ];
        for (name, m) in named {
            writeln!(f, "{name} =\n{m}")?;
        }
        Ok(())
    }
}

/// Which of the three ADHM equations fail (numbered 1..=3).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationsVerdict {
    pub violations: Vec<u8>,
}

impl EquationsVerdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Left-hand sides of the three equations.
pub fn equation_residuals(x: &AdhmDatum) -> [RatMatrix; 3] {
    let e1 = &x.a0.commutator(&x.b0) + &(&x.i0 * &x.j0);
    let e2 = &x.a1.commutator(&x.b1) + &(&x.i1 * &x.j1);
    let e3 = &(&x.a0.commutator(&x.b1) + &x.b0.commutator(&x.a1)) + &(&(&x.i0 * &x.j1) + &(&x.i1 * &x.j0));
    [e1, e2, e3]
}

pub fn check_equations(x: &AdhmDatum) -> EquationsVerdict {
    let violations = equation_residuals(x)
        .iter()
        .zip(1u8..)
        .filter(|(m, _)| !m.is_zero())
        .map(|(_, k)| k)
        .collect();
    EquationsVerdict { violations }
}

/// An invertible element of GL(V), stored with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeElement {
    g: RatMatrix,
    g_inv: RatMatrix,
}

impl GaugeElement {
    pub fn new(g: RatMatrix) -> Result<Self, AdhmError> {
        let g_inv = g.inverse().ok_or(AdhmError::SingularGauge)?;
        Ok(Self { g, g_inv })
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.g
    }

    pub fn inverse_matrix(&self) -> &RatMatrix {
        &self.g_inv
    }

    pub fn inverse(&self) -> Self {
        Self { g: self.g_inv.clone(), g_inv: self.g.clone() }
    }
}

/// `(gAg⁻¹, gBg⁻¹, gI, Jg⁻¹)`.
pub fn apply_gauge(x: &AdhmDatum, g: &GaugeElement) -> Result<AdhmDatum, AdhmError> {
    if g.g.shape() != (x.c, x.c) {
        return Err(AdhmError::Schema(format!(
            "gauge element is {}x{}, datum has c={}",
            g.g.rows(),
            g.g.cols(),
            x.c
        )));
    }
    let conj = |m: &RatMatrix| &(&g.g * m) * &g.g_inv;
    Ok(AdhmDatum {
        c: x.c,
        r: x.r,
        a0: conj(&x.a0),
        a1: conj(&x.a1),
        b0: conj(&x.b0),
        b1: conj(&x.b1),
        i0: &g.g * &x.i0,
        i1: &g.g * &x.i1,
        j0: &x.j0 * &g.g_inv,
        j1: &x.j1 * &g.g_inv,
    })
}

/// The monad maps `α: O(−1)^c → O^{2c+r}` and `β: O^{2c+r} → O(1)^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadPair {
    pub alpha: LinFormMatrix,
    pub beta: LinFormMatrix,
}

pub fn build_monad(x: &AdhmDatum) -> MonadPair {
    let c = x.c;
    let id = RatMatrix::identity(c);
    let lin = |rows, cols, coeffs| LinFormMatrix::from_coefficients(rows, cols, coeffs).expect("datum shapes are valid");
    let a = lin(c, c, [Some(&x.a0), Some(&x.a1), Some(&id), None]);
    let b = lin(c, c, [Some(&x.b0), Some(&x.b1), None, Some(&id)]);
    let j = lin(x.r, c, [Some(&x.j0), Some(&x.j1), None, None]);
    let i = lin(c, x.r, [Some(&x.i0), Some(&x.i1), None, None]);
    let alpha = LinFormMatrix::vstack(&[&a, &b, &j]).expect("column counts agree");
    let beta = LinFormMatrix::hstack(&[&b.negate(), &a, &i]).expect("row counts agree");
    MonadPair { alpha, beta }
}

/// `β∘α` as a c×c matrix of quadratic forms.
pub fn monad_composite(m: &MonadPair) -> PolyMatrix {
    m.beta.product(&m.alpha).expect("monad blocks are compatible")
}

pub fn complex_condition(m: &MonadPair) -> bool {
    monad_composite(m).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityClosure {
    pub stable: bool,
    pub closure_dim: usize,
}

fn span_basis(vectors: Vec<Vec<Rational>>, dim: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    RatMatrix::from_columns(&vectors, dim).column_space()
}

/// Smallest subspace containing `Im I₀ + Im I₁` and invariant under A₀, A₁, B₀, B₁.
pub fn stability_closure(x: &AdhmDatum) -> StabilityClosure {
    let mut gens: Vec<Vec<Rational>> = (0..x.r).flat_map(|j| [x.i0.column(j), x.i1.column(j)]).collect();
    let mut basis = span_basis(gens.clone(), x.c);
    loop {
        for v in &basis {
            for m in x.endomorphisms() {
                gens.push(m.mul_vec(v));
            }
        }
        let next = span_basis(gens.clone(), x.c);
        if next.len() == basis.len() {
            break;
        }
        basis = next;
    }
    StabilityClosure { stable: basis.len() == x.c, closure_dim: basis.len() }
}

/// Outcome of the search for a destabilizing line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "line", rename_all = "snake_case")]
pub enum WeakStability {
    WeaklyStable,
    DestabilizingLine(Vec<JsonRational>),
    Indeterminate,
}

impl WeakStability {
    /// Coarse label, equal for every destabilizing line.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::WeaklyStable => "weakly_stable",
            Self::DestabilizingLine(_) => "destabilizing_line",
            Self::Indeterminate => "indeterminate",
        }
    }
}

fn is_invariant_line(v: &[Rational], mats: &[&RatMatrix]) -> bool {
    let line = RatMatrix::from_columns(&[v.to_vec()], v.len());
    mats.iter().all(|m| {
        let w = m.mul_vec(v);
        line.hstack(&RatMatrix::from_columns(&[w], v.len())).expect("same length").rank() == 1
    })
}

fn line_verdict(v: Vec<Rational>) -> WeakStability {
    WeakStability::DestabilizingLine(v.into_iter().map(JsonRational).collect())
}

/// Search for a line S ⊊ V with A₀S, A₁S, B₀S, B₁S ⊆ S and Im I₀ + Im I₁ ⊆ S.
pub fn weak_stability(x: &AdhmDatum) -> WeakStability {
    if x.c == 1 {
        return WeakStability::WeaklyStable;
    }
    let mats = x.endomorphisms();
    let image = span_basis((0..x.r).flat_map(|j| [x.i0.column(j), x.i1.column(j)]).collect(), x.c);
    match image.len() {
        0 => common_eigenvector(&mats, x.c),
        1 => {
            if is_invariant_line(&image[0], &mats) {
                line_verdict(image[0].clone())
            } else {
                WeakStability::WeaklyStable
            }
        }
        _ => WeakStability::WeaklyStable,
    }
}

/// Rational eigenvalue candidates of `m`, and whether its characteristic polynomial splits over ℚ.
fn eigen_data(m: &RatMatrix) -> (Vec<Rational>, bool) {
    let cp = m.char_poly().expect("square");
    match cp.rational_roots() {
        Some(roots) => {
            let total: usize = roots.iter().map(|(_, k)| k).sum();
            (roots.into_iter().map(|(r, _)| r).collect(), Some(total) == cp.degree())
        }
        None => (Vec::new(), false),
    }
}

fn for_each_tuple(sizes: &[usize], mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if sizes.contains(&0) {
        return false;
    }
    let mut tuple = vec![0usize; sizes.len()];
    loop {
        if f(&tuple) {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == tuple.len() {
                return false;
            }
            tuple[pos] += 1;
            if tuple[pos] < sizes[pos] {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// Kernel of the stacked matrices `M_k − λ_k·Id`.
fn joint_eigenspace(mats: &[&RatMatrix], lambdas: &[&Rational], c: usize) -> Vec<Vec<Rational>> {
    let rows: Vec<Vec<Rational>> = mats
        .iter()
        .zip(lambdas)
        .flat_map(|(m, l)| (*m - &RatMatrix::scalar(c, l)).to_rows())
        .collect();
    if rows.is_empty() {
        return (0..c).map(|i| RatMatrix::identity(c).column(i)).collect();
    }
    RatMatrix::from_rows(rows, c).expect("uniform width").kernel()
}

/// Common eigenvector search. Matrices whose characteristic polynomial splits
/// over ℚ are handled exactly; the rest can only be probed at rational roots.
fn common_eigenvector(mats: &[&RatMatrix], c: usize) -> WeakStability {
    let data: Vec<(Vec<Rational>, bool)> = mats.iter().map(|m| eigen_data(m)).collect();
    let split: Vec<usize> = (0..mats.len()).filter(|&k| data[k].1).collect();
    let rest: Vec<usize> = (0..mats.len()).filter(|&k| !data[k].1).collect();
    let split_mats: Vec<&RatMatrix> = split.iter().map(|&k| mats[k]).collect();
    let split_sizes: Vec<usize> = split.iter().map(|&k| data[k].0.len()).collect();
    let rest_mats: Vec<&RatMatrix> = rest.iter().map(|&k| mats[k]).collect();
    let rest_sizes: Vec<usize> = rest.iter().map(|&k| data[k].0.len()).collect();
    let mut found: Option<Vec<Rational>> = None;
    let mut undecided = false;
    for_each_tuple(&split_sizes, |t| {
        let lambdas: Vec<&Rational> = split.iter().zip(t).map(|(&k, &i)| &data[k].0[i]).collect();
        let space = joint_eigenspace(&split_mats, &lambdas, c);
        if space.is_empty() {
            return false;
        }
        if rest.is_empty() {
            found = Some(space[0].clone());
            return true;
        }
        let hit = for_each_tuple(&rest_sizes, |u| {
            let mut all_mats = split_mats.clone();
            all_mats.extend(&rest_mats);
            let mut all_l = lambdas.clone();
            all_l.extend(rest.iter().zip(u).map(|(&k, &i)| &data[k].0[i]));
            if let Some(v) = joint_eigenspace(&all_mats, &all_l, c).into_iter().next() {
                found = Some(v);
                return true;
            }
            false
        });
        if !hit {
            undecided = true;
        }
        hit
    });
    match found {
        Some(v) => line_verdict(v),
        None if undecided || split.is_empty() => WeakStability::Indeterminate,
        None => WeakStability::WeaklyStable,
    }
}

/// `P_E(m) = (2c+r)χ(O(m)) − cχ(O(m−1)) − cχ(O(m+1))`.
pub fn hilbert_poly_e(c: u32, r: u32) -> UniPoly {
    let c_r = rat(i64::from(c));
    let mid = twisted_euler_cubic(0).scale(&rat(2 * i64::from(c) + i64::from(r)));
    let left = twisted_euler_cubic(-1).scale(&c_r);
    let right = twisted_euler_cubic(1).scale(&c_r);
    &(&mid - &left) - &right
}

/// `m³/3 + 2m² + (11/3 − c)m + (2 − 2c)`, the rank-2 closed form.
pub fn hilbert_poly_e_rank2_closed(c: u32) -> UniPoly {
    let c = i64::from(c);
    UniPoly::new(vec![rat(2 - 2 * c), ratio(11, 3) - rat(c), rat(2), ratio(1, 3)])
}

/// `det(A₀z₀ + A₁z₁ + z₂·Id)` and `det(B₀z₀ + B₁z₁ + z₃·Id)` in z₀..z₃.
pub fn singular_pencil_dets(x: &AdhmDatum) -> (MultiPoly, MultiPoly) {
    let id = RatMatrix::identity(x.c);
    let zero = RatMatrix::zeros(x.c, x.c);
    let a = PolyMatrix::linear_combination(&[&x.a0, &x.a1, &id, &zero]).expect("square blocks");
    let b = PolyMatrix::linear_combination(&[&x.b0, &x.b1, &zero, &id]).expect("square blocks");
    (a.determinant().expect("square"), b.determinant().expect("square"))
}

/// `z_k^c` as a polynomial in z₀..z₃.
pub fn pure_power(k: usize, c: usize) -> MultiPoly {
    let mut e = vec![0u32; 4];
    e[k] = c as u32;
    MultiPoly::monomial(e, Rational::one())
}

/// Component of a vector, used by callers that only need to know the support.
pub fn support(v: &[Rational]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn violating_c1() -> AdhmDatum {
        let mut x = AdhmDatum::zero(1, 1);
        x.i0 = RatMatrix::from_ints(&[&[1]]);
        x.j0 = RatMatrix::from_ints(&[&[1]]);
        x
    }

    #[test]
    fn equations_examples() {
        assert!(check_equations(&AdhmDatum::zero(3, 2)).is_ok());
        let mut x = AdhmDatum::zero(1, 2);
        x.i0 = RatMatrix::from_ints(&[&[3, -1]]);
        x.i1 = RatMatrix::from_ints(&[&[2, 5]]);
        assert!(check_equations(&x).is_ok());
        assert_eq!(check_equations(&violating_c1()).violations, vec![1]);
    }

    #[test]
    fn gauge_examples() {
        let mut x = AdhmDatum::zero(2, 1);
        x.a0 = RatMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        x.i0 = RatMatrix::from_ints(&[&[1], &[1]]);
        x.j1 = RatMatrix::from_ints(&[&[2, 6]]);
        let id = GaugeElement::new(RatMatrix::identity(2)).unwrap();
        assert_eq!(apply_gauge(&x, &id).unwrap(), x);
        let two = GaugeElement::new(RatMatrix::scalar(2, &rat(2))).unwrap();
        let y = apply_gauge(&x, &two).unwrap();
        assert_eq!(y.a0, x.a0);
        assert_eq!(y.i0, x.i0.scale(&rat(2)));
        assert_eq!(y.j1, x.j1.scale(&ratio(1, 2)));
        assert!(matches!(GaugeElement::new(RatMatrix::zeros(2, 2)), Err(AdhmError::SingularGauge)));
    }

    #[test]
    fn monad_examples() {
        let m = build_monad(&AdhmDatum::zero(1, 2));
        assert_eq!((m.alpha.rows(), m.alpha.cols()), (4, 1));
        assert_eq!((m.beta.rows(), m.beta.cols()), (1, 4));
        assert_eq!(m.alpha.coefficient(2), RatMatrix::from_ints(&[&[1], &[0], &[0], &[0]]));
        assert_eq!(m.alpha.coefficient(3), RatMatrix::from_ints(&[&[0], &[1], &[0], &[0]]));
        assert_eq!(m.beta.coefficient(3), RatMatrix::from_ints(&[&[-1, 0, 0, 0]]));
        assert_eq!(m.beta.coefficient(2), RatMatrix::from_ints(&[&[0, 1, 0, 0]]));
        assert!(complex_condition(&m));

        let bad = build_monad(&violating_c1());
        let prod = monad_composite(&bad);
        assert!(!complex_condition(&bad));
        // β∘α = [A,B] + IJ in the z₀² coefficient
        assert_eq!(prod.get(0, 0).coeff(&[2, 0, 0, 0]), rat(1));
        assert!(prod.get(0, 0).is_homogeneous_of_degree(2));
    }

    #[test]
    fn closure_examples() {
        let mut x = AdhmDatum::zero(1, 1);
        x.i0 = RatMatrix::from_ints(&[&[1]]);
        assert_eq!(stability_closure(&x), StabilityClosure { stable: true, closure_dim: 1 });
        let y = AdhmDatum::zero(2, 1);
        assert_eq!(stability_closure(&y), StabilityClosure { stable: false, closure_dim: 0 });
        let mut z = AdhmDatum::zero(2, 1);
        z.i0 = RatMatrix::from_ints(&[&[1], &[0]]);
        z.a0 = RatMatrix::from_ints(&[&[0, 0], &[1, 0]]);
        assert_eq!(stability_closure(&z), StabilityClosure { stable: true, closure_dim: 2 });
    }

    #[test]
    fn weak_stability_examples() {
        assert_eq!(weak_stability(&AdhmDatum::zero(1, 1)), WeakStability::WeaklyStable);
        let mut x = AdhmDatum::zero(2, 2);
        x.i0 = RatMatrix::identity(2);
        assert_eq!(weak_stability(&x), WeakStability::WeaklyStable);
        let mut y = AdhmDatum::zero(2, 1);
        y.a0 = RatMatrix::diagonal(&[rat(1), rat(2)]);
        match weak_stability(&y) {
            WeakStability::DestabilizingLine(v) => {
                let v: Vec<Rational> = v.into_iter().map(|q| q.0).collect();
                assert_eq!(support(&v).len(), 1);
            }
            other => panic!("expected a line, got {other:?}"),
        }
        // rotation by 90 degrees has no rational eigenvector
        let mut w = AdhmDatum::zero(2, 1);
        w.a0 = RatMatrix::from_ints(&[&[0, -1], &[1, 0]]);
        assert_eq!(weak_stability(&w), WeakStability::Indeterminate);
        // two diagonalizable matrices with no common eigenvector
        let mut u = AdhmDatum::zero(2, 1);
        u.a0 = RatMatrix::diagonal(&[rat(1), rat(2)]);
        u.b0 = RatMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(weak_stability(&u), WeakStability::WeaklyStable);
        // image is a line that A₀ does not preserve
        let mut s = AdhmDatum::zero(2, 1);
        s.i0 = RatMatrix::from_ints(&[&[1], &[0]]);
        s.a0 = RatMatrix::from_ints(&[&[0, 0], &[1, 0]]);
        assert_eq!(weak_stability(&s), WeakStability::WeaklyStable);
        s.a0 = RatMatrix::zeros(2, 2);
        assert_eq!(weak_stability(&s).kind(), "destabilizing_line");
    }

    #[test]
    fn hilbert_poly_examples() {
        assert_eq!(hilbert_poly_e(1, 2).eval_int(0), rat(0));
        assert_eq!(hilbert_poly_e(0, 2), twisted_euler_cubic(0).scale(&rat(2)));
        assert_eq!(hilbert_poly_e(3, 2).eval_int(1), rat(-1));
        for c in 0..=10 {
            assert_eq!(hilbert_poly_e(c, 2), hilbert_poly_e_rank2_closed(c));
            assert_eq!(hilbert_poly_e(c, 2).eval_int(-1), -rat(i64::from(c)));
        }
    }

    #[test]
    fn pencil_dets() {
        let (a, b) = singular_pencil_dets(&AdhmDatum::zero(2, 1));
        assert_eq!(a, pure_power(2, 2));
        assert_eq!(b, pure_power(3, 2));
        let mut x = AdhmDatum::zero(2, 1);
        x.a0 = RatMatrix::diagonal(&[rat(1), rat(0)]);
        let z0 = MultiPoly::var(4, 0);
        let z2 = MultiPoly::var(4, 2);
        assert_eq!(singular_pencil_dets(&x).0, &(&z0 + &z2) * &z2);
    }

    #[test]
    fn json_round_trip_and_errors() {
        let text = r#"{"c":1,"r":1,"A0":[[0]],"A1":[[0]],"B0":[["1/2"]],"B1":[[0]],
            "I0":[[1]],"I1":[[0]],"J0":[[1]],"J1":[[0]]}"#;
        let x = AdhmDatum::from_json_str(text).unwrap();
        assert_eq!(x.b0.get(0, 0), &ratio(1, 2));
        let back = AdhmDatum::from_json_str(&x.to_json_value().to_string()).unwrap();
        assert_eq!(back, x);

        let bad = text.replace("[[\"1/2\"]]", "[[0.5]]");
        match AdhmDatum::from_json_str(&bad) {
            Err(AdhmError::Parse { path, .. }) => assert_eq!(path, "B0[0][0]"),
            other => panic!("unexpected {other:?}"),
        }
        let wrong = text.replace(r#""I0":[[1]]"#, r#""I0":[[1,2]]"#);
        assert!(matches!(AdhmDatum::from_json_str(&wrong), Err(AdhmError::Schema(_))));
    }
}

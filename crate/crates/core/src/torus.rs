//! The lifted torus action on ADHM data and fixed-point detection.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adhm::{singular_pencil_dets, pure_power, AdhmDatum, GaugeElement};
use crate::exact::{char_poly_poly_entries, rat, ratio, ExactError, MultiPoly, PolyMatrix, RatMatrix, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TorusError {
    #[error("torus entries must be nonzero")]
    ZeroEntry,
    #[error("framing torus has {got} entries, datum has r={expected}")]
    FramingSize { got: usize, expected: usize },
}

/// `(t₁, t₂, t₃)` together with the framing torus `e = diag(e₁, …, e_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusElement {
    t1: Rational,
    t2: Rational,
    t3: Rational,
    e: Vec<Rational>,
}

impl TorusElement {
    pub fn new(t1: Rational, t2: Rational, t3: Rational, e: Vec<Rational>) -> Result<Self, TorusError> {
        if [&t1, &t2, &t3].into_iter().chain(&e).any(Zero::is_zero) {
            return Err(TorusError::ZeroEntry);
        }
        Ok(Self { t1, t2, t3, e })
    }

    pub fn identity(r: usize) -> Self {
        Self { t1: rat(1), t2: rat(1), t3: rat(1), e: vec![rat(1); r] }
    }

    pub fn t(&self) -> [&Rational; 3] {
        [&self.t1, &self.t2, &self.t3]
    }

    pub fn e(&self) -> &[Rational] {
        &self.e
    }

    /// Componentwise product.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.e.len(), other.e.len(), "framing sizes differ");
        Self {
            t1: &self.t1 * &other.t1,
            t2: &self.t2 * &other.t2,
            t3: &self.t3 * &other.t3,
            e: self.e.iter().zip(&other.e).map(|(a, b)| a * b).collect(),
        }
    }

    /// Scalars by which A₀, A₁, B₀, B₁ are multiplied.
    fn endo_weights(&self) -> [Rational; 4] {
        let inv1 = self.t1.recip();
        [self.t2.clone(), &inv1 * &self.t2, self.t3.clone(), &inv1 * &self.t3]
    }

    fn e_diag(&self) -> RatMatrix {
        RatMatrix::diagonal(&self.e)
    }

    fn e_inv_diag(&self) -> RatMatrix {
        RatMatrix::diagonal(&self.e.iter().map(Rational::recip).collect::<Vec<_>>())
    }
}

fn check_framing(x: &AdhmDatum, tau: &TorusElement) -> Result<(), TorusError> {
    if tau.e.len() != x.r {
        return Err(TorusError::FramingSize { got: tau.e.len(), expected: x.r });
    }
    Ok(())
}

/// `(t₂A₀, t₁⁻¹t₂A₁, t₃B₀, t₁⁻¹t₃B₁, t₂I₀e⁻¹, t₁⁻¹t₂I₁e⁻¹, t₃eJ₀, t₁⁻¹t₃eJ₁)`.
pub fn act(x: &AdhmDatum, tau: &TorusElement) -> Result<AdhmDatum, TorusError> {
    check_framing(x, tau)?;
    let [wa0, wa1, wb0, wb1] = tau.endo_weights();
    let (e, e_inv) = (tau.e_diag(), tau.e_inv_diag());
    Ok(AdhmDatum {
        c: x.c,
        r: x.r,
        a0: x.a0.scale(&wa0),
        a1: x.a1.scale(&wa1),
        b0: x.b0.scale(&wb0),
        b1: x.b1.scale(&wb1),
        i0: (&x.i0 * &e_inv).scale(&wa0),
        i1: (&x.i1 * &e_inv).scale(&wa1),
        j0: (&e * &x.j0).scale(&wb0),
        j1: (&e * &x.j1).scale(&wb1),
    })
}

/// An invertible `g` with `act(X, τ) = g·X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeWitness {
    pub g: RatMatrix,
}

/// Linear system `L·vec(g) = rhs` whose solutions are the intertwiners for `(X, τ)`.
fn witness_system(x: &AdhmDatum, tau: &TorusElement) -> (RatMatrix, Vec<Rational>) {
    let c = x.c;
    let n = c * c;
    let idx = |i: usize, k: usize| i * c + k;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let weights = tau.endo_weights();
    // g·M − s·M·g = 0
    for (m, s) in x.endomorphisms().into_iter().zip(&weights) {
        if m.is_zero() {
            continue;
        }
        for i in 0..c {
            for j in 0..c {
                let mut row = vec![Rational::zero(); n];
                for k in 0..c {
                    row[idx(i, k)] += m.get(k, j);
                    row[idx(k, j)] -= s * m.get(i, k);
                }
                rows.push(row);
                rhs.push(Rational::zero());
            }
        }
    }
    // g·I = s·I·e⁻¹
    let e_inv = tau.e_inv_diag();
    for (i_mat, s) in [(&x.i0, &weights[0]), (&x.i1, &weights[1])] {
        if i_mat.is_zero() {
            continue;
        }
        let target = (i_mat * &e_inv).scale(s);
        for i in 0..c {
            for j in 0..x.r {
                let mut row = vec![Rational::zero(); n];
                for k in 0..c {
                    row[idx(i, k)] += i_mat.get(k, j);
                }
                rows.push(row);
                rhs.push(target.get(i, j).clone());
            }
        }
    }
    // (s·e·J)·g = J
    let e = tau.e_diag();
    for (j_mat, s) in [(&x.j0, &weights[2]), (&x.j1, &weights[3])] {
        if j_mat.is_zero() {
            continue;
        }
        let left = (&e * j_mat).scale(s);
        for i in 0..x.r {
            for j in 0..c {
                let mut row = vec![Rational::zero(); n];
                for k in 0..c {
                    row[idx(k, j)] += left.get(i, k);
                }
                rows.push(row);
                rhs.push(j_mat.get(i, j).clone());
            }
        }
    }
    (RatMatrix::from_rows(rows, n).expect("uniform width"), rhs)
}

fn vec_to_matrix(v: &[Rational], c: usize) -> RatMatrix {
    RatMatrix::new(c, c, v.to_vec()).expect("c*c entries")
}

const WITNESS_DRAWS: usize = 50;
const WITNESS_SEED: u64 = 0x005e_ed0f_7a11;

/// Searches the affine solution space of the intertwining equations for an invertible element.
pub fn gauge_witness(x: &AdhmDatum, tau: &TorusElement) -> Result<Option<GaugeWitness>, TorusError> {
    check_framing(x, tau)?;
    let c = x.c;
    let (system, rhs) = witness_system(x, tau);
    let (particular, kernel) = if system.rows() == 0 {
        (vec![Rational::zero(); c * c], (0..c * c).map(|i| RatMatrix::identity(c * c).column(i)).collect())
    } else {
        match system.solve(&rhs) {
            Some(p) => (p, system.kernel()),
            None => return Ok(None),
        }
    };
    let combine = |coeffs: &[Rational]| {
        let mut v = particular.clone();
        for (k, a) in kernel.iter().zip(coeffs) {
            for (slot, kv) in v.iter_mut().zip(k) {
                *slot += a * kv;
            }
        }
        vec_to_matrix(&v, c)
    };
    let accept = |g: RatMatrix| -> Option<GaugeWitness> {
        g.inverse().map(|_| GaugeWitness { g })
    };
    if kernel.is_empty() {
        return Ok(accept(vec_to_matrix(&particular, c)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED);
    for _ in 0..WITNESS_DRAWS {
        let coeffs: Vec<Rational> = kernel.iter().map(|_| rat(rng.gen_range(-6..=6))).collect();
        if let Some(w) = accept(combine(&coeffs)) {
            return Ok(Some(w));
        }
    }
    Ok(symbolic_witness(&particular, &kernel, c).map(|g| GaugeWitness { g }))
}

/// Determinant of `p + Σ yᵢkᵢ` as a polynomial in the yᵢ; when it is not
/// identically zero, a nonvanishing point exists on the grid `{0..=c}^k`.
fn symbolic_witness(particular: &[Rational], kernel: &[Vec<Rational>], c: usize) -> Option<RatMatrix> {
    let nk = kernel.len();
    let entries: Vec<MultiPoly> = (0..c * c)
        .map(|e| {
            let mut p = MultiPoly::constant(nk, particular[e].clone());
            for (i, k) in kernel.iter().enumerate() {
                p = &p + &MultiPoly::var(nk, i).scale(&k[e]);
            }
            p
        })
        .collect();
    let generic = PolyMatrix::from_entries(c, c, nk, entries).ok()?;
    let det = generic.determinant().ok()?;
    if det.is_zero() {
        return None;
    }
    let mut point = vec![0i64; nk];
    loop {
        let q: Vec<Rational> = point.iter().map(|&v| rat(v)).collect();
        if !det.eval(&q).is_zero() {
            return Some(generic.eval(&q));
        }
        let mut pos = 0;
        loop {
            if pos == nk {
                return None;
            }
            point[pos] += 1;
            if point[pos] <= c as i64 {
                break;
            }
            point[pos] = 0;
            pos += 1;
        }
    }
}

/// True iff `M₀z₀ + M₁z₁` has characteristic polynomial `x^c` identically.
pub fn pencil_nilpotent(m0: &RatMatrix, m1: &RatMatrix) -> Result<bool, ExactError> {
    if !m0.is_square() || m0.shape() != m1.shape() {
        return Err(ExactError::Shape(format!(
            "pencil of {}x{} and {}x{}",
            m0.rows(),
            m0.cols(),
            m1.rows(),
            m1.cols()
        )));
    }
    let pencil = PolyMatrix::linear_combination(&[m0, m1])?;
    Ok(char_poly_poly_entries(&pencil)?.is_pure_power())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedVerdict {
    pub failures: Vec<String>,
}

impl FixedVerdict {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Necessary conditions for a torus-fixed class: J = 0, reduced commutator
/// equations, and nilpotent A- and B-pencils.
pub fn is_fixed_candidate(x: &AdhmDatum) -> FixedVerdict {
    let mut failures = Vec::new();
    if !x.j_is_zero() {
        failures.push("J nonzero".to_string());
    }
    if !x.a0.commutator(&x.b0).is_zero() {
        failures.push("[A0,B0] nonzero".to_string());
    }
    if !x.a1.commutator(&x.b1).is_zero() {
        failures.push("[A1,B1] nonzero".to_string());
    }
    if !(&x.a0.commutator(&x.b1) + &x.b0.commutator(&x.a1)).is_zero() {
        failures.push("[A0,B1]+[B0,A1] nonzero".to_string());
    }
    if !pencil_nilpotent(&x.a0, &x.a1).expect("square blocks") {
        failures.push("A-pencil not nilpotent".to_string());
    }
    if !pencil_nilpotent(&x.b0, &x.b1).expect("square blocks") {
        failures.push("B-pencil not nilpotent".to_string());
    }
    FixedVerdict { failures }
}

/// True iff `J_a·A_b^l·B_d^m·I_e = 0` for all index choices and `l + m ≤ bound`.
pub fn check_sandwich(x: &AdhmDatum, bound: u32) -> bool {
    if x.j_is_zero() || (x.i0.is_zero() && x.i1.is_zero()) {
        return true;
    }
    for j in [&x.j0, &x.j1] {
        for a in [&x.a0, &x.a1] {
            for b in [&x.b0, &x.b1] {
                for i in [&x.i0, &x.i1] {
                    for l in 0..=bound {
                        let ja = j * &a.pow(l);
                        for m in 0..=bound - l {
                            if !(&(&ja * &b.pow(m)) * i).is_zero() {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Sample points for the one-parameter generators.
pub fn generator_samples() -> Vec<Rational> {
    vec![rat(2), rat(3), rat(-2), ratio(1, 2), ratio(5, 3)]
}

/// `(t, 1, 1)`, `(1, t, 1)`, `(1, 1, t)` for generator index 0, 1, 2.
pub fn generator_element(generator: usize, t: &Rational, e: Vec<Rational>) -> TorusElement {
    let mut ts = [rat(1), rat(1), rat(1)];
    ts[generator] = t.clone();
    let [t1, t2, t3] = ts;
    TorusElement::new(t1, t2, t3, e).expect("sample values are nonzero")
}

/// Framing choices tried for a sample `t`: each `e_i ∈ {1, t, t⁻¹}`.
pub fn framing_choices(t: &Rational, r: usize) -> Vec<Vec<Rational>> {
    let options = [Rational::one(), t.clone(), t.recip()];
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// Per-generator result of witness sampling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSampling {
    pub generator: usize,
    pub samples: usize,
    pub witnessed: usize,
}

/// Witness search on the three one-parameter generators, five samples each.
pub fn sample_generator_witnesses(x: &AdhmDatum) -> Vec<GeneratorSampling> {
    (0..3)
        .map(|generator| {
            let samples = generator_samples();
            let witnessed = samples
                .iter()
                .filter(|t| {
                    framing_choices(t, x.r).into_iter().any(|e| {
                        let tau = generator_element(generator, t, e);
                        matches!(gauge_witness(x, &tau), Ok(Some(_)))
                    })
                })
                .count();
            GeneratorSampling { generator, samples: samples.len(), witnessed }
        })
        .collect()
}

/// True when every generator sample admits a witness.
pub fn is_sampled_fixed(x: &AdhmDatum) -> bool {
    sample_generator_witnesses(x).iter().all(|s| s.witnessed == s.samples)
}

/// Nilpotent pencils force both pencil determinants to be pure powers.
pub fn pencil_dets_are_pure_powers(x: &AdhmDatum) -> bool {
    let (a, b) = singular_pencil_dets(x);
    a == pure_power(2, x.c) && b == pure_power(3, x.c)
}

/// `act(X, τ) = g·X` for the witness `g`.
pub fn witness_is_sound(x: &AdhmDatum, tau: &TorusElement, w: &GaugeWitness) -> bool {
    let Ok(g) = GaugeElement::new(w.g.clone()) else {
        return false;
    };
    match (act(x, tau), crate::adhm::apply_gauge(x, &g)) {
        (Ok(lhs), Ok(rhs)) => lhs == rhs,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adhm::check_equations;

    fn jordan2() -> RatMatrix {
        RatMatrix::from_ints(&[&[0, 0], &[1, 0]])
    }

    #[test]
    fn action_examples() {
        let mut x = AdhmDatum::zero(2, 2);
        x.a0 = jordan2();
        x.i1 = RatMatrix::from_ints(&[&[1, 2], &[0, 1]]);
        x.j0 = RatMatrix::from_ints(&[&[1, 1], &[0, 3]]);
        assert_eq!(act(&x, &TorusElement::identity(2)).unwrap(), x);
        let tau = TorusElement::new(rat(2), rat(3), ratio(1, 5), vec![rat(7), rat(-1)]).unwrap();
        assert_eq!(act(&AdhmDatum::zero(2, 2), &tau).unwrap(), AdhmDatum::zero(2, 2));
        assert!(matches!(
            TorusElement::new(rat(0), rat(1), rat(1), vec![rat(1)]),
            Err(TorusError::ZeroEntry)
        ));
        assert!(act(&x, &TorusElement::identity(1)).is_err());
    }

    #[test]
    fn group_law() {
        let mut x = AdhmDatum::zero(2, 1);
        x.a0 = jordan2();
        x.b1 = RatMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        x.i0 = RatMatrix::from_ints(&[&[1], &[5]]);
        x.j1 = RatMatrix::from_ints(&[&[2, -1]]);
        let s = TorusElement::new(rat(2), ratio(1, 3), rat(-4), vec![rat(5)]).unwrap();
        let t = TorusElement::new(ratio(-3, 7), rat(6), rat(2), vec![ratio(1, 2)]).unwrap();
        let lhs = act(&act(&x, &s).unwrap(), &t).unwrap();
        assert_eq!(lhs, act(&x, &s.compose(&t)).unwrap());
    }

    #[test]
    fn witness_examples() {
        let mut x = AdhmDatum::zero(2, 1);
        x.a0 = jordan2();
        x.i0 = RatMatrix::from_ints(&[&[1], &[0]]);
        let id = TorusElement::identity(1);
        let w = gauge_witness(&x, &id).unwrap().unwrap();
        assert!(witness_is_sound(&x, &id, &w));

        let tau = TorusElement::new(rat(2), rat(3), rat(5), vec![rat(1)]).unwrap();
        let w = gauge_witness(&AdhmDatum::zero(2, 1), &tau).unwrap().unwrap();
        assert!(witness_is_sound(&AdhmDatum::zero(2, 1), &tau, &w));

        let mut y = AdhmDatum::zero(1, 2);
        y.i0 = RatMatrix::from_ints(&[&[1, 0]]);
        let t2 = rat(3);
        let tau = TorusElement::new(rat(2), t2.clone(), rat(7), vec![t2, rat(1)]).unwrap();
        let w = gauge_witness(&y, &tau).unwrap().unwrap();
        assert_eq!(w.g, RatMatrix::identity(1));

        // a datum whose A₀ has eigenvalue 1 cannot be conjugate to 2·A₀
        let mut z = AdhmDatum::zero(1, 1);
        z.a0 = RatMatrix::identity(1);
        z.i0 = RatMatrix::identity(1);
        let tau = generator_element(1, &rat(2), vec![rat(1)]);
        assert_eq!(gauge_witness(&z, &tau).unwrap(), None);
    }

    #[test]
    fn box_datum_is_sampled_fixed() {
        let mut x = AdhmDatum::zero(2, 2);
        x.a0 = jordan2();
        x.i0 = RatMatrix::from_ints(&[&[1, 0], &[0, 0]]);
        assert!(check_equations(&x).is_ok());
        assert!(is_sampled_fixed(&x));
        assert!(is_fixed_candidate(&x).is_ok());
        assert!(pencil_dets_are_pure_powers(&x));
    }

    #[test]
    fn fixed_candidate_examples() {
        assert!(is_fixed_candidate(&AdhmDatum::zero(3, 2)).is_ok());
        let mut x = AdhmDatum::zero(2, 1);
        x.a0 = jordan2();
        assert!(is_fixed_candidate(&x).is_ok());
        x.j0 = RatMatrix::from_ints(&[&[1, 0]]);
        assert!(is_fixed_candidate(&x).failures.contains(&"J nonzero".to_string()));
    }

    #[test]
    fn pencil_examples() {
        let z = RatMatrix::zeros(2, 2);
        assert!(pencil_nilpotent(&z, &z).unwrap());
        assert!(pencil_nilpotent(&jordan2(), &jordan2()).unwrap());
        let up = RatMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert!(!pencil_nilpotent(&jordan2(), &up).unwrap());
        assert!(pencil_nilpotent(&z, &RatMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn sandwich_examples() {
        let mut x = AdhmDatum::zero(1, 1);
        x.i0 = RatMatrix::identity(1);
        assert!(check_sandwich(&x, 3));
        x.j0 = RatMatrix::identity(1);
        assert!(!check_sandwich(&x, 0));
    }

    #[test]
    fn framing_enumeration() {
        assert_eq!(framing_choices(&rat(2), 2).len(), 9);
        assert_eq!(framing_choices(&rat(2), 0), vec![Vec::<Rational>::new()]);
    }
}

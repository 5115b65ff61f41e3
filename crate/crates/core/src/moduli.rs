//! Partition counts, Euler pairings on P³, and the charge-1 Poincaré polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::exact::{rat, twisted_euler_cubic, JsonRational, Rational};
use crate::filtration::solve;
use crate::young::Partition;

/// Largest charge for which the two partition counts are cross-checked.
pub const PARTITION_CHECK_MAX: u32 = 50;

/// `p(c)` by recursion over the largest part.
pub fn partition_count_enumeration(c: u32) -> u128 {
    let mut memo = vec![vec![None; c as usize + 1]; c as usize + 1];
    fn go(n: usize, k: usize, memo: &mut [Vec<Option<u128>>]) -> u128 {
        if n == 0 {
            return 1;
        }
        let k = k.min(n);
        if let Some(v) = memo[n][k] {
            return v;
        }
        let v = (1..=k).map(|part| go(n - part, part, memo)).sum();
        memo[n][k] = Some(v);
        v
    }
    go(c as usize, c as usize, &mut memo)
}

/// `p(c)` as the `x^c` coefficient of `Π_{k ≤ c} 1/(1 − x^k)`.
pub fn partition_count_euler(c: u32) -> u128 {
    let n = c as usize;
    let mut series = vec![0u128; n + 1];
    series[0] = 1;
    for k in 1..=n {
        for i in k..=n {
            series[i] += series[i - k];
        }
    }
    series[n]
}

/// Both methods, which must agree.
pub fn partition_count(c: u32) -> u128 {
    let a = partition_count_enumeration(c);
    let b = partition_count_euler(c);
    assert_eq!(a, b, "partition counts disagree at c={c}");
    a
}

/// Lower bound on the number of components of the fixed locus: one per diagram.
pub fn component_lower_bound(c: u32) -> u128 {
    partition_count(c)
}

/// Sum of solver case counts over the charge-3 diagrams.
pub fn refined_component_count_c3() -> usize {
    Partition::all(3)
        .iter()
        .map(|nu| solve(nu).solved().map_or(0, |r| r.cases.len()))
        .sum()
}

/// `r + c1 H + c2 H² + c3 H³` in `A*(P³)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ChowClass {
    pub r: Rational,
    pub c1: Rational,
    pub c2: Rational,
    pub c3: Rational,
}

impl ChowClass {
    pub fn new(r: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        Self { r, c1, c2, c3 }
    }

    pub fn from_ints(r: i64, c1: i64, c2: i64, c3: i64) -> Self {
        Self::new(rat(r), rat(c1), rat(c2), rat(c3))
    }

    fn components(&self) -> [&Rational; 4] {
        [&self.r, &self.c1, &self.c2, &self.c3]
    }

    fn from_components(c: [Rational; 4]) -> Self {
        let [r, c1, c2, c3] = c;
        Self { r, c1, c2, c3 }
    }

    pub fn todd_p3() -> Self {
        Self::new(rat(1), rat(2), Rational::new(11.into(), 6.into()), rat(1))
    }

    /// `ch(O(m)) = e^{mH}`.
    pub fn ch_line_bundle(m: i64) -> Self {
        let m = rat(m);
        Self::new(
            rat(1),
            m.clone(),
            &m * &m / rat(2),
            &m * &m * &m / rat(6),
        )
    }

    pub fn dual(&self) -> Self {
        Self::new(self.r.clone(), -&self.c1, self.c2.clone(), -&self.c3)
    }

    /// Coefficient of `H³`.
    pub fn degree3(&self) -> Rational {
        self.c3.clone()
    }

    /// `χ(P³, ·)` by Hirzebruch–Riemann–Roch.
    pub fn euler_characteristic(&self) -> Rational {
        (self * &Self::todd_p3()).degree3()
    }

    pub fn to_json(&self) -> [JsonRational; 4] {
        self.components().map(|c| JsonRational(c.clone()))
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components().iter().map(|c| crate::exact::format_rational(c)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for ChowClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChowClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b, c, e] = <[JsonRational; 4]>::deserialize(d)?;
        Ok(Self::new(a.0, b.0, c.0, e.0))
    }
}

impl Add for &ChowClass {
    type Output = ChowClass;

    fn add(self, rhs: &ChowClass) -> ChowClass {
        ChowClass::new(&self.r + &rhs.r, &self.c1 + &rhs.c1, &self.c2 + &rhs.c2, &self.c3 + &rhs.c3)
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;

    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self + &(-rhs)
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;

    fn neg(self) -> ChowClass {
        ChowClass::new(-&self.r, -&self.c1, -&self.c2, -&self.c3)
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;

    fn mul(self, rhs: &ChowClass) -> ChowClass {
        let a = self.components();
        let b = rhs.components();
        let mut out: [Rational; 4] = Default::default();
        for i in 0..4 {
            for j in 0..4 - i {
                out[i + j] += a[i] * b[j];
            }
        }
        ChowClass::from_components(out)
    }
}

/// Chern character of `O_{l₀}(d)` pushed forward to P³.
///
/// The `H³` coefficient is fixed by requiring `χ(O_{l₀}(d) ⊗ O(m)) = m + d + 1`.
pub fn ch_line_sheaf(d: i64) -> ChowClass {
    let trial = ChowClass::from_ints(0, 0, 1, 0);
    // χ is affine in the H³ coefficient with slope r(td) = 1
    let offset = trial.euler_characteristic();
    let c3 = rat(d + 1) - offset;
    ChowClass::new(rat(0), rat(0), rat(1), c3)
}

/// `χ(E, F) = ∫ E^∨ · F · td(P³)`.
pub fn euler_pairing(e: &ChowClass, f: &ChowClass) -> Rational {
    (&(&e.dual() * f) * &ChowClass::todd_p3()).degree3()
}

/// `χ(O_{P³}(k))`.
pub fn chi_line_bundle(k: i64) -> Rational {
    twisted_euler_cubic(k).eval_int(0)
}

/// The Euler pairings attached to the charge-1 stable pair `O → O_{l₀}(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingDemo {
    pub ch_q: ChowClass,
    pub ch_ideal_complex: ChowClass,
    pub chi_q_q: JsonRational,
    pub chi_ideal_q: JsonRational,
    pub chi_o_o: JsonRational,
}

pub fn pairing_demo() -> PairingDemo {
    let q = ch_line_sheaf(1);
    let o = ChowClass::ch_line_bundle(0);
    let ideal = &o - &q;
    PairingDemo {
        chi_q_q: JsonRational(euler_pairing(&q, &q)),
        chi_ideal_q: JsonRational(euler_pairing(&ideal, &q)),
        chi_o_o: JsonRational(euler_pairing(&o, &o)),
        ch_q: q,
        ch_ideal_complex: ideal,
    }
}

/// Integer polynomial in `t`, ascending coefficients, trailing zeros stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// Quotient by `d` when the division is exact over ℤ.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        let lead = *d.coeffs.last()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return rem.iter().all(|&c| c == 0).then(IntPoly::default);
        }
        let mut q = vec![0i64; rem.len() - dd];
        for k in (0..q.len()).rev() {
            let top = rem[k + dd];
            if top % lead != 0 {
                return None;
            }
            let f = top / lead;
            q[k] = f;
            for (i, &c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= f * c;
            }
        }
        rem.iter().all(|&c| c == 0).then(|| IntPoly::new(q))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = crate::exact::UniPoly::from_ints(&self.coeffs);
        f.write_str(&r.display_in("t"))
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return IntPoly::default();
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

/// `1 + t³`.
pub fn poincare_sl2() -> IntPoly {
    IntPoly::new(vec![1, 0, 0, 1])
}

/// `1 + t² + … + t¹⁰`, the Poincaré polynomial of P⁵.
pub fn poincare_p5() -> IntPoly {
    IntPoly::new((0..=10).map(|i| i64::from(i % 2 == 0)).collect())
}

pub fn poincare_poly_c1() -> IntPoly {
    &poincare_p5() * &poincare_sl2()
}

/// Coefficients `1 − δ_{1,i} − δ_{12,i}` for `i = 0..=13`.
pub fn poincare_delta_formula() -> IntPoly {
    IntPoly::new((0..=13).map(|i| i64::from(i != 1 && i != 12)).collect())
}

pub fn euler_char_vanishing(p: &IntPoly) -> bool {
    p.eval(-1) == 0
}

/// `χ(E, F)` for line bundles, by HRR.
pub fn line_bundle_pairing(a: i64, b: i64) -> Rational {
    euler_pairing(&ChowClass::ch_line_bundle(a), &ChowClass::ch_line_bundle(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn count_with_max_part(n: u32, max_part: u32) -> u128 {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n)).map(|k| count_with_max_part(n - k, k)).sum()
    }

    #[test]
    fn partition_counts() {
        let known = [1u128, 1, 2, 3, 5, 7, 11];
        for (c, &p) in known.iter().enumerate() {
            assert_eq!(partition_count(c as u32), p);
            assert_eq!(count_with_max_part(c as u32, c as u32), p);
        }
        assert_eq!(partition_count(10), 42);
        for c in 0..=PARTITION_CHECK_MAX {
            assert_eq!(partition_count_enumeration(c), partition_count_euler(c));
        }
        assert_eq!(partition_count(50), 204_226);
        for c in 1..=8 {
            assert_eq!(Partition::all(c).len() as u128, partition_count(c));
        }
    }

    #[test]
    fn component_counts() {
        assert_eq!(component_lower_bound(1), 1);
        assert_eq!(component_lower_bound(2), 2);
        assert_eq!(component_lower_bound(3), 3);
        assert_eq!(refined_component_count_c3(), 7);
    }

    #[test]
    fn line_sheaf_contract() {
        for d in -3..=3 {
            let ch = ch_line_sheaf(d);
            assert_eq!(ch.c3, rat(d - 1));
            for m in -3..=3 {
                let twisted = &ch * &ChowClass::ch_line_bundle(m);
                assert_eq!(twisted.euler_characteristic(), rat(m + d + 1));
            }
        }
        assert_eq!((&ch_line_sheaf(0) * &ChowClass::ch_line_bundle(-1)).euler_characteristic(), rat(0));
    }

    #[test]
    fn pairing_values() {
        let demo = pairing_demo();
        assert_eq!(demo.chi_ideal_q.0, rat(2));
        assert_eq!(demo.chi_o_o.0, rat(1));
        // a sheaf supported on a curve has zero self-pairing on a threefold
        assert_eq!(demo.chi_q_q.0, rat(0));
    }

    #[test]
    fn line_bundle_pairings() {
        for a in -3..=3 {
            for b in -3..=3 {
                assert_eq!(line_bundle_pairing(a, b), chi_line_bundle(b - a));
            }
        }
    }

    #[test]
    fn poincare() {
        let p = poincare_poly_c1();
        assert_eq!(p, poincare_delta_formula());
        assert_eq!(p.degree(), Some(13));
        assert_eq!((p.coeff(0), p.coeff(1), p.coeff(12)), (1, 0, 0));
        assert!(euler_char_vanishing(&p));
        assert!(euler_char_vanishing(&poincare_sl2()));
        assert!(!euler_char_vanishing(&IntPoly::new(vec![1, 0, 1])));
        assert_eq!(p.div_exact(&poincare_sl2()), Some(poincare_p5()));
        assert_eq!(p.div_exact(&IntPoly::new(vec![2, 1])), None);
        assert_eq!(p.to_string(), "t^13 + t^11 + t^10 + t^9 + t^8 + t^7 + t^6 + t^5 + t^4 + t^3 + t^2 + 1");
    }

    fn small_class() -> impl Strategy<Value = ChowClass> {
        prop::array::uniform4(-5i64..=5).prop_map(|[a, b, c, d]| ChowClass::from_ints(a, b, c, d))
    }

    proptest! {
        #[test]
        fn pairing_is_biadditive(e in small_class(), f in small_class(), g in small_class()) {
            prop_assert_eq!(euler_pairing(&(&e + &f), &g), euler_pairing(&e, &g) + euler_pairing(&f, &g));
            prop_assert_eq!(euler_pairing(&g, &(&e + &f)), euler_pairing(&g, &e) + euler_pairing(&g, &f));
        }

        #[test]
        fn symmetrised_pairing_sees_only_even_parts(e in small_class(), f in small_class()) {
            let even = |c: &ChowClass| ChowClass::new(c.r.clone(), rat(0), c.c2.clone(), rat(0));
            let odd = |c: &ChowClass| ChowClass::new(rat(0), c.c1.clone(), rat(0), c.c3.clone());
            let sym = |a: &ChowClass, b: &ChowClass| euler_pairing(a, b) + euler_pairing(b, a);
            // E^∨F + F^∨E is invariant under flipping the sign of both odd parts
            let flip = |c: &ChowClass| &even(c) - &odd(c);
            prop_assert_eq!(sym(&e, &f), sym(&flip(&e), &flip(&f)));
        }
    }
}

//! Dense univariate polynomials with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{binomial, format_rational, rat, JsonRational, Rational};

/// Polynomial in one formal variable, coefficients in ascending degree.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial has
/// an empty coefficient list and structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `m`.
    pub fn var() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&rat(x))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `p(m + k)` as a polynomial in `m`.
    pub fn shift(&self, k: i64) -> Self {
        let k = rat(k);
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (n, c) in self.coeffs.iter().enumerate() {
            // (m + k)^n = Σ binom(n, j) k^(n-j) m^j
            let mut kp = Rational::one();
            let mut powers = Vec::with_capacity(n + 1);
            for _ in 0..=n {
                powers.push(kp.clone());
                kp *= &k;
            }
            for (j, slot) in out.iter_mut().enumerate().take(n + 1) {
                *slot += c * binomial(n as i64, j as i64) * &powers[n - j];
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder of division by `x − root`.
    pub fn deflate(&self, root: &Rational) -> (Self, Rational) {
        let Some(deg) = self.degree() else {
            return (Self::zero(), Rational::zero());
        };
        if deg == 0 {
            return (Self::zero(), self.coeffs[0].clone());
        }
        let mut q = vec![Rational::zero(); deg];
        let mut carry = Rational::zero();
        for k in (0..=deg).rev() {
            let v = &self.coeffs[k] + &carry * root;
            if k == 0 {
                return (Self::new(q), v);
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Rational roots with multiplicities, by the rational root theorem.
    ///
    /// Returns `None` if the coefficients are too large for divisor enumeration.
    pub fn rational_roots(&self) -> Option<Vec<(Rational, usize)>> {
        let mut p = self.clone();
        let mut out = Vec::new();
        let mut zero_mult = 0;
        while p.degree().is_some_and(|d| d > 0) && p.coeffs[0].is_zero() {
            p = Self::new(p.coeffs[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            out.push((Rational::zero(), zero_mult));
        }
        if p.degree().is_none_or(|d| d == 0) {
            return Some(out);
        }
        let lcm = p
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let ints: Vec<BigInt> = p.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let a0 = ints[0].abs().to_u64().filter(|&v| v <= 1_000_000_000_000)?;
        let an = ints.last().unwrap().abs().to_u64().filter(|&v| v <= 1_000_000_000_000)?;
        let mut candidates = Vec::new();
        for num in divisors(a0) {
            for den in divisors(an) {
                for sign in [1i64, -1] {
                    candidates.push(Rational::new(BigInt::from(num) * sign, BigInt::from(den)));
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        for cand in candidates {
            let mut mult = 0;
            loop {
                let (q, rem) = p.deflate(&cand);
                if !rem.is_zero() || p.degree() == Some(0) {
                    break;
                }
                p = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((cand, mult));
            }
        }
        out.sort();
        Some(out)
    }

    /// True iff the polynomial is a product of linear factors over ℚ.
    pub fn splits_over_q(&self) -> Option<bool> {
        let roots = self.rational_roots()?;
        let total: usize = roots.iter().map(|(_, m)| m).sum();
        Some(Some(total) == self.degree())
    }

    pub fn to_json(&self) -> Vec<JsonRational> {
        self.coeffs.iter().cloned().map(JsonRational).collect()
    }

    pub fn from_json(coeffs: Vec<JsonRational>) -> Self {
        Self::new(coeffs.into_iter().map(|c| c.0).collect())
    }

    /// Human-readable form in the given variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}{}", format_rational(&mag), mono));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("m"))
    }
}

impl Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vec::<JsonRational>::deserialize(d).map(Self::from_json)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// `χ(O_{P³}(m + k)) = (m+k+1)(m+k+2)(m+k+3)/6` as a cubic in `m`.
pub fn twisted_euler_cubic(k: i64) -> UniPoly {
    let factor = |a: i64| UniPoly::new(vec![rat(k + a), Rational::one()]);
    let p = &(&factor(1) * &factor(2)) * &factor(3);
    p.scale(&Rational::new(1.into(), 6.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;

    #[test]
    fn twisted_cubic_values() {
        assert_eq!(twisted_euler_cubic(0).eval_int(0), rat(1));
        assert_eq!(twisted_euler_cubic(-1).eval_int(0), rat(0));
        assert_eq!(twisted_euler_cubic(1).eval_int(0), rat(4));
        // count of degree-m monomials in four variables
        for m in 0..8 {
            assert_eq!(twisted_euler_cubic(0).eval_int(m), binomial(m + 3, 3));
        }
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = UniPoly::new(vec![ratio(1, 3), rat(-2), rat(0), ratio(5, 2)]);
        let q = p.shift(-3);
        for x in -4..5 {
            assert_eq!(q.eval_int(x), p.eval_int(x - 3));
        }
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (x − 1/2)(x + 3)² x
        let p = &(&UniPoly::new(vec![ratio(-1, 2), rat(1)]) * &UniPoly::from_ints(&[9, 6, 1]))
            * &UniPoly::var();
        let roots = p.rational_roots().unwrap();
        assert_eq!(roots, vec![(rat(-3), 2), (rat(0), 1), (ratio(1, 2), 1)]);
        assert_eq!(p.splits_over_q(), Some(true));
        assert_eq!(UniPoly::from_ints(&[-2, 0, 1]).splits_over_q(), Some(false));
        let (q, r) = UniPoly::from_ints(&[-1, 0, 1]).deflate(&rat(1));
        assert_eq!((q, r), (UniPoly::from_ints(&[1, 1]), rat(0)));
    }

    #[test]
    fn normalisation_and_display() {
        let p = UniPoly::from_ints(&[1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(UniPoly::from_ints(&[0, 0]).degree(), None);
        assert_eq!(UniPoly::from_ints(&[-6, 8]).to_string(), "8m - 6");
        assert_eq!(UniPoly::from_ints(&[2, -1, 1]).display_in("t"), "t^2 - t + 2");
    }
}

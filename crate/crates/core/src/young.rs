//! Young diagrams and Cohen–Macaulay monomial ideals supported on the line l₀ = {z₂ = z₃ = 0}.
//!
//! A box `(a, b)` stands for the monomial `z₂^a z₃^b` of the quotient basis, and
//! column `b` of a partition ν holds the boxes `(0, b), …, (ν_{b+1} − 1, b)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact::{binomial, rat, ratio, to_i64, twisted_euler_cubic, RatMatrix, Rational, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum YoungError {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(String),
    #[error("not a multiple-line ideal: {0}")]
    NotMultipleLine(String),
}

/// Weakly decreasing positive parts `ν₁ ≥ ν₂ ≥ … ≥ ν_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, YoungError> {
        let ok = !parts.is_empty() && parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(YoungError::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Self { parts })
    }

    /// `(1, 1, …, 1)` with `c` parts.
    pub fn column(c: u32) -> Self {
        Self { parts: vec![1; c as usize] }
    }

    /// `(c)`.
    pub fn row(c: u32) -> Self {
        Self { parts: vec![c] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn charge(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Single row or single column.
    pub fn is_primitive(&self) -> bool {
        self.parts.len() == 1 || self.parts.iter().all(|&p| p == 1)
    }

    pub fn transpose(&self) -> Self {
        let width = self.parts[0];
        let parts = (1..=width)
            .map(|h| self.parts.iter().filter(|&&p| p >= h).count() as u32)
            .collect();
        Self { parts }
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        self.parts.get(b as usize).is_some_and(|&h| a < h)
    }

    pub fn boxes(&self) -> Vec<DiagramBox> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(b, &h)| (0..h).map(move |a| DiagramBox { a, b: b as u32 }))
            .collect()
    }

    pub fn max_weight(&self) -> u32 {
        self.boxes().iter().map(DiagramBox::weight).max().unwrap_or(0)
    }

    pub fn weight_sum(&self) -> u64 {
        self.boxes().iter().map(|bx| u64::from(bx.weight())).sum()
    }

    /// All partitions of `c`, in descending lexicographic order.
    pub fn all(c: u32) -> Vec<Self> {
        fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                prefix.push(p);
                rec(rest - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if c > 0 {
            rec(c, c, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = YoungError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        match parts {
            Ok(parts) => Self::new(parts).map_err(|_| YoungError::InvalidPartition(s.to_string())),
            Err(_) => Err(YoungError::InvalidPartition(s.to_string())),
        }
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Box `(a, b)` ↔ `z₂^a z₃^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagramBox {
    pub a: u32,
    pub b: u32,
}

impl DiagramBox {
    pub fn weight(&self) -> u32 {
        self.a + self.b
    }
}

/// Monomial ideal in z₂, z₃ with minimal generators `z₂^a z₃^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    generators: Vec<(u32, u32)>,
    was_minimal: bool,
}

impl MonomialIdeal {
    /// Keeps only the minimal elements of `gens`; `was_minimal` records whether any were dropped.
    pub fn new(gens: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let all: BTreeSet<(u32, u32)> = gens.into_iter().collect();
        let minimal: Vec<(u32, u32)> = all
            .iter()
            .filter(|&&(a, b)| !all.iter().any(|&(a2, b2)| (a2, b2) != (a, b) && a2 <= a && b2 <= b))
            .copied()
            .collect();
        let was_minimal = minimal.len() == all.len();
        Self { generators: minimal, was_minimal }
    }

    /// Generators sorted by increasing z₂-exponent.
    pub fn generators(&self) -> &[(u32, u32)] {
        &self.generators
    }

    pub fn was_minimal(&self) -> bool {
        self.was_minimal
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        self.generators.iter().any(|&(ga, gb)| ga <= a && gb <= b)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono = |&(a, b): &(u32, u32)| {
            let part = |name: &str, k: u32| match k {
                0 => None,
                1 => Some(name.to_string()),
                _ => Some(format!("{name}^{k}")),
            };
            let factors: Vec<String> = [part("z2", a), part("z3", b)].into_iter().flatten().collect();
            if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("*")
            }
        };
        let gens: Vec<String> = self.generators.iter().rev().map(mono).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

pub fn partition_to_ideal(nu: &Partition) -> MonomialIdeal {
    // One generator per column end, plus z₃^k; non-minimal ones are pruned.
    let mut gens: Vec<(u32, u32)> = nu.parts().iter().enumerate().map(|(b, &h)| (h, b as u32)).collect();
    gens.push((0, nu.len() as u32));
    MonomialIdeal::new(gens)
}

pub fn ideal_to_partition(ideal: &MonomialIdeal) -> Result<Partition, YoungError> {
    let gens = ideal.generators();
    let z3_power = gens.iter().find(|g| g.0 == 0).map(|g| g.1);
    let z2_power = gens.iter().find(|g| g.1 == 0).map(|g| g.0);
    let (Some(b_max), Some(_)) = (z3_power, z2_power) else {
        return Err(YoungError::NotMultipleLine(format!("{ideal} has infinite colength")));
    };
    if b_max == 0 {
        return Err(YoungError::NotMultipleLine("unit ideal".into()));
    }
    let parts = (0..b_max)
        .map(|b| gens.iter().filter(|g| g.1 <= b).map(|g| g.0).min().expect("z2 power present"))
        .collect();
    Partition::new(parts).map_err(|e| YoungError::NotMultipleLine(e.to_string()))
}

/// Weights of minimal generators (inner boxes) and of first-syzygy corners (outer boxes).
pub fn inner_outer_boxes(nu: &Partition) -> (Vec<u32>, Vec<u32>) {
    let ideal = partition_to_ideal(nu);
    let mut inner: Vec<u32> = ideal.generators().iter().map(|&(a, b)| a + b).collect();
    let mut outer = Vec::new();
    let out = |a: i64, b: i64| a < 0 || b < 0 || !nu.contains(a as u32, b as u32);
    let bound = nu.parts()[0] + nu.len() as u32 + 1;
    for a in 1..=bound {
        for b in 1..=bound {
            let (ai, bi) = (i64::from(a), i64::from(b));
            if out(ai, bi) && out(ai - 1, bi) && out(ai, bi - 1) && !out(ai - 1, bi - 1) {
                outer.push(a + b);
            }
        }
    }
    inner.sort_unstable();
    outer.sort_unstable();
    (inner, outer)
}

/// `0 → ⊕ O(−n₂ⱼ) → ⊕ O(−n₁ᵢ) → I → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeResolution {
    pub inner_weights: Vec<u32>,
    pub outer_weights: Vec<u32>,
}

impl FreeResolution {
    /// `χ(I(m))` from the resolution.
    pub fn ideal_hilbert_poly(&self) -> UniPoly {
        let sum = |ws: &[u32]| {
            ws.iter()
                .fold(UniPoly::zero(), |acc, &w| &acc + &twisted_euler_cubic(-i64::from(w)))
        };
        &sum(&self.inner_weights) - &sum(&self.outer_weights)
    }

    /// `χ(O_C(m)) = χ(O(m)) − χ(I(m))`.
    pub fn structure_sheaf_hilbert_poly(&self) -> UniPoly {
        &twisted_euler_cubic(0) - &self.ideal_hilbert_poly()
    }
}

fn direct_sum(ws: &[u32]) -> String {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &w in ws {
        *counts.entry(w).or_default() += 1;
    }
    let terms: Vec<String> = counts
        .iter()
        .map(|(w, k)| if *k == 1 { format!("O(-{w})") } else { format!("O(-{w})^{k}") })
        .collect();
    terms.join(" + ")
}

impl fmt::Display for FreeResolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "0 -> {} -> {} -> I -> 0",
            direct_sum(&self.outer_weights),
            direct_sum(&self.inner_weights)
        )
    }
}

pub fn resolution(nu: &Partition) -> FreeResolution {
    let (inner_weights, outer_weights) = inner_outer_boxes(nu);
    FreeResolution { inner_weights, outer_weights }
}

/// `χ(O_C(m)) = cm + 3c − Σ νᵢ(νᵢ + 2i + 1)/2`.
pub fn hilbert_poly_closed(nu: &Partition) -> UniPoly {
    let c = i64::from(nu.charge());
    let correction = nu
        .parts()
        .iter()
        .zip(1i64..)
        .fold(Rational::zero(), |acc, (&p, i)| {
            let p = i64::from(p);
            acc + ratio(p * (p + 2 * i + 1), 2)
        });
    UniPoly::new(vec![rat(3 * c) - correction, rat(c)])
}

/// Number of degree-`m` monomials `z₀^p z₁^q z₂^a z₃^b` with `(a, b)` in the diagram.
pub fn hilbert_fn_oracle(nu: &Partition, m: u32) -> u64 {
    let mut count = 0;
    for a in 0..=m {
        for b in 0..=m - a {
            if !nu.contains(a, b) {
                continue;
            }
            for p in 0..=m - a - b {
                let q = m - a - b - p;
                debug_assert_eq!(p + q + a + b, m);
                count += 1;
            }
        }
    }
    count
}

fn pair_sum(big: &[u32], small: &[u32]) -> Rational {
    let mut acc = Rational::zero();
    for &x in big {
        for &y in small {
            if x >= y {
                acc += binomial(i64::from(x - y) + 3, 3);
            }
        }
    }
    acc
}

/// Dimension formula for the Hilbert scheme at the curve, from inner and outer weights.
pub fn hilbert_scheme_dim(nu: &Partition) -> i64 {
    let (n1, n2) = inner_outer_boxes(nu);
    let d = pair_sum(&n2, &n1) + pair_sum(&n1, &n2) - pair_sum(&n2, &n2) - pair_sum(&n1, &n1) + rat(1);
    to_i64(&d).expect("integer combination of binomials")
}

/// `l_Z = ½Σνᵢ² + Σ iνᵢ − c/2`.
pub fn quotient_length(nu: &Partition) -> u64 {
    let c = i64::from(nu.charge());
    let sum = nu.parts().iter().zip(1i64..).fold(Rational::zero(), |acc, (&p, i)| {
        let p = i64::from(p);
        acc + ratio(p * p, 2) + rat(i * p)
    });
    let l = sum - ratio(c, 2);
    let value = to_i64(&l).expect("quotient length is an integer");
    u64::try_from(value).expect("quotient length is nonnegative")
}

/// `χ_Q(m) = cm + 2c`.
pub fn quotient_sheaf_hilbert_poly(c: u32) -> UniPoly {
    UniPoly::from_ints(&[2 * i64::from(c), i64::from(c)])
}

/// `Y_i = Y ∩ {w ≤ i}` for `i = 0, …, max weight`.
pub fn infinitesimal_filtration(nu: &Partition) -> Vec<Partition> {
    (0..=nu.max_weight())
        .map(|i| {
            let parts = nu
                .parts()
                .iter()
                .enumerate()
                .map_while(|(b, &h)| {
                    let cap = i64::from(i) - b as i64 + 1;
                    (cap > 0).then(|| h.min(cap as u32))
                })
                .collect();
            Partition::new(parts).expect("truncation of a diagram is a diagram")
        })
        .collect()
}

/// Box weights in ascending order: the graded pieces `O_{l₀}(−w)` of the structure sheaf.
pub fn graded_weights(nu: &Partition) -> Vec<u32> {
    let mut ws: Vec<u32> = nu.boxes().iter().map(DiagramBox::weight).collect();
    ws.sort_unstable();
    ws
}

/// Brute-force `dim Hom_S(I, S/I)_0` with `S = ℚ[z₀, z₁, z₂, z₃]`.
///
/// Unknowns are the images of the minimal generators in the quotient basis;
/// the relations come from the pairwise lcm syzygies.
pub fn hom_degree0_oracle(nu: &Partition) -> usize {
    let gens = partition_to_ideal(nu).generators().to_vec();
    // (p, a, b) determines the monomial z₀^p z₁^q z₂^a z₃^b once the degree is fixed.
    let basis = |deg: u32| -> Vec<(u32, u32, u32)> {
        let mut out = Vec::new();
        for bx in nu.boxes() {
            if bx.weight() <= deg {
                for p in 0..=deg - bx.weight() {
                    out.push((p, bx.a, bx.b));
                }
            }
        }
        out
    };
    let mut offsets = Vec::new();
    let mut unknowns = 0;
    let bases: Vec<Vec<(u32, u32, u32)>> = gens.iter().map(|&(a, b)| basis(a + b)).collect();
    for bs in &bases {
        offsets.push(unknowns);
        unknowns += bs.len();
    }
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (gi, gj) = (gens[i], gens[j]);
            let l = (gi.0.max(gj.0), gi.1.max(gj.1));
            let target_deg = l.0 + l.1;
            let mut index: BTreeMap<(u32, u32, u32), usize> = BTreeMap::new();
            for t in basis(target_deg) {
                let k = index.len();
                index.insert(t, k);
            }
            let mut block = vec![vec![Rational::zero(); unknowns]; index.len()];
            for (g, sign, k) in [(gi, 1i64, i), (gj, -1i64, j)] {
                let shift = (l.0 - g.0, l.1 - g.1);
                for (col, &(p, a, b)) in bases[k].iter().enumerate() {
                    let image = (p, a + shift.0, b + shift.1);
                    if let Some(&row) = index.get(&image) {
                        block[row][offsets[k] + col] += rat(sign);
                    }
                }
            }
            rows.extend(block);
        }
    }
    if rows.is_empty() {
        return unknowns;
    }
    unknowns - RatMatrix::from_rows(rows, unknowns).expect("uniform width").rank()
}

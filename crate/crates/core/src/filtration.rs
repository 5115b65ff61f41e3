//! Canonical-filtration data for rank-0 instanton sheaves on monomial multiple lines.
//!
//! A candidate is a list of levels `Q_i/Q_{i+1}`, outermost (`Q|_{l₀}`) first and
//! innermost last, each recorded as a [`LineSheafClass`] on `l₀ ≅ P¹`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{rat, Rational, UniPoly};
use crate::young::{graded_weights, hilbert_poly_closed, Partition};

/// Line bundle `O_{l₀}(d)` plus a torsion sheaf of length `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineSheafClass {
    pub d: i64,
    pub t: u64,
}

impl LineSheafClass {
    pub fn new(d: i64, t: u64) -> Self {
        Self { d, t }
    }

    /// `χ(F(m)) = m + d + 1 + t`.
    pub fn hilbert_poly(&self) -> UniPoly {
        UniPoly::from_ints(&[self.d + 1 + self.t as i64, 1])
    }

    pub fn chi(&self, twist: i64) -> i64 {
        self.d + twist + 1 + self.t as i64
    }
}

impl fmt::Display for LineSheafClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(d={},t={})", self.d, self.t)
    }
}

/// `(h⁰, h¹)` of a level twisted by `O(twist)`.
pub fn line_cohomology(s: LineSheafClass, twist: i64) -> (u64, u64) {
    let e = s.d + twist + 1;
    (e.max(0) as u64 + s.t, (-e).max(0) as u64)
}

/// Smallest cohomology compatible with `0 → A → F → B → 0`, given `(h⁰, h¹)` of `A` and `B`.
fn extension_min(sub: (u64, u64), quo: (u64, u64)) -> (u64, u64) {
    let (a0, a1) = (sub.0 as i64, sub.1 as i64);
    let (b0, b1) = (quo.0 as i64, quo.1 as i64);
    let h0 = a0.max(b0 + a0 - a1);
    let h1 = b1.max(b1 + a1 - b0);
    (h0 as u64, h1 as u64)
}

/// Cohomology bound for the sheaf filtered by `levels` (outermost first), built inward-out.
pub fn filtered_cohomology(levels: &[LineSheafClass], twist: i64) -> (u64, u64) {
    levels
        .iter()
        .rev()
        .map(|&l| line_cohomology(l, twist))
        .reduce(extension_min)
        .unwrap_or((0, 0))
}

/// Named constraints; indices are 1-based filtration levels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    /// `Σ χ(level(m)) = cm + 2c`.
    ChiTotal,
    /// The structure-sheaf level `O(g_i)` maps injectively into level `i`.
    LevelInjection(usize),
    /// `h⁰(Q_j(−2)) = 0`.
    CascadeA(usize),
    /// `h¹(Q|_{C_j}(−2)) = 0`.
    CascadeB(usize),
    /// `h⁰(Q(−2)) = h¹(Q(−2)) = 0`.
    Vanishing,
    /// `h¹(Q_{j+1}(−2)) = h⁰(Q|_{C_j}(−2))`.
    Connecting(usize),
    /// The innermost level is the next one twisted by `O(−1)`.
    CanonicalTwist,
    /// Restriction levels above the innermost have positive degree.
    RestrictionLevelsH1,
    /// If the inner levels are the twisted structure levels, the restriction is torsion free.
    TwistedStructureInheritance,
    /// `χ(Q₂/Q₃) = deg Q|_{l₀}` along the chosen filtration of the non-primitive triple line.
    RestrictionSequenceC2,
}

impl Constraint {
    /// Cohomological constraints, as opposed to structural ones.
    pub fn is_cascade(&self) -> bool {
        matches!(self, Self::CascadeA(_) | Self::CascadeB(_) | Self::Vanishing | Self::Connecting(_))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ChiTotal => f.write_str("ChiTotal"),
            Self::LevelInjection(i) => write!(f, "LevelInjection({i})"),
            Self::CascadeA(j) => write!(f, "CascadeA({j})"),
            Self::CascadeB(j) => write!(f, "CascadeB({j})"),
            Self::Vanishing => f.write_str("Vanishing"),
            Self::Connecting(j) => write!(f, "Connecting({j})"),
            Self::CanonicalTwist => f.write_str("CanonicalTwist"),
            Self::RestrictionLevelsH1 => f.write_str("RestrictionLevelsH1"),
            Self::TwistedStructureInheritance => f.write_str("TwistedStructureInheritance"),
            Self::RestrictionSequenceC2 => f.write_str("RestrictionSequenceC2"),
        }
    }
}

impl Serialize for Constraint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Constraint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let bad = || serde::de::Error::custom(format!("unknown constraint {text:?}"));
        let indexed = |prefix: &str| -> Option<usize> {
            text.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.parse().ok()
        };
        Ok(match text.as_str() {
            "ChiTotal" => Self::ChiTotal,
            "Vanishing" => Self::Vanishing,
            "CanonicalTwist" => Self::CanonicalTwist,
            "RestrictionLevelsH1" => Self::RestrictionLevelsH1,
            "TwistedStructureInheritance" => Self::TwistedStructureInheritance,
            "RestrictionSequenceC2" => Self::RestrictionSequenceC2,
            _ => {
                if let Some(i) = indexed("LevelInjection") {
                    Self::LevelInjection(i)
                } else if let Some(j) = indexed("CascadeA") {
                    Self::CascadeA(j)
                } else if let Some(j) = indexed("CascadeB") {
                    Self::CascadeB(j)
                } else if let Some(j) = indexed("Connecting") {
                    Self::Connecting(j)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

/// Whether a returned case is backed by a completeness argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseStatus {
    Proved,
    Candidate,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiltrationCase {
    pub support: Partition,
    pub levels: Vec<LineSheafClass>,
}

impl FiltrationCase {
    pub fn new(support: Partition, levels: Vec<LineSheafClass>) -> Self {
        Self { support, levels }
    }

    pub fn hilbert_poly(&self) -> UniPoly {
        self.levels.iter().fold(UniPoly::zero(), |acc, l| &acc + &l.hilbert_poly())
    }

    /// Levels `j..=c` (1-based), i.e. the subsheaf `Q_j`.
    pub fn inner(&self, j: usize) -> &[LineSheafClass] {
        &self.levels[j - 1..]
    }

    /// Levels `1..=j`, i.e. the restriction `Q|_{C_j}`.
    pub fn outer(&self, j: usize) -> &[LineSheafClass] {
        &self.levels[..j]
    }
}

impl fmt::Display for FiltrationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let levels: Vec<String> = self.levels.iter().map(ToString::to_string).collect();
        write!(f, "[{}] on {}", levels.join(", "), self.support)
    }
}

/// Which extra structural constraints apply to a support.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SupportKind {
    Primitive,
    NonPrimitiveTriple,
}

fn support_kind(nu: &Partition) -> Option<SupportKind> {
    if nu.is_primitive() {
        Some(SupportKind::Primitive)
    } else if nu.parts() == [2, 1] {
        Some(SupportKind::NonPrimitiveTriple)
    } else {
        None
    }
}

/// Degrees of `Gr(O_C)`: one `O_{l₀}(−w)` per box, by increasing weight.
pub fn gr_structure_sheaf(nu: &Partition) -> Vec<LineSheafClass> {
    graded_weights(nu)
        .into_iter()
        .map(|w| LineSheafClass::new(-i64::from(w), 0))
        .collect()
}

/// `O_{l₀} ⊕ O_{l₀}(−1) ⊕ … ⊕ O_{l₀}(−(c−1))`.
pub fn gr_structure_sheaf_primitive(c: u32) -> Vec<LineSheafClass> {
    (0..i64::from(c)).map(|i| LineSheafClass::new(-i, 0)).collect()
}

/// Violated constraints, empty when the case is admissible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionsVerdict {
    pub violations: Vec<Constraint>,
}

impl ConditionsVerdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates the cascade conditions and the support's structural constraints.
pub fn instanton_conditions(case: &FiltrationCase) -> ConditionsVerdict {
    let mut v = Vec::new();
    let levels = &case.levels;
    let c = case.support.charge() as usize;
    if levels.len() != c {
        v.push(Constraint::ChiTotal);
        return ConditionsVerdict { violations: v };
    }
    let total: i64 = levels.iter().map(|l| l.d + l.t as i64).sum();
    if total != c as i64 {
        v.push(Constraint::ChiTotal);
    }
    for (i, (l, g)) in levels.iter().zip(gr_structure_sheaf(&case.support)).enumerate() {
        if l.d < g.d {
            v.push(Constraint::LevelInjection(i + 1));
        }
    }
    for j in 2..=c {
        if filtered_cohomology(case.inner(j), -2).0 != 0 {
            v.push(Constraint::CascadeA(j));
        }
    }
    for j in 1..c {
        if filtered_cohomology(case.outer(j), -2).1 != 0 {
            v.push(Constraint::CascadeB(j));
        }
    }
    if filtered_cohomology(levels, -2) != (0, 0) {
        v.push(Constraint::Vanishing);
    }
    for j in 1..c {
        if filtered_cohomology(case.inner(j + 1), -2).1 != filtered_cohomology(case.outer(j), -2).0 {
            v.push(Constraint::Connecting(j));
        }
    }
    match support_kind(&case.support) {
        Some(SupportKind::Primitive) => {
            if c >= 2 && levels[c - 1].d != levels[c - 2].d - 1 {
                v.push(Constraint::CanonicalTwist);
            }
            if levels[..c - 1].iter().any(|l| l.d < 1) {
                v.push(Constraint::RestrictionLevelsH1);
            }
            if c >= 3 {
                let g = gr_structure_sheaf(&case.support);
                let inherits = levels[1..]
                    .iter()
                    .zip(&g[1..])
                    .all(|(l, s)| l.d == s.d + 2 && l.t == 0);
                if inherits && levels[0].t != 0 {
                    v.push(Constraint::TwistedStructureInheritance);
                }
            }
        }
        Some(SupportKind::NonPrimitiveTriple) => {
            if levels[2].d != levels[1].d - 1 {
                v.push(Constraint::CanonicalTwist);
            }
            if levels[1].chi(0) != levels[0].d {
                v.push(Constraint::RestrictionSequenceC2);
            }
        }
        None => {}
    }
    ConditionsVerdict { violations: v }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedCandidate {
    pub levels: Vec<LineSheafClass>,
    pub violations: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub support: Partition,
    pub status: CaseStatus,
    pub cases: Vec<FiltrationCase>,
    pub rejected: Vec<RejectedCandidate>,
    pub degree_bound: i64,
    pub torsion_bound: u64,
}

impl SolveResult {
    /// Rejection counts keyed by constraint name.
    pub fn rejection_histogram(&self) -> BTreeMap<String, usize> {
        let mut h = BTreeMap::new();
        for r in &self.rejected {
            for c in &r.violations {
                *h.entry(c.to_string()).or_default() += 1;
            }
        }
        h
    }

    /// Rejected candidates failing exactly one constraint.
    pub fn near_misses(&self) -> impl Iterator<Item = &RejectedCandidate> {
        self.rejected.iter().filter(|r| r.violations.len() == 1)
    }

    /// True when no returned case sits on the search bounds.
    pub fn bounds_not_binding(&self) -> bool {
        self.cases.iter().all(|case| {
            case.levels
                .iter()
                .all(|l| l.d.abs() < self.degree_bound && l.t < self.torsion_bound)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SolveOutcome {
    Solved(SolveResult),
    NotClassified { support: Partition, reason: String },
}

impl SolveOutcome {
    pub fn solved(&self) -> Option<&SolveResult> {
        match self {
            Self::Solved(r) => Some(r),
            Self::NotClassified { .. } => None,
        }
    }
}

/// Charges up to which the search is exhaustive over the full bounded grid.
pub const EXHAUSTIVE_MAX_CHARGE: u32 = 3;

/// Enumerates level data for `nu` and keeps the admissible ones.
///
/// Every candidate meets the χ total; the grid is `|d| ≤ 2c+2`, `0 ≤ t ≤ 2c`.
/// Above [`EXHAUSTIVE_MAX_CHARGE`] the search on primitive supports is pruned by
/// positivity of the restriction levels and results are only candidates.
pub fn solve(nu: &Partition) -> SolveOutcome {
    let c = nu.charge();
    let Some(kind) = support_kind(nu) else {
        return SolveOutcome::NotClassified {
            support: nu.clone(),
            reason: "not classified: non-primitive support of charge above 3".into(),
        };
    };
    debug_assert!(kind == SupportKind::Primitive || c == 3);
    let exhaustive = c <= EXHAUSTIVE_MAX_CHARGE;
    let degree_bound = 2 * i64::from(c) + 2;
    let torsion_bound = 2 * u64::from(c);
    let g = gr_structure_sheaf(nu);
    let mut cases = Vec::new();
    let mut rejected = Vec::new();
    let mut prefix = Vec::with_capacity(c as usize);
    let ctx = SearchContext {
        support: nu,
        c: c as usize,
        g: &g,
        degree_bound,
        torsion_bound,
        pruned: !exhaustive,
    };
    ctx.search(&mut prefix, 0, &mut cases, &mut rejected);
    SolveOutcome::Solved(SolveResult {
        support: nu.clone(),
        status: if exhaustive { CaseStatus::Proved } else { CaseStatus::Candidate },
        cases,
        rejected,
        degree_bound,
        torsion_bound,
    })
}

struct SearchContext<'a> {
    support: &'a Partition,
    c: usize,
    g: &'a [LineSheafClass],
    degree_bound: i64,
    torsion_bound: u64,
    pruned: bool,
}

impl SearchContext<'_> {
    fn min_degree(&self, level: usize) -> i64 {
        if !self.pruned {
            -self.degree_bound
        } else if level + 1 < self.c {
            1.max(self.g[level].d)
        } else {
            // one below a positive restriction level
            0
        }
    }

    fn search(
        &self,
        prefix: &mut Vec<LineSheafClass>,
        used: i64,
        cases: &mut Vec<FiltrationCase>,
        rejected: &mut Vec<RejectedCandidate>,
    ) {
        let level = prefix.len();
        let remaining = self.c as i64 - used;
        if level + 1 == self.c {
            // the χ total fixes d + t of the innermost level
            for t in 0..=self.torsion_bound {
                let d = remaining - t as i64;
                if d.abs() > self.degree_bound || d < self.min_degree(level) {
                    continue;
                }
                prefix.push(LineSheafClass::new(d, t));
                let case = FiltrationCase::new(self.support.clone(), prefix.clone());
                let verdict = instanton_conditions(&case);
                if verdict.is_ok() {
                    cases.push(case);
                } else {
                    rejected.push(RejectedCandidate { levels: prefix.clone(), violations: verdict.violations });
                }
                prefix.pop();
            }
            return;
        }
        let later_min: i64 = if self.pruned {
            (level + 1..self.c).map(|k| self.min_degree(k)).sum()
        } else {
            i64::MIN / 4
        };
        for d in self.min_degree(level)..=self.degree_bound {
            for t in 0..=self.torsion_bound {
                let next = used + d + t as i64;
                if self.pruned && self.c as i64 - next < later_min {
                    continue;
                }
                prefix.push(LineSheafClass::new(d, t));
                self.search(prefix, next, cases, rejected);
                prefix.pop();
            }
        }
    }
}

/// One row of the non-primitive charge-3 case table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTableRow {
    pub z_tilde: i64,
    pub chi_q2_twisted: i64,
    pub z_bar: i64,
    pub chi_restriction_twisted: i64,
    pub feasible: bool,
    /// Admissible cases realizing the row.
    pub cases: Vec<Vec<LineSheafClass>>,
    /// For infeasible rows, the violation sets of the closest candidates, cascade-only ones preferred.
    pub closest_violations: Vec<Vec<Constraint>>,
}

/// Rows `z̃ = 0..=5` for the support `(2,1)`, with `χ(Q₂(−2)) = z̃ − 4`, `z̄ = 5 − z̃`, `χ(Q|_{l₀}(−2)) = z̄ − 1`.
pub fn case_table_c3_nonprimitive() -> Vec<CaseTableRow> {
    let nu = Partition::new(vec![2, 1]).expect("valid");
    let result = match solve(&nu) {
        SolveOutcome::Solved(r) => r,
        SolveOutcome::NotClassified { .. } => unreachable!("(2,1) is classified"),
    };
    let chi_q2 = |levels: &[LineSheafClass]| levels[1..].iter().map(|l| l.chi(-2)).sum::<i64>();
    (0..=5)
        .map(|z_tilde| {
            let target = z_tilde - 4;
            let cases: Vec<Vec<LineSheafClass>> = result
                .cases
                .iter()
                .filter(|c| chi_q2(&c.levels) == target)
                .map(|c| c.levels.clone())
                .collect();
            let feasible = !cases.is_empty();
            let mut closest_violations = Vec::new();
            if !feasible {
                let mut matching: Vec<&RejectedCandidate> =
                    result.rejected.iter().filter(|r| chi_q2(&r.levels) == target).collect();
                if matching.iter().any(|r| r.violations.iter().all(Constraint::is_cascade)) {
                    matching.retain(|r| r.violations.iter().all(Constraint::is_cascade));
                }
                if let Some(fewest) = matching.iter().map(|r| r.violations.len()).min() {
                    let mut sets: Vec<Vec<Constraint>> = matching
                        .iter()
                        .filter(|r| r.violations.len() == fewest)
                        .map(|r| r.violations.clone())
                        .collect();
                    sets.sort();
                    sets.dedup();
                    closest_violations = sets;
                }
            }
            let z_bar = 5 - z_tilde;
            CaseTableRow {
                z_tilde,
                chi_q2_twisted: target,
                z_bar,
                chi_restriction_twisted: z_bar - 1,
                feasible,
                cases,
                closest_violations,
            }
        })
        .collect()
}

/// Generalised rank and degree of a graded object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedClass {
    pub rank: i64,
    pub degree: i64,
}

pub fn generalized_rank_degree(levels: &[LineSheafClass]) -> GeneralizedClass {
    GeneralizedClass {
        rank: levels.len() as i64,
        degree: levels.iter().map(|l| l.d + l.t as i64).sum(),
    }
}

/// `χ = Deg + R(1 − g)`.
pub fn riemann_roch_check(gc: GeneralizedClass, chi: i64, genus: &Rational) -> bool {
    rat(chi) == rat(gc.degree) + rat(gc.rank) * (rat(1) - genus)
}

/// `g = 1 − (χ(O_C) − Deg Gr(O_C)) / R`.
pub fn derived_genus(nu: &Partition) -> Rational {
    let gc = generalized_rank_degree(&gr_structure_sheaf(nu));
    let chi = hilbert_poly_closed(nu).eval_int(0);
    rat(1) - (chi - rat(gc.degree)) / rat(gc.rank)
}

/// `χ(T)/R(T) ≤ 2` for every proper subsheaf `Q_j`, `j ≥ 2`.
pub fn mu_semistable(case: &FiltrationCase) -> bool {
    (2..=case.levels.len()).all(|j| {
        let sub = case.inner(j);
        let chi: i64 = sub.iter().map(|l| l.chi(0)).sum();
        chi <= 2 * sub.len() as i64
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[(i64, u64)]) -> Vec<LineSheafClass> {
        v.iter().map(|&(d, t)| LineSheafClass::new(d, t)).collect()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn cases_of(s: &str) -> Vec<Vec<LineSheafClass>> {
        let mut out: Vec<_> = solve(&p(s)).solved().unwrap().cases.iter().map(|c| c.levels.clone()).collect();
        out.sort();
        out
    }

    #[test]
    fn line_cohomology_examples() {
        assert_eq!(line_cohomology(LineSheafClass::new(1, 0), -2), (0, 0));
        assert_eq!(line_cohomology(LineSheafClass::new(0, 0), -2), (0, 1));
        assert_eq!(line_cohomology(LineSheafClass::new(0, 3), 0), (4, 0));
    }

    #[test]
    fn conditions_examples() {
        let ok = FiltrationCase::new(p("1"), lv(&[(1, 0)]));
        assert!(instanton_conditions(&ok).is_ok());
        let c2 = FiltrationCase::new(p("2"), lv(&[(1, 1), (0, 0)]));
        assert!(instanton_conditions(&c2).is_ok());
        let line_bundle = FiltrationCase::new(p("2"), lv(&[(3, 0), (-1, 0)]));
        assert_eq!(instanton_conditions(&line_bundle).violations, vec![Constraint::CanonicalTwist]);
    }

    #[test]
    fn solver_small_charges() {
        assert_eq!(cases_of("1"), vec![lv(&[(1, 0)])]);
        assert_eq!(cases_of("2"), vec![lv(&[(1, 1), (0, 0)])]);
        assert_eq!(cases_of("1,1"), vec![lv(&[(1, 1), (0, 0)])]);
        let primitive = vec![lv(&[(1, 0), (1, 1), (0, 0)]), lv(&[(2, 0), (1, 0), (0, 0)])];
        assert_eq!(cases_of("1,1,1"), primitive);
        assert_eq!(cases_of("3"), primitive);
        assert_eq!(
            cases_of("2,1"),
            vec![
                lv(&[(1, 3), (0, 0), (-1, 0)]),
                lv(&[(2, 0), (1, 0), (0, 0)]),
                lv(&[(2, 1), (0, 1), (-1, 0)]),
            ]
        );
        assert!(matches!(solve(&p("2,2")), SolveOutcome::NotClassified { .. }));
    }

    #[test]
    fn rejected_candidates_are_explained() {
        let r = solve(&p("2,1"));
        let r = r.solved().unwrap();
        assert!(r.rejected.iter().all(|c| !c.violations.is_empty()));
        assert!(r.bounds_not_binding());
        assert_eq!(r.status, CaseStatus::Proved);
    }

    #[test]
    fn case_table() {
        let rows = case_table_c3_nonprimitive();
        let feasible: Vec<(i64, i64, i64, i64)> = rows
            .iter()
            .filter(|r| r.feasible)
            .map(|r| (r.z_tilde, r.chi_q2_twisted, r.z_bar, r.chi_restriction_twisted))
            .collect();
        assert_eq!(feasible, vec![(1, -3, 4, 3), (2, -2, 3, 2), (3, -1, 2, 1)]);
        for r in rows.iter().filter(|r| !r.feasible) {
            assert!([0, 4, 5].contains(&r.z_tilde));
            assert!(!r.closest_violations.is_empty());
        }
    }

    #[test]
    fn rank_degree_and_riemann_roch() {
        let gr = gr_structure_sheaf_primitive(3);
        assert_eq!(generalized_rank_degree(&gr), GeneralizedClass { rank: 3, degree: -3 });
        assert_eq!(generalized_rank_degree(&lv(&[(1, 0)])), GeneralizedClass { rank: 1, degree: 1 });
        assert_eq!(
            generalized_rank_degree(&lv(&[(1, 0), (1, 1), (0, 0)])),
            GeneralizedClass { rank: 3, degree: 3 }
        );
        assert!(riemann_roch_check(GeneralizedClass { rank: 1, degree: 0 }, 1, &rat(0)));
        for c in 1..8u32 {
            assert_eq!(derived_genus(&Partition::column(c)), rat(0));
        }
        assert_eq!(gr_structure_sheaf_primitive(2), lv(&[(0, 0), (-1, 0)]));
        let five = generalized_rank_degree(&gr_structure_sheaf_primitive(5));
        assert_eq!(five.degree, -10);
    }

    #[test]
    fn constraint_names_round_trip() {
        for c in [Constraint::ChiTotal, Constraint::Connecting(2), Constraint::LevelInjection(3)] {
            let s = serde_json::to_string(&c).unwrap();
            assert_eq!(serde_json::from_str::<Constraint>(&s).unwrap(), c);
        }
        assert!(serde_json::from_str::<Constraint>("\"Nope(1)\"").is_err());
    }
}

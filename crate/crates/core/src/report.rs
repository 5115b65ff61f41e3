//! Per-charge classification documents and the ADHM verdict document.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adhm::{
    build_monad, check_equations, complex_condition, stability_closure, weak_stability, AdhmDatum, EquationsVerdict,
    StabilityClosure, WeakStability,
};
use crate::exact::{rat, to_i64, UniPoly};
use crate::filtration::{
    derived_genus, generalized_rank_degree, gr_structure_sheaf, instanton_conditions, mu_semistable,
    riemann_roch_check, solve, CaseStatus, LineSheafClass, SolveOutcome,
};
use crate::moduli::{component_lower_bound, refined_component_count_c3};
use crate::torus::{
    is_fixed_candidate, pencil_dets_are_pure_powers, sample_generator_witnesses, FixedVerdict, GeneratorSampling,
};
use crate::young::{
    hilbert_fn_oracle, hilbert_poly_closed, hilbert_scheme_dim, infinitesimal_filtration, partition_to_ideal,
    quotient_length, quotient_sheaf_hilbert_poly, resolution, FreeResolution, Partition,
};

pub const SCHEMA_VERSION: &str = "1";
pub const MAX_REPORT_CHARGE: u32 = 30;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ReportError {
    #[error("charge {0} out of range 1..={MAX_REPORT_CHARGE}")]
    ChargeOutOfRange(u32),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SolverSummary {
    Classified {
        completeness: CaseStatus,
        cases: Vec<Vec<LineSheafClass>>,
        rejected_candidates: usize,
    },
    NotClassified {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionEntry {
    pub partition: Partition,
    pub ideal: String,
    /// Exponents `(a, b)` of the minimal generators `z₂^a z₃^b`.
    pub ideal_generators: Vec<(u32, u32)>,
    pub resolution: FreeResolution,
    pub hilbert_poly: UniPoly,
    pub hilbert_scheme_dim: i64,
    pub quotient_length: u64,
    pub infinitesimal_filtration: Vec<Partition>,
    pub solver: SolverSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema_version: String,
    pub charge: u32,
    pub entries: Vec<PartitionEntry>,
    pub component_lower_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub refined_component_count: Option<usize>,
    pub invariants: InvariantSummary,
}

fn entry_for(nu: &Partition) -> (PartitionEntry, Vec<(String, bool)>) {
    let ideal = partition_to_ideal(nu);
    let res = resolution(nu);
    let hp = hilbert_poly_closed(nu);
    let outcome = solve(nu);
    let mut checks = Vec::new();
    let label = |what: &str| format!("{nu}: {what}");

    let top = nu.max_weight();
    checks.push((
        label("oracle agrees with closed Hilbert polynomial"),
        (top..=top + 3).all(|m| rat(hilbert_fn_oracle(nu, m) as i64) == hp.eval_int(i64::from(m))),
    ));
    checks.push((label("resolution reproduces Hilbert polynomial"), res.structure_sheaf_hilbert_poly() == hp));
    let lz = &quotient_sheaf_hilbert_poly(nu.charge()) - &hp;
    checks.push((
        label("quotient length bookkeeping"),
        lz == UniPoly::constant(rat(quotient_length(nu) as i64)),
    ));

    let solver = match &outcome {
        SolveOutcome::Solved(r) => {
            checks.push((label("derived genus is 0"), derived_genus(nu) == rat(0)));
            let gr = gr_structure_sheaf(nu);
            checks.push((
                label("Riemann-Roch for Gr(O_C)"),
                riemann_roch_check(generalized_rank_degree(&gr), to_i64(&hp.eval_int(0)).expect("integral"), &rat(0)),
            ));
            checks.push((label("search bounds not binding"), r.bounds_not_binding()));
            for case in &r.cases {
                let c = i64::from(nu.charge());
                checks.push((label("case chi additivity"), case.hilbert_poly() == quotient_sheaf_hilbert_poly(nu.charge())));
                checks.push((label("case passes conditions"), instanton_conditions(case).is_ok()));
                checks.push((
                    label("case Riemann-Roch"),
                    riemann_roch_check(generalized_rank_degree(&case.levels), 2 * c, &rat(0)),
                ));
                checks.push((label("case mu-semistable"), mu_semistable(case)));
            }
            SolverSummary::Classified {
                completeness: r.status,
                cases: r.cases.iter().map(|c| c.levels.clone()).collect(),
                rejected_candidates: r.rejected.len(),
            }
        }
        SolveOutcome::NotClassified { reason, .. } => SolverSummary::NotClassified { reason: reason.clone() },
    };

    let entry = PartitionEntry {
        partition: nu.clone(),
        ideal: ideal.to_string(),
        ideal_generators: ideal.generators().to_vec(),
        resolution: res,
        hilbert_poly: hp,
        hilbert_scheme_dim: hilbert_scheme_dim(nu),
        quotient_length: quotient_length(nu),
        infinitesimal_filtration: infinitesimal_filtration(nu),
        solver,
    };
    (entry, checks)
}

/// Builds the report; `threads = None` uses rayon's default pool size.
pub fn classify(charge: u32, threads: Option<usize>) -> Result<ClassificationReport, ReportError> {
    if !(1..=MAX_REPORT_CHARGE).contains(&charge) {
        return Err(ReportError::ChargeOutOfRange(charge));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| ReportError::ThreadPool(e.to_string()))?;
    let partitions = Partition::all(charge);
    let results: Vec<(PartitionEntry, Vec<(String, bool)>)> =
        pool.install(|| partitions.par_iter().map(entry_for).collect());
    let mut entries = Vec::with_capacity(results.len());
    let mut invariants = InvariantSummary { passed: 0, failed: 0, failures: Vec::new() };
    for (entry, checks) in results {
        for (name, ok) in checks {
            if ok {
                invariants.passed += 1;
            } else {
                invariants.failed += 1;
                invariants.failures.push(name);
            }
        }
        entries.push(entry);
    }
    Ok(ClassificationReport {
        schema_version: SCHEMA_VERSION.to_string(),
        charge,
        entries,
        component_lower_bound: u64::try_from(component_lower_bound(charge)).expect("p(30) fits"),
        refined_component_count: (charge == 3).then(refined_component_count_c3),
        invariants,
    })
}

pub fn levels_text(levels: &[LineSheafClass]) -> String {
    let parts: Vec<String> = levels.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "charge {}: {} diagrams", self.charge, self.entries.len());
        for e in &self.entries {
            let _ = writeln!(out, "\npartition {}", e.partition);
            let _ = writeln!(out, "  ideal        {}", e.ideal);
            let _ = writeln!(out, "  resolution   {}", e.resolution);
            let _ = writeln!(out, "  P_C(m)       {}", e.hilbert_poly);
            let _ = writeln!(out, "  dim Hilb     {}", e.hilbert_scheme_dim);
            let _ = writeln!(out, "  l_Z          {}", e.quotient_length);
            let filt: Vec<String> = e.infinitesimal_filtration.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  filtration   {}", filt.join(" < "));
            match &e.solver {
                SolverSummary::Classified { completeness, cases, rejected_candidates } => {
                    let tag = match completeness {
                        CaseStatus::Proved => "complete",
                        CaseStatus::Candidate => "candidates",
                    };
                    let _ = writeln!(out, "  cases ({tag}, {rejected_candidates} rejected)");
                    for c in cases {
                        let _ = writeln!(out, "    {}", levels_text(c));
                    }
                }
                SolverSummary::NotClassified { reason } => {
                    let _ = writeln!(out, "  cases        {reason}");
                }
            }
        }
        let _ = writeln!(out, "\ncomponent lower bound {}", self.component_lower_bound);
        if let Some(n) = self.refined_component_count {
            let _ = writeln!(out, "refined component count {n}");
        }
        let _ = writeln!(out, "invariants: {} passed, {} failed", self.invariants.passed, self.invariants.failed);
        for f in &self.invariants.failures {
            let _ = writeln!(out, "  FAILED {f}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedReport {
    pub candidate: FixedVerdict,
    pub sampling: Vec<GeneratorSampling>,
    pub sampled_fixed: bool,
    pub pencil_dets_pure_powers: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdhmCheckReport {
    pub schema_version: String,
    pub c: usize,
    pub r: usize,
    pub equations: EquationsVerdict,
    pub stability: StabilityClosure,
    pub weak_stability: WeakStability,
    pub monad_complex: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fixed: Option<FixedReport>,
}

impl AdhmCheckReport {
    /// Equations hold and, in fixed mode, the datum is a fixed candidate.
    pub fn passed(&self) -> bool {
        self.equations.is_ok() && self.fixed.as_ref().is_none_or(|f| f.candidate.is_ok())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ADHM datum c={} r={}", self.c, self.r);
        if self.equations.is_ok() {
            let _ = writeln!(out, "equations      ok");
        } else {
            let v: Vec<String> = self.equations.violations.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "equations      violated: {}", v.join(", "));
        }
        let _ = writeln!(
            out,
            "stability      {} (closure dim {})",
            if self.stability.stable { "stable" } else { "unstable" },
            self.stability.closure_dim
        );
        let _ = writeln!(out, "weak stability {}", self.weak_stability.kind());
        let _ = writeln!(out, "monad complex  {}", self.monad_complex);
        if let Some(f) = &self.fixed {
            if f.candidate.is_ok() {
                let _ = writeln!(out, "fixed          candidate ok");
            } else {
                let _ = writeln!(out, "fixed          {}", f.candidate.failures.join("; "));
            }
            for s in &f.sampling {
                let _ = writeln!(out, "  generator {}: {}/{} samples witnessed", s.generator, s.witnessed, s.samples);
            }
            let _ = writeln!(out, "  pencil determinants pure powers: {}", f.pencil_dets_pure_powers);
        }
        out
    }
}

pub fn adhm_check(x: &AdhmDatum, fixed_mode: bool) -> AdhmCheckReport {
    let fixed = fixed_mode.then(|| {
        let sampling = sample_generator_witnesses(x);
        FixedReport {
            candidate: is_fixed_candidate(x),
            sampled_fixed: sampling.iter().all(|s| s.witnessed == s.samples),
            sampling,
            pencil_dets_pure_powers: pencil_dets_are_pure_powers(x),
        }
    });
    AdhmCheckReport {
        schema_version: SCHEMA_VERSION.to_string(),
        c: x.c,
        r: x.r,
        equations: check_equations(x),
        stability: stability_closure(x),
        weak_stability: weak_stability(x),
        monad_complex: complex_condition(&build_monad(x)),
        fixed,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRow {
    pub m: i64,
    pub polynomial: i64,
    pub oracle: u64,
}

/// Closed polynomial against the monomial count; the oracle is 0 for negative `m`.
pub fn hilbert_table(nu: &Partition, lo: i64, hi: i64) -> Vec<HilbertRow> {
    let hp = hilbert_poly_closed(nu);
    (lo..=hi)
        .map(|m| HilbertRow {
            m,
            polynomial: to_i64(&hp.eval_int(m)).expect("integral"),
            oracle: u32::try_from(m).map_or(0, |m| hilbert_fn_oracle(nu, m)),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charge_guard() {
        assert_eq!(classify(0, None), Err(ReportError::ChargeOutOfRange(0)));
        assert_eq!(classify(31, Some(1)), Err(ReportError::ChargeOutOfRange(31)));
    }

    #[test]
    fn small_reports() {
        let r1 = classify(1, Some(1)).unwrap();
        assert_eq!(r1.entries.len(), 1);
        assert_eq!(r1.component_lower_bound, 1);
        match &r1.entries[0].solver {
            SolverSummary::Classified { cases, .. } => assert_eq!(cases, &vec![vec![LineSheafClass::new(1, 0)]]),
            other => panic!("unexpected {other:?}"),
        }
        let r3 = classify(3, Some(2)).unwrap();
        assert_eq!(r3.entries.len(), 3);
        assert_eq!(r3.refined_component_count, Some(7));
        assert_eq!(r3.invariants.failed, 0, "{:?}", r3.invariants.failures);
        let back: ClassificationReport = serde_json::from_str(&r3.to_json()).unwrap();
        assert_eq!(back, r3);
    }

    #[test]
    fn charge_five_labels() {
        let r = classify(5, None).unwrap();
        assert_eq!(r.entries.len(), 7);
        for e in &r.entries {
            match &e.solver {
                SolverSummary::Classified { completeness, cases, .. } => {
                    assert!(e.partition.is_primitive());
                    assert_eq!(*completeness, CaseStatus::Candidate);
                    assert!(!cases.is_empty());
                }
                SolverSummary::NotClassified { .. } => assert!(!e.partition.is_primitive()),
            }
        }
        assert_eq!(r.invariants.failed, 0, "{:?}", r.invariants.failures);
    }

    #[test]
    fn hilbert_rows() {
        let nu: Partition = "2".parse().unwrap();
        let rows = hilbert_table(&nu, -1, 3);
        assert_eq!(rows[0].oracle, 0);
        assert!(rows.iter().filter(|r| r.m >= 1).all(|r| r.polynomial == r.oracle as i64));
    }

    #[test]
    fn zero_datum_check() {
        let rep = adhm_check(&AdhmDatum::zero(2, 1), true);
        assert!(rep.passed());
        assert!(rep.monad_complex);
        assert!(rep.fixed.unwrap().sampled_fixed);
    }
}

//! The fifteen release criteria, each returning a PASS/FAIL line with detail.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::adhm::{
    apply_gauge, build_monad, check_equations, complex_condition, hilbert_poly_e, hilbert_poly_e_rank2_closed,
    stability_closure, weak_stability, AdhmDatum,
};
use crate::corpus::{box_datum, fixed_point_corpus, monad_corpus, random_gauge, random_torus, rng, satisfying_datum, violating_datum, ShiftPair};
use crate::exact::{rat, to_i64, UniPoly};
use crate::filtration::{
    case_table_c3_nonprimitive, derived_genus, generalized_rank_degree, gr_structure_sheaf, riemann_roch_check, solve,
    LineSheafClass, SolveOutcome,
};
use crate::moduli::{
    component_lower_bound, euler_char_vanishing, pairing_demo, partition_count_enumeration, partition_count_euler,
    poincare_delta_formula, poincare_poly_c1, poincare_sl2, refined_component_count_c3, PARTITION_CHECK_MAX,
};
use crate::report::classify;
use crate::torus::{act, is_fixed_candidate, is_sampled_fixed, pencil_dets_are_pure_powers};
use crate::young::{
    hilbert_fn_oracle, hilbert_poly_closed, hilbert_scheme_dim, hom_degree0_oracle, inner_outer_boxes,
    partition_to_ideal, quotient_length, quotient_sheaf_hilbert_poly, resolution, Partition,
};

const SEED: u64 = 0x1a5f_2024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} [{:>2}] {}: {}", self.id, self.name, self.detail)
    }
}

type Check = fn() -> Result<String, String>;

pub const CRITERIA: [(u8, &str, Check); 15] = [
    (1, "hilbert oracle agreement", c01_hilbert_oracle),
    (2, "resolution consistency", c02_resolution),
    (3, "example lock-ins", c03_lock_ins),
    (4, "quotient lengths", c04_quotient_lengths),
    (5, "hilbert scheme dimension", c05_hilbert_dim),
    (6, "monad equivalence", c06_monad),
    (7, "gauge and torus equivariance", c07_equivariance),
    (8, "fixed-point necessities", c08_fixed_points),
    (9, "P_E identity", c09_pe_identity),
    (10, "filtration solver", c10_solver),
    (11, "riemann-roch", c11_riemann_roch),
    (12, "component counts", c12_components),
    (13, "poincare and euler", c13_poincare),
    (14, "euler pairings", c14_pairings),
    (15, "determinism", c15_determinism),
];

pub fn run_criterion(id: u8) -> Option<CriterionResult> {
    let &(id, name, check) = CRITERIA.iter().find(|(k, _, _)| *k == id)?;
    let (passed, detail) = match check() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(CriterionResult { id, name, passed, detail })
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().filter_map(|(id, _, _)| run_criterion(*id)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_partitions(max_c: u32) -> impl Iterator<Item = Partition> {
    (1..=max_c).flat_map(Partition::all)
}

fn p(s: &str) -> Partition {
    s.parse().expect("literal partition")
}

fn c01_hilbert_oracle() -> Result<String, String> {
    let start = Instant::now();
    let mut points = 0;
    for nu in all_partitions(12) {
        let hp = hilbert_poly_closed(&nu);
        for m in nu.max_weight()..=30 {
            let oracle = hilbert_fn_oracle(&nu, m);
            ensure(rat(oracle as i64) == hp.eval_int(i64::from(m)), || {
                format!("{nu} at m={m}: oracle {oracle}, polynomial {}", hp.eval_int(i64::from(m)))
            })?;
            points += 1;
        }
    }
    Ok(format!("{points} evaluations agree in {:.2?}", start.elapsed()))
}

fn c02_resolution() -> Result<String, String> {
    let mut n = 0;
    for nu in all_partitions(12) {
        let res = resolution(&nu);
        ensure(res.structure_sheaf_hilbert_poly() == hilbert_poly_closed(&nu), || {
            format!("{nu}: resolution gives {}", res.structure_sheaf_hilbert_poly())
        })?;
        n += 1;
    }
    Ok(format!("{n} diagrams"))
}

fn c03_lock_ins() -> Result<String, String> {
    let ideal = partition_to_ideal(&p("3,3,2")).to_string();
    ensure(ideal == "<z2^3, z2^2*z3^2, z3^3>", || format!("(3,3,2) ideal {ideal}"))?;
    // rows 4, 3, 1 are columns 3, 2, 2, 1
    let (inner, outer) = inner_outer_boxes(&p("3,2,2,1"));
    ensure(inner == [3, 3, 4, 4] && outer == [4, 5, 5], || format!("weights {inner:?} / {outer:?}"))?;
    let r2 = resolution(&p("2"));
    ensure(r2.inner_weights == [1, 2] && r2.outer_weights == [3], || format!("(2): {r2}"))?;
    for c in 1..=12 {
        let r = resolution(&Partition::column(c));
        ensure(r.inner_weights == [1, c] && r.outer_weights == [c + 1], || format!("1^{c}: {r}"))?;
    }
    Ok(format!("{ideal}; {r2}"))
}

fn c04_quotient_lengths() -> Result<String, String> {
    ensure(quotient_length(&p("2")) == 3, || format!("l_Z(2) = {}", quotient_length(&p("2"))))?;
    for c in 1..=12u32 {
        let l = quotient_length(&Partition::column(c));
        ensure(l == u64::from(c * (c + 1) / 2), || format!("l_Z(1^{c}) = {l}"))?;
    }
    let mut n = 0;
    for nu in all_partitions(12) {
        let diff = &quotient_sheaf_hilbert_poly(nu.charge()) - &hilbert_poly_closed(&nu);
        ensure(diff == UniPoly::constant(rat(quotient_length(&nu) as i64)), || {
            format!("{nu}: chi_Q - chi_C = {diff}, l_Z = {}", quotient_length(&nu))
        })?;
        n += 1;
    }
    Ok(format!("l_Z(2)=3, column lengths triangular, bookkeeping on {n} diagrams"))
}

fn c05_hilbert_dim() -> Result<String, String> {
    ensure(hilbert_scheme_dim(&p("1")) == 4, || "dim at (1) is not 4".into())?;
    let mut rows = Vec::new();
    for nu in all_partitions(3) {
        let (d, o) = (hilbert_scheme_dim(&nu), hom_degree0_oracle(&nu));
        ensure(d == o as i64, || format!("{nu}: formula {d}, oracle {o}"))?;
        rows.push(format!("{nu}->{d}"));
    }
    Ok(rows.join(" "))
}

fn c06_monad() -> Result<String, String> {
    let start = Instant::now();
    let corpus = monad_corpus(SEED, 1000);
    let satisfying = corpus.iter().filter(|(_, ok)| *ok).count();
    ensure(satisfying == 500, || format!("unbalanced corpus: {satisfying} satisfying"))?;
    let mut disagreements = 0;
    for (x, _) in &corpus {
        if complex_condition(&build_monad(x)) != check_equations(x).is_ok() {
            disagreements += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(disagreements == 0, || format!("{disagreements} disagreements"))?;
    ensure(elapsed.as_secs_f64() < 10.0, || format!("took {elapsed:.2?}"))?;
    Ok(format!("1000 data (500/500), 0 disagreements in {elapsed:.2?}"))
}

fn verdicts(x: &AdhmDatum) -> (Vec<u8>, bool, usize, &'static str) {
    let s = stability_closure(x);
    (check_equations(x).violations, s.stable, s.closure_dim, weak_stability(x).kind())
}

fn c07_equivariance() -> Result<String, String> {
    let mut r = rng(SEED ^ 7);
    let mut data = vec![
        box_datum(&p("2,1"), ShiftPair::A0B0, false, 1),
        box_datum(&p("3"), ShiftPair::A1B0, true, 2),
    ];
    for (c, rk) in [(2, 1), (2, 2), (3, 2)] {
        data.push(satisfying_datum(&mut r, c, rk));
        data.push(violating_datum(&mut r, c, rk));
    }
    let mut checks = 0;
    for x in &data {
        let base = verdicts(x);
        for _ in 0..100 {
            let g = random_gauge(&mut r, x.c);
            let y = apply_gauge(x, &g).map_err(|e| e.to_string())?;
            ensure(verdicts(&y) == base, || format!("gauge changed verdicts of\n{x}"))?;
            let tau = random_torus(&mut r, x.r);
            let z = act(x, &tau).map_err(|e| e.to_string())?;
            ensure(verdicts(&z) == base, || format!("torus changed verdicts of\n{x}"))?;
            checks += 2;
        }
    }
    Ok(format!("{} data, {checks} transformed copies, 0 violations", data.len()))
}

fn c08_fixed_points() -> Result<String, String> {
    let corpus = fixed_point_corpus(SEED ^ 8, 3, 12);
    let mut witnessed = 0;
    for x in &corpus {
        ensure(stability_closure(x).stable, || format!("corpus datum not stable\n{x}"))?;
        if !is_sampled_fixed(x) {
            continue;
        }
        witnessed += 1;
        let v = is_fixed_candidate(x);
        ensure(v.is_ok(), || format!("{}\n{x}", v.failures.join("; ")))?;
        ensure(pencil_dets_are_pure_powers(x), || format!("pencil determinants not pure powers\n{x}"))?;
    }
    ensure(witnessed > 0, || "no datum admitted witnesses".into())?;
    ensure(witnessed < corpus.len(), || "every datum admitted witnesses".into())?;
    Ok(format!("{witnessed} of {} stable data witnessed on all generators; all pass", corpus.len()))
}

fn c09_pe_identity() -> Result<String, String> {
    for c in 0..=10u32 {
        let additive = hilbert_poly_e(c, 2);
        ensure(additive == hilbert_poly_e_rank2_closed(c), || format!("c={c}: {additive}"))?;
        let at = additive.eval_int(-1);
        ensure(at == rat(-i64::from(c)), || format!("c={c}: P_E(-1) = {at}"))?;
    }
    Ok("c = 0..10".into())
}

fn cases(s: &str) -> Vec<Vec<LineSheafClass>> {
    let mut out: Vec<_> = solve(&p(s)).solved().map(|r| r.cases.iter().map(|c| c.levels.clone()).collect()).unwrap_or_default();
    out.sort();
    out
}

fn lv(v: &[(i64, u64)]) -> Vec<LineSheafClass> {
    v.iter().map(|&(d, t)| LineSheafClass::new(d, t)).collect()
}

fn c10_solver() -> Result<String, String> {
    let c2 = vec![lv(&[(1, 1), (0, 0)])];
    let primitive3 = vec![lv(&[(1, 0), (1, 1), (0, 0)]), lv(&[(2, 0), (1, 0), (0, 0)])];
    let expected = [
        ("1", vec![lv(&[(1, 0)])]),
        ("2", c2.clone()),
        ("1,1", c2),
        ("3", primitive3.clone()),
        ("1,1,1", primitive3),
        ("2,1", vec![lv(&[(1, 3), (0, 0), (-1, 0)]), lv(&[(2, 0), (1, 0), (0, 0)]), lv(&[(2, 1), (0, 1), (-1, 0)])]),
    ];
    let mut counts = Vec::new();
    for (s, want) in expected {
        let got = cases(s);
        ensure(got == want, || format!("({s}): got {got:?}"))?;
        counts.push(got.len().to_string());
    }
    let table = case_table_c3_nonprimitive();
    let feasible: Vec<(i64, i64, i64, i64)> = table
        .iter()
        .filter(|r| r.feasible)
        .map(|r| (r.z_tilde, r.chi_q2_twisted, r.z_bar, r.chi_restriction_twisted))
        .collect();
    ensure(feasible == [(1, -3, 4, 3), (2, -2, 3, 2), (3, -1, 2, 1)], || format!("table rows {feasible:?}"))?;
    let infeasible: Vec<i64> = table.iter().filter(|r| !r.feasible).map(|r| r.z_tilde).collect();
    ensure(infeasible == [0, 4, 5], || format!("infeasible {infeasible:?}"))?;
    ensure(table.iter().filter(|r| !r.feasible).all(|r| !r.closest_violations.is_empty()), || {
        "infeasible row without a named violation".into()
    })?;
    Ok(format!("case counts {}; table rows reproduced", counts.join(",")))
}

fn c11_riemann_roch() -> Result<String, String> {
    let mut supports = 0;
    let mut case_count = 0;
    let primitive_tail = (4..=12).flat_map(|c| [Partition::column(c), Partition::row(c)]);
    for nu in all_partitions(3).chain(primitive_tail) {
        let SolveOutcome::Solved(r) = solve(&nu) else { continue };
        let genus = derived_genus(&nu);
        ensure(genus == rat(0), || format!("{nu}: genus {genus}"))?;
        let chi = to_i64(&hilbert_poly_closed(&nu).eval_int(0)).expect("integral");
        ensure(riemann_roch_check(generalized_rank_degree(&gr_structure_sheaf(&nu)), chi, &genus), || {
            format!("{nu}: Gr(O_C) fails")
        })?;
        for case in &r.cases {
            let chi_q = 2 * i64::from(nu.charge());
            ensure(riemann_roch_check(generalized_rank_degree(&case.levels), chi_q, &genus), || {
                format!("{case} fails")
            })?;
            case_count += 1;
        }
        supports += 1;
    }
    Ok(format!("{supports} supports, {case_count} cases, genus 0"))
}

fn c12_components() -> Result<String, String> {
    for c in 0..=PARTITION_CHECK_MAX {
        let (a, b) = (partition_count_enumeration(c), partition_count_euler(c));
        ensure(a == b, || format!("p({c}): {a} vs {b}"))?;
    }
    ensure(partition_count_euler(2) == 2 && partition_count_euler(3) == 3, || "p(2), p(3)".into())?;
    let refined = refined_component_count_c3();
    ensure(refined == 7, || format!("refined count {refined}"))?;
    ensure(component_lower_bound(2) == 2, || "lower bound at 2".into())?;
    Ok(format!("p(c) agree for c <= {PARTITION_CHECK_MAX}; refined count 7; bound(2) = 2"))
}

fn c13_poincare() -> Result<String, String> {
    let p = poincare_poly_c1();
    ensure(p == poincare_delta_formula(), || format!("P = {p}"))?;
    ensure(euler_char_vanishing(&p), || format!("P(-1) = {}", p.eval(-1)))?;
    ensure(p.div_exact(&poincare_sl2()).is_some(), || "1+t^3 does not divide".into())?;
    Ok(format!("P = {p}"))
}

fn c14_pairings() -> Result<String, String> {
    let demo = pairing_demo();
    let detail = format!(
        "ch(Q) = {}, chi(Q,Q) = {}, chi(I,Q) = {}",
        demo.ch_q,
        crate::exact::format_rational(&demo.chi_q_q.0),
        crate::exact::format_rational(&demo.chi_ideal_q.0)
    );
    ensure(demo.chi_q_q.0 == rat(4) && demo.chi_ideal_q.0 == rat(2), || format!("{detail}; expected 4 and 2"))?;
    Ok(detail)
}

fn c15_determinism() -> Result<String, String> {
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get().max(2));
    for charge in [3, 6, 10] {
        let serial = classify(charge, Some(1)).map_err(|e| e.to_string())?;
        let again = classify(charge, Some(1)).map_err(|e| e.to_string())?;
        let parallel = classify(charge, Some(threads)).map_err(|e| e.to_string())?;
        let bytes = serial.to_json();
        ensure(bytes == again.to_json(), || format!("charge {charge}: repeated runs differ"))?;
        ensure(bytes == parallel.to_json(), || format!("charge {charge}: 1 vs {threads} threads differ"))?;
        ensure(serial.to_text() == parallel.to_text(), || format!("charge {charge}: text differs"))?;
    }
    Ok(format!("charges 3, 6, 10 identical across runs and 1 vs {threads} threads"))
}

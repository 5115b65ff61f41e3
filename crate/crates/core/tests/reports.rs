use instanton_core::filtration::{solve, SolveOutcome};
use instanton_core::moduli::{component_lower_bound, partition_count};
use instanton_core::report::{classify, ClassificationReport, SolverSummary};
use instanton_core::young::{
    hilbert_poly_closed, hilbert_scheme_dim, infinitesimal_filtration, partition_to_ideal, quotient_length, resolution,
};

#[test]
fn report_fields_are_reproducible() {
    for charge in 1..=7 {
        let report = classify(charge, None).unwrap();
        assert_eq!(report.entries.len() as u128, partition_count(charge));
        assert_eq!(u128::from(report.component_lower_bound), component_lower_bound(charge));
        assert_eq!(report.invariants.failed, 0, "{:?}", report.invariants.failures);
        for e in &report.entries {
            let nu = &e.partition;
            assert_eq!(e.ideal_generators, partition_to_ideal(nu).generators());
            assert_eq!(e.resolution, resolution(nu));
            assert_eq!(e.hilbert_poly, hilbert_poly_closed(nu));
            assert_eq!(e.hilbert_scheme_dim, hilbert_scheme_dim(nu));
            assert_eq!(e.quotient_length, quotient_length(nu));
            assert_eq!(e.infinitesimal_filtration, infinitesimal_filtration(nu));
            match (&e.solver, solve(nu)) {
                (SolverSummary::Classified { cases, .. }, SolveOutcome::Solved(r)) => {
                    let fresh: Vec<_> = r.cases.iter().map(|c| c.levels.clone()).collect();
                    assert_eq!(cases, &fresh);
                }
                (SolverSummary::NotClassified { .. }, SolveOutcome::NotClassified { .. }) => {}
                (a, _) => panic!("{nu}: mismatched solver summary {a:?}"),
            }
        }
        let back: ClassificationReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back, report);
    }
}

#[test]
fn partitions_are_descending() {
    let report = classify(4, Some(1)).unwrap();
    let names: Vec<String> = report.entries.iter().map(|e| e.partition.to_string()).collect();
    assert_eq!(names, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
}

#[test]
fn largest_charge_is_fast_and_deterministic() {
    let a = classify(30, Some(1)).unwrap();
    let b = classify(30, None).unwrap();
    assert_eq!(a.entries.len(), 5604);
    assert_eq!(a.to_json(), b.to_json());
}

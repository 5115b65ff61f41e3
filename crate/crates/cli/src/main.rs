use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use instanton_core::acceptance;
use instanton_core::adhm::AdhmDatum;
use instanton_core::exact::format_rational;
use instanton_core::filtration::{case_table_c3_nonprimitive, solve, SolveOutcome};
use instanton_core::moduli::{
    component_lower_bound, euler_char_vanishing, pairing_demo, partition_count_enumeration, partition_count_euler,
    poincare_p5, poincare_poly_c1, poincare_sl2,
};
use instanton_core::report::{adhm_check, classify, hilbert_table, levels_text, SCHEMA_VERSION};
use instanton_core::young::{hilbert_poly_closed, partition_to_ideal, resolution, Partition};

#[derive(Parser)]
#[command(name = "instanton", version, about = "Torus-fixed instanton sheaves on P3: exact classification reports")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Per-diagram classification report for one charge.
    Classify {
        #[arg(long)]
        charge: u32,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Closed Hilbert polynomial of O_C against the monomial count.
    Hilbert {
        #[arg(long)]
        partition: Partition,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "0:10")]
        m_range: (i64, i64),
    },
    /// Minimal free resolution of the ideal of a diagram.
    Resolution {
        #[arg(long)]
        partition: Partition,
    },
    /// Partition count by two methods.
    Partitions {
        #[arg(long)]
        charge: u32,
        /// Also list every diagram with its ideal.
        #[arg(long)]
        table: bool,
    },
    /// Admissible filtration cases and the constraint log of rejected candidates.
    Cases {
        #[arg(long)]
        partition: Partition,
    },
    /// Equations, stability and monad verdicts for an ADHM datum in JSON.
    AdhmCheck {
        #[arg(long)]
        input: PathBuf,
        /// Also run the torus fixed-point checks.
        #[arg(long)]
        fixed: bool,
    },
    /// Poincare polynomial of the moduli space.
    Poincare {
        #[arg(long, default_value_t = 1)]
        charge: u32,
    },
    /// Euler pairings of the charge-1 stable pair.
    Pairing {
        #[arg(long)]
        demo: bool,
    },
    /// Run every acceptance criterion.
    Selftest,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// Rendered output and whether the verification it reports succeeded.
struct Output {
    body: String,
    ok: bool,
}

enum Failure {
    Usage(String),
    Io(String),
}

fn render(format: Format, value: Value, text: String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("json value");
            s.push('\n');
            s
        }
        Format::Text => text,
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let f = cli.format;
    match &cli.command {
        Command::Classify { charge, threads } => {
            let report = classify(*charge, *threads).map_err(|e| Failure::Usage(e.to_string()))?;
            let ok = report.invariants.failed == 0;
            let body = match f {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            Ok(Output { body, ok })
        }
        Command::Hilbert { partition, m_range } => {
            let poly = hilbert_poly_closed(partition);
            let rows = hilbert_table(partition, m_range.0, m_range.1);
            let top = i64::from(partition.max_weight());
            let ok = rows.iter().filter(|r| r.m >= top).all(|r| r.polynomial == r.oracle as i64);
            let mut text = format!("P_C(m) = {poly} for {partition}\n   m  poly  oracle\n");
            for r in &rows {
                let _ = writeln!(text, "{:>4} {:>5} {:>7}", r.m, r.polynomial, r.oracle);
            }
            let value = json!({
                "schema_version": SCHEMA_VERSION,
                "partition": partition,
                "hilbert_poly": poly,
                "rows": rows,
                "agree_from_max_weight": ok,
            });
            Ok(Output { body: render(f, value, text), ok })
        }
        Command::Resolution { partition } => {
            let res = resolution(partition);
            let ideal = partition_to_ideal(partition);
            let text = format!("I = {ideal}\n{res}\n");
            let value = json!({
                "schema_version": SCHEMA_VERSION,
                "partition": partition,
                "ideal": ideal.to_string(),
                "inner_weights": res.inner_weights,
                "outer_weights": res.outer_weights,
            });
            Ok(Output { body: render(f, value, text), ok: true })
        }
        Command::Partitions { charge, table } => {
            let (a, b) = (partition_count_enumeration(*charge), partition_count_euler(*charge));
            let mut text = format!("p({charge}) = {a} (enumeration), {b} (Euler product)\n");
            let listing: Vec<Value> = if *table {
                Partition::all(*charge)
                    .iter()
                    .map(|nu| {
                        let ideal = partition_to_ideal(nu).to_string();
                        let _ = writeln!(text, "  {:<16} {ideal}", nu.to_string());
                        json!({ "partition": nu, "ideal": ideal })
                    })
                    .collect()
            } else {
                Vec::new()
            };
            let mut value = json!({
                "schema_version": SCHEMA_VERSION,
                "charge": charge,
                "enumeration": a.to_string(),
                "euler_product": b.to_string(),
            });
            if *table {
                value["partitions"] = Value::Array(listing);
            }
            if *charge >= 1 {
                let bound = component_lower_bound(*charge);
                let _ = writeln!(text, "component lower bound {bound}");
                value["component_lower_bound"] = json!(bound.to_string());
            }
            Ok(Output { body: render(f, value, text), ok: a == b })
        }
        Command::Cases { partition } => Ok(cases_output(f, partition)),
        Command::AdhmCheck { input, fixed } => {
            let text = std::fs::read_to_string(input)
                .map_err(|e| Failure::Io(format!("cannot read {}: {e}", input.display())))?;
            let x = AdhmDatum::from_json_str(&text).map_err(|e| Failure::Usage(e.to_string()))?;
            let rep = adhm_check(&x, *fixed);
            let value = serde_json::to_value(&rep).expect("report serializes");
            Ok(Output { body: render(f, value, rep.to_text()), ok: rep.passed() })
        }
        Command::Poincare { charge } => {
            if *charge == 0 {
                return Err(Failure::Usage("charge must be positive".into()));
            }
            let sl2 = poincare_sl2();
            if *charge == 1 {
                let p = poincare_poly_c1();
                let vanishes = euler_char_vanishing(&p);
                let text = format!(
                    "P(t) = ({}) * ({})\n     = {p}\nP(-1) = {}\n",
                    poincare_p5(),
                    sl2,
                    p.eval(-1)
                );
                let value = json!({
                    "schema_version": SCHEMA_VERSION,
                    "charge": 1,
                    "coefficients": p,
                    "factors": [poincare_p5(), sl2],
                    "euler_characteristic": p.eval(-1),
                });
                Ok(Output { body: render(f, value, text), ok: vanishes })
            } else {
                let text = format!(
                    "P(t) = P_I({charge})(t) * ({sl2}); first factor not computed\nP(-1) = 0 since ({sl2}) vanishes at -1\n"
                );
                let value = json!({
                    "schema_version": SCHEMA_VERSION,
                    "charge": charge,
                    "coefficients": Value::Null,
                    "factors": [Value::Null, sl2],
                    "euler_characteristic": 0,
                });
                Ok(Output { body: render(f, value, text), ok: euler_char_vanishing(&sl2) })
            }
        }
        Command::Pairing { demo } => {
            if !demo {
                return Err(Failure::Usage("pairing currently supports only --demo".into()));
            }
            let d = pairing_demo();
            let text = format!(
                "ch(Q)        = {}\nch(I*)       = {}\nchi(Q, Q)    = {}\nchi(I*, Q)   = {}\nchi(O, O)    = {}\n",
                d.ch_q,
                d.ch_ideal_complex,
                format_rational(&d.chi_q_q.0),
                format_rational(&d.chi_ideal_q.0),
                format_rational(&d.chi_o_o.0)
            );
            let value = serde_json::to_value(&d).expect("serializes");
            Ok(Output { body: render(f, value, text), ok: true })
        }
        Command::Selftest => {
            let results = acceptance::run_all();
            let passed = results.iter().filter(|r| r.passed).count();
            let mut text = String::new();
            for r in &results {
                let _ = writeln!(text, "{r}");
            }
            let _ = writeln!(text, "{passed}/{} criteria passed", results.len());
            let value = json!({
                "schema_version": SCHEMA_VERSION,
                "criteria": results,
                "passed": passed,
                "failed": results.len() - passed,
            });
            Ok(Output { body: render(f, value, text), ok: passed == results.len() })
        }
    }
}

fn cases_output(f: Format, partition: &Partition) -> Output {
    match solve(partition) {
        SolveOutcome::NotClassified { reason, .. } => {
            let value = json!({ "schema_version": SCHEMA_VERSION, "partition": partition, "status": "not_classified", "reason": reason });
            Output { body: render(f, value, format!("{partition}: {reason}\n")), ok: true }
        }
        SolveOutcome::Solved(r) => {
            let mut text = format!("{partition}: {} case(s), {:?}\n", r.cases.len(), r.status);
            for c in &r.cases {
                let _ = writeln!(text, "  {}", levels_text(&c.levels));
            }
            let hist = r.rejection_histogram();
            let _ = writeln!(text, "{} rejected candidates; violations by constraint:", r.rejected.len());
            for (name, n) in &hist {
                let _ = writeln!(text, "  {name:<28} {n}");
            }
            let near: Vec<_> = r.near_misses().collect();
            let _ = writeln!(text, "candidates failing exactly one constraint:");
            for n in &near {
                let _ = writeln!(text, "  {} : {}", levels_text(&n.levels), n.violations[0]);
            }
            let mut value = json!({
                "schema_version": SCHEMA_VERSION,
                "partition": partition,
                "status": r.status,
                "cases": r.cases.iter().map(|c| &c.levels).collect::<Vec<_>>(),
                "rejected_count": r.rejected.len(),
                "rejected_by_constraint": hist,
                "near_misses": near,
            });
            if partition.parts() == [2, 1] {
                let table = case_table_c3_nonprimitive();
                let _ = writeln!(text, "z~  chi(Q2(-2))  z-  chi(Q|(-2))");
                for row in &table {
                    let status = if row.feasible {
                        "feasible".to_string()
                    } else {
                        let sets: Vec<String> = row
                            .closest_violations
                            .iter()
                            .map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join("+"))
                            .collect();
                        format!("infeasible: {}", sets.join(" | "))
                    };
                    let _ = writeln!(
                        text,
                        "{:>2} {:>12} {:>3} {:>12}  {status}",
                        row.z_tilde, row.chi_q2_twisted, row.z_bar, row.chi_restriction_twisted
                    );
                }
                value["case_table"] = serde_json::to_value(&table).expect("serializes");
            }
            Output { body: render(f, value, text), ok: true }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.body).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{}", out.body);
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                Ok(()) if out.ok => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(1),
            }
        }
        Err(Failure::Usage(msg) | Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

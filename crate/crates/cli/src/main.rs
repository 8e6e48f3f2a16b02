//! `qaplin`: recognize, decompose, linearize and solve structured QAP
//! instances from plain-text matrix files.
//!
//! Exit status is 0 for a positive verdict or a solution, 1 for a negative
//! verdict, and 2 for usage, input or parse errors.

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use qaplin::decompose::decompose;
use qaplin::generate::{generate, BaseKind, EntryRange, GeneratorSpec};
use qaplin::io::{emit_instance, emit_matrices, parse_matrices};
use qaplin::linearize::{linearize_fas, linearize_tsp};
use qaplin::recognize::{check_balanced_3cycle, recognize_weak_sum, BalanceVerdict, WeakSumVerdict};
use qaplin::solve::{solve_fas_balanced, solve_lap};
use qaplin::verify::{linearizability_oracle, verify_linearization, OracleVerdict, VerifyMode, VerifyOutcome};
use qaplin::{SquareMatrix, DEFAULT_TOL};

#[derive(Parser)]
#[command(
    name = "qaplin",
    version,
    about = "Linearizable special cases of the quadratic assignment problem"
)]
struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Relative tolerance (scaled by max(1, largest |entry|)).
    #[arg(long, global = true, env = "QAPLIN_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test a matrix for a structural property.
    Check {
        property: Property,
        /// Instance file; `-` or omitted reads stdin.
        file: Option<String>,
    },
    /// Split a balanced 3-cycle matrix into a symmetric part and cuts.
    Decompose {
        file: Option<String>,
        /// Include every extraction round.
        #[arg(long)]
        trace: bool,
    },
    /// Build the assignment cost matrix C of a FAS or TSP instance.
    Linearize { problem: Problem, file: Option<String> },
    /// Solve a balanced FAS instance or a linear assignment problem.
    Solve {
        problem: SolveProblem,
        file: Option<String>,
    },
    /// Check QAP(A, B, p) = LAP(C, p) over permutations.
    Verify {
        /// `A,B,C` as comma-separated files, or one file holding all three.
        files: String,
        #[command(flatten)]
        mode: VerifyArgs,
    },
    /// Decide linearizability of (A, B) by least squares (n <= 7).
    Oracle {
        /// `A,B` as comma-separated files, or one file holding both.
        files: String,
    },
    /// Write a random instance to stdout.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Balanced,
    Weaksum,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Fas,
    Tsp,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveProblem {
    Fas,
    Lap,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check all n! permutations (the default).
    #[arg(long, conflicts_with = "sample")]
    exhaustive: bool,
    /// Check this many uniformly sampled permutations instead.
    #[arg(long, value_name = "N")]
    sample: Option<usize>,
    #[arg(long, value_name = "S", default_value_t = 0, requires = "sample")]
    seed: u64,
}

#[derive(Args)]
struct GenerateArgs {
    /// balanced, weak-sum, symmetric or cut.
    #[arg(long)]
    kind: BaseKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    /// Entry range LO:HI; integer bounds give integer entries.
    #[arg(long, value_name = "LO:HI", allow_hyphen_values = true)]
    range: Option<EntryRange>,
    /// Add M to one random off-diagonal entry.
    #[arg(long, value_name = "M", allow_hyphen_values = true)]
    perturb: Option<f64>,
}

enum Verdict {
    Positive,
    Negative,
}

fn read_source(path: Option<&str>) -> anyhow::Result<String> {
    match path {
        None | Some("-") => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).context("reading stdin")?;
            Ok(text)
        }
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {p}")),
    }
}

fn first_matrix(path: Option<&str>) -> anyhow::Result<SquareMatrix> {
    let text = read_source(path)?;
    let mats = parse_matrices(&text, &[1, 2]).with_context(|| path.unwrap_or("stdin").to_string())?;
    Ok(mats.into_iter().next().expect("at least one matrix"))
}

/// Collects exactly `count` matrices from a comma-separated file list.
fn matrices(files: &str, count: usize) -> anyhow::Result<Vec<SquareMatrix>> {
    let mut out = Vec::new();
    for path in files.split(',') {
        let text = read_source(Some(path))?;
        let allowed: Vec<usize> = (1..=count).collect();
        out.extend(parse_matrices(&text, &allowed).with_context(|| path.to_string())?);
    }
    if out.len() != count {
        bail!("expected {count} matrices in {files}, found {}", out.len());
    }
    let n = out[0].order();
    if let Some(m) = out.iter().find(|m| m.order() != n) {
        bail!("matrices have different orders ({n} and {})", m.order());
    }
    Ok(out)
}

/// `body` as a JSON object with an added `verdict` field.
fn tagged(verdict: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("verdict".into(), Value::from(verdict));
    match body {
        Value::Object(fields) => map.extend(fields),
        Value::Null => {}
        other => {
            map.insert("result".into(), other);
        }
    }
    Value::Object(map)
}

fn indent(m: &SquareMatrix) -> String {
    m.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

fn run(cli: Cli) -> anyhow::Result<Verdict> {
    let tol = cli.tol;
    if !(tol.is_finite() && tol >= 0.0) {
        bail!("tolerance must be a nonnegative number, found {tol}");
    }
    let (verdict, json, text) = match cli.command {
        Command::Check { property, file } => {
            let a = first_matrix(file.as_deref())?;
            match property {
                Property::Balanced => {
                    let v = check_balanced_3cycle(&a, tol);
                    let text = match &v {
                        BalanceVerdict::Balanced { max_residual } => {
                            format!("balanced (max 3-cycle residual {max_residual})\n")
                        }
                        BalanceVerdict::Unbalanced { witness: w } => format!(
                            "not balanced: triple ({}, {}, {}) has cycle weights {} and {}\n",
                            w.i + 1,
                            w.j + 1,
                            w.k + 1,
                            w.lhs,
                            w.rhs
                        ),
                    };
                    let verdict = if v.is_balanced() {
                        Verdict::Positive
                    } else {
                        Verdict::Negative
                    };
                    (verdict, serde_json::to_value(&v)?, text)
                }
                Property::Weaksum => {
                    let v = recognize_weak_sum(&a, tol);
                    let text = match &v {
                        WeakSumVerdict::WeakSum { certificate } => format!(
                            "weak sum\nalpha: {:?}\nbeta: {:?}\ntour value: {}\n",
                            certificate.alpha,
                            certificate.beta,
                            certificate.tour_value()
                        ),
                        WeakSumVerdict::NotWeakSum { witness: w } => format!(
                            "not a weak sum matrix: entry ({}, {}) misses the fit by {}\n",
                            w.row + 1,
                            w.col + 1,
                            w.residual
                        ),
                    };
                    let verdict = if v.is_weak_sum() {
                        Verdict::Positive
                    } else {
                        Verdict::Negative
                    };
                    (verdict, serde_json::to_value(&v)?, text)
                }
            }
        }
        Command::Decompose { file, trace } => {
            let a = first_matrix(file.as_deref())?;
            match decompose(&a, tol) {
                Ok((d, t)) => {
                    let mut text = format!("symmetric part:\n{}terms:\n", indent(&d.symmetric_part));
                    if d.terms.is_empty() {
                        text.push_str("  (none)\n");
                    }
                    for term in &d.terms {
                        text.push_str(&format!("  {} * cut{}\n", term.coefficient, term.subset));
                    }
                    let mut body = json!({ "decomposition": d });
                    if trace {
                        text.push_str("trace:\n");
                        for (k, s) in t.steps.iter().enumerate() {
                            text.push_str(&format!(
                                "  {}: pivot ({}, {}), I = {}, min crossing ({}, {}), lambda {}\n",
                                k + 1,
                                s.pivot.0 + 1,
                                s.pivot.1 + 1,
                                s.subset,
                                s.min_crossing.0 + 1,
                                s.min_crossing.1 + 1,
                                s.lambda
                            ));
                        }
                        body["trace"] = serde_json::to_value(&t)?;
                    }
                    (Verdict::Positive, tagged("balanced", body), text)
                }
                Err(e) => (
                    Verdict::Negative,
                    tagged("not_balanced", serde_json::to_value(&e)?),
                    format!("{e}\n"),
                ),
            }
        }
        Command::Linearize { problem, file } => {
            let a = first_matrix(file.as_deref())?;
            match problem {
                Problem::Fas => match linearize_fas(&a, tol) {
                    Ok(l) => (
                        Verdict::Positive,
                        tagged("linearizable", serde_json::to_value(&l)?),
                        emit_matrices(&[&l.c]),
                    ),
                    Err(e) => (
                        Verdict::Negative,
                        tagged("not_balanced", serde_json::to_value(&e)?),
                        format!("{e}\n"),
                    ),
                },
                Problem::Tsp => match linearize_tsp(&a, tol) {
                    Ok(l) => (
                        Verdict::Positive,
                        tagged(
                            "linearizable",
                            json!({ "c": l.linearization.c, "tour_value": l.tour_value }),
                        ),
                        emit_matrices(&[&l.linearization.c]),
                    ),
                    Err(e) => (
                        Verdict::Negative,
                        tagged("not_weak_sum", serde_json::to_value(&e)?),
                        format!("{e}\n"),
                    ),
                },
            }
        }
        Command::Solve { problem, file } => {
            let a = first_matrix(file.as_deref())?;
            match problem {
                SolveProblem::Fas => match solve_fas_balanced(&a, tol) {
                    Ok(s) => {
                        let mut text = format!("layout: {}\nvalue: {}\nbackward arcs:\n", s.layout, s.value);
                        if s.backward_arcs.is_empty() {
                            text.push_str("  (none)\n");
                        }
                        for arc in &s.backward_arcs {
                            text.push_str(&format!("  {} -> {} ({})\n", arc.from + 1, arc.to + 1, arc.weight));
                        }
                        (Verdict::Positive, tagged("solved", serde_json::to_value(&s)?), text)
                    }
                    Err(e) => (
                        Verdict::Negative,
                        tagged("not_balanced", serde_json::to_value(&e)?),
                        format!("{e}\n"),
                    ),
                },
                SolveProblem::Lap => {
                    let s = solve_lap(&a);
                    let text = format!(
                        "assignment: {}\nvalue: {}\nu: {:?}\nv: {:?}\n",
                        s.assignment.permutation, s.assignment.value, s.duals.u, s.duals.v
                    );
                    (Verdict::Positive, tagged("solved", serde_json::to_value(&s)?), text)
                }
            }
        }
        Command::Verify { files, mode } => {
            let m = matrices(&files, 3)?;
            let mode = match mode.sample {
                Some(count) => VerifyMode::Sampled { count, seed: mode.seed },
                None => VerifyMode::Exhaustive,
            };
            let outcome = verify_linearization(&m[0], &m[1], &m[2], tol, mode)?;
            let text = match &outcome {
                VerifyOutcome::Ok {
                    checked,
                    exhaustive,
                    max_residual,
                } => format!(
                    "ok: {checked} permutations{} agree (max residual {max_residual})\n",
                    if *exhaustive { "" } else { " sampled" }
                ),
                VerifyOutcome::Counterexample { permutation, qap, lap } => {
                    format!("counterexample: {permutation} has QAP value {qap} but LAP value {lap}\n")
                }
            };
            let verdict = if outcome.is_ok() {
                Verdict::Positive
            } else {
                Verdict::Negative
            };
            (verdict, serde_json::to_value(&outcome)?, text)
        }
        Command::Oracle { files } => {
            let m = matrices(&files, 2)?;
            let v = linearizability_oracle(&m[0], &m[1], tol)?;
            let text = match &v {
                OracleVerdict::Linearizable { c, residual } => {
                    format!("linearizable (residual {residual})\n{}", emit_matrices(&[c]))
                }
                OracleVerdict::NotLinearizable { residual } => format!("not linearizable (residual {residual})\n"),
            };
            let verdict = if v.is_linearizable() {
                Verdict::Positive
            } else {
                Verdict::Negative
            };
            (verdict, serde_json::to_value(&v)?, text)
        }
        Command::Generate(args) => {
            let mut spec = GeneratorSpec::new(args.kind, args.n, args.seed);
            if let Some(range) = args.range {
                spec = spec.with_range(range);
            }
            spec.perturb = args.perturb;
            let f = generate(&spec)?;
            (Verdict::Positive, json!({ "spec": spec, "a": f.a }), emit_instance(&f))
        }
    };
    if cli.json {
        println!("{}", serde_json::to_string(&json)?);
    } else {
        print!("{text}");
    }
    Ok(verdict)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Positive) => ExitCode::SUCCESS,
        Ok(Verdict::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

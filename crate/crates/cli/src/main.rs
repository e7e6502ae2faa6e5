//! `ifkp`: command-line front end.
//!
//! Exit codes: 0 success, 2 infeasible, 3 invalid input, 4 oracle limit.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ifkp_core::bench::{run_bench, write_csv};
use ifkp_core::generate::{gen_partition_values, gen_with, GenOptions};
use ifkp_core::io::{parse_fkp, parse_instance, read_instance, write_instance};
use ifkp_core::reduction::{build_gadget, PartitionInstance};
use ifkp_core::{
    apply_modifications, brute_inverse, check_optimality, solve_fifkp, solve_greedy, solve_linf,
    CandidateMode, CaseKind, Error, InverseInstance, InverseSolution, Norm, OracleConfig,
};
use serde_json::{json, Value};

const EXIT_INFEASIBLE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_LIMIT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "ifkp",
    version,
    about = "Fractional knapsack and inverse fractional knapsack solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the forward problem greedily.
    Solve { file: PathBuf },
    /// Test whether the instance's x_star is optimal.
    Check { file: PathBuf },
    /// Solve the inverse problem.
    Inverse {
        #[arg(long, value_enum)]
        norm: NormArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Refined)]
        mode: ModeArg,
        file: PathBuf,
    },
    /// Solve the inverse problem by exhaustive enumeration.
    Oracle {
        #[arg(long, value_enum)]
        norm: NormArg,
        #[arg(long, default_value_t = ifkp_core::oracle::DEFAULT_MAX_SPACE)]
        max_space: u128,
        file: PathBuf,
    },
    /// Generate an instance file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Time the inverse solvers on generated instances and write a CSV.
    Bench {
        #[arg(long, num_args = 0.., value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, value_enum, num_args = 1.., value_delimiter = ',', default_values_t = [NormArg::L1, NormArg::Linf])]
        norm: Vec<NormArg>,
        #[arg(long, value_enum, num_args = 1.., value_delimiter = ',', default_values_t = [ModeArg::Paper])]
        mode: Vec<ModeArg>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random instance.
    Random(RandomArgs),
    /// Gadget instance from a Partition instance.
    Partition(PartitionArgs),
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    max_value: i64,
    #[arg(long, default_value_t = 3)]
    max_bound: i64,
    /// Relation of the budget to the selected cost.
    #[arg(long, value_enum, default_value_t = CaseArg::Equal)]
    case: CaseArg,
    /// Also draw cost caps.
    #[arg(long)]
    cost_bounds: bool,
    /// Use unit weights instead of random ones.
    #[arg(long)]
    unit_weights: bool,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct PartitionArgs {
    /// Comma-separated values; drawn at random when absent.
    #[arg(long, value_delimiter = ',')]
    values: Option<Vec<i64>>,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    max_value: i64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    L1,
    Linf,
}

impl From<NormArg> for Norm {
    fn from(n: NormArg) -> Norm {
        match n {
            NormArg::L1 => Norm::L1,
            NormArg::Linf => Norm::LInf,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Paper,
    Refined,
}

impl From<ModeArg> for CandidateMode {
    fn from(m: ModeArg) -> CandidateMode {
        match m {
            ModeArg::Paper => CandidateMode::Paper,
            ModeArg::Refined => CandidateMode::Refined,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Equal,
    Deficit,
    Surplus,
}

impl From<CaseArg> for CaseKind {
    fn from(c: CaseArg) -> CaseKind {
        match c {
            CaseArg::Equal => CaseKind::Equal,
            CaseArg::Deficit => CaseKind::Deficit,
            CaseArg::Surplus => CaseKind::Surplus,
        }
    }
}

/// A finished command: the document to print and the exit code.
struct Outcome {
    doc: Value,
    code: u8,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome { doc, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&out.doc).expect("documents serialize")
            );
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::OracleLimitExceeded { .. } | Error::TooLarge { .. } => EXIT_LIMIT,
                _ => EXIT_INVALID,
            })
        }
    }
}

fn run(cmd: Command) -> ifkp_core::Result<Outcome> {
    match cmd {
        Command::Solve { file } => {
            let inst = parse_fkp(&std::fs::read_to_string(file)?)?;
            let (x, objective) = solve_greedy(&inst);
            Ok(Outcome::ok(json!({
                "objective": objective,
                "x": x.values,
                "fractional_count": x.fractional_count(),
            })))
        }
        Command::Check { file } => {
            let inv = parse_instance(&std::fs::read_to_string(file)?)?;
            let r = check_optimality(&inv.base, &inv.x_star)?;
            Ok(Outcome::ok(json!({
                "optimal": r.is_optimal(),
                "verdict": r.verdict,
                "witness": r.witness,
                "lhs_sum": r.lhs_sum.to_string(),
                "b": inv.base.budget,
            })))
        }
        Command::Inverse { norm, mode, file } => {
            let inv = read_instance(file)?.with_norm(norm.into());
            let mode = CandidateMode::from(mode);
            let sol = match inv.norm {
                Norm::L1 => solve_fifkp(&inv, mode)?,
                Norm::LInf => solve_linf(&inv)?,
            };
            let mut out = solution_doc(&inv, &sol)?;
            if inv.norm == Norm::L1 {
                out.doc["mode"] = json!(mode);
            }
            Ok(out)
        }
        Command::Oracle {
            norm,
            max_space,
            file,
        } => {
            let inv = read_instance(file)?.with_norm(norm.into());
            if max_space == 0 {
                return Err(Error::InvariantViolation("max-space must be >= 1".into()));
            }
            let sol = brute_inverse(&inv, &OracleConfig { max_space })?;
            solution_doc(&inv, &sol)
        }
        Command::Gen(GenCommand::Random(a)) => {
            if a.n == 0 || a.max_value < 1 || a.max_bound < 0 {
                return Err(Error::InvariantViolation(
                    "need n >= 1, max-value >= 1 and max-bound >= 0".into(),
                ));
            }
            let opts = GenOptions {
                max_value: a.max_value,
                max_bound: a.max_bound,
                cost_bounds: a.cost_bounds,
                case: a.case.into(),
                random_weights: !a.unit_weights,
                norm: Norm::L1,
            };
            let inv = gen_with(a.n, a.seed, &opts);
            write_instance(&a.output, &inv)?;
            Ok(Outcome::ok(json!({
                "file": a.output,
                "n": inv.len(),
                "b": inv.base.budget,
            })))
        }
        Command::Gen(GenCommand::Partition(a)) => {
            let values = match a.values {
                Some(v) => v,
                None if a.n >= 1 && a.max_value >= 1 => {
                    gen_partition_values(a.n, a.seed, a.max_value)
                }
                None => {
                    return Err(Error::InvalidPartition(
                        "need n >= 1 and max-value >= 1".into(),
                    ))
                }
            };
            let pp = PartitionInstance::new(values)?;
            let g = build_gadget(&pp)?;
            write_instance(&a.output, &g.instance)?;
            Ok(Outcome::ok(json!({
                "file": a.output,
                "values": pp.values,
                "half_sum": pp.half_sum,
                "decision_budget": g.decision_budget,
            })))
        }
        Command::Bench {
            n,
            norm,
            mode,
            seed,
            out,
        } => {
            if n.contains(&0) {
                return Err(Error::InvariantViolation(
                    "instance sizes must be >= 1".into(),
                ));
            }
            let norms: Vec<Norm> = norm.into_iter().map(Norm::from).collect();
            let modes: Vec<CandidateMode> = mode.into_iter().map(CandidateMode::from).collect();
            let records = run_bench(&n, &norms, &modes, seed)?;
            write_csv(&out, &records)?;
            Ok(Outcome::ok(json!({
                "out": out,
                "rows": records.len(),
                "records": records.iter().map(|r| json!({
                    "n": r.n,
                    "norm": r.norm,
                    "mode": r.mode,
                    "objective": r.objective,
                    "elapsed_ns": r.elapsed_ns.to_string(),
                })).collect::<Vec<_>>(),
            })))
        }
    }
}

/// Result document for an inverse solve. Optimal results carry the
/// modified instance and its optimality report, so they can be checked
/// without rerunning the solver.
fn solution_doc(inv: &InverseInstance, sol: &InverseSolution) -> ifkp_core::Result<Outcome> {
    match sol {
        InverseSolution::Infeasible => Ok(Outcome {
            doc: json!({"status": "infeasible", "norm": inv.norm}),
            code: EXIT_INFEASIBLE,
        }),
        InverseSolution::Optimal { mods, objective } => {
            let modified = apply_modifications(inv, mods)?;
            let report = check_optimality(&modified, &inv.x_star)?;
            Ok(Outcome::ok(json!({
                "status": "optimal",
                "norm": inv.norm,
                "objective": objective,
                "mods": {
                    "u": mods.u,
                    "v": mods.v,
                    "lambda": mods.lambda,
                    "mu": mods.mu,
                },
                "modified": {
                    "b": modified.budget,
                    "x_star": inv.x_star.to_bits(),
                    "items": modified.items.iter().map(|it| json!({"p": it.profit, "c": it.cost})).collect::<Vec<_>>(),
                },
                "certificate": {
                    "optimal": report.is_optimal(),
                    "verdict": report.verdict,
                    "lhs_sum": report.lhs_sum.to_string(),
                },
            })))
        }
    }
}

//! Timing runs over generated instances, written as CSV.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::generate::gen_scaling;
use crate::inverse_l1::{solve_fifkp, CandidateMode};
use crate::inverse_linf::solve_linf;
use crate::model::{InverseSolution, Norm};

pub const CSV_HEADER: &str = "n,norm,mode,seed,objective,elapsed_ns";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub norm: Norm,
    pub mode: CandidateMode,
    pub seed: u64,
    /// Exact objective, or `infeasible`.
    pub objective: String,
    pub elapsed_ns: u128,
}

/// Solves one generated instance per `(n, norm, mode)` and records the
/// wall-clock time of the solver call. The candidate mode only affects l1
/// runs. Rows are in `n`, then `norm`, then `mode` order; runs are
/// sequential so timings do not interfere.
pub fn run_bench(
    n_list: &[usize],
    norms: &[Norm],
    modes: &[CandidateMode],
    seed: u64,
) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::new();
    for &n in n_list {
        for &norm in norms {
            let inv = gen_scaling(n, seed, norm);
            for &mode in modes {
                let start = Instant::now();
                let sol = match norm {
                    Norm::L1 => solve_fifkp(&inv, mode)?,
                    Norm::LInf => solve_linf(&inv)?,
                };
                let elapsed_ns = start.elapsed().as_nanos();
                let objective = match sol {
                    InverseSolution::Optimal { objective, .. } => objective.to_string(),
                    InverseSolution::Infeasible => "infeasible".to_string(),
                };
                out.push(BenchRecord {
                    n,
                    norm,
                    mode,
                    seed,
                    objective,
                    elapsed_ns,
                });
            }
        }
    }
    Ok(out)
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in records {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            r.n, r.norm, r.mode, r.seed, r.objective, r.elapsed_ns
        );
    }
    s
}

pub fn write_csv(path: impl AsRef<Path>, records: &[BenchRecord]) -> Result<()> {
    std::fs::write(path, to_csv(records))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_list_gives_header_only() {
        let recs = run_bench(&[], &[Norm::L1], &[CandidateMode::Paper], 1).unwrap();
        assert!(recs.is_empty());
        assert_eq!(to_csv(&recs), "n,norm,mode,seed,objective,elapsed_ns\n");
    }

    #[test]
    fn rows_and_determinism() {
        let norms = [Norm::L1, Norm::LInf];
        let modes = [CandidateMode::Paper, CandidateMode::Refined];
        let a = run_bench(&[10, 20], &norms, &modes, 5).unwrap();
        let b = run_bench(&[10, 20], &norms, &modes, 5).unwrap();
        assert_eq!(a.len(), 8);
        let obj = |r: &[BenchRecord]| r.iter().map(|x| x.objective.clone()).collect::<Vec<_>>();
        assert_eq!(obj(&a), obj(&b));
        assert!(a.iter().all(|r| r.objective != "infeasible"));
        assert_eq!(
            (a[0].n, a[0].norm, a[0].mode),
            (10, Norm::L1, CandidateMode::Paper)
        );
        assert_eq!(
            (a[7].n, a[7].norm, a[7].mode),
            (20, Norm::LInf, CandidateMode::Refined)
        );
        let csv = to_csv(&a);
        assert_eq!(csv.lines().count(), 9);
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn writes_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.csv");
        write_csv(&path, &[]).unwrap();
        assert_eq!(
            std::fs::read_to_string(path).unwrap(),
            format!("{CSV_HEADER}\n")
        );
    }
}

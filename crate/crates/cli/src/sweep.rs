//! Figure-data sweeps emitted as CSV.
//!
//! CSV conventions: comma separator, header row, LF line endings, floats at
//! 17 significant digits, rows in row-major grid order. The file is only
//! written after the whole sweep has evaluated cleanly.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use ppsim_core::infotheory::{dj_mutual_information, simon_mutual_information};

use crate::output::{fmt_f64, CliError, CliResult};

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Which game to sweep
    #[arg(value_enum)]
    pub which: SweepKind,

    /// Input width; defaults to 3 for dj, 10 for simon
    #[arg(long)]
    pub n: Option<usize>,

    /// Purity grid as start:end:step (or a single value)
    #[arg(long, alias = "epsilon")]
    pub eps: String,

    /// Prior grid as start:end:step (dj only)
    #[arg(long)]
    pub p: Option<String>,

    /// CSV output path
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Dj,
    Simon,
}

pub fn run(args: &SweepArgs) -> CliResult<()> {
    let eps_grid = parse_grid(&args.eps)?;
    let mut csv = String::new();
    match args.which {
        SweepKind::Dj => {
            let n = args.n.unwrap_or(3);
            let p_spec = args
                .p
                .as_ref()
                .ok_or_else(|| CliError::Usage("dj sweep needs --p start:end:step".into()))?;
            let p_grid = parse_grid(p_spec)?;
            let _ = writeln!(csv, "p,epsilon,mi_bits");
            for &p in &p_grid {
                for &eps in &eps_grid {
                    let bits = dj_mutual_information(n, eps, p)?;
                    let _ = writeln!(csv, "{},{},{}", fmt_f64(p), fmt_f64(eps), fmt_f64(bits));
                }
            }
        }
        SweepKind::Simon => {
            if args.p.is_some() {
                return Err(CliError::Usage("--p only applies to the dj sweep".into()));
            }
            let n = args.n.unwrap_or(10);
            let _ = writeln!(csv, "epsilon,mi_bits");
            for &eps in &eps_grid {
                let bits = simon_mutual_information(n, eps)?;
                let _ = writeln!(csv, "{},{}", fmt_f64(eps), fmt_f64(bits));
            }
        }
    }
    std::fs::write(&args.out, csv)?;
    Ok(())
}

/// Parse "start:end:step" into grid points; the endpoints land exactly on
/// `start` and `end`. A bare number is a one-point grid.
fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let bad = |msg: &str| CliError::Usage(format!("bad grid {spec:?}: {msg}"));
    let fields: Vec<&str> = spec.split(':').collect();
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    match fields.as_slice() {
        [single] => Ok(vec![parse(single)?]),
        [start, end, step] => {
            let (start, end, step) = (parse(start)?, parse(end)?, parse(step)?);
            if step.is_nan() || step <= 0.0 {
                return Err(bad("step must be positive"));
            }
            if end < start {
                return Err(bad("end is below start"));
            }
            let count = ((end - start) / step + 1e-9).floor() as usize;
            let mut points = Vec::with_capacity(count + 1);
            for i in 0..=count {
                let value = start + i as f64 * step;
                // snap the far edge so boundary rows are exact
                if i == count && (value - end).abs() <= step * 1e-6 {
                    points.push(end);
                } else {
                    points.push(value);
                }
            }
            Ok(points)
        }
        _ => Err(bad("expected start:end:step")),
    }
}

//! Werner-state witness report.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use ppsim_core::qstate::{ppt_min_eigenvalue, Epsilon, WernerState};
use serde::Serialize;

use crate::output::{emit, fmt_f64, to_json, CliResult};

#[derive(Args, Debug)]
pub struct WernerArgs {
    /// Singlet weight; a ratio like 1/2 or a decimal
    #[arg(long)]
    pub lambda: String,

    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,

    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct WernerReport {
    lambda: f64,
    /// Equivalent purity parameter (4 lambda - 1) / 3.
    epsilon: f64,
    ppt_min_eigenvalue: f64,
    verdict: &'static str,
}

pub fn run(args: &WernerArgs) -> CliResult<()> {
    let lambda = args.lambda.parse::<Epsilon>()?.value();
    let state = WernerState::new(lambda)?;
    let min_eig = ppt_min_eigenvalue(&state.density(), &[0])?;
    let epsilon = state.epsilon();

    let verdict = if epsilon.abs() <= 1e-12 {
        "fully mixed"
    } else if min_eig < -1e-9 {
        "entangled"
    } else if min_eig.abs() <= 1e-9 {
        "separable (boundary)"
    } else {
        "separable"
    };

    let report = WernerReport {
        lambda,
        epsilon,
        ppt_min_eigenvalue: min_eig,
        verdict,
    };
    let text = if args.json {
        to_json(&report)
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "two-qubit werner state");
        let _ = writeln!(s, "  lambda          : {}", fmt_f64(report.lambda));
        let _ = writeln!(s, "  epsilon         : {}", fmt_f64(report.epsilon));
        let _ = writeln!(
            s,
            "  ppt min eig     : {}",
            fmt_f64(report.ppt_min_eigenvalue)
        );
        let _ = writeln!(s, "  verdict         : {}", report.verdict);
        s
    };
    emit(&text, args.out.as_deref())
}

//! The cross-check suite behind `ppsim verify`: simulation against closed
//! forms, information re-derivations, purity conservation, witness
//! formulas, circuit audits, and the classical baselines. Exit code 0 only
//! when every check passes.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use ppsim_core::classical::{classical_dj_single_query_info, classical_simon_single_query_info};
use ppsim_core::experiments::{
    dj_closed_form, dj_simulate, simon_closed_form, simon_simulate, stepwise_ppt_audit, Circuit,
};
use ppsim_core::infotheory::{
    dj_joint_table, dj_mutual_information, dj_mutual_information_improved,
    empirical_mutual_information, entropy_h, simon_entropies, simon_mutual_information,
};
use ppsim_core::oracles::{DjFunction, DjKind, SimonFunction};
use ppsim_core::qmath::{apply_unitary, ComplexMatrix, PureState};
use ppsim_core::qstate::{extract_purity, make_pps, ppt_min_eigenvalue, werner};
use ppsim_core::rng::seeded_rng;
use serde::Serialize;

use crate::output::{emit, fmt_f64, to_json, CliError, CliResult};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Emit JSON instead of the text table
    #[arg(long)]
    pub json: bool,

    /// Write the results here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Self-test hook: corrupt the entropy function inside the
    /// re-derivation checks so the harness must report a failure
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Serialize)]
struct CheckResult {
    name: &'static str,
    passed: bool,
    max_delta: f64,
    tolerance: f64,
    detail: String,
}

#[derive(Serialize)]
struct VerifyReport {
    all_passed: bool,
    checks: Vec<CheckResult>,
}

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    let checks = vec![
        dj_simulation_equivalence(),
        simon_simulation_equivalence(),
        dj_information_rederivation(args.inject_fault),
        simon_information_rederivation(),
        purity_conservation(),
        werner_witness(),
        ppt_audit_dj(),
        ppt_audit_simon(),
        classical_zero_information(),
        headline_values(),
    ];
    let all_passed = checks.iter().all(|c| c.passed);
    let report = VerifyReport { all_passed, checks };

    let text = if args.json {
        to_json(&report)
    } else {
        render(&report)
    };
    emit(&text, args.out.as_deref())?;

    if all_passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect();
        Err(CliError::CheckFailed(format!(
            "checks failed: {}",
            failed.join(", ")
        )))
    }
}

fn render(report: &VerifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<34} {:<6} {:<12} detail",
        "check", "status", "max delta"
    );
    for c in &report.checks {
        let _ = writeln!(
            s,
            "{:<34} {:<6} {:<12} {}",
            c.name,
            if c.passed { "PASS" } else { "FAIL" },
            format!("{:.3e}", c.max_delta),
            c.detail
        );
    }
    let _ = writeln!(
        s,
        "{}",
        if report.all_passed {
            "all checks passed"
        } else {
            "CHECKS FAILED"
        }
    );
    s
}

fn check(name: &'static str, tolerance: f64, max_delta: f64, detail: String) -> CheckResult {
    CheckResult {
        name,
        passed: max_delta <= tolerance,
        max_delta,
        tolerance,
        detail,
    }
}

fn dj_simulation_equivalence() -> CheckResult {
    let mut worst: f64 = 0.0;
    let mut runs = 0usize;
    for n in 1..=3usize {
        let mut instances = vec![
            DjFunction::constant(n, false).unwrap(),
            DjFunction::constant(n, true).unwrap(),
        ];
        for seed in 0..6u64 {
            instances.push(DjFunction::balanced_random(n, 100 * n as u64 + seed).unwrap());
        }
        for f in &instances {
            for eps in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let sim = dj_simulate(f, eps).unwrap();
                let closed = dj_closed_form(n, eps).unwrap();
                let zero = match f.kind() {
                    DjKind::Constant => closed.p_zero_given_constant,
                    DjKind::Balanced => closed.p_zero_given_balanced,
                };
                worst = worst.max((sim.p_zero() - zero).abs());
                runs += 1;
            }
        }
    }
    check(
        "dj-simulation-equivalence",
        1e-12,
        worst,
        format!("{runs} simulated instances"),
    )
}

fn simon_simulation_equivalence() -> CheckResult {
    let mut worst: f64 = 0.0;
    let mut runs = 0usize;
    for n in 2..=3usize {
        for mask in 1..(1u64 << n) {
            for f in [
                SimonFunction::canonical(n, mask).unwrap(),
                SimonFunction::randomized(n, mask, 71 + mask).unwrap(),
            ] {
                for eps in [0.0, 0.5, 1.0] {
                    let sim = simon_simulate(&f, eps).unwrap();
                    let closed = simon_closed_form(n, eps, mask).unwrap();
                    for (got, want) in sim.iter().zip(closed.probs()) {
                        worst = worst.max((got - want).abs());
                    }
                    runs += 1;
                }
            }
        }
    }
    check(
        "simon-simulation-equivalence",
        1e-12,
        worst,
        format!("{runs} simulated instances"),
    )
}

fn dj_information_rederivation(inject_fault: bool) -> CheckResult {
    // Bayes route through the posterior entropies, plus the generic joint
    // table, must both reproduce the direct value
    let h = |q: f64| {
        let value = entropy_h(q).unwrap();
        if inject_fault {
            -value
        } else {
            value
        }
    };
    let mut worst: f64 = 0.0;
    for n in [1usize, 3] {
        let scale = (1u64 << n) as f64;
        for eps in [1e-4, 0.01, 0.3, 0.9] {
            for p in [0.3, 0.5, 0.8] {
                let direct = dj_mutual_information(n, eps, p).unwrap();

                let p_zero = p * eps + (1.0 - eps) / scale;
                let posterior_zero = (p / p_zero) * (eps + (1.0 - eps) / scale);
                let posterior_nonzero = (p * (1.0 - eps) / (1.0 - p_zero)) * (1.0 - 1.0 / scale);
                let bayes = h(p)
                    - p_zero * h(posterior_zero.min(1.0))
                    - (1.0 - p_zero) * h(posterior_nonzero);
                worst = worst.max((direct - bayes).abs());

                let table = dj_joint_table(n, eps, p).unwrap();
                let generic = empirical_mutual_information(&table.rows()).unwrap();
                worst = worst.max((direct - generic).abs());
            }
        }
    }
    check(
        "dj-information-rederivation",
        1e-12,
        worst,
        "posterior-entropy and joint-table routes".into(),
    )
}

fn simon_information_rederivation() -> CheckResult {
    let mut worst: f64 = 0.0;
    for n in [2usize, 3] {
        let masks = (1u64 << n) - 1;
        for eps in [1e-3, 0.05, 0.5, 1.0] {
            let direct = simon_mutual_information(n, eps).unwrap();

            let (h_j, h_j_given_s) = simon_entropies(n, eps).unwrap();
            worst = worst.max((direct - (h_j - h_j_given_s)).abs());

            let joint: Vec<Vec<f64>> = (1..=masks)
                .map(|mask| {
                    simon_closed_form(n, eps, mask)
                        .unwrap()
                        .probs()
                        .iter()
                        .map(|p| p / masks as f64)
                        .collect()
                })
                .collect();
            let generic = empirical_mutual_information(&joint).unwrap();
            worst = worst.max((direct - generic).abs());
        }
    }
    check(
        "simon-information-rederivation",
        1e-12,
        worst,
        "entropy-difference and uniform-mask joint routes".into(),
    )
}

fn purity_conservation() -> CheckResult {
    let mut rng = seeded_rng(0xA11CE);
    let psi = PureState::random(3, &mut rng);
    let mut worst: f64 = 0.0;
    for eps in [0.0, 0.3, 0.7, 1.0] {
        let rho = make_pps(&psi, eps).unwrap();
        for _ in 0..10 {
            let u = ComplexMatrix::random_unitary(8, &mut rng);
            let evolved = apply_unitary(&rho, &u).unwrap();
            let probe = psi.evolve(&u).unwrap();
            worst = worst.max((extract_purity(&evolved, &probe).unwrap() - eps).abs());
        }
    }
    check(
        "purity-conservation",
        1e-10,
        worst,
        "40 random unitaries on 3 qubits".into(),
    )
}

fn werner_witness() -> CheckResult {
    let mut worst: f64 = 0.0;
    for k in 0..=15 {
        let lambda = 0.25 + 0.75 * k as f64 / 15.0;
        let eps = (4.0 * lambda - 1.0) / 3.0;
        let min_eig = ppt_min_eigenvalue(&werner(lambda).unwrap(), &[0]).unwrap();
        worst = worst.max((min_eig - (1.0 - 3.0 * eps) / 4.0).abs());
    }
    check(
        "werner-witness",
        1e-9,
        worst,
        "min transposed eigenvalue vs (1-3eps)/4".into(),
    )
}

fn ppt_audit_dj() -> CheckResult {
    let f = DjFunction::balanced_random(3, 11).unwrap();
    let audit = stepwise_ppt_audit(Circuit::DeutschJozsa(&f), 1.0 / 130.0).unwrap();
    let worst = (-audit.min_eigenvalue).max(0.0);
    check(
        "ppt-audit-dj",
        1e-10,
        worst,
        format!(
            "n=3, eps=1/130, min witness {} over {} steps",
            fmt_f64(audit.min_eigenvalue),
            audit.steps.len()
        ),
    )
}

fn ppt_audit_simon() -> CheckResult {
    let f = SimonFunction::randomized(3, 0b101, 7).unwrap();
    let audit = stepwise_ppt_audit(Circuit::Simon(&f), 1.0 / 2050.0).unwrap();
    let worst = (-audit.min_eigenvalue).max(0.0);
    check(
        "ppt-audit-simon",
        1e-10,
        worst,
        format!(
            "n=3, eps=1/2050, min witness {} over {} steps",
            fmt_f64(audit.min_eigenvalue),
            audit.steps.len()
        ),
    )
}

fn classical_zero_information() -> CheckResult {
    let mut worst: f64 = 0.0;
    for n in 1..=4usize {
        for p in [0.3, 0.5, 0.7] {
            worst = worst.max(classical_dj_single_query_info(n, p).unwrap().abs());
        }
    }
    for n in 1..=3usize {
        worst = worst.max(classical_simon_single_query_info(n).unwrap().abs());
    }
    check(
        "classical-zero-information",
        1e-15,
        worst,
        "exhaustive single-query enumerations".into(),
    )
}

fn headline_values() -> CheckResult {
    let dj = dj_mutual_information(3, 1.0 / 129.0, 0.5).unwrap();
    let improved = dj_mutual_information_improved(3, 1.0 / 129.0, 0.5).unwrap();
    let simon = simon_mutual_information(3, 1.0 / 2049.0).unwrap();
    // deltas normalized by each tolerance so one bound covers all three
    let worst = ((dj - 0.0000972f64).abs() / 1e-7)
        .max((improved - 0.000189).abs() / 1e-6)
        .max((simon - 1.47e-7).abs() / 2e-9);
    check(
        "headline-values",
        1.0,
        worst,
        format!(
            "I_dj {}, I_improved {}, I_simon {}",
            fmt_f64(dj),
            fmt_f64(improved),
            fmt_f64(simon)
        ),
    )
}

//! The hidden-xor-mask game report.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use ppsim_core::experiments::{simon_closed_form, simon_simulate};
use ppsim_core::infotheory::simon_info_report;
use ppsim_core::oracles::SimonFunction;
use ppsim_core::qstate::Epsilon;
use serde::Serialize;

use crate::output::{emit, fmt_f64, to_json, CliResult};
use crate::separability::SeparabilityStatus;
use crate::Mode;

#[derive(Args, Debug)]
pub struct SimonArgs {
    /// Width of the hidden mask (input and output bits)
    #[arg(long, default_value_t = 3)]
    pub n: usize,

    /// Purity parameter; a ratio like 1/2049 or a decimal
    #[arg(long, alias = "eps", default_value = "1/2049")]
    pub epsilon: String,

    /// exact: closed forms only; simulate / both: also run the dense
    /// density-matrix cross-check
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,

    /// Seed for the relabeled instances in the cross-check and for sampling
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Demonstration only: draw this many outcomes from the exact
    /// distribution conditioned on mask s = 1
    #[arg(long, default_value_t = 0)]
    pub samples: u64,

    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,

    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct SimonReport {
    n: usize,
    total_qubits: usize,
    epsilon: String,
    epsilon_value: f64,
    /// P(J = j | S = s) on the subgroup orthogonal to the mask.
    p_outcome_orthogonal: f64,
    /// P(J = j | S = s) off that subgroup.
    p_outcome_overlapping: f64,
    outcome_entropy_bits: f64,
    conditional_entropy_bits: f64,
    mutual_information_bits: f64,
    asymptotic_bits: f64,
    separability: SeparabilityStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    simulation: Option<SimulationBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sampling: Option<SamplingBlock>,
}

#[derive(Serialize)]
struct SimulationBlock {
    instances: usize,
    seed: u64,
    max_abs_gap: f64,
}

#[derive(Serialize)]
struct SamplingBlock {
    samples: u64,
    seed: u64,
    mask: u64,
    /// Fraction of sampled j with j.s = 0; expectation is (1 + eps) / 2.
    orthogonal_frequency: f64,
}

pub fn run(args: &SimonArgs) -> CliResult<()> {
    let epsilon: Epsilon = args.epsilon.parse()?;
    let eps = epsilon.value();
    let info = simon_info_report(args.n, eps)?;
    let scale = 2f64.powi(args.n as i32);

    let simulation = if args.mode.simulates() {
        Some(simulate_block(args.n, eps, args.seed)?)
    } else {
        None
    };
    let sampling = if args.samples > 0 {
        Some(sampling_block(args.n, eps, args.samples, args.seed)?)
    } else {
        None
    };

    let report = SimonReport {
        n: args.n,
        total_qubits: 2 * args.n,
        epsilon: epsilon.to_string(),
        epsilon_value: eps,
        p_outcome_orthogonal: (1.0 + eps) / scale,
        p_outcome_overlapping: (1.0 - eps) / scale,
        outcome_entropy_bits: info.prior_entropy_bits,
        conditional_entropy_bits: info.conditional_entropy_bits,
        mutual_information_bits: info.mutual_information_bits,
        asymptotic_bits: info.asymptotic_bits,
        separability: SeparabilityStatus::for_epsilon(&epsilon, 2 * args.n),
        simulation,
        sampling,
    };

    let text = if args.json {
        to_json(&report)
    } else {
        render(&report)
    };
    emit(&text, args.out.as_deref())
}

fn sampling_block(n: usize, eps: f64, samples: u64, seed: u64) -> CliResult<SamplingBlock> {
    use rand::Rng;
    let mask = 1u64;
    let dist = simon_closed_form(n, eps, mask)?;
    let mut rng = ppsim_core::rng::seeded_rng(seed);
    let mut orthogonal = 0u64;
    for _ in 0..samples {
        let mut u = rng.gen::<f64>();
        let mut outcome = 0usize;
        for (j, p) in dist.probs().iter().enumerate() {
            outcome = j;
            if u < *p {
                break;
            }
            u -= p;
        }
        if (outcome as u64 & mask).count_ones().is_multiple_of(2) {
            orthogonal += 1;
        }
    }
    Ok(SamplingBlock {
        samples,
        seed,
        mask,
        orthogonal_frequency: orthogonal as f64 / samples as f64,
    })
}

fn simulate_block(n: usize, eps: f64, seed: u64) -> CliResult<SimulationBlock> {
    let masks: Vec<u64> = if n <= 3 {
        (1..1u64 << n).collect()
    } else {
        vec![1]
    };
    let mut max_gap: f64 = 0.0;
    let mut instances = 0usize;
    for &mask in &masks {
        for f in [
            SimonFunction::canonical(n, mask)?,
            SimonFunction::randomized(n, mask, seed)?,
        ] {
            let sim = simon_simulate(&f, eps)?;
            let closed = simon_closed_form(n, eps, mask)?;
            for (got, want) in sim.iter().zip(closed.probs()) {
                max_gap = max_gap.max((got - want).abs());
            }
            instances += 1;
        }
    }
    Ok(SimulationBlock {
        instances,
        seed,
        max_abs_gap: max_gap,
    })
}

fn render(r: &SimonReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "hidden-mask game on a pseudo-pure state");
    let _ = writeln!(s, "  mask width n          : {}", r.n);
    let _ = writeln!(s, "  total qubits          : {}", r.total_qubits);
    let _ = writeln!(
        s,
        "  epsilon               : {} = {}",
        r.epsilon,
        fmt_f64(r.epsilon_value)
    );
    let _ = writeln!(
        s,
        "  P(j | j.s = 0)        : {}",
        fmt_f64(r.p_outcome_orthogonal)
    );
    let _ = writeln!(
        s,
        "  P(j | j.s = 1)        : {}",
        fmt_f64(r.p_outcome_overlapping)
    );
    let _ = writeln!(
        s,
        "  H(J) bits             : {}",
        fmt_f64(r.outcome_entropy_bits)
    );
    let _ = writeln!(
        s,
        "  H(J|S) bits           : {}",
        fmt_f64(r.conditional_entropy_bits)
    );
    let _ = writeln!(
        s,
        "  I(S;J) bits           : {}",
        fmt_f64(r.mutual_information_bits)
    );
    let _ = writeln!(
        s,
        "  small-eps approx bits : {}",
        fmt_f64(r.asymptotic_bits)
    );
    let _ = writeln!(s, "  separability          : {}", r.separability.render());
    if let Some(sim) = &r.simulation {
        let _ = writeln!(s, "  simulation cross-check:");
        let _ = writeln!(
            s,
            "    instances           : {} (canonical + relabeled per mask, seed {})",
            sim.instances, sim.seed
        );
        let _ = writeln!(s, "    max |sim - closed|  : {}", fmt_f64(sim.max_abs_gap));
    }
    if let Some(sampled) = &r.sampling {
        let _ = writeln!(
            s,
            "  sampled outcomes ({} draws, mask {}, seed {}):",
            sampled.samples, sampled.mask, sampled.seed
        );
        let _ = writeln!(
            s,
            "    freq(j.s = 0)       : {} (expected {})",
            fmt_f64(sampled.orthogonal_frequency),
            fmt_f64((1.0 + r.epsilon_value) / 2.0)
        );
    }
    s
}

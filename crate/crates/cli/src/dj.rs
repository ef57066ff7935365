//! The constant-vs-balanced game report.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use ppsim_core::experiments::{dj_closed_form, dj_improved_closed_form, dj_simulate};
use ppsim_core::infotheory::{dj_info_report, dj_joint_table};
use ppsim_core::oracles::{DjFunction, DjKind};
use ppsim_core::qstate::Epsilon;
use serde::Serialize;

use crate::output::{emit, fmt_f64, to_json, CliResult};
use crate::separability::SeparabilityStatus;
use crate::Mode;

#[derive(Args, Debug)]
pub struct DjArgs {
    /// Input bits of the black-box function
    #[arg(long, default_value_t = 3)]
    pub n: usize,

    /// Purity parameter; a ratio like 1/129 or a decimal
    #[arg(long, alias = "eps", default_value = "1/129")]
    pub epsilon: String,

    /// Prior probability that the function is constant
    #[arg(long, default_value = "1/2")]
    pub p: String,

    /// Measure the output qubit too and condition on it
    #[arg(long)]
    pub improved: bool,

    /// exact: closed forms only; simulate / both: also run the dense
    /// density-matrix cross-check
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,

    /// Seed for the simulated balanced instances and for sampling
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Demonstration only: draw this many measurement outcomes per
    /// function kind from the exact distribution
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
struct DjReport {
    n: usize,
    total_qubits: usize,
    epsilon: String,
    epsilon_value: f64,
    p_constant: f64,
    improved: bool,
    p_zero_given_constant: f64,
    p_nonzero_given_constant: f64,
    p_zero_given_balanced: f64,
    p_nonzero_given_balanced: f64,
    /// Rows constant/balanced, columns zero/nonzero.
    joint_table: [[f64; 2]; 2],
    marginal_p_zero: f64,
    prior_entropy_bits: f64,
    conditional_entropy_bits: f64,
    mutual_information_bits: f64,
    asymptotic_bits: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    improved_detail: Option<ImprovedDetail>,
    separability: SeparabilityStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    simulation: Option<SimulationBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sampling: Option<SamplingBlock>,
}

#[derive(Serialize)]
struct ImprovedDetail {
    p_output_one: f64,
    epsilon_boosted: f64,
}

#[derive(Serialize)]
struct SimulationBlock {
    constant_instances: usize,
    balanced_instances: usize,
    seed: u64,
    max_abs_gap: f64,
    p_output_one_simulated: f64,
    p_output_one_expected: f64,
}

#[derive(Serialize)]
struct SamplingBlock {
    samples: u64,
    seed: u64,
    zero_frequency_given_constant: f64,
    zero_frequency_given_balanced: f64,
}

pub fn run(args: &DjArgs) -> CliResult<()> {
    let epsilon: Epsilon = args.epsilon.parse()?;
    let eps = epsilon.value();
    let p_constant = args.p.parse::<Epsilon>()?.value();

    let probs = dj_closed_form(args.n, eps)?;
    let table = dj_joint_table(args.n, eps, p_constant)?;
    let info = dj_info_report(args.n, eps, p_constant, args.improved)?;
    let improved_detail = if args.improved {
        let outcome = dj_improved_closed_form(args.n, eps)?;
        Some(ImprovedDetail {
            p_output_one: outcome.p_output_one,
            epsilon_boosted: outcome.epsilon_boosted,
        })
    } else {
        None
    };
    let simulation = if args.mode.simulates() {
        Some(simulate_block(args.n, eps, args.seed)?)
    } else {
        None
    };
    let sampling = if args.samples > 0 {
        Some(sampling_block(&probs, args.samples, args.seed))
    } else {
        None
    };

    let report = DjReport {
        n: args.n,
        total_qubits: args.n + 1,
        epsilon: epsilon.to_string(),
        epsilon_value: eps,
        p_constant,
        improved: args.improved,
        p_zero_given_constant: probs.p_zero_given_constant,
        p_nonzero_given_constant: probs.p_nonzero_given_constant,
        p_zero_given_balanced: probs.p_zero_given_balanced,
        p_nonzero_given_balanced: probs.p_nonzero_given_balanced,
        joint_table: table.cells,
        marginal_p_zero: table.p_zero(),
        prior_entropy_bits: info.prior_entropy_bits,
        conditional_entropy_bits: info.conditional_entropy_bits,
        mutual_information_bits: info.mutual_information_bits,
        asymptotic_bits: info.asymptotic_bits,
        improved_detail,
        separability: SeparabilityStatus::for_epsilon(&epsilon, args.n + 1),
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

fn sampling_block(
    probs: &ppsim_core::experiments::DjOutcomeProbs,
    samples: u64,
    seed: u64,
) -> SamplingBlock {
    use rand::Rng;
    let mut rng = ppsim_core::rng::seeded_rng(seed);
    let mut draw = |p_zero: f64| {
        let hits = (0..samples).filter(|_| rng.gen::<f64>() < p_zero).count();
        hits as f64 / samples as f64
    };
    SamplingBlock {
        samples,
        seed,
        zero_frequency_given_constant: draw(probs.p_zero_given_constant),
        zero_frequency_given_balanced: draw(probs.p_zero_given_balanced),
    }
}

fn simulate_block(n: usize, eps: f64, seed: u64) -> CliResult<SimulationBlock> {
    let balanced_count = if n <= 4 { 10 } else { 3 };
    let mut instances = vec![
        DjFunction::constant(n, false)?,
        DjFunction::constant(n, true)?,
    ];
    for k in 0..balanced_count {
        instances.push(DjFunction::balanced_random(n, seed.wrapping_add(k))?);
    }
    let closed = dj_closed_form(n, eps)?;
    let mut max_gap: f64 = 0.0;
    let mut p_output_one = 0.0;
    for f in &instances {
        let sim = dj_simulate(f, eps)?;
        let (zero, nonzero) = match f.kind() {
            DjKind::Constant => (
                closed.p_zero_given_constant,
                closed.p_nonzero_given_constant,
            ),
            DjKind::Balanced => (
                closed.p_zero_given_balanced,
                closed.p_nonzero_given_balanced,
            ),
        };
        max_gap = max_gap.max((sim.p_zero() - zero).abs());
        max_gap = max_gap.max((sim.p_nonzero() - nonzero).abs());
        p_output_one = sim.p_output_one();
    }
    Ok(SimulationBlock {
        constant_instances: 2,
        balanced_instances: balanced_count as usize,
        seed,
        max_abs_gap: max_gap,
        p_output_one_simulated: p_output_one,
        p_output_one_expected: (1.0 + eps) / 2.0,
    })
}

fn render(r: &DjReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "constant-vs-balanced game on a pseudo-pure state");
    let _ = writeln!(s, "  input bits n          : {}", r.n);
    let _ = writeln!(s, "  total qubits          : {}", r.total_qubits);
    let _ = writeln!(
        s,
        "  epsilon               : {} = {}",
        r.epsilon,
        fmt_f64(r.epsilon_value)
    );
    let _ = writeln!(s, "  prior P(constant)     : {}", fmt_f64(r.p_constant));
    let _ = writeln!(
        s,
        "  P(z=0  | constant)    : {}",
        fmt_f64(r.p_zero_given_constant)
    );
    let _ = writeln!(
        s,
        "  P(z!=0 | constant)    : {}",
        fmt_f64(r.p_nonzero_given_constant)
    );
    let _ = writeln!(
        s,
        "  P(z=0  | balanced)    : {}",
        fmt_f64(r.p_zero_given_balanced)
    );
    let _ = writeln!(
        s,
        "  P(z!=0 | balanced)    : {}",
        fmt_f64(r.p_nonzero_given_balanced)
    );
    let _ = writeln!(
        s,
        "  joint(const, z=0)     : {}",
        fmt_f64(r.joint_table[0][0])
    );
    let _ = writeln!(
        s,
        "  joint(const, z!=0)    : {}",
        fmt_f64(r.joint_table[0][1])
    );
    let _ = writeln!(
        s,
        "  joint(bal,   z=0)     : {}",
        fmt_f64(r.joint_table[1][0])
    );
    let _ = writeln!(
        s,
        "  joint(bal,   z!=0)    : {}",
        fmt_f64(r.joint_table[1][1])
    );
    let _ = writeln!(
        s,
        "  P(z=0)                : {}",
        fmt_f64(r.marginal_p_zero)
    );
    if let Some(detail) = &r.improved_detail {
        let _ = writeln!(
            s,
            "  P(output qubit = 1)   : {}",
            fmt_f64(detail.p_output_one)
        );
        let _ = writeln!(
            s,
            "  boosted epsilon       : {}",
            fmt_f64(detail.epsilon_boosted)
        );
    }
    let _ = writeln!(
        s,
        "  H(X) bits             : {}",
        fmt_f64(r.prior_entropy_bits)
    );
    let _ = writeln!(
        s,
        "  H(X|Y) bits           : {}",
        fmt_f64(r.conditional_entropy_bits)
    );
    let label = if r.improved {
        "I(X;Y) improved bits  "
    } else {
        "I(X;Y) bits           "
    };
    let _ = writeln!(s, "  {label}: {}", fmt_f64(r.mutual_information_bits));
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
            "    instances           : {} constant + {} balanced (seed {})",
            sim.constant_instances, sim.balanced_instances, sim.seed
        );
        let _ = writeln!(s, "    max |sim - closed|  : {}", fmt_f64(sim.max_abs_gap));
        let _ = writeln!(
            s,
            "    P(output = 1)       : {} (expected {})",
            fmt_f64(sim.p_output_one_simulated),
            fmt_f64(sim.p_output_one_expected)
        );
    }
    if let Some(sampled) = &r.sampling {
        let _ = writeln!(
            s,
            "  sampled outcomes ({} draws, seed {}):",
            sampled.samples, sampled.seed
        );
        let _ = writeln!(
            s,
            "    freq(z=0 | constant): {}",
            fmt_f64(sampled.zero_frequency_given_constant)
        );
        let _ = writeln!(
            s,
            "    freq(z=0 | balanced): {}",
            fmt_f64(sampled.zero_frequency_given_balanced)
        );
    }
    s
}

//! End-to-end single-query experiments, each available two ways: an exact
//! closed form and a full density-matrix simulation. The two routes are
//! cross-checked against each other in the test suite.

use crate::error::{Error, Result};
use crate::oracles::{DjFunction, SimonFunction};
use crate::qmath::{apply_unitary, partial_trace, ComplexMatrix, PureState};
use crate::qstate::{make_pps, ppt_min_eigenvalue, separability_threshold};

/// Largest input width simulated densely for the constant-vs-balanced game
/// (n + 1 qubits, so 2^9 x 2^9 matrices at the cap).
pub const DJ_DENSE_CAP: usize = 8;

/// Largest input width simulated densely for the hidden-mask game
/// (2n qubits, so 2^10 x 2^10 matrices at the cap).
pub const SIMON_DENSE_CAP: usize = 5;

/// Exact outcome probabilities for the constant-vs-balanced game on a
/// pseudo-pure state with purity `epsilon`.
#[derive(Clone, Copy, Debug)]
pub struct DjOutcomeProbs {
    pub n: usize,
    pub epsilon: f64,
    pub p_zero_given_constant: f64,
    pub p_nonzero_given_constant: f64,
    pub p_zero_given_balanced: f64,
    pub p_nonzero_given_balanced: f64,
}

/// With probability `epsilon` the register starts pure and the interference
/// pattern is deterministic; otherwise the outcome is uniform over 2^n.
pub fn dj_closed_form(n: usize, epsilon: f64) -> Result<DjOutcomeProbs> {
    validate(n, epsilon)?;
    // exact 2^n as a float; the closed form carries no width cap
    let scale = 2f64.powi(n as i32);
    let uniform_zero = (1.0 - epsilon) / scale;
    let uniform_nonzero = (scale - 1.0) / scale * (1.0 - epsilon);
    Ok(DjOutcomeProbs {
        n,
        epsilon,
        p_zero_given_constant: epsilon + uniform_zero,
        p_nonzero_given_constant: uniform_nonzero,
        p_zero_given_balanced: uniform_zero,
        p_nonzero_given_balanced: epsilon + uniform_nonzero,
    })
}

/// Measured distribution from the dense simulation of one oracle instance.
#[derive(Clone, Debug)]
pub struct DjSimulation {
    pub n: usize,
    pub epsilon: f64,
    /// Joint diagonal over (z, output qubit), indexed `z * 2 + bit`.
    joint: Vec<f64>,
    /// Distribution over z read from the reduced first register.
    z_probs: Vec<f64>,
}

impl DjSimulation {
    pub fn z_distribution(&self) -> &[f64] {
        &self.z_probs
    }

    pub fn p_zero(&self) -> f64 {
        self.z_probs[0]
    }

    pub fn p_nonzero(&self) -> f64 {
        self.z_probs[1..].iter().sum()
    }

    pub fn p_output_one(&self) -> f64 {
        self.joint.iter().skip(1).step_by(2).sum()
    }

    /// Joint probability of outcome z with the output qubit reading `bit`.
    pub fn joint_prob(&self, z: usize, bit: usize) -> f64 {
        self.joint[z * 2 + bit]
    }

    /// Distribution over z conditioned on the output qubit, with the weight
    /// of that branch. All-zero when the branch has no weight.
    pub fn conditional_on_output(&self, bit: usize) -> (f64, Vec<f64>) {
        let weight: f64 = self.joint.iter().skip(bit).step_by(2).sum();
        let conditional = self
            .joint
            .iter()
            .skip(bit)
            .step_by(2)
            .map(|p| if weight == 0.0 { 0.0 } else { p / weight })
            .collect();
        (weight, conditional)
    }
}

/// Run the interference circuit on `epsilon |0^n 1><0^n 1| + (1-eps) I/2^m`:
/// Hadamard everywhere, the oracle, Hadamard everywhere, then read the
/// first-register distribution from the reduced density matrix.
pub fn dj_simulate(f: &DjFunction, epsilon: f64) -> Result<DjSimulation> {
    let n = f.n();
    if n > DJ_DENSE_CAP {
        return Err(Error::DenseCapExceeded {
            requested: n,
            cap: DJ_DENSE_CAP,
        });
    }
    validate(n, epsilon)?;
    let total = n + 1;
    let start = PureState::basis(n, 0).tensor(&PureState::basis(1, 1));
    let mut rho = make_pps(&start, epsilon)?;

    let h_all = ComplexMatrix::hadamard_n(total);
    rho = apply_unitary(&rho, &h_all)?;
    rho = apply_unitary(&rho, f.oracle_unitary().matrix())?;
    rho = apply_unitary(&rho, &h_all)?;

    let reduced = partial_trace(&rho, &(0..n).collect::<Vec<_>>(), total)?;
    Ok(DjSimulation {
        n,
        epsilon,
        joint: rho.diagonal_probabilities(),
        z_probs: reduced.diagonal_probabilities(),
    })
}

/// Closed form for the variant that also measures the output qubit.
#[derive(Clone, Copy, Debug)]
pub struct ImprovedDjOutcome {
    pub n: usize,
    pub epsilon: f64,
    /// Purity of the branch where the output qubit reads 1.
    pub epsilon_boosted: f64,
    /// Probability of that branch, `(1 + epsilon) / 2`.
    pub p_output_one: f64,
    /// Joint over (output bit, z class) given a constant function;
    /// rows are output 0 / 1, columns z = 0 / z != 0.
    pub joint_given_constant: [[f64; 2]; 2],
    /// Same, given a balanced function.
    pub joint_given_balanced: [[f64; 2]; 2],
}

/// The pure part always leaves the output qubit at 1, so reading 0 flags
/// the fully mixed branch (uniform z) while reading 1 boosts the pure
/// fraction to `2 eps / (1 + eps)`.
pub fn dj_improved_closed_form(n: usize, epsilon: f64) -> Result<ImprovedDjOutcome> {
    validate(n, epsilon)?;
    let scale = 2f64.powi(n as i32);
    let mixed = 1.0 - epsilon;
    // mixed branch spreads uniformly over output bit and z
    let mixed_zero = mixed / (2.0 * scale);
    let mixed_nonzero = mixed * (scale - 1.0) / (2.0 * scale);
    let joint_given_constant = [
        [mixed_zero, mixed_nonzero],
        [epsilon + mixed_zero, mixed_nonzero],
    ];
    let joint_given_balanced = [
        [mixed_zero, mixed_nonzero],
        [mixed_zero, epsilon + mixed_nonzero],
    ];
    Ok(ImprovedDjOutcome {
        n,
        epsilon,
        epsilon_boosted: 2.0 * epsilon / (1.0 + epsilon),
        p_output_one: (1.0 + epsilon) / 2.0,
        joint_given_constant,
        joint_given_balanced,
    })
}

/// Exact outcome distribution for the hidden-mask game.
#[derive(Clone, Debug)]
pub struct SimonOutcomeDist {
    pub n: usize,
    pub epsilon: f64,
    pub mask: u64,
    probs: Vec<f64>,
}

impl SimonOutcomeDist {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, j: usize) -> f64 {
        self.probs[j]
    }
}

/// `P(J = j | S = s)` is `(1 + eps) / 2^n` on the subgroup orthogonal to
/// the mask and `(1 - eps) / 2^n` off it.
pub fn simon_closed_form(n: usize, epsilon: f64, mask: u64) -> Result<SimonOutcomeDist> {
    validate(n, epsilon)?;
    // the distribution is materialized outcome by outcome, so unlike the
    // information formulas this does need a width bound
    if n > 32 {
        return Err(Error::EnumerationCapExceeded {
            requested: n,
            cap: 32,
        });
    }
    if mask == 0 || mask >= 1u64 << n {
        return Err(Error::InvalidMask { mask, n });
    }
    let scale = (1u64 << n) as f64;
    let orthogonal = (1.0 + epsilon) / scale;
    let overlapping = (1.0 - epsilon) / scale;
    let probs = (0..1usize << n)
        .map(|j| {
            if (j as u64 & mask).count_ones().is_multiple_of(2) {
                orthogonal
            } else {
                overlapping
            }
        })
        .collect();
    Ok(SimonOutcomeDist {
        n,
        epsilon,
        mask,
        probs,
    })
}

/// Run the hidden-mask circuit on `epsilon |0^n 0^n><...| + (1-eps) I/2^m`:
/// Hadamard on the first register, the oracle, Hadamard on the first
/// register again, then measure the first register.
pub fn simon_simulate(f: &SimonFunction, epsilon: f64) -> Result<Vec<f64>> {
    let n = f.n();
    if n > SIMON_DENSE_CAP {
        return Err(Error::DenseCapExceeded {
            requested: n,
            cap: SIMON_DENSE_CAP,
        });
    }
    validate(n, epsilon)?;
    let total = 2 * n;
    let start = PureState::basis(total, 0);
    let mut rho = make_pps(&start, epsilon)?;

    let h_first = ComplexMatrix::hadamard_n(n).tensor(&ComplexMatrix::identity(1 << n));
    rho = apply_unitary(&rho, &h_first)?;
    rho = apply_unitary(&rho, f.oracle_unitary().matrix())?;
    rho = apply_unitary(&rho, &h_first)?;

    let reduced = partial_trace(&rho, &(0..n).collect::<Vec<_>>(), total)?;
    Ok(reduced.diagonal_probabilities())
}

/// Which circuit a PPT audit walks through.
#[derive(Clone, Copy, Debug)]
pub enum Circuit<'a> {
    DeutschJozsa(&'a DjFunction),
    Simon(&'a SimonFunction),
}

/// Witness value for one bipartition at one point in the circuit.
#[derive(Clone, Debug)]
pub struct PptAuditEntry {
    /// Qubits on the left side of the bipartition (always containing 0).
    pub left_qubits: Vec<usize>,
    pub min_eigenvalue: f64,
}

/// All bipartition witnesses after one gate layer.
#[derive(Clone, Debug)]
pub struct PptAuditStep {
    pub label: &'static str,
    pub entries: Vec<PptAuditEntry>,
    /// Smallest witness value across the bipartitions of this step.
    pub min_eigenvalue: f64,
}

/// Full stepwise audit of a circuit run.
#[derive(Clone, Debug)]
pub struct PptAudit {
    pub total_qubits: usize,
    pub epsilon: f64,
    /// Purity bound for this qubit count.
    pub threshold: f64,
    /// Whether `epsilon` is strictly below the bound, i.e. separability is
    /// guaranteed at every step. Above it the audit still runs, flagged as
    /// not certified.
    pub certified_regime: bool,
    pub steps: Vec<PptAuditStep>,
    pub min_eigenvalue: f64,
}

/// Evolve the pseudo-pure state through the circuit layer by layer and
/// record the partial-transpose witness on every bipartition after each
/// layer, ending with the dephased post-measurement state.
pub fn stepwise_ppt_audit(circuit: Circuit<'_>, epsilon: f64) -> Result<PptAudit> {
    let (start, layers): (PureState, Vec<(&'static str, ComplexMatrix)>) = match circuit {
        Circuit::DeutschJozsa(f) => {
            let n = f.n();
            if n > DJ_DENSE_CAP {
                return Err(Error::DenseCapExceeded {
                    requested: n,
                    cap: DJ_DENSE_CAP,
                });
            }
            let h_all = ComplexMatrix::hadamard_n(n + 1);
            (
                PureState::basis(n, 0).tensor(&PureState::basis(1, 1)),
                vec![
                    ("hadamard-in", h_all.clone()),
                    ("oracle", f.oracle_unitary().matrix().clone()),
                    ("hadamard-out", h_all),
                ],
            )
        }
        Circuit::Simon(f) => {
            let n = f.n();
            if n > SIMON_DENSE_CAP {
                return Err(Error::DenseCapExceeded {
                    requested: n,
                    cap: SIMON_DENSE_CAP,
                });
            }
            let h_first = ComplexMatrix::hadamard_n(n).tensor(&ComplexMatrix::identity(1 << n));
            (
                PureState::basis(2 * n, 0),
                vec![
                    ("hadamard-in", h_first.clone()),
                    ("oracle", f.oracle_unitary().matrix().clone()),
                    ("hadamard-out", h_first),
                ],
            )
        }
    };

    let total_qubits = start.num_qubits();
    let threshold = separability_threshold(total_qubits)?;
    let mut rho = make_pps(&start, epsilon)?;

    let mut steps = Vec::new();
    steps.push(audit_state(&rho, total_qubits, "prepare")?);
    for (label, u) in layers {
        rho = apply_unitary(&rho, &u)?;
        steps.push(audit_state(&rho, total_qubits, label)?);
    }
    // non-selective computational-basis measurement
    steps.push(audit_state(&rho.diagonal_part(), total_qubits, "measure")?);

    let min_eigenvalue = steps
        .iter()
        .map(|s| s.min_eigenvalue)
        .fold(f64::INFINITY, f64::min);
    Ok(PptAudit {
        total_qubits,
        epsilon,
        threshold,
        certified_regime: epsilon < threshold,
        steps,
        min_eigenvalue,
    })
}

fn audit_state(
    rho: &ComplexMatrix,
    total_qubits: usize,
    label: &'static str,
) -> Result<PptAuditStep> {
    let mut entries = Vec::new();
    let mut min_eigenvalue = f64::INFINITY;
    for left_qubits in bipartitions(total_qubits) {
        let value = ppt_min_eigenvalue(rho, &left_qubits)?;
        min_eigenvalue = min_eigenvalue.min(value);
        entries.push(PptAuditEntry {
            left_qubits,
            min_eigenvalue: value,
        });
    }
    Ok(PptAuditStep {
        label,
        entries,
        min_eigenvalue,
    })
}

/// Every unordered bipartition, canonicalized so qubit 0 sits on the left.
pub fn bipartitions(total_qubits: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    // masks over qubits 1..total, qubit 0 implicitly on the left
    for rest in 0..(1usize << (total_qubits - 1)) {
        let mut left = vec![0usize];
        for q in 1..total_qubits {
            if rest >> (q - 1) & 1 == 1 {
                left.push(q);
            }
        }
        if left.len() < total_qubits {
            out.push(left);
        }
    }
    out
}

fn validate(n: usize, epsilon: f64) -> Result<()> {
    if n < 1 {
        return Err(Error::QubitCountTooSmall {
            required: 1,
            got: n,
        });
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    Ok(())
}

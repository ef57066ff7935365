//! Entropies and mutual information for the two single-query games.
//!
//! Mutual information is accumulated cell by cell as
//! `P(x,y) log2(P(y|x) / P(y))`, with the ratio's offset from 1 formed
//! exactly and fed through `ln_1p`. The naive entropy-difference form loses
//! every significant digit once the purity parameter drops below ~1e-6;
//! this form stays at full relative precision down to epsilon = 1e-8 and
//! beyond.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};

/// Exact 2^n as a float; the closed forms carry no width cap.
fn pow2(n: usize) -> f64 {
    2f64.powi(n as i32)
}

/// Binary entropy in bits, with h(0) = h(1) = 0 by convention.
pub fn entropy_h(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::ProbabilityOutOfRange(q));
    }
    let x = q - 0.5;
    if x.abs() <= 1e-4 {
        return Ok(entropy_near_half(x));
    }
    if q == 0.0 || q == 1.0 {
        return Ok(0.0);
    }
    Ok(-(q * q.log2()) - (1.0 - q) * (1.0 - q).log2())
}

/// Series for h(1/2 + x); the direct form cancels to noise there.
/// h(1/2 + x) = 1 - (u^2/2 + u^4/12 + u^6/30 + u^8/56 + ...) / ln 2, u = 2x.
fn entropy_near_half(x: f64) -> f64 {
    let u2 = 4.0 * x * x;
    1.0 - u2 * (0.5 + u2 * (1.0 / 12.0 + u2 * (1.0 / 30.0 + u2 / 56.0))) / LN_2
}

/// One mutual-information cell: weight * log2(1 + offset/denominator),
/// where offset = P(y|x) - P(y) held exactly. Falls back to plain logs for
/// large ratios, which also keeps the pure-state limits exact.
fn mi_cell(weight: f64, conditional: f64, marginal: f64, offset: f64) -> f64 {
    if weight == 0.0 || conditional == 0.0 {
        return 0.0;
    }
    let delta = offset / marginal;
    if delta.abs() <= 0.5 {
        weight * delta.ln_1p() / LN_2
    } else {
        weight * (conditional.log2() - marginal.log2())
    }
}

/// `ln(1 + d) - d`; the direct subtraction cancels for small `d`, so use
/// the series there.
fn ln_1p_remainder(d: f64) -> f64 {
    if d.abs() > 0.01 {
        return d.ln_1p() - d;
    }
    // -d^2/2 + d^3/3 - d^4/4 + ...; at |d| <= 0.01 twelve terms are exact
    let mut sum = 0.0;
    let mut power = d * d;
    let mut sign = -1.0;
    for k in 2..=12u32 {
        sum += sign * power / f64::from(k);
        power *= d;
        sign = -sign;
    }
    sum
}

/// Joint distribution of function type (constant / balanced) against
/// measurement outcome (zero / non-zero) for one game configuration.
#[derive(Clone, Copy, Debug)]
pub struct DjJointTable {
    pub n: usize,
    pub epsilon: f64,
    /// Prior probability that the function is constant.
    pub p_constant: f64,
    /// Rows: constant, balanced. Columns: z = 0, z != 0.
    pub cells: [[f64; 2]; 2],
}

impl DjJointTable {
    /// Marginal probability of measuring z = 0.
    pub fn p_zero(&self) -> f64 {
        self.p_constant * self.epsilon + (1.0 - self.epsilon) / pow2(self.n)
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        vec![self.cells[0].to_vec(), self.cells[1].to_vec()]
    }
}

pub fn dj_joint_table(n: usize, epsilon: f64, p_constant: f64) -> Result<DjJointTable> {
    validate_dj_args(n, epsilon, p_constant)?;
    let scale = pow2(n);
    let p = p_constant;
    let cells = [
        [
            p * (epsilon + (1.0 - epsilon) / scale),
            p * (1.0 - epsilon) * (1.0 - 1.0 / scale),
        ],
        [
            (1.0 - p) * (1.0 - epsilon) / scale,
            (1.0 - p) * (1.0 - (1.0 - epsilon) / scale),
        ],
    ];
    Ok(DjJointTable {
        n,
        epsilon,
        p_constant,
        cells,
    })
}

/// Information (bits) one quantum query yields about whether the function
/// is constant or balanced, at purity `epsilon` and prior `p_constant`.
pub fn dj_mutual_information(n: usize, epsilon: f64, p_constant: f64) -> Result<f64> {
    validate_dj_args(n, epsilon, p_constant)?;
    if epsilon == 1.0 {
        // the outcome determines the function type, so the query yields
        // exactly the prior entropy
        return entropy_h(p_constant);
    }
    let scale = pow2(n);
    let p = p_constant;
    let p_zero = p * epsilon + (1.0 - epsilon) / scale;
    let p_nonzero = 1.0 - p_zero;

    // exact conditional-minus-marginal offsets per cell
    let w1 = p * (epsilon + (1.0 - epsilon) / scale);
    let w2 = p * (1.0 - epsilon) * (1.0 - 1.0 / scale);
    let w3 = (1.0 - p) * (1.0 - epsilon) / scale;
    let w4 = (1.0 - p) * (1.0 - (1.0 - epsilon) / scale);
    let d1 = epsilon * (1.0 - p) / p_zero;
    let d2 = -(epsilon * (1.0 - p)) / p_nonzero;
    let d3 = -(epsilon * p) / p_zero;
    let d4 = epsilon * p / p_nonzero;

    // When every ratio sits near 1 the cells cancel almost completely; the
    // linear parts collapse algebraically to eps^2 p (1-p) / (p0 (1-p0)),
    // so splitting them out keeps full relative precision at tiny purity.
    let near_one = [d1, d2, d3, d4].iter().all(|d| d.abs() <= 0.01);
    if near_one {
        let linear = epsilon * epsilon * p * (1.0 - p) / (p_zero * p_nonzero);
        let remainders = w1 * ln_1p_remainder(d1)
            + w2 * ln_1p_remainder(d2)
            + w3 * ln_1p_remainder(d3)
            + w4 * ln_1p_remainder(d4);
        return Ok((linear + remainders) / LN_2);
    }

    let c1 = mi_cell(
        w1,
        epsilon + (1.0 - epsilon) / scale,
        p_zero,
        epsilon * (1.0 - p),
    );
    let c2 = mi_cell(
        w2,
        (1.0 - epsilon) * (1.0 - 1.0 / scale),
        p_nonzero,
        -(epsilon * (1.0 - p)),
    );
    let c3 = mi_cell(w3, (1.0 - epsilon) / scale, p_zero, -(epsilon * p));
    let c4 = mi_cell(w4, 1.0 - (1.0 - epsilon) / scale, p_nonzero, epsilon * p);
    Ok(c1 + c2 + c3 + c4)
}

/// Conditional entropy H(X|Y) for the game above, computed from the
/// posterior probabilities; an independent route to the same information.
pub fn dj_conditional_entropy(n: usize, epsilon: f64, p_constant: f64) -> Result<f64> {
    validate_dj_args(n, epsilon, p_constant)?;
    let scale = pow2(n);
    let p = p_constant;
    let p_zero = p * epsilon + (1.0 - epsilon) / scale;
    let p_nonzero = 1.0 - p_zero;
    let mut out = 0.0;
    if p_zero > 0.0 {
        let posterior = (p / p_zero) * (epsilon + (1.0 - epsilon) / scale);
        out += p_zero * entropy_h(posterior.min(1.0))?;
    }
    if p_nonzero > 0.0 {
        let posterior = (p * (1.0 - epsilon) / p_nonzero) * (1.0 - 1.0 / scale);
        out += p_nonzero * entropy_h(posterior.min(1.0))?;
    }
    Ok(out)
}

/// Small-epsilon leading term `2^(2n) eps^2 / (8 (2^n - 1) ln 2)`,
/// stated for the symmetric prior `p = 1/2`.
pub fn dj_mi_asymptotic(n: usize, epsilon: f64) -> f64 {
    let scale = pow2(n);
    scale * scale * epsilon * epsilon / (8.0 * (scale - 1.0) * LN_2)
}

/// Information when the output qubit is also measured and taken into
/// account: the pure fraction is boosted to `2 eps / (1 + eps)` on the
/// useful branch, which carries weight `(1 + eps) / 2`.
pub fn dj_mutual_information_improved(n: usize, epsilon: f64, p_constant: f64) -> Result<f64> {
    validate_dj_args(n, epsilon, p_constant)?;
    let boosted = 2.0 * epsilon / (1.0 + epsilon);
    Ok((1.0 + epsilon) / 2.0 * dj_mutual_information(n, boosted, p_constant)?)
}

/// Conditional entropy H(X | ancilla, Z) for the improved game: the
/// discarded branch contributes full prior entropy, the useful branch the
/// boosted-purity posterior entropy.
pub fn dj_conditional_entropy_improved(n: usize, epsilon: f64, p_constant: f64) -> Result<f64> {
    validate_dj_args(n, epsilon, p_constant)?;
    let boosted = 2.0 * epsilon / (1.0 + epsilon);
    Ok((1.0 - epsilon) / 2.0 * entropy_h(p_constant)?
        + (1.0 + epsilon) / 2.0 * dj_conditional_entropy(n, boosted, p_constant)?)
}

/// Small-epsilon leading term for the improved game, twice the plain one.
pub fn dj_improved_mi_asymptotic(n: usize, epsilon: f64) -> f64 {
    let scale = pow2(n);
    scale * scale * epsilon * epsilon / (4.0 * (scale - 1.0) * LN_2)
}

/// Information (bits) one quantum query yields about the hidden mask,
/// with the mask uniform over `[1, 2^n - 1]`.
pub fn simon_mutual_information(n: usize, epsilon: f64) -> Result<f64> {
    validate_simon_args(n, epsilon)?;
    let scale = pow2(n);
    // marginal of any nonzero j is (1 - (1+eps)/2^n) / (2^n - 1); j = 0 has
    // conditional equal to marginal and contributes nothing
    let denom = scale - 1.0 - epsilon;
    let orthogonal_weight = (scale / 2.0 - 1.0) * (1.0 + epsilon) / scale;
    let overlap_weight = (scale / 2.0) * (1.0 - epsilon) / scale;
    let d1 = epsilon * scale / denom;
    let d2 = -(epsilon * (scale - 2.0) / denom);

    // same cancellation split as the game above: the linear parts collapse
    // to eps^2 (2^n - 2) / denom exactly
    if d1 <= 0.01 && d2.abs() <= 0.01 {
        let linear = epsilon * epsilon * (scale - 2.0) / denom;
        let remainders =
            orthogonal_weight * ln_1p_remainder(d1) + overlap_weight * ln_1p_remainder(d2);
        return Ok((linear + remainders) / LN_2);
    }

    let c1 = mi_cell(
        orthogonal_weight,
        (1.0 + epsilon) * (scale - 1.0) / denom,
        1.0,
        d1,
    );
    let c2 = mi_cell(
        overlap_weight,
        (1.0 - epsilon) * (scale - 1.0) / denom,
        1.0,
        d2,
    );
    Ok(c1 + c2)
}

/// Prior and conditional outcome entropies (H(J), H(J|S)) in bits.
pub fn simon_entropies(n: usize, epsilon: f64) -> Result<(f64, f64)> {
    validate_simon_args(n, epsilon)?;
    let scale = pow2(n);
    let p_zero_class = (1.0 + epsilon) / scale;
    let p_other = 1.0 - p_zero_class;

    let mut h_j = -(p_zero_class * p_zero_class.log2());
    if p_other > 0.0 {
        h_j -= p_other * (p_other / (scale - 1.0)).log2();
    }

    let mut h_j_given_s = -((1.0 + epsilon) / 2.0) * ((1.0 + epsilon) / scale).log2();
    if epsilon < 1.0 {
        h_j_given_s -= ((1.0 - epsilon) / 2.0) * ((1.0 - epsilon) / scale).log2();
    }
    Ok((h_j, h_j_given_s))
}

/// Small-epsilon leading term `(2^n - 2) eps^2 / (2 (2^n - 1) ln 2)`.
pub fn simon_mi_asymptotic(n: usize, epsilon: f64) -> f64 {
    let scale = pow2(n);
    (scale - 2.0) * epsilon * epsilon / (2.0 * (scale - 1.0) * LN_2)
}

/// Mutual information of an arbitrary joint probability table (rows are
/// one variable, columns the other), in bits. Entries must be
/// non-negative and sum to 1 within 1e-10.
pub fn empirical_mutual_information(joint: &[Vec<f64>]) -> Result<f64> {
    if joint.is_empty() || joint[0].is_empty() {
        return Err(Error::InvalidDistribution("empty table".into()));
    }
    let cols = joint[0].len();
    for row in joint {
        if row.len() != cols {
            return Err(Error::InvalidDistribution("ragged table".into()));
        }
        if let Some(&bad) = row.iter().find(|&&v| !v.is_finite() || v < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "entry {bad} is not a probability"
            )));
        }
    }
    let total: f64 = joint.iter().flatten().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidDistribution(format!(
            "entries sum to {total}, not 1"
        )));
    }

    let row_marginals: Vec<f64> = joint.iter().map(|row| row.iter().sum()).collect();
    let mut col_marginals = vec![0.0; cols];
    for row in joint {
        for (m, v) in col_marginals.iter_mut().zip(row) {
            *m += v;
        }
    }

    // compensated summation; tables can carry many near-cancelling cells
    let mut sum = 0.0;
    let mut compensation = 0.0;
    for (i, row) in joint.iter().enumerate() {
        for (j, &p) in row.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let term = p * (p / (row_marginals[i] * col_marginals[j])).log2();
            let y = term - compensation;
            let t = sum + y;
            compensation = (t - sum) - y;
            sum = t;
        }
    }
    Ok(sum)
}

/// Summary of one experiment configuration.
#[derive(Clone, Debug)]
pub struct InfoReport {
    pub kind: ReportKind,
    pub n: usize,
    pub epsilon: f64,
    /// Entropy of the hidden variable (function type, or the outcome prior
    /// for the hidden-mask game) before the query.
    pub prior_entropy_bits: f64,
    /// Entropy remaining after the query.
    pub conditional_entropy_bits: f64,
    pub mutual_information_bits: f64,
    /// Small-epsilon approximation of the mutual information.
    pub asymptotic_bits: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ReportKind {
    DeutschJozsa { prior_constant: f64 },
    DeutschJozsaImproved { prior_constant: f64 },
    Simon,
}

pub fn dj_info_report(
    n: usize,
    epsilon: f64,
    p_constant: f64,
    improved: bool,
) -> Result<InfoReport> {
    let prior = entropy_h(p_constant)?;
    let (kind, mi, conditional, asymptotic) = if improved {
        (
            ReportKind::DeutschJozsaImproved {
                prior_constant: p_constant,
            },
            dj_mutual_information_improved(n, epsilon, p_constant)?,
            dj_conditional_entropy_improved(n, epsilon, p_constant)?,
            dj_improved_mi_asymptotic(n, epsilon),
        )
    } else {
        (
            ReportKind::DeutschJozsa {
                prior_constant: p_constant,
            },
            dj_mutual_information(n, epsilon, p_constant)?,
            dj_conditional_entropy(n, epsilon, p_constant)?,
            dj_mi_asymptotic(n, epsilon),
        )
    };
    Ok(InfoReport {
        kind,
        n,
        epsilon,
        prior_entropy_bits: prior,
        conditional_entropy_bits: conditional,
        mutual_information_bits: mi,
        asymptotic_bits: asymptotic,
    })
}

pub fn simon_info_report(n: usize, epsilon: f64) -> Result<InfoReport> {
    let (h_j, h_j_given_s) = simon_entropies(n, epsilon)?;
    Ok(InfoReport {
        kind: ReportKind::Simon,
        n,
        epsilon,
        prior_entropy_bits: h_j,
        conditional_entropy_bits: h_j_given_s,
        mutual_information_bits: simon_mutual_information(n, epsilon)?,
        asymptotic_bits: simon_mi_asymptotic(n, epsilon),
    })
}

fn validate_dj_args(n: usize, epsilon: f64, p_constant: f64) -> Result<()> {
    if n < 1 {
        return Err(Error::QubitCountTooSmall {
            required: 1,
            got: n,
        });
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    if !(0.0..=1.0).contains(&p_constant) {
        return Err(Error::ProbabilityOutOfRange(p_constant));
    }
    Ok(())
}

fn validate_simon_args(n: usize, epsilon: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::QubitCountTooSmall {
            required: 2,
            got: n,
        });
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    Ok(())
}

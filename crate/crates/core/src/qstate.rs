//! Pseudo-pure states, Werner states, the separability bound, and the
//! partial-transpose entanglement witness.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qmath::{hermitian_eigenvalues, ComplexMatrix, PureState, C64};

/// `|ad - bc|` below this counts as a two-qubit product state.
pub const PRODUCT_TOL: f64 = 1e-10;

/// A pure state mixed with the maximally mixed state:
/// `epsilon |psi><psi| + (1 - epsilon) I / 2^m`.
///
/// The purity parameter `epsilon` is invariant under unitary evolution,
/// which only rotates the pure part.
#[derive(Clone, Debug)]
pub struct PpsState {
    pure_part: PureState,
    epsilon: f64,
}

impl PpsState {
    pub fn new(pure_part: PureState, epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::EpsilonOutOfRange(epsilon));
        }
        Ok(Self { pure_part, epsilon })
    }

    pub fn num_qubits(&self) -> usize {
        self.pure_part.num_qubits()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn pure_part(&self) -> &PureState {
        &self.pure_part
    }

    /// Materialize the density matrix.
    pub fn density(&self) -> ComplexMatrix {
        make_pps(&self.pure_part, self.epsilon).expect("epsilon validated at construction")
    }

    /// Whether the purity parameter alone certifies separability, plus the
    /// partial-transpose witness value on the given bipartition.
    pub fn separability_verdict(&self, left_qubits: &[usize]) -> Result<SeparabilityVerdict> {
        let threshold = separability_threshold(self.num_qubits())?;
        let witness = ppt_min_eigenvalue(&self.density(), left_qubits)?;
        Ok(SeparabilityVerdict {
            certified_separable: self.epsilon < threshold,
            ppt_min_eigenvalue: witness,
            left_qubits: left_qubits.to_vec(),
        })
    }
}

/// Result of checking one bipartition of a pseudo-pure state.
#[derive(Clone, Debug)]
pub struct SeparabilityVerdict {
    /// True when the purity parameter is strictly below the bound that
    /// guarantees separability regardless of the pure part.
    pub certified_separable: bool,
    /// Minimum eigenvalue of the partial transpose; negative certifies
    /// entanglement.
    pub ppt_min_eigenvalue: f64,
    /// The bipartition that was witnessed.
    pub left_qubits: Vec<usize>,
}

/// Density matrix `epsilon |psi><psi| + (1 - epsilon) I / 2^m`.
///
/// ```
/// use ppsim_core::qmath::PureState;
/// use ppsim_core::qstate::{extract_purity, make_pps};
///
/// let psi = PureState::basis(2, 0);
/// let rho = make_pps(&psi, 0.3)?;
/// assert!((extract_purity(&rho, &psi)? - 0.3).abs() < 1e-12);
/// # Ok::<(), ppsim_core::Error>(())
/// ```
pub fn make_pps(pure_part: &PureState, epsilon: f64) -> Result<ComplexMatrix> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    let dim = pure_part.dim();
    let mixed_weight = (1.0 - epsilon) / dim as f64;
    let projector = pure_part.density();
    Ok(ComplexMatrix::from_fn(dim, |i, j| {
        let mut z = projector.get(i, j) * epsilon;
        if i == j {
            z += C64::new(mixed_weight, 0.0);
        }
        z
    }))
}

/// Purity bound `1 / (1 + 2^(2m-1))` below which an `m`-qubit pseudo-pure
/// state is separable no matter what its pure part is.
pub fn separability_threshold(m: usize) -> Result<f64> {
    if m < 1 {
        return Err(Error::QubitCountTooSmall {
            required: 1,
            got: m,
        });
    }
    Ok(1.0 / (1.0 + 2f64.powi(2 * m as i32 - 1)))
}

/// Denominator of the exact threshold `1 / (1 + 2^(2m-1))`, when it fits.
pub fn separability_threshold_denominator(m: usize) -> Option<u128> {
    if m < 1 || 2 * m > 127 {
        return None;
    }
    Some(1u128 + (1u128 << (2 * m - 1)))
}

/// Recover the purity parameter from a density matrix and its pure part:
/// `(<psi|rho|psi> - 2^-m) / (1 - 2^-m)`.
pub fn extract_purity(rho: &ComplexMatrix, pure_part: &PureState) -> Result<f64> {
    if rho.dim() != pure_part.dim() {
        return Err(Error::DimMismatch(rho.dim(), pure_part.dim()));
    }
    let dim = pure_part.dim();
    let amps = pure_part.amplitudes();
    let mut overlap = C64::new(0.0, 0.0);
    for i in 0..dim {
        for j in 0..dim {
            overlap += amps[i].conj() * rho.get(i, j) * amps[j];
        }
    }
    let uniform = 1.0 / dim as f64;
    Ok((overlap.re - uniform) / (1.0 - uniform))
}

/// Minimum eigenvalue of the partial transpose taken over the complement of
/// `left_qubits`. Negative certifies entanglement across the bipartition;
/// for two-qubit states a non-negative value certifies separability.
pub fn ppt_min_eigenvalue(rho: &ComplexMatrix, left_qubits: &[usize]) -> Result<f64> {
    let total = rho.num_qubits()?;
    let trace_dev = (rho.trace() - C64::new(1.0, 0.0)).norm();
    if trace_dev > 1e-9 {
        return Err(Error::TraceNotOne(trace_dev));
    }
    let mut left: Vec<usize> = left_qubits.to_vec();
    left.sort_unstable();
    left.dedup();
    for &q in &left {
        if q >= total {
            return Err(Error::QubitIndexOutOfRange { index: q, total });
        }
    }
    if left.is_empty() || left.len() == total {
        return Err(Error::TrivialBipartition);
    }
    let right: Vec<usize> = (0..total).filter(|q| !left.contains(q)).collect();
    let transposed = rho.partial_transpose(&right)?;
    let eigenvalues = hermitian_eigenvalues(&transposed)?;
    Ok(eigenvalues[0])
}

/// Two-qubit Werner state parametrized by the singlet weight `lambda`.
#[derive(Clone, Copy, Debug)]
pub struct WernerState {
    lambda: f64,
}

impl WernerState {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::LambdaOutOfRange(lambda));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Equivalent purity parameter `(4 lambda - 1) / 3`; negative below
    /// `lambda = 1/4`.
    pub fn epsilon(&self) -> f64 {
        (4.0 * self.lambda - 1.0) / 3.0
    }

    pub fn density(&self) -> ComplexMatrix {
        werner(self.lambda).expect("lambda validated at construction")
    }
}

/// Werner density matrix: the singlet with weight `lambda` mixed evenly
/// with the three remaining Bell projectors.
pub fn werner(lambda: f64) -> Result<ComplexMatrix> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    let rest = (1.0 - lambda) / 3.0;
    let mut out = kets::psi_minus().density().scale(lambda);
    for bell in [kets::psi_plus(), kets::phi_minus(), kets::phi_plus()] {
        out = out.add(&bell.density().scale(rest));
    }
    Ok(out)
}

/// Whether amplitudes (a, b, c, d) over |00>, |01>, |10>, |11> describe a
/// product state: true exactly when `|ad - bc|` vanishes.
pub fn is_product_two_qubit(a: C64, b: C64, c: C64, d: C64) -> Result<bool> {
    let norm_sqr = a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr();
    let deviation = (norm_sqr - 1.0).abs();
    if deviation > PRODUCT_TOL {
        return Err(Error::NotNormalized(deviation));
    }
    Ok((a * d - b * c).norm() <= PRODUCT_TOL)
}

/// Named single- and two-qubit states used throughout.
pub mod kets {
    use std::f64::consts::FRAC_1_SQRT_2;

    use crate::qmath::{PureState, C64};

    fn ket(num_qubits: usize, amplitudes: Vec<C64>) -> PureState {
        PureState::new(num_qubits, amplitudes).expect("literal amplitudes are normalized")
    }

    /// (|0> + |1>) / sqrt(2)
    pub fn plus() -> PureState {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        ket(1, vec![s, s])
    }

    /// (|0> - |1>) / sqrt(2)
    pub fn minus() -> PureState {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        ket(1, vec![s, -s])
    }

    /// (|0> + i|1>) / sqrt(2)
    pub fn plus_i() -> PureState {
        ket(
            1,
            vec![C64::new(FRAC_1_SQRT_2, 0.0), C64::new(0.0, FRAC_1_SQRT_2)],
        )
    }

    /// (|0> - i|1>) / sqrt(2)
    pub fn minus_i() -> PureState {
        ket(
            1,
            vec![C64::new(FRAC_1_SQRT_2, 0.0), C64::new(0.0, -FRAC_1_SQRT_2)],
        )
    }

    /// (|01> + |10>) / sqrt(2)
    pub fn psi_plus() -> PureState {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        ket(2, vec![z, s, s, z])
    }

    /// (|01> - |10>) / sqrt(2), the singlet
    pub fn psi_minus() -> PureState {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        ket(2, vec![z, s, -s, z])
    }

    /// (|00> + |11>) / sqrt(2)
    pub fn phi_plus() -> PureState {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        ket(2, vec![s, z, z, s])
    }

    /// (|00> - |11>) / sqrt(2)
    pub fn phi_minus() -> PureState {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        ket(2, vec![s, z, z, -s])
    }
}

/// Purity parameter kept exact when given as a ratio of integers, so values
/// like `1/129` survive parsing and thresholds compare exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Epsilon {
    Exact { num: u64, den: u64 },
    Decimal(f64),
}

impl Epsilon {
    /// Floating-point value; the only place an exact ratio is rounded.
    pub fn value(&self) -> f64 {
        match *self {
            Epsilon::Exact { num, den } => num as f64 / den as f64,
            Epsilon::Decimal(v) => v,
        }
    }

    /// Compare against the separability bound for `m` qubits, exactly when
    /// both sides are exact rationals.
    pub fn cmp_separability_threshold(&self, m: usize) -> Ordering {
        if let (Epsilon::Exact { num, den }, Some(threshold_den)) =
            (*self, separability_threshold_denominator(m))
        {
            if let Some(lhs) = (num as u128).checked_mul(threshold_den) {
                // num/den vs 1/threshold_den
                return lhs.cmp(&(den as u128));
            }
        }
        let threshold = separability_threshold(m).unwrap_or(0.0);
        self.value()
            .partial_cmp(&threshold)
            .expect("finite comparison")
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parsed = if let Some((num_str, den_str)) = s.split_once('/') {
            let num: u64 = num_str
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let den: u64 = den_str
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if den == 0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Epsilon::Exact { num, den }
        } else {
            let v: f64 = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
            Epsilon::Decimal(v)
        };
        let v = parsed.value();
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::EpsilonOutOfRange(v));
        }
        Ok(parsed)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Epsilon::Exact { num, den } => write!(f, "{num}/{den}"),
            Epsilon::Decimal(v) => write!(f, "{v}"),
        }
    }
}

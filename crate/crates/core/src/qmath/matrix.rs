use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::Index;

use rand::Rng;

use super::{C64, HERMITICITY_TOL, UNITARITY_TOL};
use crate::error::{Error, Result};

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Build entrywise from a closure over (row, column).
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        m
    }

    /// Validating constructor; rejects non-square rows and non-finite entries.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimMismatch(0, 1));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimMismatch(row.len(), dim));
            }
            data.extend_from_slice(row);
        }
        for (idx, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite(idx));
            }
        }
        Ok(Self { dim, data })
    }

    /// Permutation matrix U with `U|source> = |targets[source]>`.
    pub fn from_permutation(targets: &[usize]) -> Self {
        let dim = targets.len();
        let mut m = Self::zeros(dim);
        for (source, &target) in targets.iter().enumerate() {
            assert!(target < dim, "permutation target out of range");
            m.data[target * dim + source] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Single-qubit Walsh-Hadamard gate.
    pub fn hadamard() -> Self {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        Self {
            dim: 2,
            data: vec![h, h, h, -h],
        }
    }

    /// `k`-fold tensor power of the Hadamard gate.
    pub fn hadamard_n(k: usize) -> Self {
        assert!(k >= 1);
        let h = Self::hadamard();
        let mut out = h.clone();
        for _ in 1..k {
            out = out.tensor(&h);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.data[i * self.dim + j] = value;
    }

    /// Number of qubits this matrix acts on; error if dim is not a power of two.
    pub fn num_qubits(&self) -> Result<usize> {
        if !self.dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(self.dim));
        }
        Ok(self.dim.trailing_zeros() as usize)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matrix product");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let aik = self.data[i * d + k];
                if aik == C64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * d..(k + 1) * d];
                let dst = &mut out.data[i * d..(i + 1) * d];
                for (o, b) in dst.iter_mut().zip(row) {
                    *o += aik * b;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matrix sum");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        let data = self.data.iter().map(|z| z * factor).collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.data[j * self.dim + i].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// Kronecker product; entry ((i,k),(j,l)) = self(i,j) * other(k,l).
    pub fn tensor(&self, other: &Self) -> Self {
        let da = self.dim;
        let db = other.dim;
        let dim = da * db;
        let mut out = Self::zeros(dim);
        for i in 0..da {
            for j in 0..da {
                let a = self.data[i * da + j];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        out.data[(i * db + k) * dim + (j * db + l)] = a * other.data[k * db + l];
                    }
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch in comparison");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from the conjugate transpose.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self.data[i * self.dim + j] - self.data[j * self.dim + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Largest entrywise deviation of U U-dagger from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        self.mul(&self.dagger())
            .max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    pub(crate) fn check_hermitian(&self) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                deviation,
                tol: HERMITICITY_TOL,
            });
        }
        Ok(())
    }

    /// Zero all off-diagonal entries; models a non-selective measurement in
    /// the computational basis.
    pub fn diagonal_part(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            out.data[i * self.dim + i] = self.data[i * self.dim + i];
        }
        out
    }

    /// Real parts of the diagonal, read as measurement probabilities.
    pub fn diagonal_probabilities(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.data[i * self.dim + i].re)
            .collect()
    }

    /// Transpose the given qubits only, leaving the rest untouched.
    pub fn partial_transpose(&self, transposed_qubits: &[usize]) -> Result<Self> {
        let total = self.num_qubits()?;
        let mut swap_mask = 0usize;
        for &q in transposed_qubits {
            if q >= total {
                return Err(Error::QubitIndexOutOfRange { index: q, total });
            }
            swap_mask |= 1 << (total - 1 - q);
        }
        let keep_mask = !swap_mask;
        Ok(Self::from_fn(self.dim, |i, j| {
            let row = (i & keep_mask) | (j & swap_mask);
            let col = (j & keep_mask) | (i & swap_mask);
            self.data[row * self.dim + col]
        }))
    }

    /// Haar-like random unitary via Gram-Schmidt on a Gaussian matrix.
    pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> Self {
        let mut columns: Vec<Vec<C64>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| C64::new(gaussian(rng), gaussian(rng)))
                    .collect()
            })
            .collect();
        for j in 0..dim {
            // two orthogonalization passes keep the result unitary well below tolerance
            for _ in 0..2 {
                for i in 0..j {
                    let (settled, rest) = columns.split_at_mut(j);
                    let basis = &settled[i];
                    let target = &mut rest[0];
                    let proj: C64 = basis
                        .iter()
                        .zip(target.iter())
                        .map(|(qi, vj)| qi.conj() * vj)
                        .sum();
                    for (vj, qi) in target.iter_mut().zip(basis) {
                        *vj -= proj * qi;
                    }
                }
            }
            let norm: f64 = columns[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in &mut columns[j] {
                *z /= norm;
            }
        }
        Self::from_fn(dim, |i, j| columns[j][i])
    }
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box-Muller on two open-interval uniforms
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Conjugate `rho` by the unitary `u`, returning `u rho u-dagger`.
///
/// `u` must be unitary within [`UNITARITY_TOL`] and match the dimension of
/// `rho`; trace and Hermiticity of `rho` are preserved.
pub fn apply_unitary(rho: &ComplexMatrix, u: &ComplexMatrix) -> Result<ComplexMatrix> {
    if rho.dim() != u.dim() {
        return Err(Error::DimMismatch(rho.dim(), u.dim()));
    }
    let deviation = u.unitarity_deviation();
    if deviation > UNITARITY_TOL {
        return Err(Error::NotUnitary {
            deviation,
            tol: UNITARITY_TOL,
        });
    }
    Ok(u.mul(rho).mul(&u.dagger()))
}

/// Trace out every qubit not listed in `keep`, preserving the relative
/// order of the kept qubits.
pub fn partial_trace(
    rho: &ComplexMatrix,
    keep: &[usize],
    total_qubits: usize,
) -> Result<ComplexMatrix> {
    if rho.dim() != 1usize << total_qubits {
        return Err(Error::DimMismatch(rho.dim(), 1usize << total_qubits));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    for &q in &kept {
        if q >= total_qubits {
            return Err(Error::QubitIndexOutOfRange {
                index: q,
                total: total_qubits,
            });
        }
    }
    let traced: Vec<usize> = (0..total_qubits).filter(|q| !kept.contains(q)).collect();

    // basis labels for the kept / traced registers, embedded in the full label
    let embed = |qubits: &[usize], bits: usize| -> usize {
        qubits.iter().enumerate().fold(0usize, |acc, (pos, &q)| {
            let bit = (bits >> (qubits.len() - 1 - pos)) & 1;
            acc | (bit << (total_qubits - 1 - q))
        })
    };

    let keep_dim = 1usize << kept.len();
    let trace_dim = 1usize << traced.len();
    let keep_labels: Vec<usize> = (0..keep_dim).map(|b| embed(&kept, b)).collect();
    let trace_labels: Vec<usize> = (0..trace_dim).map(|b| embed(&traced, b)).collect();

    let mut out = ComplexMatrix::zeros(keep_dim);
    for i in 0..keep_dim {
        for j in 0..keep_dim {
            let mut sum = C64::new(0.0, 0.0);
            for t in &trace_labels {
                sum += rho.get(keep_labels[i] | t, keep_labels[j] | t);
            }
            out.set(i, j, sum);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::PureState;
    use crate::rng::seeded_rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn tensor_of_basis_kets_is_basis_ket() {
        // |0> (x) |1> = |01>
        let zero = PureState::basis(1, 0);
        let one = PureState::basis(1, 1);
        let prod = zero.tensor(&one);
        assert_eq!(prod.num_qubits(), 2);
        for (idx, amp) in prod.amplitudes().iter().enumerate() {
            let expected = if idx == 1 { 1.0 } else { 0.0 };
            assert!((amp - c(expected, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn tensor_of_general_single_qubit_states() {
        let a = PureState::new(1, vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let b = PureState::new(1, vec![c(0.8, 0.0), c(0.6, 0.0)]).unwrap();
        let prod = a.tensor(&b);
        let expected = [c(0.48, 0.0), c(0.36, 0.0), c(0.0, 0.64), c(0.0, 0.48)];
        for (amp, want) in prod.amplitudes().iter().zip(expected) {
            assert!((amp - want).norm() < 1e-15);
        }
    }

    #[test]
    fn hadamard_pair_on_zero_is_uniform() {
        // (H (x) H) |00> has amplitude 1/2 on every basis state; expected
        // values from multiplying the 4x4 matrix by hand.
        let h2 = ComplexMatrix::hadamard_n(2);
        let out = PureState::basis(2, 0).evolve(&h2).unwrap();
        for amp in out.amplitudes() {
            assert!((amp - c(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn tensor_is_associative() {
        // index arithmetic is exact, so matrices whose entry products carry
        // no rounding must agree bit for bit
        let exact = ComplexMatrix::from_permutation(&[1, 0]);
        let diag = ComplexMatrix::from_fn(2, |i, j| {
            if i == j {
                c(0.5 * (i as f64 + 1.0), -0.25)
            } else {
                c(0.0, 0.0)
            }
        });
        let h = ComplexMatrix::hadamard();
        let left = exact.tensor(&diag).tensor(&h);
        let right = exact.tensor(&diag.tensor(&h));
        assert_eq!(left.max_abs_diff(&right), 0.0);

        // general entries associate up to one multiplication rounding
        let mut rng = seeded_rng(11);
        let a = ComplexMatrix::random_unitary(2, &mut rng);
        let b = ComplexMatrix::random_unitary(2, &mut rng);
        let d = ComplexMatrix::random_unitary(4, &mut rng);
        let left = a.tensor(&b).tensor(&d);
        let right = a.tensor(&b.tensor(&d));
        assert!(left.max_abs_diff(&right) < 1e-15);
    }

    #[test]
    fn apply_identity_leaves_state_unchanged() {
        let rho = PureState::basis(2, 3).density();
        let out = apply_unitary(&rho, &ComplexMatrix::identity(4)).unwrap();
        assert!(out.max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn hadamard_takes_zero_projector_to_plus_projector() {
        let rho = PureState::basis(1, 0).density();
        let out = apply_unitary(&rho, &ComplexMatrix::hadamard()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((out.get(i, j) - c(0.5, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn random_unitary_fixes_maximally_mixed_state() {
        let mut rng = seeded_rng(23);
        for m in 1..=3usize {
            let dim = 1 << m;
            let mixed = ComplexMatrix::identity(dim).scale(1.0 / dim as f64);
            let u = ComplexMatrix::random_unitary(dim, &mut rng);
            let out = apply_unitary(&mixed, &u).unwrap();
            assert!(out.max_abs_diff(&mixed) < 1e-13);
        }
    }

    #[test]
    fn apply_unitary_preserves_trace_and_hermiticity() {
        let mut rng = seeded_rng(37);
        let psi = PureState::random(3, &mut rng);
        let rho = psi.density();
        let u = ComplexMatrix::random_unitary(8, &mut rng);
        let out = apply_unitary(&rho, &u).unwrap();
        assert!((out.trace() - rho.trace()).norm() < 1e-12);
        assert!(out.hermiticity_deviation() < 1e-12);
    }

    #[test]
    fn apply_unitary_rejects_non_unitary_and_mismatched() {
        let rho = PureState::basis(1, 0).density();
        let skew = ComplexMatrix::from_fn(2, |i, j| c((i + j) as f64, 0.0));
        assert!(matches!(
            apply_unitary(&rho, &skew),
            Err(Error::NotUnitary { .. })
        ));
        assert!(matches!(
            apply_unitary(&rho, &ComplexMatrix::identity(4)),
            Err(Error::DimMismatch(2, 4))
        ));
    }

    #[test]
    fn partial_trace_of_product_state_returns_kept_factor() {
        let zero = PureState::basis(1, 0).density();
        let plus = {
            let h = ComplexMatrix::hadamard();
            apply_unitary(&PureState::basis(1, 0).density(), &h).unwrap()
        };
        let joint = zero.tensor(&plus);
        let reduced = partial_trace(&joint, &[0], 2).unwrap();
        assert!(reduced.max_abs_diff(&zero) < 1e-15);
        let reduced_b = partial_trace(&joint, &[1], 2).unwrap();
        assert!(reduced_b.max_abs_diff(&plus) < 1e-15);
    }

    #[test]
    fn partial_trace_of_singlet_is_maximally_mixed() {
        // expanding |Psi-><Psi-| by hand and tracing either qubit gives I/2
        let s = FRAC_1_SQRT_2;
        let singlet = PureState::new(2, vec![c(0.0, 0.0), c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)])
            .unwrap()
            .density();
        let half_identity = ComplexMatrix::identity(2).scale(0.5);
        for keep in [[0usize], [1usize]] {
            let reduced = partial_trace(&singlet, &keep, 2).unwrap();
            assert!(reduced.max_abs_diff(&half_identity) < 1e-15);
        }
    }

    #[test]
    fn partial_trace_keeping_everything_is_identity_map() {
        let mut rng = seeded_rng(5);
        let rho = PureState::random(2, &mut rng).density();
        let out = partial_trace(&rho, &[0, 1], 2).unwrap();
        assert!(out.max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn partial_trace_with_non_contiguous_keep_set() {
        // |1> (x) |+> (x) |0>, keeping qubits 0 and 2
        let one = PureState::basis(1, 1);
        let plus = {
            let h = ComplexMatrix::hadamard();
            PureState::basis(1, 0).evolve(&h).unwrap()
        };
        let zero = PureState::basis(1, 0);
        let joint = one.tensor(&plus).tensor(&zero).density();
        let reduced = partial_trace(&joint, &[0, 2], 3).unwrap();
        let expected = one.density().tensor(&zero.density());
        assert!(reduced.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn partial_trace_preserves_trace_and_hermiticity() {
        let mut rng = seeded_rng(17);
        let rho = PureState::random(3, &mut rng).density();
        let reduced = partial_trace(&rho, &[0, 2], 3).unwrap();
        assert!((reduced.trace() - rho.trace()).norm() < 1e-12);
        assert!(reduced.hermiticity_deviation() < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_out_of_range_index() {
        let rho = ComplexMatrix::identity(4).scale(0.25);
        assert!(matches!(
            partial_trace(&rho, &[2], 2),
            Err(Error::QubitIndexOutOfRange { index: 2, total: 2 })
        ));
    }

    #[test]
    fn partial_transpose_swaps_selected_qubit_indices() {
        let mut rng = seeded_rng(29);
        let rho = PureState::random(2, &mut rng).density();
        let pt = rho.partial_transpose(&[1]).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let row = (i & 0b10) | (j & 0b01);
                let col = (j & 0b10) | (i & 0b01);
                assert_eq!(pt.get(i, j), rho.get(row, col));
            }
        }
        // transposing both qubits is the full transpose
        let full = rho.partial_transpose(&[0, 1]).unwrap();
        assert!(full.max_abs_diff(&ComplexMatrix::from_fn(4, |i, j| rho.get(j, i))) == 0.0);
    }

    #[test]
    fn from_rows_rejects_non_finite_entries() {
        let rows = vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(f64::NAN, 0.0)],
        ];
        assert!(matches!(
            ComplexMatrix::from_rows(&rows),
            Err(Error::NonFinite(3))
        ));
    }

    #[test]
    fn random_unitary_is_unitary_within_tolerance() {
        let mut rng = seeded_rng(41);
        for dim in [2usize, 8, 16] {
            let u = ComplexMatrix::random_unitary(dim, &mut rng);
            assert!(u.unitarity_deviation() < 1e-12, "dim {dim}");
        }
    }
}

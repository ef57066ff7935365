use rand::Rng;

use super::{ComplexMatrix, C64, NORM_TOL};
use crate::error::{Error, Result};

/// Unit-norm complex amplitude vector over `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Validating constructor: length must be `2^num_qubits`, every entry
    /// finite, and the squared amplitudes must sum to 1 within [`NORM_TOL`].
    pub fn new(num_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if num_qubits < 1 {
            return Err(Error::QubitCountTooSmall {
                required: 1,
                got: num_qubits,
            });
        }
        let dim = 1usize << num_qubits;
        if amplitudes.len() != dim {
            return Err(Error::DimMismatch(amplitudes.len(), dim));
        }
        for (idx, z) in amplitudes.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite(idx));
            }
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        let deviation = (norm_sqr - 1.0).abs();
        if deviation > NORM_TOL {
            return Err(Error::NotNormalized(deviation));
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Computational basis state |index>.
    pub fn basis(num_qubits: usize, index: usize) -> Self {
        assert!(num_qubits >= 1);
        let dim = 1usize << num_qubits;
        assert!(index < dim, "basis index out of range");
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Self {
            num_qubits,
            amplitudes,
        }
    }

    /// Haar-random state (Gaussian amplitudes, normalized).
    pub fn random(num_qubits: usize, rng: &mut impl Rng) -> Self {
        let dim = 1usize << num_qubits;
        let mut amplitudes: Vec<C64> = (0..dim)
            .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut amplitudes {
            *z /= norm;
        }
        Self {
            num_qubits,
            amplitudes,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// Tensor product; `self`'s qubits become the leading register.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Self {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes,
        }
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(
            self.dim(),
            other.dim(),
            "dimension mismatch in inner product"
        );
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Rank-1 projector |self><self|.
    pub fn density(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim(), |i, j| {
            self.amplitudes[i] * self.amplitudes[j].conj()
        })
    }

    /// Apply a unitary, returning the evolved state.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimMismatch(u.dim(), self.dim()));
        }
        let dim = self.dim();
        let amplitudes: Vec<C64> = (0..dim)
            .map(|i| (0..dim).map(|j| u.get(i, j) * self.amplitudes[j]).sum())
            .collect();
        Self::new(self.num_qubits, amplitudes)
    }
}

//! Hermitian eigenvalues via cyclic Jacobi rotations.

use super::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm at which the sweep loop stops.
const OFF_DIAGONAL_TARGET: f64 = 1e-12;

/// Hard cap on full sweeps; convergence is quadratic and well inside this.
const MAX_SWEEPS: usize = 100;

/// All eigenvalues of a Hermitian matrix, sorted ascending.
///
/// The input must be Hermitian within the crate-wide tolerance; the
/// computation runs on the exactly symmetrized matrix `(A + A-dagger)/2`.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    m.check_hermitian()?;
    let dim = m.dim();
    // symmetrize so rounding in the caller cannot bias the iteration
    let mut a = ComplexMatrix::from_fn(dim, |i, j| (m.get(i, j) + m.get(j, i).conj()) * 0.5);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < OFF_DIAGONAL_TARGET {
            converged = true;
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                rotate(&mut a, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) >= OFF_DIAGONAL_TARGET {
        return Err(Error::EigenNoConvergence(MAX_SWEEPS));
    }

    let mut eigenvalues: Vec<f64> = (0..dim).map(|i| a.get(i, i).re).collect();
    eigenvalues.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let dim = a.dim();
    let mut sum = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation zeroing the (p, q) entry.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r < 1e-300 {
        a.set(p, q, C64::new(0.0, 0.0));
        a.set(q, p, C64::new(0.0, 0.0));
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    // phase-fold the pivot to a real value, then a standard real rotation
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let dim = a.dim();
    let phase_conj = phase.conj();
    for i in 0..dim {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, aip * c - aiq * phase_conj * s);
        a.set(i, q, aip * s + aiq * phase_conj * c);
    }
    for j in 0..dim {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, apj * c - aqj * phase * s);
        a.set(q, j, apj * s + aqj * phase * c);
    }
}

//! Black-box function tables for the two single-query games, plus their
//! reversible oracle unitaries.
//!
//! Tables are explicit arrays rather than closures so the classical
//! baselines can enumerate over them.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::qmath::{ComplexMatrix, C64};
use crate::rng::seeded_rng;

/// Classification of a constant-or-balanced function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DjKind {
    Constant,
    Balanced,
}

impl DjKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DjKind::Constant => "constant",
            DjKind::Balanced => "balanced",
        }
    }
}

/// An n-bit-to-one-bit function promised constant or balanced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DjFunction {
    n: usize,
    table: Vec<u8>,
    kind: DjKind,
}

impl DjFunction {
    /// The constant function with the given output value.
    pub fn constant(n: usize, value: bool) -> Result<Self> {
        if n < 1 {
            return Err(Error::QubitCountTooSmall {
                required: 1,
                got: n,
            });
        }
        Ok(Self {
            n,
            table: vec![u8::from(value); 1 << n],
            kind: DjKind::Constant,
        })
    }

    /// A balanced function drawn uniformly from all `C(2^n, 2^(n-1))`
    /// choices of zero set.
    pub fn balanced_random(n: usize, seed: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::QubitCountTooSmall {
                required: 1,
                got: n,
            });
        }
        let size = 1usize << n;
        let mut rng = seeded_rng(seed);
        let mut positions: Vec<usize> = (0..size).collect();
        positions.shuffle(&mut rng);
        let mut table = vec![1u8; size];
        for &x in &positions[..size / 2] {
            table[x] = 0;
        }
        Ok(Self {
            n,
            table,
            kind: DjKind::Balanced,
        })
    }

    /// A seeded instance of the requested kind.
    pub fn random(n: usize, kind: DjKind, seed: u64) -> Result<Self> {
        match kind {
            DjKind::Constant => Self::constant(n, seeded_rng(seed).gen_bool(0.5)),
            DjKind::Balanced => Self::balanced_random(n, seed),
        }
    }

    /// Validate an explicit table against the constant-or-balanced promise.
    pub fn from_table(table: Vec<u8>) -> Result<Self> {
        let size = table.len();
        if size < 2 || !size.is_power_of_two() {
            return Err(Error::DjPromiseViolation(format!(
                "table length {size} is not a power of two >= 2"
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| v > 1) {
            return Err(Error::DjPromiseViolation(format!(
                "output {bad} is not a bit"
            )));
        }
        let n = size.trailing_zeros() as usize;
        let zeros = table.iter().filter(|&&v| v == 0).count();
        let kind = if zeros == size || zeros == 0 {
            DjKind::Constant
        } else if zeros == size / 2 {
            DjKind::Balanced
        } else {
            return Err(Error::DjPromiseViolation(format!(
                "{zeros} zeros out of {size} is neither constant nor balanced"
            )));
        };
        Ok(Self { n, table, kind })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> DjKind {
        self.kind
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn eval(&self, x: usize) -> u8 {
        self.table[x]
    }

    /// Reversible oracle over n input qubits plus one output qubit:
    /// |x>|b> -> |x>|b xor f(x)>.
    pub fn oracle_unitary(&self) -> OracleUnitary {
        let size = 1usize << self.n;
        let targets: Vec<usize> = (0..2 * size)
            .map(|src| {
                let x = src >> 1;
                let b = src & 1;
                (x << 1) | (b ^ self.table[x] as usize)
            })
            .collect();
        OracleUnitary {
            input_qubits: self.n,
            output_qubits: 1,
            matrix: ComplexMatrix::from_permutation(&targets),
        }
    }

    /// Diagonal phase action on the input register when the output qubit is
    /// held in the |-> state: entries `(-1)^f(x)`.
    pub fn phase_kickback(&self) -> ComplexMatrix {
        let size = 1usize << self.n;
        ComplexMatrix::from_fn(size, |i, j| {
            if i != j {
                C64::new(0.0, 0.0)
            } else if self.table[i] == 0 {
                C64::new(1.0, 0.0)
            } else {
                C64::new(-1.0, 0.0)
            }
        })
    }

    /// Text form: header `DJ n kind`, then the table entries.
    pub fn to_text(&self) -> String {
        let entries: Vec<String> = self.table.iter().map(|v| v.to_string()).collect();
        format!(
            "DJ {} {}\n{}\n",
            self.n,
            self.kind.as_str(),
            entries.join(" ")
        )
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "DJ" {
            return Err(Error::Parse(format!("bad header {header:?}")));
        }
        let n: usize = fields[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad n in {header:?}")))?;
        let table: Vec<u8> = lines
            .flat_map(str::split_whitespace)
            .map(|tok| {
                tok.parse()
                    .map_err(|_| Error::Parse(format!("bad entry {tok:?}")))
            })
            .collect::<Result<_>>()?;
        if table.len() != 1 << n {
            return Err(Error::Parse(format!(
                "expected {} entries, got {}",
                1 << n,
                table.len()
            )));
        }
        let parsed = Self::from_table(table)?;
        if parsed.kind.as_str() != fields[2] {
            return Err(Error::Parse(format!(
                "header says {} but table is {}",
                fields[2],
                parsed.kind.as_str()
            )));
        }
        Ok(parsed)
    }
}

/// An n-bit-to-n-bit function that is two-to-one with a hidden xor mask:
/// f(x) = f(y) for x != y exactly when y = x xor s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimonFunction {
    n: usize,
    mask: u64,
    table: Vec<u64>,
}

impl SimonFunction {
    /// Deterministic labeling: the coset {x, x xor s} gets the rank of its
    /// smaller member among all coset minima.
    pub fn canonical(n: usize, mask: u64) -> Result<Self> {
        Self::check_mask(n, mask)?;
        let size = 1usize << n;
        let mut table = vec![0u64; size];
        let mut next_label = 0u64;
        for x in 0..size {
            let partner = x ^ mask as usize;
            if x < partner {
                table[x] = next_label;
                table[partner] = next_label;
                next_label += 1;
            }
        }
        Ok(Self { n, mask, table })
    }

    /// Canonical labeling pushed through a seeded permutation of the output
    /// value space.
    pub fn randomized(n: usize, mask: u64, seed: u64) -> Result<Self> {
        let mut f = Self::canonical(n, mask)?;
        let size = 1usize << n;
        let mut relabel: Vec<u64> = (0..size as u64).collect();
        relabel.shuffle(&mut seeded_rng(seed));
        for v in &mut f.table {
            *v = relabel[*v as usize];
        }
        Ok(f)
    }

    /// Validate an explicit table against the two-to-one xor-mask promise.
    pub fn from_table(n: usize, mask: u64, table: Vec<u64>) -> Result<Self> {
        Self::check_mask(n, mask)?;
        let size = 1usize << n;
        if table.len() != size {
            return Err(Error::SimonPromiseViolation(format!(
                "table length {} is not 2^{n}",
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| v >= size as u64) {
            return Err(Error::SimonPromiseViolation(format!(
                "output {bad} does not fit in {n} bits"
            )));
        }
        for x in 0..size {
            if table[x] != table[x ^ mask as usize] {
                return Err(Error::SimonPromiseViolation(format!(
                    "f({x}) != f({} = {x} xor s)",
                    x ^ mask as usize
                )));
            }
        }
        let mut seen = vec![false; size];
        let mut distinct = 0usize;
        for &v in &table {
            if !seen[v as usize] {
                seen[v as usize] = true;
                distinct += 1;
            }
        }
        if distinct != size / 2 {
            return Err(Error::SimonPromiseViolation(format!(
                "{distinct} distinct outputs, expected {}; some collision is not a mask pair",
                size / 2
            )));
        }
        Ok(Self { n, mask, table })
    }

    fn check_mask(n: usize, mask: u64) -> Result<()> {
        if n < 1 {
            return Err(Error::QubitCountTooSmall {
                required: 1,
                got: n,
            });
        }
        if mask == 0 || mask >= 1u64 << n {
            return Err(Error::InvalidMask { mask, n });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn eval(&self, x: usize) -> u64 {
        self.table[x]
    }

    /// Reversible oracle over n input qubits plus n output qubits:
    /// |x>|y> -> |x>|y xor f(x)>.
    pub fn oracle_unitary(&self) -> OracleUnitary {
        let size = 1usize << self.n;
        let targets: Vec<usize> = (0..size * size)
            .map(|src| {
                let x = src >> self.n;
                let y = src & (size - 1);
                (x << self.n) | (y ^ self.table[x] as usize)
            })
            .collect();
        OracleUnitary {
            input_qubits: self.n,
            output_qubits: self.n,
            matrix: ComplexMatrix::from_permutation(&targets),
        }
    }

    /// Text form: header `SIMON n s`, then the table entries.
    pub fn to_text(&self) -> String {
        let entries: Vec<String> = self.table.iter().map(|v| v.to_string()).collect();
        format!("SIMON {} {}\n{}\n", self.n, self.mask, entries.join(" "))
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "SIMON" {
            return Err(Error::Parse(format!("bad header {header:?}")));
        }
        let n: usize = fields[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad n in {header:?}")))?;
        let mask: u64 = fields[2]
            .parse()
            .map_err(|_| Error::Parse(format!("bad mask in {header:?}")))?;
        let table: Vec<u64> = lines
            .flat_map(str::split_whitespace)
            .map(|tok| {
                tok.parse()
                    .map_err(|_| Error::Parse(format!("bad entry {tok:?}")))
            })
            .collect::<Result<_>>()?;
        Self::from_table(n, mask, table)
    }
}

/// Permutation matrix implementing a reversible xor oracle.
#[derive(Clone, Debug)]
pub struct OracleUnitary {
    input_qubits: usize,
    output_qubits: usize,
    matrix: ComplexMatrix,
}

impl OracleUnitary {
    pub fn input_qubits(&self) -> usize {
        self.input_qubits
    }

    pub fn output_qubits(&self) -> usize {
        self.output_qubits
    }

    pub fn total_qubits(&self) -> usize {
        self.input_qubits + self.output_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::PureState;

    #[test]
    fn constant_table_is_all_equal() {
        let f = DjFunction::constant(1, false).unwrap();
        assert_eq!(f.table(), &[0, 0]);
        assert_eq!(f.kind(), DjKind::Constant);
    }

    #[test]
    fn single_bit_balanced_is_one_of_two_tables() {
        for seed in 0..8 {
            let f = DjFunction::balanced_random(1, seed).unwrap();
            assert!(matches!(f.table(), [0, 1] | [1, 0]));
        }
    }

    #[test]
    fn seeded_balanced_has_exactly_half_zeros() {
        let f = DjFunction::balanced_random(3, 42).unwrap();
        assert_eq!(f.table().iter().filter(|&&v| v == 0).count(), 4);
        assert_eq!(f.kind(), DjKind::Balanced);
        // same seed, same table
        assert_eq!(f, DjFunction::balanced_random(3, 42).unwrap());
        assert!(DjFunction::from_table(f.table().to_vec()).is_ok());
    }

    #[test]
    fn promise_validator_rejects_mutated_tables() {
        for seed in 0..10u64 {
            let f = DjFunction::balanced_random(3, seed).unwrap();
            let mut mutated = f.table().to_vec();
            mutated[0] ^= 1;
            assert!(matches!(
                DjFunction::from_table(mutated),
                Err(Error::DjPromiseViolation(_))
            ));
        }
        assert!(matches!(
            DjFunction::from_table(vec![0, 1, 1]),
            Err(Error::DjPromiseViolation(_))
        ));
    }

    #[test]
    fn constant_zero_oracle_is_identity() {
        let f = DjFunction::constant(1, false).unwrap();
        let u = f.oracle_unitary();
        assert_eq!(u.total_qubits(), 2);
        assert!(u.matrix().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn identity_function_oracle_is_cnot() {
        // f(x) = x on one bit: control x, target b
        let f = DjFunction::from_table(vec![0, 1]).unwrap();
        let u = f.oracle_unitary();
        let cnot = ComplexMatrix::from_permutation(&[0, 1, 3, 2]);
        assert!(u.matrix().max_abs_diff(&cnot) < 1e-15);
    }

    #[test]
    fn oracles_are_self_inverse_permutations() {
        for seed in 0..5u64 {
            let f = DjFunction::balanced_random(3, seed).unwrap();
            let m = f.oracle_unitary();
            let square = m.matrix().mul(m.matrix());
            assert!(square.max_abs_diff(&ComplexMatrix::identity(16)) < 1e-15);
            assert!(m.matrix().is_unitary(1e-12));
            // entries are exactly 0 or 1
            for i in 0..16 {
                for j in 0..16 {
                    let z = m.matrix().get(i, j);
                    assert!(z.im == 0.0 && (z.re == 0.0 || z.re == 1.0));
                }
            }
        }
        let s = SimonFunction::randomized(3, 5, 9).unwrap();
        let m = s.oracle_unitary();
        let square = m.matrix().mul(m.matrix());
        assert!(square.max_abs_diff(&ComplexMatrix::identity(64)) < 1e-15);
    }

    #[test]
    fn phase_kickback_signs() {
        let zero = DjFunction::constant(2, false).unwrap();
        assert!(
            zero.phase_kickback()
                .max_abs_diff(&ComplexMatrix::identity(4))
                < 1e-15
        );
        let one = DjFunction::constant(2, true).unwrap();
        assert!(
            one.phase_kickback()
                .max_abs_diff(&ComplexMatrix::identity(4).scale(-1.0))
                < 1e-15
        );
    }

    #[test]
    fn kickback_matches_oracle_action_on_minus_ancilla() {
        use crate::qstate::kets;
        let f = DjFunction::balanced_random(3, 7).unwrap();
        let oracle = f.oracle_unitary();
        let kick = f.phase_kickback();
        for x in 0..8usize {
            let input = PureState::basis(3, x).tensor(&kets::minus());
            let output = input.evolve(oracle.matrix()).unwrap();
            let sign = kick.get(x, x).re;
            let expected_amps: Vec<C64> = input.amplitudes().iter().map(|amp| amp * sign).collect();
            for (got, want) in output.amplitudes().iter().zip(expected_amps) {
                assert!((got - want).norm() < 1e-12, "x = {x}");
            }
        }
    }

    #[test]
    fn quantum_parallelism_spreads_all_function_values() {
        // U_f applied to (H^n |0..0>) |0> puts amplitude 2^(-n/2) on exactly
        // the states |x>|f(x)>
        let n = 3;
        let f = DjFunction::balanced_random(n, 13).unwrap();
        let oracle = f.oracle_unitary();
        let h_all = ComplexMatrix::hadamard_n(n).tensor(&ComplexMatrix::identity(2));
        let start = PureState::basis(n + 1, 0);
        let spread = start
            .evolve(&h_all)
            .unwrap()
            .evolve(oracle.matrix())
            .unwrap();
        let expect = ((1u64 << n) as f64).sqrt().recip();
        for idx in 0..(1 << (n + 1)) {
            let x = idx >> 1;
            let b = idx & 1;
            let amp = spread.amplitudes()[idx].re;
            if b == f.eval(x) as usize {
                assert!((amp - expect).abs() < 1e-12);
            } else {
                assert!(amp.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn simon_coset_structure() {
        let f = SimonFunction::canonical(2, 3).unwrap();
        assert_eq!(f.eval(0), f.eval(3));
        assert_eq!(f.eval(1), f.eval(2));
        assert_ne!(f.eval(0), f.eval(1));

        let g = SimonFunction::canonical(3, 1).unwrap();
        for x in 0..8 {
            assert_eq!(g.eval(x), g.eval(x ^ 1));
        }
        let distinct: std::collections::HashSet<u64> = g.table().iter().copied().collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn simon_promise_holds_for_random_relabelings() {
        for n in 1..=3usize {
            for mask in 1..(1u64 << n) {
                for seed in 0..3u64 {
                    let f = SimonFunction::randomized(n, mask, seed).unwrap();
                    assert!(SimonFunction::from_table(n, mask, f.table().to_vec()).is_ok());
                    // injective on coset representatives
                    let mut reps = std::collections::HashSet::new();
                    for x in 0..(1usize << n) {
                        if x < x ^ mask as usize {
                            assert!(reps.insert(f.eval(x)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn simon_validation_rejects_wrong_collisions() {
        // f(0) = f(1) but the mask says collisions come from xor with 2
        let bad = vec![0u64, 0, 1, 2];
        assert!(matches!(
            SimonFunction::from_table(2, 2, bad),
            Err(Error::SimonPromiseViolation(_))
        ));
        assert!(matches!(
            SimonFunction::canonical(2, 0),
            Err(Error::InvalidMask { .. })
        ));
        assert!(matches!(
            SimonFunction::canonical(2, 4),
            Err(Error::InvalidMask { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let f = DjFunction::balanced_random(3, 3).unwrap();
        assert_eq!(DjFunction::from_text(&f.to_text()).unwrap(), f);
        assert!(f.to_text().starts_with("DJ 3 balanced\n"));

        let s = SimonFunction::randomized(3, 5, 4).unwrap();
        assert_eq!(SimonFunction::from_text(&s.to_text()).unwrap(), s);
        assert!(s.to_text().starts_with("SIMON 3 5\n"));

        assert!(DjFunction::from_text("DJ 1 constant\n0 1\n").is_err());
    }
}

//! Classical baselines: exhaustive proof that one classical query is
//! worthless for both games, and the coin-toss strategy that beats the
//! quantum game once only the *average* query count is fixed.

use crate::error::{Error, Result};
use crate::infotheory::empirical_mutual_information;

/// Largest n for which all balanced functions are enumerated
/// (`C(16, 8) = 12870` tables at the cap).
pub const DJ_ENUMERATION_CAP: usize = 4;

/// Largest n for which all valid labelings are enumerated.
pub const SIMON_ENUMERATION_CAP: usize = 3;

/// Information (bits) a single classical query yields about whether the
/// function is constant or balanced, maximized over the queried input.
///
/// Computed by exhaustive enumeration of both promise classes under a
/// uniform prior within each class; the answer is exactly zero.
pub fn classical_dj_single_query_info(n: usize, prior_constant: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::QubitCountTooSmall {
            required: 1,
            got: n,
        });
    }
    if n > DJ_ENUMERATION_CAP {
        return Err(Error::EnumerationCapExceeded {
            requested: n,
            cap: DJ_ENUMERATION_CAP,
        });
    }
    if !(0.0..=1.0).contains(&prior_constant) {
        return Err(Error::ProbabilityOutOfRange(prior_constant));
    }
    let size = 1usize << n;
    // zero sets of balanced functions, as bitmasks over the inputs
    let balanced: Vec<u32> = (0u32..1 << size)
        .filter(|mask| mask.count_ones() as usize == size / 2)
        .collect();
    let balanced_count = balanced.len() as f64;

    let mut worst = 0.0f64;
    for x in 0..size {
        // constants: one of the two answers 0 on x, the other 1
        let const_zero = 0.5;
        let bal_zero =
            balanced.iter().filter(|mask| *mask >> x & 1 == 1).count() as f64 / balanced_count;
        let joint = vec![
            vec![
                prior_constant * const_zero,
                prior_constant * (1.0 - const_zero),
            ],
            vec![
                (1.0 - prior_constant) * bal_zero,
                (1.0 - prior_constant) * (1.0 - bal_zero),
            ],
        ];
        worst = worst.max(empirical_mutual_information(&joint)?);
    }
    Ok(worst)
}

/// Information (bits) the outputs at the given query positions yield about
/// the hidden mask, over a uniform mask and uniform valid labelings.
///
/// One query gives exactly zero; a second query at `x xor s'` becomes
/// informative because a collision pins the mask.
pub fn classical_simon_query_info(n: usize, queries: &[u64]) -> Result<f64> {
    if n < 1 {
        return Err(Error::QubitCountTooSmall {
            required: 1,
            got: n,
        });
    }
    if n > SIMON_ENUMERATION_CAP {
        return Err(Error::EnumerationCapExceeded {
            requested: n,
            cap: SIMON_ENUMERATION_CAP,
        });
    }
    let size = 1usize << n;
    if queries.is_empty() {
        return Err(Error::InvalidDistribution("no query positions".into()));
    }
    for &q in queries {
        if q >= size as u64 {
            return Err(Error::QueryOutOfRange { query: q, size });
        }
    }

    let masks: Vec<u64> = (1..size as u64).collect();
    let code_count = size.pow(queries.len() as u32);
    let mut counts = vec![vec![0u64; code_count]; masks.len()];
    let mut labeling_count = 0u64;
    for (row, &mask) in masks.iter().enumerate() {
        // coset representatives, ascending
        let reps: Vec<usize> = (0..size).filter(|&x| x < x ^ mask as usize).collect();
        for_each_arrangement(size, reps.len(), &mut |labels| {
            let mut code = 0usize;
            for &q in queries {
                let x = q as usize;
                let rep = x.min(x ^ mask as usize);
                let slot = reps.binary_search(&rep).expect("rep enumerated");
                code = code * size + labels[slot] as usize;
            }
            counts[row][code] += 1;
            if row == 0 {
                labeling_count += 1;
            }
        });
    }

    let total = masks.len() as f64 * labeling_count as f64;
    let joint: Vec<Vec<f64>> = counts
        .iter()
        .map(|row| row.iter().map(|&c| c as f64 / total).collect())
        .collect();
    empirical_mutual_information(&joint)
}

/// Single classical query against the hidden-mask promise, maximized over
/// the queried input; exactly zero.
pub fn classical_simon_single_query_info(n: usize) -> Result<f64> {
    if n > SIMON_ENUMERATION_CAP {
        return Err(Error::EnumerationCapExceeded {
            requested: n,
            cap: SIMON_ENUMERATION_CAP,
        });
    }
    let size = 1u64 << n;
    let mut worst = 0.0f64;
    for x in 0..size {
        worst = worst.max(classical_simon_query_info(n, &[x])?);
    }
    Ok(worst)
}

/// All injective assignments of `slots` distinct values from `0..values`.
fn for_each_arrangement(values: usize, slots: usize, visit: &mut impl FnMut(&[u64])) {
    let mut used = vec![false; values];
    let mut current = Vec::with_capacity(slots);
    fn go(
        values: usize,
        slots: usize,
        used: &mut Vec<bool>,
        current: &mut Vec<u64>,
        visit: &mut impl FnMut(&[u64]),
    ) {
        if current.len() == slots {
            visit(current);
            return;
        }
        for v in 0..values {
            if !used[v] {
                used[v] = true;
                current.push(v as u64);
                go(values, slots, used, current, visit);
                current.pop();
                used[v] = false;
            }
        }
    }
    go(values, slots, &mut used, &mut current, visit);
}

/// Outcome of the coin-toss strategy: no query with probability 1/2,
/// otherwise two queries at distinct uniform inputs, concluding "balanced"
/// on distinct outputs.
#[derive(Clone, Copy, Debug)]
pub struct JozsaOutcome {
    /// Exactly 1: half the time zero queries, half the time two.
    pub expected_queries: f64,
    /// Exact information about the function type carried by the strategy's
    /// observations.
    pub expected_information_bits: f64,
    /// Probability of learning the answer outright: coin says query, the
    /// function is balanced, and the two outputs differ.
    pub full_information_probability: f64,
    /// Large-n limit of the above ((1 - p) / 4; 1/8 at even prior).
    pub full_information_probability_limit: f64,
    /// Probability that a balanced function shows two distinct outputs on
    /// two distinct uniform inputs: `2^(n-1) / (2^n - 1)`.
    pub balanced_distinct_probability: f64,
}

/// Evaluate the strategy exactly: by exhaustive enumeration of functions
/// and query pairs up to the enumeration cap, and by the class-symmetric
/// counting form beyond it (the two agree exactly on the overlap).
pub fn jozsa_average_strategy(n: usize, prior_constant: f64) -> Result<JozsaOutcome> {
    if n < 1 {
        return Err(Error::QubitCountTooSmall {
            required: 1,
            got: n,
        });
    }
    if !(0.0..=1.0).contains(&prior_constant) {
        return Err(Error::ProbabilityOutOfRange(prior_constant));
    }
    // past n = 63 the collision probability is 1/2 to the last f64 bit
    let distinct = if n >= 64 {
        0.5
    } else {
        let size = 1u64 << n;
        (size / 2) as f64 / (size - 1) as f64
    };
    let joint = if n <= DJ_ENUMERATION_CAP {
        jozsa_joint_enumerated(n, prior_constant)
    } else {
        jozsa_joint_symmetric(prior_constant, distinct)
    };
    Ok(JozsaOutcome {
        expected_queries: 1.0,
        expected_information_bits: empirical_mutual_information(&joint)?,
        full_information_probability: 0.5 * (1.0 - prior_constant) * distinct,
        full_information_probability_limit: (1.0 - prior_constant) / 4.0,
        balanced_distinct_probability: distinct,
    })
}

/// Joint over (function type) x (no-query | output pair 00, 01, 10, 11).
fn jozsa_joint_symmetric(p: f64, distinct: f64) -> Vec<Vec<f64>> {
    let equal_each = (1.0 - distinct) / 2.0;
    let distinct_each = distinct / 2.0;
    vec![
        vec![p * 0.5, p * 0.25, 0.0, 0.0, p * 0.25],
        vec![
            (1.0 - p) * 0.5,
            (1.0 - p) * 0.5 * equal_each,
            (1.0 - p) * 0.5 * distinct_each,
            (1.0 - p) * 0.5 * distinct_each,
            (1.0 - p) * 0.5 * equal_each,
        ],
    ]
}

fn jozsa_joint_enumerated(n: usize, p: f64) -> Vec<Vec<f64>> {
    let size = 1usize << n;
    let balanced: Vec<u32> = (0u32..1 << size)
        .filter(|mask| mask.count_ones() as usize == size / 2)
        .collect();
    let pair_count = (size * (size - 1)) as u64;

    // integer tallies over (table, ordered pair) keep the cells exact
    let tally = |tables: &[u32]| -> [u64; 4] {
        let mut counts = [0u64; 4];
        for table in tables {
            for x in 0..size {
                for y in 0..size {
                    if x == y {
                        continue;
                    }
                    let vx = (table >> x & 1) as usize;
                    let vy = (table >> y & 1) as usize;
                    counts[vx * 2 + vy] += 1;
                }
            }
        }
        counts
    };
    let const_counts = tally(&[0u32, (1u32 << size) - 1]);
    let bal_counts = tally(&balanced);

    // columns: none, then output pairs 00, 01, 10, 11
    let mut joint = vec![vec![0.0; 5]; 2];
    joint[0][0] = p * 0.5;
    joint[1][0] = (1.0 - p) * 0.5;
    for code in 0..4 {
        joint[0][1 + code] = p * 0.5 * const_counts[code] as f64 / (2 * pair_count) as f64;
        joint[1][1 + code] =
            (1.0 - p) * 0.5 * bal_counts[code] as f64 / (balanced.len() as u64 * pair_count) as f64;
    }
    joint
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::infotheory::dj_mutual_information;

    #[test]
    fn single_dj_query_reveals_nothing() {
        // n = 2: 2 constants + 6 balanced functions, every query is moot
        assert!(classical_dj_single_query_info(2, 0.5).unwrap().abs() <= 1e-15);
        assert!(classical_dj_single_query_info(3, 0.3).unwrap().abs() <= 1e-15);
        assert!(classical_dj_single_query_info(1, 0.5).unwrap().abs() <= 1e-15);
        assert!(classical_dj_single_query_info(4, 0.7).unwrap().abs() <= 1e-15);
        assert!(matches!(
            classical_dj_single_query_info(5, 0.5),
            Err(Error::EnumerationCapExceeded { .. })
        ));
    }

    #[test]
    fn single_simon_query_reveals_nothing() {
        assert!(classical_simon_single_query_info(2).unwrap().abs() <= 1e-15);
        assert!(classical_simon_single_query_info(3).unwrap().abs() <= 1e-15);
        assert!(matches!(
            classical_simon_single_query_info(4),
            Err(Error::EnumerationCapExceeded { .. })
        ));
    }

    #[test]
    fn paired_simon_queries_are_informative() {
        // querying x and x xor delta detects the mask when s = delta
        let info = classical_simon_query_info(2, &[0, 3]).unwrap();
        assert!(info > 0.1, "collision observations must carry information");
        let info3 = classical_simon_query_info(3, &[1, 4]).unwrap();
        assert!(info3 > 0.01);
    }

    #[test]
    fn strategy_query_budget_is_one_on_average() {
        let outcome = jozsa_average_strategy(3, 0.5).unwrap();
        assert_eq!(outcome.expected_queries, 1.0);
    }

    #[test]
    fn strategy_full_information_probability() {
        // exact value at n = 3 is 1/2 * 1/2 * 4/7 = 1/7, with the loose
        // large-n figure 1/8
        let outcome = jozsa_average_strategy(3, 0.5).unwrap();
        assert_eq!(outcome.balanced_distinct_probability, 4.0 / 7.0);
        assert_eq!(outcome.full_information_probability, 1.0 / 7.0);
        assert_eq!(outcome.full_information_probability_limit, 0.125);
    }

    #[test]
    fn strategy_limit_probability_converges() {
        for n in [8usize, 16, 30] {
            let outcome = jozsa_average_strategy(n, 0.5).unwrap();
            let gap = (outcome.full_information_probability - 0.125).abs();
            assert!(gap < 1.0 / (1u64 << n) as f64, "n = {n}");
        }
    }

    #[test]
    fn strategy_learns_nothing_when_answer_is_known() {
        let outcome = jozsa_average_strategy(3, 1.0).unwrap();
        assert_eq!(outcome.expected_information_bits, 0.0);
        assert_eq!(outcome.full_information_probability, 0.0);
    }

    #[test]
    fn enumerated_and_symmetric_paths_agree() {
        for n in [1usize, 2, 3, 4] {
            for p in [0.2, 0.5, 0.8] {
                let size = 1u64 << n;
                let d = (size / 2) as f64 / (size - 1) as f64;
                let enumerated =
                    empirical_mutual_information(&jozsa_joint_enumerated(n, p)).unwrap();
                let symmetric = empirical_mutual_information(&jozsa_joint_symmetric(p, d)).unwrap();
                assert!(
                    (enumerated - symmetric).abs() <= 1e-14,
                    "n {n} p {p}: {enumerated} vs {symmetric}"
                );
            }
        }
    }

    #[test]
    fn average_budget_strategy_beats_single_query_quantum_game() {
        let strategy = jozsa_average_strategy(3, 0.5).unwrap();
        let quantum = dj_mutual_information(3, 1.0 / 129.0, 0.5).unwrap();
        assert!(strategy.expected_information_bits > quantum);
    }
}

//! Cross-module invariants, mostly re-derivations that act as independent
//! oracles for the closed forms. Randomized checks log their seeds.

use ppsim_core::experiments::{bipartitions, simon_closed_form, simon_simulate};
use ppsim_core::infotheory::{
    dj_joint_table, dj_mutual_information, empirical_mutual_information, entropy_h,
    simon_mutual_information,
};
use ppsim_core::oracles::SimonFunction;
use ppsim_core::qmath::{
    apply_unitary, hermitian_eigenvalues, partial_trace, ComplexMatrix, PureState, C64,
};
use ppsim_core::qstate::{make_pps, ppt_min_eigenvalue, separability_threshold};
use ppsim_core::rng::seeded_rng;

#[test]
fn unitary_conjugation_preserves_spectrum() {
    let seed = 1601;
    let mut rng = seeded_rng(seed);
    let psi = PureState::random(3, &mut rng);
    let rho = make_pps(&psi, 0.6).unwrap();
    let reference = hermitian_eigenvalues(&rho).unwrap();
    for round in 0..10 {
        let u = ComplexMatrix::random_unitary(8, &mut rng);
        let evolved = apply_unitary(&rho, &u).unwrap();
        assert!((evolved.trace() - rho.trace()).norm() < 1e-12);
        let spectrum = hermitian_eigenvalues(&evolved).unwrap();
        for (a, b) in spectrum.iter().zip(&reference) {
            assert!((a - b).abs() < 1e-9, "seed {seed}, round {round}");
        }
    }
}

#[test]
fn partial_trace_of_kronecker_density_returns_kept_factor() {
    let seed = 1723;
    let mut rng = seeded_rng(seed);
    for round in 0..5 {
        let left = make_pps(&PureState::random(1, &mut rng), 0.4).unwrap();
        let right = make_pps(&PureState::random(2, &mut rng), 0.8).unwrap();
        let joint = left.tensor(&right);
        let kept_left = partial_trace(&joint, &[0], 3).unwrap();
        assert!(
            kept_left.max_abs_diff(&left) <= 1e-12,
            "seed {seed}, round {round}"
        );
        let kept_right = partial_trace(&joint, &[1, 2], 3).unwrap();
        assert!(
            kept_right.max_abs_diff(&right) <= 1e-12,
            "seed {seed}, round {round}"
        );
    }
}

#[test]
fn below_threshold_states_never_trip_the_witness() {
    // purity 10% under the bound; the witness must stay non-negative on
    // every bipartition, including for maximally entangled pure parts
    let seed = 1831;
    let mut rng = seeded_rng(seed);
    for m in 2..=6usize {
        let eps = 0.9 * separability_threshold(m).unwrap();
        let dim = 1usize << m;
        let mut cat_amps = vec![C64::new(0.0, 0.0); dim];
        cat_amps[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        cat_amps[dim - 1] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let parts = [
            PureState::random(m, &mut rng),
            PureState::new(m, cat_amps).unwrap(),
        ];
        for (which, part) in parts.iter().enumerate() {
            let rho = make_pps(part, eps).unwrap();
            for left in bipartitions(m) {
                let value = ppt_min_eigenvalue(&rho, &left).unwrap();
                assert!(
                    value >= -1e-10,
                    "seed {seed}, m {m}, part {which}, split {left:?}: {value}"
                );
            }
        }
    }
}

#[test]
fn dj_information_agrees_with_joint_table_rederivation() {
    // the generic table route is an independent oracle for the closed form
    for n in [1usize, 2, 3, 5] {
        for eps in [0.0, 1e-4, 0.01, 0.3, 0.8, 1.0] {
            for p in [0.0, 0.2, 0.5, 0.85, 1.0] {
                let direct = dj_mutual_information(n, eps, p).unwrap();
                let table = dj_joint_table(n, eps, p).unwrap();
                let generic = empirical_mutual_information(&table.rows()).unwrap();
                assert!(
                    (direct - generic).abs() <= 1e-12,
                    "n {n} eps {eps} p {p}: {direct} vs {generic}"
                );
            }
        }
    }
}

#[test]
fn dj_information_matches_even_prior_reduction() {
    // at p = 1/2 the Bayes route collapses to a two-term form in eps and
    // 2^n alone; yet another independent evaluation of the same quantity
    for n in [1usize, 2, 3, 6] {
        let scale = 2f64.powi(n as i32);
        let half = scale / 2.0;
        for eps in [1e-4, 0.01, 0.2, 0.6, 0.95] {
            let weight_zero = (1.0 + eps * (half - 1.0)) / scale;
            let posterior_zero = (1.0 + eps * (scale - 1.0)) / (2.0 * (1.0 + eps * (half - 1.0)));
            let posterior_nonzero =
                ((eps - 1.0) * (scale - 1.0)) / (2.0 * (1.0 + eps * (half - 1.0) - scale));
            let reduced = 1.0
                - weight_zero * entropy_h(posterior_zero).unwrap()
                - (1.0 - weight_zero) * entropy_h(posterior_nonzero).unwrap();
            let direct = dj_mutual_information(n, eps, 0.5).unwrap();
            assert!(
                (direct - reduced).abs() <= 1e-12,
                "n {n} eps {eps}: {direct} vs {reduced}"
            );
        }
    }
}

#[test]
fn simon_information_agrees_with_uniform_mask_joint() {
    // build the full joint over (mask, outcome) from the conditional
    // distribution and a uniform mask prior, and compare
    for n in [2usize, 3, 4] {
        let masks = (1u64 << n) - 1;
        for eps in [0.0, 1e-3, 0.05, 0.5, 1.0] {
            let joint: Vec<Vec<f64>> = (1..=masks)
                .map(|mask| {
                    simon_closed_form(n, eps, mask)
                        .unwrap()
                        .probs()
                        .iter()
                        .map(|p| p / masks as f64)
                        .collect()
                })
                .collect();
            let generic = empirical_mutual_information(&joint).unwrap();
            let direct = simon_mutual_information(n, eps).unwrap();
            assert!(
                (direct - generic).abs() <= 1e-12,
                "n {n} eps {eps}: {direct} vs {generic}"
            );
        }
    }
}

#[test]
fn simon_simulation_holds_beyond_the_tested_small_widths() {
    // n = 4 is inside the dense cap but above the grid the equivalence
    // criterion sweeps; one instance keeps the 8-qubit path honest
    let f = SimonFunction::randomized(4, 0b1010, 3).unwrap();
    let eps = 0.3;
    let sim = simon_simulate(&f, eps).unwrap();
    let closed = simon_closed_form(4, eps, 0b1010).unwrap();
    for (got, want) in sim.iter().zip(closed.probs()) {
        assert!((got - want).abs() <= 1e-12);
    }
}

#[test]
fn simon_simulation_at_the_dense_cap() {
    // the full 10-qubit dense path, one instance
    let f = SimonFunction::canonical(5, 0b10011).unwrap();
    let eps = 0.5;
    let sim = simon_simulate(&f, eps).unwrap();
    let closed = simon_closed_form(5, eps, 0b10011).unwrap();
    for (got, want) in sim.iter().zip(closed.probs()) {
        assert!((got - want).abs() <= 1e-12);
    }
}

#[test]
#[allow(clippy::excessive_precision)] // literals keep every reference digit
fn frozen_high_precision_references() {
    // values computed independently with 50-digit decimal arithmetic over
    // exact rationals; the cross-route checks above agree at 1e-12, these
    // pin each route to the true value at ~1e-13 relative
    let close = |got: f64, reference: f64, label: &str| {
        assert!(
            (got / reference - 1.0).abs() <= 1e-13,
            "{label}: {got:e} vs reference {reference:e}"
        );
    };
    close(
        dj_mutual_information(4, 1.0 / 513.0, 0.3).unwrap(),
        9.71931260265828561558766238451430661994110208e-6,
        "dj information, n=4 threshold purity, uneven prior",
    );
    close(
        ppsim_core::infotheory::dj_conditional_entropy(3, 0.2, 0.7).unwrap(),
        8.4385292738443958044960272930558412686879439781216e-1,
        "dj conditional entropy",
    );
    close(
        ppsim_core::infotheory::dj_mutual_information_improved(2, 0.1, 0.25).unwrap(),
        1.2364086570238747504321128742528019330679157803034e-2,
        "improved dj information",
    );
    close(
        simon_mutual_information(4, 1.0 / 8193.0).unwrap(),
        1.00298996810084148719054840416133014822198e-8,
        "simon information, n=4 threshold purity",
    );
    let (h_j, h_j_given_s) = ppsim_core::infotheory::simon_entropies(4, 0.37).unwrap();
    close(
        h_j,
        3.9940586177778898056843294615539901252562871394737,
        "simon outcome entropy",
    );
    close(
        h_j_given_s,
        3.8988610370442902072605416291856521967990233685533,
        "simon conditional entropy",
    );
    close(
        ppsim_core::classical::jozsa_average_strategy(3, 0.5)
            .unwrap()
            .expected_information_bits,
        1.8525325027475263634827884848472726528993984552123e-1,
        "coin-toss strategy information",
    );
}

#[test]
fn both_games_stay_positive_at_vanishing_purity() {
    for eps in [1e-8, 1e-7, 1e-6] {
        assert!(
            dj_mutual_information(3, eps, 0.5).unwrap() > 0.0,
            "dj at {eps}"
        );
        assert!(
            simon_mutual_information(3, eps).unwrap() > 0.0,
            "simon at {eps}"
        );
        assert!(
            simon_mutual_information(10, eps).unwrap() > 0.0,
            "simon n=10 at {eps}"
        );
    }
}

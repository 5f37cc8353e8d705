use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use epistab::clifford::{CliffordOp, Gate};
use epistab::compact::CompactOnticState;
use epistab::dense;
use epistab::epistemic::{self, apply_clifford, respond, sample_preparation, support, support_contains};
use epistab::pauli::PauliIndex;
use epistab::tableau::{enumerate_pure_states, StabilizerTableau};

fn states(n: usize) -> &'static [StabilizerTableau] {
    static CACHE: OnceLock<Vec<Vec<StabilizerTableau>>> = OnceLock::new();
    &CACHE.get_or_init(|| (1..=3).map(|n| enumerate_pure_states(n).unwrap()).collect())[n - 1]
}

fn gates(n: usize) -> Vec<Gate> {
    let mut out: Vec<Gate> = (0..n).flat_map(|q| [Gate::H(q), Gate::S(q)]).collect();
    for c in 0..n {
        for t in (0..n).filter(|&t| t != c) {
            out.push(Gate::Cnot(c, t));
        }
    }
    out
}

/// A pure state, a non-identity measurement and a seed.
fn scenario(n: usize) -> impl Strategy<Value = (StabilizerTableau, PauliIndex, u64)> {
    let count = states(n).len();
    (0..count, 1..(1u64 << (2 * n)), any::<u64>())
        .prop_map(move |(i, m, seed)| (states(n)[i].clone(), PauliIndex::from_code(n, m), seed))
}

#[test]
fn pure_state_counts_match_clifford_orbit() {
    for n in 1..=3 {
        let ops: Vec<CliffordOp> = gates(n).into_iter().map(|g| CliffordOp::gate(n, g).unwrap()).collect();
        let mut seen = BTreeSet::from([StabilizerTableau::zeros(n)]);
        let mut frontier = vec![StabilizerTableau::zeros(n)];
        while let Some(s) = frontier.pop() {
            for c in &ops {
                let t = s.apply_clifford(c);
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        let enumerated: BTreeSet<_> = states(n).iter().cloned().collect();
        assert_eq!(seen, enumerated, "n = {n}");
        assert_eq!(seen.len(), [6, 60, 1080][n - 1]);
    }
}

#[test]
fn clifford_covariance_is_exhaustive_for_small_n() {
    for n in 1..=2 {
        for g in gates(n) {
            let c = CliffordOp::gate(n, g).unwrap();
            for psi in states(n) {
                let image = psi.apply_clifford(&c);
                for lambda in support(psi) {
                    let moved = apply_clifford(&lambda, &c);
                    assert!(support_contains(&image, &moved), "{g} on {psi}");
                    for code in 1..(1u64 << (2 * n)) {
                        let m = PauliIndex::from_code(n, code);
                        let img = c.conjugate(m);
                        assert_eq!(respond(&moved, img.index).unwrap(), respond(&lambda, m).unwrap() ^ img.negative);
                    }
                }
            }
        }
    }
}

#[test]
fn inverse_clifford_restores_ontic_state() {
    let c = CliffordOp::from_gates(3, &[Gate::H(0), Gate::Cnot(0, 2), Gate::S(1), Gate::Cnot(1, 0)]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for psi in states(3).iter().step_by(37) {
        let l = sample_preparation(psi, &mut rng);
        assert_eq!(apply_clifford(&apply_clifford(&l, &c), &c.inverse()), l);
        let s = CompactOnticState::sample_preparation(psi, &mut rng);
        assert_eq!(s.apply_clifford(&c).apply_clifford(&c.inverse()), s);
    }
}

proptest! {
    #[test]
    fn tableau_agrees_with_dense_at_three_qubits((psi, m, _) in scenario(3)) {
        let rho = dense::density(3, psi.rows());
        prop_assert!((dense::expectation(&rho, m) - psi.expectation(m) as f64).abs() < 1e-9);
        for k in [false, true] {
            let (post, p) = dense::project(&rho, m, k);
            prop_assert!((p - psi.outcome_probability(m, k)).abs() < 1e-9);
            if let Some(t) = psi.project(m, k).unwrap() {
                prop_assert!(dense::density(3, t.rows()).approx_eq(&post.scale(Complex64::new(1.0 / p, 0.0))));
            }
        }
    }

    #[test]
    fn measurement_is_idempotent((psi, m, seed) in scenario(3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (k, t) = psi.measure(m, &mut rng).unwrap();
        prop_assert_eq!(t.measure(m, &mut rng).unwrap().0, k);

        let l = sample_preparation(&psi, &mut rng);
        let (k, l2) = epistemic::measure(&l, m, &mut rng).unwrap();
        prop_assert_eq!(epistemic::measure(&l2, m, &mut rng).unwrap().0, k);

        let s = CompactOnticState::sample_preparation(&psi, &mut rng);
        let k = s.respond(m, &mut rng).unwrap();
        let s2 = s.measure_update(m, k, &mut rng).unwrap();
        prop_assert_eq!(s2.outcome_probability(m, k).unwrap(), 1.0);
    }

    /// Sampled version of the exhaustive two-qubit transport check.
    #[test]
    fn update_lands_in_post_measurement_support((psi, m, seed) in scenario(3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = sample_preparation(&psi, &mut rng);
        let (k, l2) = epistemic::measure(&l, m, &mut rng).unwrap();
        let post = psi.project(m, k).unwrap();
        prop_assert!(post.is_some(), "impossible outcome");
        prop_assert!(support_contains(&post.unwrap(), &l2));
    }

    #[test]
    fn compact_update_supports_post_state((psi, m, seed) in scenario(3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = CompactOnticState::sample_preparation(&psi, &mut rng);
        prop_assert!(s.support_contains(&psi));
        let k = s.respond(m, &mut rng).unwrap();
        let post = psi.project(m, k).unwrap();
        prop_assert!(post.is_some(), "impossible outcome");
        for branch in s.update_branches(m, k).unwrap() {
            prop_assert!(branch.support_contains(post.as_ref().unwrap()));
        }
    }

    /// The compact state keeps the full model's phases on the group and on
    /// the three stored coset representatives.
    #[test]
    fn compact_matches_full_on_stored_rows((psi, m, seed) in scenario(3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = sample_preparation(&psi, &mut rng);
        let s = CompactOnticState::from_full(&l);
        let stored = l.group.contains(m) || s.extension_rows().iter().any(|r| r.index == m);
        if !l.group.commutes_with_all(m) {
            prop_assert_eq!(s.outcome_probability(m, false).unwrap(), 0.5);
        } else if stored {
            prop_assert_eq!(s.outcome_probability(m, respond(&l, m).unwrap()).unwrap(), 1.0);
        }
    }

    #[test]
    fn compact_serialization_round_trips((psi, _m, seed) in scenario(3)) {
        let s = CompactOnticState::sample_preparation(&psi, &mut ChaCha8Rng::seed_from_u64(seed));
        let bytes = s.to_bytes();
        // 35 bits
        prop_assert_eq!(bytes.len(), 5);
        prop_assert_eq!(CompactOnticState::from_bytes(3, &bytes).unwrap(), s);
    }
}

//! Sampling a circuit on a backend and checking the joint outcome statistics
//! against the exact quantum distribution.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::backend::{BackendKind, Compiled};
use crate::circuit::{Circuit, Instruction, Preparation};
use crate::clifford::Gate;
use crate::error::Result;
use crate::pauli::PauliIndex;
use crate::tableau::enumerate_pure_states;

use super::report::{bits_key, within_binomial};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BackendComparison {
    pub backend: String,
    pub counts: BTreeMap<String, u64>,
    /// Outcome sequences observed although their exact probability is zero.
    pub impossible: Vec<String>,
    /// Sequences whose frequency falls outside the binomial tolerance.
    pub out_of_tolerance: Vec<String>,
}

impl BackendComparison {
    pub fn passed(&self) -> bool {
        self.impossible.is_empty() && self.out_of_tolerance.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub shots: u64,
    pub seed: u64,
    pub sigma: f64,
    pub expected: BTreeMap<String, f64>,
    pub backends: Vec<BackendComparison>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.backends.iter().all(|b| b.passed())
    }
}

/// Counts outcome sequences and compares them with exact probabilities.
pub fn compare_counts(
    backend: &str,
    outcomes: &[Vec<bool>],
    expected: &BTreeMap<Vec<bool>, f64>,
    sigma: f64,
) -> BackendComparison {
    let shots = outcomes.len() as u64;
    let mut raw: BTreeMap<Vec<bool>, u64> = BTreeMap::new();
    for o in outcomes {
        *raw.entry(o.clone()).or_insert(0) += 1;
    }
    let impossible = raw
        .keys()
        .filter(|seq| expected.get(*seq).copied().unwrap_or(0.0) == 0.0)
        .map(|seq| bits_key(seq))
        .collect();
    let out_of_tolerance = expected
        .iter()
        .filter(|(seq, &p)| !within_binomial(raw.get(*seq).copied().unwrap_or(0), shots, p, sigma))
        .map(|(seq, _)| bits_key(seq))
        .collect();
    BackendComparison {
        backend: backend.to_string(),
        counts: raw.into_iter().map(|(k, v)| (bits_key(&k), v)).collect(),
        impossible,
        out_of_tolerance,
    }
}

pub fn compare_to_oracle(
    circuit: &Circuit,
    backends: &[BackendKind],
    shots: u64,
    seed: u64,
    sigma: f64,
) -> Result<ComparisonReport> {
    let compiled = Compiled::new(circuit)?;
    let expected = compiled.exact_distribution()?;
    let backends = backends
        .iter()
        .map(|&kind| Ok(compare_counts(kind.name(), &compiled.run(kind, shots, seed)?, &expected, sigma)))
        .collect::<Result<_>>()?;
    Ok(ComparisonReport {
        shots,
        seed,
        sigma,
        expected: expected.iter().map(|(k, v)| (bits_key(k), *v)).collect(),
        backends,
    })
}

/// A random circuit: a uniformly random pure stabilizer state followed by
/// `depth` instructions, each a random H, S or CNOT or a measurement of a
/// random non-identity Pauli with equal probability.
pub fn random_circuit<R: Rng + ?Sized>(n: usize, depth: usize, rng: &mut R) -> Result<Circuit> {
    let states = enumerate_pure_states(n)?;
    let psi = &states[rng.gen_range(0..states.len())];
    let mut c = Circuit::new(n, Preparation::Generators(psi.rows().to_vec()));
    for _ in 0..depth {
        let ins = if rng.gen() {
            let q = rng.gen_range(0..n);
            match rng.gen_range(0..if n > 1 { 3 } else { 2 }) {
                0 => Instruction::Gate(Gate::H(q)),
                1 => Instruction::Gate(Gate::S(q)),
                _ => {
                    let t = (q + rng.gen_range(1..n)) % n;
                    Instruction::Gate(Gate::Cnot(q, t))
                }
            }
        } else {
            Instruction::Measure(PauliIndex::from_code(n, rng.gen_range(1..(1u64 << (2 * n)))))
        };
        c.instructions.push(ins);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn impossible_sequences_are_hard_failures() {
        let expected = BTreeMap::from([(vec![false], 1.0)]);
        let ok = compare_counts("x", &vec![vec![false]; 10], &expected, 5.0);
        assert!(ok.passed());
        let mut outcomes = vec![vec![false]; 10];
        outcomes.push(vec![true]);
        let bad = compare_counts("x", &outcomes, &expected, 5.0);
        assert_eq!(bad.impossible, ["1"]);
        assert!(!bad.passed());
    }

    #[test]
    fn bell_circuit_matches_on_all_backends() {
        let c = parse_circuit("PREP Z\nGATE H 0\nGATE CNOT 0 1\nMEASURE XX\nMEASURE ZI\nMEASURE ZZ").unwrap();
        let r = compare_to_oracle(&c, &BackendKind::ALL, 2000, 3, 5.0).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r, compare_to_oracle(&c, &BackendKind::ALL, 2000, 3, 5.0).unwrap());
    }

    #[test]
    fn random_circuits_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 1..=3 {
            for _ in 0..10 {
                let c = random_circuit(n, 10, &mut rng).unwrap();
                assert_eq!(c.instructions.len(), 10);
                assert_eq!(parse_circuit(&c.to_string()).unwrap(), c);
            }
        }
    }
}

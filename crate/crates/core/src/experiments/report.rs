use std::collections::BTreeMap;

use serde::Serialize;

/// Default number of standard deviations allowed for random outcomes.
pub const DEFAULT_SIGMA: f64 = 5.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Assertion {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Assertion { name: name.into(), passed, detail: detail.into() }
    }
}

/// Outcome counts of a scenario plus the checks made on them. `shots` is the
/// total number of recorded runs, so the counts always sum to it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub scenario: String,
    pub backend: String,
    pub seed: u64,
    pub shots: u64,
    pub counts: BTreeMap<String, u64>,
    pub assertions: Vec<Assertion>,
}

impl ExperimentReport {
    pub fn new(scenario: impl Into<String>, backend: impl Into<String>, seed: u64) -> Self {
        ExperimentReport {
            scenario: scenario.into(),
            backend: backend.into(),
            seed,
            shots: 0,
            counts: BTreeMap::new(),
            assertions: Vec::new(),
        }
    }

    pub fn record(&mut self, key: impl Into<String>) {
        *self.counts.entry(key.into()).or_insert(0) += 1;
        self.shots += 1;
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion::new(name, passed, detail));
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Whether `count` successes out of `shots` is compatible with probability
/// `p` within `sigma` binomial standard deviations. Certain and impossible
/// events must match exactly.
pub fn within_binomial(count: u64, shots: u64, p: f64, sigma: f64) -> bool {
    let n = shots as f64;
    let sd = (n * p * (1.0 - p)).sqrt();
    (count as f64 - n * p).abs() <= sigma * sd + 1e-9
}

pub fn bits_key(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_bounds() {
        assert!(within_binomial(5000, 10_000, 0.5, 5.0));
        assert!(within_binomial(5240, 10_000, 0.5, 5.0));
        assert!(!within_binomial(5260, 10_000, 0.5, 5.0));
        assert!(within_binomial(100, 100, 1.0, 5.0));
        assert!(!within_binomial(99, 100, 1.0, 5.0));
        assert!(!within_binomial(1, 100, 0.0, 5.0));
    }

    #[test]
    fn counts_sum_to_shots() {
        let mut r = ExperimentReport::new("demo", "oracle", 1);
        for k in ["a", "b", "a"] {
            r.record(k);
        }
        assert_eq!(r.shots, r.counts.values().sum::<u64>());
        assert!(r.passed());
        r.check("fails", false, "");
        assert!(!r.passed());
        assert!(r.to_json().contains("\"scenario\":\"demo\""));
    }
}

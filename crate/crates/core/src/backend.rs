//! Running circuits on the three interchangeable backends.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::circuit::{Circuit, Instruction};
use crate::clifford::CliffordOp;
use crate::compact::CompactOnticState;
use crate::epistemic::{self, OnticState};
use crate::error::{Error, Result};
use crate::pauli::PauliIndex;
use crate::rng::shot_rng;
use crate::tableau::StabilizerTableau;

/// Default largest qubit count for the full model.
pub const DEFAULT_FULL_MAX_N: usize = 6;
/// The full model stores `4^n` bits per ontic state, which bounds any override.
pub const FULL_MAX_N_LIMIT: usize = 10;
/// Environment variable overriding [`DEFAULT_FULL_MAX_N`].
pub const MAX_N_ENV: &str = "EPISTAB_MAX_N";

pub fn full_model_cap() -> Result<usize> {
    match std::env::var(MAX_N_ENV) {
        Err(_) => Ok(DEFAULT_FULL_MAX_N),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if (1..=FULL_MAX_N_LIMIT).contains(&n) => Ok(n),
            _ => Err(Error::Config(format!("{MAX_N_ENV} must be an integer in 1..={FULL_MAX_N_LIMIT}, got {v:?}"))),
        },
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BackendKind {
    Oracle,
    Full,
    Compact,
}

impl BackendKind {
    pub const ALL: [BackendKind; 3] = [BackendKind::Oracle, BackendKind::Full, BackendKind::Compact];

    pub fn name(&self) -> &'static str {
        match self {
            BackendKind::Oracle => "oracle",
            BackendKind::Full => "full",
            BackendKind::Compact => "compact",
        }
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BackendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "oracle" | "tableau" => Ok(BackendKind::Oracle),
            "full" | "epistemic" => Ok(BackendKind::Full),
            "compact" => Ok(BackendKind::Compact),
            _ => Err(Error::Config(format!("unknown backend {s:?}"))),
        }
    }
}

/// One simulation backend: how it prepares a pure state, transports its state
/// through a Clifford, and measures.
pub trait Model: Sync {
    type State: Clone + Send;

    fn prepare<R: Rng + ?Sized>(&self, psi: &StabilizerTableau, rng: &mut R) -> Self::State;
    fn apply(&self, state: &Self::State, c: &CliffordOp) -> Self::State;
    fn measure<R: Rng + ?Sized>(&self, state: &Self::State, m: PauliIndex, rng: &mut R) -> Result<(bool, Self::State)>;
}

pub struct Oracle;
pub struct Full;
pub struct Compact;

impl Model for Oracle {
    type State = StabilizerTableau;

    fn prepare<R: Rng + ?Sized>(&self, psi: &StabilizerTableau, _rng: &mut R) -> StabilizerTableau {
        psi.clone()
    }

    fn apply(&self, state: &StabilizerTableau, c: &CliffordOp) -> StabilizerTableau {
        state.apply_clifford(c)
    }

    fn measure<R: Rng + ?Sized>(&self, state: &StabilizerTableau, m: PauliIndex, rng: &mut R) -> Result<(bool, StabilizerTableau)> {
        state.measure(m, rng)
    }
}

impl Model for Full {
    type State = OnticState;

    fn prepare<R: Rng + ?Sized>(&self, psi: &StabilizerTableau, rng: &mut R) -> OnticState {
        epistemic::sample_preparation(psi, rng)
    }

    fn apply(&self, state: &OnticState, c: &CliffordOp) -> OnticState {
        epistemic::apply_clifford(state, c)
    }

    fn measure<R: Rng + ?Sized>(&self, state: &OnticState, m: PauliIndex, rng: &mut R) -> Result<(bool, OnticState)> {
        epistemic::measure(state, m, rng)
    }
}

impl Model for Compact {
    type State = CompactOnticState;

    fn prepare<R: Rng + ?Sized>(&self, psi: &StabilizerTableau, rng: &mut R) -> CompactOnticState {
        CompactOnticState::sample_preparation(psi, rng)
    }

    fn apply(&self, state: &CompactOnticState, c: &CliffordOp) -> CompactOnticState {
        state.apply_clifford(c)
    }

    fn measure<R: Rng + ?Sized>(
        &self,
        state: &CompactOnticState,
        m: PauliIndex,
        rng: &mut R,
    ) -> Result<(bool, CompactOnticState)> {
        let k = state.respond(m, rng)?;
        Ok((k, state.measure_update(m, k, rng)?))
    }
}

enum Step {
    Gate(CliffordOp),
    Measure(PauliIndex),
}

/// A circuit with its preparation expanded into pure components and its gates
/// turned into Clifford maps, ready to be run many times.
pub struct Compiled {
    pub n: usize,
    components: Vec<StabilizerTableau>,
    steps: Vec<Step>,
}

impl Compiled {
    pub fn new(circuit: &Circuit) -> Result<Self> {
        let components = circuit.components()?.into_iter().map(|(s, _)| s).collect();
        let steps = circuit
            .instructions
            .iter()
            .filter_map(|ins| match ins {
                Instruction::Gate(g) => Some(CliffordOp::gate(circuit.n, *g).map(Step::Gate)),
                Instruction::Measure(m) => Some(Ok(Step::Measure(*m))),
                Instruction::Discard => None,
            })
            .collect::<Result<_>>()?;
        Ok(Compiled { n: circuit.n, components, steps })
    }

    /// One shot: draw a pure component uniformly, prepare, then run the body.
    pub fn run_shot<M: Model, R: Rng + ?Sized>(&self, model: &M, rng: &mut R) -> Result<Vec<bool>> {
        let psi = if self.components.len() == 1 {
            &self.components[0]
        } else {
            &self.components[rng.gen_range(0..self.components.len())]
        };
        let mut state = model.prepare(psi, rng);
        let mut outcomes = Vec::new();
        for step in &self.steps {
            match step {
                Step::Gate(c) => state = model.apply(&state, c),
                Step::Measure(m) => {
                    let (k, next) = model.measure(&state, *m, rng)?;
                    outcomes.push(k);
                    state = next;
                }
            }
        }
        Ok(outcomes)
    }

    fn run_many<M: Model>(&self, model: &M, shots: u64, seed: u64) -> Result<Vec<Vec<bool>>> {
        (0..shots)
            .into_par_iter()
            .map(|s| self.run_shot(model, &mut shot_rng(seed, s)))
            .collect()
    }

    /// Outcome sequences of every shot, in shot order.
    pub fn run(&self, kind: BackendKind, shots: u64, seed: u64) -> Result<Vec<Vec<bool>>> {
        match kind {
            BackendKind::Oracle => self.run_many(&Oracle, shots, seed),
            BackendKind::Full => {
                let cap = full_model_cap()?;
                if self.n > cap {
                    return Err(Error::TooManyQubits { n: self.n, max: cap });
                }
                self.run_many(&Full, shots, seed)
            }
            BackendKind::Compact => self.run_many(&Compact, shots, seed),
        }
    }

    /// Exact joint distribution of outcome sequences under quantum mechanics,
    /// by branching the tableau simulation on every random outcome.
    pub fn exact_distribution(&self) -> Result<BTreeMap<Vec<bool>, f64>> {
        let mut out = BTreeMap::new();
        let w = 1.0 / self.components.len() as f64;
        for psi in &self.components {
            self.branch(psi.clone(), 0, Vec::new(), w, &mut out)?;
        }
        Ok(out)
    }

    fn branch(
        &self,
        mut state: StabilizerTableau,
        mut at: usize,
        mut prefix: Vec<bool>,
        weight: f64,
        out: &mut BTreeMap<Vec<bool>, f64>,
    ) -> Result<()> {
        while at < self.steps.len() {
            match &self.steps[at] {
                Step::Gate(c) => state = state.apply_clifford(c),
                Step::Measure(m) => {
                    let mut live = Vec::with_capacity(2);
                    for k in [false, true] {
                        if let Some(post) = state.project(*m, k)? {
                            live.push((k, post));
                        }
                    }
                    if live.len() == 2 {
                        for (k, post) in live {
                            let mut p = prefix.clone();
                            p.push(k);
                            self.branch(post, at + 1, p, weight / 2.0, out)?;
                        }
                        return Ok(());
                    }
                    let (k, post) = live.pop().expect("some outcome is possible");
                    prefix.push(k);
                    state = post;
                }
            }
            at += 1;
        }
        *out.entry(prefix).or_insert(0.0) += weight;
        Ok(())
    }
}

/// Parallel shots of `circuit` on `kind`; the result is indexed by shot.
pub fn run_circuit(circuit: &Circuit, kind: BackendKind, shots: u64, seed: u64) -> Result<Vec<Vec<bool>>> {
    Compiled::new(circuit)?.run(kind, shots, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;

    #[test]
    fn deterministic_measurement_on_every_backend() {
        let c = parse_circuit("PREP Z\nMEASURE ZI\nMEASURE YY\nMEASURE YY").unwrap();
        for kind in BackendKind::ALL {
            let shots = run_circuit(&c, kind, 200, 5).unwrap();
            assert!(shots.iter().all(|s| !s[0] && s[1] == s[2]), "{kind}");
        }
    }

    #[test]
    fn reproducible_by_seed() {
        let c = parse_circuit("QUBITS 2\nPREP MIXED CANONICAL\nMEASURE XI\nGATE H 0\nMEASURE XZ").unwrap();
        for kind in BackendKind::ALL {
            assert_eq!(run_circuit(&c, kind, 64, 9).unwrap(), run_circuit(&c, kind, 64, 9).unwrap());
        }
    }

    #[test]
    fn exact_distribution_of_bell_parities() {
        let c = parse_circuit("PREP Z\nGATE H 0\nGATE CNOT 0 1\nMEASURE ZI\nMEASURE ZZ\nMEASURE XX").unwrap();
        let d = Compiled::new(&c).unwrap().exact_distribution().unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.get(&vec![false, false, false]), Some(&0.25));
        assert_eq!(d.get(&vec![true, false, true]), Some(&0.25));
    }

    #[test]
    fn backend_names_parse() {
        for kind in BackendKind::ALL {
            assert_eq!(kind.name().parse::<BackendKind>().unwrap(), kind);
        }
        assert!("quantum".parse::<BackendKind>().is_err());
    }
}

//! End-to-end acceptance checks shared by the `acceptance` test target and
//! the `selftest` command.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::backend::BackendKind;
use crate::clifford::{CliffordOp, Gate};
use crate::compact::{bit_len, CompactOnticState};
use crate::dense;
use crate::epistemic::{apply_clifford, respond, sample_preparation, support, support_contains, update_plan, OnticState};
use crate::error::Result;
use crate::experiments::{compare_to_oracle, contextuality, mp, pbr, random_circuit};
use crate::experiments::report::within_binomial;
use crate::pauli::{beta, AbelianSubgroup, PauliIndex};
use crate::phase::PhaseFunction;
use crate::rng::shot_rng;
use crate::tableau::{enumerate_pure_states, Membership, StabilizerTableau};

#[derive(Clone, Debug)]
pub struct AcceptanceConfig {
    /// Shots per sampled scenario.
    pub shots: u64,
    pub seed: u64,
    pub sigma: f64,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig { shots: 10_000, seed: 20_240_601, sigma: crate::experiments::DEFAULT_SIGMA }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("[{tag}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "tableau oracle matches dense matrices"),
    (2, "measurement update transports supports"),
    (3, "single-measurement statistics"),
    (4, "Mermin-Peres contexts"),
    (5, "PBR elimination"),
    (6, "single-qubit eight-state model"),
    (7, "compact model"),
    (8, "preparation contextuality"),
    (9, "context-dependent effective response"),
    (10, "commuting product phase"),
];

pub fn run_criterion(id: u8, cfg: &AcceptanceConfig) -> CriterionResult {
    let name = CRITERIA.iter().find(|(i, _)| *i == id).map(|(_, n)| *n).unwrap_or("unknown");
    let outcome = match id {
        1 => dense_fidelity(),
        2 => support_transport(),
        3 => single_shot_statistics(cfg),
        4 => mermin_peres(cfg),
        5 => pbr_elimination(cfg),
        6 => eight_state_model(),
        7 => compact_model(cfg),
        8 => preparation_contextuality(cfg),
        9 => effective_response(),
        10 => product_phase(cfg),
        _ => Ok(Err(format!("no criterion {id}"))),
    };
    let (passed, detail) = match outcome {
        Ok(Ok(detail)) => (true, detail),
        Ok(Err(detail)) => (false, detail),
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult { id, name, passed, detail }
}

pub fn run_all(cfg: &AcceptanceConfig) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|(id, _)| run_criterion(*id, cfg)).collect()
}

/// `Ok(Ok(summary))` on success, `Ok(Err(reason))` on a failed check.
type Check = Result<std::result::Result<String, String>>;

fn verdict(failures: &[String], summary: String) -> std::result::Result<String, String> {
    if failures.is_empty() {
        Ok(summary)
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        Err(format!("{} failures, e.g. {}", failures.len(), shown.join("; ")))
    }
}

fn non_identity(n: usize) -> impl Iterator<Item = PauliIndex> {
    (1..(1u64 << (2 * n))).map(move |c| PauliIndex::from_code(n, c))
}

fn primitive_gates(n: usize) -> Vec<Gate> {
    let mut gates: Vec<Gate> = (0..n).flat_map(|q| [Gate::H(q), Gate::S(q)]).collect();
    for c in 0..n {
        for t in 0..n {
            if c != t {
                gates.push(Gate::Cnot(c, t));
            }
        }
    }
    gates
}

fn dense_fidelity() -> Check {
    let mut failures = Vec::new();
    let mut checks = 0u64;
    let scale = |m: &dense::Matrix, s: f64| m.scale(Complex64::new(s, 0.0));
    for n in 1..=2 {
        for psi in enumerate_pure_states(n)? {
            let rho = dense::density(n, psi.rows());
            for m in non_identity(n) {
                checks += 1;
                let e = dense::expectation(&rho, m);
                if (e - psi.expectation(m) as f64).abs() > 1e-9 {
                    failures.push(format!("<{m}> on {psi}"));
                }
                for k in [false, true] {
                    let (post, prob) = dense::project(&rho, m, k);
                    if (prob - psi.outcome_probability(m, k)).abs() > 1e-9 {
                        failures.push(format!("P({m}={}) on {psi}", k as u8));
                    }
                    match psi.project(m, k)? {
                        Some(t) if !dense::density(n, t.rows()).approx_eq(&scale(&post, 1.0 / prob)) => {
                            failures.push(format!("post-state of {m}={} on {psi}", k as u8));
                        }
                        None if prob > 1e-9 => failures.push(format!("missing post-state of {m} on {psi}")),
                        _ => {}
                    }
                }
            }
            for g in primitive_gates(n) {
                checks += 1;
                let t = psi.apply_clifford(&CliffordOp::gate(n, g)?);
                let u = dense::gate_unitary(n, g);
                if !dense::density(n, t.rows()).approx_eq(&dense::conjugate(&u, &rho)) {
                    failures.push(format!("{g} on {psi}"));
                }
            }
        }
    }
    Ok(verdict(&failures, format!("{checks} expectations, projections and gate actions agree for n = 1, 2")))
}

/// For every two-qubit pure state, every ontic state in its support and every
/// measurement, all possible post-measurement ontic states lie in the support
/// of the quantum post-measurement state.
fn support_transport() -> Check {
    let states = enumerate_pure_states(2)?;
    let ms: Vec<PauliIndex> = non_identity(2).collect();
    let per_state: Vec<(u64, Vec<String>)> = states
        .par_iter()
        .map(|psi| {
            let mut checked = 0u64;
            let mut failures = Vec::new();
            let posts: Vec<[Option<(StabilizerTableau, Vec<(PauliIndex, bool)>)>; 2]> = ms
                .iter()
                .map(|&m| {
                    [false, true].map(|k| {
                        psi.project(m, k).expect("valid").map(|t| {
                            let signs = t.signed_elements().iter().map(|e| (e.index, e.negative)).collect();
                            (t, signs)
                        })
                    })
                })
                .collect();
            for lambda in support(psi) {
                for (mi, &m) in ms.iter().enumerate() {
                    checked += 1;
                    let k = respond(&lambda, m).expect("non-identity");
                    let Some((post, signs)) = &posts[mi][k as usize] else {
                        failures.push(format!("{m} gave an impossible outcome on {psi}"));
                        continue;
                    };
                    let plan = update_plan(&lambda, m, k).expect("outcome matches response");
                    let groups_ok = plan.candidates.iter().all(|g| {
                        g.rank() == 1 && g.generators().iter().all(|p| post.membership(*p) != Membership::Absent)
                    });
                    let phases_ok = signs.iter().all(|&(p, neg)| {
                        plan.base.evaluate(p) == neg && (p.is_identity() || !plan.randomized.contains(&p))
                    });
                    if !(groups_ok && phases_ok) {
                        failures.push(format!("{m}={} from {} on {psi}", k as u8, lambda.group));
                    }
                }
            }
            (checked, failures)
        })
        .collect();
    let checked: u64 = per_state.iter().map(|(c, _)| c).sum();
    let failures: Vec<String> = per_state.into_iter().flat_map(|(_, f)| f).collect();
    Ok(verdict(&failures, format!("{checked} (state, ontic state, measurement) triples at n = 2")))
}

fn single_shot_statistics(cfg: &AcceptanceConfig) -> Check {
    let mut failures = Vec::new();
    for n in 1..=3 {
        for psi in enumerate_pure_states(n)? {
            let compact = CompactOnticState::preparation_support(&psi);
            let full = if n <= 2 { Some(support(&psi)) } else { None };
            for m in non_identity(n) {
                let q = psi.outcome_probability(m, true);
                let c = compact.iter().map(|s| s.outcome_probability(m, true)).sum::<Result<f64>>()? / compact.len() as f64;
                if (c - q).abs() > 1e-12 {
                    failures.push(format!("compact P({m}=1) = {c} on {psi}"));
                }
                if let Some(full) = &full {
                    let ones = full.iter().filter(|l| l.gamma.evaluate(m)).count();
                    let f = ones as f64 / full.len() as f64;
                    if (f - q).abs() > 1e-12 {
                        failures.push(format!("full P({m}=1) = {f} on {psi}"));
                    }
                }
            }
        }
    }
    // three qubits: the full support is too large to enumerate, so sample it
    let states = enumerate_pure_states(3)?;
    let ms: Vec<PauliIndex> = non_identity(3).collect();
    let sampled: Vec<Vec<String>> = states
        .par_iter()
        .enumerate()
        .map(|(i, psi)| {
            let mut ones = vec![0u64; ms.len()];
            let mut rng = shot_rng(cfg.seed, i as u64);
            for _ in 0..cfg.shots {
                let l = sample_preparation(psi, &mut rng);
                for (j, m) in ms.iter().enumerate() {
                    ones[j] += l.gamma.evaluate(*m) as u64;
                }
            }
            ms.iter()
                .zip(&ones)
                .filter(|(m, &c)| !within_binomial(c, cfg.shots, psi.outcome_probability(**m, true), cfg.sigma))
                .map(|(m, c)| format!("full {m} gave {c}/{} ones on {psi}", cfg.shots))
                .collect()
        })
        .collect();
    failures.extend(sampled.into_iter().flatten());
    Ok(verdict(
        &failures,
        format!("exact for n <= 2 (both models) and n = 3 (compact); {} samples per state for the full model at n = 3", cfg.shots),
    ))
}

fn mermin_peres(cfg: &AcceptanceConfig) -> Check {
    let mut failures = Vec::new();
    for kind in BackendKind::ALL {
        let square = mp::mp_run(kind, cfg.shots, cfg.seed)?;
        let seq = mp::mp_sequences_run(kind, cfg.shots, cfg.seed, cfg.sigma)?;
        for a in square.failures().chain(seq.failures()) {
            failures.push(format!("{kind} {}: {}", a.name, a.detail));
        }
    }
    let (k, values) = mp::worked_example()?;
    let bits: Vec<bool> = values.iter().map(|(_, b)| *b).collect();
    if k || bits != [true, false, false, false] {
        failures.push(format!("worked update gave k = {} and {values:?}", k as u8));
    }
    Ok(verdict(&failures, format!("six contexts and four sequences, {} shots each, on every backend", cfg.shots)))
}

fn pbr_elimination(cfg: &AcceptanceConfig) -> Check {
    let mut failures = Vec::new();
    for alternate in [false, true] {
        for kind in BackendKind::ALL {
            for input in 0..4 {
                let r = pbr::pbr_run(kind, input, cfg.shots, cfg.seed, alternate)?;
                if !r.passed() {
                    failures.push(format!("{kind} input {input} alternate {alternate}: {:?}", r.counts));
                }
                let eliminated_each = (0..4).filter(|&e| e != input).all(|e| r.counts.contains_key(&format!("eliminated:{e}")));
                if !eliminated_each {
                    failures.push(format!("{kind} input {input}: some other input never eliminated"));
                }
            }
        }
    }
    if !pbr::supports_jointly_disjoint() {
        failures.push("an ontic state lies in all four supports".into());
    }
    Ok(verdict(&failures, format!("4 inputs x 3 backends x 2 branchings, {} shots each", cfg.shots)))
}

fn eight_state_model() -> Check {
    let mut failures = Vec::new();
    let trivial = AbelianSubgroup::trivial(1);
    let ontic: Vec<OnticState> = (0u64..8)
        .map(|w| OnticState::new(trivial.clone(), PhaseFunction::from_word(1, w << 1)))
        .collect::<Result<_>>()?;
    let states = enumerate_pure_states(1)?;
    for psi in &states {
        let supp: BTreeSet<OnticState> = support(psi).into_iter().collect();
        let filtered: BTreeSet<OnticState> = ontic.iter().filter(|l| support_contains(psi, l)).cloned().collect();
        if supp.len() != 4 || supp != filtered {
            failures.push(format!("support of {psi} has {} states", supp.len()));
        }
    }
    let [x, y, z] = ["X", "Y", "Z"].map(|s| PauliIndex::parse(s).expect("valid"));
    let h = CliffordOp::gate(1, Gate::H(0))?;
    for l in &ontic {
        let (a, b, c) = (l.gamma.evaluate(x), l.gamma.evaluate(y), l.gamma.evaluate(z));
        let img = apply_clifford(l, &h);
        if (img.gamma.evaluate(x), img.gamma.evaluate(y), img.gamma.evaluate(z)) != (c, !b, a) {
            failures.push(format!("H maps ({a},{b},{c}) wrongly"));
        }
        for m in [x, y, z] {
            let k = respond(l, m)?;
            let outcomes: BTreeSet<OnticState> = update_plan(l, m, k)?.outcomes().into_iter().collect();
            let eigen = StabilizerTableau::new(1, &[crate::pauli::SignedPauli::new(m, k)?])?;
            let prepared: BTreeSet<OnticState> = support(&eigen).into_iter().collect();
            if outcomes != prepared {
                failures.push(format!("update by {m}={} differs from re-preparation", k as u8));
            }
        }
    }
    Ok(verdict(&failures, "8 ontic states, supports of size 4, Hadamard map and measurement as re-preparation".into()))
}

fn compact_model(cfg: &AcceptanceConfig) -> Check {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for n in 1..=6 {
        let state = CompactOnticState::sample_preparation(&StabilizerTableau::zeros(n), &mut rng);
        let bytes = state.to_bytes();
        if bit_len(n) != (2 * n + 1) * (n + 2) || bytes.len() != bit_len(n).div_ceil(8) {
            failures.push(format!("n = {n}: {} bits in {} bytes", bit_len(n), bytes.len()));
        }
        if CompactOnticState::from_bytes(n, &bytes)? != state {
            failures.push(format!("n = {n}: serialization does not round trip"));
        }
    }

    // every compact state reachable at n = 2 supports exactly three pure states
    let states = enumerate_pure_states(2)?;
    let gates: Vec<CliffordOp> = primitive_gates(2).into_iter().map(|g| CliffordOp::gate(2, g)).collect::<Result<_>>()?;
    let mut seen: BTreeSet<CompactOnticState> = BTreeSet::new();
    let mut queue: VecDeque<CompactOnticState> = states.iter().flat_map(CompactOnticState::preparation_support).collect();
    while let Some(s) = queue.pop_front() {
        if !seen.insert(s.clone()) {
            continue;
        }
        let hits = states.iter().filter(|psi| s.support_contains(psi)).count();
        if hits != 3 {
            failures.push(format!("a reachable state supports {hits} pure states"));
        }
        for c in &gates {
            queue.push_back(s.apply_clifford(c));
        }
        for m in non_identity(2) {
            for k in [false, true] {
                if s.outcome_probability(m, k)? > 0.0 {
                    queue.extend(s.update_branches(m, k)?);
                }
            }
        }
    }

    let mut circuits = Vec::new();
    for (n, count) in [(2, 50), (3, 20)] {
        for _ in 0..count {
            circuits.push(random_circuit(n, 10, &mut rng)?);
        }
    }
    for (i, c) in circuits.iter().enumerate() {
        let r = compare_to_oracle(c, &BackendKind::ALL, cfg.shots, cfg.seed.wrapping_add(i as u64), cfg.sigma)?;
        for b in r.backends.iter().filter(|b| !b.passed()) {
            failures.push(format!(
                "circuit {i} on {}: impossible {:?}, out of tolerance {:?}",
                b.backend, b.impossible, b.out_of_tolerance
            ));
        }
    }
    Ok(verdict(
        &failures,
        format!(
            "sizes for n = 1..6, {} reachable two-qubit states, {} random circuits x {} shots",
            seen.len(),
            circuits.len(),
            cfg.shots
        ),
    ))
}

fn preparation_contextuality(cfg: &AcceptanceConfig) -> Check {
    let mut failures = Vec::new();
    for n in 1..=3 {
        let r = contextuality::preparation_contextuality_check(n, cfg.shots, cfg.seed)?;
        if r.disjoint != (n >= 2) {
            failures.push(format!("n = {n}: disjoint = {}", r.disjoint));
        }
    }
    for kind in BackendKind::ALL {
        let r = contextuality::mixture_statistics(kind, 2, cfg.shots, cfg.seed, cfg.sigma)?;
        failures.extend(r.failures().map(|a| format!("{kind} {}: {}", a.name, a.detail)));
    }
    Ok(verdict(&failures, "Z and X mixtures have disjoint supports for n = 2, 3 yet identical statistics".into()))
}

fn effective_response() -> Check {
    let s = contextuality::effective_response_summary()?;
    let mut failures = Vec::new();
    if s.witness.is_none() {
        failures.push("no ontic state distinguishes the two contexts".into());
    }
    failures.extend(s.average_mismatches.iter().map(|m| format!("average differs for {m}")));
    Ok(verdict(&failures, format!("{} of {} two-qubit ontic states respond differently by context", s.differing, s.total)))
}

fn product_phase(cfg: &AcceptanceConfig) -> Check {
    let mut failures = Vec::new();
    let mut checked = 0u64;
    let mut check = |a: PauliIndex, b: PauliIndex, failures: &mut Vec<String>| -> Result<()> {
        checked += 1;
        let lhs = dense::pauli_matrix(a).mul(&dense::pauli_matrix(b));
        let sign = if beta(a, b)? { -1.0 } else { 1.0 };
        let rhs = dense::pauli_matrix(a.compose(&b)).scale(Complex64::new(sign, 0.0));
        if !lhs.approx_eq(&rhs) {
            failures.push(format!("{a} * {b}"));
        }
        Ok(())
    };
    for n in 1..=2 {
        let all: Vec<PauliIndex> = (0..(1u64 << (2 * n))).map(|c| PauliIndex::from_code(n, c)).collect();
        for a in &all {
            for b in all.iter().filter(|b| b.commutes_with(a)) {
                check(*a, *b, &mut failures)?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut drawn = 0;
    let mut cache: BTreeMap<u64, dense::Matrix> = BTreeMap::new();
    while drawn < 100_000 {
        let a = PauliIndex::from_code(3, rng.gen_range(0..64));
        let b = PauliIndex::from_code(3, rng.gen_range(0..64));
        if a.anticommutes_with(&b) {
            continue;
        }
        drawn += 1;
        let m = |p: PauliIndex, cache: &mut BTreeMap<u64, dense::Matrix>| {
            cache.entry(p.code()).or_insert_with(|| dense::pauli_matrix(p)).clone()
        };
        let lhs = m(a, &mut cache).mul(&m(b, &mut cache));
        let sign = if beta(a, b)? { -1.0 } else { 1.0 };
        if !lhs.approx_eq(&m(a.compose(&b), &mut cache).scale(Complex64::new(sign, 0.0))) {
            failures.push(format!("{a} * {b}"));
        }
    }
    Ok(verdict(&failures, format!("{checked} pairs exhaustively for n <= 2 and {drawn} random pairs at n = 3")))
}

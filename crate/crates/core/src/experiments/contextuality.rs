//! Preparation contextuality, measurement contextuality of sequential
//! responses, and overlapping supports.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::backend::{BackendKind, Compiled};
use crate::circuit::{Circuit, MixedKind, Preparation};
use crate::epistemic::{respond, sample_preparation, support, support_contains, update_plan, OnticState};
use crate::error::{Error, Result};
use crate::pauli::{AbelianSubgroup, Pauli, PauliIndex};
use crate::phase::PhaseFunction;
use crate::tableau::{enumerate_pure_states, StabilizerTableau};

use super::compare::compare_counts;
use super::report::ExperimentReport;

fn basis_states(n: usize, letter: Pauli) -> Result<Vec<StabilizerTableau>> {
    Ok(Circuit::new(n, Preparation::Mixed(match letter {
        Pauli::X => MixedKind::XBasis,
        _ => MixedKind::ZBasis,
    }))
    .components()?
    .into_iter()
    .map(|(s, _)| s)
    .collect())
}

#[derive(Clone, Debug)]
pub struct PrepContextuality {
    pub n: usize,
    /// Whether the Z-basis and X-basis mixtures have disjoint supports.
    pub disjoint: bool,
    /// An ontic state in both supports, if one was found.
    pub shared: Option<OnticState>,
    /// Number of Z-mixture ontic states examined.
    pub examined: u64,
    /// Whether every Z-mixture state was examined, as opposed to sampled.
    pub exhaustive: bool,
}

/// Looks for an ontic state in the support of both the Z-basis and X-basis
/// decompositions of the maximally mixed state. Exhaustive for `n <= 2`,
/// otherwise `samples` draws from the Z-basis mixture.
pub fn preparation_contextuality_check(n: usize, samples: u64, seed: u64) -> Result<PrepContextuality> {
    let zs = basis_states(n, Pauli::Z)?;
    let xs = basis_states(n, Pauli::X)?;
    let in_x = |l: &OnticState| xs.iter().any(|psi| support_contains(psi, l));
    let mut examined = 0;
    let mut shared = None;
    let exhaustive = n <= 2;
    if exhaustive {
        'outer: for psi in &zs {
            for l in support(psi) {
                examined += 1;
                if in_x(&l) {
                    shared = Some(l);
                    break 'outer;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..samples {
            let l = sample_preparation(&zs[(i as usize) % zs.len()], &mut rng);
            examined += 1;
            if in_x(&l) {
                shared = Some(l);
                break;
            }
        }
    }
    Ok(PrepContextuality { n, disjoint: shared.is_none(), shared, examined, exhaustive })
}

/// Samples every single-Pauli measurement on both decompositions and compares
/// with the maximally mixed state.
pub fn mixture_statistics(kind: BackendKind, n: usize, shots: u64, seed: u64, sigma: f64) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new(format!("prep-ctx-stats:{n}"), kind.name(), seed);
    for (mi, mixed) in [MixedKind::ZBasis, MixedKind::XBasis].into_iter().enumerate() {
        for code in 1..(1u64 << (2 * n)) {
            let m = PauliIndex::from_code(n, code);
            let circuit = Circuit::new(n, Preparation::Mixed(mixed)).measure(m);
            // the maximally mixed state gives each outcome probability 1/2
            let expected = [(vec![false], 0.5), (vec![true], 0.5)].into_iter().collect();
            let sub_seed = seed ^ (code << 1 | mi as u64);
            let outcomes = Compiled::new(&circuit)?.run(kind, shots, sub_seed)?;
            let cmp = compare_counts(kind.name(), &outcomes, &expected, sigma);
            let label = if mi == 0 { "Z" } else { "X" };
            for (k, v) in &cmp.counts {
                *report.counts.entry(format!("{label}:{m}:{k}")).or_insert(0) += v;
            }
            report.shots += shots;
            report.check(format!("{label}-mixture {m}"), cmp.passed(), format!("{:?}", cmp.counts));
        }
    }
    Ok(report)
}

/// `ξ(k1, k2 | λ)` for measuring `m1` then `m2`, indexed `[k1][k2]`.
pub fn effective_response(lambda: &OnticState, m1: PauliIndex, m2: PauliIndex) -> Result<[[f64; 2]; 2]> {
    if m1.anticommutes_with(&m2) {
        return Err(Error::Anticommuting { a: m1.to_string(), b: m2.to_string() });
    }
    let k1 = respond(lambda, m1)?;
    let plan = update_plan(lambda, m1, k1)?;
    let mut table = [[0.0; 2]; 2];
    for k2 in [false, true] {
        table[k1 as usize][k2 as usize] = plan.response_probability(m2, k2);
    }
    Ok(table)
}

/// Probabilities of the computational basis outcomes `|b0 b1>` under the two
/// contexts `ZI then IZ` and `ZI then ZZ`, indexed `[b0][b1]`.
pub fn computational_basis_tables(lambda: &OnticState) -> Result<([[f64; 2]; 2], [[f64; 2]; 2])> {
    let p = |s: &str| PauliIndex::parse(s).expect("valid");
    let a = effective_response(lambda, p("ZI"), p("IZ"))?;
    let b = effective_response(lambda, p("ZI"), p("ZZ"))?;
    let mut b_basis = [[0.0; 2]; 2];
    for k1 in 0..2 {
        for k2 in 0..2 {
            b_basis[k1][k1 ^ k2] = b[k1][k2];
        }
    }
    Ok((a, b_basis))
}

/// Every ontic state of the two-qubit model, in a fixed order.
pub fn all_two_qubit_ontic_states() -> impl Iterator<Item = OnticState> {
    (1u64..16).flat_map(|code| {
        let g = AbelianSubgroup::new(2, &[PauliIndex::from_code(2, code)]).expect("single Pauli");
        (0u64..(1 << 16)).step_by(2).map(move |w| OnticState { group: g.clone(), gamma: PhaseFunction::from_word(2, w) })
    })
}

#[derive(Clone, Debug)]
pub struct EffectiveResponseSummary {
    /// First ontic state (in enumeration order) whose two tables differ.
    pub witness: Option<OnticState>,
    /// Number of ontic states whose two tables differ.
    pub differing: u64,
    pub total: u64,
    /// Pure states whose support-averaged tables disagree with the oracle.
    pub average_mismatches: Vec<String>,
}

/// Exhaustive comparison of the two contexts over all two-qubit ontic states,
/// plus a check that averaging over each pure-state support reproduces the
/// quantum joint probabilities.
pub fn effective_response_summary() -> Result<EffectiveResponseSummary> {
    let mut witness = None;
    let mut differing = 0;
    let mut total = 0;
    for l in all_two_qubit_ontic_states() {
        total += 1;
        let (a, b) = computational_basis_tables(&l)?;
        let norm = |t: &[[f64; 2]; 2]| t.iter().flatten().sum::<f64>();
        debug_assert!((norm(&a) - 1.0).abs() < 1e-12 && (norm(&b) - 1.0).abs() < 1e-12);
        if a != b {
            differing += 1;
            witness.get_or_insert(l);
        }
    }
    let mut average_mismatches = Vec::new();
    let p = |s: &str| PauliIndex::parse(s).expect("valid");
    for psi in enumerate_pure_states(2)? {
        let supp = support(&psi);
        let mut avg_a = [[0.0; 2]; 2];
        let mut avg_b = [[0.0; 2]; 2];
        for l in &supp {
            let (a, b) = computational_basis_tables(l)?;
            for i in 0..2 {
                for j in 0..2 {
                    avg_a[i][j] += a[i][j] / supp.len() as f64;
                    avg_b[i][j] += b[i][j] / supp.len() as f64;
                }
            }
        }
        for (avg, second) in [(avg_a, p("IZ")), (avg_b, p("ZZ"))] {
            let exact = Compiled::new(&Circuit::from_state(&psi).measure(p("ZI")).measure(second))?.exact_distribution()?;
            for k1 in 0..2 {
                for k2 in 0..2 {
                    let q = exact.get(&vec![k1 == 1, k2 == 1]).copied().unwrap_or(0.0);
                    let b1 = if second == p("ZZ") { k1 ^ k2 } else { k2 };
                    if (avg[k1][b1] - q).abs() > 1e-12 {
                        average_mismatches.push(format!("{psi} via {second}"));
                    }
                }
            }
        }
    }
    Ok(EffectiveResponseSummary { witness, differing, total, average_mismatches })
}

/// `(<Z_0, ..., Z_{n-2}>, 0)` together with `|0...0>` and `|0...0+>`, after
/// checking that it lies in both supports.
pub fn psi_epistemic_witness(n: usize) -> Result<(OnticState, StabilizerTableau, StabilizerTableau)> {
    if n == 0 || n > crate::backend::FULL_MAX_N_LIMIT {
        return Err(Error::TooManyQubits { n, max: crate::backend::FULL_MAX_N_LIMIT });
    }
    let zs: Vec<_> = (0..n - 1).map(|q| PauliIndex::single(n, q, Pauli::Z)).collect();
    let lambda = OnticState::new(AbelianSubgroup::new(n, &zs)?, PhaseFunction::zero(n))?;
    let a = StabilizerTableau::zeros(n);
    let mut rows = a.rows().to_vec();
    let last = PauliIndex::single(n, n - 1, Pauli::Z);
    for r in rows.iter_mut() {
        if r.index == last {
            r.index = PauliIndex::single(n, n - 1, Pauli::X);
        }
    }
    let b = StabilizerTableau::new(n, &rows)?;
    if !(support_contains(&a, &lambda) && support_contains(&b, &lambda)) {
        return Err(Error::Config("witness is not in both supports".into()));
    }
    Ok((lambda, a, b))
}

pub fn prep_ctx_report(kind: BackendKind, n: usize, shots: u64, seed: u64, sigma: f64) -> Result<ExperimentReport> {
    let check = preparation_contextuality_check(n, shots, seed)?;
    let mut report = mixture_statistics(kind, n, shots, seed, sigma)?;
    report.scenario = format!("prep-ctx:{n}");
    let how = if check.exhaustive { "exhaustive" } else { "sampled" };
    let detail = match &check.shared {
        Some(l) => format!("{how}, shared ontic state {}", describe(l)),
        None => format!("{how}, {} ontic states examined, none shared", check.examined),
    };
    // one qubit has no rank-(n-1) group to tell the bases apart
    if n >= 2 {
        report.check("supports disjoint", check.disjoint, detail);
    } else {
        report.check("supports overlap", !check.disjoint, detail);
    }
    Ok(report)
}

pub fn eff_resp_report() -> Result<ExperimentReport> {
    let s = effective_response_summary()?;
    let mut report = ExperimentReport::new("eff-resp", "full", 0);
    report.check(
        "contexts differ on some ontic state",
        s.witness.is_some(),
        match &s.witness {
            Some(l) => format!("{} of {} ontic states differ, first {}", s.differing, s.total, describe(l)),
            None => format!("none of {} ontic states differ", s.total),
        },
    );
    report.check(
        "support averages match quantum probabilities",
        s.average_mismatches.is_empty(),
        format!("{} mismatches", s.average_mismatches.len()),
    );
    Ok(report)
}

pub fn witness_report(n: usize) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new(format!("witness:{n}"), "full", 0);
    match psi_epistemic_witness(n) {
        Ok((l, a, b)) => report.check("shared ontic state", true, format!("{} in supports of {a} and {b}", l.group)),
        Err(e) => report.check("shared ontic state", false, e.to_string()),
    }
    Ok(report)
}

fn describe(l: &OnticState) -> String {
    let n = l.n();
    let ones: Vec<String> = (1..(1u64 << (2 * n)))
        .filter(|&c| l.gamma.get_code(c))
        .map(|c| PauliIndex::from_code(n, c).to_string())
        .collect();
    format!("G = {}, γ = 1 on {{{}}}", l.group, ones.join(", "))
}

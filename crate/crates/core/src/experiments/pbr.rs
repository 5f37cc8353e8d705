//! Adaptive anti-distinguishing measurement for `|00>, |0+>, |+0>, |++>`.
//!
//! First `YY` is measured. On outcome `+1` the circuit measures `XX`, on `-1`
//! it measures `XZ` (or `ZZ` and `ZX` with the alternate branch). Each of the
//! four paths has probability zero for exactly one input, which that path
//! therefore eliminates.

use rand::Rng;
use rayon::prelude::*;

use crate::backend::{full_model_cap, BackendKind, Compact, Full, Model, Oracle};
use crate::epistemic::{support, support_contains};
use crate::error::{Error, Result};
use crate::pauli::PauliIndex;
use crate::rng::shot_rng;
use crate::tableau::StabilizerTableau;

use super::report::ExperimentReport;

/// `[|00>, |0+>, |+0>, |++>]`.
pub fn pbr_states() -> [StabilizerTableau; 4] {
    let t = |g: &[&str]| StabilizerTableau::parse(g).expect("valid");
    [t(&["+ZI", "+IZ"]), t(&["+ZI", "+IX"]), t(&["+XI", "+IZ"]), t(&["+XI", "+IX"])]
}

/// Second observable after `YY` returned `k`.
pub fn second_observable(k: bool, alternate: bool) -> PauliIndex {
    let s = match (k, alternate) {
        (false, false) => "XX",
        (true, false) => "XZ",
        (false, true) => "ZZ",
        (true, true) => "ZX",
    };
    PauliIndex::parse(s).expect("valid")
}

/// Index of the input state ruled out by the path `(k, k2)`.
pub fn eliminated(k: bool, k2: bool, alternate: bool) -> usize {
    match (alternate, k, k2) {
        (false, false, false) => 0,
        (false, false, true) => 3,
        (false, true, false) => 1,
        (false, true, true) => 2,
        (true, false, false) => 3,
        (true, false, true) => 0,
        (true, true, false) => 2,
        (true, true, true) => 1,
    }
}

fn pbr_shot<M: Model, R: Rng + ?Sized>(
    model: &M,
    psi: &StabilizerTableau,
    alternate: bool,
    rng: &mut R,
) -> Result<(bool, bool)> {
    let yy = PauliIndex::parse("YY").expect("valid");
    let state = model.prepare(psi, rng);
    let (k, state) = model.measure(&state, yy, rng)?;
    let (k2, _) = model.measure(&state, second_observable(k, alternate), rng)?;
    Ok((k, k2))
}

fn pbr_shots<M: Model>(model: &M, psi: &StabilizerTableau, alternate: bool, shots: u64, seed: u64) -> Result<Vec<(bool, bool)>> {
    (0..shots).into_par_iter().map(|s| pbr_shot(model, psi, alternate, &mut shot_rng(seed, s))).collect()
}

pub fn pbr_run(kind: BackendKind, input: usize, shots: u64, seed: u64, alternate: bool) -> Result<ExperimentReport> {
    if input > 3 {
        return Err(Error::Config(format!("PBR input index must be 0..=3, got {input}")));
    }
    let psi = &pbr_states()[input];
    let paths = match kind {
        BackendKind::Oracle => pbr_shots(&Oracle, psi, alternate, shots, seed)?,
        BackendKind::Full => {
            full_model_cap()?;
            pbr_shots(&Full, psi, alternate, shots, seed)?
        }
        BackendKind::Compact => pbr_shots(&Compact, psi, alternate, shots, seed)?,
    };
    let mut report = ExperimentReport::new(format!("pbr:{input}"), kind.name(), seed);
    let mut forbidden = 0;
    for (k, k2) in paths {
        let e = eliminated(k, k2, alternate);
        report.record(format!("eliminated:{e}"));
        forbidden += (e == input) as u64;
    }
    report.check("prepared state never eliminated", forbidden == 0, format!("{forbidden} forbidden paths"));
    Ok(report)
}

/// True iff no ontic state of the full model lies in all four supports.
pub fn supports_jointly_disjoint() -> bool {
    let [a, rest @ ..] = pbr_states();
    !support(&a).iter().any(|l| rest.iter().all(|psi| support_contains(psi, l)))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Derives the elimination table from the oracle: path `(k, k2)` rules out
    /// state `i` exactly when that path has probability zero for `i`.
    #[test]
    fn table_matches_oracle() {
        let yy = PauliIndex::parse("YY").unwrap();
        for alternate in [false, true] {
            for k in [false, true] {
                for k2 in [false, true] {
                    let m2 = second_observable(k, alternate);
                    let zero: Vec<usize> = pbr_states()
                        .iter()
                        .enumerate()
                        .filter(|(_, psi)| match psi.project(yy, k).unwrap() {
                            None => true,
                            Some(post) => post.project(m2, k2).unwrap().is_none(),
                        })
                        .map(|(i, _)| i)
                        .collect();
                    assert_eq!(zero, [eliminated(k, k2, alternate)], "{alternate} {k} {k2}");
                }
            }
        }
    }

    #[test]
    fn joint_supports_empty() {
        assert!(supports_jointly_disjoint());
    }

    #[test]
    fn compact_never_eliminates_input() {
        for i in 0..4 {
            let r = pbr_run(BackendKind::Compact, i, 500, 1, false).unwrap();
            assert!(r.passed());
        }
    }
}

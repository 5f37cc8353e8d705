//! The two-qubit Mermin-Peres square measured one context at a time.
//!
//! ```text
//!   XI  IX  XX   | +
//!   IZ  ZI  ZZ   | +
//!   XZ  ZX  YY   | +
//!   --------------
//!   +   +   -
//! ```
//!
//! Each line is a commuting triple whose product is `±I`; measuring its three
//! observables in sequence must reproduce that sign on every shot.

use crate::backend::{run_circuit, BackendKind};
use crate::circuit::{Circuit, MixedKind, Preparation};
use crate::epistemic::{respond, update_plan, OnticState};
use crate::error::{Error, Result};
use crate::pauli::{beta, AbelianSubgroup, PauliIndex};
use crate::phase::PhaseFunction;

use super::report::{bits_key, within_binomial, ExperimentReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub name: String,
    pub observables: [PauliIndex; 3],
    /// 1 when the product of the three observables is `-I`.
    pub parity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MerminPeresSquare {
    pub grid: [[PauliIndex; 3]; 3],
    pub row_parity: [bool; 3],
    pub column_parity: [bool; 3],
}

impl MerminPeresSquare {
    pub fn standard() -> Self {
        let p = |s: &str| PauliIndex::parse(s).expect("valid");
        MerminPeresSquare {
            grid: [[p("XI"), p("IX"), p("XX")], [p("IZ"), p("ZI"), p("ZZ")], [p("XZ"), p("ZX"), p("YY")]],
            row_parity: [false; 3],
            column_parity: [false, false, true],
        }
    }

    pub fn lines(&self) -> Vec<Line> {
        let rows = (0..3).map(|r| Line {
            name: format!("row{}", r + 1),
            observables: self.grid[r],
            parity: self.row_parity[r],
        });
        let cols = (0..3).map(|c| Line {
            name: format!("col{}", c + 1),
            observables: [self.grid[0][c], self.grid[1][c], self.grid[2][c]],
            parity: self.column_parity[c],
        });
        rows.chain(cols).collect()
    }

    /// Confirms every line commutes, multiplies to the identity and carries
    /// the declared sign.
    pub fn self_check(&self) -> Result<()> {
        for line in self.lines() {
            let [a, b, c] = line.observables;
            let sign = beta(a, b)? ^ beta(a.compose(&b), c)?;
            if !a.compose(&b).compose(&c).is_identity() || beta(b, c).is_err() {
                return Err(Error::InvalidGenerators(format!("{} is not a closed context", line.name)));
            }
            if sign != line.parity {
                return Err(Error::InvalidGenerators(format!("{} has the wrong sign", line.name)));
            }
        }
        Ok(())
    }
}

fn context_circuit(prep: Preparation, line: &Line) -> Circuit {
    Circuit::new(2, prep).measure_all(&line.observables)
}

/// Measures `line` left to right `shots` times and asserts the parity on
/// every shot.
pub fn mp_context_run(kind: BackendKind, prep: Preparation, line: &Line, shots: u64, seed: u64) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new(format!("mp:{}", line.name), kind.name(), seed);
    let outcomes = run_circuit(&context_circuit(prep, line), kind, shots, seed)?;
    let mut violations = 0;
    for o in &outcomes {
        report.record(bits_key(o));
        if (o[0] ^ o[1] ^ o[2]) != line.parity {
            violations += 1;
        }
    }
    report.check(format!("{} parity", line.name), violations == 0, format!("{violations} violations"));
    Ok(report)
}

/// All six contexts on `|00>` and on the maximally mixed state.
pub fn mp_run(kind: BackendKind, shots: u64, seed: u64) -> Result<ExperimentReport> {
    let square = MerminPeresSquare::standard();
    square.self_check()?;
    let mut report = ExperimentReport::new("mp", kind.name(), seed);
    let inputs = [("zeros", Preparation::Zeros), ("mixed", Preparation::Mixed(MixedKind::Canonical))];
    for (i, (label, prep)) in inputs.into_iter().enumerate() {
        for (j, line) in square.lines().iter().enumerate() {
            let sub_seed = seed.wrapping_add((i * 6 + j) as u64 * 0x9e37_79b9);
            let sub = mp_context_run(kind, prep.clone(), line, shots, sub_seed)?;
            for (k, v) in sub.counts {
                *report.counts.entry(format!("{label}:{}:{k}", line.name)).or_insert(0) += v;
            }
            report.shots += sub.shots;
            for a in sub.assertions {
                report.check(format!("{label}:{}", a.name), a.passed, a.detail);
            }
        }
    }
    let middle = report.counts.get("zeros:row2:000").copied().unwrap_or(0);
    report.check("zeros middle row is +,+,+", middle == shots, format!("{middle}/{shots}"));
    Ok(report)
}

pub struct Sequence {
    pub name: &'static str,
    pub observables: [&'static str; 3],
}

/// `S1 = XX,ZZ,YY`, `S2 = XZ,ZX,YY` and the same contexts with `YY` first.
pub const SEQUENCES: [Sequence; 4] = [
    Sequence { name: "S1", observables: ["XX", "ZZ", "YY"] },
    Sequence { name: "S2", observables: ["XZ", "ZX", "YY"] },
    Sequence { name: "S1'", observables: ["YY", "ZZ", "XX"] },
    Sequence { name: "S2'", observables: ["YY", "ZX", "XZ"] },
];

/// Runs the four sequences on the maximally mixed state. The product relation
/// must hold on every shot while the `YY` outcome stays uniformly random.
pub fn mp_sequences_run(kind: BackendKind, shots: u64, seed: u64, sigma: f64) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new("mp-seq", kind.name(), seed);
    for (i, seq) in SEQUENCES.iter().enumerate() {
        let obs = seq.observables.map(|s| PauliIndex::parse(s).expect("valid"));
        let c = Circuit::new(2, Preparation::Mixed(MixedKind::Canonical)).measure_all(&obs);
        let outcomes = run_circuit(&c, kind, shots, seed.wrapping_add(i as u64))?;
        // XX·ZZ = -YY while XZ·ZX = +YY
        let parity = seq.observables.contains(&"ZZ");
        let yy = obs.iter().position(|p| p.to_string() == "YY").expect("every sequence has YY");
        let mut violations = 0;
        let mut yy_ones = 0;
        for o in &outcomes {
            report.record(format!("{}:{}", seq.name, bits_key(o)));
            violations += ((o[0] ^ o[1] ^ o[2]) != parity) as u64;
            yy_ones += o[yy] as u64;
        }
        report.check(format!("{} product relation", seq.name), violations == 0, format!("{violations} violations"));
        report.check(
            format!("{} YY marginal", seq.name),
            within_binomial(yy_ones, shots, 0.5, sigma),
            format!("{yy_ones}/{shots} outcomes were -1"),
        );
    }
    Ok(report)
}

/// Values of the post-measurement phase function at `XX, ZZ, XZ, ZX` after
/// measuring `YY` on `(<ZI>, 0)`, together with the outcome.
pub fn worked_example() -> Result<(bool, [(String, bool); 4])> {
    let p = |s: &str| PauliIndex::parse(s).expect("valid");
    let lambda = OnticState::new(AbelianSubgroup::new(2, &[p("ZI")])?, PhaseFunction::zero(2))?;
    let k = respond(&lambda, p("YY"))?;
    let plan = update_plan(&lambda, p("YY"), k)?;
    let at = |s: &str| {
        assert!(!plan.randomized.contains(&p(s)));
        (s.to_string(), plan.base.evaluate(p(s)))
    };
    Ok((k, [at("XX"), at("ZZ"), at("XZ"), at("ZX")]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_consistent() {
        let sq = MerminPeresSquare::standard();
        sq.self_check().unwrap();
        let mut bad = sq.clone();
        bad.column_parity[2] = false;
        assert!(bad.self_check().is_err());
        assert_eq!(sq.lines().len(), 6);
    }

    #[test]
    fn worked_example_values() {
        let (k, vals) = worked_example().unwrap();
        assert!(!k);
        let got: Vec<bool> = vals.iter().map(|(_, v)| *v).collect();
        assert_eq!(got, [true, false, false, false]);
    }

    #[test]
    fn contexts_hold_on_full_model() {
        let r = mp_run(BackendKind::Full, 200, 4).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.shots, r.counts.values().sum::<u64>());
    }
}

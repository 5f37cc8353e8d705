//! Plain-text circuit format.
//!
//! ```text
//! # Bell pair, then a parity check
//! QUBITS 2
//! PREP Z
//! GATE H 0
//! GATE CNOT 0 1
//! MEASURE ZZ
//! MEASURE XX
//! ```
//!
//! One instruction per line; `#` starts a comment and keywords are case
//! insensitive. The single `PREP` comes first (after an optional `QUBITS n`)
//! and is one of `PREP Z`, `PREP X`, `PREP <signed generators>` (for example
//! `PREP +XX +ZZ`) or `PREP MIXED Z|X|CANONICAL`. The mixed forms prepare the
//! maximally mixed state as a uniform mixture of Z-basis states, X-basis states
//! or all pure stabilizer states respectively. Gates are `GATE H q`,
//! `GATE S q` and `GATE CNOT c t`; measurements are `MEASURE <pauli>`. An
//! optional final `DISCARD` ends the circuit. Without `QUBITS`, the qubit count
//! comes from the first Pauli string, or else from the largest gate target.

use std::fmt;

use crate::clifford::Gate;
use crate::error::{Error, Result};
use crate::pauli::{PauliIndex, SignedPauli};
use crate::tableau::{enumerate_pure_states, StabilizerTableau};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum MixedKind {
    ZBasis,
    XBasis,
    Canonical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preparation {
    Zeros,
    Pluses,
    Generators(Vec<SignedPauli>),
    Mixed(MixedKind),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instruction {
    Gate(Gate),
    Measure(PauliIndex),
    Discard,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub n: usize,
    pub prep: Preparation,
    pub instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn new(n: usize, prep: Preparation) -> Self {
        Circuit { n, prep, instructions: Vec::new() }
    }

    pub fn from_state(psi: &StabilizerTableau) -> Self {
        Self::new(psi.n(), Preparation::Generators(psi.rows().to_vec()))
    }

    pub fn gate(mut self, g: Gate) -> Self {
        self.instructions.push(Instruction::Gate(g));
        self
    }

    pub fn measure(mut self, m: PauliIndex) -> Self {
        self.instructions.push(Instruction::Measure(m));
        self
    }

    pub fn measure_all(mut self, ms: &[PauliIndex]) -> Self {
        self.instructions.extend(ms.iter().map(|m| Instruction::Measure(*m)));
        self
    }

    pub fn measurement_count(&self) -> usize {
        self.instructions.iter().filter(|i| matches!(i, Instruction::Measure(_))).count()
    }

    /// Pure components of the preparation with their weights.
    pub fn components(&self) -> Result<Vec<(StabilizerTableau, f64)>> {
        let n = self.n;
        let basis = |letter| -> Result<Vec<StabilizerTableau>> {
            (0..1u32 << n)
                .map(|b| {
                    let gens: Vec<_> = (0..n)
                        .map(|q| SignedPauli { index: PauliIndex::single(n, q, letter), negative: (b >> q) & 1 == 1 })
                        .collect();
                    StabilizerTableau::new(n, &gens)
                })
                .collect()
        };
        let states = match &self.prep {
            Preparation::Zeros => vec![StabilizerTableau::zeros(n)],
            Preparation::Pluses => vec![StabilizerTableau::pluses(n)],
            Preparation::Generators(g) => vec![StabilizerTableau::new(n, g)?],
            Preparation::Mixed(MixedKind::ZBasis) => basis(crate::pauli::Pauli::Z)?,
            Preparation::Mixed(MixedKind::XBasis) => basis(crate::pauli::Pauli::X)?,
            Preparation::Mixed(MixedKind::Canonical) => enumerate_pure_states(n)?,
        };
        let w = 1.0 / states.len() as f64;
        Ok(states.into_iter().map(|s| (s, w)).collect())
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Error::InvalidGenerators(msg);
        for ins in &self.instructions {
            match ins {
                Instruction::Gate(g) if g.max_qubit() >= self.n => return Err(bad(format!("{g} out of range"))),
                Instruction::Gate(Gate::Cnot(c, t)) if c == t => return Err(bad("CNOT on one qubit".into())),
                Instruction::Measure(m) if m.n() != self.n => {
                    return Err(Error::SizeMismatch { left: self.n, right: m.n() })
                }
                Instruction::Measure(m) if m.is_identity() => return Err(Error::IdentityMeasurement),
                _ => {}
            }
        }
        Ok(())
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QUBITS {}", self.n)?;
        match &self.prep {
            Preparation::Zeros => writeln!(f, "PREP Z")?,
            Preparation::Pluses => writeln!(f, "PREP X")?,
            Preparation::Generators(g) => {
                write!(f, "PREP")?;
                for s in g {
                    write!(f, " {s}")?;
                }
                writeln!(f)?;
            }
            Preparation::Mixed(k) => {
                let name = match k {
                    MixedKind::ZBasis => "Z",
                    MixedKind::XBasis => "X",
                    MixedKind::Canonical => "CANONICAL",
                };
                writeln!(f, "PREP MIXED {name}")?;
            }
        }
        for ins in &self.instructions {
            match ins {
                Instruction::Gate(g) => writeln!(f, "GATE {g}")?,
                Instruction::Measure(m) => writeln!(f, "MEASURE {m}")?,
                Instruction::Discard => writeln!(f, "DISCARD")?,
            }
        }
        Ok(())
    }
}

enum Raw {
    Prep(Preparation),
    Ins(Instruction),
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut declared: Option<usize> = None;
    let mut inferred: Option<usize> = None;
    let mut max_target = 0usize;
    let mut lines: Vec<(usize, Raw)> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
        let keyword = tokens[0].to_ascii_uppercase();
        let args = &tokens[1..];
        let mut note_pauli = |p: &PauliIndex| {
            inferred.get_or_insert(p.n());
        };
        let qubit = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad qubit index {s:?}")));
        let item = match keyword.as_str() {
            "QUBITS" => {
                if !lines.is_empty() || declared.is_some() {
                    return Err(err("QUBITS must come first".into()));
                }
                let [n] = args else { return Err(err("usage: QUBITS n".into())) };
                let n = n.parse::<usize>().map_err(|_| err(format!("bad qubit count {n:?}")))?;
                if n == 0 || n > crate::pauli::MAX_QUBITS {
                    return Err(err(format!("qubit count {n} out of range")));
                }
                declared = Some(n);
                continue;
            }
            "PREP" => {
                let prep = match args.iter().map(|a| a.to_ascii_uppercase()).collect::<Vec<_>>().as_slice() {
                    [] => return Err(err("PREP needs an argument".into())),
                    [z] if z == "Z" => Preparation::Zeros,
                    [x] if x == "X" => Preparation::Pluses,
                    [m, kind] if m == "MIXED" => Preparation::Mixed(match kind.as_str() {
                        "Z" => MixedKind::ZBasis,
                        "X" => MixedKind::XBasis,
                        "CANONICAL" => MixedKind::Canonical,
                        other => return Err(err(format!("unknown mixed preparation {other:?}"))),
                    }),
                    [m] if m == "MIXED" => Preparation::Mixed(MixedKind::Canonical),
                    _ => {
                        let gens = args
                            .iter()
                            .map(|a| SignedPauli::parse(a).map_err(|e| err(e.to_string())))
                            .collect::<Result<Vec<_>>>()?;
                        note_pauli(&gens[0].index);
                        Preparation::Generators(gens)
                    }
                };
                Raw::Prep(prep)
            }
            "GATE" => {
                let name = args.first().map(|a| a.to_ascii_uppercase()).unwrap_or_default();
                let gate = match (name.as_str(), &args[1.min(args.len())..]) {
                    ("H", [q]) => Gate::H(qubit(q)?),
                    ("S", [q]) => Gate::S(qubit(q)?),
                    ("CNOT" | "CX", [c, t]) => {
                        let (c, t) = (qubit(c)?, qubit(t)?);
                        if c == t {
                            return Err(err("CNOT control and target coincide".into()));
                        }
                        Gate::Cnot(c, t)
                    }
                    _ => return Err(err(format!("unknown gate {content:?}"))),
                };
                max_target = max_target.max(gate.max_qubit() + 1);
                Raw::Ins(Instruction::Gate(gate))
            }
            "MEASURE" => {
                let [s] = args else { return Err(err("usage: MEASURE <pauli>".into())) };
                let m = PauliIndex::parse(s).map_err(|e| err(e.to_string()))?;
                if m.is_identity() {
                    return Err(err("cannot measure the identity".into()));
                }
                note_pauli(&m);
                Raw::Ins(Instruction::Measure(m))
            }
            "DISCARD" => {
                if !args.is_empty() {
                    return Err(err("DISCARD takes no arguments".into()));
                }
                Raw::Ins(Instruction::Discard)
            }
            other => return Err(err(format!("unknown instruction {other:?}"))),
        };
        lines.push((line_no, item));
    }

    let n = declared.or(inferred).or((max_target > 0).then_some(max_target)).ok_or(Error::Parse {
        line: 1,
        msg: "cannot infer the qubit count; add a QUBITS line".into(),
    })?;

    let mut iter = lines.into_iter();
    let prep = match iter.next() {
        Some((_, Raw::Prep(p))) => p,
        Some((line, _)) => return Err(Error::Parse { line, msg: "the circuit must start with PREP".into() }),
        None => return Err(Error::Parse { line: 1, msg: "empty circuit".into() }),
    };
    let mut circuit = Circuit::new(n, prep);
    let mut discarded = false;
    for (line, item) in iter {
        let err = |msg: String| Error::Parse { line, msg };
        if discarded {
            return Err(err("nothing may follow DISCARD".into()));
        }
        match item {
            Raw::Prep(_) => return Err(err("only one PREP is allowed".into())),
            Raw::Ins(ins) => {
                match &ins {
                    Instruction::Gate(g) if g.max_qubit() >= n => {
                        return Err(err(format!("gate {g} out of range for {n} qubits")))
                    }
                    Instruction::Measure(m) if m.n() != n => {
                        return Err(err(format!("{m} has length {} but the circuit has {n} qubits", m.n())))
                    }
                    Instruction::Discard => discarded = true,
                    _ => {}
                }
                circuit.instructions.push(ins);
            }
        }
    }
    if let Preparation::Generators(g) = &circuit.prep {
        StabilizerTableau::new(n, g).map_err(|e| Error::Parse { line: 1, msg: format!("PREP: {e}") })?;
    }
    if matches!(circuit.prep, Preparation::Mixed(MixedKind::Canonical)) && n > 3 {
        return Err(Error::Parse { line: 1, msg: "PREP MIXED CANONICAL supports at most 3 qubits".into() });
    }
    circuit.validate()?;
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infers_qubit_count() {
        let c = parse_circuit("PREP Z\nMEASURE ZI\n").unwrap();
        assert_eq!(c.n, 2);
        assert_eq!(c.prep, Preparation::Zeros);
        let c = parse_circuit("PREP X\nGATE CNOT 0 2").unwrap();
        assert_eq!(c.n, 3);
    }

    #[test]
    fn needs_prep_first() {
        assert!(matches!(parse_circuit("MEASURE ZI"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_circuit("PREP Z\nPREP X\nMEASURE Z"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn line_numbered_diagnostics() {
        let e = parse_circuit("# header\nPREP Z\nMEASURE ZQ\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_circuit("QUBITS 2\nPREP Z\nGATE H 5\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_circuit("PREP Z\nMEASURE ZZ\nMEASURE Z\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_circuit("PREP Z\nGATE T 0\nMEASURE Z\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn square_context() {
        let c = parse_circuit("PREP +ZI +IZ\nMEASURE XX\nMEASURE ZZ\nMEASURE YY # last column\nDISCARD").unwrap();
        assert_eq!(c.measurement_count(), 3);
        assert_eq!(c.instructions.last(), Some(&Instruction::Discard));
        assert!(parse_circuit("PREP Z\nDISCARD\nMEASURE Z").is_err());
    }

    #[test]
    fn display_round_trips() {
        let text = "QUBITS 2\nPREP MIXED CANONICAL\nGATE S 1\nGATE CNOT 1 0\nMEASURE YX\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(c.to_string(), text);
        assert_eq!(parse_circuit(&c.to_string()).unwrap(), c);
        assert_eq!(c.components().unwrap().len(), 60);
    }
}

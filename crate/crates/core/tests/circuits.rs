use epistab::backend::{run_circuit, BackendKind, Compiled};
use epistab::circuit::parse_circuit;
use epistab::experiments::report::within_binomial;
use epistab::Error;

#[test]
fn qubit_count_comes_from_pauli_strings() {
    let c = parse_circuit("PREP Z\nMEASURE ZI").unwrap();
    assert_eq!(c.n, 2);
    assert_eq!(c.measurement_count(), 1);
}

#[test]
fn measurement_before_preparation_is_rejected() {
    assert!(matches!(parse_circuit("MEASURE ZI"), Err(Error::Parse { line: 1, .. })));
    assert!(matches!(parse_circuit("PREP Z\nGATE H 5\nMEASURE ZI"), Err(Error::Parse { line: 2, .. })));
    assert!(matches!(parse_circuit("PREP Z\nMEASURE ZI\nMEASURE ZQ"), Err(Error::Parse { line: 3, .. })));
}

#[test]
fn single_measurement_cases_on_every_backend() {
    let shots = 10_000;
    for kind in BackendKind::ALL {
        let z = run_circuit(&parse_circuit("PREP Z\nMEASURE ZI").unwrap(), kind, shots, 3).unwrap();
        assert!(z.iter().all(|o| o == &[false]), "{kind}");

        let yy = run_circuit(&parse_circuit("PREP Z\nMEASURE YY\nMEASURE YY").unwrap(), kind, shots, 3).unwrap();
        assert!(yy.iter().all(|o| o[0] == o[1]), "{kind}");

        let x = run_circuit(&parse_circuit("PREP Z\nMEASURE XI").unwrap(), kind, shots, 3).unwrap();
        let ones = x.iter().filter(|o| o[0]).count() as u64;
        assert!(within_binomial(ones, shots, 0.5, 5.0), "{kind}: {ones}");
    }
}

#[test]
fn runs_are_reproducible() {
    let c = parse_circuit("PREP X\nGATE CNOT 0 1\nMEASURE ZZ\nMEASURE XI\nGATE S 1\nMEASURE IY\nMEASURE ZI").unwrap();
    let compiled = Compiled::new(&c).unwrap();
    for kind in BackendKind::ALL {
        let a = compiled.run(kind, 500, 11).unwrap();
        assert_eq!(a, compiled.run(kind, 500, 11).unwrap());
        assert_ne!(a, compiled.run(kind, 500, 12).unwrap());
    }
}

#[test]
fn mixed_preparations_are_maximally_mixed() {
    for prep in ["Z", "X", "CANONICAL"] {
        let c = parse_circuit(&format!("QUBITS 2\nPREP MIXED {prep}\nMEASURE ZZ\nMEASURE XX")).unwrap();
        let exact = Compiled::new(&c).unwrap().exact_distribution().unwrap();
        assert_eq!(exact.len(), 4, "{prep}");
        assert!(exact.values().all(|p| (p - 0.25).abs() < 1e-12), "{prep}");
    }
}

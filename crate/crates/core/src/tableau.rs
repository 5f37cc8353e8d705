//! Gottesman-Knill stabilizer simulation on signed generator tableaus.
//!
//! Rows are always kept in the signed reduced echelon form produced by
//! [`crate::pauli`], so two tableaus describe the same state exactly when
//! they compare equal.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::clifford::CliffordOp;
use crate::error::{Error, Result};
use crate::pauli::{pivot, signed_echelon, AbelianSubgroup, PauliIndex, SignedPauli};
use crate::phase::{signed_group_elements, validate_generators};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Plus,
    Minus,
    Absent,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StabilizerTableau {
    n: usize,
    rows: Vec<SignedPauli>,
}

impl StabilizerTableau {
    pub fn new(n: usize, generators: &[SignedPauli]) -> Result<Self> {
        validate_generators(n, generators)?;
        Ok(StabilizerTableau { n, rows: signed_echelon(n, generators)? })
    }

    pub fn parse(generators: &[&str]) -> Result<Self> {
        let gens = generators.iter().map(|s| SignedPauli::parse(s)).collect::<Result<Vec<_>>>()?;
        let n = gens.first().map(|g| g.index.n()).unwrap_or(0);
        Self::new(n, &gens)
    }

    /// `|0...0>`.
    pub fn zeros(n: usize) -> Self {
        Self::product(n, crate::pauli::Pauli::Z)
    }

    /// `|+...+>`.
    pub fn pluses(n: usize) -> Self {
        Self::product(n, crate::pauli::Pauli::X)
    }

    fn product(n: usize, letter: crate::pauli::Pauli) -> Self {
        let gens: Vec<_> = (0..n).map(|q| SignedPauli::plus(PauliIndex::single(n, q, letter))).collect();
        Self::new(n, &gens).expect("product states are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[SignedPauli] {
        &self.rows
    }

    pub fn unsigned_group(&self) -> AbelianSubgroup {
        AbelianSubgroup::new(self.n, &self.rows.iter().map(|r| r.index).collect::<Vec<_>>())
            .expect("tableau rows are independent and commuting")
    }

    pub fn signed_elements(&self) -> Vec<SignedPauli> {
        signed_group_elements(&self.rows).expect("tableau rows commute")
    }

    pub fn membership(&self, m: PauliIndex) -> Membership {
        let mut v = m.code();
        let mut acc = SignedPauli::plus(PauliIndex::identity(self.n));
        for r in &self.rows {
            let c = r.index.code();
            if (v >> pivot(c)) & 1 == 1 {
                v ^= c;
                acc = acc.mul(r).expect("rows commute");
            }
        }
        match (v, acc.negative) {
            (0, false) => Membership::Plus,
            (0, true) => Membership::Minus,
            _ => Membership::Absent,
        }
    }

    pub fn expectation(&self, m: PauliIndex) -> i8 {
        match self.membership(m) {
            Membership::Plus => 1,
            Membership::Minus => -1,
            Membership::Absent => 0,
        }
    }

    /// Probability of outcome `k` when measuring `m`.
    pub fn outcome_probability(&self, m: PauliIndex, k: bool) -> f64 {
        match (self.membership(m), k) {
            (Membership::Absent, _) => 0.5,
            (Membership::Plus, false) | (Membership::Minus, true) => 1.0,
            _ => 0.0,
        }
    }

    /// Post-measurement state for outcome `k`, or `None` if that outcome has
    /// probability zero.
    pub fn project(&self, m: PauliIndex, k: bool) -> Result<Option<Self>> {
        if m.is_identity() {
            return Err(Error::IdentityMeasurement);
        }
        match self.membership(m) {
            Membership::Plus => return Ok((!k).then(|| self.clone())),
            Membership::Minus => return Ok(k.then(|| self.clone())),
            Membership::Absent => {}
        }
        let anti: Vec<usize> = (0..self.n).filter(|&i| self.rows[i].index.anticommutes_with(&m)).collect();
        let p = anti[0];
        let mut rows = self.rows.clone();
        for &i in &anti[1..] {
            rows[i] = rows[i].mul(&self.rows[p])?;
        }
        rows[p] = SignedPauli { index: m, negative: k };
        Ok(Some(StabilizerTableau { n: self.n, rows: signed_echelon(self.n, &rows)? }))
    }

    pub fn measure<R: Rng + ?Sized>(&self, m: PauliIndex, rng: &mut R) -> Result<(bool, Self)> {
        if m.is_identity() {
            return Err(Error::IdentityMeasurement);
        }
        let k = match self.membership(m) {
            Membership::Plus => return Ok((false, self.clone())),
            Membership::Minus => return Ok((true, self.clone())),
            Membership::Absent => rng.gen::<bool>(),
        };
        Ok((k, self.project(m, k)?.expect("random outcomes have probability 1/2")))
    }

    pub fn apply_clifford(&self, c: &CliffordOp) -> Self {
        let rows: Vec<_> = self.rows.iter().map(|r| c.conjugate_signed(*r)).collect();
        StabilizerTableau { n: self.n, rows: signed_echelon(self.n, &rows).expect("Cliffords preserve validity") }
    }
}

impl fmt::Display for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ">")
    }
}

/// True iff some operator stabilizes one state while its negative stabilizes
/// the other.
pub fn are_orthogonal(a: &StabilizerTableau, b: &StabilizerTableau) -> bool {
    a.signed_elements().iter().any(|e| {
        let want = if e.negative { Membership::Plus } else { Membership::Minus };
        !e.index.is_identity() && b.membership(e.index) == want
    })
}

/// Every maximal abelian subgroup of the projective Pauli group on `n` qubits.
pub fn maximal_abelian_subgroups(n: usize) -> Vec<AbelianSubgroup> {
    let mut level = BTreeSet::from([AbelianSubgroup::trivial(n)]);
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for g in &level {
            for code in 1..(1u64 << (2 * n)) {
                let p = PauliIndex::from_code(n, code);
                if g.commutes_with_all(p) && !g.contains(p) {
                    next.insert(g.extend(p).expect("commuting and independent"));
                }
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

/// All pure stabilizer states on `n <= 3` qubits in canonical form, sorted.
pub fn enumerate_pure_states(n: usize) -> Result<Vec<StabilizerTableau>> {
    if n == 0 || n > 3 {
        return Err(Error::TooManyQubits { n, max: 3 });
    }
    let mut out = BTreeSet::new();
    for g in maximal_abelian_subgroups(n) {
        for signs in 0u32..(1 << n) {
            let gens: Vec<_> = g
                .generators()
                .iter()
                .enumerate()
                .map(|(i, p)| SignedPauli { index: *p, negative: (signs >> i) & 1 == 1 })
                .collect();
            out.insert(StabilizerTableau::new(n, &gens)?);
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Gate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PauliIndex {
        PauliIndex::parse(s).unwrap()
    }

    fn t(gens: &[&str]) -> StabilizerTableau {
        StabilizerTableau::parse(gens).unwrap()
    }

    #[test]
    fn preparation_examples() {
        assert_eq!(StabilizerTableau::zeros(2), t(&["+ZI", "+IZ"]));
        assert_eq!(StabilizerTableau::pluses(2), t(&["+XI", "+IX"]));
        assert!(StabilizerTableau::parse(&["+ZI", "-ZI"]).is_err());
        assert!(StabilizerTableau::parse(&["+ZI", "+XI"]).is_err());
        assert!(StabilizerTableau::parse(&["+ZZ", "-ZI", "-IZ"]).is_err());
    }

    #[test]
    fn membership_examples() {
        let zz = StabilizerTableau::zeros(2);
        assert_eq!(zz.membership(p("ZZ")), Membership::Plus);
        assert_eq!(zz.membership(p("XX")), Membership::Absent);
        let b11 = t(&["-XX", "+ZZ"]);
        assert_eq!(b11.membership(p("XX")), Membership::Minus);
        assert_eq!(b11.membership(p("YY")), Membership::Plus);
        assert_eq!(zz.expectation(p("ZI")), 1);
        assert_eq!(zz.expectation(p("YY")), 0);
        assert_eq!(b11.expectation(p("XX")), -1);
    }

    #[test]
    fn clifford_examples() {
        let h = CliffordOp::gate(1, Gate::H(0)).unwrap();
        assert_eq!(StabilizerTableau::zeros(1).apply_clifford(&h), t(&["+X"]));
        let c = CliffordOp::gate(2, Gate::Cnot(0, 1)).unwrap();
        assert_eq!(StabilizerTableau::zeros(2).apply_clifford(&c), t(&["+ZI", "+ZZ"]));
    }

    #[test]
    fn yy_measurement_groups() {
        for k in [false, true] {
            let post = StabilizerTableau::zeros(2).project(p("YY"), k).unwrap().unwrap();
            assert_eq!(post.membership(p("ZZ")), Membership::Plus);
            let (yy, xx) = if k { (Membership::Minus, Membership::Plus) } else { (Membership::Plus, Membership::Minus) };
            assert_eq!(post.membership(p("YY")), yy);
            assert_eq!(post.membership(p("XX")), xx);

            let post = StabilizerTableau::pluses(2).project(p("YY"), k).unwrap().unwrap();
            assert_eq!(post.membership(p("XX")), Membership::Plus);
            assert_eq!(post.membership(p("YY")), yy);
            assert_eq!(post.membership(p("ZZ")), xx);
        }
    }

    #[test]
    fn orthogonality_examples() {
        let a = StabilizerTableau::zeros(2);
        assert!(!are_orthogonal(&a, &a));
        let b = StabilizerTableau::pluses(2);
        let a0 = a.project(p("YY"), false).unwrap().unwrap();
        let b0 = b.project(p("YY"), false).unwrap().unwrap();
        assert!(are_orthogonal(&a0, &b0));
        let a1 = a.project(p("YY"), true).unwrap().unwrap();
        let b1 = b.project(p("YY"), true).unwrap().unwrap();
        assert!(!are_orthogonal(&a1, &b1));
        assert_eq!(a1, b1);
    }

    #[test]
    fn forced_measurements_do_not_consume_randomness() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = StabilizerTableau::zeros(2);
        let (k, post) = s.measure(p("ZI"), &mut rng).unwrap();
        assert!(!k);
        assert_eq!(post, s);
        assert!(s.measure(p("II"), &mut rng).is_err());
    }

    #[test]
    fn state_counts() {
        assert_eq!(enumerate_pure_states(1).unwrap().len(), 6);
        assert_eq!(enumerate_pure_states(2).unwrap().len(), 60);
        assert!(enumerate_pure_states(4).is_err());
    }
}

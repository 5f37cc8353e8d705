//! Clifford unitaries as signed images of the single-qubit `X` and `Z`
//! generators.
//!
//! Conjugating `P_a` multiplies out the images of its `X` and `Z` factors
//! while tracking the power of `i`, which yields both the index map `c(a)`
//! and the sign bit `γ_c(a)` in `C P_a C† = (-1)^{γ_c(a)} P_{c(a)}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::{Eliminator, Pauli, PauliIndex, SignedPauli};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    Cnot(usize, usize),
}

impl Gate {
    pub fn max_qubit(&self) -> usize {
        match *self {
            Gate::H(q) | Gate::S(q) => q,
            Gate::Cnot(c, t) => c.max(t),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) => write!(f, "H {q}"),
            Gate::S(q) => write!(f, "S {q}"),
            Gate::Cnot(c, t) => write!(f, "CNOT {c} {t}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliffordOp {
    n: usize,
    x_images: Vec<SignedPauli>,
    z_images: Vec<SignedPauli>,
}

impl CliffordOp {
    pub fn identity(n: usize) -> Self {
        CliffordOp {
            n,
            x_images: (0..n).map(|q| SignedPauli::plus(PauliIndex::single(n, q, Pauli::X))).collect(),
            z_images: (0..n).map(|q| SignedPauli::plus(PauliIndex::single(n, q, Pauli::Z))).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Accepts arbitrary images after checking that they are Hermitian Paulis
    /// obeying the canonical commutation relations.
    pub fn from_images(n: usize, x_images: Vec<SignedPauli>, z_images: Vec<SignedPauli>) -> Result<Self> {
        if x_images.len() != n || z_images.len() != n {
            return Err(Error::InvalidClifford(format!("need {n} X images and {n} Z images")));
        }
        let all: Vec<_> = x_images.iter().chain(&z_images).collect();
        if let Some(bad) = all.iter().find(|p| p.index.n() != n) {
            return Err(Error::SizeMismatch { left: n, right: bad.index.n() });
        }
        for i in 0..n {
            for j in 0..n {
                let xz = x_images[i].index.anticommutes_with(&z_images[j].index);
                if xz != (i == j) {
                    return Err(Error::InvalidClifford(format!("X{i} and Z{j} images")));
                }
                if x_images[i].index.anticommutes_with(&x_images[j].index)
                    || z_images[i].index.anticommutes_with(&z_images[j].index)
                {
                    return Err(Error::InvalidClifford(format!("images {i} and {j} anticommute")));
                }
            }
        }
        Ok(CliffordOp { n, x_images, z_images })
    }

    pub fn gate(n: usize, gate: Gate) -> Result<Self> {
        if gate.max_qubit() >= n {
            return Err(Error::InvalidClifford(format!("{gate} out of range for {n} qubits")));
        }
        let mut op = Self::identity(n);
        let single = |q, p| SignedPauli::plus(PauliIndex::single(n, q, p));
        match gate {
            Gate::H(q) => {
                op.x_images[q] = single(q, Pauli::Z);
                op.z_images[q] = single(q, Pauli::X);
            }
            Gate::S(q) => op.x_images[q] = single(q, Pauli::Y),
            Gate::Cnot(c, t) => {
                if c == t {
                    return Err(Error::InvalidClifford("CNOT needs distinct qubits".into()));
                }
                let xc = PauliIndex::single(n, c, Pauli::X).compose(&PauliIndex::single(n, t, Pauli::X));
                let zt = PauliIndex::single(n, c, Pauli::Z).compose(&PauliIndex::single(n, t, Pauli::Z));
                op.x_images[c] = SignedPauli::plus(xc);
                op.z_images[t] = SignedPauli::plus(zt);
            }
        }
        Ok(op)
    }

    /// The circuit applying `gates` left to right.
    pub fn from_gates(n: usize, gates: &[Gate]) -> Result<Self> {
        gates.iter().try_fold(Self::identity(n), |acc, g| Ok(acc.then(&Self::gate(n, *g)?)))
    }

    /// Returns `(c(a), γ_c(a))` as a signed Pauli.
    pub fn conjugate(&self, a: PauliIndex) -> SignedPauli {
        debug_assert_eq!(a.n(), self.n);
        let mut t = (a.x() & a.z()).count_ones() % 4;
        let mut acc = PauliIndex::identity(self.n);
        let factors = (0..self.n)
            .filter(|q| (a.x() >> q) & 1 == 1)
            .map(|q| &self.x_images[q])
            .chain((0..self.n).filter(|q| (a.z() >> q) & 1 == 1).map(|q| &self.z_images[q]));
        for f in factors {
            t += 2 * f.negative as u32 + acc.product_phase(&f.index) as u32;
            acc = acc.compose(&f.index);
        }
        debug_assert!(t % 2 == 0, "conjugate of a Hermitian Pauli must be Hermitian");
        SignedPauli { index: acc, negative: t % 4 == 2 }
    }

    pub fn conjugate_signed(&self, p: SignedPauli) -> SignedPauli {
        let c = self.conjugate(p.index);
        SignedPauli { index: c.index, negative: c.negative ^ p.negative }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &CliffordOp) -> CliffordOp {
        assert_eq!(self.n, next.n);
        CliffordOp {
            n: self.n,
            x_images: self.x_images.iter().map(|p| next.conjugate_signed(*p)).collect(),
            z_images: self.z_images.iter().map(|p| next.conjugate_signed(*p)).collect(),
        }
    }

    /// Index `a` with `c(a) = p`.
    pub fn preimage(&self, p: PauliIndex) -> PauliIndex {
        let mut elim = Eliminator::new();
        for q in 0..self.n {
            elim.insert(self.z_images[q].index.code(), 1 << q);
            elim.insert(self.x_images[q].index.code(), 1 << (q + self.n));
        }
        let code = elim.decompose(p.code()).expect("Clifford index maps are bijective");
        PauliIndex::from_code(self.n, code)
    }

    pub fn inverse(&self) -> CliffordOp {
        let image = |q, letter| {
            let a = self.preimage(PauliIndex::single(self.n, q, letter));
            SignedPauli { index: a, negative: self.conjugate(a).negative }
        };
        CliffordOp {
            n: self.n,
            x_images: (0..self.n).map(|q| image(q, Pauli::X)).collect(),
            z_images: (0..self.n).map(|q| image(q, Pauli::Z)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliIndex {
        PauliIndex::parse(s).unwrap()
    }

    fn sp(s: &str) -> SignedPauli {
        SignedPauli::parse(s).unwrap()
    }

    #[test]
    fn single_qubit_tables() {
        let h = CliffordOp::gate(1, Gate::H(0)).unwrap();
        assert_eq!(h.conjugate(p("X")), sp("+Z"));
        assert_eq!(h.conjugate(p("Z")), sp("+X"));
        assert_eq!(h.conjugate(p("Y")), sp("-Y"));
        let s = CliffordOp::gate(1, Gate::S(0)).unwrap();
        assert_eq!(s.conjugate(p("X")), sp("+Y"));
        assert_eq!(s.conjugate(p("Y")), sp("-X"));
        assert_eq!(s.conjugate(p("Z")), sp("+Z"));
    }

    #[test]
    fn cnot_table() {
        let c = CliffordOp::gate(2, Gate::Cnot(0, 1)).unwrap();
        assert_eq!(c.conjugate(p("XI")), sp("+XX"));
        assert_eq!(c.conjugate(p("IZ")), sp("+ZZ"));
        assert_eq!(c.conjugate(p("IX")), sp("+IX"));
        assert_eq!(c.conjugate(p("ZI")), sp("+ZI"));
        assert_eq!(c.conjugate(p("YY")), sp("-XZ"));
    }

    #[test]
    fn inverse_round_trips() {
        let gates = [Gate::H(0), Gate::S(1), Gate::Cnot(1, 0), Gate::S(0), Gate::H(1)];
        let c = CliffordOp::from_gates(2, &gates).unwrap();
        let inv = c.inverse();
        assert_eq!(c.then(&inv), CliffordOp::identity(2));
        assert_eq!(inv.then(&c), CliffordOp::identity(2));
    }

    #[test]
    fn s_has_order_four() {
        let s = CliffordOp::gate(1, Gate::S(0)).unwrap();
        let s2 = s.then(&s);
        assert_ne!(s2, CliffordOp::identity(1));
        assert_eq!(s2.then(&s2), CliffordOp::identity(1));
    }

    #[test]
    fn image_validation() {
        assert!(CliffordOp::from_images(1, vec![sp("+Z")], vec![sp("+X")]).is_ok());
        assert!(CliffordOp::from_images(1, vec![sp("+Z")], vec![sp("-Z")]).is_err());
        assert!(CliffordOp::gate(2, Gate::Cnot(1, 1)).is_err());
        assert!(CliffordOp::gate(2, Gate::H(2)).is_err());
    }
}

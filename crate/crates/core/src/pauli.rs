//! Projective Pauli group in binary symplectic form.
//!
//! A point of the projective Pauli group on `n` qubits is stored as two
//! `n`-bit masks: qubit `i` carries `X` iff bit `i` of `x` is set, `Z` iff bit
//! `i` of `z` is set, and `Y` iff both are. Phases are never stored on a
//! [`PauliIndex`]; products of Hermitian Paulis pick up a power of `i` which is
//! reported separately by [`full_product_phase`], using the single-qubit table
//! `XY = iZ`, `YZ = iX`, `ZX = iY`.
//!
//! Every index also has a dense integer encoding, [`PauliIndex::code`], equal
//! to the `2n`-bit word `x << n | z`. That word addresses phase functions and
//! fixes the total order used for every canonical form in the crate.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest qubit count whose `2n`-bit code fits in a `u64`.
pub const MAX_QUBITS: usize = 32;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | 'i' | '_' => Some(Pauli::I),
            'X' | 'x' => Some(Pauli::X),
            'Y' | 'y' => Some(Pauli::Y),
            'Z' | 'z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A point of the projective Pauli group.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliIndex {
    n: u8,
    x: u64,
    z: u64,
}

#[inline]
fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliIndex {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits are supported");
        PauliIndex { n: n as u8, x: 0, z: 0 }
    }

    /// Builds an index from raw masks. Bits at or above `n` must be clear.
    pub fn from_bits(n: usize, x: u64, z: u64) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits are supported");
        let m = low_mask(n);
        assert!(x & !m == 0 && z & !m == 0, "mask bits beyond qubit count");
        PauliIndex { n: n as u8, x, z }
    }

    pub fn from_code(n: usize, code: u64) -> Self {
        Self::from_bits(n, code >> n, code & low_mask(n))
    }

    pub fn single(n: usize, qubit: usize, p: Pauli) -> Self {
        assert!(qubit < n, "qubit {qubit} out of range for {n} qubits");
        let (x, z) = p.bits();
        Self::from_bits(n, (x as u64) << qubit, (z as u64) << qubit)
    }

    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut x = 0;
        let mut z = 0;
        for (i, p) in paulis.iter().enumerate() {
            let (px, pz) = p.bits();
            x |= (px as u64) << i;
            z |= (pz as u64) << i;
        }
        Self::from_bits(paulis.len(), x, z)
    }

    /// Parses a string such as `"XIZ"`; character `i` is qubit `i`.
    pub fn parse(s: &str) -> Result<Self> {
        let paulis = s
            .trim()
            .chars()
            .map(Pauli::from_char)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::BadPauli(s.to_string()))?;
        if paulis.is_empty() || paulis.len() > MAX_QUBITS {
            return Err(Error::BadPauli(s.to_string()));
        }
        Ok(Self::from_paulis(&paulis))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn x(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn z(&self) -> u64 {
        self.z
    }

    #[inline]
    pub fn code(&self) -> u64 {
        (self.x << self.n) | self.z
    }

    /// Code of the index with its `x` and `z` halves swapped. The symplectic
    /// form of `a` and `b` is the parity of `a.code() & b.swapped_code()`.
    #[inline]
    pub(crate) fn swapped_code(&self) -> u64 {
        (self.z << self.n) | self.x
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn pauli(&self, qubit: usize) -> Pauli {
        Pauli::from_bits((self.x >> qubit) & 1 == 1, (self.z >> qubit) & 1 == 1)
    }

    pub fn paulis(&self) -> Vec<Pauli> {
        (0..self.n()).map(|q| self.pauli(q)).collect()
    }

    #[inline]
    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n(), right: other.n() });
        }
        Ok(())
    }

    #[inline]
    pub fn anticommutes_with(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() & 1 == 1
    }

    #[inline]
    pub fn commutes_with(&self, other: &Self) -> bool {
        !self.anticommutes_with(other)
    }

    /// Projective product: the XOR of the symplectic vectors.
    #[inline]
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        PauliIndex { n: self.n, x: self.x ^ other.x, z: self.z ^ other.z }
    }

    /// Exponent `t` such that `P_self P_other = i^t P_{self+other}`.
    #[inline]
    pub fn product_phase(&self, other: &Self) -> u8 {
        debug_assert_eq!(self.n, other.n);
        let (ax, az, bx, bz) = (self.x, self.z, other.x, other.z);
        let (xa, ya, za) = (ax & !az, ax & az, !ax & az);
        let (xb, yb, zb) = (bx & !bz, bx & bz, !bx & bz);
        let cyclic = (xa & yb) | (ya & zb) | (za & xb);
        let anti = (ya & xb) | (za & yb) | (xa & zb);
        ((cyclic.count_ones() + 3 * anti.count_ones()) % 4) as u8
    }
}

impl Ord for PauliIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.code()).cmp(&(other.n, other.code()))
    }
}

impl PartialOrd for PauliIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n() {
            write!(f, "{}", self.pauli(q).as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// A stabilizer operator `(-1)^negative P`. Minus the identity is rejected.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPauli {
    pub index: PauliIndex,
    pub negative: bool,
}

impl SignedPauli {
    pub fn new(index: PauliIndex, negative: bool) -> Result<Self> {
        if negative && index.is_identity() {
            return Err(Error::InvalidGenerators("-I stabilizes no state".into()));
        }
        Ok(SignedPauli { index, negative })
    }

    pub fn plus(index: PauliIndex) -> Self {
        SignedPauli { index, negative: false }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        Self::new(PauliIndex::parse(body)?, negative)
    }

    /// Product of two commuting stabilizer operators.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let b = beta(self.index, other.index)?;
        Self::new(self.index.compose(&other.index), self.negative ^ other.negative ^ b)
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.negative { '-' } else { '+' }, self.index)
    }
}

pub fn symplectic_inner(a: PauliIndex, b: PauliIndex) -> Result<bool> {
    a.check_same(&b)?;
    Ok(a.anticommutes_with(&b))
}

pub fn compose(a: PauliIndex, b: PauliIndex) -> Result<PauliIndex> {
    a.check_same(&b)?;
    Ok(a.compose(&b))
}

/// Power of `i` picked up by the matrix product of two Hermitian Paulis.
pub fn full_product_phase(a: PauliIndex, b: PauliIndex) -> Result<u8> {
    a.check_same(&b)?;
    Ok(a.product_phase(&b))
}

/// Sign bit of `P_a P_b = (-1)^beta P_{a+b}`; defined for commuting pairs only.
pub fn beta(a: PauliIndex, b: PauliIndex) -> Result<bool> {
    a.check_same(&b)?;
    if a.anticommutes_with(&b) {
        return Err(Error::Anticommuting { a: a.to_string(), b: b.to_string() });
    }
    let t = a.product_phase(&b);
    debug_assert!(t % 2 == 0);
    Ok(t == 2)
}

#[inline]
pub(crate) fn pivot(v: u64) -> u32 {
    debug_assert!(v != 0);
    63 - v.leading_zeros()
}

/// Fully reduced row echelon form of a set of `u64` row vectors, pivots
/// (highest set bit) descending. Zero rows produced by dependence are dropped;
/// the returned flag is false if any row was dependent.
pub(crate) fn reduced_echelon(rows: impl IntoIterator<Item = u64>) -> (Vec<u64>, bool) {
    let mut basis: Vec<u64> = Vec::new();
    let mut independent = true;
    for v in rows {
        let r = reduce_by(v, &basis);
        if r == 0 {
            independent = false;
            continue;
        }
        let p = pivot(r);
        for b in basis.iter_mut() {
            if (*b >> p) & 1 == 1 {
                *b ^= r;
            }
        }
        basis.push(r);
    }
    basis.sort_unstable_by(|a, b| b.cmp(a));
    (basis, independent)
}

#[inline]
fn reduce_by(mut v: u64, reduced_basis: &[u64]) -> u64 {
    for &b in reduced_basis {
        if (v >> pivot(b)) & 1 == 1 {
            v ^= b;
        }
    }
    v
}

/// Basis of the solutions `v` (as `width`-bit words) of `parity(v & row) = 0`
/// for every row.
pub(crate) fn nullspace(rows: &[u64], width: usize) -> Vec<u64> {
    let (rref, _) = reduced_echelon(rows.iter().copied());
    let pivots: u64 = rref.iter().fold(0, |acc, &r| acc | (1u64 << pivot(r)));
    (0..width)
        .filter(|c| (pivots >> c) & 1 == 0)
        .map(|free| {
            let mut v = 1u64 << free;
            for &r in &rref {
                if (r >> free) & 1 == 1 {
                    v |= 1u64 << pivot(r);
                }
            }
            v
        })
        .collect()
}

/// Echelon basis that remembers which inputs each stored row combines, so a
/// vector in the span can be decomposed over the original inputs.
#[derive(Clone, Debug, Default)]
pub(crate) struct Eliminator {
    rows: Vec<(u64, u64)>,
}

impl Eliminator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the residue of `v` and the input combination that was removed.
    pub fn reduce(&self, mut v: u64) -> (u64, u64) {
        let mut combo = 0;
        for &(r, c) in &self.rows {
            if (v >> pivot(r)) & 1 == 1 {
                v ^= r;
                combo ^= c;
            }
        }
        (v, combo)
    }

    /// Adds `v` tagged with input mask `tag`. Returns false if `v` was already
    /// in the span.
    pub fn insert(&mut self, v: u64, tag: u64) -> bool {
        let (r, c) = self.reduce(v);
        if r == 0 {
            return false;
        }
        let p = pivot(r);
        let at = self.rows.partition_point(|&(row, _)| pivot(row) > p);
        self.rows.insert(at, (r, c ^ tag));
        true
    }

    pub fn decompose(&self, v: u64) -> Option<u64> {
        match self.reduce(v) {
            (0, combo) => Some(combo),
            _ => None,
        }
    }
}

/// Reduced row echelon form of commuting signed Paulis, with signs carried
/// through the row operations.
pub(crate) fn signed_echelon(n: usize, rows: &[SignedPauli]) -> Result<Vec<SignedPauli>> {
    let mut basis: Vec<SignedPauli> = Vec::new();
    for row in rows {
        let mut r = *row;
        for b in &basis {
            if (r.index.code() >> pivot(b.index.code())) & 1 == 1 {
                r = r.mul(b)?;
            }
        }
        if r.index.is_identity() {
            if r.negative {
                return Err(Error::InvalidGenerators("generators produce -I".into()));
            }
            return Err(Error::InvalidGenerators(format!("{row} is dependent")));
        }
        let p = pivot(r.index.code());
        for b in basis.iter_mut() {
            if (b.index.code() >> p) & 1 == 1 {
                *b = b.mul(&r)?;
            }
        }
        basis.push(r);
    }
    debug_assert!(basis.iter().all(|b| b.index.n() == n));
    basis.sort_unstable_by(|a, b| b.index.code().cmp(&a.index.code()));
    Ok(basis)
}

/// Abelian subgroup of the projective Pauli group, stored by its unique
/// reduced echelon generating set (pivots descending).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianSubgroup {
    n: usize,
    generators: Vec<PauliIndex>,
}

impl AbelianSubgroup {
    pub fn trivial(n: usize) -> Self {
        AbelianSubgroup { n, generators: Vec::new() }
    }

    /// Validates that the generators commute, are independent and are not
    /// the identity, then canonicalizes them.
    pub fn new(n: usize, generators: &[PauliIndex]) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
        }
        for g in generators {
            if g.n() != n {
                return Err(Error::SizeMismatch { left: n, right: g.n() });
            }
            if g.is_identity() {
                return Err(Error::InvalidGenerators("identity listed as a generator".into()));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if a.anticommutes_with(b) {
                    return Err(Error::InvalidGenerators(format!("{a} and {b} anticommute")));
                }
            }
        }
        let (rref, independent) = reduced_echelon(generators.iter().map(|g| g.code()));
        if !independent {
            return Err(Error::InvalidGenerators("generators are dependent".into()));
        }
        Ok(Self::from_reduced(n, rref))
    }

    fn from_reduced(n: usize, rref: Vec<u64>) -> Self {
        AbelianSubgroup {
            n,
            generators: rref.into_iter().map(|c| PauliIndex::from_code(n, c)).collect(),
        }
    }

    /// Builds from generators known to commute; dependent entries are dropped.
    pub(crate) fn span_of(n: usize, elements: impl IntoIterator<Item = PauliIndex>) -> Self {
        let (rref, _) = reduced_echelon(elements.into_iter().map(|g| g.code()));
        Self::from_reduced(n, rref)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PauliIndex] {
        &self.generators
    }

    /// Mask over generators whose product is `p`, if `p` is in the group.
    pub fn decompose(&self, p: PauliIndex) -> Option<u64> {
        let mut v = p.code();
        let mut mask = 0;
        for (i, g) in self.generators.iter().enumerate() {
            let c = g.code();
            if (v >> pivot(c)) & 1 == 1 {
                v ^= c;
                mask |= 1 << i;
            }
        }
        (v == 0).then_some(mask)
    }

    pub fn contains(&self, p: PauliIndex) -> bool {
        self.decompose(p).is_some()
    }

    /// Smallest-code element of the coset `p + G`.
    pub fn coset_representative(&self, p: PauliIndex) -> PauliIndex {
        let mut v = p.code();
        for g in &self.generators {
            let c = g.code();
            if (v >> pivot(c)) & 1 == 1 {
                v ^= c;
            }
        }
        PauliIndex::from_code(self.n, v)
    }

    pub fn commutes_with_all(&self, p: PauliIndex) -> bool {
        self.generators.iter().all(|g| g.commutes_with(&p))
    }

    /// Product of the generators selected by `mask`.
    pub fn element(&self, mask: u64) -> PauliIndex {
        self.generators
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .fold(PauliIndex::identity(self.n), |acc, (_, g)| acc.compose(g))
    }

    pub fn elements(&self) -> Vec<PauliIndex> {
        group_elements(self)
    }

    /// The group generated by `self` and `p`.
    pub fn extend(&self, p: PauliIndex) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(p);
        Self::new(self.n, &gens)
    }

    /// Kernel of the functional on generator coordinates given by `functional`
    /// (bit `i` is the value on generator `i`). Nonzero functionals give
    /// index-2 subgroups.
    pub fn kernel(&self, functional: u64) -> Self {
        if functional == 0 {
            return self.clone();
        }
        let j = functional.trailing_zeros() as usize;
        let gj = self.generators[j];
        let kept = self.generators.iter().enumerate().filter(|&(i, _)| i != j).map(|(i, g)| {
            if (functional >> i) & 1 == 1 {
                g.compose(&gj)
            } else {
                *g
            }
        });
        Self::span_of(self.n, kept)
    }

    /// Functional whose bit `i` records whether generator `i` anticommutes
    /// with `p`.
    pub fn anticommutation_mask(&self, p: PauliIndex) -> u64 {
        self.generators
            .iter()
            .enumerate()
            .fold(0, |acc, (i, g)| acc | ((g.anticommutes_with(&p) as u64) << i))
    }
}

impl fmt::Display for AbelianSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// All `2^rank` elements, element `m` being the product of the generators in
/// mask `m`.
pub fn group_elements(g: &AbelianSubgroup) -> Vec<PauliIndex> {
    let mut out = Vec::with_capacity(1 << g.rank());
    out.push(PauliIndex::identity(g.n));
    for gen in &g.generators {
        let len = out.len();
        for i in 0..len {
            out.push(out[i].compose(gen));
        }
    }
    out
}

pub fn symplectic_rank(vectors: &[PauliIndex]) -> usize {
    let (rref, _) = reduced_echelon(vectors.iter().map(|v| v.code()));
    rref.len()
}

/// Elements of `g` commuting with `m`.
pub fn centralizing_subgroup(g: &AbelianSubgroup, m: PauliIndex) -> AbelianSubgroup {
    g.kernel(g.anticommutation_mask(m))
}

/// Every subgroup of index 2, one per nonzero functional on the generators.
pub fn index2_subgroups(g: &AbelianSubgroup) -> Vec<AbelianSubgroup> {
    (1u64..(1 << g.rank())).map(|f| g.kernel(f)).collect()
}

/// Basis of the centralizer of `g` in the projective Pauli group.
pub fn centralizer_basis(g: &AbelianSubgroup) -> Vec<PauliIndex> {
    let constraints: Vec<u64> = g.generators.iter().map(|p| p.swapped_code()).collect();
    nullspace(&constraints, 2 * g.n)
        .into_iter()
        .map(|c| PauliIndex::from_code(g.n, c))
        .collect()
}

/// The three ways of completing a rank `n-1` abelian subgroup to a maximal
/// one. Each returned index is the smallest-code member of its coset, and the
/// three are sorted by code.
pub fn maximal_extensions(g: &AbelianSubgroup) -> Result<[PauliIndex; 3]> {
    if g.rank() + 1 != g.n {
        return Err(Error::RankPrecondition { expected: g.n.saturating_sub(1), actual: g.rank() });
    }
    let mut quotient = Eliminator::new();
    let mut reps = Vec::with_capacity(2);
    for c in centralizer_basis(g) {
        let r = g.coset_representative(c);
        if !r.is_identity() && quotient.insert(r.code(), 0) {
            reps.push(r);
            if reps.len() == 2 {
                break;
            }
        }
    }
    debug_assert_eq!(reps.len(), 2, "centralizer quotient must be two-dimensional");
    let mut out = [reps[0], reps[1], reps[0].compose(&reps[1])];
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliIndex {
        PauliIndex::parse(s).unwrap()
    }

    fn group(gens: &[&str]) -> AbelianSubgroup {
        let gens: Vec<_> = gens.iter().map(|s| p(s)).collect();
        AbelianSubgroup::new(gens[0].n(), &gens).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["I", "XIZ", "YYZX", "IIII"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert!(PauliIndex::parse("XQ").is_err());
        assert!(PauliIndex::parse("").is_err());
        assert_eq!(SignedPauli::parse("-XZ").unwrap().to_string(), "-XZ");
        assert!(SignedPauli::parse("-II").is_err());
    }

    #[test]
    fn symplectic_inner_examples() {
        assert!(!symplectic_inner(p("II"), p("YY")).unwrap());
        assert!(symplectic_inner(p("ZI"), p("YY")).unwrap());
        assert!(!symplectic_inner(p("ZZ"), p("YY")).unwrap());
        assert_eq!(
            symplectic_inner(p("ZI"), p("Z")),
            Err(Error::SizeMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn compose_examples() {
        assert!(compose(p("XYZ"), p("XYZ")).unwrap().is_identity());
        assert_eq!(compose(p("ZZ"), p("YY")).unwrap(), p("XX"));
        assert_eq!(compose(p("ZX"), p("YY")).unwrap(), p("XZ"));
        assert!(compose(p("ZX"), p("Y")).is_err());
    }

    #[test]
    fn product_phase_examples() {
        assert_eq!(full_product_phase(p("I"), p("Y")).unwrap(), 0);
        // Z Y = -i X
        assert_eq!(full_product_phase(p("Z"), p("Y")).unwrap(), 3);
        assert_eq!(full_product_phase(p("X"), p("Y")).unwrap(), 1);
        assert_eq!(full_product_phase(p("ZZ"), p("YY")).unwrap(), 2);
    }

    #[test]
    fn beta_examples() {
        assert!(!beta(p("XYZ"), p("XYZ")).unwrap());
        assert!(beta(p("ZZ"), p("YY")).unwrap());
        assert!(!beta(p("ZX"), p("YY")).unwrap());
        assert!(!beta(p("ZI"), p("IZ")).unwrap());
        assert!(matches!(beta(p("ZI"), p("YY")), Err(Error::Anticommuting { .. })));
    }

    #[test]
    fn subgroup_validation() {
        assert!(AbelianSubgroup::new(2, &[p("ZI"), p("XI")]).is_err());
        assert!(AbelianSubgroup::new(2, &[p("ZI"), p("IZ"), p("ZZ")]).is_err());
        assert!(AbelianSubgroup::new(2, &[p("II")]).is_err());
        assert!(AbelianSubgroup::new(2, &[p("ZII")]).is_err());
        // canonical form does not depend on the generating set
        assert_eq!(group(&["ZI", "IZ"]), group(&["ZZ", "IZ"]));
    }

    #[test]
    fn group_elements_examples() {
        assert_eq!(group_elements(&AbelianSubgroup::trivial(3)), vec![p("III")]);
        let mut els = group_elements(&group(&["ZI", "IZ"]));
        els.sort();
        let mut want = vec![p("II"), p("ZI"), p("IZ"), p("ZZ")];
        want.sort();
        assert_eq!(els, want);
        let g = group(&["ZII", "IZI"]);
        assert_eq!(group_elements(&g).len(), 4);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(symplectic_rank(&[]), 0);
        assert_eq!(symplectic_rank(&[p("ZI"), p("IZ"), p("ZZ")]), 2);
        assert_eq!(symplectic_rank(&[p("XXX"), p("ZZI"), p("IZZ")]), 3);
    }

    #[test]
    fn centralizing_examples() {
        let g = group(&["ZI", "IZ"]);
        assert_eq!(centralizing_subgroup(&g, p("ZZ")), g);
        assert_eq!(centralizing_subgroup(&group(&["IZ"]), p("YY")), AbelianSubgroup::trivial(2));
        assert_eq!(centralizing_subgroup(&g, p("YY")), group(&["ZZ"]));
    }

    #[test]
    fn index2_counts() {
        assert_eq!(index2_subgroups(&group(&["Z"])), vec![AbelianSubgroup::trivial(1)]);
        let subs = index2_subgroups(&group(&["ZI", "IZ"]));
        let mut got: Vec<_> = subs.iter().map(|s| s.generators()[0]).collect();
        got.sort();
        let mut want = vec![p("ZI"), p("IZ"), p("ZZ")];
        want.sort();
        assert_eq!(got, want);
        let subs = index2_subgroups(&group(&["ZII", "IZI", "IIZ"]));
        assert_eq!(subs.len(), 7);
        assert!(subs.iter().all(|s| s.rank() == 2));
    }

    #[test]
    fn maximal_extension_examples() {
        let ext = maximal_extensions(&AbelianSubgroup::trivial(1)).unwrap();
        assert_eq!(ext, [p("Z"), p("X"), p("Y")]);
        let ext = maximal_extensions(&group(&["ZI"])).unwrap();
        assert_eq!(ext, [p("IZ"), p("IX"), p("IY")]);
        assert!(matches!(
            maximal_extensions(&group(&["ZI", "IZ"])),
            Err(Error::RankPrecondition { .. })
        ));
    }

    #[test]
    fn nullspace_is_orthogonal_complement() {
        let rows = [0b1010u64, 0b0110];
        let ns = nullspace(&rows, 4);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for r in rows {
                assert_eq!((v & r).count_ones() % 2, 0);
            }
        }
    }

    #[test]
    fn eliminator_decomposes_over_inputs() {
        let mut e = Eliminator::new();
        let inputs = [p("XXI"), p("ZZI"), p("IZZ")];
        for (i, v) in inputs.iter().enumerate() {
            assert!(e.insert(v.code(), 1 << i));
        }
        let target = p("XXI").compose(&p("IZZ"));
        assert_eq!(e.decompose(target.code()), Some(0b101));
        assert_eq!(e.decompose(p("XII").code()), None);
        assert!(!e.insert(p("ZIZ").code(), 0));
    }
}

//! Compact ontic states.
//!
//! Instead of a full value assignment, the compact model keeps the phase of
//! each of the `n-1` generators of `G` and of the three coset representatives
//! `S_1, S_2, S_3` of the centralizer of `G` modulo `G`. Every such state lies
//! in the support of exactly the three pure states `<G, ±S_i>`.
//!
//! Responses are deterministic whenever `M` lies in one of the groups
//! `<G, S_i>` and a fair coin when `M` anticommutes with `G`. Measurement
//! updates follow the full model's rules restricted to the stored rows:
//!
//! * `M` anticommutes with `G`: the new group is `<G_M, M>` with phase `k` on
//!   `M`, where `G_M` is the part of `G` commuting with `M`. Each old `S_i`
//!   (multiplied by an anticommuting generator when it anticommutes with `M`)
//!   keeps its phase and lands in a distinct new coset.
//! * `M` commutes with `G` but is outside it: the new group is `<H, M>` for a
//!   uniform index-2 subgroup `H`. The generator of `G` dropped from `H` spans
//!   one new coset and keeps its phase; the other two cosets get fresh coins.
//! * `M` in `G`: nothing changes.

use rand::Rng;

use crate::clifford::CliffordOp;
use crate::epistemic::OnticState;
use crate::error::{Error, Result};
use crate::pauli::{beta, maximal_extensions, pivot, signed_echelon, AbelianSubgroup, PauliIndex, SignedPauli};
use crate::tableau::{Membership, StabilizerTableau};

/// A Pauli index with its stored phase bit; the phase uses the `negative`
/// field of [`SignedPauli`].
pub type Row = SignedPauli;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompactOnticState {
    n: usize,
    generators: Vec<Row>,
    extensions: [Row; 3],
}

fn row(p: PauliIndex, phase: bool) -> Row {
    SignedPauli { index: p, negative: phase }
}

/// Multiplies `r` by the rows of `gens` (signed reduced echelon form) until it
/// is the smallest-code member of its coset, tracking the phase.
///
/// The result may be the identity with phase 1, which is why this does not go
/// through [`SignedPauli::mul`].
fn reduce_row(gens: &[Row], r: Row) -> Row {
    let (mut p, mut phase) = (r.index, r.negative);
    for g in gens {
        if (p.code() >> pivot(g.index.code())) & 1 == 1 {
            phase ^= g.negative ^ beta(p, g.index).expect("reduced rows commute with the group");
            p = p.compose(&g.index);
        }
    }
    SignedPauli { index: p, negative: phase }
}

/// Number of bits in the serialized form.
pub fn bit_len(n: usize) -> usize {
    (2 * n + 1) * (n + 2)
}

impl CompactOnticState {
    /// Canonicalizes arbitrary generator rows and one representative row from
    /// each of the three cosets.
    fn assemble(n: usize, generators: &[Row], extensions: [Row; 3]) -> Result<Self> {
        let generators = signed_echelon(n, generators)?;
        let mut ext = extensions.map(|e| reduce_row(&generators, e));
        ext.sort_by_key(|e| e.index.code());
        Ok(CompactOnticState { n, generators, extensions: ext })
    }

    /// Builds a state from its generator rows and the phases of the canonical
    /// extensions (in canonical order).
    pub fn from_parts(n: usize, generators: &[Row], extension_phases: [bool; 3]) -> Result<Self> {
        let group = AbelianSubgroup::new(n, &generators.iter().map(|g| g.index).collect::<Vec<_>>())?;
        let reps = maximal_extensions(&group)?;
        let s = Self::assemble(n, generators, [0, 1, 2].map(|i| row(reps[i], false)))?;
        let extensions = [0, 1, 2].map(|i| row(s.extensions[i].index, extension_phases[i]));
        Ok(CompactOnticState { extensions, ..s })
    }

    pub fn from_full(lambda: &OnticState) -> Self {
        let n = lambda.n();
        let generators: Vec<Row> =
            lambda.group.generators().iter().map(|g| row(*g, lambda.gamma.evaluate(*g))).collect();
        let reps = maximal_extensions(&lambda.group).expect("ontic groups have rank n-1");
        CompactOnticState { n, generators, extensions: reps.map(|s| row(s, lambda.gamma.evaluate(s))) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generator_rows(&self) -> &[Row] {
        &self.generators
    }

    pub fn extension_rows(&self) -> &[Row; 3] {
        &self.extensions
    }

    pub fn group(&self) -> AbelianSubgroup {
        AbelianSubgroup::new(self.n, &self.generators.iter().map(|g| g.index).collect::<Vec<_>>())
            .expect("generator rows are canonical")
    }

    /// Where `m` sits relative to the stored rows.
    fn locate(&self, m: PauliIndex) -> Location {
        if self.generators.iter().any(|g| g.index.anticommutes_with(&m)) {
            return Location::Anticommuting;
        }
        let r = reduce_row(&self.generators, row(m, false));
        if r.index.is_identity() {
            return Location::InGroup { phase: r.negative };
        }
        let i = self.extensions.iter().position(|e| e.index == r.index).expect("centralizer cosets are stored");
        Location::Extension { index: i, phase: r.negative ^ self.extensions[i].negative }
    }

    /// Probability of outcome `k`: one of 0, 1/2, 1.
    pub fn outcome_probability(&self, m: PauliIndex, k: bool) -> Result<f64> {
        if m.is_identity() {
            return Err(Error::IdentityMeasurement);
        }
        Ok(match self.locate(m) {
            Location::Anticommuting => 0.5,
            Location::InGroup { phase } | Location::Extension { phase, .. } => (phase == k) as u8 as f64,
        })
    }

    pub fn respond<R: Rng + ?Sized>(&self, m: PauliIndex, rng: &mut R) -> Result<bool> {
        if m.is_identity() {
            return Err(Error::IdentityMeasurement);
        }
        Ok(match self.locate(m) {
            Location::Anticommuting => rng.gen(),
            Location::InGroup { phase } | Location::Extension { phase, .. } => phase,
        })
    }

    pub fn measure_update<R: Rng + ?Sized>(&self, m: PauliIndex, k: bool, rng: &mut R) -> Result<Self> {
        match self.locate_checked(m, k)? {
            Location::Anticommuting => self.anticommuting_update(m, k),
            Location::InGroup { .. } => Ok(self.clone()),
            Location::Extension { .. } => {
                let f = if self.n == 1 { 0 } else { rng.gen_range(1..(1u64 << self.generators.len())) };
                self.commuting_update(m, k, f, [rng.gen(), rng.gen()])
            }
        }
    }

    /// Every equiprobable outcome of the update.
    pub fn update_branches(&self, m: PauliIndex, k: bool) -> Result<Vec<Self>> {
        match self.locate_checked(m, k)? {
            Location::Anticommuting => Ok(vec![self.anticommuting_update(m, k)?]),
            Location::InGroup { .. } => Ok(vec![self.clone()]),
            Location::Extension { .. } => {
                let fs: Vec<u64> = if self.n == 1 { vec![0] } else { (1..(1u64 << self.generators.len())).collect() };
                let mut out = Vec::new();
                for f in fs {
                    for coins in [[false, false], [false, true], [true, false], [true, true]] {
                        out.push(self.commuting_update(m, k, f, coins)?);
                    }
                }
                Ok(out)
            }
        }
    }

    fn locate_checked(&self, m: PauliIndex, k: bool) -> Result<Location> {
        if m.is_identity() {
            return Err(Error::IdentityMeasurement);
        }
        if m.n() != self.n {
            return Err(Error::SizeMismatch { left: self.n, right: m.n() });
        }
        let loc = self.locate(m);
        match loc {
            Location::InGroup { phase } | Location::Extension { phase, .. } if phase != k => {
                Err(Error::OutcomeContract { expected: phase as u8, given: k as u8 })
            }
            _ => Ok(loc),
        }
    }

    fn anticommuting_update(&self, m: PauliIndex, k: bool) -> Result<Self> {
        let j = self.generators.iter().position(|g| g.index.anticommutes_with(&m)).expect("some row anticommutes");
        let g0 = self.generators[j];
        let mut gens: Vec<Row> = self
            .generators
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, g)| if g.index.anticommutes_with(&m) { g.mul(&g0) } else { Ok(*g) })
            .collect::<Result<_>>()?;
        gens.push(row(m, k));
        let ext = self.extensions.map(|s| if s.index.anticommutes_with(&m) { s.mul(&g0).expect("commuting") } else { s });
        Self::assemble(self.n, &gens, ext)
    }

    fn commuting_update(&self, m: PauliIndex, k: bool, f: u64, coins: [bool; 2]) -> Result<Self> {
        if self.n == 1 {
            let mut coins = coins.into_iter();
            let ext = self.extensions.map(|s| if s.index == m { row(m, k) } else { row(s.index, coins.next().unwrap()) });
            return Ok(CompactOnticState { n: 1, generators: Vec::new(), extensions: ext });
        }
        let j = f.trailing_zeros() as usize;
        let dropped = self.generators[j];
        let mut gens: Vec<Row> = self
            .generators
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(i, g)| if (f >> i) & 1 == 1 { g.mul(&dropped) } else { Ok(*g) })
            .collect::<Result<_>>()?;
        gens.push(row(m, k));
        let gens = signed_echelon(self.n, &gens)?;
        let kept = reduce_row(&gens, dropped);
        let group = AbelianSubgroup::new(self.n, &gens.iter().map(|g| g.index).collect::<Vec<_>>())?;
        let mut coins = coins.into_iter();
        let ext = maximal_extensions(&group)?
            .map(|s| if s == kept.index { kept } else { row(s, coins.next().expect("two fresh cosets")) });
        Ok(CompactOnticState { n: self.n, generators: gens, extensions: ext })
    }

    pub fn apply_clifford(&self, c: &CliffordOp) -> Self {
        let gens: Vec<Row> = self.generators.iter().map(|g| c.conjugate_signed(*g)).collect();
        let ext = self.extensions.map(|s| c.conjugate_signed(s));
        Self::assemble(self.n, &gens, ext).expect("Cliffords preserve the row structure")
    }

    /// The three pure states `<G, (-1)^γ(S_i) S_i>`.
    pub fn supporting_states(&self) -> [StabilizerTableau; 3] {
        self.extensions.map(|s| {
            let mut rows = self.generators.clone();
            rows.push(s);
            StabilizerTableau::new(self.n, &rows).expect("generators plus one extension are maximal")
        })
    }

    pub fn support_contains(&self, psi: &StabilizerTableau) -> bool {
        self.supporting_states().contains(psi)
    }

    /// Uniform sample from the support of `psi`.
    pub fn sample_preparation<R: Rng + ?Sized>(psi: &StabilizerTableau, rng: &mut R) -> Self {
        let n = psi.n();
        let f = rng.gen_range(1..(1u64 << n));
        Self::prepared(psi, f, [rng.gen(), rng.gen()])
    }

    /// The `4 (2^n - 1)` equiprobable members of the support of `psi`.
    pub fn preparation_support(psi: &StabilizerTableau) -> Vec<Self> {
        let n = psi.n();
        let mut out = Vec::new();
        for f in 1..(1u64 << n) {
            for coins in [[false, false], [false, true], [true, false], [true, true]] {
                out.push(Self::prepared(psi, f, coins));
            }
        }
        out
    }

    fn prepared(psi: &StabilizerTableau, f: u64, coins: [bool; 2]) -> Self {
        let n = psi.n();
        let group = psi.unsigned_group().kernel(f);
        let sign = |p: PauliIndex| match psi.membership(p) {
            Membership::Plus => false,
            Membership::Minus => true,
            Membership::Absent => unreachable!("subgroup of the stabilizer group"),
        };
        let generators: Vec<Row> = group.generators().iter().map(|g| row(*g, sign(*g))).collect();
        let mut coins = coins.into_iter();
        let extensions = maximal_extensions(&group).expect("rank n-1").map(|s| match psi.membership(s) {
            Membership::Absent => row(s, coins.next().expect("two cosets leave the state")),
            _ => row(s, sign(s)),
        });
        CompactOnticState { n, generators, extensions }
    }

    /// Rows `g_1..g_{n-1}, S_1..S_3`, each as x bits, z bits and the phase
    /// bit, packed most significant bit first and zero padded.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut bits = Vec::with_capacity(bit_len(self.n));
        for r in self.generators.iter().chain(&self.extensions) {
            bits.extend((0..self.n).map(|q| (r.index.x() >> q) & 1 == 1));
            bits.extend((0..self.n).map(|q| (r.index.z() >> q) & 1 == 1));
            bits.push(r.negative);
        }
        debug_assert_eq!(bits.len(), bit_len(self.n));
        bits.chunks(8)
            .map(|c| c.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | ((b as u8) << (7 - i))))
            .collect()
    }

    pub fn from_bytes(n: usize, bytes: &[u8]) -> Result<Self> {
        let len = bit_len(n);
        if n == 0 || bytes.len() != len.div_ceil(8) {
            return Err(Error::Config(format!("expected {} bytes for n = {n}", len.div_ceil(8))));
        }
        let bit = |i: usize| (bytes[i / 8] >> (7 - i % 8)) & 1 == 1;
        if (len..bytes.len() * 8).any(bit) {
            return Err(Error::Config("nonzero padding bits".into()));
        }
        let rows: Vec<Row> = (0..n + 2)
            .map(|r| {
                let base = r * (2 * n + 1);
                let word = |off: usize| (0..n).fold(0u64, |acc, q| acc | ((bit(base + off + q) as u64) << q));
                row(PauliIndex::from_bits(n, word(0), word(n)), bit(base + 2 * n))
            })
            .collect();
        let gens = &rows[..n - 1];
        let ext = [rows[n - 1], rows[n], rows[n + 1]];
        let group = AbelianSubgroup::new(n, &gens.iter().map(|g| g.index).collect::<Vec<_>>())?;
        for (i, a) in ext.iter().enumerate() {
            if !group.commutes_with_all(a.index) || group.contains(a.index) {
                return Err(Error::InvalidGenerators(format!("{} is not an extension", a.index)));
            }
            for b in &ext[i + 1..] {
                if !a.index.anticommutes_with(&b.index) {
                    return Err(Error::InvalidGenerators("extensions must anticommute".into()));
                }
            }
        }
        Self::assemble(n, gens, ext)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Location {
    Anticommuting,
    InGroup { phase: bool },
    Extension { index: usize, phase: bool },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::PhaseFunction;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PauliIndex {
        PauliIndex::parse(s).unwrap()
    }

    fn zi_state() -> CompactOnticState {
        let g = AbelianSubgroup::new(2, &[p("ZI")]).unwrap();
        CompactOnticState::from_full(&OnticState::new(g, PhaseFunction::zero(2)).unwrap())
    }

    #[test]
    fn from_full_rows() {
        let c = zi_state();
        assert_eq!(c.generator_rows(), &[row(p("ZI"), false)]);
        let ext: Vec<_> = c.extension_rows().iter().map(|r| r.to_string()).collect();
        assert_eq!(ext, ["+IZ", "+IX", "+IY"]);
        assert_eq!(c.to_bytes().len() * 8, 24);
        assert_eq!(bit_len(2), 20);
    }

    #[test]
    fn responses() {
        let c = zi_state();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(c.outcome_probability(p("XX"), false).unwrap(), 0.5);
        assert!(!c.respond(p("ZZ"), &mut rng).unwrap());
        assert!(!c.respond(p("ZI"), &mut rng).unwrap());
        assert!(c.respond(p("II"), &mut rng).is_err());
    }

    #[test]
    fn single_qubit_supports() {
        let c = CompactOnticState::from_parts(1, &[], [false; 3]).unwrap();
        let want = [
            StabilizerTableau::parse(&["+Z"]).unwrap(),
            StabilizerTableau::parse(&["+X"]).unwrap(),
            StabilizerTableau::parse(&["+Y"]).unwrap(),
        ];
        assert_eq!(c.supporting_states(), want);
    }

    #[test]
    fn serialization_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..=6 {
            let psi = StabilizerTableau::pluses(n);
            for _ in 0..20 {
                let c = CompactOnticState::sample_preparation(&psi, &mut rng);
                let bytes = c.to_bytes();
                assert_eq!(bytes.len(), bit_len(n).div_ceil(8));
                assert_eq!(CompactOnticState::from_bytes(n, &bytes).unwrap(), c);
            }
        }
    }

    #[test]
    fn yy_update_supports_oracle_state() {
        let psi = StabilizerTableau::zeros(2);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for c in CompactOnticState::preparation_support(&psi) {
            for _ in 0..4 {
                let k = c.respond(p("YY"), &mut rng).unwrap();
                let post = c.measure_update(p("YY"), k, &mut rng).unwrap();
                let want = psi.project(p("YY"), k).unwrap().unwrap();
                assert!(post.support_contains(&want));
            }
        }
    }
}

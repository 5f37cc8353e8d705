//! Value assignments on the projective Pauli group.
//!
//! A [`PhaseFunction`] stores one bit per Pauli index, addressed by
//! [`PauliIndex::code`]; the bit `γ(a)` is read as the value `(-1)^γ(a)`. The
//! identity always carries 0.

use rand::Rng;

use crate::error::{Error, Result};
use crate::pauli::{beta, Eliminator, PauliIndex, SignedPauli};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseFunction {
    n: usize,
    words: Vec<u64>,
}

impl PhaseFunction {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 16, "dense phase functions need 4^n bits");
        PhaseFunction { n, words: vec![0; Self::word_count(n)] }
    }

    fn word_count(n: usize) -> usize {
        (1usize << (2 * n)).div_ceil(64)
    }

    /// Number of Pauli indices, `4^n`.
    pub fn len(&self) -> usize {
        1 << (2 * self.n)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Uniformly random assignment with `γ(I) = 0`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut g = Self::zero(n);
        for w in g.words.iter_mut() {
            *w = rng.gen();
        }
        let len = g.len();
        if len < 64 {
            g.words[0] &= (1u64 << len) - 1;
        }
        g.words[0] &= !1;
        g
    }

    /// Builds the assignment whose bits are the binary digits of `word`; only for
    /// tiny `n` where `4^n <= 64`.
    pub fn from_word(n: usize, word: u64) -> Self {
        let mut g = Self::zero(n);
        assert!(g.len() <= 64);
        assert!(word & 1 == 0, "the identity must carry 0");
        assert!(g.len() == 64 || word >> g.len() == 0);
        g.words[0] = word;
        g
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get_code(&self, code: u64) -> bool {
        (self.words[(code >> 6) as usize] >> (code & 63)) & 1 == 1
    }

    #[inline]
    pub fn evaluate(&self, a: PauliIndex) -> bool {
        debug_assert_eq!(a.n(), self.n);
        self.get_code(a.code())
    }

    #[inline]
    pub fn set_code(&mut self, code: u64, bit: bool) {
        assert!(code != 0 || !bit, "the identity must carry 0");
        let w = &mut self.words[(code >> 6) as usize];
        let m = 1u64 << (code & 63);
        if bit {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    #[inline]
    pub fn set(&mut self, a: PauliIndex, bit: bool) {
        debug_assert_eq!(a.n(), self.n);
        self.set_code(a.code(), bit);
    }

    /// The `±1` value assignment view.
    pub fn value(&self, a: PauliIndex) -> i8 {
        if self.evaluate(a) {
            -1
        } else {
            1
        }
    }
}

/// Checks a signed generating set: right size, commuting, independent, and
/// never generating `-I`.
pub(crate) fn validate_generators(n: usize, gens: &[SignedPauli]) -> Result<()> {
    if gens.len() != n {
        return Err(Error::InvalidGenerators(format!(
            "expected {n} generators, got {}",
            gens.len()
        )));
    }
    for g in gens {
        if g.index.n() != n {
            return Err(Error::SizeMismatch { left: n, right: g.index.n() });
        }
    }
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if a.index.anticommutes_with(&b.index) {
                return Err(Error::InvalidGenerators(format!("{a} and {b} anticommute")));
            }
        }
    }
    crate::pauli::signed_echelon(n, gens)?;
    Ok(())
}

/// Every element of the signed group generated by `gens`, element `m` being
/// the product of the generators selected by mask `m`.
pub fn signed_group_elements(gens: &[SignedPauli]) -> Result<Vec<SignedPauli>> {
    let n = gens.first().map(|g| g.index.n()).unwrap_or(0);
    let mut out = vec![SignedPauli::plus(PauliIndex::identity(n))];
    for g in gens {
        let len = out.len();
        for i in 0..len {
            let e = out[i].mul(g)?;
            out.push(e);
        }
    }
    Ok(out)
}

/// True iff `γ(b) = p_b` for every element `(-1)^{p_b} P_b` of the group.
pub fn is_consistent(gamma: &PhaseFunction, gens: &[SignedPauli]) -> Result<bool> {
    validate_generators(gamma.n, gens)?;
    Ok(signed_group_elements(gens)?.iter().all(|e| gamma.evaluate(e.index) == e.negative))
}

/// Uniform sample among the phase functions consistent with the group: bits on
/// group elements are forced, every other non-identity bit is a fair coin.
pub fn sample_consistent<R: Rng + ?Sized>(gens: &[SignedPauli], rng: &mut R) -> Result<PhaseFunction> {
    let n = gens.first().map(|g| g.index.n()).unwrap_or(0);
    validate_generators(n, gens)?;
    let mut gamma = PhaseFunction::random(n, rng);
    for e in signed_group_elements(gens)? {
        gamma.set(e.index, e.negative);
    }
    Ok(gamma)
}

/// Phase of `element` induced by generator phases through
/// `γ(a + b) = γ(a) + γ(b) + β(a, b)`.
pub fn induced_phase(generator_phases: &[(PauliIndex, bool)], element: PauliIndex) -> Result<bool> {
    let mut elim = Eliminator::new();
    for (i, (g, _)) in generator_phases.iter().enumerate() {
        elim.insert(g.code(), 1 << i);
    }
    let mask = elim
        .decompose(element.code())
        .ok_or_else(|| Error::NotInSpan(element.to_string()))?;
    let picked: Vec<_> = generator_phases
        .iter()
        .enumerate()
        .filter(|(i, _)| (mask >> i) & 1 == 1)
        .map(|(_, gp)| *gp)
        .collect();
    let forward = accumulate(element.n(), picked.iter())?;
    debug_assert_eq!(forward, accumulate(element.n(), picked.iter().rev())?);
    Ok(forward)
}

fn accumulate<'a>(n: usize, items: impl Iterator<Item = &'a (PauliIndex, bool)>) -> Result<bool> {
    let mut acc = PauliIndex::identity(n);
    let mut phase = false;
    for &(g, p) in items {
        phase ^= p ^ beta(acc, g)?;
        acc = acc.compose(&g);
    }
    Ok(phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sp(s: &str) -> SignedPauli {
        SignedPauli::parse(s).unwrap()
    }

    fn p(s: &str) -> PauliIndex {
        PauliIndex::parse(s).unwrap()
    }

    #[test]
    fn identity_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4 {
            for _ in 0..20 {
                let g = PhaseFunction::random(n, &mut rng);
                assert!(!g.evaluate(PauliIndex::identity(n)));
            }
        }
        assert_eq!(PhaseFunction::zero(2).value(p("ZZ")), 1);
    }

    #[test]
    fn consistency_examples() {
        let zero = PhaseFunction::zero(2);
        assert!(is_consistent(&zero, &[sp("+ZI"), sp("+IZ")]).unwrap());
        assert!(is_consistent(&zero, &[sp("+ZI"), sp("+IX")]).unwrap());
        let mut g = zero.clone();
        g.set(p("ZZ"), true);
        assert!(!is_consistent(&g, &[sp("+ZI"), sp("+IZ")]).unwrap());
        assert!(is_consistent(&zero, &[sp("+ZI"), sp("-ZI")]).is_err());
        assert!(is_consistent(&zero, &[sp("+ZI")]).is_err());
    }

    #[test]
    fn single_qubit_support_has_four_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..400 {
            let g = sample_consistent(&[sp("+Z")], &mut rng).unwrap();
            assert!(!g.evaluate(p("Z")));
            seen.insert(g);
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn sampled_group_bits_are_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let gens = [sp("-XX"), sp("+ZZ")];
        let group = signed_group_elements(&gens).unwrap();
        for _ in 0..50 {
            let g = sample_consistent(&gens, &mut rng).unwrap();
            for e in &group {
                assert_eq!(g.evaluate(e.index), e.negative);
            }
        }
    }

    #[test]
    fn induced_phase_examples() {
        let gens = [(p("ZI"), false), (p("IZ"), false)];
        assert!(!induced_phase(&gens, p("ZZ")).unwrap());
        assert!(!induced_phase(&gens, p("ZI")).unwrap());
        for k in [false, true] {
            let gens = [(p("ZZ"), false), (p("YY"), k)];
            assert_eq!(induced_phase(&gens, p("XX")).unwrap(), !k);
        }
        assert!(matches!(induced_phase(&gens, p("XI")), Err(Error::NotInSpan(_))));
    }
}

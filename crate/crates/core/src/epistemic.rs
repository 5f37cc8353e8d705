//! The contextual ψ-epistemic model.
//!
//! An ontic state is a pair `(G, γ)`: `G` is a rank `n-1` abelian subgroup of
//! the projective Pauli group and `γ` a full value assignment. A pure state
//! `ψ` is represented by the uniform distribution over pairs with
//! `G ⊂ S̃(ψ)` and `γ` consistent with the signed stabilizer group of `ψ`.
//!
//! Measurements answer deterministically with `γ(M)` and then move the ontic
//! state through an [`UpdatePlan`]: a deterministic part built from a snapshot
//! of `γ`, a uniform choice of the new subgroup, and a set of indices that are
//! re-randomized. Exposing the plan lets tests enumerate every branch of the
//! update exactly instead of sampling it.

use std::collections::BTreeSet;

use rand::Rng;

use crate::clifford::CliffordOp;
use crate::error::{Error, Result};
use crate::pauli::{beta, centralizer_basis, group_elements, AbelianSubgroup, PauliIndex};
use crate::phase::{is_consistent, sample_consistent, PhaseFunction};
use crate::tableau::{Membership, StabilizerTableau};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OnticState {
    pub group: AbelianSubgroup,
    pub gamma: PhaseFunction,
}

impl OnticState {
    pub fn new(group: AbelianSubgroup, gamma: PhaseFunction) -> Result<Self> {
        let n = gamma.n();
        if group.n() != n {
            return Err(Error::SizeMismatch { left: group.n(), right: n });
        }
        if group.rank() + 1 != n {
            return Err(Error::RankPrecondition { expected: n - 1, actual: group.rank() });
        }
        Ok(OnticState { group, gamma })
    }

    pub fn n(&self) -> usize {
        self.gamma.n()
    }
}

pub fn support_contains(psi: &StabilizerTableau, lambda: &OnticState) -> bool {
    psi.n() == lambda.n()
        && lambda.group.rank() + 1 == psi.n()
        && lambda.group.generators().iter().all(|g| psi.membership(*g) != Membership::Absent)
        && is_consistent(&lambda.gamma, psi.rows()).unwrap_or(false)
}

pub fn sample_preparation<R: Rng + ?Sized>(psi: &StabilizerTableau, rng: &mut R) -> OnticState {
    let n = psi.n();
    let full = psi.unsigned_group();
    let f = rng.gen_range(1..(1u64 << n));
    let gamma = sample_consistent(psi.rows(), rng).expect("tableau rows are a valid generating set");
    OnticState { group: full.kernel(f), gamma }
}

/// Every member of the support of `psi`; only feasible for `n <= 2`.
pub fn support(psi: &StabilizerTableau) -> Vec<OnticState> {
    let n = psi.n();
    assert!(n <= 2, "support enumeration is exponential in 4^n");
    let group: BTreeSet<u64> = psi.signed_elements().iter().map(|e| e.index.code()).collect();
    let free: Vec<u64> = (1..(1u64 << (2 * n))).filter(|c| !group.contains(c)).collect();
    let mut base = PhaseFunction::zero(n);
    for e in psi.signed_elements() {
        base.set(e.index, e.negative);
    }
    let full = psi.unsigned_group();
    let mut out = Vec::with_capacity(((1 << n) - 1) << free.len());
    for f in 1..(1u64 << n) {
        let g = full.kernel(f);
        for bits in 0u64..(1 << free.len()) {
            let mut gamma = base.clone();
            for (i, &c) in free.iter().enumerate() {
                gamma.set_code(c, (bits >> i) & 1 == 1);
            }
            out.push(OnticState { group: g.clone(), gamma });
        }
    }
    out
}

/// Transports `λ` along the Clifford `c`: `G ↦ c(G)` and
/// `γ'(c(b)) = γ(b) ⊕ γ_c(b)`.
pub fn apply_clifford(lambda: &OnticState, c: &CliffordOp) -> OnticState {
    let n = lambda.n();
    let group = AbelianSubgroup::span_of(n, lambda.group.generators().iter().map(|g| c.conjugate(*g).index));
    let mut gamma = PhaseFunction::zero(n);
    for code in 1..(1u64 << (2 * n)) {
        let img = c.conjugate(PauliIndex::from_code(n, code));
        gamma.set(img.index, lambda.gamma.get_code(code) ^ img.negative);
    }
    OnticState { group, gamma }
}

pub fn respond(lambda: &OnticState, m: PauliIndex) -> Result<bool> {
    if m.is_identity() {
        return Err(Error::IdentityMeasurement);
    }
    Ok(lambda.gamma.evaluate(m))
}

/// The measurement update for a fixed `(λ, M, k)`, before any randomness is
/// drawn. The post-measurement ontic state is `(G', γ')` with `G'` uniform over
/// `candidates` and `γ'` equal to `base` except on `randomized`, where each
/// bit is an independent fair coin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdatePlan {
    pub candidates: Vec<AbelianSubgroup>,
    pub base: PhaseFunction,
    pub randomized: Vec<PauliIndex>,
}

impl UpdatePlan {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> OnticState {
        let group = if self.candidates.len() == 1 {
            self.candidates[0].clone()
        } else {
            self.candidates[rng.gen_range(0..self.candidates.len())].clone()
        };
        let mut gamma = self.base.clone();
        for p in &self.randomized {
            gamma.set(*p, rng.gen());
        }
        OnticState { group, gamma }
    }

    /// Probability that the post-update response to `m` is `k`.
    pub fn response_probability(&self, m: PauliIndex, k: bool) -> f64 {
        if self.randomized.contains(&m) {
            0.5
        } else if self.base.evaluate(m) == k {
            1.0
        } else {
            0.0
        }
    }

    /// Every equiprobable outcome; exponential in the randomized set.
    pub fn outcomes(&self) -> Vec<OnticState> {
        assert!(self.randomized.len() <= 24, "too many branches to enumerate");
        let mut out = Vec::new();
        for g in &self.candidates {
            for bits in 0u64..(1 << self.randomized.len()) {
                let mut gamma = self.base.clone();
                for (i, p) in self.randomized.iter().enumerate() {
                    gamma.set(*p, (bits >> i) & 1 == 1);
                }
                out.push(OnticState { group: g.clone(), gamma });
            }
        }
        out
    }
}

fn centralizer_elements(g: &AbelianSubgroup) -> Vec<PauliIndex> {
    let mut out = vec![PauliIndex::identity(g.n())];
    for b in centralizer_basis(g) {
        let len = out.len();
        for i in 0..len {
            out.push(out[i].compose(&b));
        }
    }
    out
}

/// Tracks deterministic writes so that no index is assigned twice with
/// different values and no written index is also re-randomized.
struct Writes {
    base: PhaseFunction,
    written: Vec<(u64, bool)>,
}

impl Writes {
    fn set(&mut self, p: PauliIndex, bit: bool) {
        self.written.push((p.code(), bit));
        self.base.set(p, bit);
    }

    fn finish(mut self, randomized: &[PauliIndex]) -> PhaseFunction {
        self.written.sort_unstable();
        for w in self.written.windows(2) {
            assert!(w[0].0 != w[1].0 || w[0].1 == w[1].1, "conflicting writes to one index");
        }
        for r in randomized {
            let code = r.code();
            let hit = self.written.binary_search_by(|(c, _)| c.cmp(&code)).is_ok();
            assert!(!hit, "index {r} both written and randomized");
        }
        self.base
    }
}

pub fn update_plan(lambda: &OnticState, m: PauliIndex, k: bool) -> Result<UpdatePlan> {
    let expected = respond(lambda, m)?;
    if expected != k {
        return Err(Error::OutcomeContract { expected: expected as u8, given: k as u8 });
    }
    let n = lambda.n();
    let g = &lambda.group;
    let gamma = &lambda.gamma;
    let centralizer = centralizer_elements(g);
    let mut writes = Writes { base: gamma.clone(), written: Vec::new() };
    let mut randomized: Vec<PauliIndex> = centralizer.iter().copied().filter(|s| s.anticommutes_with(&m)).collect();
    randomized.sort();

    let anti = g.anticommutation_mask(m);
    let candidates = if anti != 0 {
        for s in centralizer.iter().filter(|s| s.commutes_with(&m)) {
            let v = gamma.evaluate(*s);
            writes.set(*s, v);
            writes.set(s.compose(&m), v ^ k ^ beta(*s, m)?);
        }
        vec![g.kernel(anti).extend(m)?]
    } else {
        for e in group_elements(g) {
            writes.set(e.compose(&m), gamma.evaluate(e) ^ k ^ beta(e, m)?);
        }
        if n == 1 {
            vec![AbelianSubgroup::trivial(1)]
        } else {
            let in_group = g.decompose(m);
            let eligible: BTreeSet<AbelianSubgroup> = (1u64..(1 << g.rank()))
                .filter(|f| in_group.map_or(true, |d| (f & d).count_ones() % 2 == 1))
                .map(|f| AbelianSubgroup::span_of(n, g.kernel(f).generators().iter().copied().chain([m])))
                .collect();
            eligible.into_iter().collect()
        }
    };
    let base = writes.finish(&randomized);
    Ok(UpdatePlan { candidates, base, randomized })
}

pub fn update<R: Rng + ?Sized>(lambda: &OnticState, m: PauliIndex, k: bool, rng: &mut R) -> Result<OnticState> {
    Ok(update_plan(lambda, m, k)?.sample(rng))
}

/// Responds and updates in one step.
pub fn measure<R: Rng + ?Sized>(lambda: &OnticState, m: PauliIndex, rng: &mut R) -> Result<(bool, OnticState)> {
    let k = respond(lambda, m)?;
    Ok((k, update(lambda, m, k, rng)?))
}

//! The test for `B_w = R_w`: for each pair `(γ, β) ∈ Π(w)`, decide whether
//! `ξ𝐯_w = E_{-β} ∧ (E_γ ⌟ 𝐯_w)` lies in the span of the vectors `𝐛.𝐯_w`.

use crate::chevalley::ChevalleyBasis;
use crate::cohomology::{Cochain, Complex};
use crate::error::CoreError;
use crate::hasse::{Chss, HasseElement};
use crate::linalg::{qi, ModEchelon, SparseEchelon, SparseVec};
use crate::root_system::{Family, Root};
use crate::schubert::{classify, padded_j, zj, Bigrading, SchubertDescriptor};
use crate::wedge::{substitute, WedgeVector};
use std::collections::{BTreeMap, HashMap, HashSet};

/// Default bound on the number of ordered lowering sequences per pair.
pub const DEFAULT_SPAN_BOUND: usize = 1_000_000;

/// A pair `(γ, β)` of `Π(w)` with `s = (β − γ)(Z_w)`.  Pairs with `s = 1`
/// occur; their weight space in `𝐈_w` is zero, so they never obstruct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiPair {
    pub gamma: Root,
    pub beta: Root,
    pub s: i64,
}

fn proper(x: &Chss, w: &HasseElement) -> Result<SchubertDescriptor, CoreError> {
    let d = classify(x, w)?;
    if !d.is_proper() {
        return Err(CoreError::Improper);
    }
    Ok(d)
}

/// `Π(w)`: `γ` highest in a component of `𝔫_w^+ = g_{1,≤a}`, `β` lowest in a
/// component of `g_{1,>a}`, and `γ − β` not a root.
pub fn pi_set(x: &Chss, w: &HasseElement) -> Result<Vec<PiPair>, CoreError> {
    let d = proper(x, w)?;
    let comps = Bigrading::new(x, &d.j).components();
    let gammas: Vec<Root> = comps.iter().filter(|c| c.degree() <= d.a).map(|c| c.highest).collect();
    let betas: Vec<Root> = comps.iter().filter(|c| c.degree() > d.a).map(|c| c.lowest).collect();
    let mut out = Vec::new();
    for gamma in &gammas {
        for beta in &betas {
            if !x.rs().is_root(&gamma.sub(beta)) {
                let s = zj(beta, &d.j) - zj(gamma, &d.j);
                out.push(PiPair { gamma: *gamma, beta: *beta, s });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `𝐯_w`, the wedge of `E_{-γ}` over `γ ∈ Δ(w)`.
pub fn v_w(w: &HasseElement) -> WedgeVector {
    WedgeVector::basis(w.bits, qi(1))
}

/// `ξ𝐯_w = E_{-β} ∧ (E_γ ⌟ 𝐯_w)`, a single signed basis wedge.
pub fn xi_v(x: &Chss, w: &HasseElement, pair: &PiPair) -> Result<WedgeVector, CoreError> {
    let g = x.bit_of(&pair.gamma).ok_or(CoreError::Improper)?;
    let b = x.bit_of(&pair.beta).ok_or(CoreError::Improper)?;
    let (key, s) = substitute(w.bits, g, b).ok_or(CoreError::Improper)?;
    Ok(WedgeVector::basis(key, qi(s)))
}

/// Positive roots of `g_{0,1}` as root indices.
pub fn g01_roots(x: &Chss, j: &[usize]) -> Vec<usize> {
    let rs = x.rs();
    (0..rs.n_pos())
        .filter(|&k| {
            let r = rs.root(k);
            r.coeff(x.node()) == 0 && zj(&r, j) == 1
        })
        .collect()
}

fn nonnegative(r: &Root) -> bool {
    (1..=crate::root_system::MAX_RANK).all(|k| r.coeff(k) >= 0)
}

/// Number of ordered sequences of `len` roots of `g_{0,1}` summing to
/// `target`, saturating at `u128::MAX`.
pub fn sequence_count(x: &Chss, j: &[usize], target: &Root) -> u128 {
    let len = usize::try_from(zj(target, j)).unwrap_or(0);
    let g01: Vec<Root> = g01_roots(x, j).into_iter().map(|k| x.rs().root(k)).collect();
    let mut layer: HashMap<Root, u128> = HashMap::from([(Root::ZERO, 1)]);
    for _ in 0..len {
        let mut next: HashMap<Root, u128> = HashMap::new();
        for (partial, count) in &layer {
            for e in &g01 {
                let p = partial.add(e);
                if nonnegative(&target.sub(&p)) {
                    let slot = next.entry(p).or_insert(0);
                    *slot = slot.saturating_add(*count);
                }
            }
        }
        layer = next;
    }
    layer.get(target).copied().unwrap_or(0)
}

/// A basis of the weight space of `𝐈_w` of weight `−⟨w⟩ − (β − γ)`, the
/// span of `E_{-β_s} ⋯ E_{-β_1} 𝐯_w` over every ordered sequence
/// `(β_1, …, β_s)` of roots of `g_{0,1}` with `Σ β_j = β − γ`.  Fails with
/// [`CoreError::SpanBound`] when there are more than `bound` sequences.
pub fn weight_space_span(
    x: &Chss,
    cb: &ChevalleyBasis,
    w: &HasseElement,
    pair: &PiPair,
    bound: usize,
) -> Result<Vec<WedgeVector>, CoreError> {
    let d = proper(x, w)?;
    lowered_span(x, cb, w, &d.j, &pair.beta.sub(&pair.gamma), bound)
}

/// For each step `k`, the partial sums of `k` roots of `g_{0,1}` that can
/// still be completed to `target` in the remaining `len − k` steps.
fn completable_sums(x: &Chss, g01: &[usize], target: &Root, len: usize) -> Vec<HashSet<Root>> {
    let mut out = vec![HashSet::new(); len + 1];
    out[len].insert(*target);
    for k in (0..len).rev() {
        let mut here = HashSet::new();
        for p in &out[k + 1] {
            for &e in g01 {
                let q = p.sub(&x.rs().root(e));
                if nonnegative(&q) {
                    here.insert(q);
                }
            }
        }
        out[k] = here;
    }
    out
}

/// Weight multiplicities of `𝐈_w`, the irreducible `g_0`-module generated by
/// `𝐯_w`, by Freudenthal's formula.  A weight is addressed by its depth
/// `ν` below the highest weight `λ = −⟨w⟩`.
pub struct Multiplicities<'a> {
    x: &'a Chss,
    /// `2(λ, α_k)` for every node `k`.
    lambda: Vec<i64>,
    positive: Vec<Root>,
    memo: HashMap<Root, u64>,
}

impl<'a> Multiplicities<'a> {
    pub fn new(x: &'a Chss, w: &HasseElement) -> Self {
        let rs = x.rs();
        let roots = x.roots_of(w.bits);
        let lambda = (1..=x.rank())
            .map(|k| -roots.iter().map(|g| rs.inner2(g, &Root::simple(k))).sum::<i64>())
            .collect();
        let positive = rs.positive_roots().iter().copied().filter(|r| r.coeff(x.node()) == 0).collect();
        Multiplicities { x, lambda, positive, memo: HashMap::from([(Root::ZERO, 1)]) }
    }

    fn lambda_dot(&self, r: &Root) -> i64 {
        (1..=self.x.rank()).map(|k| r.coeff(k) as i64 * self.lambda[k - 1]).sum()
    }

    fn rho_dot(&self, r: &Root) -> i64 {
        let rs = self.x.rs();
        (1..=self.x.rank())
            .map(|k| r.coeff(k) as i64 * rs.inner2(&Root::simple(k), &Root::simple(k)) / 2)
            .sum()
    }

    /// `dim 𝐈_w` in weight `λ − ν`.
    pub fn get(&mut self, nu: &Root) -> u64 {
        if let Some(&m) = self.memo.get(nu) {
            return m;
        }
        if !nonnegative(nu) || nu.coeff(self.x.node()) != 0 {
            return 0;
        }
        let rs = self.x.rs();
        let mut num: i64 = 0;
        for alpha in self.positive.clone() {
            let mut k = 1;
            loop {
                let below = nu.sub(&alpha.scale(k));
                if !nonnegative(&below) {
                    break;
                }
                let m = self.get(&below) as i64;
                let pairing = self.lambda_dot(&alpha) - rs.inner2(nu, &alpha) + k * rs.inner2(&alpha, &alpha);
                num += 2 * m * pairing;
                k += 1;
            }
        }
        let den = 2 * (self.lambda_dot(nu) + self.rho_dot(nu)) - rs.inner2(nu, nu);
        let m = if den == 0 {
            assert_eq!(num, 0, "Freudenthal recursion with vanishing denominator");
            0
        } else {
            assert!(num % den == 0 && num / den >= 0, "non-integral multiplicity {num}/{den}");
            (num / den) as u64
        };
        self.memo.insert(*nu, m);
        m
    }
}

/// A basis of the weight space of `𝐈_w` of weight `−⟨w⟩ − target`, built one
/// lowering step at a time from the spans of the previous step.  Candidates
/// are selected by independence modulo a prime, which implies independence
/// over the rationals; a weight is complete once the selection reaches the
/// Freudenthal multiplicity.  Weights where the modular selection falls
/// short are redone over the rationals.
fn lowered_span(
    x: &Chss,
    cb: &ChevalleyBasis,
    w: &HasseElement,
    j: &[usize],
    target: &Root,
    bound: usize,
) -> Result<Vec<WedgeVector>, CoreError> {
    if sequence_count(x, j, target) > bound as u128 {
        return Err(CoreError::SpanBound { bound });
    }
    let len = usize::try_from(zj(target, j)).unwrap_or(0);
    let g01 = g01_roots(x, j);
    let completable = completable_sums(x, &g01, target, len);
    let mut mult = Multiplicities::new(x, w);
    let mut layer: BTreeMap<Root, Vec<WedgeVector>> = BTreeMap::from([(Root::ZERO, vec![v_w(w)])]);
    for step in 0..len {
        let mut sources: BTreeMap<Root, Vec<(Root, usize)>> = BTreeMap::new();
        for partial in layer.keys() {
            for &e in &g01 {
                let p = partial.add(&x.rs().root(e));
                if completable[step + 1].contains(&p) {
                    sources.entry(p).or_default().push((*partial, e));
                }
            }
        }
        let mut next = BTreeMap::new();
        for (p, src) in sources {
            let dim = mult.get(&p) as usize;
            if dim == 0 {
                continue;
            }
            let generators = src.iter().flat_map(|(partial, e)| layer[partial].iter().map(move |v| (v, *e)));
            let mut modular = ModEchelon::new();
            let mut kept = Vec::new();
            for (v, e) in generators.clone() {
                if kept.len() == dim {
                    break;
                }
                let lowered = v.lower(x, cb, e);
                match modular.insert(&lowered.terms) {
                    Some(true) => kept.push(lowered),
                    Some(false) => {}
                    None => break,
                }
            }
            if kept.len() < dim {
                let mut exact = SparseEchelon::new();
                kept.clear();
                for (v, e) in generators {
                    let lowered = v.lower(x, cb, e);
                    if exact.insert(&lowered.terms) {
                        kept.push(lowered);
                    }
                }
                assert_eq!(kept.len(), dim, "weight space dimension differs from Freudenthal multiplicity");
            }
            next.insert(p, kept);
        }
        layer = next;
    }
    Ok(layer.remove(target).unwrap_or_default())
}

/// Result of the membership test for one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOutcome {
    pub pair: PiPair,
    pub span_dim: usize,
    /// `ξ𝐯_w` lies in the span, so the pair obstructs `B_w = R_w`.
    pub member: bool,
}

/// Outcome of the Schur-equality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurVerdict {
    pub equal: bool,
    pub pairs: Vec<PairOutcome>,
    pub witnesses: Vec<PiPair>,
}

/// Membership test for one pair.
pub fn pair_outcome(
    x: &Chss,
    cb: &ChevalleyBasis,
    w: &HasseElement,
    pair: &PiPair,
    bound: usize,
) -> Result<PairOutcome, CoreError> {
    let basis = weight_space_span(x, cb, w, pair, bound)?;
    let xi = xi_v(x, w, pair)?;
    Ok(PairOutcome { pair: *pair, span_dim: basis.len(), member: in_span(&basis, &xi) })
}

/// Membership over the rationals.  Independence modulo the prime settles
/// the negative case; otherwise the span is reduced exactly.
fn in_span(basis: &[WedgeVector], v: &WedgeVector) -> bool {
    let mut modular = ModEchelon::new();
    let reduced = basis.iter().all(|b| modular.insert(&b.terms).is_some());
    if reduced && modular.insert(&v.terms) == Some(true) {
        return false;
    }
    let mut exact = SparseEchelon::new();
    for b in basis {
        exact.insert(&b.terms);
    }
    exact.contains(&v.terms)
}

/// `B_w = R_w` holds iff no pair of `Π(w)` has `ξ𝐯_w` in the span.
pub fn schur_equal_with(x: &Chss, cb: &ChevalleyBasis, w: &HasseElement, bound: usize) -> Result<SchurVerdict, CoreError> {
    let pairs = pi_set(x, w)?
        .iter()
        .map(|p| pair_outcome(x, cb, w, p, bound))
        .collect::<Result<Vec<_>, _>>()?;
    let witnesses: Vec<PiPair> = pairs.iter().filter(|p| p.member).map(|p| p.pair).collect();
    Ok(SchurVerdict { equal: witnesses.is_empty(), pairs, witnesses })
}

/// [`schur_equal_with`] in the standard Chevalley basis.
pub fn schur_equal(x: &Chss, w: &HasseElement, bound: usize) -> Result<SchurVerdict, CoreError> {
    schur_equal_with(x, x.cb(), w, bound)
}

/// True for the cells where `⋀^{|w|} g₋₁` is irreducible under `g₀`: length
/// one, projective spaces `A_n/P_1`, `A_n/P_n`, odd quadrics `B_n/P_1`, and
/// even quadrics `D_n/P_1` away from the middle dimension `n − 1`.
pub fn triviality_filter(x: &Chss, w: &HasseElement) -> bool {
    let n = x.rank();
    let i = x.node();
    w.len() == 1
        || (x.family() == Family::A && (i == 1 || i == n))
        || (x.family() == Family::B && i == 1)
        || (x.family() == Family::D && i == 1 && w.len() != n - 1)
}

/// Membership test run on every `g_{0,0}`-highest weight vector of the
/// degree-zero harmonic space, not only on the extreme vectors `ξ` indexed
/// by `Π(w)`.  Returns the weights `γ − β` whose highest weight space meets
/// the span of the `𝐛.𝐯_w`.
pub fn harmonic_obstructions(x: &Chss, w: &HasseElement, bound: usize) -> Result<Vec<Root>, CoreError> {
    let d = proper(x, w)?;
    let cx = Complex::new(x, w)?;
    let mut out = Vec::new();
    for block in cx.harmonic(|(i, _)| i == 0) {
        let hw = cx.highest_weight_vectors(&block.vectors);
        if hw.is_empty() {
            continue;
        }
        let mut ech = SparseEchelon::new();
        for v in lowered_span(x, x.cb(), w, &d.j, &block.weight.neg(), bound)? {
            ech.insert(&v.terms);
        }
        let expected = ech.dim() + hw.len();
        for v in &hw {
            ech.insert(&cochain_action(x, w, v)?.terms);
        }
        if ech.dim() < expected {
            out.push(block.weight);
        }
    }
    out.sort();
    Ok(out)
}

/// Action of a degree-zero cochain `Σ c E_{-β} ⊗ e^γ` on `𝐯_w`, where `e^γ`
/// is dual to `E_{-γ}`.
fn cochain_action(x: &Chss, w: &HasseElement, v: &SparseVec<Cochain>) -> Result<WedgeVector, CoreError> {
    let mut img = WedgeVector::zero();
    for (&(value, s), c) in v {
        let gamma = s.trailing_zeros() as usize;
        let beta = x.bit_of(&x.rs().root(value).neg()).ok_or(CoreError::Improper)?;
        if let Some((key, sign)) = substitute(w.bits, gamma, beta) {
            img.add_scaled(&(c * qi(sign)), &WedgeVector::basis(key, qi(1)));
        }
    }
    Ok(img)
}

/// One `s = 2` pair compared against the explicit existence criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionRow {
    pub pair: PiPair,
    /// Linear independence of `𝐛.𝐯_w` and `ξ𝐯_w` from the direct test.
    pub direct: bool,
    /// Existence of distinct `ν, μ ∈ Δ(g_{1,a})` with `ν + β_1`, `μ + β_2`
    /// distinct roots.
    pub nu_mu: bool,
    /// The gap disjunction for the Grassmannian and Lagrangian cases, when
    /// it applies.
    pub gaps: Option<bool>,
}

/// Comparison of the full test with the test restricted to `s = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub full_fails: bool,
    pub s2_fails: bool,
    pub rows: Vec<CriterionRow>,
}

impl ReductionReport {
    pub fn reduction_holds(&self) -> bool {
        self.full_fails == self.s2_fails
    }

    pub fn criteria_agree(&self) -> bool {
        self.rows.iter().all(|r| r.direct == r.nu_mu && r.gaps.is_none_or(|g| g == r.direct))
    }
}

/// Unordered decompositions `{β_1, β_2}` of `β − γ` into roots of `g_{0,1}`.
fn two_term_decompositions(x: &Chss, j: &[usize], pair: &PiPair) -> Vec<(Root, Root)> {
    let rs = x.rs();
    let g01: Vec<Root> = g01_roots(x, j).into_iter().map(|k| rs.root(k)).collect();
    let target = pair.beta.sub(&pair.gamma);
    let mut out = Vec::new();
    for (k, b1) in g01.iter().enumerate() {
        for b2 in &g01[k..] {
            if b1.add(b2) == target {
                out.push((*b1, *b2));
            }
        }
    }
    out
}

fn nu_mu_criterion(x: &Chss, top: &[Root], b1: &Root, b2: &Root) -> bool {
    let rs = x.rs();
    top.iter().any(|nu| {
        top.iter().any(|mu| {
            nu != mu && rs.is_root(&nu.add(b1)) && rs.is_root(&mu.add(b2)) && nu.add(b1) != mu.add(b2)
        })
    })
}

/// Gap disjunctions for `s = 2` pairs with `β − γ = α_j + α_{j'}` in the
/// Grassmannian and Lagrangian cases.
fn gap_criterion(x: &Chss, d: &SchubertDescriptor, pair: &PiPair, b1: &Root, b2: &Root) -> Option<bool> {
    let (jr, js) = (simple_node(b1)?, simple_node(b2)?);
    let (jr, js) = (jr.min(js), jr.max(js));
    let pad = padded_j(x, &d.j);
    let r = pad.iter().position(|&k| k == jr)?;
    let s = pad.iter().position(|&k| k == js)?;
    let n = x.rank();
    let p = d.j.len();
    let at = |k: usize| -> i64 {
        if k > p {
            n as i64
        } else {
            pad[k] as i64
        }
    };
    let gap = |k: usize| at(k) - at(k - 1);
    let gamma_top = zj(&pair.gamma, &d.j) == d.a;
    match x.family() {
        Family::A => {
            let i = x.node() as i64;
            if gamma_top {
                let left = if (at(r) as i64) < i && i < at(r + 1) { i - at(r) > 1 } else { gap(r + 1) > 1 };
                let right = if at(s - 1) < i && i < at(s) { at(s) - i > 1 } else { gap(s) > 1 };
                Some(left || right)
            } else {
                Some(gap(r) > 1 || gap(s + 1) > 1)
            }
        }
        Family::C => {
            if gamma_top {
                Some(gap(r + 1) > 1 || gap(s + 1) > 1)
            } else {
                Some(gap(r) > 1 || gap(s) > 1)
            }
        }
        _ => None,
    }
}

fn simple_node(r: &Root) -> Option<usize> {
    let nz: Vec<usize> = (1..=crate::root_system::MAX_RANK).filter(|&k| r.coeff(k) != 0).collect();
    (nz.len() == 1 && r.coeff(nz[0]) == 1).then(|| nz[0])
}

/// Checks that the `s = 2` pairs decide `B_w = R_w` and compares each
/// one-dimensional `s = 2` weight space with the explicit criteria.
pub fn reduction_check(x: &Chss, w: &HasseElement, bound: usize) -> Result<ReductionReport, CoreError> {
    if matches!(x.family(), Family::E6 | Family::E7) {
        return Err(CoreError::NotClassical(x.lie_type()));
    }
    let d = proper(x, w)?;
    let verdict = schur_equal(x, w, bound)?;
    let top: Vec<Root> = x.g1().iter().copied().filter(|r| zj(r, &d.j) == d.a).collect();
    let mut rows = Vec::new();
    for o in verdict.pairs.iter().filter(|o| o.pair.s == 2 && o.span_dim == 1) {
        let dec = two_term_decompositions(x, &d.j, &o.pair);
        if dec.len() != 1 {
            continue;
        }
        let (b1, b2) = dec[0];
        rows.push(CriterionRow {
            pair: o.pair,
            direct: !o.member,
            nu_mu: nu_mu_criterion(x, &top, &b1, &b2),
            gaps: gap_criterion(x, &d, &o.pair, &b1, &b2),
        });
    }
    Ok(ReductionReport {
        full_fails: !verdict.equal,
        s2_fails: verdict.pairs.iter().any(|o| o.pair.s == 2 && o.member),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigidity::hplus_catalog;
    use crate::root_system::LieType;
    use crate::schubert::schubert_from_aj;

    #[test]
    fn pi_set_examples() {
        let x = Chss::new(LieType::a(5), 3).unwrap();
        let w = schubert_from_aj(&x, 1, &[1, 4]).unwrap().element;
        let pi = pi_set(&x, &w).unwrap();
        assert!(!pi.is_empty());
        let a14 = Root::simple(1).add(&Root::simple(4));
        assert!(pi.iter().any(|p| p.beta.sub(&p.gamma) == a14 && p.s == 2));
        for p in &pi {
            assert!(p.s >= 1);
            assert!(!x.rs().is_root(&p.gamma.sub(&p.beta)));
            if p.s == 1 {
                assert!(weight_space_span(&x, x.cb(), &w, p, DEFAULT_SPAN_BOUND).unwrap().is_empty());
            }
        }
        let full = HasseElement::from_bits(x.full_bits());
        assert!(matches!(pi_set(&x, &full), Err(CoreError::Improper)));
    }

    #[test]
    fn xi_and_span_weights() {
        let x = Chss::new(LieType::c(4), 4).unwrap();
        for w in x.enumerate() {
            let Ok(pi) = pi_set(&x, &w) else { continue };
            let base = x.roots_of(w.bits).iter().fold(Root::ZERO, |acc, r| acc.sub(r));
            for p in pi {
                let want = base.sub(&p.beta.sub(&p.gamma));
                let xi = xi_v(&x, &w, &p).unwrap();
                assert_eq!(xi.len(), 1);
                assert_eq!(xi.weights(&x), vec![want]);
                for v in weight_space_span(&x, x.cb(), &w, &p, DEFAULT_SPAN_BOUND).unwrap() {
                    assert!(v.weights(&x).iter().all(|wt| *wt == want));
                }
            }
        }
    }

    fn naive_sequences(x: &Chss, j: &[usize], target: &Root) -> Vec<Vec<usize>> {
        let g01 = g01_roots(x, j);
        let len = zj(target, j) as usize;
        let mut out = Vec::new();
        let mut stack = vec![Vec::new()];
        while let Some(seq) = stack.pop() {
            if seq.len() == len {
                let sum = seq.iter().fold(Root::ZERO, |acc, &e| acc.add(&x.rs().root(e)));
                if sum == *target {
                    out.push(seq);
                }
                continue;
            }
            for &e in &g01 {
                let mut s = seq.clone();
                s.push(e);
                stack.push(s);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn layered_span_matches_sequence_by_sequence_application() {
        for x in [
            Chss::new(LieType::a(5), 3).unwrap(),
            Chss::new(LieType::c(4), 4).unwrap(),
            Chss::new(LieType::d(5), 5).unwrap(),
        ] {
            for w in x.enumerate() {
                let Ok(pi) = pi_set(&x, &w) else { continue };
                let d = classify(&x, &w).unwrap();
                for p in pi {
                    let target = p.beta.sub(&p.gamma);
                    let seqs = naive_sequences(&x, &d.j, &target);
                    assert_eq!(sequence_count(&x, &d.j, &target), seqs.len() as u128);
                    let mut naive = SparseEchelon::new();
                    for seq in &seqs {
                        let v = seq.iter().fold(v_w(&w), |v, &e| v.lower(&x, x.cb(), e));
                        naive.insert(&v.terms);
                    }
                    let layered = weight_space_span(&x, x.cb(), &w, &p, DEFAULT_SPAN_BOUND).unwrap();
                    assert_eq!(layered.len(), naive.dim());
                    assert_eq!(Multiplicities::new(&x, &w).get(&target) as usize, naive.dim());
                    let member = naive.contains(&xi_v(&x, &w, &p).unwrap().terms);
                    assert_eq!(pair_outcome(&x, x.cb(), &w, &p, DEFAULT_SPAN_BOUND).unwrap().member, member);
                    assert!(layered.iter().all(|v| naive.contains(&v.terms)));
                }
            }
        }
    }

    #[test]
    fn doubled_simple_root_has_a_single_sequence() {
        let x = Chss::new(LieType::c(4), 4).unwrap();
        let mut seen = 0;
        for w in x.enumerate() {
            let Ok(d) = classify(&x, &w) else { continue };
            if !d.is_proper() {
                continue;
            }
            for p in pi_set(&x, &w).unwrap() {
                let diff = p.beta.sub(&p.gamma);
                if let Some(&j) = d.j.iter().find(|&&j| diff == Root::simple(j).scale(2)) {
                    let aj = x.rs().index_of(&Root::simple(j)).unwrap();
                    assert_eq!(naive_sequences(&x, &d.j, &diff), vec![vec![aj, aj]]);
                    assert_eq!(sequence_count(&x, &d.j, &diff), 1);
                    seen += 1;
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn non_adjacent_pair_gives_one_dimensional_span() {
        let x = Chss::new(LieType::a(5), 3).unwrap();
        let w = schubert_from_aj(&x, 1, &[1, 4]).unwrap().element;
        let a14 = Root::simple(1).add(&Root::simple(4));
        let p = pi_set(&x, &w).unwrap().into_iter().find(|p| p.beta.sub(&p.gamma) == a14).unwrap();
        assert_eq!(weight_space_span(&x, x.cb(), &w, &p, DEFAULT_SPAN_BOUND).unwrap().len(), 1);
    }

    #[test]
    fn span_bound_reports_indeterminate() {
        let x = Chss::new(LieType::a(5), 3).unwrap();
        let w = schubert_from_aj(&x, 1, &[1, 4]).unwrap().element;
        let p = pi_set(&x, &w).unwrap()[0];
        assert!(matches!(weight_space_span(&x, x.cb(), &w, &p, 0), Err(CoreError::SpanBound { .. })));
    }

    #[test]
    fn triviality_cases() {
        let b3 = Chss::new(LieType::b(3), 1).unwrap();
        assert!(b3.enumerate().iter().all(|w| triviality_filter(&b3, w)));
        let d4 = Chss::new(LieType::d(4), 1).unwrap();
        for w in d4.enumerate() {
            assert_eq!(triviality_filter(&d4, &w), w.len() != 3);
        }
        let a4 = Chss::new(LieType::a(4), 2).unwrap();
        for w in a4.enumerate() {
            assert_eq!(triviality_filter(&a4, &w), w.len() == 1);
        }
    }

    #[test]
    fn hplus_cells_are_schur_rigid_in_small_cases() {
        let mut spaces = Vec::new();
        for n in 2..=5 {
            spaces.extend(Chss::all_for_type(LieType::a(n)));
        }
        spaces.push(Chss::new(LieType::c(4), 4).unwrap());
        spaces.push(Chss::new(LieType::d(5), 5).unwrap());
        spaces.push(Chss::new(LieType::d(5), 1).unwrap());
        for x in &spaces {
            for e in hplus_catalog(x).unwrap().into_iter().filter(|e| e.verdict.h_plus) {
                assert!(!triviality_filter(x, &e.element), "{x} {:?}", e.descriptor);
                let v = schur_equal(x, &e.element, DEFAULT_SPAN_BOUND).unwrap();
                assert!(v.equal, "{x} {:?}: {:?}", e.descriptor, v.witnesses);
                let r = reduction_check(x, &e.element, DEFAULT_SPAN_BOUND).unwrap();
                assert!(r.reduction_holds(), "{x} {:?}", e.descriptor);
                assert!(r.criteria_agree(), "{x} {:?}: {:?}", e.descriptor, r.rows);
            }
        }
    }

    fn degree_zero_comparison(x: &Chss, w: &HasseElement) -> (Vec<Root>, Vec<Root>) {
        let mut pi: Vec<Root> = pi_set(x, w).unwrap().iter().map(|p| p.gamma.sub(&p.beta)).collect();
        pi.sort();
        let mut extra = crate::cohomology::h1_degree0_summands(x, w).unwrap();
        for r in &pi {
            let k = extra.iter().position(|e| e == r).expect("Π weight missing from harmonics");
            extra.remove(k);
        }
        (pi, extra)
    }

    #[test]
    fn pi_weights_are_harmonic_and_extras_are_g0_roots() {
        let mut spaces: Vec<Chss> = (2..=5).flat_map(|n| Chss::all_for_type(LieType::a(n))).collect();
        spaces.push(Chss::new(LieType::c(4), 4).unwrap());
        spaces.push(Chss::new(LieType::d(5), 5).unwrap());
        for x in &spaces {
            for w in x.enumerate() {
                let Ok(d) = classify(x, &w) else { continue };
                if !d.is_proper() {
                    continue;
                }
                let (_, extra) = degree_zero_comparison(x, &w);
                for e in extra {
                    assert!(x.rs().is_root(&e) && e.coeff(x.node()) == 0 && zj(&e, &d.j) < 0, "{x} {d:?} {e:?}");
                }
            }
        }
    }

    #[test]
    fn degree_zero_harmonics_exceed_pi_in_gr_2_5() {
        let x = Chss::new(LieType::a(4), 2).unwrap();
        let w = schubert_from_aj(&x, 1, &[1, 3, 4]).unwrap().element;
        let (pi, extra) = degree_zero_comparison(&x, &w);
        assert_eq!(pi.len(), 4);
        assert_eq!(extra, vec![Root::simple(3).add(&Root::simple(4)).neg()]);
    }

    #[test]
    fn harmonic_test_refines_pi_test() {
        let mut spaces: Vec<Chss> = (2..=5).flat_map(|n| Chss::all_for_type(LieType::a(n))).collect();
        spaces.push(Chss::new(LieType::c(3), 3).unwrap());
        spaces.push(Chss::new(LieType::c(4), 4).unwrap());
        spaces.push(Chss::new(LieType::d(5), 5).unwrap());
        spaces.push(Chss::new(LieType::d(5), 1).unwrap());
        let mut extra_obstructions = Vec::new();
        for x in &spaces {
            for e in hplus_catalog(x).unwrap() {
                let v = schur_equal(x, &e.element, DEFAULT_SPAN_BOUND).unwrap();
                let h = harmonic_obstructions(x, &e.element, DEFAULT_SPAN_BOUND).unwrap();
                for p in &v.witnesses {
                    assert!(h.contains(&p.gamma.sub(&p.beta)), "{x} {:?}", e.descriptor);
                }
                if e.verdict.h_plus {
                    assert!(h.is_empty(), "{x} {:?}: {h:?}", e.descriptor);
                }
                if v.equal && !h.is_empty() {
                    extra_obstructions.push((x.to_string(), e.descriptor.a, e.descriptor.j.clone()));
                }
            }
        }
        assert_eq!(
            extra_obstructions,
            vec![("C4/P4".to_string(), 1, vec![1, 3]), ("C4/P4".to_string(), 2, vec![1, 3])]
        );
    }

    #[test]
    fn verdicts_survive_random_sign_flips() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5c4u64);
        let mut obstructed = 0;
        for x in [
            Chss::new(LieType::a(4), 2).unwrap(),
            Chss::new(LieType::c(3), 3).unwrap(),
            Chss::new(LieType::d(5), 5).unwrap(),
        ] {
            for w in x.enumerate() {
                let Ok(base) = schur_equal(&x, &w, DEFAULT_SPAN_BOUND) else { continue };
                obstructed += usize::from(!base.equal);
                for _ in 0..20 {
                    let signs: Vec<i64> = (0..2 * x.rs().n_pos()).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
                    let cb = x.cb().rescaled(&signs);
                    let flipped = schur_equal_with(&x, &cb, &w, DEFAULT_SPAN_BOUND).unwrap();
                    assert_eq!(flipped, base);
                }
            }
        }
        assert!(obstructed > 0);
    }
}

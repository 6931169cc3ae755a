//! Sparse vectors in `⋀^k g₋₁`.  A basis key is a bitset over `Δ(g₁)`: the
//! set `{γ_1 < ⋯ < γ_k}` (bit order) stands for `E_{-γ_1} ∧ ⋯ ∧ E_{-γ_k}`.

use crate::chevalley::ChevalleyBasis;
use crate::hasse::{Bits, Chss};
use crate::linalg::{axpy, qi, SparseVec, Q};
use crate::root_system::Root;
use num_traits::Zero;

/// A vector of `⋀^k g₋₁` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WedgeVector {
    pub terms: SparseVec<Bits>,
}

fn parity(k: u32) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn between(key: Bits, a: usize, b: usize) -> u32 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    if hi <= lo + 1 {
        return 0;
    }
    (key >> (lo + 1) & ((1u128 << (hi - lo - 1)) - 1)).count_ones()
}

impl WedgeVector {
    pub fn zero() -> Self {
        WedgeVector::default()
    }

    /// A single basis wedge with coefficient `c`.
    pub fn basis(key: Bits, c: Q) -> Self {
        let mut terms = SparseVec::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        WedgeVector { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Q, other: &WedgeVector) {
        axpy(&mut self.terms, c, &other.terms);
    }

    /// Weights of the terms, `−Σ` of the roots in each key.
    pub fn weights(&self, x: &Chss) -> Vec<Root> {
        self.terms
            .keys()
            .map(|k| x.roots_of(*k).iter().fold(Root::ZERO, |acc, r| acc.sub(r)))
            .collect()
    }

    /// Action of `E_{-ε}` for a positive root `ε` of `g₀` (given by root
    /// index), extended to the wedge by the Leibniz rule.
    pub fn lower(&self, x: &Chss, cb: &ChevalleyBasis, eps_index: usize) -> WedgeVector {
        let rs = x.rs();
        let neg_eps = rs.neg_index(eps_index);
        let eps = rs.root(eps_index);
        let g1 = x.g1();
        let mut out = WedgeVector::zero();
        for (&key, c) in &self.terms {
            for b in (0..g1.len()).filter(|&b| key >> b & 1 == 1) {
                let Some(b2) = x.bit_of(&g1[b].add(&eps)) else { continue };
                if key >> b2 & 1 == 1 {
                    continue;
                }
                let nu = rs.neg_index(rs.index_of(&g1[b]).expect("root"));
                let n = cb.n(neg_eps, nu);
                let rest = key & !(1u128 << b);
                let s = parity(between(rest, b, b2)) * n;
                let mut t = SparseVec::new();
                t.insert(rest | 1 << b2, c * qi(s));
                axpy(&mut out.terms, &qi(1), &t);
            }
        }
        out
    }
}

/// `E_{-β} ∧ (E_γ ⌟ 𝐯)` on a single basis wedge, up to the positive
/// Killing normalisation of the contraction; `None` when it vanishes.
pub fn substitute(key: Bits, gamma_bit: usize, beta_bit: usize) -> Option<(Bits, i64)> {
    if key >> gamma_bit & 1 == 0 {
        return None;
    }
    let removed = key & !(1u128 << gamma_bit);
    if removed >> beta_bit & 1 == 1 {
        return None;
    }
    let s1 = parity((key & ((1u128 << gamma_bit) - 1)).count_ones());
    let s2 = parity((removed & ((1u128 << beta_bit) - 1)).count_ones());
    Some((removed | 1 << beta_bit, s1 * s2))
}

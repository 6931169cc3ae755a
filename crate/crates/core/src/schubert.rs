//! The `(a, J)` classification of Schubert varieties in a compact Hermitian
//! symmetric space, together with the `(Z_i, Z_J)` bigrading.

use crate::error::CoreError;
use crate::hasse::{Bits, Chss, HasseElement};
use crate::root_system::{Family, Root};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// The invariants `(a, J)` of a Schubert variety with its dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchubertDescriptor {
    pub a: i64,
    pub j: Vec<usize>,
    pub dim: usize,
    pub smooth: bool,
}

impl SchubertDescriptor {
    pub fn new(a: i64, j: Vec<usize>, dim: usize) -> Self {
        let mut j = j;
        j.sort_unstable();
        SchubertDescriptor { a, smooth: a == 0, j, dim }
    }

    /// Proper means `J ≠ ∅`: neither a point nor the whole space.
    pub fn is_proper(&self) -> bool {
        !self.j.is_empty()
    }
}

/// Smoothness criterion: a Schubert variety is smooth exactly when `a = 0`.
pub fn is_smooth(d: &SchubertDescriptor) -> bool {
    d.a == 0
}

/// `α(Z_J)`, the sum of the coefficients of `α` over the nodes of `J`.
pub fn zj(alpha: &Root, j: &[usize]) -> i64 {
    alpha.grade(j)
}

/// `J(w)`: nodes `j ∈ I_𝔭` whose negative simple root space fails to
/// stabilize `n_w`, i.e. some `α ∈ Δ(w)` has `α + α_j ∈ Δ(g₁) ∖ Δ(w)`.
pub fn j_of(x: &Chss, bits: Bits) -> Vec<usize> {
    x.ip()
        .into_iter()
        .filter(|&j| {
            let aj = Root::simple(j);
            x.roots_of(bits).iter().any(|r| match x.bit_of(&r.add(&aj)) {
                Some(b) => bits >> b & 1 == 0,
                None => false,
            })
        })
        .collect()
}

/// `a(w) = max_{α∈Δ(w)} α(Z_J)`.
pub fn a_of(x: &Chss, bits: Bits, j: &[usize]) -> i64 {
    x.roots_of(bits).iter().map(|r| zj(r, j)).max().unwrap_or(0)
}

/// The set `{α ∈ Δ(g₁) : α(Z_J) ≤ a}`.
pub fn bits_le(x: &Chss, a: i64, j: &[usize]) -> Bits {
    x.g1()
        .iter()
        .enumerate()
        .filter(|(_, r)| zj(r, j) <= a)
        .fold(0, |acc, (b, _)| acc | 1 << b)
}

/// Computes `(a, J)` for `w`, checking the reconstruction
/// `Δ(w) = {α ∈ Δ(g₁) : α(Z_J) ≤ a}`.  Improper cells give `(0, ∅)`.
pub fn classify(x: &Chss, w: &HasseElement) -> Result<SchubertDescriptor, CoreError> {
    let dim = w.len();
    if w.bits == 0 || w.bits == x.full_bits() {
        return Ok(SchubertDescriptor::new(0, vec![], dim));
    }
    let j = j_of(x, w.bits);
    let a = a_of(x, w.bits, &j);
    if bits_le(x, a, &j) != w.bits {
        return Err(CoreError::Reconstruction { a, j });
    }
    Ok(SchubertDescriptor::new(a, j, dim))
}

/// The Schubert variety `{α : α(Z_J) ≤ a}` together with its canonical
/// descriptor; `canonical` records whether the descriptor is `(a, J)` itself.
#[derive(Clone, Debug)]
pub struct Realized {
    pub element: HasseElement,
    pub descriptor: SchubertDescriptor,
    pub canonical: bool,
}

/// Builds `w(J, a)` with `Δ(w) = {α ∈ Δ(g₁) : α(Z_J) ≤ a}`.
pub fn schubert_from_aj(x: &Chss, a: i64, j: &[usize]) -> Result<Realized, CoreError> {
    let ip = x.ip();
    let mut j: Vec<usize> = j.to_vec();
    j.sort_unstable();
    j.dedup();
    if let Some(&bad) = j.iter().find(|k| !ip.contains(k)) {
        return Err(CoreError::NodeOutOfRange(bad));
    }
    let element = HasseElement::from_bits(bits_le(x, a, &j));
    let descriptor = classify(x, &element)?;
    let canonical = descriptor.a == a && descriptor.j == j;
    Ok(Realized { element, descriptor, canonical })
}

/// `α̃(Z_J)` computed from the highest root.
pub fn alpha_tilde_zj(x: &Chss, j: &[usize]) -> i64 {
    zj(&x.rs().highest_root(), j)
}

/// Case list for `α̃(Z_J)` in the classical spaces, used as a cross-check of
/// [`alpha_tilde_zj`].  Returns `None` for exceptional types.
pub fn alpha_tilde_zj_cases(x: &Chss, j: &[usize]) -> Option<i64> {
    let p = j.len() as i64;
    let n = x.rank();
    match x.family() {
        Family::A => Some(p),
        Family::B | Family::C => Some(2 * p),
        Family::D => {
            let special: Vec<usize> = [1, n - 1, n].into_iter().filter(|&k| k != x.node()).collect();
            let hits = special.iter().filter(|k| j.contains(k)).count();
            Some(if hits == 0 {
                2 * p
            } else if hits == special.len() {
                2 * p - 2
            } else {
                2 * p - 1
            })
        }
        Family::E6 | Family::E7 => None,
    }
}

/// Descriptor of the dual variety: `J* = ψ(J)` and `a* = α̃(Z_J) − a − 1`.
pub fn dual_descriptor(x: &Chss, d: &SchubertDescriptor) -> Result<SchubertDescriptor, CoreError> {
    if !d.is_proper() {
        return Err(CoreError::Improper);
    }
    let jstar: Vec<usize> = d.j.iter().map(|&j| x.psi(j)).collect();
    let a = alpha_tilde_zj(x, &d.j) - d.a - 1;
    Ok(SchubertDescriptor::new(a, jstar, x.dim() - d.dim))
}

/// Descriptor of the conjugate by a diagram automorphism:
/// `(a, J) ↦ (a, φ(J))`.
pub fn conjugate_descriptor(d: &SchubertDescriptor, phi: &[usize]) -> SchubertDescriptor {
    SchubertDescriptor::new(d.a, d.j.iter().map(|&j| phi[j - 1]).collect(), d.dim)
}

/// `j_0 = 0`, `j_1 < … < j_p` the elements of `J`, `j_{p+1} = 1 + max I_𝔭`.
pub fn padded_j(x: &Chss, j: &[usize]) -> Vec<usize> {
    let top = 1 + x.ip().into_iter().max().unwrap_or(0);
    let mut v = Vec::with_capacity(j.len() + 2);
    v.push(0);
    v.extend_from_slice(j);
    v.push(top);
    v
}

/// For `A_n/P_i`: the integer `q` with `j_q < i < j_{q+1}`.
pub fn q_of(i: usize, j: &[usize]) -> usize {
    j.iter().filter(|&&k| k < i).count()
}

/// Realizability of `(a, J)` for a proper Schubert variety.  Classical types
/// use the row criteria; exceptional types use enumeration membership.
pub fn is_realizable(x: &Chss, a: i64, j: &[usize]) -> bool {
    let mut j: Vec<usize> = j.to_vec();
    j.sort_unstable();
    j.dedup();
    let ip = x.ip();
    if j.is_empty() || a < 0 || j.iter().any(|k| !ip.contains(k)) {
        return false;
    }
    let n = x.rank();
    let i = x.node();
    let p = j.len() as i64;
    match x.family() {
        Family::A => {
            let q = q_of(i, &j) as i64;
            let bound = (i as i64 - 1).min(n as i64 - i as i64);
            a <= bound && [(2 * a, a), (2 * a + 1, a), (2 * a + 1, a + 1), (2 * a + 2, a + 1)].contains(&(p, q))
        }
        Family::B => a <= 1 && p == 1,
        Family::C => a < n as i64 && (p == a || p == a + 1),
        Family::D if i == 1 => {
            let pair = j == [n - 1, n];
            match a {
                0 => p == 1 || pair,
                1 => (p == 1 && j[0] <= n - 2) || pair,
                _ => false,
            }
        }
        Family::D => {
            let j = if i == n - 1 {
                let mut s: Vec<usize> = j.iter().map(|&k| if k == n { n - 1 } else if k == n - 1 { n } else { k }).collect();
                s.sort_unstable();
                s
            } else {
                j
            };
            d_spinor_rows(n, a, &j)
        }
        Family::E6 | Family::E7 => realizable_by_enumeration(x, a, &j),
    }
}

/// The two rows for `D_n/P_n` (`J ⊂ {1,…,n−1}`, `j_{p+1} = n`).
fn d_spinor_rows(n: usize, a: i64, j: &[usize]) -> bool {
    let p = j.len() as i64;
    let has = j.contains(&(n - 1));
    let mut pad = vec![0usize];
    pad.extend_from_slice(j);
    pad.push(n);
    let gap = |s: i64| -> Option<i64> {
        if s >= 1 && (s as usize) < pad.len() {
            Some(pad[s as usize] as i64 - pad[s as usize - 1] as i64)
        } else {
            None
        }
    };
    let ceil_half = |m: i64| (m + 1).div_euclid(2);
    let row1 = a <= n as i64 - 3
        && ((p == a && !has) || (p == a + 1 && has))
        && gap(ceil_half(p + 1)).is_some_and(|g| g >= 2);
    let row2 = a <= n as i64 - 4
        && ((p == a + 1 && !has) || (p == a + 2 && has))
        && gap(ceil_half(p) + 1).is_some_and(|g| g >= 2);
    row1 || row2
}

/// Oracle: `(a, J)` occurs as the descriptor of some enumerated element.
pub fn realizable_by_enumeration(x: &Chss, a: i64, j: &[usize]) -> bool {
    let w = HasseElement::from_bits(bits_le(x, a, j));
    w.bits != 0
        && w.bits != x.full_bits()
        && classify(x, &w).map(|d| d.a == a && d.j == j).unwrap_or(false)
}

/// One `g_{0,0}`-irreducible component `g_{1,A}` of `g_{1,c}`: the roots of
/// `Δ(g₁)` sharing the multidegree `A` over the nodes of `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub multidegree: Vec<i64>,
    pub roots: Vec<Root>,
    pub highest: Root,
    pub lowest: Root,
}

impl Component {
    pub fn degree(&self) -> i64 {
        self.multidegree.iter().sum()
    }
}

/// The `(Z_i, Z_J)` bigrading attached to a node set `J`.
#[derive(Clone, Debug)]
pub struct Bigrading<'a> {
    pub x: &'a Chss,
    pub j: Vec<usize>,
}

impl<'a> Bigrading<'a> {
    pub fn new(x: &'a Chss, j: &[usize]) -> Self {
        let mut j = j.to_vec();
        j.sort_unstable();
        Bigrading { x, j }
    }

    /// `(α(Z_i), α(Z_J))`.
    pub fn bidegree(&self, alpha: &Root) -> (i64, i64) {
        (alpha.coeff(self.x.node()), zj(alpha, &self.j))
    }

    /// Simple roots of `g_{0,0}`: the nodes outside `J ∪ {i}`.
    pub fn g00_nodes(&self) -> Vec<usize> {
        self.x.ip().into_iter().filter(|k| !self.j.contains(k)).collect()
    }

    /// All components of `g₁`, sorted by multidegree.
    pub fn components(&self) -> Vec<Component> {
        let mut groups: BTreeMap<Vec<i64>, Vec<Root>> = BTreeMap::new();
        for r in self.x.g1() {
            let key: Vec<i64> = self.j.iter().map(|&k| r.coeff(k)).collect();
            groups.entry(key).or_default().push(*r);
        }
        let g00 = self.g00_nodes();
        groups
            .into_iter()
            .map(|(multidegree, roots)| {
                let in_comp = |r: &Root| roots.contains(r);
                let highest = *roots
                    .iter()
                    .find(|r| g00.iter().all(|&k| !in_comp(&r.add(&Root::simple(k)))))
                    .expect("component has a maximal root");
                let lowest = *roots
                    .iter()
                    .find(|r| g00.iter().all(|&k| !in_comp(&r.sub(&Root::simple(k)))))
                    .expect("component has a minimal root");
                Component { multidegree, roots, highest, lowest }
            })
            .collect()
    }

    /// Components of `g_{1,c}`.
    pub fn components_of_degree(&self, c: i64) -> Vec<Component> {
        self.components().into_iter().filter(|k| k.degree() == c).collect()
    }
}

//! Compact Hermitian symmetric spaces and their Hasse diagrams.
//!
//! An element `w` of the Hasse diagram is stored through its inversion set
//! `Δ(w) = wΔ⁻ ∩ Δ⁺`, a lower order ideal of `Δ(g₁)`, encoded as a bitset
//! over the roots of `Δ(g₁)` listed in root order.

use crate::chevalley::ChevalleyBasis;
use crate::error::CoreError;
use crate::root_system::{Family, LieType, Root, RootSystem};
use std::collections::{HashSet, VecDeque};
use std::fmt;

/// Bitset over `Δ(g₁)`.
pub type Bits = u128;

/// Largest `|Δ(g₁)|` representable by [`Bits`].
pub const MAX_G1: usize = 128;

/// An element of `W^𝔭`, represented by `Δ(w)`.  An optional word records
/// the reduced expression the element was built from.
#[derive(Clone, Debug)]
pub struct HasseElement {
    pub bits: Bits,
    pub word: Option<Vec<usize>>,
}

impl HasseElement {
    pub fn from_bits(bits: Bits) -> Self {
        HasseElement { bits, word: None }
    }

    /// `|w| = |Δ(w)|`, the dimension of the Schubert variety.
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, bit: usize) -> bool {
        self.bits >> bit & 1 == 1
    }
}

impl PartialEq for HasseElement {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for HasseElement {}

impl std::hash::Hash for HasseElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state)
    }
}

/// A compact Hermitian symmetric space `G/P_i`.
#[derive(Clone, Debug)]
pub struct Chss {
    rs: RootSystem,
    cb: ChevalleyBasis,
    node: usize,
    g1: Vec<Root>,
    /// `bit_of_root[k]` is the bit of positive root `k` when it lies in `Δ(g₁)`.
    bit_of_root: Vec<Option<usize>>,
    /// Image of every root index under `w⁰_𝔭`.
    w0p: Vec<usize>,
    w0p_word: Vec<usize>,
}

impl fmt::Display for Chss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/P{}", self.rs.lie_type(), self.node)
    }
}

impl Chss {
    /// Builds the space, checking that the node is cominuscule (coefficient
    /// one in the highest root).
    pub fn new(lie_type: LieType, node: usize) -> Result<Self, CoreError> {
        if node == 0 || node > lie_type.rank {
            return Err(CoreError::NodeOutOfRange(node));
        }
        let rs = RootSystem::new(lie_type);
        if rs.highest_root().coeff(node) != 1 {
            return Err(CoreError::NotCominuscule { lie_type, node });
        }
        let g1: Vec<Root> = rs
            .positive_roots()
            .iter()
            .copied()
            .filter(|r| r.coeff(node) == 1)
            .collect();
        if g1.len() > MAX_G1 {
            return Err(CoreError::TooManyRoots(g1.len()));
        }
        let mut bit_of_root = vec![None; rs.n_pos()];
        for (b, r) in g1.iter().enumerate() {
            bit_of_root[rs.index_of(r).expect("root")] = Some(b);
        }
        let cb = ChevalleyBasis::new(&rs);
        let mut chss = Chss { rs, cb, node, g1, bit_of_root, w0p: Vec::new(), w0p_word: Vec::new() };
        chss.build_w0p();
        Ok(chss)
    }

    /// Parses `"E6/P6"`, `"A10/P5"` and the like.
    pub fn parse(s: &str) -> Result<Self, CoreError> {
        let (t, p) = s
            .split_once('/')
            .ok_or_else(|| CoreError::Parse(format!("expected TYPE/Pk, got {s:?}")))?;
        let lie_type: LieType = t.trim().parse()?;
        let node: usize = p
            .trim()
            .trim_start_matches(['P', 'p'])
            .parse()
            .map_err(|_| CoreError::Parse(format!("bad node in {s:?}")))?;
        Chss::new(lie_type, node)
    }

    /// Every compact Hermitian symmetric space of the given type, one per
    /// cominuscule node.
    pub fn all_for_type(lie_type: LieType) -> Vec<Chss> {
        (1..=lie_type.rank).filter_map(|i| Chss::new(lie_type, i).ok()).collect()
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn cb(&self) -> &ChevalleyBasis {
        &self.cb
    }

    pub fn lie_type(&self) -> LieType {
        self.rs.lie_type()
    }

    pub fn family(&self) -> Family {
        self.rs.lie_type().family
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// The marked node `i`.
    pub fn node(&self) -> usize {
        self.node
    }

    /// Nodes of `I_𝔭`, all nodes except the marked one.
    pub fn ip(&self) -> Vec<usize> {
        (1..=self.rank()).filter(|&j| j != self.node).collect()
    }

    /// The roots of `Δ(g₁)` in bit order.
    pub fn g1(&self) -> &[Root] {
        &self.g1
    }

    /// `dim G/P = |Δ(g₁)|`.
    pub fn dim(&self) -> usize {
        self.g1.len()
    }

    pub fn full_bits(&self) -> Bits {
        if self.g1.len() == MAX_G1 {
            Bits::MAX
        } else {
            (1 << self.g1.len()) - 1
        }
    }

    /// Bit position of a root of `Δ(g₁)`.
    pub fn bit_of(&self, r: &Root) -> Option<usize> {
        self.rs.index_of(r).and_then(|k| self.bit_of_root.get(k).copied().flatten())
    }

    /// The roots of a bitset, in bit order.
    pub fn roots_of(&self, bits: Bits) -> Vec<Root> {
        (0..self.g1.len()).filter(|&b| bits >> b & 1 == 1).map(|b| self.g1[b]).collect()
    }

    /// Bitset of a collection of roots of `Δ(g₁)`.
    pub fn bits_of(&self, roots: &[Root]) -> Option<Bits> {
        roots.iter().try_fold(0, |acc, r| self.bit_of(r).map(|b| acc | 1 << b))
    }

    /// True when `Δ(g₁)` minus the set is stable under adding simple roots
    /// of `I_𝔭`, the order-ideal condition.
    pub fn is_ideal(&self, bits: Bits) -> bool {
        let ip = self.ip();
        for (b, r) in self.g1.iter().enumerate() {
            if bits >> b & 1 == 1 {
                continue;
            }
            for &j in &ip {
                if let Some(c) = self.bit_of(&r.add(&Root::simple(j))) {
                    if bits >> c & 1 == 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All elements of `W^𝔭`, sorted by length and then by bitset.
    pub fn enumerate(&self) -> Vec<HasseElement> {
        let ip = self.ip();
        // Lower covers of each root inside Δ(g₁).
        let below: Vec<Vec<usize>> = self
            .g1
            .iter()
            .map(|r| ip.iter().filter_map(|&j| self.bit_of(&r.sub(&Root::simple(j)))).collect())
            .collect();
        let mut seen: HashSet<Bits> = HashSet::new();
        let mut queue = VecDeque::from([0 as Bits]);
        seen.insert(0);
        while let Some(cur) = queue.pop_front() {
            for (b, lows) in below.iter().enumerate() {
                if cur >> b & 1 == 0 && lows.iter().all(|&l| cur >> l & 1 == 1) {
                    let next = cur | 1 << b;
                    if seen.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
        }
        let mut out: Vec<Bits> = seen.into_iter().collect();
        out.sort_by_key(|&b| (b.count_ones(), b));
        out.into_iter().map(HasseElement::from_bits).collect()
    }

    /// `Δ(w)` for `w = σ_{i1} ⋯ σ_{ik}`: the positive roots `α` with
    /// `w⁻¹α < 0`.
    pub fn delta_from_word(&self, word: &[usize]) -> Result<HasseElement, CoreError> {
        for &k in word {
            if k == 0 || k > self.rank() {
                return Err(CoreError::NodeOutOfRange(k));
            }
        }
        let mut bits: Bits = 0;
        for (idx, alpha) in self.rs.positive_roots().iter().enumerate() {
            let mut r = *alpha;
            for &k in word {
                r = self.rs.simple_reflect(k, &r);
            }
            if !r.is_positive() {
                match self.bit_of_root[idx] {
                    Some(b) => bits |= 1 << b,
                    None => return Err(CoreError::NotMinimalCoset { word: word.to_vec() }),
                }
            }
        }
        Ok(HasseElement { bits, word: Some(word.to_vec()) })
    }

    /// A reduced word for `w`, obtained by peeling left descents.
    pub fn reduced_word(&self, w: &HasseElement) -> Vec<usize> {
        let mut set: HashSet<Root> = self.roots_of(w.bits).into_iter().collect();
        let mut word = Vec::with_capacity(set.len());
        while !set.is_empty() {
            let k = (1..=self.rank())
                .find(|&k| set.contains(&Root::simple(k)))
                .expect("a nonempty inversion set contains a simple root");
            set.remove(&Root::simple(k));
            set = set.iter().map(|r| self.rs.simple_reflect(k, r)).collect();
            word.push(k);
        }
        word
    }

    fn build_w0p(&mut self) {
        let ip = self.ip();
        let mut word: Vec<usize> = Vec::new();
        let apply = |word: &[usize], r: &Root, rs: &RootSystem| {
            word.iter().rev().fold(*r, |acc, &k| rs.simple_reflect(k, &acc))
        };
        loop {
            let next = ip
                .iter()
                .copied()
                .find(|&j| apply(&word, &Root::simple(j), &self.rs).is_positive());
            match next {
                Some(j) => word.push(j),
                None => break,
            }
        }
        let n_roots = 2 * self.rs.n_pos();
        self.w0p = (0..n_roots)
            .map(|k| {
                let img = apply(&word, &self.rs.root(k), &self.rs);
                self.rs.index_of(&img).expect("Weyl group permutes roots")
            })
            .collect();
        self.w0p_word = word;
    }

    /// The longest element `w⁰_𝔭` of the Weyl group of `g₀`, acting on a root.
    pub fn w0p(&self, r: &Root) -> Root {
        let k = self.rs.index_of(r).expect("w0p acts on roots");
        self.rs.root(self.w0p[k])
    }

    /// A reduced word of `w⁰_𝔭`.
    pub fn w0p_word(&self) -> &[usize] {
        &self.w0p_word
    }

    /// The involution `j ↦ j*` of `I_𝔭` with `α_{j*} = −w⁰_𝔭(α_j)`; the
    /// marked node is fixed.
    pub fn psi(&self, j: usize) -> usize {
        if j == self.node {
            return j;
        }
        let img = self.w0p(&Root::simple(j)).neg();
        (1..=self.rank()).find(|&k| img == Root::simple(k)).expect("ψ permutes simple roots of I_𝔭")
    }

    /// The dual element: `Δ(w*) = w⁰_𝔭(Δ(g₁) ∖ Δ(w))`.
    pub fn dual(&self, w: &HasseElement) -> HasseElement {
        let comp = self.full_bits() & !w.bits;
        let imgs: Vec<Root> = self.roots_of(comp).iter().map(|r| self.w0p(r)).collect();
        HasseElement::from_bits(self.bits_of(&imgs).expect("w⁰_𝔭 preserves Δ(g₁)"))
    }

    /// Conjugation by a diagram automorphism `φ` (`phi[j-1]` is the image of
    /// node `j`).  The result lives on the space with marked node `φ(i)`.
    pub fn conjugate(&self, w: &HasseElement, phi: &[usize]) -> Result<(Chss, HasseElement), CoreError> {
        if !self.rs.diagram_automorphisms().iter().any(|p| p == phi) {
            return Err(CoreError::NotAutomorphism(phi.to_vec()));
        }
        let target = Chss::new(self.lie_type(), phi[self.node - 1])?;
        let imgs: Vec<Root> = self.roots_of(w.bits).iter().map(|r| r.permute(phi)).collect();
        let bits = target.bits_of(&imgs).expect("automorphism maps Δ(g₁) onto Δ(g₁)");
        Ok((target, HasseElement::from_bits(bits)))
    }
}

//! Finite root systems of types A, B, C, D, E6 and E7.
//!
//! Roots are stored as integer coefficient vectors over the simple roots,
//! numbered as in Bourbaki's tables.  The invariant form is the symmetrized
//! Cartan form normalized so that long roots have square length 2; it is
//! stored doubled (`form2 = 2(·,·)`) so that every entry is an integer.

use crate::error::CoreError;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// Largest rank supported by the fixed-width [`Root`] representation.
pub const MAX_RANK: usize = 12;

/// Cartan–Killing family of a simple Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
}

/// A simple Lie algebra type such as `A4` or `E7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    /// Validates the rank bounds of the family (B: n≥2, C: n≥3, D: n≥4).
    pub fn new(family: Family, rank: usize) -> Result<Self, CoreError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E6 => rank == 6,
            Family::E7 => rank == 7,
        };
        if !ok || rank > MAX_RANK {
            return Err(CoreError::InvalidRank { family, rank });
        }
        Ok(LieType { family, rank })
    }

    pub fn a(n: usize) -> Self {
        Self::new(Family::A, n).expect("valid A rank")
    }
    pub fn b(n: usize) -> Self {
        Self::new(Family::B, n).expect("valid B rank")
    }
    pub fn c(n: usize) -> Self {
        Self::new(Family::C, n).expect("valid C rank")
    }
    pub fn d(n: usize) -> Self {
        Self::new(Family::D, n).expect("valid D rank")
    }
    pub fn e6() -> Self {
        LieType { family: Family::E6, rank: 6 }
    }
    pub fn e7() -> Self {
        LieType { family: Family::E7, rank: 7 }
    }

    /// Edges of the Dynkin diagram as unordered node pairs (1-based).
    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A | Family::B | Family::C => (1..n).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n));
                e
            }
            Family::E6 => vec![(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
            Family::E7 => vec![(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A{}", self.rank),
            Family::B => write!(f, "B{}", self.rank),
            Family::C => write!(f, "C{}", self.rank),
            Family::D => write!(f, "D{}", self.rank),
            Family::E6 => write!(f, "E6"),
            Family::E7 => write!(f, "E7"),
        }
    }
}

impl FromStr for LieType {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || CoreError::Parse(format!("unrecognized Lie type `{s}`"));
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        let family = match (head, rank) {
            ('A', _) => Family::A,
            ('B', _) => Family::B,
            ('C', _) => Family::C,
            ('D', _) => Family::D,
            ('E', 6) => Family::E6,
            ('E', 7) => Family::E7,
            _ => return Err(bad()),
        };
        LieType::new(family, rank)
    }
}

/// A root written in the basis of simple roots.  Unused trailing
/// coordinates are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    c: [i8; MAX_RANK],
}

impl Root {
    pub const ZERO: Root = Root { c: [0; MAX_RANK] };

    /// Builds a root-lattice vector from its coefficients.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        assert!(coeffs.len() <= MAX_RANK, "too many coefficients");
        let mut c = [0i8; MAX_RANK];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = i8::try_from(v).expect("root coefficient out of range");
        }
        Root { c }
    }

    /// The simple root with the given 1-based node label.
    pub fn simple(node: usize) -> Self {
        let mut c = [0i8; MAX_RANK];
        c[node - 1] = 1;
        Root { c }
    }

    /// Coefficient of the simple root `node` (1-based).
    #[inline]
    pub fn coeff(&self, node: usize) -> i64 {
        self.c[node - 1] as i64
    }

    /// Coefficients truncated to the given rank.
    pub fn coeffs(&self, rank: usize) -> Vec<i64> {
        self.c[..rank].iter().map(|&v| v as i64).collect()
    }

    pub fn height(&self) -> i64 {
        self.c.iter().map(|&v| v as i64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    /// True when every coefficient is nonnegative and some coefficient is positive.
    pub fn is_positive(&self) -> bool {
        self.c.iter().all(|&v| v >= 0) && !self.is_zero()
    }

    pub fn add(&self, other: &Root) -> Root {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(other.c.iter()) {
            *a += *b;
        }
        Root { c }
    }

    pub fn sub(&self, other: &Root) -> Root {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(other.c.iter()) {
            *a -= *b;
        }
        Root { c }
    }

    pub fn neg(&self) -> Root {
        let mut c = self.c;
        for a in c.iter_mut() {
            *a = -*a;
        }
        Root { c }
    }

    pub fn scale(&self, k: i64) -> Root {
        let mut c = self.c;
        for a in c.iter_mut() {
            *a = i8::try_from(*a as i64 * k).expect("root coefficient out of range");
        }
        Root { c }
    }

    /// Sum of the coefficients over a set of nodes: the eigenvalue of the
    /// grading element attached to that set.
    pub fn grade(&self, nodes: &[usize]) -> i64 {
        nodes.iter().map(|&j| self.coeff(j)).sum()
    }

    /// Applies a permutation of the nodes (`perm[j-1]` is the image of node `j`).
    pub fn permute(&self, perm: &[usize]) -> Root {
        let mut c = [0i8; MAX_RANK];
        for (j, &img) in perm.iter().enumerate() {
            c[img - 1] = self.c[j];
        }
        Root { c }
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.c.iter().rposition(|&v| v != 0).map_or(1, |p| p + 1);
        write!(f, "(")?;
        for (k, v) in self.c[..last].iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A root system together with its invariant form and root index.
///
/// Root indices: `0..n_pos` are the positive roots in height-then-lexicographic
/// order, and `n_pos + k` is the negative of positive root `k`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Vec<Vec<i64>>,
    form2: Vec<Vec<i64>>,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl RootSystem {
    /// Builds the positive roots by closure under simple-root strings.
    pub fn new(lie_type: LieType) -> Self {
        let n = lie_type.rank;
        let mut form2 = vec![vec![0i64; n]; n];
        let long = |i: usize| -> bool {
            match lie_type.family {
                Family::B => i < n,
                Family::C => i == n,
                _ => true,
            }
        };
        for i in 1..=n {
            form2[i - 1][i - 1] = if long(i) { 4 } else { 2 };
        }
        for (i, j) in lie_type.edges() {
            // 2(αi,αj) for adjacent nodes: −2 between long roots, −1 between
            // short roots of C_n, −2 across the double bond.
            let v = match (long(i), long(j)) {
                (true, true) => -2,
                (false, false) => -1,
                _ => -2,
            };
            form2[i - 1][j - 1] = v;
            form2[j - 1][i - 1] = v;
        }
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * form2[i][j] / form2[i][i]).collect())
            .collect();

        let mut positive: Vec<Root> = (1..=n).map(Root::simple).collect();
        let mut known: std::collections::HashSet<Root> = positive.iter().copied().collect();
        let mut layer = positive.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 1..=n {
                    let ai = Root::simple(i);
                    let mut p = 0;
                    let mut down = beta.sub(&ai);
                    while known.contains(&down) {
                        p += 1;
                        down = down.sub(&ai);
                    }
                    let pair: i64 = (1..=n).map(|j| beta.coeff(j) * cartan[i - 1][j - 1]).sum();
                    let q = p - pair;
                    if q > 0 {
                        let up = beta.add(&ai);
                        if known.insert(up) {
                            next.push(up);
                        }
                    }
                }
            }
            positive.extend(next.iter().copied());
            layer = next;
        }
        positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        let n_pos = positive.len();
        let mut index = HashMap::with_capacity(2 * n_pos);
        for (k, r) in positive.iter().enumerate() {
            index.insert(*r, k);
            index.insert(r.neg(), n_pos + k);
        }
        RootSystem { lie_type, cartan, form2, positive, index }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    /// Cartan matrix entry `⟨α_j, α_i^∨⟩ = 2(α_i,α_j)/(α_i,α_i)` (1-based nodes).
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    /// The symmetrizer entry `d_i = (α_i,α_i)/2`, making `d_i·A_ij` symmetric.
    pub fn symmetrizer(&self, i: usize) -> Ratio<i64> {
        Ratio::new(self.form2[i - 1][i - 1], 4)
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn n_pos(&self) -> usize {
        self.positive.len()
    }

    /// Root with the given index (negative roots follow the positive ones).
    pub fn root(&self, idx: usize) -> Root {
        let n = self.positive.len();
        if idx < n {
            self.positive[idx]
        } else {
            self.positive[idx - n].neg()
        }
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    /// Index of the negative of the root with index `idx`.
    pub fn neg_index(&self, idx: usize) -> usize {
        let n = self.positive.len();
        if idx < n {
            idx + n
        } else {
            idx - n
        }
    }

    /// Twice the invariant form, an integer on the root lattice.
    pub fn inner2(&self, a: &Root, b: &Root) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 1..=n {
            let ai = a.coeff(i);
            if ai == 0 {
                continue;
            }
            for j in 1..=n {
                s += ai * b.coeff(j) * self.form2[i - 1][j - 1];
            }
        }
        s
    }

    /// The invariant form `(α, β)`, long roots having square length 2.
    pub fn inner(&self, a: &Root, b: &Root) -> Ratio<i64> {
        Ratio::new(self.inner2(a, b), 2)
    }

    /// `⟨β, α^∨⟩ = 2(β,α)/(α,α)`, an integer whenever `α` is a root.
    pub fn pairing(&self, beta: &Root, alpha: &Root) -> i64 {
        let num = 2 * self.inner2(beta, alpha);
        let den = self.inner2(alpha, alpha);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// The reflection `σ_α(β) = β − ⟨β, α^∨⟩ α`.
    pub fn reflect(&self, alpha: &Root, beta: &Root) -> Root {
        beta.sub(&alpha.scale(self.pairing(beta, alpha)))
    }

    /// Reflection in the simple root `node`.
    pub fn simple_reflect(&self, node: usize, beta: &Root) -> Root {
        self.reflect(&Root::simple(node), beta)
    }

    /// The highest root (the unique positive root of maximal height).
    pub fn highest_root(&self) -> Root {
        let top = *self.positive.last().expect("nonempty root system");
        debug_assert!((1..=self.rank()).all(|i| !self.is_root(&top.add(&Root::simple(i)))));
        top
    }

    /// Largest `p` with `β − pα` a root (the length of the α-string below β).
    pub fn string_down(&self, alpha: &Root, beta: &Root) -> i64 {
        let mut p = 0;
        let mut cur = beta.sub(alpha);
        while self.is_root(&cur) {
            p += 1;
            cur = cur.sub(alpha);
        }
        p
    }

    /// Dynkin-diagram adjacency between distinct nodes.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.form2[i - 1][j - 1] != 0
    }

    /// All permutations of the nodes preserving the Cartan matrix.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut perm = vec![0usize; n];
        let mut used = vec![false; n + 1];
        self.extend_automorphism(0, &mut perm, &mut used, &mut out);
        out
    }

    fn extend_automorphism(
        &self,
        k: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = self.rank();
        if k == n {
            out.push(perm.clone());
            return;
        }
        for img in 1..=n {
            if used[img] {
                continue;
            }
            let ok = (0..=k).all(|j| {
                let pj = if j == k { img } else { perm[j] };
                self.cartan[k][j] == self.cartan[img - 1][pj - 1]
                    && self.cartan[j][k] == self.cartan[pj - 1][img - 1]
            });
            if ok {
                perm[k] = img;
                used[img] = true;
                self.extend_automorphism(k + 1, perm, used, out);
                used[img] = false;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(t: LieType) -> usize {
        RootSystem::new(t).n_pos()
    }

    #[test]
    fn positive_root_counts_match_closed_forms() {
        for n in 1..=9 {
            assert_eq!(count(LieType::a(n)), n * (n + 1) / 2);
        }
        for n in 2..=9 {
            assert_eq!(count(LieType::b(n)), n * n);
        }
        for n in 3..=9 {
            assert_eq!(count(LieType::c(n)), n * n);
        }
        for n in 4..=9 {
            assert_eq!(count(LieType::d(n)), n * (n - 1));
        }
        assert_eq!(count(LieType::e6()), 36);
        assert_eq!(count(LieType::e7()), 63);
    }

    #[test]
    fn b3_counts_match_orthogonal_dimension() {
        // dim so(7) = 21, so (21 − 3)/2 positive roots
        assert_eq!(count(LieType::b(3)), (21 - 3) / 2);
        assert_eq!(count(LieType::e7()), (133 - 7) / 2);
    }

    #[test]
    fn inner_product_examples() {
        let a2 = RootSystem::new(LieType::a(2));
        let (a1, a2r) = (Root::simple(1), Root::simple(2));
        assert!(a2.inner(&a1, &a2r) < Ratio::from_integer(0));
        assert_eq!(
            a2.inner(&a1, &a1.add(&a2r)),
            a2.inner(&a1, &a1) + a2.inner(&a1, &a2r)
        );
        let b3 = RootSystem::new(LieType::b(3));
        let (s, l) = (Root::simple(3), Root::simple(1));
        assert_eq!(b3.inner(&s, &s) / b3.inner(&l, &l), Ratio::new(1, 2));
    }

    #[test]
    fn highest_roots() {
        let a5 = RootSystem::new(LieType::a(5));
        assert_eq!(a5.highest_root().coeffs(5), vec![1; 5]);
        let c3 = RootSystem::new(LieType::c(3));
        assert_eq!(c3.highest_root().coeffs(3), vec![2, 2, 1]);
        let e6 = RootSystem::new(LieType::e6());
        assert_eq!(e6.highest_root().height(), 11);
        assert_eq!(e6.highest_root().coeffs(6), vec![1, 2, 2, 3, 2, 1]);
        let e7 = RootSystem::new(LieType::e7());
        assert_eq!(e7.highest_root().coeffs(7), vec![2, 2, 3, 4, 3, 2, 1]);
    }

    #[test]
    fn reflections_are_involutions_permuting_roots() {
        for t in [LieType::b(3), LieType::c(4), LieType::d(5), LieType::e6()] {
            let rs = RootSystem::new(t);
            let all: Vec<Root> = (0..2 * rs.n_pos()).map(|k| rs.root(k)).collect();
            for a in &all {
                for b in &all {
                    let r = rs.reflect(a, b);
                    assert!(rs.is_root(&r));
                    assert_eq!(rs.reflect(a, &r), *b);
                    assert_eq!(rs.inner2(&r, &r), rs.inner2(b, b));
                }
            }
        }
    }

    #[test]
    fn form_is_weyl_invariant_and_positive() {
        let rs = RootSystem::new(LieType::c(4));
        let all: Vec<Root> = (0..2 * rs.n_pos()).map(|k| rs.root(k)).collect();
        for a in &all {
            assert!(rs.inner2(a, a) > 0);
            for i in 1..=4 {
                for b in &all {
                    let (sa, sb) = (rs.simple_reflect(i, a), rs.simple_reflect(i, b));
                    assert_eq!(rs.inner2(&sa, &sb), rs.inner2(a, b));
                }
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["A1", "A10", "B3", "C4", "D5", "E6", "E7"] {
            let t: LieType = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert!("B1".parse::<LieType>().is_err());
        assert!("C2".parse::<LieType>().is_err());
        assert!("D3".parse::<LieType>().is_err());
        assert!("E8".parse::<LieType>().is_err());
        assert!("X3".parse::<LieType>().is_err());
    }

    #[test]
    fn diagram_automorphism_groups() {
        let sizes = [
            (LieType::a(1), 1),
            (LieType::a(4), 2),
            (LieType::b(4), 1),
            (LieType::c(4), 1),
            (LieType::d(4), 6),
            (LieType::d(5), 2),
            (LieType::e6(), 2),
            (LieType::e7(), 1),
        ];
        for (t, k) in sizes {
            assert_eq!(RootSystem::new(t).diagram_automorphisms().len(), k, "{t}");
        }
    }
}

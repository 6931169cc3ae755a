//! Chevalley basis structure constants.
//!
//! Constants are produced by the extraspecial-pair algorithm: for every
//! positive non-simple root `ξ` the extraspecial pair `(α, β)` (with `α` the
//! smallest positive root such that `ξ − α` is a positive root) receives the
//! positive sign `N(α,β) = p + 1`.  All remaining constants follow from
//!
//! * `N(β,α) = −N(α,β)` and `N(−α,−β) = −N(α,β)`,
//! * `N(α,β)/(γ,γ) = N(β,γ)/(α,α) = N(γ,α)/(β,β)` whenever `α+β+γ = 0`,
//! * the four-term relation for `α+β+γ+δ = 0` with no opposite pair.
//!
//! The Cartan part follows the convention `[E_α, E_−α] = H_α` (the coroot).

use crate::root_system::{Root, RootSystem};
use num_rational::Ratio;
use num_traits::Zero;

const NONE: u32 = u32::MAX;

/// Structure constants `N(α, β)` of a Chevalley basis, indexed by root index.
#[derive(Clone, Debug)]
pub struct ChevalleyBasis {
    n_roots: usize,
    sum: Vec<u32>,
    table: Vec<i32>,
}

impl ChevalleyBasis {
    /// Runs the extraspecial-pair algorithm on the given root system.
    pub fn new(rs: &RootSystem) -> Self {
        let n_pos = rs.n_pos();
        let n_roots = 2 * n_pos;
        let mut sum = vec![NONE; n_roots * n_roots];
        for a in 0..n_roots {
            for b in 0..n_roots {
                let s = rs.root(a).add(&rs.root(b));
                if let Some(k) = rs.index_of(&s) {
                    sum[a * n_roots + b] = k as u32;
                }
            }
        }
        let mut pos = vec![0i64; n_pos * n_pos];
        let mut filled = vec![false; n_pos * n_pos];

        // Pairs of positive roots grouped by their sum; sums are visited in
        // height order so every referenced constant is already known.
        let mut by_sum: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_pos];
        for a in 0..n_pos {
            for b in (a + 1)..n_pos {
                let s = sum[a * n_roots + b];
                if s != NONE {
                    by_sum[s as usize].push((a, b));
                }
            }
        }
        for s in 0..n_pos {
            let pairs = &by_sum[s];
            if pairs.is_empty() {
                continue;
            }
            let (ea, eb) = *pairs.iter().min_by_key(|(a, _)| *a).expect("nonempty");
            let p = rs.string_down(&rs.root(ea), &rs.root(eb));
            pos[ea * n_pos + eb] = p + 1;
            pos[eb * n_pos + ea] = -(p + 1);
            filled[ea * n_pos + eb] = true;
            filled[eb * n_pos + ea] = true;
            let xi = rs.root(s);
            let (alpha, beta) = (rs.root(ea), rs.root(eb));
            let n_ab = p + 1;
            for &(x, y) in pairs {
                if x == ea {
                    continue;
                }
                let (xi1, xi2) = (rs.root(x), rs.root(y));
                let lookup = |u: &Root, v: &Root| -> i64 {
                    general(rs, &pos, &filled, n_pos, u, v)
                };
                let mut acc = Ratio::<i64>::zero();
                let d1 = beta.sub(&xi1);
                if rs.is_root(&d1) {
                    let t = lookup(&beta, &xi1.neg()) * lookup(&alpha, &xi2.neg());
                    acc += Ratio::new(t, rs.inner2(&d1, &d1));
                }
                let d2 = alpha.sub(&xi1);
                if rs.is_root(&d2) {
                    let t = lookup(&xi1.neg(), &alpha) * lookup(&beta, &xi2.neg());
                    acc += Ratio::new(t, rs.inner2(&d2, &d2));
                }
                let val = acc * Ratio::from_integer(rs.inner2(&xi, &xi)) / Ratio::from_integer(n_ab);
                assert!(val.is_integer(), "non-integral structure constant");
                let v = val.to_integer();
                pos[x * n_pos + y] = v;
                pos[y * n_pos + x] = -v;
                filled[x * n_pos + y] = true;
                filled[y * n_pos + x] = true;
            }
        }

        let mut table = vec![0i32; n_roots * n_roots];
        for a in 0..n_roots {
            for b in 0..n_roots {
                if sum[a * n_roots + b] != NONE {
                    let v = general(rs, &pos, &filled, n_pos, &rs.root(a), &rs.root(b));
                    table[a * n_roots + b] = v as i32;
                }
            }
        }
        ChevalleyBasis { n_roots, sum, table }
    }

    /// `N(a, b)` for root indices `a`, `b`; zero when `a + b` is not a root.
    #[inline]
    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.table[a * self.n_roots + b] as i64
    }

    /// Index of the root `a + b`, if it is a root.
    #[inline]
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let s = self.sum[a * self.n_roots + b];
        (s != NONE).then_some(s as usize)
    }

    /// `[E_a, E_b] = N(a,b) E_{a+b}` as `(index, coefficient)` when nonzero
    /// and `a + b` is a root.
    #[inline]
    pub fn bracket(&self, a: usize, b: usize) -> Option<(usize, i64)> {
        self.sum_index(a, b).map(|s| (s, self.n(a, b)))
    }

    /// The constants obtained after rescaling `E_k ↦ signs[k]·E_k` with
    /// `signs[k] = ±1`.
    pub fn rescaled(&self, signs: &[i64]) -> ChevalleyBasis {
        assert_eq!(signs.len(), self.n_roots);
        let mut table = self.table.clone();
        for a in 0..self.n_roots {
            for b in 0..self.n_roots {
                if let Some(s) = self.sum_index(a, b) {
                    let f = signs[a] * signs[b] * signs[s];
                    table[a * self.n_roots + b] *= f as i32;
                }
            }
        }
        ChevalleyBasis { n_roots: self.n_roots, sum: self.sum.clone(), table }
    }

    pub fn n_roots(&self) -> usize {
        self.n_roots
    }
}

/// Constant for arbitrary roots `u`, `v` with `u + v` a root, from the
/// positive-pair table.
fn general(rs: &RootSystem, pos: &[i64], filled: &[bool], n_pos: usize, u: &Root, v: &Root) -> i64 {
    let s = u.add(v);
    if !rs.is_root(&s) {
        return 0;
    }
    let get = |a: &Root, b: &Root| -> i64 {
        let (ia, ib) = (rs.index_of(a).unwrap(), rs.index_of(b).unwrap());
        assert!(filled[ia * n_pos + ib], "structure constant requested before it was computed");
        pos[ia * n_pos + ib]
    };
    match (u.is_positive(), v.is_positive()) {
        (true, true) => get(u, v),
        (false, false) => -get(&u.neg(), &v.neg()),
        _ => {
            let z = s.neg();
            let norm = |r: &Root| rs.inner2(r, r);
            let val = if v.is_positive() == z.is_positive() {
                Ratio::new(norm(&z), norm(u)) * general(rs, pos, filled, n_pos, v, &z)
            } else {
                Ratio::new(norm(&z), norm(v)) * general(rs, pos, filled, n_pos, &z, u)
            };
            assert!(val.is_integer(), "non-integral rotated structure constant");
            val.to_integer()
        }
    }
}

/// The full Lie algebra on the basis `E_α` (root indices `0..2N`) followed
/// by the simple coroots `h_1, …, h_n` (indices `2N..2N+n`).
pub struct LieAlgebra<'a> {
    pub rs: &'a RootSystem,
    pub cb: &'a ChevalleyBasis,
}

impl<'a> LieAlgebra<'a> {
    pub fn dim(&self) -> usize {
        self.cb.n_roots() + self.rs.rank()
    }

    /// Bracket of two basis vectors as a sparse combination of basis vectors.
    pub fn bracket_basis(&self, x: usize, y: usize) -> Vec<(usize, Ratio<i64>)> {
        let nr = self.cb.n_roots();
        match (x < nr, y < nr) {
            (true, true) => {
                if x == self.rs.neg_index(y) {
                    let a = self.rs.root(x);
                    let na = self.rs.inner2(&a, &a);
                    (1..=self.rs.rank())
                        .filter(|&i| a.coeff(i) != 0)
                        .map(|i| {
                            let ai = Root::simple(i);
                            let c = Ratio::new(a.coeff(i) * self.rs.inner2(&ai, &ai), na);
                            (nr + i - 1, c)
                        })
                        .collect()
                } else {
                    self.cb
                        .bracket(x, y)
                        .map(|(s, c)| vec![(s, Ratio::from_integer(c))])
                        .unwrap_or_default()
                }
            }
            (false, true) => {
                let i = x - nr + 1;
                let c = self.rs.pairing(&self.rs.root(y), &Root::simple(i));
                if c == 0 {
                    vec![]
                } else {
                    vec![(y, Ratio::from_integer(c))]
                }
            }
            (true, false) => self
                .bracket_basis(y, x)
                .into_iter()
                .map(|(k, c)| (k, -c))
                .collect(),
            (false, false) => vec![],
        }
    }

    /// Bracket of sparse vectors.
    pub fn bracket(
        &self,
        u: &[(usize, Ratio<i64>)],
        v: &[(usize, Ratio<i64>)],
    ) -> Vec<(usize, Ratio<i64>)> {
        let mut acc: std::collections::BTreeMap<usize, Ratio<i64>> = Default::default();
        for (i, a) in u {
            for (j, b) in v {
                for (k, c) in self.bracket_basis(*i, *j) {
                    *acc.entry(k).or_insert_with(Ratio::zero) += *a * *b * c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// The first basis triple on which the Jacobi identity fails, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        let one = Ratio::from_integer(1);
        let basis = |k: usize| [(k, one)];
        for x in 0..d {
            for y in 0..d {
                let xy = self.bracket(&basis(x), &basis(y));
                for z in 0..d {
                    let yz = self.bracket(&basis(y), &basis(z));
                    let zx = self.bracket(&basis(z), &basis(x));
                    let mut total: std::collections::BTreeMap<usize, Ratio<i64>> = Default::default();
                    for (k, c) in self
                        .bracket(&basis(x), &yz)
                        .into_iter()
                        .chain(self.bracket(&basis(y), &zx))
                        .chain(self.bracket(&basis(z), &xy))
                    {
                        *total.entry(k).or_insert_with(Ratio::zero) += c;
                    }
                    if total.values().any(|c| !c.is_zero()) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::LieType;

    fn types() -> Vec<LieType> {
        vec![
            LieType::a(1),
            LieType::a(3),
            LieType::b(2),
            LieType::b(3),
            LieType::c(3),
            LieType::c(4),
            LieType::d(4),
            LieType::d(5),
            LieType::e6(),
        ]
    }

    #[test]
    fn antisymmetry_and_string_lengths() {
        for t in types().into_iter().chain([LieType::e7()]) {
            let rs = RootSystem::new(t);
            let cb = ChevalleyBasis::new(&rs);
            for a in 0..cb.n_roots() {
                for b in 0..cb.n_roots() {
                    if cb.sum_index(a, b).is_some() {
                        let n = cb.n(a, b);
                        assert_eq!(n, -cb.n(b, a));
                        let p = rs.string_down(&rs.root(a), &rs.root(b));
                        assert_eq!(n.abs(), p + 1, "{t}: |N| ≠ p+1");
                        let (na, nb) = (rs.neg_index(a), rs.neg_index(b));
                        assert_eq!(cb.n(na, nb), -n);
                    }
                }
            }
        }
    }

    #[test]
    fn small_examples() {
        let a2 = RootSystem::new(LieType::a(2));
        let cb = ChevalleyBasis::new(&a2);
        let (i1, i2) = (a2.index_of(&Root::simple(1)).unwrap(), a2.index_of(&Root::simple(2)).unwrap());
        // α₂ precedes α₁ in the root order, so (α₂, α₁) is the extraspecial pair.
        assert_eq!(cb.n(i2, i1), 1);
        assert_eq!(cb.n(i1, i2), -1);
        let b2 = RootSystem::new(LieType::b(2));
        let cb = ChevalleyBasis::new(&b2);
        let s = b2.index_of(&Root::simple(2)).unwrap();
        let l = b2.index_of(&Root::from_coeffs(&[1, 1])).unwrap();
        assert_eq!(cb.n(s, l).abs(), 2);
    }

    #[test]
    fn jacobi_identity_on_all_basis_triples() {
        for t in types() {
            let rs = RootSystem::new(t);
            let cb = ChevalleyBasis::new(&rs);
            let g = LieAlgebra { rs: &rs, cb: &cb };
            assert_eq!(g.jacobi_violation(), None, "{t}");
        }
    }
}

//! Exact linear algebra over the rationals: dense row reduction, kernels and
//! an incremental sparse echelon basis for span-membership tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Arbitrary-precision rational scalar.
pub type Q = BigRational;

/// `n / d` as a rational.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut().skip(col) {
            *v = &*v * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..ncols {
                    let delta = &f * &m[row][c];
                    if !delta.is_zero() {
                        m[r][c] = &m[r][c] - delta;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank of a dense matrix given by rows.
pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// A basis of `{x : A x = 0}` where `A` is given by rows of length `ncols`.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Sparse vector keyed by an ordered basis label.
pub type SparseVec<K> = BTreeMap<K, Q>;

/// `target += c · v`, pruning zeros.
pub fn axpy<K: Ord + Clone>(target: &mut SparseVec<K>, c: &Q, v: &SparseVec<K>) {
    for (k, x) in v {
        let e = target.entry(k.clone()).or_insert_with(Q::zero);
        *e = &*e + c * x;
        if e.is_zero() {
            target.remove(k);
        }
    }
}

/// Converts sparse column vectors into dense rows over the union of keys.
pub fn dense_rows<K: Ord + Clone>(columns: &[SparseVec<K>]) -> Vec<Vec<Q>> {
    let mut keys: BTreeMap<K, usize> = BTreeMap::new();
    for c in columns {
        for k in c.keys() {
            let next = keys.len();
            keys.entry(k.clone()).or_insert(next);
        }
    }
    let mut rows = vec![vec![Q::zero(); columns.len()]; keys.len()];
    for (j, c) in columns.iter().enumerate() {
        for (k, v) in c {
            rows[keys[k]][j] = v.clone();
        }
    }
    rows
}

/// Incrementally built echelon basis of a span of sparse vectors.  Each
/// stored row has a distinct leading key with coefficient one.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        SparseEchelon { rows: BTreeMap::new() }
    }

    /// Dimension of the span.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The remainder of `v` after elimination against the stored rows.
    /// Stored rows vanish at every other pivot, so one pass suffices.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let hits: Vec<(&SparseVec<K>, Q)> =
            v.iter().filter_map(|(k, c)| self.rows.get(k).map(|row| (row, -c.clone()))).collect();
        let mut out = v.clone();
        for (row, c) in hits {
            axpy(&mut out, &c, row);
        }
        out
    }

    /// Adds `v` to the span; returns `true` when it was independent.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let r = self.reduce(v);
        let Some((lead, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = c.recip();
        let r: SparseVec<K> = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        for row in self.rows.values_mut() {
            if let Some(f) = row.get(&lead).cloned() {
                axpy(row, &-f, &r);
            }
        }
        self.rows.insert(lead, r);
        true
    }

    /// The stored basis rows.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// The prime `2^61 − 1` used for modular elimination.
pub const PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, PRIME - 2)
}

/// Reduction of a rational modulo [`PRIME`]; `None` when the denominator is
/// divisible by it.
pub fn reduce_mod(x: &Q) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let n = (x.numer() % &p + &p) % &p;
    let d = (x.denom() % &p + &p) % &p;
    let (n, d) = (u64::try_from(n).ok()?, u64::try_from(d).ok()?);
    (d != 0).then(|| mulmod(n, invmod(d)))
}

/// Row echelon basis modulo [`PRIME`].  Vectors independent modulo the prime
/// are independent over the rationals.
#[derive(Clone, Debug, Default)]
pub struct ModEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, u64>>,
}

impl<K: Ord + Clone> ModEchelon<K> {
    pub fn new() -> Self {
        ModEchelon { rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &SparseVec<K>) -> Option<BTreeMap<K, u64>> {
        let mut v: BTreeMap<K, u64> = v
            .iter()
            .map(|(k, x)| reduce_mod(x).map(|r| (k.clone(), r)))
            .collect::<Option<_>>()?;
        v.retain(|_, x| *x != 0);
        let mut from: Option<K> = None;
        loop {
            let hit = match &from {
                None => v.keys().find(|k| self.rows.contains_key(*k)),
                Some(f) => v
                    .range((std::ops::Bound::Excluded(f.clone()), std::ops::Bound::Unbounded))
                    .map(|(k, _)| k)
                    .find(|k| self.rows.contains_key(*k)),
            };
            let Some(k) = hit.cloned() else { return Some(v) };
            let c = PRIME - v[&k];
            for (key, x) in &self.rows[&k] {
                let e = v.entry(key.clone()).or_insert(0);
                *e = (*e + mulmod(c, *x)) % PRIME;
            }
            v.retain(|_, x| *x != 0);
            from = Some(k);
        }
    }

    /// Adds `v`; `Some(true)` when it is independent modulo the prime, `None`
    /// when `v` has a denominator divisible by the prime.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Option<bool> {
        let mut r = self.reduce(v)?;
        let Some((lead, c)) = r.iter().next().map(|(k, c)| (k.clone(), *c)) else { return Some(false) };
        let inv = invmod(c);
        for x in r.values_mut() {
            *x = mulmod(*x, inv);
        }
        self.rows.insert(lead, r);
        Some(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
    }

    fn mul(a: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
        a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).fold(Q::zero(), |s, t| s + t)).collect()
    }

    #[test]
    fn small_kernel() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a, 3), 1);
        let k = nullspace(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mul(&a, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn modular_reduction_of_rationals() {
        assert_eq!(reduce_mod(&q(1, 2)).map(|r| mulmod(r, 2)), Some(1));
        assert_eq!(reduce_mod(&qi(-1)), Some(PRIME - 1));
        assert_eq!(reduce_mod(&q(1, PRIME as i64)), None);
    }

    #[test]
    fn sparse_membership() {
        let mut e: SparseEchelon<u32> = SparseEchelon::new();
        let v1: SparseVec<u32> = [(1, qi(1)), (2, qi(1))].into_iter().collect();
        let v2: SparseVec<u32> = [(2, qi(1)), (3, qi(2))].into_iter().collect();
        assert!(e.insert(&v1));
        assert!(e.insert(&v2));
        let mut s = v1.clone();
        axpy(&mut s, &q(-3, 2), &v2);
        assert!(!e.insert(&s));
        assert!(e.contains(&s));
        let w: SparseVec<u32> = [(3, qi(1))].into_iter().collect();
        assert!(!e.contains(&w));
        assert_eq!(e.dim(), 2);
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..4, 12), ncols in 1usize..5) {
            let nrows = entries.len() / ncols;
            let a: Vec<Vec<Q>> = (0..nrows).map(|r| (0..ncols).map(|c| qi(entries[r * ncols + c])).collect()).collect();
            let k = nullspace(&a, ncols);
            prop_assert_eq!(rank(&a, ncols) + k.len(), ncols);
            for v in &k {
                prop_assert!(mul(&a, v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn echelon_rank_matches_dense(entries in proptest::collection::vec(-2i64..3, 16)) {
            let rows: Vec<Vec<Q>> = entries.chunks(4).map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
            let mut e: SparseEchelon<usize> = SparseEchelon::new();
            for r in &rows {
                let sv: SparseVec<usize> = r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
                e.insert(&sv);
            }
            prop_assert_eq!(e.dim(), rank(&rows, 4));
        }

        #[test]
        fn modular_independence_implies_rational_independence(
            entries in proptest::collection::vec(-3i64..4, 30),
        ) {
            let rows: Vec<Vec<Q>> = entries.chunks(6).map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
            let sparse = |r: &[Q]| -> SparseVec<usize> {
                r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
            };
            let mut exact: SparseEchelon<usize> = SparseEchelon::new();
            let mut modular: ModEchelon<usize> = ModEchelon::new();
            for r in &rows {
                let m = modular.insert(&sparse(r)).unwrap();
                let e = exact.insert(&sparse(r));
                prop_assert!(!m || e);
            }
            prop_assert_eq!(modular.dim(), rank(&rows, 6));
        }
    }
}

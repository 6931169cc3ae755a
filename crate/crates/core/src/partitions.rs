//! Partitions indexing Schubert varieties of the Grassmannian
//! `Gr(i, n+1) = A_n/P_i`, their suits, and the dictionary with `(a, J)`.

use crate::error::CoreError;
use crate::hasse::{Chss, HasseElement};
use crate::root_system::{Family, LieType, Root};
use crate::schubert::{is_realizable, schubert_from_aj, SchubertDescriptor};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The four suits, according to whether the first row and the first column
/// have maximal length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suit {
    Spade,
    Heart,
    Diamond,
    Club,
}

impl Suit {
    pub fn symbol(self) -> &'static str {
        match self {
            Suit::Spade => "♠",
            Suit::Heart => "♥",
            Suit::Diamond => "♦",
            Suit::Club => "♣",
        }
    }

    /// `(p, q)` as a function of `a` for this suit.
    pub fn pq(self, a: i64) -> (i64, i64) {
        match self {
            Suit::Spade => (2 * a + 2, a + 1),
            Suit::Heart => (2 * a + 1, a + 1),
            Suit::Diamond => (2 * a + 1, a),
            Suit::Club => (2 * a, a),
        }
    }

    /// The suit with the given `(p, q)` relative to `a`, if any.
    pub fn from_pq(a: i64, p: i64, q: i64) -> Option<Suit> {
        [Suit::Spade, Suit::Heart, Suit::Diamond, Suit::Club].into_iter().find(|s| s.pq(a) == (p, q))
    }
}

impl fmt::Display for Suit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A partition in the `i × (n+1−i)` rectangle, stored as runs `(p_ℓ, q_ℓ)`
/// meaning `q_ℓ` rows of length `p_ℓ`, with `p_ℓ` strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    i: usize,
    n_plus_1: usize,
    runs: Vec<(usize, usize)>,
}

impl Partition {
    /// Builds a partition from its row lengths; zero rows are dropped.
    pub fn new(i: usize, n_plus_1: usize, rows: &[usize]) -> Result<Self, CoreError> {
        if i == 0 || i >= n_plus_1 {
            return Err(CoreError::InvalidPartition(format!("need 1 ≤ i ≤ n, got i={i}, n+1={n_plus_1}")));
        }
        let rows: Vec<usize> = rows.iter().copied().filter(|&r| r > 0).collect();
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(CoreError::InvalidPartition(format!("rows {rows:?} are not weakly decreasing")));
        }
        if rows.len() > i {
            return Err(CoreError::InvalidPartition(format!("{} rows exceed i = {i}", rows.len())));
        }
        if rows.first().is_some_and(|&r| r > n_plus_1 - i) {
            return Err(CoreError::InvalidPartition(format!("row length exceeds n+1−i = {}", n_plus_1 - i)));
        }
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for r in rows {
            match runs.last_mut() {
                Some((p, q)) if *p == r => *q += 1,
                _ => runs.push((r, 1)),
            }
        }
        Ok(Partition { i, n_plus_1, runs })
    }

    /// Builds a partition from runs `(p, q)`.
    pub fn from_runs(i: usize, n_plus_1: usize, runs: &[(usize, usize)]) -> Result<Self, CoreError> {
        let rows: Vec<usize> = runs.iter().flat_map(|&(p, q)| std::iter::repeat(p).take(q)).collect();
        Partition::new(i, n_plus_1, &rows)
    }

    /// Parses `"6,4,4,1,1"` or the run-length form `"6 4^2 1^2"`.  The
    /// strings `""`, `"0"` and `"∅"` denote the empty partition.
    pub fn parse(i: usize, n_plus_1: usize, text: &str) -> Result<Self, CoreError> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() || t == "∅" {
            return Partition::new(i, n_plus_1, &[]);
        }
        let bad = || CoreError::Parse(format!("cannot parse partition {text:?}"));
        let mut rows = Vec::new();
        for tok in t.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
            let (p, q) = match tok.split_once('^') {
                Some((p, q)) => (p.parse::<usize>().map_err(|_| bad())?, q.parse::<usize>().map_err(|_| bad())?),
                None => (tok.parse::<usize>().map_err(|_| bad())?, 1),
            };
            rows.extend(std::iter::repeat(p).take(q));
        }
        Partition::new(i, n_plus_1, &rows)
    }

    /// Every partition in the `i × (n+1−i)` rectangle.
    pub fn all(i: usize, n_plus_1: usize) -> Vec<Partition> {
        fn rec(rows: &mut Vec<usize>, max: usize, left: usize, out: &mut Vec<Vec<usize>>) {
            out.push(rows.clone());
            if left == 0 {
                return;
            }
            for v in 1..=max {
                rows.push(v);
                rec(rows, v, left - 1, out);
                rows.pop();
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), n_plus_1 - i, i, &mut out);
        out.into_iter().map(|r| Partition::new(i, n_plus_1, &r).expect("valid rows")).collect()
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn n_plus_1(&self) -> usize {
        self.n_plus_1
    }

    /// Width `n+1−i` of the rectangle.
    pub fn width(&self) -> usize {
        self.n_plus_1 - self.i
    }

    pub fn runs(&self) -> &[(usize, usize)] {
        &self.runs
    }

    /// Number of runs `r`.
    pub fn r(&self) -> usize {
        self.runs.len()
    }

    /// Row lengths, padded with zeros to `i` entries.
    pub fn rows(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.runs.iter().flat_map(|&(p, q)| std::iter::repeat(p).take(q)).collect();
        v.resize(self.i, 0);
        v
    }

    /// `|π|`.
    pub fn size(&self) -> usize {
        self.runs.iter().map(|&(p, q)| p * q).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// `p_1`, the length of the first row (zero when empty).
    pub fn p1(&self) -> usize {
        self.runs.first().map_or(0, |r| r.0)
    }

    /// `p'_1 = q_1 + ⋯ + q_r`, the length of the first column.
    pub fn p1_conj(&self) -> usize {
        self.runs.iter().map(|r| r.1).sum()
    }

    pub fn suit(&self) -> Suit {
        match (self.p1() == self.width(), self.p1_conj() == self.i) {
            (true, true) => Suit::Spade,
            (true, false) => Suit::Heart,
            (false, true) => Suit::Diamond,
            (false, false) => Suit::Club,
        }
    }

    /// The transposed diagram in the `(n+1−i) × i` rectangle:
    /// `p'_ℓ = q_1 + ⋯ + q_{r−ℓ+1}` and `q'_ℓ = p_{r−ℓ+1} − p_{r−ℓ+2}`.
    pub fn conjugate(&self) -> Partition {
        let r = self.r();
        let p = |k: usize| if k >= 1 && k <= r { self.runs[k - 1].0 } else { 0 };
        let runs: Vec<(usize, usize)> = (1..=r)
            .map(|l| {
                let pl: usize = self.runs[..r - l + 1].iter().map(|x| x.1).sum();
                (pl, p(r - l + 1) - p(r - l + 2))
            })
            .collect();
        Partition { i: self.width(), n_plus_1: self.n_plus_1, runs }
    }

    /// The complement in the rectangle rotated by 180 degrees, computed with
    /// the case formulas by suit.
    pub fn dual(&self) -> Partition {
        let w = self.width();
        let r = self.r();
        let run = |k: usize| self.runs[k - 1];
        let mut runs: Vec<(usize, usize)> = Vec::new();
        match self.suit() {
            Suit::Heart | Suit::Club => {
                runs.push((w, self.i - self.p1_conj()));
                for l in 2..=r {
                    let (p, q) = run(r - l + 2);
                    runs.push((w - p, q));
                }
                if self.suit() == Suit::Club && r >= 1 {
                    let (p, q) = run(1);
                    runs.push((w - p, q));
                }
            }
            Suit::Spade | Suit::Diamond => {
                let last = if self.suit() == Suit::Spade { r - 1 } else { r };
                for l in 1..=last {
                    let (p, q) = run(r - l + 1);
                    runs.push((w - p, q));
                }
            }
        }
        Partition { i: self.i, n_plus_1: self.n_plus_1, runs }
    }

    /// The Grassmannian `A_n/P_i` hosting this partition.
    pub fn space(&self) -> Result<Chss, CoreError> {
        Chss::new(LieType::new(Family::A, self.n_plus_1 - 1)?, self.i)
    }

    /// `(a, J)` and the dimension `|π*|`: `a = r* − 1` and
    /// `J = {q_1, q_1+q_2, …, Σq, n+1−p_1, …, n+1−p_r} ∖ {i}`.
    /// The point and the whole space give `(0, ∅)`.
    pub fn descriptor(&self) -> SchubertDescriptor {
        let dual = self.dual();
        let dim = dual.size();
        if dual.is_empty() || self.is_empty() {
            return SchubertDescriptor::new(0, vec![], dim);
        }
        let mut j: Vec<usize> = Vec::new();
        let mut acc = 0;
        for &(_, q) in &self.runs {
            acc += q;
            j.push(acc);
        }
        j.extend(self.runs.iter().map(|&(p, _)| self.n_plus_1 - p));
        j.retain(|&k| k != self.i);
        j.sort_unstable();
        j.dedup();
        SchubertDescriptor::new(dual.r() as i64 - 1, j, dim)
    }

    /// Root of the matrix entry `(row, col)` of `n_π`: `α_col + ⋯ + α_{i+row−1}`.
    fn entry_root(&self, row: usize, col: usize) -> Root {
        let coeffs: Vec<i64> = (1..self.n_plus_1).map(|k| i64::from(k >= col && k < self.i + row)).collect();
        Root::from_coeffs(&coeffs)
    }

    /// The Hasse element whose tangent space `n_π` has the entry `(row, col)`
    /// exactly when `row ≤ n+1−i−a_col`.
    pub fn to_hasse(&self, x: &Chss) -> Result<HasseElement, CoreError> {
        self.check_space(x)?;
        let rows = self.rows();
        let mut roots = Vec::new();
        for col in 1..=self.i {
            for row in 1..=(self.width() - rows[col - 1]) {
                roots.push(self.entry_root(row, col));
            }
        }
        Ok(HasseElement::from_bits(x.bits_of(&roots).expect("entries are roots of g1")))
    }

    /// Inverse of [`Partition::to_hasse`].
    pub fn from_hasse(x: &Chss, w: &HasseElement) -> Result<Partition, CoreError> {
        if x.family() != Family::A {
            return Err(CoreError::NotGrassmannian(x.to_string()));
        }
        let (i, n_plus_1) = (x.node(), x.rank() + 1);
        let width = n_plus_1 - i;
        let probe = Partition { i, n_plus_1, runs: vec![] };
        let rows: Vec<usize> = (1..=i)
            .map(|col| {
                let filled = (1..=width)
                    .filter(|&row| x.bit_of(&probe.entry_root(row, col)).is_some_and(|b| w.contains(b)))
                    .count();
                width - filled
            })
            .collect();
        Partition::new(i, n_plus_1, &rows)
    }

    fn check_space(&self, x: &Chss) -> Result<(), CoreError> {
        if x.family() != Family::A || x.node() != self.i || x.rank() + 1 != self.n_plus_1 {
            return Err(CoreError::NotGrassmannian(x.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self
            .runs
            .iter()
            .map(|&(p, q)| if q == 1 { p.to_string() } else { format!("{p}^{q}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// The partition realizing `(a, J)` in `A_n/P_i`.
pub fn partition_from_aj(x: &Chss, a: i64, j: &[usize]) -> Result<Partition, CoreError> {
    if x.family() != Family::A {
        return Err(CoreError::NotGrassmannian(x.to_string()));
    }
    if !is_realizable(x, a, j) {
        return Err(CoreError::NotRealizable { a, j: j.to_vec(), space: x.to_string() });
    }
    let r = schubert_from_aj(x, a, j)?;
    Partition::from_hasse(x, &r.element)
}

/// The suit of a proper descriptor in `A_n/P_i`, read off from `(p, q)`.
pub fn suit_of_descriptor(x: &Chss, d: &SchubertDescriptor) -> Option<Suit> {
    let q = crate::schubert::q_of(x.node(), &d.j) as i64;
    Suit::from_pq(d.a, d.j.len() as i64, q)
}

/// `(a, J)` of a Hasse element through its partition; matches [`crate::schubert::classify`].
pub fn descriptor_via_partition(x: &Chss, w: &HasseElement) -> Result<SchubertDescriptor, CoreError> {
    Ok(Partition::from_hasse(x, w)?.descriptor())
}

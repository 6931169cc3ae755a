//! Conditions H₁, H₂ and H₊ decided by root combinatorics, the closed-form
//! lists of varieties satisfying H₊, and their reformulations.

use crate::error::CoreError;
use crate::hasse::{Chss, HasseElement};
use crate::partitions::{Partition, Suit};
use crate::root_system::{Family, LieType, Root};
use crate::schubert::{classify, dual_descriptor, padded_j, q_of, zj, Bigrading, SchubertDescriptor};
use serde::{Deserialize, Serialize};

/// Outcome of the H₁/H₂ tests with failing pairs.  H₁ witnesses are pairs
/// `(β, γ)` with `β = α_j`, H₂ witnesses are pairs `(ε, γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityVerdict {
    pub h1: bool,
    pub h2: bool,
    pub h_plus: bool,
    pub h1_witnesses: Vec<(Root, Root)>,
    pub h2_witnesses: Vec<(Root, Root)>,
}

fn proper_descriptor(x: &Chss, w: &HasseElement) -> Result<SchubertDescriptor, CoreError> {
    let d = classify(x, w)?;
    if !d.is_proper() {
        return Err(CoreError::Improper);
    }
    Ok(d)
}

/// H₁ fails for `(β, γ)` with `β = α_j` (`j ∈ J`) and `γ` a component-highest
/// root of `g_{1,a}` when `γ − β ∉ Δ`, `γ + β ∈ Δ`, and `γ` is the only root
/// `α` of `g_{1,a}` with `α + β ∈ Δ`.
pub fn check_h1(x: &Chss, w: &HasseElement) -> Result<(bool, Vec<(Root, Root)>), CoreError> {
    let d = proper_descriptor(x, w)?;
    let rs = x.rs();
    let bg = Bigrading::new(x, &d.j);
    let top: Vec<Root> = x.g1().iter().copied().filter(|r| zj(r, &d.j) == d.a).collect();
    let highs: Vec<Root> = bg.components_of_degree(d.a).iter().map(|c| c.highest).collect();
    let mut witnesses = Vec::new();
    for &j in &d.j {
        let beta = Root::simple(j);
        let hits: Vec<&Root> = top.iter().filter(|a| rs.is_root(&a.add(&beta))).collect();
        if hits.len() != 1 {
            continue;
        }
        let gamma = *hits[0];
        if highs.contains(&gamma) && !rs.is_root(&gamma.sub(&beta)) {
            witnesses.push((beta, gamma));
        }
    }
    Ok((witnesses.is_empty(), witnesses))
}

/// H₂ fails for `(ε, γ)` with `ε` component-highest in `g_{1,a−1}` and `γ`
/// component-highest in `g_{1,a}` when `ε − γ ∈ Δ` and `γ` is the only root
/// `α` of `g_{1,a}` with `ε − α ∈ Δ`.  Vacuous for `a = 0`.
pub fn check_h2(x: &Chss, w: &HasseElement) -> Result<(bool, Vec<(Root, Root)>), CoreError> {
    let d = proper_descriptor(x, w)?;
    if d.a == 0 {
        return Ok((true, vec![]));
    }
    let rs = x.rs();
    let bg = Bigrading::new(x, &d.j);
    let top: Vec<Root> = x.g1().iter().copied().filter(|r| zj(r, &d.j) == d.a).collect();
    let highs: Vec<Root> = bg.components_of_degree(d.a).iter().map(|c| c.highest).collect();
    let mut witnesses = Vec::new();
    for eps in bg.components_of_degree(d.a - 1).iter().map(|c| c.highest) {
        let hits: Vec<&Root> = top.iter().filter(|a| rs.is_root(&eps.sub(a))).collect();
        if hits.len() == 1 && highs.contains(hits[0]) {
            witnesses.push((eps, *hits[0]));
        }
    }
    Ok((witnesses.is_empty(), witnesses))
}

/// Both tests together.
pub fn verdict(x: &Chss, w: &HasseElement) -> Result<RigidityVerdict, CoreError> {
    let (h1, h1_witnesses) = check_h1(x, w)?;
    let (h2, h2_witnesses) = check_h2(x, w)?;
    Ok(RigidityVerdict { h1, h2, h_plus: h1 && h2, h1_witnesses, h2_witnesses })
}

/// One proper Schubert variety with its verdict.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub element: HasseElement,
    pub descriptor: SchubertDescriptor,
    pub verdict: RigidityVerdict,
}

/// Every proper Schubert variety of the space with its H₁/H₂ verdict.
pub fn hplus_catalog(x: &Chss) -> Result<Vec<CatalogEntry>, CoreError> {
    let mut out = Vec::new();
    for w in x.enumerate() {
        let descriptor = classify(x, &w)?;
        if !descriptor.is_proper() {
            continue;
        }
        let verdict = verdict(x, &w)?;
        out.push(CatalogEntry { element: w, descriptor, verdict });
    }
    Ok(out)
}

/// Gap `j_ℓ − j_{ℓ−1}` in the padded sequence `j_0 = 0, …, j_{p+1}`.
fn gap(pad: &[usize], l: usize) -> i64 {
    pad[l] as i64 - pad[l - 1] as i64
}

fn gaps_exceed(pad: &[usize], range: std::ops::RangeInclusive<usize>, bound: i64) -> bool {
    range.filter(|&l| l >= 1 && l < pad.len()).all(|l| gap(pad, l) > bound)
}

fn ceil_half(m: usize) -> usize {
    m.div_ceil(2)
}

/// Maps `D_n/P_{n−1}` data to `D_n/P_n` by swapping the last two nodes.
fn spinor_j(x: &Chss, j: &[usize]) -> Vec<usize> {
    let n = x.rank();
    let mut s: Vec<usize> = if x.node() == n - 1 {
        j.iter().map(|&k| if k == n { n - 1 } else if k == n - 1 { n } else { k }).collect()
    } else {
        j.to_vec()
    };
    s.sort_unstable();
    s
}

/// The closed-form list of varieties satisfying H₊ in the classical spaces.
pub fn closed_form_hplus(x: &Chss, d: &SchubertDescriptor) -> Result<bool, CoreError> {
    if !d.is_proper() {
        return Err(CoreError::Improper);
    }
    let n = x.rank();
    let i = x.node();
    let a = d.a;
    let p = d.j.len();
    match x.family() {
        Family::A => {
            if i == 1 || i == n {
                return Ok(false);
            }
            let pad = padded_j(x, &d.j);
            let q = q_of(i, &d.j);
            let (pi, qi) = (p as i64, q as i64);
            let left = i as i64 - pad[q] as i64;
            let right = pad[q + 1] as i64 - i as i64;
            Ok(if (pi, qi) == (2 * a + 2, a + 1) {
                gaps_exceed(&pad, 2..=p, 1) && left > 1 && right > 1
            } else if (pi, qi) == (2 * a + 1, a + 1) {
                gaps_exceed(&pad, 2..=p + 1, 1) && right > 1
            } else if (pi, qi) == (2 * a + 1, a) {
                gaps_exceed(&pad, 1..=p, 1) && left > 1
            } else if (pi, qi) == (2 * a, a) {
                gaps_exceed(&pad, 1..=p + 1, 1)
            } else {
                false
            })
        }
        Family::B => Ok(false),
        Family::D if i == 1 => Ok(a == 0 && (d.j == [n - 1] || d.j == [n])),
        Family::C => {
            let pad = padded_j(x, &d.j);
            Ok(if p as i64 == a {
                gaps_exceed(&pad, 1..=p, 1)
            } else if p as i64 == a + 1 {
                gaps_exceed(&pad, 2..=p + 1, 1)
            } else {
                false
            })
        }
        Family::D => {
            let j = spinor_j(x, &d.j);
            let mut pad = vec![0];
            pad.extend_from_slice(&j);
            pad.push(n);
            let has = j.contains(&(n - 1));
            let pa = p as i64;
            let row1 = ((pa == a && !has) || (pa == a + 1 && has))
                && gaps_exceed(&pad, 1..=p, 1)
                && {
                    let s = ceil_half(p + 1);
                    s >= 1 && gap(&pad, s) > 2
                };
            let row2 = pa == a + 1 && !has && gaps_exceed(&pad, 2..=p, 1) && {
                let s = ceil_half(p);
                s + 1 < pad.len() && gap(&pad, s + 1) > 2
            };
            Ok(row1 || row2)
        }
        Family::E6 | Family::E7 => Err(CoreError::NotClassical(x.lie_type())),
    }
}

/// True when no two nodes of the set are joined in the Dynkin diagram.
pub fn is_orthogonal(x: &Chss, s: &[usize]) -> bool {
    s.iter().all(|&a| s.iter().all(|&b| !x.rs().adjacent(a, b)))
}

/// The reformulation through orthogonal node sets `D = J ∪ {i}` and
/// `D* = J* ∪ {i}`.
pub fn table7_hplus(x: &Chss, d: &SchubertDescriptor) -> Result<bool, CoreError> {
    if !d.is_proper() {
        return Err(CoreError::Improper);
    }
    let n = x.rank();
    let i = x.node();
    let p = d.j.len() as i64;
    let a = d.a;
    let with_i = |j: &[usize]| {
        let mut v = j.to_vec();
        v.push(i);
        v.sort_unstable();
        v
    };
    let dset = with_i(&d.j);
    let dual = dual_descriptor(x, d)?;
    let dstar = with_i(&dual.j);
    let part = |s: &[usize], f: &dyn Fn(usize) -> bool| s.iter().copied().filter(|&k| f(k)).collect::<Vec<_>>();
    match x.family() {
        Family::A => {
            if i == 1 || i == n {
                return Ok(false);
            }
            let q = q_of(i, &d.j) as i64;
            Ok(match Suit::from_pq(a, p, q) {
                Some(Suit::Spade) => is_orthogonal(x, &dset),
                Some(Suit::Heart) => {
                    is_orthogonal(x, &part(&dset, &|k| k < i))
                        && is_orthogonal(x, &part(&dset, &|k| k >= i))
                        && is_orthogonal(x, &part(&dstar, &|k| k >= i))
                }
                Some(Suit::Diamond) => {
                    is_orthogonal(x, &part(&dset, &|k| k > i))
                        && is_orthogonal(x, &part(&dset, &|k| k <= i))
                        && is_orthogonal(x, &part(&dstar, &|k| k <= i))
                }
                Some(Suit::Club) => is_orthogonal(x, &dstar),
                None => false,
            })
        }
        Family::B => Ok(false),
        Family::D if i == 1 => Ok(a == 0 && (d.j == [n - 1] || d.j == [n])),
        Family::C => Ok(if p == a {
            is_orthogonal(x, &dstar)
        } else if p == a + 1 {
            is_orthogonal(x, &dset)
        } else {
            false
        }),
        Family::D => {
            let j = spinor_j(x, &d.j);
            let mut pad = vec![0];
            pad.extend_from_slice(&j);
            pad.push(n);
            let has = j.contains(&(n - 1));
            let pu = j.len();
            let first = ((p == a && !has) || (p == a + 1 && has)) && !j.contains(&1) && {
                let s = ceil_half(pu + 1);
                gap(&pad, s) > 2
            };
            let second = p == a + 1 && !has && {
                let s = ceil_half(pu);
                gap(&pad, s + 1) > 2
            };
            let sx = Chss::new(LieType::d(n), n)?;
            Ok(is_orthogonal(&sx, &j) && (first || second))
        }
        Family::E6 | Family::E7 => Err(CoreError::NotClassical(x.lie_type())),
    }
}

/// The spinor-variety criterion phrased through `r` with `a ∈ {2r−1, 2r}`
/// (when `n−1 ∉ J`) or `a ∈ {2r, 2r+1}` (when `n−1 ∈ J`).
pub fn spinor_hplus(x: &Chss, d: &SchubertDescriptor) -> Result<bool, CoreError> {
    if x.family() != Family::D || x.node() == 1 {
        return Err(CoreError::NotClassical(x.lie_type()));
    }
    if !d.is_proper() {
        return Err(CoreError::Improper);
    }
    let n = x.rank();
    let j = spinor_j(x, &d.j);
    let p = j.len();
    let a = d.a as usize;
    let mut pad = vec![0];
    pad.extend_from_slice(&j);
    pad.push(n);
    let has = j.contains(&(n - 1));
    if d.a == 0 {
        return Ok(p == 1 && j != [n - 2]);
    }
    if !has {
        let r = a.div_ceil(2);
        if p < r {
            return Ok(false);
        }
        let lo = (p as i64 - a as i64 + 1).max(1) as usize;
        Ok(gaps_exceed(&pad, lo..=p, 1) && gap(&pad, p - r + 1) > 2)
    } else {
        let r = a / 2;
        if p != a + 1 || p < r + 1 {
            return Ok(false);
        }
        Ok(gaps_exceed(&pad, 1..=p, 1) && gap(&pad, p - r) > 2)
    }
}

/// The partition criterion for Grassmannians: `1 < q_ℓ, q'_ℓ` for
/// `2 ≤ ℓ ≤ r`, plus the suit-dependent conditions on `q_1` and `q'_1`.
pub fn partition_hplus(pi: &Partition) -> bool {
    let conj = pi.conjugate();
    let q: Vec<usize> = pi.runs().iter().map(|r| r.1).collect();
    let qc: Vec<usize> = conj.runs().iter().map(|r| r.1).collect();
    let r = q.len();
    if r == 0 {
        return false;
    }
    let tail = (1..r).all(|l| q[l] > 1 && qc[l] > 1);
    tail && match pi.suit() {
        Suit::Spade => true,
        Suit::Heart => qc[0] > 1,
        Suit::Diamond => q[0] > 1,
        Suit::Club => q[0] > 1 && qc[0] > 1,
    }
}

/// One row of the exceptional tables: reduced word, `a`, `J`, dimension,
/// `a*` and `J*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalRow {
    pub word: Vec<usize>,
    pub a: i64,
    pub j: Vec<usize>,
    pub dim: usize,
    pub a_star: i64,
    pub j_star: Vec<usize>,
}

fn row(word: &str, a: i64, j: &[usize], dim: usize, a_star: i64, j_star: &[usize]) -> ExceptionalRow {
    ExceptionalRow {
        word: word.chars().map(|c| c.to_digit(10).expect("digit") as usize).collect(),
        a,
        j: j.to_vec(),
        dim,
        a_star,
        j_star: j_star.to_vec(),
    }
}

/// The proper Schubert varieties of `E6/P6` satisfying H₊.
pub fn e6_table() -> Vec<ExceptionalRow> {
    vec![
        row("6542", 0, &[3], 4, 1, &[3]),
        row("65431", 0, &[2], 5, 1, &[5]),
        row("65432413", 1, &[4], 8, 1, &[4]),
        row("65432456", 0, &[1], 8, 0, &[1]),
        row("65432451342", 1, &[5], 11, 0, &[2]),
        row("654324561345", 1, &[3], 12, 0, &[3]),
    ]
}

/// The proper Schubert varieties of `E7/P7` satisfying H₊.
pub fn e7_table() -> Vec<ExceptionalRow> {
    vec![
        row("76542", 0, &[3], 5, 2, &[5]),
        row("765431", 0, &[2], 6, 1, &[2]),
        row("765432413", 1, &[4], 9, 2, &[4]),
        row("7654324567", 0, &[1], 10, 1, &[6]),
        row("765432451342", 1, &[5], 12, 1, &[3]),
        row("7654324561345", 2, &[3, 6], 13, 2, &[1, 5]),
        row("76543245671342", 2, &[1, 5], 14, 2, &[3, 6]),
        row("765432456713456", 1, &[3], 15, 1, &[5]),
        row("76543245613452431", 1, &[6], 17, 0, &[1]),
        row("765432456713456245", 2, &[4], 18, 1, &[4]),
        row("765432456713456245342", 1, &[2], 21, 0, &[2]),
        row("7654324567134562453413", 2, &[5], 22, 0, &[3]),
    ]
}

/// The E6 diagram flip `1↔6, 3↔5`.
const E6_FLIP: [usize; 6] = [6, 2, 5, 4, 3, 1];

/// `(a, J)` pairs of the exceptional tables transported to the given space
/// (`E6/P1` is reached through the diagram flip).
pub fn exceptional_hplus_pairs(x: &Chss) -> Result<Vec<(i64, Vec<usize>)>, CoreError> {
    let flip = |j: &[usize]| {
        let mut v: Vec<usize> = j.iter().map(|&k| E6_FLIP[k - 1]).collect();
        v.sort_unstable();
        v
    };
    match (x.family(), x.node()) {
        (Family::E6, 6) => Ok(e6_table().into_iter().map(|r| (r.a, r.j)).collect()),
        (Family::E6, 1) => Ok(e6_table().into_iter().map(|r| (r.a, flip(&r.j))).collect()),
        (Family::E7, 7) => Ok(e7_table().into_iter().map(|r| (r.a, r.j)).collect()),
        _ => Err(CoreError::NotClassical(x.lie_type())),
    }
}

/// The expected H₊ value: closed form for classical spaces, table
/// membership for the exceptional ones.
pub fn expected_hplus(x: &Chss, d: &SchubertDescriptor) -> Result<bool, CoreError> {
    match x.family() {
        Family::E6 | Family::E7 => {
            Ok(exceptional_hplus_pairs(x)?.iter().any(|(a, j)| *a == d.a && *j == d.j))
        }
        _ => closed_form_hplus(x, d),
    }
}

/// A smooth proper variety satisfying H₊ with a description of its model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothRow {
    pub j: Vec<usize>,
    pub dim: usize,
    pub model: String,
}

/// The smooth varieties satisfying H₊ as described by the closed-form list,
/// with the homogeneous model of each one.
pub fn smooth_hplus_rows(x: &Chss) -> Vec<SmoothRow> {
    let n = x.rank();
    let i = x.node();
    let proj = |k: usize| SmoothRow { j: vec![], dim: k, model: format!("P^{k}") };
    let mut rows: Vec<SmoothRow> = Vec::new();
    let with = |mut r: SmoothRow, j: Vec<usize>| {
        r.j = j;
        r
    };
    match x.family() {
        Family::A if 1 < i && i < n => {
            for j1 in 0..i {
                for j2 in (i + 1)..=(n + 1) {
                    let pair = j1 > 0 && j2 <= n;
                    if (j1 == 0 && j2 == n + 1) || (pair && (i - j1 < 2 || j2 - i < 2)) {
                        continue;
                    }
                    let (k, m) = (i - j1, j2 - j1);
                    let model = if k == 1 || k + 1 == m {
                        format!("P^{}", m - 1)
                    } else {
                        format!("Gr({k},{m})")
                    };
                    let j = [j1, j2].into_iter().filter(|&t| t > 0 && t <= n).collect();
                    rows.push(SmoothRow { j, dim: k * (m - k), model });
                }
            }
        }
        Family::D if i == 1 => {
            rows.push(with(proj(n - 1), vec![n - 1]));
            rows.push(with(proj(n - 1), vec![n]));
        }
        Family::C => {
            for j in 1..n.saturating_sub(1) {
                let m = n - j;
                rows.push(SmoothRow { j: vec![j], dim: m * (m + 1) / 2, model: format!("C{m}/P{m}") });
            }
        }
        Family::D => {
            let other = if i == n { n - 1 } else { n };
            let relabel = |j: usize| if j == n - 1 { other } else { j };
            for j in 1..n.saturating_sub(3) {
                let m = n - j;
                rows.push(SmoothRow { j: vec![j], dim: m * (m - 1) / 2, model: format!("D{m}/P{m}") });
            }
            if n >= 4 {
                rows.push(with(proj(3), vec![n - 3]));
            }
            rows.push(with(proj(n - 1), vec![relabel(n - 1)]));
        }
        Family::E6 => {
            let fix = |j: usize| if i == 6 { j } else { E6_FLIP[j - 1] };
            rows.push(SmoothRow { j: vec![fix(1)], dim: 8, model: "Q^8".into() });
            rows.push(with(proj(5), vec![fix(2)]));
            rows.push(with(proj(4), vec![fix(3)]));
        }
        Family::E7 => {
            rows.push(SmoothRow { j: vec![1], dim: 10, model: "Q^10".into() });
            rows.push(with(proj(6), vec![2]));
            rows.push(with(proj(5), vec![3]));
        }
        _ => {}
    }
    rows.sort_by(|a, b| a.j.cmp(&b.j));
    rows
}

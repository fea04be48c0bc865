//! Integer partitions, triangularity, and the statistics used by the
//! eigenoperator and Negut formulas.
//!
//! Cells are addressed 0-based as `(i, j)` with `i` the column and `j` the row,
//! French orientation (row 0 at the bottom).

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qt::QTPoly;

/// A weakly decreasing list of positive parts. Serializes as a JSON array.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl Partition {
    /// Validates that the parts are weakly decreasing; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the given parts decreasingly and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn row(k: usize) -> Self {
        Partition::from_unsorted(vec![k])
    }

    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `k` (0-based), reading missing parts as zero.
    pub fn part(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition((0..first).map(|i| self.0.iter().filter(|&&p| p > i).count()).collect())
    }

    /// Cells `(i, j)` row by row from the bottom.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(j, &len)| (0..len).map(move |i| (i, j)))
    }

    pub fn contains_cell(&self, i: usize, j: usize) -> bool {
        i < self.part(j)
    }

    pub fn contains(&self, inner: &Partition) -> bool {
        inner.len() <= self.len() && inner.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Arm of cell `(i, j)`: cells strictly to its right in the same row.
    pub fn arm(&self, i: usize, j: usize) -> usize {
        self.part(j) - i - 1
    }

    /// Leg of cell `(i, j)`: cells strictly above it in the same column.
    pub fn leg(&self, i: usize, j: usize) -> usize {
        (j + 1..self.len()).take_while(|&r| self.part(r) > i).count()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.multiplicities().into_iter().max().unwrap_or(0)
    }

    /// Multiplicities of the distinct parts, in order of decreasing part.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut prev = None;
        for &p in &self.0 {
            if prev == Some(p) {
                *out.last_mut().unwrap() += 1;
            } else {
                out.push(1);
                prev = Some(p);
            }
        }
        out
    }

    /// Sum over cells of the column index, `n(μ')`.
    pub fn eta(&self) -> usize {
        self.cells().map(|(i, _)| i).sum()
    }

    /// Sum over cells of the row index, `n(μ)`.
    pub fn row_weight(&self) -> usize {
        self.cells().map(|(_, j)| j).sum()
    }

    /// `Π q^i t^j` over the cells.
    pub fn t_mu(&self) -> QTPoly {
        QTPoly::monomial(1, self.eta() as i32, self.row_weight() as i32)
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            size: self.size(),
            length: self.len(),
            max_multiplicity: self.max_multiplicity(),
            eta: self.eta(),
            t_mu: self.t_mu(),
        }
    }

    /// Part-wise sum; missing parts read as zero.
    pub fn partwise_add(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        Partition((0..len).map(|k| self.part(k) + other.part(k)).collect())
    }

    /// Part-wise difference, `None` unless the result is a partition.
    pub fn partwise_sub(&self, other: &Partition) -> Option<Partition> {
        if other.len() > self.len() {
            return None;
        }
        let parts: Vec<usize> = (0..self.len())
            .map(|k| self.part(k).checked_sub(other.part(k)))
            .collect::<Option<_>>()?;
        Partition::new(parts).ok()
    }

    /// Removes the first column: `μ̄ = (μ_1 - 1, μ_2 - 1, ...)`.
    pub fn remove_first_column(&self) -> Partition {
        Partition(self.0.iter().filter(|&&p| p > 1).map(|p| p - 1).collect())
    }

    /// Inverse of [`Partition::remove_first_column`] in size `n`.
    pub fn add_first_column(&self, n: usize) -> Option<Partition> {
        let column = n.checked_sub(self.size())?;
        if column < self.len() {
            return None;
        }
        let mut parts: Vec<usize> = self.0.iter().map(|p| p + 1).collect();
        parts.extend(std::iter::repeat(1).take(column - self.len()));
        Some(Partition(parts))
    }

    /// Frobenius coordinates `(a|ℓ)` when the partition is a hook.
    pub fn as_hook(&self) -> Option<FrobeniusHook> {
        match self.0.as_slice() {
            [] => None,
            [first, rest @ ..] if rest.iter().all(|&p| p == 1) => Some(FrobeniusHook {
                arm: first - 1,
                leg: rest.len(),
            }),
            _ => None,
        }
    }

    pub fn dominates(&self, other: &Partition) -> bool {
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for k in 0..len {
            a += self.part(k);
            b += other.part(k);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Parses `"3,2,1"`, `"321"` (single-digit parts) or the empty string.
    pub fn parse(s: &str) -> Result<Partition> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let parts: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("{s}: {e}")))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse(s.to_string()))?
        };
        Partition::new(parts)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Convenience constructor for literals; panics on invalid input.
pub fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("invalid partition literal")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub size: usize,
    pub length: usize,
    pub max_multiplicity: usize,
    pub eta: usize,
    pub t_mu: QTPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrobeniusHook {
    pub arm: usize,
    pub leg: usize,
}

impl FrobeniusHook {
    pub fn new(arm: usize, leg: usize) -> Self {
        FrobeniusHook { arm, leg }
    }

    pub fn to_partition(self) -> Partition {
        let mut parts = vec![self.arm + 1];
        parts.extend(std::iter::repeat(1).take(self.leg));
        Partition(parts)
    }
}

/// Separating functional: a cell `(i, j)` belongs to the partition iff
/// `a·(i+1) + b·(j+1) <= c`, i.e. its north-east corner lies on or under the line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub a: Ratio<i64>,
    pub b: Ratio<i64>,
    pub c: Ratio<i64>,
}

impl Line {
    pub fn admits(&self, i: usize, j: usize) -> bool {
        self.a * Ratio::from(i as i64 + 1) + self.b * Ratio::from(j as i64 + 1) <= self.c
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularPartition {
    partition: Partition,
    certificate: Line,
}

impl TriangularPartition {
    pub fn new(partition: Partition) -> Result<Self> {
        match triangularity_certificate(&partition) {
            Some(certificate) => Ok(TriangularPartition {
                partition,
                certificate,
            }),
            None => Err(Error::NonTriangular(partition)),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn certificate(&self) -> &Line {
        &self.certificate
    }

    pub fn conjugate(&self) -> TriangularPartition {
        let conj = self.partition.conjugate();
        let line = Line {
            a: self.certificate.b,
            b: self.certificate.a,
            c: self.certificate.c,
        };
        TriangularPartition {
            partition: conj,
            certificate: line,
        }
    }

    /// `min(ℓ(τ), ℓ(τ'))`, the number of parameters needed to see all of `E_τ`.
    pub fn min_length(&self) -> usize {
        self.partition.len().min(self.partition.part(0))
    }
}

impl std::ops::Deref for TriangularPartition {
    type Target = Partition;
    fn deref(&self) -> &Partition {
        &self.partition
    }
}

impl fmt::Display for TriangularPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.partition.fmt(f)
    }
}

pub fn is_triangular(p: &Partition) -> bool {
    triangularity_certificate(p).is_some()
}

/// Searches for a functional `x·a + y` (b = 1) strictly separating the
/// north-east corners of the row ends from those of the first outside cells.
/// Every bound on `a` is the slope through a pair of boundary lattice points,
/// so the feasible set is an open interval computed exactly.
pub fn triangularity_certificate(p: &Partition) -> Option<Line> {
    let one = Ratio::from(1i64);
    if p.is_empty() {
        return Some(Line {
            a: one,
            b: one,
            c: Ratio::from(1),
        });
    }
    let inside: Vec<(i64, i64)> = (0..p.len())
        .map(|j| (p.part(j) as i64, j as i64 + 1))
        .collect();
    let outside: Vec<(i64, i64)> = (0..=p.len())
        .map(|j| (p.part(j) as i64 + 1, j as i64 + 1))
        .collect();
    let mut lo = Ratio::from(0i64);
    let mut hi: Option<Ratio<i64>> = None;
    for &(px, py) in &inside {
        for &(qx, qy) in &outside {
            // need a·px + py < a·qx + qy
            let dx = px - qx;
            let dy = qy - py;
            match dx.cmp(&0) {
                std::cmp::Ordering::Equal => {
                    if dy <= 0 {
                        return None;
                    }
                }
                std::cmp::Ordering::Greater => {
                    let bound = Ratio::new(dy, dx);
                    hi = Some(hi.map_or(bound, |h| h.min(bound)));
                }
                std::cmp::Ordering::Less => {
                    lo = lo.max(Ratio::new(dy, dx));
                }
            }
        }
    }
    let a = match hi {
        Some(h) if h <= lo => return None,
        Some(h) => (lo + h) / Ratio::from(2),
        None => lo + one,
    };
    let c = inside
        .iter()
        .map(|&(x, y)| a * Ratio::from(x) + Ratio::from(y))
        .max()
        .unwrap();
    Some(Line { a, b: one, c })
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Triangular partitions of every size `0..=max_size`, grouped by size.
pub fn enumerate_triangular(max_size: usize) -> Vec<TriangularPartition> {
    (0..=max_size)
        .flat_map(partitions_of)
        .filter_map(|p| TriangularPartition::new(p).ok())
        .collect()
}

pub fn staircase(n: usize) -> Partition {
    assert!(n >= 1, "staircase needs n >= 1");
    Partition((1..n).rev().collect())
}

/// `μ(τ, n)`: the conjugate of `(n - ℓ(τ), ρ_1, ..., ρ_k)` with the `ρ_i`
/// the part multiplicities of `τ` sorted decreasingly.
pub fn whittaker_index(tau: &TriangularPartition, n: usize) -> Result<Partition> {
    let min = tau.len() + tau.max_multiplicity();
    if n < min {
        return Err(Error::NTooSmall { n, min });
    }
    let mut rho = tau.multiplicities();
    rho.sort_unstable_by(|a, b| b.cmp(a));
    let mut parts = vec![n - tau.len()];
    parts.extend(rho);
    Ok(Partition::new(parts)?.conjugate())
}

/// All `α ⊆ τ`.
pub fn subpartitions(tau: &Partition) -> Vec<Partition> {
    fn rec(tau: &Partition, k: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if k == tau.len() || max == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for v in 0..=tau.part(k).min(max) {
            if v == 0 {
                out.push(Partition(cur.clone()));
                continue;
            }
            cur.push(v);
            rec(tau, k + 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(tau, 0, usize::MAX, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(parts: &[usize]) -> bool {
        is_triangular(&p(parts))
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[3, 2, 1]).conjugate(), p(&[3, 2, 1]));
        assert_eq!(p(&[2, 2, 1]).conjugate(), p(&[3, 2]));
        assert!(tri(&[2, 2, 1]) && tri(&[3, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn triangularity_examples() {
        assert!(!tri(&[2, 2]));
        assert!(tri(&[3, 2]));
        assert!(tri(&[]));
        assert!(!tri(&[3, 3]));
        assert!(tri(&[4, 3, 2, 1]));
    }

    #[test]
    fn certificate_reproduces_cells() {
        for t in enumerate_triangular(9) {
            let line = t.certificate();
            let w = t.part(0) + 2;
            let h = t.len() + 2;
            for i in 0..w {
                for j in 0..h {
                    assert_eq!(line.admits(i, j), t.contains_cell(i, j), "{t} at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn triangular_counts_match_small_tables() {
        let all = enumerate_triangular(5);
        let counts: Vec<usize> = (0..=5).map(|s| all.iter().filter(|t| t.size() == s).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 4, 6]);
        let size3: Vec<Partition> = all.iter().filter(|t| t.size() == 3).map(|t| t.partition().clone()).collect();
        assert_eq!(size3, vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        let size5: Vec<Partition> = all.iter().filter(|t| t.size() == 5).map(|t| t.partition().clone()).collect();
        assert_eq!(
            size5,
            vec![p(&[5]), p(&[4, 1]), p(&[3, 2]), p(&[2, 2, 1]), p(&[2, 1, 1, 1]), p(&[1, 1, 1, 1, 1])]
        );
    }

    #[test]
    fn two_row_criterion() {
        for a in 1..=12 {
            for b in 1..=a {
                assert_eq!(tri(&[a, b]), 2 * b <= a + 1, "({a},{b})");
            }
        }
    }

    #[test]
    fn staircases() {
        assert_eq!(staircase(5), p(&[4, 3, 2, 1]));
        assert_eq!(staircase(1), Partition::empty());
        assert_eq!(staircase(3), p(&[2, 1]));
        assert!(is_triangular(&staircase(6)));
    }

    #[test]
    fn partwise_addition() {
        assert_eq!(p(&[3, 1]).partwise_add(&staircase(3)), p(&[5, 2]));
        assert_eq!(p(&[2, 1]).partwise_add(&Partition::empty()), p(&[2, 1]));
        assert_eq!(p(&[2, 1]).partwise_add(&p(&[2, 1])), p(&[4, 2]));
        assert_eq!(p(&[4, 2]).partwise_sub(&p(&[2, 1])), Some(p(&[2, 1])));
        assert_eq!(p(&[2, 2]).partwise_sub(&p(&[2, 1])), None);
    }

    #[test]
    fn statistics() {
        let s = p(&[2, 2, 2, 2, 1, 1]).stats();
        assert_eq!((s.length, s.max_multiplicity), (6, 4));
        let e = Partition::empty().stats();
        assert_eq!((e.length, e.max_multiplicity, e.eta), (0, 0, 0));
        assert_eq!(e.t_mu, QTPoly::one());
        let s11 = p(&[1, 1]).stats();
        assert_eq!(s11.eta, 0);
        assert_eq!(s11.t_mu, QTPoly::t());
        assert_eq!(p(&[4, 1, 1]).eta(), 6);
        for mu in (0..=7).flat_map(partitions_of) {
            let total: usize = mu.cells().map(|(i, j)| i + j).sum();
            assert_eq!(mu.eta() + mu.conjugate().eta(), total);
            assert_eq!(mu.t_mu().swap_qt(), mu.conjugate().t_mu());
        }
    }

    #[test]
    fn whittaker_indices() {
        let t321 = TriangularPartition::new(p(&[3, 2, 1])).unwrap();
        assert_eq!(whittaker_index(&t321, 6).unwrap(), p(&[4, 1, 1]));
        let empty = TriangularPartition::new(Partition::empty()).unwrap();
        assert_eq!(whittaker_index(&empty, 3).unwrap(), p(&[1, 1, 1]));
        let t11 = TriangularPartition::new(p(&[1, 1])).unwrap();
        assert_eq!(whittaker_index(&t11, 3), Err(Error::NTooSmall { n: 3, min: 4 }));
        assert_eq!(whittaker_index(&t11, 4).unwrap(), p(&[2, 2]));
    }

    #[test]
    fn subpartition_enumeration() {
        let brute = |tau: &Partition| -> usize {
            (0..=tau.size()).flat_map(partitions_of).filter(|a| tau.contains(a)).count()
        };
        assert_eq!(subpartitions(&p(&[1, 1])), vec![Partition::empty(), p(&[1]), p(&[1, 1])]);
        assert_eq!(subpartitions(&p(&[2])).len(), 3);
        assert_eq!(subpartitions(&p(&[2, 1])).len(), 5);
        for tau in [p(&[2, 1]), p(&[3, 2, 1]), p(&[4, 2]), p(&[2, 2, 1, 1])] {
            assert_eq!(subpartitions(&tau).len(), brute(&tau), "{tau}");
        }
    }

    #[test]
    fn columns_and_hooks() {
        let mu = p(&[3, 2, 2, 1]);
        let bar = mu.remove_first_column();
        assert_eq!(bar, p(&[2, 1, 1]));
        assert_eq!(bar.add_first_column(8), Some(mu));
        assert_eq!(p(&[2, 1]).add_first_column(3), None);
        assert_eq!(FrobeniusHook::new(2, 3).to_partition(), p(&[3, 1, 1, 1]));
        assert_eq!(p(&[3, 1, 1, 1]).as_hook(), Some(FrobeniusHook::new(2, 3)));
        assert_eq!(p(&[2, 2]).as_hook(), None);
    }
}

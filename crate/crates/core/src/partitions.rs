//! Integer partitions and the combinatorial data derived from them.
//!
//! A [`Partition`] is stored in its canonical form: positive parts in weakly
//! decreasing order. Everything else (conjugate, multiplicities, degeneracy
//! numbers, block offsets) is computed on demand.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on `n` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from arbitrary non-negative parts: zeros are
    /// dropped and the rest sorted into weakly decreasing order.
    pub fn normalize(raw: &[usize]) -> Result<Self> {
        let mut parts: Vec<usize> = raw.iter().copied().filter(|&p| p > 0).collect();
        if parts.is_empty() {
            return Err(Error::EmptyPartition);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Builds a partition from exponent form: `(part, multiplicity)` pairs.
    pub fn from_multiplicities(pairs: &[(usize, usize)]) -> Result<Self> {
        let raw: Vec<usize> = pairs
            .iter()
            .flat_map(|&(part, mult)| std::iter::repeat_n(part, mult))
            .collect();
        Self::normalize(&raw)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The largest part, `λ_1`.
    pub fn largest(&self) -> usize {
        self.parts[0]
    }

    /// `μ_i = #{j : λ_j ≥ i}` for `1 ≤ i ≤ λ_1`.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.largest())
            .map(|i| self.parts.iter().take_while(|&&p| p >= i).count())
            .collect();
        Partition { parts }
    }

    /// Part value to multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut map = BTreeMap::new();
        for &p in &self.parts {
            *map.entry(p).or_insert(0) += 1;
        }
        map
    }

    /// Number of even part values that occur an odd number of times.
    pub fn degeneracy(&self) -> usize {
        degeneracy_of(self.multiplicities().into_iter())
    }

    /// Degeneracy of the sub-partition made of the parts `≤ i`.
    pub fn partial_degeneracy(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.largest() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.largest(),
            });
        }
        Ok(degeneracy_of(
            self.multiplicities().into_iter().filter(|&(p, _)| p <= i),
        ))
    }

    /// The sequence `λ^(1) = λ, λ^(2), …, λ^(λ_1)`, each obtained from the
    /// previous one by removing the last box of every row.
    pub fn derived_sequence(&self) -> Vec<Partition> {
        let mut out = Vec::with_capacity(self.largest());
        let mut current = self.clone();
        loop {
            let next: Vec<usize> = current.parts.iter().filter(|&&p| p > 1).map(|&p| p - 1).collect();
            out.push(current);
            if next.is_empty() {
                break;
            }
            current = Partition { parts: next };
        }
        out
    }

    pub fn block_grid(&self) -> BlockGrid {
        let mut offsets = Vec::with_capacity(self.len() + 1);
        offsets.push(0);
        let mut acc = 0;
        for &p in &self.parts {
            acc += p;
            offsets.push(acc);
        }
        BlockGrid { offsets }
    }
}

fn degeneracy_of(mults: impl Iterator<Item = (usize, usize)>) -> usize {
    mults.filter(|&(part, mult)| part % 2 == 0 && mult % 2 == 1).count()
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(raw: Vec<usize>) -> Result<Self> {
        Partition::normalize(&raw)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `4,2,2,2` or exponent form `2^3,4^1` (the two may be mixed).
    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::ParsePartition {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.is_empty() {
            return Err(fail("empty input"));
        }
        let mut raw = Vec::new();
        for item in trimmed.split(',') {
            let item = item.trim();
            let (part, mult) = match item.split_once('^') {
                Some((p, e)) => (p.trim(), e.trim()),
                None => (item, "1"),
            };
            let part: usize = part.parse().map_err(|_| fail("parts must be integers"))?;
            let mult: usize = mult.parse().map_err(|_| fail("exponents must be integers"))?;
            raw.extend(std::iter::repeat_n(part, mult));
        }
        Partition::normalize(&raw)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

/// Cumulative offsets of a λ-decomposition: `0, λ_1, λ_1+λ_2, …, n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockGrid {
    offsets: Vec<usize>,
}

impl BlockGrid {
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn blocks(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn n(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Zero-based index range of block `b` (also zero-based).
    pub fn range(&self, b: usize) -> Range<usize> {
        self.offsets[b]..self.offsets[b + 1]
    }

    pub fn size(&self, b: usize) -> usize {
        self.offsets[b + 1] - self.offsets[b]
    }

    /// Block containing zero-based index `idx`.
    pub fn block_of(&self, idx: usize) -> usize {
        self.offsets[1..].partition_point(|&end| end <= idx)
    }

    /// Zero-based indices after which a rule is drawn (block ends except the last).
    pub fn rule_after(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets[1..self.offsets.len() - 1].iter().map(|&o| o - 1)
    }
}

/// All partitions of `n` in lexicographically decreasing order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    enumerate_partitions_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_partitions_bounded(n: usize, bound: usize) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::EmptyPartition);
    }
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    extend_partitions(n, n, &mut prefix, &mut out);
    Ok(out)
}

fn extend_partitions(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: prefix.clone() });
        return;
    }
    for part in (1..=rest.min(max)).rev() {
        prefix.push(part);
        extend_partitions(rest - part, part, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::normalize(parts).unwrap()
    }

    /// p(n) via Euler's pentagonal number recurrence.
    fn partition_count(n: usize) -> usize {
        let mut table = vec![0i64; n + 1];
        table[0] = 1;
        for m in 1..=n as i64 {
            let mut total = 0i64;
            for k in 1.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                total += sign * table[(m - g1) as usize];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= m {
                    total += sign * table[(m - g2) as usize];
                }
            }
            table[m as usize] = total;
        }
        table[n] as usize
    }

    #[test]
    fn normalize_examples() {
        let a = Partition::normalize(&[3, 3, 2, 0]).unwrap();
        assert_eq!(a.parts(), &[3, 3, 2]);
        assert_eq!((a.n(), a.len()), (8, 3));
        let b = Partition::normalize(&[1]).unwrap();
        assert_eq!((b.n(), b.len()), (1, 1));
        let c = Partition::normalize(&[2, 4, 2, 2]).unwrap();
        assert_eq!(c.parts(), &[4, 2, 2, 2]);
        assert_eq!((c.n(), c.len()), (10, 4));
    }

    #[test]
    fn normalize_rejects_empty() {
        assert_eq!(Partition::normalize(&[]), Err(Error::EmptyPartition));
        assert_eq!(Partition::normalize(&[0, 0]), Err(Error::EmptyPartition));
    }

    #[test]
    fn parse_both_syntaxes() {
        assert_eq!("4,2,2,2".parse::<Partition>().unwrap(), p(&[4, 2, 2, 2]));
        assert_eq!("2^3,4^1".parse::<Partition>().unwrap(), p(&[4, 2, 2, 2]));
        assert_eq!("1^0,2^1,3^2".parse::<Partition>().unwrap(), p(&[3, 3, 2]));
        assert_eq!("(3, 2, 1)".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert!("".parse::<Partition>().is_err());
        assert!("a,b".parse::<Partition>().is_err());
        assert_eq!("0,0".parse::<Partition>(), Err(Error::EmptyPartition));
    }

    #[test]
    fn exponent_form_constructor() {
        assert_eq!(
            Partition::from_multiplicities(&[(2, 3), (4, 1)]).unwrap(),
            p(&[4, 2, 2, 2])
        );
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[2, 2, 1, 1]).conjugate(), p(&[4, 2]));
        assert_eq!(p(&[5]).conjugate(), p(&[1, 1, 1, 1, 1]));
        assert_eq!(p(&[4, 2, 2, 2]).conjugate(), p(&[4, 4, 1, 1]));
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(p(&[4, 2, 2, 2]).degeneracy(), 2);
        assert_eq!(p(&[2, 2, 1, 1]).degeneracy(), 0);
        assert_eq!(p(&[3, 2, 1]).degeneracy(), 1);
    }

    #[test]
    fn partial_degeneracy_examples() {
        let lam = p(&[4, 2, 2, 2]);
        let d: Vec<usize> = (1..=4).map(|i| lam.partial_degeneracy(i).unwrap()).collect();
        assert_eq!(d, vec![0, 1, 1, 2]);
        let ones = p(&[1, 1, 1]);
        assert_eq!(ones.partial_degeneracy(1), Ok(0));
        assert_eq!(p(&[2]).partial_degeneracy(2), Ok(1));
        assert_eq!(
            lam.partial_degeneracy(5),
            Err(Error::IndexOutOfRange { index: 5, max: 4 })
        );
        assert!(lam.partial_degeneracy(0).is_err());
    }

    #[test]
    fn derived_sequence_examples() {
        assert_eq!(
            p(&[3, 3, 2]).derived_sequence(),
            vec![p(&[3, 3, 2]), p(&[2, 2, 1]), p(&[1, 1])]
        );
        assert_eq!(p(&[1, 1, 1]).derived_sequence(), vec![p(&[1, 1, 1])]);
        assert_eq!(
            p(&[4, 2, 2, 2]).derived_sequence(),
            vec![p(&[4, 2, 2, 2]), p(&[3, 1, 1, 1]), p(&[2]), p(&[1])]
        );
    }

    #[test]
    fn block_grid_examples() {
        let g = p(&[2, 1, 1, 1]).block_grid();
        assert_eq!(g.offsets(), &[0, 2, 3, 4, 5]);
        assert_eq!(g.rule_after().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(p(&[7]).block_grid().offsets(), &[0, 7]);
        let g = p(&[3, 2, 1]).block_grid();
        assert_eq!(g.offsets(), &[0, 3, 5, 6]);
        assert_eq!(g.block_of(0), 0);
        assert_eq!(g.block_of(3), 1);
        assert_eq!(g.block_of(5), 2);
        assert_eq!(g.range(1), 3..5);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_partitions(1).unwrap(), vec![p(&[1])]);
        assert_eq!(
            enumerate_partitions(4).unwrap(),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(enumerate_partitions(8).unwrap().len(), 22);
        assert_eq!(enumerate_partitions(13), Err(Error::BoundExceeded { n: 13, bound: 12 }));
    }

    #[test]
    fn enumeration_matches_pentagonal_recurrence() {
        for n in 1..=12 {
            let all = enumerate_partitions(n).unwrap();
            assert_eq!(all.len(), partition_count(n), "n = {n}");
            let mut sorted = all.clone();
            sorted.sort_by(|a, b| b.cmp(a));
            assert_eq!(sorted, all, "not lexicographically decreasing for n = {n}");
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
            assert!(all.iter().all(|lam| lam.n() == n));
        }
        let total: usize = (1..=8).map(partition_count).sum();
        assert_eq!(total, 66);
    }

    #[test]
    fn partition_invariants_exhaustive() {
        for n in 1..=12 {
            for lam in enumerate_partitions(n).unwrap() {
                let mu = lam.conjugate();
                assert_eq!(mu.conjugate(), lam);
                assert_eq!(mu.n(), lam.n());

                let distinct_even = lam.multiplicities().keys().filter(|&&k| k % 2 == 0).count();
                assert!(lam.degeneracy() <= distinct_even);
                let recount = lam
                    .parts()
                    .iter()
                    .filter(|&&x| x % 2 == 0)
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .filter(|&&x| lam.parts().iter().filter(|&&y| y == x).count() % 2 == 1)
                    .count();
                assert_eq!(lam.degeneracy(), recount);

                let seq = lam.derived_sequence();
                assert_eq!(seq.len(), lam.largest());
                assert_eq!(seq.last().unwrap(), &p(&vec![1; mu.parts()[mu.len() - 1]]));
                for w in seq.windows(2) {
                    assert_eq!(w[0].n() - w[0].len(), w[1].n());
                }
                for (i, lam_i) in seq.iter().enumerate() {
                    assert_eq!(lam_i.conjugate().parts(), &mu.parts()[i..]);
                }
            }
        }
    }
}

//! Numerical sets: cofinite subsets of ℕ₀ containing 0, stored by their gaps.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{parse_int_list, DistinctPartition};

/// A cofinite subset `S ⊆ ℕ₀` with `0 ∈ S`, represented by its gap set `ℕ₀ ∖ S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NumericalSet {
    gaps: Vec<u32>,
}

/// Result of the closure test. `witness` is a pair of members whose sum is a gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SemigroupCheck {
    pub is_semigroup: bool,
    pub witness: Option<(u32, u32)>,
}

impl NumericalSet {
    /// `S = ℕ₀`.
    pub fn naturals() -> Self {
        NumericalSet { gaps: Vec::new() }
    }

    /// Builds a set from any collection of distinct positive gaps.
    pub fn from_gaps<I: IntoIterator<Item = u32>>(gaps: I) -> Result<Self> {
        let mut gaps: Vec<u32> = gaps.into_iter().collect();
        gaps.sort_unstable();
        if gaps.first() == Some(&0) {
            return Err(Error::MalformedSet("0 cannot be a gap".into()));
        }
        if let Some(w) = gaps.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePart(w[0]));
        }
        Ok(NumericalSet { gaps })
    }

    /// `S_λ`: the set whose gaps are exactly the parts of `λ`.
    pub fn from_partition(p: &DistinctPartition) -> Self {
        NumericalSet {
            gaps: p.parts().to_vec(),
        }
    }

    /// Inverse of [`NumericalSet::from_partition`]; fails on `ℕ₀`.
    pub fn to_partition(&self) -> Result<DistinctPartition> {
        if self.gaps.is_empty() {
            return Err(Error::NoGaps);
        }
        Ok(DistinctPartition::from_sorted(self.gaps.clone()))
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    /// Largest gap `F(S)`, or 0 when there are none.
    pub fn frobenius(&self) -> u32 {
        self.gaps.last().copied().unwrap_or(0)
    }

    /// Number of gaps `G(S)`.
    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    /// Smallest positive member `M(S)`.
    pub fn multiplicity(&self) -> u32 {
        // Gaps are sorted, so the first index where gaps[i] != i+1 locates it.
        self.gaps
            .iter()
            .enumerate()
            .find(|&(i, &g)| g != i as u32 + 1)
            .map_or(self.gaps.len() as u32 + 1, |(i, _)| i as u32 + 1)
    }

    pub fn contains(&self, x: u32) -> bool {
        self.gaps.binary_search(&x).is_err()
    }

    /// Members of `S` in `[0, bound]`, ascending.
    pub fn small_elements(&self, bound: u32) -> Vec<u32> {
        (0..=bound).filter(|&x| self.contains(x)).collect()
    }

    /// Closure under addition. Only sums up to `F(S)` can fail, so only
    /// members below `F(S)` are paired. The witness is the first failing
    /// pair `(a, b)`, `a <= b`, in lexicographic order.
    pub fn is_semigroup(&self) -> SemigroupCheck {
        let f = self.frobenius();
        let members: Vec<u32> = (1..f).filter(|&x| self.contains(x)).collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i..] {
                if a + b > f {
                    break;
                }
                if !self.contains(a + b) {
                    return SemigroupCheck {
                        is_semigroup: false,
                        witness: Some((a, b)),
                    };
                }
            }
        }
        SemigroupCheck {
            is_semigroup: true,
            witness: None,
        }
    }
}

/// `0,3,4,7,9,->`: members up to `F+1`, then the arrow.
impl fmt::Display for NumericalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let limit = if self.gaps.is_empty() { 0 } else { self.frobenius() + 1 };
        for x in self.small_elements(limit) {
            write!(f, "{x},")?;
        }
        write!(f, "->")
    }
}

impl FromStr for NumericalSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let malformed = || Error::MalformedSet(s.to_string());
        let body = s.trim();
        let body = body
            .strip_suffix("->")
            .or_else(|| body.strip_suffix('→'))
            .ok_or_else(malformed)?;
        let members = parse_int_list(body).map_err(|_| malformed())?;
        if members.first() != Some(&0) || members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(malformed());
        }
        let top = *members.last().expect("checked non-empty") as u32;
        let listed: Vec<u32> = members.iter().map(|&m| m as u32).collect();
        let gaps = (1..top).filter(|x| listed.binary_search(x).is_err());
        NumericalSet::from_gaps(gaps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(gaps: &[u32]) -> NumericalSet {
        NumericalSet::from_gaps(gaps.iter().copied()).unwrap()
    }

    #[test]
    fn from_partition_statistics() {
        let p = DistinctPartition::new([1, 2, 5, 6, 8]).unwrap();
        let s = NumericalSet::from_partition(&p);
        assert_eq!(s.to_string(), "0,3,4,7,9,->");
        assert_eq!((s.frobenius(), s.genus(), s.multiplicity()), (8, 5, 3));

        let q = DistinctPartition::new([1, 2, 4, 5, 7, 10, 13]).unwrap();
        assert_eq!(
            NumericalSet::from_partition(&q).to_string(),
            "0,3,6,8,9,11,12,14,->"
        );

        let one = NumericalSet::from_partition(&DistinctPartition::new([1]).unwrap());
        assert_eq!(one.to_string(), "0,2,->");
        assert_eq!((one.frobenius(), one.genus(), one.multiplicity()), (1, 1, 2));
    }

    #[test]
    fn small_elements_examples() {
        assert_eq!(set(&[1, 2, 5, 6, 8]).small_elements(8), vec![0, 3, 4, 7]);
        assert_eq!(
            set(&[1, 2, 4, 5, 7, 10, 13]).small_elements(13),
            vec![0, 3, 6, 8, 9, 11, 12]
        );
        assert_eq!(set(&[1, 2, 4]).small_elements(0), vec![0]);
    }

    #[test]
    fn semigroup_examples() {
        let check = set(&[1, 2, 5, 6, 8]).is_semigroup();
        assert!(!check.is_semigroup);
        assert_eq!(check.witness, Some((3, 3)));
        assert!(set(&[1, 2, 3, 6, 7, 11]).is_semigroup().is_semigroup);
        assert!(NumericalSet::naturals().is_semigroup().is_semigroup);
    }

    #[test]
    fn parse_roundtrip() {
        let s: NumericalSet = "0,3,4,7,9,->".parse().unwrap();
        assert_eq!(s.gaps(), &[1, 2, 5, 6, 8]);
        assert_eq!("0,->".parse::<NumericalSet>().unwrap(), NumericalSet::naturals());
        assert_eq!(NumericalSet::naturals().to_string(), "0,->");
        assert!("3,4,->".parse::<NumericalSet>().is_err());
        assert!("0,3,4".parse::<NumericalSet>().is_err());
        assert!("0,4,3,->".parse::<NumericalSet>().is_err());
    }

    #[test]
    fn naturals_has_no_partition() {
        assert_eq!(NumericalSet::naturals().to_partition(), Err(Error::NoGaps));
        assert_eq!(NumericalSet::naturals().multiplicity(), 1);
    }
}

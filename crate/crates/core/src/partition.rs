//! Partitions into distinct parts.
//!
//! Parts are always kept in ascending order, `λ_1 < λ_2 < … < λ_t`, and every
//! rendering of a partition (display, JSON, CSV) uses that order.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};

/// `T_n = n(n+1)/2`.
pub const fn triangular_number(n: u32) -> u32 {
    n * (n + 1) / 2
}

/// A partition into distinct positive parts, stored ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DistinctPartition {
    parts: Vec<u32>,
    weight: u32,
}

impl DistinctPartition {
    /// Validates and sorts `values`.
    pub fn new<I>(values: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        let mut parts = Vec::new();
        for v in values {
            let v: i64 = v.into();
            if v < 1 || v > i64::from(u32::MAX) {
                return Err(Error::NonPositivePart(v));
            }
            parts.push(v as u32);
        }
        if parts.is_empty() {
            return Err(Error::Empty);
        }
        parts.sort_unstable();
        if let Some(w) = parts.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePart(w[0]));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Caller guarantees `parts` is non-empty and strictly increasing.
    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(!parts.is_empty());
        debug_assert!(parts.windows(2).all(|w| w[0] < w[1]));
        let weight = parts.iter().sum();
        DistinctPartition { parts, weight }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Number of parts `t`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Always false; kept for the `len`/`is_empty` pairing.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part `λ_t`.
    pub fn largest(&self) -> u32 {
        *self.parts.last().expect("partition is never empty")
    }

    pub fn contains(&self, x: u32) -> bool {
        self.parts.binary_search(&x).is_ok()
    }

    /// True iff the partition has at least two parts.
    pub fn is_proper(&self) -> bool {
        self.parts.len() >= 2
    }

    pub fn missing_parts(&self) -> MissingParts {
        let mut values = Vec::with_capacity(self.largest() as usize - self.len());
        let mut next = self.parts.iter().peekable();
        for x in 1..=self.largest() {
            if next.peek() == Some(&&x) {
                next.next();
            } else {
                values.push(x);
            }
        }
        MissingParts { values }
    }

    pub fn decomposition(&self) -> WeightDecomposition {
        triangular_decompose(self.weight)
    }

    /// Membership bitmap indexed by value, covering `0..=largest()`.
    pub fn membership(&self) -> Vec<bool> {
        let mut present = vec![false; self.largest() as usize + 1];
        for &p in &self.parts {
            present[p as usize] = true;
        }
        present
    }
}

impl fmt::Display for DistinctPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for DistinctPartition {
    type Err = Error;

    /// Accepts comma-separated parts, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let values = parse_int_list(inner).map_err(|_| Error::MalformedSet(s.to_string()))?;
        DistinctPartition::new(values)
    }
}

pub(crate) fn parse_int_list(s: &str) -> std::result::Result<Vec<i64>, std::num::ParseIntError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

/// JSON record `{"parts":[...],"weight":w,"n":n,"d":d}`.
impl Serialize for DistinctPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let dec = self.decomposition();
        let mut st = serializer.serialize_struct("DistinctPartition", 4)?;
        st.serialize_field("parts", &self.parts)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("n", &dec.n)?;
        st.serialize_field("d", &dec.d)?;
        st.end()
    }
}

/// Checked constructor; input may be unsorted.
pub fn make_partition<I>(values: I) -> Result<DistinctPartition>
where
    I: IntoIterator,
    I::Item: Into<i64>,
{
    DistinctPartition::new(values)
}

pub fn is_proper(p: &DistinctPartition) -> bool {
    p.is_proper()
}

/// The values of `{1, …, λ_t}` that are not parts, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingParts {
    values: Vec<u32>,
}

impl MissingParts {
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `m`, the number of missing parts.
    pub fn count(&self) -> usize {
        self.values.len()
    }
}

pub fn missing_parts(p: &DistinctPartition) -> MissingParts {
    p.missing_parts()
}

/// `N = T_n - d` with `0 <= d <= n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct WeightDecomposition {
    pub weight: u32,
    pub n: u32,
    pub d: u32,
}

impl WeightDecomposition {
    pub fn is_triangular(&self) -> bool {
        self.d == 0
    }

    pub fn triangular(&self) -> u32 {
        triangular_number(self.n)
    }
}

/// Unique `(n, d)` with `N = T_n - d`, `0 <= d <= n-1`.
pub fn triangular_decompose(weight: u32) -> WeightDecomposition {
    // Float estimate, then correct by at most a step either way.
    let mut n = ((((8 * u64::from(weight) + 1) as f64).sqrt() - 1.0) / 2.0).ceil() as u32;
    while n > 0 && triangular_number(n - 1) >= weight {
        n -= 1;
    }
    while triangular_number(n) < weight {
        n += 1;
    }
    WeightDecomposition {
        weight,
        n,
        d: triangular_number(n) - weight,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum Parity {
    #[default]
    All,
    OddOnly,
    EvenOnly,
}

impl Parity {
    pub fn admits(self, x: u32) -> bool {
        match self {
            Parity::All => true,
            Parity::OddOnly => x % 2 == 1,
            Parity::EvenOnly => x.is_multiple_of(2),
        }
    }

    /// Smallest admitted value `>= x`.
    fn align_up(self, x: u32) -> u32 {
        if self.admits(x) {
            x
        } else {
            x + 1
        }
    }

    fn step(self) -> u32 {
        match self {
            Parity::All => 1,
            _ => 2,
        }
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Parity::All),
            "odd" | "odd-only" => Ok(Parity::OddOnly),
            "even" | "even-only" => Ok(Parity::EvenOnly),
            other => Err(Error::InvalidEta(format!("unknown parity {other:?}"))),
        }
    }
}

/// Restricts which distinct-part partitions an enumeration emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartClassFilter {
    pub min_parts: usize,
    pub max_part: Option<u32>,
    pub parity: Parity,
}

impl Default for PartClassFilter {
    fn default() -> Self {
        PartClassFilter {
            min_parts: 1,
            max_part: None,
            parity: Parity::All,
        }
    }
}

impl PartClassFilter {
    /// Partitions with at least two parts (the families `𝔻_N`).
    pub fn proper() -> Self {
        PartClassFilter {
            min_parts: 2,
            ..Self::default()
        }
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    pub fn with_min_parts(mut self, min_parts: usize) -> Self {
        self.min_parts = min_parts.max(1);
        self
    }

    pub fn with_max_part(mut self, max_part: Option<u32>) -> Self {
        self.max_part = max_part;
        self
    }

    pub fn accepts(&self, p: &DistinctPartition) -> bool {
        p.len() >= self.min_parts
            && self.max_part.is_none_or(|m| p.largest() <= m)
            && p.parts().iter().all(|&x| self.parity.admits(x))
    }

    /// Largest sum of distinct admitted values in `lo..=hi`.
    fn max_sum_between(&self, lo: u32, hi: u32) -> u64 {
        let first = self.parity.align_up(lo);
        if first > hi {
            return 0;
        }
        let step = self.parity.step();
        let count = u64::from((hi - first) / step + 1);
        let last = u64::from(first) + (count - 1) * u64::from(step);
        count * (u64::from(first) + last) / 2
    }
}

/// Streams the partitions of a weight into distinct parts in lexicographic
/// order of the ascending part sequence.
///
/// Depth-first search over the next (larger) part; a prefix is abandoned as
/// soon as the largest sum still reachable above its last part falls short of
/// the remaining weight.
#[derive(Debug, Clone)]
pub struct DistinctPartitions {
    filter: PartClassFilter,
    first_part: RangeInclusive<u32>,
    stack: Vec<u32>,
    remaining: u32,
    started: bool,
    done: bool,
}

impl DistinctPartitions {
    pub fn new(weight: u32, filter: PartClassFilter) -> Self {
        DistinctPartitions {
            filter,
            first_part: 1..=weight,
            stack: Vec::new(),
            remaining: weight,
            started: false,
            done: weight == 0,
        }
    }

    /// Only emit partitions whose smallest part lies in `range`.
    pub fn with_first_part(mut self, range: RangeInclusive<u32>) -> Self {
        self.first_part = range;
        self
    }

    /// Smallest admissible next part in `lo..=hi`; the flag marks a leaf
    /// (the part completes the weight).
    fn next_candidate(&self, lo: u32, hi: u32) -> Option<(u32, bool)> {
        let rem = self.remaining;
        let cap = self.filter.max_part.unwrap_or(u32::MAX).min(hi);
        let parity = self.filter.parity;
        let depth = self.stack.len() + 1;
        let mut p = parity.align_up(lo.max(1));
        while p <= cap {
            if p == rem {
                return (depth >= self.filter.min_parts).then_some((p, true));
            }
            // An internal node needs room for at least one larger part.
            if 2 * p < rem {
                let need = u64::from(rem - p);
                let reach = match self.filter.max_part {
                    Some(m) => self.filter.max_sum_between(p + 1, m),
                    None => u64::MAX,
                };
                if reach >= need {
                    return Some((p, false));
                }
                p += parity.step();
            } else {
                // Only the leaf p == rem is left at this level.
                if rem <= cap && parity.admits(rem) && rem >= p {
                    p = rem;
                } else {
                    return None;
                }
            }
        }
        None
    }

    fn current(&self) -> DistinctPartition {
        DistinctPartition::from_sorted(self.stack.clone())
    }
}

impl Iterator for DistinctPartitions {
    type Item = DistinctPartition;

    fn next(&mut self) -> Option<DistinctPartition> {
        if self.done {
            return None;
        }
        let mut start = if self.started {
            // Resume after the leaf emitted last time.
            match self.stack.pop() {
                Some(p) => {
                    self.remaining += p;
                    p + 1
                }
                None => {
                    self.done = true;
                    return None;
                }
            }
        } else {
            self.started = true;
            *self.first_part.start()
        };
        loop {
            let (lo, hi) = if self.stack.is_empty() {
                (start.max(*self.first_part.start()), *self.first_part.end())
            } else {
                (start, u32::MAX)
            };
            match self.next_candidate(lo, hi) {
                Some((p, leaf)) => {
                    self.stack.push(p);
                    self.remaining -= p;
                    if leaf {
                        return Some(self.current());
                    }
                    start = p + 1;
                }
                None => match self.stack.pop() {
                    Some(p) => {
                        self.remaining += p;
                        start = p + 1;
                    }
                    None => {
                        self.done = true;
                        return None;
                    }
                },
            }
        }
    }
}

pub fn enumerate_distinct(weight: u32, filter: PartClassFilter) -> DistinctPartitions {
    DistinctPartitions::new(weight, filter)
}

/// Applies `f` to every partition of `weight` passing `filter`, splitting the
/// stream by smallest part across the rayon pool. Results come back in
/// enumeration order regardless of scheduling.
pub fn par_filter_map_distinct<T, F>(weight: u32, filter: PartClassFilter, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(DistinctPartition) -> Option<T> + Sync + Send,
{
    (1..=weight)
        .into_par_iter()
        .map(|first| {
            DistinctPartitions::new(weight, filter)
                .with_first_part(first..=first)
                .filter_map(&f)
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

//! Largest-part bounds, maximal unrefinable partitions and the exceptional
//! families.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::criteria::is_unrefinable;
use crate::error::{Error, Result};
use crate::partition::{
    enumerate_distinct, par_filter_map_distinct, triangular_decompose, triangular_number,
    DistinctPartition, PartClassFilter,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Triangular,
    D1,
    D2,
    D3,
    GeneralOdd,
    GeneralEven,
}

/// The sharp upper bound on `λ_t` for unrefinable partitions of `T_n - d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundSpec {
    pub n: u32,
    pub d: u32,
    pub bound: u32,
    pub regime: Regime,
}

pub fn lambda_t_bound(n: u32, d: u32) -> Result<BoundSpec> {
    if n < 6 || d >= n {
        return Err(Error::OutOfRange { n });
    }
    let (regime, bound) = match d {
        0 => (Regime::Triangular, 2 * n - 4),
        1 => (Regime::D1, 2 * n - 2),
        2 => (Regime::D2, 2 * n - 3),
        3 => (Regime::D3, 2 * n - 4),
        _ if (n - d) % 2 == 1 => (Regime::GeneralOdd, 2 * n - 4),
        _ => (Regime::GeneralEven, 2 * n - 5),
    };
    Ok(BoundSpec { n, d, bound, regime })
}

/// Bound for a weight, via its decomposition.
pub fn bound_for_weight(weight: u32) -> Result<BoundSpec> {
    let dec = triangular_decompose(weight);
    lambda_t_bound(dec.n, dec.d)
}

/// Every unrefinable partition of `weight` with at least two parts, in
/// enumeration order.
pub fn enumerate_unrefinable(weight: u32) -> impl Iterator<Item = DistinctPartition> {
    enumerate_distinct(weight, PartClassFilter::proper()).filter(is_unrefinable)
}

/// Parallel collection of [`enumerate_unrefinable`]; same order.
pub fn enumerate_unrefinable_par(weight: u32) -> Vec<DistinctPartition> {
    par_filter_map_distinct(weight, PartClassFilter::proper(), |p| {
        is_unrefinable(&p).then_some(p)
    })
}

/// Unrefinable partitions of `weight` with largest part exactly `largest`,
/// in lexicographic order.
///
/// Depth-first over `x = 1, 2, …, largest-1`, deciding membership of each.
/// A value can be added only if no two smaller distinct missing values sum
/// to it, so every complete path is unrefinable except possibly at
/// `largest`, which is checked once the remaining weight is spent.
pub fn unrefinable_with_largest(weight: u32, largest: u32) -> Vec<DistinctPartition> {
    let mut out = Vec::new();
    if largest == 0 || largest > weight {
        return out;
    }
    if largest == weight {
        // Only the one-part partition, which is not proper.
        return out;
    }
    let mut search = LargestSearch {
        largest,
        present: vec![false; largest as usize + 1],
        chosen: Vec::new(),
        out: &mut out,
    };
    search.present[largest as usize] = true;
    search.descend(1, weight - largest);
    out
}

struct LargestSearch<'a> {
    largest: u32,
    present: Vec<bool>,
    chosen: Vec<u32>,
    out: &'a mut Vec<DistinctPartition>,
}

impl LargestSearch<'_> {
    /// Two distinct values below `x`, both absent, summing to `x`.
    fn splits(&self, x: u32) -> bool {
        (1..x.div_ceil(2)).any(|a| !self.present[a as usize] && !self.present[(x - a) as usize])
    }

    fn descend(&mut self, x: u32, remaining: u32) {
        if remaining == 0 {
            // Everything in x..largest is missing from here on.
            for v in x..self.largest {
                self.present[v as usize] = false;
            }
            if !self.splits(self.largest) {
                let mut parts = self.chosen.clone();
                parts.push(self.largest);
                self.out.push(DistinctPartition::from_sorted(parts));
            }
            return;
        }
        if x >= self.largest || x > remaining {
            return;
        }
        // Largest total still reachable from x..largest-1.
        let top = u64::from(self.largest - 1);
        let reach = (top * (top + 1) - u64::from(x - 1) * u64::from(x)) / 2;
        if reach < u64::from(remaining) {
            return;
        }
        if !self.splits(x) {
            self.present[x as usize] = true;
            self.chosen.push(x);
            self.descend(x + 1, remaining - x);
            self.chosen.pop();
        }
        self.present[x as usize] = false;
        // With x missing, largest - x must not be a missing partner.
        let partner = self.largest - x;
        if partner < x && partner != x && !self.present[partner as usize] {
            return;
        }
        self.descend(x + 1, remaining);
    }
}

/// How [`maximal_unrefinable`] searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// Filter every distinct partition of the weight.
    Exhaustive,
    /// Pruned search, largest part descending, stop at the first hit.
    #[default]
    Pruned,
    /// Only candidates with `λ_t` at the bound: the complement-symmetric
    /// family plus the exceptional partitions. Needs `n >= 6`.
    Pinned,
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "pruned" => Ok(SearchMode::Pruned),
            "pinned" => Ok(SearchMode::Pinned),
            other => Err(Error::InvalidCase(format!("unknown search mode {other:?}"))),
        }
    }
}

/// `MUP(N)`: the unrefinable partitions of `weight` with the largest
/// possible largest part, in lexicographic order.
pub fn maximal_unrefinable(weight: u32, mode: SearchMode) -> Result<Vec<DistinctPartition>> {
    let found = match mode {
        SearchMode::Exhaustive => {
            let all = enumerate_unrefinable_par(weight);
            let top = all.iter().map(DistinctPartition::largest).max();
            all.into_iter().filter(|p| Some(p.largest()) == top).collect()
        }
        SearchMode::Pruned => (1..weight)
            .rev()
            .map(|largest| unrefinable_with_largest(weight, largest))
            .find(|v| !v.is_empty())
            .unwrap_or_default(),
        SearchMode::Pinned => pinned_candidates(weight)?,
    };
    if found.is_empty() {
        return Err(Error::EmptyUniverse(weight));
    }
    Ok(found)
}

/// Candidates with `λ_t` at the bound: for each `x < λ_t/2`, exactly one of
/// `x`, `λ_t - x` is a part and `λ_t/2` is not; plus π̃, σ̃, τ̃.
fn pinned_candidates(weight: u32) -> Result<Vec<DistinctPartition>> {
    let spec = bound_for_weight(weight)?;
    let largest = spec.bound;
    let half = (largest - 1) / 2;
    let mut found = Vec::new();
    for mask in 0u64..(1u64 << half) {
        let mut parts = Vec::with_capacity(half as usize + 1);
        for x in 1..=half {
            if mask >> (x - 1) & 1 == 1 {
                parts.push(x);
            } else {
                parts.push(largest - x);
            }
        }
        parts.push(largest);
        if parts.iter().sum::<u32>() != weight {
            continue;
        }
        parts.sort_unstable();
        let p = DistinctPartition::from_sorted(parts);
        if is_unrefinable(&p) {
            found.push(p);
        }
    }
    for kind in [ExceptionalKind::Pi, ExceptionalKind::Sigma, ExceptionalKind::Tau] {
        if let Ok(e) = exceptional(kind, spec.n, None) {
            let p = e.partition;
            if p.weight() == weight && p.largest() == largest && is_unrefinable(&p) && !found.contains(&p) {
                found.push(p);
            }
        }
    }
    found.sort();
    Ok(found)
}

/// Keeps the partitions with `⌊λ_t/2⌋` missing parts, the most possible.
pub fn max_missing_subfamily(mup: &[DistinctPartition]) -> Vec<DistinctPartition> {
    mup.iter()
        .filter(|p| p.missing_parts().count() == (p.largest() / 2) as usize)
        .cloned()
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExceptionalKind {
    Pi,
    Sigma,
    Tau,
    Zeta,
}

impl ExceptionalKind {
    pub fn name(self) -> &'static str {
        match self {
            ExceptionalKind::Pi => "pi",
            ExceptionalKind::Sigma => "sigma",
            ExceptionalKind::Tau => "tau",
            ExceptionalKind::Zeta => "zeta",
        }
    }
}

impl fmt::Display for ExceptionalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExceptionalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pi" => Ok(ExceptionalKind::Pi),
            "sigma" => Ok(ExceptionalKind::Sigma),
            "tau" => Ok(ExceptionalKind::Tau),
            "zeta" => Ok(ExceptionalKind::Zeta),
            other => Err(Error::InvalidCase(format!("unknown exceptional kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalPartition {
    pub kind: ExceptionalKind,
    pub n: u32,
    pub k: Option<u32>,
    pub partition: DistinctPartition,
}

/// The literal patterns
/// `π̃ = (1..n-3, n+1, 2n-4)`, `σ̃ = (1..n-2, 2n-4)`, `τ̃ = (1..n-2, 2n-5)`
/// and `ζ_{n,k} = (1..n-k-3, n-k-1..n-3, n-2+k, 2n-4)`.
pub fn exceptional(kind: ExceptionalKind, n: u32, k: Option<u32>) -> Result<ExceptionalPartition> {
    let collision = || Error::PatternCollision { kind: kind.name(), n };
    let n = i64::from(n);
    let seq = |lo: i64, hi: i64| (lo..=hi).collect::<Vec<i64>>();
    let (values, expected) = match kind {
        ExceptionalKind::Pi => {
            let mut v = seq(1, n - 3);
            v.extend([n + 1, 2 * n - 4]);
            (v, 0)
        }
        ExceptionalKind::Sigma => {
            let mut v = seq(1, n - 2);
            v.push(2 * n - 4);
            (v, 3)
        }
        ExceptionalKind::Tau => {
            let mut v = seq(1, n - 2);
            v.push(2 * n - 5);
            (v, 4)
        }
        ExceptionalKind::Zeta => {
            let k = i64::from(k.ok_or_else(|| Error::InvalidCase("zeta needs k".into()))?);
            if k < 1 {
                return Err(collision());
            }
            let mut v = seq(1, n - k - 3);
            v.extend(seq(n - k - 1, n - 3));
            v.extend([n - 2 + k, 2 * n - 4]);
            (v, n - 2 * k + 1)
        }
    };
    if values.iter().any(|&v| v < 1) || values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(collision());
    }
    let partition = DistinctPartition::new(values).map_err(|_| collision())?;
    let n = n as u32;
    debug_assert_eq!(
        i64::from(partition.weight()),
        i64::from(triangular_number(n)) - expected
    );
    Ok(ExceptionalPartition {
        kind,
        n,
        k: if kind == ExceptionalKind::Zeta { k } else { None },
        partition,
    })
}

//! Deciding unrefinability, by missing-part sums and by hook lengths.

use rayon::prelude::*;
use serde::Serialize;

use crate::numset::NumericalSet;
use crate::partition::{enumerate_distinct, DistinctPartition, PartClassFilter};
use crate::young::kn_transform;

/// A cell of the hook grid, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HookCell {
    pub row: usize,
    pub col: usize,
    pub hook: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinabilityVerdict {
    pub unrefinable: bool,
    /// `(μ_i, μ_j, λ_ℓ)` with `μ_i < μ_j` missing and `μ_i + μ_j = λ_ℓ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(u32, u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offending_hooks: Option<Vec<HookCell>>,
}

/// Refinable iff two distinct missing parts sum to a part. The witness uses
/// the smallest such part, and for that part the pair with the smallest `μ_j`.
pub fn is_unrefinable_definitional(p: &DistinctPartition) -> RefinabilityVerdict {
    let witness = definitional_witness(p);
    RefinabilityVerdict {
        unrefinable: witness.is_none(),
        witness,
        offending_hooks: None,
    }
}

fn definitional_witness(p: &DistinctPartition) -> Option<(u32, u32, u32)> {
    let present = p.membership();
    for &part in p.parts() {
        // Closest pair first: among sums to the same part, the smallest μ_j.
        for a in (1..part.div_ceil(2)).rev() {
            let b = part - a;
            if !present[a as usize] && !present[b as usize] {
                return Some((a, b, part));
            }
        }
    }
    None
}

/// Fast boolean form of the definitional test.
pub fn is_unrefinable(p: &DistinctPartition) -> bool {
    definitional_witness(p).is_none()
}

/// Hook-by-hook reading of the geometric criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeometricAnalysis {
    /// Cells outside the first column whose hook is not a part but is half
    /// the first-column hook of its row.
    pub doubling_cells: Vec<HookCell>,
    /// Cells satisfying neither condition.
    pub offending: Vec<HookCell>,
}

pub fn geometric_analysis(p: &DistinctPartition) -> GeometricAnalysis {
    let y = kn_transform(&NumericalSet::from_partition(p)).expect("a partition has gaps");
    let grid = y.hook_grid();
    let present = p.membership();
    let mut doubling_cells = Vec::new();
    let mut offending = Vec::new();
    for (row, col, hook) in grid.cells() {
        if present.get(hook as usize).copied().unwrap_or(false) {
            continue;
        }
        let cell = HookCell { row, col, hook };
        if grid.hook(row, 1) == 2 * hook {
            doubling_cells.push(cell);
        } else {
            offending.push(cell);
        }
    }
    GeometricAnalysis {
        doubling_cells,
        offending,
    }
}

/// Unrefinable iff every hook is a part or half of its row's first hook.
pub fn is_unrefinable_geometric(p: &DistinctPartition) -> RefinabilityVerdict {
    let analysis = geometric_analysis(p);
    let unrefinable = analysis.offending.is_empty();
    RefinabilityVerdict {
        unrefinable,
        witness: None,
        offending_hooks: (!unrefinable).then_some(analysis.offending),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub weight: u32,
    pub checked: usize,
    pub agree: bool,
    pub first_divergence: Option<DistinctPartition>,
}

/// Runs both deciders on every partition of `weight` with at least two parts.
pub fn verdicts_agree(weight: u32) -> Agreement {
    let filter = PartClassFilter::proper();
    let per_first: Vec<(usize, Option<DistinctPartition>)> = (1..=weight)
        .into_par_iter()
        .map(|first| {
            let mut checked = 0;
            for p in enumerate_distinct(weight, filter).with_first_part(first..=first) {
                checked += 1;
                let def = is_unrefinable(&p);
                let geo = geometric_analysis(&p).offending.is_empty();
                if def != geo {
                    return (checked, Some(p));
                }
            }
            (checked, None)
        })
        .collect();
    let checked = per_first.iter().map(|(c, _)| c).sum();
    let first_divergence = per_first.into_iter().find_map(|(_, d)| d);
    Agreement {
        weight,
        checked,
        agree: first_divergence.is_none(),
        first_divergence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> DistinctPartition {
        DistinctPartition::new(parts.iter().copied()).unwrap()
    }

    #[test]
    fn definitional_examples() {
        assert!(is_unrefinable_definitional(&p(&[1, 2, 5, 6, 8])).unrefinable);
        assert!(is_unrefinable_definitional(&p(&[1, 2, 4, 5, 7, 10, 13])).unrefinable);
        let v = is_unrefinable_definitional(&p(&[2, 3, 9]));
        assert!(!v.unrefinable);
        assert_eq!(v.witness, Some((4, 5, 9)));
    }

    #[test]
    fn geometric_examples() {
        let a = geometric_analysis(&p(&[1, 2, 5, 6, 8]));
        assert!(a.offending.is_empty());
        assert_eq!(
            a.doubling_cells,
            vec![
                HookCell { row: 1, col: 3, hook: 4 },
                HookCell { row: 2, col: 2, hook: 3 },
            ]
        );
        let b = geometric_analysis(&p(&[1, 2, 4, 5, 7, 10, 13]));
        assert!(b.offending.is_empty() && b.doubling_cells.is_empty());
        let v = is_unrefinable_geometric(&p(&[2, 3, 9]));
        assert!(!v.unrefinable);
        assert!(!v.offending_hooks.unwrap().is_empty());
    }

    #[test]
    fn agreement_small_weights() {
        for n in [3, 8, 22] {
            let a = verdicts_agree(n);
            assert!(a.agree, "divergence at {n}: {:?}", a.first_divergence);
        }
        assert_eq!(verdicts_agree(3).checked, 1);
    }

    #[test]
    fn verdict_json_omits_empty_fields() {
        let v = is_unrefinable_definitional(&p(&[1, 2, 5, 6, 8]));
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"unrefinable":true}"#);
    }
}

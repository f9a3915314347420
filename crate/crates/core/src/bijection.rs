//! The three correspondences between maximal unrefinable partitions with the
//! most missing parts and partitions into distinct parts.
//!
//! * `Triangular`: weight `T_n`, `n = 2k-1`, largest part `2n-4`, target `D_k`.
//! * `Nt5`: weight `T_n - (n-2k)`, largest part `2n-5`, target `D^o_{2k+2}`.
//! * `Nt4`: weight `T_n - (n-2k+1)`, largest part `2n-4`, target `D_k`.
//!
//! Forward reads hooks off the diagram; backward uses the complementation
//! recipe and then checks the diagram it produced.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::criteria::{geometric_analysis, is_unrefinable, is_unrefinable_definitional, HookCell};
use crate::error::{Error, Result};
use crate::maximal::{
    exceptional, max_missing_subfamily, maximal_unrefinable, ExceptionalKind, SearchMode,
};
use crate::numset::NumericalSet;
use crate::partition::{
    enumerate_distinct, triangular_decompose, triangular_number, DistinctPartition,
    PartClassFilter, Parity,
};
use crate::young::{kn_transform, quasi_symmetric_profile, YoungDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseKind {
    Triangular,
    Nt5,
    Nt4,
}

impl CaseKind {
    pub fn name(self) -> &'static str {
        match self {
            CaseKind::Triangular => "triangular",
            CaseKind::Nt5 => "nt5",
            CaseKind::Nt4 => "nt4",
        }
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "triangular" => Ok(CaseKind::Triangular),
            "nt5" => Ok(CaseKind::Nt5),
            "nt4" => Ok(CaseKind::Nt4),
            other => Err(Error::InvalidCase(format!("unknown case {other:?}"))),
        }
    }
}

/// A validated `(kind, n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BijectionCase {
    kind: CaseKind,
    n: u32,
    k: u32,
}

impl BijectionCase {
    /// Admissible ranges: triangular `n = 2k-1, k >= 4`; nt5 `2 <= 2k <= n-4`;
    /// nt4 `8 <= 2k <= n-2`.
    pub fn new(kind: CaseKind, n: u32, k: u32) -> Result<Self> {
        let ok = match kind {
            CaseKind::Triangular => k >= 4 && n + 1 == 2 * k,
            CaseKind::Nt5 => k >= 1 && 2 * k + 4 <= n,
            CaseKind::Nt4 => k >= 4 && 2 * k + 2 <= n,
        };
        if !ok {
            return Err(Error::InvalidCase(format!("{kind} with n = {n}, k = {k}")));
        }
        Ok(BijectionCase { kind, n, k })
    }

    /// Triangular case for odd `n >= 7`.
    pub fn triangular(n: u32) -> Result<Self> {
        Self::new(CaseKind::Triangular, n, n.div_ceil(2))
    }

    pub fn kind(&self) -> CaseKind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `d` in `N = T_n - d`.
    pub fn d(&self) -> u32 {
        match self.kind {
            CaseKind::Triangular => 0,
            CaseKind::Nt5 => self.n - 2 * self.k,
            CaseKind::Nt4 => self.n - 2 * self.k + 1,
        }
    }

    pub fn source_weight(&self) -> u32 {
        triangular_number(self.n) - self.d()
    }

    pub fn largest_part(&self) -> u32 {
        match self.kind {
            CaseKind::Nt5 => 2 * self.n - 5,
            _ => 2 * self.n - 4,
        }
    }

    /// `⌊λ_t/2⌋`.
    pub fn missing_count(&self) -> usize {
        (self.largest_part() / 2) as usize
    }

    pub fn target_weight(&self) -> u32 {
        match self.kind {
            CaseKind::Nt5 => 2 * self.k + 2,
            _ => self.k,
        }
    }

    pub fn target_parity(&self) -> Parity {
        match self.kind {
            CaseKind::Nt5 => Parity::OddOnly,
            _ => Parity::All,
        }
    }

    /// Target partitions that have no preimage in the family.
    pub fn excluded_eta(&self) -> Vec<DistinctPartition> {
        match self.kind {
            CaseKind::Triangular => {
                let k = self.k;
                if k > 3 && k - 3 != 3 {
                    vec![DistinctPartition::new([3, k - 3]).expect("distinct positive pair")]
                } else {
                    Vec::new()
                }
            }
            CaseKind::Nt5 if 2 * self.k + 4 == self.n => {
                vec![DistinctPartition::new([1, 2 * self.k + 1]).expect("distinct pair")]
            }
            _ => Vec::new(),
        }
    }

    /// Every proper partition of the target weight and parity.
    pub fn target_family(&self) -> Vec<DistinctPartition> {
        let filter = PartClassFilter::proper().with_parity(self.target_parity());
        enumerate_distinct(self.target_weight(), filter).collect()
    }

    /// The exceptional partition paired with an excluded target, if any.
    pub fn exceptional_partner(&self) -> Option<DistinctPartition> {
        let kind = match self.kind {
            CaseKind::Triangular => ExceptionalKind::Pi,
            CaseKind::Nt5 if self.d() == 4 => ExceptionalKind::Tau,
            CaseKind::Nt4 if self.d() == 3 => ExceptionalKind::Sigma,
            CaseKind::Nt4 => ExceptionalKind::Zeta,
            CaseKind::Nt5 => return None,
        };
        exceptional(kind, self.n, Some(self.k)).ok().map(|e| e.partition)
    }
}

impl fmt::Display for BijectionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} k={}", self.kind, self.n, self.k)
    }
}

/// A target-side partition. `improper` marks the one-part image `(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EtaPartition {
    pub partition: DistinctPartition,
    pub improper: bool,
}

impl EtaPartition {
    pub fn new(partition: DistinctPartition) -> Self {
        let improper = !partition.is_proper();
        EtaPartition {
            partition,
            improper,
        }
    }

    pub fn parts(&self) -> &[u32] {
        self.partition.parts()
    }

    /// Number of parts `l`.
    pub fn len(&self) -> usize {
        self.partition.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partition.is_empty()
    }
}

/// Decides which correspondence a partition belongs to, from its weight and
/// largest part.
pub fn classify(lambda: &DistinctPartition) -> Result<BijectionCase> {
    let dec = triangular_decompose(lambda.weight());
    let (n, d) = (dec.n, dec.d);
    let unclassifiable = |why: &str| Error::Unclassifiable(format!("{lambda}: {why}"));
    let lt = lambda.largest();
    let case = match d {
        0 if n % 2 == 1 => BijectionCase::triangular(n),
        0 => return Err(unclassifiable("triangular weight with even n")),
        1 | 2 => return Err(unclassifiable("d = 1 and d = 2 have no correspondence")),
        _ if lt + 5 == 2 * n && (n - d) % 2 == 0 => BijectionCase::new(CaseKind::Nt5, n, (n - d) / 2),
        _ if lt + 4 == 2 * n && (n - d) % 2 == 1 => {
            BijectionCase::new(CaseKind::Nt4, n, (n - d).div_ceil(2))
        }
        _ => return Err(unclassifiable("largest part does not match any case")),
    };
    case.map_err(|_| unclassifiable("parameters outside the admissible range"))
}

fn diagram(lambda: &DistinctPartition) -> YoungDiagram {
    kn_transform(&NumericalSet::from_partition(lambda)).expect("a partition has gaps")
}

/// Triangular/Nt4: sorted extra-column hooks. Nt5: sorted diagonal hooks
/// below the corner.
pub fn forward(lambda: &DistinctPartition, case: &BijectionCase) -> Result<EtaPartition> {
    let mismatch = |why: String| Error::ShapeMismatch(format!("{lambda} for {case}: {why}"));
    if lambda.weight() != case.source_weight() || lambda.largest() != case.largest_part() {
        return Err(mismatch("weight or largest part differs".into()));
    }
    let y = diagram(lambda);
    let parts = match case.kind {
        CaseKind::Triangular | CaseKind::Nt4 => quasi_symmetric_profile(&y, case.n)
            .map_err(|e| mismatch(e.to_string()))?
            .eta_parts(),
        CaseKind::Nt5 => {
            let grid = y.hook_grid();
            let mut diag: Vec<u32> = (2..).map_while(|i| grid.get(i, i)).collect();
            if diag.iter().any(|h| h % 2 == 0) {
                return Err(mismatch("even diagonal hook".into()));
            }
            diag.sort_unstable();
            diag
        }
    };
    if parts.iter().sum::<u32>() != case.target_weight() {
        return Err(mismatch(format!("hooks {parts:?} do not sum to the target weight")));
    }
    let partition = DistinctPartition::new(parts).map_err(|e| mismatch(e.to_string()))?;
    Ok(EtaPartition::new(partition))
}

/// The complementation recipe, without any checks on the result.
///
/// Triangular/Nt4: `([1..n-3] ∖ {n-2-η_j}) ∪ {n-2+η_j} ∪ {2n-4}`.
/// Nt5: `([1..n-3] ∖ {(2n-5-η_j)/2}) ∪ {(2n-5+η_j)/2} ∪ {2n-5}`.
pub fn construct_raw(eta: &[u32], case: &BijectionCase) -> Result<DistinctPartition> {
    let n = case.n;
    let lt = case.largest_part();
    let invalid = |why: &str| Error::InvalidEta(format!("{eta:?} for {case}: {why}"));
    let mut parts: BTreeSet<u32> = (1..=n - 3).collect();
    for &e in eta {
        let (low, high) = match case.kind {
            CaseKind::Nt5 => {
                if e % 2 == 0 || e >= lt {
                    return Err(invalid("parts must be odd and below 2n-5"));
                }
                ((lt - e) / 2, (lt + e) / 2)
            }
            _ => {
                if e == 0 || e + 2 >= n {
                    return Err(invalid("parts must lie in 1..n-3"));
                }
                (n - 2 - e, n - 2 + e)
            }
        };
        if !parts.remove(&low) || !parts.insert(high) {
            return Err(invalid("parts collide"));
        }
    }
    parts.insert(lt);
    Ok(DistinctPartition::from_sorted(parts.into_iter().collect()))
}

/// Diagram conditions the construction is meant to satisfy.
fn check_construction(lambda: &DistinctPartition, eta: &[u32], case: &BijectionCase) -> Result<(), String> {
    let y = diagram(lambda);
    let grid = y.hook_grid();
    let l = eta.len();
    let (corner, arm_excess) = match case.kind {
        CaseKind::Nt5 => (2 * case.n - 5, 0),
        _ => (2 * case.n - 4, 1),
    };
    if grid.hook(1, 1) != corner {
        return Err(format!("h(1,1) = {} instead of {corner}", grid.hook(1, 1)));
    }
    // η descending along the diagonal from row 2.
    for (offset, &e) in eta.iter().rev().enumerate() {
        let i = offset + 2;
        let want = if case.kind == CaseKind::Nt5 { e } else { 2 * e };
        if grid.get(i, i) != Some(want) {
            return Err(format!("h({i},{i}) = {:?} instead of {want}", grid.get(i, i)));
        }
    }
    if grid.get(l + 2, l + 2).is_some() {
        return Err(format!("diagonal longer than {}", l + 1));
    }
    for i in 1..=l + 1 {
        if grid.arm(i, i) != grid.leg(i, i) + arm_excess {
            return Err(format!(
                "cell ({i},{i}) has arm {} and leg {}",
                grid.arm(i, i),
                grid.leg(i, i)
            ));
        }
    }
    if !is_unrefinable(lambda) {
        return Err("result is refinable".into());
    }
    if lambda.weight() != case.source_weight() {
        return Err(format!("weight {} instead of {}", lambda.weight(), case.source_weight()));
    }
    if lambda.largest() != case.largest_part() {
        return Err(format!("largest part {}", lambda.largest()));
    }
    if lambda.missing_parts().count() != case.missing_count() {
        return Err(format!("{} missing parts", lambda.missing_parts().count()));
    }
    Ok(())
}

/// Rebuilds `λ` from `η`. For `Nt4` the improper `(k)` gives back `ζ_{n,k}`.
pub fn backward(eta: &EtaPartition, case: &BijectionCase) -> Result<DistinctPartition> {
    let p = &eta.partition;
    if p.weight() != case.target_weight() {
        return Err(Error::InvalidEta(format!(
            "{p} has weight {}, expected {}",
            p.weight(),
            case.target_weight()
        )));
    }
    if !p.parts().iter().all(|&x| case.target_parity().admits(x)) {
        return Err(Error::InvalidEta(format!("{p} has parts of the wrong parity")));
    }
    if !p.is_proper() {
        return match case.kind {
            CaseKind::Nt4 => Ok(exceptional(ExceptionalKind::Zeta, case.n, Some(case.k))?.partition),
            _ => Err(Error::InvalidEta(format!("{p} has a single part"))),
        };
    }
    if case.excluded_eta().contains(p) {
        return Err(Error::ExcludedEta(p.parts().to_vec()));
    }
    let lambda = construct_raw(p.parts(), case)?;
    check_construction(&lambda, p.parts(), case).map_err(Error::ConstraintViolation)?;
    Ok(lambda)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExclusionDemo {
    pub eta: DistinctPartition,
    /// The raw construction, when the recipe applies at all.
    pub constructed: Option<DistinctPartition>,
    pub unrefinable: Option<bool>,
    pub witness: Option<(u32, u32, u32)>,
    pub offending_hooks: Vec<HookCell>,
    pub note: Option<String>,
}

/// Runs the raw construction on each excluded target and reports why the
/// result cannot belong to the family.
pub fn demonstrate_exclusion(case: &BijectionCase) -> Vec<ExclusionDemo> {
    case.excluded_eta()
        .into_iter()
        .map(|eta| match construct_raw(eta.parts(), case) {
            Ok(lambda) => {
                let analysis = geometric_analysis(&lambda);
                let def = is_unrefinable_definitional(&lambda);
                ExclusionDemo {
                    eta,
                    unrefinable: Some(analysis.offending.is_empty()),
                    witness: def.witness,
                    offending_hooks: analysis.offending,
                    constructed: Some(lambda),
                    note: None,
                }
            }
            Err(e) => ExclusionDemo {
                eta,
                constructed: None,
                unrefinable: None,
                witness: None,
                offending_hooks: Vec::new(),
                note: Some(e.to_string()),
            },
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str, failures: Vec<String>) -> Self {
        CheckResult {
            name,
            pass: failures.is_empty(),
            detail: (!failures.is_empty()).then(|| failures.join("; ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub case: BijectionCase,
    pub source_weight: u32,
    pub mup_count: usize,
    pub ubar_count: usize,
    pub target_count: usize,
    /// `|D_k|`, `|D^o_{2k+2}|` or `1 + |D_k|`.
    pub expected_mup_count: usize,
    pub excluded: Vec<DistinctPartition>,
    pub pairs: Vec<(DistinctPartition, EtaPartition)>,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

pub fn verify_bijection(case: &BijectionCase) -> Result<BijectionReport> {
    verify_bijection_with(case, SearchMode::Pinned)
}

/// Computes the family by brute force and checks every claimed property.
pub fn verify_bijection_with(case: &BijectionCase, mode: SearchMode) -> Result<BijectionReport> {
    let weight = case.source_weight();
    let mup = maximal_unrefinable(weight, mode)?;
    let ubar = max_missing_subfamily(&mup);
    let targets = case.target_family();
    let excluded = case.excluded_eta();
    let allowed: Vec<&DistinctPartition> = targets.iter().filter(|t| !excluded.contains(t)).collect();
    let zeta = (case.kind == CaseKind::Nt4)
        .then(|| exceptional(ExceptionalKind::Zeta, case.n, Some(case.k)).ok())
        .flatten()
        .map(|e| e.partition);

    let images: Vec<Result<EtaPartition>> = ubar.par_iter().map(|l| forward(l, case)).collect();

    let mut image_failures = Vec::new();
    let mut pairs = Vec::new();
    for (lambda, image) in ubar.iter().zip(&images) {
        match image {
            Err(e) => image_failures.push(format!("{lambda}: {e}")),
            Ok(eta) if eta.improper => {
                if zeta.as_ref() != Some(lambda) {
                    image_failures.push(format!("{lambda} has improper image {}", eta.partition));
                }
                pairs.push((lambda.clone(), eta.clone()));
            }
            Ok(eta) => {
                if !allowed.contains(&&eta.partition) {
                    image_failures.push(format!("{lambda} maps outside the target: {}", eta.partition));
                }
                pairs.push((lambda.clone(), eta.clone()));
            }
        }
    }

    let proper_images: Vec<&DistinctPartition> =
        pairs.iter().filter(|(_, e)| !e.improper).map(|(_, e)| &e.partition).collect();
    let distinct: BTreeSet<&DistinctPartition> = pairs.iter().map(|(_, e)| &e.partition).collect();
    let injective = if distinct.len() == pairs.len() {
        Vec::new()
    } else {
        vec![format!("{} images for {} elements", distinct.len(), pairs.len())]
    };
    let surjective: Vec<String> = allowed
        .iter()
        .filter(|t| !proper_images.contains(t))
        .map(|t| format!("{t} has no preimage"))
        .collect();

    let back_forth: Vec<String> = pairs
        .iter()
        .filter_map(|(lambda, eta)| match backward(eta, case) {
            Ok(back) if &back == lambda => None,
            Ok(back) => Some(format!("{lambda} -> {} -> {back}", eta.partition)),
            Err(e) => Some(format!("{lambda} -> {}: {e}", eta.partition)),
        })
        .collect();

    let rebuilt: Vec<(DistinctPartition, Result<DistinctPartition>)> = allowed
        .par_iter()
        .map(|&t| (t.clone(), backward(&EtaPartition::new(t.clone()), case)))
        .collect();
    let mut forth_back = Vec::new();
    let mut rebuilt_unrefinable = Vec::new();
    for (eta, lambda) in &rebuilt {
        match lambda {
            Err(e) => forth_back.push(format!("{eta}: {e}")),
            Ok(lambda) => {
                let def = is_unrefinable_definitional(lambda).unrefinable;
                let geo = geometric_analysis(lambda).offending.is_empty();
                if !(def && geo) {
                    rebuilt_unrefinable.push(format!("{lambda} from {eta}"));
                }
                match forward(lambda, case) {
                    Ok(img) if &img.partition == eta => {}
                    Ok(img) => forth_back.push(format!("{eta} -> {lambda} -> {}", img.partition)),
                    Err(e) => forth_back.push(format!("{eta} -> {lambda}: {e}")),
                }
            }
        }
    }

    let expected_mup_count = match case.kind {
        CaseKind::Nt4 => 1 + targets.len(),
        _ => targets.len(),
    };
    let count = if mup.len() == expected_mup_count {
        Vec::new()
    } else {
        vec![format!("|MUP| = {}, expected {expected_mup_count}", mup.len())]
    };

    let outside: Vec<&DistinctPartition> = mup.iter().filter(|p| !ubar.contains(p)).collect();
    let partner = case.exceptional_partner();
    let mut accounting = Vec::new();
    match case.kind {
        CaseKind::Triangular | CaseKind::Nt5 => {
            let expected: Vec<&DistinctPartition> =
                if excluded.is_empty() { Vec::new() } else { partner.iter().collect() };
            if outside != expected {
                accounting.push(format!(
                    "outside the max-missing family: {}; excluded targets: {}",
                    list(&outside),
                    list(&excluded.iter().collect::<Vec<_>>())
                ));
            }
        }
        CaseKind::Nt4 if case.d() == 3 => {
            if outside != partner.iter().collect::<Vec<_>>() {
                accounting.push(format!("expected only sigma outside, got {}", list(&outside)));
            }
            if zeta.as_ref().is_some_and(|z| mup.contains(z)) {
                accounting.push("zeta is maximal at d = 3".into());
            }
        }
        CaseKind::Nt4 => {
            if !outside.is_empty() {
                accounting.push(format!("unexpected elements {}", list(&outside)));
            }
            let z_image = pairs.iter().find(|(l, _)| Some(l) == zeta.as_ref());
            match z_image {
                Some((_, eta)) if eta.improper && eta.parts() == [case.k] => {}
                _ => accounting.push("zeta is not paired with the one-part partition".into()),
            }
        }
    }

    let mup_unrefinable: Vec<String> = mup
        .iter()
        .filter(|p| {
            !(is_unrefinable_definitional(p).unrefinable && geometric_analysis(p).offending.is_empty())
        })
        .map(|p| p.to_string())
        .collect();

    let mut unref = mup_unrefinable;
    unref.extend(rebuilt_unrefinable);
    let checks = vec![
        CheckResult::new("image-in-target", image_failures),
        CheckResult::new("injective", injective),
        CheckResult::new("surjective", surjective),
        CheckResult::new("backward-forward-identity", back_forth),
        CheckResult::new("forward-backward-identity", forth_back),
        CheckResult::new("count-identity", count),
        CheckResult::new("exceptional-accounting", accounting),
        CheckResult::new("unrefinable-both-deciders", unref),
    ];
    let pass = checks.iter().all(|c| c.pass);
    Ok(BijectionReport {
        case: *case,
        source_weight: weight,
        mup_count: mup.len(),
        ubar_count: ubar.len(),
        target_count: targets.len(),
        expected_mup_count,
        excluded,
        pairs,
        checks,
        pass,
    })
}

fn list(items: &[&DistinctPartition]) -> String {
    if items.is_empty() {
        return "none".into();
    }
    items.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

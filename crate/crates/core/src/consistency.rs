//! Z-consistency: does adding the same uncited publications to two journals
//! preserve their strict order under an indicator?

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::indicator::{compute, IndicatorError, IndicatorKind, IndicatorSpec};
use crate::journal::{Injection, JournalData, Year};
use crate::ratio::Ratio;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Before,
    After,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Before => "before",
            Phase::After => "after",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConsistencyError {
    #[error("{side} journal {journal:?} {phase} injection: {source}")]
    Indicator {
        side: Side,
        phase: Phase,
        journal: String,
        #[source]
        source: IndicatorError,
    },
    #[error("year {year} does not enter the denominator of {spec}")]
    InvalidTargetYear { year: Year, spec: IndicatorSpec },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("scenario is not a reversal (verdict {0})")]
    NotReversed(VerdictTag),
}

/// Two journals, one indicator, and one injection applied to both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairScenario {
    pub left: JournalData,
    pub right: JournalData,
    pub spec: IndicatorSpec,
    pub injection: Injection,
}

impl PairScenario {
    pub fn new(
        left: JournalData,
        right: JournalData,
        spec: IndicatorSpec,
        injection: Injection,
    ) -> Self {
        PairScenario {
            left,
            right,
            spec,
            injection,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictTag {
    /// Strict order before and the same strict order after.
    Preserved,
    /// Strict order before and the opposite strict order after.
    Reversed,
    /// Equal before; the property says nothing.
    TieBefore,
    /// Strict before, equal after.
    TieAfter,
}

impl VerdictTag {
    pub fn from_orderings(before: Ordering, after: Ordering) -> VerdictTag {
        match (before, after) {
            (Ordering::Equal, _) => VerdictTag::TieBefore,
            (_, Ordering::Equal) => VerdictTag::TieAfter,
            (b, a) if b == a => VerdictTag::Preserved,
            _ => VerdictTag::Reversed,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictTag::Preserved => "PRESERVED",
            VerdictTag::Reversed => "REVERSED",
            VerdictTag::TieBefore => "TIE_BEFORE",
            VerdictTag::TieAfter => "TIE_AFTER",
        }
    }
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Indicator values `(left, right)` before and after the injection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub tag: VerdictTag,
    pub before: (Ratio, Ratio),
    pub after: (Ratio, Ratio),
}

impl Verdict {
    pub fn from_values(before: (Ratio, Ratio), after: (Ratio, Ratio)) -> Verdict {
        Verdict {
            tag: VerdictTag::from_orderings(before.0.cmp(&before.1), after.0.cmp(&after.1)),
            before,
            after,
        }
    }
}

fn evaluate(
    data: &JournalData,
    spec: &IndicatorSpec,
    side: Side,
    phase: Phase,
) -> Result<Ratio, ConsistencyError> {
    compute(data, spec).map_err(|source| ConsistencyError::Indicator {
        side,
        phase,
        journal: data.id().to_string(),
        source,
    })
}

/// Evaluates both journals before and after the shared injection and
/// classifies the outcome. Comparisons are exact.
pub fn check_z_consistency(scenario: &PairScenario) -> Result<Verdict, ConsistencyError> {
    let PairScenario {
        left,
        right,
        spec,
        injection,
    } = scenario;
    let before = (
        evaluate(left, spec, Side::Left, Phase::Before)?,
        evaluate(right, spec, Side::Right, Phase::Before)?,
    );
    let after = (
        evaluate(
            &left.apply_injection(injection),
            spec,
            Side::Left,
            Phase::After,
        )?,
        evaluate(
            &right.apply_injection(injection),
            spec,
            Side::Right,
            Phase::After,
        )?,
    );
    Ok(Verdict::from_values(before, after))
}

/// Smallest `k` in `1..=k_max` such that adding `k` uncited publications in
/// `target_year` to both journals reverses their strict order.
///
/// `target_year` must be one of the spec's denominator years, and the two
/// journals must be strictly ordered to begin with.
pub fn min_reversal_k(
    left: &JournalData,
    right: &JournalData,
    spec: &IndicatorSpec,
    target_year: Year,
    k_max: u64,
) -> Result<Option<u64>, ConsistencyError> {
    if !spec.denominator_years().contains(&target_year) {
        return Err(ConsistencyError::InvalidTargetYear {
            year: target_year,
            spec: *spec,
        });
    }
    let before = (
        evaluate(left, spec, Side::Left, Phase::Before)?,
        evaluate(right, spec, Side::Right, Phase::Before)?,
    );
    if before.0 == before.1 {
        return Err(ConsistencyError::PreconditionViolated(format!(
            "{:?} and {:?} are tied at {} before injection",
            left.id(),
            right.id(),
            before.0
        )));
    }
    for k in 1..=k_max {
        let scenario = PairScenario::new(
            left.clone(),
            right.clone(),
            *spec,
            Injection::single(target_year, k).expect("k is positive"),
        );
        if check_z_consistency(&scenario)?.tag == VerdictTag::Reversed {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// For the ratio-of-averages impact factor, two journals with the same
/// publication count in every window year keep their strict order under any
/// common injection: the denominators stay equal, so the order is the order
/// of the citation totals.
///
/// Returns the verdict, which is always [`VerdictTag::Preserved`]; the
/// postcondition is checked.
pub fn equal_pubs_preserved(
    left: &JournalData,
    right: &JournalData,
    spec: &IndicatorSpec,
    injection: &Injection,
) -> Result<Verdict, ConsistencyError> {
    if spec.kind() != IndicatorKind::SyncRoa {
        return Err(ConsistencyError::PreconditionViolated(format!(
            "equal-publication argument applies to sync-roa, not {}",
            spec.kind()
        )));
    }
    if let Some(year) = spec
        .denominator_years()
        .into_iter()
        .find(|&y| left.pub_count(y) != right.pub_count(y))
    {
        return Err(ConsistencyError::PreconditionViolated(format!(
            "publication counts differ in {year}: {} vs {}",
            left.pub_count(year),
            right.pub_count(year)
        )));
    }
    let verdict = check_z_consistency(&PairScenario::new(
        left.clone(),
        right.clone(),
        *spec,
        injection.clone(),
    ))?;
    if verdict.tag == VerdictTag::TieBefore {
        return Err(ConsistencyError::PreconditionViolated(format!(
            "{:?} and {:?} are tied before injection",
            left.id(),
            right.id()
        )));
    }
    assert_eq!(
        verdict.tag,
        VerdictTag::Preserved,
        "equal publication vectors must preserve a strict sync-roa order: {verdict:?}"
    );
    Ok(verdict)
}

/// A scenario that demonstrably violates Z-consistency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversalWitness {
    scenario: PairScenario,
    verdict: Verdict,
}

impl ReversalWitness {
    /// Evaluates the scenario and keeps it only if it reverses.
    pub fn new(scenario: PairScenario) -> Result<Self, ConsistencyError> {
        let verdict = check_z_consistency(&scenario)?;
        if verdict.tag != VerdictTag::Reversed {
            return Err(ConsistencyError::NotReversed(verdict.tag));
        }
        Ok(ReversalWitness { scenario, verdict })
    }

    pub fn scenario(&self) -> &PairScenario {
        &self.scenario
    }

    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    /// Recomputes the verdict from the raw data and compares it with the stored one.
    pub fn verify(&self) -> bool {
        matches!(check_z_consistency(&self.scenario), Ok(v) if v == self.verdict && v.tag == VerdictTag::Reversed)
    }
}

//! Synchronous (ratio-of-averages and average-of-ratios) and diachronous
//! impact factors, computed exactly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::journal::{JournalData, Year};
use crate::ratio::{Ratio, RatioError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum IndicatorError {
    /// The denominator vanished. `year` names the offending publication
    /// year when a single year is to blame.
    #[error("zero denominator{}", .year.map(|y| format!(" (no publications in {y})")).unwrap_or_default())]
    ZeroDenominator { year: Option<Year> },
    #[error("window length must be at least 1, got {0}")]
    InvalidWindow(u32),
    #[error("inclusion flag s must be 0 or 1, got {0}")]
    InvalidInclusion(u8),
    #[error("arithmetic overflow")]
    Overflow,
}

impl From<RatioError> for IndicatorError {
    fn from(e: RatioError) -> Self {
        match e {
            RatioError::ZeroDenominator => IndicatorError::ZeroDenominator { year: None },
            RatioError::Overflow | RatioError::Malformed(_) => IndicatorError::Overflow,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndicatorKind {
    /// Total window citations over total window publications.
    SyncRoa,
    /// Mean of the per-year citation/publication ratios.
    SyncAor,
    /// Citations accrued over successive years by one publication year.
    Diachronous,
}

impl IndicatorKind {
    pub const ALL: [IndicatorKind; 3] = [
        IndicatorKind::SyncRoa,
        IndicatorKind::SyncAor,
        IndicatorKind::Diachronous,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IndicatorKind::SyncRoa => "sync-roa",
            IndicatorKind::SyncAor => "sync-aor",
            IndicatorKind::Diachronous => "diachronous",
        }
    }

    pub fn is_synchronous(&self) -> bool {
        !matches!(self, IndicatorKind::Diachronous)
    }
}

impl fmt::Display for IndicatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IndicatorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IndicatorKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown indicator kind {s:?}"))
    }
}

/// Which indicator to evaluate, over which window, for which year.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndicatorSpec {
    kind: IndicatorKind,
    n: u32,
    target_year: Year,
    s: u8,
}

impl IndicatorSpec {
    /// `s` is only meaningful for the diachronous kind and is normalized to 0
    /// otherwise.
    pub fn new(
        kind: IndicatorKind,
        n: u32,
        target_year: Year,
        s: u8,
    ) -> Result<Self, IndicatorError> {
        if n == 0 || i32::try_from(n).is_err() {
            return Err(IndicatorError::InvalidWindow(n));
        }
        if s > 1 {
            return Err(IndicatorError::InvalidInclusion(s));
        }
        let s = if kind == IndicatorKind::Diachronous {
            s
        } else {
            0
        };
        Ok(IndicatorSpec {
            kind,
            n,
            target_year,
            s,
        })
    }

    pub fn kind(&self) -> IndicatorKind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn target_year(&self) -> Year {
        self.target_year
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    /// Years whose publication counts enter the denominator, in window order:
    /// `Y-1, …, Y-n` for synchronous kinds and just `Y` for the diachronous one.
    pub fn denominator_years(&self) -> Vec<Year> {
        match self.kind {
            IndicatorKind::Diachronous => vec![self.target_year],
            _ => (1..=self.n as i32).map(|i| self.target_year - i).collect(),
        }
    }

    /// `(citing, cited)` keys whose counts enter the numerator, in window order.
    pub fn citation_keys(&self) -> Vec<(Year, Year)> {
        let y = self.target_year;
        match self.kind {
            IndicatorKind::Diachronous => {
                let s = self.s as i32;
                (s..s + self.n as i32).map(|i| (y + i, y)).collect()
            }
            _ => (1..=self.n as i32).map(|i| (y, y - i)).collect(),
        }
    }
}

impl fmt::Display for IndicatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} year={}", self.kind, self.n, self.target_year)?;
        if self.kind == IndicatorKind::Diachronous {
            write!(f, " s={}", self.s)?;
        }
        Ok(())
    }
}

pub fn pub_count(data: &JournalData, year: Year) -> u64 {
    data.pub_count(year)
}

pub fn cit_count(data: &JournalData, citing: Year, cited: Year) -> u64 {
    data.cit_count(citing, cited)
}

/// Synchronous n-year impact factor as a ratio of averages:
/// `Σ CIT(Y, Y-i) / Σ PUB(Y-i)` for `i = 1..=n`. With `n = 2` this is the
/// classical two-year impact factor.
pub fn sync_if_roa(data: &JournalData, year: Year, n: u32) -> Result<Ratio, IndicatorError> {
    let spec = IndicatorSpec::new(IndicatorKind::SyncRoa, n, year, 0)?;
    let (cits, pubs) = window_counts(data, &spec);
    ratio_of_sums(&cits, &pubs)
}

/// Synchronous n-year impact factor as an average of ratios:
/// `(1/n) Σ CIT(Y, Y-i) / PUB(Y-i)`.
///
/// Undefined as soon as a single window year has no publications; the error
/// names the first such year.
pub fn sync_if_aor(data: &JournalData, year: Year, n: u32) -> Result<Ratio, IndicatorError> {
    let spec = IndicatorSpec::new(IndicatorKind::SyncAor, n, year, 0)?;
    let (cits, pubs) = window_counts(data, &spec);
    if let Some(i) = pubs.iter().position(|&p| p == 0) {
        return Err(IndicatorError::ZeroDenominator {
            year: Some(spec.denominator_years()[i]),
        });
    }
    average_of_ratios(&cits, &pubs)
}

/// Diachronous n-year impact factor: `Σ CIT(Y+i, Y) / PUB(Y)` for
/// `i = s..=s+n-1`, where `s = 0` includes the publication year itself.
pub fn diachronous_imp(
    data: &JournalData,
    year: Year,
    n: u32,
    s: u8,
) -> Result<Ratio, IndicatorError> {
    let spec = IndicatorSpec::new(IndicatorKind::Diachronous, n, year, s)?;
    let (cits, pubs) = window_counts(data, &spec);
    ratio_of_sums(&cits, &pubs).map_err(|e| match e {
        IndicatorError::ZeroDenominator { .. } => {
            IndicatorError::ZeroDenominator { year: Some(year) }
        }
        other => other,
    })
}

pub fn compute(data: &JournalData, spec: &IndicatorSpec) -> Result<Ratio, IndicatorError> {
    match spec.kind {
        IndicatorKind::SyncRoa => sync_if_roa(data, spec.target_year, spec.n),
        IndicatorKind::SyncAor => sync_if_aor(data, spec.target_year, spec.n),
        IndicatorKind::Diachronous => diachronous_imp(data, spec.target_year, spec.n, spec.s),
    }
}

/// Numerator and denominator counts for `spec`, each in window order.
pub(crate) fn window_counts(data: &JournalData, spec: &IndicatorSpec) -> (Vec<u64>, Vec<u64>) {
    let cits = spec
        .citation_keys()
        .into_iter()
        .map(|(citing, cited)| data.cit_count(citing, cited))
        .collect();
    let pubs = spec
        .denominator_years()
        .into_iter()
        .map(|y| data.pub_count(y))
        .collect();
    (cits, pubs)
}

pub(crate) fn ratio_of_sums(cits: &[u64], pubs: &[u64]) -> Result<Ratio, IndicatorError> {
    let num: u128 = cits.iter().map(|&c| c as u128).sum();
    let den: u128 = pubs.iter().map(|&p| p as u128).sum();
    if den == 0 {
        return Err(IndicatorError::ZeroDenominator { year: None });
    }
    Ok(Ratio::new(num, den)?)
}

/// Callers guarantee every publication count is positive.
pub(crate) fn average_of_ratios(cits: &[u64], pubs: &[u64]) -> Result<Ratio, IndicatorError> {
    let mut total = Ratio::ZERO;
    for (&c, &p) in cits.iter().zip(pubs) {
        total = total.checked_add(&Ratio::new(c as u128, p as u128)?)?;
    }
    Ok(total.checked_div_int(cits.len() as u128)?)
}

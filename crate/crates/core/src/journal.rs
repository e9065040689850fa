//! The publication–citation matrix of a single journal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Calendar year. Offsets are ordinary integer arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Year(pub i32);

impl Add<i32> for Year {
    type Output = Year;
    fn add(self, rhs: i32) -> Year {
        Year(self.0 + rhs)
    }
}

impl Sub<i32> for Year {
    type Output = Year;
    fn sub(self, rhs: i32) -> Year {
        Year(self.0 - rhs)
    }
}

impl fmt::Display for Year {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DataError {
    #[error("journal id must not be empty")]
    EmptyId,
    #[error("citation from {citing} to {cited} flows backwards in time")]
    BackwardCitation { citing: Year, cited: Year },
}

/// Publication counts `PUB(year)` and citation counts `CIT(citing, cited)`.
///
/// Absent keys read as zero. Construction rejects citations whose citing
/// year precedes the cited year.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JournalData {
    id: String,
    pubs: BTreeMap<Year, u64>,
    cits: BTreeMap<(Year, Year), u64>,
}

impl JournalData {
    pub fn new(
        id: impl Into<String>,
        pubs: BTreeMap<Year, u64>,
        cits: BTreeMap<(Year, Year), u64>,
    ) -> Result<Self, DataError> {
        let id = id.into();
        if id.is_empty() {
            return Err(DataError::EmptyId);
        }
        if let Some(&(citing, cited)) = cits.keys().find(|(citing, cited)| citing < cited) {
            return Err(DataError::BackwardCitation { citing, cited });
        }
        Ok(JournalData { id, pubs, cits })
    }

    /// Convenience constructor from `(year, count)` and `(citing, cited, count)` lists.
    /// Later entries for the same key overwrite earlier ones.
    pub fn from_counts(
        id: impl Into<String>,
        pubs: &[(i32, u64)],
        cits: &[(i32, i32, u64)],
    ) -> Result<Self, DataError> {
        JournalData::new(
            id,
            pubs.iter().map(|&(y, c)| (Year(y), c)).collect(),
            cits.iter()
                .map(|&(citing, cited, c)| ((Year(citing), Year(cited)), c))
                .collect(),
        )
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn pubs(&self) -> &BTreeMap<Year, u64> {
        &self.pubs
    }

    pub fn cits(&self) -> &BTreeMap<(Year, Year), u64> {
        &self.cits
    }

    pub fn pub_count(&self, year: Year) -> u64 {
        self.pubs.get(&year).copied().unwrap_or(0)
    }

    pub fn cit_count(&self, citing: Year, cited: Year) -> u64 {
        self.cits.get(&(citing, cited)).copied().unwrap_or(0)
    }

    /// Returns a copy with the injection's uncited publications added.
    /// Citation counts are untouched.
    pub fn apply_injection(&self, injection: &Injection) -> JournalData {
        let mut out = self.clone();
        for &(year, k) in injection.additions() {
            let slot = out.pubs.entry(year).or_insert(0);
            *slot = slot
                .checked_add(k)
                .expect("publication count overflowed u64");
        }
        out
    }

    /// Same data under a different id.
    pub fn renamed(&self, id: impl Into<String>) -> Result<JournalData, DataError> {
        JournalData::new(id, self.pubs.clone(), self.cits.clone())
    }

    /// Multiplies every publication and citation count by `factor`.
    pub fn scaled(&self, factor: u64) -> JournalData {
        JournalData {
            id: self.id.clone(),
            pubs: self.pubs.iter().map(|(&y, &c)| (y, c * factor)).collect(),
            cits: self.cits.iter().map(|(&k, &c)| (k, c * factor)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("injection count for year {0} must be positive")]
pub struct ZeroInjection(pub Year);

/// Uncited publications to add, as `(year, k)` pairs with `k > 0`.
/// Repeated years accumulate.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Injection {
    additions: Vec<(Year, u64)>,
}

impl Injection {
    pub fn new(additions: Vec<(Year, u64)>) -> Result<Self, ZeroInjection> {
        if let Some(&(year, _)) = additions.iter().find(|(_, k)| *k == 0) {
            return Err(ZeroInjection(year));
        }
        Ok(Injection { additions })
    }

    pub fn empty() -> Self {
        Injection::default()
    }

    /// A single addition of `k` publications in `year`.
    pub fn single(year: Year, k: u64) -> Result<Self, ZeroInjection> {
        Injection::new(vec![(year, k)])
    }

    pub fn additions(&self) -> &[(Year, u64)] {
        &self.additions
    }

    pub fn is_empty(&self) -> bool {
        self.additions.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.additions.iter().map(|&(_, k)| k).sum()
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.additions.is_empty() {
            return f.write_str("none");
        }
        for (i, (year, k)) in self.additions.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "+{k}@{year}")?;
        }
        Ok(())
    }
}

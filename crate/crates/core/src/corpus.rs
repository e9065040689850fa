//! Journal collections: CSV ingestion, canonical JSON, rankings, and
//! uncited-item sensitivity reports.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::consistency::{min_reversal_k, ConsistencyError, PairScenario, ReversalWitness};
use crate::indicator::{compute, IndicatorError, IndicatorSpec};
use crate::journal::{Injection, JournalData, Year};
use crate::ratio::Ratio;

pub const PUBS_HEADER: [&str; 3] = ["journal", "year", "pubs"];
pub const CITS_HEADER: [&str; 4] = ["journal", "citing_year", "cited_year", "count"];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{source_name}:{line}: {reason}")]
    Parse {
        source_name: String,
        line: u64,
        reason: String,
    },
    #[error("{source_name}:{line}: {reason}")]
    Validation {
        source_name: String,
        line: u64,
        reason: String,
    },
    #[error("invalid corpus: {0}")]
    Invalid(String),
    #[error("invalid JSON corpus: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("journal {journal:?}: {source}")]
    Indicator {
        journal: String,
        #[source]
        source: IndicatorError,
    },
    #[error(transparent)]
    Consistency(#[from] ConsistencyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    journals: BTreeMap<String, JournalData>,
    provenance: String,
}

impl Corpus {
    pub fn from_journals(
        journals: impl IntoIterator<Item = JournalData>,
        provenance: impl Into<String>,
    ) -> Result<Self, CorpusError> {
        let mut map = BTreeMap::new();
        for j in journals {
            match map.entry(j.id().to_string()) {
                Entry::Occupied(e) => {
                    return Err(CorpusError::Invalid(format!(
                        "duplicate journal id {:?}",
                        e.key()
                    )))
                }
                Entry::Vacant(e) => {
                    e.insert(j);
                }
            }
        }
        Ok(Corpus {
            journals: map,
            provenance: provenance.into(),
        })
    }

    pub fn journals(&self) -> &BTreeMap<String, JournalData> {
        &self.journals
    }

    pub fn get(&self, id: &str) -> Option<&JournalData> {
        self.journals.get(id)
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.journals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.journals.is_empty()
    }

    /// Canonical JSON. Object keys are sorted and citation entries are
    /// ordered by `(citing, cited)`, so equal corpora serialize to equal bytes.
    pub fn to_json(&self) -> String {
        let doc = JsonCorpus {
            journals: self
                .journals
                .iter()
                .map(|(id, j)| {
                    let cits = j
                        .cits()
                        .iter()
                        .map(|(&(citing, cited), &count)| JsonCitation {
                            cited,
                            citing,
                            count,
                        })
                        .collect();
                    (
                        id.clone(),
                        JsonJournal {
                            cits,
                            pubs: j.pubs().clone(),
                        },
                    )
                })
                .collect(),
            provenance: (!self.provenance.is_empty()).then(|| self.provenance.clone()),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("corpus serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Corpus, CorpusError> {
        let doc: JsonCorpus = serde_json::from_str(text)?;
        let mut journals = BTreeMap::new();
        for (id, j) in doc.journals {
            let mut cits = BTreeMap::new();
            for c in j.cits {
                if cits.insert((c.citing, c.cited), c.count).is_some() {
                    return Err(CorpusError::Invalid(format!(
                        "journal {id:?}: duplicate citation key ({}, {})",
                        c.citing, c.cited
                    )));
                }
            }
            let data = JournalData::new(id.clone(), j.pubs, cits)
                .map_err(|e| CorpusError::Invalid(format!("journal {id:?}: {e}")))?;
            journals.insert(id, data);
        }
        Ok(Corpus {
            journals,
            provenance: doc.provenance.unwrap_or_default(),
        })
    }
}

// Fields are declared alphabetically so serde emits sorted keys.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonCorpus {
    journals: BTreeMap<String, JsonJournal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonJournal {
    #[serde(default)]
    cits: Vec<JsonCitation>,
    #[serde(default)]
    pubs: BTreeMap<Year, u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonCitation {
    cited: Year,
    citing: Year,
    count: u64,
}

#[derive(Default)]
struct Accumulator {
    pubs: BTreeMap<String, BTreeMap<Year, u64>>,
    cits: BTreeMap<String, BTreeMap<(Year, Year), u64>>,
}

fn read_rows<R: Read>(
    source_name: &str,
    reader: R,
    header: &[&str],
    mut on_row: impl FnMut(u64, &csv::StringRecord) -> Result<(), CorpusError>,
) -> Result<(), CorpusError> {
    let parse_err = |line: u64, reason: String| CorpusError::Parse {
        source_name: source_name.to_string(),
        line,
        reason,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut record = csv::StringRecord::new();
    let mut seen_header = false;
    loop {
        match rdr.read_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {}
            Err(e) => {
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                return Err(parse_err(line, e.to_string()));
            }
        }
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if !seen_header {
            seen_header = true;
            if record.iter().ne(header.iter().copied()) {
                return Err(parse_err(
                    line,
                    format!("expected header `{}`", header.join(",")),
                ));
            }
            continue;
        }
        on_row(line, &record)?;
    }
    Ok(())
}

/// A count column: malformed text is a parse error, a negative number is a
/// validation error.
fn count_field(source_name: &str, line: u64, name: &str, text: &str) -> Result<u64, CorpusError> {
    let value: i128 = text.parse().map_err(|_| CorpusError::Parse {
        source_name: source_name.to_string(),
        line,
        reason: format!("{name} {text:?} is not an integer"),
    })?;
    if value < 0 {
        return Err(CorpusError::Validation {
            source_name: source_name.to_string(),
            line,
            reason: format!("{name} must be non-negative, got {value}"),
        });
    }
    u64::try_from(value).map_err(|_| CorpusError::Parse {
        source_name: source_name.to_string(),
        line,
        reason: format!("{name} {text:?} is out of range"),
    })
}

fn year_field(source_name: &str, line: u64, name: &str, text: &str) -> Result<Year, CorpusError> {
    text.parse().map(Year).map_err(|_| CorpusError::Parse {
        source_name: source_name.to_string(),
        line,
        reason: format!("{name} {text:?} is not an integer year"),
    })
}

fn journal_field(source_name: &str, line: u64, text: &str) -> Result<String, CorpusError> {
    if text.is_empty() {
        return Err(CorpusError::Validation {
            source_name: source_name.to_string(),
            line,
            reason: "journal id must not be empty".into(),
        });
    }
    Ok(text.to_string())
}

fn field_count(
    source_name: &str,
    line: u64,
    record: &csv::StringRecord,
    want: usize,
) -> Result<(), CorpusError> {
    if record.len() != want {
        return Err(CorpusError::Parse {
            source_name: source_name.to_string(),
            line,
            reason: format!("expected {want} fields, found {}", record.len()),
        });
    }
    Ok(())
}

/// Reads the publications and citations tables into a corpus.
///
/// Each source must start with its header row. Duplicate keys are rejected
/// rather than summed. A journal present in only one table gets zero counts
/// on the other side. An empty source (no header) is an empty table.
pub fn load_corpus<P: Read, C: Read>(pubs: P, cits: C) -> Result<Corpus, CorpusError> {
    load_named(("publications", pubs), ("citations", cits), String::new())
}

pub fn load_corpus_files(pubs_path: &Path, cits_path: &Path) -> Result<Corpus, CorpusError> {
    let open = |p: &Path| {
        File::open(p).map_err(|source| CorpusError::Io {
            path: p.display().to_string(),
            source,
        })
    };
    let provenance = format!("pubs={} cits={}", pubs_path.display(), cits_path.display());
    load_named(
        (&pubs_path.display().to_string(), open(pubs_path)?),
        (&cits_path.display().to_string(), open(cits_path)?),
        provenance,
    )
}

fn load_named<P: Read, C: Read>(
    (pubs_name, pubs): (&str, P),
    (cits_name, cits): (&str, C),
    provenance: String,
) -> Result<Corpus, CorpusError> {
    let mut acc = Accumulator::default();

    read_rows(pubs_name, pubs, &PUBS_HEADER, |line, rec| {
        field_count(pubs_name, line, rec, 3)?;
        let journal = journal_field(pubs_name, line, &rec[0])?;
        let year = year_field(pubs_name, line, "year", &rec[1])?;
        let count = count_field(pubs_name, line, "pubs", &rec[2])?;
        let slot = acc.pubs.entry(journal.clone()).or_default();
        if slot.insert(year, count).is_some() {
            return Err(CorpusError::Validation {
                source_name: pubs_name.to_string(),
                line,
                reason: format!("duplicate row for ({journal}, {year})"),
            });
        }
        Ok(())
    })?;

    read_rows(cits_name, cits, &CITS_HEADER, |line, rec| {
        field_count(cits_name, line, rec, 4)?;
        let journal = journal_field(cits_name, line, &rec[0])?;
        let citing = year_field(cits_name, line, "citing_year", &rec[1])?;
        let cited = year_field(cits_name, line, "cited_year", &rec[2])?;
        let count = count_field(cits_name, line, "count", &rec[3])?;
        if citing < cited {
            return Err(CorpusError::Validation {
                source_name: cits_name.to_string(),
                line,
                reason: format!("citing year {citing} precedes cited year {cited}"),
            });
        }
        let slot = acc.cits.entry(journal.clone()).or_default();
        if slot.insert((citing, cited), count).is_some() {
            return Err(CorpusError::Validation {
                source_name: cits_name.to_string(),
                line,
                reason: format!("duplicate row for ({journal}, {citing}, {cited})"),
            });
        }
        Ok(())
    })?;

    let mut ids: Vec<String> = acc.pubs.keys().chain(acc.cits.keys()).cloned().collect();
    ids.sort();
    ids.dedup();
    let journals = ids.into_iter().map(|id| {
        let pubs = acc.pubs.remove(&id).unwrap_or_default();
        let cits = acc.cits.remove(&id).unwrap_or_default();
        JournalData::new(id, pubs, cits).expect("rows were validated")
    });
    Corpus::from_journals(journals, provenance)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankMode {
    /// Any journal whose indicator is undefined fails the whole ranking.
    Strict,
    /// Such journals are left out and reported in [`Ranking::skipped`].
    #[default]
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankingEntry {
    pub journal_id: String,
    pub value: Ratio,
    pub rank: usize,
    /// Other journals sharing this exact value.
    pub tied_with: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedJournal {
    pub journal_id: String,
    pub error: IndicatorError,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Ranking {
    pub entries: Vec<RankingEntry>,
    pub skipped: Vec<SkippedJournal>,
}

/// Ranks journals by descending indicator value with competition ranking
/// (1, 1, 3); ties are listed by journal id.
pub fn rank(corpus: &Corpus, spec: &IndicatorSpec, mode: RankMode) -> Result<Ranking, CorpusError> {
    let values: Vec<(&String, Result<Ratio, IndicatorError>)> = corpus
        .journals
        .par_iter()
        .map(|(id, data)| (id, compute(data, spec)))
        .collect();

    let mut scored = Vec::new();
    let mut skipped = Vec::new();
    for (id, value) in values {
        match value {
            Ok(v) => scored.push((id.clone(), v)),
            Err(source) if mode == RankMode::Strict => {
                return Err(CorpusError::Indicator {
                    journal: id.clone(),
                    source,
                })
            }
            Err(error) => skipped.push(SkippedJournal {
                journal_id: id.clone(),
                error,
            }),
        }
    }
    scored.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));

    let mut entries = Vec::with_capacity(scored.len());
    let mut start = 0;
    while start < scored.len() {
        let value = scored[start].1;
        let end = scored[start..]
            .iter()
            .position(|(_, v)| *v != value)
            .map_or(scored.len(), |off| start + off);
        let group: Vec<&String> = scored[start..end].iter().map(|(id, _)| id).collect();
        for id in &group {
            entries.push(RankingEntry {
                journal_id: (*id).clone(),
                value,
                rank: start + 1,
                tied_with: group
                    .iter()
                    .filter(|o| *o != id)
                    .map(|o| (*o).clone())
                    .collect(),
            });
        }
        start = end;
    }
    Ok(Ranking { entries, skipped })
}

/// How many uncited publications it takes to swap two adjacent journals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SensitivityRow {
    pub upper_id: String,
    pub lower_id: String,
    /// Smallest reversing `k <= k_max` per denominator year, if any.
    pub per_year_min_k: BTreeMap<Year, Option<u64>>,
    pub k_max: u64,
}

pub fn sensitivity_report(
    corpus: &Corpus,
    spec: &IndicatorSpec,
    k_max: u64,
    mode: RankMode,
) -> Result<Vec<SensitivityRow>, CorpusError> {
    let ranking = rank(corpus, spec, mode)?;
    sensitivity_for_ranking(corpus, &ranking, spec, k_max)
}

/// For every strictly ordered pair of adjacent entries in `ranking`, scans
/// each denominator year for the smallest common injection that swaps the
/// pair. Every reported `k` is re-checked as an actual reversal.
pub fn sensitivity_for_ranking(
    corpus: &Corpus,
    ranking: &Ranking,
    spec: &IndicatorSpec,
    k_max: u64,
) -> Result<Vec<SensitivityRow>, CorpusError> {
    let pairs: Vec<(&RankingEntry, &RankingEntry)> = ranking
        .entries
        .windows(2)
        .filter(|w| w[0].value != w[1].value)
        .map(|w| (&w[0], &w[1]))
        .collect();

    pairs
        .par_iter()
        .map(|(upper, lower)| {
            let lookup = |id: &str| {
                corpus.get(id).ok_or_else(|| {
                    CorpusError::Invalid(format!("ranked journal {id:?} is not in the corpus"))
                })
            };
            let (u, l) = (lookup(&upper.journal_id)?, lookup(&lower.journal_id)?);
            let mut per_year_min_k = BTreeMap::new();
            for year in spec.denominator_years() {
                let k = min_reversal_k(u, l, spec, year, k_max)?;
                if let Some(k) = k {
                    let injection = Injection::single(year, k).expect("k is positive");
                    ReversalWitness::new(PairScenario::new(
                        u.clone(),
                        l.clone(),
                        *spec,
                        injection,
                    ))?;
                }
                per_year_min_k.insert(year, k);
            }
            Ok(SensitivityRow {
                upper_id: upper.journal_id.clone(),
                lower_id: lower.journal_id.clone(),
                per_year_min_k,
                k_max,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicator::{sync_if_roa, IndicatorKind};

    const TABLE_1A_PUBS: &str = "journal,year,pubs\nJ,2009,10\nJ,2008,10\nJ',2009,30\nJ',2008,30\n";
    const TABLE_1A_CITS: &str =
        "journal,citing_year,cited_year,count\nJ,2010,2009,30\nJ,2010,2008,30\nJ',2010,2009,60\nJ',2010,2008,60\n";
    const TABLE_2_PUBS: &str = "journal,year,pubs\nJ,2009,30\nJ,2008,20\nJ',2009,30\nJ',2008,20\n";
    const TABLE_2_CITS: &str =
        "journal,citing_year,cited_year,count\nJ,2010,2009,10\nJ,2010,2008,80\nJ',2010,2009,120\nJ',2010,2008,10\n";

    fn spec(kind: IndicatorKind) -> IndicatorSpec {
        IndicatorSpec::new(kind, 2, Year(2010), 0).unwrap()
    }

    fn example_1a() -> Corpus {
        load_corpus(TABLE_1A_PUBS.as_bytes(), TABLE_1A_CITS.as_bytes()).unwrap()
    }

    #[test]
    fn loads_example_1a() {
        let c = example_1a();
        assert_eq!(c.len(), 2);
        assert_eq!(
            sync_if_roa(c.get("J").unwrap(), Year(2010), 2).unwrap(),
            Ratio::from_integer(3)
        );
    }

    #[test]
    fn empty_sources() {
        assert!(load_corpus("".as_bytes(), "".as_bytes())
            .unwrap()
            .is_empty());
        let headers_only = load_corpus(
            "journal,year,pubs\n".as_bytes(),
            "journal,citing_year,cited_year,count\n".as_bytes(),
        );
        assert!(headers_only.unwrap().is_empty());
    }

    #[test]
    fn one_sided_journals() {
        let c = load_corpus(
            "journal,year,pubs\nA,2009,4\n".as_bytes(),
            "journal,citing_year,cited_year,count\nB,2010,2009,2\n".as_bytes(),
        )
        .unwrap();
        assert_eq!(c.get("A").unwrap().cit_count(Year(2010), Year(2009)), 0);
        assert_eq!(c.get("B").unwrap().pub_count(Year(2009)), 0);
    }

    fn err_of(pubs: &str, cits: &str) -> CorpusError {
        load_corpus(pubs.as_bytes(), cits.as_bytes()).unwrap_err()
    }

    #[test]
    fn duplicate_rows_rejected() {
        let e = err_of("journal,year,pubs\nJ,2009,10\nJ,2009,10\n", "");
        assert!(matches!(e, CorpusError::Validation { line: 3, .. }), "{e}");
        let e = err_of(
            "",
            "journal,citing_year,cited_year,count\nJ,2010,2009,1\nJ,2010,2009,2\n",
        );
        assert!(matches!(e, CorpusError::Validation { line: 3, .. }), "{e}");
    }

    #[test]
    fn malformed_and_invalid_rows() {
        assert!(matches!(
            err_of("journal,year,pubs\nJ,20x9,10\n", ""),
            CorpusError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            err_of("journal,year,pubs\nJ,2009\n", ""),
            CorpusError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            err_of("journal,year,pubs\nJ,2009,-1\n", ""),
            CorpusError::Validation { line: 2, .. }
        ));
        assert!(matches!(
            err_of("journal,year,pubs\n,2009,1\n", ""),
            CorpusError::Validation { line: 2, .. }
        ));
        assert!(matches!(
            err_of("year,journal,pubs\n", ""),
            CorpusError::Parse { line: 1, .. }
        ));
        let e = err_of("", "journal,citing_year,cited_year,count\nJ,2008,2009,1\n");
        assert!(matches!(e, CorpusError::Validation { line: 2, .. }));
        assert!(e.to_string().starts_with("citations:2:"), "{e}");
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        let mut c = example_1a();
        c.provenance = "example 1a".into();
        let text = c.to_json();
        let back = Corpus::from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), text);
        assert!(text.contains("\"2009\": 10"));
    }

    #[test]
    fn json_rejects_backward_citations() {
        let text = r#"{"journals":{"J":{"pubs":{"2009":1},"cits":[{"citing":2008,"cited":2009,"count":1}]}}}"#;
        assert!(matches!(
            Corpus::from_json(text),
            Err(CorpusError::Invalid(_))
        ));
    }

    #[test]
    fn ranking_example_1a() {
        let r = rank(
            &example_1a(),
            &spec(IndicatorKind::SyncRoa),
            RankMode::Strict,
        )
        .unwrap();
        let got: Vec<(&str, Ratio, usize)> = r
            .entries
            .iter()
            .map(|e| (e.journal_id.as_str(), e.value, e.rank))
            .collect();
        assert_eq!(
            got,
            vec![
                ("J", Ratio::from_integer(3), 1),
                ("J'", Ratio::from_integer(2), 2)
            ]
        );
    }

    #[test]
    fn competition_ranking_with_ties() {
        let pubs = "journal,year,pubs\nA,2009,1\nB,2009,2\nC,2009,2\nD,2009,4\n";
        let cits = "journal,citing_year,cited_year,count\nA,2010,2009,1\nB,2010,2009,4\nC,2010,2009,4\nD,2010,2009,2\n";
        let c = load_corpus(pubs.as_bytes(), cits.as_bytes()).unwrap();
        let spec = IndicatorSpec::new(IndicatorKind::SyncRoa, 1, Year(2010), 0).unwrap();
        let r = rank(&c, &spec, RankMode::Strict).unwrap();
        let got: Vec<(&str, usize)> = r
            .entries
            .iter()
            .map(|e| (e.journal_id.as_str(), e.rank))
            .collect();
        assert_eq!(got, vec![("B", 1), ("C", 1), ("A", 3), ("D", 4)]);
        assert_eq!(r.entries[0].tied_with, vec!["C".to_string()]);
        assert!(r.entries[2].tied_with.is_empty());
    }

    #[test]
    fn lenient_mode_skips_undefined_journals() {
        let pubs = "journal,year,pubs\nA,2009,1\nA,2008,1\nB,2009,3\n";
        let cits = "journal,citing_year,cited_year,count\nA,2010,2009,1\nB,2010,2009,1\n";
        let c = load_corpus(pubs.as_bytes(), cits.as_bytes()).unwrap();
        let s = spec(IndicatorKind::SyncAor);
        let r = rank(&c, &s, RankMode::Lenient).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.skipped[0].journal_id, "B");
        assert_eq!(
            r.skipped[0].error,
            IndicatorError::ZeroDenominator {
                year: Some(Year(2008))
            }
        );
        assert!(matches!(
            rank(&c, &s, RankMode::Strict),
            Err(CorpusError::Indicator { .. })
        ));
    }

    #[test]
    fn single_journal() {
        let c = load_corpus("journal,year,pubs\nA,2009,1\n".as_bytes(), "".as_bytes()).unwrap();
        let r = rank(&c, &spec(IndicatorKind::SyncRoa), RankMode::Strict).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].rank, 1);
        assert!(
            sensitivity_report(&c, &spec(IndicatorKind::SyncRoa), 100, RankMode::Strict)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn sensitivity_example_1a() {
        let rows = sensitivity_report(
            &example_1a(),
            &spec(IndicatorKind::SyncRoa),
            100,
            RankMode::Strict,
        )
        .unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(
            (rows[0].upper_id.as_str(), rows[0].lower_id.as_str()),
            ("J", "J'")
        );
        let ks: Vec<Option<u64>> = rows[0].per_year_min_k.values().copied().collect();
        assert_eq!(ks, vec![Some(21), Some(21)]);
    }

    #[test]
    fn sensitivity_example_2() {
        let c = load_corpus(TABLE_2_PUBS.as_bytes(), TABLE_2_CITS.as_bytes()).unwrap();
        let rows =
            sensitivity_report(&c, &spec(IndicatorKind::SyncAor), 100, RankMode::Strict).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(
            (rows[0].upper_id.as_str(), rows[0].lower_id.as_str()),
            ("J'", "J")
        );
        assert_eq!(rows[0].per_year_min_k[&Year(2009)], Some(2));
        assert_eq!(rows[0].per_year_min_k[&Year(2008)], None);
    }
}

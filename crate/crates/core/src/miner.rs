//! Bounded exhaustive search for Z-consistency counterexamples.
//!
//! Every journal configuration inside the bounds is a tuple of publication
//! counts (one per denominator year, each in `1..=pub_max`) followed by
//! citation counts (one per numerator key, each in `0..=cit_max`). The
//! configurations are numbered in mixed radix, most significant digit first,
//! so index order is lexicographic tuple order. Pairs are enumerated as
//! `(left, right)` with `left < right`, which drops the mirrored duplicate of
//! every pair; for each pair and each denominator year the smallest reversing
//! `k <= k_max` is reported.
//!
//! Right-hand configurations are scanned in fixed-size chunks on the rayon
//! pool. Chunk results are concatenated in index order, so the output does
//! not depend on the number of worker threads.

use std::cmp::Ordering;

use rayon::prelude::*;
use thiserror::Error;

use crate::consistency::{PairScenario, ReversalWitness};
use crate::indicator::{self, IndicatorError, IndicatorKind, IndicatorSpec};
use crate::journal::{Injection, JournalData, Year};
use crate::ratio::cmp_fractions;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("search bound {0} must be at least 1")]
    ZeroBound(&'static str),
    #[error("inclusion flag s must be 0 or 1, got {0}")]
    InvalidInclusion(u8),
    #[error("search space does not fit in 64-bit indices")]
    TooLarge,
    #[error(transparent)]
    Spec(#[from] IndicatorError),
}

/// Limits of the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub n: u32,
    pub pub_max: u64,
    pub cit_max: u64,
    pub k_max: u64,
    /// Year `Y` that anchors the window layout.
    pub target_year: Year,
    /// Diachronous inclusion flag.
    pub s: u8,
    /// Restrict both journals to the same publication vector.
    pub equal_pubs: bool,
}

impl SearchBounds {
    pub fn new(
        n: u32,
        pub_max: u64,
        cit_max: u64,
        k_max: u64,
        target_year: Year,
    ) -> Result<Self, BoundsError> {
        let bounds = SearchBounds {
            n,
            pub_max,
            cit_max,
            k_max,
            target_year,
            s: 0,
            equal_pubs: false,
        };
        bounds.validate()?;
        Ok(bounds)
    }

    pub fn with_inclusion(mut self, s: u8) -> Self {
        self.s = s;
        self
    }

    pub fn with_equal_pubs(mut self, equal_pubs: bool) -> Self {
        self.equal_pubs = equal_pubs;
        self
    }

    fn validate(&self) -> Result<(), BoundsError> {
        for (name, v) in [
            ("n", self.n as u64),
            ("pub_max", self.pub_max),
            ("cit_max", self.cit_max),
            ("k_max", self.k_max),
        ] {
            if v == 0 {
                return Err(BoundsError::ZeroBound(name));
            }
        }
        if self.s > 1 {
            return Err(BoundsError::InvalidInclusion(self.s));
        }
        Ok(())
    }

    /// The indicator spec the bounds describe for `kind`.
    pub fn spec(&self, kind: IndicatorKind) -> Result<IndicatorSpec, BoundsError> {
        Ok(IndicatorSpec::new(kind, self.n, self.target_year, self.s)?)
    }

    /// Denominator years, in the order the search visits them.
    pub fn year_layout(&self, kind: IndicatorKind) -> Result<Vec<Year>, BoundsError> {
        Ok(self.spec(kind)?.denominator_years())
    }
}

/// One journal's counts laid out along a spec's window.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Candidate {
    /// One entry per denominator year.
    pub pubs: Vec<u64>,
    /// One entry per numerator `(citing, cited)` key.
    pub cits: Vec<u64>,
}

impl Candidate {
    pub fn to_journal(&self, id: &str, spec: &IndicatorSpec) -> JournalData {
        let pubs = spec
            .denominator_years()
            .into_iter()
            .zip(self.pubs.iter().copied())
            .collect();
        let cits = spec
            .citation_keys()
            .into_iter()
            .zip(self.cits.iter().copied())
            .collect();
        JournalData::new(id, pubs, cits).expect("window keys always flow forward in time")
    }

    pub fn from_journal(data: &JournalData, spec: &IndicatorSpec) -> Candidate {
        let (cits, pubs) = indicator::window_counts(data, spec);
        Candidate { pubs, cits }
    }
}

/// Mixed-radix numbering of the configurations allowed by some bounds.
struct Space {
    kind: IndicatorKind,
    pub_slots: usize,
    cit_slots: usize,
    pub_max: u64,
    cit_radix: u64,
    cit_configs: u64,
    total: u64,
}

impl Space {
    fn new(kind: IndicatorKind, bounds: &SearchBounds) -> Result<Space, BoundsError> {
        let spec = bounds.spec(kind)?;
        let pub_slots = spec.denominator_years().len();
        let cit_slots = spec.citation_keys().len();
        let cit_radix = bounds.cit_max.checked_add(1).ok_or(BoundsError::TooLarge)?;
        let pow = |base: u64, exp: usize| -> Result<u64, BoundsError> {
            (0..exp).try_fold(1u64, |acc, _| {
                acc.checked_mul(base).ok_or(BoundsError::TooLarge)
            })
        };
        let cit_configs = pow(cit_radix, cit_slots)?;
        let total = pow(bounds.pub_max, pub_slots)?
            .checked_mul(cit_configs)
            .ok_or(BoundsError::TooLarge)?;
        Ok(Space {
            kind,
            pub_slots,
            cit_slots,
            pub_max: bounds.pub_max,
            cit_radix,
            cit_configs,
            total,
        })
    }

    fn decode(&self, mut index: u64) -> Candidate {
        let mut cits = vec![0; self.cit_slots];
        for slot in cits.iter_mut().rev() {
            *slot = index % self.cit_radix;
            index /= self.cit_radix;
        }
        let mut pubs = vec![0; self.pub_slots];
        for slot in pubs.iter_mut().rev() {
            *slot = index % self.pub_max + 1;
            index /= self.pub_max;
        }
        Candidate { pubs, cits }
    }

    /// Right-hand index range paired with `left`. Only indices strictly above
    /// `left` are visited; with `equal_pubs` the publication digits are pinned
    /// to the left ones.
    fn partners(&self, left: u64, equal_pubs: bool) -> std::ops::Range<u64> {
        if equal_pubs {
            let block_end = (left / self.cit_configs + 1) * self.cit_configs;
            left + 1..block_end
        } else {
            left + 1..self.total
        }
    }

    /// Indicator value as an unreduced fraction, with `extra` publications
    /// added to denominator slot `slot`.
    fn value(&self, c: &Candidate, extra: Option<(usize, u64)>) -> (u128, u128) {
        let pub_at = |i: usize| -> u128 {
            let base = c.pubs[i] as u128;
            match extra {
                Some((slot, k)) if slot == i => base + k as u128,
                _ => base,
            }
        };
        match self.kind {
            IndicatorKind::SyncRoa | IndicatorKind::Diachronous => {
                let num = c.cits.iter().map(|&x| x as u128).sum();
                let den = (0..self.pub_slots).map(pub_at).sum();
                (num, den)
            }
            IndicatorKind::SyncAor => aor_fraction(
                &c.cits,
                &(0..self.pub_slots).map(pub_at).collect::<Vec<_>>(),
            )
            .unwrap_or_else(|| {
                let pubs: Vec<u64> = (0..self.pub_slots).map(|i| pub_at(i) as u64).collect();
                let r = indicator::average_of_ratios(&c.cits, &pubs)
                    .expect("bounded candidate has a representable value");
                (r.numer(), r.denom())
            }),
        }
    }
}

/// `(1/n) Σ c_i / p_i` over a common denominator, or `None` on overflow.
fn aor_fraction(cits: &[u64], pubs: &[u128]) -> Option<(u128, u128)> {
    let prod = pubs.iter().try_fold(1u128, |acc, &p| acc.checked_mul(p))?;
    let mut num = 0u128;
    for (&c, &p) in cits.iter().zip(pubs) {
        num = num.checked_add((c as u128).checked_mul(prod / p)?)?;
    }
    Some((num, prod.checked_mul(pubs.len() as u128)?))
}

fn cmp_pair(a: (u128, u128), b: (u128, u128)) -> Ordering {
    cmp_fractions(a.0, a.1, b.0, b.1)
}

/// Smallest reversing `k` per denominator slot, in slot order.
fn scan(space: &Space, k_max: u64, left: &Candidate, right: &Candidate) -> Vec<(usize, u64)> {
    let before = cmp_pair(space.value(left, None), space.value(right, None));
    if before == Ordering::Equal {
        return Vec::new();
    }
    let mut hits = Vec::new();
    for slot in 0..space.pub_slots {
        for k in 1..=k_max {
            let after = cmp_pair(
                space.value(left, Some((slot, k))),
                space.value(right, Some((slot, k))),
            );
            if after == before.reverse() {
                hits.push((slot, k));
                break;
            }
        }
    }
    hits
}

fn witness(
    spec: &IndicatorSpec,
    left: &Candidate,
    right: &Candidate,
    year: Year,
    k: u64,
) -> ReversalWitness {
    let scenario = PairScenario::new(
        left.to_journal("J", spec),
        right.to_journal("J'", spec),
        *spec,
        Injection::single(year, k).expect("k is positive"),
    );
    ReversalWitness::new(scenario).expect("search and exact check disagree on a witness")
}

/// Witnesses for one specific pair: the smallest reversing single-year
/// injection for each denominator year, in year-layout order.
pub fn pair_witnesses(
    kind: IndicatorKind,
    bounds: &SearchBounds,
    left: &Candidate,
    right: &Candidate,
) -> Result<Vec<ReversalWitness>, BoundsError> {
    bounds.validate()?;
    let space = Space::new(kind, bounds)?;
    let spec = bounds.spec(kind)?;
    let years = spec.denominator_years();
    Ok(scan(&space, bounds.k_max, left, right)
        .into_iter()
        .map(|(slot, k)| witness(&spec, left, right, years[slot], k))
        .collect())
}

/// Enumerates every pair of configurations inside `bounds` and returns the
/// first `limit` reversal witnesses in canonical order. Each returned witness
/// has been re-evaluated through the exact Z-consistency check.
pub fn mine_counterexamples(
    kind: IndicatorKind,
    bounds: &SearchBounds,
    limit: usize,
) -> Result<Vec<ReversalWitness>, BoundsError> {
    bounds.validate()?;
    let space = Space::new(kind, bounds)?;
    let spec = bounds.spec(kind)?;
    let years = spec.denominator_years();
    let mut found = Vec::new();
    if limit == 0 {
        return Ok(found);
    }
    for left_idx in 0..space.total {
        let left = space.decode(left_idx);
        let partners = space.partners(left_idx, bounds.equal_pubs);
        let mut start = partners.start;
        while start < partners.end {
            let end = partners.end.min(start.saturating_add(CHUNK));
            let chunk: Vec<(u64, Vec<(usize, u64)>)> = (start..end)
                .into_par_iter()
                .filter_map(|right_idx| {
                    let right = space.decode(right_idx);
                    let hits = scan(&space, bounds.k_max, &left, &right);
                    (!hits.is_empty()).then_some((right_idx, hits))
                })
                .collect();
            for (right_idx, hits) in chunk {
                let right = space.decode(right_idx);
                for (slot, k) in hits {
                    found.push(witness(&spec, &left, &right, years[slot], k));
                    if found.len() == limit {
                        return Ok(found);
                    }
                }
            }
            start = end;
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::VerdictTag;

    const Y: Year = Year(2010);

    fn brute_force(
        kind: IndicatorKind,
        bounds: &SearchBounds,
    ) -> Vec<(Candidate, Candidate, Year, u64)> {
        // Independent enumeration: nested loops over raw tuples, exact
        // evaluation through JournalData and the public indicator functions.
        let spec = bounds.spec(kind).unwrap();
        let pub_slots = spec.denominator_years().len();
        let cit_slots = spec.citation_keys().len();
        let mut configs = Vec::new();
        let mut pubs = vec![1u64; pub_slots];
        loop {
            let mut cits = vec![0u64; cit_slots];
            loop {
                configs.push(Candidate {
                    pubs: pubs.clone(),
                    cits: cits.clone(),
                });
                if !bump(&mut cits, 0, bounds.cit_max) {
                    break;
                }
            }
            if !bump(&mut pubs, 1, bounds.pub_max) {
                break;
            }
        }
        let mut out = Vec::new();
        for (i, l) in configs.iter().enumerate() {
            for r in &configs[i + 1..] {
                if bounds.equal_pubs && l.pubs != r.pubs {
                    continue;
                }
                let (lj, rj) = (l.to_journal("J", &spec), r.to_journal("J'", &spec));
                for year in spec.denominator_years() {
                    for k in 1..=bounds.k_max {
                        let v = crate::consistency::check_z_consistency(&PairScenario::new(
                            lj.clone(),
                            rj.clone(),
                            spec,
                            Injection::single(year, k).unwrap(),
                        ))
                        .unwrap();
                        if v.tag == VerdictTag::Reversed {
                            out.push((l.clone(), r.clone(), year, k));
                            break;
                        }
                    }
                }
            }
        }
        out
    }

    fn bump(digits: &mut [u64], lo: u64, hi: u64) -> bool {
        for d in digits.iter_mut().rev() {
            if *d < hi {
                *d += 1;
                return true;
            }
            *d = lo;
        }
        false
    }

    fn summarize(
        ws: &[ReversalWitness],
        spec: &IndicatorSpec,
    ) -> Vec<(Candidate, Candidate, Year, u64)> {
        ws.iter()
            .map(|w| {
                let s = w.scenario();
                let (year, k) = s.injection.additions()[0];
                (
                    Candidate::from_journal(&s.left, spec),
                    Candidate::from_journal(&s.right, spec),
                    year,
                    k,
                )
            })
            .collect()
    }

    #[test]
    fn matches_brute_force_on_small_bounds() {
        for kind in IndicatorKind::ALL {
            for equal_pubs in [false, true] {
                let bounds = SearchBounds::new(2, 3, 4, 3, Y)
                    .unwrap()
                    .with_equal_pubs(equal_pubs);
                let spec = bounds.spec(kind).unwrap();
                let expected = brute_force(kind, &bounds);
                let mined = mine_counterexamples(kind, &bounds, usize::MAX).unwrap();
                assert_eq!(
                    summarize(&mined, &spec),
                    expected,
                    "{kind} equal_pubs={equal_pubs}"
                );
                assert!(mined.iter().all(ReversalWitness::verify));
            }
        }
    }

    #[test]
    fn limit_takes_canonical_prefix() {
        let bounds = SearchBounds::new(2, 3, 4, 3, Y).unwrap();
        let all = mine_counterexamples(IndicatorKind::SyncAor, &bounds, usize::MAX).unwrap();
        assert!(all.len() > 5);
        let some = mine_counterexamples(IndicatorKind::SyncAor, &bounds, 5).unwrap();
        assert_eq!(&all[..5], &some[..]);
    }

    #[test]
    fn decode_is_lexicographic() {
        let bounds = SearchBounds::new(2, 3, 2, 1, Y).unwrap();
        let space = Space::new(IndicatorKind::SyncRoa, &bounds).unwrap();
        assert_eq!(space.total, 9 * 9);
        let all: Vec<Candidate> = (0..space.total).map(|i| space.decode(i)).collect();
        assert!(all
            .windows(2)
            .all(|w| (&w[0].pubs, &w[0].cits) < (&w[1].pubs, &w[1].cits)));
        assert_eq!(
            all[0],
            Candidate {
                pubs: vec![1, 1],
                cits: vec![0, 0]
            }
        );
    }

    #[test]
    fn example_1a_pair_is_inside_default_bounds() {
        let bounds = SearchBounds::new(2, 30, 60, 25, Y).unwrap();
        let left = Candidate {
            pubs: vec![10, 10],
            cits: vec![30, 30],
        };
        let right = Candidate {
            pubs: vec![30, 30],
            cits: vec![60, 60],
        };
        let ws = pair_witnesses(IndicatorKind::SyncRoa, &bounds, &left, &right).unwrap();
        let ks: Vec<(Year, u64)> = ws
            .iter()
            .map(|w| w.scenario().injection.additions()[0])
            .collect();
        assert_eq!(ks, vec![(Y - 1, 21), (Y - 2, 21)]);
    }

    #[test]
    fn rejects_zero_bounds() {
        assert_eq!(
            SearchBounds::new(2, 0, 1, 1, Y),
            Err(BoundsError::ZeroBound("pub_max"))
        );
        assert_eq!(
            SearchBounds::new(0, 1, 1, 1, Y),
            Err(BoundsError::ZeroBound("n"))
        );
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let bounds = SearchBounds::new(2, 4, 6, 4, Y).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| mine_counterexamples(IndicatorKind::SyncAor, &bounds, 50).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}

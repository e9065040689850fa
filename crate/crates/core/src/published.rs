//! The three worked examples (1a, 1b and 2) as code, with their
//! printed values, so the arithmetic can be re-checked with no input files.
//!
//! The tables use a symbolic year `Y`; it is pinned to [`REFERENCE_YEAR`].

use crate::consistency::{check_z_consistency, PairScenario, VerdictTag};
use crate::indicator::{IndicatorKind, IndicatorSpec};
use crate::journal::{Injection, JournalData, Year};
use crate::ratio::Ratio;

pub const REFERENCE_YEAR: Year = Year(2010);

/// A table's two journals with the indicator and injection it illustrates.
#[derive(Debug, Clone)]
pub struct TableCase {
    pub name: &'static str,
    /// Label for the indicator as printed, e.g. `IF2`.
    pub symbol: &'static str,
    pub scenario: PairScenario,
    /// Printed `(left, right)` values before and after, as exact ratios and
    /// two-decimal strings.
    pub printed_before: [(Ratio, &'static str); 2],
    pub printed_after: [(Ratio, &'static str); 2],
}

fn journal(id: &str, pubs: &[(i32, u64)], cits: &[(i32, i32, u64)]) -> JournalData {
    JournalData::from_counts(id, pubs, cits).expect("table data is valid")
}

fn ratio(num: u128, den: u128) -> Ratio {
    Ratio::new(num, den).expect("non-zero denominator")
}

/// Two-year synchronous impact factor; both journals get 25 uncited items,
/// placed in `Y-1` (placement does not affect a ratio of sums).
pub fn example_1a() -> TableCase {
    let y = REFERENCE_YEAR.0;
    TableCase {
        name: "example 1a",
        symbol: "IF2",
        scenario: PairScenario::new(
            journal(
                "J",
                &[(y - 1, 10), (y - 2, 10)],
                &[(y, y - 1, 30), (y, y - 2, 30)],
            ),
            journal(
                "J'",
                &[(y - 1, 30), (y - 2, 30)],
                &[(y, y - 1, 60), (y, y - 2, 60)],
            ),
            IndicatorSpec::new(IndicatorKind::SyncRoa, 2, REFERENCE_YEAR, 0).expect("valid spec"),
            Injection::single(REFERENCE_YEAR - 1, 25).expect("k > 0"),
        ),
        printed_before: [(ratio(3, 1), "3"), (ratio(2, 1), "2")],
        printed_after: [(ratio(60, 45), "1.33"), (ratio(120, 85), "1.41")],
    }
}

/// Three-year diachronous impact factor including the publication year.
pub fn example_1b() -> TableCase {
    let y = REFERENCE_YEAR.0;
    TableCase {
        name: "example 1b",
        symbol: "IMP3",
        scenario: PairScenario::new(
            journal(
                "J",
                &[(y, 20)],
                &[(y, y, 10), (y + 1, y, 20), (y + 2, y, 30)],
            ),
            journal(
                "J'",
                &[(y, 60)],
                &[(y, y, 20), (y + 1, y, 40), (y + 2, y, 60)],
            ),
            IndicatorSpec::new(IndicatorKind::Diachronous, 3, REFERENCE_YEAR, 0)
                .expect("valid spec"),
            Injection::single(REFERENCE_YEAR, 25).expect("k > 0"),
        ),
        printed_before: [(ratio(60, 20), "3"), (ratio(120, 60), "2")],
        printed_after: [(ratio(60, 45), "1.33"), (ratio(120, 85), "1.41")],
    }
}

/// Two-year average-of-ratios impact factor with 10 uncited items in `Y-1`.
pub fn example_2() -> TableCase {
    let y = REFERENCE_YEAR.0;
    TableCase {
        name: "example 2",
        symbol: "ARIF2",
        scenario: PairScenario::new(
            journal(
                "J",
                &[(y - 1, 30), (y - 2, 20)],
                &[(y, y - 1, 10), (y, y - 2, 80)],
            ),
            journal(
                "J'",
                &[(y - 1, 30), (y - 2, 20)],
                &[(y, y - 1, 120), (y, y - 2, 10)],
            ),
            IndicatorSpec::new(IndicatorKind::SyncAor, 2, REFERENCE_YEAR, 0).expect("valid spec"),
            Injection::single(REFERENCE_YEAR - 1, 10).expect("k > 0"),
        ),
        printed_before: [(ratio(13, 6), "2.17"), (ratio(9, 4), "2.25")],
        printed_after: [(ratio(17, 8), "2.13"), (ratio(7, 4), "1.75")],
    }
}

pub fn all_tables() -> Vec<TableCase> {
    vec![example_1a(), example_1b(), example_2()]
}

/// One line of the verification checklist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub table: &'static str,
    pub quantity: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

/// Values are compared exactly, and the printed decimal must match the
/// computed value rounded to the printed number of places.
fn value_check(
    table: &'static str,
    quantity: String,
    printed: (Ratio, &'static str),
    actual: Option<Ratio>,
) -> Check {
    let (expected, text) = printed;
    let places = text
        .split_once('.')
        .map_or(0, |(_, frac)| frac.len() as u32);
    match actual {
        Some(v) => Check {
            table,
            quantity,
            expected: format!("{expected} ({text})"),
            actual: format!("{v} ({})", v.to_decimal(places)),
            passed: v == expected && v.to_decimal(places) == text,
        },
        None => Check {
            table,
            quantity,
            expected: format!("{expected} ({text})"),
            actual: "undefined".into(),
            passed: false,
        },
    }
}

pub fn check_table(case: &TableCase) -> Vec<Check> {
    let verdict = check_z_consistency(&case.scenario).ok();
    let ids = [case.scenario.left.id(), case.scenario.right.id()];
    let inj = &case.scenario.injection;
    let mut checks = Vec::new();
    for (side, id) in ids.iter().enumerate() {
        let actual = verdict.map(|v| if side == 0 { v.before.0 } else { v.before.1 });
        checks.push(value_check(
            case.name,
            format!("{}({id})", case.symbol),
            case.printed_before[side],
            actual,
        ));
    }
    for (side, id) in ids.iter().enumerate() {
        let actual = verdict.map(|v| if side == 0 { v.after.0 } else { v.after.1 });
        checks.push(value_check(
            case.name,
            format!("{}({id}) after {inj}", case.symbol),
            case.printed_after[side],
            actual,
        ));
    }
    let tag = verdict.map(|v| v.tag);
    checks.push(Check {
        table: case.name,
        quantity: "verdict".into(),
        expected: VerdictTag::Reversed.to_string(),
        actual: tag.map_or_else(|| "undefined".into(), |t| t.to_string()),
        passed: tag == Some(VerdictTag::Reversed),
    });
    checks
}

pub fn verify_all() -> Vec<Check> {
    all_tables().iter().flat_map(check_table).collect()
}

//! Exact journal impact factors and a Z-consistency auditor.
//!
//! Indicator values are exact [`Ratio`]s; decimals only appear when
//! rendering. The [`consistency`] module decides whether adding the same
//! uncited publications to two journals can reverse their order, and
//! [`miner`] searches bounded integer data for such reversals.

pub mod cli;
pub mod consistency;
pub mod corpus;
pub mod indicator;
pub mod journal;
pub mod miner;
pub mod published;
pub mod ratio;

pub use consistency::{
    check_z_consistency, equal_pubs_preserved, min_reversal_k, ConsistencyError, PairScenario,
    ReversalWitness, Verdict, VerdictTag,
};
pub use indicator::{
    compute, diachronous_imp, sync_if_aor, sync_if_roa, IndicatorError, IndicatorKind,
    IndicatorSpec,
};
pub use journal::{DataError, Injection, JournalData, Year};
pub use miner::{mine_counterexamples, SearchBounds};
pub use ratio::Ratio;

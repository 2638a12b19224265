//! Optimality-Theoretic syllabification by local pruning.
//!
//! Words are classified into consonant and vowel segments, paired with a
//! candidate grid of position labels (`o`nset, `n`ucleus, `c`oda,
//! `u`nparsed), and pruned constraint by constraint in ranking order. A
//! brute-force oracle over all `4^n` labelings provides the reference
//! semantics the engine is checked against.

pub mod analysis;
pub mod constraints;
pub mod engine;
pub mod error;
pub mod grid;
pub mod oracle;
pub mod segments;

pub use analysis::{counts, eval_cost, typology, Cost, CountRow, Strategy, TypologyMode, TypologyReport};
pub use constraints::{housekeeping, prune, violations, ConstraintId, Ranking, Removal, ViolationVector};
pub use engine::{residual_select, run, EvalMode, Evaluation, ParseResult, StepKind, Trace, TraceStep};
pub use error::{Error, Result};
pub use grid::{
    enumerate_parses, format_parse, gen_grid, well_formed, CandidateGrid, Cell, Label, LabelSet, LabelString,
    ParseStyle,
};
pub use oracle::{compare, oracle_parse, sweep, EquivalenceReport, OracleTable, SweepSummary, Verdict};
pub use segments::{classify, Alphabet, Segment, SegmentClass};

//! Brute-force evaluation over all `4^n` label strings.
//!
//! Nothing here shares code with the engine's pruning path: candidates are
//! enumerated exhaustively, filtered by GEN, scored with the global violation
//! counts and compared lexicographically.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::constraints::{raw_violations, ConstraintId, Ranking};
use crate::engine::{run, EvalMode, ParseResult};
use crate::error::{Error, Result};
use crate::grid::{well_formed, LabelString};
use crate::segments::{all_patterns, from_classes, Segment};

pub const DEFAULT_CAP: usize = 10;

/// Every well-formed candidate for one input, grouped by its violation
/// profile (counts in [`ConstraintId::ALL`] order).
#[derive(Debug, Clone)]
pub struct OracleTable {
    segments: Vec<Segment>,
    profiles: BTreeMap<[u32; 6], Vec<LabelString>>,
}

impl OracleTable {
    pub fn build(segments: &[Segment], cap: usize) -> Result<OracleTable> {
        if segments.is_empty() {
            return Err(Error::EmptyInput);
        }
        if segments.len() > cap {
            return Err(Error::InputTooLong { len: segments.len(), cap });
        }
        let mut profiles: BTreeMap<[u32; 6], Vec<LabelString>> = BTreeMap::new();
        for labels in LabelString::all(segments.len()).filter(well_formed) {
            let profile = ConstraintId::ALL.map(|c| raw_violations(c, segments, labels.labels()));
            profiles.entry(profile).or_default().push(labels);
        }
        Ok(OracleTable { segments: segments.to_vec(), profiles })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn candidate_count(&self) -> usize {
        self.profiles.values().map(Vec::len).sum()
    }

    /// Optimal label strings under `ranking`, sorted.
    pub fn optima(&self, ranking: &Ranking) -> Vec<LabelString> {
        let key = |p: &[u32; 6]| -> Vec<u32> {
            ranking.order().iter().map(|&c| p[c as usize]).collect()
        };
        let best = self.profiles.keys().map(key).min().expect("all-unparsed candidate always exists");
        let mut out: Vec<LabelString> = self
            .profiles
            .iter()
            .filter(|(p, _)| key(p) == best)
            .flat_map(|(_, ls)| ls.iter().cloned())
            .collect();
        out.sort();
        out
    }

    pub fn optimal_parses(&self, ranking: &Ranking) -> Result<Vec<ParseResult>> {
        self.optima(ranking)
            .into_iter()
            .map(|l| ParseResult::new(&self.segments, ranking, l))
            .collect()
    }
}

pub fn oracle_parse(segments: &[Segment], ranking: &Ranking, cap: usize) -> Result<Vec<ParseResult>> {
    OracleTable::build(segments, cap)?.optimal_parses(ranking)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equal,
    EngineSubset,
    Divergent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "equal",
            Verdict::EngineSubset => "subset",
            Verdict::Divergent => "divergent",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub input: String,
    pub ranking: Ranking,
    pub mode: EvalMode,
    pub engine: Vec<LabelString>,
    pub oracle: Vec<LabelString>,
    pub verdict: Verdict,
    /// For divergent cases: engine outputs the oracle rejects, then oracle
    /// optima the engine missed.
    pub witnesses: Vec<LabelString>,
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[LabelString]| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
        write!(
            f,
            "{}\t{}\t{}\t{}\tengine={}\toracle={}",
            self.verdict,
            self.input,
            self.ranking,
            self.mode,
            join(&self.engine),
            join(&self.oracle)
        )
    }
}

/// Runs the engine and compares it against a prebuilt oracle table.
pub fn compare_with(table: &OracleTable, ranking: &Ranking, mode: EvalMode) -> Result<EquivalenceReport> {
    let segments = table.segments();
    let mut engine: Vec<LabelString> =
        run(segments, ranking, mode)?.results.into_iter().map(|r| r.labels).collect();
    engine.sort();
    let oracle = table.optima(ranking);

    let verdict = if engine == oracle {
        Verdict::Equal
    } else if engine.iter().all(|l| oracle.contains(l)) {
        Verdict::EngineSubset
    } else {
        Verdict::Divergent
    };
    let witnesses = if verdict == Verdict::Divergent {
        engine
            .iter()
            .filter(|l| !oracle.contains(l))
            .chain(oracle.iter().filter(|l| !engine.contains(l)))
            .cloned()
            .collect()
    } else {
        Vec::new()
    };
    Ok(EquivalenceReport {
        input: segments.iter().map(|s| s.symbol).collect(),
        ranking: ranking.clone(),
        mode,
        engine,
        oracle,
        verdict,
        witnesses,
    })
}

pub fn compare(segments: &[Segment], ranking: &Ranking, mode: EvalMode) -> Result<EquivalenceReport> {
    compare_with(&OracleTable::build(segments, DEFAULT_CAP)?, ranking, mode)
}

#[derive(Debug, Clone, Default)]
pub struct SweepSummary {
    pub equal: usize,
    pub subset: usize,
    pub divergent: usize,
    /// Every divergent report, in (pattern, ranking) order.
    pub divergences: Vec<EquivalenceReport>,
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "equal={} subset={} divergent={}", self.equal, self.subset, self.divergent)
    }
}

/// Compares engine and oracle on every C/V pattern of length `1..=max_len`
/// under all 720 rankings.
pub fn sweep(max_len: usize, mode: EvalMode) -> Result<SweepSummary> {
    if max_len > DEFAULT_CAP {
        return Err(Error::InputTooLong { len: max_len, cap: DEFAULT_CAP });
    }
    let rankings = Ranking::all();
    let patterns: Vec<Vec<Segment>> = (1..=max_len)
        .flat_map(all_patterns)
        .map(|p| from_classes(&p))
        .collect();

    let per_pattern: Vec<Vec<EquivalenceReport>> = patterns
        .par_iter()
        .map(|segs| {
            let table = OracleTable::build(segs, DEFAULT_CAP)?;
            rankings.iter().map(|r| compare_with(&table, r, mode)).collect()
        })
        .collect::<Result<_>>()?;

    let mut summary = SweepSummary::default();
    for report in per_pattern.into_iter().flatten() {
        match report.verdict {
            Verdict::Equal => summary.equal += 1,
            Verdict::EngineSubset => summary.subset += 1,
            Verdict::Divergent => {
                summary.divergent += 1;
                summary.divergences.push(report);
            }
        }
    }
    Ok(summary)
}

//! Cyclic constraint evaluation over a candidate grid.
//!
//! Constraints prune the grid one at a time in ranking order, each pass
//! followed by housekeeping. Whatever indeterminacy survives the loop is
//! resolved by [`residual_select`], which scores the remaining completions.

use std::fmt;
use std::str::FromStr;

use crate::constraints::{housekeeping, prune, ConstraintId, PruneOutcome, Ranking, Removal, ViolationVector};
use crate::error::{Error, Result};
use crate::grid::{format_parse, gen_grid, well_formed, CandidateGrid, LabelString, ParseStyle};
use crate::segments::Segment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EvalMode {
    /// Every constraint prunes exactly once, top down.
    #[default]
    OneShot,
    /// After a pass changes the grid, all constraints ranked at or above it
    /// are re-applied from the top until nothing changes.
    Restart,
}

impl FromStr for EvalMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oneshot" => Ok(EvalMode::OneShot),
            "restart" => Ok(EvalMode::Restart),
            other => Err(Error::InvalidArgument(format!("unknown mode '{other}'"))),
        }
    }
}

impl fmt::Display for EvalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalMode::OneShot => "oneshot",
            EvalMode::Restart => "restart",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Constraint(ConstraintId),
    Housekeeping,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::Constraint(c) => write!(f, "{c}"),
            StepKind::Housekeeping => f.write_str("housekeeping"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub kind: StepKind,
    pub grid_after: CandidateGrid,
    pub removals: Vec<Removal>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.kind)?;
        write!(f, "{}", self.grid_after)?;
        for r in &self.removals {
            writeln!(f, "removed: {r}")?;
        }
        Ok(())
    }
}

/// Step log for one run. Every recorded grid must refine its predecessor and
/// keep every cell non-empty; [`Trace::record`] refuses anything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    initial: CandidateGrid,
    steps: Vec<TraceStep>,
}

impl Trace {
    pub fn new(initial: CandidateGrid) -> Trace {
        Trace { initial, steps: Vec::new() }
    }

    pub fn initial(&self) -> &CandidateGrid {
        &self.initial
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn current(&self) -> &CandidateGrid {
        self.steps.last().map_or(&self.initial, |s| &s.grid_after)
    }

    pub fn record(&mut self, step: TraceStep) -> Result<()> {
        let index = self.steps.len();
        let broken = |detail: String| Error::InvariantBroken { step: index, detail };
        if let Some(i) = step.grid_after.cells().iter().position(|c| c.options.is_empty()) {
            return Err(broken(format!("cell {i} has no options after {}", step.kind)));
        }
        if !step.grid_after.refines(self.current()) {
            return Err(broken(format!("{} enlarged an option set", step.kind)));
        }
        self.steps.push(step);
        Ok(())
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            write!(f, "{step}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParseResult {
    pub labels: LabelString,
    pub violations: ViolationVector,
    pub rendered: String,
}

impl ParseResult {
    pub fn new(segments: &[Segment], ranking: &Ranking, labels: LabelString) -> Result<ParseResult> {
        let violations = ranking.violation_vector(segments, &labels)?;
        let rendered = format_parse(&labels, segments, ParseStyle::Parens)?;
        Ok(ParseResult { labels, violations, rendered })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub results: Vec<ParseResult>,
    pub trace: Trace,
}

struct Runner<'a> {
    ranking: &'a Ranking,
    trace: Trace,
}

impl Runner<'_> {
    /// One pass: prune for `c`, then housekeeping. Returns whether the grid changed.
    fn pass(&mut self, c: ConstraintId) -> Result<bool> {
        let pruned = prune(c, self.trace.current());
        let changed = self.log(StepKind::Constraint(c), pruned)?;
        let cleaned = housekeeping(self.trace.current());
        Ok(self.log(StepKind::Housekeeping, cleaned)? || changed)
    }

    fn log(&mut self, kind: StepKind, outcome: PruneOutcome) -> Result<bool> {
        let changed = outcome.changed();
        self.trace.record(TraceStep { kind, grid_after: outcome.grid, removals: outcome.removals })?;
        Ok(changed)
    }

    fn one_shot(&mut self) -> Result<()> {
        for &c in self.ranking.order() {
            self.pass(c)?;
        }
        Ok(())
    }

    fn restart(&mut self) -> Result<()> {
        let order = self.ranking.order();
        for k in 0..order.len() {
            let mut changed = self.pass(order[k])?;
            // grids only shrink, so this terminates
            while changed {
                changed = false;
                for &c in &order[..=k] {
                    changed |= self.pass(c)?;
                }
            }
        }
        Ok(())
    }
}

/// Parses `segments` under `ranking`, returning the optimal parses and the
/// step-by-step trace.
pub fn run(segments: &[Segment], ranking: &Ranking, mode: EvalMode) -> Result<Evaluation> {
    let grid = gen_grid(segments)?;
    let mut runner = Runner { ranking, trace: Trace::new(grid) };
    match mode {
        EvalMode::OneShot => runner.one_shot()?,
        EvalMode::Restart => runner.restart()?,
    }
    let results = residual_select(runner.trace.current(), segments, ranking)?;
    Ok(Evaluation { results, trace: runner.trace })
}

/// Scores every well-formed completion of `grid` and keeps the
/// lexicographic minima. Ties are all returned, sorted by label string.
pub fn residual_select(grid: &CandidateGrid, segments: &[Segment], ranking: &Ranking) -> Result<Vec<ParseResult>> {
    let mut best: Option<ViolationVector> = None;
    let mut winners: Vec<LabelString> = Vec::new();
    for labels in grid.completions().filter(well_formed) {
        let v = ranking.violation_vector(segments, &labels)?;
        match best.as_ref().map(|b| v.cmp(b)) {
            Some(std::cmp::Ordering::Greater) => {}
            Some(std::cmp::Ordering::Equal) => winners.push(labels),
            _ => {
                best = Some(v);
                winners = vec![labels];
            }
        }
    }
    if winners.is_empty() {
        return Err(Error::NoWellFormedCompletion);
    }
    winners.sort();
    winners
        .into_iter()
        .map(|l| ParseResult::new(segments, ranking, l))
        .collect()
}

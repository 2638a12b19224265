//! The six syllable-structure constraints.
//!
//! Each constraint has two faces: [`violations`] counts marks on a complete
//! parse (used by the brute-force oracle and for residual selection), and
//! [`prune`] removes dispreferred options from a candidate grid (used by the
//! engine). [`housekeeping`] enforces GEN's structural bans on grids.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::grid::{well_formed, CandidateGrid, Label, LabelSet, LabelString, RemovalOutcome};
use crate::segments::Segment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintId {
    /// *PEAK/C: consonants are not nuclei.
    PeakC,
    /// *MARGIN/V: vowels are not onsets or codas.
    MarginV,
    Parse,
    Onset,
    NoCoda,
    /// *COMPLEX: no two-segment margins.
    Complex,
}

impl ConstraintId {
    pub const ALL: [ConstraintId; 6] = [
        ConstraintId::PeakC,
        ConstraintId::MarginV,
        ConstraintId::Parse,
        ConstraintId::Onset,
        ConstraintId::NoCoda,
        ConstraintId::Complex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstraintId::PeakC => "pkc",
            ConstraintId::MarginV => "mgv",
            ConstraintId::Parse => "parse",
            ConstraintId::Onset => "onset",
            ConstraintId::NoCoda => "nocoda",
            ConstraintId::Complex => "cplx",
        }
    }
}

impl fmt::Display for ConstraintId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstraintId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstraintId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownConstraint(s.to_string()))
    }
}

/// A strict total order over all six constraints, highest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking(Vec<ConstraintId>);

impl Ranking {
    pub fn new(order: Vec<ConstraintId>) -> Result<Ranking> {
        if order.len() != ConstraintId::ALL.len() {
            return Err(Error::InvalidRanking(format!(
                "expected {} constraints, got {}",
                ConstraintId::ALL.len(),
                order.len()
            )));
        }
        if let Some(dup) = order.iter().duplicates().next() {
            return Err(Error::InvalidRanking(format!("'{dup}' appears more than once")));
        }
        Ok(Ranking(order))
    }

    pub fn order(&self) -> &[ConstraintId] {
        &self.0
    }

    /// All 720 rankings, in lexicographic order of constraint declaration.
    pub fn all() -> Vec<Ranking> {
        ConstraintId::ALL
            .into_iter()
            .permutations(ConstraintId::ALL.len())
            .map(Ranking)
            .collect()
    }

    pub fn violation_vector(&self, segments: &[Segment], labels: &LabelString) -> Result<ViolationVector> {
        self.0
            .iter()
            .map(|&c| violations(c, segments, labels))
            .collect::<Result<Vec<_>>>()
            .map(ViolationVector)
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.iter().map(|c| c.name()).join(","))
    }
}

impl FromStr for Ranking {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let order = s
            .split(',')
            .map(|part| part.trim().parse::<ConstraintId>())
            .collect::<Result<Vec<_>>>()?;
        Ranking::new(order)
    }
}

/// Violation counts in ranking order; the derived `Ord` is the lexicographic
/// OT comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ViolationVector(pub Vec<u32>);

impl ViolationVector {
    pub fn counts(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for ViolationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.iter().join(","))
    }
}

/// Violation marks incurred by a complete, well-formed parse.
pub fn violations(c: ConstraintId, segments: &[Segment], labels: &LabelString) -> Result<u32> {
    if labels.len() != segments.len() || !well_formed(labels) {
        return Err(Error::IllFormedParse(labels.to_string()));
    }
    Ok(raw_violations(c, segments, labels.labels()))
}

/// Like [`violations`] without the well-formedness check.
pub(crate) fn raw_violations(c: ConstraintId, segments: &[Segment], labels: &[Label]) -> u32 {
    let pairs = || segments.iter().zip(labels);
    let count = match c {
        ConstraintId::PeakC => pairs()
            .filter(|(s, &l)| s.is_consonant() && l == Label::Nucleus)
            .count(),
        ConstraintId::MarginV => pairs()
            .filter(|(s, &l)| s.is_vowel() && matches!(l, Label::Onset | Label::Coda))
            .count(),
        ConstraintId::Parse => labels.iter().filter(|&&l| l == Label::Unparsed).count(),
        ConstraintId::NoCoda => labels.iter().filter(|&&l| l == Label::Coda).count(),
        ConstraintId::Complex => labels
            .windows(2)
            .filter(|w| matches!(w, [Label::Onset, Label::Onset] | [Label::Coda, Label::Coda]))
            .count(),
        ConstraintId::Onset => (0..labels.len())
            .filter(|&i| labels[i] == Label::Nucleus && (i == 0 || labels[i - 1] != Label::Onset))
            .count(),
    };
    count as u32
}

/// One attempted option removal during pruning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Removal {
    pub cell: usize,
    pub label: Label,
    /// False when the Pruning Condition blocked it.
    pub applied: bool,
}

impl fmt::Display for Removal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.cell, self.label)?;
        if !self.applied {
            f.write_str("[skipped]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruneOutcome {
    pub grid: CandidateGrid,
    pub removals: Vec<Removal>,
}

impl PruneOutcome {
    pub fn changed(&self) -> bool {
        self.removals.iter().any(|r| r.applied)
    }
}

/// Applies removals to a working grid, to a fixpoint, keeping a log.
struct Pruner {
    grid: CandidateGrid,
    removals: Vec<Removal>,
    changed: bool,
    /// Whether the grid started with a well-formed completion worth protecting.
    viable: bool,
}

impl Pruner {
    fn new(grid: &CandidateGrid) -> Self {
        Pruner { grid: grid.clone(), removals: Vec::new(), changed: false, viable: grid.has_well_formed_completion() }
    }

    fn remove(&mut self, cell: usize, label: Label) {
        let before = self.grid.options(cell);
        let mut outcome = self.grid.try_remove(cell, label);
        if outcome == RemovalOutcome::Applied && self.viable && !self.grid.has_well_formed_completion() {
            self.grid.restore(cell, before);
            outcome = RemovalOutcome::Blocked;
        }
        match outcome {
            RemovalOutcome::Applied => {
                self.changed = true;
                self.removals.push(Removal { cell, label, applied: true });
            }
            RemovalOutcome::Blocked => {
                let skipped = Removal { cell, label, applied: false };
                if !self.removals.contains(&skipped) {
                    self.removals.push(skipped);
                }
            }
            RemovalOutcome::Absent => {}
        }
    }

    fn determined(&self, i: usize, label: Label) -> bool {
        self.grid.options(i).is_only(label)
    }

    /// Repeats left-to-right sweeps until a sweep changes nothing.
    fn fixpoint(mut self, mut sweep: impl FnMut(&mut Pruner)) -> PruneOutcome {
        loop {
            self.changed = false;
            sweep(&mut self);
            if !self.changed {
                break;
            }
        }
        PruneOutcome { grid: self.grid, removals: self.removals }
    }
}

/// Local pruning for one constraint. A removal that would empty a cell is
/// skipped and logged.
pub fn prune(c: ConstraintId, grid: &CandidateGrid) -> PruneOutcome {
    let n = grid.len();
    Pruner::new(grid).fixpoint(|p| match c {
        ConstraintId::PeakC => {
            for i in 0..n {
                if p.grid.cells()[i].segment.is_consonant() {
                    p.remove(i, Label::Nucleus);
                }
            }
        }
        ConstraintId::MarginV => {
            for i in 0..n {
                if p.grid.cells()[i].segment.is_vowel() {
                    p.remove(i, Label::Onset);
                    p.remove(i, Label::Coda);
                }
            }
        }
        ConstraintId::Parse => {
            for i in 0..n {
                p.remove(i, Label::Unparsed);
            }
        }
        ConstraintId::NoCoda => {
            for i in 0..n {
                p.remove(i, Label::Coda);
            }
        }
        ConstraintId::Onset => {
            // a word-initial nucleus cannot be repaired; only the pre-nuclear cell is pruned
            for i in 1..n {
                if p.determined(i, Label::Nucleus) {
                    for label in [Label::Nucleus, Label::Coda, Label::Unparsed] {
                        p.remove(i - 1, label);
                    }
                }
            }
        }
        ConstraintId::Complex => {
            for i in 0..n.saturating_sub(1) {
                for margin in [Label::Onset, Label::Coda] {
                    if p.determined(i, margin) {
                        p.remove(i + 1, margin);
                    }
                    if p.determined(i + 1, margin) {
                        p.remove(i, margin);
                    }
                }
            }
        }
    })
}

/// Removes options that cannot occur in any GEN-well-formed parse by the
/// three structural bans: word-initial coda, word-final onset, onset
/// immediately before a coda.
pub fn housekeeping(grid: &CandidateGrid) -> PruneOutcome {
    let n = grid.len();
    let nucleus_or_coda = LabelSet::of(&[Label::Nucleus, Label::Coda]);
    Pruner::new(grid).fixpoint(|p| {
        for i in 0..n {
            let licensed = (0..i).any(|j| p.grid.options(j).intersects(nucleus_or_coda));
            if !licensed {
                p.remove(i, Label::Coda);
            }
        }
        for i in 0..n {
            let nucleus_follows = (i + 1..n).any(|j| p.grid.options(j).contains(Label::Nucleus));
            if !nucleus_follows {
                p.remove(i, Label::Onset);
            }
        }
        for i in 0..n.saturating_sub(1) {
            if p.determined(i, Label::Onset) {
                p.remove(i + 1, Label::Coda);
            }
            if p.determined(i + 1, Label::Coda) {
                p.remove(i, Label::Onset);
            }
        }
    })
}

//! Locally-encoded candidate sets.
//!
//! A [`CandidateGrid`] pairs every segment with the set of syllable positions
//! it may still occupy. The grid stands for the Cartesian product of its cells;
//! GEN's language restricts that product to label strings whose parsed
//! projection matches `(o* n c*)*`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::segments::Segment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Onset,
    Nucleus,
    Coda,
    Unparsed,
}

impl Label {
    pub const ALL: [Label; 4] = [Label::Onset, Label::Nucleus, Label::Coda, Label::Unparsed];

    pub fn letter(self) -> char {
        match self {
            Label::Onset => 'o',
            Label::Nucleus => 'n',
            Label::Coda => 'c',
            Label::Unparsed => 'u',
        }
    }

    pub fn from_letter(c: char) -> Option<Label> {
        match c {
            'o' => Some(Label::Onset),
            'n' => Some(Label::Nucleus),
            'c' => Some(Label::Coda),
            'u' => Some(Label::Unparsed),
            _ => None,
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A subset of the four position labels, iterated in `o n c u` order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LabelSet(u8);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);
    pub const FULL: LabelSet = LabelSet(0b1111);

    pub fn of(labels: &[Label]) -> LabelSet {
        LabelSet(labels.iter().fold(0, |acc, l| acc | l.bit()))
    }

    pub fn single(label: Label) -> LabelSet {
        LabelSet(label.bit())
    }

    pub fn contains(self, label: Label) -> bool {
        self.0 & label.bit() != 0
    }

    pub fn without(self, label: Label) -> LabelSet {
        LabelSet(self.0 & !label.bit())
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_only(self, label: Label) -> bool {
        self == LabelSet::single(label)
    }

    pub fn intersects(self, other: LabelSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn iter(self) -> impl Iterator<Item = Label> {
        Label::ALL.into_iter().filter(move |l| self.contains(*l))
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub segment: Segment,
    pub options: LabelSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidateGrid {
    cells: Vec<Cell>,
}

impl CandidateGrid {
    /// Fresh grid: every segment may take any of the four positions.
    pub fn generate(segments: &[Segment]) -> Result<CandidateGrid> {
        if segments.is_empty() {
            return Err(Error::EmptyInput);
        }
        let cells = segments
            .iter()
            .map(|&segment| Cell { segment, options: LabelSet::FULL })
            .collect();
        Ok(CandidateGrid { cells })
    }

    /// Builds a grid from explicit option sets. Fails on a length mismatch or
    /// an empty option set.
    pub fn from_options(segments: &[Segment], options: &[LabelSet]) -> Result<CandidateGrid> {
        if segments.is_empty() {
            return Err(Error::EmptyInput);
        }
        if segments.len() != options.len() {
            return Err(Error::InvalidArgument(format!(
                "{} segments but {} option sets",
                segments.len(),
                options.len()
            )));
        }
        if let Some(i) = options.iter().position(|o| o.is_empty()) {
            return Err(Error::InvalidArgument(format!("cell {i} has no options")));
        }
        let cells = segments
            .iter()
            .zip(options)
            .map(|(&segment, &options)| Cell { segment, options })
            .collect();
        Ok(CandidateGrid { cells })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn options(&self, i: usize) -> LabelSet {
        self.cells[i].options
    }

    pub fn segments(&self) -> Vec<Segment> {
        self.cells.iter().map(|c| c.segment).collect()
    }

    /// Removes `label` from cell `i` unless that would leave the cell empty.
    pub fn try_remove(&mut self, i: usize, label: Label) -> RemovalOutcome {
        let cell = &mut self.cells[i];
        if !cell.options.contains(label) {
            RemovalOutcome::Absent
        } else if cell.options.is_only(label) {
            RemovalOutcome::Blocked
        } else {
            cell.options = cell.options.without(label);
            RemovalOutcome::Applied
        }
    }

    pub(crate) fn restore(&mut self, i: usize, options: LabelSet) {
        self.cells[i].options = options;
    }

    /// Number of label strings encoded, i.e. the product of cell sizes.
    pub fn candidate_count(&self) -> u128 {
        self.cells.iter().map(|c| c.options.len() as u128).product()
    }

    /// Iterates every label string in the product, in `o < n < c < u` order.
    pub fn completions(&self) -> Completions<'_> {
        Completions { grid: self, cursor: Some(vec![0; self.cells.len()]) }
    }

    /// True iff at least one completion belongs to GEN's language.
    pub fn has_well_formed_completion(&self) -> bool {
        let mut states = GenState::START.bit();
        for cell in &self.cells {
            let mut next = 0u8;
            for state in GenState::ALL {
                if states & state.bit() == 0 {
                    continue;
                }
                for label in cell.options.iter() {
                    if let Some(s) = state.step(label) {
                        next |= s.bit();
                    }
                }
            }
            states = next;
            if states == 0 {
                return false;
            }
        }
        GenState::ALL.iter().any(|s| s.accepting() && states & s.bit() != 0)
    }

    /// Every option set of `self` is a subset of the matching option set of `earlier`.
    pub fn refines(&self, earlier: &CandidateGrid) -> bool {
        self.len() == earlier.len()
            && self
                .cells
                .iter()
                .zip(&earlier.cells)
                .all(|(a, b)| a.segment == b.segment && a.options.is_subset(b.options))
    }
}

/// Result of one attempted label removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemovalOutcome {
    Applied,
    /// The removal would have emptied the cell.
    Blocked,
    Absent,
}

impl fmt::Display for CandidateGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, cell) in self.cells.iter().enumerate() {
            writeln!(f, "{i}\t{}\t{}", cell.segment.symbol, cell.options)?;
        }
        Ok(())
    }
}

pub fn gen_grid(segments: &[Segment]) -> Result<CandidateGrid> {
    CandidateGrid::generate(segments)
}

pub fn enumerate_parses(grid: &CandidateGrid) -> Vec<LabelString> {
    grid.completions().collect()
}

pub struct Completions<'a> {
    grid: &'a CandidateGrid,
    cursor: Option<Vec<usize>>,
}

impl Iterator for Completions<'_> {
    type Item = LabelString;

    fn next(&mut self) -> Option<LabelString> {
        let cursor = self.cursor.as_mut()?;
        let choices: Vec<Vec<Label>> =
            self.grid.cells.iter().map(|c| c.options.iter().collect()).collect();
        let out = LabelString(cursor.iter().zip(&choices).map(|(&k, opts)| opts[k]).collect());

        // odometer, rightmost cell fastest
        let mut i = cursor.len();
        loop {
            if i == 0 {
                self.cursor = None;
                break;
            }
            i -= 1;
            cursor[i] += 1;
            if cursor[i] < choices[i].len() {
                break;
            }
            cursor[i] = 0;
        }
        Some(out)
    }
}

/// One concrete parse: a label per segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelString(pub Vec<Label>);

impl LabelString {
    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All `4^len` label strings, in `o < n < c < u` order.
    pub fn all(len: usize) -> impl Iterator<Item = LabelString> {
        (0..4usize.pow(len as u32)).map(move |mut code| {
            let mut labels = vec![Label::Onset; len];
            for slot in labels.iter_mut().rev() {
                *slot = Label::ALL[code % 4];
                code /= 4;
            }
            LabelString(labels)
        })
    }

    fn projection(&self) -> impl Iterator<Item = Label> + '_ {
        self.0.iter().copied().filter(|&l| l != Label::Unparsed)
    }
}

impl fmt::Display for LabelString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for LabelString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !matches!(c, ',' | ' ' | '-'))
            .map(|c| {
                Label::from_letter(c)
                    .ok_or_else(|| Error::InvalidArgument(format!("bad label letter '{c}'")))
            })
            .collect::<Result<Vec<_>>>()
            .map(LabelString)
    }
}

/// GEN's language as a three-state acceptor over labels, `u` being a no-op.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenState {
    /// Word start; only unparsed segments seen so far. Accepting.
    Start,
    /// Inside an onset run still waiting for its nucleus.
    Onset,
    /// After a nucleus, possibly followed by codas. Accepting.
    Rime,
}

impl GenState {
    pub const START: GenState = GenState::Start;
    const ALL: [GenState; 3] = [GenState::Start, GenState::Onset, GenState::Rime];

    pub fn step(self, label: Label) -> Option<GenState> {
        use GenState::*;
        match (self, label) {
            (s, Label::Unparsed) => Some(s),
            (_, Label::Nucleus) => Some(Rime),
            (Start | Onset | Rime, Label::Onset) => Some(Onset),
            (Rime, Label::Coda) => Some(Rime),
            (Start | Onset, Label::Coda) => None,
        }
    }

    pub fn accepting(self) -> bool {
        matches!(self, GenState::Start | GenState::Rime)
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

/// Runs the GEN acceptor over a label string.
pub fn accepted_by_gen(labels: &LabelString) -> bool {
    labels
        .0
        .iter()
        .try_fold(GenState::START, |s, &l| s.step(l))
        .is_some_and(GenState::accepting)
}

/// The three housekeeping bans, each generalized over intervening unparsed
/// segments: no word-initial coda, no word-final onset, no onset before a coda.
pub fn well_formed(labels: &LabelString) -> bool {
    let proj: Vec<Label> = labels.projection().collect();
    if proj.first() == Some(&Label::Coda) {
        return false;
    }
    if proj.last() == Some(&Label::Onset) {
        return false;
    }
    !proj.windows(2).any(|w| w[0] == Label::Onset && w[1] == Label::Coda)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseStyle {
    Parens,
    Dots,
    Labels,
}

impl FromStr for ParseStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parens" => Ok(ParseStyle::Parens),
            "dots" => Ok(ParseStyle::Dots),
            "labels" => Ok(ParseStyle::Labels),
            other => Err(Error::InvalidArgument(format!("unknown format '{other}'"))),
        }
    }
}

/// Where a segment ends up in the rendered parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    /// Index of the enclosing syllable, if the segment sits inside one.
    pub syllable: Option<usize>,
    pub parsed: bool,
}

/// Groups a well-formed label string into syllables. An unparsed segment
/// falls inside a syllable when the parsed neighbors on both sides belong to
/// that same syllable.
pub fn placements(labels: &LabelString) -> Result<Vec<Placement>> {
    if !well_formed(labels) {
        return Err(Error::IllFormedParse(labels.to_string()));
    }
    let mut ids: Vec<Option<usize>> = vec![None; labels.len()];
    let mut prev: Option<Label> = None;
    let mut next_id = 0usize;
    for (i, &l) in labels.0.iter().enumerate() {
        if l == Label::Unparsed {
            continue;
        }
        let opens = match prev {
            None => true,
            Some(p) => matches!(p, Label::Nucleus | Label::Coda) && l != Label::Coda,
        };
        if opens {
            next_id += 1;
        }
        ids[i] = Some(next_id - 1);
        prev = Some(l);
    }

    let n = labels.len();
    let out = (0..n)
        .map(|i| {
            if ids[i].is_some() {
                return Placement { syllable: ids[i], parsed: true };
            }
            let left = ids[..i].iter().rev().flatten().next();
            let right = ids[i + 1..].iter().flatten().next();
            let syllable = match (left, right) {
                (Some(a), Some(b)) if a == b => Some(*a),
                _ => None,
            };
            Placement { syllable, parsed: false }
        })
        .collect();
    Ok(out)
}

/// Renders a parse. `parens` brackets syllables with `()` and unparsed
/// segments with `<>`; `dots` separates top-level items with `.`; `labels`
/// emits the raw label letters.
pub fn format_parse(labels: &LabelString, segments: &[Segment], style: ParseStyle) -> Result<String> {
    if labels.len() != segments.len() {
        return Err(Error::IllFormedParse(format!(
            "{} labels for {} segments",
            labels.len(),
            segments.len()
        )));
    }
    let places = placements(labels)?;
    if style == ParseStyle::Labels {
        return Ok(labels.to_string());
    }

    // top-level items: a syllable (with any internal unparsed segments) or a lone unparsed segment
    let mut items: Vec<String> = Vec::new();
    let mut current: Option<(usize, String)> = None;
    for (seg, place) in segments.iter().zip(&places) {
        let text = if place.parsed { seg.symbol.to_string() } else { format!("<{}>", seg.symbol) };
        match (place.syllable, current.as_mut()) {
            (Some(id), Some((cur, buf))) if *cur == id => buf.push_str(&text),
            (Some(id), _) => {
                if let Some((_, buf)) = current.take() {
                    items.push(wrap(&buf, style));
                }
                current = Some((id, text));
            }
            (None, _) => {
                if let Some((_, buf)) = current.take() {
                    items.push(wrap(&buf, style));
                }
                items.push(text);
            }
        }
    }
    if let Some((_, buf)) = current {
        items.push(wrap(&buf, style));
    }

    Ok(match style {
        ParseStyle::Dots => items.join("."),
        _ => items.concat(),
    })
}

fn wrap(body: &str, style: ParseStyle) -> String {
    match style {
        ParseStyle::Parens => format!("({body})"),
        _ => body.to_string(),
    }
}

/// Reads `parens`-style output back into symbols and placements.
pub fn read_parens(text: &str) -> Result<(String, Vec<Placement>)> {
    let bad = |why: &str| Error::InvalidArgument(format!("cannot read '{text}': {why}"));
    let mut symbols = String::new();
    let mut places = Vec::new();
    let mut syllable: Option<usize> = None;
    let mut next_id = 0usize;
    let mut chars = text.chars();
    while let Some(c) = chars.next() {
        match c {
            '(' => {
                if syllable.is_some() {
                    return Err(bad("nested syllable"));
                }
                syllable = Some(next_id);
                next_id += 1;
            }
            ')' => {
                if syllable.take().is_none() {
                    return Err(bad("unbalanced ')'"));
                }
            }
            '<' => {
                let sym = chars.next().ok_or_else(|| bad("truncated '<'"))?;
                if chars.next() != Some('>') {
                    return Err(bad("expected '>'"));
                }
                symbols.push(sym);
                places.push(Placement { syllable, parsed: false });
            }
            _ => {
                if syllable.is_none() {
                    return Err(bad("parsed segment outside a syllable"));
                }
                symbols.push(c);
                places.push(Placement { syllable, parsed: true });
            }
        }
    }
    if syllable.is_some() {
        return Err(bad("unclosed syllable"));
    }
    Ok((symbols, places))
}

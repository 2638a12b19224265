//! Candidate-set combinatorics and factorial typology.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::constraints::Ranking;
use crate::engine::{run, EvalMode};
use crate::error::{Error, Result};
use crate::oracle::{OracleTable, DEFAULT_CAP};
use crate::segments::Segment;

/// Candidate counts for an input of `n` segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRow {
    pub n: u32,
    /// At most one epenthetic segment in each of the `n + 1` slots.
    pub epenthesis: u128,
    /// Every non-empty subsequence of the input.
    pub deletion: u128,
    /// Deletion and single-slot epenthesis combined.
    pub both: u128,
    /// All `o/n/c/u` labelings.
    pub nonlocal: u128,
    /// Summed per-segment options under local coding.
    pub local: u128,
}

impl fmt::Display for CountRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.n, self.epenthesis, self.deletion, self.both, self.nonlocal, self.local
        )
    }
}

pub fn counts(n: u32) -> Result<CountRow> {
    if n < 1 {
        return Err(Error::InvalidArgument("segment count must be at least 1".into()));
    }
    let overflow = || Error::InvalidArgument(format!("counts overflow for n = {n}"));
    let pow = |base: u128, exp: u32| base.checked_pow(exp).ok_or_else(overflow);
    Ok(CountRow {
        n,
        epenthesis: pow(2, n + 1)?,
        deletion: pow(2, n)? - 1,
        both: pow(3, n)?.checked_mul(2).ok_or_else(overflow)? - 2,
        nonlocal: pow(4, n)?,
        local: 4 * n as u128,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Every constraint sees every candidate.
    Sequential,
    /// Each constraint removes `candidates / constraints` of the survivors.
    CyclicEven,
    /// Each constraint removes half of the survivors.
    CyclicHalving,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sequential" => Ok(Strategy::Sequential),
            "cyclic-even" => Ok(Strategy::CyclicEven),
            "cyclic-halving" => Ok(Strategy::CyclicHalving),
            other => Err(Error::InvalidArgument(format!("unknown strategy '{other}'"))),
        }
    }
}

/// Number of constraint-candidate examinations. Fractional expected totals
/// are reported as the surrounding integer range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cost {
    Exact(u128),
    Range(u128, u128),
}

impl Cost {
    fn from_ratio(num: u128, den: u128) -> Cost {
        if num % den == 0 {
            Cost::Exact(num / den)
        } else {
            Cost::Range(num / den, num / den + 1)
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Exact(v) => write!(f, "{v}"),
            Cost::Range(lo, hi) => write!(f, "[{lo},{hi}]"),
        }
    }
}

/// Expected evaluation cost of `candidates` candidates against `constraints`
/// ranked constraints.
///
/// The cyclic strategies stop consulting constraints once fewer than two
/// candidates are expected to survive; the first constraint always examines
/// every candidate.
pub fn eval_cost(candidates: u64, constraints: u64, strategy: Strategy) -> Result<Cost> {
    if candidates == 0 || constraints == 0 {
        return Err(Error::InvalidArgument("candidate and constraint counts must be positive".into()));
    }
    let m = candidates as u128;
    let k_total = constraints as u128;
    Ok(match strategy {
        Strategy::Sequential => Cost::Exact(m * k_total),
        Strategy::CyclicEven => {
            // survivors before constraint k, scaled by k_total: m * (k_total - k)
            let scaled: u128 = (0..k_total)
                .map(|k| m * (k_total - k))
                .enumerate()
                .take_while(|&(k, s)| k == 0 || s >= 2 * k_total)
                .map(|(_, s)| s)
                .sum();
            Cost::from_ratio(scaled, k_total)
        }
        Strategy::CyclicHalving => {
            // survivors before constraint k: m / 2^k
            let consulted = (0..k_total.min(64))
                .take_while(|&k| k == 0 || m >= 2u128 << k)
                .count() as u32;
            let den = 1u128 << (consulted - 1);
            let scaled: u128 = (0..consulted).map(|k| m << (consulted - 1 - k)).sum();
            Cost::from_ratio(scaled, den)
        }
    })
}

/// The candidates-by-constraints chart as printed alongside the
/// multiplication rule. Its entries double per added constraint instead of
/// scaling linearly, so [`eval_cost`] does not reproduce it; it is kept only
/// for reference. Rows are segment counts 1..=10, columns constraint counts 1..=5.
pub const PRINTED_COMBINATION_CHART: [[u64; 5]; 10] = {
    let mut chart = [[0u64; 5]; 10];
    let mut n = 0;
    while n < 10 {
        let mut k = 0;
        while k < 5 {
            chart[n][k] = 4u64.pow(n as u32 + 1) << k;
            k += 1;
        }
        n += 1;
    }
    chart
};

/// How typology evaluates each ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypologyMode {
    Engine(EvalMode),
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypologyGroup {
    /// Per input, the optimal parses rendered and joined with `|`.
    pub signature: Vec<String>,
    pub rankings: Vec<Ranking>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypologyReport {
    pub inputs: Vec<String>,
    /// Ordered by the first ranking (in supplied order) that produced each signature.
    pub groups: Vec<TypologyGroup>,
}

impl fmt::Display for TypologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "== group {} ({} rankings) ==", i + 1, g.rankings.len())?;
            for (input, out) in self.inputs.iter().zip(&g.signature) {
                writeln!(f, "{input}\t{out}")?;
            }
            for r in &g.rankings {
                writeln!(f, "ranking: {r}")?;
            }
        }
        Ok(())
    }
}

/// Evaluates every ranking on every input and groups rankings with
/// identical outputs.
pub fn typology(inputs: &[Vec<Segment>], rankings: &[Ranking], mode: TypologyMode) -> Result<TypologyReport> {
    if inputs.is_empty() {
        return Err(Error::InvalidArgument("typology needs at least one input".into()));
    }
    let tables: Option<Vec<OracleTable>> = match mode {
        TypologyMode::Oracle => Some(
            inputs
                .iter()
                .map(|segs| OracleTable::build(segs, DEFAULT_CAP))
                .collect::<Result<_>>()?,
        ),
        TypologyMode::Engine(_) => None,
    };

    let signatures: Vec<Vec<String>> = rankings
        .par_iter()
        .map(|ranking| {
            inputs
                .iter()
                .enumerate()
                .map(|(i, segs)| {
                    let results = match (&tables, mode) {
                        (Some(t), _) => t[i].optimal_parses(ranking)?,
                        (None, TypologyMode::Engine(m)) => run(segs, ranking, m)?.results,
                        (None, TypologyMode::Oracle) => unreachable!(),
                    };
                    let mut rendered: Vec<String> = results.into_iter().map(|r| r.rendered).collect();
                    rendered.sort();
                    Ok(rendered.join("|"))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut index: HashMap<Vec<String>, usize> = HashMap::new();
    let mut groups: Vec<TypologyGroup> = Vec::new();
    for (ranking, signature) in rankings.iter().zip(signatures) {
        let slot = *index.entry(signature.clone()).or_insert_with(|| {
            groups.push(TypologyGroup { signature, rankings: Vec::new() });
            groups.len() - 1
        });
        groups[slot].rankings.push(ranking.clone());
    }

    Ok(TypologyReport {
        inputs: inputs.iter().map(|s| s.iter().map(|seg| seg.symbol).collect()).collect(),
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segments::{classify, Alphabet};

    #[test]
    fn count_examples() {
        let row = counts(3).unwrap();
        assert_eq!((row.epenthesis, row.deletion, row.both, row.nonlocal, row.local), (16, 7, 52, 64, 12));
        assert_eq!(row.to_string(), "3\t16\t7\t52\t64\t12");
        let row = counts(7).unwrap();
        assert_eq!((row.epenthesis, row.deletion, row.both), (256, 127, 4372));
        let row = counts(1).unwrap();
        assert_eq!((row.epenthesis, row.deletion, row.both, row.nonlocal, row.local), (4, 1, 4, 4, 4));
        assert!(counts(0).is_err());
        assert!(counts(200).is_err());
    }

    #[test]
    fn cost_examples() {
        assert_eq!(eval_cost(100, 10, Strategy::Sequential).unwrap(), Cost::Exact(1000));
        assert_eq!(eval_cost(10, 5, Strategy::CyclicHalving).unwrap(), Cost::Range(17, 18));
        assert_eq!(eval_cost(10, 5, Strategy::CyclicEven).unwrap(), Cost::Exact(30));
        for s in [Strategy::Sequential, Strategy::CyclicEven, Strategy::CyclicHalving] {
            for m in [1, 2, 7, 100] {
                assert_eq!(eval_cost(m, 1, s).unwrap(), Cost::Exact(m as u128));
            }
        }
        assert!(eval_cost(0, 3, Strategy::Sequential).is_err());
        assert!(eval_cost(3, 0, Strategy::CyclicEven).is_err());
        assert_eq!(Cost::Range(17, 18).to_string(), "[17,18]");
    }

    #[test]
    fn printed_chart_shape() {
        assert_eq!(PRINTED_COMBINATION_CHART[0], [4, 8, 16, 32, 64]);
        assert_eq!(PRINTED_COMBINATION_CHART[9][4], 16_777_216);
    }

    #[test]
    fn single_ranking_single_group() {
        let segs = classify("pa", &Alphabet::default(), false).unwrap();
        let r: Ranking = "pkc,mgv,parse,onset,cplx,nocoda".parse().unwrap();
        let rep = typology(&[segs], &[r], TypologyMode::Oracle).unwrap();
        assert_eq!(rep.groups.len(), 1);
        assert_eq!(rep.groups[0].signature, ["(pa)"]);
    }

    #[test]
    fn onsetless_monosyllable_splits_two_ways() {
        let segs = classify("a", &Alphabet::default(), false).unwrap();
        let rep = typology(&[segs], &Ranking::all(), TypologyMode::Oracle).unwrap();
        let mut sigs: Vec<(String, usize)> =
            rep.groups.iter().map(|g| (g.signature[0].clone(), g.rankings.len())).collect();
        sigs.sort();
        assert_eq!(sigs, [("(a)".to_string(), 360), ("<a>".to_string(), 360)]);
    }
}

use std::collections::HashSet;

use otsyl::analysis::PRINTED_COMBINATION_CHART;
use otsyl::oracle::DEFAULT_CAP;
use otsyl::segments::{all_patterns, from_classes};
use otsyl::*;

fn word(w: &str) -> Vec<Segment> {
    classify(w, &Alphabet::default(), false).unwrap()
}

fn ranking(r: &str) -> Ranking {
    r.parse().unwrap()
}

#[test]
fn optima_never_empty() {
    for n in 1..=5 {
        for classes in all_patterns(n) {
            let table = OracleTable::build(&from_classes(&classes), DEFAULT_CAP).unwrap();
            for r in Ranking::all() {
                assert!(!table.optima(&r).is_empty());
            }
        }
    }
}

/// A constraint with zero marks on every candidate can sit anywhere in the
/// ranking without changing the optima.
#[test]
fn vacuous_constraint_position_is_irrelevant() {
    let segs = word("aia");
    let table = OracleTable::build(&segs, DEFAULT_CAP).unwrap();
    let rest = [
        ConstraintId::MarginV,
        ConstraintId::Parse,
        ConstraintId::Onset,
        ConstraintId::NoCoda,
        ConstraintId::Complex,
    ];
    for perm in Ranking::all().iter().filter(|r| r.order()[0] == ConstraintId::PeakC) {
        let tail: Vec<ConstraintId> = perm.order()[1..].to_vec();
        let baseline = table.optima(perm);
        for pos in 1..=rest.len() {
            let mut order = tail.clone();
            order.insert(pos, ConstraintId::PeakC);
            assert_eq!(table.optima(&Ranking::new(order).unwrap()), baseline);
        }
    }
}

/// Swapping two adjacent constraints that assign identical marks to every
/// candidate leaves the optima unchanged.
#[test]
fn swapping_indistinguishable_neighbors() {
    let mut checked = 0;
    for n in 1..=4 {
        for classes in all_patterns(n) {
            let segs = from_classes(&classes);
            let table = OracleTable::build(&segs, DEFAULT_CAP).unwrap();
            let cands: Vec<LabelString> = LabelString::all(n).filter(well_formed).collect();
            for r in Ranking::all().iter().step_by(11) {
                for i in 0..5 {
                    let (a, b) = (r.order()[i], r.order()[i + 1]);
                    let same = cands
                        .iter()
                        .all(|l| violations(a, &segs, l).unwrap() == violations(b, &segs, l).unwrap());
                    if same {
                        let mut order = r.order().to_vec();
                        order.swap(i, i + 1);
                        assert_eq!(table.optima(r), table.optima(&Ranking::new(order).unwrap()));
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn agenda_oracle_matches_engine_in_restart_mode() {
    let r = ranking("pkc,mgv,parse,onset,cplx,nocoda");
    let report = compare(&word("agenda"), &r, EvalMode::Restart).unwrap();
    assert_eq!(report.verdict, Verdict::Equal);
    assert_eq!(report.oracle[0].to_string(), "noncon");
}

#[test]
fn vccvcc_one_shot_diverges_on_the_final_cluster() {
    let segs = classify("VCCVCC", &Alphabet::default(), true).unwrap();
    let report = compare(&segs, &ranking("pkc,mgv,cplx,nocoda,onset,parse"), EvalMode::OneShot).unwrap();
    assert_ne!(report.verdict, Verdict::Equal);
    assert_eq!(report.engine[0].to_string(), "noonuu");
    assert_eq!(report.oracle.iter().map(|l| l.to_string()).collect::<Vec<_>>(), ["uuonuu"]);
    assert!(report.witnesses.iter().any(|l| l.to_string() == "uuonuu"));
}

#[test]
fn single_segments_agree_in_both_modes() {
    for classes in all_patterns(1) {
        let table = OracleTable::build(&from_classes(&classes), DEFAULT_CAP).unwrap();
        for r in Ranking::all() {
            for mode in [EvalMode::OneShot, EvalMode::Restart] {
                let report = otsyl::oracle::compare_with(&table, &r, mode).unwrap();
                // documented divergence family: unparsing beats a bare nucleus under onset >> parse
                let onset_over_parse = r.order().iter().position(|&c| c == ConstraintId::Onset)
                    < r.order().iter().position(|&c| c == ConstraintId::Parse);
                if !onset_over_parse {
                    assert_eq!(report.verdict, Verdict::Equal, "{report}");
                }
            }
        }
    }
}

/// Distinct strings from deleting a subset of segments (keeping at least
/// one) and inserting at most one epenthetic segment in each slot.
fn enumerate_deletion_epenthesis(n: usize) -> usize {
    let input: Vec<char> = "bcdfghj".chars().take(n).collect();
    let mut seen: HashSet<String> = HashSet::new();
    for keep in 1..(1u32 << n) {
        let kept: Vec<char> = (0..n).filter(|i| keep >> i & 1 == 1).map(|i| input[i]).collect();
        let slots = kept.len() + 1;
        for ep in 0..(1u32 << slots) {
            let mut s = String::new();
            for (i, &c) in kept.iter().enumerate() {
                if ep >> i & 1 == 1 {
                    s.push('a');
                }
                s.push(c);
            }
            if ep >> kept.len() & 1 == 1 {
                s.push('a');
            }
            seen.insert(s);
        }
    }
    seen.len()
}

#[test]
fn combined_count_matches_enumeration() {
    for n in 1..=7u32 {
        assert_eq!(counts(n).unwrap().both, enumerate_deletion_epenthesis(n as usize) as u128, "n={n}");
    }
}

#[test]
fn local_coding_beats_nonlocal() {
    for n in 1..=10 {
        let row = counts(n).unwrap();
        assert_eq!(row.nonlocal, 4u128.pow(n));
        assert_eq!(row.local, 4 * n as u128);
        if n == 1 {
            assert_eq!(row.local, row.nonlocal);
        } else {
            assert!(row.local < row.nonlocal);
        }
    }
}

#[test]
fn printed_chart_is_not_the_multiplication_rule() {
    // 64 candidates (3 segments) against 2 constraints
    assert_eq!(eval_cost(64, 2, Strategy::Sequential).unwrap(), Cost::Exact(128));
    assert_eq!(PRINTED_COMBINATION_CHART[2][1], 128);
    assert_eq!(eval_cost(64, 3, Strategy::Sequential).unwrap(), Cost::Exact(192));
    assert_eq!(PRINTED_COMBINATION_CHART[2][2], 256);
}

#[test]
fn typology_of_small_inventory() {
    let inputs: Vec<Vec<Segment>> = ["a", "pa", "ap", "pap"].iter().map(|w| word(w)).collect();
    let report = typology(&inputs, &Ranking::all(), TypologyMode::Oracle).unwrap();
    let total: usize = report.groups.iter().map(|g| g.rankings.len()).sum();
    assert_eq!(total, 720);
    let signatures: HashSet<&Vec<String>> = report.groups.iter().map(|g| &g.signature).collect();
    assert_eq!(signatures.len(), report.groups.len());
    check_golden(&report);
}

/// Group signatures frozen from an oracle run.
fn check_golden(report: &TypologyReport) {
    let mut summary: Vec<(String, usize)> = report
        .groups
        .iter()
        .map(|g| (g.signature.join(" "), g.rankings.len()))
        .collect();
    summary.sort();
    let expected: Vec<(String, usize)> = GOLDEN_TYPOLOGY.iter().map(|(s, n)| (s.to_string(), *n)).collect();
    assert_eq!(summary, expected);
}

const GOLDEN_TYPOLOGY: &[(&str, usize)] = &[
    ("(a) (pa) (a)(p) (pa)(p)", 84),
    ("(a) (pa) (a)<p> (pa)<p>", 60),
    ("(a) (pa) (ap) (pa)(p)", 20),
    ("(a) (pa) (ap) (pap)", 196),
    ("<a> (pa) (ap) (pa)<p>", 12),
    ("<a> (pa) (ap) (pap)", 48),
    ("<a> (pa) <a><p> (pa)<p>", 216),
    ("<a> (pa) <a><p> (pap)", 84),
];

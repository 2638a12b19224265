use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

const AGENDA_RANKING: &str = "pkc,mgv,parse,onset,cplx,nocoda";

fn otsyl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_otsyl")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = otsyl(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn parse_formats() {
    let base = ["parse", "agenda", "--ranking", AGENDA_RANKING];
    assert_eq!(stdout(&base), "(a)(gen)(da)\n");
    assert_eq!(stdout(&[&base[..], &["--format", "dots"]].concat()), "a.gen.da\n");
    assert_eq!(stdout(&[&base[..], &["--format", "labels"]].concat()), "noncon\n");
}

#[test]
fn pattern_input() {
    let out = stdout(&["parse", "VCCVCC", "--pattern", "--ranking", "pkc,mgv,cplx,nocoda,onset,parse"]);
    assert_eq!(out, "(V)(CCV)<C><C>\n");
}

#[test]
fn trace_matches_golden() {
    let out = stdout(&["parse", "agenda", "--ranking", AGENDA_RANKING, "--trace"]);
    assert_eq!(out, include_str!("golden/agenda_trace.txt"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cmds: [&[&str]; 3] = [
        &["parse", "agenda", "--ranking", AGENDA_RANKING, "--trace", "--mode", "restart"],
        &["typology", "--inputs", "a,pa,ap", "--oracle"],
        &["typology", "--inputs", "apa,pap"],
    ];
    for args in cmds {
        assert_eq!(stdout(args), stdout(args));
    }
}

#[test]
fn oracle_lists_optima_with_violations() {
    assert_eq!(stdout(&["oracle", "pap", "--ranking", AGENDA_RANKING]), "onc\t0,0,0,0,0,1\n");
    let capped = otsyl(&["oracle", "papapa", "--ranking", AGENDA_RANKING, "--max-len", "4"]);
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn counts_row() {
    assert_eq!(stdout(&["counts", "3"]), "3\t16\t7\t52\t64\t12\n");
    assert_eq!(otsyl(&["counts", "0"]).status.code(), Some(2));
}

#[test]
fn typology_groups_cover_all_rankings() {
    let out = stdout(&["typology", "--inputs", "pa", "--oracle"]);
    assert!(out.starts_with("== group 1 (720 rankings) ==\npa\t(pa)\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("ranking: ")).count(), 720);
}

#[test]
fn custom_alphabet() {
    let path = tmp("alphabet.txt");
    fs::write(&path, "# tiny inventory\nvowels: ai\nconsonants: pt\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["parse", "pita", "--alphabet", p, "--ranking", AGENDA_RANKING, "--format", "dots"]), "pi.ta\n");
    let unknown = otsyl(&["parse", "pika", "--alphabet", p, "--ranking", AGENDA_RANKING]);
    assert_eq!(unknown.status.code(), Some(2));

    fs::write(&path, "vowels: ai\nconsonants: pa\n").unwrap();
    assert_eq!(otsyl(&["parse", "pa", "--alphabet", p, "--ranking", AGENDA_RANKING]).status.code(), Some(2));
}

#[test]
fn bad_input_exits_with_usage_error() {
    let cases: [&[&str]; 5] = [
        &["parse", "agenda", "--ranking", "pkc,mgv,parse,onset"],
        &["parse", "agenda", "--ranking", "pkc,pkc,parse,onset,cplx,nocoda"],
        &["parse", "agenda", "--ranking", "pkc,mgv,parse,onset,cplx,dep"],
        &["parse", "a1", "--ranking", AGENDA_RANKING],
        &["parse", "agenda", "--ranking", AGENDA_RANKING, "--mode", "sometimes"],
    ];
    for args in cases {
        let out = otsyl(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    }
}

#[test]
fn check_reports_and_logs() {
    let log = tmp("check.log");
    let out = otsyl(&["check", "--max-len", "2", "--mode", "oneshot", "--log", log.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let summary = String::from_utf8(out.stdout).unwrap();
    let divergent: usize = summary.trim().rsplit('=').next().unwrap().parse().unwrap();
    assert_eq!(fs::read_to_string(&log).unwrap().lines().count(), divergent);
}

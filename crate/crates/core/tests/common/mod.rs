//! Shared fixtures: one pipeline run per test binary and the certificate
//! mutation catalogue.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use tempfile::TempDir;

use telepathy_core::bounds::CoverConfig;
use telepathy_core::pipeline::{check_certificate, run_pipeline, Certificate, CERTIFICATE_FILE};
use telepathy_core::{distance, Error, Word};

struct Run {
    dir: TempDir,
    cert: Certificate,
}

fn run() -> &'static Run {
    static RUN: OnceLock<Run> = OnceLock::new();
    RUN.get_or_init(|| {
        let dir = TempDir::new().expect("tempdir");
        let cert = run_pipeline(4, dir.path(), CoverConfig::default()).expect("pipeline");
        Run { dir, cert }
    })
}

/// Directory holding an untouched pipeline run.
pub fn pristine() -> &'static Path {
    run().dir.path()
}

pub fn certificate() -> &'static Certificate {
    &run().cert
}

fn copy_tree(src: &Path, dst: &Path) {
    fs::create_dir_all(dst).unwrap();
    for entry in fs::read_dir(src).unwrap() {
        let entry = entry.unwrap();
        let to = dst.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_tree(&entry.path(), &to);
        } else {
            fs::copy(entry.path(), to).unwrap();
        }
    }
}

/// Fresh copy of the pristine run that a mutation may edit.
pub fn scratch() -> TempDir {
    let dir = TempDir::new().unwrap();
    copy_tree(pristine(), dir.path());
    dir
}

fn read_lines(path: &Path) -> Vec<String> {
    fs::read_to_string(path).unwrap().lines().map(str::to_owned).collect()
}

fn write_lines(path: &Path, lines: &[String]) {
    fs::write(path, lines.join("\n") + "\n").unwrap();
}

fn cert_lines(dir: &Path) -> Vec<String> {
    read_lines(&dir.join(CERTIFICATE_FILE))
}

fn cert_loc(idx: usize) -> String {
    format!("{CERTIFICATE_FILE} line {}", idx + 1)
}

fn key<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.split_whitespace()
        .find_map(|t| t.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
}

fn set_key(line: &str, key: &str, value: &str) -> String {
    line.split_whitespace()
        .map(|t| match t.strip_prefix(key).and_then(|r| r.strip_prefix('=')) {
            Some(_) => format!("{key}={value}"),
            None => t.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn find(lines: &[String], pred: impl Fn(&str) -> bool) -> usize {
    lines.iter().position(|l| pred(l)).expect("line present")
}

/// Applies `f` to the certificate line matching `pred`; returns its location.
fn edit_cert(dir: &Path, pred: impl Fn(&str) -> bool, f: impl FnOnce(&str) -> String) -> String {
    let mut lines = cert_lines(dir);
    let i = find(&lines, pred);
    lines[i] = f(&lines[i]);
    write_lines(&dir.join(CERTIFICATE_FILE), &lines);
    cert_loc(i)
}

fn type_lines(dir: &Path, case: &str) -> Vec<(usize, String)> {
    cert_lines(dir)
        .into_iter()
        .enumerate()
        .filter(|(_, l)| l.starts_with("type ") && key(l, "case") == Some(case))
        .collect()
}

/// Relative cover path of the `nth` type of a case.
fn cover_of(dir: &Path, case: &str, nth: usize) -> String {
    key(&type_lines(dir, case)[nth].1, "cover").unwrap().to_string()
}

fn cover_words(dir: &Path, rel: &str) -> Vec<Vec<String>> {
    read_lines(&dir.join(rel))
        .iter()
        .skip(1)
        .map(|l| l.split_whitespace().map(str::to_owned).collect())
        .collect()
}

fn write_cover(dir: &Path, rel: &str, cliques: &[Vec<String>]) {
    let mut lines = vec![read_lines(&dir.join(rel))[0].clone()];
    lines.extend(cliques.iter().map(|c| c.join(" ")));
    write_lines(&dir.join(rel), &lines);
}

fn word(hex: &str) -> Word {
    Word::from_hex(hex, 16).unwrap()
}

/// First cover of `case` with a clique of at least two words.
fn cover_with_pair(dir: &Path, case: &str) -> (String, Vec<Vec<String>>) {
    (0..type_lines(dir, case).len())
        .map(|i| cover_of(dir, case, i))
        .map(|rel| {
            let c = cover_words(dir, &rel);
            (rel, c)
        })
        .find(|(_, c)| c.iter().any(|q| q.len() >= 2))
        .expect("a cover with a non-trivial clique")
}

fn drop_vertex(dir: &Path, case: &str) -> String {
    let (rel, mut cliques) = cover_with_pair(dir, case);
    let q = cliques.iter().position(|q| q.len() >= 2).unwrap();
    cliques[q].pop();
    write_cover(dir, &rel, &cliques);
    rel
}

fn merge_nonadjacent(dir: &Path) -> String {
    let (rel, mut cliques) = cover_with_pair(dir, "d12");
    // find two cliques with some non-adjacent pair; the merged line sits at the first
    for a in 0..cliques.len() {
        for b in a + 1..cliques.len() {
            let clash = cliques[a].iter().any(|x| {
                cliques[b]
                    .iter()
                    .any(|y| distance(word(x), word(y)).unwrap() != 8)
            });
            if clash {
                let moved = cliques.remove(b);
                cliques[a].extend(moved);
                write_cover(dir, &rel, &cliques);
                return format!("{rel} line {}", a + 2);
            }
        }
    }
    unreachable!("every pair of cliques fully adjacent")
}

fn move_vertex(dir: &Path) -> String {
    let (rel, mut cliques) = cover_with_pair(dir, "d10");
    for from in 0..cliques.len() {
        for to in 0..cliques.len() {
            if from == to || cliques[from].len() < 2 {
                continue;
            }
            let w = cliques[from].last().unwrap().clone();
            if cliques[to].iter().any(|y| distance(word(&w), word(y)).unwrap() != 8) {
                cliques[from].pop();
                cliques[to].push(w);
                write_cover(dir, &rel, &cliques);
                return format!("{rel} line {}", to + 2);
            }
        }
    }
    unreachable!("no movable vertex")
}

fn duplicate_vertex(dir: &Path) -> String {
    let rel = cover_of(dir, "d12", 1);
    let mut cliques = cover_words(dir, &rel);
    let w = cliques[0][0].clone();
    cliques[1].insert(0, w);
    write_cover(dir, &rel, &cliques);
    format!("{rel} line 3")
}

fn foreign_vertex(dir: &Path) -> String {
    let rel = cover_of(dir, "d12", 2);
    let mut cliques = cover_words(dir, &rel);
    // u itself is never a survivor
    cliques[0].insert(0, "003f".into());
    write_cover(dir, &rel, &cliques);
    format!("{rel} line 2")
}

fn header_w(dir: &Path) -> String {
    let types = type_lines(dir, "d12");
    let rel = cover_of(dir, "d12", 0);
    let other_rep = key(&types[1].1, "rep").unwrap().to_string();
    let mut lines = read_lines(&dir.join(&rel));
    lines[0] = set_key(&lines[0], "w", &other_rep);
    write_lines(&dir.join(&rel), &lines);
    format!("{rel} line 1")
}

fn cover_missing(dir: &Path) -> String {
    let (i, line) = type_lines(dir, "d10")[3].clone();
    fs::remove_file(dir.join(key(&line, "cover").unwrap())).unwrap();
    cert_loc(i)
}

fn bump_type_key(dir: &Path, case: &str, nth: usize, k: &str) -> String {
    let (_, target) = type_lines(dir, case)[nth].clone();
    edit_cert(dir, |l| l == target, |l| {
        let v: u64 = key(l, k).unwrap().parse().unwrap();
        set_key(l, k, &(v + 1).to_string())
    })
}

fn type_removed(dir: &Path) -> String {
    let mut lines = cert_lines(dir);
    let (i, _) = type_lines(dir, "d12")[4].clone();
    lines.remove(i);
    write_lines(&dir.join(CERTIFICATE_FILE), &lines);
    cert_loc(find(&lines, |l| l.starts_with("case d12")))
}

fn type_rep(dir: &Path) -> String {
    let types = type_lines(dir, "d10");
    let other = key(&types[0].1, "rep").unwrap().to_string();
    let target = types[5].1.clone();
    edit_cert(dir, |l| l == target, |l| set_key(l, "rep", &other))
}

fn ekr_level4(dir: &Path) -> String {
    edit_cert(dir, |l| l.starts_with("level 4 "), |l| set_key(l, "n", "7"))
}

fn ekr_level6(dir: &Path) -> String {
    edit_cert(dir, |l| l.starts_with("ekr "), |l| set_key(l, "n", "15"))
}

fn ekr_value(dir: &Path) -> String {
    edit_cert(dir, |l| l.starts_with("ekr "), |l| set_key(l, "value", "287"))
}

fn combinator_value(dir: &Path) -> String {
    edit_cert(
        dir,
        |l| l.starts_with("combinator case=d10"),
        |l| {
            let v: u64 = key(l, "value").unwrap().parse().unwrap();
            set_key(l, "value", &(v - 1).to_string())
        },
    )
}

fn level_bound(dir: &Path) -> String {
    edit_cert(dir, |l| l.starts_with("level 2 "), |l| l.replace("bound 120", "bound 119"))
}

fn total_4096(dir: &Path) -> String {
    edit_cert(dir, |l| l.starts_with("chi-lower "), |_| "chi-lower 16".into());
    edit_cert(dir, |l| l.starts_with("total "), |_| "total M=4096".into())
}

fn chi_edited(dir: &Path) -> String {
    edit_cert(dir, |l| l.starts_with("chi-lower "), |l| {
        let v: u64 = l[10..].trim().parse().unwrap();
        format!("chi-lower {}", v + 1)
    })
}

fn reduction_factor(dir: &Path) -> String {
    edit_cert(dir, |l| l.starts_with("reduction "), |l| set_key(l, "factor", "2"))
}

fn case_pair(dir: &Path) -> String {
    // 0x0f0f has weight 8, so the pair is no longer on level 6
    edit_cert(dir, |l| l.starts_with("case d12"), |l| set_key(l, "v", "0f0f"))
}

fn fixture_value(dir: &Path) -> String {
    edit_cert(dir, |l| l.starts_with("fixture case=d12"), |l| set_key(l, "value", "401"))
}

fn survivors_edited(dir: &Path) -> String {
    edit_cert(dir, |l| l.starts_with("case d10"), |l| set_key(l, "survivors", "2957"))
}

/// A named certificate corruption; `apply` returns the location the checker
/// must report.
pub struct Mutation {
    pub name: &'static str,
    pub apply: fn(&Path) -> String,
}

/// The twenty systematic mutations.
pub fn mutations() -> Vec<Mutation> {
    vec![
        Mutation { name: "cover: vertex removed (d12)", apply: |d| drop_vertex(d, "d12") },
        Mutation { name: "cover: vertex removed (d10)", apply: |d| drop_vertex(d, "d10") },
        Mutation { name: "cover: non-adjacent cliques merged", apply: merge_nonadjacent },
        Mutation { name: "cover: vertex moved to a non-adjacent clique", apply: move_vertex },
        Mutation { name: "cover: vertex covered twice", apply: duplicate_vertex },
        Mutation { name: "cover: root inserted", apply: foreign_vertex },
        Mutation { name: "cover: header w edited", apply: header_w },
        Mutation { name: "cover: file deleted", apply: cover_missing },
        Mutation { name: "type: a_i edited (d12)", apply: |d| bump_type_key(d, "d12", 0, "a") },
        Mutation { name: "type: a_i edited (d10)", apply: |d| bump_type_key(d, "d10", 7, "a") },
        Mutation { name: "type: b_i edited", apply: |d| bump_type_key(d, "d12", 3, "b") },
        Mutation { name: "type: profile line removed", apply: type_removed },
        Mutation { name: "type: representative swapped", apply: type_rep },
        Mutation { name: "ekr: precondition falsified (level 4)", apply: ekr_level4 },
        Mutation { name: "ekr: precondition falsified (level 6)", apply: ekr_level6 },
        Mutation { name: "ekr: value edited", apply: ekr_value },
        Mutation { name: "combinator: value edited", apply: combinator_value },
        Mutation { name: "level: bound edited", apply: level_bound },
        Mutation { name: "total: M edited to 4096", apply: total_4096 },
        Mutation { name: "chi-lower: edited", apply: chi_edited },
    ]
}

/// Further corruptions outside the core twenty.
pub fn extra_mutations() -> Vec<Mutation> {
    vec![
        Mutation { name: "reduction: factor edited", apply: reduction_factor },
        Mutation { name: "case: pair moved off the level", apply: case_pair },
        Mutation { name: "fixture: value edited", apply: fixture_value },
        Mutation { name: "case: survivor count edited", apply: survivors_edited },
    ]
}

/// Applies a mutation to a scratch copy and returns `(expected, reported)`
/// locations; `reported` is `None` when the checker accepted the certificate.
pub fn run_mutation(m: &Mutation) -> (String, Option<String>) {
    let dir = scratch();
    let expected = (m.apply)(dir.path());
    let reported = match check_certificate(dir.path()) {
        Ok(report) => report.first_failure().map(|f| f.location.clone()),
        Err(Error::Parse { location, .. }) => Some(location),
        Err(e) => Some(format!("error: {e}")),
    };
    (expected, reported)
}

pub fn cover_dir(dir: &Path) -> PathBuf {
    dir.join("covers")
}

/// Random graph with `n` vertices and edge probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl rand::Rng) -> telepathy_core::BitGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    telepathy_core::BitGraph::from_edges(n, edges)
}

/// Largest independent set by exhaustive include/exclude recursion, with no
/// bounding. `allowed` restricts the vertex set.
pub fn brute_alpha(g: &telepathy_core::BitGraph, allowed: u64) -> usize {
    let n = g.order();
    assert!(n <= 64);
    let nbr: Vec<u64> = (0..n)
        .map(|v| (0..n).filter(|&u| g.adjacent(v, u)).fold(0u64, |m, u| m | 1 << u))
        .collect();
    fn go(cand: u64, nbr: &[u64]) -> usize {
        if cand == 0 {
            return 0;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1 << v);
        let take = 1 + go(rest & !nbr[v], nbr);
        take.max(go(rest, nbr))
    }
    go(allowed, &nbr)
}

/// `k`-subsets of `0..n` joined when they share fewer than `t` elements.
pub fn low_intersection_graph(n: u32, k: u32, t: u32) -> telepathy_core::BitGraph {
    let sets: Vec<u32> = (0u32..1 << n).filter(|s| s.count_ones() == k).collect();
    telepathy_core::BitGraph::from_predicate(sets.len(), |a, b| (sets[a] & sets[b]).count_ones() < t)
}

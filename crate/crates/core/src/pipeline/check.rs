//! Independent re-verification of a certificate directory.
//!
//! Nothing here calls the bound-producing code. Vertex sets, profiles,
//! cover validity, EKR preconditions, and the combinator minimum are all
//! recomputed from word arithmetic alone. Reference rows are read as data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Component, Path, PathBuf};

use crate::error::{Error, Result};
use crate::hamming::{distance, Word};
use crate::pipeline::CERTIFICATE_FILE;
use crate::tables::{ReferenceRow, D10_ROWS, D12_ROWS, REFERENCE_LEVEL_BOUNDS};

/// Where and why verification failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailure {
    /// e.g. `certificate.txt line 12` or `covers/d12_0-0-3-3.txt line 40`.
    pub location: String,
    pub message: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionStatus {
    pub name: String,
    /// First failure in this section.
    pub failure: Option<CheckFailure>,
}

impl SectionStatus {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub sections: Vec<SectionStatus>,
    /// Σ of the checker's own per-level values.
    pub level_sum: u64,
    pub total: u64,
    pub chi_lower: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(SectionStatus::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckFailure> {
        self.sections.iter().find_map(|s| s.failure.as_ref())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            match &s.failure {
                None => {
                    let _ = writeln!(out, "{:<10} pass", s.name);
                }
                Some(f) => {
                    let _ = writeln!(out, "{:<10} FAIL at {f}", s.name);
                }
            }
        }
        let _ = writeln!(
            out,
            "recomputed: level sum {} M={} chi-lower {}",
            self.level_sum, self.total, self.chi_lower
        );
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.passed() { "pass" } else { "fail" }
        );
        out
    }
}

/// Collects at most one failure per section, in first-seen order.
#[derive(Default)]
struct Recorder {
    sections: Vec<SectionStatus>,
}

impl Recorder {
    fn section(&mut self, name: &str) -> usize {
        match self.sections.iter().position(|s| s.name == name) {
            Some(i) => i,
            None => {
                self.sections.push(SectionStatus {
                    name: name.to_string(),
                    failure: None,
                });
                self.sections.len() - 1
            }
        }
    }

    fn fail(&mut self, section: &str, location: impl Into<String>, message: impl Into<String>) {
        let i = self.section(section);
        if self.sections[i].failure.is_none() {
            self.sections[i].failure = Some(CheckFailure {
                location: location.into(),
                message: message.into(),
            });
        }
    }

    fn ok(&mut self, section: &str) {
        self.section(section);
    }

    /// Records a failure unless `cond` holds.
    fn require(
        &mut self,
        cond: bool,
        section: &str,
        location: &str,
        message: impl FnOnce() -> String,
    ) -> bool {
        if !cond {
            self.fail(section, location, message());
        }
        cond
    }
}

fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// One non-blank, non-note line of the certificate.
struct Line<'a> {
    no: usize,
    kind: &'a str,
    args: Vec<&'a str>,
}

impl<'a> Line<'a> {
    fn location(&self) -> String {
        format!("{CERTIFICATE_FILE} line {}", self.no)
    }

    fn parse_err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            location: self.location(),
            message: message.into(),
        }
    }

    fn key(&self, key: &str) -> Result<&'a str> {
        self.args
            .iter()
            .find_map(|a| a.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
            .ok_or_else(|| self.parse_err(format!("missing {key}=")))
    }

    fn num(&self, key: &str) -> Result<u64> {
        let raw = self.key(key)?;
        raw.parse()
            .map_err(|_| self.parse_err(format!("{key}={raw} is not an integer")))
    }

    fn word(&self, key: &str, width: u32) -> Result<Word> {
        let raw = self.key(key)?;
        Word::from_hex(raw, width).map_err(|e| self.parse_err(e.to_string()))
    }

    fn positional(&self, i: usize) -> Result<&'a str> {
        self.args
            .get(i)
            .copied()
            .ok_or_else(|| self.parse_err(format!("missing field {}", i + 1)))
    }

    fn positional_num(&self, i: usize) -> Result<u64> {
        let raw = self.positional(i)?;
        raw.parse()
            .map_err(|_| self.parse_err(format!("{raw:?} is not an integer")))
    }
}

struct TypeLine<'a> {
    line: Line<'a>,
    profile: [u32; 4],
    a: u64,
    b: u64,
    rep: Word,
    cover: &'a str,
}

fn parse_profile(line: &Line<'_>) -> Result<[u32; 4]> {
    let raw = line.key("profile")?;
    let bad = || line.parse_err(format!("malformed profile {raw:?}"));
    let inner = raw
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    let parts: Vec<u32> = inner
        .split(',')
        .map(|p| p.parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    parts.try_into().map_err(|_| bad())
}

fn profile_text(p: [u32; 4]) -> String {
    format!("({},{},{},{})", p[0], p[1], p[2], p[3])
}

/// Block masks `U, S, V, O` of a pair.
fn blocks(u: Word, v: Word, width: u32) -> [u32; 4] {
    let full = if width == 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    };
    let (u, v) = (u.bits(), v.bits());
    [u & !v, u & v, v & !u, full & !(u | v)]
}

fn profile(w: Word, b: &[u32; 4]) -> [u32; 4] {
    b.map(|m| (w.bits() & m).count_ones())
}

/// Words of weight `k` other than the roots and not at distance `N/2` from any.
fn survivors(width: u32, k: u32, roots: &[Word]) -> Vec<Word> {
    let half = width / 2;
    (0..1u64 << width)
        .filter(|&x| (x as u32).count_ones() == k)
        .filter_map(|x| Word::new(x as u32, width).ok())
        .filter(|&w| {
            roots
                .iter()
                .all(|&r| r != w && distance(r, w).is_ok_and(|d| d != half))
        })
        .collect()
}

/// `min_S max(base + Σ_{∉S} a, base + 1 + max_S b)` by trying every
/// threshold `θ` and putting exactly the entries with `b <= θ` into `S`.
fn combinator_min(entries: &[(u64, u64)], base: u64) -> u64 {
    let total: u64 = entries.iter().map(|e| e.0).sum();
    let thresholds: BTreeSet<u64> = entries.iter().map(|e| e.1).collect();
    let mut best = base + total;
    for theta in thresholds {
        let outside: u64 = entries.iter().filter(|e| e.1 > theta).map(|e| e.0).sum();
        best = best.min((base + outside).max(base + 1 + theta));
    }
    best
}

fn rows_for(label: &str) -> Option<&'static [ReferenceRow]> {
    match label {
        "d12" => Some(D12_ROWS),
        "d10" => Some(D10_ROWS),
        _ => None,
    }
}

/// Rejects absolute paths and `..` so covers stay inside the directory.
fn contained(rel: &str) -> bool {
    let p = Path::new(rel);
    !rel.is_empty() && p.components().all(|c| matches!(c, Component::Normal(_)))
}

/// Verifies one cover file; returns its clique count on success.
#[allow(clippy::too_many_arguments)]
fn check_cover(
    rec: &mut Recorder,
    section: &str,
    dir: &Path,
    t: &TypeLine<'_>,
    width: u32,
    level: u32,
    u: Word,
    v: Word,
) -> Result<Option<u64>> {
    if !contained(t.cover) {
        rec.fail(
            section,
            t.line.location(),
            format!("cover path {:?} leaves the directory", t.cover),
        );
        return Ok(None);
    }
    let path = dir.join(t.cover);
    let text = match fs::read_to_string(&path) {
        Ok(text) => text,
        Err(e) => {
            rec.fail(
                section,
                t.line.location(),
                format!("cannot read {}: {e}", t.cover),
            );
            return Ok(None);
        }
    };
    let at = |n: usize| format!("{} line {n}", t.cover);
    let perr = |n: usize, message: String| Error::Parse {
        location: at(n),
        message,
    };

    let mut lines = text.lines();
    let head: Vec<&str> = lines.next().unwrap_or("").split_whitespace().collect();
    if head.len() != 8 || head[0] != "COVER" || head[1] != "v1" {
        return Err(perr(1, "bad cover header".into()));
    }
    let field = |i: usize, key: &str| -> Result<&str> {
        head[i]
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| perr(1, format!("expected {key}= in field {}", i + 1)))
    };
    let hn: u32 = field(2, "N")?
        .parse()
        .map_err(|_| perr(1, "bad N".into()))?;
    let hk: u32 = field(3, "level")?
        .parse()
        .map_err(|_| perr(1, "bad level".into()))?;
    if hn != width {
        rec.fail(
            section,
            at(1),
            format!("cover is for N={hn}, certificate has N={width}"),
        );
        return Ok(None);
    }
    let hword = |i: usize, key: &str| -> Result<Word> {
        Word::from_hex(field(i, key)?, width).map_err(|e| perr(1, e.to_string()))
    };
    let (hu, hv, hw) = (hword(4, "u")?, hword(5, "v")?, hword(6, "w")?);
    field(7, "seed")?;
    if hk != level || hu != u || hv != v || hw != t.rep {
        rec.fail(
            section,
            at(1),
            format!(
                "header (level={hk} u={hu} v={hv} w={hw}) does not match type (level={level} u={u} v={v} w={})",
                t.rep
            ),
        );
        return Ok(None);
    }

    let mut expected = vec![false; 1usize << width];
    let vertices = survivors(width, level, &[u, v, t.rep]);
    for w in &vertices {
        expected[w.bits() as usize] = true;
    }
    let mut seen = vec![false; 1usize << width];
    let mut cliques = 0u64;
    let half = width / 2;
    for (i, line) in lines.enumerate() {
        let n = i + 2;
        if line.trim().is_empty() {
            continue;
        }
        cliques += 1;
        let words = line
            .split_whitespace()
            .map(|tok| Word::from_hex(tok, width).map_err(|e| perr(n, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        for (j, &w) in words.iter().enumerate() {
            let x = w.bits() as usize;
            if !expected[x] {
                rec.fail(
                    section,
                    at(n),
                    format!("{w} is not a vertex of the survivor graph"),
                );
                return Ok(None);
            }
            if seen[x] {
                rec.fail(section, at(n), format!("{w} is covered twice"));
                return Ok(None);
            }
            seen[x] = true;
            for &y in &words[..j] {
                if distance(w, y)? != half {
                    rec.fail(section, at(n), format!("{y} and {w} are not adjacent"));
                    return Ok(None);
                }
            }
        }
    }
    if let Some(w) = vertices.iter().find(|w| !seen[w.bits() as usize]) {
        rec.fail(
            section,
            t.cover.to_string(),
            format!("vertex {w} is not covered"),
        );
        return Ok(None);
    }
    Ok(Some(cliques))
}

/// Checks the case-split argument for one level; returns the checker's value.
#[allow(clippy::too_many_arguments)]
fn check_case_split(
    rec: &mut Recorder,
    dir: &Path,
    width: u32,
    level: &Line<'_>,
    k: u32,
    claimed: u64,
    ekr: &[Line<'_>],
    cases: &[Line<'_>],
    types: &[TypeLine<'_>],
    combinators: &[Line<'_>],
) -> Result<u64> {
    let section = format!("level {k}");
    let loc = level.location();
    let half = width / 2;
    // weight-k words at distance N/2 share exactly i0 positions
    if 2 * k <= half || k < width / 4 + 1 {
        rec.fail(
            &section,
            &loc,
            format!("level {k} is not above the middle of its range"),
        );
        return Ok(claimed);
    }
    let i0 = k - width / 4;
    let t_needed = i0 + 1;

    // EKR half: no pair sharing fewer than i0 positions, so all pairs share >= i0 + 1
    // `value` is the checker's own bound, `stated` the one the lines claim
    let mut value = 0u64;
    let mut stated = 0u64;
    match ekr {
        [e] => {
            let (n, ek, t, v) = (e.num("n")?, e.num("k")?, e.num("t")?, e.num("value")?);
            stated = v;
            let eloc = e.location();
            let required = (ek.saturating_sub(t) + 1) * (t + 1);
            let ok = rec.require(t >= 1 && t <= ek && ek <= n, &section, &eloc, || {
                format!("EKR parameters n={n} k={ek} t={t} out of range")
            }) && rec.require(n >= required, &section, &eloc, || {
                format!("EKR precondition n >= (k-t+1)(t+1) = {required} fails for n={n}")
            }) && rec.require(n == width as u64 && ek == k as u64, &section, &eloc, || {
                format!("EKR applied to (n={n}, k={ek}) instead of (n={width}, k={k})")
            }) && rec.require(t == t_needed as u64, &section, &eloc, || {
                format!("without the split pairs, supports share at least {t_needed} positions, not t={t}")
            });
            let expect = choose(n.saturating_sub(t), ek.saturating_sub(t));
            if ok {
                value = expect;
                rec.require(v == expect, &section, &eloc, || {
                    format!("EKR value {v} but C(n-t,k-t) = {expect}")
                });
            }
        }
        _ => rec.fail(
            &section,
            &loc,
            format!("expected one ekr line, found {}", ekr.len()),
        ),
    }

    // every intersection size below i0 must have its own case
    let needed: BTreeSet<u32> = (0..i0).map(|i| 2 * k - 2 * i).collect();
    let present: Vec<u32> = cases
        .iter()
        .map(|c| {
            c.positional(0)?
                .strip_prefix('d')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| c.parse_err("case label must be d<distance>"))
        })
        .collect::<Result<_>>()?;
    let present_set: BTreeSet<u32> = present.iter().copied().collect();
    if present_set != needed || present.len() != needed.len() {
        rec.fail(
            &section,
            &loc,
            format!("cases cover distances {present:?}, the split needs exactly {needed:?}"),
        );
    }

    for (case, &d) in cases.iter().zip(&present) {
        let label = case.positional(0)?;
        let csec = format!("case {label}");
        rec.ok(&csec);
        let cloc = case.location();
        let (u, v) = (case.word("u", width)?, case.word("v", width)?);
        let claimed_survivors = case.num("survivors")?;
        for c in combinators.iter().filter(|c| c.key("case").ok() == Some(label)) {
            stated = stated.max(c.num("value")?);
        }
        if !rec.require(
            u.weight() == k && v.weight() == k && distance(u, v)? == d,
            &csec,
            &cloc,
            || format!("u={u}, v={v} are not weight-{k} words at distance {d}"),
        ) {
            continue;
        }
        let surv = survivors(width, k, &[u, v]);
        rec.require(surv.len() as u64 == claimed_survivors, &csec, &cloc, || {
            format!(
                "survivors={claimed_survivors} but {} recomputed",
                surv.len()
            )
        });

        // census: every survivor in exactly one listed profile
        let masks = blocks(u, v, width);
        let mut census: BTreeMap<[u32; 4], u64> = BTreeMap::new();
        for &w in &surv {
            *census.entry(profile(w, &masks)).or_default() += 1;
        }
        let mine: Vec<&TypeLine<'_>> = types
            .iter()
            .filter(|t| t.line.key("case").ok() == Some(label))
            .collect();
        let mut listed = BTreeSet::new();
        let mut entries = Vec::new();
        for t in &mine {
            let tloc = t.line.location();
            let ptxt = profile_text(t.profile);
            if !listed.insert(t.profile) {
                rec.fail(&csec, &tloc, format!("profile {ptxt} listed twice"));
                continue;
            }
            let Some(&count) = census.get(&t.profile) else {
                rec.fail(&csec, &tloc, format!("profile {ptxt} has no survivors"));
                continue;
            };
            rec.require(t.a == count, &csec, &tloc, || {
                format!("a={} but profile {ptxt} has {count} survivors", t.a)
            });
            if !rec.require(
                profile(t.rep, &masks) == t.profile && surv.contains(&t.rep),
                &csec,
                &tloc,
                || format!("rep={} is not a survivor with profile {ptxt}", t.rep),
            ) {
                continue;
            }
            if let Some(cliques) = check_cover(rec, &csec, dir, t, width, k, u, v)? {
                rec.require(cliques == t.b, &csec, &tloc, || {
                    format!("b={} but {} holds {cliques} cliques", t.b, t.cover)
                });
            }
            entries.push((count, t.b));
        }
        if let Some(missing) = census.keys().find(|p| !listed.contains(*p)) {
            rec.fail(
                &csec,
                &cloc,
                format!("profile {} is not listed", profile_text(*missing)),
            );
        }

        let own = combinator_min(&entries, 2);
        match combinators
            .iter()
            .filter(|c| c.key("case").ok() == Some(label))
            .collect::<Vec<_>>()
            .as_slice()
        {
            [c] => {
                let base = c.num("base")?;
                let claimed_value = c.num("value")?;
                let cl = c.location();
                rec.require(base == 2, &csec, &cl, || {
                    format!("base={base}, the pair contributes 2")
                });
                rec.require(claimed_value == own, &csec, &cl, || {
                    format!("combinator value {claimed_value} but recomputed {own}")
                });
            }
            found => rec.fail(
                &csec,
                &cloc,
                format!("expected one combinator line, found {}", found.len()),
            ),
        }
        value = value.max(own);
    }

    // a wrong case value is reported at its own lines; here only the
    // level line's consistency with them is at stake
    rec.require(claimed == stated, &section, &loc, || {
        format!("level bound {claimed} but max(EKR, cases) = {stated}")
    });
    Ok(value)
}

/// Re-verifies the certificate in `path` (a directory, or the certificate
/// file inside one). Malformed input is an error; any mismatch is a failed
/// section in the report.
pub fn check_certificate(path: impl AsRef<Path>) -> Result<CheckReport> {
    let path = path.as_ref();
    let (dir, file): (PathBuf, PathBuf) = if path.is_dir() {
        (path.to_path_buf(), path.join(CERTIFICATE_FILE))
    } else {
        (
            path.parent().unwrap_or(Path::new(".")).to_path_buf(),
            path.to_path_buf(),
        )
    };
    let text = fs::read_to_string(&file).map_err(|e| Error::io(&file, e))?;
    let mut all: Vec<Line<'_>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        if kind == "note" {
            continue;
        }
        all.push(Line {
            no: i + 1,
            kind,
            args: toks.collect(),
        });
    }
    let mut rec = Recorder::default();

    // header
    rec.ok("header");
    let mut it = all.into_iter();
    let header = it.next();
    match &header {
        Some(h) if h.kind == "TELEPATHY-CERT" && h.args == ["v1"] => {}
        _ => {
            return Err(Error::Parse {
                location: format!("{CERTIFICATE_FILE} line 1"),
                message: "expected `TELEPATHY-CERT v1`".into(),
            })
        }
    }
    let graph = it
        .next()
        .filter(|g| g.kind == "graph")
        .ok_or_else(|| Error::Parse {
            location: format!("{CERTIFICATE_FILE} line 2"),
            message: "expected `graph N=<int>`".into(),
        })?;
    let width = graph.num("N")? as u32;
    if width != 16 {
        rec.fail(
            "header",
            graph.location(),
            format!("only N=16 certificates are checked, got N={width}"),
        );
        return Ok(finish(rec, 0, 0, 0));
    }

    let mut levels = Vec::new();
    let mut ekr = Vec::new();
    let mut cases = Vec::new();
    let mut types = Vec::new();
    let mut combinators = Vec::new();
    let mut fixtures = Vec::new();
    let mut reductions = Vec::new();
    let mut totals = Vec::new();
    let mut chis = Vec::new();
    for line in it {
        match line.kind {
            "level" => levels.push(line),
            "ekr" => ekr.push(line),
            "case" => cases.push(line),
            "type" => {
                let t = TypeLine {
                    profile: parse_profile(&line)?,
                    a: line.num("a")?,
                    b: line.num("b")?,
                    rep: line.word("rep", width)?,
                    cover: line.key("cover")?,
                    line,
                };
                types.push(t);
            }
            "combinator" => combinators.push(line),
            "fixture" => fixtures.push(line),
            "reduction" => reductions.push(line),
            "total" => totals.push(line),
            "chi-lower" => chis.push(line),
            other => return Err(line.parse_err(format!("unknown line kind {other:?}"))),
        }
    }

    // levels: exactly the even levels below N/2 (the rest follow by complement)
    rec.ok("levels");
    let needed: Vec<u32> = (0..width / 2).step_by(2).collect();
    let mut claimed_sum = 0u64;
    let mut own_sum = 0u64;
    let listed: Vec<u32> = levels
        .iter()
        .map(|l| l.positional_num(0).map(|k| k as u32))
        .collect::<Result<_>>()?;
    if listed != needed {
        rec.fail(
            "levels",
            graph.location(),
            format!("levels {listed:?} listed, expected {needed:?}"),
        );
    }
    for (line, &k) in levels.iter().zip(&listed) {
        let section = format!("level {k}");
        rec.ok(&section);
        let loc = line.location();
        if line.positional(1)? != "bound" || line.positional(3)? != "method" {
            return Err(line.parse_err("expected `level <k> bound <m> method <tag>`"));
        }
        let claimed = line.positional_num(2)?;
        claimed_sum += claimed;
        let method = line.positional(4)?;
        let count = choose(width as u64, k as u64);
        let own = match method {
            "trivial" => {
                rec.require(k == 0 && claimed == 1, &section, &loc, || {
                    format!("trivial bound applies to level 0 with value 1, got level {k} value {claimed}")
                });
                1
            }
            "edgeless" => {
                // two weight-k words are at most 2k apart
                rec.require(2 * k < width / 2, &section, &loc, || {
                    format!("level {k} has words at distance {}", width / 2)
                });
                rec.require(claimed == count, &section, &loc, || {
                    format!("edgeless level has {count} vertices, bound says {claimed}")
                });
                count
            }
            "ekr" => {
                let (n, ek, t) = (line.num("n")?, line.num("k")?, line.num("t")?);
                let required = (ek.saturating_sub(t) + 1) * (t + 1);
                let expect = choose(n.saturating_sub(t), ek.saturating_sub(t));
                rec.require(t >= 1 && t <= ek && ek <= n, &section, &loc, || {
                    format!("EKR parameters n={n} k={ek} t={t} out of range")
                });
                rec.require(n >= required, &section, &loc, || {
                    format!("EKR precondition n >= (k-t+1)(t+1) = {required} fails for n={n}")
                });
                rec.require(n == width as u64 && ek == k as u64, &section, &loc, || {
                    format!("EKR applied to (n={n}, k={ek}) instead of (n={width}, k={k})")
                });
                rec.require(4 * k == width && t == 1, &section, &loc, || {
                    // distance N/2 = 2k means disjoint, so independent sets intersect
                    format!("EKR with t={t} is not justified on level {k}")
                });
                rec.require(claimed == expect, &section, &loc, || {
                    format!(
                        "EKR value is C({},{}) = {expect}, bound says {claimed}",
                        n - t,
                        ek - t
                    )
                });
                expect
            }
            "case-split" => check_case_split(
                &mut rec,
                &dir,
                width,
                line,
                k,
                claimed,
                &ekr,
                &cases,
                &types,
                &combinators,
            )?,
            other => {
                rec.fail(&section, &loc, format!("method {other:?} is not checkable"));
                claimed
            }
        };
        own_sum += own;
    }
    if levels
        .iter()
        .all(|l| l.positional(4).ok() != Some("case-split"))
        && !ekr.is_empty()
    {
        rec.fail(
            "levels",
            ekr[0].location(),
            "ekr line without a case-split level",
        );
    }
    let labels: BTreeSet<&str> = cases.iter().filter_map(|c| c.positional(0).ok()).collect();
    let stray = types
        .iter()
        .map(|t| &t.line)
        .chain(&combinators)
        .find(|l| l.key("case").map_or(true, |c| !labels.contains(c)));
    if let Some(l) = stray {
        rec.fail(
            "levels",
            l.location(),
            "line refers to a case that is not declared",
        );
    }

    check_fixture(&mut rec, &fixtures, width)?;

    rec.ok("reduction");
    let factor = match reductions.as_slice() {
        [r] => {
            let f = r.num("factor")?;
            rec.require(f == 4, "reduction", &r.location(), || {
                format!("factor={f}; two parity components times two complementary halves give 4")
            });
            4
        }
        found => {
            rec.fail(
                "reduction",
                graph.location(),
                format!("expected one reduction line, found {}", found.len()),
            );
            4
        }
    };

    rec.ok("total");
    let own_total = factor * own_sum;
    let claimed_total = match totals.as_slice() {
        [t] => {
            let m = t.num("M")?;
            rec.require(m == factor * claimed_sum, "total", &t.location(), || {
                format!(
                    "M={m} but {factor} x {claimed_sum} = {}",
                    factor * claimed_sum
                )
            });
            rec.require(m == own_total, "total", &t.location(), || {
                format!("M={m} but recomputed {own_total}")
            });
            Some((m, t.location()))
        }
        found => {
            rec.fail(
                "total",
                graph.location(),
                format!("expected one total line, found {}", found.len()),
            );
            None
        }
    };

    rec.ok("chi-lower");
    let vertices = 1u64 << width;
    let own_chi = if own_total == 0 {
        0
    } else {
        vertices.div_ceil(own_total)
    };
    match (chis.as_slice(), claimed_total) {
        ([c], Some((m, _))) => {
            let chi = c.positional_num(0)?;
            let expect = if m == 0 { 0 } else { vertices.div_ceil(m) };
            let loc = c.location();
            rec.require(chi == expect, "chi-lower", &loc, || {
                format!("chi-lower {chi} but ceil({vertices}/{m}) = {expect}")
            });
            rec.require(chi > width as u64, "chi-lower", &loc, || {
                format!(
                    "M={m} is not below {}, so χ > {width} does not follow",
                    vertices / width as u64
                )
            });
        }
        ([_], None) => {}
        (found, _) => rec.fail(
            "chi-lower",
            graph.location(),
            format!("expected one chi-lower line, found {}", found.len()),
        ),
    }
    Ok(finish(rec, own_sum, own_total, own_chi))
}

fn check_fixture(rec: &mut Recorder, fixtures: &[Line<'_>], width: u32) -> Result<()> {
    rec.ok("fixture");
    // level 6 always has the EKR arm C(16-3, 6-3) = 286
    let mut six = choose(width as u64 - 3, 6 - 3);
    let mut seen = BTreeSet::new();
    for f in fixtures.iter().filter(|f| f.key("case").is_ok()) {
        let label = f.key("case")?;
        let loc = f.location();
        let Some(rows) = rows_for(label) else {
            rec.fail("fixture", &loc, format!("unknown case {label}"));
            continue;
        };
        seen.insert(label);
        let entries: Vec<(u64, u64)> = rows.iter().map(|r| (r.a, r.b)).collect();
        let value = combinator_min(&entries, 2);
        six = six.max(value);
        let claimed = f.num("value")?;
        let arm = f.num("max-arm")?;
        rec.require(claimed == value, "fixture", &loc, || {
            format!("fixture value {claimed} but the reference rows give {value}")
        });
        rec.require(arm + 3 == value, "fixture", &loc, || {
            format!("max-arm {arm} + 3 != {value}")
        });
    }
    if seen.len() != 2 {
        rec.fail(
            "fixture",
            CERTIFICATE_FILE,
            "fixture lines for d12 and d10 required",
        );
    }
    let sum: u64 = REFERENCE_LEVEL_BOUNDS
        .iter()
        .filter(|(k, _)| *k < 6)
        .map(|(_, b)| b)
        .sum::<u64>()
        + six;
    let total = 4 * sum;
    match fixtures
        .iter()
        .filter(|f| f.positional(0).ok() == Some("total"))
        .collect::<Vec<_>>()
        .as_slice()
    {
        [t] => {
            let loc = t.location();
            let (m, chi) = (t.num("M")?, t.num("chi-lower")?);
            rec.require(m == total, "fixture", &loc, || {
                format!("fixture M={m} but recomputed {total}")
            });
            rec.require(
                chi == (1u64 << width).div_ceil(total),
                "fixture",
                &loc,
                || format!("fixture chi-lower {chi} does not match M={total}"),
            );
        }
        found => rec.fail(
            "fixture",
            CERTIFICATE_FILE,
            format!("expected one fixture total line, found {}", found.len()),
        ),
    }
    Ok(())
}

fn finish(rec: Recorder, level_sum: u64, total: u64, chi_lower: u64) -> CheckReport {
    CheckReport {
        sections: rec.sections,
        level_sum,
        total,
        chi_lower,
    }
}

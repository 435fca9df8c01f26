//! The catalog of threshold sequences and the certificates behind them.
//!
//! A catalog file lists animals, each with a polyform file, a threshold
//! sequence and one line per claimed game outcome naming its witness:
//!
//! ```text
//! animal T31
//! polyform polyforms/T31.txt
//! threshold 1 5 inf
//! maker 1,1 proof proofs/T31_1_1.txt
//! breaker 1,2 paving pavings/tri_T21.txt
//! maker 2,5 proof proofs/T31_2_5.txt
//! breaker 2,6 surround
//! maker 3,* size
//! ```
//!
//! Witness kinds: `proof <file>`, `paving <file>`, `priority <file>`,
//! `solver [window=WxH] [turns=N]`, `reduce <game>` (disjoint copies of
//! another maker claim of the same animal), `subform <animal>`, `twostep`,
//! `surround`, `bLEa` (fewer breaker than maker marks) and `size`.
//! Paths are relative to the catalog file.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::board::{BoardKind, Window};
use crate::bounds::{
    check_threshold, composed_claims, fewer_breaker_marks, subform_dominance, surround_loser, twostep_winner,
    whole_goal, CheckKind, CheckLine, Evidence, GameSpec, Status, ThresholdReport, ThresholdSequence,
};
use crate::error::{invalid, Error, Result};
use crate::paving::Paving;
use crate::polyform::Polyform;
use crate::priority::{verify_breaker, PriorityStrategy, VerifyOptions};
use crate::proofseq::{verify_sequence, ProofSequence};
use crate::solver::{solve, SolveConfig};
use crate::text::{key_values, read_file, Source};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSpec {
    Proof(PathBuf),
    Paving(PathBuf),
    Priority(PathBuf),
    Solver { window: Option<(u32, u32)>, turns: Option<u32> },
    Reduce(GameSpec),
    Subform(String),
    TwoStep,
    Surround,
    FewerBreakerMarks,
    Size,
}

impl WitnessSpec {
    fn is_derived(&self) -> bool {
        matches!(self, WitnessSpec::Reduce(_) | WitnessSpec::Subform(_))
    }
}

impl fmt::Display for WitnessSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let file = |p: &PathBuf| p.file_name().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        match self {
            WitnessSpec::Proof(p) => write!(f, "proof {}", file(p)),
            WitnessSpec::Paving(p) => write!(f, "paving {}", file(p)),
            WitnessSpec::Priority(p) => write!(f, "priority {}", file(p)),
            WitnessSpec::Solver { window, turns } => {
                write!(f, "solver")?;
                if let Some((w, h)) = window {
                    write!(f, " window={w}x{h}")?;
                }
                if let Some(t) = turns {
                    write!(f, " turns={t}")?;
                }
                Ok(())
            }
            WitnessSpec::Reduce(g) => write!(f, "reduce {g}"),
            WitnessSpec::Subform(s) => write!(f, "subform {s}"),
            WitnessSpec::TwoStep => write!(f, "twostep"),
            WitnessSpec::Surround => write!(f, "surround"),
            WitnessSpec::FewerBreakerMarks => write!(f, "bLEa"),
            WitnessSpec::Size => write!(f, "size"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub line: usize,
    /// `MakerWins` or `BreakerWins`.
    pub side: Status,
    pub game: GameSpec,
    /// `a,*`: the maker wins for every `b`.
    pub every_b: bool,
    pub witness: WitnessSpec,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = if self.side == Status::MakerWins { "maker" } else { "breaker" };
        if self.every_b {
            write!(f, "{side} ({},*)", self.game.a)
        } else {
            write!(f, "{side} {}", self.game)
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub polyform: Polyform,
    pub threshold: ThresholdSequence,
    pub claims: Vec<Claim>,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

fn parse_game(s: &str) -> Result<(GameSpec, bool)> {
    match s.strip_suffix(",*") {
        Some(a) => {
            let a: u32 = a.parse().map_err(|_| invalid("game", format!("bad game `{s}`")))?;
            Ok((GameSpec::plain(a, 0)?, true))
        }
        None => Ok((GameSpec::parse(s)?, false)),
    }
}

fn parse_witness(toks: &[&str], base: &Path) -> std::result::Result<WitnessSpec, String> {
    let arg = |i: usize| toks.get(i).copied().ok_or_else(|| format!("`{}` needs an argument", toks[0]));
    let w = match toks[0] {
        "proof" => WitnessSpec::Proof(base.join(arg(1)?)),
        "paving" => WitnessSpec::Paving(base.join(arg(1)?)),
        "priority" => WitnessSpec::Priority(base.join(arg(1)?)),
        "solver" => {
            let (mut window, mut turns) = (None, None);
            for (k, v) in key_values(&toks[1..])? {
                match k.as_str() {
                    "window" => {
                        let w = Window::parse(BoardKind::Square, &v).map_err(|e| e.to_string())?;
                        window = Some(((w.x1 + 1) as u32, (w.y1 + 1) as u32));
                    }
                    "turns" => turns = Some(v.parse().map_err(|_| format!("bad turn count `{v}`"))?),
                    _ => return Err(format!("unknown solver option `{k}`")),
                }
            }
            return Ok(WitnessSpec::Solver { window, turns });
        }
        "reduce" => WitnessSpec::Reduce(GameSpec::parse(arg(1)?).map_err(|e| e.to_string())?),
        "subform" => WitnessSpec::Subform(arg(1)?.to_string()),
        "twostep" => WitnessSpec::TwoStep,
        "surround" => WitnessSpec::Surround,
        "bLEa" => WitnessSpec::FewerBreakerMarks,
        "size" => WitnessSpec::Size,
        other => return Err(format!("unknown witness `{other}`")),
    };
    let expected = match w {
        WitnessSpec::Proof(_) | WitnessSpec::Paving(_) | WitnessSpec::Priority(_) => 2,
        WitnessSpec::Reduce(_) | WitnessSpec::Subform(_) => 2,
        _ => 1,
    };
    if toks.len() != expected {
        return Err(format!("unexpected arguments after `{}`", toks[..expected].join(" ")));
    }
    Ok(w)
}

/// Whether a maker claim and a breaker claim cover a common plain game.
fn clash(maker: &Claim, breaker: &Claim) -> bool {
    let plain: Vec<(u32, u32)> = if maker.game.c.is_some() {
        composed_claims(maker.game, breaker.game.a)
    } else {
        vec![(maker.game.a, maker.game.b)]
    };
    plain
        .iter()
        .any(|&(a, b)| breaker.game.a >= a && (maker.every_b || breaker.game.b <= b))
}

impl Catalog {
    pub fn parse(name: &str, text: &str, base: &Path) -> Result<Catalog> {
        let mut src = Source::new(name, text);
        // (line, name, polyform, threshold, claims) until the record is complete
        type Partial = (usize, String, Option<Polyform>, Option<ThresholdSequence>, Vec<Claim>);
        let mut entries: Vec<Partial> = Vec::new();
        while let Some(line) = src.next_line() {
            let toks: Vec<&str> = line.text.split_whitespace().collect();
            if toks[0] == "animal" {
                let [_, name] = toks[..] else {
                    return Err(src.err(line.no, "expected `animal <name>`"));
                };
                if entries.iter().any(|e| e.1 == name) {
                    return Err(src.err(line.no, format!("animal {name} listed twice")));
                }
                entries.push((line.no, name.to_string(), None, None, Vec::new()));
                continue;
            }
            let Some(entry) = entries.last_mut() else {
                return Err(src.err(line.no, "expected `animal <name>` first"));
            };
            match toks[0] {
                "polyform" => {
                    let [_, p] = toks[..] else {
                        return Err(src.err(line.no, "expected `polyform <file>`"));
                    };
                    entry.2 = Some(Polyform::load(&base.join(p))?);
                }
                "threshold" => {
                    let t = ThresholdSequence::parse(&toks[1..].join(" ")).map_err(|e| src.err(line.no, e.to_string()))?;
                    entry.3 = Some(t);
                }
                "maker" | "breaker" => {
                    if toks.len() < 3 {
                        return Err(src.err(line.no, format!("expected `{} <game> <witness>`", toks[0])));
                    }
                    let side = if toks[0] == "maker" { Status::MakerWins } else { Status::BreakerWins };
                    let (game, every_b) = parse_game(toks[1]).map_err(|e| src.err(line.no, e.to_string()))?;
                    let witness = parse_witness(&toks[2..], base).map_err(|e| src.err(line.no, e))?;
                    if every_b && (side != Status::MakerWins || witness != WitnessSpec::Size) {
                        return Err(src.err(line.no, "`a,*` is only valid for `maker ... size`"));
                    }
                    if side == Status::BreakerWins && game.c.is_some() {
                        return Err(src.err(line.no, "breaker claims must be plain (a,b) games"));
                    }
                    let claim = Claim {
                        line: line.no,
                        side,
                        game,
                        every_b,
                        witness,
                    };
                    if let Some(dup) = entry.4.iter().find(|c| c.side == side && c.game == game && c.every_b == every_b) {
                        return Err(src.err(line.no, format!("duplicate claim {claim}, first on line {}", dup.line)));
                    }
                    for other in &entry.4 {
                        let hit = match (side, other.side) {
                            (Status::MakerWins, Status::BreakerWins) => clash(&claim, other),
                            (Status::BreakerWins, Status::MakerWins) => clash(other, &claim),
                            _ => false,
                        };
                        if hit {
                            return Err(src.err(
                                line.no,
                                format!("{claim} contradicts {other} on line {}", other.line),
                            ));
                        }
                    }
                    entry.4.push(claim);
                }
                other => return Err(src.err(line.no, format!("unknown keyword `{other}`"))),
            }
        }
        let mut out = Vec::new();
        for (no, name, poly, thr, claims) in entries {
            let polyform = poly.ok_or_else(|| src.err(no, format!("animal {name} has no polyform")))?;
            let threshold = thr.ok_or_else(|| src.err(no, format!("animal {name} has no threshold")))?;
            out.push(CatalogEntry {
                name,
                polyform,
                threshold,
                claims,
            });
        }
        for e in &out {
            for c in &e.claims {
                if let WitnessSpec::Subform(s) = &c.witness {
                    if !out.iter().any(|o| &o.name == s) {
                        return Err(src.err(c.line, format!("unknown animal `{s}`")));
                    }
                }
            }
        }
        out.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(Catalog { entries: out })
    }

    pub fn load(path: &Path) -> Result<Catalog> {
        let base = path.parent().unwrap_or(Path::new("."));
        Catalog::parse(&path.display().to_string(), &read_file(path)?, base)
    }

    pub fn entry(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub jobs: Option<usize>,
    pub solver_node_cap: u64,
    pub cross_check: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            jobs: None,
            solver_node_cap: 50_000_000,
            cross_check: true,
        }
    }
}

impl RunOptions {
    /// Defaults, with the solver cap taken from `POLYGAME_SOLVER_NODES` if set.
    pub fn from_env() -> RunOptions {
        let mut o = RunOptions::default();
        if let Some(n) = std::env::var("POLYGAME_SOLVER_NODES").ok().and_then(|v| v.parse().ok()) {
            o.solver_node_cap = n;
        }
        o
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimResult {
    pub claim: String,
    pub witness: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct EntryReport {
    pub name: String,
    pub threshold: ThresholdSequence,
    pub claims: Vec<ClaimResult>,
    pub checks: ThresholdReport,
}

impl EntryReport {
    pub fn ok(&self) -> bool {
        self.claims.iter().all(|c| c.ok) && self.checks.ok()
    }
}

#[derive(Clone, Debug, Default)]
pub struct CatalogReport {
    pub entries: Vec<EntryReport>,
    pub dominance: Vec<CheckLine>,
    pub cross_check: Vec<CheckLine>,
}

impl CatalogReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(EntryReport::ok)
            && self
                .dominance
                .iter()
                .chain(&self.cross_check)
                .all(|l| l.ok || l.kind == CheckKind::Info)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.entries {
            for c in e.claims.iter().filter(|c| !c.ok) {
                out.push(format!("{}: {} [{}]: {}", e.name, c.claim, c.witness, c.detail));
            }
            for l in e.checks.lines.iter().filter(|l| !l.ok && l.kind != CheckKind::Info) {
                out.push(format!("{}: {}", e.name, l.text));
            }
        }
        for l in self.dominance.iter().chain(&self.cross_check) {
            if !l.ok && l.kind != CheckKind::Info {
                out.push(l.text.clone());
            }
        }
        out
    }
}

fn mark(ok: bool, kind: CheckKind) -> &'static str {
    match (ok, kind) {
        (true, _) => "ok  ",
        (false, CheckKind::Info) => "info",
        (false, _) => "FAIL",
    }
}

impl fmt::Display for CatalogReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{} tau = {}", e.name, e.threshold)?;
            for c in &e.claims {
                write!(f, "  {} {} [{}]", mark(c.ok, CheckKind::Witness), c.claim, c.witness)?;
                if c.detail.is_empty() {
                    writeln!(f)?;
                } else {
                    writeln!(f, ": {}", c.detail)?;
                }
            }
            for l in &e.checks.lines {
                writeln!(f, "  {} {}", mark(l.ok, l.kind), l.text)?;
            }
        }
        if !self.dominance.is_empty() {
            writeln!(f, "subform dominance")?;
            for l in &self.dominance {
                writeln!(f, "  {} {}", mark(l.ok, l.kind), l.text)?;
            }
        }
        if !self.cross_check.is_empty() {
            writeln!(f, "solver cross-check")?;
            for l in &self.cross_check {
                writeln!(f, "  {} {}", mark(l.ok, l.kind), l.text)?;
            }
        }
        let failures = self.failures().len();
        if failures == 0 {
            writeln!(f, "all claims reproduced")
        } else {
            writeln!(f, "{failures} failure(s)")
        }
    }
}

/// Outcome of a witness that needs no other claim.
fn check_direct(entry: &CatalogEntry, claim: &Claim, opts: &RunOptions) -> (bool, String) {
    let goal = &entry.polyform;
    let (a, b) = (claim.game.a, claim.game.b);
    let want = claim.side;
    let res: Result<(Status, String)> = (|| match &claim.witness {
        WitnessSpec::Proof(p) => {
            let seq = ProofSequence::load(p)?;
            if !seq.goal.is_congruent(goal) {
                return Ok((Status::Unknown, "certificate is for a different goal".into()));
            }
            if seq.game != claim.game {
                return Ok((Status::Unknown, format!("certificate is for {}", seq.game)));
            }
            let r = verify_sequence(&seq);
            Ok((r.verdict.status(), format!("{} steps", r.steps.len()) + &note(r.verdict.note())))
        }
        WitnessSpec::Paving(p) => {
            let pav = Paving::load(p)?;
            if a != 1 || claim.game.c.is_some() {
                return Ok((Status::Unknown, "pavings only answer single maker marks".into()));
            }
            let r = pav.defeats(goal);
            if r.degree > b as usize {
                return Ok((Status::Unknown, format!("degree {} exceeds b = {b}", r.degree)));
            }
            Ok((r.verdict.status(), format!("degree {}, {} placements", r.degree, r.placements_checked)))
        }
        WitnessSpec::Priority(p) => {
            let strat = PriorityStrategy::load(p)?;
            if (strat.a, strat.b) != (a, b) {
                return Ok((Status::Unknown, format!("strategy is for ({},{})", strat.a, strat.b)));
            }
            let r = verify_breaker(goal, &strat, &VerifyOptions::new(&strat))?;
            Ok((
                r.verdict.status(),
                format!("{} placements, {} positions", r.placements, r.positions) + &note(r.verdict.note()),
            ))
        }
        WitnessSpec::Solver { window, turns } => {
            let mut cfg = SolveConfig::new(goal.clone(), claim.game);
            if let Some((w, h)) = window {
                cfg.window = Window::sized(goal.board(), *w, *h)?;
            }
            if let Some(t) = turns {
                cfg.max_turns = *t;
            }
            cfg.node_cap = opts.solver_node_cap;
            let r = solve(&cfg)?;
            let detail = match r.turns {
                Some(t) => format!("forced in {t} turns, {} nodes", r.nodes),
                None => format!("{} nodes", r.nodes) + &note(r.verdict.note()),
            };
            Ok((r.verdict.status(), detail))
        }
        WitnessSpec::TwoStep => Ok((twostep_winner(a, b, goal).status(), String::new())),
        WitnessSpec::Surround => Ok((surround_loser(a, b, goal).status(), String::new())),
        WitnessSpec::FewerBreakerMarks => Ok((fewer_breaker_marks(a, b).status(), String::new())),
        WitnessSpec::Size => Ok((whole_goal(a, goal).status(), String::new())),
        WitnessSpec::Reduce(_) | WitnessSpec::Subform(_) => unreachable!("derived witnesses are resolved later"),
    })();
    match res {
        Ok((s, detail)) => (s == want, detail),
        Err(e) => (false, e.to_string()),
    }
}

fn note(n: &str) -> String {
    if n.is_empty() {
        String::new()
    } else {
        format!("; {n}")
    }
}

fn add_claim(ev: &mut Evidence, c: &Claim) {
    if c.every_b {
        ev.add_maker_every_b(c.game.a);
    } else if c.game.c.is_none() {
        ev.add(c.side, c.game.a, c.game.b);
    }
}

/// Verifies every witness, then resolves derived claims, threshold checks,
/// subform dominance and the solver cross-check.
pub fn run_all(catalog: &Catalog, opts: &RunOptions) -> Result<CatalogReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.unwrap_or(0))
        .build()
        .map_err(|e| invalid("jobs", e.to_string()))?;
    pool.install(|| run_inner(catalog, opts))
}

fn run_inner(catalog: &Catalog, opts: &RunOptions) -> Result<CatalogReport> {
    let tasks: Vec<(usize, usize)> = catalog
        .entries
        .iter()
        .enumerate()
        .flat_map(|(i, e)| (0..e.claims.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| !catalog.entries[i].claims[j].witness.is_derived())
        .collect();
    let direct: Vec<(bool, String)> = tasks
        .par_iter()
        .map(|&(i, j)| check_direct(&catalog.entries[i], &catalog.entries[i].claims[j], opts))
        .collect();
    let mut results: BTreeMap<(usize, usize), (bool, String)> = tasks.into_iter().zip(direct).collect();

    // Derived claims depend on verified claims, possibly of other animals.
    let mut evidence: Vec<Evidence> = vec![Evidence::default(); catalog.entries.len()];
    let mut maker_games: Vec<BTreeSet<GameSpec>> = vec![BTreeSet::new(); catalog.entries.len()];
    for (&(i, j), (ok, _)) in &results {
        let c = &catalog.entries[i].claims[j];
        if *ok {
            add_claim(&mut evidence[i], c);
            if c.side == Status::MakerWins {
                maker_games[i].insert(c.game);
            }
        }
    }
    loop {
        let mut progress = false;
        for (i, e) in catalog.entries.iter().enumerate() {
            for (j, c) in e.claims.iter().enumerate() {
                if results.contains_key(&(i, j)) {
                    continue;
                }
                let (a, b) = (c.game.a, c.game.b);
                let done = match &c.witness {
                    WitnessSpec::Reduce(g0) => (maker_games[i].contains(g0)
                        && composed_claims(*g0, a).contains(&(a, b))
                        && c.game.c.is_none())
                    .then(|| format!("copies of the verified {g0} win")),
                    WitnessSpec::Subform(s) => {
                        let k = catalog.entries.iter().position(|o| &o.name == s).expect("checked at load");
                        let other = &catalog.entries[k];
                        match c.side {
                            Status::MakerWins => (e.polyform.is_subform(&other.polyform)
                                && evidence[k].maker_wins(a, b))
                            .then(|| format!("{} is contained in {s}", e.name)),
                            _ => (other.polyform.is_subform(&e.polyform) && evidence[k].breaker_wins(a, b))
                                .then(|| format!("contains {s}")),
                        }
                    }
                    _ => unreachable!("direct witnesses are already checked"),
                };
                if let Some(detail) = done {
                    results.insert((i, j), (true, detail));
                    add_claim(&mut evidence[i], c);
                    if c.side == Status::MakerWins {
                        maker_games[i].insert(c.game);
                    }
                    progress = true;
                }
            }
        }
        if !progress {
            break;
        }
    }

    let mut report = CatalogReport::default();
    for (i, e) in catalog.entries.iter().enumerate() {
        let claims = e
            .claims
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let (ok, detail) = results
                    .get(&(i, j))
                    .cloned()
                    .unwrap_or((false, "the claim it relies on is not established".into()));
                ClaimResult {
                    claim: c.to_string(),
                    witness: c.witness.to_string(),
                    ok,
                    detail,
                }
            })
            .collect();
        report.entries.push(EntryReport {
            name: e.name.clone(),
            threshold: e.threshold.clone(),
            claims,
            checks: check_threshold(&e.threshold, &evidence[i]),
        });
    }

    for x in &catalog.entries {
        for y in &catalog.entries {
            if x.name == y.name || x.polyform.board() != y.polyform.board() || !x.polyform.is_subform(&y.polyform) {
                continue;
            }
            let bad = subform_dominance(&x.threshold, &y.threshold);
            report.dominance.push(CheckLine {
                kind: CheckKind::Structure,
                ok: bad.is_empty(),
                text: format!("{} in {}: tau {} >= {}{}", x.name, y.name, x.threshold, y.threshold, if bad.is_empty() { String::new() } else { format!(" fails at {bad:?}") }),
            });
        }
    }

    if opts.cross_check {
        report.cross_check = cross_check(catalog, opts);
    }
    Ok(report)
}

/// Solver settings used to re-check a catalog claim, if it is in scope.
pub fn cross_check_config(entry: &CatalogEntry, claim: &Claim) -> Option<SolveConfig> {
    if claim.every_b || matches!(claim.witness, WitnessSpec::Solver { .. }) {
        return None;
    }
    let goal = entry.polyform.clone();
    let board = goal.board();
    let mut cfg = SolveConfig::new(goal, claim.game);
    match claim.side {
        Status::MakerWins => {
            if entry.polyform.size() > 3 || claim.game.a > 2 {
                return None;
            }
            if claim.game.a == 2 {
                // Room for two independent first marks.
                cfg.window = Window::sized(board, 10, 5).expect("positive size");
                cfg.max_turns = 2;
            }
        }
        _ => {
            if claim.game.a > 2 || claim.game.b > 6 {
                return None;
            }
            let side = if board == BoardKind::Square { 5 } else { 4 };
            cfg.window = Window::sized(board, side, side).expect("positive size");
            cfg.max_turns = 4;
            cfg.node_cap = 2_000_000;
        }
    }
    Some(cfg)
}

/// Runs the solver on small claims: maker claims must be confirmed, breaker
/// claims must never be contradicted. Hitting the node cap is inconclusive.
pub fn cross_check(catalog: &Catalog, opts: &RunOptions) -> Vec<CheckLine> {
    let jobs: Vec<(&CatalogEntry, &Claim, SolveConfig)> = catalog
        .entries
        .iter()
        .flat_map(|e| e.claims.iter().filter_map(move |c| cross_check_config(e, c).map(|cfg| (e, c, cfg))))
        .collect();
    jobs.par_iter()
        .map(|(e, c, cfg)| {
            let mut cfg = cfg.clone();
            cfg.node_cap = cfg.node_cap.min(opts.solver_node_cap);
            let head = format!("{} {}", e.name, c);
            match (solve(&cfg), c.side) {
                (Ok(r), Status::MakerWins) => CheckLine {
                    kind: CheckKind::Witness,
                    ok: r.verdict.status() == Status::MakerWins,
                    text: format!("{head}: solver {}", r.verdict.status()),
                },
                (Ok(r), _) => CheckLine {
                    kind: CheckKind::Structure,
                    ok: r.verdict.status() != Status::MakerWins,
                    text: format!("{head}: solver {}", r.verdict.status()),
                },
                (Err(Error::ResourceLimit(_)), _) => CheckLine {
                    kind: CheckKind::Info,
                    ok: false,
                    text: format!("{head}: solver hit its node cap, inconclusive"),
                },
                (Err(err), _) => CheckLine {
                    kind: CheckKind::Structure,
                    ok: false,
                    text: format!("{head}: solver error {err}"),
                },
            }
        })
        .collect()
}

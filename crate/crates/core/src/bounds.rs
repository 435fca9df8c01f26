//! Closed-form winner and loser rules, game implications and threshold checks.

use std::collections::BTreeSet;
use std::fmt;

use crate::board::Cell;
use crate::error::{invalid, Result};
use crate::polyform::{Placement, Polyform};
use crate::stages;

/// An `(a,b)` game, or an `(a->c,b)` game when `c` is set: the maker marks
/// `a` cells per turn except `c` on the turn he completes the goal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameSpec {
    pub a: u32,
    pub b: u32,
    pub c: Option<u32>,
}

impl GameSpec {
    pub fn new(a: u32, b: u32, c: Option<u32>) -> Result<GameSpec> {
        if a == 0 {
            return Err(invalid("game", "a must be at least 1"));
        }
        if let Some(c) = c {
            if c < a {
                return Err(invalid("game", format!("c = {c} is below a = {a}")));
            }
        }
        Ok(GameSpec { a, b, c: c.filter(|&c| c != a) })
    }

    pub fn plain(a: u32, b: u32) -> Result<GameSpec> {
        GameSpec::new(a, b, None)
    }

    /// Marks available on the winning turn.
    pub fn final_marks(&self) -> u32 {
        self.c.unwrap_or(self.a)
    }

    /// Parses `a,b` or `a->c,b`.
    pub fn parse(s: &str) -> Result<GameSpec> {
        let bad = || invalid("game", format!("expected `a,b` or `a->c,b`, got `{s}`"));
        let (left, b) = s.split_once(',').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        let b = num(b)?;
        match left.split_once("->") {
            Some((a, c)) => GameSpec::new(num(a)?, b, Some(num(c)?)),
            None => GameSpec::new(num(left)?, b, None),
        }
    }
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.c {
            Some(c) => write!(f, "({}->{},{})", self.a, c, self.b),
            None => write!(f, "({},{})", self.a, self.b),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    MakerWins,
    BreakerWins,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::MakerWins => "MakerWins",
            Status::BreakerWins => "BreakerWins",
            Status::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The breaker surrounds every maker mark.
    Surround,
    /// `k` placements meeting pairwise in exactly `center`.
    TwoStep { center: Cell, placements: Vec<Placement> },
    /// `b < a`.
    FewerBreakerMarks,
    /// `a` is at least the goal size.
    WholeGoal,
    /// Disjoint copies of a smaller winning game played side by side.
    Composition { part: GameSpec, copies: u32 },
    ProofSequence(String),
    Paving(String),
    Priority(String),
    Solver(String),
    Subform(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Surround => write!(f, "surround"),
            Witness::TwoStep { center, placements } => {
                write!(f, "twostep k={} at {center}", placements.len())
            }
            Witness::FewerBreakerMarks => write!(f, "b<a"),
            Witness::WholeGoal => write!(f, "a>=|A|"),
            Witness::Composition { part, copies } => write!(f, "{copies} copies of {part}"),
            Witness::ProofSequence(p) => write!(f, "proof sequence {p}"),
            Witness::Paving(p) => write!(f, "paving {p}"),
            Witness::Priority(p) => write!(f, "priority strategy {p}"),
            Witness::Solver(p) => write!(f, "solver {p}"),
            Witness::Subform(p) => write!(f, "subform {p}"),
        }
    }
}

/// A game outcome. Decided verdicts always carry a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    status: Status,
    witness: Option<Witness>,
    note: String,
}

impl Verdict {
    pub fn maker(w: Witness) -> Verdict {
        Verdict {
            status: Status::MakerWins,
            witness: Some(w),
            note: String::new(),
        }
    }

    pub fn breaker(w: Witness) -> Verdict {
        Verdict {
            status: Status::BreakerWins,
            witness: Some(w),
            note: String::new(),
        }
    }

    pub fn unknown(note: impl Into<String>) -> Verdict {
        Verdict {
            status: Status::Unknown,
            witness: None,
            note: note.into(),
        }
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn note(&self) -> &str {
        &self.note
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(w) => write!(f, "{} [{w}]", self.status),
            None if self.note.is_empty() => write!(f, "{}", self.status),
            None => write!(f, "{} ({})", self.status, self.note),
        }
    }
}

pub fn surround_loser(a: u32, b: u32, goal: &Polyform) -> Verdict {
    let delta = goal.board().delta() as u64;
    if (a as usize) < goal.size() && a as u64 * delta <= b as u64 {
        Verdict::breaker(Witness::Surround)
    } else {
        Verdict::unknown(format!("needs a < {} and a*{delta} <= b", goal.size()))
    }
}

/// A largest family of placements that pairwise meet in exactly one common cell.
pub fn largest_flower(goal: &Polyform) -> (Cell, Vec<Placement>) {
    let mut centers: Vec<Cell> = goal.cells().iter().map(|c| Cell { x: 0, y: 0, o: c.o }).collect();
    centers.dedup();
    centers.sort();
    centers.dedup();
    let mut best: Option<(Cell, Vec<Placement>)> = None;
    for x in centers {
        let ps = goal.placements_containing(x);
        let n = ps.len();
        let compatible = |i: usize, j: usize| {
            let common: Vec<&Cell> = ps[i].iter().filter(|c| ps[j].binary_search(c).is_ok()).collect();
            common == [&x]
        };
        let adj: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i != j && compatible(i, j)).collect()).collect();
        let mut clique = Vec::new();
        let mut top = Vec::new();
        max_clique(&adj, &mut clique, (0..n).collect(), &mut top);
        if best.as_ref().is_none_or(|(_, b)| top.len() > b.len()) {
            best = Some((x, top.iter().map(|&i| ps[i].clone()).collect()));
        }
    }
    best.expect("a polyform has at least one cell")
}

fn max_clique(adj: &[Vec<bool>], cur: &mut Vec<usize>, cand: Vec<usize>, best: &mut Vec<usize>) {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    if cur.len() + cand.len() <= best.len() {
        return;
    }
    for (k, &v) in cand.iter().enumerate() {
        if cur.len() + cand.len() - k <= best.len() {
            return;
        }
        let next: Vec<usize> = cand[k + 1..].iter().copied().filter(|&u| adj[v][u]).collect();
        cur.push(v);
        max_clique(adj, cur, next, best);
        cur.pop();
    }
}

pub fn twostep_winner(a: u32, b: u32, goal: &Polyform) -> Verdict {
    if goal.size() != a as usize + 1 {
        return Verdict::unknown(format!("needs |A| = a + 1 = {}", a + 1));
    }
    let (center, placements) = largest_flower(goal);
    let k = placements.len() as u64;
    if a as u64 * k > b as u64 {
        Verdict::maker(Witness::TwoStep { center, placements })
    } else {
        Verdict::unknown(format!("largest flower has k = {k}, a*k <= b"))
    }
}

/// Any animal is an `(a,b)`-winner when `b < a`.
pub fn fewer_breaker_marks(a: u32, b: u32) -> Verdict {
    if b < a {
        Verdict::maker(Witness::FewerBreakerMarks)
    } else {
        Verdict::unknown("needs b < a")
    }
}

pub fn whole_goal(a: u32, goal: &Polyform) -> Verdict {
    if a as usize >= goal.size() {
        Verdict::maker(Witness::WholeGoal)
    } else {
        Verdict::unknown(format!("needs a >= {}", goal.size()))
    }
}

/// Result of interleaving bounded wins on disjoint subboards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub game: GameSpec,
    pub turn_bound: u128,
}

/// Parts are `(a_i, b_i, l_i)`: bounded `(a_i -> a, b_i)` wins in `l_i` moves.
/// The maker then wins `(sum a_i, sum b_i + s - 1)`.
pub fn compose_winner(parts: &[(u32, u32, u32)]) -> Result<Composition> {
    if parts.is_empty() {
        return Err(invalid("composition", "no parts"));
    }
    if parts.iter().any(|p| p.0 == 0) {
        return Err(invalid("composition", "every part needs a_i >= 1"));
    }
    let a: u32 = parts.iter().map(|p| p.0).sum();
    let b: u32 = parts.iter().map(|p| p.1).sum::<u32>() + parts.len() as u32 - 1;
    let bs: Vec<u64> = parts.iter().map(|p| p.1 as u64).collect();
    let ls: Vec<u32> = parts.iter().map(|p| p.2).collect();
    let d = stages::build_diagram(&bs, &ls)?;
    Ok(Composition {
        game: GameSpec::plain(a, b)?,
        turn_bound: d.total_turn_bound(),
    })
}

/// Plain games won by playing `s` disjoint copies of a won game `g`, for every
/// `s` with `s * g.a` reaching the final-turn allowance, up to `max_a`.
pub fn composed_claims(g: GameSpec, max_a: u32) -> Vec<(u32, u32)> {
    (1..)
        .map(|s| (s, s * g.a))
        .take_while(|&(_, a)| a <= max_a)
        .filter(|&(_, a)| a >= g.final_marks())
        .map(|(s, a)| (a, s * g.b + s - 1))
        .collect()
}

/// Games implied by `status` at `(a,b)`, inside `1..=max_a` x `0..=max_b`.
pub fn monotone_implications(status: Status, a: u32, b: u32, max_a: u32, max_b: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    match status {
        Status::MakerWins => {
            for x in a..=max_a {
                for y in 0..=b.min(max_b) {
                    out.push((x, y));
                }
            }
        }
        Status::BreakerWins => {
            for x in 1..=a.min(max_a) {
                for y in b..=max_b {
                    out.push((x, y));
                }
            }
        }
        Status::Unknown => {}
    }
    out
}

/// Verified outcomes for one goal, queried up to monotone implication.
#[derive(Clone, Debug, Default)]
pub struct Evidence {
    maker: BTreeSet<(u32, u32)>,
    breaker: BTreeSet<(u32, u32)>,
    /// Least `a` with a maker win for every `b`.
    maker_every_b: Option<u32>,
}

impl Evidence {
    pub fn add(&mut self, status: Status, a: u32, b: u32) {
        match status {
            Status::MakerWins => {
                self.maker.insert((a, b));
            }
            Status::BreakerWins => {
                self.breaker.insert((a, b));
            }
            Status::Unknown => {}
        }
    }

    pub fn add_maker_every_b(&mut self, a: u32) {
        self.maker_every_b = Some(self.maker_every_b.map_or(a, |x| x.min(a)));
    }

    pub fn maker_wins(&self, a: u32, b: u32) -> bool {
        self.maker_every_b.is_some_and(|x| x <= a) || self.maker.iter().any(|&(x, y)| x <= a && y >= b)
    }

    pub fn maker_wins_every_b(&self, a: u32) -> bool {
        self.maker_every_b.is_some_and(|x| x <= a)
    }

    pub fn breaker_wins(&self, a: u32, b: u32) -> bool {
        self.breaker.iter().any(|&(x, y)| x >= a && y <= b)
    }

    /// A game both sides are recorded as winning, if any.
    pub fn contradiction(&self) -> Option<(u32, u32)> {
        self.breaker
            .iter()
            .find(|&&(a, b)| self.maker_wins(a, b))
            .copied()
    }
}

/// `b_1, b_2, ...` with the finite prefix stored; `b_n` is infinite for `n > finite.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdSequence {
    pub finite: Vec<u32>,
}

impl ThresholdSequence {
    pub fn new(finite: Vec<u32>) -> ThresholdSequence {
        ThresholdSequence { finite }
    }

    /// Index of the first infinite entry.
    pub fn first_infinite(&self) -> u32 {
        self.finite.len() as u32 + 1
    }

    pub fn get(&self, n: u32) -> Option<u32> {
        self.finite.get(n as usize - 1).copied()
    }

    /// Parses whitespace- or comma-separated entries ending in `inf`.
    pub fn parse(s: &str) -> Result<ThresholdSequence> {
        let toks: Vec<&str> = s
            .trim_matches(['(', ')'])
            .split([',', ' '])
            .filter(|t| !t.is_empty())
            .collect();
        let bad = |m: String| invalid("threshold sequence", m);
        match toks.split_last() {
            Some((last, rest)) if matches!(*last, "inf" | "∞") => rest
                .iter()
                .map(|t| t.parse::<u32>().map_err(|_| bad(format!("bad entry `{t}`"))))
                .collect::<Result<Vec<_>>>()
                .map(ThresholdSequence::new),
            _ => Err(bad(format!("`{s}` must end with inf"))),
        }
    }
}

impl fmt::Display for ThresholdSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.finite.iter().map(|b| b.to_string()).collect();
        parts.push("∞".into());
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Witness,
    Structure,
    /// Reported but never a failure.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub kind: CheckKind,
    pub ok: bool,
    pub text: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThresholdReport {
    pub lines: Vec<CheckLine>,
}

impl ThresholdReport {
    pub fn ok(&self) -> bool {
        self.lines.iter().all(|l| l.ok || l.kind == CheckKind::Info)
    }

    fn push(&mut self, kind: CheckKind, ok: bool, text: String) {
        self.lines.push(CheckLine { kind, ok, text });
    }
}

pub fn check_threshold(t: &ThresholdSequence, evidence: &Evidence) -> ThresholdReport {
    let mut r = ThresholdReport::default();
    for (i, &b) in t.finite.iter().enumerate() {
        let n = i as u32 + 1;
        r.push(
            CheckKind::Witness,
            evidence.maker_wins(n, b),
            format!("maker wins ({n},{b})"),
        );
        r.push(
            CheckKind::Witness,
            evidence.breaker_wins(n, b + 1),
            format!("breaker wins ({n},{})", b + 1),
        );
        if i > 0 {
            let prev = t.finite[i - 1];
            r.push(CheckKind::Structure, prev < b, format!("b_{} = {prev} < b_{n} = {b}", n - 1));
        }
        r.push(CheckKind::Structure, b + 1 >= n, format!("b_{n} = {b} >= {}", n - 1));
        r.push(
            CheckKind::Info,
            (b + 1) % n == 0,
            format!("{n} divides b_{n} + 1 = {}", b + 1),
        );
    }
    let k = t.first_infinite();
    r.push(
        CheckKind::Witness,
        evidence.maker_wins_every_b(k),
        format!("maker wins ({k},b) for every b"),
    );
    if let Some(m) = evidence.contradiction() {
        r.push(CheckKind::Structure, false, format!("both sides win {m:?}"));
    }
    r
}

/// Indices `i` (1-based) where `tau(sub)(i) >= tau(sup)(i)` fails.
pub fn subform_dominance(sub: &ThresholdSequence, sup: &ThresholdSequence) -> Vec<u32> {
    let n = sub.finite.len().max(sup.finite.len()) as u32;
    (1..=n)
        .filter(|&i| match (sub.get(i), sup.get(i)) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some(x), Some(y)) => x < y,
        })
        .collect()
}

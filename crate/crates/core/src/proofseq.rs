//! Proof sequences: maker certificates built from situations.
//!
//! A situation is a list of far-apart components, each a pair (core, open)
//! of disjoint cell sets: the maker holds the core and the breaker has not
//! touched the open cells. A sequence `s_0, ..., s_n` is valid when `s_0` is
//! the goal and, from every `s_i` with `i >= 1`, whatever the breaker marks
//! in the open cells, the maker can reach some earlier `s_j` in one turn.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use rayon::prelude::*;

use crate::board::{BoardKind, Cell};
use crate::bounds::{composed_claims, GameSpec, Verdict, Witness};
use crate::error::Result;
use crate::polyform::Polyform;
use crate::text::{parse_cells, read_file, Source};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub core: Vec<Cell>,
    pub open: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Situation {
    pub components: Vec<Component>,
}

impl Situation {
    pub fn core_size(&self) -> usize {
        self.components.iter().map(|c| c.core.len()).sum()
    }

    pub fn open_size(&self) -> usize {
        self.components.iter().map(|c| c.open.len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofSequence {
    pub game: GameSpec,
    pub goal: Polyform,
    pub situations: Vec<Situation>,
}

/// An open cell of a situation: component index and cell.
pub type Site = (usize, Cell);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepFailure {
    Malformed(String),
    /// A breaker choice after which no earlier situation is reachable.
    Violation(Vec<Site>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub step: usize,
    pub breaker_sets: usize,
    pub failure: Option<StepFailure>,
}

impl StepReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct SequenceReport {
    pub verdict: Verdict,
    pub steps: Vec<StepReport>,
}

impl fmt::Display for StepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "step {}: ok ({} breaker sets)", self.step, self.breaker_sets),
            Some(StepFailure::Malformed(m)) => write!(f, "step {}: malformed: {m}", self.step),
            Some(StepFailure::Violation(x)) => {
                let cells: Vec<String> = x.iter().map(|(k, c)| format!("{}:{c}", k + 1)).collect();
                write!(f, "step {}: breaker refutes with [{}]", self.step, cells.join(" "))
            }
        }
    }
}

impl ProofSequence {
    pub fn board(&self) -> BoardKind {
        self.goal.board()
    }

    /// Reads the certificate format. A relative `goal` path is resolved
    /// against `base`.
    pub fn parse(name: &str, text: &str, base: &Path) -> Result<ProofSequence> {
        let mut src = Source::new(name, text);
        let eof = src.eof_line();
        let first = src.next_line().ok_or_else(|| src.err(eof, "empty certificate"))?;
        let game = parse_game_line(first.text).map_err(|e| src.err(first.no, e))?;
        let gl = src.next_line().ok_or_else(|| src.err(eof, "expected `goal <file>`"))?;
        let goal_path = gl
            .text
            .strip_prefix("goal ")
            .ok_or_else(|| src.err(gl.no, "expected `goal <file>`"))?
            .trim();
        let goal = Polyform::load(&base.join(goal_path)).map_err(|e| src.err(gl.no, e.to_string()))?;
        let board = goal.board();

        let mut situations: Vec<Situation> = Vec::new();
        // components created by the latest `component` line
        let mut group = 0;
        while let Some(line) = src.next_line() {
            let words: Vec<&str> = line.text.split_whitespace().collect();
            match words.as_slice() {
                ["situation"] => {
                    group = 0;
                    situations.push(Situation { components: Vec::new() })
                }
                ["component", rest @ ..] => {
                    let times = match rest {
                        [] => 1,
                        [t] => t
                            .trim_end_matches(['x', '×'])
                            .parse::<usize>()
                            .ok()
                            .filter(|&n| n >= 1)
                            .ok_or_else(|| src.err(line.no, format!("bad multiplicity `{t}`")))?,
                        _ => return Err(src.err(line.no, "expected `component [Nx]`")),
                    };
                    let s = situations
                        .last_mut()
                        .ok_or_else(|| src.err(line.no, "component outside a situation"))?;
                    group = times;
                    for _ in 0..times {
                        s.components.push(Component { core: Vec::new(), open: Vec::new() });
                    }
                }
                _ => {
                    let (key, cells) = line
                        .text
                        .split_once(':')
                        .ok_or_else(|| src.err(line.no, format!("unexpected `{}`", line.text)))?;
                    let cells = parse_cells(board, cells).map_err(|e| src.err(line.no, e))?;
                    let s = situations
                        .last_mut()
                        .ok_or_else(|| src.err(line.no, "cells outside a situation"))?;
                    if s.components.is_empty() {
                        return Err(src.err(line.no, "cells outside a component"));
                    }
                    let start = s.components.len() - group;
                    for c in &mut s.components[start..] {
                        match key.trim() {
                            "core" => c.core.extend(cells.iter().copied()),
                            "open" => c.open.extend(cells.iter().copied()),
                            k => return Err(src.err(line.no, format!("unknown key `{k}`"))),
                        }
                    }
                }
            }
        }
        if situations.is_empty() {
            return Err(src.err(eof, "no situations"));
        }
        for s in &mut situations {
            for c in &mut s.components {
                c.core.sort();
                c.core.dedup();
                c.open.sort();
                c.open.dedup();
            }
        }
        Ok(ProofSequence { game, goal, situations })
    }

    pub fn load(path: &Path) -> Result<ProofSequence> {
        let base = path.parent().unwrap_or(Path::new("."));
        ProofSequence::parse(&path.display().to_string(), &read_file(path)?, base)
    }

    /// Serializes back to the certificate format with the goal at `goal_path`.
    pub fn to_file_string(&self, goal_path: &str) -> String {
        let mut s = format!("game a={} b={}", self.game.a, self.game.b);
        if let Some(c) = self.game.c {
            s.push_str(&format!(" c={c}"));
        }
        s.push_str(&format!("\ngoal {goal_path}\n"));
        let join = |cs: &[Cell]| cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        for sit in &self.situations {
            s.push_str("situation\n");
            for c in &sit.components {
                s.push_str(&format!("component\ncore: {}\nopen: {}\n", join(&c.core), join(&c.open)));
            }
        }
        s
    }

    /// Applies `g` to every cell of every situation and to the goal.
    pub fn transformed(&self, g: &crate::board::Symmetry) -> ProofSequence {
        let map = |cs: &[Cell]| {
            let mut v: Vec<Cell> = cs.iter().map(|&c| g.apply(c)).collect();
            v.sort();
            v
        };
        ProofSequence {
            game: self.game,
            goal: self.goal.transformed(g),
            situations: self
                .situations
                .iter()
                .map(|s| Situation {
                    components: s
                        .components
                        .iter()
                        .map(|c| Component { core: map(&c.core), open: map(&c.open) })
                        .collect(),
                })
                .collect(),
        }
    }
}

fn parse_game_line(text: &str) -> std::result::Result<GameSpec, String> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let Some((&"game", kvs)) = words.split_first() else {
        return Err("expected `game a=.. b=.. [c=..]`".into());
    };
    let (mut a, mut b, mut c) = (None, None, None);
    for (k, v) in crate::text::key_values(kvs)? {
        let v: u32 = v.parse().map_err(|_| format!("bad number `{v}`"))?;
        match k.as_str() {
            "a" => a = Some(v),
            "b" => b = Some(v),
            "c" => c = Some(v),
            _ => return Err(format!("unknown key `{k}`")),
        }
    }
    let (Some(a), Some(b)) = (a, b) else {
        return Err("game needs a= and b=".into());
    };
    GameSpec::new(a, b, c).map_err(|e| e.to_string())
}

fn malformation(seq: &ProofSequence) -> Option<String> {
    let board = seq.board();
    let s0 = &seq.situations[0];
    if s0.components.len() != 1 || !s0.components[0].open.is_empty() {
        return Some("s_0 must be one component with no open cells".into());
    }
    match Polyform::new(board, s0.components[0].core.iter().copied()) {
        Ok(p) if p.is_congruent(&seq.goal) => {}
        _ => return Some("s_0 core is not congruent to the goal".into()),
    }
    for (i, s) in seq.situations.iter().enumerate() {
        if s.components.is_empty() {
            return Some(format!("s_{i} has no components"));
        }
        for (k, c) in s.components.iter().enumerate() {
            if let Some(x) = c.core.iter().find(|x| c.open.binary_search(x).is_ok()) {
                return Some(format!("s_{i} component {}: {x} is both core and open", k + 1));
            }
            if let Some(x) = c.core.iter().chain(&c.open).find(|x| !board.accepts(x)) {
                return Some(format!("s_{i} component {}: {x} is not a {board} cell", k + 1));
            }
        }
    }
    None
}

/// One way of laying an earlier component onto a current one: the open
/// cells it relies on (which the breaker must have left alone) and how many
/// of them the maker has to mark.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Embedding {
    touch: u128,
    cost: u32,
}

fn embeddings(board: BoardKind, from: &Component, onto: &Component, open_bit: &BTreeMap<Cell, usize>) -> Vec<Embedding> {
    let known: BTreeMap<Cell, Option<usize>> = onto
        .core
        .iter()
        .map(|&c| (c, None))
        .chain(onto.open.iter().map(|&c| (c, Some(open_bit[&c]))))
        .collect();
    let all: Vec<(Cell, bool)> = from
        .core
        .iter()
        .map(|&c| (c, true))
        .chain(from.open.iter().map(|&c| (c, false)))
        .collect();
    let mut found = BTreeSet::new();
    if all.is_empty() {
        found.insert((0u128, 0u32));
    }
    for g in board.point_group() {
        let img: Vec<(Cell, bool)> = all.iter().map(|&(c, k)| (g.apply(c), k)).collect();
        let anchor = img[0].0;
        for target in known.keys().filter(|t| t.o == anchor.o) {
            let (dx, dy) = (target.x - anchor.x, target.y - anchor.y);
            let mut touch = 0u128;
            let mut cost = 0;
            let fits = img.iter().all(|&(c, is_core)| match known.get(&c.shifted(dx, dy)) {
                None => false,
                Some(None) => true,
                Some(Some(bit)) => {
                    touch |= 1u128 << bit;
                    cost += u32::from(is_core);
                    true
                }
            });
            if fits {
                found.insert((touch, cost));
            }
        }
    }
    let all: Vec<Embedding> = found.into_iter().map(|(touch, cost)| Embedding { touch, cost }).collect();
    all.iter()
        .filter(|e| {
            !all.iter().any(|f| {
                f != *e && f.touch & !e.touch == 0 && f.cost <= e.cost && (f.touch != e.touch || f.cost < e.cost)
            })
        })
        .copied()
        .collect()
}

/// Embeddings of every component of `s_j` (rows) onto every component of `s_i` (columns).
struct Links {
    per: Vec<Vec<Vec<Embedding>>>,
    fresh_cost: Vec<u32>,
}

fn min_cost(links: &Links, x: u128, jc: usize, used: &mut Vec<bool>, budget: u32) -> Option<u32> {
    if jc == links.per.len() {
        return Some(0);
    }
    let mut best: Option<u32> = None;
    let mut consider = |c: Option<u32>| {
        if let Some(c) = c {
            best = Some(best.map_or(c, |b: u32| b.min(c)));
        }
    };
    let fresh = links.fresh_cost[jc];
    if fresh <= budget {
        consider(min_cost(links, x, jc + 1, used, budget - fresh).map(|r| r + fresh));
    }
    for ic in 0..used.len() {
        if used[ic] {
            continue;
        }
        let Some(e) = links.per[jc][ic]
            .iter()
            .filter(|e| e.touch & x == 0 && e.cost <= budget)
            .min_by_key(|e| e.cost)
        else {
            continue;
        };
        used[ic] = true;
        consider(min_cost(links, x, jc + 1, used, budget - e.cost).map(|r| r + e.cost));
        used[ic] = false;
    }
    best
}

fn combinations(n: usize, k: usize) -> Vec<u128> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.iter().fold(0u128, |m, &i| m | 1u128 << i));
        let Some(p) = (0..k).rev().find(|&p| idx[p] != p + n - k) else {
            return out;
        };
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Checks one step of the sequence against every maximal breaker choice.
pub fn verify_step(seq: &ProofSequence, i: usize) -> StepReport {
    let fail = |m: String| StepReport {
        step: i,
        breaker_sets: 0,
        failure: Some(StepFailure::Malformed(m)),
    };
    if i == 0 || i >= seq.situations.len() {
        return fail(format!("step index {i} out of range"));
    }
    if let Some(m) = malformation(seq) {
        return fail(m);
    }
    let board = seq.board();
    let cur = &seq.situations[i];
    let mut sites: Vec<Site> = Vec::new();
    let mut open_bits: Vec<BTreeMap<Cell, usize>> = Vec::new();
    for (k, c) in cur.components.iter().enumerate() {
        let mut m = BTreeMap::new();
        for &x in &c.open {
            m.insert(x, sites.len());
            sites.push((k, x));
        }
        open_bits.push(m);
    }
    if sites.len() > 128 {
        return fail(format!("s_{i} has {} open cells; at most 128 supported", sites.len()));
    }
    let links: Vec<Links> = seq.situations[..i]
        .iter()
        .map(|sj| Links {
            per: sj
                .components
                .iter()
                .map(|jc| {
                    cur.components
                        .iter()
                        .enumerate()
                        .map(|(k, ic)| embeddings(board, jc, ic, &open_bits[k]))
                        .collect()
                })
                .collect(),
            fresh_cost: sj.components.iter().map(|c| c.core.len() as u32).collect(),
        })
        .collect();
    let budget = |j: usize| if j == 0 { seq.game.final_marks() } else { seq.game.a };
    let size = (seq.game.b as usize).min(sites.len());
    let sets = combinations(sites.len(), size);
    let ncomp = cur.components.len();
    let refuting = sets.par_iter().find_first(|&&x| {
        !(0..i).any(|j| min_cost(&links[j], x, 0, &mut vec![false; ncomp], budget(j)).is_some())
    });
    StepReport {
        step: i,
        breaker_sets: sets.len(),
        failure: refuting.map(|&x| {
            StepFailure::Violation((0..sites.len()).filter(|b| x >> b & 1 == 1).map(|b| sites[b]).collect())
        }),
    }
}

pub fn verify_sequence(seq: &ProofSequence) -> SequenceReport {
    let steps: Vec<StepReport> = (1..seq.situations.len()).map(|i| verify_step(seq, i)).collect();
    if let Some(m) = malformation(seq) {
        return SequenceReport {
            verdict: Verdict::unknown(format!("malformed certificate: {m}")),
            steps,
        };
    }
    let top = seq.situations.last().expect("parsed sequences are non-empty");
    let verdict = if let Some(bad) = steps.iter().find(|s| !s.passed()) {
        Verdict::unknown(format!("{bad}"))
    } else if top.core_size() > seq.game.a as usize {
        Verdict::unknown(format!(
            "s_{} needs {} first-turn marks but a = {}",
            seq.situations.len() - 1,
            top.core_size(),
            seq.game.a
        ))
    } else {
        Verdict::maker(Witness::ProofSequence(format!("{} {}", seq.goal.canonical(), seq.game)))
    };
    SequenceReport { verdict, steps }
}

/// Plain games won once the certificate's game is won, up to `max_a` marks.
pub fn derived_game_claims(game: GameSpec, max_a: u32) -> Vec<GameSpec> {
    composed_claims(game, max_a)
        .into_iter()
        .map(|(a, b)| GameSpec { a, b, c: None })
        .collect()
}

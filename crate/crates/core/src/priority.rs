//! Priority strategies for the breaker and their exhaustive verification.
//!
//! For every maker mark the breaker picks a response set from the first
//! matching rule, then spends her marks round-robin over the response sets in
//! the order of the maker marks, taking the highest-priority unmarked cell of
//! the set each time. A set with no unmarked candidate is skipped and its
//! mark goes to the next set.
//!
//! The verifier follows one placement of the goal at a time. The tracked
//! cells are the goal cells plus optional history cells; the maker plays
//! subsets of the empty tracked cells, the breaker answers per the strategy,
//! and a branch dies as soon as the breaker hits an unmarked goal cell. For
//! a mark on a non-goal tracked cell the breaker's reply is unknown, so the
//! maker is granted the reply only if some rule could produce it without
//! touching the goal. The breaker wins when no line leaves the maker able to
//! finish the goal in one turn.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use rayon::prelude::*;

use crate::board::{BoardKind, Cell, Parity, Symmetry};
use crate::bounds::{Verdict, Witness};
use crate::error::{invalid, Error, Result};
use crate::polyform::{Placement, Polyform};
use crate::text::{key_values, parse_cells, read_file, Source};

/// Cells relative to the mark are written as cells; `(dx,dy)` on the square
/// board and `(dx,dy,U|D)` on the triangular one.
pub type Offset = Cell;

fn at(mark: Cell, off: Offset) -> Cell {
    Cell {
        x: mark.x + off.x,
        y: mark.y + off.y,
        o: off.o,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PriorityRule {
    /// `None` matches either parity.
    pub parity: Option<Parity>,
    /// Cells that must be maker-marked for the rule to apply.
    pub require: Vec<Offset>,
    /// Candidate lists, one per response-mark index; the last list serves
    /// all later indices. Each list is `(priority, offset)` sorted by priority.
    pub lists: Vec<Vec<(u32, Offset)>>,
}

impl PriorityRule {
    fn matches_parity(&self, p: Parity) -> bool {
        self.parity.is_none_or(|q| q == p)
    }

    /// Candidate cells in the order tried for the `k`-th mark in the set:
    /// list `k` first, then the other lists.
    fn order(&self, k: usize) -> impl Iterator<Item = &Offset> {
        let first = k.min(self.lists.len().saturating_sub(1));
        self.lists
            .get(first)
            .into_iter()
            .chain(self.lists.iter().enumerate().filter(move |(i, _)| *i != first).map(|(_, l)| l))
            .flat_map(|l| l.iter().map(|(_, o)| o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PriorityStrategy {
    pub board: BoardKind,
    pub a: u32,
    pub b: u32,
    pub per_set: u32,
    pub rules: Vec<PriorityRule>,
    /// History-cell offsets for even and odd goal cells.
    pub history: [Vec<Offset>; 2],
    pub symmetries: Vec<Symmetry>,
    pub name: String,
}

/// Which non-goal cells the maker may use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HistorySpec {
    pub offsets: [Vec<Offset>; 2],
    /// Level 1 adds every response cell of every goal cell.
    pub aux_level: u8,
}

impl HistorySpec {
    pub fn none() -> HistorySpec {
        HistorySpec {
            offsets: [Vec::new(), Vec::new()],
            aux_level: 0,
        }
    }

    pub fn of(strat: &PriorityStrategy) -> HistorySpec {
        HistorySpec {
            offsets: strat.history.clone(),
            aux_level: 0,
        }
    }

    pub fn with_aux(mut self, level: u8) -> HistorySpec {
        self.aux_level = level;
        self
    }

    /// History cells of a placement, excluding the goal cells themselves.
    pub fn cells(&self, strat: &PriorityStrategy, goal: &[Cell]) -> Vec<Cell> {
        let mut out = BTreeSet::new();
        for &g in goal {
            let p = strat.board.parity(g);
            for &off in &self.offsets[p as usize] {
                out.insert(at(g, off));
            }
            if self.aux_level >= 1 {
                for r in strat.rules.iter().filter(|r| r.matches_parity(p)) {
                    for l in &r.lists {
                        out.extend(l.iter().map(|&(_, o)| at(g, o)));
                    }
                }
            }
        }
        out.into_iter().filter(|c| !goal.contains(c)).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Position {
    /// Empty tracked cells.
    pub e: BTreeSet<Cell>,
    pub m: BTreeSet<Cell>,
    pub b: BTreeSet<Cell>,
}

impl PriorityStrategy {
    pub fn rule_for(&self, mark: Cell, maker: &BTreeSet<Cell>) -> Option<usize> {
        let p = self.board.parity(mark);
        self.rules
            .iter()
            .position(|r| r.matches_parity(p) && r.require.iter().all(|&o| maker.contains(&at(mark, o))))
    }

    /// Reads the strategy format.
    pub fn parse(name: &str, text: &str) -> Result<PriorityStrategy> {
        let mut src = Source::new(name, text);
        let board = src.expect_board()?;
        let eof = src.eof_line();
        let gl = src.next_line().ok_or_else(|| src.err(eof, "expected `a=.. b=..`"))?;
        let toks: Vec<&str> = gl.text.split_whitespace().collect();
        let (mut a, mut b, mut per_set) = (None, None, None);
        for (k, v) in key_values(&toks).map_err(|e| src.err(gl.no, e))? {
            let v: u32 = v.parse().map_err(|_| src.err(gl.no, format!("bad number `{v}`")))?;
            match k.as_str() {
                "a" => a = Some(v),
                "b" => b = Some(v),
                "per_set" => per_set = Some(v),
                _ => return Err(src.err(gl.no, format!("unknown key `{k}`"))),
            }
        }
        let (Some(a), Some(b)) = (a, b) else {
            return Err(src.err(gl.no, "need a= and b="));
        };
        if a == 0 {
            return Err(src.err(gl.no, "a must be positive"));
        }
        let per_set = per_set.unwrap_or(b / a);
        if a * per_set > b {
            return Err(src.err(gl.no, format!("a * per_set = {} exceeds b = {b}", a * per_set)));
        }
        let mut rules: Vec<PriorityRule> = Vec::new();
        let mut history: [Vec<Offset>; 2] = [Vec::new(), Vec::new()];
        let mut symmetries = Vec::new();
        let mut in_history = false;
        while let Some(line) = src.next_line() {
            let (kw, rest) = line.text.split_once(char::is_whitespace).unwrap_or((line.text, ""));
            let cells = |s: &str| parse_cells(board, s).map_err(|e| src.err(line.no, e));
            match kw {
                "rule" => {
                    in_history = false;
                    rules.push(PriorityRule {
                        parity: None,
                        require: Vec::new(),
                        lists: Vec::new(),
                    });
                }
                "history" => in_history = true,
                "even" | "odd" if in_history => {
                    history[usize::from(kw == "odd")].extend(cells(rest)?);
                }
                "symmetry" => {
                    let nums: Vec<i32> = rest
                        .split_whitespace()
                        .map(|t| t.parse::<i32>().map_err(|_| src.err(line.no, format!("bad integer `{t}`"))))
                        .collect::<Result<_>>()?;
                    let [m0, m1, m2, m3, t0, t1] = nums[..] else {
                        return Err(src.err(line.no, "symmetry needs 6 integers: m00 m01 m10 m11 tx ty"));
                    };
                    let t = [t0 * board.unit(), t1 * board.unit()];
                    symmetries.push(Symmetry::new(board, [m0, m1, m2, m3], t).map_err(|e| src.err(line.no, e.to_string()))?);
                }
                "parity" | "require" | "respond" => {
                    let r = rules
                        .last_mut()
                        .filter(|_| !in_history)
                        .ok_or_else(|| src.err(line.no, format!("`{kw}` outside a rule")))?;
                    match kw {
                        "parity" => {
                            r.parity = match rest.trim() {
                                "even" => Some(Parity::Even),
                                "odd" => Some(Parity::Odd),
                                "any" => None,
                                p => return Err(src.err(line.no, format!("bad parity `{p}`"))),
                            }
                        }
                        "require" => r.require.extend(cells(rest)?),
                        _ => {
                            for part in rest.split(';') {
                                let l = parse_candidates(board, part).map_err(|e| src.err(line.no, e))?;
                                if l.is_empty() {
                                    return Err(src.err(line.no, "empty candidate list"));
                                }
                                r.lists.push(l);
                            }
                        }
                    }
                }
                _ => return Err(src.err(line.no, format!("unexpected `{}`", line.text))),
            }
        }
        if let Some(i) = rules.iter().position(|r| r.lists.is_empty()) {
            return Err(src.err(eof, format!("rule {} has no `respond` line", i + 1)));
        }
        if rules.is_empty() {
            return Err(src.err(eof, "no rules"));
        }
        let strat = PriorityStrategy {
            board,
            a,
            b,
            per_set,
            rules,
            history,
            symmetries,
            name: Path::new(name)
                .file_stem()
                .map_or_else(|| name.to_string(), |s| s.to_string_lossy().into_owned()),
        };
        strat.check_symmetries().map_err(|e| src.err(eof, e.to_string()))?;
        Ok(strat)
    }

    pub fn load(path: &Path) -> Result<PriorityStrategy> {
        PriorityStrategy::parse(&path.display().to_string(), &read_file(path)?)
    }

    fn reference(&self, p: Parity) -> Cell {
        match (self.board, p) {
            (BoardKind::Square, Parity::Even) => Cell::sq(0, 0),
            (BoardKind::Square, Parity::Odd) => Cell::sq(1, 0),
            (BoardKind::Triangular, Parity::Even) => Cell::up(0, 0),
            (BoardKind::Triangular, Parity::Odd) => Cell::down(0, 0),
        }
    }

    /// Image of an offset seen from a mark of parity `p` under `g`.
    fn map_offset(&self, g: &Symmetry, p: Parity, off: Offset) -> Offset {
        let m = self.reference(p);
        let (gm, gt) = (g.apply(m), g.apply(at(m, off)));
        Cell {
            x: gt.x - gm.x,
            y: gt.y - gm.y,
            o: gt.o,
        }
    }

    /// Confirms that every declared symmetry maps the rule table and the
    /// history generators onto themselves.
    pub fn check_symmetries(&self) -> Result<()> {
        for g in &self.symmetries {
            for p in [Parity::Even, Parity::Odd] {
                let q = self.board.parity(g.apply(self.reference(p)));
                let hist: BTreeSet<Offset> = self.history[p as usize].iter().map(|&o| self.map_offset(g, p, o)).collect();
                if hist != self.history[q as usize].iter().copied().collect() {
                    return Err(invalid("strategy", format!("history generators are not invariant under {g:?}")));
                }
                let mapped: Vec<PriorityRule> = self
                    .rules
                    .iter()
                    .filter(|r| r.matches_parity(p))
                    .map(|r| PriorityRule {
                        parity: Some(q),
                        require: r.require.iter().map(|&o| self.map_offset(g, p, o)).collect(),
                        lists: r
                            .lists
                            .iter()
                            .map(|l| l.iter().map(|&(pr, o)| (pr, self.map_offset(g, p, o))).collect())
                            .collect(),
                    })
                    .collect();
                let target: Vec<PriorityRule> = self.rules.iter().filter(|r| r.matches_parity(q)).cloned().collect();
                let universe: BTreeSet<Offset> = mapped.iter().chain(&target).flat_map(|r| r.require.iter().copied()).collect();
                let universe: Vec<Offset> = universe.into_iter().collect();
                if universe.len() > 16 {
                    return Err(invalid("strategy", "too many distinct required cells to check symmetry"));
                }
                for mask in 0u32..1 << universe.len() {
                    let held: BTreeSet<Offset> = (0..universe.len()).filter(|i| mask >> i & 1 == 1).map(|i| universe[i]).collect();
                    let pick = |rs: &[PriorityRule]| {
                        rs.iter()
                            .find(|r| r.require.iter().all(|o| held.contains(o)))
                            .map(|r| priority_groups(&r.lists))
                    };
                    if pick(&mapped) != pick(&target) {
                        return Err(invalid("strategy", format!("rule table is not invariant under {g:?}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Lists as sequences of equal-priority groups, so tie order does not matter.
fn priority_groups(lists: &[Vec<(u32, Offset)>]) -> Vec<Vec<BTreeSet<Offset>>> {
    lists
        .iter()
        .map(|l| {
            let mut groups: BTreeMap<u32, BTreeSet<Offset>> = BTreeMap::new();
            for &(p, o) in l {
                groups.entry(p).or_default().insert(o);
            }
            groups.into_values().collect()
        })
        .collect()
}

/// Parses `1:(0,1) 1:(0,-1) 2:(1,0)`; entries without a priority get the
/// next free one, so a bare list is a strict order.
fn parse_candidates(board: BoardKind, s: &str) -> std::result::Result<Vec<(u32, Offset)>, String> {
    let mut out = Vec::new();
    let mut next = 1;
    let mut rest = s.trim();
    while !rest.is_empty() {
        let (prio, cell_start) = match rest.find('(') {
            Some(0) => (None, rest),
            Some(i) => {
                let p = rest[..i].trim().trim_end_matches(':');
                (Some(p.parse::<u32>().map_err(|_| format!("bad priority `{p}`"))?), &rest[i..])
            }
            None => return Err(format!("expected a cell at `{rest}`")),
        };
        let end = cell_start.find(')').ok_or_else(|| format!("unclosed cell in `{rest}`"))?;
        let cell = parse_cells(board, &cell_start[..=end])?[0];
        let p = prio.unwrap_or(next);
        next = next.max(p + 1);
        out.push((p, cell));
        rest = cell_start[end + 1..].trim_start();
    }
    out.sort_by_key(|&(p, _)| p);
    Ok(out)
}

/// One response set during a turn.
struct SetState<'r> {
    mark: Cell,
    rule: Option<&'r PriorityRule>,
    placed: usize,
    exhausted: bool,
    /// Stands for an untracked reply; absorbs marks without recording them.
    phantom: bool,
}

/// Round-robin allocation of `budget` marks. `marked` holds every cell that
/// cannot be chosen and grows with the choices.
fn allocate(sets: &mut [SetState<'_>], mut budget: u32, marked: &mut BTreeSet<Cell>) -> Vec<Cell> {
    let mut chosen = Vec::new();
    loop {
        let mut progress = false;
        for s in sets.iter_mut() {
            if budget == 0 {
                return chosen;
            }
            if s.exhausted {
                continue;
            }
            if s.phantom {
                budget -= 1;
                progress = true;
                continue;
            }
            let pick = s
                .rule
                .and_then(|r| r.order(s.placed).map(|&o| at(s.mark, o)).find(|c| !marked.contains(c)));
            match pick {
                Some(c) => {
                    marked.insert(c);
                    chosen.push(c);
                    s.placed += 1;
                    budget -= 1;
                    progress = true;
                }
                None => s.exhausted = true,
            }
        }
        if !progress {
            return chosen;
        }
    }
}

/// The breaker's tracked reply to the maker's marks of this turn.
/// `maker_marks` must already be in the strategy's order.
pub fn breaker_response(pos: &Position, maker_marks: &[Cell], strat: &PriorityStrategy, b: u32) -> Vec<Cell> {
    let maker: BTreeSet<Cell> = pos.m.iter().chain(maker_marks).copied().collect();
    let mut sets: Vec<SetState> = maker_marks
        .iter()
        .map(|&mark| SetState {
            mark,
            rule: strat.rule_for(mark, &maker).map(|i| &strat.rules[i]),
            placed: 0,
            exhausted: false,
            phantom: false,
        })
        .collect();
    let mut marked: BTreeSet<Cell> = maker.iter().chain(&pos.b).copied().collect();
    allocate(&mut sets, b, &mut marked)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TurnOutcome {
    Continue,
    /// The breaker marked this unmarked goal cell.
    Ruined(Cell),
    /// No rule could answer this history-cell mark without hitting the goal.
    Inconsistent(Cell),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub maker: Vec<Cell>,
    /// Rule used for each goal-cell mark.
    pub goal_rules: Vec<(Cell, Option<usize>)>,
    /// Rules consistent with each history-cell mark.
    pub history_rules: Vec<(Cell, Vec<usize>)>,
    pub breaker: Vec<Cell>,
    pub outcome: TurnOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
    pub position: Position,
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = |cs: &[Cell]| cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "turn {}: maker {}", i + 1, cells(&s.maker))?;
            for (c, r) in &s.goal_rules {
                match r {
                    Some(r) => writeln!(f, "  goal {c}: rule {}", r + 1)?,
                    None => writeln!(f, "  goal {c}: no rule")?,
                }
            }
            for (c, rs) in &s.history_rules {
                let rs: Vec<String> = rs.iter().map(|r| (r + 1).to_string()).collect();
                writeln!(f, "  history {c}: consistent rules [{}]", rs.join(","))?;
            }
            writeln!(f, "  breaker {}", cells(&s.breaker))?;
            match &s.outcome {
                TurnOutcome::Continue => {}
                TurnOutcome::Ruined(c) => writeln!(f, "  ruined: breaker took goal cell {c}")?,
                TurnOutcome::Inconsistent(c) => writeln!(f, "  no consistent rule for {c}")?,
            }
        }
        Ok(())
    }
}

/// Plays one maker turn through the strategy on a placement.
fn play_turn(strat: &PriorityStrategy, goal: &BTreeSet<Cell>, pos: &Position, f: &[Cell]) -> (TraceStep, Position) {
    let mut m2 = pos.m.clone();
    m2.extend(f.iter().copied());
    let mut e2 = pos.e.clone();
    for c in f {
        e2.remove(c);
    }
    let open_goal: BTreeSet<Cell> = goal.iter().filter(|c| !m2.contains(c)).copied().collect();
    let mut step = TraceStep {
        maker: f.to_vec(),
        goal_rules: Vec::new(),
        history_rules: Vec::new(),
        breaker: Vec::new(),
        outcome: TurnOutcome::Continue,
    };
    let mut sets = Vec::new();
    let taken: BTreeSet<Cell> = m2.iter().chain(&pos.b).copied().collect();
    for &c in f {
        if goal.contains(&c) {
            let r = strat.rule_for(c, &m2);
            step.goal_rules.push((c, r));
            sets.push(SetState {
                mark: c,
                rule: r.map(|i| &strat.rules[i]),
                placed: 0,
                exhausted: false,
                phantom: false,
            });
        } else {
            let p = strat.board.parity(c);
            let ok: Vec<usize> = strat
                .rules
                .iter()
                .enumerate()
                .filter(|(_, r)| r.matches_parity(p) && r.require.iter().all(|&o| !e2.contains(&at(c, o))))
                .filter(|(_, r)| {
                    let mut alone = [SetState {
                        mark: c,
                        rule: Some(r),
                        placed: 0,
                        exhausted: false,
                        phantom: false,
                    }];
                    let reply = allocate(&mut alone, strat.per_set, &mut taken.clone());
                    reply.iter().all(|x| !open_goal.contains(x))
                })
                .map(|(i, _)| i)
                .collect();
            if ok.is_empty() && step.outcome == TurnOutcome::Continue {
                step.outcome = TurnOutcome::Inconsistent(c);
            }
            step.history_rules.push((c, ok));
            sets.push(SetState {
                mark: c,
                rule: None,
                placed: 0,
                exhausted: false,
                phantom: true,
            });
        }
    }
    let mut marked = taken;
    step.breaker = allocate(&mut sets, strat.per_set * f.len() as u32, &mut marked);
    if step.outcome == TurnOutcome::Continue {
        if let Some(&c) = step.breaker.iter().find(|c| open_goal.contains(c)) {
            step.outcome = TurnOutcome::Ruined(c);
        }
    }
    let mut next = Position { e: e2, m: m2, b: pos.b.clone() };
    for c in &step.breaker {
        next.e.remove(c);
        next.b.insert(*c);
    }
    (step, next)
}

pub fn initial_position(strat: &PriorityStrategy, goal: &[Cell], hist: &HistorySpec) -> Position {
    Position {
        e: goal.iter().copied().chain(hist.cells(strat, goal)).collect(),
        m: BTreeSet::new(),
        b: BTreeSet::new(),
    }
}

/// Replays a maker line on the placement `goal`, stopping after the first
/// turn that is not `Continue`.
pub fn trace_sequence(goal: &[Cell], strat: &PriorityStrategy, hist: &HistorySpec, moves: &[Vec<Cell>]) -> Result<Trace> {
    let g: BTreeSet<Cell> = goal.iter().copied().collect();
    let mut pos = initial_position(strat, goal, hist);
    let mut steps = Vec::new();
    for (t, f) in moves.iter().enumerate() {
        if let Some(c) = f.iter().find(|c| !pos.e.contains(c)) {
            return Err(Error::IllegalMove {
                turn: t + 1,
                msg: format!("{c} is not an empty tracked cell"),
            });
        }
        let mut f = f.clone();
        f.sort();
        f.dedup();
        let (step, next) = play_turn(strat, &g, &pos, &f);
        let stop = step.outcome != TurnOutcome::Continue;
        steps.push(step);
        pos = next;
        if stop {
            break;
        }
    }
    Ok(Trace { steps, position: pos })
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub a: u32,
    pub history: HistorySpec,
    pub stack_cap: usize,
    pub keep_log: bool,
}

impl VerifyOptions {
    pub fn new(strat: &PriorityStrategy) -> VerifyOptions {
        VerifyOptions {
            a: strat.a,
            history: HistorySpec::of(strat),
            stack_cap: 10_000_000,
            keep_log: false,
        }
    }
}

/// One explored transition: position index, maker turn, resulting position
/// index (`None` when the branch was abandoned).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogEntry {
    pub from: usize,
    pub turn: Vec<Cell>,
    pub to: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct PlacementSearch {
    pub placement: Placement,
    pub positions: Vec<Position>,
    pub log: Vec<LogEntry>,
    pub terminal: Vec<usize>,
    /// Maker turns leading to a position where he completes the goal next.
    pub surviving_line: Option<Vec<Vec<Cell>>>,
}

/// A labelled configuration up to the strategy's symmetries.
pub type CanonicalPosition = Vec<(Cell, char)>;

#[derive(Clone, Debug)]
pub struct BreakerReport {
    pub verdict: Verdict,
    pub placements: usize,
    pub positions: usize,
    /// Distinct terminal positions up to symmetry, with multiplicity.
    pub terminal: BTreeMap<CanonicalPosition, usize>,
    pub searches: Vec<PlacementSearch>,
}

fn subsets_up_to(items: &[Cell], k: usize) -> Vec<Vec<Cell>> {
    let mut out = Vec::new();
    fn rec(items: &[Cell], k: usize, start: usize, cur: &mut Vec<Cell>, out: &mut Vec<Vec<Cell>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == k {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

fn search_placement(strat: &PriorityStrategy, placement: &Placement, opts: &VerifyOptions) -> Result<PlacementSearch> {
    let goal: BTreeSet<Cell> = placement.iter().copied().collect();
    let start = initial_position(strat, placement, &opts.history);
    let mut positions = vec![start.clone()];
    let mut parent: Vec<Option<(usize, Vec<Cell>)>> = vec![None];
    let mut index: HashMap<(Vec<Cell>, Vec<Cell>), usize> = HashMap::new();
    let key = |p: &Position| (p.m.iter().copied().collect::<Vec<_>>(), p.b.iter().copied().collect::<Vec<_>>());
    index.insert(key(&start), 0);
    let mut stack = vec![0usize];
    let mut log = Vec::new();
    let mut terminal = Vec::new();
    while let Some(id) = stack.pop() {
        let pos = positions[id].clone();
        let open_goal = goal.iter().filter(|c| pos.e.contains(c)).count();
        if open_goal <= opts.a as usize {
            let mut line = Vec::new();
            let mut cur = id;
            while let Some((p, f)) = &parent[cur] {
                line.push(f.clone());
                cur = *p;
            }
            line.reverse();
            return Ok(PlacementSearch {
                placement: placement.clone(),
                positions,
                log,
                terminal,
                surviving_line: Some(line),
            });
        }
        let empties: Vec<Cell> = pos.e.iter().copied().collect();
        let mut children = 0;
        for f in subsets_up_to(&empties, opts.a as usize) {
            let (step, next) = play_turn(strat, &goal, &pos, &f);
            if step.outcome != TurnOutcome::Continue {
                if opts.keep_log {
                    log.push(LogEntry { from: id, turn: f, to: None });
                }
                continue;
            }
            children += 1;
            let k = key(&next);
            let to = match index.get(&k) {
                Some(&t) => t,
                None => {
                    if positions.len() >= opts.stack_cap {
                        return Err(Error::ResourceLimit(format!(
                            "more than {} positions for placement {placement:?}",
                            opts.stack_cap
                        )));
                    }
                    let t = positions.len();
                    positions.push(next);
                    parent.push(Some((id, f.clone())));
                    index.insert(k, t);
                    stack.push(t);
                    t
                }
            };
            if opts.keep_log {
                log.push(LogEntry { from: id, turn: f, to: Some(to) });
            }
        }
        if children == 0 {
            terminal.push(id);
        }
    }
    Ok(PlacementSearch {
        placement: placement.clone(),
        positions,
        log,
        terminal,
        surviving_line: None,
    })
}

/// Symmetries used to identify placements and terminal positions: the
/// declared group, with translations that preserve parity.
struct Reducer {
    board: BoardKind,
    group: Vec<Symmetry>,
}

impl Reducer {
    fn new(strat: &PriorityStrategy) -> Reducer {
        let board = strat.board;
        let class = |g: &Symmetry| (g.linear(), board.parity(g.apply(strat.reference(Parity::Even))));
        let mut group = vec![Symmetry::identity(board)];
        let mut seen: BTreeSet<_> = group.iter().map(class).collect();
        let mut i = 0;
        while i < group.len() {
            for s in &strat.symmetries {
                let h = s.compose(&group[i]);
                if seen.insert(class(&h)) {
                    group.push(h);
                }
            }
            i += 1;
        }
        Reducer { board, group }
    }

    /// Translate so the least cell lands on `(0,0)` or `(1,0)` keeping parity.
    fn normalize(&self, cells: &mut [(Cell, char)]) {
        cells.sort();
        let c0 = cells[0].0;
        let px = match self.board {
            BoardKind::Square => (c0.x + c0.y).rem_euclid(2),
            BoardKind::Triangular => 0,
        };
        for (c, _) in cells.iter_mut() {
            *c = c.shifted(px - c0.x, -c0.y);
        }
        cells.sort();
    }

    fn canonical(&self, cells: &[(Cell, char)]) -> CanonicalPosition {
        self.group
            .iter()
            .map(|g| {
                let mut v: Vec<(Cell, char)> = cells.iter().map(|&(c, l)| (g.apply(c), l)).collect();
                self.normalize(&mut v);
                v
            })
            .min()
            .expect("group contains the identity")
    }
}

/// Position labels: goal cells `G` (empty), `M` (maker), other tracked
/// cells `h`/`m`, breaker cells `B`.
fn labelled(goal: &BTreeSet<Cell>, p: &Position) -> Vec<(Cell, char)> {
    let mut out = Vec::new();
    for &c in &p.e {
        out.push((c, if goal.contains(&c) { 'G' } else { 'h' }));
    }
    for &c in &p.m {
        out.push((c, if goal.contains(&c) { 'M' } else { 'm' }));
    }
    for &c in &p.b {
        out.push((c, 'B'));
    }
    out
}

/// Placements checked by the verifier: every orientation at both parity
/// classes of anchor, reduced by the declared symmetries.
pub fn placements_to_check(goal: &Polyform, strat: &PriorityStrategy) -> Vec<Placement> {
    let r = Reducer::new(strat);
    let shifts: &[(i32, i32)] = match goal.board() {
        BoardKind::Square => &[(0, 0), (1, 0)],
        BoardKind::Triangular => &[(0, 0)],
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for img in goal.images() {
        for &(dx, dy) in shifts {
            let p: Placement = img.cells().iter().map(|c| c.shifted(dx, dy)).collect();
            let key = r.canonical(&p.iter().map(|&c| (c, 'G')).collect::<Vec<_>>());
            if seen.insert(key) {
                out.push(p);
            }
        }
    }
    out
}

pub fn verify_breaker(goal: &Polyform, strat: &PriorityStrategy, opts: &VerifyOptions) -> Result<BreakerReport> {
    if goal.board() != strat.board {
        return Err(invalid("strategy", "goal and strategy are on different boards"));
    }
    strat.check_symmetries()?;
    let placements = placements_to_check(goal, strat);
    let searches: Vec<PlacementSearch> = placements
        .par_iter()
        .map(|p| search_placement(strat, p, opts))
        .collect::<Result<_>>()?;
    let reducer = Reducer::new(strat);
    let mut terminal = BTreeMap::new();
    for s in &searches {
        let g: BTreeSet<Cell> = s.placement.iter().copied().collect();
        for &t in &s.terminal {
            *terminal.entry(reducer.canonical(&labelled(&g, &s.positions[t]))).or_insert(0) += 1;
        }
    }
    let positions = searches.iter().map(|s| s.positions.len()).sum();
    let verdict = match searches.iter().find(|s| s.surviving_line.is_some()) {
        Some(s) => {
            let line: Vec<String> = s
                .surviving_line
                .as_ref()
                .unwrap()
                .iter()
                .map(|f| f.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            let pl: Vec<String> = s.placement.iter().map(|c| c.to_string()).collect();
            Verdict::unknown(format!("maker survives on {} via [{}]", pl.join(" "), line.join(" | ")))
        }
        None => Verdict::breaker(Witness::Priority(strat.name.clone())),
    };
    Ok(BreakerReport {
        verdict,
        placements: placements.len(),
        positions,
        terminal,
        searches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidates_with_and_without_priorities() {
        let l = parse_candidates(BoardKind::Square, "2:(1,0) 1:(0,1) 1:(0,-1)").unwrap();
        assert_eq!(l.iter().map(|x| x.0).collect::<Vec<_>>(), vec![1, 1, 2]);
        assert_eq!(l[0].1, Cell::sq(0, 1));
        let l = parse_candidates(BoardKind::Square, "(1,0) (0,1)").unwrap();
        assert_eq!(l, vec![(1, Cell::sq(1, 0)), (2, Cell::sq(0, 1))]);
        assert!(parse_candidates(BoardKind::Square, "x:(1,0)").is_err());
    }

    #[test]
    fn subsets_include_every_size() {
        let cs = [Cell::sq(0, 0), Cell::sq(1, 0), Cell::sq(2, 0)];
        assert_eq!(subsets_up_to(&cs, 2).len(), 6);
        assert_eq!(subsets_up_to(&cs, 1).len(), 3);
    }
}

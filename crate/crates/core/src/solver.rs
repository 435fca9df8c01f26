//! Exhaustive game-tree search on a bounded window.
//!
//! The search only ever proves maker wins. Breaker marks outside the window
//! are modelled by letting her place fewer than `b` marks inside it, so a
//! maker win on the window is a maker win on the infinite board. The maker's
//! own moves may be restricted heuristically without affecting soundness.

use std::collections::HashMap;

use crate::board::{Cell, Window};
use crate::bounds::{GameSpec, Verdict, Witness};
use crate::error::{invalid, Error, Result};
use crate::polyform::Polyform;

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub window: Window,
    pub game: GameSpec,
    pub goal: Polyform,
    /// Maker turns, counting the winning one.
    pub max_turns: u32,
    /// Let the breaker place fewer than `b` marks; never helps her, kept as
    /// the literal model of marks placed outside the window.
    pub breaker_all_sizes: bool,
    /// After the first turn the maker only marks cells of live placements
    /// that already hold one of his marks.
    pub focus: bool,
    pub node_cap: u64,
}

impl SolveConfig {
    /// 7x7 square or 6x6 triangular window, 6 turns.
    pub fn new(goal: Polyform, game: GameSpec) -> SolveConfig {
        let window = match goal.board() {
            crate::BoardKind::Square => Window::sized(goal.board(), 7, 7),
            crate::BoardKind::Triangular => Window::sized(goal.board(), 6, 6),
        }
        .expect("positive size");
        SolveConfig {
            window,
            game,
            goal,
            max_turns: 6,
            breaker_all_sizes: true,
            focus: true,
            node_cap: 50_000_000,
        }
    }

    pub fn label(&self) -> String {
        let w = &self.window;
        format!(
            "{} {} on {}x{} window, {} turns",
            self.game,
            self.goal.cells().iter().map(|c| c.to_string()).collect::<String>(),
            w.x1 - w.x0 + 1,
            w.y1 - w.y0 + 1,
            self.max_turns
        )
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub verdict: Verdict,
    /// Fewest maker turns that force the goal, when found.
    pub turns: Option<u32>,
    pub nodes: u64,
}

type Mask = u128;

#[derive(Clone, Copy, Default)]
struct Memo {
    /// Smallest turn budget known to win.
    win: Option<u8>,
    /// Largest turn budget known not to win.
    lose: Option<u8>,
}

struct Search<'a> {
    cfg: &'a SolveConfig,
    placements: Vec<Mask>,
    perms: Vec<Vec<u8>>,
    memo: HashMap<(Mask, Mask), Memo>,
    nodes: u64,
}

fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

/// Window symmetries as index permutations, identity first.
fn window_perms(window: &Window, cells: &[Cell]) -> Vec<Vec<u8>> {
    let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut perms: Vec<Vec<u8>> = Vec::new();
    for g in window.board.point_group() {
        let img: Vec<Cell> = cells.iter().map(|&c| g.apply(c)).collect();
        let lo = img.iter().min().expect("window is non-empty");
        let (dx, dy) = (cells[0].x - lo.x, cells[0].y - lo.y);
        let perm: Option<Vec<u8>> = img
            .iter()
            .map(|c| index.get(&c.shifted(dx, dy)).map(|&i| i as u8))
            .collect();
        if let Some(p) = perm {
            if !perms.contains(&p) {
                perms.push(p);
            }
        }
    }
    perms.sort_by_key(|p| p.iter().enumerate().any(|(i, &j)| i != j as usize));
    perms
}

fn permute(m: Mask, perm: &[u8]) -> Mask {
    bits(m).fold(0, |acc, i| acc | 1 << perm[i])
}

/// All `k`-subsets of `items`, in lexicographic order of positions.
fn choose(items: &[usize], k: usize, mut f: impl FnMut(Mask) -> bool) -> bool {
    fn rec(items: &[usize], k: usize, start: usize, acc: Mask, f: &mut dyn FnMut(Mask) -> bool) -> bool {
        if k == 0 {
            return f(acc);
        }
        for i in start..=items.len() - k {
            if !rec(items, k - 1, i + 1, acc | 1 << items[i], f) {
                return false;
            }
        }
        true
    }
    if k > items.len() {
        return true;
    }
    rec(items, k, 0, 0, &mut f)
}

impl Search<'_> {
    fn canonical(&self, m: Mask, b: Mask) -> (Mask, Mask) {
        self.perms
            .iter()
            .map(|p| (permute(m, p), permute(b, p)))
            .min()
            .expect("identity is present")
    }

    fn live(&self, b: Mask) -> impl Iterator<Item = Mask> + '_ {
        self.placements.iter().copied().filter(move |&p| p & b == 0)
    }

    /// Cells ranked by how many live placements use them, weighted by the
    /// maker marks already in those placements.
    fn ranked(&self, m: Mask, b: Mask, within: Mask) -> Vec<usize> {
        let mut score = [0u32; 128];
        for p in self.live(b) {
            let w = 1 + 4 * (p & m).count_ones();
            for i in bits(p & within) {
                score[i] += w;
            }
        }
        let mut cells: Vec<usize> = bits(within).collect();
        cells.sort_by_key(|&i| (std::cmp::Reverse(score[i]), i));
        cells
    }

    fn maker_wins(&mut self, m: Mask, b: Mask, turns: u32) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.cfg.node_cap {
            return Err(Error::ResourceLimit(format!(
                "solver exceeded {} nodes on {}",
                self.cfg.node_cap,
                self.cfg.label()
            )));
        }
        let (a, fin) = (self.cfg.game.a, self.cfg.game.final_marks());
        let mut open: Mask = 0;
        let mut near: Mask = 0;
        for p in self.live(b) {
            if (p & !m).count_ones() <= fin {
                return Ok(true);
            }
            open |= p & !m;
            if p & m != 0 {
                near |= p & !m;
            }
        }
        if turns <= 1 || open == 0 {
            return Ok(false);
        }
        let key = self.canonical(m, b);
        let t = turns as u8;
        if let Some(e) = self.memo.get(&key) {
            if e.win.is_some_and(|w| w <= t) {
                return Ok(true);
            }
            if e.lose.is_some_and(|l| l >= t) {
                return Ok(false);
            }
        }
        let pool = if self.cfg.focus && near != 0 { near } else { open };
        let cand = self.ranked(m, b, pool);
        let k = (a as usize).min(cand.len());
        let mut won = false;
        let mut err = None;
        choose(&cand, k, |f| match self.breaker_refutes(m | f, b, turns) {
            Ok(true) => true,
            Ok(false) => {
                won = true;
                false
            }
            Err(e) => {
                err = Some(e);
                false
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        let e = self.memo.entry(key).or_default();
        if won {
            e.win = Some(e.win.map_or(t, |w| w.min(t)));
        } else {
            e.lose = Some(e.lose.map_or(t, |l| l.max(t)));
        }
        Ok(won)
    }

    /// Whether some breaker reply stops the maker after he played to `m`.
    fn breaker_refutes(&mut self, m: Mask, b: Mask, turns: u32) -> Result<bool> {
        let fin = self.cfg.game.final_marks();
        let mut open: Mask = 0;
        let mut threats = Vec::new();
        for p in self.live(b) {
            open |= p & !m;
            if (p & !m).count_ones() <= fin {
                threats.push(p & !m);
            }
        }
        if open == 0 {
            return Ok(true);
        }
        let bmax = self.cfg.game.b as usize;
        if turns == 2 {
            // The maker's next turn is his last: only the threats matter.
            return Ok(hitting_set_within(&threats, bmax));
        }
        let cand = self.ranked(m, b, open);
        let bmax = bmax.min(cand.len());
        let sizes: Vec<usize> = if self.cfg.breaker_all_sizes {
            (0..=bmax).rev().collect()
        } else {
            vec![bmax]
        };
        let mut refuted = false;
        let mut err = None;
        for k in sizes {
            choose(&cand, k, |x| {
                if threats.iter().any(|&t| t & x == 0) {
                    return true;
                }
                match self.maker_wins(m, b | x, turns - 1) {
                    Ok(true) => true,
                    Ok(false) => {
                        refuted = true;
                        false
                    }
                    Err(e) => {
                        err = Some(e);
                        false
                    }
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            if refuted {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Whether at most `k` cells meet every set in `sets`.
fn hitting_set_within(sets: &[Mask], k: usize) -> bool {
    fn rec(sets: &[Mask], hit: Mask, k: usize) -> bool {
        let Some(&open) = sets.iter().find(|&&s| s & hit == 0) else {
            return true;
        };
        k > 0 && bits(open).any(|i| rec(sets, hit | 1 << i, k - 1))
    }
    rec(sets, 0, k)
}

/// Placements of the goal inside the window, as masks over `cells`.
fn window_placements(goal: &Polyform, window: &Window, cells: &[Cell]) -> Vec<Mask> {
    let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut out = Vec::new();
    for img in goal.images() {
        for c in cells {
            let anchor = img.cells()[0];
            let (dx, dy) = (c.x - anchor.x, c.y - anchor.y);
            let mask: Option<Mask> = img
                .cells()
                .iter()
                .map(|p| {
                    let q = p.shifted(dx, dy);
                    if window.contains(q) {
                        index.get(&q).map(|&i| 1 << i)
                    } else {
                        None
                    }
                })
                .sum();
            if let Some(m) = mask {
                out.push(m);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn solve(cfg: &SolveConfig) -> Result<SolveReport> {
    if cfg.goal.board() != cfg.window.board {
        return Err(invalid("solver", "goal and window are on different boards"));
    }
    let cells = cfg.window.cells();
    if cells.len() > 128 {
        return Err(invalid("solver", format!("window has {} cells, at most 128 supported", cells.len())));
    }
    let placements = window_placements(&cfg.goal, &cfg.window, &cells);
    if placements.is_empty() {
        return Err(invalid("solver", "the goal does not fit in the window"));
    }
    if cfg.max_turns == 0 || cfg.max_turns > u8::MAX as u32 {
        return Err(invalid("solver", "max_turns must be in 1..=255"));
    }
    let mut s = Search {
        cfg,
        placements,
        perms: window_perms(&cfg.window, &cells),
        memo: HashMap::new(),
        nodes: 0,
    };
    for t in 1..=cfg.max_turns {
        if s.maker_wins(0, 0, t)? {
            return Ok(SolveReport {
                verdict: Verdict::maker(Witness::Solver(cfg.label())),
                turns: Some(t),
                nodes: s.nodes,
            });
        }
    }
    Ok(SolveReport {
        verdict: Verdict::unknown(format!("no forced win within {} turns on the window", cfg.max_turns)),
        turns: None,
        nodes: s.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::BoardKind;
    use crate::bounds::Status;

    #[test]
    fn square_window_has_eight_symmetries() {
        let w = Window::sized(BoardKind::Square, 4, 4).unwrap();
        assert_eq!(window_perms(&w, &w.cells()).len(), 8);
        let w = Window::sized(BoardKind::Square, 4, 3).unwrap();
        assert_eq!(window_perms(&w, &w.cells()).len(), 4);
    }

    #[test]
    fn choose_counts() {
        let mut n = 0;
        choose(&[0, 1, 2, 3, 4], 2, |_| {
            n += 1;
            true
        });
        assert_eq!(n, 10);
        let mut n = 0;
        choose(&[0, 1], 0, |m| {
            assert_eq!(m, 0);
            n += 1;
            true
        });
        assert_eq!(n, 1);
    }

    #[test]
    fn hitting_sets() {
        let sets = [0b0011, 0b0110, 0b1100];
        assert!(hitting_set_within(&sets, 2));
        assert!(!hitting_set_within(&sets, 1));
        assert!(hitting_set_within(&[], 0));
        assert!(!hitting_set_within(&[0b1, 0b10], 1));
    }

    #[test]
    fn monomino_is_won_at_once() {
        let goal = Polyform::new(BoardKind::Square, [Cell::sq(0, 0)]).unwrap();
        let cfg = SolveConfig::new(goal, GameSpec::plain(1, 9).unwrap());
        let r = solve(&cfg).unwrap();
        assert_eq!(r.verdict.status(), Status::MakerWins);
        assert_eq!(r.turns, Some(1));
    }

    #[test]
    fn domino_with_four_breaker_marks_is_not_won() {
        let goal = crate::polyform::named("P21").unwrap();
        let mut cfg = SolveConfig::new(goal, GameSpec::plain(1, 4).unwrap());
        cfg.window = Window::sized(BoardKind::Square, 4, 4).unwrap();
        cfg.max_turns = 4;
        assert_eq!(solve(&cfg).unwrap().verdict.status(), Status::Unknown);
    }
}

//! The window solver against a plain minimax without memo, symmetry or
//! move pruning.

use proptest::prelude::*;

use polygame::board::{BoardKind, Window};
use polygame::bounds::{GameSpec, Status};
use polygame::polyform::{enumerate, named, Polyform};
use polygame::solver::{solve, SolveConfig};

struct Naive {
    cells: usize,
    placements: Vec<u64>,
    a: u32,
    b: u32,
    c: Option<u32>,
}

fn subsets(free: u64, k: u32, f: &mut dyn FnMut(u64) -> bool) -> bool {
    fn rec(bits: &[u64], k: u32, start: usize, acc: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if k == 0 {
            return f(acc);
        }
        for i in start..bits.len() {
            if rec(bits, k - 1, i + 1, acc | bits[i], f) {
                return true;
            }
        }
        false
    }
    let bits: Vec<u64> = (0..64).map(|i| 1u64 << i).filter(|b| free & b != 0).collect();
    let k = k.min(bits.len() as u32);
    rec(&bits, k, 0, 0, f)
}

impl Naive {
    fn new(goal: &Polyform, window: &Window, game: GameSpec) -> Naive {
        let cells = window.cells();
        let mut placements = Vec::new();
        for img in goal.images() {
            for dx in -12..12 {
                for dy in -12..12 {
                    let mut mask = 0u64;
                    let mut inside = true;
                    for c in img.cells() {
                        match cells.iter().position(|&w| w == c.shifted(dx, dy)) {
                            Some(i) => mask |= 1 << i,
                            None => inside = false,
                        }
                    }
                    if inside && !placements.contains(&mask) {
                        placements.push(mask);
                    }
                }
            }
        }
        Naive {
            cells: cells.len(),
            placements,
            a: game.a,
            b: game.b,
            c: game.c,
        }
    }

    /// The maker may declare any turn his last and place `c` marks on it.
    fn maker_wins(&self, m: u64, b: u64, turns: u32) -> bool {
        let last = self.c.unwrap_or(self.a);
        if self.placements.iter().any(|&p| p & b == 0 && (p & !m).count_ones() <= last) {
            return true;
        }
        if turns == 1 {
            return false;
        }
        let all = (1u64 << self.cells) - 1;
        subsets(all & !m & !b, self.a, &mut |f| {
            let m2 = m | f;
            !subsets(all & !m2 & !b, self.b, &mut |r| !self.maker_wins(m2, b | r, turns - 1))
        })
    }
}

fn config(goal: &Polyform, game: GameSpec, w: u32, h: u32, turns: u32) -> SolveConfig {
    let mut cfg = SolveConfig::new(goal.clone(), game);
    cfg.window = Window::sized(goal.board(), w, h).unwrap();
    cfg.max_turns = turns;
    cfg
}

fn small_goals() -> Vec<Polyform> {
    let mut out = enumerate(BoardKind::Square, 3);
    out.extend(enumerate(BoardKind::Triangular, 3));
    out
}

#[test]
fn known_small_cases() {
    // Two in a row with one breaker mark is won on a 3x3 board in 2 turns.
    let domino = named("P21").unwrap();
    let cfg = config(&domino, GameSpec::plain(1, 1).unwrap(), 3, 3, 2);
    assert_eq!(solve(&cfg).unwrap().verdict.status(), Status::MakerWins);
    // With one turn only the monomino can be completed.
    let cfg = config(&domino, GameSpec::plain(1, 0).unwrap(), 3, 3, 1);
    assert_eq!(solve(&cfg).unwrap().verdict.status(), Status::Unknown);
    let cfg = config(&domino, GameSpec::new(1, 0, Some(2)).unwrap(), 3, 3, 1);
    assert_eq!(solve(&cfg).unwrap().verdict.status(), Status::MakerWins);
}

#[test]
fn oversized_windows_and_goals_are_rejected() {
    let p = named("P41").unwrap();
    assert!(solve(&config(&p, GameSpec::plain(1, 1).unwrap(), 12, 11, 2)).is_err());
    assert!(solve(&config(&p, GameSpec::plain(1, 1).unwrap(), 3, 3, 2)).is_err());
}

#[test]
fn node_cap_is_a_resource_error() {
    let mut cfg = config(&named("P41").unwrap(), GameSpec::plain(1, 1).unwrap(), 6, 6, 6);
    cfg.node_cap = 100;
    assert!(matches!(solve(&cfg), Err(polygame::Error::ResourceLimit(_))));
}

#[test]
fn exhaustive_sweep_agrees_with_plain_minimax() {
    let (mut wins, mut losses) = (0, 0);
    for goal in small_goals() {
        let (w, h) = if goal.board() == BoardKind::Square { (4, 3) } else { (3, 3) };
        for (a, b) in [(1, 0), (1, 1), (1, 2), (2, 2), (2, 3)] {
            for turns in 1..=3 {
                let game = GameSpec::plain(a, b).unwrap();
                let mut cfg = config(&goal, game, w, h, turns);
                cfg.focus = false;
                let expected = Naive::new(&goal, &cfg.window, game).maker_wins(0, 0, turns);
                let got = solve(&cfg).unwrap().verdict.status() == Status::MakerWins;
                assert_eq!(got, expected, "{goal} {game} in {turns} turns");
                if expected {
                    wins += 1;
                } else {
                    losses += 1;
                }
            }
        }
    }
    assert!(wins > 10 && losses > 10, "{wins} wins, {losses} losses");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Without pruning the solver agrees with the plain minimax; with
    /// pruning its wins are still real.
    #[test]
    fn solver_matches_plain_minimax(
        gi in 0usize..64,
        a in 1u32..=2,
        b in 0u32..=2,
        c in prop::option::of(1u32..=3),
        w in 3u32..=4,
        turns in 1u32..=3,
    ) {
        let goals = small_goals();
        let goal = &goals[gi % goals.len()];
        let h = if goal.board() == BoardKind::Square { 3 } else { 2 };
        let game = match c {
            Some(c) if c > a => GameSpec::new(a, b, Some(c)).unwrap(),
            _ => GameSpec::plain(a, b).unwrap(),
        };
        let mut cfg = config(goal, game, w, h, turns);
        let window = cfg.window;
        let naive = Naive::new(goal, &window, game);
        prop_assume!(!naive.placements.is_empty());
        let expected = naive.maker_wins(0, 0, turns);
        cfg.focus = false;
        let full = solve(&cfg).unwrap().verdict.status() == Status::MakerWins;
        prop_assert_eq!(full, expected, "{} {} on {}x{} in {} turns", goal, game, w, h, turns);
        cfg.focus = true;
        let pruned = solve(&cfg).unwrap().verdict.status() == Status::MakerWins;
        prop_assert!(!pruned || expected);
    }

    /// Letting the breaker place fewer marks never changes the result.
    #[test]
    fn breaker_mark_count_is_monotone(gi in 0usize..64, b in 0u32..=3, turns in 1u32..=3) {
        let goals = small_goals();
        let goal = &goals[gi % goals.len()];
        let game = GameSpec::plain(1, b).unwrap();
        let mut cfg = config(goal, game, 4, 4, turns);
        let exact = { cfg.breaker_all_sizes = false; solve(&cfg).unwrap().verdict.status() };
        let all = { cfg.breaker_all_sizes = true; solve(&cfg).unwrap().verdict.status() };
        prop_assert_eq!(exact, all);
    }

    /// A win on a window is a win on any larger window.
    #[test]
    fn wins_survive_larger_windows(
        gi in 0usize..64,
        b in 0u32..=2,
        w in 3u32..=4,
        h in 3u32..=4,
        grow in (0u32..=2, 0u32..=2),
    ) {
        let goals = small_goals();
        let goal = &goals[gi % goals.len()];
        let game = GameSpec::plain(1, b).unwrap();
        let small = config(goal, game, w, h, 3);
        let big = config(goal, game, w + grow.0, h + grow.1, 3);
        if let Ok(r) = solve(&small) {
            if r.verdict.status() == Status::MakerWins {
                prop_assert_eq!(solve(&big).unwrap().verdict.status(), Status::MakerWins);
                prop_assert!(solve(&big).unwrap().turns <= r.turns);
            }
        }
    }
}

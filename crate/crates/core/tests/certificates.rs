use std::path::{Path, PathBuf};

use proptest::prelude::*;

use polygame::board::{BoardKind, Cell};
use polygame::bounds::{GameSpec, Status};
use polygame::paving::Paving;
use polygame::polyform::{enumerate, named, Polyform};
use polygame::proofseq::{derived_game_claims, verify_sequence, verify_step, ProofSequence, StepFailure};

fn catalog(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog").join(rel)
}

const PROOFS: [&str; 6] = ["T31_1_1", "T31_2_5", "T41_2_3", "T42_2_3", "P42_2_5", "P44_1to2_1"];
const PAVINGS: [&str; 6] = ["tri_T11", "tri_T12", "tri_T21", "sq_T11", "sq_T21", "sq_T22"];

fn proof(name: &str) -> ProofSequence {
    ProofSequence::load(&catalog(&format!("proofs/{name}.txt"))).unwrap()
}

fn paving(name: &str) -> Paving {
    Paving::load(&catalog(&format!("pavings/{name}.txt"))).unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn certificates_verify() {
    for name in PROOFS {
        let r = verify_sequence(&proof(name));
        assert_eq!(r.verdict.status(), Status::MakerWins, "{name}: {}", r.verdict);
        assert!(r.steps.iter().all(|s| s.passed()));
    }
}

#[test]
fn single_step_breaker_choices_are_all_enumerated() {
    // One step from twelve open cells against five breaker marks.
    let seq = proof("T31_2_5");
    assert_eq!(seq.situations.len(), 2);
    let open = seq.situations[1].open_size() as u64;
    assert_eq!(open, 12);
    assert_eq!(verify_step(&seq, 1).breaker_sets as u64, binomial(open, 5));
}

#[test]
fn certificates_round_trip_through_text() {
    for name in PROOFS {
        let seq = proof(name);
        let dir = std::env::temp_dir().join(format!("polygame-cert-{}-{name}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("goal.txt"), seq.goal.to_file_string()).unwrap();
        let back = ProofSequence::parse(name, &seq.to_file_string("goal.txt"), &dir);
        std::fs::remove_dir_all(&dir).unwrap();
        assert_eq!(back.unwrap(), seq, "{name}");
    }
}

#[test]
fn malformed_certificates_name_the_line() {
    let dir = catalog("proofs");
    let bad = "game a=1 b=1\ngoal ../polyforms/T31.txt\nsituation\ncomponent\ncore: (0,0,U) (0,0,Q)\n";
    let e = ProofSequence::parse("bad", bad, &dir).unwrap_err();
    assert!(e.to_string().starts_with("bad:5:"), "{e}");
    let e = ProofSequence::parse("bad", "game a=1\n", &dir).unwrap_err();
    assert!(e.to_string().starts_with("bad:1:"), "{e}");
}

#[test]
fn a_certificate_for_a_lost_game_fails_with_a_refutation() {
    // The breaker wins (2,6) on the three-triangle strip, so the (2,5)
    // certificate must break when she gets a sixth mark.
    let mut seq = proof("T31_2_5");
    seq.game = GameSpec::plain(2, 6).unwrap();
    let r = verify_sequence(&seq);
    assert_eq!(r.verdict.status(), Status::Unknown);
    match &r.steps[0].failure {
        Some(StepFailure::Violation(cells)) => assert_eq!(cells.len(), 6),
        other => panic!("expected a refuting breaker choice, got {other:?}"),
    }
}

#[test]
fn derived_claims_from_the_composed_game() {
    let g = GameSpec::parse("1->2,1").unwrap();
    let got: Vec<String> = derived_game_claims(g, 3).iter().map(|g| g.to_string()).collect();
    assert_eq!(got, vec!["(2,3)", "(3,5)"]);
}

#[test]
fn pavings_have_the_listed_degrees() {
    for (name, degree) in [("tri_T11", 1), ("tri_T12", 1), ("tri_T21", 2), ("sq_T11", 1), ("sq_T21", 2), ("sq_T22", 2)] {
        assert_eq!(paving(name).degree(), degree, "{name}");
    }
}

#[test]
fn pavings_miss_the_animals_they_are_not_meant_for() {
    // A degree-one paving cannot stop every domino.
    let r = paving("sq_T11").defeats(&named("P21").unwrap());
    assert_eq!(r.verdict.status(), Status::Unknown);
    assert!(r.counterexample.is_some());
    let r = paving("tri_T11").defeats(&named("P21").unwrap());
    assert_eq!(r.verdict.status(), Status::Unknown);
}

/// Independent check: every placement near the origin contains a pair,
/// with pairs expanded explicitly over a block of periods.
fn brute_defeats(period: [[i32; 2]; 2], pairs: &[(Cell, Cell)], goal: &Polyform) -> bool {
    // Generous enough to cover every cell within distance 16 of the origin
    // for the sheared periods generated below.
    let mut rel = std::collections::HashSet::new();
    for i in -60..=60 {
        for j in -20..=20 {
            let t = [i * period[0][0] + j * period[1][0], i * period[0][1] + j * period[1][1]];
            for &(u, v) in pairs {
                let (u, v) = (u.shifted(t[0], t[1]), v.shifted(t[0], t[1]));
                rel.insert((u, v));
                rel.insert((v, u));
            }
        }
    }
    let span = period.iter().flatten().map(|x| x.abs()).sum::<i32>() + 1;
    for img in goal.images() {
        for dx in -span..=span {
            for dy in -span..=span {
                let p: Vec<Cell> = img.cells().iter().map(|c| c.shifted(dx, dy)).collect();
                let paired = p.iter().any(|&u| p.iter().any(|&v| rel.contains(&(u, v))));
                if !paired {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn explicit_expansion_agrees_on_known_pavings() {
    let pairs = [(Cell::sq(0, 0), Cell::sq(0, 1))];
    let period = [[1, 0], [0, 1]];
    let p = Paving::new(BoardKind::Square, period, &pairs).unwrap();
    assert_eq!(p, Paving::parse("", "board square\nperiod (1,0) (0,1)\npair (0,0) (0,1)\n").unwrap());
    for (name, wins) in [("P21", false), ("P31", false), ("P32", true), ("P44", true)] {
        let goal = named(name).unwrap();
        assert_eq!(brute_defeats(period, &pairs, &goal), wins, "{name}");
        assert_eq!(p.defeats(&goal).verdict.status() == Status::BreakerWins, wins, "{name}");
    }
}

fn arb_paving() -> impl Strategy<Value = (BoardKind, [[i32; 2]; 2], Vec<(Cell, Cell)>)> {
    let board = prop_oneof![Just(BoardKind::Square), Just(BoardKind::Triangular)];
    (board, 1i32..4, 0i32..3, 1i32..4, prop::collection::vec((0i32..4, 0i32..4, 0usize..3, any::<bool>()), 1..5)).prop_map(
        |(board, p, k, q, raw)| {
            let period = [[p, 0], [k, q]];
            let pairs = raw
                .into_iter()
                .map(|(x, y, n, up)| {
                    let u = match board {
                        BoardKind::Square => Cell::sq(x, y),
                        BoardKind::Triangular if up => Cell::up(x, y),
                        BoardKind::Triangular => Cell::down(x, y),
                    };
                    let ns = board.neighbors(u);
                    (u, ns[n % ns.len()])
                })
                .collect();
            (board, period, pairs)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn certificates_survive_board_symmetries(i in 0usize..6, gi in 0usize..12, dx in -5i32..5, dy in -5i32..5) {
        let seq = proof(PROOFS[i]);
        let group = seq.goal.board().point_group();
        let g = group[gi % group.len()].with_shift_cells(dx, dy);
        let moved = seq.transformed(&g);
        prop_assert_eq!(verify_sequence(&moved).verdict.status(), Status::MakerWins);
    }

    #[test]
    fn relation_is_symmetric_and_periodic(
        (board, period, pairs) in arb_paving(),
        x in -9i32..9, y in -9i32..9, up in any::<bool>(), i in -3i32..3, j in -3i32..3,
    ) {
        let p = Paving::new(board, period, &pairs).unwrap();
        let c = match board {
            BoardKind::Square => Cell::sq(x, y),
            BoardKind::Triangular if up => Cell::up(x, y),
            BoardKind::Triangular => Cell::down(x, y),
        };
        let t = [i * period[0][0] + j * period[1][0], i * period[0][1] + j * period[1][1]];
        let shifted: std::collections::BTreeSet<Cell> =
            p.partners(c).iter().map(|v| v.shifted(t[0], t[1])).collect();
        prop_assert_eq!(p.partners(c.shifted(t[0], t[1])), shifted);
        for v in p.partners(c) {
            prop_assert!(p.related(v, c));
        }
        prop_assert!(p.partners(c).len() <= p.degree());
    }

    #[test]
    fn periodic_reduction_matches_explicit_expansion(
        (board, period, pairs) in arb_paving(),
        gi in 0usize..32,
    ) {
        let p = Paving::new(board, period, &pairs).unwrap();
        let goals: Vec<Polyform> = enumerate(board, 4);
        let goal = &goals[gi % goals.len()];
        let fast = p.defeats(goal).verdict.status() == Status::BreakerWins;
        let block = p.defeats_over_block(goal, 2).verdict.status() == Status::BreakerWins;
        prop_assert_eq!(fast, block);
        prop_assert_eq!(fast, brute_defeats(period, &pairs, goal));
    }

    #[test]
    fn catalog_pavings_match_explicit_expansion(i in 0usize..6, gi in 0usize..32) {
        let p = paving(PAVINGS[i]);
        let goals = enumerate(p.board(), 4);
        let goal = &goals[gi % goals.len()];
        let fast = p.defeats(goal).verdict.status();
        let slow = p.defeats_over_block(goal, 3).verdict.status();
        prop_assert_eq!(fast, slow);
    }
}

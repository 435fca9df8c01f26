use proptest::prelude::*;

use polygame::bounds::{
    check_threshold, compose_winner, composed_claims, monotone_implications, subform_dominance, Evidence, GameSpec,
    Status, ThresholdSequence,
};
use polygame::stages::{build_diagram, VertexKind};

mod common;
use common::{oracle_longest, stage_oracle};

/// Strictly increasing thresholds with `b_n >= n - 1`.
fn arb_threshold() -> impl Strategy<Value = ThresholdSequence> {
    (0u32..3, prop::collection::vec(1u32..4, 0..4)).prop_map(|(first, steps)| {
        let mut finite = vec![first];
        for s in steps {
            let next = finite.last().unwrap() + s;
            finite.push(next.max(finite.len() as u32));
        }
        ThresholdSequence::new(finite)
    })
}

/// Ground truth for a goal with threshold sequence `t`.
fn maker_truly_wins(t: &ThresholdSequence, a: u32, b: u32) -> bool {
    a >= t.first_infinite() || t.get(a).is_some_and(|x| b <= x)
}

/// Exact witnesses for `t` plus a random selection of further true facts.
fn evidence_for(t: &ThresholdSequence, extra: &[(u32, u32)]) -> Evidence {
    let mut e = Evidence::default();
    for (i, &b) in t.finite.iter().enumerate() {
        let n = i as u32 + 1;
        e.add(Status::MakerWins, n, b);
        e.add(Status::BreakerWins, n, b + 1);
    }
    e.add_maker_every_b(t.first_infinite());
    for &(a, b) in extra {
        let status = if maker_truly_wins(t, a, b) { Status::MakerWins } else { Status::BreakerWins };
        e.add(status, a, b);
    }
    e
}

#[test]
fn a_single_game_diagram() {
    let d = build_diagram(&[3], &[4]).unwrap();
    // One game of length l takes l turns.
    assert_eq!(d.total_turn_bound(), 4);
    assert_eq!(d.vertex(&[4]).unwrap().kind, VertexKind::Winning(0));
    assert!(build_diagram(&[], &[]).is_err());
    assert!(build_diagram(&[1], &[1, 2]).is_err());
}

#[test]
fn two_copies_of_a_won_game_compose() {
    let c = compose_winner(&[(1, 1, 3), (1, 2, 4)]).unwrap();
    assert_eq!(c.game, GameSpec::plain(2, 4).unwrap());
    assert_eq!(c.turn_bound, 440);
    assert!(compose_winner(&[]).is_err());
    assert!(compose_winner(&[(0, 1, 1)]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn diagrams_match_the_plain_recursion(
        parts in prop::collection::vec((0u64..4, 1u32..5), 1..=3),
    ) {
        let b: Vec<u64> = parts.iter().map(|p| p.0).collect();
        let l: Vec<u32> = parts.iter().map(|p| p.1).collect();
        let d = build_diagram(&b, &l).unwrap();
        prop_assert_eq!(d.total_turn_bound(), oracle_longest(&vec![0; l.len()], &b, &l));
        for v in d.vertices() {
            let (q, n) = stage_oracle(&v.p, &b, &l);
            prop_assert_eq!(&v.q, &q, "q at {:?}", v.p);
            prop_assert_eq!(v.n, n, "n at {:?}", v.p);
            prop_assert_eq!(&d.vertex_from_children(&v.p).unwrap(), v);
        }
        // Never faster than playing the shortest game alone.
        prop_assert!(d.total_turn_bound() >= *l.iter().min().unwrap() as u128);
    }

    #[test]
    fn more_breaker_marks_never_shorten_the_bound(
        parts in prop::collection::vec((0u64..3, 1u32..4), 1..=3),
        i in 0usize..3,
    ) {
        let b: Vec<u64> = parts.iter().map(|p| p.0).collect();
        let l: Vec<u32> = parts.iter().map(|p| p.1).collect();
        let mut more = b.clone();
        more[i % b.len()] += 1;
        let base = build_diagram(&b, &l).unwrap().total_turn_bound();
        prop_assert!(build_diagram(&more, &l).unwrap().total_turn_bound() >= base);
    }

    #[test]
    fn composed_claims_match_composition(
        a in 1u32..3, b in 0u32..4, c in prop::option::of(2u32..5), max_a in 1u32..8, l in 1u32..4,
    ) {
        let g = match c {
            Some(c) if c > a => GameSpec::new(a, b, Some(c)).unwrap(),
            _ => GameSpec::plain(a, b).unwrap(),
        };
        for (x, y) in composed_claims(g, max_a) {
            prop_assert!(x <= max_a && x >= g.final_marks() && x % g.a == 0);
            let s = (x / g.a) as usize;
            let parts = vec![(g.a, g.b, l); s];
            prop_assert_eq!(compose_winner(&parts).unwrap().game, GameSpec::plain(x, y).unwrap());
        }
        // The smallest admissible multiple is always listed.
        let s0 = g.final_marks().div_ceil(g.a);
        prop_assert_eq!(composed_claims(g, max_a).first().map(|p| p.0), Some(s0 * g.a).filter(|&x| x <= max_a));
    }

    #[test]
    fn implications_are_exactly_the_monotone_cone(
        a in 1u32..5, b in 0u32..6, maker in any::<bool>(), max_a in 1u32..6, max_b in 0u32..7,
    ) {
        let status = if maker { Status::MakerWins } else { Status::BreakerWins };
        let got: std::collections::BTreeSet<(u32, u32)> =
            monotone_implications(status, a, b, max_a, max_b).into_iter().collect();
        let mut e = Evidence::default();
        e.add(status, a, b);
        for x in 1..=max_a {
            for y in 0..=max_b {
                let implied = if maker { e.maker_wins(x, y) } else { e.breaker_wins(x, y) };
                prop_assert_eq!(got.contains(&(x, y)), implied, "({},{})", x, y);
            }
        }
        prop_assert!(monotone_implications(Status::Unknown, a, b, max_a, max_b).is_empty());
    }

    #[test]
    fn true_evidence_confirms_exactly_its_threshold(
        t in arb_threshold(),
        extra in prop::collection::vec((1u32..7, 0u32..15), 0..12),
        which in 0usize..4,
        up in any::<bool>(),
    ) {
        let e = evidence_for(&t, &extra);
        prop_assert_eq!(e.contradiction(), None);
        for a in 1..7 {
            for b in 0..15 {
                if e.maker_wins(a, b) {
                    prop_assert!(maker_truly_wins(&t, a, b));
                }
                if e.breaker_wins(a, b) {
                    prop_assert!(!maker_truly_wins(&t, a, b));
                }
            }
        }
        prop_assert!(check_threshold(&t, &e).ok(), "{}", t);

        let i = which % t.finite.len();
        let mut wrong = t.clone();
        if up {
            wrong.finite[i] += 1;
        } else if wrong.finite[i] > 0 {
            wrong.finite[i] -= 1;
        } else {
            wrong.finite.pop();
        }
        prop_assert!(!check_threshold(&wrong, &e).ok(), "{} accepted for {}", wrong, t);
        let mut shorter = t.clone();
        shorter.finite.pop();
        prop_assert!(!check_threshold(&shorter, &e).ok());
    }

    #[test]
    fn dominance_compares_with_infinity_on_top(s in arb_threshold(), t in arb_threshold()) {
        let key = |x: &ThresholdSequence, i: u32| x.get(i).map_or(u64::MAX, u64::from);
        let n = s.finite.len().max(t.finite.len()) as u32 + 1;
        let want: Vec<u32> = (1..=n).filter(|&i| key(&s, i) < key(&t, i)).collect();
        prop_assert_eq!(subform_dominance(&s, &t), want);
        prop_assert!(subform_dominance(&s, &s).is_empty());
    }

    #[test]
    fn threshold_text_round_trips(t in arb_threshold()) {
        let text = t.finite.iter().map(|b| b.to_string()).chain(["inf".to_string()]).collect::<Vec<_>>().join(" ");
        prop_assert_eq!(ThresholdSequence::parse(&text).unwrap(), t.clone());
        prop_assert_eq!(ThresholdSequence::parse(&t.to_string().replace('∞', "inf")).unwrap(), t);
    }
}

"""Smoke test for the pypolygame extension module.

Build it first with `pip install --no-build-isolation -e crates/py`.
"""

from pathlib import Path

import pypolygame as pg

ROOT = Path(__file__).resolve().parent.parent
CATALOG = ROOT / "catalog"


def main() -> None:
    mono = pg.Polyform.named("P11")
    assert mono.size == 1 and mono.site_perimeter() == 4
    assert pg.Polyform.named("T11").site_perimeter() == 3

    t31 = pg.Polyform.load(str(CATALOG / "polyforms" / "T31.txt"))
    assert t31.board == "triangular"
    assert all(c[2] in ("U", "D") for c in t31.cells())
    assert pg.Polyform.named("T21").is_subform(t31)

    assert pg.verify_proof(str(CATALOG / "proofs" / "T31_2_5.txt")).status == "MakerWins"
    assert pg.verify_paving(str(CATALOG / "pavings" / "tri_T21.txt"), t31).status == "BreakerWins"

    p45 = pg.Polyform.named("P45")
    verdict, positions, terminal = pg.verify_priority(str(CATALOG / "strategies" / "P45_2_4.txt"), p45)
    assert verdict.status == "BreakerWins", verdict
    assert len(terminal) == 2

    verdict, turns = pg.solve(pg.Polyform.named("P43"), 1, 1)
    assert verdict.status == "MakerWins" and turns == 4

    assert pg.twostep_winner(3, 11, p45).status == "MakerWins"
    assert pg.surround_loser(3, 12, p45).status == "BreakerWins"
    assert pg.stage_bound([1, 2], [3, 4]) == 440

    ok, report = pg.catalog_check(str(CATALOG / "catalog.txt"))
    assert ok, report

    try:
        pg.Polyform.parse("board square\n(0,0\n")
    except ValueError as e:
        assert ":2:" in str(e), e
    else:
        raise AssertionError("malformed polyform accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()

import pytest

from xifunctions.algebra import AlgebraKind
from xifunctions.tables import (
    ORBIT_TABLE,
    STABILIZER_TABLE,
    WEIGHT_STABILIZER_TABLE,
    excluded_points,
    format_report,
    regenerate,
    triple_pattern,
)

KINDS = list(AlgebraKind)
# 3 and 9 supplement the vertex patterns of G2 that need 3 | M
LEVELS = [3, 4, 5, 6, 7, 8, 9, 12]


@pytest.mark.parametrize("kind", KINDS)
def test_every_row_reproduced(kind):
    rows = regenerate(kind, LEVELS)
    for table, ref in (("d", STABILIZER_TABLE), ("epsilon", ORBIT_TABLE), ("h", WEIGHT_STABILIZER_TABLE)):
        got = {r.pattern for r in rows if r.table == table}
        assert got == set(ref[kind])
    for row in rows:
        assert row.passed, row
        assert len(row.instances) >= 3


def test_degenerate_level():
    rows = regenerate("C2", [1])
    assert all(r.passed for r in rows)
    assert "[c,a,b]" not in {r.pattern for r in rows if r.table == "epsilon"}


def test_g2_half_level_exclusion():
    assert ("e-", "grid", (0, 3, 0)) in excluded_points("G2", 6)
    assert not any(cab == (0, 3, 0) for _, _, cab in excluded_points("G2", 7))
    assert "[0,3,0]" in format_report("G2", 6, regenerate("G2", [6]))


def test_patterns():
    assert triple_pattern((0, 2, 1)) == "[0,a,b]"
    assert triple_pattern((3, 0, 0)) == "[c,0,0]"

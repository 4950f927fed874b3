"""Reference tables of stabilizer and orbit orders, and their regeneration.

Three quantities are tabulated per zero-pattern of the coordinates:

* ``d``: order of the stabilizer of ``lambda in P+`` in ``W^e, W^s, W^l``;
* ``epsilon``: size of the torus orbit of ``x in F_M``;
* ``h``: order of the stabilizer of ``lambda + MQ`` for ``lambda in Lambda_M``.

Patterns name the non-zero coordinates, e.g. ``"[0,a,b]"`` is ``c = 0`` with
``a, b`` non-zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .algebra import AlgebraKind
from .domains import Family, plain_grid, plain_weights, sheet_rules
from .weyl import SignHom, kernel, orbit_size_torus, stab_order_d, stab_order_h

LETTERS = ("e", "s", "l")


def _row(e: int, s: int, l: int) -> Dict[str, int]:
    return {"e": e, "s": s, "l": l}


STABILIZER_TABLE: Dict[AlgebraKind, Dict[str, Dict[str, int]]] = {
    AlgebraKind.C2: {
        "(a,b)": _row(1, 1, 1),
        "(a,0)": _row(1, 2, 1),
        "(0,b)": _row(1, 1, 2),
        "(0,0)": _row(4, 4, 4),
    },
    AlgebraKind.G2: {
        "(a,b)": _row(1, 1, 1),
        "(a,0)": _row(1, 1, 2),
        "(0,b)": _row(1, 2, 1),
        "(0,0)": _row(6, 6, 6),
    },
}

ORBIT_TABLE: Dict[AlgebraKind, Dict[str, Dict[str, int]]] = {
    AlgebraKind.C2: {
        "[c,a,b]": _row(4, 4, 4),
        "[0,a,b]": _row(4, 2, 4),
        "[c,0,b]": _row(4, 4, 2),
        "[c,a,0]": _row(4, 2, 4),
        "[0,0,b]": _row(1, 1, 1),
        "[0,a,0]": _row(2, 1, 2),
        "[c,0,0]": _row(1, 1, 1),
    },
    AlgebraKind.G2: {
        "[c,a,b]": _row(6, 6, 6),
        "[0,a,b]": _row(6, 3, 6),
        "[c,0,b]": _row(6, 3, 6),
        "[c,a,0]": _row(6, 6, 3),
        "[0,0,b]": _row(2, 1, 2),
        "[0,a,0]": _row(3, 3, 3),
        "[c,0,0]": _row(1, 1, 1),
    },
}

WEIGHT_STABILIZER_TABLE: Dict[AlgebraKind, Dict[str, Dict[str, int]]] = {
    AlgebraKind.C2: {
        "[c,a,b]": _row(1, 1, 1),
        "[0,a,b]": _row(1, 1, 2),
        "[c,0,b]": _row(1, 1, 2),
        "[c,a,0]": _row(1, 2, 1),
        "[0,0,b]": _row(2, 2, 4),
        "[0,a,0]": _row(4, 4, 4),
        "[c,0,0]": _row(4, 4, 4),
    },
    AlgebraKind.G2: {
        "[c,a,b]": _row(1, 1, 1),
        "[0,a,b]": _row(1, 1, 2),
        "[c,0,b]": _row(1, 2, 1),
        "[c,a,0]": _row(1, 1, 2),
        "[0,0,b]": _row(2, 2, 2),
        "[0,a,0]": _row(3, 3, 6),
        "[c,0,0]": _row(6, 6, 6),
    },
}

TABLES = {"d": STABILIZER_TABLE, "epsilon": ORBIT_TABLE, "h": WEIGHT_STABILIZER_TABLE}


def triple_pattern(cab: Sequence[int]) -> str:
    return "[" + ",".join(name if v else "0" for name, v in zip("cab", cab)) + "]"


def pair_pattern(ab: Sequence[int]) -> str:
    return "(" + ",".join(name if v else "0" for name, v in zip("ab", ab)) + ")"


@dataclass
class TableRow:
    """Computed values of one table row, with the reference values beside them."""

    table: str
    pattern: str
    expected: Dict[str, int]
    computed: Dict[str, List[int]] = field(default_factory=dict)
    instances: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.instances) and all(
            set(self.computed[letter]) == {self.expected[letter]} for letter in LETTERS
        )


def _collect(table: str, kind: AlgebraKind, samples, value_of) -> List[TableRow]:
    reference = TABLES[table][kind]
    rows = {pattern: TableRow(table, pattern, expected) for pattern, expected in reference.items()}
    for key, pattern, point in samples:
        if pattern not in rows:
            raise KeyError(f"pattern {pattern} has no reference row")
        row = rows[pattern]
        row.instances.append(key)
        for letter in LETTERS:
            row.computed.setdefault(letter, []).append(value_of(SignHom(letter), point))
    return [row for row in rows.values() if row.instances]


def regenerate(kind, Ms: Sequence[int]) -> List[TableRow]:
    """Recompute every row that has at least one instance for the given levels."""
    kind = AlgebraKind.parse(kind)
    subs = {SignHom(letter): kernel(SignHom(letter), kind) for letter in LETTERS}

    # an instance is a (level, point) pair; the dominant weights of level M
    # are the (a, b) parts of Lambda_M
    grid, lattice, dominant = [], [], []
    for M in Ms:
        for w in plain_weights(kind, M):
            lattice.append(((M,) + w.cab, triple_pattern(w.cab), (w.coords, M)))
            dominant.append(((M,) + w.coords, pair_pattern(w.coords), w.coords))
        for p in plain_grid(kind, M):
            grid.append(((M,) + p.cab, triple_pattern(p.cab), (p.alpha_vee, M)))

    rows = _collect("d", kind, dominant, lambda hom, lam: stab_order_d(subs[hom], lam))
    rows += _collect("epsilon", kind, grid, lambda hom, pt: orbit_size_torus(subs[hom], pt[0], pt[1]))
    rows += _collect("h", kind, lattice, lambda hom, pt: stab_order_h(subs[hom], pt[0], pt[1]))
    return rows


def excluded_points(kind, M: int) -> List[Tuple[str, str, Tuple]]:
    """Level-dependent exclusions ``(family, 'grid'|'weights', [c,a,b])`` in force at ``M``."""
    kind = AlgebraKind.parse(kind)
    out = []
    for family in Family:
        for which in ("grid", "weights"):
            base, _ = sheet_rules(kind, family, which)
            for ex in base.excluded:
                cab = ex(M)
                if cab is not None:
                    out.append((family.value, which, tuple(int(v) for v in cab)))
    return out


def format_report(kind, M: int, rows: List[TableRow]) -> str:
    kind = AlgebraKind.parse(kind)
    lines = [f"# algebra={kind.value} M={M}"]
    for table in ("d", "epsilon", "h"):
        lines.append(f"## {table}")
        lines.append(f"{'pattern':<9} {'e':>3} {'s':>3} {'l':>3}   reference   n  status")
        for row in (r for r in rows if r.table == table):
            vals = " ".join(f"{_show(row.computed[x]):>3}" for x in LETTERS)
            ref = " ".join(str(row.expected[x]) for x in LETTERS)
            status = "PASS" if row.passed else "FAIL"
            lines.append(f"{row.pattern:<9} {vals}   {ref:<9} {len(row.instances):>3}  {status}")
    lines.append("## level-dependent exclusions")
    excl = excluded_points(kind, M)
    if not excl:
        lines.append("none")
    for family, which, cab in excl:
        lines.append(f"{family} {which}: [{cab[0]},{cab[1]},{cab[2]}]")
    return "\n".join(lines) + "\n"


def _show(values: List[int]) -> str:
    distinct = sorted(set(values))
    return str(distinct[0]) if len(distinct) == 1 else "/".join(map(str, distinct))

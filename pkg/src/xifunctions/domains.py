"""Fundamental domains, the six restricted domains and their finite grids.

A point of the fundamental triangle F is written ``a w1v + b w2v`` in the
omega-check basis and carries the barycentric-like triple ``[c, a, b]`` with
``c + m1 a + m2 b = 1`` (or ``= M`` on the grid ``F_M``, after scaling by M).
Weights in ``M F-check`` use ``[c, a, b]`` with ``c + m1v a + m2v b = M``.

Each family's domain is the union of a *base* sheet inside F and a *reflected*
sheet ``r F``, where ``r`` is ``r_s`` for the e and s families and ``r_l`` for
the l families.  Which boundary pieces belong to each sheet is listed in
:data:`SHEETS`; every entry is cross-checked against orbit folding in the
test-suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebra import AlgebraKind, Basis, change_basis, root_data
from .weyl import SignHom, generator_matrix, in_root_lattice_multiple

Triple = Tuple[int, int, int]


class Family(str, Enum):
    """The six families of even and mixed-even orbit functions."""

    E_PLUS = "e+"
    E_MINUS = "e-"
    S_PLUS = "s+"
    S_MINUS = "s-"
    L_PLUS = "l+"
    L_MINUS = "l-"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().replace("−", "-")
        try:
            return cls(text)
        except ValueError:
            raise ValueError(
                f"unknown family {value!r}; expected one of {[f.value for f in cls]}"
            ) from None

    @property
    def letter(self) -> str:
        return self.value[0]

    @property
    def is_plus(self) -> bool:
        return self.value[1] == "+"

    @property
    def kernel_hom(self) -> SignHom:
        return SignHom(self.letter)

    @property
    def twist(self) -> Optional[SignHom]:
        """Sign character used on the kernel, ``None`` for the + families.

        On W^e the characters sigma^s and sigma^l coincide, on W^s sigma^e and
        sigma^l coincide, on W^l sigma^e and sigma^s coincide.
        """
        if self.is_plus:
            return None
        return {"e": SignHom.S, "s": SignHom.L, "l": SignHom.S}[self.letter]

    @property
    def reflection(self) -> str:
        """Generator used to build the reflected sheet."""
        return "l" if self.letter == "l" else "s"

    def partner(self, plus: bool) -> "Family":
        return Family(self.letter + ("+" if plus else "-"))


class Sheet(str, Enum):
    BASE = "base"
    REFLECTED = "reflected"


class Region(str, Enum):
    INTERIOR = "interior-base"
    BOUNDARY = "boundary"
    REFLECTED = "reflected"
    OUTSIDE = "outside"


# Each sheet: positivity pattern for (c, a, b) ("0" = may vanish, "+" = strictly
# positive) and a list of excluded triples as functions of M.
@dataclass(frozen=True)
class SheetRule:
    pattern: str
    excluded: Tuple[Callable[[int], Optional[Triple]], ...] = ()

    def admits(self, cab: Sequence, M) -> bool:
        for value, flag in zip(cab, self.pattern):
            if value < 0 or (flag == "+" and value == 0):
                return False
        return all(tuple(cab) != ex(M) for ex in self.excluded)


def _origin(M):
    return (M, 0, 0)


def _half(position: int):
    def excluded(M):
        if isinstance(M, int):
            if M % 2:
                return None
            half = M // 2
        else:
            half = Fraction(M) / 2
        triple = [0, 0, 0]
        triple[position] = half
        return tuple(triple)

    return excluded


def _vertex(position: int):
    def excluded(M):
        triple = [0, 0, 0]
        triple[position] = M
        return tuple(triple)

    return excluded


ALL = SheetRule("000")
INTERIOR = SheetRule("+++")

# (kind, family) -> grid (base, reflected), weights (base, reflected)
SHEETS: Dict[Tuple[AlgebraKind, Family], Dict[str, Tuple[SheetRule, SheetRule]]] = {
    (AlgebraKind.C2, Family.E_PLUS): dict(grid=(ALL, INTERIOR), weights=(ALL, INTERIOR)),
    (AlgebraKind.C2, Family.S_PLUS): dict(
        grid=(ALL, SheetRule("0+0")), weights=(ALL, SheetRule("++0"))
    ),
    (AlgebraKind.C2, Family.L_PLUS): dict(
        grid=(ALL, SheetRule("+0+")), weights=(ALL, SheetRule("00+"))
    ),
    (AlgebraKind.C2, Family.E_MINUS): dict(
        grid=(SheetRule("000", (_origin, _vertex(2))), INTERIOR),
        weights=(SheetRule("000", (_origin, _vertex(1))), INTERIOR),
    ),
    (AlgebraKind.C2, Family.S_MINUS): dict(
        grid=(SheetRule("+0+"), INTERIOR), weights=(SheetRule("00+"), INTERIOR)
    ),
    (AlgebraKind.C2, Family.L_MINUS): dict(
        grid=(SheetRule("0+0"), INTERIOR), weights=(SheetRule("++0"), INTERIOR)
    ),
    (AlgebraKind.G2, Family.E_PLUS): dict(grid=(ALL, INTERIOR), weights=(ALL, INTERIOR)),
    (AlgebraKind.G2, Family.S_PLUS): dict(
        grid=(ALL, SheetRule("00+")), weights=(ALL, SheetRule("+0+"))
    ),
    (AlgebraKind.G2, Family.L_PLUS): dict(
        grid=(ALL, SheetRule("++0")), weights=(ALL, SheetRule("0+0"))
    ),
    (AlgebraKind.G2, Family.E_MINUS): dict(
        grid=(SheetRule("000", (_origin, _half(1))), INTERIOR),
        weights=(SheetRule("000", (_origin, _half(2))), INTERIOR),
    ),
    (AlgebraKind.G2, Family.S_MINUS): dict(
        grid=(SheetRule("++0"), INTERIOR), weights=(SheetRule("0+0"), INTERIOR)
    ),
    (AlgebraKind.G2, Family.L_MINUS): dict(
        grid=(SheetRule("00+"), INTERIOR), weights=(SheetRule("+0+"), INTERIOR)
    ),
}


def sheet_rules(kind, family, which: str) -> Tuple[SheetRule, SheetRule]:
    return SHEETS[(AlgebraKind.parse(kind), Family.parse(family))][which]


# geometry -------------------------------------------------------------------


def reflect_coweight(kind, label: str, y: Sequence) -> Tuple:
    """Apply ``r_label`` to a point given in omega-check coordinates.

    ``r_i y = y - y_i alpha_i^vee`` and ``alpha_i^vee`` is the i-th column of C.
    """
    data = root_data(kind)
    i = data.index(label)
    return tuple(y[j] - y[i] * data.cartan[j][i] for j in range(2))


def reflect_weight(kind, label: str, lam: Sequence[int]) -> Tuple[int, int]:
    g = generator_matrix(kind, label)
    return (g[0][0] * lam[0] + g[0][1] * lam[1], g[1][0] * lam[0] + g[1][1] * lam[1])


def cab_of_coweight(kind, y: Sequence, M=1) -> Tuple:
    """``[c, a, b]`` of a point ``y`` (omega-check coordinates) scaled by ``M``."""
    m = root_data(kind).highest_root_marks
    a, b = (Fraction(v) * M for v in y)
    return (M - m[0] * a - m[1] * b, a, b)


def cab_of_weight(kind, lam: Sequence[int], M: int) -> Triple:
    m = root_data(kind).dual_marks
    return (M - m[0] * lam[0] - m[1] * lam[1], lam[0], lam[1])


@dataclass(frozen=True)
class DomainSpec:
    """Vertices and boundary mirrors of F and F-check for one algebra."""

    kind: AlgebraKind
    vertices_F: Tuple[Tuple[Fraction, Fraction], ...]
    vertices_Fvee: Tuple[Tuple[Fraction, Fraction], ...]

    def in_F(self, y: Sequence) -> bool:
        """Membership of ``y`` (omega-check coordinates) in the closed triangle F."""
        c, a, b = cab_of_coweight(self.kind, y)
        return min(c, a, b) >= 0

    def on_mirror(self, y: Sequence, mirror: str) -> bool:
        """``mirror`` is one of ``'s'``, ``'l'``, ``'0'``; tests membership in Y_mirror."""
        if not self.in_F(y):
            return False
        c, *ab = cab_of_coweight(self.kind, y)
        if mirror == "0":
            return c == 0
        return ab[root_data(self.kind).index(mirror)] == 0

    def in_Fvee(self, lam: Sequence) -> bool:
        m = root_data(self.kind).dual_marks
        return min(lam) >= 0 and m[0] * lam[0] + m[1] * lam[1] <= 1

    def on_dual_mirror(self, lam: Sequence, mirror: str) -> bool:
        if not self.in_Fvee(lam):
            return False
        if mirror == "0":
            m = root_data(self.kind).dual_marks
            return m[0] * lam[0] + m[1] * lam[1] == 1
        return lam[root_data(self.kind).index(mirror)] == 0


@lru_cache(maxsize=None)
def domain_spec(kind) -> DomainSpec:
    kind = AlgebraKind.parse(kind)
    data = root_data(kind)
    m, mv = data.highest_root_marks, data.dual_marks
    zero = (Fraction(0), Fraction(0))
    return DomainSpec(
        kind,
        (zero, (Fraction(1, m[0]), Fraction(0)), (Fraction(0), Fraction(1, m[1]))),
        (zero, (Fraction(1, mv[0]), Fraction(0)), (Fraction(0), Fraction(1, mv[1]))),
    )


# grids ----------------------------------------------------------------------


@dataclass(frozen=True)
class GridPoint:
    """A point of ``F_M`` for one family.

    ``coords`` are omega-check coordinates of the representative in the plane.
    """

    kind: AlgebraKind
    cab: Triple
    coords: Tuple[Fraction, Fraction]
    sheet: Sheet

    @property
    def alpha_vee(self) -> Tuple[Fraction, Fraction]:
        return change_basis(self.coords, Basis.OMEGA_VEE, Basis.ALPHA_VEE, root_data(self.kind))

    def to_json(self) -> dict:
        den = 1
        for v in self.coords:
            den = den * v.denominator // _gcd(den, v.denominator)
        return {
            "cab": list(self.cab),
            "sheet": self.sheet.value,
            "coords": [int(v * den) for v in self.coords],
            "denominator": den,
        }


@dataclass(frozen=True)
class WeightPoint:
    """A weight of ``Lambda_M`` for one family (omega coordinates)."""

    kind: AlgebraKind
    cab: Triple
    coords: Tuple[int, int]
    sheet: Sheet

    def to_json(self) -> dict:
        return {"cab": list(self.cab), "sheet": self.sheet.value, "coords": list(self.coords), "denominator": 1}


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _triples(marks: Tuple[int, int], M: int):
    for a in range(M // marks[0] + 1):
        for b in range((M - marks[0] * a) // marks[1] + 1):
            yield (M - marks[0] * a - marks[1] * b, a, b)


def plain_grid(kind, M: int) -> List[GridPoint]:
    """``F_M``: points ``(a/M, b/M)`` with ``c + m1 a + m2 b = M``."""
    kind = AlgebraKind.parse(kind)
    return [
        GridPoint(kind, cab, (Fraction(cab[1], M), Fraction(cab[2], M)), Sheet.BASE)
        for cab in _triples(root_data(kind).highest_root_marks, M)
    ]


def plain_weights(kind, M: int) -> List[WeightPoint]:
    """``Lambda_M``: weights ``(a, b)`` with ``c + m1v a + m2v b = M``."""
    kind = AlgebraKind.parse(kind)
    return [
        WeightPoint(kind, cab, (cab[1], cab[2]), Sheet.BASE)
        for cab in _triples(root_data(kind).dual_marks, M)
    ]


def _check_distinct(keys, what: str):
    if len(set(keys)) != len(keys):
        raise RuntimeError(f"{what} contains points that coincide modulo the lattice")


@lru_cache(maxsize=None)
def _grid_points(kind: AlgebraKind, family: Family, M: int) -> Tuple[GridPoint, ...]:
    if M < 1:
        raise ValueError("M must be a positive integer")
    base_rule, refl_rule = sheet_rules(kind, family, "grid")
    marks = root_data(kind).highest_root_marks
    points = []
    for cab in _triples(marks, M):
        y = (Fraction(cab[1], M), Fraction(cab[2], M))
        if base_rule.admits(cab, M):
            points.append(GridPoint(kind, cab, y, Sheet.BASE))
    for cab in _triples(marks, M):
        y = (Fraction(cab[1], M), Fraction(cab[2], M))
        if refl_rule.admits(cab, M):
            ry = reflect_coweight(kind, family.reflection, y)
            points.append(GridPoint(kind, cab, ry, Sheet.REFLECTED))
    det = root_data(kind).det_cartan
    _check_distinct([_torus_key(p.alpha_vee, M * det) for p in points], "grid")
    return tuple(points)


def _torus_key(x, n):
    return tuple(int(v * n) % n for v in x)


def grid_points(kind, family, M: int) -> List[GridPoint]:
    """``F_M`` for ``family``: the base sheet followed by the reflected sheet."""
    return list(_grid_points(AlgebraKind.parse(kind), Family.parse(family), int(M)))


@lru_cache(maxsize=None)
def _weight_points(kind: AlgebraKind, family: Family, M: int) -> Tuple[WeightPoint, ...]:
    if M < 1:
        raise ValueError("M must be a positive integer")
    base_rule, refl_rule = sheet_rules(kind, family, "weights")
    marks = root_data(kind).dual_marks
    points = [
        WeightPoint(kind, cab, (cab[1], cab[2]), Sheet.BASE)
        for cab in _triples(marks, M)
        if base_rule.admits(cab, M)
    ]
    points += [
        WeightPoint(kind, cab, reflect_weight(kind, family.reflection, cab[1:]), Sheet.REFLECTED)
        for cab in _triples(marks, M)
        if refl_rule.admits(cab, M)
    ]
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            diff = (p.coords[0] - q.coords[0], p.coords[1] - q.coords[1])
            if in_root_lattice_multiple(diff, M, kind):
                raise RuntimeError(f"weights {p.coords} and {q.coords} coincide modulo MQ")
    return tuple(points)


def weight_points(kind, family, M: int) -> List[WeightPoint]:
    """``Lambda_M`` for ``family``: the base sheet followed by the reflected sheet."""
    return list(_weight_points(AlgebraKind.parse(kind), Family.parse(family), int(M)))


# membership -------------------------------------------------------------------


def domain_membership(x: Sequence, kind, family, basis=Basis.ALPHA_VEE) -> Region:
    """Classify an exact point against the half-open domain of ``family``.

    Points of F that belong to the domain are reported as ``interior-base`` or
    ``boundary``; points of the reflected sheet as ``reflected``.
    """
    kind, family = AlgebraKind.parse(kind), Family.parse(family)
    data = root_data(kind)
    y = change_basis([Fraction(v) for v in x], basis, Basis.OMEGA_VEE, data)
    base_rule, refl_rule = sheet_rules(kind, family, "grid")
    cab = cab_of_coweight(kind, y)
    # continuous domain: a Fraction scale keeps the "M/2" exclusions active
    one = Fraction(1)
    if base_rule.admits(cab, one):
        return Region.INTERIOR if min(cab) > 0 else Region.BOUNDARY
    ry = reflect_coweight(kind, family.reflection, y)
    if refl_rule.admits(cab_of_coweight(kind, ry), one):
        return Region.REFLECTED
    return Region.OUTSIDE


def in_weight_cone(lam: Sequence[int], kind, family) -> bool:
    """Membership of ``lambda`` in the family's label set ``P_{family}``.

    The cone is the M-free version of the weight rules: the ``c`` coordinate
    is unconstrained and only the exclusion of the origin survives.
    """
    kind, family = AlgebraKind.parse(kind), Family.parse(family)
    base_rule, refl_rule = sheet_rules(kind, family, "weights")

    def admits(rule: SheetRule, v) -> bool:
        if min(v) < 0 or (_origin in rule.excluded and tuple(v) == (0, 0)):
            return False
        return all(value > 0 or flag == "0" for value, flag in zip(v, rule.pattern[1:]))

    lam = (int(lam[0]), int(lam[1]))
    return admits(base_rule, lam) or admits(refl_rule, reflect_weight(kind, family.reflection, lam))


# folding ----------------------------------------------------------------------


def _affine_reflect(kind, y, label):
    data = root_data(kind)
    if label in ("s", "l"):
        return reflect_coweight(kind, label, y)
    # r_0 y = y - (<y, xi> - 1) xi^vee, with xi^vee = omega-check vector of 2 xi/<xi,xi>
    m = data.highest_root_marks
    level = m[0] * y[0] + m[1] * y[1]
    xv = highest_root_coroot(kind)
    return tuple(y[j] - (level - 1) * xv[j] for j in range(2))


@lru_cache(maxsize=None)
def highest_root_coroot(kind) -> Tuple[Fraction, Fraction]:
    """``2 xi / <xi, xi>`` in omega-check coordinates."""
    data = root_data(AlgebraKind.parse(kind))
    xi = data.highest_root
    g = data.gram_alpha
    norm = sum(xi[i] * g[i][j] * xi[j] for i in range(2) for j in range(2))
    vec = tuple(2 * v / norm for v in xi)
    return change_basis(vec, Basis.ALPHA, Basis.OMEGA_VEE, data)


def fold_to_F(x: Sequence, kind, basis=Basis.ALPHA_VEE):
    """Map ``x`` into F with the affine Weyl group.

    Returns the folded point (in the input basis) and the list of applied
    reflections among ``'s'``, ``'l'``, ``'0'`` in order of application.
    Every step reflects across a wall that separates the point from F, so the
    number of affine mirrors between them strictly decreases.
    """
    kind = AlgebraKind.parse(kind)
    data = root_data(kind)
    y = change_basis([Fraction(v) for v in x], basis, Basis.OMEGA_VEE, data)
    m = data.highest_root_marks
    steps: List[str] = []
    while True:
        for i, label in enumerate(data.labels):
            if y[i] < 0:
                break
        else:
            label = "0" if m[0] * y[0] + m[1] * y[1] > 1 else None
        if label is None:
            break
        y = _affine_reflect(kind, y, label)
        steps.append(label)
    return change_basis(y, Basis.OMEGA_VEE, basis, data), steps

"""Exact root-system data for the rank-two algebras C2 and G2.

Coordinate conventions used throughout the package:

* the simple roots are ordered ``(alpha_s, alpha_l)`` for C2 and
  ``(alpha_l, alpha_s)`` for G2;
* weights ``lambda`` are integer pairs in the omega (fundamental weight) basis;
* points ``x`` of the torus are pairs in the alpha-check (simple coroot) basis,
  so that ``<lambda, x> = lambda_1 x_1 + lambda_2 x_2``;
* grid points are usually *described* in the omega-check (coweight) basis,
  which is dual to the simple roots.

Every constant is an ``int`` or a ``fractions.Fraction``.  The only irrational
number that appears is sqrt(3) in the continuous normalisation constant of
G2, which is carried symbolically by :class:`SurdValue`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Sequence, Tuple

Vec = Tuple[Fraction, Fraction]
Mat = Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]


class AlgebraKind(str, Enum):
    C2 = "C2"
    G2 = "G2"

    @classmethod
    def parse(cls, value) -> "AlgebraKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"unknown algebra {value!r}; expected C2 or G2") from None


class Basis(str, Enum):
    """The four bases of the plane."""

    ALPHA = "alpha"
    ALPHA_VEE = "alpha_vee"
    OMEGA = "omega"
    OMEGA_VEE = "omega_vee"


@dataclass(frozen=True)
class SurdValue:
    """A number ``rational * sqrt(3)**sqrt3`` kept in exact form."""

    rational: Fraction
    sqrt3: bool = False

    def squared(self) -> Fraction:
        return self.rational**2 * (3 if self.sqrt3 else 1)

    def __float__(self) -> float:
        return float(self.rational) * (math.sqrt(3.0) if self.sqrt3 else 1.0)

    def __str__(self) -> str:
        if not self.sqrt3:
            return str(self.rational)
        return "sqrt(3)" if self.rational == 1 else f"{self.rational}*sqrt(3)"


# 2x2 exact linear algebra -------------------------------------------------


def mat(rows: Sequence[Sequence]) -> Mat:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)  # type: ignore[return-value]


def mat_mul(a: Mat, b: Mat) -> Mat:
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(2)), Fraction(0)) for j in range(2))
        for i in range(2)
    )  # type: ignore[return-value]


def mat_vec(a: Mat, v: Sequence) -> Vec:
    return (a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1])


def mat_det(a: Mat) -> Fraction:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def mat_inv(a: Mat) -> Mat:
    d = mat_det(a)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    return ((a[1][1] / d, -a[0][1] / d), (-a[1][0] / d, a[0][0] / d))


def mat_transpose(a: Mat) -> Mat:
    return ((a[0][0], a[1][0]), (a[0][1], a[1][1]))


IDENTITY: Mat = mat([[1, 0], [0, 1]])


@dataclass(frozen=True)
class RootData:
    """All exact constants of one rank-two algebra.

    ``cartan[i][j] = 2<alpha_i, alpha_j> / <alpha_j, alpha_j>``, so that the
    i-th row is ``alpha_i`` written in the omega basis.
    """

    kind: AlgebraKind
    labels: Tuple[str, str]
    cartan: Tuple[Tuple[int, int], Tuple[int, int]]
    coxeter: Tuple[Tuple[int, int], Tuple[int, int]]
    root_norms: Tuple[Fraction, Fraction]
    highest_root_marks: Tuple[int, int]
    dual_marks: Tuple[int, int]
    det_cartan: int
    weyl_order: int
    K: SurdValue
    k: int
    basis_change: Dict[Tuple[Basis, Basis], Mat] = field(repr=False, compare=False)

    def index(self, label: str) -> int:
        """Position of the ``'s'`` or ``'l'`` root in the ordered basis."""
        return self.labels.index(label)

    @property
    def cartan_matrix(self) -> Mat:
        return mat(self.cartan)

    @property
    def gram_alpha(self) -> Mat:
        """Gram matrix ``<alpha_i, alpha_j>`` of the simple roots."""
        c, n = self.cartan, self.root_norms
        return tuple(tuple(c[i][j] * n[j] / 2 for j in range(2)) for i in range(2))  # type: ignore[return-value]

    def gram(self, basis: Basis) -> Mat:
        """Gram matrix of ``basis`` for the Euclidean inner product."""
        t = self.basis_change[(basis, Basis.ALPHA)]
        return mat_mul(mat_mul(mat_transpose(t), self.gram_alpha), t)

    @property
    def highest_root(self) -> Vec:
        """xi in the alpha basis."""
        return tuple(Fraction(m) for m in self.highest_root_marks)  # type: ignore[return-value]

    @property
    def highest_dual_root(self) -> Vec:
        """eta in the alpha-check basis."""
        return tuple(Fraction(m) for m in self.dual_marks)  # type: ignore[return-value]


def _omega_frame(cartan, norms) -> Dict[Basis, Mat]:
    # columns: basis vectors written in omega coordinates
    c = mat(cartan)
    scale = mat([[2 / norms[0], 0], [0, 2 / norms[1]]])
    ct = mat_transpose(c)
    return {
        Basis.ALPHA: ct,
        Basis.ALPHA_VEE: mat_mul(ct, scale),
        Basis.OMEGA: IDENTITY,
        Basis.OMEGA_VEE: scale,
    }


def _derive_basis_changes(cartan, norms) -> Dict[Tuple[Basis, Basis], Mat]:
    frame = _omega_frame(cartan, norms)
    return {
        (src, dst): mat_mul(mat_inv(frame[dst]), frame[src])
        for src in Basis
        for dst in Basis
    }


_RAW = {
    AlgebraKind.C2: dict(
        labels=("s", "l"),
        cartan=((2, -1), (-2, 2)),
        coxeter=((1, 4), (4, 1)),
        root_norms=(Fraction(1), Fraction(2)),
        weyl_order=8,
    ),
    AlgebraKind.G2: dict(
        labels=("l", "s"),
        cartan=((2, -3), (-1, 2)),
        coxeter=((1, 6), (6, 1)),
        root_norms=(Fraction(2), Fraction(2, 3)),
        weyl_order=12,
    ),
}


def _highest(cartan, *, dual: bool) -> Tuple[int, int]:
    """Coefficients of the highest (co)root, found by closing the simple roots under W."""
    c = mat(cartan)
    if dual:
        # coroots have Cartan matrix C^T
        c = mat_transpose(c)
    roots = {(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))}
    frontier = list(roots)
    while frontier:
        new = []
        for r in frontier:
            for i in range(2):
                # <r, alpha_i^vee> for r written in the simple-root basis
                pair = r[0] * c[0][i] + r[1] * c[1][i]
                img = list(r)
                img[i] -= pair
                img = (img[0], img[1])
                if img not in roots:
                    roots.add(img)
                    new.append(img)
        frontier = new
    best = max(roots, key=lambda r: r[0] + r[1])
    return (int(best[0]), int(best[1]))


@lru_cache(maxsize=None)
def root_data(kind) -> RootData:
    """Return the exact :class:`RootData` record for ``kind``."""
    kind = AlgebraKind.parse(kind)
    raw = _RAW[kind]
    cartan, norms = raw["cartan"], raw["root_norms"]
    det = int(mat_det(mat(cartan)))
    weyl_order = raw["weyl_order"]
    marks = _highest(cartan, dual=False)
    dual_marks = _highest(cartan, dual=True)

    data = RootData(
        kind=kind,
        labels=raw["labels"],
        cartan=cartan,
        coxeter=raw["coxeter"],
        root_norms=norms,
        highest_root_marks=marks,
        dual_marks=dual_marks,
        det_cartan=det,
        weyl_order=weyl_order,
        K=SurdValue(Fraction(0)),
        k=weyl_order * det // 2,
        basis_change=_derive_basis_changes(cartan, norms),
    )
    # |F| = sqrt(det Gram(omega_vee)) / (2 m_1 m_2) and K = |W| |F|
    root = _exact_sqrt(mat_det(data.gram(Basis.OMEGA_VEE)))
    K = SurdValue(root.rational * Fraction(weyl_order, 2 * marks[0] * marks[1]), root.sqrt3)
    return replace(data, K=K)


def _exact_sqrt(value: Fraction) -> SurdValue:
    """Square root of ``value`` when it is a rational square or three times one."""
    for sqrt3, base in ((False, value), (True, value / 3)):
        num, den = base.numerator, base.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return SurdValue(Fraction(rn, rd), sqrt3)
    raise ValueError(f"sqrt({value}) is not of the form q or q*sqrt(3)")


def change_basis(v: Sequence, src, dst, data: RootData) -> Vec:
    """Coordinates of the vector ``v`` (given in basis ``src``) in basis ``dst``."""
    t = data.basis_change[(Basis(src), Basis(dst))]
    return mat_vec(t, [Fraction(x) for x in v])


def pairing(lam: Sequence[int], x: Sequence) -> Fraction:
    """``<lambda, x>`` for ``lambda`` in the omega basis and ``x`` in the alpha-check basis."""
    return lam[0] * x[0] + lam[1] * x[1]

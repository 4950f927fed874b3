"""Weyl groups of C2 and G2, their sign homomorphisms and even subgroups.

Group elements act on weights through integer 2x2 matrices in the omega basis.
The same element acts on torus points (alpha-check basis) through the inverse
transpose, which keeps ``<w lambda, w x> = <lambda, x>``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .algebra import AlgebraKind, root_data

IntMat = Tuple[Tuple[int, int], Tuple[int, int]]
IntVec = Tuple[int, int]


def _imul(a: IntMat, b: IntMat) -> IntMat:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _iapply(a: IntMat, v: Sequence[int]) -> IntVec:
    return (a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1])


def _idet(a: IntMat) -> int:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


_ID: IntMat = ((1, 0), (0, 1))


class SignHom(str, Enum):
    """The four sign homomorphisms ``W -> {+1, -1}``."""

    ONE = "1"
    E = "e"
    S = "s"
    L = "l"

    def on_generator(self, label: str) -> int:
        if self is SignHom.ONE:
            return 1
        if self is SignHom.E:
            return -1
        return -1 if label == self.value else 1


@dataclass(frozen=True)
class GroupElement:
    """One Weyl group element.

    ``word`` is a reduced expression ``r_{word[0]} r_{word[1]} ...`` over
    ``{'s', 'l'}``; equality and hashing use the matrix only.
    """

    kind: AlgebraKind
    word: Tuple[str, ...]
    matrix: IntMat

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.kind == other.kind and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.kind, self.matrix))

    @property
    def det(self) -> int:
        return _idet(self.matrix)

    @property
    def coroot_matrix(self) -> IntMat:
        """Action on alpha-check coordinates (inverse transpose of :attr:`matrix`)."""
        a = self.matrix
        d = self.det
        # inverse of a unimodular matrix, then transpose
        return ((a[1][1] * d, -a[1][0] * d), (-a[0][1] * d, a[0][0] * d))

    def __call__(self, lam: Sequence[int]) -> IntVec:
        return _iapply(self.matrix, lam)

    def act_coroot(self, x: Sequence) -> tuple:
        b = self.coroot_matrix
        return (b[0][0] * x[0] + b[0][1] * x[1], b[1][0] * x[0] + b[1][1] * x[1])

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return element_of(self.kind, _imul(self.matrix, other.matrix))

    def inverse(self) -> "GroupElement":
        a, d = self.matrix, self.det
        return element_of(self.kind, ((a[1][1] * d, -a[0][1] * d), (-a[1][0] * d, a[0][0] * d)))

    def __repr__(self) -> str:
        name = "".join(f"r_{c}" for c in self.word) or "1"
        return f"GroupElement({self.kind.value}, {name}, {self.matrix})"


def generator_matrix(kind, label: str) -> IntMat:
    """Matrix of ``r_label`` in the omega basis: ``lambda -> lambda - lambda_i alpha_i``."""
    data = root_data(kind)
    i = data.index(label)
    cols = [[1 if r == c else 0 for c in range(2)] for r in range(2)]
    for row in range(2):
        cols[row][i] -= data.cartan[i][row]
    return ((cols[0][0], cols[0][1]), (cols[1][0], cols[1][1]))


@lru_cache(maxsize=None)
def generate_group(kind) -> Tuple[GroupElement, ...]:
    """All elements of W, in breadth-first order so each word is reduced."""
    kind = AlgebraKind.parse(kind)
    gens = {label: generator_matrix(kind, label) for label in ("s", "l")}
    seen: Dict[IntMat, Tuple[str, ...]] = {_ID: ()}
    queue = deque([_ID])
    while queue:
        m = queue.popleft()
        for label, g in gens.items():
            img = _imul(g, m)
            if img not in seen:
                seen[img] = (label,) + seen[m]
                queue.append(img)
    return tuple(GroupElement(kind, word, m) for m, word in seen.items())


@lru_cache(maxsize=None)
def _index(kind: AlgebraKind) -> Dict[IntMat, GroupElement]:
    return {w.matrix: w for w in generate_group(kind)}


def element_of(kind, matrix: IntMat) -> GroupElement:
    """Look up the group element with the given omega-basis matrix."""
    try:
        return _index(AlgebraKind.parse(kind))[tuple(map(tuple, matrix))]
    except KeyError:
        raise ValueError(f"{matrix} is not an element of W({kind})") from None


def sign(hom: SignHom, w: GroupElement) -> int:
    """Value of the sign homomorphism on ``w``, read off its word."""
    hom = SignHom(hom)
    value = 1
    for label in w.word:
        value *= hom.on_generator(label)
    return value


@dataclass(frozen=True)
class Subgroup:
    """Kernel of a non-trivial sign homomorphism (an index-two even subgroup)."""

    kind: AlgebraKind
    hom: SignHom
    elements: Tuple[GroupElement, ...]

    @property
    def label(self) -> str:
        return "W" + self.hom.value

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, w) -> bool:
        return w in self.elements


@lru_cache(maxsize=None)
def kernel(hom: SignHom, kind) -> Subgroup:
    hom = SignHom(hom)
    if hom is SignHom.ONE:
        raise ValueError("the trivial homomorphism has the whole group as kernel")
    kind = AlgebraKind.parse(kind)
    elements = tuple(w for w in generate_group(kind) if sign(hom, w) == 1)
    return Subgroup(kind, hom, elements)


def orbit_weight(sub: Subgroup, lam: Sequence[int]) -> List[Tuple[GroupElement, IntVec]]:
    """Pairs ``(w, w lambda)`` for every ``w`` in ``sub`` (duplicates kept)."""
    return [(w, w(lam)) for w in sub]


def stab_order_d(sub: Subgroup, lam: Sequence[int]) -> int:
    """Order of the stabilizer of ``lambda`` in ``sub``."""
    lam = tuple(lam)
    return sum(1 for w in sub if w(lam) == lam)


def torus_numerators(x: Sequence, M: int, det_cartan: int) -> IntVec:
    """Integer numerators of ``x`` over the common denominator ``M det C``."""
    n = M * det_cartan
    num = tuple(Fraction(v) * n for v in x)
    if any(v.denominator != 1 for v in num):
        raise ValueError(f"{tuple(x)} is not a point of (1/{M})P-check")
    return (int(num[0]), int(num[1]))


def _torus_images(sub: Subgroup, x: Sequence, M: int):
    det = root_data(sub.kind).det_cartan
    n = M * det
    num = torus_numerators(x, M, det)
    for w in sub:
        img = w.act_coroot(num)
        yield (img[0] % n, img[1] % n), (num[0] % n, num[1] % n)


def orbit_size_torus(sub: Subgroup, x: Sequence, M: int) -> int:
    """Number of distinct points ``w x`` modulo the coroot lattice.

    ``x`` is given in alpha-check coordinates and must lie in ``(1/M) P-check``.
    """
    return len({img for img, _ in _torus_images(sub, x, M)})


def stab_order_torus(sub: Subgroup, x: Sequence, M: int) -> int:
    return sum(1 for img, base in _torus_images(sub, x, M) if img == base)


def in_root_lattice_multiple(v: Sequence[int], M: int, kind) -> bool:
    """True when the omega-coordinate vector ``v`` lies in ``M Q``."""
    data = root_data(kind)
    # Q = C^T Z^2 in omega coordinates; test adj(C^T) v = 0 mod M det C
    c = data.cartan
    n = M * data.det_cartan
    first = c[1][1] * v[0] - c[1][0] * v[1]
    second = -c[0][1] * v[0] + c[0][0] * v[1]
    return first % n == 0 and second % n == 0


def stab_order_h(sub: Subgroup, lam: Sequence[int], M: int) -> int:
    """Order of the stabilizer of ``lambda + MQ`` in ``sub`` acting on ``P/MQ``."""
    lam = tuple(lam)
    count = 0
    for w in sub:
        img = w(lam)
        if in_root_lattice_multiple((img[0] - lam[0], img[1] - lam[1]), M, sub.kind):
            count += 1
    return count

"""Orbit functions psi^sigma and the six families of Xi-functions.

``psi(kind, hom, lam, x)`` sums ``sigma(w) exp(2 pi i <w lam, x>)`` over the whole
Weyl group; ``xi(kind, family, lam, x)`` sums over the family's even subgroup,
weighted by the family's sign character for the mixed families.

Only homomorphism-labelled entry points are exposed.  In the older literature
``psi(hom=S)`` and ``psi(hom=L)`` are called S^l- and S^s-functions
respectively; note the crossed letters.

Points are in alpha-check coordinates.  When every coordinate is an ``int`` or
``Fraction`` the phase ``<w lam, x>`` is computed exactly and reduced modulo 1
before the exponential is taken.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import List, Sequence, Tuple

import numpy as np

from .algebra import AlgebraKind, root_data
from .domains import Family, GridPoint, WeightPoint
from .weyl import SignHom, generate_group, kernel, sign, torus_numerators

TWO_PI = 2.0 * math.pi


@lru_cache(maxsize=None)
def _terms(kind: AlgebraKind, group: str, twist) -> Tuple[Tuple[int, tuple], ...]:
    if group == "W":
        elements = generate_group(kind)
    else:
        elements = kernel(SignHom(group), kind).elements
    return tuple((1 if twist is None else sign(twist, w), w.matrix) for w in elements)


def psi_terms(kind, hom) -> Tuple[Tuple[int, tuple], ...]:
    """``(sign, omega-matrix)`` pairs defining ``psi^hom``."""
    hom = SignHom(hom)
    return _terms(AlgebraKind.parse(kind), "W", None if hom is SignHom.ONE else hom)


def family_terms(kind, family) -> Tuple[Tuple[int, tuple], ...]:
    """``(sign, omega-matrix)`` pairs defining ``Xi^family``."""
    family = Family.parse(family)
    return _terms(AlgebraKind.parse(kind), family.kernel_hom.value, family.twist)


def _is_exact(x: Sequence) -> bool:
    return all(isinstance(v, Rational) for v in x)


def _sum(terms, lam, x) -> complex:
    if _is_exact(x):
        total = 0j
        for s, m in terms:
            wl0 = m[0][0] * lam[0] + m[0][1] * lam[1]
            wl1 = m[1][0] * lam[0] + m[1][1] * lam[1]
            phase = Fraction(wl0) * x[0] + Fraction(wl1) * x[1]
            phase -= math.floor(phase)
            total += s * cmath.exp(1j * TWO_PI * float(phase))
        return total
    x0, x1 = float(x[0]), float(x[1])
    total = 0j
    for s, m in terms:
        wl0 = m[0][0] * lam[0] + m[0][1] * lam[1]
        wl1 = m[1][0] * lam[0] + m[1][1] * lam[1]
        total += s * cmath.exp(1j * TWO_PI * (wl0 * x0 + wl1 * x1))
    return total


def psi(kind, hom, lam: Sequence[int], x: Sequence) -> complex:
    """``sum_{w in W} hom(w) exp(2 pi i <w lam, x>)``."""
    return _sum(psi_terms(kind, hom), lam, x)


def xi(kind, family, lam: Sequence[int], x: Sequence) -> complex:
    """Value of ``Xi^family_lam`` at ``x`` (alpha-check coordinates)."""
    return _sum(family_terms(kind, family), lam, x)


def xi_array(kind, family, lam: Sequence[int], x, y) -> np.ndarray:
    """Vectorised float evaluation over arrays of alpha-check coordinates."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = np.zeros(np.broadcast(x, y).shape, dtype=complex)
    for s, m in family_terms(kind, family):
        wl0 = m[0][0] * lam[0] + m[0][1] * lam[1]
        wl1 = m[1][0] * lam[0] + m[1][1] * lam[1]
        out += s * np.exp(1j * TWO_PI * (wl0 * x + wl1 * y))
    return out


def xi_matrix(kind, family, weights: Sequence, points: Sequence, M: int) -> np.ndarray:
    """Matrix ``V[i, j] = Xi_{weights[i]}(points[j])`` on a grid of level ``M``.

    ``weights`` are omega-coordinate pairs or :class:`WeightPoint` objects;
    ``points`` are alpha-check pairs or :class:`GridPoint` objects.  Phases are
    integers modulo ``N = M det C`` and index a table of N-th roots of unity,
    so no rounding happens before the final summation.
    """
    kind = AlgebraKind.parse(kind)
    det = root_data(kind).det_cartan
    n = M * det
    lams = np.array([w.coords if isinstance(w, WeightPoint) else tuple(w) for w in weights], dtype=np.int64)
    nums = np.array(
        [torus_numerators(p.alpha_vee if isinstance(p, GridPoint) else p, M, det) for p in points],
        dtype=np.int64,
    )
    lams = lams.reshape(-1, 2)
    nums = nums.reshape(-1, 2)
    roots = np.exp(1j * TWO_PI * np.arange(n) / n)
    out = np.zeros((len(lams), len(nums)), dtype=complex)
    for s, m in family_terms(kind, family):
        wl = lams @ np.array(m, dtype=np.int64).T
        out += s * roots[(wl @ nums.T) % n]
    return out


# printed closed forms -----------------------------------------------------------


def _cos(t):
    return np.cos(TWO_PI * t)


def _sin(t):
    return np.sin(TWO_PI * t)


def _e(t):
    return np.exp(1j * TWO_PI * t)


READINGS = ("corrected", "printed", "grouping-fixed")


def xi_closed_form(kind, family, lam: Sequence[int], x: Sequence, reading: str = "corrected"):
    """Explicit trigonometric form of ``Xi^family_(a,b)(x, y)``.

    ``reading`` only matters for the G2 e- formula, whose reference version
    contains a misplaced bracket in the second sine and an ``x`` in place of
    ``y`` in the third:

    * ``"printed"`` evaluates the reference formula unchanged;
    * ``"grouping-fixed"`` repairs the bracket but keeps the stray ``x``;
    * ``"corrected"`` repairs both.

    The e+ closed forms are derived from the W^e orbits.
    """
    kind, family = AlgebraKind.parse(kind), Family.parse(family)
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")
    a, b = lam
    x, y = np.asarray(x[0], dtype=float), np.asarray(x[1], dtype=float)
    if kind is AlgebraKind.C2:
        first = _cos(a * x + b * y)
        second = {
            "e": _cos((a + 2 * b) * x - (a + b) * y),
            "s": _cos((a + 2 * b) * x - b * y),
            "l": _cos(a * x - (a + b) * y),
        }[family.letter]
        return 2 * (first + second) + 0j if family.is_plus else 2 * (first - second) + 0j

    if family is Family.E_PLUS:
        return 2 * (
            _cos(a * x + b * y)
            + _cos((2 * a + b) * x - (3 * a + b) * y)
            + _cos((a + b) * x - (3 * a + 2 * b) * y)
        ) + 0j
    if family is Family.E_MINUS:
        first = _sin(a * x + b * y)
        if reading == "printed":
            # sin(2 pi (3a+b) y - (2a+b) x), the bracket closing too early
            second = np.sin(TWO_PI * (3 * a + b) * y - (2 * a + b) * x)
        else:
            second = _sin((3 * a + b) * y - (2 * a + b) * x)
        last = y if reading == "corrected" else x
        third = _sin((a + b) * x - (3 * a + 2 * b) * last)
        return 2j * (first + second + third)

    if family.letter == "s":
        exps = [
            (a * x + b * y),
            (-a * x + (3 * a + b) * y),
            ((2 * a + b) * x - (3 * a + 2 * b) * y),
            ((a + b) * x - (3 * a + 2 * b) * y),
            (-(2 * a + b) * x + (3 * a + b) * y),
            (-(a + b) * x + b * y),
        ]
    else:
        exps = [
            (a * x + b * y),
            ((a + b) * x - b * y),
            (-(2 * a + b) * x + (3 * a + 2 * b) * y),
            ((a + b) * x - (3 * a + 2 * b) * y),
            (-(2 * a + b) * x + (3 * a + b) * y),
            (a * x - (3 * a + b) * y),
        ]
    signs = (1, 1, 1, 1, 1, 1) if family.is_plus else (1, -1, -1, 1, 1, -1)
    return sum(s * _e(t) for s, t in zip(signs, exps))


def kernel_orbit(kind, family, lam: Sequence[int]) -> List[Tuple[int, Tuple[int, int]]]:
    """Signed images ``(twist(w), w lam)`` over the family's kernel."""
    out = []
    for s, m in family_terms(kind, family):
        out.append((s, (m[0][0] * lam[0] + m[0][1] * lam[1], m[1][0] * lam[0] + m[1][1] * lam[1])))
    return out

"""Continuous inner products and the discrete Xi-transforms.

The continuous inner product over a family's domain is computed exactly: the
domain is split into the base triangle F and its reflected copy, the product
of two Xi-functions is expanded into exponentials, and each exponential is
integrated in closed form over each triangle.

The discrete transforms are the direct O(N^2) pair

    c_lam = 1 / (k M^2 h_lam) * sum_x eps(x) f(x) conj(Xi_lam(x))
    f(x)  = sum_lam c_lam Xi_lam(x)

on the grid ``F_M`` and weight set ``Lambda_M`` of the family.
"""

from __future__ import annotations

import cmath
import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .algebra import AlgebraKind, Basis, change_basis, mat_det, root_data
from .domains import (
    Family,
    GridPoint,
    Sheet,
    WeightPoint,
    domain_spec,
    grid_points,
    in_weight_cone,
    reflect_coweight,
    weight_points,
)
from .orbitfn import family_terms, xi_matrix
from .weyl import kernel, orbit_size_torus, stab_order_d, stab_order_h

TWO_PI = 2.0 * math.pi


class ContractError(ValueError):
    """Arguments lie outside the set where the documented identity holds."""


class SchemaError(ValueError):
    """A serialized vector does not follow the expected layout."""


class MismatchError(ValueError):
    """A serialized vector belongs to a different algebra, family or M."""


class IncompleteVectorError(ValueError):
    """A sample or coefficient map does not cover its index set."""

    def __init__(self, what: str, missing: Sequence):
        self.missing = list(missing)
        listed = ", ".join(f"{list(p.cab)} ({p.sheet.value})" for p in self.missing)
        super().__init__(f"{what} is missing {len(self.missing)} entries: {listed}")


# exact integration over triangles ------------------------------------------------


def _dd1(za: complex, zb: complex) -> complex:
    return (cmath.exp(za) - cmath.exp(zb)) / (za - zb)


def _exp_divided_difference(t: Sequence) -> complex:
    """``exp[z0, z1, z2]`` with ``z = 2 pi i t``; coincident nodes use derivatives."""
    t = sorted(t)
    z = [1j * TWO_PI * float(v) for v in t]
    if t[0] == t[1] == t[2]:
        return cmath.exp(z[0]) / 2
    if t[0] == t[1] or t[1] == t[2]:
        rep, other = (z[1], z[2]) if t[0] == t[1] else (z[1], z[0])
        return (cmath.exp(rep) - _dd1(rep, other)) / (rep - other)
    return (_dd1(z[0], z[1]) - _dd1(z[1], z[2])) / (z[0] - z[2])


def _coerce(v):
    return Fraction(v) if isinstance(v, Rational) else float(v)


def triangle_exp_integral(p, q, vertices: Sequence[Sequence]) -> complex:
    """``integral over T of exp(2 pi i (p u + q v)) du dv`` in closed form.

    ``vertices`` are the three corners of T.  With rational inputs every
    degenerate frequency case is detected exactly.
    """
    (u0, v0), (u1, v1), (u2, v2) = [tuple(_coerce(c) for c in vert) for vert in vertices]
    p, q = _coerce(p), _coerce(q)
    e1 = (u1 - u0, v1 - v0)
    e2 = (u2 - u0, v2 - v0)
    jac = e1[0] * e2[1] - e1[1] * e2[0]
    if jac == 0:
        raise ValueError("degenerate triangle")
    t1 = p * e1[0] + q * e1[1]
    t2 = p * e2[0] + q * e2[1]
    base = p * u0 + q * v0
    if isinstance(base, Fraction):
        base -= math.floor(base)
    zero = Fraction(0) if isinstance(t1, Fraction) and isinstance(t2, Fraction) else 0.0
    # Hermite-Genocchi: integral over the unit simplex equals exp[0, z1, z2]
    return abs(float(jac)) * cmath.exp(1j * TWO_PI * float(base)) * _exp_divided_difference((zero, t1, t2))


def family_triangles(kind, family) -> List[Tuple[Tuple[Fraction, Fraction], ...]]:
    """The base triangle F and its reflected copy, in alpha-check coordinates."""
    kind, family = AlgebraKind.parse(kind), Family.parse(family)
    data = root_data(kind)
    base = domain_spec(kind).vertices_F
    reflected = tuple(reflect_coweight(kind, family.reflection, v) for v in base)
    return [
        tuple(change_basis(v, Basis.OMEGA_VEE, Basis.ALPHA_VEE, data) for v in tri)
        for tri in (base, reflected)
    ]


def euclidean_jacobian(kind) -> float:
    """Area element of alpha-check coordinates: ``sqrt(det Gram(alpha-check))``."""
    data = root_data(kind)
    return math.sqrt(float(mat_det(data.gram(Basis.ALPHA_VEE))))


def continuous_inner(kind, family, lam: Sequence[int], lam2: Sequence[int], *, check_cone: bool = True) -> complex:
    """``integral over the family domain of Xi_lam conj(Xi_lam2)`` (Euclidean measure)."""
    kind, family = AlgebraKind.parse(kind), Family.parse(family)
    if check_cone:
        for v in (lam, lam2):
            if not in_weight_cone(v, kind, family):
                raise ContractError(f"{tuple(v)} is not an admissible label for {family.value}")
    terms = family_terms(kind, family)
    freq: Dict[Tuple[int, int], int] = defaultdict(int)
    for s1, m1 in terms:
        a = (m1[0][0] * lam[0] + m1[0][1] * lam[1], m1[1][0] * lam[0] + m1[1][1] * lam[1])
        for s2, m2 in terms:
            b = (m2[0][0] * lam2[0] + m2[0][1] * lam2[1], m2[1][0] * lam2[0] + m2[1][1] * lam2[1])
            freq[(a[0] - b[0], a[1] - b[1])] += s1 * s2
    total = 0j
    for tri in family_triangles(kind, family):
        for (p, q), weight in freq.items():
            if weight:
                total += weight * triangle_exp_integral(p, q, tri)
    return total * euclidean_jacobian(kind)


def continuous_norm(kind, family, lam: Sequence[int]) -> float:
    """Expected value of the continuous inner product of ``Xi_lam`` with itself."""
    kind, family = AlgebraKind.parse(kind), Family.parse(family)
    K = float(root_data(kind).K)
    if family in (Family.S_MINUS, Family.L_MINUS):
        return K
    hom = family.kernel_hom
    return K * stab_order_d(kernel(hom, kind), lam)


# discrete transforms ------------------------------------------------------------


def epsilon(kind, family, M: int) -> np.ndarray:
    """Torus orbit sizes of the family's kernel on ``F_M`` (grid order)."""
    kind, family = AlgebraKind.parse(kind), Family.parse(family)
    sub = kernel(family.kernel_hom, kind)
    return np.array([orbit_size_torus(sub, p.alpha_vee, M) for p in grid_points(kind, family, M)], dtype=float)


def stabilizer_h(kind, family, M: int) -> np.ndarray:
    """Stabilizer orders of the family's kernel on ``Lambda_M`` (weight order)."""
    kind, family = AlgebraKind.parse(kind), Family.parse(family)
    sub = kernel(family.kernel_hom, kind)
    return np.array([stab_order_h(sub, w.coords, M) for w in weight_points(kind, family, M)], dtype=float)


def normalization(kind, family, M: int) -> np.ndarray:
    """Diagonal ``k M^2 h_lam`` of the discrete Gram matrix.

    The l- normalization has no ``h`` factor; on its weight set the computed
    stabilizers are all 1, so including it would change nothing.
    """
    kind, family = AlgebraKind.parse(kind), Family.parse(family)
    scale = root_data(kind).k * M * M
    if family is Family.L_MINUS:
        return np.full(len(weight_points(kind, family, M)), float(scale))
    return scale * stabilizer_h(kind, family, M)


def gram_discrete(kind, family, M: int) -> np.ndarray:
    """``G[i, j] = sum_x eps(x) Xi_i(x) conj(Xi_j(x))`` over ``F_M`` (weight order)."""
    grid = grid_points(kind, family, M)
    weights = weight_points(kind, family, M)
    if not grid:
        return np.zeros((len(weights), len(weights)), dtype=complex)
    V = xi_matrix(kind, family, weights, grid, M)
    return (V * epsilon(kind, family, M)) @ V.conj().T


@dataclass
class SampleVector:
    """Function values on the grid of one family and level."""

    kind: AlgebraKind
    family: Family
    M: int
    values: Dict[GridPoint, complex] = field(default_factory=dict)

    def as_array(self) -> np.ndarray:
        grid = grid_points(self.kind, self.family, self.M)
        missing = [p for p in grid if p not in self.values]
        if missing:
            raise IncompleteVectorError("sample vector", missing)
        return np.array([self.values[p] for p in grid], dtype=complex)

    @classmethod
    def from_array(cls, kind, family, M: int, data) -> "SampleVector":
        kind, family = AlgebraKind.parse(kind), Family.parse(family)
        grid = grid_points(kind, family, M)
        return cls(kind, family, M, dict(zip(grid, np.asarray(data, dtype=complex))))

    @classmethod
    def from_function(cls, kind, family, M: int, func) -> "SampleVector":
        """Sample ``func(x)`` where ``x`` is the exact alpha-check point."""
        grid = grid_points(kind, family, M)
        return cls(AlgebraKind.parse(kind), Family.parse(family), M, {p: complex(func(p.alpha_vee)) for p in grid})


@dataclass
class CoeffVector:
    """Expansion coefficients indexed by the weights of one family and level."""

    kind: AlgebraKind
    family: Family
    M: int
    values: Dict[WeightPoint, complex] = field(default_factory=dict)

    def as_array(self) -> np.ndarray:
        weights = weight_points(self.kind, self.family, self.M)
        missing = [w for w in weights if w not in self.values]
        if missing:
            raise IncompleteVectorError("coefficient vector", missing)
        return np.array([self.values[w] for w in weights], dtype=complex)

    @classmethod
    def from_array(cls, kind, family, M: int, data) -> "CoeffVector":
        kind, family = AlgebraKind.parse(kind), Family.parse(family)
        weights = weight_points(kind, family, M)
        return cls(kind, family, M, dict(zip(weights, np.asarray(data, dtype=complex))))


def _require_nonempty(kind, family, M):
    if not grid_points(kind, family, M):
        raise ValueError(f"the {family.value} grid of {kind.value} at M={M} is empty")


def forward_discrete(samples: SampleVector) -> CoeffVector:
    """Expansion coefficients of sampled data."""
    kind, family, M = samples.kind, samples.family, samples.M
    _require_nonempty(kind, family, M)
    f = samples.as_array()
    V = xi_matrix(kind, family, weight_points(kind, family, M), grid_points(kind, family, M), M)
    coeffs = (V.conj() @ (epsilon(kind, family, M) * f)) / normalization(kind, family, M)
    return CoeffVector.from_array(kind, family, M, coeffs)


def inverse_discrete(coeffs: CoeffVector) -> SampleVector:
    """Grid values of ``sum_lam c_lam Xi_lam``."""
    kind, family, M = coeffs.kind, coeffs.family, coeffs.M
    _require_nonempty(kind, family, M)
    c = coeffs.as_array()
    V = xi_matrix(kind, family, weight_points(kind, family, M), grid_points(kind, family, M), M)
    return SampleVector.from_array(kind, family, M, c @ V)


# serialization -------------------------------------------------------------------

_VECTOR_TYPES = {"samples": SampleVector, "coefficients": CoeffVector}


def vector_to_json(vec) -> dict:
    kind = "samples" if isinstance(vec, SampleVector) else "coefficients"
    index = (
        grid_points(vec.kind, vec.family, vec.M)
        if kind == "samples"
        else weight_points(vec.kind, vec.family, vec.M)
    )
    entries = []
    for p in index:
        if p in vec.values:
            z = complex(vec.values[p])
            entries.append({"cab": list(p.cab), "sheet": p.sheet.value, "re": z.real, "im": z.imag})
    return {
        "algebra": vec.kind.value,
        "family": vec.family.value,
        "M": vec.M,
        "vector": kind,
        "entries": entries,
    }


def vector_from_json(doc: dict, expect: str = None, *, algebra=None, family=None, M=None, complete: bool = True):
    """Rebuild a :class:`SampleVector` or :class:`CoeffVector` from its JSON form.

    ``expect`` restricts the vector type; ``algebra``, ``family`` and ``M``,
    when given, must agree with the header.
    """
    if not isinstance(doc, dict):
        raise SchemaError("top-level JSON value must be an object")
    for key in ("algebra", "family", "M", "vector", "entries"):
        if key not in doc:
            raise SchemaError(f"missing field {key!r}")
    if doc["vector"] not in _VECTOR_TYPES:
        raise SchemaError(f"field 'vector' must be 'samples' or 'coefficients', got {doc['vector']!r}")
    if expect is not None and doc["vector"] != expect:
        raise SchemaError(f"expected a {expect} vector, got {doc['vector']}")
    try:
        kind = AlgebraKind.parse(doc["algebra"])
        fam = Family.parse(doc["family"])
        level = int(doc["M"])
    except (ValueError, TypeError) as exc:
        raise SchemaError(str(exc)) from None
    if level < 1:
        raise SchemaError("M must be a positive integer")
    for name, given, actual in (("algebra", algebra, kind), ("family", family, fam), ("M", M, level)):
        if given is None:
            continue
        wanted = {"algebra": AlgebraKind.parse, "family": Family.parse, "M": int}[name](given)
        if wanted != actual:
            raise MismatchError(f"file has {name}={_show(actual)} but {_show(wanted)} was requested")

    cls = _VECTOR_TYPES[doc["vector"]]
    index = grid_points(kind, fam, level) if cls is SampleVector else weight_points(kind, fam, level)
    lookup = {(tuple(p.cab), p.sheet.value): p for p in index}
    values = {}
    if not isinstance(doc["entries"], list):
        raise SchemaError("field 'entries' must be a list")
    for entry in doc["entries"]:
        try:
            key = (tuple(int(v) for v in entry["cab"]), entry.get("sheet", Sheet.BASE.value))
            z = complex(float(entry["re"]), float(entry["im"]))
        except (KeyError, TypeError, ValueError, AttributeError):
            raise SchemaError(f"malformed entry {entry!r}") from None
        if key not in lookup:
            raise SchemaError(f"entry {list(key[0])} ({key[1]}) is not an index of the {fam.value} set at M={level}")
        if lookup[key] in values:
            raise SchemaError(f"duplicate entry {list(key[0])} ({key[1]})")
        values[lookup[key]] = z
    vec = cls(kind, fam, level, values)
    if complete:
        vec.as_array()
    return vec


def _show(value) -> str:
    return getattr(value, "value", value)


def dump_vector(vec, path) -> None:
    Path(path).write_text(json.dumps(vector_to_json(vec), indent=1))


def load_vector(path, expect: str = None, **kwargs):
    return vector_from_json(json.loads(Path(path).read_text()), expect, **kwargs)

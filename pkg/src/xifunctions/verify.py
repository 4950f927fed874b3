"""Property suites that check the library against its defining identities.

Each suite returns a :class:`SuiteResult` per algebra.  Suites are pure and
seeded, so a report is reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import AlgebraKind, Basis, change_basis, root_data
from .domains import Family, domain_spec, grid_points, in_weight_cone, weight_points
from .orbitfn import psi, xi, xi_closed_form
from .products import check_reference_examples, decompose, verify_decomposition
from .tables import regenerate
from .transform import (
    CoeffVector,
    SampleVector,
    continuous_inner,
    continuous_norm,
    epsilon,
    forward_discrete,
    gram_discrete,
    inverse_discrete,
    normalization,
)
from .weyl import SignHom, generate_group, generator_matrix, kernel, sign

# 2 Xi = psi^first + psi^second
SUM_IDENTITIES: Dict[Family, Tuple[SignHom, SignHom]] = {
    Family.E_PLUS: (SignHom.ONE, SignHom.E),
    Family.E_MINUS: (SignHom.S, SignHom.L),
    Family.S_PLUS: (SignHom.ONE, SignHom.S),
    Family.S_MINUS: (SignHom.L, SignHom.E),
    Family.L_PLUS: (SignHom.ONE, SignHom.L),
    Family.L_MINUS: (SignHom.S, SignHom.E),
}

# boundary mirrors of F on which every function of the family vanishes
ZERO_SETS: Dict[Family, Tuple[str, ...]] = {
    Family.E_MINUS: ("s&l", "s&0"),
    Family.S_MINUS: ("l", "0"),
    Family.L_MINUS: ("s",),
}


@dataclass
class VerifyConfig:
    seed: int = 0
    max_M: int = 8
    tol_identity: float = 1e-10
    tol_gram: float = 1e-8
    samples: int = 200


@dataclass
class SuiteResult:
    suite: str
    kind: AlgebraKind
    passed: bool
    max_error: Optional[float] = None
    info: List[str] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)

    def lines(self) -> List[str]:
        err = "" if self.max_error is None else f" max_error={self.max_error:.3e}"
        out = [f"{'PASS' if self.passed else 'FAIL'} {self.suite} {self.kind.value}{err}"]
        out += [f"  INFO {line}" for line in self.info]
        out += [f"  FAIL {line}" for line in self.failures]
        return out


class _Tracker:
    """Collects a running max error and the names of failed checks."""

    def __init__(self, suite: str, kind: AlgebraKind):
        self.result = SuiteResult(suite, kind, True, 0.0)

    def check(self, name: str, error: float, tol: float) -> None:
        self.result.max_error = max(self.result.max_error, float(error))
        if not error <= tol:
            self.result.passed = False
            self.result.failures.append(f"{name}: {error:.3e} > {tol:.1e}")

    def require(self, name: str, ok: bool) -> None:
        if not ok:
            self.result.passed = False
            self.result.failures.append(name)


# helpers shared with the test suite ------------------------------------------------


def random_weights(rng: np.random.Generator, n: int, bound: int = 6) -> List[Tuple[int, int]]:
    return [tuple(int(v) for v in row) for row in rng.integers(-bound, bound + 1, size=(n, 2))]


def random_cone_weight(rng: np.random.Generator, kind, family, bound: int = 6) -> Tuple[int, int]:
    while True:
        lam = tuple(int(v) for v in rng.integers(-bound, bound + 1, size=2))
        if in_weight_cone(lam, kind, family):
            return lam


def mirror_points(kind, mirror: str, n: int, rng: np.random.Generator) -> List[Tuple[Fraction, Fraction]]:
    """Exact alpha-check points on a boundary piece of F.

    ``mirror`` is ``'s'``, ``'l'`` or ``'0'`` for a whole edge, or ``'s&l'``
    style for the vertex where two edges meet.
    """
    kind = AlgebraKind.parse(kind)
    data = root_data(kind)
    verts = domain_spec(kind).vertices_F
    # vertex 0 is the origin; vertex 1 + i has only coordinate i non-zero
    edge = {
        "0": (verts[1], verts[2]),
        data.labels[0]: (verts[0], verts[2]),
        data.labels[1]: (verts[0], verts[1]),
    }
    if "&" in mirror:
        first, second = mirror.split("&")
        common = set(edge[first]) & set(edge[second])
        pts = list(common)
    else:
        a, b = edge[mirror]
        ts = [Fraction(0), Fraction(1)] + [Fraction(int(k), 997) for k in rng.integers(1, 997, size=n)]
        pts = [tuple(a[j] + t * (b[j] - a[j]) for j in range(2)) for t in ts]
    return [change_basis(p, Basis.OMEGA_VEE, Basis.ALPHA_VEE, data) for p in pts]


def invariance_errors(kind, family, rng: np.random.Generator, n: int) -> Dict[str, float]:
    """Max deviations of the kernel, weight, periodicity and zero-set identities."""
    kind, family = AlgebraKind.parse(kind), Family.parse(family)
    sub = kernel(family.kernel_hom, kind)
    errs = {"kernel": 0.0, "weight": 0.0, "periodicity": 0.0, "zeros": 0.0}
    for lam in random_weights(rng, n):
        x = rng.random(2) * 4 - 2
        base = xi(kind, family, lam, x)
        for w in sub:
            tw = 1 if family.twist is None else sign(family.twist, w)
            errs["kernel"] = max(errs["kernel"], abs(xi(kind, family, lam, w.act_coroot(x)) - tw * base))
            errs["weight"] = max(errs["weight"], abs(xi(kind, family, w(lam), x) - tw * base))
        shift = rng.integers(-3, 4, size=2)
        errs["periodicity"] = max(errs["periodicity"], abs(xi(kind, family, lam, x + shift) - base))
    for mirror in ZERO_SETS.get(family, ()):
        pts = mirror_points(kind, mirror, n, rng)
        for lam, x in zip(random_weights(rng, len(pts)), pts):
            errs["zeros"] = max(errs["zeros"], abs(xi(kind, family, lam, x)))
    return errs


def sum_identity_error(kind, family, rng: np.random.Generator, n: int) -> float:
    first, second = SUM_IDENTITIES[Family.parse(family)]
    worst = 0.0
    for lam in random_weights(rng, n):
        x = rng.random(2)
        lhs = 2 * xi(kind, family, lam, x)
        rhs = psi(kind, first, lam, x) + psi(kind, second, lam, x)
        worst = max(worst, abs(lhs - rhs))
    return worst


def closed_form_error(kind, family, rng: np.random.Generator, n: int, reading: str = "corrected") -> float:
    lams = random_weights(rng, n)
    pts = rng.random((n, 2)) * 2 - 1
    worst = 0.0
    for lam, x in zip(lams, pts):
        worst = max(worst, abs(xi_closed_form(kind, family, lam, x, reading) - xi(kind, family, lam, x)))
    return worst


def continuous_pairs(kind, family, rng: np.random.Generator, n: int) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Weight pairs covering the generic and the two boundary patterns."""
    pool = [lam for lam in ((a, b) for a in range(-4, 6) for b in range(-4, 6)) if in_weight_cone(lam, kind, family)]
    edges = [lam for lam in pool if 0 in lam]
    pairs = []
    for lam in edges:
        pairs.append((lam, lam))
    while len(pairs) < n:
        i, j = rng.integers(0, len(pool), size=2)
        pairs.append((pool[i], pool[j]))
    for lam in edges[:4]:
        pairs.append((lam, pool[int(rng.integers(0, len(pool)))]))
    return pairs


def continuous_error(kind, family, lam, lam2) -> float:
    expected = continuous_norm(kind, family, lam) if tuple(lam) == tuple(lam2) else 0.0
    return abs(continuous_inner(kind, family, lam, lam2) - expected)


def gram_errors(kind, family, M: int) -> Tuple[float, float]:
    """Relative diagonal error and scaled off-diagonal error of the Gram matrix."""
    G = gram_discrete(kind, family, M)
    if G.size == 0:
        return 0.0, 0.0
    diag = normalization(kind, family, M)
    scale = root_data(kind).k * M * M
    rel = float(np.max(np.abs(np.diag(G) - diag) / diag))
    off = G - np.diag(np.diag(G))
    return rel, float(np.max(np.abs(off)) / scale) if off.size else 0.0


def random_complex(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def roundtrip_errors(kind, family, M: int, rng: np.random.Generator) -> Tuple[float, float, float]:
    """``(inverse(forward f) - f, forward(inverse c) - c, Parseval relative error)``."""
    n = len(grid_points(kind, family, M))
    if n == 0:
        return 0.0, 0.0, 0.0
    f = random_complex(rng, n)
    s = SampleVector.from_array(kind, family, M, f)
    c = forward_discrete(s)
    back = inverse_discrete(c).as_array()
    g = random_complex(rng, n)
    again = forward_discrete(inverse_discrete(CoeffVector.from_array(kind, family, M, g))).as_array()
    lhs = float(np.sum(epsilon(kind, family, M) * np.abs(f) ** 2))
    rhs = float(np.sum(normalization(kind, family, M) * np.abs(c.as_array()) ** 2))
    return (
        float(np.max(np.abs(back - f))),
        float(np.max(np.abs(again - g))),
        abs(lhs - rhs) / lhs,
    )


# suites -----------------------------------------------------------------------------


def suite_group(kind, cfg: VerifyConfig) -> SuiteResult:
    kind = AlgebraKind.parse(kind)
    t = _Tracker("group", kind)
    data = root_data(kind)
    group = generate_group(kind)
    t.require("group order", len(group) == data.weyl_order)
    labels = ("s", "l")
    for label in labels:
        g = generator_matrix(kind, label)
        t.require(f"r_{label} is an involution", _mul(g, g) == ((1, 0), (0, 1)))
    rot = _mul(generator_matrix(kind, "s"), generator_matrix(kind, "l"))
    power = ((1, 0), (0, 1))
    for _ in range(data.coxeter[0][1]):
        power = _mul(power, rot)
    t.require("Coxeter relation", power == ((1, 0), (0, 1)))
    for w in group:
        t.require(f"{w!r} word length parity", w.det == (-1) ** len(w.word))
    for hom in SignHom:
        for u in group:
            for v in group:
                if sign(hom, u * v) != sign(hom, u) * sign(hom, v):
                    t.require(f"sigma^{hom.value} is a homomorphism", False)
        if hom is not SignHom.ONE:
            t.require(f"|W^{hom.value}|", len(kernel(hom, kind)) == data.weyl_order // 2)
    for w in group:
        t.require("sigma^e is the determinant", sign(SignHom.E, w) == w.det)
    t.result.max_error = None
    return t.result


def _mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def suite_invariance(kind, cfg: VerifyConfig) -> SuiteResult:
    kind = AlgebraKind.parse(kind)
    t = _Tracker("invariance", kind)
    rng = np.random.default_rng(cfg.seed)
    for family in Family:
        for name, err in invariance_errors(kind, family, rng, 100).items():
            t.check(f"{family.value} {name}", err, cfg.tol_identity)
    return t.result


def suite_closed_forms(kind, cfg: VerifyConfig) -> SuiteResult:
    kind = AlgebraKind.parse(kind)
    t = _Tracker("closed-forms", kind)
    rng = np.random.default_rng(cfg.seed)
    for family in Family:
        t.check(family.value, closed_form_error(kind, family, rng, cfg.samples), cfg.tol_identity)
    if kind is AlgebraKind.G2:
        for reading in ("printed", "grouping-fixed"):
            err = closed_form_error(kind, Family.E_MINUS, rng, cfg.samples, reading)
            t.result.info.append(f"e- {reading} reading deviates by up to {err:.3e}")
    return t.result


def suite_sums(kind, cfg: VerifyConfig) -> SuiteResult:
    kind = AlgebraKind.parse(kind)
    t = _Tracker("sums", kind)
    rng = np.random.default_rng(cfg.seed)
    for family in Family:
        t.check(family.value, sum_identity_error(kind, family, rng, cfg.samples), cfg.tol_identity)
    return t.result


def suite_continuous(kind, cfg: VerifyConfig) -> SuiteResult:
    kind = AlgebraKind.parse(kind)
    t = _Tracker("continuous", kind)
    rng = np.random.default_rng(cfg.seed)
    for family in Family:
        for lam, lam2 in continuous_pairs(kind, family, rng, 20):
            t.check(f"{family.value} {lam} {lam2}", continuous_error(kind, family, lam, lam2), cfg.tol_identity)
    return t.result


def suite_discrete(kind, cfg: VerifyConfig) -> SuiteResult:
    kind = AlgebraKind.parse(kind)
    t = _Tracker("discrete", kind)
    for family in Family:
        for M in range(1, cfg.max_M + 1):
            t.require(
                f"{family.value} M={M} |F_M| = |Lambda_M|",
                len(grid_points(kind, family, M)) == len(weight_points(kind, family, M)),
            )
            rel, off = gram_errors(kind, family, M)
            t.check(f"{family.value} M={M} diagonal", rel, cfg.tol_gram)
            t.check(f"{family.value} M={M} off-diagonal", off, cfg.tol_gram)
    return t.result


def suite_transforms(kind, cfg: VerifyConfig) -> SuiteResult:
    kind = AlgebraKind.parse(kind)
    t = _Tracker("transforms", kind)
    rng = np.random.default_rng(cfg.seed)
    for family in Family:
        for M in range(2, cfg.max_M + 1):
            inv, fwd, parseval = roundtrip_errors(kind, family, M, rng)
            t.check(f"{family.value} M={M} inverse(forward)", inv, cfg.tol_identity)
            t.check(f"{family.value} M={M} forward(inverse)", fwd, cfg.tol_identity)
            t.check(f"{family.value} M={M} Parseval", parseval, cfg.tol_gram)
    return t.result


FAMILY_PAIRS = [(a, b) for a in Family for b in Family if a.letter == b.letter]


def suite_products(kind, cfg: VerifyConfig) -> SuiteResult:
    kind = AlgebraKind.parse(kind)
    t = _Tracker("products", kind)
    rng = np.random.default_rng(cfg.seed)
    if kind is AlgebraKind.C2:
        for check in check_reference_examples(seed=cfg.seed):
            line = check.line
            name = f"{line.left.value} * {line.right.value}"
            t.check(f"{name} computed", check.computed_error, cfg.tol_identity)
            if check.matches:
                t.result.info.append(f"{name}: reference line regenerated term for term")
            else:
                t.result.info.append(
                    f"{name}: reference line '{line.printed}' differs from computed '{check.computed}'; "
                    f"reference reading error {check.printed_error:.3e}, computed {check.computed_error:.3e}"
                )
    for left, right in FAMILY_PAIRS:
        for _ in range(50):
            lam, lam2 = random_weights(rng, 2)
            d = decompose(left, right, lam, lam2, kind)
            err = verify_decomposition(d, left, right, lam, lam2, kind, trials=20, rng=rng)
            t.check(f"{left.value} * {right.value} {lam} {lam2}", err, cfg.tol_identity)
    return t.result


def suite_tables(kind, cfg: VerifyConfig) -> SuiteResult:
    kind = AlgebraKind.parse(kind)
    t = _Tracker("tables", kind)
    for row in regenerate(kind, range(1, cfg.max_M + 1)):
        t.require(f"{row.table} {row.pattern}", row.passed)
    t.result.max_error = None
    return t.result


SUITES: Dict[str, Callable[[AlgebraKind, VerifyConfig], SuiteResult]] = {
    "group": suite_group,
    "invariance": suite_invariance,
    "closed-forms": suite_closed_forms,
    "sums": suite_sums,
    "continuous": suite_continuous,
    "discrete": suite_discrete,
    "transforms": suite_transforms,
    "products": suite_products,
    "tables": suite_tables,
}


def run(kinds: Sequence, suites: Sequence[str], cfg: VerifyConfig) -> List[SuiteResult]:
    """Run ``suites`` for every algebra in ``kinds`` in a fixed order."""
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    return [SUITES[s](AlgebraKind.parse(k), cfg) for s in suites for k in kinds]

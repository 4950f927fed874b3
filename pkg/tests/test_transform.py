import json
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from xifunctions.algebra import AlgebraKind, root_data
from xifunctions.domains import Family, Region, domain_membership, grid_points, in_weight_cone, weight_points
from xifunctions.orbitfn import xi, xi_array
from xifunctions.transform import (
    CoeffVector,
    ContractError,
    IncompleteVectorError,
    MismatchError,
    SampleVector,
    SchemaError,
    continuous_inner,
    continuous_norm,
    dump_vector,
    epsilon,
    euclidean_jacobian,
    family_triangles,
    forward_discrete,
    gram_discrete,
    inverse_discrete,
    load_vector,
    normalization,
    stabilizer_h,
    triangle_exp_integral,
    vector_from_json,
    vector_to_json,
)

KINDS = list(AlgebraKind)
FAMILIES = list(Family)


def _quad_triangle(f, tri):
    (u0, v0), (u1, v1), (u2, v2) = [tuple(float(c) for c in p) for p in tri]
    jac = abs((u1 - u0) * (v2 - v0) - (u2 - u0) * (v1 - v0))

    def part(g):
        val, _ = integrate.dblquad(
            lambda t, s: g(u0 + s * (u1 - u0) + t * (u2 - u0), v0 + s * (v1 - v0) + t * (v2 - v0)),
            0,
            1,
            0,
            lambda s: 1 - s,
            epsabs=1e-12,
            epsrel=1e-12,
        )
        return val

    return jac * (part(lambda u, v: f(u, v).real) + 1j * part(lambda u, v: f(u, v).imag))


@pytest.mark.parametrize(
    "p,q,tri",
    [
        (0, 0, [(0, 0), (1, 0), (0, 1)]),
        (3, -1, [(0, 0), (Fraction(1, 2), 0), (0, 1)]),
        (2, 2, [(0, 0), (1, 0), (0, 1)]),  # equal edge frequencies
        (1, 0, [(0, 0), (0, 1), (1, 1)]),  # one edge has zero frequency
        (Fraction(5, 2), Fraction(-7, 3), [(Fraction(1, 3), 0), (1, Fraction(1, 5)), (0, 1)]),
        (0.37, 1.9, [(0.1, 0.2), (0.8, 0.3), (0.4, 0.9)]),
    ],
)
def test_triangle_integral_against_quadrature(p, q, tri):
    exact = triangle_exp_integral(p, q, tri)
    oracle = _quad_triangle(lambda u, v: np.exp(2j * np.pi * (float(p) * u + float(q) * v)), tri)
    assert abs(exact - oracle) < 1e-9


def test_degenerate_triangle_rejected():
    with pytest.raises(ValueError):
        triangle_exp_integral(1, 1, [(0, 0), (1, 1), (2, 2)])


@pytest.mark.parametrize("kind", KINDS)
def test_domain_triangles_cover_domain(kind):
    # centroid of each triangle lies in the family domain
    for family in FAMILIES:
        tris = family_triangles(kind, family)
        regions = []
        for tri in tris:
            cx = sum(p[0] for p in tri) / 3
            cy = sum(p[1] for p in tri) / 3
            regions.append(domain_membership((cx, cy), kind, family))
        assert regions == [Region.INTERIOR, Region.REFLECTED]


@pytest.mark.parametrize("kind,family,lam,lam2", [("C2", "s+", (1, 1), (1, 1)), ("G2", "l-", (1, 1), (2, 1)), ("C2", "e-", (2, 0), (2, 0))])
def test_continuous_inner_against_quadrature(kind, family, lam, lam2):
    def f(u, v):
        return xi(kind, family, lam, (u, v)) * np.conj(xi(kind, family, lam2, (u, v)))

    oracle = sum(_quad_triangle(f, tri) for tri in family_triangles(kind, family)) * euclidean_jacobian(kind)
    assert abs(continuous_inner(kind, family, lam, lam2) - oracle) < 1e-8


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("family", FAMILIES)
def test_continuous_orthogonality(kind, family):
    labels = [lam for lam in ((a, b) for a in range(-2, 4) for b in range(-2, 4)) if in_weight_cone(lam, kind, family)]
    for lam in labels:
        for lam2 in labels:
            val = continuous_inner(kind, family, lam, lam2)
            expected = continuous_norm(kind, family, lam) if lam == lam2 else 0
            assert abs(val - expected) < 1e-9


def test_continuous_norm_constants():
    assert continuous_norm("C2", "s+", (3, 0)) == pytest.approx(4)
    assert continuous_norm("C2", "s-", (1, 1)) == pytest.approx(2)
    assert continuous_norm("G2", "e+", (0, 0)) == pytest.approx(6 * np.sqrt(3))


def test_continuous_contract():
    with pytest.raises(ContractError):
        continuous_inner("C2", "s-", (3, 0), (1, 1))


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("family", FAMILIES)
def test_gram_is_diagonal(kind, family):
    for M in (1, 2, 3, 4, 5, 7):
        G = gram_discrete(kind, family, M)
        n = len(weight_points(kind, family, M))
        assert G.shape == (n, n)
        assert np.allclose(G, np.diag(normalization(kind, family, M)), atol=1e-9)


def test_l_minus_stabilizers_are_trivial():
    for kind in KINDS:
        for M in range(1, 13):
            assert set(stabilizer_h(kind, "l-", M)) <= {1.0}


def test_s_minus_epsilon_is_constant():
    assert set(epsilon("C2", "s-", 7)) == {4.0}
    assert set(epsilon("G2", "s-", 9)) == {6.0}


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("family", FAMILIES)
def test_round_trips(kind, family):
    rng = np.random.default_rng(11)
    for M in (2, 3, 6):
        n = len(grid_points(kind, family, M))
        if n == 0:
            continue
        f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        s = SampleVector.from_array(kind, family, M, f)
        assert np.max(np.abs(inverse_discrete(forward_discrete(s)).as_array() - f)) < 1e-10
        c = CoeffVector.from_array(kind, family, M, f)
        assert np.max(np.abs(forward_discrete(inverse_discrete(c)).as_array() - f)) < 1e-10


def test_forward_of_single_function_is_unit_vector():
    kind, family, M = "C2", "s+", 4
    lam = weight_points(kind, family, M)[3]
    s = SampleVector.from_function(kind, family, M, lambda x: xi(kind, family, lam.coords, x))
    c = forward_discrete(s).as_array()
    expected = np.zeros(len(c))
    expected[3] = 1
    assert np.max(np.abs(c - expected)) < 1e-12


def test_empty_grid_behaviour():
    assert len(grid_points("C2", "s-", 1)) == 0
    assert gram_discrete("C2", "s-", 1).shape == (0, 0)
    with pytest.raises(ValueError):
        forward_discrete(SampleVector.from_array("C2", "s-", 1, []))


def test_incomplete_vector_lists_missing_points():
    s = SampleVector.from_array("C2", "s+", 3, np.ones(8))
    victim = grid_points("C2", "s+", 3)[2]
    del s.values[victim]
    with pytest.raises(IncompleteVectorError, match=r"\[%d, %d, %d\]" % victim.cab):
        forward_discrete(s)


def test_json_round_trip(tmp_path):
    rng = np.random.default_rng(2)
    n = len(grid_points("G2", "l+", 5))
    s = SampleVector.from_array("G2", "l+", 5, rng.standard_normal(n) + 1j * rng.standard_normal(n))
    path = tmp_path / "v.json"
    dump_vector(s, path)
    back = load_vector(path)
    assert back == s
    c = forward_discrete(s)
    assert vector_from_json(json.loads(json.dumps(vector_to_json(c)))) == c


def test_json_errors():
    doc = vector_to_json(SampleVector.from_array("C2", "e+", 2, np.ones(len(grid_points("C2", "e+", 2)))))
    with pytest.raises(SchemaError):
        vector_from_json({k: v for k, v in doc.items() if k != "entries"})
    with pytest.raises(SchemaError):
        vector_from_json(doc, "coefficients")
    with pytest.raises(MismatchError):
        vector_from_json(doc, family="s+")
    bad = dict(doc, entries=doc["entries"] + [{"cab": [9, 9, 9], "sheet": "base", "re": 0, "im": 0}])
    with pytest.raises(SchemaError):
        vector_from_json(bad)
    dup = dict(doc, entries=doc["entries"] + doc["entries"][:1])
    with pytest.raises(SchemaError):
        vector_from_json(dup)
    short = dict(doc, entries=doc["entries"][1:])
    with pytest.raises(IncompleteVectorError):
        vector_from_json(short)


def test_float_sampling_helper_matches_exact():
    kind, family = "G2", "s-"
    x = np.array([0.1, 0.3])
    y = np.array([0.2, 0.05])
    vals = xi_array(kind, family, (2, 3), x, y)
    for i in range(2):
        assert abs(vals[i] - xi(kind, family, (2, 3), (x[i], y[i]))) < 1e-13
    assert root_data(kind).k == 6

"""Exact scalar/polynomial/series layer: contract examples and invariants."""

import random
from fractions import Fraction as F

import pytest

from k2forge.bipoly import BiPoly
from k2forge.errors import InsufficientPrecisionError, PreconditionError
from k2forge.linalg import vandermonde_solve
from k2forge.series import PowerSeries
from k2forge.unipoly import UniPoly

rng = random.Random(20260808)


def rand_rat(bits=8):
    return F(rng.randint(-(1 << bits), 1 << bits), rng.randint(1, 1 << 4))


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def test_poly_eval_square():
    p = UniPoly([0, 0, 1])
    assert p(F(3, 2)) == F(9, 4)


def test_poly_eval_zero_poly():
    assert UniPoly.zero()(F(7, 3)) == 0
    assert BiPoly.zero()(1, 2) == 0


def test_poly_eval_interpolated_f1():
    # interpolant through (a_i^2, -2 a_i^5) for a = (1, 1/2, 1/4)
    a = [F(1), F(1, 2), F(1, 4)]
    nodes = [x * x for x in a]
    values = [-2 * x**5 for x in a]
    f1 = UniPoly(vandermonde_solve(nodes, values))
    assert f1(1) == -2
    for n, v in zip(nodes, values):
        assert f1(n) == v


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def test_resultant_substitution_case():
    p = BiPoly.parse("y - x^2")
    assert p.resultant(BiPoly.y(), "y") == UniPoly([0, 0, 1])


def test_resultant_2x2_sylvester():
    p = BiPoly.parse("y^2 - x")
    q = BiPoly.parse("y + 1")
    r = p.resultant(q, "y")
    assert r in (UniPoly([1, -1]), UniPoly([-1, 1]))


def test_resultant_common_factor_is_zero():
    p = BiPoly.parse("y^2 - x")
    assert p.resultant(p, "y").is_zero()


def test_resultant_nothing_to_eliminate():
    with pytest.raises(PreconditionError, match="nothing to eliminate"):
        BiPoly.parse("x + 1").resultant(BiPoly.parse("x - 1"), "y")


def test_resultant_multiplicative():
    for _ in range(40):
        def rbp():
            return BiPoly({(rng.randint(0, 2), rng.randint(0, 2)): rand_rat(4)
                           for _ in range(3)})
        p, q, r = rbp(), rbp(), rbp()
        if not (p and q and r):
            continue
        try:
            lhs = (p * q).resultant(r, "y")
            rhs = p.resultant(r, "y") * q.resultant(r, "y")
        except PreconditionError:
            continue
        assert lhs == rhs


def test_euclid_matches_sylvester():
    for _ in range(120):
        a = UniPoly([rand_rat(5) for _ in range(rng.randint(1, 6))])
        b = UniPoly([rand_rat(5) for _ in range(rng.randint(1, 6))])
        if a.is_zero() or b.is_zero():
            continue
        assert a.resultant(b) == a.sylvester_resultant(b)


# ---------------------------------------------------------------------------
# discriminants
# ---------------------------------------------------------------------------

def test_discriminant_quadratic():
    assert UniPoly([1, 3, 1]).discriminant() == 5  # b^2 - 4c at b=3, c=1


def test_discriminant_repeated_root():
    assert UniPoly([0, 0, 1]).discriminant() == 0


def test_discriminant_cubic_product_of_root_differences():
    p = UniPoly.from_roots([1, 2, 3])
    assert p.discriminant() == 4  # prod (r_i - r_j)^2


def test_discriminant_degree_zero_rejected():
    with pytest.raises(PreconditionError):
        UniPoly.const(5).discriminant()


def test_discriminant_zero_iff_repeated_factor():
    for _ in range(60):
        roots = [rand_rat(4) for _ in range(rng.randint(2, 4))]
        repeat = rng.random() < 0.5
        if repeat:
            roots.append(roots[0])
        p = UniPoly.from_roots(roots) * rand_rat(3)
        if p.degree < 1 or p.is_zero():
            continue
        assert (p.discriminant() == 0) == (repeat or len(set(roots)) < len(roots))


# ---------------------------------------------------------------------------
# Vandermonde solves
# ---------------------------------------------------------------------------

def test_vandermonde_published_instance():
    nodes = [F(1), F(1, 4), F(1, 16)]
    values = [F(-2), F(-1, 16), F(-1, 512)]
    b = vandermonde_solve(nodes, values)
    assert b[0] == F(-7, 360)


def test_vandermonde_constant():
    assert vandermonde_solve([F(0)], [F(5)]) == [F(5)]


def test_vandermonde_identity():
    assert vandermonde_solve([F(1), F(2)], [F(1), F(2)]) == [F(0), F(1)]


def test_vandermonde_repeated_nodes_rejected():
    with pytest.raises(PreconditionError, match="singular Vandermonde"):
        vandermonde_solve([F(1), F(1)], [F(0), F(1)])


def test_vandermonde_round_trip_200():
    for _ in range(200):
        n = rng.randint(1, 6)
        nodes = []
        while len(nodes) < n:
            x = F(rng.randint(-128, 128), rng.randint(1, 16))
            if x not in nodes:
                nodes.append(x)
        values = [F(rng.randint(-128, 128), rng.randint(1, 16)) for _ in range(n)]
        coeffs = vandermonde_solve(nodes, values)
        p = UniPoly(coeffs)
        assert all(p(x) == v for x, v in zip(nodes, values))


# ---------------------------------------------------------------------------
# root multiplicity
# ---------------------------------------------------------------------------

def test_root_multiplicity_double_and_triple():
    beta = F(5, 3)
    assert (UniPoly([-beta, 1]) ** 2).root_multiplicity(beta) == 2
    assert (UniPoly([-beta, 1]) ** 3).root_multiplicity(beta) == 3


def test_root_multiplicity_nonroot():
    assert UniPoly([1, 0, 1]).root_multiplicity(1) == 0


def test_root_multiplicity_zero_poly_rejected():
    with pytest.raises(PreconditionError):
        UniPoly.zero().root_multiplicity(0)


def test_rational_roots():
    p = UniPoly.from_roots([F(1, 2), F(1, 2), F(-3)]) * 4
    assert p.rational_roots() == [(F(-3), 1), (F(1, 2), 2)]


# ---------------------------------------------------------------------------
# power series
# ---------------------------------------------------------------------------

def test_series_invert_geometric():
    s = PowerSeries(0, [1, 1], 3)
    assert s.invert().coeffs == (F(1), F(-1), F(1))


def test_series_mul_valuations():
    prod = PowerSeries.t_power(-2, 8) * PowerSeries.t_power(3, 8)
    assert prod.valuation() == 1 and prod.leading() == 1


def test_series_compose():
    c = PowerSeries.t_power(2, 10).compose(PowerSeries(0, [1, 1], 10))
    assert c.coeff(0) == 1 and c.coeff(1) == 2 and c.coeff(2) == 1


def test_series_invert_zero_rejected():
    with pytest.raises(InsufficientPrecisionError, match="insufficient precision"):
        PowerSeries.zero(5).invert()


def test_series_invert_round_trip_100():
    for _ in range(100):
        v = rng.randint(-3, 3)
        cs = [rand_rat(4) for _ in range(6)]
        if cs[0] == 0:
            cs[0] = F(1)
        s = PowerSeries(v, cs, v + 8)
        prod = s * s.invert()
        assert prod.valuation() == 0 and prod.leading() == 1
        assert (prod - PowerSeries.const(1, prod.prec)).is_zero()


# ---------------------------------------------------------------------------
# canonical strings
# ---------------------------------------------------------------------------

def test_canonical_round_trip():
    s = "y^3 + (3/4)*x*y^2 - 2*x*y + x^4 - 1/4"
    p = BiPoly.parse(s)
    assert BiPoly.parse(p.canonical()) == p
    assert p.canonical() == "x^4 + y^3 + (3/4)*x*y^2 - 2*x*y - 1/4"


def test_canonical_random_round_trip():
    for _ in range(50):
        p = BiPoly({(rng.randint(0, 4), rng.randint(0, 4)): rand_rat(6)
                    for _ in range(rng.randint(1, 6))})
        assert BiPoly.parse(p.canonical()) == p

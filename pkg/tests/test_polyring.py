import random

import pytest

from nilgrass.grassmann import plucker_vector
from nilgrass.linalg import mat_mul
from nilgrass.polyring import (DEGREVLEX, LEX, MonomialOrder, Poly, PolyMatrix,
                               PolyRing, coefficient_matrix, parse_polynomial,
                               plucker_ring, poly_matrix_from_rational,
                               univariate_ring, wedge_power)
from nilgrass.qq import QQ, random_rational


@pytest.fixture
def xyz():
    return PolyRing(["x", "y", "z"])


def random_poly(ring, rng, max_terms=5, max_deg=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mon = [0] * ring.nvars
        for _ in range(rng.randint(0, max_deg)):
            mon[rng.randrange(ring.nvars)] += 1
        terms[tuple(mon)] = random_rational(rng, 6, 3)
    return ring.from_terms(terms)


class TestArithmetic:
    def test_laws_randomized(self, xyz):
        rng = random.Random(5)
        for _ in range(40):
            a, b, c = (random_poly(xyz, rng) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a
            assert a - a == xyz.zero()

    def test_pow(self, xyz):
        x = xyz.var("x")
        y = xyz.var("y")
        assert (x + y) ** 2 == x * x + 2 * x * y + y * y
        assert (x + 1) ** 0 == xyz.one()

    def test_scalar_ops(self, xyz):
        x = xyz.var("x")
        assert 2 * x - x == x
        assert (x + 3) - 3 == x

    def test_degree_and_homogeneous(self, xyz):
        x, y = xyz.var("x"), xyz.var("y")
        assert (x * y + y ** 2).is_homogeneous()
        assert not (x + y * y).is_homogeneous()
        assert xyz.zero().degree() == -1

    def test_cross_ring_rejected(self, xyz):
        other = PolyRing(["u"])
        with pytest.raises(ValueError):
            xyz.var("x") + other.var("u")


class TestSubstitute:
    def test_numeric(self, xyz):
        x = xyz.var("x")
        assert (x ** 2).substitute({"x": QQ(3, 2)}) == xyz.const(QQ(9, 4))

    def test_empty_is_identity(self, xyz):
        p = xyz.var("x") * xyz.var("y") + 1
        assert p.substitute({}) == p

    def test_unknown_variable(self, xyz):
        with pytest.raises(ValueError):
            xyz.var("x").substitute({"w": QQ(1)})

    def test_polynomial_binding(self, xyz):
        x, y = xyz.var("x"), xyz.var("y")
        assert (x * x).substitute({"x": x + y}) == (x + y) ** 2

    def test_quadric_vanishes_on_decomposable(self):
        # oracle: the Gr(2,4) relation on actual minors of a rational matrix
        rng = random.Random(12)
        ring = plucker_ring(4, 2)
        q = (ring.var("p_{1,2}") * ring.var("p_{3,4}")
             - ring.var("p_{1,3}") * ring.var("p_{2,4}")
             + ring.var("p_{1,4}") * ring.var("p_{2,3}"))
        for _ in range(10):
            L = [[random_rational(rng) for _ in range(4)] for _ in range(2)]
            assert q.evaluate(plucker_vector(L)) == 0


class TestOrders:
    def test_degrevlex_on_quadric(self):
        ring = plucker_ring(4, 2)
        q = parse_polynomial(
            "p_{1,2}*p_{3,4} - p_{1,3}*p_{2,4} + p_{1,4}*p_{2,3}", ring)
        lead, coeff = q.leading(DEGREVLEX)
        assert Poly(ring, {lead: coeff}) == ring.var("p_{1,4}") * ring.var("p_{2,3}")

    def test_lex(self, xyz):
        x, y = xyz.var("x"), xyz.var("y")
        assert (x + y ** 3).leading(LEX)[0] == (1, 0, 0)

    def test_precedence_permutation(self, xyz):
        reversed_order = MonomialOrder("lex", precedence=[2, 1, 0])
        p = xyz.var("x") + xyz.var("z")
        assert p.leading(reversed_order)[0] == (0, 0, 1)


class TestTextFormat:
    def test_canonical_output(self):
        ring = plucker_ring(4, 2)
        q = (ring.var("p_{1,2}") * ring.var("p_{3,4}")
             - ring.var("p_{1,3}") * ring.var("p_{2,4}")
             + ring.var("p_{1,4}") * ring.var("p_{2,3}"))
        assert q.to_text() == "p_{1,4}*p_{2,3} - p_{1,3}*p_{2,4} + p_{1,2}*p_{3,4}"

    def test_coefficients_and_powers(self, xyz):
        p = parse_polynomial("3/2*x^2*y - z + 5", xyz)
        assert p.to_text() == "3/2*x^2*y - z + 5"

    def test_roundtrip_random(self, xyz):
        rng = random.Random(8)
        for _ in range(30):
            p = random_poly(xyz, rng)
            assert parse_polynomial(p.to_text(), xyz) == p

    def test_parse_leading_minus(self, xyz):
        assert parse_polynomial("-x", xyz) == -xyz.var("x")

    def test_parse_rejects_unknown(self, xyz):
        with pytest.raises(ValueError):
            parse_polynomial("x + q", xyz)

    def test_zero(self, xyz):
        assert xyz.zero().to_text() == "0"


def _wedge_of_rational(M, l):
    ring = univariate_ring("z")
    return wedge_power(poly_matrix_from_rational(ring, M), l)


class TestWedge:
    def test_identity(self):
        ring = univariate_ring("z")
        W = wedge_power(PolyMatrix.identity(ring, 4), 2)
        assert W == PolyMatrix.identity(ring, 6)

    def test_diagonal(self):
        W = _wedge_of_rational([[2, 0, 0], [0, 3, 0], [0, 0, 5]], 2)
        ring = W.ring
        for i in range(3):
            for j in range(3):
                expected = [6, 10, 15][i] if i == j else 0
                assert W[i, j] == ring.const(expected)

    def test_degenerate_l0(self):
        W = _wedge_of_rational([[1, 2], [3, 4]], 0)
        assert W.rows == W.cols == 1
        assert W[0, 0] == W.ring.one()

    def test_multiplicative(self):
        rng = random.Random(21)
        for n, l in ((3, 2), (4, 2), (5, 3), (6, 2)):
            A = [[random_rational(rng, 4, 2) for _ in range(n)] for _ in range(n)]
            B = [[random_rational(rng, 4, 2) for _ in range(n)] for _ in range(n)]
            left = _wedge_of_rational(mat_mul(A, B), l)
            right = _wedge_of_rational(A, l) * _wedge_of_rational(B, l)
            assert left == right

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            _wedge_of_rational([[1]], 2)


def _example_wedge_matrix(eps):
    """wedge_2(Id + zT) for the rank-two nilpotent with parameter eps."""
    ring = univariate_ring("z")
    z = ring.var("z")
    T = [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, eps], [0, 0, 0, 0]]
    entries = [[ring.const(1 if i == j else 0) + z * QQ(T[i][j])
                for j in range(4)] for i in range(4)]
    return wedge_power(PolyMatrix(ring, entries), 2)


# canonical order (12,13,14,23,24,34) -> presentation order (12,13,23,14,24,34)
_PRESENTATION_PERM = [0, 1, 3, 2, 4, 5]


class TestWedgeGolden:
    def test_unipotent_rank_two(self):
        W = _example_wedge_matrix(1)
        ring = W.ring
        z = ring.var("z")
        rows = [
            [1, 0, 0, 0, 0, 0],
            [0, 1, z, z, z * z, 0],
            [0, 0, 1, 0, z, 0],
            [0, 0, 0, 1, z, 0],
            [0, 0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0, 1],
        ]
        for i in range(6):
            for j in range(6):
                expected = rows[i][j]
                if not isinstance(expected, Poly):
                    expected = ring.const(expected)
                pi, pj = _PRESENTATION_PERM[i], _PRESENTATION_PERM[j]
                assert W[pi, pj] == expected

    def test_coefficient_matrices(self):
        W = _example_wedge_matrix(1)
        M0 = coefficient_matrix(W, 0, "z")
        assert M0 == [[QQ(1) if i == j else QQ(0) for j in range(6)] for i in range(6)]
        M3 = coefficient_matrix(W, 3, "z")
        assert all(x == 0 for row in M3 for x in row)

    def test_linear_coefficient_row_pattern(self):
        # P * [wedge]_1 has nonzero coordinates p13, eps*p13, eps*p23 + p14
        for eps in (1, 2):
            W = _example_wedge_matrix(eps)
            M1 = coefficient_matrix(W, 1, "z")
            ring = plucker_ring(4, 2)
            forms = []
            for col in range(6):
                form = ring.zero()
                for row in range(6):
                    if M1[row][col]:
                        form = form + M1[row][col] * ring.var(row)
                forms.append(form)
            by_presentation = [forms[_PRESENTATION_PERM[k]] for k in range(6)]
            p13, p14, p23 = (ring.var(name) for name in
                             ("p_{1,3}", "p_{1,4}", "p_{2,3}"))
            assert by_presentation[0].is_zero()
            assert by_presentation[1].is_zero()
            assert by_presentation[2] == p13
            assert by_presentation[3] == QQ(eps) * p13
            assert by_presentation[4] == QQ(eps) * p23 + p14
            assert by_presentation[5].is_zero()

    def test_coefficient_matrix_rejects_multivariate(self):
        ring = PolyRing(["z", "w"])
        M = PolyMatrix(ring, [[ring.var("z") * ring.var("w")]])
        with pytest.raises(ValueError):
            coefficient_matrix(M, 1, "z")

    def test_reconstruction(self):
        from nilgrass.grassmann import jordan_matrix

        matrices = [_example_wedge_matrix(2)]
        for lam, l in (((2, 2), 2), ((3, 1), 2), ((2, 1, 1), 3)):
            ring = univariate_ring("z")
            z = ring.var("z")
            T = jordan_matrix(lam)
            entries = [[ring.const(1 if i == j else 0) + z * T.entries[i][j]
                        for j in range(T.n)] for i in range(T.n)]
            matrices.append(wedge_power(PolyMatrix(ring, entries), l))
        for W in matrices:
            ring = W.ring
            z = ring.var("z")
            size = W.rows
            total = [[ring.zero() for _ in range(size)] for _ in range(size)]
            degree = max((p.degree() for row in W.entries for p in row), default=0)
            for i in range(degree + 1):
                Mi = coefficient_matrix(W, i, "z")
                for r in range(size):
                    for c in range(size):
                        total[r][c] = total[r][c] + Mi[r][c] * z ** i
            assert PolyMatrix(ring, total) == W

import random

import pytest

from nilgrass.combinat import box_partitions, dominance_leq, mu_max
from nilgrass.grassmann import (jordan_matrix, linear_form_row, shuffle_equations)
from nilgrass.linalg import echelon_of, mat_identity, mat_mul
from nilgrass.polyring import parse_polynomial, plucker_ring
from nilgrass.qq import QQ
from nilgrass.schubert import (BASIS_BY_POWER, BASIS_BY_VECTOR, BlockMatrix,
                               RectangularContext, assemble_block_matrix,
                               ball_strata, grassfixed_dim, lattice_subspace,
                               orbit_point, pair_sum_dim, point_satisfies,
                               random_block_matrix, schubert_dim,
                               shuffle_forms_by_power, transport_form_rows,
                               verify_containment)


class TestContext:
    def test_validation(self):
        with pytest.raises(ValueError):
            RectangularContext(0, 2)
        with pytest.raises(ValueError):
            RectangularContext(2, 2, basis="diagonal")

    def test_positions(self):
        ctx = RectangularContext(3, 2, basis=BASIS_BY_POWER)
        assert ctx.position(0, 1) == 0 and ctx.position(1, 1) == 3
        vec = RectangularContext(3, 2, basis=BASIS_BY_VECTOR)
        assert vec.position(0, 1) == 0 and vec.position(1, 1) == 1

    def test_shuffle_permutation_is_bijection(self):
        ctx = RectangularContext(3, 4)
        perm = ctx.shuffle_permutation()
        assert sorted(perm) == list(range(12))

    def test_multiplication_matrix_by_vector_is_jordan(self):
        ctx = RectangularContext(3, 2, basis=BASIS_BY_VECTOR)
        assert ctx.multiplication_matrix().entries == jordan_matrix((2, 2, 2)).entries


class TestLatticeSubspace:
    def test_golden_e145(self):
        ctx = RectangularContext(3, 2, basis=BASIS_BY_POWER)
        assert tuple(lattice_subspace((2, 1), ctx)) == (1, 4, 5)

    def test_full_box(self):
        ctx = RectangularContext(2, 3)
        assert tuple(lattice_subspace((3, 3), ctx)) == (1, 2, 3, 4, 5, 6)

    def test_empty(self):
        ctx = RectangularContext(2, 3)
        assert tuple(lattice_subspace((), ctx)) == ()

    def test_out_of_box(self):
        ctx = RectangularContext(2, 2)
        with pytest.raises(ValueError):
            lattice_subspace((3,), ctx)


class TestBlockMatrix:
    def test_identity(self):
        ctx = RectangularContext(2, 3)
        blocks = [mat_identity(2)] + [[[QQ(0)] * 2] * 2] * 2
        A = assemble_block_matrix(blocks, ctx)
        assert A.entries == mat_identity(6)

    def test_block_toeplitz_layout(self):
        ctx = RectangularContext(2, 2)
        A0 = [[QQ(1), QQ(2)], [QQ(3), QQ(4)]]
        A1 = [[QQ(5), QQ(6)], [QQ(7), QQ(8)]]
        A = assemble_block_matrix([A0, A1], ctx)
        assert A.entries[0][2:] == [QQ(5), QQ(6)]
        assert A.entries[2][:2] == [QQ(0), QQ(0)]
        assert A.entries[2][2:] == [QQ(1), QQ(2)]

    def test_wrong_shape(self):
        ctx = RectangularContext(2, 2)
        with pytest.raises(ValueError):
            assemble_block_matrix([mat_identity(2)], ctx)

    def test_product_matches_series_convolution(self):
        rng = random.Random(13)
        ctx = RectangularContext(2, 3)
        A = random_block_matrix(ctx, rng)
        B = random_block_matrix(ctx, rng)
        product = A * B
        assert product.entries == mat_mul(A.entries, B.entries)
        for k in range(3):
            expected = [[QQ(0)] * 2 for _ in range(2)]
            for i in range(k + 1):
                part = mat_mul(A.blocks[i], B.blocks[k - i])
                expected = [[expected[a][b] + part[a][b] for b in range(2)]
                            for a in range(2)]
            assert product.blocks[k] == expected


class TestOrbitPoint:
    def test_identity_gives_unit_vector(self):
        ctx = RectangularContext(3, 2)
        blocks = [mat_identity(3)] + [[[QQ(0)] * 3] * 3]
        A = assemble_block_matrix(blocks, ctx)
        point = orbit_point((2, 1), A, 3)
        rows = lattice_subspace((2, 1), ctx)
        from nilgrass.combinat import subset_rank
        expected_rank = subset_rank(6, rows)
        assert all((x == 1) == (k == expected_rank) for k, x in enumerate(point))

    def test_wrong_size_partition(self):
        ctx = RectangularContext(3, 2)
        A = random_block_matrix(ctx, random.Random(1))
        with pytest.raises(ValueError):
            orbit_point((2, 1), A, 2)

    def test_singular_block_rejected(self):
        ctx = RectangularContext(2, 2)
        zero = [[QQ(0)] * 2] * 2
        A = BlockMatrix(d=2, r=2, blocks=[zero, mat_identity(2)],
                        entries=assemble_block_matrix([zero, mat_identity(2)],
                                                      ctx).entries)
        with pytest.raises(ValueError):
            orbit_point((2,), A, 2)


class TestDimensions:
    def test_golden(self):
        assert schubert_dim((2, 1), RectangularContext(3, 2)) == 4
        assert schubert_dim((2, 2, 2), RectangularContext(3, 2)) == 0
        assert schubert_dim((4,), RectangularContext(2, 4)) == 4

    def test_identity_exhaustive(self):
        for d in range(1, 6):
            for r in range(1, 6):
                ctx = RectangularContext(d, r)
                for l in range(d * r + 1):
                    for mu in box_partitions(d, r, l):
                        assert schubert_dim(mu, ctx) == pair_sum_dim(mu, d)

    def test_grassfixed_golden(self):
        assert grassfixed_dim(RectangularContext(4, 2), 4) == 8
        assert grassfixed_dim(RectangularContext(2, 4), 3) == 3
        assert grassfixed_dim(RectangularContext(3, 2), 0) == 0

    def test_grassfixed_is_max_at_mu_max(self):
        for d in range(1, 6):
            for r in range(1, 6):
                ctx = RectangularContext(d, r)
                for l in range(d * r + 1):
                    dims = [schubert_dim(mu, ctx) for mu in box_partitions(d, r, l)]
                    top = grassfixed_dim(ctx, l)
                    assert max(dims) == top
                    assert schubert_dim(mu_max(d, r, l), ctx) == top

    def test_duality_symmetry(self):
        for d in range(1, 6):
            for r in range(1, 6):
                ctx = RectangularContext(d, r)
                n = d * r
                for l in range(n + 1):
                    assert grassfixed_dim(ctx, l) == grassfixed_dim(ctx, n - l)

    def test_dominance_monotone(self):
        for d, r in ((3, 3), (4, 2), (2, 5)):
            ctx = RectangularContext(d, r)
            for l in range(d * r + 1):
                box = box_partitions(d, r, l)
                for mu in box:
                    for nu in box:
                        if dominance_leq(mu, nu):
                            assert schubert_dim(mu, ctx) <= schubert_dim(nu, ctx)


class TestBallStrata:
    def test_profiles(self):
        assert [dim for _, _, dim in ball_strata(RectangularContext(2, 2))] == [
            0, 1, 2, 1, 0]
        assert [dim for _, _, dim in ball_strata(RectangularContext(4, 2))] == [
            0, 3, 6, 7, 8, 7, 6, 3, 0]
        assert [dim for _, _, dim in ball_strata(RectangularContext(2, 4))] == [
            0, 1, 2, 3, 4, 3, 2, 1, 0]

    def test_sigma_column_matches_shuffle_rank(self):
        ctx = RectangularContext(3, 2)
        T = jordan_matrix((2, 2, 2))
        for l, sigma, _ in ball_strata(ctx):
            assert sigma == shuffle_equations(T, l).sigma


LATTICE_FORMS_D3R2 = [
    "p_{1,2,3}", "p_{1,2,4}", "p_{1,3,4}", "p_{2,3,4}", "p_{1,2,5}",
    "p_{1,3,5}", "p_{2,3,5}", "p_{1,2,6}", "p_{1,3,6}", "p_{2,3,6}",
    "p_{1,5,6} - p_{2,4,6} + p_{3,4,5}",
]


class TestShuffleTransport:
    def test_by_power_span_matches_listed_forms(self):
        ctx = RectangularContext(3, 2)
        ring = plucker_ring(6, 3)
        computed = echelon_of(linear_form_row(f)
                              for f in shuffle_forms_by_power(ctx, 3))
        listed = echelon_of(linear_form_row(parse_polynomial(t, ring))
                            for t in LATTICE_FORMS_D3R2)
        assert computed.spans_same(listed)
        assert computed.rank == 11

    def test_transport_agrees_with_direct_computation(self):
        for d, r, l in ((3, 2, 3), (2, 3, 2), (2, 2, 2)):
            ctx = RectangularContext(d, r)
            jordan_rows = [linear_form_row(f) for f in
                           shuffle_equations(jordan_matrix(ctx.partition), l).basis]
            transported = transport_form_rows(jordan_rows,
                                              ctx.shuffle_permutation(), ctx.n, l)
            direct = echelon_of(linear_form_row(f)
                                for f in shuffle_forms_by_power(ctx, l))
            assert echelon_of(transported).spans_same(direct)


class TestContainment:
    def test_orbit_points_land_in_locus(self):
        rng = random.Random(41)
        ctx = RectangularContext(3, 2)
        assert verify_containment((2, 1), ctx, 3, 25, rng)

    def test_ideal_generators_vanish_on_sampled_fixed_subspaces(self):
        # invariant row spaces built from the lattice parametrization kill
        # every generator of the combined ideal of the Jordan matrix
        from nilgrass.grassmann import plucker_vector, shuffle_ideal
        rng = random.Random(44)
        for d, r, l in ((3, 2, 3), (2, 3, 2), (2, 2, 2)):
            ctx = RectangularContext(d, r)
            perm = ctx.shuffle_permutation()
            ideal = shuffle_ideal(jordan_matrix(ctx.partition), l)
            for _ in range(25):
                A = random_block_matrix(ctx, rng)
                rows = lattice_subspace(mu_max(d, r, l), ctx)
                # reorder columns from the by-power to the by-vector basis
                L = [[A.entries[i - 1][perm[j]] for j in range(ctx.n)]
                     for i in rows]
                vector = plucker_vector(L)
                assert all(g.evaluate(vector) == 0 for g in ideal.generators)

    def test_mu_max_various_contexts(self):
        rng = random.Random(42)
        for d, r in ((2, 2), (2, 3), (3, 2)):
            ctx = RectangularContext(d, r)
            for l in range(1, d * r):
                assert verify_containment(mu_max(d, r, l), ctx, l, 5, rng)

    def test_negative_control(self):
        # breaking the block-Toeplitz pattern leaves the fixed locus
        ctx = RectangularContext(3, 2)
        rng = random.Random(43)
        A = random_block_matrix(ctx, rng)
        A.entries[4][0] = A.entries[4][0] + 1  # lower-left block entry of a kept row
        from nilgrass.linalg import maximal_minors
        rows = lattice_subspace((2, 1), ctx)
        vector = maximal_minors([A.entries[i - 1] for i in rows])
        assert not point_satisfies(ctx, 3, vector)

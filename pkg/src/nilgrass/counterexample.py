"""The n = 8 fixed locus where the cut-out ideal fails to be radical.

For the partition (4,2,2) acting on 4-planes in 8-space, the locus has
three components: two four-parameter pieces and a nine-parameter piece
constrained to a trace-zero rank-one block.  The coordinate p_{1,4,6,8}
vanishes on the whole locus but does not lie in the ideal generated by
the shuffle forms and quadrics; its square does.  This module encodes
the component parametrizations and verifies all of that exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .combinat import Partition, PluckerIndex, subset_rank
from .grassmann import (evaluate_quadric, jordan_matrix, linear_form_row,
                        plucker_quadrics, plucker_vector, quadric_triples,
                        shuffle_equations)
from .groebner import buchberger, eliminate_linear, normal_form, quadric_span_basis
from .linalg import (mat_mul, mat_rank, nilpotent_jordan_type,
                     restriction_matrix, row_space_contains)
from .polyring import PolyRing
from .qq import QQ, QQ0, random_rational

PARTITION = Partition((4, 2, 2))
N = 8
L = 4
MISSING_COORDINATE = PluckerIndex((1, 4, 6, 8))


@dataclass(frozen=True)
class ComponentParametrization:
    """A 4 x 8 matrix template over a parameter ring, plus constraints."""

    name: str
    parameters: tuple
    matrix: tuple          # rows of Polys in the parameter ring
    constraints: tuple     # parameter polynomials that must vanish

    @property
    def ring(self):
        return self.matrix[0][0].ring


def component_templates() -> list:
    """The two unconstrained four-parameter pieces and the constrained one."""
    segre_ring = PolyRing(["a", "b", "c", "d"])
    a, b, c, d = segre_ring.gens()
    one, zero = segre_ring.one(), segre_ring.zero()

    segre_a = ComponentParametrization(
        name="segre_a",
        parameters=segre_ring.names,
        matrix=(
            (one, zero, zero, zero, a, b, c, d),
            (zero, one, zero, zero, zero, a, zero, c),
            (zero, zero, one, zero, zero, zero, zero, zero),
            (zero, zero, zero, one, zero, zero, zero, zero),
        ),
        constraints=(),
    )
    segre_b = ComponentParametrization(
        name="segre_b",
        parameters=segre_ring.names,
        matrix=(
            (zero, zero, a, b, one, zero, zero, zero),
            (zero, zero, zero, a, zero, one, zero, zero),
            (zero, zero, c, d, zero, zero, one, zero),
            (zero, zero, zero, c, zero, zero, zero, one),
        ),
        constraints=(),
    )

    block_ring = PolyRing(list("abcdefghi"))
    a, b, c, d, e, f, g, h, i = block_ring.gens()
    one, zero = block_ring.one(), block_ring.zero()
    block = ((a, b, c), (d, e, f), (g, h, i))
    minors = []
    for r1 in range(3):
        for r2 in range(r1 + 1, 3):
            for c1 in range(3):
                for c2 in range(c1 + 1, 3):
                    minors.append(block[r1][c1] * block[r2][c2]
                                  - block[r1][c2] * block[r2][c1])
    nonreduced = ComponentParametrization(
        name="nonreduced",
        parameters=block_ring.names,
        matrix=(
            (zero, a, one, zero, b, zero, c, zero),
            (zero, zero, zero, one, zero, zero, zero, zero),
            (zero, d, zero, zero, e, one, f, zero),
            (zero, g, zero, zero, h, zero, i, one),
        ),
        constraints=(a + e + i,) + tuple(minors),
    )
    return [segre_a, segre_b, nonreduced]


def sample_parameters(component: ComponentParametrization,
                      rng: random.Random) -> dict:
    """Constraint-satisfying random parameter values.

    The constrained block is sampled as an outer product u v^t with the
    trace forced to zero by solving for the last entry of v, so no
    rejection against the rank condition is needed.
    """
    if component.name != "nonreduced":
        return {name: random_rational(rng) for name in component.parameters}
    while True:
        u = [random_rational(rng) for _ in range(3)]
        pivots = [k for k in range(3) if u[k] != 0]
        if not pivots:
            continue
        k = pivots[-1]
        v = [random_rational(rng) for _ in range(3)]
        v[k] = -sum(u[i] * v[i] for i in range(3) if i != k) / u[k]
        entries = [u[r] * v[c] for r in range(3) for c in range(3)]
        return dict(zip(component.parameters, entries))


def instantiate(component: ComponentParametrization, values: dict) -> list:
    """Evaluate the matrix template at concrete parameter values."""
    ring = component.ring
    vec = [QQ(values.get(name, 0)) for name in ring.names]
    for constraint in component.constraints:
        if constraint.evaluate(vec) != 0:
            raise ValueError(f"values violate a constraint of {component.name}")
    return [[entry.evaluate(vec) for entry in row] for row in component.matrix]


@dataclass(frozen=True)
class _LocusContext:
    ring: object
    sigma: int
    linear_rows: tuple
    quadrics: tuple
    elim: object
    basis: object


@lru_cache(maxsize=1)
def locus_context() -> _LocusContext:
    """Shuffle system, quadrics, elimination, and Groebner basis, built once."""
    T = jordan_matrix(PARTITION)
    system = shuffle_equations(T, L)
    quadrics = plucker_quadrics(N, L)
    elim = eliminate_linear(list(system.basis) + quadrics)
    basis = buchberger(quadric_span_basis(elim.gens_small))
    rows = tuple(tuple(sorted(linear_form_row(f).items())) for f in system.basis)
    return _LocusContext(ring=system.ring, sigma=system.sigma, linear_rows=rows,
                         quadrics=tuple(quadrics), elim=elim, basis=basis)


def in_ideal(p) -> bool:
    """Membership of a Pluecker polynomial in the cut-out ideal."""
    ctx = locus_context()
    return normal_form(ctx.elim.apply(p), ctx.basis).is_zero()


def vanishes_on_locus_generators(vector) -> bool:
    """All shuffle forms and quadrics vanish on the coordinate vector."""
    ctx = locus_context()
    vector = [QQ(x) for x in vector]
    for row in ctx.linear_rows:
        if sum((coeff * vector[var] for var, coeff in row), QQ0) != 0:
            return False
    return all(evaluate_quadric(t, vector) == 0 for t in quadric_triples(N, L))


def module_type(matrix) -> Partition:
    """Jordan type of the nilpotent action restricted to the row space."""
    T = jordan_matrix(PARTITION)
    return nilpotent_jordan_type(restriction_matrix(matrix, T.entries))


def verify_component(component: ComponentParametrization, trials: int,
                     rng: random.Random | None = None) -> bool:
    """Sampled points are rank-4, invariant, and killed by every generator."""
    rng = rng or random.Random(0)
    T = jordan_matrix(PARTITION)
    for _ in range(trials):
        values = sample_parameters(component, rng)
        matrix = instantiate(component, values)
        if mat_rank(matrix) != 4:
            return False
        if not row_space_contains(matrix, mat_mul(matrix, T.entries)):
            return False
        if not vanishes_on_locus_generators(plucker_vector(matrix)):
            return False
    return True


def verify_missing_linear_form(trials: int,
                               rng: random.Random | None = None) -> bool:
    """The distinguished coordinate separates ideal from locus.

    Checks that p_{1,4,6,8} is not in the ideal while its square is,
    and that it vanishes on sampled points of all three components.
    """
    rng = rng or random.Random(0)
    ctx = locus_context()
    p = ctx.ring.var(subset_rank(N, MISSING_COORDINATE))
    if in_ideal(p) or not in_ideal(p * p):
        return False
    coord = subset_rank(N, MISSING_COORDINATE)
    for component in component_templates():
        for _ in range(trials):
            matrix = instantiate(component, sample_parameters(component, rng))
            if plucker_vector(matrix)[coord] != 0:
                return False
    return True


AMBIENT_SUPPORTS = {
    "segre_a": frozenset(map(PluckerIndex, (
        (1, 2, 3, 4), (1, 3, 4, 6), (1, 3, 4, 8), (2, 3, 4, 5), (2, 3, 4, 6),
        (2, 3, 4, 7), (2, 3, 4, 8), (3, 4, 5, 6), (3, 4, 5, 8), (3, 4, 6, 7),
        (3, 4, 6, 8), (3, 4, 7, 8)))),
    "segre_b": frozenset(map(PluckerIndex, (
        (3, 4, 5, 6), (3, 4, 5, 8), (3, 4, 6, 7), (3, 4, 6, 8), (3, 4, 7, 8),
        (3, 5, 6, 8), (3, 6, 7, 8), (4, 5, 6, 7), (4, 5, 6, 8), (4, 5, 7, 8),
        (4, 6, 7, 8), (5, 6, 7, 8)))),
    "nonreduced": frozenset(map(PluckerIndex, (
        (3, 4, 6, 8), (2, 3, 4, 6), (2, 3, 4, 8), (2, 4, 6, 8), (3, 4, 5, 6),
        (3, 4, 5, 8), (3, 4, 6, 7), (3, 4, 7, 8), (4, 5, 6, 8), (4, 6, 7, 8)))),
}


def observed_support(component: ComponentParametrization, trials: int,
                     rng: random.Random | None = None) -> set:
    """Union of coordinate supports over sampled points of a component."""
    rng = rng or random.Random(0)
    from .combinat import subsets
    index_sets = subsets(N, L)
    support = set()
    for _ in range(trials):
        matrix = instantiate(component, sample_parameters(component, rng))
        vector = plucker_vector(matrix)
        support.update(index_sets[k] for k, x in enumerate(vector) if x != 0)
    return support


def run_all_checks(trials: int = 25, rng: random.Random | None = None) -> list:
    """Named pass/fail results for the command-line report."""
    rng = rng or random.Random(0)
    ctx = locus_context()
    results = []
    results.append(("sigma_is_54", ctx.sigma == 54))
    results.append(("surviving_variables_16", ctx.elim.small_ring.nvars == 16))
    p = ctx.ring.var(subset_rank(N, MISSING_COORDINATE))
    results.append(("coordinate_not_in_ideal", not in_ideal(p)))
    results.append(("coordinate_square_in_ideal", in_ideal(p * p)))
    for component in component_templates():
        results.append((f"component_{component.name}",
                        verify_component(component, trials, rng)))
    results.append(("coordinate_vanishes_on_components",
                    verify_missing_linear_form(trials, rng)))
    return results

"""Reduced Groebner bases over the rationals, membership, and Hilbert data.

The Buchberger loop follows the classic update/select structure with the
coprimality and chain criteria; bases are kept monic and the final
basis is fully inter-reduced, so it is the unique reduced basis for the
chosen monomial order.  Dimension and degree of a projective quotient
come from the Hilbert series of the initial monomial ideal, computed by
the standard pivot-splitting recursion.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .grassmann import ShuffleIdeal, linear_form_row
from .linalg import SparseEchelon
from .polyring import DEGREVLEX, MonomialOrder, Poly, PolyRing
from .qq import QQ0, QQ1


class BudgetExceeded(RuntimeError):
    """Raised when a computation runs past its wall-clock deadline."""


def _check_deadline(deadline):
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("computation exceeded its budget")


@dataclass(frozen=True)
class GroebnerBasis:
    """Unique reduced Groebner basis: monic, auto-reduced, sorted."""

    ring: PolyRing
    order: MonomialOrder
    polys: tuple

    def __len__(self):
        return len(self.polys)

    def leading_monomials(self) -> list:
        return [p.leading(self.order)[0] for p in self.polys]


def _common_ring(polys) -> PolyRing:
    ring = None
    for p in polys:
        if ring is None:
            ring = p.ring
        elif not ring.same_as(p.ring):
            raise ValueError("generators live in different rings")
    if ring is None:
        raise ValueError("empty generator list")
    return ring


def _to_terms(p: Poly, key) -> list:
    return sorted(p.terms.items(), key=lambda t: key(t[0]), reverse=True)


def _monic_terms(terms: list) -> list:
    lc = terms[0][1]
    if lc == 1:
        return terms
    inv = 1 / lc
    return [(m, c * inv) for m, c in terms]


def _divides(small: tuple, big: tuple) -> bool:
    for a, b in zip(small, big):
        if a > b:
            return False
    return True


def _min_var(mon: tuple) -> int:
    for i, e in enumerate(mon):
        if e:
            return i
    return -1


class _Engine:
    """Shared state for one Buchberger run."""

    def __init__(self, key, nvars, deadline=None):
        self.key = key
        self.nvars = nvars
        self.deadline = deadline
        self.f = []        # all polynomials ever created (term lists, monic)
        self.buckets = {}  # min support var of LM -> list of indices into f
        self.ops = 0

    def tick(self, weight=1):
        self.ops += weight
        if self.ops >= 4096:
            self.ops = 0
            _check_deadline(self.deadline)

    def append(self, terms) -> int:
        idx = len(self.f)
        self.f.append(terms)
        self.buckets.setdefault(_min_var(terms[0][0]), []).append(idx)
        return idx

    def find_divisor(self, mon, active) -> int:
        for idx in self.buckets.get(-1, ()):  # constant leading terms
            if idx in active:
                return idx
        for v, e in enumerate(mon):
            if not e:
                continue
            for idx in self.buckets.get(v, ()):
                if idx in active and _divides(self.f[idx][0][0], mon):
                    return idx
        return -1

    def reduce_dict(self, h: dict, active) -> dict:
        """Full normal form of the polynomial h (as mon->coeff dict)."""
        remainder = {}
        key = self.key
        while h:
            self.tick()
            mon = max(h, key=key)
            coeff = h.pop(mon)
            idx = self.find_divisor(mon, active)
            if idx < 0:
                remainder[mon] = coeff
                continue
            g = self.f[idx]
            shift = tuple(a - b for a, b in zip(mon, g[0][0]))
            for gm, gc in g[1:]:
                target = tuple(a + b for a, b in zip(gm, shift))
                new = h.get(target, QQ0) - coeff * gc
                if new:
                    h[target] = new
                else:
                    h.pop(target, None)
            self.tick(len(g))
        return remainder

    def spoly_dict(self, i: int, j: int) -> dict:
        fi, fj = self.f[i], self.f[j]
        lmi, lmj = fi[0][0], fj[0][0]
        lcm = tuple(max(a, b) for a, b in zip(lmi, lmj))
        si = tuple(a - b for a, b in zip(lcm, lmi))
        sj = tuple(a - b for a, b in zip(lcm, lmj))
        h = {}
        for m, c in fi[1:]:
            target = tuple(a + b for a, b in zip(m, si))
            h[target] = h.get(target, QQ0) + c
        for m, c in fj[1:]:
            target = tuple(a + b for a, b in zip(m, sj))
            new = h.get(target, QQ0) - c
            if new:
                h[target] = new
            else:
                h.pop(target, None)
        return h


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mul_mon(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _update(engine: _Engine, G: set, B: set, ih: int):
    """Insert basis element ih, filtering pairs by the standard criteria."""
    f = engine.f
    lm_h = f[ih][0][0]

    C = set(G)
    D = set()
    while C:
        engine.tick(len(C) // 4 + 1)
        ig = min(C)
        C.remove(ig)
        lm_g = f[ig][0][0]
        lcm_hg = _lcm(lm_h, lm_g)

        def lcm_divides(ip):
            return _divides(_lcm(lm_h, f[ip][0][0]), lcm_hg)

        if _mul_mon(lm_h, lm_g) == lcm_hg or (
                not any(lcm_divides(ip) for ip in C)
                and not any(lcm_divides(pair[1]) for pair in D)):
            D.add((ih, ig))

    E = set()
    for ih2, ig in D:
        lm_g = f[ig][0][0]
        if _mul_mon(lm_h, lm_g) != _lcm(lm_h, lm_g):
            E.add((ih2, ig))

    B_new = set()
    for ig1, ig2 in B:
        engine.tick()
        lm1, lm2 = f[ig1][0][0], f[ig2][0][0]
        lcm12 = _lcm(lm1, lm2)
        if (not _divides(lm_h, lcm12)
                or _lcm(lm1, lm_h) == lcm12
                or _lcm(lm2, lm_h) == lcm12):
            B_new.add((ig1, ig2))
    B_new |= E

    G_new = {ig for ig in G if not _divides(lm_h, f[ig][0][0])}
    G_new.add(ih)
    return G_new, B_new


def buchberger(gens, order: MonomialOrder = DEGREVLEX, deadline=None) -> GroebnerBasis:
    """Unique reduced Groebner basis of the given generators.

    deadline, when given, is a time.monotonic() timestamp past which
    BudgetExceeded is raised.
    """
    ring = _common_ring(gens)
    key = order.key
    engine = _Engine(key, ring.nvars, deadline)

    work = [_monic_terms(_to_terms(p, key)) for p in gens if not p.is_zero()]
    if not work:
        return GroebnerBasis(ring=ring, order=order, polys=())

    # initial inter-reduction of the inputs
    while True:
        reduced = []
        view = _Engine(key, ring.nvars, deadline)
        active = set()
        for terms in work:
            rem = view.reduce_dict(dict(terms), active)
            if rem:
                idx = view.append(_monic_terms(sorted(rem.items(), key=lambda t: key(t[0]), reverse=True)))
                active.add(idx)
                reduced.append(view.f[idx])
        if len(reduced) == len(work) and all(a == b for a, b in zip(reduced, work)):
            break
        work = reduced
        if not work:
            return GroebnerBasis(ring=ring, order=order, polys=())

    G: set = set()
    B: set = set()
    for terms in work:
        ih = engine.append(terms)
        G, B = _update(engine, G, B, ih)

    while B:
        _check_deadline(deadline)
        pair = min(B, key=lambda p: (key(_lcm(engine.f[p[0]][0][0], engine.f[p[1]][0][0])), p))
        B.remove(pair)
        h = engine.spoly_dict(*pair)
        rem = engine.reduce_dict(h, G)
        if rem:
            terms = _monic_terms(sorted(rem.items(), key=lambda t: key(t[0]), reverse=True))
            ih = engine.append(terms)
            G, B = _update(engine, G, B, ih)

    # tail-reduce each survivor against the others for the reduced basis
    final = []
    for ig in sorted(G):
        others = G - {ig}
        rem = engine.reduce_dict(dict(engine.f[ig]), others)
        terms = _monic_terms(sorted(rem.items(), key=lambda t: key(t[0]), reverse=True))
        final.append(terms)

    final.sort(key=lambda terms: key(terms[0][0]), reverse=True)
    polys = tuple(Poly(ring, dict(terms)) for terms in final)
    return GroebnerBasis(ring=ring, order=order, polys=polys)


def normal_form(p: Poly, G: GroebnerBasis, deadline=None) -> Poly:
    """Remainder of p modulo G; zero exactly when p lies in the ideal."""
    if not p.ring.same_as(G.ring):
        raise ValueError("polynomial and basis live in different rings")
    key = G.order.key
    engine = _Engine(key, G.ring.nvars, deadline)
    active = set()
    for g in G.polys:
        active.add(engine.append(_monic_terms(_to_terms(g, key))))
    rem = engine.reduce_dict(dict(p.terms), active)
    return Poly(p.ring, rem)


@dataclass
class LinearElimination:
    """Result of solving the linear generators and substituting them away."""

    big_ring: PolyRing
    small_ring: PolyRing
    kept: tuple                # indices of surviving variables in the big ring
    substitution: dict         # pivot variable name -> linear Poly in big ring
    gens_small: list           # non-linear generators rewritten in small_ring
    _subst_rows: dict          # pivot index -> {kept position: coefficient}

    def apply(self, p: Poly) -> Poly:
        """Rewrite a big-ring polynomial in the surviving variables."""
        if not p.ring.same_as(self.big_ring):
            raise ValueError("polynomial is not in the original ring")
        kept_pos = {v: k for k, v in enumerate(self.kept)}
        vectors = {}
        for i in range(self.big_ring.nvars):
            if i in self._subst_rows:
                vectors[i] = dict(self._subst_rows[i])
            elif i in kept_pos:
                vectors[i] = {kept_pos[i]: QQ1}
            else:
                vectors[i] = {}
        result = self.small_ring.zero()
        for mon, coeff in p.terms.items():
            factor = self.small_ring.const(coeff)
            for i, e in enumerate(mon):
                for _ in range(e):
                    vec = vectors[i]
                    lin = self.small_ring.from_terms({
                        tuple(1 if j == pos else 0 for j in range(self.small_ring.nvars)): c
                        for pos, c in vec.items()})
                    factor = factor * lin
            result = result + factor
        return result

    def lift(self, p_small: Poly) -> Poly:
        """Inject a small-ring polynomial back into the original ring."""
        if not p_small.ring.same_as(self.small_ring):
            raise ValueError("polynomial is not in the reduced ring")
        terms = {}
        for mon, coeff in p_small.terms.items():
            big = [0] * self.big_ring.nvars
            for pos, e in enumerate(mon):
                big[self.kept[pos]] = e
            terms[tuple(big)] = coeff
        return Poly(self.big_ring, terms)


def eliminate_linear(gens, deadline=None) -> LinearElimination:
    """Solve the homogeneous linear generators and substitute into the rest.

    Pivot variables of the reduced echelon form are expressed in the
    surviving ones; the rewritten ideal in fewer variables presents an
    isomorphic quotient, so dimension and degree are unchanged.
    """
    ring = _common_ring(gens)
    linear, others = [], []
    for g in gens:
        if g.is_zero():
            continue
        if g.degree() == 1 and g.is_homogeneous():
            linear.append(g)
        else:
            others.append(g)

    ech = SparseEchelon()
    for form in linear:
        ech.add(linear_form_row(form))
    pivot_rows = ech.pivots
    kept = tuple(i for i in range(ring.nvars) if i not in pivot_rows)
    kept_pos = {v: k for k, v in enumerate(kept)}
    small_ring = PolyRing([ring.names[i] for i in kept],
                          tag=("reduced",) + (ring.tag or ()))

    subst_rows = {}
    substitution = {}
    for pivot, row in pivot_rows.items():
        vec = {}
        terms = {}
        for col, coeff in row.items():
            if col == pivot:
                continue
            vec[kept_pos[col]] = -coeff
            mon = tuple(1 if j == col else 0 for j in range(ring.nvars))
            terms[mon] = -coeff
        subst_rows[pivot] = vec
        substitution[ring.names[pivot]] = Poly(ring, terms)

    gens_small = []
    for k, g in enumerate(others):
        if k % 64 == 0:
            _check_deadline(deadline)
        image = _fast_apply(g, ring, small_ring, kept_pos, subst_rows)
        if not image.is_zero():
            gens_small.append(image)

    return LinearElimination(big_ring=ring, small_ring=small_ring, kept=kept,
                             substitution=substitution, gens_small=gens_small,
                             _subst_rows=subst_rows)


def _fast_apply(g: Poly, ring, small_ring, kept_pos, subst_rows) -> Poly:
    """Substitute the linear solution into g, keyed for low degrees."""
    nsmall = small_ring.nvars
    vectors = {}

    def vector_of(i):
        vec = vectors.get(i)
        if vec is None:
            if i in subst_rows:
                vec = dict(subst_rows[i])
            else:
                vec = {kept_pos[i]: QQ1}
            vectors[i] = vec
        return vec

    out = {}
    for mon, coeff in g.terms.items():
        factors = []
        for i, e in enumerate(mon):
            factors.extend([i] * e)
        if not factors:
            key = (0,) * nsmall
            out[key] = out.get(key, QQ0) + coeff
        elif len(factors) == 1:
            for pos, c in vector_of(factors[0]).items():
                key = tuple(1 if j == pos else 0 for j in range(nsmall))
                new = out.get(key, QQ0) + coeff * c
                out[key] = new
        elif len(factors) == 2:
            va, vb = vector_of(factors[0]), vector_of(factors[1])
            for pa, ca in va.items():
                cc = coeff * ca
                for pb, cb in vb.items():
                    key = [0] * nsmall
                    key[pa] += 1
                    key[pb] += 1
                    key = tuple(key)
                    out[key] = out.get(key, QQ0) + cc * cb
        else:
            prod = small_ring.const(coeff)
            for i in factors:
                lin = small_ring.from_terms({
                    tuple(1 if j == pos else 0 for j in range(nsmall)): c
                    for pos, c in vector_of(i).items()})
                prod = prod * lin
            for key, val in prod.terms.items():
                out[key] = out.get(key, QQ0) + val
    return small_ring.from_terms(out)


def quadric_span_basis(gens_small, deadline=None) -> list:
    """Independent spanning set of homogeneous quadrics, via sparse echelon."""
    ech = SparseEchelon()
    rows = []
    for g in gens_small:
        row = {}
        for mon, coeff in g.terms.items():
            pair = tuple(i for i, e in enumerate(mon) for _ in range(e))
            row[pair] = coeff
        rows.append(row)
    basis = []
    for k, (row, g) in enumerate(zip(rows, gens_small)):
        if k % 16 == 0:
            _check_deadline(deadline)
        if ech.add(row):
            basis.append(g)
    return basis


def min_generators_deg2(ideal: ShuffleIdeal):
    """Minimal generator counts of a shuffle ideal in degrees one and two."""
    gens = ideal.generators
    if not gens:
        return 0, 0
    elim = eliminate_linear(gens)
    return ideal.system.sigma, len(quadric_span_basis(elim.gens_small))


def member(p: Poly, gens, deadline=None) -> bool:
    """Ideal membership test.

    Equivalent to normal_form(p, buchberger(gens)) == 0; the linear part
    of the generators is eliminated first, which leaves the verdict
    unchanged and shrinks the Groebner computation.
    """
    elim = eliminate_linear(gens)
    p_small = elim.apply(p)
    if p_small.is_zero():
        return True
    if not elim.gens_small:
        return False
    basis = quadric_span_basis(elim.gens_small) if all(
        g.degree() == 2 and g.is_homogeneous() for g in elim.gens_small) else elim.gens_small
    G = buchberger(basis, deadline=deadline)
    return normal_form(p_small, G, deadline=deadline).is_zero()


def hilbert_data(G: GroebnerBasis, nvars: int | None = None):
    """(projective dimension, degree) of the quotient by a homogeneous ideal.

    Computes the Hilbert series of the initial ideal; delta is the Krull
    dimension of the quotient minus one, gamma the degree.  The unit
    ideal signals the empty variety as (-1, 0).
    """
    if nvars is None:
        nvars = G.ring.nvars
    zero_mon = (0,) * G.ring.nvars
    for p in G.polys:
        if not p.is_homogeneous():
            raise ValueError("ideal is not homogeneous")
    lead = [p.leading(G.order)[0] for p in G.polys]
    if any(m == zero_mon for m in lead):
        return -1, 0
    numerator = _hilbert_numerator(_minimalize(lead))
    drops = 0
    while numerator and sum(numerator) == 0:
        numerator = _divide_one_minus_t(numerator)
        drops += 1
    if not numerator:
        return -1, 0
    dim_quotient = nvars - drops
    gamma = sum(numerator)
    if dim_quotient == 0:
        return -1, 0
    if gamma <= 0:
        raise ValueError("inconsistent Hilbert numerator")
    return dim_quotient - 1, gamma


def _minimalize(mons) -> list:
    minimal = []
    for m in sorted(mons, key=sum):
        if not any(_divides(g, m) for g in minimal):
            minimal.append(m)
    return minimal


def _poly_add(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_shift(a: list, d: int) -> list:
    return [0] * d + a if a else []


def _poly_mul_one_minus_td(a: list, d: int) -> list:
    return _poly_add(a, [-c for c in _poly_shift(a, d)])


def _divide_one_minus_t(a: list) -> list:
    # synthetic division by (1 - t); exact when a(1) == 0
    out = []
    acc = 0
    for c in a[:-1]:
        acc += c
        out.append(acc)
    while out and out[-1] == 0:
        out.pop()
    return out


def _hilbert_numerator(mons: list) -> list:
    """Numerator of the Hilbert series of R/(monomial ideal) over (1-t)^n."""
    if not mons:
        return [1]
    if any(sum(m) == 0 for m in mons):
        return []
    occurrences = {}
    for m in mons:
        for v, e in enumerate(m):
            if e:
                occurrences[v] = occurrences.get(v, 0) + 1
    pivot_var, count = max(occurrences.items(), key=lambda kv: (kv[1], -kv[0]))
    if count <= 1:
        # pairwise coprime supports: complete intersection
        out = [1]
        for m in mons:
            out = _poly_mul_one_minus_td(out, sum(m))
        return out
    without = [m for m in mons if not m[pivot_var]]
    lowered = [tuple(e - 1 if v == pivot_var else e for v, e in enumerate(m))
               if m[pivot_var] else m for m in mons]
    left = _poly_mul_one_minus_td(_hilbert_numerator(without), 1)
    right = _poly_shift(_hilbert_numerator(_minimalize(lowered)), 1)
    return _poly_add(left, right)

"""Sparse multivariate polynomials over exact rationals.

Polynomials live in an explicit ring that fixes the variable names;
monomials are dense exponent tuples.  Pluecker rings name their
variables ``p_{i1,...,il}`` following the canonical subset order, so a
variable index is the canonical rank of its index set.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .combinat import subsets
from .qq import QQ, QQ0, QQ1, is_rational, rational_text


class MonomialOrder:
    """Total order on exponent tuples given by a sort key.

    kind is "degrevlex" or "lex"; precedence optionally permutes the
    variables before comparison (precedence[0] is the most significant
    variable index).
    """

    def __init__(self, kind: str = "degrevlex", precedence=None):
        if kind not in ("degrevlex", "lex"):
            raise ValueError(f"unknown order kind: {kind}")
        self.kind = kind
        self.precedence = tuple(precedence) if precedence is not None else None
        self._cache = {}

    def key(self, mon: tuple):
        cached = self._cache.get(mon)
        if cached is not None:
            return cached
        m = mon if self.precedence is None else tuple(mon[i] for i in self.precedence)
        if self.kind == "lex":
            k = m
        else:
            k = (sum(m), tuple(-e for e in reversed(m)))
        self._cache[mon] = k
        return k

    def greater(self, a: tuple, b: tuple) -> bool:
        return self.key(a) > self.key(b)

    def __repr__(self):
        extra = f", precedence={self.precedence}" if self.precedence else ""
        return f"MonomialOrder({self.kind!r}{extra})"


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


class PolyRing:
    """Polynomial ring over QQ with named variables."""

    def __init__(self, names, tag=None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.nvars = len(self.names)
        self.tag = tag
        self._index = {name: i for i, name in enumerate(self.names)}
        self._zero_mon = (0,) * self.nvars

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    def var(self, which) -> "Poly":
        i = which if isinstance(which, int) else self.index(which)
        if not 0 <= i < self.nvars:
            raise ValueError(f"variable index {i} out of range")
        mon = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, {mon: QQ1})
    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self._zero_mon: QQ1})

    def const(self, c) -> "Poly":
        c = QQ(c)
        return Poly(self, {self._zero_mon: c} if c else {})

    def monomial(self, exponents: dict, coeff=QQ1) -> "Poly":
        mon = [0] * self.nvars
        for var, e in exponents.items():
            i = var if isinstance(var, int) else self.index(var)
            if e < 0:
                raise ValueError("negative exponent")
            mon[i] += e
        coeff = QQ(coeff)
        return Poly(self, {tuple(mon): coeff} if coeff else {})

    def from_terms(self, terms: dict) -> "Poly":
        clean = {}
        for mon, coeff in terms.items():
            coeff = QQ(coeff)
            if coeff:
                mon = tuple(mon)
                if len(mon) != self.nvars:
                    raise ValueError("monomial length does not match ring")
                clean[mon] = clean.get(mon, QQ0) + coeff
        return Poly(self, {m: c for m, c in clean.items() if c})

    def same_as(self, other: "PolyRing") -> bool:
        return self is other or self.names == other.names

    def __repr__(self):
        if self.nvars <= 6:
            return f"PolyRing({', '.join(self.names)})"
        return f"PolyRing({self.names[0]}, ..., {self.names[-1]}; {self.nvars} vars)"


@lru_cache(maxsize=None)
def plucker_ring(n: int, l: int) -> PolyRing:
    """Ring of Pluecker coordinates of the l-subspaces of n-space."""
    names = ["p_{%s}" % ",".join(str(e) for e in s) for s in subsets(n, l)]
    return PolyRing(names, tag=("plucker", n, l))


@lru_cache(maxsize=None)
def univariate_ring(name: str = "z") -> PolyRing:
    return PolyRing([name], tag=("univariate", name))


class Poly:
    """Immutable-by-convention sparse polynomial."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degrees = {sum(m) for m in self.terms}
        return len(degrees) <= 1

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant(self):
        return self.terms.get(self.ring._zero_mon, QQ0)

    def support(self) -> set:
        """Indices of the variables that actually occur."""
        used = set()
        for mon in self.terms:
            used.update(i for i, e in enumerate(mon) if e)
        return used

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if not self.ring.same_as(other.ring):
                raise ValueError("polynomials from different rings")
            return other
        if is_rational(other):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for mon, coeff in other.terms.items():
            new = terms.get(mon, QQ0) + coeff
            if new:
                terms[mon] = new
            else:
                terms.pop(mon, None)
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rational(other):
            c = QQ(other)
            if not c:
                return self.ring.zero()
            return Poly(self.ring, {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(self.terms) > len(other.terms):
            left, right = other, self
        else:
            left, right = self, other
        terms = {}
        for m1, c1 in left.terms.items():
            for m2, c2 in right.terms.items():
                mon = tuple(a + b for a, b in zip(m1, m2))
                new = terms.get(mon, QQ0) + c1 * c2
                if new:
                    terms[mon] = new
                else:
                    terms.pop(mon, None)
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring.same_as(other.ring) and self.terms == other.terms
        if is_rational(other):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.terms.items())))

    # -- structure -----------------------------------------------------
    def sorted_terms(self, order: MonomialOrder = DEGREVLEX) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading(self, order: MonomialOrder = DEGREVLEX):
        """(monomial, coefficient) of the leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        mon = max(self.terms, key=order.key)
        return mon, self.terms[mon]

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Poly":
        if not self.terms:
            return self
        _, lc = self.leading(order)
        return self * (1 / lc)

    def coefficient_of_var_power(self, var, power: int):
        """Coefficient (a Poly) of var**power, for a univariate-in-var poly."""
        i = var if isinstance(var, int) else self.ring.index(var)
        terms = {}
        for mon, coeff in self.terms.items():
            if mon[i] == power:
                reduced = tuple(0 if j == i else e for j, e in enumerate(mon))
                terms[reduced] = coeff
        return Poly(self.ring, terms)

    def substitute(self, bindings: dict) -> "Poly":
        """Substitute variables by rationals or same-ring polynomials."""
        if not bindings:
            return self
        table = {}
        for var, value in bindings.items():
            i = var if isinstance(var, int) else self.ring.index(var)
            if not 0 <= i < self.ring.nvars:
                raise ValueError(f"variable index {i} out of range")
            if is_rational(value):
                value = self.ring.const(value)
            elif not (isinstance(value, Poly) and value.ring.same_as(self.ring)):
                raise ValueError("binding value must be rational or same-ring Poly")
            table[i] = value
        result = self.ring.zero()
        for mon, coeff in self.terms.items():
            factor = self.ring.const(coeff)
            rest = list(mon)
            for i, val in table.items():
                e = mon[i]
                if e:
                    rest[i] = 0
                    factor = factor * val ** e
            if any(rest):
                factor = factor * Poly(self.ring, {tuple(rest): QQ1})
            result = result + factor
        return result

    def evaluate(self, values) -> object:
        """Evaluate at a full vector of rationals."""
        values = [QQ(v) for v in values]
        if len(values) != self.ring.nvars:
            raise ValueError("value vector length does not match ring")
        total = QQ0
        for mon, coeff in self.terms.items():
            acc = coeff
            for i, e in enumerate(mon):
                if e:
                    acc *= values[i] ** e
            total += acc
        return total

    # -- text ----------------------------------------------------------
    def to_text(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for k, (mon, coeff) in enumerate(self.sorted_terms(order)):
            factors = []
            for i, e in enumerate(mon):
                if e:
                    name = self.ring.names[i]
                    factors.append(name if e == 1 else f"{name}^{e}")
            magnitude = coeff if coeff > 0 else -coeff
            if not factors:
                body = rational_text(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = rational_text(magnitude) + "*" + "*".join(factors)
            if k == 0:
                pieces.append(body if coeff > 0 else "-" + body)
            else:
                pieces.append((" + " if coeff > 0 else " - ") + body)
        return "".join(pieces)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Poly({self.to_text()})"


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*(?:\{[0-9, ]*\})?)"
    r"|(?P<op>[-+*^]))"
)


def parse_polynomial(text: str, ring: PolyRing) -> Poly:
    """Parse the canonical text format, e.g. ``p_{1,2}*p_{3,4} - 2*p_{1,3}^2``."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ValueError(f"cannot tokenize {text[pos:]!r}")
            break
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", m.group("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name").replace(" ", "")))
        else:
            tokens.append(("op", m.group("op")))
    if not tokens:
        raise ValueError("empty polynomial text")

    result = ring.zero()
    i = 0
    first = True
    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i] == ("op", "+") or i < len(tokens) and tokens[i] == ("op", "-"):
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens):
            raise ValueError("dangling sign")
        if not first and sign == 1 and tokens[i - 1][0] != "op":
            raise ValueError("missing operator between terms")
        coeff = QQ(sign)
        mon = [0] * ring.nvars
        expect_factor = True
        consumed = 0
        while i < len(tokens):
            kind, val = tokens[i]
            if kind == "op" and val == "*":
                if not consumed:
                    raise ValueError("'*' with no preceding factor")
                i += 1
                expect_factor = True
                continue
            if kind == "op":
                break
            if not expect_factor:
                raise ValueError(f"missing operator before {val!r}")
            if kind == "num":
                coeff *= QQ(val)
                i += 1
            else:
                idx = ring.index(val)
                power = 1
                i += 1
                if i + 1 < len(tokens) and tokens[i] == ("op", "^") and tokens[i + 1][0] == "num":
                    power = int(tokens[i + 1][1])
                    i += 2
                mon[idx] += power
            expect_factor = False
            consumed += 1
        result = result + Poly(ring, {tuple(mon): coeff} if coeff else {})
        first = False
    return result


class PolyMatrix:
    """Rectangular matrix with Poly entries (rationals are coerced)."""

    def __init__(self, ring: PolyRing, entries):
        self.ring = ring
        rows = []
        width = None
        for raw in entries:
            row = []
            for x in raw:
                if is_rational(x):
                    x = ring.const(x)
                elif not (isinstance(x, Poly) and x.ring.same_as(ring)):
                    raise ValueError("entry is not a rational or same-ring Poly")
                row.append(x)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError("ragged matrix")
            rows.append(row)
        self.entries = rows
        self.rows = len(rows)
        self.cols = width or 0

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> "PolyMatrix":
        return cls(ring, [[QQ1 if i == j else QQ0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("incompatible shapes")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = self.ring.zero()
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if not a.is_zero():
                        b = other.entries[k][j]
                        if not b.is_zero():
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out)

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.ring.same_as(other.ring)
                and self.entries == other.entries)

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols} over {self.ring!r})"


def wedge_power(M: PolyMatrix, l: int) -> PolyMatrix:
    """l-th exterior power: entry (I, J) is the minor with rows I, cols J.

    Rows and columns follow the canonical subset order.  Minors are
    computed by Laplace expansion with memoization on (rows, cols),
    which is fast on the sparse near-identity matrices used here.
    """
    if M.rows != M.cols:
        raise ValueError("exterior power of a non-square matrix")
    n = M.rows
    if not 0 <= l <= n:
        raise ValueError(f"wedge degree {l} out of range for n={n}")
    ring = M.ring
    index_sets = subsets(n, l)
    memo = {}
    zero = ring.zero()

    def minor(rows: tuple, cols: tuple) -> Poly:
        if not rows:
            return ring.one()
        key = (rows, cols)
        cached = memo.get(key)
        if cached is not None:
            return cached
        first = rows[0]
        rest = rows[1:]
        acc = zero
        for t, c in enumerate(cols):
            a = M.entries[first - 1][c - 1]
            if not a.is_zero():
                sub = minor(rest, cols[:t] + cols[t + 1:])
                if not sub.is_zero():
                    term = a * sub
                    acc = acc + (term if t % 2 == 0 else -term)
        memo[key] = acc
        return acc

    entries = [[minor(tuple(I), tuple(J)) for J in index_sets] for I in index_sets]
    return PolyMatrix(ring, entries)


def coefficient_matrix(W: PolyMatrix, i: int, var: str = "z"):
    """Entrywise coefficient of var**i; entries must be univariate in var."""
    ring = W.ring
    zi = ring.index(var)
    out = []
    for row in W.entries:
        out_row = []
        for p in row:
            for mon in p.terms:
                if any(e and j != zi for j, e in enumerate(mon)):
                    raise ValueError(f"entry {p} is not univariate in {var}")
            target = tuple(i if j == zi else 0 for j in range(ring.nvars))
            out_row.append(p.terms.get(target, QQ0))
        out.append(out_row)
    return out


def poly_matrix_from_rational(ring: PolyRing, M) -> PolyMatrix:
    return PolyMatrix(ring, [[QQ(x) for x in row] for row in M])

"""Level-m algebra of infinitesimal simplices in difference coordinates.

An element is a polynomial in the base point x_1..x_n and the infinitesimal
differences y_{i,j} (row i = 1..m, column j = 1..n), taken modulo the ideal
generated by

    y_{i,a} y_{i',b} + y_{i,b} y_{i',a}        (all rows i, i'; columns a, b).

The rewriting is direct: a monomial dies if a row or a column repeats
(squares included), otherwise its columns are sorted ascending along the
ascending rows and the coefficient picks up the sign of the sorting
permutation.  The surviving monomials form a basis of the quotient.

Rows here are the vertex slots 2..m+1 shifted down by one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Mapping, NamedTuple, Sequence

from .core import (
    BASE,
    INF,
    ContextError,
    Poly,
    Scalar,
    Var,
    as_fraction,
    check_context,
    poly_partial,
    poly_substitute,
)


class InfMonomial(NamedTuple):
    rows: tuple
    cols: tuple

    def __str__(self) -> str:
        return "*".join(f"y{r}_{c}" for r, c in zip(self.rows, self.cols))

    def to_poly(self) -> Poly:
        mono = tuple((Var.inf(r, c), 1) for r, c in zip(self.rows, self.cols))
        return Poly.monomial(mono)

    def sort_key(self):
        return (len(self.rows), self.rows, self.cols)


EMPTY = InfMonomial((), ())


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (entries assumed distinct)."""
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def canonical_monomial(pairs) -> tuple[int, InfMonomial]:
    """Reduce a product of y_{row,col} factors to (sign, canonical monomial).

    Returns sign 0 when the product lies in the ideal.
    """
    pairs = sorted(pairs)
    rows = tuple(r for r, _ in pairs)
    cols = tuple(c for _, c in pairs)
    if len(set(rows)) < len(rows) or len(set(cols)) < len(cols):
        return 0, EMPTY
    return permutation_sign(cols), InfMonomial(rows, tuple(sorted(cols)))


def _merge(a: InfMonomial, b: InfMonomial) -> tuple[int, InfMonomial]:
    if not a.rows:
        return 1, b
    if not b.rows:
        return 1, a
    if set(a.rows) & set(b.rows) or set(a.cols) & set(b.cols):
        return 0, EMPTY
    return canonical_monomial(list(zip(a.rows, a.cols)) + list(zip(b.rows, b.cols)))


class InfElement:
    """Element of the level-m algebra, stored in canonical normal form."""

    __slots__ = ("n", "m", "_coeffs", "_hash")

    def __init__(self, n: int, m: int, coeffs: Mapping[InfMonomial, Poly] | None = None):
        self.n = n
        self.m = m
        clean = {}
        for mono, c in (coeffs or {}).items():
            c = Poly.coerce(c)
            if not c:
                continue
            if len(mono.rows) != len(mono.cols):
                raise ValueError(f"malformed monomial {mono!r}")
            if any(not 1 <= r <= m for r in mono.rows) or any(not 1 <= j <= n for j in mono.cols):
                raise ContextError(f"monomial {mono} outside (n={n}, m={m})")
            if list(mono.rows) != sorted(set(mono.rows)) or list(mono.cols) != sorted(set(mono.cols)):
                raise ValueError(f"monomial {mono!r} is not canonical")
            check_context(c, n, m, kinds=(BASE,))
            clean[mono] = c
        self._coeffs = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, m: int, coeffs: dict) -> "InfElement":
        e = cls.__new__(cls)
        e.n, e.m, e._coeffs, e._hash = n, m, coeffs, None
        return e

    @classmethod
    def constant(cls, n: int, m: int, c: Scalar | Poly) -> "InfElement":
        return cls(n, m, {EMPTY: Poly.coerce(c)})

    @classmethod
    def zero(cls, n: int, m: int) -> "InfElement":
        return cls._raw(n, m, {})

    @classmethod
    def from_poly(cls, p: Poly, n: int, m: int) -> "InfElement":
        return normal_form(p, n, m)

    @property
    def coeffs(self) -> Mapping[InfMonomial, Poly]:
        return self._coeffs

    def items(self) -> list[tuple[InfMonomial, Poly]]:
        return sorted(self._coeffs.items(), key=lambda t: t[0].sort_key())

    def coefficient(self, mono: InfMonomial) -> Poly:
        return self._coeffs.get(mono, Poly())

    def base_part(self) -> Poly:
        return self.coefficient(EMPTY)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def to_poly(self) -> Poly:
        """A raw representative in Base and Inf variables."""
        total = Poly()
        for mono, c in self._coeffs.items():
            total = total + c * mono.to_poly()
        return total

    def _check(self, other: "InfElement") -> None:
        if (self.n, self.m) != (other.n, other.m):
            raise ContextError(
                f"level/dimension mismatch: (n={self.n}, m={self.m}) vs (n={other.n}, m={other.m})"
            )

    def _coerce(self, other):
        if isinstance(other, InfElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Poly)):
            return InfElement.constant(self.n, self.m, other)
        return NotImplemented

    def __add__(self, other) -> "InfElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return inf_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "InfElement":
        return InfElement._raw(self.n, self.m, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other) -> "InfElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return inf_add(self, -other)

    def __rsub__(self, other) -> "InfElement":
        return (-self) + other

    def __mul__(self, other) -> "InfElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return inf_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "InfElement":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = InfElement.constant(self.n, self.m, 1)
        for _ in range(e):
            result = result * self
        return result

    def scale(self, c: Scalar) -> "InfElement":
        c = as_fraction(c)
        return InfElement._raw(
            self.n, self.m, {k: v.scale(c) for k, v in self._coeffs.items()} if c else {}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, InfElement):
            return NotImplemented
        return (self.n, self.m, self._coeffs) == (other.n, other.m, other._coeffs)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.m, frozenset(self._coeffs.items())))
        return self._hash

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for mono, c in self.items():
            if not mono.rows:
                parts.append(str(c))
            elif len(c) == 1:
                parts.append(f"{c} * {mono}")
            else:
                parts.append(f"({c}) * {mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"InfElement(n={self.n}, m={self.m}, {str(self)!r})"


def normal_form(p: Poly, n: int, m: int) -> InfElement:
    """Canonical representative of ``p`` modulo the antisymmetry ideal."""
    check_context(p, n, m, kinds=(BASE, INF))
    acc: dict = {}
    for mono, c in p.terms.items():
        base = []
        pairs = []
        dead = False
        for v, e in mono:
            if v.kind == BASE:
                base.append((v, e))
            elif e > 1:
                dead = True
                break
            else:
                pairs.append((v.row, v.column))
        if dead:
            continue
        sign, key = canonical_monomial(pairs)
        if not sign:
            continue
        bucket = acc.setdefault(key, {})
        bm = tuple(base)
        bucket[bm] = bucket.get(bm, 0) + sign * c
    coeffs = {}
    for key, bucket in acc.items():
        poly = Poly(bucket)
        if poly:
            coeffs[key] = poly
    return InfElement._raw(n, m, coeffs)


def inf_add(a: InfElement, b: InfElement) -> InfElement:
    a._check(b)
    out = dict(a.coeffs)
    for k, c in b.coeffs.items():
        s = out[k] + c if k in out else c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return InfElement._raw(a.n, a.m, out)


def inf_mul(a: InfElement, b: InfElement) -> InfElement:
    a._check(b)
    out: dict = {}
    for ka, ca in a.coeffs.items():
        for kb, cb in b.coeffs.items():
            sign, k = _merge(ka, kb)
            if not sign:
                continue
            prod = ca * cb
            if sign < 0:
                prod = -prod
            s = out[k] + prod if k in out else prod
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return InfElement._raw(a.n, a.m, out)


def inf_monomials(n: int, m: int, size: int | None = None) -> list[InfMonomial]:
    """All canonical monomials at level m (optionally only those with ``size`` rows)."""

    sizes = range(min(m, n) + 1) if size is None else [size]
    out = []
    for k in sizes:
        for rows in combinations(range(1, m + 1), k):
            for cols in combinations(range(1, n + 1), k):
                out.append(InfMonomial(rows, cols))
    return out


# -- Taylor / Hadamard splitting ----------------------------------------------


@dataclass(frozen=True)
class TaylorSplit:
    """f = taylor + sum over sigma of (x - p)^sigma * remainders[sigma]."""

    variables: tuple
    point: tuple
    order: int
    taylor: Poly
    remainders: dict = field(default_factory=dict)

    def reconstruct(self) -> Poly:
        total = self.taylor
        for sigma, g in self.remainders.items():
            total = total + shifted_power(self.variables, self.point, sigma) * g
        return total


def shifted_power(variables, point, exponents) -> Poly:
    """prod_i (x_i - p_i)^e_i."""
    out = Poly.const(1)
    for v, p, e in zip(variables, point, exponents):
        if e:
            out = out * (Poly.var(v) - p) ** e
    return out


def compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative integers summing to ``total``, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _smallest_divisor(beta, size):
    # lexicographically smallest sigma <= beta with |sigma| = size: fill from the back
    sigma = [0] * len(beta)
    left = size
    for i in range(len(beta) - 1, -1, -1):
        take = min(beta[i], left)
        sigma[i] = take
        left -= take
    return tuple(sigma)


def taylor_split(f: Poly, point: Mapping[Var, Scalar], order: int) -> TaylorSplit:
    """Exact Taylor polynomial of ``f`` at ``point`` plus polynomial remainders.

    Every monomial of order > ``order`` in (x - p) is grouped under the
    lexicographically smallest sigma of size order+1 dividing it.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    variables = tuple(sorted(point))
    if any(v.kind != BASE for v in variables):
        raise ValueError("taylor_split expands in base variables only")
    extra = f.variables() - set(variables)
    if extra:
        raise ValueError(f"point does not fix {sorted(extra)}")
    pt = tuple(as_fraction(point[v]) for v in variables)

    # g(u) = f(u + p), read as a polynomial in u (reusing the same Var names)
    shifted = poly_substitute(f, {v: Poly.var(v) + c for v, c in zip(variables, pt)})
    back = {v: Poly.var(v) - c for v, c in zip(variables, pt)}
    index = {v: i for i, v in enumerate(variables)}

    low: dict = {}
    high: dict = {}
    for mono, c in shifted.terms.items():
        beta = [0] * len(variables)
        for v, e in mono:
            beta[index[v]] = e
        if sum(beta) <= order:
            low[mono] = c
        else:
            sigma = _smallest_divisor(beta, order + 1)
            rest = tuple(
                (v, beta[i] - sigma[i]) for i, v in enumerate(variables) if beta[i] - sigma[i]
            )
            bucket = high.setdefault(sigma, {})
            bucket[rest] = bucket.get(rest, 0) + c

    taylor = poly_substitute(Poly(low), back, partial=True)
    remainders = {}
    for sigma in compositions(order + 1, len(variables)):
        remainders[sigma] = poly_substitute(Poly(high.get(sigma, {})), back, partial=True)
    return TaylorSplit(variables, pt, order, taylor, remainders)


def taylor_polynomial(f: Poly, point: Mapping[Var, Scalar], order: int) -> Poly:
    """The displayed Taylor sum, computed from iterated partial derivatives."""
    variables = tuple(sorted(point))
    pt = {v: as_fraction(point[v]) for v in variables}
    total = Poly()
    for k in range(order + 1):
        for tau in compositions(k, len(variables)):
            d = f
            weight = Fraction(1)
            for v, t in zip(variables, tau):
                for _ in range(t):
                    d = poly_partial(d, v)
                weight /= factorial(t)
            value = d.eval(pt)
            if value:
                total = total + shifted_power(variables, [pt[v] for v in variables], tau).scale(
                    weight * value
                )
    return total


# -- the C-infinity operations on a level, polynomial fragment ------------------


def apply_polynomial_op(f: Poly, args: Sequence[InfElement]) -> InfElement:
    """Apply the operation x_1..x_k -> f to k elements of one level."""
    if not args:
        raise ValueError("need at least one argument to fix the level")
    n, m = args[0].n, args[0].m
    for a in args[1:]:
        args[0]._check(a)
    for v in f.variables():
        if v.kind != BASE:
            raise ValueError(f"operation uses non-base variable {v}")
        if not 1 <= v.a <= len(args):
            raise ValueError(f"arity mismatch: {v} used with {len(args)} arguments")
    cache: dict = {}

    def power(i: int, e: int) -> InfElement:
        if (i, e) not in cache:
            cache[(i, e)] = args[i - 1] ** e
        return cache[(i, e)]

    total = InfElement.zero(n, m)
    for mono, c in f.terms.items():
        term = InfElement.constant(n, m, c)
        for v, e in mono:
            term = term * power(v.a, e)
            if not term:
                break
        total = total + term
    return total


"""Exact rational arithmetic and sparse multivariate polynomials.

Variables live in one tagged universe:

* ``x{j}``      base coordinate j of R^n
* ``y{i}_{j}``  infinitesimal row i, column j (difference coordinates)
* ``v{k}_{j}``  vertex slot k, column j (vertex coordinates)

All indices are 1-based.  Polynomials are immutable and always stored in
canonical form (no zero coefficients), so structural equality is equality.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Tuple, Union

BASE, INF, VERTEX = 0, 1, 2
_KIND_PREFIX = {BASE: "x", INF: "y", VERTEX: "v"}

Scalar = Union[int, Fraction]


class Var(NamedTuple):
    """A tagged variable.  Ordering is Base < Inf < Vertex, then by indices."""

    kind: int
    a: int
    b: int = 0

    @classmethod
    def base(cls, j: int) -> "Var":
        return cls(BASE, j, 0)

    @classmethod
    def inf(cls, i: int, j: int) -> "Var":
        return cls(INF, i, j)

    @classmethod
    def vertex(cls, k: int, j: int) -> "Var":
        return cls(VERTEX, k, j)

    @property
    def column(self) -> int:
        return self.a if self.kind == BASE else self.b

    @property
    def row(self) -> int:
        """Row (Inf) or vertex slot (Vertex); 0 for base variables."""
        return 0 if self.kind == BASE else self.a

    def __str__(self) -> str:
        if self.kind == BASE:
            return f"x{self.a}"
        return f"{_KIND_PREFIX[self.kind]}{self.a}_{self.b}"

    def __repr__(self) -> str:
        return str(self)


Monomial = Tuple[Tuple[Var, int], ...]


class ContextError(ValueError):
    """A variable or parameter falls outside the declared (n, m) context."""


def as_fraction(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


def format_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_str(m: Monomial) -> str:
    return "*".join(str(v) if e == 1 else f"{v}**{e}" for v, e in m)


def grlex_key(m: Monomial):
    """Sort key putting monomials in descending graded-lex order."""
    return (-mono_degree(m), tuple((v, -e) for v, e in m))


class Poly:
    """Sparse polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = as_fraction(c)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        # terms already canonical: Fraction values, no zeros
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls({(): c})

    @classmethod
    def var(cls, v: Var) -> "Poly":
        return cls._raw({((v, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, mono: Monomial, c: Scalar = 1) -> "Poly":
        return cls({mono: c})

    @staticmethod
    def coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def items(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(mono_degree(m) for m in self._terms)

    def variables(self) -> set[Var]:
        return {v for m in self._terms for v, _ in m}

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = Poly.coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        other = Poly.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = Poly.coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly._raw(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Poly":
        c = as_fraction(c)
        if not c:
            return Poly()
        return Poly._raw({m: c * k for m, k in self._terms.items()})

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- equality / hashing ---------------------------------------------------

    def __eq__(self, other) -> bool:
        other = Poly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.items():
            if not mono:
                s = format_rational(c)
            elif c == 1:
                s = mono_str(mono)
            elif c == -1:
                s = "-" + mono_str(mono)
            else:
                s = f"{format_rational(c)}*{mono_str(mono)}"
            if parts and s.startswith("-"):
                parts.append(" - " + s[1:])
            elif parts:
                parts.append(" + " + s)
            else:
                parts.append(s)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"

    # -- calculus / substitution --------------------------------------------

    def partial(self, v: Var) -> "Poly":
        return poly_partial(self, v)

    def subs(self, sigma: Mapping[Var, "Poly"], *, partial: bool = False) -> "Poly":
        return poly_substitute(self, sigma, partial=partial)

    def eval(self, point: Mapping[Var, Scalar]) -> Fraction:
        return poly_eval(self, point)

    def map_coefficients(self, fn: Callable[[Fraction], Scalar]) -> "Poly":
        return Poly({m: fn(c) for m, c in self._terms.items()})


def X(j: int) -> Poly:
    return Poly.var(Var.base(j))


def Y(i: int, j: int) -> Poly:
    return Poly.var(Var.inf(i, j))


def V(k: int, j: int) -> Poly:
    return Poly.var(Var.vertex(k, j))


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_partial(p: Poly, v: Var) -> Poly:
    out: dict = {}
    for mono, c in p.terms.items():
        for idx, (w, e) in enumerate(mono):
            if w == v:
                if e == 1:
                    new = mono[:idx] + mono[idx + 1:]
                else:
                    new = mono[:idx] + ((w, e - 1),) + mono[idx + 1:]
                out[new] = out.get(new, 0) + c * e
                break
    return Poly(out)


def poly_substitute(p: Poly, sigma: Mapping[Var, Poly], *, partial: bool = False) -> Poly:
    """Simultaneous substitution of variables by polynomials.

    Every variable of ``p`` must appear in ``sigma`` unless ``partial`` is
    set, in which case missing variables are left alone.
    """
    powers: dict = {}

    def power(v: Var, e: int) -> Poly:
        key = (v, e)
        if key not in powers:
            if v in sigma:
                img = sigma[v]
                if not isinstance(img, Poly):
                    img = Poly.coerce(img)
            elif partial:
                img = Poly.var(v)
            else:
                raise KeyError(f"no substitution given for {v}")
            powers[key] = img ** e
        return powers[key]

    total: dict = {}
    for mono, c in p.terms.items():
        term = Poly.const(c)
        for v, e in mono:
            term = term * power(v, e)
            if not term:
                break
        for m, k in term.terms.items():
            total[m] = total.get(m, 0) + k
    return Poly(total)


def poly_eval(p: Poly, point: Mapping[Var, Scalar]) -> Fraction:
    total = Fraction(0)
    for mono, c in p.terms.items():
        t = c
        for v, e in mono:
            if v not in point:
                raise KeyError(f"no value given for {v}")
            t *= as_fraction(point[v]) ** e
        total += t
    return total


def monomials_up_to(variables: Iterable[Var], degree: int) -> Iterator[Monomial]:
    """All monomials in ``variables`` of total degree <= ``degree``."""
    vs = sorted(variables)

    def rec(idx: int, budget: int, acc: list):
        if idx == len(vs):
            yield tuple(acc)
            return
        for e in range(budget + 1):
            if e:
                acc.append((vs[idx], e))
            yield from rec(idx + 1, budget - e, acc)
            if e:
                acc.pop()

    yield from rec(0, degree, [])


def monomials_of_degree(variables: Iterable[Var], degree: int) -> Iterator[Monomial]:
    for m in monomials_up_to(variables, degree):
        if mono_degree(m) == degree:
            yield m


def check_context(p: Poly, n: int, m: int | None = None, kinds: Iterable[int] | None = None) -> None:
    """Raise ContextError unless every variable of ``p`` fits inside (n, m)."""
    allowed = set(kinds) if kinds is not None else {BASE, INF, VERTEX}
    for v in p.variables():
        if v.kind not in allowed:
            raise ContextError(f"variable {v} not allowed here")
        if not 1 <= v.column <= n:
            raise ContextError(f"column of {v} outside 1..{n}")
        if v.kind == INF and (m is None or not 1 <= v.row <= m):
            raise ContextError(f"row of {v} outside 1..{m}")
        if v.kind == VERTEX and (m is None or not 1 <= v.row <= m + 1):
            raise ContextError(f"vertex slot of {v} outside 1..{(m or 0) + 1}")

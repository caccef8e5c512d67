"""Ideal presentations of D(n), D~(m,n) and R^n_<m>, coordinate changes,
and an exact linear-algebra ideal membership oracle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .core import (
    BASE,
    INF,
    VERTEX,
    Poly,
    X,
    Y,
    V,
    check_context,
    grlex_key,
    mono_degree,
    monomials_of_degree,
    poly_substitute,
)
from .linalg import EchelonBasis

D = "D"
DTILDE = "Dtilde"
RBRACKET = "Rbracket"
KINDS = (D, DTILDE, RBRACKET)
VERTEX_COORDS = "vertex"
DIFFERENCE_COORDS = "difference"


@dataclass(frozen=True)
class LocusPresentation:
    kind: str
    coords: str
    n: int
    m: int
    generators: tuple

    def __len__(self) -> int:
        return len(self.generators)


@dataclass
class MembershipCertificate:
    target: Poly
    generators: tuple
    combination: dict = field(default_factory=dict)
    verified: bool = False

    def verify(self) -> bool:
        total = Poly()
        for idx, cof in self.combination.items():
            total = total + cof * self.generators[idx]
        self.verified = total == self.target
        return self.verified

    def to_json(self) -> dict:
        return {
            "target": str(self.target),
            "combination": [
                {"generator": idx, "generator_expr": str(self.generators[idx]), "cofactor": str(c)}
                for idx, c in sorted(self.combination.items())
            ],
            "verified": self.verified,
        }


def _normalize(p: Poly) -> Poly:
    """Scale to leading coefficient 1 (leading in graded-lex order)."""
    lead = p.items()[0][1]
    return p.scale(1 / lead)


def _canonical(gens: Iterable[Poly]) -> tuple:
    seen = {}
    for g in gens:
        if g:
            g = _normalize(g)
            seen[g] = None
    return tuple(sorted(seen, key=lambda g: [grlex_key(m) for m, _ in g.items()]))


def generators(kind: str, coords: str = DIFFERENCE_COORDS, n: int = 1, m: int = 0) -> LocusPresentation:
    """Canonical generator list of one of the three ideals.

    D(n) lives in the base variables, D~(m,n) in the infinitesimal rows
    y_1..y_m.  For R^n_<m> the coordinates matter: vertex coordinates give
    the pairwise-difference squares, difference coordinates give the
    antisymmetry generators.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    cols = list(combinations_with_replacement(range(1, n + 1), 2))
    if kind == D:
        gens = [X(a) * X(b) for a, b in cols]
    elif kind == DTILDE:
        gens = [Y(k, a) * Y(k, b) for k in range(1, m + 1) for a, b in cols]
        for k in range(1, m + 1):
            for l in range(k + 1, m + 1):
                gens += [(Y(k, a) - Y(l, a)) * (Y(k, b) - Y(l, b)) for a, b in cols]
    elif kind == RBRACKET:
        if coords == VERTEX_COORDS:
            gens = [
                (V(k, a) - V(l, a)) * (V(k, b) - V(l, b))
                for k in range(1, m + 2)
                for l in range(k + 1, m + 2)
                for a, b in cols
            ]
        elif coords == DIFFERENCE_COORDS:
            gens = [
                Y(i, a) * Y(j, b) + Y(i, b) * Y(j, a)
                for i in range(1, m + 1)
                for j in range(i, m + 1)
                for a, b in cols
            ]
        else:
            raise ValueError(f"unknown coordinates {coords!r}")
    else:
        raise ValueError(f"unknown locus kind {kind!r}")
    return LocusPresentation(kind, coords, n, m, _canonical(gens))


# -- coordinate change --------------------------------------------------------


def to_difference(p: Poly, n: int, m: int) -> Poly:
    """v_{1,j} -> x_j and v_{k,j} -> x_j + y_{k-1,j}."""
    check_context(p, n, m, kinds=(VERTEX,))
    sigma = {}
    for v in p.variables():
        k, j = v.row, v.column
        sigma[v] = X(j) if k == 1 else X(j) + Y(k - 1, j)
    return poly_substitute(p, sigma)


def from_difference(p: Poly, n: int, m: int) -> Poly:
    """x_j -> v_{1,j} and y_{i,j} -> v_{i+1,j} - v_{1,j}."""
    check_context(p, n, m, kinds=(BASE, INF))
    sigma = {}
    for v in p.variables():
        if v.kind == BASE:
            sigma[v] = V(1, v.column)
        else:
            sigma[v] = V(v.row + 1, v.column) - V(1, v.column)
    return poly_substitute(p, sigma)


# -- membership oracle --------------------------------------------------------


def _by_degree(v):
    return 1


def _by_column(v):
    return v.column


def _by_row(v):
    return (v.kind, v.row)


_WEIGHTS = {"degree": _by_degree, "column": _by_column, "row": _by_row}


def _gradings(gens: Sequence[Poly]) -> tuple:
    """Names of the weight functions under which every generator is homogeneous."""
    usable = []
    for name, w in _WEIGHTS.items():
        if all(len({_weight(mono, w) for mono in g.terms}) == 1 for g in gens):
            usable.append(name)
    return tuple(usable)


def _weight(mono, w):
    acc: dict = {}
    for v, e in mono:
        key = w(v)
        acc[key] = acc.get(key, 0) + e
    return tuple(sorted(acc.items()))


def _grade(mono, names):
    return tuple(_weight(mono, _WEIGHTS[name]) for name in names)


@lru_cache(maxsize=256)
def _slice_basis(gens: tuple, grade: tuple, degree: int) -> EchelonBasis:
    names = _gradings(gens)
    variables = sorted(set().union(*(g.variables() for g in gens)))
    basis = EchelonBasis()
    for idx, g in enumerate(gens):
        gdeg = g.degree()
        if gdeg > degree:
            continue
        for mono in monomials_of_degree(variables, degree - gdeg):
            cand = Poly.monomial(mono) * g
            if _grade(next(iter(cand.terms)), names) != grade:
                continue
            basis.add(dict(cand.terms), (idx, mono))
    return basis


def ideal_member(p: Poly, presentation: LocusPresentation | Sequence[Poly], deg_bound: int | None = None):
    """Exact membership test by linear algebra.

    Returns a verified MembershipCertificate, or None when ``p`` is not in
    the ideal.  Variables not occurring in the generators are treated as
    coefficients; every generator set in scope is homogeneous, so cofactors
    of degree deg(p) - 2 suffice and the answer is definitive.
    """
    gens = tuple(presentation.generators if isinstance(presentation, LocusPresentation) else presentation)
    if deg_bound is None:
        deg_bound = max(p.degree(), 0)
    if deg_bound < p.degree():
        raise ValueError(f"deg_bound {deg_bound} below deg(p) = {p.degree()}")
    if not p:
        return MembershipCertificate(p, gens, {}, True)
    if not gens:
        return None
    gvars = set().union(*(g.variables() for g in gens))
    names = _gradings(gens)
    if "degree" not in names:
        raise ValueError("membership oracle needs homogeneous generators")

    # split p into (outside monomial, G-degree, grade) slices
    slices: dict = {}
    for mono, c in p.terms.items():
        inner = tuple((v, e) for v, e in mono if v in gvars)
        outer = tuple((v, e) for v, e in mono if v not in gvars)
        key = (outer, mono_degree(inner), _grade(inner, names))
        slices.setdefault(key, {})[inner] = c

    combination: dict = {}
    for (outer, degree, grade), vec in slices.items():
        if degree + mono_degree(outer) > deg_bound:
            return None
        basis = _slice_basis(gens, grade, degree)
        rem, comb = basis.reduce(vec)
        if rem:
            return None
        for (idx, mono), c in comb.items():
            cof = Poly.monomial(tuple(sorted(mono + outer)), c)
            combination[idx] = combination.get(idx, Poly()) + cof
    combination = {k: c for k, c in combination.items() if c}
    cert = MembershipCertificate(p, gens, combination)
    if not cert.verify():
        raise AssertionError("membership certificate failed to re-verify")
    return cert


@dataclass
class IdealEqualityReport:
    m: int
    n: int
    deg_bound: int
    equal: bool
    failures: list
    certificates: dict

    def to_json(self) -> dict:
        return {
            "command": "ideal equality",
            "params": {"m": self.m, "n": self.n, "deg_bound": self.deg_bound},
            "equal": self.equal,
            "failures": self.failures,
            "certificates": {
                name: [c.to_json() for c in certs] for name, certs in sorted(self.certificates.items())
            },
        }


def transported_vertex_generators(n: int, m: int) -> tuple:
    """The R^n_<m> vertex generators rewritten in difference coordinates."""
    return tuple(to_difference(g, n, m) for g in generators(RBRACKET, VERTEX_COORDS, n, m).generators)


def ideal_equality_check(m: int, n: int, deg_bound: int = 2) -> IdealEqualityReport:
    """Check that the D~-style ideal (also reached by transporting the vertex
    presentation) equals the antisymmetry ideal, both inclusions certified."""
    sides = {
        "dtilde": generators(DTILDE, DIFFERENCE_COORDS, n, m).generators,
        "transported": transported_vertex_generators(n, m),
        "antisymmetric": generators(RBRACKET, DIFFERENCE_COORDS, n, m).generators,
    }
    pairs = [
        ("dtilde", "antisymmetric"),
        ("antisymmetric", "dtilde"),
        ("transported", "antisymmetric"),
        ("antisymmetric", "transported"),
    ]
    failures = []
    certificates = {}
    for src, dst in pairs:
        name = f"{src}<={dst}"
        certs = []
        for g in sides[src]:
            cert = ideal_member(g, sides[dst], max(deg_bound, g.degree()))
            if cert is None or not cert.verify():
                failures.append({"case": name, "lhs": str(g), "rhs": "not-member"})
            else:
                certs.append(cert)
        certificates[name] = certs
    return IdealEqualityReport(m, n, deg_bound, not failures, failures, certificates)

"""Quillen modules at desk scale.

A module M over a ring R becomes the abelian group object R x M -> R with
the square-zero product (r0, m0)(r1, m1) = (r0 r1, r0 m1 + r1 m0).  A
polynomial operation f acts on it by

    f(r_1 + m_1, ..., r_k + m_k) = f(r) + sum_l m_l * (df/dx_l)(r),

which is how the smooth structure extends to square-zero extensions.  The
translations Mod -> tangent objects -> Mod are implemented on objects and
on morphisms, with randomized checks that they are mutually inverse.

Rings and modules are duck-typed: a ring offers zero/one/add/sub/neg/mul,
``evaluate(f, args)`` and ``random_element(rng)``; a module offers
zero/add/sub/neg, ``act(r, m)`` and ``random_element(rng)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .core import BASE, Poly, Var, X, check_context, poly_partial, poly_substitute
from .cosimplicial import DeltaMap, codegeneracies, cofaces, delta_compose, inf_map
from .infinitesimal import InfElement, apply_polynomial_op
from .report import Report, trial_rng
from . import sampling


# -- carriers -----------------------------------------------------------------


class DeskRing:
    """Q[x_1..x_k] modulo rewriting rules (monomial -> polynomial)."""

    def __init__(self, ngens: int, relations: Sequence[tuple[Poly, Poly]] = ()):
        self.ngens = ngens
        rules = []
        for lhs, rhs in relations:
            lhs, rhs = Poly.coerce(lhs), Poly.coerce(rhs)
            if len(lhs) != 1 or lhs.items()[0][1] != 1:
                raise ValueError("relation left-hand sides must be monic monomials")
            rules.append((lhs.items()[0][0], rhs))
        self.relations = tuple(rules)

    def __repr__(self) -> str:
        rel = ", ".join(f"{Poly.monomial(l)} -> {r}" for l, r in self.relations)
        return f"DeskRing({self.ngens}{'; ' + rel if rel else ''})"

    def gens(self) -> list[Poly]:
        return [X(i) for i in range(1, self.ngens + 1)]

    def reduce(self, p: Poly) -> Poly:
        check_context(p, self.ngens, kinds=(BASE,))
        for _ in range(10_000):
            changed = False
            out = Poly()
            for mono, c in p.terms.items():
                hit = self._rewrite(mono)
                if hit is None:
                    out = out + Poly.monomial(mono, c)
                else:
                    out = out + hit.scale(c)
                    changed = True
            p = out
            if not changed:
                return p
        raise RuntimeError("rewriting did not terminate")

    def _rewrite(self, mono):
        exps = dict(mono)
        for lhs, rhs in self.relations:
            if all(exps.get(v, 0) >= e for v, e in lhs):
                rest = dict(exps)
                for v, e in lhs:
                    rest[v] -= e
                quotient = tuple((v, e) for v, e in sorted(rest.items()) if e)
                return rhs * Poly.monomial(quotient)
        return None

    def zero(self) -> Poly:
        return Poly()

    def one(self) -> Poly:
        return self.reduce(Poly.const(1))

    def scalar(self, c) -> Poly:
        return self.reduce(Poly.const(c))

    def add(self, a: Poly, b: Poly) -> Poly:
        return a + b

    def sub(self, a: Poly, b: Poly) -> Poly:
        return a - b

    def neg(self, a: Poly) -> Poly:
        return -a

    def mul(self, a: Poly, b: Poly) -> Poly:
        return self.reduce(a * b)

    def evaluate(self, f: Poly, args: Sequence[Poly]) -> Poly:
        """R(f)(args): substitute ring elements into the operation f(x_1..x_k)."""
        _check_arity(f, len(args))
        return self.reduce(poly_substitute(f, {Var.base(i + 1): a for i, a in enumerate(args)}, partial=True))

    def random_element(self, rng: random.Random, deg: int = 2) -> Poly:
        return self.reduce(sampling.base_poly(rng, self.ngens, deg, 3))


class InfLevelRing:
    """One level of Inf_n seen as a commutative ring."""

    def __init__(self, n: int, m: int):
        self.n, self.m = n, m

    def __repr__(self) -> str:
        return f"InfLevelRing(n={self.n}, m={self.m})"

    def zero(self) -> InfElement:
        return InfElement.zero(self.n, self.m)

    def one(self) -> InfElement:
        return InfElement.constant(self.n, self.m, 1)

    def scalar(self, c) -> InfElement:
        return InfElement.constant(self.n, self.m, c)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def evaluate(self, f: Poly, args):
        return apply_polynomial_op(f, list(args))

    def random_element(self, rng: random.Random, deg: int = 2) -> InfElement:
        return sampling.inf_element(rng, self.n, self.m, deg, terms=3)


class DeskModule:
    """The free module R^rank; elements are tuples of ring elements."""

    def __init__(self, ring, rank: int = 1):
        self.ring = ring
        self.rank = rank

    def __repr__(self) -> str:
        return f"DeskModule({self.ring!r}, rank={self.rank})"

    def element(self, *components) -> tuple:
        if len(components) != self.rank:
            raise ValueError(f"expected {self.rank} components")
        return tuple(components)

    def zero(self) -> tuple:
        return tuple(self.ring.zero() for _ in range(self.rank))

    def basis(self, i: int) -> tuple:
        return tuple(self.ring.one() if j == i else self.ring.zero() for j in range(self.rank))

    def add(self, a, b):
        return tuple(self.ring.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.ring.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.ring.neg(x) for x in a)

    def act(self, r, a):
        return tuple(self.ring.mul(r, x) for x in a)

    def random_element(self, rng: random.Random, deg: int = 2) -> tuple:
        return tuple(self.ring.random_element(rng, deg) for _ in range(self.rank))


def _check_arity(f: Poly, k: int) -> None:
    for v in f.variables():
        if v.kind != BASE or not 1 <= v.a <= k:
            raise ValueError(f"arity mismatch: {v} used with {k} arguments")


# -- square-zero extensions ---------------------------------------------------


@dataclass(frozen=True)
class SquareZeroElement:
    """r + m in R x M, written r (+) m."""

    base: Any
    fiber: Any
    ext: "SquareZeroExtension" = field(compare=False, repr=False)

    def _same(self, other: "SquareZeroElement") -> None:
        if not isinstance(other, SquareZeroElement) or other.ext is not self.ext:
            raise ValueError("elements of different square-zero extensions")

    def __add__(self, other):
        return sz_add(self, other)

    def __sub__(self, other):
        return sz_add(self, -other)

    def __neg__(self):
        return self.ext.element(self.ext.ring.neg(self.base), self.ext.module.neg(self.fiber))

    def __mul__(self, other):
        return sz_mul(self, other)

    def __str__(self) -> str:
        fiber = ", ".join(map(str, self.fiber)) if isinstance(self.fiber, tuple) else str(self.fiber)
        return f"{self.base} (+) ({fiber})"


def sz_add(a: SquareZeroElement, b: SquareZeroElement) -> SquareZeroElement:
    a._same(b)
    ext = a.ext
    return ext.element(ext.ring.add(a.base, b.base), ext.module.add(a.fiber, b.fiber))


def sz_mul(a: SquareZeroElement, b: SquareZeroElement) -> SquareZeroElement:
    """(r0, m0)(r1, m1) = (r0 r1, r0 m1 + r1 m0)."""
    a._same(b)
    ext = a.ext
    R, M = ext.ring, ext.module
    return ext.element(R.mul(a.base, b.base), M.add(M.act(a.base, b.fiber), M.act(b.base, a.fiber)))


def sz_apply(f: Poly, args: Sequence[SquareZeroElement]) -> SquareZeroElement:
    """f(r (+) m) = R(f)(r) (+) sum_l m_l * R(df/dx_l)(r)."""
    if not args:
        raise ValueError("need at least one argument")
    ext = args[0].ext
    for a in args[1:]:
        args[0]._same(a)
    _check_arity(f, len(args))
    R, M = ext.ring, ext.module
    bases = [a.base for a in args]
    fiber = M.zero()
    for l, a in enumerate(args, start=1):
        df = poly_partial(f, Var.base(l))
        if df:
            fiber = M.add(fiber, M.act(R.evaluate(df, bases), a.fiber))
    return ext.element(R.evaluate(f, bases), fiber)


class SquareZeroExtension:
    """F(R, M): the ring R x M over R, with its abelian group structure."""

    def __init__(self, ring, module):
        self.ring = ring
        self.module = module

    def __repr__(self) -> str:
        return f"SquareZeroExtension({self.ring!r}, {self.module!r})"

    def element(self, r, m) -> SquareZeroElement:
        return SquareZeroElement(r, m, self)

    def zero(self) -> SquareZeroElement:
        return self.element(self.ring.zero(), self.module.zero())

    def one(self) -> SquareZeroElement:
        return self.element(self.ring.one(), self.module.zero())

    def add(self, a, b):
        return sz_add(a, b)

    def sub(self, a, b):
        return sz_add(a, -b)

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return sz_mul(a, b)

    def evaluate(self, f: Poly, args):
        return sz_apply(f, list(args))

    def projection(self, g: SquareZeroElement):
        """a: R x M -> R."""
        return g.base

    def unit(self, r) -> SquareZeroElement:
        """eta: R -> R x M, the zero section."""
        return self.element(r, self.module.zero())

    def fiber_add(self, g: SquareZeroElement, h: SquareZeroElement) -> SquareZeroElement:
        """Group law over R: defined on pairs with the same base."""
        if g.base != h.base:
            raise ValueError("fiber_add needs elements over the same base point")
        return self.element(g.base, self.module.add(g.fiber, h.fiber))

    def fiber_neg(self, g: SquareZeroElement) -> SquareZeroElement:
        return self.element(g.base, self.module.neg(g.fiber))

    def random_element(self, rng: random.Random, deg: int = 2) -> SquareZeroElement:
        return self.element(self.ring.random_element(rng, deg), self.module.random_element(rng, deg))


def mod_to_tangent(ring, module) -> SquareZeroExtension:
    """The abelian group object R x M -> R attached to an R-module."""
    return SquareZeroExtension(ring, module)


def check_group_object(ext: SquareZeroExtension, trials: int = 20, seed: int = 0) -> Report:
    """Structure maps of R x M -> R are ring maps over R and satisfy the group axioms."""
    report = Report("group object", {"ext": repr(ext)}, seed=seed, trials=trials)
    R = ext.ring
    for t in range(trials):
        rng = trial_rng(seed, t)
        r, s = R.random_element(rng), R.random_element(rng)
        g1, g2, g3 = (ext.element(r, ext.module.random_element(rng)) for _ in range(3))
        h1, h2 = (ext.element(s, ext.module.random_element(rng)) for _ in range(2))
        tag = f"trial={t}"
        report.check(f"a.eta=id {tag}", ext.projection(ext.unit(r)), r)
        report.check(f"eta mult {tag}", ext.unit(R.mul(r, s)), ext.unit(r) * ext.unit(s))
        report.check(f"eta add {tag}", ext.unit(R.add(r, s)), ext.unit(r) + ext.unit(s))
        report.check(f"eta unit {tag}", ext.unit(R.one()), ext.one())
        report.check(f"a mult {tag}", ext.projection(g1 * h1), R.mul(r, s))
        report.check(f"a add {tag}", ext.projection(g1 + h1), R.add(r, s))
        # addition map on the fiber product is a ring map
        report.check(f"add mult {tag}", ext.fiber_add(g1 * h1, g2 * h2), ext.fiber_add(g1, g2) * ext.fiber_add(h1, h2))
        report.check(f"add add {tag}", ext.fiber_add(g1 + h1, g2 + h2), ext.fiber_add(g1, g2) + ext.fiber_add(h1, h2))
        report.check(f"neg mult {tag}", ext.fiber_neg(g1 * h1), ext.fiber_neg(g1) * ext.fiber_neg(h1))
        report.check(f"neg add {tag}", ext.fiber_neg(g1 + h1), ext.fiber_neg(g1) + ext.fiber_neg(h1))
        # group axioms in the slice over R
        report.check(f"assoc {tag}", ext.fiber_add(ext.fiber_add(g1, g2), g3), ext.fiber_add(g1, ext.fiber_add(g2, g3)))
        report.check(f"comm {tag}", ext.fiber_add(g1, g2), ext.fiber_add(g2, g1))
        report.check(f"zero {tag}", ext.fiber_add(g1, ext.unit(r)), g1)
        report.check(f"inverse {tag}", ext.fiber_add(g1, ext.fiber_neg(g1)), ext.unit(r))
    return report


# -- from tangent objects back to modules --------------------------------------


class RelabeledExtension:
    """A square-zero extension transported along a bijection of carriers.

    Elements are opaque labels; every structure map is conjugated by
    ``encode``/``decode``.
    """

    def __init__(self, inner: SquareZeroExtension, encode: Callable, decode: Callable):
        self.inner = inner
        self.ring = inner.ring
        self.encode = encode
        self.decode = decode

    def zero(self):
        return self.encode(self.inner.zero())

    def one(self):
        return self.encode(self.inner.one())

    def add(self, a, b):
        return self.encode(self.decode(a) + self.decode(b))

    def sub(self, a, b):
        return self.encode(self.decode(a) - self.decode(b))

    def neg(self, a):
        return self.encode(-self.decode(a))

    def mul(self, a, b):
        return self.encode(self.decode(a) * self.decode(b))

    def projection(self, g):
        return self.inner.projection(self.decode(g))

    def unit(self, r):
        return self.encode(self.inner.unit(r))

    def random_element(self, rng: random.Random, deg: int = 2):
        return self.encode(self.inner.random_element(rng, deg))


def random_relabeling(ext: SquareZeroExtension, rng: random.Random) -> RelabeledExtension:
    """Relabel r (+) m as (r, A m + c r) for a random A in GL_rank(Q) and c in Q^rank."""
    M = ext.module
    R = ext.ring
    k = M.rank
    A = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    Ainv = [row[:] for row in A]
    for _ in range(3 * k):
        i, j = rng.randrange(k), rng.randrange(k)
        if i != j:
            c = sampling.rational(rng)
            # A <- E A with E = I + c e_ij, Ainv <- Ainv E^-1
            A[i] = [a + c * b for a, b in zip(A[i], A[j])]
            for row in Ainv:
                row[j] -= c * row[i]
        else:
            c = sampling.nonzero_rational(rng)
            A[i] = [a * c for a in A[i]]
            for row in Ainv:
                row[i] /= c
    shift = [sampling.rational(rng) for _ in range(k)]

    def lin(mat, vec):
        out = []
        for row in mat:
            acc = R.zero()
            for a, x in zip(row, vec):
                if a:
                    acc = R.add(acc, R.mul(R.scalar(a), x))
            out.append(acc)
        return tuple(out)

    def encode(g: SquareZeroElement):
        w = lin(A, g.fiber)
        return (g.base, tuple(R.add(x, R.mul(R.scalar(c), g.base)) for x, c in zip(w, shift)))

    def decode(label):
        r, w = label
        return ext.element(r, lin(Ainv, tuple(R.sub(x, R.mul(R.scalar(c), r)) for x, c in zip(w, shift))))

    return RelabeledExtension(ext, encode, decode)


class KernelModule:
    """ker(a) with the R-action r . k = eta(r) k."""

    def __init__(self, descriptor):
        self.descriptor = descriptor
        self.ring = descriptor.ring

    def zero(self):
        return self.descriptor.unit(self.ring.zero())

    def add(self, a, b):
        return self.descriptor.add(a, b)

    def sub(self, a, b):
        return self.descriptor.sub(a, b)

    def neg(self, a):
        return self.descriptor.neg(a)

    def act(self, r, k):
        return self.descriptor.mul(self.descriptor.unit(r), k)

    def contains(self, g) -> bool:
        return self.descriptor.projection(g) == self.ring.zero()

    def random_element(self, rng: random.Random, deg: int = 2):
        g = self.descriptor.random_element(rng, deg)
        return self.descriptor.sub(g, self.descriptor.unit(self.descriptor.projection(g)))


@dataclass
class IsoWitness:
    """g -> (a(g), g - eta(a(g))) and its inverse (r, k) -> eta(r) + k."""

    descriptor: Any
    target: SquareZeroExtension

    def forward(self, g) -> SquareZeroElement:
        d = self.descriptor
        r = d.projection(g)
        return self.target.element(r, d.sub(g, d.unit(r)))

    def backward(self, x: SquareZeroElement):
        d = self.descriptor
        return d.add(d.unit(x.base), x.fiber)


def tangent_to_mod(descriptor):
    """Recover (R, ker a, witness) from an abelian group object with section."""
    if not hasattr(descriptor, "unit") or not hasattr(descriptor, "projection"):
        raise ValueError("descriptor needs a projection and a unit section")
    kernel = KernelModule(descriptor)
    return descriptor.ring, kernel, IsoWitness(descriptor, SquareZeroExtension(descriptor.ring, kernel))


def check_tangent_roundtrip(descriptor, to_module: Callable | None = None, module=None,
                            trials: int = 10, seed: int = 0) -> Report:
    """The recovered witness is a ring isomorphism over R; optionally the
    recovered kernel is R-linearly isomorphic to ``module`` via ``to_module``."""
    R, K, iso = tangent_to_mod(descriptor)
    d = descriptor
    report = Report("tangent roundtrip", {}, seed=seed, trials=trials)
    for t in range(trials):
        rng = trial_rng(seed, t)
        g, h = d.random_element(rng), d.random_element(rng)
        r = R.random_element(rng)
        tag = f"trial={t}"
        report.check(f"iso mult {tag}", iso.forward(d.mul(g, h)), iso.forward(g) * iso.forward(h))
        report.check(f"iso add {tag}", iso.forward(d.add(g, h)), iso.forward(g) + iso.forward(h))
        report.check(f"iso unit {tag}", iso.forward(d.one()), iso.target.one())
        report.check(f"iso over R {tag}", iso.forward(g).base, d.projection(g))
        report.check(f"back.forward {tag}", iso.backward(iso.forward(g)), g)
        x = iso.target.element(r, K.random_element(rng))
        report.check(f"forward.back {tag}", iso.forward(iso.backward(x)), x)
        k1, k2 = K.random_element(rng), K.random_element(rng)
        report.check(f"kernel closed {tag}", K.contains(K.add(k1, K.act(r, k2))), True)
        if to_module is not None:
            M = module
            report.check(f"relabel additive {tag}", to_module(K.add(k1, k2)), M.add(to_module(k1), to_module(k2)))
            report.check(f"relabel linear {tag}", to_module(K.act(r, k1)), M.act(r, to_module(k1)))
    return report


# -- morphisms -------------------------------------------------------------


class RingMap:
    """A map of desk rings given by the images of the generators."""

    def __init__(self, source, target, images: Sequence):
        self.source, self.target = source, target
        self.images = tuple(images)

    def __call__(self, p):
        return self.target.evaluate(p, self.images)

    @classmethod
    def identity(cls, ring: DeskRing) -> "RingMap":
        return cls(ring, ring, ring.gens())


def check_f_linear(f: RingMap, phi: Callable, M, N, trials: int = 10, seed: int = 0) -> Report:
    report = Report("f-linearity", {}, seed=seed, trials=trials)
    for t in range(trials):
        rng = trial_rng(seed, t)
        r = f.source.random_element(rng)
        m1, m2 = M.random_element(rng), M.random_element(rng)
        report.check(f"phi(r m) = f(r) phi(m) trial={t}", phi(M.act(r, m1)), N.act(f(r), phi(m1)))
        report.check(f"phi additive trial={t}", phi(M.add(m1, m2)), N.add(phi(m1), phi(m2)))
    return report


@dataclass
class TangentMorphism:
    """(f, phi'): F(M) -> f^* F(N); phi' lands in pairs (r, s (+) n) with f(r) = s."""

    f: RingMap
    phi_prime: Callable
    source: SquareZeroExtension
    target: SquareZeroExtension


def free_linear_map(f: RingMap, M: DeskModule, N: DeskModule, matrix) -> Callable:
    """The f-linear map R^a -> S^b sending e_i to column i of ``matrix``."""
    def apply(m):
        out = N.zero()
        for i, mi in enumerate(m):
            col = tuple(row[i] for row in matrix)
            out = N.add(out, N.act(f(mi), col))
        return out

    return apply


def mod_morphism_to_tangent(f: RingMap, phi: Callable, M, N, check: bool = True) -> TangentMorphism:
    """F(f, phi) = (f, (r, m) -> (r, f(r) (+) phi(m)))."""
    if check:
        rep = check_f_linear(f, phi, M, N)
        if not rep.passed:
            raise ValueError(f"phi is not f-linear: {rep.failures[0]['case']}")
    FM = SquareZeroExtension(f.source, M)
    FN = SquareZeroExtension(f.target, N)

    def phi_prime(g: SquareZeroElement):
        return (g.base, FN.element(f(g.base), phi(g.fiber)))

    return TangentMorphism(f, phi_prime, FM, FN)


def tangent_morphism_to_mod(tm: TangentMorphism):
    """(f, phi') -> (f, pi . phi'), pi the projection of the pullback onto N."""
    def phi(m):
        return tm.phi_prime(tm.source.element(tm.f.source.zero(), m))[1].fiber

    return tm.f, phi


def morphism_roundtrip(f: RingMap, phi: Callable, M, N, trials: int = 10, seed: int = 0) -> Report:
    """F on morphisms followed by its inverse is the identity, and back."""
    tm = mod_morphism_to_tangent(f, phi, M, N)
    f2, phi2 = tangent_morphism_to_mod(tm)
    tm2 = mod_morphism_to_tangent(f2, phi2, M, N, check=False)
    report = Report("morphism roundtrip", {}, seed=seed, trials=trials)
    FM, FN = tm.source, tm.target
    S = f.target
    for t in range(trials):
        rng = trial_rng(seed, t)
        m = M.random_element(rng)
        g, h = FM.random_element(rng), FM.random_element(rng)
        tag = f"trial={t}"
        report.check(f"inverse.F = id {tag}", phi2(m), phi(m))
        report.check(f"F.inverse = id {tag}", tm2.phi_prime(g), tm.phi_prime(g))
        r, x = tm.phi_prime(g)
        report.check(f"over R {tag}", r, g.base)
        report.check(f"pullback condition {tag}", f(r), x.base)
        # phi' is a ring map into the pullback ring (componentwise structure)
        gh_r, gh_x = tm.phi_prime(g * h)
        (gr, gx), (hr, hx) = tm.phi_prime(g), tm.phi_prime(h)
        report.check(f"phi' mult {tag}", (gh_r, gh_x), (f.source.mul(gr, hr), gx * hx))
        s_r, s_x = tm.phi_prime(g + h)
        report.check(f"phi' add {tag}", (s_r, s_x), (f.source.add(gr, hr), gx + hx))
        report.check(f"phi' unit {tag}", tm.phi_prime(FM.one()), (f.source.one(), FN.element(S.one(), N.zero())))
    return report


# -- derivations ---------------------------------------------------------------


def extend_derivation(ring: DeskRing, module, on_gens: Sequence) -> Callable:
    """d(p) = sum_i (dp/dx_i) d(x_i), on a free desk ring."""
    on_gens = tuple(on_gens)
    if len(on_gens) != ring.ngens:
        raise ValueError("need one image per generator")

    def d(p: Poly):
        out = module.zero()
        for i, di in enumerate(on_gens, start=1):
            dp = poly_partial(p, Var.base(i))
            if dp:
                out = module.add(out, module.act(ring.reduce(dp), di))
        return out

    return d


def derivation_check(ring: DeskRing, module, d, tests: Sequence[Poly], trials: int = 5, seed: int = 0) -> Report:
    """Additivity, Leibniz and the chain-rule law for ``d``.

    ``d`` is either the images of the generators (extended by the chain
    rule) or any callable R -> M.
    """
    if not callable(d):
        d = extend_derivation(ring, module, d)
    report = Report("derivation check", {"tests": len(tests)}, seed=seed, trials=trials)
    for t in range(trials):
        rng = trial_rng(seed, t)
        p, q = ring.random_element(rng), ring.random_element(rng)
        report.check(f"additive trial={t}", d(ring.add(p, q)), module.add(d(p), d(q)))
        report.check(
            f"leibniz trial={t}",
            d(ring.mul(p, q)),
            module.add(module.act(p, d(q)), module.act(q, d(p))),
        )
        for k, f in enumerate(tests):
            arity = max((v.a for v in f.variables()), default=0)
            args = [ring.random_element(rng) for _ in range(max(arity, 1))]
            rhs = module.zero()
            for i in range(1, arity + 1):
                df = poly_partial(f, Var.base(i))
                if df:
                    rhs = module.add(rhs, module.act(ring.evaluate(df, args), d(args[i - 1])))
            report.check(f"chain rule f[{k}]={f} trial={t}", d(ring.evaluate(f, args)), rhs)
    return report


# -- levelwise (co)simplicial modules ------------------------------------------


@dataclass
class LevelwiseModule:
    levels: Sequence[int]
    ring: Callable[[int], Any]
    module: Callable[[int], Any]
    maps: Sequence[DeltaMap]
    ring_map: Callable[[DeltaMap, Any], Any]
    module_map: Callable[[DeltaMap, Any], Any]


def constant_levelwise(levels=range(3), ngens: int = 1) -> LevelwiseModule:
    R = DeskRing(ngens)
    M = DeskModule(R, 1)
    maps = [t for m in levels for t in cofaces(m) + codegeneracies(m) if t.target in levels]
    return LevelwiseModule(list(levels), lambda d: R, lambda d: M, maps, lambda t, r: r, lambda t, m: m)


def inf_levelwise(n: int = 1, levels=range(3)) -> LevelwiseModule:
    """Levels of Inf_n acting on themselves, with inf_map on both layers."""
    rings = {d: InfLevelRing(n, d) for d in levels}
    modules = {d: DeskModule(rings[d], 1) for d in levels}
    maps = [t for m in levels for t in cofaces(m) + codegeneracies(m) if t.target in levels]
    return LevelwiseModule(
        list(levels),
        rings.__getitem__,
        modules.__getitem__,
        maps,
        inf_map,
        lambda t, m: tuple(inf_map(t, x) for x in m),
    )


def levelwise_module_check(L: LevelwiseModule, trials: int = 3, seed: int = 0) -> Report:
    report = Report("levelwise modules", {"levels": list(L.levels)}, seed=seed, trials=trials)
    op = X(1) * X(2) + X(1) ** 2
    for t in range(trials):
        rng = trial_rng(seed, t)
        for theta in L.maps:
            a, b = theta.source, theta.target
            R, S = L.ring(a), L.ring(b)
            M, N = L.module(a), L.module(b)
            r, s = R.random_element(rng), R.random_element(rng)
            m1, m2 = M.random_element(rng), M.random_element(rng)
            tag = f"theta={theta.values} [{a}]->[{b}] trial={t}"
            f = lambda x: L.ring_map(theta, x)
            g = lambda x: L.module_map(theta, x)
            report.check(f"ring mult {tag}", f(R.mul(r, s)), S.mul(f(r), f(s)))
            report.check(f"ring add {tag}", f(R.add(r, s)), S.add(f(r), f(s)))
            report.check(f"ring unit {tag}", f(R.one()), S.one())
            report.check(f"module additive {tag}", g(M.add(m1, m2)), N.add(g(m1), g(m2)))
            report.check(f"f-linearity {tag}", g(M.act(r, m1)), N.act(f(r), g(m1)))
            # the induced map of square-zero extensions respects polynomial operations
            FM, FN = SquareZeroExtension(R, M), SquareZeroExtension(S, N)
            x, y = FM.element(r, m1), FM.element(s, m2)
            lift = lambda z: FN.element(f(z.base), g(z.fiber))
            report.check(f"tangent naturality {tag}", lift(sz_apply(op, [x, y])), sz_apply(op, [lift(x), lift(y)]))
            for theta2 in L.maps:
                if theta2.source != b:
                    continue
                comp = delta_compose(theta, theta2)
                tag2 = f"{tag} then {theta2.values}"
                report.check(f"ring functoriality {tag2}", L.ring_map(comp, r), L.ring_map(theta2, f(r)))
                report.check(f"module functoriality {tag2}", L.module_map(comp, m1), L.module_map(theta2, g(m1)))
        for a in L.levels:
            ident = DeltaMap.identity(a)
            r = L.ring(a).random_element(rng)
            m1 = L.module(a).random_element(rng)
            report.check(f"ring identity level={a} trial={t}", L.ring_map(ident, r), r)
            report.check(f"module identity level={a} trial={t}", L.module_map(ident, m1), m1)
    return report


# -- suite ----------------------------------------------------------------------


def compose(f: Poly, gs: Sequence[Poly]) -> Poly:
    """f(g_1, ..., g_k) as a polynomial."""
    _check_arity(f, len(gs))
    return poly_substitute(f, {Var.base(i + 1): g for i, g in enumerate(gs)}, partial=True)


def check_sz_chain_rule(trials: int, seed: int = 0, ngens: int = 2, rank: int = 2) -> Report:
    """sz_apply(f . g) = sz_apply(f) . (sz_apply(g_1), ..., sz_apply(g_k)),
    and sz_apply on ring-operation polynomials matches sz_add/sz_mul."""
    R = DeskRing(ngens)
    ext = SquareZeroExtension(R, DeskModule(R, rank))
    report = Report("sz chain rule", {"ngens": ngens, "rank": rank}, seed=seed, trials=trials)
    for t in range(trials):
        rng = trial_rng(seed, t)
        k, l = rng.randint(1, 3), rng.randint(1, 3)
        f = sampling.base_poly(rng, k, 3, 4)
        gs = [sampling.base_poly(rng, l, 2, 3) for _ in range(k)]
        args = [ext.random_element(rng, 1) for _ in range(l)]
        inner = [sz_apply(g, args) for g in gs]
        report.check(f"chain trial={t} f={f}", sz_apply(compose(f, gs), args), sz_apply(f, inner))
        a, b = args[0], ext.random_element(rng, 1)
        c = sampling.nonzero_rational(rng)
        report.check(f"sum trial={t}", sz_apply(X(1) + X(2), [a, b]), a + b)
        report.check(f"product trial={t}", sz_apply(X(1) * X(2), [a, b]), a * b)
        report.check(f"square trial={t}", sz_apply(X(1) ** 2, [a]), a * a)
        report.check(f"constant trial={t}", sz_apply(Poly.const(c), [a]), ext.element(R.scalar(c), ext.module.zero()))
    return report


def check_roundtrips(trials: int, seed: int = 0) -> Report:
    """Object and morphism roundtrips on random (R, M, f, phi) instances."""
    report = Report("roundtrips", {}, seed=seed, trials=trials)
    for t in range(trials):
        rng = trial_rng(seed, t)
        R = DeskRing(rng.randint(1, 2))
        S = DeskRing(rng.randint(1, 2))
        M, N = DeskModule(R, rng.randint(1, 2)), DeskModule(S, rng.randint(1, 2))
        ext = mod_to_tangent(R, M)
        report.merge(check_tangent_roundtrip(ext, lambda k: k.fiber, M, trials=1, seed=rng.randrange(10**6)))
        relabeled = random_relabeling(ext, rng)
        report.merge(check_tangent_roundtrip(
            relabeled, lambda k, d=relabeled.decode: d(k).fiber, M, trials=1, seed=rng.randrange(10**6)))
        f = RingMap(R, S, [S.random_element(rng, 2) for _ in range(R.ngens)])
        matrix = [[S.random_element(rng, 1) for _ in range(M.rank)] for _ in range(N.rank)]
        phi = free_linear_map(f, M, N, matrix)
        report.merge(morphism_roundtrip(f, phi, M, N, trials=1, seed=rng.randrange(10**6)))
    return report


def check_formal_differentiation(trials: int, seed: int = 0) -> Report:
    """With d(x) = 1 on Q[x], d is formal differentiation."""
    R = DeskRing(1)
    M = DeskModule(R, 1)
    d = extend_derivation(R, M, [(R.one(),)])
    report = Report("formal differentiation", {}, seed=seed, trials=trials)
    for t in range(trials):
        rng = trial_rng(seed, t)
        f = R.random_element(rng, 5)
        report.check(f"d({f})", d(f), (poly_partial(f, Var.base(1)),))
    report.merge(derivation_check(R, M, [(R.one(),)], [X(1) * X(2), X(1) ** 3, X(1) ** 2 * X(2) - X(2)], trials=5, seed=seed))
    return report


def module_suite(trials: int, seed: int = 0) -> Report:
    report = Report("check modules", {}, seed=seed, trials=trials)
    for part in (
        check_sz_chain_rule(trials, seed),
        check_roundtrips(max(trials // 2, 1), seed),
        check_formal_differentiation(trials, seed),
        check_group_object(mod_to_tangent(DeskRing(1), DeskModule(DeskRing(1), 2)), max(trials // 10, 1), seed),
        levelwise_module_check(constant_levelwise(), 1, seed),
        levelwise_module_check(inf_levelwise(1), 1, seed),
    ):
        report.merge(part)
        report.extra[part.command] = part.cases
    return report

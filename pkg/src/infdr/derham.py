"""Polynomial differential forms on R^n and their comparison with the
normalized cochain complex of Inf_n.

The normalized class of a level-m element keeps only the monomials that use
every row 1..m; the other monomials span exactly the images of the cofaces
d^1..d^m.  phi and psi transcribe coefficients between these full-row
monomials and the ascending wedge basis.  With this pairing,

    dx_{j1} ^ ... ^ dx_{jm}  <->  (1/m!) sum_s sgn(s) prod_i y_{i, j_s(i)},

and the exterior derivative below is computed independently of all of it.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial
from typing import Mapping

from .core import BASE, ContextError, Poly, Var, check_context, monomials_up_to, poly_partial
from .cosimplicial import coface, inf_map
from .infinitesimal import InfElement, InfMonomial, inf_monomials, permutation_sign
from .linalg import EchelonBasis
from .report import Report, trial_rng
from . import sampling


class DForm:
    """An m-form sum_J f_J dx_J on R^n with polynomial coefficients."""

    __slots__ = ("n", "degree", "_coeffs")

    def __init__(self, n: int, degree: int, coeffs: Mapping[tuple, Poly] | None = None):
        if degree < 0:
            raise ValueError("form degree must be non-negative")
        self.n = n
        self.degree = degree
        clean = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            c = Poly.coerce(c)
            if len(idx) != degree:
                raise ValueError(f"index {idx} does not have length {degree}")
            if list(idx) != sorted(set(idx)) or any(not 1 <= j <= n for j in idx):
                raise ValueError(f"index {idx} is not ascending inside 1..{n}")
            check_context(c, n, kinds=(BASE,))
            if c:
                clean[idx] = c
        self._coeffs = clean

    @classmethod
    def _raw(cls, n: int, degree: int, coeffs: dict) -> "DForm":
        f = cls.__new__(cls)
        f.n, f.degree, f._coeffs = n, degree, coeffs
        return f

    @classmethod
    def from_terms(cls, n: int, degree: int, terms) -> "DForm":
        """Sum of (coefficient, index tuple) pairs in any order; repeats vanish."""
        acc: dict = {}
        for c, idx in terms:
            if len(idx) != degree:
                raise ValueError(f"index {tuple(idx)} does not have length {degree}")
            if len(set(idx)) < len(idx):
                continue
            sign = permutation_sign(idx)
            key = tuple(sorted(idx))
            acc[key] = acc.get(key, Poly()) + Poly.coerce(c).scale(sign)
        return cls(n, degree, acc)

    @property
    def coeffs(self) -> Mapping[tuple, Poly]:
        return self._coeffs

    def items(self):
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other: "DForm") -> None:
        if (self.n, self.degree) != (other.n, other.degree):
            raise ContextError("forms of different dimension or degree")

    def __add__(self, other: "DForm") -> "DForm":
        self._check(other)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            s = out[k] + c if k in out else c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return DForm._raw(self.n, self.degree, out)

    def __neg__(self) -> "DForm":
        return DForm._raw(self.n, self.degree, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other: "DForm") -> "DForm":
        return self + (-other)

    def scale(self, c) -> "DForm":
        return DForm(self.n, self.degree, {k: v.scale(c) for k, v in self._coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, DForm):
            return NotImplemented
        return (self.n, self.degree, self._coeffs) == (other.n, other.degree, other._coeffs)

    def __hash__(self) -> int:
        return hash((self.n, self.degree, frozenset(self._coeffs.items())))

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for idx, c in self.items():
            wedge = "^".join(f"dx{j}" for j in idx)
            parts.append(f"({c}) {wedge}" if wedge else f"({c})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DForm(n={self.n}, degree={self.degree}, {str(self)!r})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "terms": [[str(c), list(idx)] for idx, c in self.items()],
        }


def full_row(m: int, cols) -> InfMonomial:
    return InfMonomial(tuple(range(1, m + 1)), tuple(cols))


def phi(e: InfElement) -> DForm:
    """Coefficients of the full-row monomials, read as a degree-m form."""
    coeffs = {}
    rows = tuple(range(1, e.m + 1))
    for mono, c in e.coeffs.items():
        if mono.rows == rows:
            coeffs[mono.cols] = c
    return DForm._raw(e.n, e.m, coeffs)


def psi(omega: DForm, convention: str = "normalized") -> InfElement:
    """Send a form to its full-row representative.

    ``convention="determinant"`` evaluates the form with the unnormalized
    alternation instead; the result is m! times the normalized one.
    """
    coeffs = {full_row(omega.degree, idx): c for idx, c in omega.coeffs.items()}
    out = InfElement._raw(omega.n, omega.degree, coeffs)
    if convention == "normalized":
        return out
    if convention == "determinant":
        return out.scale(factorial(omega.degree))
    raise ValueError(f"unknown convention {convention!r}")


def alternating_evaluation(omega: DForm, normalized: bool = True) -> Poly:
    """omega(x)(y_1, ..., y_m) as a raw polynomial in x and y."""
    m = omega.degree
    weight = Fraction(1, factorial(m)) if normalized else Fraction(1)
    total = Poly()
    for idx, c in omega.coeffs.items():
        for perm in permutations(range(m)):
            mono = Poly.const(permutation_sign(perm) * weight)
            for i in range(m):
                mono = mono * Poly.var(Var.inf(i + 1, idx[perm[i]]))
            total = total + c * mono
    return total


def phi_mixed_partials(f: Poly, n: int, m: int) -> DForm:
    """sum over injections a: {1..m} -> {1..n} of d^a f / dy^a at y = 0, times
    dx_{a(1)} ^ ... ^ dx_{a(m)}, on a raw representative ``f``."""
    check_context(f, n, m)
    terms = []
    for cols in permutations(range(1, n + 1), m):
        d = f
        for i, j in enumerate(cols, start=1):
            d = poly_partial(d, Var.inf(i, j))
            if not d:
                break
        if not d:
            continue
        at_zero = d.subs({v: Poly() for v in d.variables() if v.kind != BASE}, partial=True)
        if at_zero:
            terms.append((at_zero, cols))
    return DForm.from_terms(n, m, terms)


def exterior_derivative(omega: DForm) -> DForm:
    """d(f dx_J) = sum_j (df/dx_j) dx_j ^ dx_J."""
    out: dict = {}
    for idx, c in omega.coeffs.items():
        for j in range(1, omega.n + 1):
            if j in idx:
                continue
            dc = poly_partial(c, Var.base(j))
            if not dc:
                continue
            sign = -1 if sum(1 for k in idx if k < j) % 2 else 1
            key = tuple(sorted(idx + (j,)))
            out[key] = out.get(key, Poly()) + dc.scale(sign)
    return DForm(omega.n, omega.degree + 1, out)


def normalized_class(e: InfElement) -> InfElement:
    """Project onto the full-row monomials, killing the images of d^1..d^m."""
    rows = tuple(range(1, e.m + 1))
    return InfElement._raw(e.n, e.m, {k: c for k, c in e.coeffs.items() if k.rows == rows})


def normalized_differential(e: InfElement) -> InfElement:
    return normalized_class(inf_map(coface(0, e.m), e))


# -- verification -------------------------------------------------------------


def theorem_check(n: int, m_max: int, deg: int, trials: int, seed: int) -> Report:
    """Exact randomized check that phi and psi identify the normalized
    complex of Inf_n with the polynomial de Rham complex."""
    m_max = min(m_max, n)
    report = Report(
        "check derham",
        {"n": n, "m_max": m_max, "deg": deg},
        seed=seed,
        trials=trials,
    )
    for t in range(trials):
        rng = trial_rng(seed, t)
        m = t % (m_max + 1)
        omega = random_form(rng, n, m, deg)
        e = sampling.inf_element(rng, n, m, deg, terms=5)
        tag = f"trial={t} m={m}"
        report.check(f"phi.psi=id {tag}", phi(psi(omega)), omega)
        report.check(f"phi.class=phi {tag}", phi(normalized_class(e)), phi(e))
        report.check(f"class.psi.phi=class {tag}", normalized_class(psi(phi(e))), normalized_class(e))
        d_omega = exterior_derivative(omega)
        report.check(f"phi.d0.psi=d {tag}", phi(normalized_differential(psi(omega))), d_omega)
        report.check(
            f"d0.d0=0 {tag}",
            normalized_differential(normalized_differential(normalized_class(e))),
            InfElement.zero(n, m + 2),
        )
        report.check(f"d.d=0 {tag}", exterior_derivative(d_omega), DForm(n, m + 2))
        # chain maps in both directions
        report.check(
            f"phi chain map {tag}",
            phi(normalized_differential(normalized_class(e))),
            exterior_derivative(phi(e)),
        )
        report.check(f"psi chain map {tag}", normalized_differential(psi(omega)), psi(d_omega))
    return report


def random_form(rng, n: int, m: int, deg: int, terms: int = 3) -> DForm:
    idxs = list(combinations(range(1, n + 1), m))
    picks = rng.sample(idxs, min(terms, len(idxs)))
    return DForm(n, m, {idx: sampling.base_poly(rng, n, deg, 3) for idx in picks})


def _slice_basis(n: int, m: int, deg: int) -> list[InfElement]:
    base = list(monomials_up_to([Var.base(j) for j in range(1, n + 1)], deg))
    return [
        InfElement._raw(n, m, {mono: Poly.monomial(b)}) for mono in inf_monomials(n, m) for b in base
    ]


def _vector(e: InfElement) -> dict:
    return {(mono, b): c for mono, poly in e.coeffs.items() for b, c in poly.terms.items()}


def kernel_dimension_oracle(n: int, m: int, deg: int) -> Report:
    """Exact rank comparison on the slice of level m with x-degree <= deg.

    Checks that the images of d^1..d^m span ker(phi) on the slice and that
    phi has rank C(n, m) * #(base monomials of degree <= deg).
    """
    report = Report("kernel dimension", {"n": n, "m": m, "deg": deg})
    basis = _slice_basis(n, m, deg)
    slice_dim = len(basis)

    phi_rank = EchelonBasis()
    for b in basis:
        phi_rank.add({(idx, mono): c for idx, poly in phi(b).coeffs.items() for mono, c in poly.terms.items()})
    kernel_dim = slice_dim - phi_rank.rank

    images = EchelonBasis()
    if m >= 1:
        for b in _slice_basis(n, m - 1, deg):
            for i in range(1, m + 1):
                img = inf_map(coface(i, m - 1), b)
                report.check(f"phi(d^{i} {b}) = 0", phi(img), DForm(n, m))
                images.add(_vector(img))

    n_base = comb(n + deg, deg)
    expected_rank = comb(n, m) * n_base
    report.check("dim span(coface images) = dim ker(phi)", images.rank, kernel_dim)
    report.check("rank(phi) = C(n,m) * #base monomials", phi_rank.rank, expected_rank)
    report.extra.update(
        {
            "slice_dim": slice_dim,
            "kernel_dim": kernel_dim,
            "coface_image_dim": images.rank,
            "phi_rank": phi_rank.rank,
            "expected_phi_rank": expected_rank,
        }
    )
    return report

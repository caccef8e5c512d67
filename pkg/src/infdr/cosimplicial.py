"""The cosimplicial structure of Inf_n.

A monotone map theta: [m] -> [m'] acts on a level-m element by reindexing
vertices, f(v_0, ..., v_m) -> f(v_theta(0), ..., v_theta(m)).  Vertex slots
are 0-based in DeltaMap values and 1-based in Vertex variables.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import ContextError, Poly, Var, X, Y, V, poly_substitute
from .infinitesimal import InfElement, normal_form
from .loci import RBRACKET, VERTEX_COORDS, from_difference, generators, ideal_member, to_difference
from .report import Report, trial_rng
from . import sampling


@dataclass(frozen=True)
class DeltaMap:
    source: int
    target: int
    values: tuple

    def __post_init__(self):
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.source + 1:
            raise ValueError(f"need {self.source + 1} values for a map out of [{self.source}]")
        if any(not 0 <= t <= self.target for t in values):
            raise ValueError(f"values {values} outside [{self.target}]")
        if any(a > b for a, b in zip(values, values[1:])):
            raise ValueError(f"values {values} are not monotone")

    @classmethod
    def identity(cls, m: int) -> "DeltaMap":
        return cls(m, m, tuple(range(m + 1)))

    @classmethod
    def parse(cls, text: str, target: int | None = None) -> "DeltaMap":
        values = tuple(int(t) for t in text.split(",") if t.strip())
        if not values:
            raise ValueError("empty map")
        return cls(len(values) - 1, max(values) if target is None else target, values)

    def __call__(self, k: int) -> int:
        return self.values[k]

    def __str__(self) -> str:
        return f"[{self.source}]->[{self.target}] {','.join(map(str, self.values))}"


def delta_compose(theta: DeltaMap, theta2: DeltaMap) -> DeltaMap:
    """theta2 after theta."""
    if theta.target != theta2.source:
        raise ValueError(f"cannot compose {theta} then {theta2}")
    return DeltaMap(theta.source, theta2.target, tuple(theta2(t) for t in theta.values))


def coface(i: int, m: int) -> DeltaMap:
    """d^i: [m] -> [m+1], the injection missing i."""
    if not 0 <= i <= m + 1:
        raise ValueError(f"coface index {i} outside 0..{m + 1}")
    return DeltaMap(m, m + 1, tuple(k if k < i else k + 1 for k in range(m + 1)))


def codegeneracy(i: int, m: int) -> DeltaMap:
    """s^i: [m] -> [m-1], the surjection hitting i twice."""
    if not 0 <= i <= m - 1:
        raise ValueError(f"codegeneracy index {i} outside 0..{m - 1}")
    return DeltaMap(m, m - 1, tuple(k if k <= i else k - 1 for k in range(m + 1)))


def reindex_vertices(p: Poly, theta: DeltaMap) -> Poly:
    """v_{k+1,j} -> v_{theta(k)+1,j} on a vertex-coordinate polynomial."""
    sigma = {}
    for v in p.variables():
        if v.kind != 2:
            raise ContextError(f"{v} is not a vertex variable")
        if v.row > theta.source + 1:
            raise ContextError(f"{v} outside level {theta.source}")
        sigma[v] = V(theta(v.row - 1) + 1, v.column)
    return poly_substitute(p, sigma)


def difference_substitution(theta: DeltaMap, n: int) -> dict:
    """The vertex reindexing written directly in difference coordinates.

    x -> x + y_theta(0) and y_i -> y_theta(i) - y_theta(0), with y_0 = 0.
    """
    def row(t: int, j: int) -> Poly:
        return Y(t, j) if t else Poly()

    t0 = theta(0)
    sigma = {}
    for j in range(1, n + 1):
        sigma[Var.base(j)] = X(j) + row(t0, j)
        for i in range(1, theta.source + 1):
            sigma[Var.inf(i, j)] = row(theta(i), j) - row(t0, j)
    return sigma


def inf_map(theta: DeltaMap, e: InfElement) -> InfElement:
    if e.m != theta.source:
        raise ContextError(f"element at level {e.m} but map starts at [{theta.source}]")
    raw = poly_substitute(e.to_poly(), difference_substitution(theta, e.n))
    return normal_form(raw, e.n, theta.target)


def inf_map_via_vertices(theta: DeltaMap, e: InfElement) -> InfElement:
    """Same map, routed through vertex coordinates and back."""
    if e.m != theta.source:
        raise ContextError(f"element at level {e.m} but map starts at [{theta.source}]")
    vert = from_difference(e.to_poly(), e.n, e.m)
    moved = reindex_vertices(vert, theta)
    return normal_form(to_difference(moved, e.n, theta.target), e.n, theta.target)


def literal_coface_zero(e: InfElement) -> InfElement:
    """The generator table x -> x + y_1, y_i -> y_{i+1}, level m to m+1."""
    sigma = {}
    for j in range(1, e.n + 1):
        sigma[Var.base(j)] = X(j) + Y(1, j)
        for i in range(1, e.m + 1):
            sigma[Var.inf(i, j)] = Y(i + 1, j)
    return normal_form(poly_substitute(e.to_poly(), sigma), e.n, e.m + 1)


def cofaces(m: int) -> list[DeltaMap]:
    return [coface(i, m) for i in range(m + 2)]


def codegeneracies(m: int) -> list[DeltaMap]:
    return [codegeneracy(i, m) for i in range(m)]


def check_cosimplicial_identities(n: int, m_max: int, deg: int, trials: int, seed: int) -> Report:
    """Randomized functoriality, identity and homomorphism checks for inf_map."""
    report = Report(
        "check cosimplicial",
        {"n": n, "m_max": m_max, "deg": deg},
        seed=seed,
        trials=trials,
    )
    for t in range(trials):
        rng = trial_rng(seed, t)
        a, b, c = (rng.randint(0, m_max) for _ in range(3))
        theta = DeltaMap(a, b, sampling.monotone_map_values(rng, a, b))
        theta2 = DeltaMap(b, c, sampling.monotone_map_values(rng, b, c))
        e = sampling.inf_element(rng, n, a, deg)
        f = sampling.inf_element(rng, n, a, deg)
        tag = f"trial={t} theta={theta.values} theta2={theta2.values}"
        report.check(
            f"functoriality {tag}",
            inf_map(delta_compose(theta, theta2), e),
            inf_map(theta2, inf_map(theta, e)),
        )
        report.check(f"identity {tag}", inf_map(DeltaMap.identity(a), e), e)
        report.check(f"multiplicative {tag}", inf_map(theta, e * f), inf_map(theta, e) * inf_map(theta, f))
        report.check(f"additive {tag}", inf_map(theta, e + f), inf_map(theta, e) + inf_map(theta, f))
    return report


def check_cosimplicial_relations(m_max: int) -> Report:
    """The standard relations among cofaces and codegeneracies, on DeltaMaps."""
    report = Report("check delta relations", {"m_max": m_max})
    for m in range(m_max + 1):
        for j in range(m + 2):
            for i in range(j):
                # d^j d^i = d^i d^{j-1} for i < j, both [m] -> [m+2]
                report.check(
                    f"dd m={m} i={i} j={j}",
                    delta_compose(coface(i, m), coface(j, m + 1)),
                    delta_compose(coface(j - 1, m), coface(i, m + 1)),
                )
        for j in range(m):
            for i in range(j + 1):
                # s^j s^i = s^i s^{j+1} for i <= j, both [m+1] -> [m-1]
                report.check(
                    f"ss m={m} i={i} j={j}",
                    delta_compose(codegeneracy(i, m + 1), codegeneracy(j, m)),
                    delta_compose(codegeneracy(j + 1, m + 1), codegeneracy(i, m)),
                )
        for j in range(m + 1):
            for i in range(m + 2):
                lhs = delta_compose(coface(i, m), codegeneracy(j, m + 1))
                if i < j:
                    rhs = delta_compose(codegeneracy(j - 1, m), coface(i, m - 1)) if m >= 1 else None
                elif i in (j, j + 1):
                    rhs = DeltaMap.identity(m)
                else:
                    rhs = delta_compose(codegeneracy(j, m), coface(i - 1, m - 1)) if m >= 1 else None
                if rhs is not None:
                    report.check(f"sd m={m} i={i} j={j}", lhs, rhs)
    return report


def check_ideal_preservation(n: int, m_max: int) -> Report:
    """Every generator of level m maps into the ideal of level m' under every
    coface and codegeneracy between levels 0..m_max."""
    report = Report("check ideal preservation", {"n": n, "m_max": m_max})
    for m in range(m_max + 1):
        gens = generators(RBRACKET, VERTEX_COORDS, n, m).generators
        maps = codegeneracies(m) + (cofaces(m) if m + 1 <= m_max else [])
        for theta in maps:
            target = generators(RBRACKET, VERTEX_COORDS, n, theta.target)
            for g in gens:
                image = reindex_vertices(g, theta)
                cert = ideal_member(image, target, max(image.degree(), 0))
                if cert is None:
                    report.fail(f"theta={theta.values} gen={g}", image, "not in ideal")
                else:
                    report.cases += 1
    return report

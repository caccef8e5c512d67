import json
import random

import pytest

from infdr.core import Poly, V, X, Y
from infdr.infinitesimal import normal_form
from infdr.loci import (
    D,
    DIFFERENCE_COORDS,
    DTILDE,
    RBRACKET,
    VERTEX_COORDS,
    from_difference,
    generators,
    ideal_equality_check,
    ideal_member,
    to_difference,
    transported_vertex_generators,
)
from infdr import sampling


def test_generator_counts():
    assert len(generators(D, n=2)) == 3  # x1^2, x1 x2, x2^2
    assert len(generators(RBRACKET, VERTEX_COORDS, 2, 2)) == 3 * 3
    # i <= i', a <= b, minus the ones that coincide
    assert len(generators(RBRACKET, DIFFERENCE_COORDS, 2, 2)) == 9


def test_listed_generator_is_member_with_cofactor_one():
    g = Y(1, 1) * Y(2, 2) + Y(1, 2) * Y(2, 1)
    pres = generators(RBRACKET, DIFFERENCE_COORDS, 2, 2)
    cert = ideal_member(g, pres, 2)
    assert cert is not None and cert.verify()
    (idx, cof), = cert.combination.items()
    assert pres.generators[idx] == g and cof == Poly.const(1)


def test_degree_one_is_not_member():
    pres = generators(RBRACKET, DIFFERENCE_COORDS, 2, 2)
    assert ideal_member(Y(1, 1), pres, 1) is None


def test_ideal_absorbs_multiplication():
    g = Y(1, 1) * Y(2, 2) + Y(1, 2) * Y(2, 1)
    pres = generators(RBRACKET, DIFFERENCE_COORDS, 2, 2)
    cert = ideal_member(X(1) * g, pres, 3)
    assert cert.verify()
    assert list(cert.combination.values()) == [X(1)]


def test_certificate_json():
    pres = generators(D, n=1)
    cert = ideal_member(3 * X(1) ** 2, pres, 2)
    data = json.loads(json.dumps(cert.to_json()))
    assert data["verified"] is True
    assert data["combination"][0]["cofactor"] == "3"


def test_bound_below_degree_rejected():
    with pytest.raises(ValueError):
        ideal_member(X(1) ** 3, generators(D, n=1), 2)


def test_coordinate_change_roundtrip():
    rng = random.Random(1)
    for _ in range(20):
        p = sampling.raw_inf_poly(rng, 2, 2, 3)
        assert to_difference(from_difference(p, 2, 2), 2, 2) == p
    assert to_difference(V(2, 1) - V(1, 1), 1, 1) == Y(1, 1)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_ideal_equality(m, n):
    rep = ideal_equality_check(m, n)
    assert rep.equal, rep.failures
    assert all(c.verify() for certs in rep.certificates.values() for c in certs)


def test_transported_generators_reduce_to_zero():
    for g in transported_vertex_generators(2, 2):
        assert normal_form(g, 2, 2).is_zero()


def test_rewriting_agrees_with_oracle_on_dtilde_side():
    pres = generators(DTILDE, DIFFERENCE_COORDS, 2, 2)
    rng = random.Random(2)
    for _ in range(30):
        p = sampling.raw_inf_poly(rng, 2, 2, 3)
        for g in pres.generators[:3]:
            q = p * g
            assert ideal_member(q, pres, q.degree()) is not None

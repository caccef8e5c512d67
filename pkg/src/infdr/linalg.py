"""Exact sparse Gaussian elimination over Q.

Vectors are dicts mapping hashable coordinates to Fractions.  The basis
keeps, for every reduced row, the combination of input vectors that
produced it, so membership in a span comes with a certificate.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

Vector = dict


def _axpy(y: dict, a: Fraction, x: Mapping) -> None:
    """y += a * x, in place, dropping zeros."""
    for k, c in x.items():
        s = y.get(k, 0) + a * c
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class EchelonBasis:
    def __init__(self) -> None:
        # pivot coordinate -> (row with pivot entry 1, combination of tags)
        self._rows: dict = {}
        self._order: list = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Mapping) -> tuple[dict, dict]:
        """Return (remainder, combination) with vec = remainder + sum comb[t] * input[t]."""
        rem = {k: Fraction(c) for k, c in vec.items() if c}
        comb: dict = {}
        for piv in self._order:
            c = rem.get(piv)
            if c:
                row, rcomb = self._rows[piv]
                _axpy(rem, -c, row)
                _axpy(comb, c, rcomb)
        return rem, comb

    def add(self, vec: Mapping, tag: Hashable | None = None) -> bool:
        """Insert a vector; return True if it increased the rank."""
        rem, comb = self.reduce(vec)
        # rem = vec - sum comb * inputs, so its own combination is tag - comb
        own = {t: -c for t, c in comb.items()}
        if tag is not None:
            own[tag] = own.get(tag, 0) + 1
        if not rem:
            return False
        piv = min(rem, key=_sort_key)
        scale = 1 / rem[piv]
        row = {k: c * scale for k, c in rem.items()}
        own = {t: c * scale for t, c in own.items() if c}
        # keep earlier rows reduced with respect to the new pivot
        for p in self._order:
            r, rc = self._rows[p]
            c = r.get(piv)
            if c:
                _axpy(r, -c, row)
                _axpy(rc, -c, own)
        self._rows[piv] = (row, own)
        self._order.append(piv)
        return True

    def contains(self, vec: Mapping) -> bool:
        rem, _ = self.reduce(vec)
        return not rem


def _sort_key(k):
    return repr(k)


def rank(vectors: Iterable[Mapping]) -> int:
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    return basis.rank

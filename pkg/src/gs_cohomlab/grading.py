"""Universal weight gradings used to split differentials into independent blocks.

Each basis element ("node") of every algebra and module in a computation gets a
weight in a torsion-free group.  The relations are
``w(k) = w(i) + w(j)`` whenever ``e_i e_j`` has a nonzero ``e_k`` component,
and ``w(j) = w(i)`` whenever a linear map sends ``e_i`` to something with a
nonzero ``e_j`` component.  The universal solution is ``Q^nodes / L`` with ``L``
the span of the relations; a node's weight is its unit vector reduced modulo
``L``.  All differentials built from these structure maps preserve weight, so
their matrices are block diagonal.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Hashable


class WeightSolver:
    def __init__(self):
        self._ids: dict = {}
        self._rels: list[dict] = []

    def node(self, key: Hashable) -> int:
        i = self._ids.get(key)
        if i is None:
            i = self._ids[key] = len(self._ids)
        return i

    def _add(self, rel: dict):
        rel = {k: v for k, v in rel.items() if v}
        if rel:
            self._rels.append(rel)

    def product(self, i: Hashable, j: Hashable, k: Hashable):
        """Record ``w(k) = w(i) + w(j)``."""
        rel: dict = {}
        for key, c in ((k, 1), (i, -1), (j, -1)):
            n = self.node(key)
            rel[n] = rel.get(n, 0) + c
        self._add(rel)

    def equal(self, i: Hashable, j: Hashable):
        a, b = self.node(i), self.node(j)
        if a != b:
            self._add({a: 1, b: -1})

    def zero(self, i: Hashable):
        self._add({self.node(i): 1})

    def solve(self) -> dict:
        """Map every node key to an integer weight tuple."""
        n = len(self._ids)
        pivots: dict[int, dict] = {}  # pivot column -> fully reduced row
        for rel in self._rels:
            row = {k: Fraction(v) for k, v in rel.items()}
            for c in [c for c in row if c in pivots]:
                f = row.get(c)
                if f:
                    for k, v in pivots[c].items():
                        nv = row.get(k, 0) - f * v
                        if nv:
                            row[k] = nv
                        else:
                            row.pop(k, None)
            if not row:
                continue
            c = min(row)
            inv = 1 / row[c]
            row = {k: v * inv for k, v in row.items()}
            for pr in pivots.values():
                f = pr.get(c)
                if f:
                    for k, v in row.items():
                        nv = pr.get(k, 0) - f * v
                        if nv:
                            pr[k] = nv
                        else:
                            pr.pop(k, None)
            pivots[c] = row
        free = [c for c in range(n) if c not in pivots]
        pos = {c: t for t, c in enumerate(free)}
        raw = {}
        for key, c in self._ids.items():
            vec = [Fraction(0)] * len(free)
            if c in pivots:
                for k, v in pivots[c].items():
                    if k != c:
                        vec[pos[k]] -= v
            else:
                vec[pos[c]] = Fraction(1)
            raw[key] = vec
        den = 1
        for vec in raw.values():
            for v in vec:
                den = lcm(den, v.denominator)
        return {key: tuple(int(v * den) for v in vec) for key, vec in raw.items()}


def add_weights(*ws):
    if not ws:
        return ()
    return tuple(map(sum, zip(*ws)))


def sub_weights(a, b):
    return tuple(x - y for x, y in zip(a, b))

"""Enumeration of small Leibniz algebras over prime fields.

Structure tensors are assigned one product at a time; any identity instance
whose products are all known is checked immediately, which prunes most of
the ``p ** (n ** 3)`` tensors.  Every emitted table is re-checked with
:func:`check_leibniz` before it is returned.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .algebra import LeibnizAlgebra, check_leibniz, is_ideal
from .exactla import Field, Subspace
from .pairs import Pair, subspaces_of_dim


class _Tables:
    """Vectors of ``GF(p)^n`` coded as integers, with addition and scaling tables."""

    def __init__(self, p: int, n: int):
        self.p, self.n = p, n
        self.vectors = list(itertools.product(range(p), repeat=n))
        code = {v: c for c, v in enumerate(self.vectors)}
        self.add = [[code[tuple((a + b) % p for a, b in zip(u, v))] for v in self.vectors] for u in self.vectors]
        self.scale = [[code[tuple(c * a % p for a in u)] for u in self.vectors] for c in range(p)]
        self.neg = self.scale[p - 1]
        self.support = [[(l, a) for l, a in enumerate(u) if a] for u in self.vectors]


def _defect(tab: _Tables, table: list, right: bool, i: int, j: int, k: int):
    """None while undetermined, else whether the identity fails at ``(e_i, e_j, e_k)``."""
    n = tab.n
    yz, xy, xz = table[j * n + k], table[i * n + j], table[i * n + k]
    if yz < 0 or xy < 0 or xz < 0:
        return None
    add, scale, support = tab.add, tab.scale, tab.support
    lhs = 0  # [e_i, [e_j, e_k]]
    for l, c in support[yz]:
        w = table[i * n + l]
        if w < 0:
            return None
        lhs = add[lhs][scale[c][w]]
    a = 0  # [[e_i, e_j], e_k]
    for l, c in support[xy]:
        w = table[l * n + k]
        if w < 0:
            return None
        a = add[a][scale[c][w]]
    b = 0  # right: [[e_i, e_k], e_j]   left: [e_j, [e_i, e_k]]
    for l, c in support[xz]:
        w = table[l * n + j] if right else table[j * n + l]
        if w < 0:
            return None
        b = add[b][scale[c][w]]
    return lhs != (add[a][tab.neg[b]] if right else add[a][b])


class _Restart(Exception):
    pass


def _search(field: Field, n: int, convention: str, order_values, node_budget: int | None = None) -> Iterator[LeibnizAlgebra]:
    tab = _Tables(field.p, n)
    right = convention == "right"
    # column by column settles identity instances early
    slots = [i * n + j for j in range(n) for i in range(n)]
    affected = {}
    for s in slots:
        a, b = divmod(s, n)
        affected[s] = [
            (i, j, k) for i, j, k in itertools.product(range(n), repeat=3) if i == a or j == a or j == b or k == b
        ]
    table = [-1] * (n * n)
    nodes = 0

    def rec(t):
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise _Restart
        if t == len(slots):
            yield table[:]
            return
        s = slots[t]
        for v in order_values(len(tab.vectors)):
            table[s] = v
            if not any(_defect(tab, table, right, *tr) for tr in affected[s]):
                yield from rec(t + 1)
        table[s] = -1

    for found in rec(0):
        rows = tuple(tuple(tab.vectors[found[i * n + j]] for j in range(n)) for i in range(n))
        yield LeibnizAlgebra(field, n, rows, convention=convention)


def enumerate_leibniz(field: Field, n: int, convention: str = "right") -> Iterator[LeibnizAlgebra]:
    """Every Leibniz structure tensor of dimension ``n`` over a prime field."""
    if not field.is_finite:
        raise ValueError("enumeration needs a finite field")
    for alg in _search(field, n, convention, range):
        if check_leibniz(alg) is None:
            yield alg.validated()


def random_leibniz(field: Field, n: int, rng: random.Random, convention: str = "right") -> LeibnizAlgebra:
    """A Leibniz algebra found by depth-first search with shuffled value order.

    A search that wanders into a large dead subtree is restarted with fresh
    shuffles.  The distribution is not uniform; it is a reproducible way to
    sample tensors when full enumeration is too slow.
    """
    if not field.is_finite:
        raise ValueError("sampling needs a finite field")

    def order(count):
        vs = list(range(count))
        rng.shuffle(vs)
        return vs

    while True:
        try:
            alg = next(_search(field, n, convention, order, node_budget=500))
        except _Restart:
            continue
        return alg.validated()


def ideals(alg: LeibnizAlgebra) -> list[Subspace]:
    """All two-sided ideals of an algebra over a finite field, by dimension."""
    full = Subspace.full(alg.field, alg.dim)
    out = []
    for d in range(alg.dim + 1):
        out.extend(s for s in subspaces_of_dim(full, d) if is_ideal(alg, s))
    return out


def all_pairs(alg: LeibnizAlgebra) -> list[Pair]:
    return [Pair.of(alg, s.basis) for s in ideals(alg)]

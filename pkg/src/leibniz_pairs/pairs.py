"""Pairs ``(m, q)``: Lie-center, Lie-commutator, stem pairs, stem reduction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

from .algebra import (
    IdealHandle,
    LeibnizAlgebra,
    Quotient,
    bracket,
    ideal_closure,
    is_ideal,
    left_mult,
    quotient,
    require_validated,
    right_mult,
    two_sided_center,
    whole,
)
from .errors import DimensionMismatch, StemReductionIncomplete
from .exactla import Field, Matrix, Subspace, complement, image, kernel, subspace_intersect, vec_add

# exhaustive stem reduction is used when the number of candidate subspaces stays below this
EXHAUSTIVE_SUBSPACE_LIMIT = 100_000


@dataclass(frozen=True)
class Pair:
    q: LeibnizAlgebra
    m: IdealHandle

    def __post_init__(self):
        require_validated(self.q)
        if self.m.parent != self.q:
            raise DimensionMismatch("ideal belongs to a different algebra")

    @classmethod
    def full(cls, q: LeibnizAlgebra) -> Pair:
        return cls(q, whole(q))

    @classmethod
    def of(cls, q: LeibnizAlgebra, vectors: Sequence[Sequence]) -> Pair:
        return cls(q, IdealHandle(q, Subspace.span(q.field, q.dim, vectors)))

    @property
    def field(self) -> Field:
        return self.q.field

    @property
    def is_full(self) -> bool:
        return self.m.space.dim == self.q.dim

    @cached_property
    def z_lie(self) -> Subspace:
        return lie_center(self)

    @cached_property
    def k_lie(self) -> IdealHandle:
        return lie_commutator(self)

    @cached_property
    def central_quotient(self) -> Quotient:
        """``q / Z_Lie(m, q)``."""
        return quotient(self.q, self.z_lie)

    @cached_property
    def m_bar(self) -> Subspace:
        """``m / Z_Lie`` inside ``q / Z_Lie``."""
        return image(self.central_quotient.projection.matrix, self.m.space)

    def __str__(self):
        return f"pair (m = {self.m.space}, q = {self.q})"


def _symmetrized_rows(q: LeibnizAlgebra) -> Matrix:
    rows = []
    for j in range(q.dim):
        e = q.basis(j)
        s = right_mult(q, e) + left_mult(q, e)
        rows.extend(s.rows)
    return Matrix(q.field, tuple(rows), q.dim)


def lie_center(p: Pair) -> Subspace:
    """``{z in m : [z, x] + [x, z] = 0 for all x in q}``."""
    q = p.q
    if q.dim == 0:
        return Subspace.zero(q.field, 0)
    return subspace_intersect(kernel(_symmetrized_rows(q)), p.m.space)


def lie_commutator(p: Pair) -> IdealHandle:
    """Ideal generated by ``[x, e] + [e, x]`` for ``x`` in ``m`` and ``e`` in ``q``."""
    q = p.q
    gens = []
    for x in p.m.space.basis:
        for j in range(q.dim):
            e = q.basis(j)
            gens.append(vec_add(q.field, bracket(q, x, e), bracket(q, e, x)))
    return ideal_closure(q, Subspace.span(q.field, q.dim, gens))


def is_stem(p: Pair) -> bool:
    return p.k_lie.space.contains_subspace(p.z_lie)


# ---------------------------------------------------------------- stem reduction


class StemReduction(NamedTuple):
    pair: Pair
    s: IdealHandle
    cert: object  # IsoclinismCertificate from the input pair to the reduced pair


def _gaussian_binomial(n: int, k: int, p: int) -> int:
    num, den = 1, 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def subspaces_of_dim(space: Subspace, d: int):
    """Every ``d``-dimensional subspace of ``space`` over a finite field."""
    f = space.field
    n = space.dim
    elems = list(f.elements())
    for pivots in itertools.combinations(range(n), d):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
        for values in itertools.product(elems, repeat=len(free)):
            coords = [[0] * n for _ in range(d)]
            for r, pc in enumerate(pivots):
                coords[r][pc] = 1
            for (r, c), v in zip(free, values):
                coords[r][c] = v
            yield Subspace.span(f, space.ambient, [space.vector(c) for c in coords])


def _admissible(q: LeibnizAlgebra, s: Subspace, k: Subspace) -> bool:
    return subspace_intersect(s, k).is_zero() and is_ideal(q, s)


def _maximal_exhaustive(p: Pair, z: Subspace, k: Subspace) -> Subspace:
    q = p.q
    top = z.dim - subspace_intersect(z, k).dim
    for d in range(top, 0, -1):
        found = [s for s in subspaces_of_dim(z, d) if _admissible(q, s, k)]
        if found:
            return min(found, key=lambda s: s.basis)
    return Subspace.zero(q.field, q.dim)


def _maximal_greedy(p: Pair, z: Subspace, k: Subspace) -> Subspace:
    q = p.q
    f = q.field
    z0 = subspace_intersect(z, two_sided_center(q))
    s = complement(subspace_intersect(k, z0), z0)
    candidates = list(z.basis)
    candidates += [vec_add(f, u, v) for u, v in itertools.combinations(z.basis, 2)]
    candidates += [vec_add(f, u, tuple(f.neg(x) for x in v)) for u, v in itertools.combinations(z.basis, 2)]
    for c in candidates:
        if c in s:
            continue
        t = ideal_closure(q, Subspace.span(f, q.dim, s.basis + (c,))).space
        if subspace_intersect(t, k).is_zero():
            s = t
    return s


def maximal_admissible_ideal(p: Pair) -> Subspace:
    """A largest ideal ``s`` of ``q`` inside ``Z_Lie(m, q)`` meeting ``[m, q]_Lie`` trivially.

    Every admissible ideal lies in the Lie-center: for ``z`` in ``s`` the
    element ``[z, x] + [x, z]`` lies in both ``s`` and the commutator.
    Over a finite field the search is exhaustive (ties broken by the
    lexicographically least RREF basis); otherwise a greedy extension is
    used and may stop short.
    """
    z, k = p.z_lie, p.k_lie.space
    f = p.field
    if f.is_finite and z.dim <= 6:
        top = z.dim - subspace_intersect(z, k).dim
        count = sum(_gaussian_binomial(z.dim, d, f.p) for d in range(1, top + 1))
        if count <= EXHAUSTIVE_SUBSPACE_LIMIT:
            return _maximal_exhaustive(p, z, k)
    return _maximal_greedy(p, z, k)


def reduce_by(p: Pair, s: Subspace) -> tuple[Pair, Quotient]:
    """The pair ``(m/s, q/s)`` and the quotient data."""
    quo = quotient(p.q, s)
    m_img = image(quo.projection.matrix, p.m.space)
    return Pair(quo.algebra, IdealHandle(quo.algebra, m_img)), quo


def stem_reduce(p: Pair) -> StemReduction:
    from .isoclinism import quotient_isoclinism

    s = maximal_admissible_ideal(p)
    ideal = IdealHandle(p.q, s)
    p_bar, _, cert = quotient_isoclinism(p, ideal)
    if not is_stem(p_bar):
        raise StemReductionIncomplete(
            f"greedy reduction over {p.field} stopped at a non-stem pair (removed dimension {s.dim})"
        )
    return StemReduction(p_bar, ideal, cert)


# ---------------------------------------------------------------- epsilon condition

BASIS_PAIRS = "basis"
ALL_ELEMENTS = "all"


@dataclass(frozen=True)
class EpsilonReport:
    mode: str
    passed: bool
    epsilons: dict = field(default_factory=dict)
    witness: tuple | None = None
    values: tuple | None = None
    monomial: tuple | None = None

    def __bool__(self):
        return self.passed


def _parallel_factor(f: Field, a: Sequence, b: Sequence):
    """``eps`` with ``a = eps * b`` (``b`` nonzero), or None."""
    k = next(i for i, x in enumerate(b) if x)
    eps = f.mul(a[k], f.inv(b[k]))
    if all(x == f.mul(eps, y) for x, y in zip(a, b)):
        return eps
    return None


def _parallel(f: Field, a: Sequence, b: Sequence) -> bool:
    """Whether ``a`` and ``b`` span at most a line."""
    if not any(a) or not any(b):
        return True
    return _parallel_factor(f, a, b) is not None


def _candidates(f: Field, space: Subspace, limit: int = 400):
    values = [f(1), f(-1), f(2)] if not f.is_finite else list(range(1, f.p))
    values = list(dict.fromkeys(values))
    n = space.dim
    out = []
    for size in range(1, n + 1):
        for support in itertools.combinations(range(n), size):
            for vals in itertools.product(values, repeat=size):
                c = [f.zero] * n
                for i, v in zip(support, vals):
                    c[i] = v
                out.append(space.vector(c))
                if len(out) >= limit:
                    return out
    return out


def epsilon_condition(alg: LeibnizAlgebra, restrict_to: Subspace | None = None, mode: str = ALL_ELEMENTS) -> EpsilonReport:
    """Whether ``[x, y]`` and ``[y, x]`` are parallel for ``x, y`` in ``restrict_to``.

    ``mode="basis"`` tests the basis pairs of ``restrict_to`` and records
    ``eps_ij`` with ``[u_i, u_j] = eps_ij [u_j, u_i]`` whenever both sides are
    nonzero.  ``mode="all"`` checks that every 2x2 minor of
    ``(B(x, y) | B(y, x))`` vanishes as a polynomial in the coordinates of
    ``x`` and ``y``.  The algebra need not be validated.
    """
    f = alg.field
    space = restrict_to if restrict_to is not None else Subspace.full(f, alg.dim)
    if space.ambient != alg.dim:
        raise DimensionMismatch("subspace lives in the wrong ambient space")
    u = space.basis
    r = len(u)
    prods = [[bracket(alg, u[a], u[b]) for b in range(r)] for a in range(r)]

    if mode == BASIS_PAIRS:
        eps = {}
        for i in range(r):
            for j in range(i, r):
                a, b = prods[i][j], prods[j][i]
                if not any(a) and not any(b):
                    continue
                if not any(a) or not any(b):
                    return EpsilonReport(mode, False, eps, (u[i], u[j]), (a, b))
                e = _parallel_factor(f, a, b)
                if e is None:
                    return EpsilonReport(mode, False, eps, (u[i], u[j]), (a, b))
                eps[(i, j)] = e
        return EpsilonReport(mode, True, eps)

    if mode != ALL_ELEMENTS:
        raise ValueError(f"unknown epsilon mode {mode!r}")

    # coefficient of x_a x_a' y_b y_b' in B_k(x,y) B_l(y,x) - B_l(x,y) B_k(y,x)
    n = alg.dim
    bad = None
    for k in range(n):
        for l in range(k + 1, n):
            coeff = {}
            for a, a2, b, b2 in itertools.product(range(r), repeat=4):
                # B(x,y) uses x_a y_b, B(y,x) uses y_b2 x_a2
                t = prods[a][b][k] * prods[b2][a2][l] - prods[a][b][l] * prods[b2][a2][k]
                if t:
                    key = (tuple(sorted((a, a2))), tuple(sorted((b, b2))))
                    coeff[key] = coeff.get(key, 0) + t
            for key in sorted(coeff):
                c = coeff[key] % f.p if f.p else coeff[key]
                if c:
                    bad = (k, l, key, c)
                    break
            if bad:
                break
        if bad:
            break
    if bad is None:
        return EpsilonReport(mode, True)
    cands = _candidates(f, space)
    for y in cands:
        for x in cands:
            bxy, byx = bracket(alg, x, y), bracket(alg, y, x)
            if not _parallel(f, bxy, byx):
                return EpsilonReport(mode, False, witness=(x, y), values=(bxy, byx), monomial=bad)
    return EpsilonReport(mode, False, monomial=bad)

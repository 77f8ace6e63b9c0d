"""Finite-dimensional Leibniz algebras given by structure constants.

``table[i][j]`` is the coordinate vector of ``[e_i, e_j]``.  The default
identity is the right one,

    [x, [y, z]] = [[x, y], z] - [[x, z], y],

i.e. right multiplications are derivations.  Algebras written in the mirror
convention (left multiplications are derivations) are supported with
``convention="left"``; every construction in this package is
convention-aware.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DimensionMismatch, NotAnIdeal, NotContained, NotLeibniz, UnvalidatedAlgebra
from .exactla import (
    Field,
    Matrix,
    Subspace,
    Vector,
    complement,
    is_zero,
    kernel,
    same_field,
    unit_vector,
    vec_add,
    vec_sub,
    zero_vector,
)

CONVENTIONS = ("right", "left")


def default_names(n: int, stem: str = "e") -> tuple[str, ...]:
    return tuple(f"{stem}{i + 1}" for i in range(n))


@dataclass(frozen=True)
class LeibnizAlgebra:
    field: Field
    dim: int
    table: tuple
    names: tuple = ()
    convention: str = "right"
    is_validated: bool = dataclasses.field(default=False, compare=False)

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")
        if len(self.table) != self.dim or any(len(row) != self.dim for row in self.table):
            raise DimensionMismatch("structure tensor shape does not match dim")
        for row in self.table:
            for v in row:
                if len(v) != self.dim:
                    raise DimensionMismatch("structure vector of wrong length")
        if not self.names:
            object.__setattr__(self, "names", default_names(self.dim))
        if len(self.names) != self.dim:
            raise DimensionMismatch("wrong number of basis names")

    @classmethod
    def from_brackets(
        cls,
        field: Field,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, object] | Sequence],
        names: Sequence[str] = (),
        convention: str = "right",
    ) -> LeibnizAlgebra:
        """Build from nonzero products with 0-based indices.

        ``brackets[(i, j)]`` is either a full coordinate vector or a sparse
        ``{k: coefficient}`` mapping.
        """
        table = [[list(zero_vector(field, dim)) for _ in range(dim)] for _ in range(dim)]
        for (i, j), val in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch(f"bracket index ({i},{j}) out of range")
            if isinstance(val, Mapping):
                for k, c in val.items():
                    if not 0 <= k < dim:
                        raise DimensionMismatch(f"basis index {k} out of range")
                    table[i][j][k] = field.add(table[i][j][k], field(c))
            else:
                if len(val) != dim:
                    raise DimensionMismatch("structure vector of wrong length")
                table[i][j] = [field(c) for c in val]
        frozen = tuple(tuple(tuple(v) for v in row) for row in table)
        return cls(field, dim, frozen, tuple(names), convention)

    @classmethod
    def abelian(cls, field: Field, dim: int, names: Sequence[str] = ()) -> LeibnizAlgebra:
        return cls.from_brackets(field, dim, {}, names).validated()

    def validated(self) -> LeibnizAlgebra:
        """Copy marked as validated, or NotLeibniz with the first failing triple."""
        if self.is_validated:
            return self
        bad = check_leibniz(self)
        if bad is not None:
            raise NotLeibniz(bad)
        return dataclasses.replace(self, is_validated=True)

    def basis(self, i: int) -> Vector:
        return unit_vector(self.field, self.dim, i)

    def zero(self) -> Vector:
        return zero_vector(self.field, self.dim)

    def br(self, x: Sequence, y: Sequence) -> Vector:
        return bracket(self, x, y)

    def nonzero_products(self):
        for i in range(self.dim):
            for j in range(self.dim):
                if not is_zero(self.table[i][j]):
                    yield i, j, self.table[i][j]

    def fmt(self, v: Sequence) -> str:
        return format_vector(self.field, v, self.names)

    def relabel(self, names: Sequence[str]) -> LeibnizAlgebra:
        return dataclasses.replace(self, names=tuple(names))

    def __str__(self):
        rels = [f"[{self.names[i]},{self.names[j]}] = {self.fmt(v)}" for i, j, v in self.nonzero_products()]
        return f"LeibnizAlgebra over {self.field}, dim {self.dim}: " + (", ".join(rels) or "abelian")


def require_validated(*algs: LeibnizAlgebra) -> None:
    for a in algs:
        if not a.is_validated:
            raise UnvalidatedAlgebra("algebra has not passed check_leibniz; call .validated() first")


def format_vector(field: Field, v: Sequence, names: Sequence[str]) -> str:
    terms = []
    for c, name in zip(v, names):
        if not c:
            continue
        c = field.signed(c)
        if c == 1:
            t = name
        elif c == -1:
            t = "-" + name
        else:
            t = f"{c}*{name}"
        if terms and not t.startswith("-"):
            t = "+" + t
        terms.append(t)
    return "".join(terms) if terms else "0"


def bracket(alg: LeibnizAlgebra, x: Sequence, y: Sequence) -> Vector:
    n = alg.dim
    if len(x) != n or len(y) != n:
        raise DimensionMismatch(f"bracket of vectors of length {len(x)}, {len(y)} in dimension {n}")
    p = alg.field.p
    out = [0] * n
    table = alg.table
    for i, a in enumerate(x):
        if not a:
            continue
        row = table[i]
        for j, b in enumerate(y):
            if not b:
                continue
            c = a * b
            for k, v in enumerate(row[j]):
                if v:
                    out[k] += c * v
    if p:
        return tuple(t % p for t in out)
    return tuple(t if type(t) is Fraction else Fraction(t) for t in out)


class LeibnizCounterexample(NamedTuple):
    i: int
    j: int
    k: int
    lhs: Vector
    rhs: Vector

    def describe(self, names: Sequence[str], field: Field) -> str:
        return (
            f"identity fails at ({names[self.i]},{names[self.j]},{names[self.k]}): "
            f"lhs {format_vector(field, self.lhs, names)} != rhs {format_vector(field, self.rhs, names)}"
        )


def _identity_sides(alg: LeibnizAlgebra, i: int, j: int, k: int):
    f = alg.field
    t = alg.table
    lhs = bracket(alg, alg.basis(i), t[j][k])
    if alg.convention == "right":
        rhs = vec_sub(f, bracket(alg, t[i][j], alg.basis(k)), bracket(alg, t[i][k], alg.basis(j)))
    else:
        rhs = vec_add(f, bracket(alg, t[i][j], alg.basis(k)), bracket(alg, alg.basis(j), t[i][k]))
    return lhs, rhs


def leibniz_defects(alg: LeibnizAlgebra) -> list[LeibnizCounterexample]:
    """Every basis triple where the identity fails, in lexicographic order."""
    out = []
    n = alg.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs, rhs = _identity_sides(alg, i, j, k)
                if lhs != rhs:
                    out.append(LeibnizCounterexample(i, j, k, lhs, rhs))
    return out


def check_leibniz(alg: LeibnizAlgebra) -> LeibnizCounterexample | None:
    """First failing basis triple in lexicographic order, or None.

    Basis triples suffice because both sides are trilinear.
    """
    n = alg.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs, rhs = _identity_sides(alg, i, j, k)
                if lhs != rhs:
                    return LeibnizCounterexample(i, j, k, lhs, rhs)
    return None


# ---------------------------------------------------------------- maps


@dataclass(frozen=True)
class LinearMap:
    """A matrix (column convention) tagged with the role it plays."""

    matrix: Matrix
    role: str = ""
    domain: LeibnizAlgebra | None = dataclasses.field(default=None, compare=False, repr=False)
    codomain: LeibnizAlgebra | None = dataclasses.field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.domain is not None and self.domain.dim != self.matrix.ncols:
            raise DimensionMismatch("domain dimension does not match matrix")
        if self.codomain is not None and self.codomain.dim != self.matrix.nrows:
            raise DimensionMismatch("codomain dimension does not match matrix")

    @property
    def domain_dim(self) -> int:
        return self.matrix.ncols

    @property
    def codomain_dim(self) -> int:
        return self.matrix.nrows

    @property
    def field(self) -> Field:
        return self.matrix.field

    def __call__(self, v: Sequence) -> Vector:
        return self.matrix.apply(v)

    def then(self, other: LinearMap, role: str = "") -> LinearMap:
        """``other ∘ self``."""
        return LinearMap(other.matrix @ self.matrix, role, self.domain, other.codomain)

    def inverse(self, role: str = "") -> LinearMap:
        return LinearMap(self.matrix.inverse(), role or f"{self.role}^-1", self.codomain, self.domain)

    def is_bijective(self) -> bool:
        return self.matrix.is_invertible()


def as_matrix(phi) -> Matrix:
    return phi.matrix if isinstance(phi, LinearMap) else phi


class HomViolation(NamedTuple):
    i: int
    j: int
    lhs: Vector
    rhs: Vector


def hom_violations(phi, a: LeibnizAlgebra, b: LeibnizAlgebra):
    """Every basis pair ``(i, j)`` with ``phi[e_i,e_j] != [phi e_i, phi e_j]``, row-major."""
    m = as_matrix(phi)
    same_field(m.field, a.field, b.field)
    if m.shape != (b.dim, a.dim):
        raise DimensionMismatch(f"map of shape {m.shape} between algebras of dims {a.dim} -> {b.dim}")
    images = m.columns()
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = m.apply(a.table[i][j])
            rhs = bracket(b, images[i], images[j])
            if lhs != rhs:
                yield HomViolation(i, j, lhs, rhs)


def hom_check(phi, a: LeibnizAlgebra, b: LeibnizAlgebra) -> HomViolation | None:
    """First basis pair where ``phi`` fails to preserve the bracket, or None."""
    return next(hom_violations(phi, a, b), None)


def left_mult(alg: LeibnizAlgebra, x: Sequence) -> Matrix:
    """Matrix of ``y -> [x, y]``."""
    return Matrix.from_columns(alg.field, [bracket(alg, x, alg.basis(j)) for j in range(alg.dim)], alg.dim)


def right_mult(alg: LeibnizAlgebra, y: Sequence) -> Matrix:
    """Matrix of ``x -> [x, y]``."""
    return Matrix.from_columns(alg.field, [bracket(alg, alg.basis(i), y) for i in range(alg.dim)], alg.dim)


# ---------------------------------------------------------------- ideals


def is_ideal(alg: LeibnizAlgebra, space: Subspace) -> bool:
    for v in space.basis:
        for j in range(alg.dim):
            e = alg.basis(j)
            if bracket(alg, v, e) not in space or bracket(alg, e, v) not in space:
                return False
    return True


def is_subalgebra(alg: LeibnizAlgebra, space: Subspace) -> bool:
    return all(bracket(alg, u, v) in space for u in space.basis for v in space.basis)


@dataclass(frozen=True)
class IdealHandle:
    """A two-sided ideal, checked on construction."""

    parent: LeibnizAlgebra
    space: Subspace

    def __post_init__(self):
        same_field(self.parent.field, self.space.field)
        if self.space.ambient != self.parent.dim:
            raise DimensionMismatch("ideal lives in the wrong ambient space")
        if not is_ideal(self.parent, self.space):
            raise NotAnIdeal("subspace is not a two-sided ideal")

    @property
    def dim(self) -> int:
        return self.space.dim


def ideal_from_vectors(alg: LeibnizAlgebra, vectors: Iterable[Sequence]) -> IdealHandle:
    return IdealHandle(alg, Subspace.span(alg.field, alg.dim, vectors))


def whole(alg: LeibnizAlgebra) -> IdealHandle:
    return IdealHandle(alg, Subspace.full(alg.field, alg.dim))


def ideal_closure(alg: LeibnizAlgebra, s: Subspace) -> IdealHandle:
    """Smallest two-sided ideal containing ``s``."""
    if s.ambient != alg.dim:
        raise DimensionMismatch("subspace lives in the wrong ambient space")
    current = s
    frontier = list(s.basis)
    while frontier:
        new = []
        for v in frontier:
            for j in range(alg.dim):
                e = alg.basis(j)
                for w in (bracket(alg, v, e), bracket(alg, e, v)):
                    if w not in current:
                        current = Subspace.span(alg.field, alg.dim, current.basis + (w,))
                        new.append(w)
        frontier = new
    return IdealHandle(alg, current)


def product_space(alg: LeibnizAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """span{[x, y] : x in a, y in b}."""
    return Subspace.span(alg.field, alg.dim, [bracket(alg, x, y) for x in a.basis for y in b.basis])


# ---------------------------------------------------------------- constructions


class Quotient(NamedTuple):
    algebra: LeibnizAlgebra
    projection: LinearMap
    section: LinearMap


def quotient(alg: LeibnizAlgebra, ideal: IdealHandle | Subspace) -> Quotient:
    """``alg / ideal`` on the basis of the deterministic complement.

    The complement of an ideal in the full space consists of standard basis
    vectors, so the quotient basis inherits their names.
    """
    require_validated(alg)
    space = ideal.space if isinstance(ideal, IdealHandle) else ideal
    if not isinstance(ideal, IdealHandle):
        IdealHandle(alg, space)
    f, n = alg.field, alg.dim
    comp = complement(space, Subspace.full(f, n))
    r = comp.dim
    cols = list(space.basis) + list(comp.basis)
    change = Matrix.from_columns(f, cols, n) if cols else Matrix.zeros(f, 0, 0)
    inv = change.inverse()
    proj = Matrix(f, inv.rows[space.dim :], n) if r else Matrix.zeros(f, 0, n)
    sec = Matrix.from_columns(f, comp.basis, n) if r else Matrix.zeros(f, n, 0)
    names = tuple(alg.names[v.index(f.one)] for v in comp.basis)
    table = tuple(
        tuple(proj.apply(bracket(alg, comp.basis[a], comp.basis[b])) for b in range(r)) for a in range(r)
    )
    # a quotient by an ideal inherits the identity, no re-check needed
    qa = LeibnizAlgebra(f, r, table, names, alg.convention, is_validated=True)
    return Quotient(qa, LinearMap(proj, "projection", alg, qa), LinearMap(sec, "section", qa, alg))


def subalgebra(alg: LeibnizAlgebra, space: Subspace, names: Sequence[str] | None = None) -> tuple[LeibnizAlgebra, LinearMap]:
    """The subalgebra on the RREF basis of ``space`` and its inclusion map."""
    require_validated(alg)
    if not is_subalgebra(alg, space):
        raise NotContained("subspace is not closed under the bracket")
    f = alg.field
    b = space.basis
    if names is None:
        names = tuple(alg.names[pc] if v.count(f.zero) == len(v) - 1 else f"b{t + 1}" for t, (v, pc) in enumerate(zip(b, space.pivots)))
    table = tuple(tuple(space.coords(bracket(alg, u, v)) for v in b) for u in b)
    sub = LeibnizAlgebra(f, space.dim, table, tuple(names), alg.convention, is_validated=True)
    incl = Matrix.from_columns(f, b, alg.dim) if b else Matrix.zeros(f, alg.dim, 0)
    return sub, LinearMap(incl, "inclusion", sub, alg)


def transport(alg: LeibnizAlgebra, g: Matrix, names: Sequence[str] | None = None) -> LeibnizAlgebra:
    """The algebra ``[x, y]' = g[g^-1 x, g^-1 y]``, so that ``g`` is an isomorphism onto it."""
    ginv = g.inverse()
    f, n = alg.field, alg.dim
    cols = ginv.columns()
    table = tuple(tuple(g.apply(bracket(alg, cols[i], cols[j])) for j in range(n)) for i in range(n))
    out = LeibnizAlgebra(f, n, table, tuple(names) if names else alg.names, alg.convention)
    return dataclasses.replace(out, is_validated=alg.is_validated)


def opposite(alg: LeibnizAlgebra) -> LeibnizAlgebra:
    """``[x, y]_op = [y, x]``; swaps the right and left identities."""
    n = alg.dim
    table = tuple(tuple(alg.table[j][i] for j in range(n)) for i in range(n))
    conv = "left" if alg.convention == "right" else "right"
    return LeibnizAlgebra(alg.field, n, table, alg.names, conv, alg.is_validated)


def _stacked_kernel(alg: LeibnizAlgebra, maps: list[Matrix]) -> Subspace:
    rows = [r for m in maps for r in m.rows]
    if not rows:
        return Subspace.full(alg.field, alg.dim)
    return kernel(Matrix(alg.field, tuple(rows), alg.dim))


def two_sided_center(alg: LeibnizAlgebra) -> Subspace:
    """``{z : [z, x] = [x, z] = 0 for all x}``."""
    maps = [right_mult(alg, alg.basis(j)) for j in range(alg.dim)]
    maps += [left_mult(alg, alg.basis(j)) for j in range(alg.dim)]
    return _stacked_kernel(alg, maps)


def left_annihilator(alg: LeibnizAlgebra) -> Subspace:
    """``{x : [x, q] = 0}``."""
    return _stacked_kernel(alg, [right_mult(alg, alg.basis(j)) for j in range(alg.dim)])


def right_annihilator(alg: LeibnizAlgebra) -> Subspace:
    """``{x : [q, x] = 0}``."""
    return _stacked_kernel(alg, [left_mult(alg, alg.basis(j)) for j in range(alg.dim)])


def leib_ideal(alg: LeibnizAlgebra) -> IdealHandle:
    """Ideal generated by all squares ``[x, x]``.

    Generated by ``[e_i, e_i]`` and ``[e_i, e_j] + [e_j, e_i]``; the squares of
    basis vectors are needed separately in characteristic 2.
    """
    f, n = alg.field, alg.dim
    gens = [alg.table[i][i] for i in range(n)]
    gens += [vec_add(f, alg.table[i][j], alg.table[j][i]) for i in range(n) for j in range(i + 1, n)]
    return ideal_closure(alg, Subspace.span(f, n, gens))


def liezation(alg: LeibnizAlgebra) -> tuple[LeibnizAlgebra, LinearMap]:
    """Largest Lie quotient ``q / <[x, x]>`` and its projection."""
    require_validated(alg)
    q = quotient(alg, leib_ideal(alg))
    return q.algebra, q.projection


def is_lie(alg: LeibnizAlgebra) -> bool:
    return leib_ideal(alg).space.is_zero()


def lower_central_series(alg: LeibnizAlgebra, terms: int = 4) -> list[Subspace]:
    full = Subspace.full(alg.field, alg.dim)
    out = [full]
    while len(out) < terms:
        prev = out[-1]
        nxt = Subspace.span(
            alg.field, alg.dim, product_space(alg, prev, full).basis + product_space(alg, full, prev).basis
        )
        out.append(nxt)
    return out


def derived_series(alg: LeibnizAlgebra, terms: int = 4) -> list[Subspace]:
    out = [Subspace.full(alg.field, alg.dim)]
    while len(out) < terms:
        out.append(product_space(alg, out[-1], out[-1]))
    return out

"""Exact linear algebra over the rationals and prime fields.

Scalars are plain Python values: ``Fraction`` over Q and ``int`` residues in
``[0, p)`` over GF(p).  Vectors are tuples.  A ``Field`` object carries the
tag and does the arithmetic; every container records its field so mixing
fields is caught instead of silently coerced.

Matrices use the column convention: a map ``F^n -> F^m`` is an ``m x n``
matrix and ``y = M x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import AmbientMismatch, DimensionMismatch, FieldMismatch, NotContained, SingularMatrix

Vector = tuple


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise GF(p)."""

    p: int = 0

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError("field characteristic must be an int")
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction or numeric string into the field."""
        t = type(x)
        if t is int:
            return x % self.p if self.p else Fraction(x)
        if t is Fraction and not self.p:
            return x
        if isinstance(x, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(x, str):
            return self.parse(x)
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise FieldMismatch(f"rational {x} is not an element of {self}")
                x = x.numerator
            if not isinstance(x, int):
                raise TypeError(f"cannot coerce {x!r} into {self}")
            return x % self.p
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def parse(self, text: str):
        """Parse ``"3"``, ``"-2"`` or ``"a/b"``; over GF(p) a/b means a times b^-1."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            a, b = int(num), int(den)
            if b == 0:
                raise ZeroDivisionError(text)
            if self.p:
                if b % self.p == 0:
                    raise ZeroDivisionError(f"{text} in {self}")
                return a * pow(b, -1, self.p) % self.p
            return Fraction(a, b)
        return self(int(text))

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        return 1 / Fraction(a)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def neg(self, a):
        return -a % self.p if self.p else -a

    def elements(self):
        if not self.p:
            raise ValueError("Q is infinite")
        return range(self.p)

    def fmt(self, a) -> str:
        return str(a)

    def signed(self, a):
        """Representative in ``(-p/2, p/2]`` for display; identity over Q."""
        if self.p and a > self.p // 2:
            return a - self.p
        return a

    def __str__(self):
        return f"GF({self.p})" if self.p else "Q"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def same_field(*fields: Field) -> Field:
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatch(f"{first} vs {f}")
    return first


# ---------------------------------------------------------------- vectors


def zero_vector(field: Field, n: int) -> Vector:
    return (field.zero,) * n


def unit_vector(field: Field, n: int, i: int) -> Vector:
    v = [field.zero] * n
    v[i] = field.one
    return tuple(v)


def vec_add(field: Field, u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"{len(u)} vs {len(v)}")
    p = field.p
    if p:
        return tuple((a + b) % p for a, b in zip(u, v))
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(field: Field, u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"{len(u)} vs {len(v)}")
    p = field.p
    if p:
        return tuple((a - b) % p for a, b in zip(u, v))
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(field: Field, c, v: Sequence) -> Vector:
    p = field.p
    if p:
        return tuple(c * a % p for a in v)
    return tuple(c * a for a in v)


def lin_comb(field: Field, coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    """``sum(c_i * v_i)``; ``n`` is the length used when the sum is empty."""
    out = [field.zero] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for t, a in enumerate(v):
                if a:
                    out[t] += c * a
    if field.p:
        return tuple(x % field.p for x in out)
    return tuple(out)


def is_zero(v: Sequence) -> bool:
    return not any(v)


# ---------------------------------------------------------------- matrices


def _coerce_rows(field: Field, rows, ncols):
    out = []
    for r in rows:
        r = tuple(field(x) for x in r)
        if len(r) != ncols:
            raise DimensionMismatch(f"row of length {len(r)} in a matrix with {ncols} columns")
        out.append(r)
    return tuple(out)


@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence], ncols: int | None = None) -> Matrix:
        rows = [tuple(r) for r in rows]
        if ncols is None:
            if not rows:
                raise DimensionMismatch("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(field, _coerce_rows(field, rows, ncols), ncols)

    @classmethod
    def from_columns(cls, field: Field, cols: Iterable[Sequence], nrows: int | None = None) -> Matrix:
        cols = [tuple(c) for c in cols]
        if nrows is None:
            if not cols:
                raise DimensionMismatch("nrows required for a matrix with no columns")
            nrows = len(cols[0])
        for c in cols:
            if len(c) != nrows:
                raise DimensionMismatch("ragged columns")
        rows = [tuple(c[i] for c in cols) for i in range(nrows)]
        return cls.from_rows(field, rows, len(cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        return cls(field, tuple(unit_vector(field, n, i) for i in range(n)), n)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> Matrix:
        return cls(field, tuple(zero_vector(field, ncols) for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> Matrix:
        return Matrix(self.field, tuple(self.columns()), self.nrows)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for a {self.nrows}x{self.ncols} matrix")
        p = self.field.p
        out = []
        for r in self.rows:
            s = sum(a * b for a, b in zip(r, v) if a and b)
            out.append(s % p if p else Fraction(s))
        return tuple(out)

    def __matmul__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        same_field(self.field, other.field)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        cols = [self.apply(c) for c in other.columns()]
        return Matrix.from_columns(self.field, cols, self.nrows) if cols else Matrix.zeros(self.field, self.nrows, 0)

    def __add__(self, other: Matrix) -> Matrix:
        same_field(self.field, other.field)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix(self.field, tuple(vec_add(self.field, a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        same_field(self.field, other.field)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix(self.field, tuple(vec_sub(self.field, a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> Matrix:
        return Matrix(self.field, tuple(vec_scale(self.field, self.field(-1), r) for r in self.rows), self.ncols)

    def rank(self) -> int:
        return len(rref(self)[1])

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def inverse(self) -> Matrix:
        if not self.is_square():
            raise DimensionMismatch(f"cannot invert a {self.nrows}x{self.ncols} matrix")
        n = self.nrows
        aug = [tuple(r) + unit_vector(self.field, n, i) for i, r in enumerate(self.rows)]
        red, piv = _rref_lists(self.field, aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise SingularMatrix("matrix is not invertible")
        return Matrix(self.field, tuple(tuple(r[n:]) for r in red[:n]), n)

    def hstack(self, other: Matrix) -> Matrix:
        same_field(self.field, other.field)
        if self.nrows != other.nrows:
            raise DimensionMismatch("hstack row counts differ")
        return Matrix(self.field, tuple(a + b for a, b in zip(self.rows, other.rows)), self.ncols + other.ncols)

    def __str__(self):
        return "\n".join(" ".join(self.field.fmt(x) for x in r) for r in self.rows)


def block_diagonal(field: Field, a: Matrix, b: Matrix) -> Matrix:
    same_field(field, a.field, b.field)
    rows = [tuple(r) + zero_vector(field, b.ncols) for r in a.rows]
    rows += [zero_vector(field, a.ncols) + tuple(r) for r in b.rows]
    return Matrix(field, tuple(rows), a.ncols + b.ncols)


def _rref_lists(field: Field, rows, ncols):
    p = field.p
    m = [list(r) for r in rows]
    pivots = []
    nrows = len(m)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if lead != 1:
            inv = field.inv(lead)
            m[r] = [x * inv % p for x in m[r]] if p else [x * inv for x in m[r]]
        prow = m[r]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    if p:
                        m[i] = [(x - f * y) % p for x, y in zip(m[i], prow)]
                    else:
                        m[i] = [x - f * y for x, y in zip(m[i], prow)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m], pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (same shape, zero rows last) and pivot columns."""
    rows, piv = _rref_lists(m.field, m.rows, m.ncols)
    return Matrix(m.field, tuple(rows), m.ncols), piv


class Affine(NamedTuple):
    particular: Vector
    kernel: Subspace


def _null_basis(field: Field, red, pivots, ncols):
    piv_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in piv_set:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for row, pc in zip(red, pivots):
            if row[free]:
                v[pc] = field.neg(row[free])
        basis.append(tuple(v))
    return basis


def kernel(a: Matrix) -> Subspace:
    red, piv = _rref_lists(a.field, a.rows, a.ncols)
    return Subspace.span(a.field, a.ncols, _null_basis(a.field, red, piv, a.ncols))


def solve(a: Matrix, b: Sequence) -> Affine | None:
    """All ``x`` with ``a x = b``, or ``None`` when the system is inconsistent."""
    if len(b) != a.nrows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {a.nrows} equations")
    field = a.field
    b = tuple(field(x) for x in b)
    aug = [tuple(r) + (bi,) for r, bi in zip(a.rows, b)]
    red, piv = _rref_lists(field, aug, a.ncols + 1)
    if piv and piv[-1] == a.ncols:
        return None
    x = [field.zero] * a.ncols
    for row, pc in zip(red, piv):
        x[pc] = row[-1]
    core = [row[:-1] for row in red]
    ker = Subspace.span(field, a.ncols, _null_basis(field, core, piv, a.ncols))
    return Affine(tuple(x), ker)


def express(field: Field, vectors: Sequence[Sequence], v: Sequence) -> Vector | None:
    """Coefficients ``c`` with ``sum(c_i vectors_i) = v`` (one solution), or ``None``."""
    n = len(v)
    if not vectors:
        return () if is_zero(v) else None
    a = Matrix.from_columns(field, vectors, n)
    sol = solve(a, v)
    return None if sol is None else sol.particular


# ---------------------------------------------------------------- subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``F^ambient`` stored by its RREF basis.

    Build with ``Subspace.span``; the canonical basis makes ``==`` set equality.
    """

    field: Field
    ambient: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, field: Field, ambient: int, vectors: Iterable[Sequence]) -> Subspace:
        rows = []
        for v in vectors:
            v = tuple(v)
            if len(v) != ambient:
                raise AmbientMismatch(f"vector of length {len(v)} in {ambient}-space")
            rows.append(tuple(field(x) for x in v))
        red, piv = _rref_lists(field, rows, ambient)
        return cls(field, ambient, tuple(red[: len(piv)]), tuple(piv))

    @classmethod
    def zero(cls, field: Field, ambient: int) -> Subspace:
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> Subspace:
        return cls(field, ambient, tuple(unit_vector(field, ambient, i) for i in range(ambient)), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def _residual(self, v):
        p = self.field.p
        r = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = r[pc]
            if c:
                if p:
                    r = [(x - c * y) % p for x, y in zip(r, row)]
                else:
                    r = [x - c * y for x, y in zip(r, row)]
        return r

    def __contains__(self, v) -> bool:
        if len(v) != self.ambient:
            raise AmbientMismatch(f"vector of length {len(v)} in {self.ambient}-space")
        return not any(self._residual(v))

    def coords(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the RREF basis; raises NotContained if ``v`` is outside."""
        if v not in self:
            raise NotContained(f"{v} is not in the subspace")
        return tuple(v[pc] for pc in self.pivots)

    def vector(self, coords: Sequence) -> Vector:
        if len(coords) != self.dim:
            raise DimensionMismatch(f"{len(coords)} coordinates for a {self.dim}-dimensional subspace")
        return lin_comb(self.field, coords, self.basis, self.ambient)

    def contains_subspace(self, other: Subspace) -> bool:
        _check_compatible(self, other)
        return all(v in self for v in other.basis)

    def __le__(self, other: Subspace) -> bool:
        return other.contains_subspace(self)

    def __ge__(self, other: Subspace) -> bool:
        return self.contains_subspace(other)

    def is_zero(self) -> bool:
        return not self.basis

    def __str__(self):
        if not self.basis:
            return "{0}"
        return "span{" + ", ".join("(" + ",".join(self.field.fmt(x) for x in v) + ")" for v in self.basis) + "}"


def _check_compatible(a: Subspace, b: Subspace) -> None:
    same_field(a.field, b.field)
    if a.ambient != b.ambient:
        raise AmbientMismatch(f"{a.ambient}-space vs {b.ambient}-space")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    return Subspace.span(a.field, a.ambient, a.basis + b.basis)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: reduce ``[[u, u], [v, 0]]``; rows with zero left half span the intersection."""
    _check_compatible(a, b)
    field, n = a.field, a.ambient
    zero = zero_vector(field, n)
    rows = [tuple(u) + tuple(u) for u in a.basis] + [tuple(v) + zero for v in b.basis]
    red, piv = _rref_lists(field, rows, 2 * n)
    inter = [row[n:] for row, pc in zip(red, piv) if pc >= n]
    return Subspace.span(field, n, inter)


def complement(inner: Subspace, outer: Subspace) -> Subspace:
    """A complement of ``inner`` in ``outer``.

    Keeps the RREF basis vectors of ``outer`` whose pivot column is not a
    pivot of ``inner``.  A nonzero combination of kept vectors leads in a kept
    pivot column while every vector of ``inner`` leads in one of its own, so
    the two spaces meet in zero.
    """
    _check_compatible(inner, outer)
    if not outer.contains_subspace(inner):
        raise NotContained("inner subspace is not contained in outer")
    taken = set(inner.pivots)
    kept = [v for v, pc in zip(outer.basis, outer.pivots) if pc not in taken]
    return Subspace.span(inner.field, inner.ambient, kept)


def image(m: Matrix, s: Subspace) -> Subspace:
    same_field(m.field, s.field)
    if m.ncols != s.ambient:
        raise AmbientMismatch(f"{m.nrows}x{m.ncols} matrix on a {s.ambient}-space")
    return Subspace.span(m.field, m.nrows, [m.apply(v) for v in s.basis])


def preimage(m: Matrix, s: Subspace) -> Subspace:
    """``{x : m x in s}``."""
    same_field(m.field, s.field)
    if m.nrows != s.ambient:
        raise AmbientMismatch("preimage target mismatch")
    # x maps into s iff m x is killed by every row of a matrix whose kernel is s
    ann = kernel(Matrix.from_rows(m.field, s.basis, s.ambient) if s.basis else Matrix.zeros(m.field, 0, s.ambient))
    if ann.dim == 0:
        return Subspace.full(m.field, m.ncols)
    cond = Matrix.from_rows(m.field, ann.basis, s.ambient) @ m
    return kernel(cond)

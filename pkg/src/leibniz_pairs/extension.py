"""Factor sets and the extension algebras they define.

For an extension ``0 -> m -> q -> q* -> 0`` with a linear splitting ``tau``
the factor set is ``f(x, y) = [tau x, tau y] - tau [x, y]`` and the actions
are ``L_x(m) = [m, tau x]`` and ``R_x(m) = [tau x, m]``.  The extension
algebra on ``m ⊕ q*`` has bracket

    [(m1, x1), (m2, x2)] = ([m1, m2] + R_x1(m2) + L_x2(m1) + f(x1, x2), [x1, x2]).

The kernel ``m`` keeps its own bracket; nothing is abelianized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .algebra import (
    IdealHandle,
    LeibnizAlgebra,
    LinearMap,
    Quotient,
    bracket,
    hom_check,
    quotient,
    require_validated,
    subalgebra,
)
from .errors import (
    CenterNotPreserved,
    CertificateInvalid,
    DimensionMismatch,
    FactorIdentityViolated,
    LeibnizCheckFailed,
    NotAnIsomorphism,
    NotContained,
    NotLeibniz,
    NotStem,
    VerificationFailed,
)
from .exactla import Field, Matrix, Subspace, Vector, block_diagonal, image, same_field, vec_add, vec_sub
from .pairs import Pair, is_stem


@dataclass(frozen=True)
class FactorSetData:
    base: LeibnizAlgebra
    quotient: LeibnizAlgebra
    f: tuple  # f[a][b]: base coordinates of f(x_a, x_b)
    left: tuple  # left[a]: matrix of L_{x_a} on the base
    right: tuple  # right[a]: matrix of R_{x_a} on the base
    splitting: LinearMap | None = None
    ambient: LeibnizAlgebra | None = None
    embedding: Matrix | None = None

    def __post_init__(self):
        same_field(self.base.field, self.quotient.field)
        r, s = self.base.dim, self.quotient.dim
        if len(self.f) != s or any(len(row) != s for row in self.f):
            raise DimensionMismatch("factor set table has the wrong shape")
        if any(len(v) != r for row in self.f for v in row):
            raise DimensionMismatch("factor set values have the wrong length")
        for mats in (self.left, self.right):
            if len(mats) != s or any(m.shape != (r, r) for m in mats):
                raise DimensionMismatch("action matrices have the wrong shape")
        if self.base.convention != self.quotient.convention:
            raise ValueError("base and quotient use different identity conventions")

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def convention(self) -> str:
        return self.base.convention

    def f_value(self, x: Sequence, y: Sequence) -> Vector:
        fld = self.field
        out = [fld.zero] * self.base.dim
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if not yb:
                    continue
                c = xa * yb
                for k, v in enumerate(self.f[a][b]):
                    if v:
                        out[k] += c * v
        return tuple(t % fld.p for t in out) if fld.p else tuple(out)

    def _action(self, mats, x: Sequence, m: Sequence) -> Vector:
        fld = self.field
        out = (fld.zero,) * self.base.dim
        for a, xa in enumerate(x):
            if xa:
                out = vec_add(fld, out, tuple(fld.mul(xa, t) for t in mats[a].apply(m)))
        return out

    def L(self, x: Sequence, m: Sequence) -> Vector:
        """``L_x(m) = [m, tau x]``."""
        return self._action(self.left, x, m)

    def R(self, x: Sequence, m: Sequence) -> Vector:
        """``R_x(m) = [tau x, m]``."""
        return self._action(self.right, x, m)

    def is_zero(self) -> bool:
        return not any(any(v) for row in self.f for v in row)


def factor_set_from_pair(q: LeibnizAlgebra, m: IdealHandle, splitting: Matrix | None = None) -> FactorSetData:
    """Factor set of ``0 -> m -> q -> q/m -> 0`` for the given splitting.

    The default splitting sends each quotient basis vector to the standard
    basis vector it came from (the deterministic complement of ``m``).
    """
    require_validated(q)
    if m.parent != q:
        raise DimensionMismatch("ideal belongs to a different algebra")
    fld = q.field
    quo = quotient(q, m)
    base, incl = subalgebra(q, m.space)
    rho = quo.section.matrix if splitting is None else splitting
    if rho.shape != (q.dim, quo.algebra.dim):
        raise DimensionMismatch("splitting has the wrong shape")
    if quo.projection.matrix @ rho != Matrix.identity(fld, quo.algebra.dim):
        raise ValueError("splitting is not a section of the projection")
    s = quo.algebra.dim
    lifts = rho.columns()
    space = m.space

    def coords(v):
        try:
            return space.coords(v)
        except NotContained as exc:
            raise NotContained("factor set value outside the kernel") from exc

    f = tuple(
        tuple(
            coords(vec_sub(fld, bracket(q, lifts[a], lifts[b]), rho.apply(quo.algebra.table[a][b])))
            for b in range(s)
        )
        for a in range(s)
    )
    left = tuple(
        Matrix.from_columns(fld, [coords(bracket(q, v, lifts[a])) for v in space.basis], base.dim)
        if space.dim
        else Matrix.zeros(fld, 0, 0)
        for a in range(s)
    )
    right = tuple(
        Matrix.from_columns(fld, [coords(bracket(q, lifts[a], v)) for v in space.basis], base.dim)
        if space.dim
        else Matrix.zeros(fld, 0, 0)
        for a in range(s)
    )
    return FactorSetData(
        base, quo.algebra, f, left, right, LinearMap(rho, "splitting", quo.algebra, q), q, incl.matrix
    )


class FactorViolation(NamedTuple):
    x: int
    y: int
    z: int
    value: Vector

    def __str__(self):
        return f"factor-set identity fails at quotient basis triple ({self.x + 1},{self.y + 1},{self.z + 1})"


def factor_identity_value(d: FactorSetData, i: int, j: int, k: int) -> Vector:
    """The left-hand side of the factor-set identity at a basis triple (zero when it holds)."""
    fld = d.field
    qs = d.quotient
    x, y, z = qs.basis(i), qs.basis(j), qs.basis(k)
    t = qs.table
    if d.convention == "right":
        terms_plus = [d.f_value(t[i][j], z), d.L(z, d.f_value(x, y))]
        terms_minus = [
            d.f_value(t[i][k], y),
            d.f_value(x, t[j][k]),
            d.L(y, d.f_value(x, z)),
            d.R(x, d.f_value(y, z)),
        ]
    else:
        terms_plus = [d.R(x, d.f_value(y, z)), d.f_value(x, t[j][k])]
        terms_minus = [
            d.L(z, d.f_value(x, y)),
            d.f_value(t[i][j], z),
            d.R(y, d.f_value(x, z)),
            d.f_value(y, t[i][k]),
        ]
    out = (fld.zero,) * d.base.dim
    for v in terms_plus:
        out = vec_add(fld, out, v)
    for v in terms_minus:
        out = vec_sub(fld, out, v)
    return out


def check_factor_identity(d: FactorSetData) -> FactorViolation | None:
    s = d.quotient.dim
    for i in range(s):
        for j in range(s):
            for k in range(s):
                v = factor_identity_value(d, i, j, k)
                if any(v):
                    return FactorViolation(i, j, k, v)
    return None


@dataclass(frozen=True)
class ExtensionAlgebra:
    algebra: LeibnizAlgebra
    provenance: FactorSetData
    kernel_embedding: LinearMap
    projection: LinearMap

    @property
    def base_dim(self) -> int:
        return self.provenance.base.dim

    @property
    def quotient_dim(self) -> int:
        return self.provenance.quotient.dim


def _extension_names(d: FactorSetData) -> tuple[str, ...]:
    names = list(d.base.names)
    for n in d.quotient.names:
        while n in names:
            n = n + "'"
        names.append(n)
    return tuple(names)


def build_extension(d: FactorSetData) -> ExtensionAlgebra:
    """The algebra ``m x_f q*`` (kernel coordinates first)."""
    bad = check_factor_identity(d)
    if bad is not None:
        raise FactorIdentityViolated(bad)
    fld = d.field
    r, s = d.base.dim, d.quotient.dim
    n = r + s
    zero_q = (fld.zero,) * s
    table = [[None] * n for _ in range(n)]
    for i in range(r):
        for j in range(r):
            table[i][j] = tuple(d.base.table[i][j]) + zero_q
        for b in range(s):
            table[i][r + b] = tuple(d.left[b].column(i)) + zero_q
            table[r + b][i] = tuple(d.right[b].column(i)) + zero_q
    for a in range(s):
        for b in range(s):
            table[r + a][r + b] = tuple(d.f[a][b]) + tuple(d.quotient.table[a][b])
    alg = LeibnizAlgebra(fld, n, tuple(tuple(row) for row in table), _extension_names(d), d.convention)
    try:
        alg = alg.validated()
    except NotLeibniz as exc:
        raise LeibnizCheckFailed(exc.counterexample) from exc
    ident = Matrix.identity(fld, n)
    kernel_emb = Matrix.from_rows(fld, [row[:r] for row in ident.rows], r) if n else Matrix.zeros(fld, 0, r)
    proj = Matrix(fld, ident.rows[r:], n)
    return ExtensionAlgebra(
        alg, d, LinearMap(kernel_emb, "kernel embedding", d.base, alg), LinearMap(proj, "projection", alg, d.quotient)
    )


def semidirect_product(base: LeibnizAlgebra, quot: LeibnizAlgebra, left: Sequence[Matrix], right: Sequence[Matrix]) -> ExtensionAlgebra:
    """Extension with zero factor set."""
    fld = base.field
    zero = (fld.zero,) * base.dim
    f = tuple(tuple(zero for _ in range(quot.dim)) for _ in range(quot.dim))
    return build_extension(FactorSetData(base, quot, f, tuple(left), tuple(right)))


class Reconstruction(NamedTuple):
    ext: ExtensionAlgebra
    iso: LinearMap


def lemma2_reconstruct(q: LeibnizAlgebra, m: IdealHandle, splitting: Matrix | None = None) -> Reconstruction:
    """The extension ``m x_f q/m`` and the isomorphism ``(m, x̄) -> m + rho(x̄)`` onto ``q``."""
    d = factor_set_from_pair(q, m, splitting)
    ext = build_extension(d)
    cols = list(m.space.basis) + d.splitting.matrix.columns()
    fld = q.field
    iso = Matrix.from_columns(fld, cols, q.dim) if cols else Matrix.zeros(fld, 0, 0)
    if not iso.is_invertible():
        raise VerificationFailed("reconstruction map is not bijective")
    bad = hom_check(iso, ext.algebra, q)
    if bad is not None:
        raise VerificationFailed(f"reconstruction map is not a homomorphism at ({bad.i + 1},{bad.j + 1})")
    return Reconstruction(ext, LinearMap(iso, "reconstruction", ext.algebra, q))


# ---------------------------------------------------------------- stem factor algebras


@dataclass(frozen=True)
class StemFactor:
    """``m_f = Z x_f m/Z`` for a pair, with the maps relating it to ``m`` and ``q``.

    ``m`` is handled as an algebra on the RREF basis of its subspace
    (``base_m``); ``zm`` is the Lie-center in those coordinates.
    """

    pair: Pair
    base_m: LeibnizAlgebra
    zm: Subspace
    quo: Quotient
    ext: ExtensionAlgebra
    iso: LinearMap  # ext -> base_m
    kappa: LinearMap  # Z (RREF coordinates) -> ext
    z_to_base: Matrix  # Z RREF coordinates -> ext kernel coordinates
    base_to_z: Matrix

    def mbar_of(self, v_q: Sequence) -> Vector:
        """Quotient coordinates (in ``m/Z``) of an element of ``m`` given in ``q`` coordinates."""
        return self.quo.projection(self.pair.m.space.coords(v_q))

    def lift_to_q(self, x: Sequence) -> Vector:
        return self.pair.m.space.vector(self.quo.section(x))


def stem_factor_algebra(p: Pair, splitting: Matrix | None = None) -> StemFactor:
    q, m = p.q, p.m
    fld = q.field
    base_m, _ = subalgebra(q, m.space)
    zm = Subspace.span(fld, base_m.dim, [m.space.coords(z) for z in p.z_lie.basis])
    ideal = IdealHandle(base_m, zm)
    rec = lemma2_reconstruct(base_m, ideal, splitting)
    quo = quotient(base_m, ideal)
    r, s = zm.dim, quo.algebra.dim
    # Z RREF coordinates -> ext kernel coordinates (the RREF basis of zm)
    cols = [zm.coords(m.space.coords(z)) for z in p.z_lie.basis]
    z_to_base = Matrix.from_columns(fld, cols, r) if cols else Matrix.zeros(fld, 0, 0)
    base_to_z = z_to_base.inverse()
    kappa_rows = list(z_to_base.rows) + [(fld.zero,) * r for _ in range(s)]
    kappa = Matrix.from_rows(fld, kappa_rows, r) if kappa_rows else Matrix.zeros(fld, 0, r)
    return StemFactor(
        p, base_m, zm, quo, rec.ext, rec.iso, LinearMap(kappa, "kappa", None, rec.ext.algebra), z_to_base, base_to_z
    )


def omega_one(sf1: StemFactor, sf2: StemFactor, cert) -> Matrix:
    """``alpha`` restricted to ``m1/Z1 -> m2/Z2`` in the stem factor quotient coordinates."""
    p1, p2 = sf1.pair, sf2.pair
    fld = p1.field
    cols = []
    for a in range(sf1.quo.algebra.dim):
        v = sf1.lift_to_q(sf1.quo.algebra.basis(a))
        w = cert.alpha.apply(p1.central_quotient.projection(v))
        lift = p2.central_quotient.section(w)
        cols.append(sf2.mbar_of(lift))
    s2 = sf2.quo.algebra.dim
    return Matrix.from_columns(fld, cols, s2) if cols else Matrix.zeros(fld, s2, 0)


class Transport(NamedTuple):
    f: tuple
    theta: LinearMap
    ext_f: ExtensionAlgebra
    ext_g: ExtensionAlgebra


def transport_factor_set(p1: Pair, p2: Pair, cert) -> Transport:
    """Pull the factor set of ``p2`` back along an isoclinism.

    ``f(a, b) = beta^-1 g(omega1 a, omega1 b)`` on ``m1/Z1``, with the kernel
    bracket and actions of ``p1``; ``theta(z, m̄) = (beta z, omega1 m̄)`` is
    verified to be an isomorphism onto ``n_g``.
    """
    from .isoclinism import CertificateViolation, corollary2_check, verify_certificate

    if not is_stem(p1) or not is_stem(p2):
        raise NotStem("both pairs must be stem")
    bad = verify_certificate(p1, p2, cert)
    if bad is not None:
        raise CertificateInvalid(bad)
    beta_z = corollary2_check(p1, p2, cert)
    if isinstance(beta_z, CertificateViolation):
        raise CertificateInvalid(beta_z)
    sf1, sf2 = stem_factor_algebra(p1), stem_factor_algebra(p2)
    fd1, fd2 = sf1.ext.provenance, sf2.ext.provenance
    om = omega_one(sf1, sf2, cert)
    fld = p1.field
    pull = sf1.z_to_base @ beta_z.matrix.inverse() @ sf2.base_to_z
    s1 = fd1.quotient.dim
    f = tuple(
        tuple(
            pull.apply(fd2.f_value(om.apply(fd1.quotient.basis(a)), om.apply(fd1.quotient.basis(b))))
            for b in range(s1)
        )
        for a in range(s1)
    )
    data = FactorSetData(fd1.base, fd1.quotient, f, fd1.left, fd1.right)
    ext_f = build_extension(data)
    push = sf2.z_to_base @ beta_z.matrix @ sf1.base_to_z
    theta = block_diagonal(fld, push, om)
    if not theta.is_invertible():
        raise VerificationFailed("theta is not bijective")
    viol = hom_check(theta, ext_f.algebra, sf2.ext.algebra)
    if viol is not None:
        raise VerificationFailed(f"theta is not a homomorphism at basis pair ({viol.i + 1},{viol.j + 1})")
    return Transport(f, LinearMap(theta, "theta", ext_f.algebra, sf2.ext.algebra), ext_f, sf2.ext)


class InducedMaps(NamedTuple):
    eta1: Matrix
    eta2: Matrix
    d: Matrix
    violation: tuple | None


def _block(m: Matrix, r0: int, r1: int, c0: int, c1: int) -> Matrix:
    return Matrix.from_rows(m.field, [row[c0:c1] for row in m.rows[r0:r1]], c1 - c0)


def induced_maps_and_d(eta, e1: ExtensionAlgebra, e2: ExtensionAlgebra) -> InducedMaps:
    """Split an isomorphism ``m_f -> n_g`` preserving the kernels into ``eta1``, ``eta2`` and ``d``.

    ``eta(z, 0) = (eta2 z, 0)`` and ``eta(0, m̄) = (d eta1 m̄, eta1 m̄)``.  The
    first component of the homomorphism condition is then evaluated on
    every basis pair and the first failure, if any, is reported.
    """
    m = eta.matrix if isinstance(eta, LinearMap) else eta
    fld = same_field(m.field, e1.algebra.field, e2.algebra.field)
    r1, s1, r2, s2 = e1.base_dim, e1.quotient_dim, e2.base_dim, e2.quotient_dim
    if m.shape != (r2 + s2, r1 + s1):
        raise DimensionMismatch("eta has the wrong shape")
    z1 = Subspace.span(fld, r1 + s1, [e1.algebra.basis(i) for i in range(r1)])
    z2 = Subspace.span(fld, r2 + s2, [e2.algebra.basis(i) for i in range(r2)])
    if image(m, z1) != z2:
        raise CenterNotPreserved("eta does not map the kernel of m_f onto the kernel of n_g")
    if not m.is_invertible():
        raise NotAnIsomorphism("eta is not bijective")
    bad = hom_check(m, e1.algebra, e2.algebra)
    if bad is not None:
        raise NotAnIsomorphism(f"eta is not a homomorphism at basis pair ({bad.i + 1},{bad.j + 1})")
    eta2 = _block(m, 0, r2, 0, r1)
    eta1 = _block(m, r2, r2 + s2, r1, r1 + s1)
    top_right = _block(m, 0, r2, r1, r1 + s1)
    d = top_right @ eta1.inverse() if s2 else Matrix.zeros(fld, r2, 0)
    fd1, fd2 = e1.provenance, e2.provenance

    def split(v):
        return v[:r1], v[r1:]

    violation = None
    n1 = r1 + s1
    for i in range(n1):
        for j in range(n1):
            za, ma = split(e1.algebra.basis(i))
            zb, mb = split(e1.algebra.basis(j))
            inner = fd1.base.br(za, zb)
            inner = vec_add(fld, inner, fd1.R(ma, zb))
            inner = vec_add(fld, inner, fd1.L(mb, za))
            inner = vec_add(fld, inner, fd1.f_value(ma, mb))
            lhs = vec_add(fld, eta2.apply(inner), d.apply(eta1.apply(fd1.quotient.br(ma, mb))))
            ua = vec_add(fld, eta2.apply(za), d.apply(eta1.apply(ma)))
            ub = vec_add(fld, eta2.apply(zb), d.apply(eta1.apply(mb)))
            na, nb = eta1.apply(ma), eta1.apply(mb)
            rhs = fd2.base.br(ua, ub)
            rhs = vec_add(fld, rhs, fd2.L(nb, ua))
            rhs = vec_add(fld, rhs, fd2.R(na, ub))
            rhs = vec_add(fld, rhs, fd2.f_value(na, nb))
            if lhs != rhs:
                violation = (i, j)
                break
        if violation:
            break
    return InducedMaps(eta1, eta2, d, violation)

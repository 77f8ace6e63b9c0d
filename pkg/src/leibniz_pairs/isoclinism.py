"""Lie-isoclinism of pairs: certificates, verification and search.

A certificate is a pair of matrices.  ``alpha`` maps ``q1/Z1`` to ``q2/Z2``
(coordinates of the central quotients built by ``Pair.central_quotient``)
and ``beta`` maps ``K1`` to ``K2`` (coordinates in the RREF bases of the
Lie-commutators).  Here ``Z`` is the Lie-center and ``K`` the
Lie-commutator of each pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

from .algebra import (
    IdealHandle,
    LeibnizAlgebra,
    LinearMap,
    bracket,
    derived_series,
    hom_check,
    hom_violations,
    leib_ideal,
    left_annihilator,
    lower_central_series,
    right_annihilator,
    two_sided_center,
)
from .errors import CertificateInvalid, DimensionMismatch, NotContained, NotStem, SingularMatrix
from .exactla import (
    Field,
    Matrix,
    Subspace,
    Vector,
    complement,
    image,
    same_field,
    subspace_intersect,
    vec_add,
    vec_sub,
)
from .pairs import Pair, is_stem, reduce_by

STRICT = "strict"
LINEAR = "linear"

# bounded coefficient set for searches over Q
RATIONAL_COEFFICIENTS = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(-1, 2))


@dataclass(frozen=True)
class IsoclinismCertificate:
    alpha: Matrix
    beta: Matrix
    mode: str = STRICT

    def inverse(self) -> IsoclinismCertificate:
        return IsoclinismCertificate(self.alpha.inverse(), self.beta.inverse(), self.mode)

    def then(self, other: IsoclinismCertificate) -> IsoclinismCertificate:
        """Certificate for the composite: first ``self``, then ``other``."""
        mode = STRICT if self.mode == other.mode == STRICT else LINEAR
        return IsoclinismCertificate(other.alpha @ self.alpha, other.beta @ self.beta, mode)

    def with_mode(self, mode: str) -> IsoclinismCertificate:
        return IsoclinismCertificate(self.alpha, self.beta, mode)


def identity_certificate(p: Pair) -> IsoclinismCertificate:
    f = p.field
    return IsoclinismCertificate(
        Matrix.identity(f, p.central_quotient.algebra.dim), Matrix.identity(f, p.k_lie.space.dim)
    )


class CertificateViolation(NamedTuple):
    kind: str
    witness: str

    def __str__(self):
        return f"{self.kind}: {self.witness}"


# ---------------------------------------------------------------- commutator maps


def _lift(p: Pair, v: Sequence) -> Vector:
    return p.central_quotient.section(v)


def _commutator(p: Pair, m_bar: Sequence, q_bar: Sequence) -> Vector:
    x, y = _lift(p, m_bar), _lift(p, q_bar)
    return vec_add(p.field, bracket(p.q, x, y), bracket(p.q, y, x))


def commutator_map(p: Pair, m_bar: Sequence, q_bar: Sequence) -> Vector:
    """``C(m̄, q̄) = [m, q] + [q, m]`` for lifts ``m``, ``q``; the value does not depend on the lift."""
    cq = p.central_quotient.algebra
    if len(m_bar) != cq.dim or len(q_bar) != cq.dim:
        raise DimensionMismatch("arguments must be in central-quotient coordinates")
    if m_bar not in p.m_bar:
        raise NotContained("first argument is not in m/Z")
    value = _commutator(p, m_bar, q_bar)
    x, y = _lift(p, m_bar), _lift(p, q_bar)
    for z in p.z_lie.basis:
        x2, y2 = vec_add(p.field, x, z), vec_add(p.field, y, z)
        other = vec_add(p.field, bracket(p.q, x2, y2), bracket(p.q, y2, x2))
        assert other == value, "commutator map depends on the lift"
    return value


def _names(alg: LeibnizAlgebra, v: Sequence) -> str:
    return alg.fmt(v)


def _basis_pairs(p: Pair):
    cq = p.central_quotient.algebra
    for a in p.m_bar.basis:
        for j in range(cq.dim):
            yield a, cq.basis(j)


def verify_certificate(p1: Pair, p2: Pair, cert: IsoclinismCertificate) -> CertificateViolation | None:
    """None when ``cert`` is an isoclinism ``p1 -> p2`` in its mode, else the first violation."""
    same_field(p1.field, p2.field, cert.alpha.field, cert.beta.field)
    c1, c2 = p1.central_quotient.algebra, p2.central_quotient.algebra
    k1, k2 = p1.k_lie.space, p2.k_lie.space
    alpha, beta = cert.alpha, cert.beta
    if alpha.shape != (c2.dim, c1.dim):
        return CertificateViolation("shape", f"alpha is {alpha.shape}, expected {(c2.dim, c1.dim)}")
    if beta.shape != (k2.dim, k1.dim):
        return CertificateViolation("shape", f"beta is {beta.shape}, expected {(k2.dim, k1.dim)}")
    if not alpha.is_invertible():
        return CertificateViolation("alpha-singular", f"rank {alpha.rank()} < {c1.dim}")
    if cert.mode == STRICT:
        bad = list(hom_violations(alpha, c1, c2))
        if bad:
            return CertificateViolation(
                "alpha-not-homomorphism", ", ".join(f"({c1.names[v.i]},{c1.names[v.j]})" for v in bad)
            )
    elif cert.mode != LINEAR:
        raise ValueError(f"unknown mode {cert.mode!r}")
    if image(alpha, p1.m_bar) != p2.m_bar:
        return CertificateViolation("alpha-m-image", f"alpha(m1/Z1) = {image(alpha, p1.m_bar)} != {p2.m_bar}")
    if not beta.is_invertible():
        return CertificateViolation("beta-singular", f"rank {beta.rank()} < {k1.dim}")
    for a, b in _basis_pairs(p1):
        lhs = k2.vector(beta.apply(k1.coords(_commutator(p1, a, b))))
        rhs = _commutator(p2, alpha.apply(a), alpha.apply(b))
        if lhs != rhs:
            return CertificateViolation(
                "diagram",
                f"C at ({_names(c1, a)},{_names(c1, b)}): beta gives {p2.q.fmt(lhs)}, expected {p2.q.fmt(rhs)}",
            )
    return None


def beta_apply(p1: Pair, p2: Pair, beta: Matrix, v: Sequence) -> Vector:
    """``beta`` applied to an element of ``K1`` given in ``q1`` coordinates."""
    return p2.k_lie.space.vector(beta.apply(p1.k_lie.space.coords(v)))


# ---------------------------------------------------------------- induced beta


class Inconsistent(NamedTuple):
    reason: str


def _pair_rows(p1: Pair, p2: Pair, alpha: Matrix, pairs):
    k1, k2 = p1.k_lie.space, p2.k_lie.space
    rows = []
    for a, b in pairs:
        v = k1.coords(_commutator(p1, a, b))
        w = k2.coords(_commutator(p2, alpha.apply(a), alpha.apply(b)))
        rows.append(tuple(v) + tuple(w))
    return rows


def _consistent_rows(field: Field, rows, d1: int, d2: int):
    """Reduce ``[v | w]`` rows.  Returns (ok, map rows on span(v), dim span(w))."""
    from .exactla import _rref_lists

    red, piv = _rref_lists(field, rows, d1 + d2)
    span_rows = []
    for row, pc in zip(red, piv):
        if pc >= d1:
            return False, None, None
        span_rows.append(row)
    w_dim = len(_rref_lists(field, [r[d1:] for r in span_rows], d2)[1]) if span_rows else 0
    return True, span_rows, w_dim


def induced_beta(p1: Pair, p2: Pair, alpha: Matrix) -> Matrix | Inconsistent:
    """The ``beta`` forced by ``alpha`` on the values of the commutator map.

    Off the span of those values ``beta`` is extended by sending the
    deterministic complement to the deterministic complement.
    """
    f = p1.field
    k1, k2 = p1.k_lie.space, p2.k_lie.space
    d1, d2 = k1.dim, k2.dim
    if d1 != d2:
        return Inconsistent(f"commutator dimensions differ ({d1} vs {d2})")
    if alpha.shape != (p2.central_quotient.algebra.dim, p1.central_quotient.algebra.dim):
        return Inconsistent(f"alpha has shape {alpha.shape}")
    if image(alpha, p1.m_bar) != p2.m_bar:
        return Inconsistent("alpha does not carry m1/Z1 onto m2/Z2")
    rows = _pair_rows(p1, p2, alpha, _basis_pairs(p1))
    ok, span_rows, w_dim = _consistent_rows(f, rows, d1, d2)
    if not ok:
        return Inconsistent("a linear relation among commutator values is not preserved")
    if w_dim != len(span_rows):
        return Inconsistent("beta would not be injective on the commutator values")
    src = [r[:d1] for r in span_rows]
    dst = [r[d1:] for r in span_rows]
    s1 = Subspace.span(f, d1, src)
    s2 = Subspace.span(f, d2, dst)
    c1 = complement(s1, Subspace.full(f, d1))
    c2 = complement(s2, Subspace.full(f, d2))
    if c1.dim != c2.dim:
        return Inconsistent("commutator values span subspaces of different codimension")
    src += list(c1.basis)
    dst += list(c2.basis)
    if not src:
        return Matrix.zeros(f, 0, 0)
    a = Matrix.from_columns(f, src, d1)
    b = Matrix.from_columns(f, dst, d2)
    try:
        beta = b @ a.inverse()
    except SingularMatrix:
        return Inconsistent("commutator values do not determine a basis")
    if not beta.is_invertible():
        return Inconsistent("induced beta is singular")
    return beta


# ---------------------------------------------------------------- fingerprints


@dataclass(frozen=True)
class Fingerprint:
    dim_q: int
    dim_m: int
    dim_z_lie: int
    dim_k_lie: int
    dim_leib: int
    dim_center: int
    lower_central: tuple
    derived: tuple
    dim_left_annihilator: int
    dim_right_annihilator: int


def fingerprint(p: Pair) -> Fingerprint:
    q = p.q
    return Fingerprint(
        q.dim,
        p.m.space.dim,
        p.z_lie.dim,
        p.k_lie.space.dim,
        leib_ideal(q).space.dim,
        two_sided_center(q).dim,
        tuple(s.dim for s in lower_central_series(q)),
        tuple(s.dim for s in derived_series(q)),
        left_annihilator(q).dim,
        right_annihilator(q).dim,
    )


# ---------------------------------------------------------------- search


class Found(NamedTuple):
    cert: IsoclinismCertificate


class NotIsoclinic(NamedTuple):
    reason: str


class Inconclusive(NamedTuple):
    reason: str


class Isomorphic(NamedTuple):
    matrix: Matrix


class NoIsomorphism(NamedTuple):
    reason: str


class _Budget(Exception):
    pass


def coefficient_values(field: Field) -> list:
    if field.is_finite:
        return list(range(1, field.p))
    return list(RATIONAL_COEFFICIENTS)


def _nonzero_vectors(field: Field, space: Subspace):
    """Nonzero combinations of the basis of ``space`` by support size, support, values."""
    values = coefficient_values(field)
    n = space.dim
    for size in range(1, n + 1):
        for support in itertools.combinations(range(n), size):
            for vals in itertools.product(values, repeat=size):
                c = [field.zero] * n
                for i, v in zip(support, vals):
                    c[i] = v
                yield space.vector(c)


class _Engine:
    """Depth-first search for an injective linear map ``B_src -> dst``.

    ``basis`` is a basis of the source space; image ``i`` must lie in
    ``targets[i]``.  When ``src``/``dst`` algebras are given the map must be
    a homomorphism: products whose expansion has a single unknown image
    force that image, and fully known products are checked immediately.
    """

    def __init__(self, field, basis, targets, dst_dim, src=None, dst=None, partial_ok=None, budget=100_000):
        self.field = field
        self.basis = list(basis)
        self.targets = targets
        self.dst_dim = dst_dim
        self.src, self.dst = src, dst
        self.partial_ok = partial_ok
        self.budget = budget
        self.used = 0
        r = len(self.basis)
        self.r = r
        if src is not None:
            change = Matrix.from_columns(field, self.basis, src.dim).inverse()
            self.table = [
                [change.apply(bracket(src, self.basis[i], self.basis[j])) for j in range(r)] for i in range(r)
            ]
        else:
            self.table = None

    def _tick(self):
        self.used += 1
        if self.used > self.budget:
            raise _Budget

    def _independent(self, images, v):
        known = [w for w in images if w is not None]
        return Subspace.span(self.field, self.dst_dim, known + [v]).dim == len(known) + 1

    def _combine(self, coeffs, images, skip=None):
        f = self.field
        out = [f.zero] * self.dst_dim
        for t, c in enumerate(coeffs):
            if c and t != skip:
                for u, x in enumerate(images[t]):
                    if x:
                        out[u] += c * x
        return tuple(x % f.p for x in out) if f.p else tuple(out)

    def _propagate(self, images):
        """Apply forced images; return the indices assigned, or None on contradiction."""
        if self.table is None:
            return []
        f = self.field
        assigned = []
        changed = True
        while changed:
            changed = False
            for i in range(self.r):
                if images[i] is None:
                    continue
                for j in range(self.r):
                    if images[j] is None:
                        continue
                    c = self.table[i][j]
                    unknown = [t for t, x in enumerate(c) if x and images[t] is None]
                    target = bracket(self.dst, images[i], images[j])
                    if not unknown:
                        if self._combine(c, images) != target:
                            for t in assigned:
                                images[t] = None
                            return None
                    elif len(unknown) == 1:
                        k = unknown[0]
                        rest = self._combine(c, images, skip=k)
                        v = tuple(f.mul(f.inv(c[k]), x) for x in vec_sub(f, target, rest))
                        if v not in self.targets[k] or not self._independent(images, v):
                            for t in assigned:
                                images[t] = None
                            return None
                        self._tick()
                        images[k] = v
                        assigned.append(k)
                        changed = True
        return assigned

    def run(self, on_complete: Callable):
        images = [None] * self.r
        return self._rec(images, on_complete)

    def _rec(self, images, on_complete):
        try:
            idx = images.index(None)
        except ValueError:
            return on_complete(images)
        for v in _nonzero_vectors(self.field, self.targets[idx]):
            if not self._independent(images, v):
                continue
            self._tick()
            images[idx] = v
            forced = self._propagate(images)
            if forced is not None and (self.partial_ok is None or self.partial_ok(images)):
                res = on_complete(images) if None not in images else self._rec(images, on_complete)
                if res is not None:
                    return res
            for k in forced or []:
                images[k] = None
            images[idx] = None
        return None


def _adapted_basis(field: Field, sub: Subspace) -> list[Vector]:
    return list(sub.basis) + list(complement(sub, Subspace.full(field, sub.ambient)).basis)


def _matrix_from_images(field, basis, images, src_dim, dst_dim) -> Matrix:
    b = Matrix.from_columns(field, basis, src_dim) if basis else Matrix.zeros(field, 0, 0)
    img = Matrix.from_columns(field, images, dst_dim) if images else Matrix.zeros(field, dst_dim, 0)
    return img @ b.inverse()


def search_isoclinism(
    p1: Pair, p2: Pair, budget: int = 200_000, mode: str = STRICT
) -> Found | NotIsoclinic | Inconclusive:
    """Backtracking search for ``alpha``; ``beta`` is always induced from ``alpha``.

    Over GF(p) the coefficients range over the whole field, so a search that
    finishes within budget without success proves there is no isoclinism.
    Over Q the coefficients come from a bounded set and failure is
    inconclusive.
    """
    f = same_field(p1.field, p2.field)
    c1, c2 = p1.central_quotient.algebra, p2.central_quotient.algebra
    if c1.dim != c2.dim:
        return NotIsoclinic(f"central quotients have dimensions {c1.dim} and {c2.dim}")
    if p1.m_bar.dim != p2.m_bar.dim:
        return NotIsoclinic(f"m/Z has dimensions {p1.m_bar.dim} and {p2.m_bar.dim}")
    if p1.k_lie.space.dim != p2.k_lie.space.dim:
        return NotIsoclinic(f"Lie-commutators have dimensions {p1.k_lie.space.dim} and {p2.k_lie.space.dim}")
    basis = _adapted_basis(f, p1.m_bar)
    dm = p1.m_bar.dim
    full2 = Subspace.full(f, c2.dim)
    targets = [p2.m_bar] * dm + [full2] * (c1.dim - dm)
    d1 = p1.k_lie.space.dim

    def partial_ok(images):
        pairs = [
            (basis[i], basis[j], images[i], images[j])
            for i in range(dm)
            for j in range(len(basis))
            if images[i] is not None and images[j] is not None
        ]
        if not pairs:
            return True
        rows = []
        for a, b, ia, ib in pairs:
            v = p1.k_lie.space.coords(_commutator(p1, a, b))
            w = p2.k_lie.space.coords(_commutator(p2, ia, ib))
            rows.append(tuple(v) + tuple(w))
        ok, span_rows, w_dim = _consistent_rows(f, rows, d1, d1)
        return ok and w_dim == len(span_rows)

    def on_complete(images):
        alpha = _matrix_from_images(f, basis, list(images), c1.dim, c2.dim)
        beta = induced_beta(p1, p2, alpha)
        if isinstance(beta, Inconsistent):
            return None
        cert = IsoclinismCertificate(alpha, beta, mode)
        bad = verify_certificate(p1, p2, cert)
        if bad is not None:
            raise CertificateInvalid(bad)
        return Found(cert)

    strict = mode == STRICT
    engine = _Engine(
        f, basis, targets, c2.dim, c1 if strict else None, c2 if strict else None, partial_ok, budget
    )
    if c1.dim == 0:
        res = on_complete([])
        return res if res is not None else NotIsoclinic("no beta compatible with the empty alpha")
    try:
        res = engine.run(on_complete)
    except _Budget:
        return Inconclusive(f"budget of {budget} assignments exhausted")
    if res is not None:
        return res
    if f.is_finite:
        return NotIsoclinic(f"exhaustive search over {f} found no {mode} isoclinism")
    return Inconclusive("no certificate with coefficients in {0, ±1, ±2, ±1/2}")


def search_pair_isomorphism(
    p1: Pair, p2: Pair, budget: int = 1_000_000, use_fingerprint: bool = True
) -> Isomorphic | NoIsomorphism | Inconclusive:
    """Search for an algebra isomorphism ``q1 -> q2`` carrying ``m1`` onto ``m2``."""
    f = same_field(p1.field, p2.field)
    q1, q2 = p1.q, p2.q
    if q1.dim != q2.dim or p1.m.space.dim != p2.m.space.dim:
        return NoIsomorphism("dimensions differ")
    if use_fingerprint and fingerprint(p1) != fingerprint(p2):
        return NoIsomorphism("invariant fingerprints differ")
    basis = _adapted_basis(f, p1.m.space)
    dm = p1.m.space.dim
    targets = [p2.m.space] * dm + [Subspace.full(f, q2.dim)] * (q1.dim - dm)

    def on_complete(images):
        phi = _matrix_from_images(f, basis, list(images), q1.dim, q2.dim)
        assert hom_check(phi, q1, q2) is None
        return Isomorphic(phi)

    if q1.dim == 0:
        return Isomorphic(Matrix.zeros(f, 0, 0))
    engine = _Engine(f, basis, targets, q2.dim, q1, q2, None, budget)
    try:
        res = engine.run(on_complete)
    except _Budget:
        return Inconclusive(f"budget of {budget} assignments exhausted")
    if res is not None:
        return res
    if f.is_finite:
        return NoIsomorphism(f"exhaustive search over {f} found no isomorphism")
    return Inconclusive("no isomorphism with coefficients in {0, ±1, ±2, ±1/2}")


# ---------------------------------------------------------------- constructions


def certificate_from_isomorphism(p1: Pair, p2: Pair, phi: Matrix) -> IsoclinismCertificate:
    """The isoclinism induced by a pair isomorphism ``phi: q1 -> q2``."""
    cq1, cq2 = p1.central_quotient, p2.central_quotient
    alpha = cq2.projection.matrix @ phi @ cq1.section.matrix
    k1, k2 = p1.k_lie.space, p2.k_lie.space
    cols = [k2.coords(phi.apply(v)) for v in k1.basis]
    beta = Matrix.from_columns(p1.field, cols, k2.dim) if cols else Matrix.zeros(p1.field, k2.dim, 0)
    return IsoclinismCertificate(alpha, beta)


class QuotientIsoclinism(NamedTuple):
    p_bar: Pair
    p_tilde: Pair
    cert: IsoclinismCertificate


def quotient_isoclinism(p: Pair, n: IdealHandle) -> QuotientIsoclinism:
    """``(m/n, q/n)`` and ``(m/t, q/t)`` with ``t = n ∩ K`` and the certificate ``p_tilde -> p_bar``.

    The certificate comes from the natural map ``q/t -> q/n``.
    """
    if n.parent != p.q:
        raise DimensionMismatch("ideal belongs to a different algebra")
    if not p.m.space.contains_subspace(n.space):
        raise NotContained("ideal is not contained in m")
    t = subspace_intersect(n.space, p.k_lie.space)
    p_bar, qb = reduce_by(p, n.space)
    p_tilde, qt = reduce_by(p, t)
    gamma = qb.projection.matrix @ qt.section.matrix
    alpha = p_bar.central_quotient.projection.matrix @ gamma @ p_tilde.central_quotient.section.matrix
    kt, kb = p_tilde.k_lie.space, p_bar.k_lie.space
    cols = [kb.coords(gamma.apply(v)) for v in kt.basis]
    beta = Matrix.from_columns(p.field, cols, kb.dim) if cols else Matrix.zeros(p.field, kb.dim, 0)
    cert = IsoclinismCertificate(alpha, beta, STRICT)
    bad = verify_certificate(p_tilde, p_bar, cert)
    if bad is not None:
        raise CertificateInvalid(bad)
    return QuotientIsoclinism(p_bar, p_tilde, cert)


def corollary2_check(p1: Pair, p2: Pair, cert: IsoclinismCertificate) -> LinearMap | CertificateViolation:
    """``beta`` restricted to the Lie-centers, as a map between their RREF coordinates."""
    if not is_stem(p1) or not is_stem(p2):
        raise NotStem("both pairs must be stem")
    bad = verify_certificate(p1, p2, cert)
    if bad is not None:
        raise CertificateInvalid(bad)
    z1, z2 = p1.z_lie, p2.z_lie
    imgs = [beta_apply(p1, p2, cert.beta, z) for z in z1.basis]
    if Subspace.span(p1.field, p2.q.dim, imgs) != z2:
        return CertificateViolation("center-image", "beta does not map Z1 onto Z2")
    cols = [z2.coords(v) for v in imgs]
    m = Matrix.from_columns(p1.field, cols, z2.dim) if cols else Matrix.zeros(p1.field, z2.dim, 0)
    return LinearMap(m, "beta restricted to the Lie-centers")


def full_pair_of_ideal(p: Pair) -> Pair:
    """The pair ``(m, m)`` with ``m`` viewed as an algebra on its RREF basis."""
    from .algebra import subalgebra

    sub, _ = subalgebra(p.q, p.m.space)
    return Pair.full(sub)


class Iso(NamedTuple):
    lam: LinearMap
    lam_on_m: LinearMap
    d: Matrix
    epsilon: object


class ConditionFailed(NamedTuple):
    which: str
    detail: str


def theorem3_construct(p1: Pair, p2: Pair, cert: IsoclinismCertificate, epsilon_mode: str = "all"):
    """Build an isomorphism ``m1 -> m2`` from an isoclinism of pairs.

    Condition a) asks ``m1`` and ``m2`` to be stem as algebras, condition b)
    asks ``[x, y]`` and ``[y, x]`` to be parallel on ``m1``.  The map
    ``lambda(z, m̄) = (tau2 z + d omega1 m̄, omega1 m̄)`` is formed on the stem
    factor algebras, ``d`` is solved from the factor-set equation, and the
    result is checked as a homomorphism regardless of how b) was tested.
    """
    from .errors import VerificationFailed
    from .extension import stem_factor_algebra, omega_one
    from .pairs import epsilon_condition

    bad = verify_certificate(p1, p2, cert)
    if bad is not None:
        raise CertificateInvalid(bad)
    for label, p in (("m1", p1), ("m2", p2)):
        if not is_stem(full_pair_of_ideal(p)):
            return ConditionFailed("a", f"{label} is not a stem algebra")
    eps = epsilon_condition(p1.q, p1.m.space, epsilon_mode)
    if not eps.passed:
        return ConditionFailed("b", "[x,y] and [y,x] are not parallel on m1")
    tau2 = corollary2_check(p1, p2, cert)
    if isinstance(tau2, CertificateViolation):
        raise CertificateInvalid(tau2)
    f = p1.field
    sf1, sf2 = stem_factor_algebra(p1), stem_factor_algebra(p2)
    om = omega_one(sf1, sf2, cert)
    # tau2 in the coordinates of the extension bases
    tz = sf2.z_to_base @ tau2.matrix @ sf1.base_to_z
    r1, s1 = sf1.ext.provenance.base.dim, sf1.ext.provenance.quotient.dim
    r2, s2 = sf2.ext.provenance.base.dim, sf2.ext.provenance.quotient.dim
    fd1, fd2 = sf1.ext.provenance, sf2.ext.provenance
    # unknown d: s2 -> r2, solve tau2 f(a,b) + d(om [a,b]) = g(om a, om b)
    unknowns = r2 * s2
    eq_rows, rhs = [], []
    for a in range(s1):
        for b in range(s1):
            ea, eb = fd1.quotient.basis(a), fd1.quotient.basis(b)
            prod = om.apply(fd1.quotient.table[a][b])
            target = fd2.f_value(om.apply(ea), om.apply(eb))
            known = tz.apply(fd1.f_value(ea, eb))
            diff = vec_sub(f, target, known)
            for row in range(r2):
                coeffs = [f.zero] * unknowns
                for col in range(s2):
                    coeffs[row * s2 + col] = prod[col]
                eq_rows.append(coeffs)
                rhs.append(diff[row])
    from .exactla import solve

    if unknowns:
        sol = solve(Matrix.from_rows(f, eq_rows, unknowns), rhs) if eq_rows else None
        if sol is None and eq_rows:
            raise VerificationFailed("the factor-set equation has no solution for d")
        vals = sol.particular if sol is not None else (f.zero,) * unknowns
        d = Matrix.from_rows(f, [vals[row * s2 : (row + 1) * s2] for row in range(r2)], s2)
    else:
        d = Matrix.zeros(f, r2, s2)
    top = tz.hstack(d @ om)
    bottom = Matrix.zeros(f, s2, r1).hstack(om)
    lam = Matrix(f, top.rows + bottom.rows, r1 + s1)
    viol = hom_check(lam, sf1.ext.algebra, sf2.ext.algebra)
    if viol is not None:
        raise VerificationFailed(f"lambda is not a homomorphism at basis pair ({viol.i + 1},{viol.j + 1})")
    lam_m = sf2.iso.matrix @ lam @ sf1.iso.matrix.inverse()
    viol = hom_check(lam_m, sf1.base_m, sf2.base_m)
    if viol is not None or not lam_m.is_invertible():
        raise VerificationFailed("transported lambda is not an isomorphism m1 -> m2")
    return Iso(
        LinearMap(lam, "lambda", sf1.ext.algebra, sf2.ext.algebra),
        LinearMap(lam_m, "lambda on m", sf1.base_m, sf2.base_m),
        d,
        eps,
    )


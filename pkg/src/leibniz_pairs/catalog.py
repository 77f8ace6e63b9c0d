"""Built-in example algebras and pairs with their published invariant values.

Each entry ships the claimed values as ``claim.*`` metadata.  The claims are
recomputed on access; an entry whose claim disagrees with the computation is
``disputed`` and both values are reported rather than either being dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from importlib import resources

from .algebra import LeibnizAlgebra, check_leibniz, format_vector
from .exactla import Subspace
from .fileformat import AlgebraFile, parse_algebra, parse_vector_list
from .pairs import BASIS_PAIRS, Pair, epsilon_condition, is_stem

NAMES = ("2d", "2e", "3a", "A1", "A7", "L26", "L40", "lambda", "L16", "abelian3")


def format_subspace(s: Subspace, names) -> str:
    if s.is_zero():
        return "0"
    return "span{" + ", ".join(format_vector(s.field, v, names) for v in s.basis) + "}"


@dataclass(frozen=True)
class Dispute:
    key: str
    claimed: str
    computed: str


@dataclass
class CatalogEntry:
    name: str
    text: str

    @cached_property
    def file(self) -> AlgebraFile:
        return parse_algebra(self.text)

    @property
    def meta(self) -> dict:
        return self.file.meta_dict()

    @property
    def description(self) -> str:
        return self.meta.get("description", "")

    @cached_property
    def is_leibniz(self) -> bool:
        return check_leibniz(self.file.to_algebra()) is None

    @cached_property
    def algebra(self) -> LeibnizAlgebra:
        """Validated when the table satisfies its identity, raw otherwise."""
        alg = self.file.to_algebra()
        return alg.validated() if self.is_leibniz else alg

    @cached_property
    def pair(self) -> Pair | None:
        if not self.is_leibniz:
            return None
        ideal = self.file.ideal
        if ideal is None:
            return Pair.full(self.algebra)
        return Pair.of(self.algebra, ideal)

    @property
    def claims(self) -> dict:
        return {k[len("claim.") :]: v for k, v in self.meta.items() if k.startswith("claim.")}

    def _claimed_space(self, text: str) -> Subspace:
        f = self.file
        return Subspace.span(f.field, f.dim, parse_vector_list(f.field, f.names, text))

    def _epsilon_basis(self) -> dict:
        rep = epsilon_condition(self.algebra, mode=BASIS_PAIRS)
        names = self.algebra.names
        return {(names[i], names[j]): e for (i, j), e in rep.epsilons.items()}

    def _claimed_epsilons(self, text: str) -> dict:
        f = self.file.field
        out = {}
        for item in text.split(";"):
            if item.strip():
                key, val = item.split(":")
                a, b = key.strip().split(",")
                out[(a, b)] = f.parse(val.strip())
        return out

    @cached_property
    def disputes(self) -> list[Dispute]:
        out = []
        names = self.file.names
        for key, claimed in self.claims.items():
            if key == "leibniz":
                if (claimed == "true") != self.is_leibniz:
                    out.append(Dispute(key, claimed, str(self.is_leibniz).lower()))
                continue
            if key in ("z_lie", "k_lie", "stem") and self.pair is None:
                out.append(Dispute(key, claimed, "undefined (not a Leibniz algebra)"))
                continue
            if key == "z_lie":
                got = self.pair.z_lie
            elif key == "k_lie":
                got = self.pair.k_lie.space
            elif key == "stem":
                got_stem = is_stem(self.pair)
                if (claimed == "true") != got_stem:
                    out.append(Dispute(key, claimed, str(got_stem).lower()))
                continue
            elif key == "epsilon":
                ok = bool(epsilon_condition(self.algebra))
                if (claimed == "true") != ok:
                    out.append(Dispute(key, claimed, str(ok).lower()))
                continue
            elif key == "epsilon_basis":
                got_eps = self._epsilon_basis()
                if got_eps != self._claimed_epsilons(claimed):
                    shown = "; ".join(f"{a},{b}:{self.file.field.fmt(e)}" for (a, b), e in sorted(got_eps.items()))
                    out.append(Dispute(key, claimed, shown))
                continue
            else:
                continue
            want = self._claimed_space(claimed)
            if want != got:
                out.append(Dispute(key, format_subspace(want, names), format_subspace(got, names)))
        return out

    @property
    def disputed(self) -> bool:
        return bool(self.disputes)


def _load(name: str) -> CatalogEntry:
    text = resources.files(__package__).joinpath("data", "catalog", f"{name}.alg").read_text()
    return CatalogEntry(name, text)


def catalog() -> dict[str, CatalogEntry]:
    return {name: _load(name) for name in NAMES}


def certificate_text(name: str) -> str:
    return resources.files(__package__).joinpath("data", "certs", f"{name}.cert").read_text()

"""Plain-text formats for algebras, pairs, certificates and factor sets.

Algebra files are line based; ``#`` starts a comment::

    field Q                  # or: field GF 3
    dim 3
    basis a1 a2 a3           # optional, defaults to e1 ... en
    [1,3] = 1*1              # 1-based indices or basis names
    [2,2] = 1/2*a1 + -1*3
    ideal 1*1; a2            # optional pair declaration
    meta convention right    # free-form key/value metadata

Unstated brackets are zero.  ``meta convention left`` selects the mirrored
Leibniz identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import LeibnizAlgebra, default_names
from .errors import ParseError
from .exactla import Field, Matrix, Subspace, zero_vector

_TERM = re.compile(r"([+-]*)([^+-]+)")
_REL = re.compile(r"^\[\s*([^,\]]+?)\s*,\s*([^\]]+?)\s*\]\s*=\s*(.*)$")


@dataclass
class AlgebraFile:
    field: Field
    dim: int
    names: tuple
    relations: dict  # (i, j) -> coordinate vector, 0-based
    ideal: list | None = None  # generators, coordinate vectors
    meta: list = dc_field(default_factory=list)  # (key, value) in file order

    @property
    def convention(self) -> str:
        for k, v in self.meta:
            if k == "convention":
                return v
        return "right"

    def meta_dict(self) -> dict:
        return dict(self.meta)

    def to_algebra(self) -> LeibnizAlgebra:
        return LeibnizAlgebra.from_brackets(self.field, self.dim, self.relations, self.names, self.convention)

    def ideal_space(self) -> Subspace | None:
        if self.ideal is None:
            return None
        return Subspace.span(self.field, self.dim, self.ideal)

    def semantic(self):
        """Content compared by the round-trip property."""
        nonzero = {k: tuple(v) for k, v in self.relations.items() if any(v)}
        return (self.field, self.dim, tuple(self.names), nonzero, self.ideal_space(), tuple(self.meta))


def _parse_field(parts, lineno):
    if len(parts) == 2 and parts[1] == "Q":
        return Field(0)
    m = re.fullmatch(r"GF\(?(\d+)\)?", "".join(parts[1:]))
    if m:
        try:
            return Field(int(m.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    raise ParseError(f"bad field specification {' '.join(parts[1:])!r}", lineno)


class _Ctx:
    def __init__(self):
        self.field = None
        self.dim = None
        self.names = None

    def index(self, token: str, lineno: int) -> int:
        token = token.strip()
        if self.dim is None:
            raise ParseError("'dim' must come before relations", lineno)
        if token.isdigit():
            k = int(token)
            if not 1 <= k <= self.dim:
                raise ParseError(f"index {k} out of range 1..{self.dim}", lineno)
            return k - 1
        names = self.names or default_names(self.dim)
        if token in names:
            return names.index(token)
        raise ParseError(f"unknown basis element {token!r}", lineno)

    def vector(self, text: str, lineno: int):
        f = self.field
        out = list(zero_vector(f, self.dim))
        compact = text.replace(" ", "").replace("\t", "")
        if compact in ("", "0"):
            return tuple(out)
        pos = 0
        for m in _TERM.finditer(compact):
            if m.start() != pos:
                raise ParseError(f"cannot parse {text!r}", lineno)
            pos = m.end()
            signs, body = m.group(1), m.group(2)
            neg = signs.count("-") % 2 == 1
            if "*" in body:
                coeff_text, atom = body.split("*", 1)
                try:
                    c = f.parse(coeff_text)
                except (ValueError, ZeroDivisionError):
                    raise ParseError(f"bad coefficient {coeff_text!r}", lineno) from None
            else:
                c, atom = f.one, body
            k = self.index(atom, lineno)
            if neg:
                c = f.neg(c)
            out[k] = f.add(out[k], c)
        if pos != len(compact):
            raise ParseError(f"cannot parse {text!r}", lineno)
        return tuple(out)


def parse_algebra(text: str) -> AlgebraFile:
    ctx = _Ctx()
    relations = {}
    ideal = None
    meta = []
    pending = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "field":
            if ctx.field is not None:
                raise ParseError("duplicate 'field' line", lineno)
            ctx.field = _parse_field(parts, lineno)
        elif head == "dim":
            if ctx.dim is not None:
                raise ParseError("duplicate 'dim' line", lineno)
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("'dim' takes one non-negative integer", lineno)
            ctx.dim = int(parts[1])
        elif head == "basis":
            if ctx.dim is None:
                raise ParseError("'dim' must come before 'basis'", lineno)
            names = tuple(parts[1:])
            if len(names) != ctx.dim:
                raise ParseError(f"'basis' lists {len(names)} names for dimension {ctx.dim}", lineno)
            if len(set(names)) != len(names):
                raise ParseError("basis names must be distinct", lineno)
            for n in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", n):
                    raise ParseError(f"bad basis name {n!r}", lineno)
            ctx.names = names
        elif head == "meta":
            if len(parts) < 2:
                raise ParseError("'meta' needs a key", lineno)
            meta.append((parts[1], " ".join(parts[2:])))
        elif head == "ideal":
            pending.append(("ideal", line[len("ideal") :], lineno))
        elif line.startswith("["):
            pending.append(("rel", line, lineno))
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno)
    if ctx.field is None:
        raise ParseError("missing 'field' line")
    if ctx.dim is None:
        raise ParseError("missing 'dim' line")
    for kind, body, lineno in pending:
        if kind == "rel":
            m = _REL.match(body)
            if not m:
                raise ParseError(f"bad relation {body!r}", lineno)
            i, j = ctx.index(m.group(1), lineno), ctx.index(m.group(2), lineno)
            if (i, j) in relations:
                raise ParseError(f"duplicate relation for [{i + 1},{j + 1}]", lineno)
            relations[(i, j)] = ctx.vector(m.group(3), lineno)
        else:
            if ideal is not None:
                raise ParseError("duplicate 'ideal' line", lineno)
            ideal = [ctx.vector(v, lineno) for v in body.split(";") if v.strip()]
    names = ctx.names or default_names(ctx.dim)
    conv = dict(meta).get("convention", "right")
    if conv not in ("right", "left"):
        raise ParseError(f"unknown convention {conv!r}")
    return AlgebraFile(ctx.field, ctx.dim, names, relations, ideal, meta)


def _coeff(f: Field, c) -> str:
    return f.fmt(c)


def format_terms(f: Field, v: Sequence) -> str:
    terms = [f"{_coeff(f, c)}*{k + 1}" for k, c in enumerate(v) if c]
    return " + ".join(terms) if terms else "0"


def serialize_algebra(af: AlgebraFile) -> str:
    lines = [f"field {af.field.p and f'GF {af.field.p}' or 'Q'}", f"dim {af.dim}"]
    if af.dim:
        lines.append("basis " + " ".join(af.names))
    for (i, j) in sorted(af.relations):
        v = af.relations[(i, j)]
        if any(v):
            lines.append(f"[{i + 1},{j + 1}] = {format_terms(af.field, v)}")
    if af.ideal is not None:
        lines.append("ideal " + "; ".join(format_terms(af.field, v) for v in af.ideal))
    for k, v in af.meta:
        lines.append(f"meta {k} {v}".rstrip())
    return "\n".join(lines) + "\n"


def algebra_file_from(alg: LeibnizAlgebra, ideal: Subspace | None = None, meta: Sequence = ()) -> AlgebraFile:
    rel = {(i, j): tuple(v) for i, j, v in alg.nonzero_products()}
    meta = list(meta)
    if alg.convention != "right" and not any(k == "convention" for k, _ in meta):
        meta.insert(0, ("convention", alg.convention))
    return AlgebraFile(alg.field, alg.dim, alg.names, rel, None if ideal is None else list(ideal.basis), meta)


def load_pair_parts(text: str):
    """``(algebra, ideal subspace or None, AlgebraFile)`` from file text."""
    af = parse_algebra(text)
    return af.to_algebra(), af.ideal_space(), af


# ---------------------------------------------------------------- matrix blocks


def parse_blocks(text: str, field: Field) -> dict:
    """Named matrix blocks: a ``name:`` header followed by one row per line."""
    blocks = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"([A-Za-z_]\w*)\s*:\s*(.*)", line)
        if m:
            name, rest = m.group(1), m.group(2).strip()
            if name in blocks:
                raise ParseError(f"duplicate block {name!r}", lineno)
            if name == "mode":
                blocks["mode"] = rest
                current = None
                continue
            blocks[name] = []
            current = name
            if rest:
                raise ParseError("matrix rows go on the lines after the block header", lineno)
            continue
        if current is None:
            raise ParseError("matrix row outside a block", lineno)
        try:
            row = tuple(field.parse(t) for t in line.split())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad matrix entry in {line!r}", lineno) from None
        if blocks[current] and len(row) != len(blocks[current][0]):
            raise ParseError("ragged matrix rows", lineno)
        blocks[current].append(row)
    out = {}
    for name, rows in blocks.items():
        if name == "mode":
            out[name] = rows
        elif rows:
            out[name] = Matrix.from_rows(field, rows)
        else:
            out[name] = Matrix.zeros(field, 0, 0)
    return out


def serialize_blocks(blocks: dict) -> str:
    lines = []
    for name, m in blocks.items():
        if name == "mode":
            lines.append(f"mode: {m}")
            continue
        lines.append(f"{name}:")
        for row in m.rows:
            lines.append(" ".join(m.field.fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str, field: Field):
    from .isoclinism import STRICT, IsoclinismCertificate

    blocks = parse_blocks(text, field)
    if "alpha" not in blocks or "beta" not in blocks:
        raise ParseError("certificate needs 'alpha:' and 'beta:' blocks")
    mode = blocks.get("mode", STRICT)
    if mode not in ("strict", "linear"):
        raise ParseError(f"unknown mode {mode!r}")
    return IsoclinismCertificate(blocks["alpha"], blocks["beta"], mode)


def serialize_certificate(cert) -> str:
    blocks = {"alpha": cert.alpha, "beta": cert.beta}
    if cert.mode != "strict":
        blocks = {"mode": cert.mode, **blocks}
    return serialize_blocks(blocks)


# ---------------------------------------------------------------- factor sets


def serialize_factor_set(d) -> str:
    f = d.field
    lines = [f"field {f.p and f'GF {f.p}' or 'Q'}"]
    if d.convention != "right":
        lines.append(f"meta convention {d.convention}")
    for label, alg in (("base", d.base), ("quotient", d.quotient)):
        lines.append(f"{label} dim {alg.dim}")
        if alg.dim:
            lines.append(f"{label} basis " + " ".join(alg.names))
        for i, j, v in alg.nonzero_products():
            lines.append(f"{label} [{i + 1},{j + 1}] = {format_terms(f, v)}")
    for a in range(d.quotient.dim):
        for b in range(d.quotient.dim):
            if any(d.f[a][b]):
                lines.append(f"f [{a + 1},{b + 1}] = {format_terms(f, d.f[a][b])}")
    for label, mats in (("L", d.left), ("R", d.right)):
        for a, m in enumerate(mats):
            for i in range(d.base.dim):
                col = m.column(i)
                if any(col):
                    lines.append(f"{label} [{a + 1},{i + 1}] = {format_terms(f, col)}")
    return "\n".join(lines) + "\n"


def parse_factor_set(text: str):
    from .extension import FactorSetData

    field = None
    meta = []
    sections = {"base": [], "quotient": []}
    dims = {}
    rest = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "field":
            field = _parse_field(parts, lineno)
        elif parts[0] == "meta":
            meta.append((parts[1], " ".join(parts[2:])) if len(parts) > 1 else ("", ""))
        elif parts[0] in sections:
            body = line[len(parts[0]) :].strip()
            if body.startswith("dim"):
                dims[parts[0]] = body
            sections[parts[0]].append((body, lineno))
        elif parts[0] in ("f", "L", "R"):
            rest.append((parts[0], line[1:].strip(), lineno))
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno)
    if field is None:
        raise ParseError("missing 'field' line")
    conv = dict(meta).get("convention", "right")
    algs = {}
    ctxs = {}
    for label in ("base", "quotient"):
        body = [f"field {field.p and f'GF {field.p}' or 'Q'}", f"meta convention {conv}"]
        body += [b for b, _ in sections[label]]
        if label not in dims:
            raise ParseError(f"missing '{label} dim' line")
        try:
            af = parse_algebra("\n".join(body))
        except ParseError as exc:
            raise ParseError(f"in {label} section: {exc}") from None
        algs[label] = af.to_algebra()
        ctx = _Ctx()
        ctx.field, ctx.dim, ctx.names = field, af.dim, af.names
        ctxs[label] = ctx
    base, quot = algs["base"], algs["quotient"]
    r, s = base.dim, quot.dim
    ftab = [[zero_vector(field, r) for _ in range(s)] for _ in range(s)]
    acts = {"L": [[zero_vector(field, r) for _ in range(r)] for _ in range(s)],
            "R": [[zero_vector(field, r) for _ in range(r)] for _ in range(s)]}
    seen = set()
    for kind, body, lineno in rest:
        m = _REL.match(body)
        if not m:
            raise ParseError(f"bad {kind} line", lineno)
        a = ctxs["quotient"].index(m.group(1), lineno)
        if kind == "f":
            b = ctxs["quotient"].index(m.group(2), lineno)
        else:
            b = ctxs["base"].index(m.group(2), lineno)
        if (kind, a, b) in seen:
            raise ParseError(f"duplicate {kind} entry", lineno)
        seen.add((kind, a, b))
        v = ctxs["base"].vector(m.group(3), lineno)
        if kind == "f":
            ftab[a][b] = v
        else:
            acts[kind][a][b] = v
    def mats(cols):
        return tuple(Matrix.from_columns(field, c, r) if r else Matrix.zeros(field, 0, 0) for c in cols)
    return FactorSetData(base, quot, tuple(tuple(row) for row in ftab), mats(acts["L"]), mats(acts["R"]))


def parse_vector_list(field: Field, names: Sequence[str], text: str) -> list:
    """``"a1 + 2*a3; a2"`` -> coordinate vectors (``"0"`` alone gives none)."""
    ctx = _Ctx()
    ctx.field, ctx.dim, ctx.names = field, len(names), tuple(names)
    out = []
    for part in text.split(";"):
        if part.strip():
            v = ctx.vector(part, None)
            if any(v):
                out.append(v)
    return out

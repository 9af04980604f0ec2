"""Line-oriented ideal files.

::

    # comments run to the end of a line
    field Fps 2 s        # or: field Q | field Fp 5
    vars x y             # commas are accepted as separators
    gens
    x^2 - s

Exactly one ideal per file; the field is declared in the file so every
report is self-describing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .fields import Field, PrimeField, RationalFunctionField, Rationals
from .ideal import AffineIdeal
from .parsing import parse_polynomial
from .polynomial import Polynomial, PolyRing

ARC_PARAMETER = "t"
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class IdealFile:
    field: Field
    ring: PolyRing
    ideal: AffineIdeal
    texts: tuple[str, ...]
    source: str = "<string>"

    @property
    def generators(self) -> tuple[Polynomial, ...]:
        return self.ideal.generators


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _parse_field(words: list[str], lineno: int, line: str) -> Field:
    def col(k):
        return line.index(words[k]) + 1 if k < len(words) else len(line) + 1

    kind = words[1] if len(words) > 1 else None
    try:
        if kind == "Q" and len(words) == 2:
            return Rationals()
        if kind == "Fp" and len(words) == 3:
            return PrimeField(int(words[2]))
        if kind == "Fps" and len(words) in (3, 4):
            param = words[3] if len(words) == 4 else "s"
            if not _NAME.match(param) or param == ARC_PARAMETER:
                raise ParseError(f"invalid field parameter {param!r}", lineno, col(3))
            return RationalFunctionField(int(words[2]), param)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad field declaration: {exc}", lineno, col(2)) from None
    raise ParseError("expected 'field Q', 'field Fp <p>' or 'field Fps <p> <param>'", lineno, col(1))


def parse_ideal_text(text: str, source: str = "<string>") -> IdealFile:
    field = ring = None
    gens: list[Polynomial] = []
    texts: list[str] = []
    in_gens = False
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last = lineno
        line = _strip(raw)
        if not line.strip():
            continue
        if in_gens:
            gens.append(parse_polynomial(line, ring, line=lineno))
            texts.append(line.strip())
            continue
        words = line.split()
        head = words[0]
        if head == "field":
            if field is not None:
                raise ParseError("duplicate field line", lineno, line.index(head) + 1)
            field = _parse_field(words, lineno, line)
        elif head == "vars":
            if field is None:
                raise ParseError("the field line must come before vars", lineno, line.index(head) + 1)
            if ring is not None:
                raise ParseError("duplicate vars line", lineno, line.index(head) + 1)
            rest = line[line.index(head) + 4:]
            names = [w for w in re.split(r"[\s,]+", rest) if w]
            if not names:
                raise ParseError("vars line names no variables", lineno, len(line) + 1)
            seen = set()
            for name in names:
                col = line.index(name, line.index(head) + 4) + 1
                if not _NAME.match(name):
                    raise ParseError(f"invalid variable name {name!r}", lineno, col)
                if name == ARC_PARAMETER:
                    raise ParseError("'t' is reserved for arcs", lineno, col)
                if name == getattr(field, "parameter", None):
                    raise ParseError(f"variable {name!r} clashes with the field parameter", lineno, col)
                if name in seen:
                    raise ParseError(f"duplicate variable {name!r}", lineno, col)
                seen.add(name)
            ring = PolyRing(names, field)
        elif head == "gens":
            if ring is None:
                raise ParseError("the vars line must come before gens", lineno, line.index(head) + 1)
            if len(words) > 1:
                raise ParseError("generators go on the lines after 'gens'", lineno, line.index(words[1]) + 1)
            in_gens = True
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, line.index(head) + 1)
    if not in_gens:
        missing = "field" if field is None else "vars" if ring is None else "gens"
        raise ParseError(f"missing '{missing}' section", last or 1, None)
    if not gens:
        raise ParseError("at least one generator is required", last, None)
    if all(g.is_zero() for g in gens):
        raise ParseError("every generator is zero; the zero ideal is not a valid input", last, None)
    return IdealFile(field, ring, AffineIdeal(ring, gens), tuple(texts), source)


def read_ideal_file(path: str | Path) -> IdealFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not valid UTF-8: {exc}") from None
    return parse_ideal_text(text, str(path))


def format_ideal_file(ideal: AffineIdeal, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"field {ideal.field.describe()}")
    lines.append("vars " + " ".join(ideal.ring.names))
    lines.append("gens")
    lines.extend(str(g) for g in ideal.generators)
    return "\n".join(lines) + "\n"


def parse_arc(text: str, ring: PolyRing, precision: int):
    """Parse ``"x=t^3; y=t^2"`` into an :class:`~jetlct.jets.Arc`.

    Every ring variable must be assigned exactly once.
    """
    from .jets import Arc

    tring = PolyRing([ARC_PARAMETER], ring.field)
    comps: dict[str, Polynomial] = {}
    offset = 0
    for part in text.split(";"):
        start = offset
        offset += len(part) + 1
        if not part.strip():
            continue
        name, eq, rhs = part.partition("=")
        name = name.strip()
        col = start + part.index(name) + 1 if name else start + 1
        if not eq:
            raise ParseError(f"expected 'var = polynomial in t' in {part.strip()!r}", None, col)
        if name not in ring.names:
            raise ParseError(f"unknown variable {name!r} in arc", None, col)
        if name in comps:
            raise ParseError(f"variable {name!r} assigned twice", None, col)
        try:
            comps[name] = parse_polynomial(rhs, tring)
        except ParseError as exc:
            shift = start + part.index("=") + 1
            raise ParseError(exc.message, None, None if exc.column is None else exc.column + shift) from None
    missing = [n for n in ring.names if n not in comps]
    if missing:
        raise ParseError(f"arc does not assign {', '.join(missing)}")
    return Arc.from_polynomials([comps[n] for n in ring.names], precision)

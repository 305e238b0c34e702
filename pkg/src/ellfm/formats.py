"""Parsing and rendering for the command line front end.

Three inputs live here: the curve-object literal grammar, the
comma-separated matrix and class vectors, and the TOML geometry
files (with two bundled presets).  Rendering is the exact inverse of
parsing on canonical forms, which the tests rely on.

Literal grammar:

    object := term ('+' term)*
    term   := [count '*'] '(' int ',' int [',' label] ')' ['[' int ']']

with count >= 1, omitted degree meaning 0, label an identifier, and
the single character ``0`` denoting the zero object.  Whitespace is
allowed between tokens.
"""

from __future__ import annotations

import importlib.resources
import os

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .curve import GradedObject, StableAtom
from .lattice import CurveClass, DomainError, FMMatrix, SurfaceClass, SurfaceGeometry


class LiteralParseError(ValueError):
    """A malformed literal; the message names the failing position."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class GeometryFileError(ValueError):
    """A geometry document that does not even reach invariant checking."""


# ---------------------------------------------------------------------------
# object literals
# ---------------------------------------------------------------------------


class _Scanner:
    """Cursor over a literal with whitespace skipping."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise LiteralParseError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def integer(self) -> int:
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        digits = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if self.pos == digits:
            found = self.peek() or "end of input"
            raise LiteralParseError(f"expected an integer, found {found!r}", start)
        return int(self.text[start:self.pos])

    def identifier(self) -> str:
        start = self.pos
        ch = self.peek()
        if not (ch.isalpha() or ch == "_"):
            found = ch or "end of input"
            raise LiteralParseError(f"expected a label, found {found!r}", start)
        while True:
            ch = self.peek()
            if ch.isalnum() or ch == "_":
                self.pos += 1
            else:
                break
        return self.text[start:self.pos]


def _parse_term(s: _Scanner) -> tuple[int, int, StableAtom]:
    """One term; returns (count, degree, atom)."""
    s.skip_ws()
    count = 1
    if s.peek().isdigit():
        at = s.pos
        count = s.integer()
        if count < 1:
            raise LiteralParseError(f"count must be >= 1, got {count}", at)
        s.skip_ws()
        s.expect("*")
        s.skip_ws()
    open_at = s.pos
    s.expect("(")
    s.skip_ws()
    r = s.integer()
    s.skip_ws()
    s.expect(",")
    s.skip_ws()
    d = s.integer()
    s.skip_ws()
    label = ""
    if s.peek() == ",":
        s.pos += 1
        s.skip_ws()
        label = s.identifier()
        s.skip_ws()
    s.expect(")")
    try:
        atom = StableAtom(CurveClass(r, d), label)
    except DomainError as exc:
        raise LiteralParseError(str(exc), open_at) from exc
    degree = 0
    s.skip_ws()
    if s.peek() == "[":
        s.pos += 1
        s.skip_ws()
        degree = s.integer()
        s.skip_ws()
        s.expect("]")
    return count, degree, atom


def parse_object(text: str) -> GradedObject:
    """Parse a literal into a GradedObject (canonical ordering applied)."""
    s = _Scanner(text)
    s.skip_ws()
    if s.peek() == "0":
        zero_at = s.pos
        s.pos += 1
        s.skip_ws()
        if s.pos != len(s.text):
            raise LiteralParseError(
                "the zero object '0' admits no further terms", zero_at
            )
        return GradedObject.from_pairs(())
    pairs: list[tuple[int, StableAtom]] = []
    while True:
        count, degree, atom = _parse_term(s)
        pairs.extend((degree, atom) for _ in range(count))
        s.skip_ws()
        if s.peek() == "+":
            s.pos += 1
            continue
        break
    if s.pos != len(s.text):
        raise LiteralParseError(f"unexpected trailing {s.peek()!r}", s.pos)
    return GradedObject.from_pairs(pairs)


def parse_atom(text: str) -> StableAtom:
    """Parse a single bare atom: one term, count 1, degree 0."""
    s = _Scanner(text)
    count, degree, atom = _parse_term(s)
    s.skip_ws()
    if s.pos != len(s.text):
        raise LiteralParseError(f"unexpected trailing {s.peek()!r}", s.pos)
    if count != 1 or degree != 0:
        raise LiteralParseError(
            "expected a single atom without count or degree decoration", 0
        )
    return atom


def render_object(obj: GradedObject) -> str:
    """Canonical literal for a GradedObject; inverse of parse_object."""
    if obj.is_zero:
        return "0"
    terms = []
    for degree, atoms in obj.layers:
        run: list[tuple[StableAtom, int]] = []
        for atom in atoms:
            if run and run[-1][0] == atom:
                run[-1] = (atom, run[-1][1] + 1)
            else:
                run.append((atom, 1))
        for atom, count in run:
            inner = f"({atom.cls.r},{atom.cls.d},{atom.label})" if atom.label else f"({atom.cls.r},{atom.cls.d})"
            prefix = f"{count}*" if count > 1 else ""
            terms.append(f"{prefix}{inner}[{degree}]")
    return "+".join(terms)


# ---------------------------------------------------------------------------
# matrices, vectors, surface classes
# ---------------------------------------------------------------------------


def _split_ints(text: str, what: str) -> list[int]:
    parts = text.split(",")
    values = []
    for idx, part in enumerate(parts):
        stripped = part.strip()
        try:
            values.append(int(stripped, 10))
        except ValueError:
            raise LiteralParseError(
                f"{what} needs integers, found {stripped!r} in field {idx + 1}",
                idx + 1,
            ) from None
    return values


def parse_matrix(text: str, lam: int | None = None) -> FMMatrix:
    """Parse a row-major "c,a,d,b" matrix flag."""
    values = _split_ints(text, "matrix")
    if len(values) != 4:
        raise LiteralParseError(
            f"matrix needs exactly four entries c,a,d,b, got {len(values)}", 1
        )
    c, a, d, b = values
    return FMMatrix(c=c, a=a, d=d, b=b, lambda_constraint=lam)


def render_matrix(m: FMMatrix) -> str:
    return f"{m.c},{m.a},{m.d},{m.b}"


def parse_vector(text: str, rank: int, what: str = "vector") -> tuple[int, ...]:
    values = _split_ints(text, what)
    if len(values) != rank:
        raise LiteralParseError(
            f"{what} needs {rank} coordinates, got {len(values)}", 1
        )
    return tuple(values)


def parse_surface_class(text: str, rank: int) -> SurfaceClass:
    """Parse "r,c1...,c2": rank, then ``rank`` c1 coordinates, then c2."""
    values = _split_ints(text, "surface class")
    if len(values) != rank + 2:
        raise LiteralParseError(
            f"surface class needs {rank + 2} fields (r, {rank} c1 coordinates, c2), "
            f"got {len(values)}",
            1,
        )
    return SurfaceClass(r=values[0], c1=tuple(values[1:-1]), c2=values[-1])


def render_profile(entries: dict[int, int]) -> str:
    """Human form of an Ext profile: ``{0:1,1:1}`` with sorted degrees."""
    inner = ",".join(f"{i}:{v}" for i, v in sorted(entries.items()))
    return "{" + inner + "}"


# ---------------------------------------------------------------------------
# geometry files
# ---------------------------------------------------------------------------

GEOMETRY_PRESETS = ("rational", "lambda2")

_REQUIRED_KEYS = ("rank", "gram", "f", "K", "chiO", "q")


def geometry_from_mapping(doc: dict, source: str) -> SurfaceGeometry:
    """Build a SurfaceGeometry from decoded TOML, checking the shape."""
    missing = [k for k in _REQUIRED_KEYS if k not in doc]
    if missing:
        raise GeometryFileError(
            f"{source}: missing geometry keys: {', '.join(missing)}"
        )
    extra = [k for k in doc if k not in _REQUIRED_KEYS]
    if extra:
        raise GeometryFileError(
            f"{source}: unknown geometry keys: {', '.join(sorted(extra))}"
        )
    rank, gram, f, K = doc["rank"], doc["gram"], doc["f"], doc["K"]
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise GeometryFileError(f"{source}: rank must be an integer")
    if not isinstance(gram, list) or not all(isinstance(row, list) for row in gram):
        raise GeometryFileError(f"{source}: gram must be a matrix (list of lists)")
    for name, vec in (("f", f), ("K", K)):
        if not isinstance(vec, list):
            raise GeometryFileError(f"{source}: {name} must be a list of integers")
    for name in ("chiO", "q"):
        if not isinstance(doc[name], int) or isinstance(doc[name], bool):
            raise GeometryFileError(f"{source}: {name} must be an integer")
    return SurfaceGeometry(
        rank=rank,
        gram=tuple(tuple(row) for row in gram),
        f=tuple(f),
        K=tuple(K),
        chi=doc["chiO"],
        q=doc["q"],
    )


def _load_toml_bytes(data: bytes, source: str) -> SurfaceGeometry:
    try:
        doc = tomllib.loads(data.decode("utf-8"))
    except (tomllib.TOMLDecodeError, UnicodeDecodeError) as exc:
        raise GeometryFileError(f"{source}: not valid TOML: {exc}") from exc
    return geometry_from_mapping(doc, source)


def bundled_geometry(name: str) -> SurfaceGeometry:
    """Load one of the shipped presets by name."""
    if name not in GEOMETRY_PRESETS:
        raise GeometryFileError(
            f"unknown geometry preset {name!r}; bundled: {', '.join(GEOMETRY_PRESETS)}"
        )
    data = (
        importlib.resources.files("ellfm")
        .joinpath("data", f"{name}.toml")
        .read_bytes()
    )
    return _load_toml_bytes(data, f"preset {name}")


def load_geometry(source: str) -> SurfaceGeometry:
    """Resolve a --geometry flag: a preset name or a TOML file path."""
    if source in GEOMETRY_PRESETS:
        return bundled_geometry(source)
    if not os.path.exists(source):
        raise GeometryFileError(
            f"geometry file not found: {source!r} (and it is not one of the "
            f"presets: {', '.join(GEOMETRY_PRESETS)})"
        )
    with open(source, "rb") as handle:
        return _load_toml_bytes(handle.read(), source)

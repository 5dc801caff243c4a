"""Variety presentations: built-in catalog and file loader."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .terms import Context, Polynomial, Signature, is_polylinear, parse_polynomial, read_identity_lines, render


class VarietyError(ValueError):
    pass


@dataclass(frozen=True)
class VarietyPresentation:
    nops: int
    identities: tuple[tuple[str, Polynomial], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        for fid, f in self.identities:
            ok, n = is_polylinear(f)
            if not ok:
                raise VarietyError(f"identity {fid} is not polylinear: {render(f)}")
            if n < 2:
                raise VarietyError(f"identity {fid} has degree {n} < 2")

    @property
    def signature(self) -> Signature:
        return Signature(self.nops, Context.OMEGA)

    def polynomials(self) -> list[Polynomial]:
        return [f for _, f in self.identities]


def _from_lines(name: str, nops: int, lines: list[str]) -> VarietyPresentation:
    sig = Signature(nops, Context.OMEGA)
    polys = [parse_polynomial(line, sig) for line in lines]
    return VarietyPresentation(nops, tuple((f"f{k}", p) for k, p in enumerate(polys, start=1)), name)


ASSOCIATOR = "(x1 *1 (x2 *1 x3)) - ((x1 *1 x2) *1 x3)"

_BUILTIN = {
    "associative": (1, [ASSOCIATOR]),
    "commutative": (1, ["(x1 *1 x2) - (x2 *1 x1)", ASSOCIATOR]),
    "lie": (
        1,
        [
            "(x1 *1 x2) + (x2 *1 x1)",
            "((x1 *1 x2) *1 x3) + ((x2 *1 x3) *1 x1) + ((x3 *1 x1) *1 x2)",
        ],
    ),
    # *1 commutative associative, *2 Lie, linked by the Leibniz rule
    "poisson": (
        2,
        [
            "(x1 *1 x2) - (x2 *1 x1)",
            ASSOCIATOR,
            "(x1 *2 x2) + (x2 *2 x1)",
            "((x1 *2 x2) *2 x3) + ((x2 *2 x3) *2 x1) + ((x3 *2 x1) *2 x2)",
            "((x1 *1 x2) *2 x3) - ((x1 *2 x3) *1 x2) - (x1 *1 (x2 *2 x3))",
        ],
    ),
    "perm": (1, [ASSOCIATOR, "((x1 *1 x2) *1 x3) - ((x2 *1 x1) *1 x3)"]),
}

BUILTIN_NAMES = tuple(_BUILTIN)


def builtin(name: str) -> VarietyPresentation:
    try:
        nops, lines = _BUILTIN[name]
    except KeyError:
        raise VarietyError(f"unknown variety {name!r}; builtins are {', '.join(BUILTIN_NAMES)}") from None
    return _from_lines(name, nops, lines)


def loads(text: str, name: str = "") -> VarietyPresentation:
    headers, _ = read_identity_lines(text)
    if "nops" not in headers:
        raise VarietyError("variety file lacks a '# nops: k' header")
    try:
        nops = int(headers["nops"])
    except ValueError:
        raise VarietyError(f"bad nops header {headers['nops']!r}") from None
    _, entries = read_identity_lines(text, Signature(nops, Context.OMEGA))
    identities = []
    for k, (lineno, p) in enumerate(entries, start=1):
        ok, n = is_polylinear(p)
        if not ok or n < 2:
            raise VarietyError(f"identity f{k} (line {lineno}) is not polylinear of degree >= 2: {render(p)}")
        identities.append((f"f{k}", p))
    return VarietyPresentation(nops, tuple(identities), headers.get("name", name))


def load(path) -> VarietyPresentation:
    path = Path(path)
    return loads(path.read_text(encoding="utf-8"), path.stem)


def resolve(source: str) -> VarietyPresentation:
    """A builtin name or a path to a variety file."""
    if source in _BUILTIN:
        return builtin(source)
    return load(source)

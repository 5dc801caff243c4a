"""Monomials and rational polynomials over Ω, Ω(2) and Ω(3) signatures.

A monomial is a planar binary tree: leaves carry variable indices, inner
nodes carry an :class:`OpSymbol`.  A :class:`Polynomial` is an immutable,
canonically ordered linear combination of monomials with exact rational
coefficients; an identity is a polynomial read as ``= 0``.

Text format (one identity per line)::

    poly     := ['+'|'-'] term (('+'|'-') term)*     identity := poly ['=' poly]
    term     := [rational] monomial | rational          (a bare rational must be 0)
    monomial := 'x'INT | '(' monomial op monomial ')'
    op       := '*'[INT] | '<'[INT] | '>'[INT] | '.'[INT]

``*`` is the base operation, ``<`` is ⊣, ``>`` is ⊢ and ``.`` is ⊥.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union


class Family(enum.Enum):
    BASE = "base"
    LEFT = "left"  # ⊣
    RIGHT = "right"  # ⊢
    MIDDLE = "middle"  # ⊥

    @property
    def rank(self) -> int:
        return _FAMILY_RANK[self]

    @property
    def char(self) -> str:
        return _FAMILY_CHAR[self]


_FAMILY_RANK = {Family.BASE: 0, Family.LEFT: 1, Family.RIGHT: 2, Family.MIDDLE: 3}
_FAMILY_CHAR = {Family.BASE: "*", Family.LEFT: "<", Family.RIGHT: ">", Family.MIDDLE: "."}
_CHAR_FAMILY = {c: f for f, c in _FAMILY_CHAR.items()}


class Context(enum.Enum):
    """Which operation families a signature admits."""

    OMEGA = "omega"
    OMEGA2 = "omega2"
    OMEGA3 = "omega3"

    @property
    def families(self) -> tuple[Family, ...]:
        return _CONTEXT_FAMILIES[self]


_CONTEXT_FAMILIES = {
    Context.OMEGA: (Family.BASE,),
    Context.OMEGA2: (Family.LEFT, Family.RIGHT),
    Context.OMEGA3: (Family.LEFT, Family.RIGHT, Family.MIDDLE),
}


@dataclass(frozen=True)
class OpSymbol:
    family: Family
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"operation index must be positive, got {self.index}")

    @property
    def key(self) -> tuple[int, int]:
        return (self.family.rank, self.index)

    def __str__(self):
        return f"{self.family.char}{self.index}"

    def with_family(self, family: Family) -> "OpSymbol":
        return OpSymbol(family, self.index)


def base(i: int = 1) -> OpSymbol:
    return OpSymbol(Family.BASE, i)


def left(i: int = 1) -> OpSymbol:
    return OpSymbol(Family.LEFT, i)


def right(i: int = 1) -> OpSymbol:
    return OpSymbol(Family.RIGHT, i)


def middle(i: int = 1) -> OpSymbol:
    return OpSymbol(Family.MIDDLE, i)


@dataclass(frozen=True)
class Signature:
    nops: int
    context: Context

    def ops(self) -> list[OpSymbol]:
        """All declared operation symbols, family-major."""
        return [OpSymbol(f, i) for f in self.context.families for i in range(1, self.nops + 1)]

    def admits(self, op: OpSymbol) -> bool:
        return op.family in self.context.families and op.index <= self.nops


class SignatureError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


# -- monomials ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Leaf:
    var: int

    def __post_init__(self):
        if self.var < 1:
            raise ValueError(f"variable index must be positive, got {self.var}")

    degree = property(lambda self: 1)

    @property
    def variables(self) -> tuple[int, ...]:
        return (self.var,)

    @property
    def tokens(self) -> tuple[tuple[int, int, int], ...]:
        return ((0, self.var, 0),)

    def __eq__(self, other):
        return isinstance(other, Leaf) and self.var == other.var

    def __hash__(self):
        return hash(("x", self.var))

    def __str__(self):
        return f"x{self.var}"


@dataclass(frozen=True, eq=False)
class Node:
    op: OpSymbol
    left: "Monomial"
    right: "Monomial"
    degree: int = field(init=False, repr=False)
    variables: tuple[int, ...] = field(init=False, repr=False)
    tokens: tuple[tuple[int, int, int], ...] = field(init=False, repr=False)
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "degree", self.left.degree + self.right.degree)
        object.__setattr__(self, "variables", self.left.variables + self.right.variables)
        head = ((1, self.op.family.rank, self.op.index),)
        object.__setattr__(self, "tokens", head + self.left.tokens + self.right.tokens)
        object.__setattr__(self, "_hash", hash(self.tokens))

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Node) and self._hash == other._hash and self.tokens == other.tokens

    def __hash__(self):
        return self._hash

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


Monomial = Union[Leaf, Node]


def x(var: int) -> Leaf:
    return Leaf(var)


def mono_key(m: Monomial):
    """Total order on monomials: degree, then preorder tokens."""
    return (m.degree, m.tokens)


def ops_of(m: Monomial) -> Iterator[OpSymbol]:
    if isinstance(m, Node):
        yield m.op
        yield from ops_of(m.left)
        yield from ops_of(m.right)


def relabel(m: Monomial, mapping: Mapping[int, int]) -> Monomial:
    if isinstance(m, Leaf):
        return Leaf(mapping[m.var])
    return Node(m.op, relabel(m.left, mapping), relabel(m.right, mapping))


def map_ops(m: Monomial, fn) -> Monomial:
    """Replace every node label ``op`` by ``fn(op)``."""
    if isinstance(m, Leaf):
        return m
    return Node(fn(m.op), map_ops(m.left, fn), map_ops(m.right, fn))


def shape(m: Monomial):
    """Tree shape with leaf labels but no node labels."""
    if isinstance(m, Leaf):
        return m.var
    return (shape(m.left), shape(m.right))


# -- polynomials -------------------------------------------------------------

Scalar = Union[int, Fraction]


class Polynomial:
    """Immutable finite sum of monomials with nonzero rational coefficients."""

    __slots__ = ("_terms", "_index", "_hash")

    def __init__(self, terms: Union[Mapping[Monomial, Scalar], Iterable[tuple[Monomial, Scalar]]] = ()):
        acc: dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            acc[m] = acc.get(m, Fraction(0)) + Fraction(c)
        ordered = sorted(((m, c) for m, c in acc.items() if c != 0), key=lambda mc: mono_key(mc[0]))
        self._terms = tuple(ordered)
        self._index = dict(ordered)
        self._hash = None

    @classmethod
    def monomial(cls, m: Monomial, coeff: Scalar = 1) -> "Polynomial":
        return cls([(m, coeff)])

    @property
    def terms(self) -> tuple[tuple[Monomial, Fraction], ...]:
        return self._terms

    @property
    def monomials(self) -> tuple[Monomial, ...]:
        return tuple(m for m, _ in self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._index.get(m, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(self._terms + other._terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial((m, -c) for m, c in self._terms)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, k: Scalar) -> "Polynomial":
        return Polynomial((m, c * k) for m, c in self._terms)

    __rmul__ = __mul__

    def ops(self) -> set[OpSymbol]:
        return {op for m, _ in self._terms for op in ops_of(m)}

    def map_monomials(self, fn) -> "Polynomial":
        return Polynomial((fn(m), c) for m, c in self._terms)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Polynomial({render(self)!r})"


def combine(op: OpSymbol, p: Polynomial, q: Polynomial) -> Polynomial:
    """Bilinear product ``p op q``."""
    return Polynomial((Node(op, mp, mq), cp * cq) for mp, cp in p for mq, cq in q)


def check_signature(p: Polynomial, signature: Signature) -> None:
    for op in p.ops():
        if not signature.admits(op):
            if op.index > signature.nops:
                raise SignatureError(f"operation {op} exceeds declared nops={signature.nops}")
            raise SignatureError(f"operation {op} not allowed in context {signature.context.value}")


# -- polylinearity and permutations -----------------------------------------


def is_polylinear(p: Polynomial) -> tuple[bool, int | None]:
    """Whether every monomial is multilinear in exactly x1..xn, each once.

    Returns ``(ok, n)``; the zero polynomial has no degree and is reported as
    ``(False, None)``.
    """
    if p.is_zero():
        return False, None
    n = p.terms[0][0].degree
    expected = tuple(range(1, n + 1))
    for m, _ in p:
        if m.degree != n or tuple(sorted(m.variables)) != expected:
            return False, None
    return True, n


def apply_permutation(p: Polynomial, sigma: Union[Sequence[int], Mapping[int, int]]) -> Polynomial:
    """Relabel every leaf ``k`` as ``sigma(k)``.

    ``sigma`` is either a mapping or a sequence whose ``k-1``-th entry is
    ``sigma(k)``.
    """
    mapping = dict(sigma) if isinstance(sigma, Mapping) else {k + 1: v for k, v in enumerate(sigma)}
    ok, n = is_polylinear(p)
    if p.is_zero():
        return p
    if not ok:
        raise ValueError("apply_permutation needs a polylinear polynomial")
    if sorted(mapping) != list(range(1, n + 1)) or sorted(mapping.values()) != list(range(1, n + 1)):
        raise ValueError(f"permutation does not act on {{1..{n}}}")
    return p.map_monomials(lambda m: relabel(m, mapping))


# -- rendering ---------------------------------------------------------------


def render_monomial(m: Monomial) -> str:
    return str(m)


def render(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, (m, c) in enumerate(p):
        mag = abs(c)
        body = str(m) if mag == 1 else f"{mag} {m}"
        if k == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


# -- parsing -----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, signature: Signature | None):
        self.text = text
        self.pos = 0
        self.signature = signature

    def error(self, message: str, pos: int | None = None):
        pos = self.pos if pos is None else pos
        raise ParseError(message, len(self.text[:pos].encode("utf-8")))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int | None:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            return None
        return int(self.text[start : self.pos])

    def identity(self) -> Polynomial:
        lhs = self.poly()
        if self.peek() == "=":
            self.pos += 1
            rhs = self.poly()
            lhs = lhs - rhs
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return lhs

    def poly(self) -> Polynomial:
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        terms = [self.term(sign)]
        while self.peek() and self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
            terms.append(self.term(sign))
        return Polynomial([t for t in terms if t is not None])

    def term(self, sign: int):
        start = self.pos
        num = self.integer()
        coeff = Fraction(sign)
        if num is not None:
            coeff *= num
            if self.peek() == "/":
                self.pos += 1
                den = self.integer()
                if den is None:
                    self.error("expected denominator")
                if den == 0:
                    self.error("zero denominator", start)
                coeff /= den
        if self.peek() in ("x", "("):
            return self.monomial(), coeff
        if num is None:
            self.error("expected a term")
        if coeff != 0:
            self.error("constant terms are not allowed", start)
        return None

    def monomial(self) -> Monomial:
        ch = self.peek()
        if ch == "x":
            at = self.pos
            self.pos += 1
            if self.pos >= len(self.text) or not self.text[self.pos].isdigit():
                self.error("expected variable index")
            var = self.integer()
            if var == 0:
                self.error("variable index 0", at)
            return Leaf(var)
        if ch == "(":
            self.pos += 1
            lhs = self.monomial()
            op = self.op()
            rhs = self.monomial()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return Node(op, lhs, rhs)
        self.error("expected monomial")

    def op(self) -> OpSymbol:
        ch = self.peek()
        at = self.pos
        if ch not in _CHAR_FAMILY or not ch:
            self.error("expected operation symbol")
        self.pos += 1
        index = 1
        if self.pos < len(self.text) and self.text[self.pos].isdigit():
            index = self.integer()
        if index == 0:
            self.error("operation index 0", at)
        op = OpSymbol(_CHAR_FAMILY[ch], index)
        if self.signature is not None and not self.signature.admits(op):
            if index > self.signature.nops:
                self.error(f"unknown operation index {index}", at)
            self.error(f"operation {op} not allowed in context {self.signature.context.value}", at)
        return op


def parse_polynomial(text: str, signature: Signature | None = None) -> Polynomial:
    """Parse an identity; ``lhs = rhs`` becomes ``lhs - rhs``."""
    return _Parser(text, signature).identity()


def parse_monomial(text: str, signature: Signature | None = None) -> Monomial:
    parser = _Parser(text, signature)
    m = parser.monomial()
    if parser.peek():
        parser.error(f"unexpected {parser.peek()!r}")
    return m


def read_identity_lines(text: str, signature: Signature | None = None) -> tuple[dict[str, str], list[tuple[int, Polynomial]]]:
    """Parse an identity file.

    Returns the ``# key: value`` header comments and ``(line number, identity)``
    pairs.  Offsets in parse errors are relative to the offending line.
    """
    headers: dict[str, str] = {}
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            key, sep, value = body.partition(":")
            if sep and key.strip() and " " not in key.strip():
                headers.setdefault(key.strip(), value.strip())
            continue
        try:
            out.append((lineno, parse_polynomial(raw.split("#", 1)[0], signature)))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc.args[0].rsplit(' at byte', 1)[0]}", exc.offset) from None
    return headers, out

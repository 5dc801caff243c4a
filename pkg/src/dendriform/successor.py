"""Successor procedures: di-/tri-/s-tri-algebra and dendriform identities.

``phi`` labels the nodes of an Ω-monomial with ⊢/⊣/⊥ according to a set of
emphasized leaves; ``phi_star`` does the same but expands every operation
inside a non-emphasized subtree into the sum of the split operations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .terms import (
    Context,
    Family,
    Leaf,
    Monomial,
    Node,
    OpSymbol,
    Polynomial,
    Signature,
    is_polylinear,
    map_ops,
    render,
)


class Mode(enum.Enum):
    DI = "di"
    TRI = "tri"
    STRI = "stri"

    @property
    def context(self) -> Context:
        return Context.OMEGA2 if self is Mode.DI else Context.OMEGA3

    @property
    def star_families(self) -> tuple[Family, ...]:
        """Families summed in place of ∘ inside a non-emphasized subtree."""
        if self is Mode.TRI:
            return (Family.LEFT, Family.RIGHT, Family.MIDDLE)
        return (Family.LEFT, Family.RIGHT)


def _check_h(u: Monomial, H: Iterable[int]) -> frozenset[int]:
    H = frozenset(H)
    if not H:
        raise ValueError("emphasis set H must be nonempty")
    if not H <= set(u.variables):
        raise ValueError(f"emphasis set {sorted(H)} is not contained in the variables of {u}")
    return H


def _relabel_all(u: Monomial, family: Family) -> Monomial:
    return map_ops(u, lambda op: op.with_family(family))


def _phi(u: Monomial, H: frozenset[int]) -> Monomial:
    if isinstance(u, Leaf):
        return u
    h1 = H.intersection(u.left.variables)
    h2 = H - h1
    if h1 and h2:
        return Node(u.op.with_family(Family.MIDDLE), _phi(u.left, h1), _phi(u.right, h2))
    if not h1:
        return Node(u.op.with_family(Family.RIGHT), _relabel_all(u.left, Family.RIGHT), _phi(u.right, h2))
    return Node(u.op.with_family(Family.LEFT), _phi(u.left, h1), _relabel_all(u.right, Family.LEFT))


def phi(u: Monomial, H: Iterable[int]) -> Monomial:
    """Label ``u`` over Ω(3) for the emphasized leaves ``H``."""
    return _phi(u, _check_h(u, H))


def phi_poly(f: Polynomial, H: Iterable[int]) -> Polynomial:
    H = frozenset(H)
    return Polynomial((phi(m, H), c) for m, c in f)


def _star(u: Monomial, families: Sequence[Family]) -> Iterator[Monomial]:
    if isinstance(u, Leaf):
        yield u
        return
    lefts = list(_star(u.left, families))
    rights = list(_star(u.right, families))
    for fam in families:
        op = u.op.with_family(fam)
        for a in lefts:
            for b in rights:
                yield Node(op, a, b)


def _phi_star(u: Monomial, H: frozenset[int], families) -> Iterator[Monomial]:
    if isinstance(u, Leaf):
        yield u
        return
    h1 = H.intersection(u.left.variables)
    h2 = H - h1
    if h1 and h2:
        op, lhs, rhs = Family.MIDDLE, _phi_star(u.left, h1, families), _phi_star(u.right, h2, families)
    elif not h1:
        op, lhs, rhs = Family.RIGHT, _star(u.left, families), _phi_star(u.right, h2, families)
    else:
        op, lhs, rhs = Family.LEFT, _phi_star(u.left, h1, families), _star(u.right, families)
    rhs = list(rhs)
    for a in lhs:
        for b in rhs:
            yield Node(u.op.with_family(op), a, b)


def phi_star(u: Monomial, H: Iterable[int], mode: Mode = Mode.TRI) -> Polynomial:
    """Dendriform successor of ``u``: a sum of Ω(3)-monomials (Ω(2) in Di mode)."""
    H = _check_h(u, H)
    if mode is Mode.DI and len(H) != 1:
        raise ValueError("Di mode only admits singleton emphasis sets")
    return Polynomial((m, 1) for m in _phi_star(u, H, mode.star_families))


def phi_star_poly(f: Polynomial, H: Iterable[int], mode: Mode = Mode.TRI) -> Polynomial:
    H = frozenset(H)
    out = Polynomial()
    for m, c in f:
        out = out + phi_star(m, H, mode) * c
    return out


def emphasis_sets(n: int, mode: Mode) -> list[frozenset[int]]:
    """Nonempty subsets of {1..n} in colex order; singletons only for Di."""
    sets = [frozenset(k + 1 for k in range(n) if mask >> k & 1) for mask in range(1, 1 << n)]
    if mode is Mode.DI:
        sets = [h for h in sets if len(h) == 1]
    return sets


# -- identity families -------------------------------------------------------


def _m(op: OpSymbol, a, b) -> Node:
    a = Leaf(a) if isinstance(a, int) else a
    b = Leaf(b) if isinstance(b, int) else b
    return Node(op, a, b)


def _diff(u: Monomial, v: Monomial) -> Polynomial:
    return Polynomial([(u, 1), (v, -1)])


def generate_zero_identities(nops: int, mode: Mode) -> list[Polynomial]:
    """The identities relating products inside ⊢-left and ⊣-right positions.

    Di and STri give the 2·nops² dialgebra families; Tri gives 4·nops²
    families with ``* ∈ {⊣, ⊥}`` on the left of ⊢ and ``* ∈ {⊢, ⊥}`` on the
    right of ⊣, each set equal to the normal form.
    """
    if nops < 1:
        raise ValueError("nops must be positive")
    L, R, M = Family.LEFT, Family.RIGHT, Family.MIDDLE
    if mode is Mode.TRI:
        left_star, right_star = (L, M), (R, M)
    else:
        left_star, right_star = (L,), (R,)
    out = []
    for i in range(1, nops + 1):
        for j in range(1, nops + 1):
            vdash_j = OpSymbol(R, j)
            for fam in left_star:
                out.append(_diff(_m(vdash_j, _m(OpSymbol(fam, i), 1, 2), 3), _m(vdash_j, _m(OpSymbol(R, i), 1, 2), 3)))
            dashv_i = OpSymbol(L, i)
            for fam in right_star:
                out.append(_diff(_m(dashv_i, 1, _m(OpSymbol(fam, j), 2, 3)), _m(dashv_i, 1, _m(OpSymbol(L, j), 2, 3))))
    return out


def vanishing_identities(nops: int) -> list[Polynomial]:
    """``(x1 ⊥i x2) ⊢j x3`` and ``x1 ⊣i (x2 ⊥j x3)`` for all i, j."""
    out = []
    for i in range(1, nops + 1):
        for j in range(1, nops + 1):
            out.append(Polynomial.monomial(_m(OpSymbol(Family.RIGHT, j), _m(OpSymbol(Family.MIDDLE, i), 1, 2), 3)))
            out.append(Polynomial.monomial(_m(OpSymbol(Family.LEFT, i), 1, _m(OpSymbol(Family.MIDDLE, j), 2, 3))))
    return out


@dataclass(frozen=True)
class DottedIdentity:
    source: str
    H: frozenset[int]
    poly: Polynomial

    @property
    def label(self) -> str:
        return f"{self.source} H={_fmt_set(self.H)}"


def _fmt_set(H) -> str:
    return "{" + ",".join(str(k) for k in sorted(H)) + "}"


@dataclass(frozen=True)
class GeneratedIdentitySet:
    signature: Signature
    mode: Mode
    dendriform: bool
    zero_identities: tuple[Polynomial, ...] = ()
    dotted_identities: tuple[DottedIdentity, ...] = field(default=())

    def labelled(self) -> list[tuple[str, Polynomial]]:
        """Every identity with a stable label, zero identities first."""
        out = [(f"zero={k}", p) for k, p in enumerate(self.zero_identities, start=1)]
        out.extend((d.label, d.poly) for d in self.dotted_identities)
        return out

    def polynomials(self) -> list[Polynomial]:
        return [p for _, p in self.labelled()]

    def __len__(self):
        return len(self.zero_identities) + len(self.dotted_identities)

    def to_text(self, header: Sequence[str] = ()) -> str:
        lines = [f"# {h}" for h in header]
        lines.append(f"# nops: {self.signature.nops}")
        lines.append(f"# context: {self.signature.context.value}")
        lines.append(f"# mode: {self.mode.value}{' dendriform' if self.dendriform else ''}")
        for k, p in enumerate(self.zero_identities, start=1):
            lines.append(f"# source: zero={k}")
            lines.append(render(p))
        for d in self.dotted_identities:
            lines.append(f"# source: f={d.source} H={_fmt_set(d.H)}")
            lines.append(render(d.poly))
        return "\n".join(lines) + "\n"


def _require_polylinear(variety) -> None:
    for fid, f in variety.identities:
        ok, n = is_polylinear(f)
        if not ok or n < 2:
            raise ValueError(f"identity {fid} is not polylinear of degree >= 2: {render(f)}")
        for op in f.ops():
            if op.family is not Family.BASE or op.index > variety.nops:
                raise ValueError(f"identity {fid} uses {op}, outside the variety signature")


def generate_variety_identities(variety, mode: Mode) -> GeneratedIdentitySet:
    """Defining identities of di-/tri-/s-tri-Var-algebras."""
    _require_polylinear(variety)
    dotted = []
    for fid, f in variety.identities:
        n = is_polylinear(f)[1]
        for H in emphasis_sets(n, mode):
            dotted.append(DottedIdentity(fid, H, phi_poly(f, H)))
    return GeneratedIdentitySet(
        Signature(variety.nops, mode.context),
        mode,
        False,
        tuple(generate_zero_identities(variety.nops, mode)),
        tuple(dotted),
    )


def generate_dendriform_identities(variety, mode: Mode) -> GeneratedIdentitySet:
    """Defining identities of di-/tri-/s-tri-Var-dendriform algebras."""
    _require_polylinear(variety)
    dotted = []
    for fid, f in variety.identities:
        n = is_polylinear(f)[1]
        for H in emphasis_sets(n, mode):
            dotted.append(DottedIdentity(fid, H, phi_star_poly(f, H, mode)))
    zero = tuple(vanishing_identities(variety.nops)) if mode is Mode.STRI else ()
    return GeneratedIdentitySet(Signature(variety.nops, mode.context), mode, True, zero, tuple(dotted))

"""Arity-3 calculations for quadratic operads and their tri-algebra successors.

A binary quadratic presentation is split into degree-2 relations, which
express some reversed operations ``x2 ∘k x1`` through the normal ones, and
degree-3 relations R.  The generator space E has as basis the normal
operations and the reversed operations that stay independent; N = dim E.
Arity-3 elements are coordinatized as ``σ ⊗ (μ ⊗ ν)`` with σ one of
``e, (13), (23)`` and μ, ν basis elements of E, so the coordinate space has
dimension 3N².

Trees are read as follows: the leaf outside the inner product selects σ
(x3 → e, x1 → (13), x2 → (23)); μ is the root operation, reversed when the
inner product sits on the right; ν is the inner operation, reversed when its
leaves are out of σ's standard order ((1,2), (3,2), (1,3) respectively).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from . import linalg
from .successor import Mode, emphasis_sets, generate_zero_identities, phi_poly, phi_star_poly
from .terms import (
    Family,
    Leaf,
    Node,
    OpSymbol,
    Polynomial,
    apply_permutation,
    is_polylinear,
    render,
)


class KoszulError(ValueError):
    pass


PERMUTATIONS_3 = tuple(itertools.permutations((1, 2, 3)))
_SIGMA_OF_OUTSIDE = {3: 0, 1: 1, 2: 2}
_STANDARD_INNER = {0: (1, 2), 1: (3, 2), 2: (1, 3)}
_SIGMA_SIGN = (1, -1, -1)
_SWAP = {Family.RIGHT: Family.LEFT, Family.LEFT: Family.RIGHT, Family.MIDDLE: Family.MIDDLE}


class GeneratorSpace:
    """Binary generators with some reversed ones expressed through normal ones.

    ``relations[k]`` gives ``reversed(k)`` as ``{label: coefficient}`` over
    normal labels.  Basis: every normal label, then the reversed labels
    without a relation.
    """

    def __init__(self, labels: Sequence[Hashable], relations: Mapping[Hashable, Mapping[Hashable, Fraction]]):
        self.labels = tuple(labels)
        self.relations = {k: dict(v) for k, v in relations.items()}
        self.basis = [("normal", l) for l in self.labels] + [("reversed", l) for l in self.labels if l not in self.relations]
        self.index = {b: n for n, b in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._tau = [self._apply_tau(n) for n in range(self.dim)]

    def normal(self, label) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        v[self.index[("normal", label)]] = Fraction(1)
        return v

    def reversed(self, label) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        if label in self.relations:
            for l, c in self.relations[label].items():
                v[self.index[("normal", l)]] += Fraction(c)
        else:
            v[self.index[("reversed", label)]] = Fraction(1)
        return v

    def _apply_tau(self, n: int) -> list[Fraction]:
        kind, label = self.basis[n]
        return self.reversed(label) if kind == "normal" else self.normal(label)

    def tau(self, v: Sequence[Fraction]) -> list[Fraction]:
        """The transposition of the two inputs, acting on E."""
        out = [Fraction(0)] * self.dim
        for n, x in enumerate(v):
            if x:
                for m, y in enumerate(self._tau[n]):
                    out[m] += x * y
        return out

    def dual_normal(self, label) -> list[Fraction]:
        return self.normal(label)

    def dual_reversed(self, label) -> list[Fraction]:
        """Sign-twisted transposition on E∨: ``⟨τ∨f, v⟩ = −⟨f, τv⟩``."""
        f = self.dual_normal(label)
        return [-sum((f[m] * self._tau[n][m] for m in range(self.dim)), Fraction(0)) for n in range(self.dim)]

    def vector(self, label, reversed_: bool, dual: bool) -> list[Fraction]:
        if dual:
            return self.dual_reversed(label) if reversed_ else self.dual_normal(label)
        return self.reversed(label) if reversed_ else self.normal(label)


def _base_label(op: OpSymbol):
    return op.index


def _split_label(op: OpSymbol):
    return (op.family, op.index)


class Arity3Space:
    """Coordinates ``σ·N² + p·N + q`` on the arity-3 part of the free operad on E."""

    def __init__(self, generators: GeneratorSpace, label_of):
        self.gen = generators
        self.label_of = label_of
        self.dim = 3 * generators.dim**2

    def coordinates(self, p: Polynomial, dual: bool = False) -> list[Fraction]:
        N = self.gen.dim
        out = [Fraction(0)] * self.dim
        for m, c in p:
            if not isinstance(m, Node) or m.degree != 3 or sorted(m.variables) != [1, 2, 3]:
                raise KoszulError(f"not a polylinear arity-3 monomial: {m}")
            if isinstance(m.left, Leaf):
                inner, outside, inner_left = m.right, m.left.var, False
            else:
                inner, outside, inner_left = m.left, m.right.var, True
            s = _SIGMA_OF_OUTSIDE[outside]
            order = (inner.left.var, inner.right.var)
            mu = self.gen.vector(self.label_of(m.op), not inner_left, dual)
            nu = self.gen.vector(self.label_of(inner.op), order != _STANDARD_INNER[s], dual)
            for a, x in enumerate(mu):
                if x:
                    for b, y in enumerate(nu):
                        if y:
                            out[s * N * N + a * N + b] += c * x * y
        return out

    def sign_vector(self, sign_convention: str) -> list[int]:
        if sign_convention not in ("sgn", "trivial"):
            raise ValueError("sign_convention must be 'sgn' or 'trivial'")
        block = self.gen.dim**2
        return [(_SIGMA_SIGN[k // block] if sign_convention == "sgn" else 1) for k in range(self.dim)]

    def pair(self, u: Sequence, v: Sequence, sign_convention: str = "sgn") -> Fraction:
        return sum((s * a * b for s, a, b in zip(self.sign_vector(sign_convention), u, v) if a and b), Fraction(0))


@dataclass(frozen=True)
class Subspace:
    ambient: int
    rows: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int) -> "Subspace":
        rows, pivots = linalg.rref(list(vectors), ambient)
        return cls(ambient, tuple(map(tuple, rows)), tuple(pivots))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __contains__(self, v) -> bool:
        return linalg.in_span((list(self.rows), list(self.pivots)), v)


def s3_span(space: Arity3Space, generators: Iterable[Polynomial], dual: bool = False) -> Subspace:
    """Span of all relabelings x_k ↦ x_σ(k) of the given arity-3 elements."""
    vectors = []
    for f in generators:
        ok, n = is_polylinear(f)
        if f.is_zero():
            continue
        if not ok or n != 3:
            raise KoszulError(f"s3_span needs polylinear degree-3 inputs: {render(f)}")
        for sigma in PERMUTATIONS_3:
            vectors.append(space.coordinates(apply_permutation(f, sigma), dual))
    return Subspace.span(vectors, space.dim)


def orthogonal_complement(space: Arity3Space, R: Subspace, sign_convention: str = "sgn") -> Subspace:
    """All dual coordinate vectors pairing to zero with R."""
    signs = space.sign_vector(sign_convention)
    rows = [[s * x for s, x in zip(signs, r)] for r in R.rows]
    return Subspace.span(linalg.nullspace(rows, space.dim), space.dim)


# -- presentations -------------------------------------------------------------


def split_presentation(variety) -> tuple[dict[int, dict[int, Fraction]], list[Polynomial]]:
    """Degree-2 relations solved for reversed operations, and the degree-3 identities."""
    n = variety.nops
    quad, cubic = [], []
    for fid, f in variety.identities:
        deg = is_polylinear(f)[1]
        if deg == 2:
            quad.append((fid, f))
        elif deg == 3:
            cubic.append(f)
        else:
            raise KoszulError(f"identity {fid} has degree {deg}; only quadratic presentations are supported")
    # columns: reversed(1..n), then normal(1..n)
    rows = []
    for fid, f in quad:
        row = [Fraction(0)] * (2 * n)
        for m, c in f:
            if m.op.family is not Family.BASE:
                raise KoszulError(f"identity {fid} is not over a plain signature")
            col = m.op.index - 1 if m.left.var == 2 else n + m.op.index - 1
            row[col] += c
        rows.append(row)
    red, pivots = linalg.rref(rows, 2 * n)
    relations = {}
    for row, pc in zip(red, pivots):
        if pc >= n or any(row[c] for c in range(n) if c != pc):
            raise KoszulError("degree-2 identities are not of the form x2 ∘k x1 = Σ α x1 ∘i x2")
        relations[pc + 1] = {i + 1: -row[n + i] for i in range(n) if row[n + i]}
    return relations, cubic


def base_space(variety) -> tuple[GeneratorSpace, list[Polynomial]]:
    relations, cubic = split_presentation(variety)
    return GeneratorSpace(range(1, variety.nops + 1), relations), cubic


def split_space(variety) -> GeneratorSpace:
    """E^(3): split labels (family, i) with reversed(⊢k) = Σ α_ik ⊣i and so on."""
    relations, _ = split_presentation(variety)
    fams = (Family.LEFT, Family.RIGHT, Family.MIDDLE)
    labels = [(fam, i) for i in range(1, variety.nops + 1) for fam in fams]
    split_rel = {}
    for k, combo in relations.items():
        for fam in fams:
            split_rel[(fam, k)] = {(_SWAP[fam], i): c for i, c in combo.items()}
    return GeneratorSpace(labels, split_rel)


def free_trees(nops: int) -> list[Polynomial]:
    """Every polylinear arity-3 monomial over ``*1..*nops``."""
    out = []
    for i, j in itertools.product(range(1, nops + 1), repeat=2):
        for a, b, c in PERMUTATIONS_3:
            oi, oj = OpSymbol(Family.BASE, i), OpSymbol(Family.BASE, j)
            out.append(Polynomial.monomial(Node(oi, Node(oj, Leaf(a), Leaf(b)), Leaf(c))))
            out.append(Polynomial.monomial(Node(oi, Leaf(a), Node(oj, Leaf(b), Leaf(c)))))
    return out


# -- the tri-algebra check -------------------------------------------------------


@dataclass(frozen=True)
class KoszulRow:
    quantity: str
    expected: object
    computed: object

    @property
    def match(self) -> bool | None:
        return None if self.expected is None else self.expected == self.computed


@dataclass(frozen=True)
class KoszulReport:
    variety: str
    sign_convention: str
    N: int
    dim_R: int
    dim_R_perp: int
    dim_O3: int
    dim_R3: int
    dim_R_perp_star: int
    orthogonal: bool
    calibrated: bool

    @property
    def rows(self) -> list[KoszulRow]:
        N, r = self.N, self.dim_R
        return [
            KoszulRow("N = dim E", None, N),
            KoszulRow("dim R", None, r),
            KoszulRow("dim R^perp", 3 * N * N - r, self.dim_R_perp),
            KoszulRow("dim O^(3)", 6 * N * N, self.dim_O3),
            KoszulRow("dim R^(3)", 6 * N * N + 7 * r, self.dim_R3),
            KoszulRow("dim (R^perp)^(3*)", 21 * N * N - 7 * r, self.dim_R_perp_star),
            KoszulRow("dim R^(3) + dim (R^perp)^(3*)", 27 * N * N, self.dim_R3 + self.dim_R_perp_star),
            KoszulRow("(R^perp)^(3*) orthogonal to R^(3)", True, self.orthogonal),
            KoszulRow("calibration: associator self-orthogonal", True, self.calibrated),
        ]

    @property
    def passed(self) -> bool:
        return all(row.match is not False for row in self.rows)

    def to_text(self) -> str:
        def cell(v):
            if v is None:
                return "-"
            if isinstance(v, bool):
                return "yes" if v else "no"
            return str(v)

        table = [("quantity", "expected", "computed", "match")]
        for row in self.rows:
            table.append((row.quantity, cell(row.expected), cell(row.computed), cell(row.match)))
        widths = [max(len(r[k]) for r in table) for k in range(4)]
        lines = [f"variety: {self.variety}", f"pairing: {self.sign_convention}"]
        for r in table:
            lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
        lines.append(f"verdict: {'pass' if self.passed else 'fail'}")
        return "\n".join(lines) + "\n"


def calibrate(sign_convention: str = "sgn") -> Fraction:
    """Self-pairing of the associator orbit span under the chosen convention.

    The associative operad is self-dual, so the associator relations must be
    orthogonal to their dual copies; returns the largest absolute pairing
    between the two orbit spans (0 when the convention is right).
    """
    from .varieties import builtin

    V = builtin("associative")
    gen, cubic = base_space(V)
    space = Arity3Space(gen, _base_label)
    primal = [space.coordinates(apply_permutation(cubic[0], s)) for s in PERMUTATIONS_3]
    dual = [space.coordinates(apply_permutation(cubic[0], s), dual=True) for s in PERMUTATIONS_3]
    return max(abs(space.pair(u, v, sign_convention)) for u in primal for v in dual)


def dual_preimage(space: Arity3Space, R: Subspace, sign_convention: str, nops: int) -> list[Polynomial]:
    """Polynomials in the free dual trees whose coordinates lie in R^perp."""
    trees = free_trees(nops)
    tree_coords = [space.coordinates(t, dual=True) for t in trees]
    signs = space.sign_vector(sign_convention)
    functionals = [
        [sum((s * x * y for s, x, y in zip(signs, r, tc) if x and y), Fraction(0)) for tc in tree_coords] for r in R.rows
    ]
    out = []
    for vec in linalg.nullspace(functionals, len(trees)):
        p = Polynomial()
        for t, c in zip(trees, vec):
            if c:
                p = p + t * c
        out.append(p)
    return out


def verify_koszul_tri(variety, sign_convention: str = "sgn") -> KoszulReport:
    """Dimension chain and orthogonality for tri-algebras versus tri-dendriform duals."""
    gen, cubic = base_space(variety)
    space = Arity3Space(gen, _base_label)
    R = s3_span(space, cubic)
    R_perp = orthogonal_complement(space, R, sign_convention)

    gen3 = split_space(variety)
    space3 = Arity3Space(gen3, _split_label)
    orbit = [apply_permutation(f, s) for f in cubic for s in PERMUTATIONS_3]
    zero = generate_zero_identities(variety.nops, Mode.TRI)
    O3 = s3_span(space3, zero)
    dotted = [space3.coordinates(phi_poly(f, H)) for f in orbit for H in emphasis_sets(3, Mode.TRI)]
    R3 = Subspace.span(dotted + list(O3.rows), space3.dim)

    star = []
    for g in dual_preimage(space, R, sign_convention, variety.nops):
        for H in emphasis_sets(3, Mode.TRI):
            star.append(space3.coordinates(phi_star_poly(g, H, Mode.TRI), dual=True))
    R_perp_star = Subspace.span(star, space3.dim)

    signs = space3.sign_vector(sign_convention)
    orthogonal = all(
        sum((s * x * y for s, x, y in zip(signs, r, q) if x and y), Fraction(0)) == 0
        for r in R3.rows
        for q in R_perp_star.rows
    )
    return KoszulReport(
        variety=getattr(variety, "name", "") or "custom",
        sign_convention=sign_convention,
        N=gen.dim,
        dim_R=R.dim,
        dim_R_perp=R_perp.dim,
        dim_O3=O3.dim,
        dim_R3=R3.dim,
        dim_R_perp_star=R_perp_star.dim,
        orthogonal=orthogonal,
        calibrated=calibrate(sign_convention) == 0,
    )

"""Finite-dimensional algebras given by exact rational structure constants.

Basis indices are 0-based in Python and 1-based in JSON files and in
reported counterexample tuples.  Vectors passed in and returned are dense
tuples of :class:`~fractions.Fraction`; internally products work on sparse
``{index: coefficient}`` dicts.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .terms import (
    Context,
    Family,
    Leaf,
    Monomial,
    OpSymbol,
    Polynomial,
    Signature,
    SignatureError,
    check_signature,
    is_polylinear,
)

Sparse = dict  # index -> Fraction
Table = Mapping[tuple[int, int], Mapping[int, Fraction]]


class AlgebraError(ValueError):
    """Invalid algebra data or a violated construction precondition."""


class RotaBaxterError(AlgebraError):
    pass


class DerivationError(AlgebraError):
    pass


def _frac(v) -> Fraction:
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, float):
        raise TypeError("floating point coefficients are not accepted")
    return Fraction(v)


def _fmt(q: Fraction) -> str:
    return str(q)


def sparse(vec: Sequence) -> Sparse:
    return {i: _frac(v) for i, v in enumerate(vec) if v}


def _fmt_vec(vec) -> str:
    return "(" + ", ".join(str(v) for v in vec) + ")"


def dense(vec: Mapping[int, Fraction], dim: int) -> tuple[Fraction, ...]:
    return tuple(vec.get(i, Fraction(0)) for i in range(dim))


def _axpy(out: Sparse, k: Fraction, vec: Mapping[int, Fraction]) -> None:
    for i, v in vec.items():
        s = out.get(i, 0) + k * v
        if s:
            out[i] = s
        else:
            out.pop(i, None)


@dataclass(frozen=True)
class FDAlgebra:
    dim: int
    context: Context
    nops: int
    tables: Mapping[OpSymbol, Table] = field(repr=False)

    def __post_init__(self):
        if self.dim < 0 or self.nops < 1:
            raise AlgebraError("dimension must be >= 0 and nops >= 1")
        sig = self.signature
        clean: dict[OpSymbol, dict] = {op: {} for op in sig.ops()}
        for op, table in self.tables.items():
            if not sig.admits(op):
                raise SignatureError(f"operation {op} not declared for {sig}")
            for (a, b), row in table.items():
                if not (0 <= a < self.dim and 0 <= b < self.dim):
                    raise AlgebraError(f"basis index out of range in {op} table: {(a, b)}")
                out = {}
                for c, v in row.items():
                    if not 0 <= c < self.dim:
                        raise AlgebraError(f"basis index out of range in {op} table: {c}")
                    v = _frac(v)
                    if v:
                        out[c] = v
                if out:
                    clean[op][(a, b)] = out
        object.__setattr__(self, "tables", clean)

    @classmethod
    def from_entries(
        cls, dim: int, context: Context, nops: int, entries: Mapping[OpSymbol, Iterable[tuple[int, int, int, object]]]
    ) -> "FDAlgebra":
        """Build from ``op -> [(a, b, c, coeff), ...]`` with 0-based indices."""
        tables: dict[OpSymbol, dict] = {}
        for op, rows in entries.items():
            t = tables.setdefault(op, {})
            for a, b, c, v in rows:
                slot = t.setdefault((a, b), {})
                slot[c] = slot.get(c, 0) + _frac(v)
        return cls(dim, context, nops, tables)

    @classmethod
    def from_products(cls, dim: int, context: Context, nops: int, product) -> "FDAlgebra":
        """Build from ``product(op, a, b) -> sparse vector`` over all basis pairs."""
        sig = Signature(nops, context)
        tables = {}
        for op in sig.ops():
            tables[op] = {(a, b): product(op, a, b) for a in range(dim) for b in range(dim)}
        return cls(dim, context, nops, tables)

    @property
    def signature(self) -> Signature:
        return Signature(self.nops, self.context)

    @property
    def ops(self) -> list[OpSymbol]:
        return self.signature.ops()

    def basis_product(self, op: OpSymbol, a: int, b: int) -> Mapping[int, Fraction]:
        return self.tables[op].get((a, b), {})

    def structure_constant(self, op: OpSymbol, a: int, b: int, c: int) -> Fraction:
        return self.tables[op].get((a, b), {}).get(c, Fraction(0))

    def multiply(self, op: OpSymbol, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Sparse:
        table = self.tables[op]
        out: Sparse = {}
        for a, x in u.items():
            for b, y in v.items():
                row = table.get((a, b))
                if row:
                    _axpy(out, x * y, row)
        return out

    def entries(self, op: OpSymbol) -> list[tuple[int, int, int, Fraction]]:
        return sorted((a, b, c, v) for (a, b), row in self.tables[op].items() for c, v in row.items())

    def scaled(self, k) -> "FDAlgebra":
        """Same space with every product multiplied by ``k``."""
        k = _frac(k)
        return FDAlgebra(
            self.dim,
            self.context,
            self.nops,
            {op: {ab: {c: v * k for c, v in row.items()} for ab, row in t.items()} for op, t in self.tables.items()},
        )

    def with_constant(self, op: OpSymbol, a: int, b: int, c: int, value) -> "FDAlgebra":
        tables = {o: {ab: dict(row) for ab, row in t.items()} for o, t in self.tables.items()}
        tables[op].setdefault((a, b), {})[c] = _frac(value)
        return FDAlgebra(self.dim, self.context, self.nops, tables)

    def __eq__(self, other):
        if not isinstance(other, FDAlgebra):
            return NotImplemented
        return (self.dim, self.context, self.nops, self.tables) == (other.dim, other.context, other.nops, other.tables)

    def to_json(self, extra: Mapping | None = None) -> dict:
        data = {}
        if extra:
            data.update(extra)
        data.update(
            {
                "dim": self.dim,
                "context": self.context.value,
                "nops": self.nops,
                "ops": [
                    {
                        "family": op.family.value,
                        "index": op.index,
                        "table": [[a + 1, b + 1, c + 1, _fmt(v)] for a, b, c, v in self.entries(op)],
                    }
                    for op in self.ops
                ],
            }
        )
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "FDAlgebra":
        try:
            dim = int(data["dim"])
            context = Context(data["context"])
            nops = int(data["nops"])
            entries = {}
            for entry in data["ops"]:
                op = OpSymbol(Family(entry["family"]), int(entry["index"]))
                entries.setdefault(op, [])
                for a, b, c, v in entry["table"]:
                    entries[op].append((int(a) - 1, int(b) - 1, int(c) - 1, _frac(v)))
        except (KeyError, TypeError, ValueError) as exc:
            raise AlgebraError(f"malformed algebra data: {exc}") from None
        return cls.from_entries(dim, context, nops, entries)


def dumps(obj, extra: Mapping | None = None) -> str:
    return json.dumps(obj.to_json(extra), indent=1) + "\n"


def load_algebra(path) -> FDAlgebra:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise AlgebraError(f"{path}: invalid JSON: {exc}") from None
    return FDAlgebra.from_json(data)


@dataclass(frozen=True)
class LinearOperator:
    """Square matrix acting by ``R(e_j) = sum_i M[i][j] e_i``."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_frac(v) for v in row) for row in self.matrix)
        if any(len(r) != len(rows) for r in rows):
            raise AlgebraError("operator matrix must be square")
        object.__setattr__(self, "matrix", rows)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @classmethod
    def zero(cls, dim: int) -> "LinearOperator":
        return cls(tuple((0,) * dim for _ in range(dim)))

    @classmethod
    def identity(cls, dim: int) -> "LinearOperator":
        return cls(tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @classmethod
    def from_columns(cls, dim: int, columns: Mapping[int, Mapping[int, object]]) -> "LinearOperator":
        m = [[Fraction(0)] * dim for _ in range(dim)]
        for j, col in columns.items():
            for i, v in col.items():
                m[i][j] = _frac(v)
        return cls(tuple(map(tuple, m)))

    def column(self, j: int) -> Sparse:
        return {i: row[j] for i, row in enumerate(self.matrix) if row[j]}

    def apply(self, v: Mapping[int, Fraction]) -> Sparse:
        out: Sparse = {}
        for j, x in v.items():
            for i, row in enumerate(self.matrix):
                if row[j]:
                    s = out.get(i, 0) + row[j] * x
                    if s:
                        out[i] = s
                    else:
                        out.pop(i, None)
        return out

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        n = self.dim
        return LinearOperator(
            tuple(tuple(sum((self.matrix[i][k] * other.matrix[k][j] for k in range(n)), Fraction(0)) for j in range(n)) for i in range(n))
        )

    def __mul__(self, k) -> "LinearOperator":
        k = _frac(k)
        return LinearOperator(tuple(tuple(v * k for v in row) for row in self.matrix))

    __rmul__ = __mul__

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)))

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        return self + other * -1

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.matrix)

    def to_json(self, extra: Mapping | None = None) -> dict:
        data = dict(extra or {})
        data.update({"dim": self.dim, "matrix": [[_fmt(v) for v in row] for row in self.matrix]})
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "LinearOperator":
        try:
            dim = int(data["dim"])
            op = cls(tuple(tuple(_frac(v) for v in row) for row in data["matrix"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise AlgebraError(f"malformed operator data: {exc}") from None
        if op.dim != dim:
            raise AlgebraError(f"operator matrix is {op.dim}x{op.dim}, header says dim={dim}")
        return op


def load_operator(path) -> LinearOperator:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise AlgebraError(f"{path}: invalid JSON: {exc}") from None
    return LinearOperator.from_json(data)


# -- evaluation and verification --------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    identity: str
    basis: tuple[int, ...]  # 1-based
    residual: tuple[Fraction, ...]

    def __str__(self):
        return f"{self.identity}: basis tuple {self.basis} gives residual {_fmt_vec(self.residual)}"


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    counterexamples: tuple[Counterexample, ...] = ()
    checked: int = 0
    meta: Mapping = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "Pass" if self.passed else "Fail"

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        head = f"{self.status}: {self.checked} identities checked"
        if self.meta:
            head += " (" + ", ".join(f"{k}={v}" for k, v in self.meta.items()) + ")"
        return "\n".join([head] + [f"  {c}" for c in self.counterexamples])


def _report(failures: list[Counterexample], checked: int, meta=None) -> VerificationReport:
    return VerificationReport(not failures, tuple(failures), checked, dict(meta or {}))


class _BasisEvaluator:
    """Evaluates monomials on basis tuples, memoizing per (subtree, leaf basis)."""

    def __init__(self, algebra: FDAlgebra):
        self.alg = algebra
        self.cache: dict = {}

    def value(self, m: Monomial, idx: Sequence[int]) -> Mapping[int, Fraction]:
        if isinstance(m, Leaf):
            return {idx[m.var - 1]: Fraction(1)}
        key = (m, tuple(idx[v - 1] for v in m.variables))
        hit = self.cache.get(key)
        if hit is None:
            hit = self.alg.multiply(m.op, self.value(m.left, idx), self.value(m.right, idx))
            self.cache[key] = hit
        return hit

    def poly(self, p: Polynomial, idx: Sequence[int]) -> Sparse:
        out: Sparse = {}
        for m, c in p:
            _axpy(out, c, self.value(m, idx))
        return out


def _eval_sparse(alg: FDAlgebra, m: Monomial, args: Sequence[Mapping[int, Fraction]], cache: dict) -> Mapping[int, Fraction]:
    if isinstance(m, Leaf):
        return args[m.var - 1]
    hit = cache.get(m)
    if hit is None:
        hit = alg.multiply(m.op, _eval_sparse(alg, m.left, args, cache), _eval_sparse(alg, m.right, args, cache))
        cache[m] = hit
    return hit


def evaluate(algebra: FDAlgebra, p: Polynomial, assignment: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Value of ``p`` with ``x_k`` set to ``assignment[k-1]`` (dense vectors)."""
    check_signature(p, algebra.signature)
    args = []
    for k, vec in enumerate(assignment, start=1):
        if len(vec) != algebra.dim:
            raise AlgebraError(f"argument x{k} has length {len(vec)}, algebra has dimension {algebra.dim}")
        args.append(sparse(vec))
    needed = max((max(m.variables) for m in p.monomials), default=0)
    if needed > len(args):
        raise AlgebraError(f"polynomial uses x{needed} but only {len(args)} arguments given")
    out: Sparse = {}
    cache: dict = {}
    for m, c in p:
        _axpy(out, c, _eval_sparse(algebra, m, args, cache))
    return dense(out, algebra.dim)


def _labelled(identities) -> list[tuple[str, Polynomial]]:
    if hasattr(identities, "labelled"):
        return identities.labelled()
    out = []
    for k, item in enumerate(identities, start=1):
        if isinstance(item, Polynomial):
            out.append((f"#{k}", item))
        else:
            out.append((str(item[0]), item[1]))
    return out


def check_identities(algebra: FDAlgebra, identities) -> VerificationReport:
    """Evaluate each polylinear identity on every basis tuple, lexicographically.

    ``identities`` is a :class:`~dendriform.successor.GeneratedIdentitySet`,
    a sequence of polynomials, or a sequence of ``(label, polynomial)``.
    The first failing tuple of each identity is recorded.
    """
    items = _labelled(identities)
    for _, p in items:
        check_signature(p, algebra.signature)
    ev = _BasisEvaluator(algebra)
    failures = []
    for label, p in items:
        if p.is_zero():
            continue
        ok, n = is_polylinear(p)
        if not ok:
            raise ValueError(f"identity {label} is not polylinear")
        for idx in itertools.product(range(algebra.dim), repeat=n):
            res = ev.poly(p, idx)
            if res:
                failures.append(Counterexample(label, tuple(i + 1 for i in idx), dense(res, algebra.dim)))
                break
    return _report(failures, len(items))


def _require_dim(algebra: FDAlgebra, op: LinearOperator) -> None:
    if op.dim != algebra.dim:
        raise AlgebraError(f"operator dimension {op.dim} does not match algebra dimension {algebra.dim}")


def check_rota_baxter(algebra: FDAlgebra, R: LinearOperator, weight) -> VerificationReport:
    """Check ``R(x)R(y) = R(xR(y) + R(x)y + weight*xy)`` on basis pairs for every operation."""
    _require_dim(algebra, R)
    lam = _frac(weight)
    failures = []
    cols = [R.column(j) for j in range(algebra.dim)]
    for op in algebra.ops:
        for a, b in itertools.product(range(algebra.dim), repeat=2):
            ea, eb = {a: Fraction(1)}, {b: Fraction(1)}
            lhs = algebra.multiply(op, cols[a], cols[b])
            inner = algebra.multiply(op, ea, cols[b])
            _axpy(inner, Fraction(1), algebra.multiply(op, cols[a], eb))
            if lam:
                _axpy(inner, lam, algebra.multiply(op, ea, eb))
            res = dict(lhs)
            _axpy(res, Fraction(-1), R.apply(inner))
            if res:
                failures.append(Counterexample(f"RB[{op}]", (a + 1, b + 1), dense(res, algebra.dim)))
                break
    return _report(failures, len(algebra.ops), {"weight": lam})


def derived_dendriform(algebra: FDAlgebra, R: LinearOperator, weight, scaled: bool = True) -> FDAlgebra:
    """Split the products of an algebra with a Rota–Baxter operator.

    Nonzero weight gives an Ω(3)-algebra: scaled uses ``R(x)y/λ, xR(y)/λ, xy``,
    unscaled uses ``R(x)y, xR(y), λxy``.  Weight zero gives the Ω(2)-algebra
    ``R(x)y, xR(y)`` and requires ``scaled=False``.
    """
    lam = _frac(weight)
    if algebra.context is not Context.OMEGA:
        raise SignatureError("derived_dendriform expects an Ω-algebra")
    if lam == 0 and scaled:
        raise ValueError("the scaled convention requires a nonzero weight")
    report = check_rota_baxter(algebra, R, lam)
    if not report:
        raise RotaBaxterError(f"not a Rota-Baxter operator of weight {lam}: {report.counterexamples[0]}")
    k = 1 / lam if scaled else Fraction(1)
    mid = Fraction(1) if scaled else lam
    cols = [R.column(j) for j in range(algebra.dim)]
    context = Context.OMEGA3 if lam else Context.OMEGA2

    def product(op, a, b):
        b_op = OpSymbol(Family.BASE, op.index)
        if op.family is Family.RIGHT:
            v = algebra.multiply(b_op, cols[a], {b: Fraction(1)})
            c = k
        elif op.family is Family.LEFT:
            v = algebra.multiply(b_op, {a: Fraction(1)}, cols[b])
            c = k
        else:
            v = algebra.basis_product(b_op, a, b)
            c = mid
        return {i: x * c for i, x in v.items()}

    return FDAlgebra.from_products(algebra.dim, context, algebra.nops, product)


def _require_associative(algebra: FDAlgebra, what: str) -> None:
    from .varieties import builtin

    if algebra.context is not Context.OMEGA:
        raise SignatureError(f"{what} expects an Ω-algebra")
    assoc = builtin("associative").polynomials()[0]
    ops = [(f"associativity[*{i}]", assoc.map_monomials(lambda m, i=i: _reindex(m, i))) for i in range(1, algebra.nops + 1)]
    report = check_identities(algebra, ops)
    if not report:
        raise AlgebraError(f"{what} needs an associative algebra: {report.counterexamples[0]}")


def _reindex(m: Monomial, i: int) -> Monomial:
    from .terms import map_ops

    return map_ops(m, lambda op: OpSymbol(op.family, i))


def triassociative_tensor_cube(algebra: FDAlgebra) -> FDAlgebra:
    """The triassociative structure on A⊗A⊗A of an associative algebra A.

    ``(a⊗b⊗c) ⊢ (a'⊗b'⊗c') = abca' ⊗ b' ⊗ c'``,
    ``(a⊗b⊗c) ⊣ (a'⊗b'⊗c') = a ⊗ b ⊗ ca'b'c'``,
    ``(a⊗b⊗c) ⊥ (a'⊗b'⊗c') = a ⊗ bca'b' ⊗ c'``.
    Basis ``e_a⊗e_b⊗e_c`` has index ``(a*d + b)*d + c``.
    """
    if algebra.nops != 1:
        raise AlgebraError("the tensor cube is defined for a single associative product")
    _require_associative(algebra, "triassociative_tensor_cube")
    d = algebra.dim
    mul = OpSymbol(Family.BASE, 1)

    def word(*factors: int) -> Sparse:
        acc: Mapping[int, Fraction] = {factors[0]: Fraction(1)}
        for f in factors[1:]:
            acc = algebra.multiply(mul, acc, {f: Fraction(1)})
        return acc

    def product(op, i, j):
        a, b, c = i // (d * d), i // d % d, i % d
        a2, b2, c2 = j // (d * d), j // d % d, j % d
        out: Sparse = {}
        if op.family is Family.RIGHT:
            for p, v in word(a, b, c, a2).items():
                out[(p * d + b2) * d + c2] = v
        elif op.family is Family.LEFT:
            for p, v in word(c, a2, b2, c2).items():
                out[(a * d + b) * d + p] = v
        else:
            for p, v in word(b, c, a2, b2).items():
                out[(a * d + p) * d + c2] = v
        return out

    return FDAlgebra.from_products(d**3, Context.OMEGA3, 1, product)


def stri_from_derivation(algebra: FDAlgebra, D: LinearOperator) -> FDAlgebra:
    """``a ⊢ b = D(a)b``, ``a ⊣ b = aD(b)``, ``a ⊥ b = ab`` for a square-zero derivation D."""
    _require_dim(algebra, D)
    _require_associative(algebra, "stri_from_derivation")
    cols = [D.column(j) for j in range(algebra.dim)]
    for op in algebra.ops:
        for a, b in itertools.product(range(algebra.dim), repeat=2):
            ea, eb = {a: Fraction(1)}, {b: Fraction(1)}
            lhs = D.apply(algebra.basis_product(op, a, b))
            rhs = algebra.multiply(op, cols[a], eb)
            _axpy(rhs, Fraction(1), algebra.multiply(op, ea, cols[b]))
            _axpy(rhs, Fraction(-1), lhs)
            if rhs:
                raise DerivationError(
                    f"not a derivation: D(e{a + 1} {op} e{b + 1}) differs from the Leibniz rule by {_fmt_vec(dense(rhs, algebra.dim))}"
                )
    sq = D @ D
    if not sq.is_zero():
        j = next(j for j in range(D.dim) if sq.column(j))
        raise DerivationError(f"D^2 is not zero: D^2(e{j + 1}) = {_fmt_vec(dense(sq.column(j), D.dim))}")

    def product(op, a, b):
        b_op = OpSymbol(Family.BASE, op.index)
        if op.family is Family.RIGHT:
            return algebra.multiply(b_op, cols[a], {b: Fraction(1)})
        if op.family is Family.LEFT:
            return algebra.multiply(b_op, {a: Fraction(1)}, cols[b])
        return dict(algebra.basis_product(b_op, a, b))

    return FDAlgebra.from_products(algebra.dim, Context.OMEGA3, algebra.nops, product)


DERIVED_BRACKET_IDENTITIES = (
    # *1 is the bracket, *2 the product
    ("leibniz", "((x1 *1 x2) *1 x3) - ((x1 *1 x3) *1 x2) - (x1 *1 (x2 *1 x3))"),
    ("poisson", "((x1 *2 x2) *1 x3) - (x1 *2 (x2 *1 x3)) - ((x1 *1 x3) *2 x2)"),
    ("associativity", "((x1 *2 x2) *2 x3) - (x1 *2 (x2 *2 x3))"),
)


def bracket_algebra(algebra: FDAlgebra, mirrored: bool = False, index: int = 1) -> FDAlgebra:
    """Ω-algebra with ``*1`` a bracket built from ⊣, ⊢ and ``*2`` the ⊥ product.

    The bracket is ``x⊣y − x⊢y``, or ``x⊣y − y⊢x`` when ``mirrored``.
    """
    if algebra.context is not Context.OMEGA3:
        raise SignatureError("bracket_algebra expects an Ω(3)-algebra")
    lt, rt, mid = (OpSymbol(f, index) for f in (Family.LEFT, Family.RIGHT, Family.MIDDLE))

    def product(op, a, b):
        if op.index == 2:
            return dict(algebra.basis_product(mid, a, b))
        out = dict(algebra.basis_product(lt, a, b))
        _axpy(out, Fraction(-1), algebra.basis_product(rt, b, a) if mirrored else algebra.basis_product(rt, a, b))
        return out

    return FDAlgebra.from_products(algebra.dim, Context.OMEGA, 2, product)


def check_derived_bracket(algebra: FDAlgebra, mirrored: bool = False) -> VerificationReport:
    """Right Leibniz rule, ``[xy,z] = x[y,z] + [x,z]y`` and associativity of ⊥."""
    from .terms import parse_polynomial

    ids = [(name, parse_polynomial(text)) for name, text in DERIVED_BRACKET_IDENTITIES]
    return check_identities(bracket_algebra(algebra, mirrored), ids)


# -- sample algebras ---------------------------------------------------------


def truncated_polynomials(n: int) -> FDAlgebra:
    """ℚ[x]/(x^n) with basis e_k = x^k, k = 0..n-1."""
    mul = OpSymbol(Family.BASE, 1)
    return FDAlgebra.from_entries(
        n, Context.OMEGA, 1, {mul: [(a, b, a + b, 1) for a in range(n) for b in range(n) if a + b < n]}
    )


def integration_operator(n: int) -> LinearOperator:
    """x^k ↦ x^(k+1)/(k+1) on ℚ[x]/(x^n); the top degree goes to 0."""
    return LinearOperator.from_columns(n, {k: {k + 1: Fraction(1, k + 1)} for k in range(n - 1)})


def coordinate_algebra(n: int) -> FDAlgebra:
    """ℚ^n with the componentwise product."""
    mul = OpSymbol(Family.BASE, 1)
    return FDAlgebra.from_entries(n, Context.OMEGA, 1, {mul: [(a, a, a, 1) for a in range(n)]})


def projection_operator(n: int, keep: Iterable[int]) -> LinearOperator:
    """Coordinate projection onto the (0-based) coordinates in ``keep``."""
    return LinearOperator.from_columns(n, {k: {k: 1} for k in keep})


def matrix_units(n: int, upper: bool = False) -> FDAlgebra:
    """n×n matrices (or upper-triangular ones) in the basis of matrix units E_ij."""
    units = [(i, j) for i in range(n) for j in range(n) if not upper or i <= j]
    pos = {u: k for k, u in enumerate(units)}
    mul = OpSymbol(Family.BASE, 1)
    rows = [(pos[(i, j)], pos[(j2, l)], pos[(i, l)], 1) for (i, j) in units for (j2, l) in units if j == j2]
    return FDAlgebra.from_entries(len(units), Context.OMEGA, 1, {mul: rows})


def random_algebra(
    dim: int,
    context: Context,
    nops: int = 1,
    seed: int = 0,
    density: float = 0.3,
    coeffs: Sequence[int] = (-2, -1, 1, 2),
) -> FDAlgebra:
    """Sparse random structure constants; every table gets at least one entry."""
    rng = random.Random(seed)
    sig = Signature(nops, context)
    tables = {}
    for op in sig.ops():
        table: dict = {}
        while dim and not table:
            for a, b, c in itertools.product(range(dim), repeat=3):
                if rng.random() < density:
                    table.setdefault((a, b), {})[c] = Fraction(rng.choice(coeffs))
        tables[op] = table
    return FDAlgebra(dim, context, nops, tables)

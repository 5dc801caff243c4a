"""Ω-algebras built from dendriform and tri-algebras.

``double_dendriform`` turns a dendriform algebra A into Â = A ⊕ A′ (first
block A, second block A′) carrying a Rota–Baxter operator, with A embedded
as the second block.  ``bar_quotient`` turns an algebra satisfying the zero
identities into Ā ⊕ A, where Ā is A modulo the differences of its split
operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .fdalg import (
    AlgebraError,
    Counterexample,
    FDAlgebra,
    LinearOperator,
    VerificationReport,
    _axpy,
    _frac,
    _report,
    check_identities,
    dense,
)
from .successor import Mode, generate_dendriform_identities, generate_zero_identities
from .terms import Context, Family, OpSymbol, SignatureError

R_, L_, M_ = Family.RIGHT, Family.LEFT, Family.MIDDLE


@dataclass(frozen=True)
class DoubledAlgebra:
    algebra: FDAlgebra
    rb_operator: LinearOperator
    weight: Fraction
    mode: Mode
    base_dim: int

    def embed(self, a: int) -> int:
        """Index of a′ in Â for the basis vector e_a of A (0-based)."""
        return self.base_dim + a


def _weight_for(mode: Mode, lam) -> Fraction:
    if mode is Mode.TRI:
        if lam is None or _frac(lam) == 0:
            raise ValueError("Tri doubling requires a nonzero weight")
        return _frac(lam)
    if lam is not None and _frac(lam) != 0:
        raise ValueError(f"{mode.value} doubling uses a weight-zero operator; got weight {lam}")
    return Fraction(0)


def _require_context(A: FDAlgebra, mode: Mode) -> None:
    if A.context is not mode.context:
        raise SignatureError(f"{mode.value} mode expects a {mode.context.value} algebra, got {A.context.value}")


def double_dendriform(A: FDAlgebra, mode: Mode, lam=None) -> DoubledAlgebra:
    """Â = A ⊕ A′ with its canonical Rota–Baxter operator.

    Products per index i: ``a∘b`` is the sum of the split products
    (⊢+⊣+⊥ for Tri, ⊢+⊣ otherwise), ``a∘b′ = (a⊢b)′``, ``a′∘b = (a⊣b)′``,
    ``a′∘b′ = (a⊥b)′`` (absent for Di).  The operator is ``R(a′) = λa``,
    ``R(a) = −λa`` for Tri and ``R(a′) = a``, ``R(a) = 0`` otherwise.
    """
    _require_context(A, mode)
    lam = _weight_for(mode, lam)
    d = A.dim
    sum_fams = (R_, L_, M_) if mode is Mode.TRI else (R_, L_)

    def shifted(v):
        return {c + d: x for c, x in v.items()}

    def product(op, p, q):
        i = op.index
        first_p, first_q = p < d, q < d
        a, b = p % d, q % d
        if first_p and first_q:
            out: dict = {}
            for fam in sum_fams:
                _axpy(out, Fraction(1), A.basis_product(OpSymbol(fam, i), a, b))
            return out
        if first_p:
            return shifted(A.basis_product(OpSymbol(R_, i), a, b))
        if first_q:
            return shifted(A.basis_product(OpSymbol(L_, i), a, b))
        if mode is Mode.DI:
            return {}
        return shifted(A.basis_product(OpSymbol(M_, i), a, b))

    hat = FDAlgebra.from_products(2 * d, Context.OMEGA, A.nops, product)
    if mode is Mode.TRI:
        cols = {k: {k: -lam} for k in range(d)} | {d + k: {k: lam} for k in range(d)}
    else:
        cols = {d + k: {k: 1} for k in range(d)}
    return DoubledAlgebra(hat, LinearOperator.from_columns(2 * d, cols), lam, mode, d)


def verify_embedding(dd: DoubledAlgebra, A: FDAlgebra) -> VerificationReport:
    """Check that a ↦ a′ turns the split operations into RB-derived ones.

    Tri: ``ι(a⊢b) = R(ιa)∘ιb / λ``, ``ι(a⊣b) = ιa∘R(ιb) / λ``, ``ι(a⊥b) = ιa∘ιb``.
    Di and STri use the same relations without λ; Di has no ⊥ clause.
    """
    _require_context(A, dd.mode)
    if dd.base_dim != A.dim or dd.algebra.nops != A.nops:
        raise AlgebraError("doubled algebra was not built from this algebra")
    hat, R = dd.algebra, dd.rb_operator
    scale = 1 / dd.weight if dd.mode is Mode.TRI else Fraction(1)
    fams = (R_, L_) if dd.mode is Mode.DI else (R_, L_, M_)
    failures = []
    for i in range(1, A.nops + 1):
        mul = OpSymbol(Family.BASE, i)
        for fam in fams:
            op = OpSymbol(fam, i)
            for a, b in itertools.product(range(A.dim), repeat=2):
                ia, ib = {dd.embed(a): Fraction(1)}, {dd.embed(b): Fraction(1)}
                if fam is R_:
                    rhs = hat.multiply(mul, R.apply(ia), ib)
                    k = scale
                elif fam is L_:
                    rhs = hat.multiply(mul, ia, R.apply(ib))
                    k = scale
                else:
                    rhs = hat.multiply(mul, ia, ib)
                    k = Fraction(1)
                res = {dd.embed(c): x for c, x in A.basis_product(op, a, b).items()}
                _axpy(res, -k, rhs)
                if res:
                    failures.append(Counterexample(f"embedding[{op}]", (a + 1, b + 1), dense(res, hat.dim)))
                    break
    return _report(failures, len(fams) * A.nops)


def check_double_in_variety(A: FDAlgebra, variety, mode: Mode, lam=None) -> tuple[VerificationReport, VerificationReport]:
    """(A against the dendriform set of ``variety``, Â against ``variety``), evaluated independently."""
    dd = double_dendriform(A, mode, lam)
    left = check_identities(A, generate_dendriform_identities(variety, mode))
    right = check_identities(dd.algebra, variety.identities)
    return left, right


# -- bar quotient --------------------------------------------------------------


class BarQuotientError(AlgebraError):
    pass


@dataclass(frozen=True)
class BarQuotient:
    """Ā ⊕ A: Ā occupies indices ``0..bar_dim-1``, A the rest.

    ``basis`` lists the coordinates of A kept as the basis of Ā; ``projection``
    is the ``bar_dim × dim`` matrix of A → Ā.  ``ideal_families`` records the
    split operations for which the kernel is a two-sided ideal.
    """

    hat_algebra: FDAlgebra
    bar_dim: int
    basis: tuple[int, ...]
    projection: tuple[tuple[Fraction, ...], ...]
    kernel: tuple[tuple[Fraction, ...], ...]
    ideal_families: tuple[Family, ...]

    def project(self, v) -> tuple[Fraction, ...]:
        return tuple(sum((row[j] * _frac(x) for j, x in enumerate(v)), Fraction(0)) for row in self.projection)

    def to_json(self, extra=None) -> dict:
        data = self.hat_algebra.to_json(extra)
        data["bar_dim"] = self.bar_dim
        data["projection"] = [[str(x) for x in row] for row in self.projection]
        return data


def bar_quotient(A: FDAlgebra, mode: Mode) -> BarQuotient:
    """Build Ā ⊕ A with ``ā∘b̄ = (a⊢b)‾``, ``ā∘x = a⊢x``, ``x∘ā = x⊣a``, ``x∘y = x⊥y``.

    The kernel A₀ is spanned by ``a⊢b − a⊣b`` (and ``a⊢b − a⊥b`` for Tri).
    Raises if the mode's zero identities fail or if A₀ is not closed under ⊢,
    which is what the products on Ā need to be well defined.
    """
    if mode not in (Mode.TRI, Mode.STRI):
        raise ValueError("bar_quotient is defined for Tri and STri modes")
    _require_context(A, mode)
    report = check_identities(A, [(f"zero={k}", p) for k, p in enumerate(generate_zero_identities(A.nops, mode), 1)])
    if not report:
        raise BarQuotientError(f"zero identities fail: {report.counterexamples[0]}")
    d = A.dim
    gens = []
    for i in range(1, A.nops + 1):
        for a, b in itertools.product(range(d), repeat=2):
            vd = dense(A.basis_product(OpSymbol(R_, i), a, b), d)
            gens.append([x - y for x, y in zip(vd, dense(A.basis_product(OpSymbol(L_, i), a, b), d))])
            if mode is Mode.TRI:
                gens.append([x - y for x, y in zip(vd, dense(A.basis_product(OpSymbol(M_, i), a, b), d))])
    kernel = linalg.rref(gens, d)
    red, pivots = kernel
    keep = tuple(c for c in range(d) if c not in set(pivots))
    n = len(keep)

    ideal = []
    for fam in (R_, L_, M_):
        closed = all(
            linalg.in_span(kernel, dense(v, d))
            for i in range(1, A.nops + 1)
            for row in red
            for c in range(d)
            for v in (
                A.multiply(OpSymbol(fam, i), {c: Fraction(1)}, _sparse(row)),
                A.multiply(OpSymbol(fam, i), _sparse(row), {c: Fraction(1)}),
            )
        )
        if closed:
            ideal.append(fam)
    if R_ not in ideal:
        raise BarQuotientError("the span of the split-operation differences is not closed under ⊢")

    def project(v):
        w = linalg.reduce_mod(kernel, dense(v, d))
        return {k: w[c] for k, c in enumerate(keep) if w[c]}

    def shifted(v):
        return {c + n: x for c, x in v.items()}

    def product(op, p, q):
        i = op.index
        if p < n and q < n:
            return project(A.basis_product(OpSymbol(R_, i), keep[p], keep[q]))
        if p < n:
            return shifted(A.basis_product(OpSymbol(R_, i), keep[p], q - n))
        if q < n:
            return shifted(A.basis_product(OpSymbol(L_, i), p - n, keep[q]))
        return shifted(A.basis_product(OpSymbol(M_, i), p - n, q - n))

    hat = FDAlgebra.from_products(n + d, Context.OMEGA, A.nops, product)
    proj = tuple(tuple(linalg.reduce_mod(kernel, [int(j == c) for j in range(d)])[k] for c in range(d)) for k in keep)
    return BarQuotient(hat, n, keep, proj, tuple(map(tuple, red)), tuple(ideal))


def _sparse(row) -> dict:
    return {i: x for i, x in enumerate(row) if x}

import json
from fractions import Fraction

import pytest

from dendriform.fdalg import (
    AlgebraError,
    DerivationError,
    FDAlgebra,
    LinearOperator,
    RotaBaxterError,
    check_derived_bracket,
    check_identities,
    check_rota_baxter,
    coordinate_algebra,
    derived_dendriform,
    evaluate,
    integration_operator,
    matrix_units,
    projection_operator,
    random_algebra,
    stri_from_derivation,
    triassociative_tensor_cube,
    truncated_polynomials,
)
from dendriform.successor import Mode, generate_dendriform_identities, generate_variety_identities
from dendriform.terms import Context, Family, OpSymbol, SignatureError, parse_polynomial
from dendriform.varieties import builtin
from models import (
    MUL,
    d_by_d_epsilon,
    diagonal_projection,
    dual_numbers,
    exterior_derivation,
    exterior_plane,
    inner_derivation_by_e12,
    strictly_upper_nilpotent,
    upper_triangular,
)

ASSOC = builtin("associative")
ASSOCIATOR = ASSOC.polynomials()[0]
E = [Fraction(1), Fraction(0)]


def idempotent_line():
    return FDAlgebra.from_entries(2, Context.OMEGA, 1, {MUL: [(0, 0, 0, 1)]})


def test_evaluate_basics():
    A = idempotent_line()
    assert evaluate(A, parse_polynomial("(x1 *1 x2)"), [E, E]) == (1, 0)
    assert evaluate(A, ASSOCIATOR, [E, E, E]) == (0, 0)


def test_evaluate_errors():
    A = idempotent_line()
    with pytest.raises(AlgebraError):
        evaluate(A, parse_polynomial("(x1 *1 x2)"), [E, [1, 0, 0]])
    with pytest.raises(SignatureError):
        evaluate(A, parse_polynomial("(x1 *2 x2)"), [E, E])
    with pytest.raises(SignatureError):
        evaluate(A, parse_polynomial("(x1 <1 x2)"), [E, E])
    with pytest.raises(AlgebraError):
        evaluate(A, parse_polynomial("(x1 *1 x2)"), [E])


def test_truncated_cubic_is_associative():
    A = truncated_polynomials(3)
    for idx in [(0, 1, 1), (1, 1, 0), (2, 0, 0)]:
        args = [[int(k == i) for k in range(3)] for i in idx]
        assert not any(evaluate(A, ASSOCIATOR, args))
    assert check_identities(A, ASSOC.identities)


def test_asymmetric_table_fails_commutativity_at_first_tuple():
    A = FDAlgebra.from_entries(2, Context.OMEGA, 1, {MUL: [(0, 1, 0, 1)]})
    report = check_identities(A, builtin("commutative").identities[:1])
    assert not report
    (cx,) = report.counterexamples
    assert cx.identity == "f1" and cx.basis == (1, 2) and cx.residual == (1, 0)


def test_zero_operator_is_rota_baxter_of_weight_zero():
    A = random_algebra(3, Context.OMEGA, 2, seed=5)
    assert check_rota_baxter(A, LinearOperator.zero(3), 0)


def test_integration_and_projection_oracles():
    assert check_rota_baxter(truncated_polynomials(5), integration_operator(5), 0)
    plane, proj = coordinate_algebra(2), projection_operator(2, [0])
    assert check_rota_baxter(plane, proj, -1)
    report = check_rota_baxter(plane, proj, 0)
    assert not report and report.counterexamples[0].residual == (-1, 0)


def test_upper_triangular_operators():
    ut = upper_triangular()
    assert check_rota_baxter(ut, diagonal_projection(), -1)
    assert check_rota_baxter(ut, LinearOperator.identity(3) * -2, 2)
    assert check_rota_baxter(ut, strictly_upper_nilpotent(3, -1), 0)


def test_derived_dendriform_end_to_end():
    di = derived_dendriform(truncated_polynomials(5), integration_operator(5), 0, scaled=False)
    assert di.context is Context.OMEGA2
    assert check_identities(di, generate_dendriform_identities(ASSOC, Mode.DI))
    tri = derived_dendriform(coordinate_algebra(2), projection_operator(2, [0]), -1)
    assert tri.context is Context.OMEGA3
    assert check_identities(tri, generate_dendriform_identities(ASSOC, Mode.TRI))


def test_zero_operator_gives_zero_split():
    A = truncated_polynomials(3)
    D = derived_dendriform(A, LinearOperator.zero(3), 0, scaled=False)
    assert all(not D.tables[op] for op in D.ops)


def test_derived_dendriform_errors():
    A, R = coordinate_algebra(2), projection_operator(2, [0])
    with pytest.raises(ValueError):
        derived_dendriform(A, R, 0, scaled=True)
    with pytest.raises(RotaBaxterError):
        derived_dendriform(A, R, 0, scaled=False)


@pytest.mark.parametrize("lam", [Fraction(-1), Fraction(2), Fraction(1, 3)])
def test_scaled_and_unscaled_agree_up_to_rescaling(lam):
    A, R = upper_triangular(), diagonal_projection() * (-lam)
    scaled = derived_dendriform(A, R, lam, scaled=True)
    unscaled = derived_dendriform(A, R, lam, scaled=False)
    assert unscaled == scaled.scaled(lam)
    for D in (scaled, unscaled):
        assert check_identities(D, generate_dendriform_identities(ASSOC, Mode.TRI))


def test_tensor_cube():
    one = triassociative_tensor_cube(truncated_polynomials(1))
    assert one.dim == 1 and all(one.entries(op) == [(0, 0, 0, 1)] for op in one.ops)
    tri = generate_variety_identities(ASSOC, Mode.TRI)
    cube = triassociative_tensor_cube(truncated_polynomials(2))
    assert cube.dim == 8 and check_identities(cube, tri)
    big = triassociative_tensor_cube(upper_triangular())
    assert big.dim == 27 and check_identities(big, tri)
    with pytest.raises(AlgebraError):
        triassociative_tensor_cube(random_algebra(2, Context.OMEGA, seed=1))


def test_derivation_preconditions():
    # d/d(eps) is not a derivation of the dual numbers: D(eps eps) = 0 but 2 eps D(eps) = 2 eps
    with pytest.raises(DerivationError, match="not a derivation"):
        stri_from_derivation(dual_numbers(), d_by_d_epsilon())
    # x d/dx on Q[x]/(x^3) is a derivation whose square is not zero
    with pytest.raises(DerivationError, match="D\\^2"):
        stri_from_derivation(truncated_polynomials(3), LinearOperator.from_columns(3, {1: {1: 1}, 2: {2: 2}}))


@pytest.mark.parametrize(
    "algebra, derivation",
    [(exterior_plane(), exterior_derivation()), (upper_triangular(), inner_derivation_by_e12()), (dual_numbers(), LinearOperator.zero(2))],
    ids=["exterior", "upper-triangular", "zero"],
)
def test_square_zero_derivations_give_skew_trialgebras(algebra, derivation):
    S = stri_from_derivation(algebra, derivation)
    assert check_identities(S, generate_variety_identities(ASSOC, Mode.STRI))
    assert check_derived_bracket(S, mirrored=True)


@pytest.mark.parametrize(
    "algebra",
    [stri_from_derivation(exterior_plane(), exterior_derivation()), triassociative_tensor_cube(truncated_polynomials(2))],
    ids=["derivation", "tensor-cube"],
)
def test_derived_bracket_conventions(algebra):
    assert check_derived_bracket(algebra, mirrored=True)
    literal = check_derived_bracket(algebra, mirrored=False)
    assert "poisson" in {c.identity for c in literal.counterexamples}


def test_json_round_trip(tmp_path):
    A = random_algebra(3, Context.OMEGA3, 2, seed=11)
    data = json.loads(json.dumps(A.to_json({"provenance": {"tool": "x"}})))
    assert FDAlgebra.from_json(data) == A
    assert data["ops"][0]["table"][0][0] >= 1
    R = integration_operator(4)
    assert LinearOperator.from_json(json.loads(json.dumps(R.to_json()))) == R


@pytest.mark.parametrize(
    "data",
    [
        {"dim": 2, "context": "omega", "nops": 1, "ops": [{"family": "base", "index": 1, "table": [[1, 3, 1, "1"]]}]},
        {"dim": 2, "context": "omega", "nops": 1, "ops": [{"family": "left", "index": 1, "table": []}]},
        {"dim": 2, "context": "omega9", "nops": 1, "ops": []},
        {"dim": 2, "context": "omega", "nops": 1, "ops": [{"family": "base", "index": 1, "table": [[1, 1, 1, "x"]]}]},
    ],
)
def test_malformed_algebra_json(data):
    with pytest.raises(ValueError):
        FDAlgebra.from_json(data)


def test_tables_drop_explicit_zeros():
    A = FDAlgebra.from_entries(2, Context.OMEGA, 1, {MUL: [(0, 0, 0, 1), (0, 0, 0, -1), (1, 1, 0, 0)]})
    assert A.entries(MUL) == []


def test_random_algebra_is_seeded_and_nonempty():
    a = random_algebra(3, Context.OMEGA3, 2, seed=42)
    assert a == random_algebra(3, Context.OMEGA3, 2, seed=42)
    assert all(a.tables[op] for op in a.ops)


def _random_vector(rng, d):
    return [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(d)]


def test_evaluation_is_multilinear(rng):
    p = parse_polynomial("((x1 >1 x2) <2 x3) - 2 (x1 .2 (x3 <1 x2))")
    for seed in range(20):
        A = random_algebra(3, Context.OMEGA3, 2, seed=seed)
        args = [_random_vector(rng, 3) for _ in range(3)]
        u, v = _random_vector(rng, 3), _random_vector(rng, 3)
        a, b = Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))
        for slot in range(3):
            mix = list(args)
            mix[slot] = [a * s + b * t for s, t in zip(u, v)]
            with_u, with_v = list(args), list(args)
            with_u[slot], with_v[slot] = u, v
            lhs = evaluate(A, p, mix)
            rhs = [a * s + b * t for s, t in zip(evaluate(A, p, with_u), evaluate(A, p, with_v))]
            assert list(lhs) == rhs


def test_basis_verdict_matches_random_vectors(rng):
    identities = generate_variety_identities(ASSOC, Mode.TRI)
    for seed in range(15):
        A = random_algebra(2, Context.OMEGA3, 1, seed=seed, density=0.15)
        verdict = bool(check_identities(A, identities))
        vanishes = all(
            not any(evaluate(A, p, [_random_vector(rng, 2) for _ in range(3)]))
            for p in identities.polynomials()
            for _ in range(4)
        )
        assert verdict == vanishes
    assert check_identities(triassociative_tensor_cube(truncated_polynomials(2)), identities)


def test_report_summary_mentions_tuple():
    A = FDAlgebra.from_entries(2, Context.OMEGA, 1, {MUL: [(0, 1, 0, 1)]})
    text = check_identities(A, builtin("commutative").identities).summary()
    assert text.startswith("Fail") and "(1, 2)" in text


def test_matrix_units_dimension():
    assert matrix_units(3).dim == 9 and matrix_units(3, upper=True).dim == 6
    assert OpSymbol(Family.BASE, 1) in matrix_units(2).tables


import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import monomials, random_monomial
from dendriform.successor import (
    Mode,
    emphasis_sets,
    generate_dendriform_identities,
    generate_variety_identities,
    generate_zero_identities,
    phi,
    phi_star,
    vanishing_identities,
)
from dendriform.terms import Family, Leaf, Polynomial, map_ops, parse_monomial, parse_polynomial, read_identity_lines, render, shape
from dendriform.varieties import builtin

ASSOC = builtin("associative")
FIVE_LEAF_TREE = "((x5 *1 (x1 *3 x3)) *2 (x2 *1 x4))"


def collapse(m):
    return map_ops(m, lambda op: op.with_family(Family.BASE))


def test_labelling_of_the_five_leaf_tree():
    u = parse_monomial(FIVE_LEAF_TREE)
    assert str(phi(u, {1, 2})) == "((x5 >1 (x1 <3 x3)) .2 (x2 <1 x4))"


def test_emphasis_sets_colex():
    sets = [sorted(h) for h in emphasis_sets(3, Mode.TRI)]
    assert sets == [[1], [2], [1, 2], [3], [1, 3], [2, 3], [1, 2, 3]]
    assert [sorted(h) for h in emphasis_sets(3, Mode.DI)] == [[1], [2], [3]]


def test_triassociative_identities():
    gen = generate_variety_identities(ASSOC, Mode.TRI)
    assert len(gen.dotted_identities) == 7
    assert len(gen.zero_identities) == 4
    by_h = {tuple(sorted(d.H)): d.poly for d in gen.dotted_identities}
    assert by_h[(1, 3)] == parse_polynomial("(x1 .1 (x2 >1 x3)) - ((x1 <1 x2) .1 x3)")
    assert by_h[(1, 2, 3)] == parse_polynomial("(x1 .1 (x2 .1 x3)) - ((x1 .1 x2) .1 x3)")


def test_diassociative_identities():
    gen = generate_variety_identities(ASSOC, Mode.DI)
    expected = [
        "((x1 <1 x2) >1 x3) = ((x1 >1 x2) >1 x3)",
        "(x1 <1 (x2 >1 x3)) = (x1 <1 (x2 <1 x3))",
        "(x1 <1 (x2 <1 x3)) = ((x1 <1 x2) <1 x3)",
        "(x1 >1 (x2 <1 x3)) = ((x1 >1 x2) <1 x3)",
        "(x1 >1 (x2 >1 x3)) = ((x1 >1 x2) >1 x3)",
    ]
    assert gen.polynomials() == [parse_polynomial(e) for e in expected]


def test_dendriform_associative_di():
    gen = generate_dendriform_identities(ASSOC, Mode.DI)
    expected = [
        "(x1 <1 (x2 <1 x3)) + (x1 <1 (x2 >1 x3)) = ((x1 <1 x2) <1 x3)",
        "(x1 >1 (x2 <1 x3)) = ((x1 >1 x2) <1 x3)",
        "(x1 >1 (x2 >1 x3)) = ((x1 <1 x2) >1 x3) + ((x1 >1 x2) >1 x3)",
    ]
    assert gen.polynomials() == [parse_polynomial(e) for e in expected]


def test_zero_identity_counts():
    for nops in (1, 2, 3):
        assert len(generate_zero_identities(nops, Mode.DI)) == 2 * nops**2
        assert len(generate_zero_identities(nops, Mode.STRI)) == 2 * nops**2
        assert len(generate_zero_identities(nops, Mode.TRI)) == 4 * nops**2
        assert len(vanishing_identities(nops)) == 2 * nops**2


def test_stri_dendriform_adds_vanishing_families():
    gen = generate_dendriform_identities(ASSOC, Mode.STRI)
    assert gen.zero_identities == tuple(vanishing_identities(1))
    assert render(gen.zero_identities[0]) == "((x1 .1 x2) >1 x3)"
    # H = {1} in the skew case only sums the two dendriform halves
    first = gen.dotted_identities[0]
    assert first.poly == parse_polynomial("(x1 <1 (x2 <1 x3)) + (x1 <1 (x2 >1 x3)) - ((x1 <1 x2) <1 x3)")


def test_di_requires_singletons():
    with pytest.raises(ValueError):
        phi_star(parse_monomial("(x1 *1 x2)"), {1, 2}, Mode.DI)


def test_emphasis_outside_variables_is_rejected():
    with pytest.raises(ValueError):
        phi(parse_monomial("(x1 *1 x2)"), {3})
    with pytest.raises(ValueError):
        phi(parse_monomial("(x1 *1 x2)"), set())


def test_non_polylinear_variety_rejected():
    from dendriform.varieties import VarietyError, VarietyPresentation

    with pytest.raises(VarietyError):
        VarietyPresentation(1, (("f1", parse_polynomial("(x1 *1 x1)")),))


def test_identity_text_round_trip():
    gen = generate_dendriform_identities(builtin("poisson"), Mode.TRI)
    headers, entries = read_identity_lines(gen.to_text(["demo"]), gen.signature)
    assert headers["nops"] == "2" and headers["mode"] == "tri dendriform"
    assert [p for _, p in entries] == gen.polynomials()


def _unemphasized_nodes(u, H):
    if isinstance(u, Leaf):
        return 0
    own = 0 if set(u.variables) & H else 1
    return own + _unemphasized_nodes(u.left, H) + _unemphasized_nodes(u.right, H)


@st.composite
def monomial_and_emphasis(draw):
    u = draw(monomials(max_degree=6))
    bits = draw(st.integers(1, 2**u.degree - 1))
    return u, frozenset(k + 1 for k in range(u.degree) if bits >> k & 1)


@given(monomial_and_emphasis())
def test_labelling_keeps_shape_and_collapses_back(data):
    u, H = data
    v = phi(u, H)
    assert shape(v) == shape(u)
    assert collapse(v) == u
    assert all(op.family is not Family.BASE for op in Polynomial.monomial(v).ops())


@given(monomial_and_emphasis())
def test_star_expansion_counts(data):
    u, H = data
    for mode, width in ((Mode.TRI, 3), (Mode.STRI, 2)):
        p = phi_star(u, H, mode)
        k = _unemphasized_nodes(u, H)
        assert len(p) == width**k
        assert all(c == 1 for _, c in p)
        assert all(collapse(m) == u for m in p.monomials)
        assert phi(u, H) in p.monomials or k > 0


@given(monomial_and_emphasis())
def test_star_expansion_agrees_with_labelling_on_emphasized_spine(data):
    u, H = data
    if _unemphasized_nodes(u, H) == 0:
        assert phi_star(u, H) == Polynomial.monomial(phi(u, H))


def test_middle_appears_only_with_two_sided_emphasis(rng):
    for _ in range(200):
        u = random_monomial(rng, rng.randint(2, 6))
        H = frozenset(rng.sample(range(1, u.degree + 1), 1))
        assert Family.MIDDLE not in {op.family for op in Polynomial.monomial(phi(u, H)).ops()}

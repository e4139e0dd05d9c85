import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import load_example
from hered.algebra import MonomialAlgebra
from hered.bardzell import compute_ap
from hered.modrep import is_injective, projective
from hered.preprojective import (
    canonical_rotation,
    compare_constructions,
    cy_check_capped,
    cyclic_derivative,
    enumerate_cuts,
    is_algebraic_cut,
    is_cut,
    is_monomial_cut,
    jacobian,
    jacobian_basis,
    koszul_preprojective,
    loewy_length,
    loewy_profile,
    middle_matrix_indecomposable,
    parse_qp,
    qp_from_gldim2,
    second_derivative,
    selfinjectivity_check,
    star_analysis,
    truncated_jacobian,
)
from hered.quiver import ParseError, PresentationError, linear_truncated, random_presentation

TRIANGLE = "vertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 1\nterm c b a\n"


def named(q, elem):
    return {q.name(p): c for p, c in elem.items()}


def test_terms_are_stored_in_canonical_rotation():
    qp = parse_qp(TRIANGLE.replace("term c b a", "term b a c"))
    assert qp.term_names() == ["a c b"]
    q = qp.quiver
    assert canonical_rotation(q, q.path(["c", "b", "a"])) == q.path(["a", "c", "b"])


def test_repeated_rotations_merge():
    qp = parse_qp(TRIANGLE + "term 2 b a c\n")
    assert [c for c, _ in qp.terms] == [3]


def test_qp_rejects_relations_and_open_terms():
    with pytest.raises(PresentationError, match="term"):
        parse_qp(TRIANGLE + "relation b a\n")
    with pytest.raises(PresentationError, match="not a cycle"):
        parse_qp("vertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nterm b a\n")


def test_inhomogeneous_potential_needs_weights():
    text = TRIANGLE + "arrow d: 1 -> 3\narrow e: 3 -> 1\nterm e d\n"
    with pytest.raises(PresentationError, match="homogeneous"):
        parse_qp(text)
    qp = parse_qp(text + "weight e 2\nweight d 1\n")
    assert qp.degree == 3


def test_cyclic_derivatives_of_triangle():
    qp = parse_qp(TRIANGLE)
    q = qp.quiver
    assert named(q, cyclic_derivative(qp, q.arrow("a"))) == {"c b": 1}
    assert named(q, cyclic_derivative(qp, q.arrow("b"))) == {"a c": 1}
    assert named(q, second_derivative(qp, q.arrow("a"), q.arrow("b"))) == {"c": 1}


def test_qp_from_a3(a3j2):
    qp, cmap = qp_from_gldim2(a3j2)
    assert len(qp.quiver.arrows) == 3 and qp.term_names() == ["a c_b_a b"]
    assert len(cmap) == 1


def test_qp_from_gldim2_rejects_other_dimensions():
    with pytest.raises(ValueError):
        qp_from_gldim2(linear_truncated(5, 2))


def test_triangle_jacobian():
    info = jacobian_basis(load_example("a3j2-pi"))
    # each vertex contributes an idempotent and one arrow; paths of length 2 vanish
    assert info["graded_dimensions"][:2] == [3, 3] and info["dimension"] == 6


def test_star44_jacobian_and_selfinjectivity(star44):
    qp, _ = qp_from_gldim2(star44)
    jac = jacobian(qp)
    assert jac.graded_dimensions()[:4] == [9, 16, 16, 9] and jac.dimension == 50
    verdict = selfinjectivity_check(jac)
    assert verdict.selfinjective
    assert set(loewy_profile(jac.algebra)) == {4}
    assert all(middle_matrix_indecomposable(jac, i) for i in qp.quiver.vertices)
    assert all(is_injective(projective(jac.algebra, v)) for v in qp.quiver.vertices)


def test_star96_preprojective_is_selfinjective():
    jac = jacobian(load_example("star96-pi"))
    assert jac.graded_dimensions()[:7] == [16, 33, 57, 82, 57, 33, 16]
    assert selfinjectivity_check(jac).selfinjective
    assert set(loewy_profile(jac.algebra)) == {7}


def test_cuts_of_triangle_are_algebraic():
    qp = load_example("a3j2-pi")
    cuts = enumerate_cuts(qp)
    assert len(cuts) == 3
    for cut in cuts:
        assert is_cut(qp, cut) and is_monomial_cut(qp, cut)
        info = is_algebraic_cut(qp, cut)
        assert info["algebraic"] and info["gldim"] == 2


def test_non_algebraic_cut_on_two_triangles():
    qp = load_example("two-triangles")
    q = qp.quiver
    cut = frozenset({q.arrow("x"), q.arrow("v")})
    info = is_algebraic_cut(qp, cut)
    assert info["gldim"] == 3 and not info["algebraic"]
    rels = {q.name(p) for r in truncated_jacobian(qp, cut).relations for p in r}
    assert len(rels) == 2
    z_cut = frozenset({q.arrow("z")})
    assert is_cut(qp, z_cut) and not is_monomial_cut(qp, z_cut)


def test_cut_recovers_original_algebra(star44):
    qp, cmap = qp_from_gldim2(star44)
    cut = frozenset(cmap.values())
    pres = truncated_jacobian(qp, cut).presentation()
    assert sorted(pres.quiver.name(r) for r in pres.relations) == sorted(star44.quiver.name(r) for r in star44.relations)


def test_cy_check_flags_finite_jacobian():
    out = cy_check_capped(load_example("a3j2-pi"), 4)
    assert out["status"] == "violated" and out["witness"] is not None


def test_koszul_matches_qp_on_stars(a3j2, star44, star96):
    for pres in (a3j2, star44, star96):
        cmp = compare_constructions(pres)
        assert cmp["agree"] and cmp["same_relation_span"]


def test_koszul_for_higher_n():
    kp = koszul_preprojective(linear_truncated(4, 2))
    assert kp.n == 3 and sum(kp.algebra().graded_dimensions()) == 8
    with pytest.raises(ValueError):
        koszul_preprojective(linear_truncated(5, 3))


def test_star_analysis(star44):
    sd = star_analysis(star44)
    assert sd.center == "z" and sd.z_in["a1"] == ["b1", "b2"]
    assert star_analysis(linear_truncated(4, 2)) is None


def test_loewy_length_of_projectives(a3j2):
    alg = MonomialAlgebra(a3j2)
    assert [loewy_length(projective(alg, v)) for v in range(3)] == [2, 2, 1]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 100_000))
def test_constructions_agree_on_random_gldim2(seed):
    pres = random_presentation(random.Random(seed), max_length=2)
    data = compute_ap(pres)
    if data.top_degree != 2:
        return
    assert compare_constructions(pres)["agree"]


def test_fraction_coefficients_parse():
    qp = parse_qp(TRIANGLE.replace("term c b a", "term 1/2 c b a"))
    assert qp.terms[0][0] == Fraction(1, 2)

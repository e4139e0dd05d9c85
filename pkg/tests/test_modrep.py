import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import load_example
from hered.algebra import MonomialAlgebra
from hered.modrep import (
    GlobalDimensionMismatch,
    direct_sum,
    ext_dims,
    hom_dim,
    injective,
    is_indecomposable,
    is_injective,
    is_projective,
    kernel,
    module_global_dimension,
    nrf_probe,
    projective,
    projective_cover,
    projective_dimension,
    projective_resolution,
    regular,
    simple,
    split_summands,
    syzygy,
)
from hered.preprojective import jacobian, qp_from_gldim2
from hered.quiver import linear_truncated, random_presentation


def test_indecomposable_projectives_and_injectives_of_a3(a3j2_alg):
    assert [projective(a3j2_alg, v).dims for v in range(3)] == [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
    assert [injective(a3j2_alg, v).dims for v in range(3)] == [[1, 0, 0], [1, 1, 0], [0, 1, 1]]
    assert all(projective(a3j2_alg, v).relations_hold() for v in range(3))
    assert all(injective(a3j2_alg, v).relations_hold() for v in range(3))


def test_projective_injective_detection(a3j2_alg):
    assert is_projective(injective(a3j2_alg, 1))
    assert is_injective(projective(a3j2_alg, 0))
    assert not is_projective(simple(a3j2_alg, 0))


def test_projective_cover_and_syzygy(a3j2_alg):
    S = simple(a3j2_alg, 0)
    P, f = projective_cover(S)
    assert P.dims == [1, 1, 0] and f.is_homomorphism()
    omega, _ = syzygy(S)
    assert omega.dims == [0, 1, 0]
    K, inc = kernel(f)
    assert K.dims == omega.dims and inc.is_homomorphism()


def test_resolution_lengths(a3j2_alg):
    assert projective_dimension(simple(a3j2_alg, 0)) == 2
    assert projective_dimension(injective(a3j2_alg, 0)) == 2
    res = projective_resolution(simple(a3j2_alg, 0), 4)
    assert res.length == 2
    assert res.multiplicities() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert module_global_dimension(a3j2_alg) == 2


def test_ext_from_simple_to_regular(a3j2_alg):
    assert ext_dims(simple(a3j2_alg, 0), regular(a3j2_alg), 2) == [0, 0, 1]


def test_indecomposability_and_splitting(a3j2_alg):
    assert is_indecomposable(projective(a3j2_alg, 0))
    assert not is_indecomposable(direct_sum([simple(a3j2_alg, 0), simple(a3j2_alg, 1)]))
    parts = split_summands(direct_sum([projective(a3j2_alg, 0), simple(a3j2_alg, 2)]))
    assert sorted(p.dims for p in parts) == [[0, 0, 1], [1, 1, 0]]


def test_nrf_probe_on_a3(a3j2):
    v = nrf_probe(a3j2, 2)
    assert v.status == "n-RF"
    assert [o.dims for o in v.orbits] == [[[1, 1, 0]], [[0, 1, 1]], [[0, 0, 1], [1, 0, 0]]]
    assert v.total_dimension == 6


def test_nrf_probe_detects_ext_nonvanishing():
    v = nrf_probe(linear_truncated(5, 3), 3)
    assert v.status == "violated"
    assert v.witness["kind"] == "EXT_NONVANISHING" and v.witness["degree"] == 2


def test_nrf_probe_rejects_wrong_n(a3j2):
    with pytest.raises(GlobalDimensionMismatch):
        nrf_probe(a3j2, 3)


def test_nrf_probe_reports_cap():
    v = nrf_probe(linear_truncated(5, 2), 4, cap=0)
    assert v.status == "inconclusive" and v.witness["kind"] == "CAP_REACHED"


@pytest.mark.parametrize("name", ["a3j2", "star44"])
def test_orbit_total_equals_preprojective_dimension(name):
    pres = load_example(name)
    v = nrf_probe(pres, 2)
    qp, _ = qp_from_gldim2(pres)
    assert v.status == "n-RF"
    assert v.total_dimension == jacobian(qp).dimension


@pytest.mark.parametrize("m,n,total", [(4, 3, 8), (5, 4, 10)])
def test_orbit_totals_for_radical_square_zero(m, n, total):
    assert nrf_probe(linear_truncated(m, 2), n).total_dimension == total


def _modules(alg):
    out = []
    for v in alg.quiver.vertices:
        out += [projective(alg, v), injective(alg, v), simple(alg, v)]
        omega, _ = syzygy(injective(alg, v))
        if not omega.is_zero():
            out.append(omega)
    return out


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 100_000))
def test_yoneda(seed):
    alg = MonomialAlgebra(random_presentation(random.Random(seed), max_vertices=4))
    for M in _modules(alg):
        for v in alg.quiver.vertices:
            assert hom_dim(projective(alg, v), M) == M.dims[v]
            assert hom_dim(M, injective(alg, v)) == M.dims[v]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 100_000))
def test_ext_zero_is_hom(seed):
    alg = MonomialAlgebra(random_presentation(random.Random(seed), max_vertices=4))
    lam = regular(alg)
    for v in alg.quiver.vertices:
        I = injective(alg, v)
        assert ext_dims(I, lam, 0)[0] == hom_dim(I, lam)

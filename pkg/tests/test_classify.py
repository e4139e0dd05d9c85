import random

import pytest
from hypothesis import given, settings, strategies as st

from hered.algebra import MonomialAlgebra
from hered.bardzell import compute_ap
from hered.bimodule_ext import obstruction_battery
from hered.classify import (
    branching_case_check,
    canonical_form,
    cyclic_star,
    enumerate_chain_unions,
    is_star,
    literal_predicate,
    pipeline,
    planar_exclusion_count,
    presentation_from_key,
    presentation_key,
    star_from_zsystem,
    star_lemma_check,
    star_zsystems,
    truncated_library,
    truncated_predicate,
    verify_theorem_higher,
    verify_theorem_planar_n2,
    verify_truncated_classification,
)
from hered.modrep import (
    ext_module,
    injective,
    is_indecomposable,
    is_projective,
    nrf_probe,
    regular,
    simple,
    split_summands,
    syzygy,
)
from hered.quiver import MonomialPresentation, Quiver, linear_truncated, random_presentation, star_presentation


@pytest.mark.parametrize("m,ell,expected", [
    (5, 2, (True, 4)),
    (4, 3, (True, 2)),
    (7, 3, (True, 4)),
    (5, 3, (False, None)),
    (6, 4, (False, None)),
])
def test_literal_predicate(m, ell, expected):
    assert literal_predicate(m, ell) == expected


def test_degenerate_range_is_one_hereditary():
    assert truncated_predicate(3, 4) == (True, 1)
    assert literal_predicate(3, 4) == (False, None)
    v = pipeline(linear_truncated(3, 4))
    assert v.hereditary and v.n == 1


def test_truncated_classification_small_grid():
    rows = verify_truncated_classification(range(2, 8), range(2, 5))
    assert all(r.agrees for r in rows), [(r.m, r.ell, r.verdict.stage) for r in rows if not r.agrees]


def test_pipeline_stages():
    assert pipeline(linear_truncated(5, 2)).stage == "nrf"
    v = pipeline(linear_truncated(5, 3))
    assert not v.hereditary and v.stage in ("battery", "ext", "nrf")
    assert pipeline(cyclic_star(5)).stage in ("battery", "ext")
    d = pipeline(linear_truncated(4, 3)).to_dict()
    assert d["n_hereditary"] and d["n"] == 2


def test_infinite_dimensional_stage():
    q = Quiver(["1", "2", "3"], [("a", 0, 1), ("b", 1, 0), ("c", 1, 2)])
    pres = MonomialPresentation(q, [q.path(["c", "a"])])
    assert pipeline(pres).stage == "finite"


def _relabel(pres, rng):
    q = pres.quiver
    perm = list(range(len(q.vertices)))
    rng.shuffle(perm)
    arrows = [(perm[a.tail], perm[a.head]) for a in q.arrows]
    rels = []
    for r in pres.relations:
        seq = [r.source] + [q.arrows[a].head for a in reversed(r.arrows)]
        rels.append([perm[v] for v in seq])
    order = list(range(len(arrows)))
    rng.shuffle(order)
    return canonical_form(len(q.vertices), [arrows[i] for i in order], rels)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000), st.integers(0, 100_000))
def test_canonical_form_ignores_labels(seed, seed2):
    pres = random_presentation(random.Random(seed), max_vertices=5, max_arrows=6, max_relations=4)
    assert _relabel(pres, random.Random(seed2)) == presentation_key(pres)


def test_key_roundtrip():
    pres = linear_truncated(5, 2)
    key = presentation_key(pres)
    assert presentation_key(presentation_from_key(key)) == key


def test_is_star():
    assert is_star(cyclic_star(4)) == (4, 4)
    assert is_star(star_presentation(2, 3, [(1, 1), (2, 3)])) == (2, 3)
    assert is_star(linear_truncated(4, 2)) is None


def test_star_zsystems_small():
    assert star_zsystems(1, 1) == [((0,),)]
    # both sides antichains of nonempty sets
    for key in star_zsystems(3, 3):
        sets = [set(z) for z in key]
        assert all(sets) and not any(a < b or a == b for i, a in enumerate(sets) for b in sets[i + 1:])


def test_cyclic_star_is_the_44_survivor():
    key = presentation_key(star_from_zsystem(4, 4, ((0, 1), (0, 2), (1, 3), (2, 3))))
    assert presentation_key(cyclic_star(4)) == key


def test_planar_n2_classification_small():
    rep = verify_theorem_planar_n2(max_total=8)
    assert rep.matches, rep.to_dict()
    assert rep.stages["candidates"] == 9
    assert rep.to_dict()["matches"]


def test_chain_unions_n3():
    keys = enumerate_chain_unions(3, 5)
    assert presentation_key(linear_truncated(4, 2)) in keys
    rep = verify_theorem_higher(3, 6)
    assert rep.matches, rep.to_dict()
    assert rep.candidates == 9


def test_library_has_no_counterexample():
    rows = truncated_library(max_vertices=4, ells=range(2, 4))
    assert rows
    assert all(r.witness_degree is not None for r in rows)


def test_branching_case():
    out = branching_case_check(3)
    assert out == {"syzygy_projective": True, "syzygy_is_P_i": True, "projective_dimension": 1, "ext1": 1}


@pytest.mark.parametrize("r", [5, 6])
def test_planar_exclusion_count(r):
    out = planar_exclusion_count(r)
    assert out["ext1"] >= 1
    assert out["hom_dims"]
    for dims in out["hom_dims"].values():
        assert dims == out["expected_dims"]


def test_star_lemma_tiny():
    out = star_lemma_check(4, 4)
    assert out["gldim2"] > 0
    assert not out["non_stars"]
    assert out["stars"]


def test_battery_rejections_are_not_hereditary():
    """Anything the battery rejects fails the orbit probe too."""
    seen = 0
    for r in range(1, 4):
        for s in range(1, 4):
            for key in star_zsystems(r, s, prefilter=False):
                pres = star_from_zsystem(r, s, key)
                data = compute_ap(pres, max_degree=4)
                if not data.exhausted or data.top_degree != 2 or obstruction_battery(pres, data).clean:
                    continue
                seen += 1
                assert nrf_probe(pres, 2, cap=20, check_gldim=False).status != "n-RF"
    assert seen > 20


def test_decomposable_syzygy_forces_ext1():
    hits = 0
    for seed in range(12):
        pres = random_presentation(random.Random(seed), max_vertices=5, max_relations=4)
        alg = MonomialAlgebra(pres)
        lam = regular(alg)
        for v in pres.quiver.vertices:
            for N in (injective(alg, v), simple(alg, v)):
                if is_projective(N) or not is_indecomposable(N):
                    continue
                omega, _ = syzygy(N)
                if len(split_summands(omega)) > 1:
                    hits += 1
                    assert ext_module(N, lam, 1) > 0
    assert hits > 0

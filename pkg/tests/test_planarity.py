import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import load_example
from hered.classify import cyclic_star
from hered.planarity import RotationSystem, _leaves, graph_planarity, planar_qp_check, verify_certificate
from hered.preprojective import parse_qp, qp_from_gldim2

TRIANGLE = "vertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 1\n"


def star_qp(r):
    return qp_from_gldim2(cyclic_star(r), check=False)[0]


def test_triangle_is_planar_qp():
    v = planar_qp_check(parse_qp(TRIANGLE + "term c b a\n"))
    assert v.is_planar_qp
    assert len(v.outer_face) == 3
    assert verify_certificate(parse_qp(TRIANGLE + "term c b a\n"), v.rotation)[0]


def test_triangle_without_potential_is_only_graph_planar():
    v = planar_qp_check(parse_qp(TRIANGLE))
    assert v.verdict == "planar graph but not planar QP"


@pytest.mark.parametrize("name", ["a3j2-pi", "star44-pi", "two-triangles"])
def test_planar_examples(name):
    qp = load_example(name)
    v = planar_qp_check(qp)
    assert v.is_planar_qp
    ok, why = verify_certificate(qp, v.rotation)
    assert ok, why


@pytest.mark.parametrize("r", [4, 5, 6])
def test_cyclic_star_preprojective_is_planar(r):
    v = planar_qp_check(star_qp(r))
    assert v.is_planar_qp
    # every term is a bounded face, plus one outer face
    assert len(v.rotation.faces()) == len(star_qp(r).terms) + 1


def test_star96_is_not_planar():
    qp = load_example("star96-pi")
    v = planar_qp_check(qp)
    assert v.verdict == "non-planar"
    gp = graph_planarity(qp.quiver)
    assert not gp["planar"] and gp["kuratowski_edges"]


def test_two_cycle_is_rejected():
    qp = parse_qp("vertices 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nterm b a\n")
    v = planar_qp_check(qp)
    assert v.verdict == "non-planar" and "2-cycle" in v.note


def test_arrow_in_three_terms():
    text = (
        "vertices 1 2 3 4 5\narrow a: 1 -> 2\n"
        "arrow b: 2 -> 3\narrow c: 3 -> 1\n"
        "arrow d: 2 -> 4\narrow e: 4 -> 1\n"
        "arrow f: 2 -> 5\narrow g: 5 -> 1\n"
        "term c b a\nterm e d a\nterm g f a\n"
    )
    v = planar_qp_check(parse_qp(text))
    assert v.verdict == "planar graph but not planar QP"
    assert "more than two" in v.note


def test_non_simple_term():
    text = (
        "vertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 1\narrow c: 1 -> 3\narrow d: 3 -> 1\n"
        "term d c b a\n"
    )
    v = planar_qp_check(parse_qp(text))
    # the 2-cycle a b is caught first
    assert not v.is_planar_qp


def test_graph_planarity_embedding_and_k5():
    tri = parse_qp(TRIANGLE).quiver
    out = graph_planarity(tri)
    assert out["planar"] and set(out["embedding"]) == {"1", "2", "3"}
    arrows = [f"arrow e{i}{j}: {i} -> {j}" for i in range(1, 6) for j in range(i + 1, 6)]
    k5 = parse_qp("vertices 1 2 3 4 5\n" + "\n".join(arrows) + "\n").quiver
    out = graph_planarity(k5)
    assert not out["planar"] and len(out["kuratowski_edges"]) == 10


def test_corrupted_certificate_is_rejected():
    qp = star_qp(4)
    rot = planar_qp_check(qp).rotation
    # swap two successors at one vertex with three or more darts
    by_vertex = {}
    for d in rot.succ:
        by_vertex.setdefault(_leaves(qp.quiver, d), []).append(d)
    darts = next(ds for ds in by_vertex.values() if len(ds) >= 3)
    succ = dict(rot.succ)
    x, y = darts[0], darts[1]
    succ[x], succ[y] = succ[y], succ[x]
    ok, _ = verify_certificate(qp, RotationSystem(qp.quiver, succ))
    assert not ok
    missing = dict(rot.succ)
    missing.pop(next(iter(missing)))
    assert verify_certificate(qp, RotationSystem(qp.quiver, missing)) == (False, "rotation does not cover every dart")


def test_bound_exhaustion_is_reported():
    v = planar_qp_check(parse_qp(TRIANGLE), bound=0)
    assert v.verdict in ("undecided at bound", "planar graph but not planar QP")


def test_verdict_dict():
    d = planar_qp_check(load_example("a3j2-pi")).to_dict()
    assert d["verdict"] == "planar QP" and "rotation" in d and d["outer_face"]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([4, 5, 6]))
def test_verdict_ignores_declaration_order(seed, r):
    text = star_qp(r).serialize().splitlines()
    head = [ln for ln in text if ln.startswith(("field", "vertices"))]
    arrows = [ln for ln in text if ln.startswith("arrow")]
    terms = [ln for ln in text if ln.startswith("term")]
    rng = random.Random(seed)
    rng.shuffle(arrows)
    rng.shuffle(terms)
    qp = parse_qp("\n".join(head + arrows + terms) + "\n")
    v = planar_qp_check(qp)
    assert v.is_planar_qp
    assert verify_certificate(qp, v.rotation)[0]

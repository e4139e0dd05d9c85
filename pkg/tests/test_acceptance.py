"""Acceptance criteria 1-9, one test each.

Every test prints a single ``PASS``/``FAIL`` line; ``python tests/test_acceptance.py``
prints the same lines without pytest.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import load_example  # noqa: E402
from hered.algebra import MonomialAlgebra  # noqa: E402
from hered.bardzell import check_resolution, compute_ap, realize_resolution  # noqa: E402
from hered.bimodule_ext import bimodule_ext, obstruction_battery  # noqa: E402
from hered.classify import (  # noqa: E402
    cyclic_star,
    planar_exclusion_count,
    presentation_key,
    verify_theorem_higher,
    verify_truncated_classification,
)
from hered.modrep import (  # noqa: E402
    ext_dual_regular,
    ext_module,
    injective,
    is_indecomposable,
    is_projective,
    regular,
    simple,
    split_summands,
    syzygy,
)
from hered.planarity import planar_qp_check  # noqa: E402
from hered.preprojective import (  # noqa: E402
    compare_constructions,
    jacobian,
    loewy_profile,
    middle_matrix_indecomposable,
    qp_from_gldim2,
    selfinjectivity_check,
)
from hered.quiver import random_presentation  # noqa: E402

CORPUS_SEED = 20240601
# degree cap for Jacobians; the finite ones in the corpus stop well below it
JACOBIAN_CAP = 12


def random_corpus():
    """30 presentations, at most 6 vertices and 8 relations."""
    rng = random.Random(CORPUS_SEED)
    out = []
    while len(out) < 30:
        pres = random_presentation(rng, max_vertices=6, max_arrows=8, max_relations=8, max_length=3)
        if pres.relations:
            out.append(pres)
    return out


def gldim2_corpus():
    """Quadratic monomial algebras of global dimension 2: named stars plus random ones."""
    out = [load_example("a3j2"), load_example("star44"), load_example("star96"), cyclic_star(5), cyclic_star(6)]
    seen = set()
    rng = random.Random(CORPUS_SEED + 2)
    while len(out) < 30:
        pres = random_presentation(rng, max_vertices=6, max_arrows=8, max_relations=8, max_length=2)
        key = presentation_key(pres)
        if key in seen:
            continue
        data = compute_ap(pres)
        if data.exhausted and data.top_degree == 2:
            seen.add(key)
            out.append(pres)
    return out


def criterion_1():
    rows = verify_truncated_classification(range(2, 11), range(2, 6))
    bad = [(r.m, r.ell) for r in rows if not r.agrees]
    return not bad, f"{len(rows) - len(bad)}/{len(rows)} truncated algebras agree" + (f", disagree: {bad}" if bad else "")


def criterion_2():
    notes = []
    ok = True
    for name in ("a3j2", "star44"):
        pres = load_example(name)
        ext1 = bimodule_ext(pres, 2)[1]
        qp, _ = qp_from_gldim2(pres)
        si = selfinjectivity_check(qp).selfinjective
        planar = planar_qp_check(qp).verdict
        good = ext1 == 0 and si and planar == "planar QP"
        ok &= good
        notes.append(f"{name}: Ext1={ext1} selfinjective={si} {planar}")
    return ok, "; ".join(notes)


def criterion_3():
    notes = []
    ok = True
    for r in (5, 6):
        out = planar_exclusion_count(r)
        qp, _ = qp_from_gldim2(cyclic_star(r), check=False)
        planar = planar_qp_check(qp).is_planar_qp
        d0, d1, d2 = out["expected_dims"]
        count = d0 - d1 + d2
        dims_ok = out["hom_dims"] and all(d == out["expected_dims"] for d in out["hom_dims"].values())
        good = planar and out["ext1"] >= 1 and count != 0 and bool(dims_ok)
        ok &= good
        notes.append(f"r={r}: Ext1={out['ext1']} count={count} planar={planar}")
    return ok, "; ".join(notes)


def criterion_4():
    pres = load_example("star96")
    data = compute_ap(pres)
    battery = obstruction_battery(pres, data)
    qp, _ = qp_from_gldim2(pres)
    si = selfinjectivity_check(qp)
    planar = planar_qp_check(qp).verdict
    ok = data.exhausted and data.top_degree == 2 and battery.clean and si.selfinjective and planar == "non-planar"
    return ok, f"gl.dim={data.top_degree} obstructions={len(battery.obstructing())} dim Pi={si.dimension} selfinjective={si.selfinjective} {planar}"


def criterion_5():
    reps = [verify_theorem_higher(3, 6), verify_theorem_higher(4, 7)]
    ok = all(r.matches for r in reps)
    return ok, "; ".join(f"n={n}: {r.candidates} candidates, {len(r.survivors)} n-RF" for n, r in zip((3, 4), reps))


def criterion_6():
    bad = []
    for k, pres in enumerate(random_corpus()):
        data = compute_ap(pres)
        n = data.top_degree
        if bimodule_ext(pres, n) != ext_dual_regular(MonomialAlgebra(pres), n):
            bad.append(k)
    return not bad, f"30 presentations, {len(bad)} mismatches"


def criterion_7():
    bad = []
    for k, pres in enumerate(random_corpus()):
        chk = check_resolution(realize_resolution(compute_ap(pres)))
        if not (chk["d_squared_zero"] and chk["exact"]):
            bad.append(k)
    return not bad, f"30 presentations, {len(bad)} failures"


def criterion_8():
    corpus = gldim2_corpus()
    bad = [k for k, pres in enumerate(corpus) if not compare_constructions(pres)["agree"]]
    return not bad, f"{len(corpus)} gl.dim 2 algebras, {len(bad)} disagreements"


def _selfinjective_jacobians():
    out = []
    for pres in gldim2_corpus():
        qp, _ = qp_from_gldim2(pres, check=False)
        jac = jacobian(qp, JACOBIAN_CAP)
        if jac.finite and selfinjectivity_check(jac).selfinjective:
            out.append(jac)
    return out


def _syzygy_violations(pres):
    alg = MonomialAlgebra(pres)
    lam = regular(alg)
    checked = bad = 0
    for v in pres.quiver.vertices:
        for N in (injective(alg, v), simple(alg, v)):
            if is_projective(N) or not is_indecomposable(N):
                continue
            omega, _ = syzygy(N)
            if len(split_summands(omega)) > 1:
                checked += 1
                bad += ext_module(N, lam, 1) == 0
    return checked, bad


def criterion_9():
    jacs = _selfinjective_jacobians()
    loewy_bad = sum(len(set(loewy_profile(j.algebra))) != 1 for j in jacs)
    middle_bad = sum(not middle_matrix_indecomposable(j, i) for j in jacs for i in j.qp.quiver.vertices)
    checked = syz_bad = 0
    for pres in random_corpus():
        c, b = _syzygy_violations(pres)
        checked += c
        syz_bad += b
    ok = jacs and not loewy_bad and not middle_bad and checked and not syz_bad
    return bool(ok), (
        f"{len(jacs)} selfinjective Jacobians: {loewy_bad} Loewy, {middle_bad} middle-matrix violations; "
        f"{checked} decomposable syzygies, {syz_bad} with Ext1 = 0"
    )


CRITERIA = [
    (1, criterion_1, 60),
    (2, criterion_2, 30),
    (3, criterion_3, 60),
    (4, criterion_4, 120),
    (5, criterion_5, 600),
    (6, criterion_6, None),
    (7, criterion_7, None),
    (8, criterion_8, None),
    (9, criterion_9, None),
]


def run_criterion(num, fn, budget):
    t = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - t
    in_time = budget is None or elapsed < budget
    status = "PASS" if ok and in_time else "FAIL"
    limit = f" (limit {budget} s)" if budget else ""
    return ok and in_time, f"{status} criterion {num}: {detail} [{elapsed:.1f} s{limit}]"


@pytest.mark.parametrize("num,fn,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_acceptance(num, fn, budget, capsys):
    ok, line = run_criterion(num, fn, budget)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)

"""Classification harnesses: truncated algebras, star Z-systems, chain unions."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .algebra import MonomialAlgebra, NotFiniteDimensional
from .bardzell import compute_ap
from .bimodule_ext import dual_complex, ext_dimensions, obstruction_battery
from .modrep import (
    ext_dual_regular,
    injective,
    is_projective,
    nrf_probe,
    projective,
    projective_dimension,
    projective_resolution,
    syzygy,
)
from .planarity import planar_qp_check
from .preprojective import jacobian, qp_from_gldim2, selfinjectivity_check
from .quiver import (
    MonomialPresentation,
    Path,
    Quiver,
    linear_truncated,
    star_presentation,
    truncated_presentation,
)


def literal_predicate(m: int, ell: int) -> tuple[bool, int | None]:
    """``l | m-1 or l = 2`` with ``n = 2(m-1)/l``, read verbatim."""
    ok = ell == 2 or (m - 1) % ell == 0
    return ok, (2 * (m - 1) // ell if ok else None)


def truncated_predicate(m: int, ell: int) -> tuple[bool, int | None]:
    """The truncated classification with the degenerate range made explicit.

    When ``m <= l`` the ideal ``J^l`` is zero and the algebra is the
    hereditary ``k A_m``, which is 1-representation-finite.
    """
    if m <= ell:
        return True, 1
    return literal_predicate(m, ell)


@dataclass
class PipelineVerdict:
    hereditary: bool
    n: int | None
    stage: str  # where the decision was made
    detail: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"n_hereditary": self.hereditary, "n": self.n, "stage": self.stage, "detail": self.detail}


def pipeline(pres: MonomialPresentation, nrf_cap: int | None = None, max_degree: int = 64) -> PipelineVerdict:
    """Battery, then Ext vanishing, then the orbit probe."""
    try:
        MonomialAlgebra(pres)
    except NotFiniteDimensional as exc:
        return PipelineVerdict(False, None, "finite", {"reason": str(exc)})
    data = compute_ap(pres, max_degree)
    if not data.exhausted:
        return PipelineVerdict(False, None, "gldim", {"reason": "global dimension not bounded"})
    n = data.top_degree
    if n == 0:
        return PipelineVerdict(False, 0, "gldim", {"reason": "semisimple"})
    rep = obstruction_battery(pres, data)
    if not rep.clean:
        ob = rep.obstructing()[0]
        return PipelineVerdict(False, n, "battery", ob.describe(pres.quiver))
    dims = ext_dimensions(dual_complex(data, up_to=n), n)
    bad = [j for j in range(1, n) if dims[j]]
    if bad:
        return PipelineVerdict(False, n, "ext", {"degree": bad[0], "ext_dims": dims})
    v = nrf_probe(pres, n, cap=nrf_cap, check_gldim=False)
    detail = v.to_dict()
    if v.status == "n-RF":
        return PipelineVerdict(True, n, "nrf", detail)
    return PipelineVerdict(False, n, "nrf", detail)


@dataclass
class TruncatedRow:
    m: int
    ell: int
    expected: bool
    expected_n: int | None
    literal: bool
    verdict: PipelineVerdict

    @property
    def agrees(self) -> bool:
        v = self.verdict
        return v.hereditary == self.expected and (not self.expected or v.n == self.expected_n)


def verify_truncated_classification(ms=range(2, 11), ells=range(2, 6)) -> list[TruncatedRow]:
    rows = []
    for m in ms:
        for ell in ells:
            exp, n = truncated_predicate(m, ell)
            lit, _ = literal_predicate(m, ell)
            rows.append(TruncatedRow(m, ell, exp, n, lit, pipeline(linear_truncated(m, ell))))
    return rows


# -- canonical forms -----------------------------------------------------------


def _encode(V, arrows, rels, perm):
    a = sorted((perm[t], perm[h]) for t, h in arrows)
    r = sorted(tuple(perm[x] for x in seq) for seq in rels)
    return (V, tuple(a), tuple(r))


def canonical_form(V: int, arrows, rels, limit: int = 400000):
    """Smallest encoding over relabelings that respect a refined colouring.

    ``arrows`` are ``(tail, head)`` pairs (a simple digraph) and ``rels`` are
    vertex sequences in traversal order.
    """
    arrows = list(arrows)
    rels = [tuple(r) for r in rels]
    colour = [0] * V
    outs = [[] for _ in range(V)]
    ins = [[] for _ in range(V)]
    for t, h in arrows:
        outs[t].append(h)
        ins[h].append(t)
    inc = [[] for _ in range(V)]
    for seq in rels:
        for pos, x in enumerate(seq):
            inc[x].append((pos, seq))
    while True:
        sig = []
        for v in range(V):
            rel_sig = sorted((pos, tuple(colour[y] for y in seq)) for pos, seq in inc[v])
            sig.append((colour[v], tuple(sorted(colour[w] for w in outs[v])), tuple(sorted(colour[w] for w in ins[v])), tuple(rel_sig)))
        keys = sorted(set(sig))
        new = [keys.index(s) for s in sig]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    cells = {}
    for v in range(V):
        cells.setdefault(colour[v], []).append(v)
    order = [cells[c] for c in sorted(cells)]
    total = 1
    for c in order:
        for k in range(2, len(c) + 1):
            total *= k
    if total > limit:
        raise ValueError("canonical form search too large")
    best = None
    starts = []
    n = 0
    for c in order:
        starts.append(n)
        n += len(c)
    for choice in itertools.product(*(itertools.permutations(c) for c in order)):
        perm = [0] * V
        for s, cell in zip(starts, choice):
            for k, v in enumerate(cell):
                perm[v] = s + k
        enc = _encode(V, arrows, rels, perm)
        if best is None or enc < best:
            best = enc
    return best


def presentation_key(pres: MonomialPresentation):
    q = pres.quiver
    arrows = [(a.tail, a.head) for a in q.arrows]
    rels = [_vertex_seq(q, r) for r in pres.relations]
    return canonical_form(len(q.vertices), arrows, rels)


def _vertex_seq(q: Quiver, p: Path) -> tuple:
    seq = [p.source]
    for a in reversed(p.arrows):
        seq.append(q.arrows[a].head)
    return tuple(seq)


def presentation_from_key(key) -> MonomialPresentation:
    V, arrows, rels = key
    names = [str(v + 1) for v in range(V)]
    q = Quiver(names, [(f"x{t + 1}{h + 1}" if V < 10 else f"x{t + 1}_{h + 1}", t, h) for t, h in arrows])
    by_pair = {(a.tail, a.head): a.id for a in q.arrows}
    paths = []
    for seq in rels:
        ids = [by_pair[(seq[k], seq[k + 1])] for k in range(len(seq) - 1)]
        paths.append(q.path(list(reversed(ids))))
    return MonomialPresentation(q, paths)


# -- raw enumeration of small quadratic monomial algebras ---------------------


def raw_quadratic_monomial(max_vertices: int, max_arrows: int):
    """All connected simple-digraph quadratic monomial algebras, up to iso.

    Only meant for tiny bounds; it validates structural lemmas directly.
    """
    graphs = set()
    for V in range(2, max_vertices + 1):
        pairs = [(i, j) for i in range(V) for j in range(V) if i != j]
        for k in range(V - 1, max_arrows + 1):
            for arrows in itertools.combinations(pairs, k):
                if _connected(V, arrows):
                    graphs.add(canonical_form(V, arrows, []))
    seen = set()
    for V, arrows, _ in sorted(graphs):
        paths2 = [(t, h, h2) for (t, h) in arrows for (t2, h2) in arrows if t2 == h]
        for mask in range(1 << len(paths2)):
            rels = [paths2[i] for i in range(len(paths2)) if mask >> i & 1]
            key = canonical_form(V, arrows, rels)
            if key not in seen:
                seen.add(key)
                yield presentation_from_key(key)


def is_star(pres: MonomialPresentation) -> tuple[int, int] | None:
    """``(r, s)`` when the quiver is an (r, s)-star with all relations through the centre."""
    q = pres.quiver
    for z in q.vertices:
        ins = q.arrows_in(z)
        outs = q.arrows_out(z)
        others = [v for v in q.vertices if v != z]
        if len(ins) + len(outs) != len(q.arrows) or len(others) != len(q.arrows):
            continue
        if all(len(q.arrows_in(v)) + len(q.arrows_out(v)) == 1 for v in others):
            return len(ins), len(outs)
    return None


def enumerate_quadratic_monomial(vertex_max: int = 5, arrow_max: int = 4):
    """Raw enumeration restricted to finite-dimensional algebras of gl.dim 2."""
    for pres in raw_quadratic_monomial(vertex_max, arrow_max):
        try:
            MonomialAlgebra(pres)
        except NotFiniteDimensional:
            continue
        data = compute_ap(pres, max_degree=2)
        if data.exhausted and data.top_degree == 2:
            yield pres, data


def star_lemma_check(vertex_max: int = 5, arrow_max: int = 4) -> dict:
    """Every gl.dim 2 candidate with ``Ext^1 = 0`` is a star."""
    total, survivors, bad = 0, [], []
    for pres, data in enumerate_quadratic_monomial(vertex_max, arrow_max):
        total += 1
        if ext_dimensions(dual_complex(data, up_to=2), 2)[1]:
            continue
        shape = is_star(pres)
        (survivors if shape else bad).append((shape, _describe_key(presentation_key(pres))))
    return {"gldim2": total, "ext1_zero": len(survivors) + len(bad), "stars": survivors, "non_stars": bad}


def _connected(V, arrows) -> bool:
    adj = {v: set() for v in range(V)}
    for t, h in arrows:
        adj[t].add(h)
        adj[h].add(t)
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == V


# -- chain unions for n >= 3 ---------------------------------------------------


def _longest_chain(arrows, rels):
    """Longest run of arrows with all consecutive pairs relations (None if unbounded)."""
    relset = {(r[0], r[1], r[2]) for r in rels}
    succ = {a: [] for a in arrows}
    for a in arrows:
        for b in arrows:
            if a[1] == b[0] and (a[0], a[1], b[1]) in relset:
                succ[a].append(b)
    memo, active = {}, set()

    def longest(a):
        if a in memo:
            return memo[a]
        if a in active:
            raise OverflowError
        active.add(a)
        best = 1 + max((longest(b) for b in succ[a]), default=0)
        active.discard(a)
        memo[a] = best
        return best

    try:
        return max((longest(a) for a in arrows), default=0)
    except OverflowError:
        return None


def _leaf_ok(V, arrows, starts, ends) -> bool:
    indeg = [0] * V
    outdeg = [0] * V
    for t, h in arrows:
        outdeg[t] += 1
        indeg[h] += 1
    for v in starts:
        if indeg[v] or outdeg[v] != 1:
            return False
    for v in ends:
        if outdeg[v] or indeg[v] != 1:
            return False
    return True


def enumerate_chain_unions(n: int, max_vertices: int, seed: int | None = None):
    """Quadratic monomial presentations built as unions of relation chains.

    A chain is a path of ``n`` arrows whose consecutive pairs are relations,
    starting at a source leaf and ending at a sink leaf.  States grow by one
    chain at a time; pruning is monotone (vertex bound, no chain of ``n + 1``
    arrows, chain ends remain leaves).  Yields canonical keys.
    """
    rng = random.Random(seed) if seed is not None else None
    start = (n + 1, tuple((k, k + 1) for k in range(n)), tuple((k, k + 1, k + 2) for k in range(n - 1)))
    first = canonical_form(*start)
    seen = {first}
    queue = [(start, (0,), (n,))]
    out = [first]
    while queue:
        (V, arrows, rels), starts, ends = queue.pop(0)
        options = list(_chain_extensions(V, arrows, n, max_vertices))
        if rng is not None:
            rng.shuffle(options)
        for seq in options:
            V2 = max(V, max(seq) + 1)
            a2 = set(arrows)
            r2 = set(rels)
            for k in range(n):
                a2.add((seq[k], seq[k + 1]))
            for k in range(n - 1):
                r2.add((seq[k], seq[k + 1], seq[k + 2]))
            a2, r2 = tuple(sorted(a2)), tuple(sorted(r2))
            st2, en2 = starts + (seq[0],), ends + (seq[-1],)
            if not _leaf_ok(V2, a2, st2, en2):
                continue
            lc = _longest_chain(a2, r2)
            if lc is None or lc > n:
                continue
            key = canonical_form(V2, a2, r2)
            if key in seen:
                continue
            seen.add(key)
            out.append(key)
            queue.append(((V2, a2, r2), st2, en2))
    return out


def _chain_extensions(V, arrows, n, max_vertices):
    """Vertex sequences of a new chain; fresh vertices are numbered in order."""
    existing = set(arrows)

    def rec(seq, nxt_new):
        if len(seq) == n + 1:
            yield tuple(seq)
            return
        for v in list(range(nxt_new)) + ([nxt_new] if nxt_new < max_vertices else []):
            if seq and v == seq[-1]:
                continue
            yield from rec(seq + [v], max(nxt_new, v + 1))

    for seq in rec([], V):
        # a chain that adds nothing is a no-op
        if all((seq[k], seq[k + 1]) in existing for k in range(n)):
            continue
        yield seq


@dataclass
class ClassificationReport:
    name: str
    candidates: int
    stages: dict
    survivors: list
    expected: list
    notes: list = dc_field(default_factory=list)

    @property
    def matches(self) -> bool:
        return sorted(self.survivors) == sorted(self.expected)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "candidates": self.candidates,
            "stages": self.stages,
            "survivors": self.survivors,
            "expected": self.expected,
            "matches": self.matches,
            "notes": self.notes,
        }


def verify_theorem_higher(n: int, max_vertices: int, seed: int | None = None) -> ClassificationReport:
    """Only ``k A_{n+1}/J^2`` survives among chain unions of the given size."""
    keys = enumerate_chain_unions(n, max_vertices, seed)
    stages = {}
    survivors = []
    for key in keys:
        pres = presentation_from_key(key)
        v = pipeline(pres)
        if v.hereditary and v.n != n:
            stage = f"gldim {v.n}"
        else:
            stage = v.stage if not v.hereditary else "n-RF"
        stages[stage] = stages.get(stage, 0) + 1
        if v.hereditary and v.n == n:
            survivors.append(_describe_key(key))
    target = _describe_key(presentation_key(linear_truncated(n + 1, 2)))
    return ClassificationReport(f"quadratic monomial n={n}, <= {max_vertices} vertices", len(keys), stages, survivors, [target])


def _describe_key(key) -> str:
    V, arrows, rels = key
    return f"V={V} arrows={list(arrows)} relations={list(rels)}"


# -- star Z-systems for n = 2 ------------------------------------------------------


def _antichain(sets) -> bool:
    return all(not (x <= y) for x, y in itertools.permutations(sets, 2))


def _transpose(r, s, zsets):
    return [frozenset(i for i in range(r) if j in zsets[i]) for j in range(s)]


def star_zsystems(r: int, s: int, prefilter: bool = True):
    """Z-set systems on the (r, s)-star up to relabeling.

    ``key[i]`` is the sorted tuple of ``j`` with ``b_j a_i = 0``.  With
    ``prefilter`` both sides must be antichains of nonempty sets, which is
    what the battery demands anyway; without it every bipartite pattern is
    produced, empty sets included.
    """
    lo = 1 if prefilter else 0
    subsets = [frozenset(c) for k in range(lo, s + 1) for c in itertools.combinations(range(s), k)]
    combos = itertools.combinations(subsets, r) if prefilter else itertools.combinations_with_replacement(subsets, r)
    seen = set()
    out = []
    for combo in combos:
        zs = list(combo)
        if prefilter:
            if not _antichain(zs):
                continue
            zb = _transpose(r, s, zs)
            if any(not x for x in zb) or len(set(zb)) != s or not _antichain(zb):
                continue
        key = min(
            tuple(sorted(tuple(sorted(perm[j] for j in z)) for z in zs))
            for perm in itertools.permutations(range(s))
        )
        if key in seen:
            continue
        seen.add(key)
        out.append(key)
    return out


def star_from_zsystem(r: int, s: int, key) -> MonomialPresentation:
    pairs = [(i + 1, j + 1) for i, z in enumerate(key) for j in z]
    return star_presentation(r, s, pairs)


def verify_theorem_planar_n2(max_total: int = 8, cap: int | None = None, prefilter: bool = True) -> ClassificationReport:
    """Stars with ``r + s <= max_total``: battery, Ext^1, QP planarity, selfinjectivity."""
    stages = {"candidates": 0, "battery": 0, "ext1": 0, "gldim": 0, "nonplanar": 0, "infinite": 0, "not_selfinjective": 0}
    survivors, extra = [], []
    for r in range(1, max_total):
        for s in range(1, max_total - r + 1):
            for key in star_zsystems(r, s, prefilter):
                stages["candidates"] += 1
                pres = star_from_zsystem(r, s, key)
                data = compute_ap(pres)
                if not data.exhausted or data.top_degree != 2:
                    stages["gldim"] += 1
                    continue
                if not obstruction_battery(pres, data).clean:
                    stages["battery"] += 1
                    continue
                if ext_dimensions(dual_complex(data, up_to=2), 2)[1]:
                    stages["ext1"] += 1
                    continue
                qp, _ = qp_from_gldim2(pres, check=False)
                jac = jacobian(qp, cap)
                planar = planar_qp_check(qp).is_planar_qp
                if not jac.finite:
                    stages["infinite"] += 1
                    if planar:
                        extra.append(f"planar with infinite Jacobian: ({r},{s}) {key}")
                    continue
                if not selfinjectivity_check(jac).selfinjective:
                    stages["not_selfinjective"] += 1
                    continue
                if not planar:
                    stages["nonplanar"] += 1
                    extra.append(f"selfinjective but non-planar: ({r},{s}) {key}")
                    continue
                survivors.append(f"({r},{s}) {list(map(list, key))}")
    known = [(2, "(1,1) [[0]]"), (8, "(4,4) " + str([[0, 1], [0, 2], [1, 3], [2, 3]]))]
    expected = [label for size, label in known if size <= max_total]
    return ClassificationReport(f"planar star Z-systems, r + s <= {max_total}", stages["candidates"], stages, survivors, expected, extra)


# -- non-linear truncated library ----------------------------------------------


def _tree_orientations(max_vertices: int):
    """Orientations of trees on at most ``max_vertices`` vertices, up to iso."""
    import networkx as nx

    seen = set()
    for V in range(2, max_vertices + 1):
        for tree in nx.nonisomorphic_trees(V):
            edges = list(tree.edges())
            for mask in range(1 << len(edges)):
                arrows = [(u, v) if mask >> k & 1 else (v, u) for k, (u, v) in enumerate(edges)]
                key = canonical_form(V, arrows, [])
                if key not in seen:
                    seen.add(key)
                    yield key


def _is_linear(V, arrows) -> bool:
    outdeg = [0] * V
    indeg = [0] * V
    for t, h in arrows:
        outdeg[t] += 1
        indeg[h] += 1
    return all(o <= 1 and i <= 1 for o, i in zip(outdeg, indeg))


@dataclass
class LibraryRow:
    quiver: str
    ell: int
    gldim: int
    ext_dims: list
    witness_degree: int | None


def truncated_library(max_vertices: int = 5, ells=range(2, 5)) -> list[LibraryRow]:
    """Non-linear tree quivers truncated at ``J^l`` with ``J^l != 0``.

    Each row records the first ``0 < j < gl.dim`` with nonvanishing
    bimodule Ext (``None`` would be a counterexample).
    """
    rows = []
    for V, arrows, _ in _tree_orientations(max_vertices):
        if _is_linear(V, arrows):
            continue
        base = presentation_from_key((V, arrows, ()))
        for ell in ells:
            pres = truncated_presentation(base.quiver, ell)
            if not pres.relations:
                continue
            data = compute_ap(pres)
            n = data.top_degree
            dims = ext_dimensions(dual_complex(data, up_to=n), n)
            wit = next((j for j in range(1, n) if dims[j]), None)
            rows.append(LibraryRow(_describe_key((V, arrows, ())), ell, n, dims, wit))
    return rows


def branching_case_check(ell: int = 3) -> dict:
    """Two tails of length ``ell`` into ``i`` and one arrow ``i -> h``, cut at ``J^ell``.

    The injective at ``h`` has syzygy ``Lambda e_i``, so its projective
    dimension is 1 and module Ext^1(D Lambda, Lambda) is nonzero.
    """
    names = [f"x{k}" for k in range(ell)] + [f"y{k}" for k in range(ell)] + ["i", "h"]
    i, h = 2 * ell, 2 * ell + 1
    arrows = []
    for side, off in (("a", 0), ("b", ell)):
        for k in range(ell):
            arrows.append((f"{side}{k + 1}", off + k, off + k + 1 if k + 1 < ell else i))
    arrows.append(("c", i, h))
    pres = truncated_presentation(Quiver(names, arrows), ell)
    alg = MonomialAlgebra(pres)
    inj = injective(alg, h)
    omega, _ = syzygy(inj)
    return {
        "syzygy_projective": (not omega.is_zero()) and is_projective(omega),
        "syzygy_is_P_i": omega.dims == projective(alg, i).dims,
        "projective_dimension": projective_dimension(inj),
        "ext1": ext_dual_regular(alg, 1)[1],
    }


# -- cyclic stars and the planar exclusion count ------------------------------------


def cyclic_star(r: int) -> MonomialPresentation:
    """``(r, r)``-star where ``a_i`` is killed by ``b_i`` and ``b_{i+1}``."""
    pairs = sorted({(i, i) for i in range(1, r + 1)} | {(i, i % r + 1) for i in range(1, r + 1)})
    return star_presentation(r, r, pairs)


def planar_exclusion_count(r: int) -> dict:
    """Resolution of the injective at a sink of the cyclic star, then Hom into
    ``Lambda e_t`` for the inner sources ``t``; reports the three dimensions
    and their alternating sum together with module ``Ext^1(D Lambda, Lambda)``.
    """
    pres = cyclic_star(r)
    q = pres.quiver
    alg = MonomialAlgebra(pres)
    m = q.arrows[q._by_name["b1"]].head
    res = projective_resolution(injective(alg, m), 3)
    mult = res.multiplicities()
    terms = [{q.vertex_names[v]: c for v, c in enumerate(row) if c} for row in mult]
    # the a_i outside Z_{b_1} in the order a_2, ..., a_{r-1}; inner ones are mu = 2..r-3
    chain = [f"a{i}" for i in range(2, r)]
    counts = {}
    for mu in range(2, r - 2):
        t = q.arrows[q._by_name[chain[mu - 1]]].tail
        P = projective(alg, t)
        dims = [sum(c * P.dims[v] for v, c in enumerate(row)) for row in mult]
        counts[q.vertex_names[t]] = dims
    return {
        "r": r,
        "ext1": ext_dual_regular(alg, 1)[1],
        "resolution_terms": terms,
        "hom_dims": counts,
        "expected_dims": [1, r - 3, r - 5],
    }

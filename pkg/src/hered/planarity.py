"""Planarity of quivers and of quivers with potential.

A dart is ``(arrow, +1)`` (tail to head) or ``(arrow, -1)`` (head to tail).
A rotation system gives, at each vertex, a cyclic successor on the darts
leaving it; faces are the orbits of ``d -> rot(reverse(d))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import permutations

import networkx as nx

from .preprojective import QuiverWithPotential
from .quiver import Quiver


def _graph(q: Quiver) -> nx.Graph:
    g = nx.MultiGraph()
    g.add_nodes_from(q.vertices)
    for a in q.arrows:
        g.add_edge(a.tail, a.head)
    return g


def graph_planarity(q: Quiver) -> dict:
    """Planarity of the underlying undirected graph."""
    g = nx.Graph(_graph(q))
    planar, cert = nx.check_planarity(g, counterexample=True)
    if planar:
        emb = {q.vertex_names[v]: [q.vertex_names[w] for w in cert.neighbors_cw_order(v)] for v in cert.nodes}
        return {"planar": True, "embedding": emb}
    edges = sorted((q.vertex_names[u], q.vertex_names[v]) for u, v in cert.edges)
    return {"planar": False, "kuratowski_edges": edges}


def _reverse(d):
    return (d[0], -d[1])


def _leaves(q: Quiver, d) -> int:
    a = q.arrows[d[0]]
    return a.tail if d[1] > 0 else a.head


@dataclass
class RotationSystem:
    quiver: Quiver
    succ: dict  # dart -> next dart leaving the same vertex

    def faces(self) -> list[list]:
        seen, out = set(), []
        for d in sorted(self.succ):
            if d in seen:
                continue
            face, x = [], d
            while x not in seen:
                seen.add(x)
                face.append(x)
                x = self.succ[_reverse(x)]
            out.append(face)
        return out

    def cyclic_orders(self) -> dict:
        q = self.quiver
        out = {}
        for v in q.vertices:
            darts = [d for d in self.succ if _leaves(q, d) == v]
            if not darts:
                out[q.vertex_names[v]] = []
                continue
            start = min(darts)
            order, x = [start], self.succ[start]
            while x != start:
                order.append(x)
                x = self.succ[x]
            out[q.vertex_names[v]] = [f"{q.arrows[a].name}{'+' if s > 0 else '-'}" for a, s in order]
        return out


@dataclass
class PlanarQPVerdict:
    verdict: str  # "planar QP", "planar graph but not planar QP", "non-planar", "undecided at bound"
    rotation: RotationSystem | None = None
    note: str = ""
    outer_face: list = dc_field(default_factory=list)

    @property
    def is_planar_qp(self) -> bool:
        return self.verdict == "planar QP"

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict, "note": self.note}
        if self.rotation is not None:
            out["rotation"] = self.rotation.cyclic_orders()
            q = self.rotation.quiver
            out["outer_face"] = [f"{q.arrows[a].name}{'+' if s > 0 else '-'}" for a, s in self.outer_face]
        return out


def _term_darts(qp: QuiverWithPotential, idx: int, orient: int) -> list:
    """Darts of term ``idx`` in face-tracing order for the given orientation."""
    seq = list(reversed(qp.terms[idx][1].arrows))  # traversal order
    if orient > 0:
        return [(a, 1) for a in seq]
    return [(a, -1) for a in reversed(seq)]


def _canon_cycle(darts) -> tuple:
    k = min(range(len(darts)), key=lambda i: darts[i:] + darts[:i])
    return tuple(darts[k:] + darts[:k])


def verify_certificate(qp: QuiverWithPotential, rot: RotationSystem) -> tuple[bool, str]:
    """Independent check of a claimed planar-QP embedding."""
    q = qp.quiver
    darts = {(a.id, s) for a in q.arrows for s in (1, -1)}
    if set(rot.succ) != darts:
        return False, "rotation does not cover every dart"
    for v in q.vertices:
        at_v = [d for d in darts if _leaves(q, d) == v]
        if not at_v:
            continue
        x, n = at_v[0], 0
        while True:
            if _leaves(q, x) != v:
                return False, "successor leaves another vertex"
            x = rot.succ[x]
            n += 1
            if x == at_v[0]:
                break
        if n != len(at_v):
            return False, f"rotation at {q.vertex_names[v]} is not a single cycle"
    faces = rot.faces()
    comps = nx.number_connected_components(_graph(q)) if q.vertices else 0
    if len(q.vertices) - len(q.arrows) + len(faces) != 1 + comps:
        return False, "Euler characteristic is not that of the sphere"
    terms = {}
    for i, (_, p) in enumerate(qp.terms):
        for o in (1, -1):
            terms.setdefault(_canon_cycle(_term_darts(qp, i, o)), set()).add(i)
    matched, extra = set(), []
    for f in faces:
        hit = terms.get(_canon_cycle(f), set()) - matched
        if hit:
            matched |= hit
        else:
            extra.append(f)
    if matched != set(range(len(qp.terms))):
        return False, "some potential term is not a face"
    if len(extra) != comps:
        return False, "more than one face is not a potential term"
    return True, "ok"


def planar_qp_check(qp: QuiverWithPotential, bound: int = 200000) -> PlanarQPVerdict:
    """Search for a plane embedding whose bounded faces are exactly the terms."""
    q = qp.quiver
    for a in q.arrows:
        if a.tail == a.head:
            return PlanarQPVerdict("non-planar", note=f"loop {a.name}")
    pairs = {(a.tail, a.head) for a in q.arrows}
    if any((h, t) in pairs for t, h in pairs):
        return PlanarQPVerdict("non-planar", note="quiver has a 2-cycle")
    gp = graph_planarity(q)
    if not gp["planar"]:
        return PlanarQPVerdict("non-planar", note="underlying graph is not planar")
    not_qp = "planar graph but not planar QP"
    for _, p in qp.terms:
        verts = [q.arrows[a].tail for a in p.arrows]
        if len(set(verts)) != len(verts):
            return PlanarQPVerdict(not_qp, note=f"term {q.name(p)} is not a simple cycle")
    counts = qp.border_counts()
    over = [q.arrows[a].name for a, c in counts.items() if c > 2]
    if over:
        return PlanarQPVerdict(not_qp, note=f"arrow {over[0]} lies in more than two terms")

    # term orientations: terms sharing an arrow must take opposite sides
    T = len(qp.terms)
    share = {i: set() for i in range(T)}
    by_arrow = {}
    for i, (_, p) in enumerate(qp.terms):
        for a in p.arrows:
            by_arrow.setdefault(a, []).append(i)
    for a, ts in by_arrow.items():
        if len(ts) == 2:
            share[ts[0]].add(ts[1])
            share[ts[1]].add(ts[0])
    orient = {}
    roots = []
    for i in range(T):
        if i in orient:
            continue
        roots.append(i)
        orient[i] = 1
        stack = [i]
        while stack:
            x = stack.pop()
            for y in share[x]:
                if y not in orient:
                    orient[y] = -orient[x]
                    stack.append(y)
                elif orient[y] == orient[x]:
                    return PlanarQPVerdict(not_qp, note="terms sharing an arrow cannot be oriented oppositely")
    comp_of = {}
    for r in roots:
        stack, comp_of[r] = [r], r
        while stack:
            x = stack.pop()
            for y in share[x]:
                if y not in comp_of:
                    comp_of[y] = r
                    stack.append(y)
    budget = [bound]
    for flips in range(1 << max(len(roots) - 1, 0)):
        sign = {r: (-1 if (k > 0 and flips >> (k - 1) & 1) else 1) for k, r in enumerate(roots)}
        o = {i: orient[i] * sign[comp_of[i]] for i in range(T)}
        res = _search(qp, o, budget)
        if res is not None:
            ok, why = verify_certificate(qp, res)
            if not ok:
                raise AssertionError(f"search produced an invalid certificate: {why}")
            outer = _outer_faces(qp, res)
            return PlanarQPVerdict("planar QP", res, "", outer[0] if outer else [])
        if budget[0] <= 0:
            return PlanarQPVerdict("undecided at bound", note=f"search bound {bound} exhausted")
    return PlanarQPVerdict(not_qp, note="no rotation system realizes the terms as faces")


def _outer_faces(qp, rot):
    left = {_canon_cycle(_term_darts(qp, i, o)): i for i in range(len(qp.terms)) for o in (1, -1)}
    done, out = set(), []
    for f in rot.faces():
        i = left.get(_canon_cycle(f))
        if i is None or i in done:
            out.append(f)
        else:
            done.add(i)
    return out


def _search(qp: QuiverWithPotential, orient: dict, budget) -> RotationSystem | None:
    q = qp.quiver
    succ = {}
    # forced successors: consecutive darts of a face f1, f2 give rot(rev(f1)) = f2
    for i in range(len(qp.terms)):
        ds = _term_darts(qp, i, orient[i])
        for k in range(len(ds)):
            x, y = _reverse(ds[k]), ds[(k + 1) % len(ds)]
            if succ.get(x, y) != y:
                return None
            succ[x] = y
    if len(set(succ.values())) != len(succ):
        return None
    choices = []
    for v in q.vertices:
        darts = sorted(d for a in q.arrows for d in ((a.id, 1), (a.id, -1)) if _leaves(q, d) == v)
        if not darts:
            continue
        pred = {y: x for x, y in succ.items()}
        chains, used = [], set()
        for d in darts:
            if d in used or d in pred:
                continue
            chain = [d]
            used.add(d)
            while chain[-1] in succ:
                nx_ = succ[chain[-1]]
                chain.append(nx_)
                used.add(nx_)
            chains.append(chain)
        if len(used) != len(darts):
            # a closed forced cycle; fine only if it covers the whole vertex
            if chains:
                return None
            cyc_len, x = 0, darts[0]
            while True:
                x = succ[x]
                cyc_len += 1
                if x == darts[0]:
                    break
            if cyc_len != len(darts):
                return None
            continue
        choices.append(chains)
    target_faces = len(qp.terms) + nx.number_connected_components(_graph(q))

    def rec(k, current):
        if budget[0] <= 0:
            return None
        if k == len(choices):
            budget[0] -= 1
            rot = RotationSystem(q, dict(current))
            if len(rot.faces()) == target_faces and verify_certificate(qp, rot)[0]:
                return rot
            return None
        chains = choices[k]
        first, rest = chains[0], chains[1:]
        for perm in permutations(rest):
            order = [first] + list(perm)
            added = {}
            for c_i, ch in enumerate(order):
                nxt = order[(c_i + 1) % len(order)]
                added[ch[-1]] = nxt[0]
            current.update(added)
            hit = rec(k + 1, current)
            if hit is not None:
                return hit
            for x in added:
                del current[x]
            if budget[0] <= 0:
                return None
        return None

    return rec(0, dict(succ))

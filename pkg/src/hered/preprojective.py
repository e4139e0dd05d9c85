"""Quivers with potential, Jacobian algebras and higher preprojective algebras.

Potentials are finite linear combinations of cycles; no completion is taken.
Jacobian algebras are computed degree by degree with :class:`GradedQuotient`,
so arrows carry positive integer weights making the potential homogeneous.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import GradedQuotient, MonomialAlgebra, path_weight
from .bardzell import compute_ap
from .bimodule_ext import star_sets
from .linalg import QQ, Echelon, Field, Matrix, axpy
from .modrep import ProjectiveSum, module_global_dimension
from .quiver import (
    MonomialPresentation,
    Path,
    PresentationError,
    Quiver,
    build_quiver,
    delta_left,
    delta_right,
    names_to_path,
    parse_text,
)


def _rotations(arrows):
    return [arrows[i:] + arrows[:i] for i in range(len(arrows))]


def _cycle(q: Quiver, arrows) -> Path:
    v = q.arrows[arrows[-1]].tail
    return Path(tuple(arrows), v, v)


def canonical_rotation(q: Quiver, p: Path) -> Path:
    """Lexicographically least rotation by arrow id."""
    return _cycle(q, min(_rotations(p.arrows)))


class QuiverWithPotential:
    def __init__(self, quiver: Quiver, terms, field: Field = QQ, weights=None):
        self.quiver = quiver
        self.field = field
        merged = {}
        for coeff, p in terms:
            if p.is_trivial or p.source != p.target:
                raise PresentationError(f"potential term {quiver.name(p)} is not a cycle")
            key = canonical_rotation(quiver, p)
            merged[key] = merged.get(key, 0) + field(coeff)
            if field.p:
                merged[key] %= field.p
        self.terms = sorted(((c, p) for p, c in merged.items() if c), key=lambda t: t[1].arrows)
        self.weights = dict(weights) if weights else {a.id: 1 for a in quiver.arrows}
        degs = {path_weight(p, self.weights) for _, p in self.terms}
        if len(degs) > 1:
            raise PresentationError("potential is not homogeneous for the arrow weights; supply 'weight' lines")
        self.degree = degs.pop() if degs else 0

    def __repr__(self):
        return f"QuiverWithPotential({len(self.quiver.vertices)} vertices, {len(self.quiver.arrows)} arrows, {len(self.terms)} terms)"

    def term_names(self) -> list[str]:
        return [self.quiver.name(p) for _, p in self.terms]

    def serialize(self) -> str:
        q = self.quiver
        lines = [f"field {self.field.name}", "vertices " + " ".join(q.vertex_names)]
        for a in q.arrows:
            lines.append(f"arrow {a.name}: {q.vertex_names[a.tail]} -> {q.vertex_names[a.head]}")
        for a in q.arrows:
            if self.weights[a.id] != 1:
                lines.append(f"weight {a.name} {self.weights[a.id]}")
        for c, p in self.terms:
            lines.append(f"term {_fmt(c, self.field)} {q.name(p)}")
        return "\n".join(lines) + "\n"

    def border_counts(self) -> dict:
        """Number of potential terms containing each arrow."""
        out = {a.id: 0 for a in self.quiver.arrows}
        for _, p in self.terms:
            for a in set(p.arrows):
                out[a] += 1
        return out


def _fmt(c, field: Field) -> str:
    if field.p:
        return str(field.to_int(c))
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_qp(text: str) -> QuiverWithPotential:
    parsed = parse_text(text, allow_terms=True)
    if parsed.relations:
        raise PresentationError("a potential file takes 'term' lines, not 'relation' lines")
    q = build_quiver(parsed)
    terms = [(c, names_to_path(q, names, lineno)) for c, names, lineno in parsed.terms]
    weights = {a.id: 1 for a in q.arrows}
    for name, w in parsed.weights.items():
        if name not in q._by_name:
            raise PresentationError(f"weight for unknown arrow {name!r}")
        if w < 1:
            raise PresentationError("arrow weights must be positive")
        weights[q.arrow(name)] = w
    return QuiverWithPotential(q, terms, parsed.field, weights)


def load_qp(path) -> QuiverWithPotential:
    with open(path) as fh:
        return parse_qp(fh.read())


# -- derivatives -------------------------------------------------------------


def cyclic_derivative(qp: QuiverWithPotential, a: int) -> dict:
    """``delta_a W``: rotate each occurrence of ``a`` to the left end and drop it."""
    q = qp.quiver
    out = {}
    for c, p in qp.terms:
        for rot in _rotations(p.arrows):
            if rot[0] != a:
                continue
            rest = rot[1:]
            path = q.trivial(q.arrows[a].tail) if not rest else Path(rest, q.arrows[rest[-1]].tail, q.arrows[a].tail)
            axpy(out, c, {path: 1}, qp.field)
    return out


def second_derivative(qp: QuiverWithPotential, a: int, b: int) -> dict:
    """``delta^L_a delta^R_b W`` summed over all rotations of every term."""
    q = qp.quiver
    out = {}
    for c, p in qp.terms:
        for rot in _rotations(p.arrows):
            if len(rot) < 2 or rot[0] != a or rot[-1] != b:
                continue
            mid = rot[1:-1]
            path = q.trivial(q.arrows[b].head) if not mid else Path(mid, q.arrows[mid[-1]].tail, q.arrows[mid[0]].head)
            axpy(out, c, {path: 1}, qp.field)
    return out


# -- construction from a global dimension two algebra -----------------------


def _fresh_name(q_names: set, base: str) -> str:
    name = base
    while name in q_names:
        name += "'"
    q_names.add(name)
    return name


def qp_from_gldim2(pres: MonomialPresentation, check: bool = True) -> tuple[QuiverWithPotential, dict]:
    """Add ``c_rho: h(rho) -> t(rho)`` per relation and take ``W = sum rho c_rho``.

    Returns the QP and the map relation -> new arrow id.
    """
    if check:
        data = compute_ap(pres)
        if not data.exhausted or data.top_degree != 2:
            raise ValueError("input must have global dimension 2")
    q = pres.quiver
    names = {a.name for a in q.arrows}
    arrows = [(a.name, a.tail, a.head) for a in q.arrows]
    rels = sorted(pres.relations, key=lambda r: r.arrows)
    top = max(len(r) for r in rels) + 1
    cmap, weights = {}, {a.id: 1 for a in q.arrows}
    for r in rels:
        base = "c_" + "_".join(q.arrows[x].name for x in r.arrows)
        cmap[r] = len(arrows)
        weights[len(arrows)] = top - len(r)
        arrows.append((_fresh_name(names, base), r.target, r.source))
    nq = Quiver(q.vertex_names, arrows)
    terms = [(1, Path(r.arrows + (cmap[r],), r.target, r.target)) for r in rels]
    return QuiverWithPotential(nq, terms, pres.field, weights), cmap


# -- Jacobian algebra --------------------------------------------------------


@dataclass
class Jacobian:
    qp: QuiverWithPotential
    algebra: GradedQuotient
    relations: dict  # arrow id -> delta_a W

    @property
    def finite(self) -> bool:
        return bool(self.algebra.finite)

    def graded_dimensions(self) -> list[int]:
        return self.algebra.graded_dimensions()

    @property
    def dimension(self) -> int:
        return self.algebra.dim


def jacobian(qp: QuiverWithPotential, cap: int | None = None) -> Jacobian:
    cap = cap if cap is not None else 4 * len(qp.quiver.vertices) * max(qp.weights.values(), default=1)
    rels = {a.id: cyclic_derivative(qp, a.id) for a in qp.quiver.arrows}
    alg = GradedQuotient(qp.quiver, [r for r in rels.values() if r], qp.field, qp.weights, cap)
    return Jacobian(qp, alg, rels)


def jacobian_basis(qp: QuiverWithPotential, cap: int | None = None) -> dict:
    jac = jacobian(qp, cap)
    return {
        "finite": jac.finite,
        "graded_dimensions": jac.graded_dimensions(),
        "dimension": jac.dimension if jac.finite else None,
        "verdict": "finite" if jac.finite else "infinite up to cap",
    }


# -- cuts ---------------------------------------------------------------------


def enumerate_cuts(qp: QuiverWithPotential) -> list[frozenset]:
    """Arrow sets meeting every potential term exactly once (with multiplicity).

    Arrows outside every term are kept in degree 0.
    """
    terms = [p.arrows for _, p in qp.terms]
    out = []

    def rec(i, chosen, banned):
        if i == len(terms):
            out.append(frozenset(chosen))
            return
        t = terms[i]
        hits = sum(1 for x in t if x in chosen)
        if hits > 1:
            return
        if hits == 1:
            rec(i + 1, chosen, banned)
            return
        for x in sorted(set(t)):
            if x in banned or t.count(x) != 1:
                continue
            # x must not create a second hit in earlier terms
            if any(x in terms[j] for j in range(i)):
                continue
            rec(i + 1, chosen | {x}, banned)
            banned = banned | {x}

    rec(0, frozenset(), frozenset())
    return sorted(set(out), key=lambda s: sorted(s))


def is_cut(qp: QuiverWithPotential, cut) -> bool:
    return all(sum(1 for x in p.arrows if x in cut) == 1 for _, p in qp.terms)


def borders(qp: QuiverWithPotential) -> dict:
    return qp.border_counts()


def is_monomial_cut(qp: QuiverWithPotential, cut) -> bool:
    counts = qp.border_counts()
    return is_cut(qp, cut) and all(counts[c] == 1 for c in cut)


@dataclass
class TruncatedJacobian:
    quiver: Quiver
    relations: list  # list of {Path: coeff} in the sub-quiver
    field: Field
    weights: dict

    @property
    def is_monomial(self) -> bool:
        return all(len(r) == 1 for r in self.relations)

    def presentation(self) -> MonomialPresentation | None:
        if not self.is_monomial:
            return None
        try:
            return MonomialPresentation(self.quiver, [next(iter(r)) for r in self.relations], self.field)
        except PresentationError:
            return None

    def algebra(self, cap: int = 64):
        pres = self.presentation()
        if pres is not None:
            try:
                return MonomialAlgebra(pres)
            except ValueError:
                pass
        return GradedQuotient(self.quiver, self.relations, self.field, self.weights, cap)


def truncated_jacobian(qp: QuiverWithPotential, cut) -> TruncatedJacobian:
    if not is_cut(qp, cut):
        raise ValueError("not a cut")
    q = qp.quiver
    keep = [a for a in q.arrows if a.id not in cut]
    new_id = {a.id: i for i, a in enumerate(keep)}
    sub = Quiver(q.vertex_names, [(a.name, a.tail, a.head) for a in keep])
    rels = []
    for c in sorted(cut):
        rel = {}
        for p, coeff in cyclic_derivative(qp, c).items():
            if p.is_trivial:
                raise ValueError("derivative of a cut arrow is a vertex")
            rel[Path(tuple(new_id[x] for x in p.arrows), p.source, p.target)] = coeff
        if rel:
            rels.append(rel)
    weights = {new_id[a.id]: qp.weights[a.id] for a in keep}
    return TruncatedJacobian(sub, rels, qp.field, weights)


def _paths_by_weight(q: Quiver, weights, top: int) -> dict:
    """All paths of weight ``<= top``, grouped by weight."""
    out = {0: [q.trivial(v) for v in q.vertices]}
    frontier = list(out[0])
    while frontier:
        nxt = []
        for p in frontier:
            for a in q.arrows_out(p.target):
                w = path_weight(p, weights) + weights[a]
                if w > top:
                    continue
                np_ = Path((a,) + p.arrows, p.source, q.arrows[a].head)
                out.setdefault(w, []).append(np_)
                nxt.append(np_)
        frontier = nxt
    return out


def minimal_generators(quiver: Quiver, relations, field: Field, weights) -> bool:
    """No relation lies in the two-sided ideal generated by the others."""
    if not relations:
        return True
    degs = [path_weight(next(iter(r)), weights) for r in relations]
    top = max(degs)
    paths = _paths_by_weight(quiver, weights, top)
    for i, r in enumerate(relations):
        d = degs[i]
        index = {p: n for n, p in enumerate(paths.get(d, []))}
        ech = Echelon(len(index), field)
        for j, g in enumerate(relations):
            if j == i or degs[j] > d:
                continue
            gs, gt = next(iter(g)).source, next(iter(g)).target
            for wu in range(0, d - degs[j] + 1):
                wv = d - degs[j] - wu
                for u in paths.get(wu, []):
                    if u.source != gt:
                        continue
                    for v in paths.get(wv, []):
                        if v.target != gs:
                            continue
                        vec = {}
                        for p, c in g.items():
                            full = Path(u.arrows + p.arrows + v.arrows, v.source, u.target)
                            axpy(vec, field(c), {index[full]: 1}, field)
                        if vec:
                            ech.insert(vec)
        target = {}
        for p, c in r.items():
            axpy(target, field(c), {index[p]: 1}, field)
        if not target or ech.contains(target):
            return False
    return True


def is_algebraic_cut(qp: QuiverWithPotential, cut, cap: int = 64) -> dict:
    tj = truncated_jacobian(qp, cut)
    alg = tj.algebra(cap)
    finite = getattr(alg, "finite", True) is not False
    gd = module_global_dimension(alg, cap=3) if finite else None
    minimal = minimal_generators(tj.quiver, tj.relations, tj.field, tj.weights)
    ok = finite and gd is not None and gd <= 2 and minimal
    return {"finite": finite, "gldim": gd, "minimal": minimal, "algebraic": ok, "monomial": tj.is_monomial}


# -- exactness criteria ------------------------------------------------------


def _right_mult(alg, vec: dict, elem: dict) -> dict:
    out = {}
    for p, c in elem.items():
        axpy(out, alg.field(c), alg.right_mult_path(vec, p), alg.field)
    return out


@dataclass
class VertexComplex:
    vertex: int
    ins: list  # arrows a with h(a) = i
    outs: list  # arrows b with t(b) = i
    spaces: list  # four lists of (component, basis index)
    maps: list  # three Matrix objects


def vertex_complex(jac: Jacobian, i: int, max_total: int | None = None) -> VertexComplex:
    """``P_i -> sum P_{t(a)} -> sum P_{h(b)} -> P_i`` by right multiplication.

    With ``max_total`` only the summands of total degree ``<= max_total`` are
    kept; the maps preserve total degree, so this is a subcomplex.
    """
    qp, alg = jac.qp, jac.algebra
    q = qp.quiver
    w, W = qp.weights, qp.degree
    ins = [a.id for a in q.arrows if a.head == i]
    outs = [b.id for b in q.arrows if b.tail == i]

    def keep(j, shift):
        return max_total is None or alg.degree(j) + shift <= max_total

    s0 = [(0, j) for j in alg.elements_from(i) if keep(j, W)]
    s1 = [(k, j) for k, a in enumerate(ins) for j in alg.elements_from(q.arrows[a].tail) if keep(j, W - w[a])]
    s2 = [(k, j) for k, b in enumerate(outs) for j in alg.elements_from(q.arrows[b].head) if keep(j, w[b])]
    s3 = [(0, j) for j in alg.elements_from(i) if keep(j, 0)]
    pos = [{x: n for n, x in enumerate(s)} for s in (s0, s1, s2, s3)]
    one = alg.field(1)
    mids = {(a, b): second_derivative(qp, a, b) for a in ins for b in outs}

    def build(src, dst_pos, images):
        cols = []
        for comp, j in src:
            col = {}
            for k, vec in images(comp, {j: one}):
                for jj, c in vec.items():
                    axpy(col, c, {dst_pos[(k, jj)]: one}, alg.field)
            cols.append(col)
        return Matrix.from_columns(len(dst_pos), cols, alg.field)

    f1 = build(s0, pos[1], lambda _, x: [(k, alg.right_mult_path(x, q.arrow_path(a))) for k, a in enumerate(ins)])
    f2 = build(s1, pos[2], lambda k, x: [(kb, _right_mult(alg, x, mids[(ins[k], b)])) for kb, b in enumerate(outs)])
    f3 = build(s2, pos[3], lambda k, x: [(0, alg.right_mult_path(x, q.arrow_path(outs[k])))])
    return VertexComplex(i, ins, outs, [s0, s1, s2, s3], [f1, f2, f3])


def _exactness(vc: VertexComplex, left_exact: bool, cokernel: int) -> dict:
    f1, f2, f3 = vc.maps
    r1, r2, r3 = f1.rank(), f2.rank(), f3.rank()
    d = [len(s) for s in vc.spaces]
    out = {
        "dims": d,
        "ranks": [r1, r2, r3],
        "complex": (f2 @ f1).is_zero() and (f3 @ f2).is_zero(),
        "exact_left": (r1 == d[0]) if left_exact else True,
        "exact_1": d[1] - r2 == r1,
        "exact_2": d[2] - r3 == r2,
        "exact_3": d[3] - r3 == cokernel,
    }
    out["exact"] = all(out[k] for k in ("complex", "exact_left", "exact_1", "exact_2", "exact_3"))
    return out


@dataclass
class SelfinjectivityVerdict:
    selfinjective: bool
    dimension: int
    per_vertex: dict

    def to_dict(self) -> dict:
        return {"selfinjective": self.selfinjective, "dimension": self.dimension, "per_vertex": self.per_vertex}


def selfinjectivity_check(qp_or_jac, cap: int | None = None) -> SelfinjectivityVerdict:
    jac = qp_or_jac if isinstance(qp_or_jac, Jacobian) else jacobian(qp_or_jac, cap)
    if not jac.finite:
        raise ValueError("Jacobian algebra is infinite-dimensional up to the cap")
    q = jac.qp.quiver
    per = {}
    for i in q.vertices:
        per[q.vertex_names[i]] = _exactness(vertex_complex(jac, i), False, 1)
    return SelfinjectivityVerdict(all(v["exact"] for v in per.values()), jac.dimension, per)


def cy_check_capped(qp: QuiverWithPotential, cap: int) -> dict:
    """Exactness of the complex with a leading zero, slice by total degree.

    The maps preserve total degree, so slice ranks are differences of the
    ranks of the cumulative subcomplexes.
    """
    jac = jacobian(qp, cap)
    q = qp.quiver
    table = {}
    witness = None
    for i in q.vertices:
        rows = []
        pd, pr = [0] * 4, [0] * 3
        for t in range(cap + 1):
            vc = vertex_complex(jac, i, t)
            dims = [len(s) for s in vc.spaces]
            ranks = [m.rank() for m in vc.maps]
            d = [x - y for x, y in zip(dims, pd)]
            r = [x - y for x, y in zip(ranks, pr)]
            coker = 1 if t == 0 else 0
            exact = r[0] == d[0] and d[1] - r[1] == r[0] and d[2] - r[2] == r[1] and d[3] - r[2] == coker
            rows.append({"degree": t, "dims": d, "exact": exact})
            if not exact and witness is None:
                witness = {"vertex": q.vertex_names[i], "degree": t}
            pd, pr = dims, ranks
        table[q.vertex_names[i]] = rows
    status = "violated" if witness else "3-CY-consistent up to cap"
    return {"status": status, "cap": cap, "witness": witness, "table": table, "finite": jac.finite}


def middle_matrix_indecomposable(jac: Jacobian, i: int) -> bool:
    """The bipartite support graph of ``[delta_(a,b) W]`` at ``i`` is connected."""
    qp, alg = jac.qp, jac.algebra
    q = qp.quiver
    ins = [a.id for a in q.arrows if a.head == i]
    outs = [b.id for b in q.arrows if b.tail == i]
    nodes = [("a", a) for a in ins] + [("b", b) for b in outs]
    if len(nodes) <= 1:
        return True
    adj = {n: set() for n in nodes}
    for a in ins:
        for b in outs:
            elem = second_derivative(qp, a, b)
            val = {}
            for p, c in elem.items():
                axpy(val, alg.field(c), alg.reduce_path(p), alg.field)
            if val:
                adj[("a", a)].add(("b", b))
                adj[("b", b)].add(("a", a))
    seen, stack = {nodes[0]}, [nodes[0]]
    while stack:
        for m in adj[stack.pop()]:
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return len(seen) == len(nodes)


# -- Loewy lengths -----------------------------------------------------------


def loewy_length(M) -> int:
    """Smallest ``t`` with ``rad^t M = 0``."""
    field = M.field
    q = M.alg.quiver
    layer = [[{k: field(1)} for k in range(d)] for d in M.dims]
    t = 0
    while any(layer):
        t += 1
        nxt = [Echelon(M.dims[v], field) for v in q.vertices]
        keep = [[] for _ in q.vertices]
        for a in q.arrows:
            for x in layer[a.tail]:
                y = M.maps[a.id].apply(x)
                if y and nxt[a.head].insert(y):
                    keep[a.head].append(y)
        layer = keep
    return t


def loewy_profile(alg) -> list[int]:
    return [loewy_length(ProjectiveSum(alg, [v])) for v in alg.quiver.vertices]


# -- Koszul construction -----------------------------------------------------


def koszul_terms(pres: MonomialPresentation, ell: int) -> list[Path]:
    """Basis of ``K_ell``: paths whose consecutive arrow pairs are all relations."""
    q = pres.quiver
    if ell == 0:
        return [q.trivial(v) for v in q.vertices]
    rels = {r.arrows for r in pres.relations}
    out = []
    for p in q.paths_of_length(ell):
        if all((p.arrows[k], p.arrows[k + 1]) in rels for k in range(ell - 1)):
            out.append(p)
    return sorted(out)


@dataclass
class KoszulPreprojective:
    quiver: Quiver
    relations: list  # list of {Path: coeff}
    new_arrows: dict  # K_n path -> arrow id
    n: int
    field: Field

    def algebra(self, cap: int = 64) -> GradedQuotient:
        return GradedQuotient(self.quiver, self.relations, self.field, None, cap)


def koszul_preprojective(pres: MonomialPresentation, n: int | None = None) -> KoszulPreprojective:
    if not pres.is_quadratic:
        raise ValueError("the Koszul construction here needs quadratic monomial relations")
    if n is None:
        data = compute_ap(pres)
        if not data.exhausted:
            raise ValueError("infinite global dimension")
        n = data.top_degree
    q = pres.quiver
    kn = koszul_terms(pres, n)
    kn1 = koszul_terms(pres, n - 1)
    names = {a.name for a in q.arrows}
    arrows = [(a.name, a.tail, a.head) for a in q.arrows]
    new = {}
    for p in kn:
        new[p] = len(arrows)
        arrows.append((_fresh_name(names, "k_" + "_".join(q.arrows[x].name for x in p.arrows)), p.target, p.source))
    nq = Quiver(q.vertex_names, arrows)
    rels = [{r: 1} for r in sorted(pres.relations)]
    sign = -1 if n % 2 else 1
    for p in kn1:
        rel = {}
        for qq in kn:
            b = delta_right(p, qq)
            if b is not None:
                path = Path((new[qq],) + b.arrows, p.target, p.source)
                axpy(rel, pres.field(1), {path: 1}, pres.field)
            a = delta_left(p, qq)
            if a is not None:
                path = Path(a.arrows + (new[qq],), p.target, p.source)
                axpy(rel, pres.field(sign), {path: 1}, pres.field)
        if rel:
            rels.append(rel)
    return KoszulPreprojective(nq, rels, new, n, pres.field)


def compare_constructions(pres: MonomialPresentation, cap: int = 12) -> dict:
    """Koszul presentation vs. the Jacobian of ``qp_from_gldim2`` (gl.dim 2).

    The relation spans decide agreement; graded dimensions are compared up
    to degree ``cap`` since infinite cases can grow exponentially.
    """
    kp = koszul_preprojective(pres, 2)
    qp, cmap = qp_from_gldim2(pres, check=False)
    jac_rels = [r for r in (cyclic_derivative(qp, a.id) for a in qp.quiver.arrows) if r]
    # canonical matching: new arrow for relation rho <-> c_rho, originals by id
    match = {a.id: a.id for a in pres.quiver.arrows}
    for p, k in kp.new_arrows.items():
        match[k] = cmap[p]
    mapped = []
    for rel in kp.relations:
        mapped.append({Path(tuple(match[x] for x in p.arrows), p.source, p.target): c for p, c in rel.items()})
    field = pres.field
    paths = sorted({p for r in mapped + jac_rels for p in r}, key=lambda p: (len(p), p.arrows))
    index = {p: n for n, p in enumerate(paths)}

    def span(rels):
        e = Echelon(len(index), field)
        for r in rels:
            e.insert({index[p]: field(c) for p, c in r.items()})
        return e

    a, b = span(mapped), span(jac_rels)
    same = a.rank == b.rank and all(b.contains({index[p]: field(c) for p, c in r.items()}) for r in mapped)
    dims_j = jacobian(qp, cap).graded_dimensions()
    dims_k = kp.algebra(cap).graded_dimensions()
    k = min(len(dims_k), len(dims_j))
    return {
        "same_relation_span": same,
        "koszul_dims": dims_k,
        "jacobian_dims": dims_j,
        "agree": same and dims_k[:k] == dims_j[:k],
    }


# -- stars ---------------------------------------------------------------------


@dataclass
class StarData:
    center: str
    incoming: list  # arrow names a_i
    outgoing: list  # arrow names b_j
    z_in: dict  # a -> sorted names of b with b a = 0
    z_out: dict  # b -> sorted names of a with b a = 0

    @property
    def r(self) -> int:
        return len(self.incoming)

    @property
    def s(self) -> int:
        return len(self.outgoing)


def star_analysis(pres: MonomialPresentation) -> StarData | None:
    st = star_sets(pres)
    if st is None:
        return None
    z, za, zb = st
    q = pres.quiver
    name = lambda x: q.arrows[x].name  # noqa: E731
    return StarData(
        q.vertex_names[z],
        sorted(name(a) for a in za),
        sorted(name(b) for b in zb),
        {name(a): sorted(name(b) for b in bs) for a, bs in za.items()},
        {name(b): sorted(name(a) for a in as_) for b, as_ in zb.items()},
    )

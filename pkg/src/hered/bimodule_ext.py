"""``Ext_{Lambda^e}(Lambda, Lambda^e)`` of a monomial algebra via the dualized Bardzell complex.

The cochain space in degree ``l`` has basis ``(p, u, v)`` with ``p`` in
``AP(l)``, ``u`` in ``Lambda e_{t(p)}`` and ``v`` in ``e_{h(p)} Lambda``; the
element stands for ``(u (x) v)_p``.  Coboundaries act on the two tensor
factors by ``u -> u X`` and ``v -> Y v`` for the coefficient paths ``X, Y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import FDAlgebra, MonomialAlgebra
from .bardzell import BardzellData, compute_ap
from .linalg import Echelon, Matrix, axpy
from .quiver import (
    MonomialPresentation,
    Path,
    delta_left,
    delta_right,
    occurrences,
)


@dataclass
class CochainComplex:
    algebra: FDAlgebra
    data: BardzellData
    bases: list
    positions: list
    maps: dict  # maps[l]: C^{l-1} -> C^l

    def dim(self, ell: int) -> int:
        return len(self.bases[ell]) if ell < len(self.bases) else 0

    def vector(self, ell: int, p: Path, u: Path, v: Path, coeff=1) -> dict:
        alg = self.algebra
        i = self.data.index(ell)[p]
        uu = alg.reduce_path(u)
        vv = alg.reduce_path(v)
        out = {}
        for a, c1 in uu.items():
            for b, c2 in vv.items():
                n = self.positions[ell][(i, a, b)]
                out[n] = out.get(n, 0) + alg.field(coeff) * c1 * c2
        return {k: x for k, x in out.items() if x}


def _terms_odd(q_list, p: Path):
    """Coefficients of ``d~((e (x) e)_p)`` for odd target degree."""
    for j, q in enumerate(q_list):
        b = delta_right(p, q)
        if b is not None:
            yield j, None, b, 1  # (e (x) b)_q
        a = delta_left(p, q)
        if a is not None:
            yield j, a, None, -1  # (a (x) e)_q


def _terms_even(quiver, q_list, p: Path):
    for j, q in enumerate(q_list):
        for left, right in occurrences(quiver, p, q):
            yield j, right, left, 1  # (R_p(q) (x) L_p(q))_q


def dual_complex(data: BardzellData, alg: FDAlgebra | None = None, up_to: int | None = None) -> CochainComplex:
    """Realize ``Hom_{Lambda^e}(P, Lambda^e)`` through degree ``up_to + 1``."""
    alg = alg or MonomialAlgebra(data.pres)
    field = alg.field
    one = field(1)
    quiver = data.quiver
    top = data.top_degree if up_to is None else min(data.top_degree, up_to + 1)
    bases, positions = [], []
    for ell in range(top + 1):
        basis = []
        for i, p in enumerate(data.ap[ell]):
            for u in alg.elements_from(p.source):
                for v in alg.elements_to(p.target):
                    basis.append((i, u, v))
        bases.append(basis)
        positions.append({b: n for n, b in enumerate(basis)})
    maps = {}
    for ell in range(1, top + 1):
        q_list = data.ap[ell]
        pos = positions[ell]
        # coefficient paths for each generator of degree l-1
        coeffs = []
        for p in data.ap[ell - 1]:
            if ell % 2:
                coeffs.append(list(_terms_odd(q_list, p)))
            else:
                coeffs.append(list(_terms_even(quiver, q_list, p)))
        cols = []
        for i, u, v in bases[ell - 1]:
            col = {}
            for j, x, y, sign in coeffs[i]:
                uu = {u: one} if x is None else alg.right_mult_path({u: one}, x)
                vv = {v: one} if y is None else alg.left_mult_path(y, {v: one})
                for a, c1 in uu.items():
                    for b, c2 in vv.items():
                        axpy(col, field(sign) * c1 * c2, {pos[(j, a, b)]: one}, field)
            cols.append(col)
        maps[ell] = Matrix.from_columns(len(bases[ell]), cols, field)
    return CochainComplex(alg, data, bases, positions, maps)


def dual_from_resolution(cplx) -> dict:
    """Dualize a realized :class:`BimoduleComplex` entry by entry.

    Independent of :func:`dual_complex`: it reads the coefficients of ``d_l``
    and applies ``Psi(- o d_l)`` directly.
    """
    alg, data = cplx.algebra, cplx.data
    field = alg.field
    one = field(1)
    bases, positions = [], []
    for ell in range(len(data.ap)):
        basis = [(i, u, v) for i, p in enumerate(data.ap[ell])
                 for u in alg.elements_from(p.source) for v in alg.elements_to(p.target)]
        bases.append(basis)
        positions.append({b: n for n, b in enumerate(basis)})
    maps = {}
    for ell in range(1, len(data.ap)):
        cols = [dict() for _ in bases[ell - 1]]
        for pi, entries in enumerate(data.sub[ell]):
            for e in entries:
                # phi_q(e (x) e) = (u, v) in Psi-coordinates; phi o d_l on p
                for n, (qi, u, v) in enumerate(bases[ell - 1]):
                    if qi != e.index:
                        continue
                    uu = alg.right_mult_path({u: one}, e.right)
                    vv = alg.left_mult_path(e.left, {v: one})
                    for a, c1 in uu.items():
                        for b, c2 in vv.items():
                            axpy(cols[n], field(e.sign) * c1 * c2, {positions[ell][(pi, a, b)]: one}, field)
        maps[ell] = Matrix.from_columns(len(bases[ell]), cols, field)
    return {"bases": bases, "maps": maps}


def ext_dimensions(cplx: CochainComplex, up_to: int) -> list[int]:
    """``dim Ext^l_{Lambda^e}(Lambda, Lambda^e)`` for ``l = 0 .. up_to``."""
    data = cplx.data
    if up_to + 1 > len(cplx.bases) and not (data.exhausted or up_to >= data.top_degree):
        raise ValueError("complex not realized far enough")
    need_top = min(up_to + 1, data.top_degree)
    if need_top > len(cplx.bases) - 1:
        raise ValueError("complex not realized far enough")
    if up_to + 1 > data.top_degree and not data.exhausted:
        raise ValueError("AP sets not exhausted; cannot bound the next differential")
    ranks = {ell: m.rank() for ell, m in cplx.maps.items()}
    out = []
    for ell in range(up_to + 1):
        dim = cplx.dim(ell)
        out.append(dim - ranks.get(ell + 1, 0) - ranks.get(ell, 0))
    return out


def bimodule_ext(pres: MonomialPresentation, up_to: int | None = None) -> list[int]:
    data = compute_ap(pres)
    n = data.top_degree if up_to is None else up_to
    return ext_dimensions(dual_complex(data, up_to=n), n)


# -- structural obstructions ------------------------------------------------


@dataclass
class Obstruction:
    kind: str
    degree: int
    witness: dict
    cocycle: list  # [(p, u, v, coeff)] as Paths, in degree ``degree``

    def describe(self, quiver) -> dict:
        return {
            "kind": self.kind,
            "degree": self.degree,
            "witness": self.witness,
            "cocycle": [
                {"generator": quiver.name(p), "left": quiver.name(u), "right": quiver.name(v), "coeff": int(c)}
                for p, u, v, c in self.cocycle
            ],
        }


@dataclass
class ObstructionReport:
    gldim: int | None
    items: list = dc_field(default_factory=list)

    def obstructing(self) -> list:
        """Witnesses forcing ``Ext^j != 0`` for some ``0 < j < gl.dim``."""
        if self.gldim is None:
            return list(self.items)
        return [o for o in self.items if 0 < o.degree < self.gldim]

    @property
    def clean(self) -> bool:
        return not self.obstructing()

    def kinds(self) -> set:
        return {o.kind for o in self.obstructing()}


def _relations_with(pres, a: int):
    return [r for r in pres.relations if a in r.arrows]


def star_sets(pres: MonomialPresentation):
    """``(z, Z_a for incoming a, Z_b for outgoing b)`` when the quiver is a star.

    A star has one vertex ``z`` that is the head of every arrow not ending in
    ``z``'s out-leaves; here we require every arrow to touch ``z`` and all
    other vertices to have degree one.
    """
    q = pres.quiver
    if not pres.is_quadratic or len(q.vertices) < 3:
        return None
    for z in q.vertices:
        ins, outs = q.arrows_in(z), q.arrows_out(z)
        if len(ins) + len(outs) != len(q.arrows) or not ins or not outs:
            continue
        others = [v for v in q.vertices if v != z]
        if any(len(q.arrows_in(v)) + len(q.arrows_out(v)) != 1 for v in others):
            continue
        za = {a: set() for a in ins}
        zb = {b: set() for b in outs}
        for r in pres.relations:
            b, a = r.arrows
            za[a].add(b)
            zb[b].add(a)
        return z, za, zb
    return None


def obstruction_battery(pres: MonomialPresentation, data: BardzellData | None = None) -> ObstructionReport:
    """Combinatorial witnesses of nonvanishing ``Ext^j_{Lambda^e}(Lambda, Lambda^e)``.

    An empty report is not a certificate of anything.
    """
    q = pres.quiver
    data = data or compute_ap(pres)
    gd = data.top_degree if data.exhausted else None
    rep = ObstructionReport(gd)
    e = q.trivial
    arrow = q.arrow_path
    for a in q.arrows:
        rels = _relations_with(pres, a.id)
        if not rels:
            rep.items.append(Obstruction("ARROW_NOT_IN_RELATION", 1, {"arrow": a.name},
                                         [(arrow(a.id), e(a.tail), e(a.head), 1)]))
            continue
        ends = all(r.arrows[0] == a.id and a.id not in r.arrows[1:] for r in rels)
        starts = all(r.arrows[-1] == a.id and a.id not in r.arrows[:-1] for r in rels)
        if ends and not q.is_sink(a.head):
            rep.items.append(Obstruction("ARROW_ENDS_ALL_RELATIONS", 1, {"arrow": a.name},
                                         [(arrow(a.id), arrow(a.id), e(a.head), 1)]))
        if starts and not q.is_source(a.tail):
            rep.items.append(Obstruction("ARROW_STARTS_ALL_RELATIONS", 1, {"arrow": a.name},
                                         [(arrow(a.id), e(a.tail), arrow(a.id), 1)]))
    for v in q.vertices:
        ins, outs = q.arrows_in(v), q.arrows_out(v)
        if not outs and len(ins) >= 2:
            a, b = ins[0], ins[1]
            rep.items.append(Obstruction("SINK_MULTIPLE_ARROWS", 1,
                                         {"vertex": q.vertex_names[v], "arrows": [q.arrows[a].name, q.arrows[b].name]},
                                         [(arrow(a), arrow(a), e(v), 1)]))
        if not ins and len(outs) >= 2:
            a, b = outs[0], outs[1]
            rep.items.append(Obstruction("SOURCE_MULTIPLE_ARROWS", 1,
                                         {"vertex": q.vertex_names[v], "arrows": [q.arrows[a].name, q.arrows[b].name]},
                                         [(arrow(a), e(v), arrow(a), 1)]))
    for ell, w in delta_surjectivity_check(data).items():
        if w is not None and ell > 2:
            rep.items.append(Obstruction("SUBPATH_NOT_EXTENDED", ell - 1, {"path": q.name(w)},
                                         [(w, e(w.source), e(w.target), 1)]))
    star = star_sets(pres)
    if star is not None and all(star[1].values()) and all(star[2].values()):
        z, za, zb = star
        for sets, side in ((za, "in"), (zb, "out")):
            keys = sorted(sets)
            for x in keys:
                for y in keys:
                    if x == y or not sets[x] <= sets[y]:
                        continue
                    xa, ya = q.arrows[x], q.arrows[y]
                    # every relation through x also kills y, so y can sit beside x
                    if side == "in":
                        cyc = [(arrow(x), e(xa.tail), arrow(y), 1)]
                    else:
                        cyc = [(arrow(x), arrow(y), e(xa.head), 1)]
                    kind = "Z_FULL" if len(sets[y]) == len(zb if side == "in" else za) else "Z_SUBSET"
                    rep.items.append(Obstruction(kind, 1, {"contained": xa.name, "container": ya.name}, cyc))
    return rep


def delta_surjectivity_check(data: BardzellData) -> dict:
    """For ``2 <= l <= top``: None when every element of ``AP(l-1)`` divides
    some element of ``AP(l)``, else a witness path."""
    q = data.quiver
    out = {}
    for ell in range(2, data.top_degree + 1):
        witness = None
        upper = data.ap[ell]
        for w in data.ap[ell - 1]:
            if not any(occurrences(q, w, p) for p in upper):
                witness = w
                break
        out[ell] = witness
    return out


def certify(cplx: CochainComplex, ob: Obstruction) -> bool:
    """The witness is a cocycle and not a coboundary (rank computation)."""
    ell = ob.degree
    x = {}
    for p, u, v, c in ob.cocycle:
        axpy(x, cplx.algebra.field(1), cplx.vector(ell, p, u, v, c), cplx.algebra.field)
    if not x:
        return False
    nxt = cplx.maps.get(ell + 1)
    if nxt is not None and nxt.apply(x):
        return False
    prev = cplx.maps.get(ell)
    if prev is None:
        return True
    ech = Echelon(cplx.dim(ell), cplx.algebra.field, prev.columns())
    return not ech.contains(x)


def ext_report(pres: MonomialPresentation, up_to: int | None = None, battery: bool = True) -> dict:
    data = compute_ap(pres)
    gd = data.top_degree if data.exhausted else None
    n = up_to if up_to is not None else (gd if gd is not None else data.top_degree)
    rep = obstruction_battery(pres, data) if battery else None
    out = {"gldim": gd, "battery": [o.describe(pres.quiver) for o in rep.items] if rep else []}
    if rep is not None and not rep.clean:
        out["ext_dims"] = None
        out["certified_vanishing"] = False
        out["short_circuit"] = True
        return out
    dims = ext_dimensions(dual_complex(data, up_to=n), n)
    out["ext_dims"] = dims
    limit = min(n + 1, gd) if gd is not None else n + 1
    out["certified_vanishing"] = all(d == 0 for d in dims[1:limit])
    out["short_circuit"] = False
    return out

"""Finite-dimensional bound quiver algebras with an explicit path-class basis.

Two concrete algebras share one interface: :class:`MonomialAlgebra` (basis =
nonzero paths) and :class:`GradedQuotient` (``kQ / I`` for an ideal generated
by relations homogeneous for some positive arrow weighting, computed degree by
degree).  Every basis element carries a representative path, so products are
obtained by reducing concatenated representatives.
"""

from __future__ import annotations

from .linalg import QQ, Echelon, Field, axpy
from .quiver import MonomialPresentation, Path, Quiver, enumerate_basis


class NotFiniteDimensional(ValueError):
    pass


class FDAlgebra:
    quiver: Quiver
    field: Field
    paths: list  # representative path of every basis element

    def _index(self):
        q = self.quiver
        self.dim = len(self.paths)
        self._from = [[] for _ in q.vertices]
        self._to = [[] for _ in q.vertices]
        for j, p in enumerate(self.paths):
            self._from[p.source].append(j)
            self._to[p.target].append(j)
        self._right_cache = {}

    def source(self, j: int) -> int:
        return self.paths[j].source

    def target(self, j: int) -> int:
        return self.paths[j].target

    def elements_from(self, v: int) -> list[int]:
        """Basis of ``Lambda e_v``."""
        return self._from[v]

    def elements_to(self, v: int) -> list[int]:
        """Basis of ``e_v Lambda``."""
        return self._to[v]

    def elements_between(self, source: int, target: int) -> list[int]:
        return [j for j in self._from[source] if self.paths[j].target == target]

    def idempotent(self, v: int) -> int:
        raise NotImplementedError

    def left_arrow(self, a: int, j: int) -> dict:
        raise NotImplementedError

    def reduce_path(self, p: Path) -> dict:
        """Coordinates of the class of ``p``."""
        vec = {self.idempotent(p.source): self.field(1)}
        for a in reversed(p.arrows):
            vec = self.left_mult_arrow(a, vec)
            if not vec:
                break
        return vec

    def left_mult_arrow(self, a: int, vec: dict) -> dict:
        out = {}
        for j, c in vec.items():
            if self.paths[j].target == self.quiver.arrows[a].tail:
                axpy(out, c, self.left_arrow(a, j), self.field)
        return out

    def left_mult_path(self, p: Path, vec: dict) -> dict:
        """``p * vec``."""
        if p.is_trivial:
            return {j: c for j, c in vec.items() if self.paths[j].target == p.source}
        for a in reversed(p.arrows):
            vec = self.left_mult_arrow(a, vec)
            if not vec:
                break
        return vec

    def right_mult_path(self, vec: dict, p: Path) -> dict:
        """``vec * p``."""
        out = {}
        for j, c in vec.items():
            key = (j, p)
            hit = self._right_cache.get(key)
            if hit is None:
                rep = self.paths[j]
                if rep.source != p.target:
                    hit = {}
                else:
                    hit = self.reduce_path(Path(rep.arrows + p.arrows, p.source, rep.target))
                self._right_cache[key] = hit
            axpy(out, c, hit, self.field)
        return out

    def right_arrow(self, j: int, a: int) -> dict:
        return self.right_mult_path({j: self.field(1)}, self.quiver.arrow_path(a))

    def mult(self, x: dict, y: dict) -> dict:
        """Product ``x * y`` of two elements."""
        out = {}
        for j, c in y.items():
            for i, d in x.items():
                rep_i, rep_j = self.paths[i], self.paths[j]
                if rep_i.source != rep_j.target:
                    continue
                prod = self.left_mult_path(rep_i, {j: self.field(1)})
                axpy(out, c * d, prod, self.field)
        return out

    def degree(self, j: int) -> int:
        return len(self.paths[j])


class MonomialAlgebra(FDAlgebra):
    def __init__(self, pres: MonomialPresentation):
        basis = enumerate_basis(pres)
        if not basis.finite:
            raise NotFiniteDimensional(
                f"relation-avoiding cycle {pres.quiver.name(basis.witness)}"
            )
        self.pres = pres
        self.quiver = pres.quiver
        self.field = pres.field
        self.paths = sorted(basis.paths, key=lambda p: (len(p), p.source, p.arrows))
        self._pos = {p: j for j, p in enumerate(self.paths)}
        self._index()
        self._left = {}

    def index_of(self, p: Path) -> int | None:
        return self._pos.get(p)

    def idempotent(self, v: int) -> int:
        return self._pos[self.quiver.trivial(v)]

    def left_arrow(self, a: int, j: int) -> dict:
        key = (a, j)
        hit = self._left.get(key)
        if hit is None:
            p = self.paths[j]
            ar = self.quiver.arrows[a]
            hit = {}
            if ar.tail == p.target:
                k = self._pos.get(Path((a,) + p.arrows, p.source, ar.head))
                if k is not None:
                    hit = {k: self.field(1)}
            self._left[key] = hit
        return hit

    def reduce_path(self, p: Path) -> dict:
        k = self._pos.get(p)
        return {} if k is None else {k: self.field(1)}


def path_weight(p: Path, weights) -> int:
    return sum(weights[a] for a in p.arrows)


class GradedQuotient(FDAlgebra):
    """``kQ / <relations>`` for relations homogeneous w.r.t. ``weights``.

    ``relations`` is a list of ``{Path: coefficient}`` dictionaries.  The
    degree-``d`` part is computed as ``(sum_a a * A_{d - w(a)})`` modulo the
    span of ``r * A_{d - w(r)}``; this is exact for graded ideals.
    """

    def __init__(self, quiver: Quiver, relations, field: Field = QQ, weights=None, cap: int = 64):
        self.quiver = quiver
        self.field = field
        self.weights = weights or {a.id: 1 for a in quiver.arrows}
        if any(self.weights[a.id] < 1 for a in quiver.arrows):
            raise ValueError("arrow weights must be positive")
        self.relations = []
        for rel in relations:
            rel = {p: field(c) for p, c in rel.items() if field(c)}
            if not rel:
                continue
            ends = {(p.source, p.target) for p in rel}
            degs = {path_weight(p, self.weights) for p in rel}
            if len(ends) != 1 or len(degs) != 1:
                raise ValueError("relations must be homogeneous with common endpoints")
            if any(len(p) == 0 for p in rel):
                raise ValueError("relations must lie in the arrow ideal")
            self.relations.append((degs.pop(), rel))
        self.cap = cap
        self.paths = [quiver.trivial(v) for v in quiver.vertices]
        self.degrees = [0] * len(self.paths)
        self.by_degree = {0: list(range(len(self.paths)))}
        self._left = {}
        self.finite = None
        self._build()
        self._index()

    def _build(self) -> None:
        q = self.quiver
        wmax = max(self.weights.values(), default=1)
        zeros = 0
        d = 0
        while True:
            d += 1
            if d > self.cap:
                self.finite = False
                return
            cands = []
            for a in q.arrows:
                for j in self.by_degree.get(d - self.weights[a.id], ()):
                    if self.paths[j].target == a.tail:
                        cands.append((a.id, j))
            pos = {c: i for i, c in enumerate(cands)}
            ech = Echelon(len(cands), self.field)
            for deg, rel in self.relations:
                for m in self.by_degree.get(d - deg, ()):
                    src = self.paths[m].target
                    vec = {}
                    for p, c in rel.items():
                        if p.source != src:
                            continue
                        inner = self.left_mult_path(Path(p.arrows[1:], p.source, q.arrows[p.arrows[1]].head) if len(p) > 1 else q.trivial(p.source), {m: self.field(1)})
                        top = p.arrows[0]
                        for k, v in inner.items():
                            i = pos[(top, k)]
                            w = vec.get(i, 0) + c * v
                            if self.field.p:
                                w %= self.field.p
                            if w:
                                vec[i] = w
                            else:
                                vec.pop(i, None)
                    if vec:
                        ech.insert(vec)
            keep = ech.complement()
            newpos = {}
            for i in keep:
                a, j = cands[i]
                newpos[i] = len(self.paths)
                rep = self.paths[j]
                self.paths.append(Path((a,) + rep.arrows, rep.source, q.arrows[a].head))
                self.degrees.append(d)
            self.by_degree[d] = [newpos[i] for i in keep]
            for i, (a, j) in enumerate(cands):
                red = ech.reduce({i: self.field(1)})
                self._left[(a, j)] = {newpos[k]: v for k, v in red.items()}
            if keep:
                zeros = 0
            else:
                zeros += 1
                if zeros >= wmax:
                    self.finite = True
                    return

    def idempotent(self, v: int) -> int:
        return v

    def left_arrow(self, a: int, j: int) -> dict:
        hit = self._left.get((a, j))
        if hit is None:
            if self.paths[j].target != self.quiver.arrows[a].tail:
                return {}
            if self.finite is False:
                raise NotFiniteDimensional("product beyond the computed degree cap")
            return {}
        return hit

    def degree(self, j: int) -> int:
        return self.degrees[j]

    def graded_dimensions(self) -> list[int]:
        top = max(self.by_degree)
        return [len(self.by_degree.get(d, ())) for d in range(top + 1)]


def as_algebra(pres_or_alg) -> FDAlgebra:
    if isinstance(pres_or_alg, FDAlgebra):
        return pres_or_alg
    return MonomialAlgebra(pres_or_alg)

"""Associated paths and Bardzell's minimal bimodule resolution of a monomial algebra."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import FDAlgebra, MonomialAlgebra
from .linalg import Matrix, axpy
from .quiver import MonomialPresentation, Path, Quiver, occurrences


class NotExhausted(RuntimeError):
    """AP sets were not computed until the first empty degree."""


@dataclass(frozen=True)
class ChainLink:
    """A relation occurrence inside an ambient path, by vertex positions.

    Positions count arrows from the tail of the ambient path, so the
    occurrence covers the arrows traversed at steps ``start .. end - 1``.
    """

    start: int
    end: int
    relation: Path


@dataclass
class SubEntry:
    """One occurrence ``p = left * q * right`` of ``q`` in ``AP(l-1)``."""

    index: int
    left: Path
    right: Path
    sign: int = 1


@dataclass
class BardzellData:
    pres: MonomialPresentation
    ap: list  # ap[l] = sorted list of Paths
    exhausted: bool
    sub: list = dc_field(default_factory=list)  # sub[l][i] = [SubEntry]

    @property
    def quiver(self) -> Quiver:
        return self.pres.quiver

    @property
    def top_degree(self) -> int:
        return len(self.ap) - 1

    def sizes(self) -> list[int]:
        return [len(x) for x in self.ap]

    def index(self, ell: int) -> dict:
        return {p: i for i, p in enumerate(self.ap[ell])}


def _seq(p: Path) -> list[int]:
    """Arrows in traversal order."""
    return list(reversed(p.arrows))


def _to_path(q: Quiver, seq) -> Path:
    return Path(tuple(reversed(seq)), q.arrows[seq[0]].tail, q.arrows[seq[-1]].head)


def _relation_occurrences(pres: MonomialPresentation, seq) -> list[ChainLink]:
    """Relation occurrences in a traversal-order arrow list, by start position."""
    out = []
    for r in pres.relations:
        rs = _seq(r)
        m = len(rs)
        for s in range(len(seq) - m + 1):
            if seq[s : s + m] == rs:
                out.append(ChainLink(s, s + m, r))
    out.sort(key=lambda c: (c.start, c.end))
    return out


def left_construction(pres: MonomialPresentation, p: Path, ambient: Path, at: int | None = None) -> list[list[ChainLink]]:
    """The chain ``r_1 = p, r_2, ...`` along ``ambient`` and all its prefixes.

    ``at`` selects which occurrence of ``p`` (by start position) to use when
    ``p`` divides ``ambient`` more than once; default is the first.
    """
    seq = _seq(ambient)
    links = _relation_occurrences(pres, seq)
    starts = [c for c in links if c.relation == p]
    if not starts:
        raise ValueError("relation does not divide the ambient path")
    first = starts[0] if at is None else next(c for c in starts if c.start == at)
    chain = [first]
    # r_2: least start strictly inside r_1
    cands = [c for c in links if first.start < c.start < first.end]
    while cands:
        nxt = min(cands, key=lambda c: c.start)
        chain.append(nxt)
        lo, hi = chain[-2].end, chain[-1].end
        cands = [c for c in links if lo <= c.start < hi]
    return [chain[: i + 1] for i in range(len(chain))]


def _extend(pres: MonomialPresentation, seq, lower: int):
    """Next links of the left construction over all ambient continuations.

    ``seq`` is ``p^l`` in traversal order and ``lower`` the end of ``r_{l-2}``
    (or 1 when extending ``p^2``).  Yields ``(new_seq, new_lower)``.
    """
    end = len(seq)
    seen = set()
    for r in pres.relations:
        rs = _seq(r)
        m = len(rs)
        for s in range(lower, end):
            overlap = end - s
            if overlap >= m or seq[s:] != rs[:overlap]:
                continue
            new = seq + rs[overlap:]
            # no relation in the ambient path may start earlier in [lower, s)
            if any(lower <= c.start < s for c in _relation_occurrences(pres, new)):
                continue
            key = tuple(new)
            if key not in seen:
                seen.add(key)
                yield new, end


def compute_ap(pres: MonomialPresentation, max_degree: int = 64) -> BardzellData:
    """``AP(l)`` for ``0 <= l <= max_degree`` or until the first empty set.

    One extra degree is probed so that ``exhausted`` certifies the top degree.
    """
    q = pres.quiver
    ap = [[q.trivial(v) for v in q.vertices]]
    states = None
    for ell in range(1, max_degree + 2):
        if ell == 1:
            level = sorted(q.arrow_path(a.id) for a in q.arrows)
        elif ell == 2:
            level = sorted(pres.relations)
            states = [(_seq(r), 1) for r in pres.relations]
        else:
            nxt = {}
            for seq, lower in states:
                for new, new_lower in _extend(pres, seq, lower):
                    nxt.setdefault(tuple(new), (new, new_lower))
            states = list(nxt.values())
            level = sorted(_to_path(q, s) for s, _ in states)
        if not level:
            data = BardzellData(pres, ap, True)
            break
        if ell == max_degree + 1:
            data = BardzellData(pres, ap, False)
            break
        ap.append(level)
    else:  # max_degree < 0
        data = BardzellData(pres, ap, False)
    _fill_sub(data)
    return data


def _fill_sub(data: BardzellData) -> None:
    q = data.quiver
    data.sub = [[]]
    for ell in range(1, len(data.ap)):
        lower = data.index(ell - 1)
        rows = []
        for p in data.ap[ell]:
            entries = []
            n = len(p)
            for k in range(n + 1):
                for m in range(0, n - k + 1):
                    arrows = p.arrows[k : k + m]
                    tgt = q.vertex_at(p, k)
                    src = q.vertex_at(p, k + m)
                    cand = Path(arrows, src, tgt)
                    i = lower.get(cand)
                    if i is None:
                        continue
                    left = Path(p.arrows[:k], tgt, p.target)
                    right = Path(p.arrows[k + m :], p.source, src)
                    entries.append(SubEntry(i, left, right))
            if ell % 2 == 1:
                p0 = [e for e in entries if e.right.is_trivial]
                p1 = [e for e in entries if e.left.is_trivial]
                if not p0 or not p1:
                    raise AssertionError("associated path without end sub-paths")
                first = SubEntry(p0[0].index, p0[0].left, p0[0].right, 1)
                last = SubEntry(p1[0].index, p1[0].left, p1[0].right, -1)
                entries = [first, last]
            rows.append(entries)
        data.sub.append(rows)


def global_dimension(data: BardzellData) -> int:
    if not data.exhausted:
        raise NotExhausted("AP sets not computed to exhaustion; raise max_degree")
    return data.top_degree


def gldim(pres: MonomialPresentation, max_degree: int = 64) -> int:
    return global_dimension(compute_ap(pres, max_degree))


# -- bimodule complex realized over the field ------------------------------


@dataclass
class BimoduleComplex:
    """``P_l = sum_p Lambda e_{h(p)} (x) e_{t(p)} Lambda`` with differentials."""

    algebra: FDAlgebra
    data: BardzellData
    bases: list  # bases[l] = list of (p index, u, v)
    d: list  # d[l]: P_l -> P_{l-1} for l >= 1, d[0] = multiplication map
    positions: list


def realize_resolution(data: BardzellData, alg: FDAlgebra | None = None) -> BimoduleComplex:
    """Matrices of ``d_l`` after tensoring down to k-linear maps."""
    alg = alg or MonomialAlgebra(data.pres)
    field = alg.field
    one = field(1)
    bases, positions = [], []
    for ell, ap in enumerate(data.ap):
        basis = []
        for i, p in enumerate(ap):
            for u in alg.elements_from(p.target):
                for v in alg.elements_to(p.source):
                    basis.append((i, u, v))
        bases.append(basis)
        positions.append({b: n for n, b in enumerate(basis)})
    mats = []
    # augmentation P_0 -> Lambda
    cols = []
    for i, u, v in bases[0]:
        cols.append(alg.mult({u: one}, {v: one}))
    mats.append(Matrix.from_columns(alg.dim, cols, field))
    for ell in range(1, len(data.ap)):
        cols = []
        pos = positions[ell - 1]
        for i, u, v in bases[ell]:
            col = {}
            for e in data.sub[ell][i]:
                left = alg.right_mult_path({u: one}, e.left)
                right = alg.left_mult_path(e.right, {v: one})
                for u2, c1 in left.items():
                    for v2, c2 in right.items():
                        axpy(col, field(e.sign) * c1 * c2, {pos[(e.index, u2, v2)]: one}, field)
            cols.append(col)
        mats.append(Matrix.from_columns(len(bases[ell - 1]), cols, field))
    return BimoduleComplex(alg, data, bases, mats, positions)


def check_resolution(cplx: BimoduleComplex) -> dict:
    """``d o d = 0`` and exactness in every realized degree below an open top."""
    d = cplx.d
    ranks = [m.rank() for m in d]
    squares = [(d[l - 1] @ d[l]).is_zero() for l in range(1, len(d))]
    exact = []
    # without exhaustion the top realized degree has an unknown kernel
    top = len(d) if cplx.data.exhausted else len(d) - 1
    for ell in range(top):
        dim = len(cplx.bases[ell])
        incoming = ranks[ell + 1] if ell + 1 < len(d) else 0
        exact.append(dim - ranks[ell] == incoming)
    surjective = ranks[0] == cplx.algebra.dim
    return {
        "d_squared_zero": all(squares),
        "exact": all(exact) and surjective,
        "ranks": ranks,
        "dims": [len(b) for b in cplx.bases],
    }


def minimal_entries(cplx: BimoduleComplex) -> bool:
    """Every coefficient of every ``d_l`` (l >= 1) lies in the radical."""
    for ell in range(1, len(cplx.d)):
        for rows in cplx.data.sub[ell]:
            for e in rows:
                if e.left.is_trivial and e.right.is_trivial:
                    return False
    return True

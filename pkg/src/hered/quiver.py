"""Quivers, paths, monomial presentations and the text input format.

Paths are written in composition order: ``Path((b, a))`` is the path that
first traverses ``a`` and then ``b``, i.e. the product ``ba``.  Vertex and
arrow ids are dense integers; the names from the input are kept for output.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field as dc_field
from itertools import product

from .linalg import QQ, Field


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(where + msg)


class PresentationError(ValueError):
    """Input is well formed but not an admissible minimal monomial presentation."""


@dataclass(frozen=True)
class Arrow:
    id: int
    name: str
    tail: int
    head: int


@dataclass(frozen=True, order=True)
class Path:
    """A path ``arrows[0] ... arrows[-1]``; ``arrows[-1]`` is traversed first."""

    arrows: tuple
    source: int
    target: int

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __len__(self):
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows


class Quiver:
    def __init__(self, vertex_names, arrows):
        """``arrows`` is a sequence of ``(name, tail_index, head_index)``."""
        self.vertex_names = tuple(str(v) for v in vertex_names)
        if len(set(self.vertex_names)) != len(self.vertex_names):
            raise PresentationError("duplicate vertex id")
        self.vertices = tuple(range(len(self.vertex_names)))
        arr = []
        for i, (name, t, h) in enumerate(arrows):
            if t not in self.vertices or h not in self.vertices:
                raise PresentationError(f"arrow {name} references a missing vertex")
            arr.append(Arrow(i, str(name), t, h))
        self.arrows = tuple(arr)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate arrow name")
        self._by_name = {a.name: a.id for a in self.arrows}
        self._vindex = {n: i for i, n in enumerate(self.vertex_names)}
        self._out = [[] for _ in self.vertices]
        self._in = [[] for _ in self.vertices]
        for a in self.arrows:
            self._out[a.tail].append(a.id)
            self._in[a.head].append(a.id)
        self.connected = self._is_connected()

    def _is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for a in self._out[v]:
                w = self.arrows[a].head
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
            for a in self._in[v]:
                w = self.arrows[a].tail
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def arrows_out(self, v: int) -> list[int]:
        return self._out[v]

    def arrows_in(self, v: int) -> list[int]:
        return self._in[v]

    def arrow(self, name: str) -> int:
        return self._by_name[name]

    def vertex(self, name) -> int:
        return self._vindex[str(name)]

    def is_source(self, v: int) -> bool:
        return not self._in[v]

    def is_sink(self, v: int) -> bool:
        return not self._out[v]

    def trivial(self, v: int) -> Path:
        return Path((), v, v)

    def path(self, arrows) -> Path:
        """Build a path from arrow ids or names in composition order."""
        ids = tuple(self._by_name[a] if isinstance(a, str) else a for a in arrows)
        if not ids:
            raise ValueError("use Quiver.trivial for length-0 paths")
        for left, right in zip(ids, ids[1:]):
            if self.arrows[right].head != self.arrows[left].tail:
                raise ValueError(
                    f"arrows {self.arrows[left].name} and {self.arrows[right].name} do not compose"
                )
        return Path(ids, self.arrows[ids[-1]].tail, self.arrows[ids[0]].head)

    def arrow_path(self, a: int) -> Path:
        ar = self.arrows[a]
        return Path((a,), ar.tail, ar.head)

    def compose(self, left: Path, right: Path) -> Path | None:
        """``left * right`` (right first), or None when not composable."""
        if right.target != left.source:
            return None
        return Path(left.arrows + right.arrows, right.source, left.target)

    def vertex_at(self, p: Path, k: int) -> int:
        """Vertex between ``p.arrows[:k]`` and ``p.arrows[k:]``."""
        if k == 0:
            return p.target
        return self.arrows[p.arrows[k - 1]].tail

    def name(self, p: Path) -> str:
        if p.is_trivial:
            return f"e{self.vertex_names[p.source]}"
        return " ".join(self.arrows[a].name for a in p.arrows)

    def paths_of_length(self, n: int, source: int | None = None) -> list[Path]:
        starts = self.vertices if source is None else [source]
        if n == 0:
            return [self.trivial(v) for v in starts]
        out = []
        frontier = [self.trivial(v) for v in starts]
        for _ in range(n):
            nxt = []
            for p in frontier:
                for a in self._out[p.target]:
                    nxt.append(Path((a,) + p.arrows, p.source, self.arrows[a].head))
            frontier = nxt
        out.extend(frontier)
        return out

    def is_acyclic(self) -> bool:
        indeg = [len(self._in[v]) for v in self.vertices]
        todo = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while todo:
            v = todo.pop()
            seen += 1
            for a in self._out[v]:
                h = self.arrows[a].head
                indeg[h] -= 1
                if indeg[h] == 0:
                    todo.append(h)
        return seen == len(self.vertices)


# -- path calculus ----------------------------------------------------------


def occurrences(quiver: Quiver, q: Path, p: Path) -> list[tuple[Path, Path]]:
    """All ``(left, right)`` with ``p = left * q * right``."""
    n, m = len(p), len(q)
    out = []
    for k in range(n - m + 1):
        if p.arrows[k : k + m] != q.arrows:
            continue
        v_left = quiver.vertex_at(p, k)
        v_right = quiver.vertex_at(p, k + m)
        if m == 0 and q.source != v_left:
            continue
        if m and (v_left != q.target or v_right != q.source):
            continue
        left = Path(p.arrows[:k], v_left, p.target)
        right = Path(p.arrows[k + m :], p.source, v_right)
        out.append((left, right))
    return out


def path_divides(quiver: Quiver, q: Path, p: Path):
    """First occurrence ``(left, right)`` of ``q`` in ``p`` or None."""
    occ = occurrences(quiver, q, p)
    return occ[0] if occ else None


def delta_left(q: Path, p: Path) -> Path | None:
    """``a`` when ``p = q a``, else None."""
    m = len(q)
    if p.target != q.target or p.arrows[:m] != q.arrows or len(p) < m:
        return None
    return Path(p.arrows[m:], p.source, q.source)


def delta_right(q: Path, p: Path) -> Path | None:
    """``b`` when ``p = b q``, else None."""
    m = len(q)
    if p.source != q.source or len(p) < m or p.arrows[len(p) - m :] != q.arrows:
        return None
    return Path(p.arrows[: len(p) - m], q.target, p.target)


def _check_m(m: int, p: Path) -> None:
    if m < 0 or m > len(p):
        raise ValueError(f"cannot take {m} arrows of a path of length {len(p)}")


def delta_left_m(quiver: Quiver, m: int, p: Path) -> Path | None:
    """Drop the ``m`` last-traversed arrows; zero when ``m == L(p)``."""
    _check_m(m, p)
    if m == len(p):
        return None
    rest = p.arrows[m:]
    return Path(rest, p.source, quiver.arrows[rest[0]].head)


def delta_right_m(quiver: Quiver, m: int, p: Path) -> Path | None:
    """Drop the ``m`` first-traversed arrows; zero when ``m == L(p)``."""
    _check_m(m, p)
    if m == len(p):
        return None
    rest = p.arrows[: len(p) - m]
    return Path(rest, quiver.arrows[rest[-1]].tail, p.target)


def left_m(quiver: Quiver, m: int, p: Path) -> Path:
    """The ``m`` last-traversed arrows of ``p``."""
    _check_m(m, p)
    if m == 0:
        return quiver.trivial(p.target)
    part = p.arrows[:m]
    return Path(part, quiver.arrows[part[-1]].tail, p.target)


def right_m(quiver: Quiver, m: int, p: Path) -> Path:
    """The ``m`` first-traversed arrows of ``p``."""
    _check_m(m, p)
    if m == 0:
        return quiver.trivial(p.source)
    part = p.arrows[len(p) - m :]
    return Path(part, p.source, quiver.arrows[part[0]].head)


# -- presentations ----------------------------------------------------------


class MonomialPresentation:
    """``kQ / <M>`` for a minimal set ``M`` of paths of length >= 2."""

    def __init__(self, quiver: Quiver, relations, field: Field = QQ, check: bool = True):
        self.quiver = quiver
        self.field = field
        rels = []
        for r in relations:
            if not isinstance(r, Path):
                r = quiver.path(r)
            rels.append(r)
        self.relations = tuple(sorted(set(rels), key=lambda r: (len(r), r.arrows)))
        if check:
            self._validate()

    def _validate(self) -> None:
        for r in self.relations:
            if len(r) < 2:
                raise PresentationError(
                    f"relation {self.quiver.name(r)} has length < 2 (not admissible)"
                )
        for r in self.relations:
            for s in self.relations:
                if r is not s and len(r) <= len(s) and r.arrows != s.arrows and occurrences(self.quiver, r, s):
                    raise PresentationError(
                        f"relation {self.quiver.name(r)} divides {self.quiver.name(s)} (not minimal)"
                    )

    def __repr__(self):
        q = self.quiver
        return f"MonomialPresentation({len(q.vertices)} vertices, {len(q.arrows)} arrows, {len(self.relations)} relations)"

    @property
    def is_quadratic(self) -> bool:
        return all(len(r) == 2 for r in self.relations)

    def is_zero(self, p: Path) -> bool:
        return any(occurrences(self.quiver, r, p) for r in self.relations if len(r) <= len(p))

    def with_field(self, field: Field) -> "MonomialPresentation":
        return MonomialPresentation(self.quiver, self.relations, field, check=False)

    def serialize(self) -> str:
        q = self.quiver
        lines = [f"field {self.field.name}", "vertices " + " ".join(q.vertex_names)]
        for a in q.arrows:
            lines.append(f"arrow {a.name}: {q.vertex_names[a.tail]} -> {q.vertex_names[a.head]}")
        for r in sorted(self.relations, key=lambda r: r.arrows):
            lines.append("relation " + q.name(r))
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        q = self.quiver
        lines = ["digraph Q {"]
        for v in q.vertices:
            lines.append(f'  v{v} [label="{q.vertex_names[v]}"];')
        for a in q.arrows:
            lines.append(f'  v{a.tail} -> v{a.head} [label="{a.name}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass
class PathBasis:
    """Nonzero paths of a finite-dimensional monomial algebra."""

    paths: list
    finite: bool = True
    witness: Path | None = None
    by_pair: dict = dc_field(default_factory=dict)
    by_length: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        for p in self.paths:
            self.by_pair.setdefault((p.source, p.target), []).append(p)
            self.by_length.setdefault(len(p), []).append(p)

    @property
    def dimension(self) -> int:
        return len(self.paths)

    def dim_between(self, source: int, target: int) -> int:
        return len(self.by_pair.get((source, target), ()))


def _zero_at_end(pres: MonomialPresentation, p: Path) -> bool:
    # a relation dividing p but no proper left factor must sit at the left end
    for r in pres.relations:
        m = len(r)
        if m <= len(p) and p.arrows[:m] == r.arrows:
            return True
    return False


def find_nonzero_cycle(pres: MonomialPresentation) -> Path | None:
    """A witness that ``Lambda`` is infinite dimensional, or None.

    Nonzero paths are walks in the automaton whose states are nonzero paths of
    length ``L - 1`` (``L`` the longest relation); the algebra is infinite
    dimensional exactly when this automaton has a reachable cycle.
    """
    q = pres.quiver
    span = max((len(r) for r in pres.relations), default=1) - 1
    span = max(span, 1)
    states = [p for p in _nonzero_paths_upto(pres, span) if len(p) == span]

    def successors(s: Path):
        for a in q.arrows_out(s.target):
            ext = Path((a,) + s.arrows, s.source, q.arrows[a].head)
            if not _zero_at_end(pres, ext):
                yield a, Path(ext.arrows[:span], q.vertex_at(ext, span), ext.target)

    color = {}
    for start in states:
        if start in color:
            continue
        stack = [(start, iter(successors(start)))]
        trail = [(start, None)]
        color[start] = 1
        while stack:
            node, it = stack[-1]
            step = next(it, None)
            if step is None:
                color[node] = 2
                stack.pop()
                trail.pop()
                continue
            a, nxt = step
            c = color.get(nxt)
            if c == 1:
                # cycle: arrows added from nxt back around to here plus a
                idx = next(i for i, (s, _) in enumerate(trail) if s == nxt)
                arrows = [a] + [arr for _, arr in reversed(trail[idx + 1 :])]
                tail = q.arrows[arrows[-1]].tail
                return Path(tuple(arrows), tail, q.arrows[arrows[0]].head)
            if c is None:
                color[nxt] = 1
                stack.append((nxt, iter(successors(nxt))))
                trail.append((nxt, a))
    return None


def _nonzero_paths_upto(pres: MonomialPresentation, n: int) -> list[Path]:
    q = pres.quiver
    out = [q.trivial(v) for v in q.vertices]
    frontier = list(out)
    for _ in range(n):
        nxt = []
        for p in frontier:
            for a in q.arrows_out(p.target):
                ext = Path((a,) + p.arrows, p.source, q.arrows[a].head)
                if not _zero_at_end(pres, ext):
                    nxt.append(ext)
        out.extend(nxt)
        frontier = nxt
    return out


def enumerate_basis(pres: MonomialPresentation, cap: int | None = None) -> PathBasis:
    """Breadth-first enumeration of nonzero paths.

    Returns an infinite verdict (``finite=False``) with a witness cycle when a
    relation-avoiding cycle exists; this test is exact.  ``cap`` bounds the
    path length explored for finite algebras.
    """
    if cap is not None and cap < 1:
        raise ValueError("cap must be >= 1")
    witness = find_nonzero_cycle(pres)
    if witness is not None:
        return PathBasis([], finite=False, witness=witness)
    q = pres.quiver
    out = [q.trivial(v) for v in q.vertices]
    frontier = list(out)
    length = 0
    while frontier:
        length += 1
        if cap is not None and length > cap:
            raise ValueError(f"basis not exhausted below length cap {cap}")
        nxt = []
        for p in frontier:
            for a in q.arrows_out(p.target):
                ext = Path((a,) + p.arrows, p.source, q.arrows[a].head)
                if not _zero_at_end(pres, ext):
                    nxt.append(ext)
        out.extend(nxt)
        frontier = nxt
    return PathBasis(out)


def truncated_presentation(quiver: Quiver, ell: int, field: Field = QQ) -> MonomialPresentation:
    """``kQ / J^ell``."""
    if ell < 2:
        raise PresentationError("truncation length must be >= 2")
    return MonomialPresentation(quiver, quiver.paths_of_length(ell), field)


def linear_quiver(m: int) -> Quiver:
    """Linearly oriented A_m: ``a_i : i -> i+1``."""
    return Quiver([str(i) for i in range(1, m + 1)], [(f"a{i}", i - 1, i) for i in range(1, m)])


def linear_truncated(m: int, ell: int, field: Field = QQ) -> MonomialPresentation:
    return truncated_presentation(linear_quiver(m), ell, field)


def star_quiver(r: int, s: int) -> Quiver:
    """``(r, s)``-star: ``a_i : i -> z`` and ``b_j : z -> j'``."""
    names = ["z"] + [f"t{i}" for i in range(1, r + 1)] + [f"h{j}" for j in range(1, s + 1)]
    arrows = [(f"a{i}", i, 0) for i in range(1, r + 1)]
    arrows += [(f"b{j}", 0, r + j) for j in range(1, s + 1)]
    return Quiver(names, arrows)


def star_presentation(r: int, s: int, pairs, field: Field = QQ) -> MonomialPresentation:
    """Star algebra with relations ``b_j a_i`` for ``(i, j)`` in ``pairs`` (1-based)."""
    q = star_quiver(r, s)
    return MonomialPresentation(q, [q.path((f"b{j}", f"a{i}")) for i, j in pairs], field)


# -- text format ------------------------------------------------------------

_ARROW_RE = re.compile(r"arrow\s+(\S+?)\s*:\s*(\S+?)\s*->\s*(\S+)\s*$")


@dataclass
class ParsedText:
    vertices: list
    arrows: list  # (name, tail name, head name, line)
    relations: list  # (names, line)
    terms: list  # (coefficient, names, line)
    field: Field
    weights: dict


def tokenize_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, raw, line


def parse_text(text: str, allow_terms: bool = False) -> ParsedText:
    out = ParsedText([], [], [], [], QQ, {})
    for lineno, raw, line in tokenize_lines(text):
        col = raw.find(line) + 1
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "vertices":
            if not rest:
                raise ParseError("'vertices' needs at least one id", lineno, col)
            out.vertices.extend(rest.split())
        elif key == "arrow":
            m = _ARROW_RE.match(line)
            if not m:
                raise ParseError("expected 'arrow <name>: <v> -> <v>'", lineno, col)
            out.arrows.append((m.group(1), m.group(2), m.group(3), lineno))
        elif key == "relation":
            if not rest:
                raise ParseError("empty relation", lineno, col)
            out.relations.append((rest.split(), lineno))
        elif key == "field":
            try:
                out.field = Field.parse(rest)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col + len(key) + 1) from None
        elif key == "term" and allow_terms:
            toks = rest.split()
            coeff = 1
            if toks and re.fullmatch(r"[-+]?\d+(/\d+)?", toks[0]):
                from fractions import Fraction

                coeff = Fraction(toks.pop(0))
            if not toks:
                raise ParseError("empty potential term", lineno, col)
            out.terms.append((coeff, toks, lineno))
        elif key == "weight" and allow_terms:
            toks = rest.split()
            if len(toks) != 2 or not toks[1].isdigit():
                raise ParseError("expected 'weight <arrow> <int>'", lineno, col)
            out.weights[toks[0]] = int(toks[1])
        else:
            raise ParseError(f"unknown directive {key!r}", lineno, col)
    return out


def build_quiver(parsed: ParsedText) -> Quiver:
    index = {}
    for v in parsed.vertices:
        if v in index:
            raise PresentationError(f"duplicate vertex id {v}")
        index[v] = len(index)
    arrows = []
    for name, t, h, lineno in parsed.arrows:
        for v in (t, h):
            if v not in index:
                raise ParseError(f"arrow {name} references undeclared vertex {v}", lineno, 1)
        arrows.append((name, index[t], index[h]))
    return Quiver(parsed.vertices, arrows)


def names_to_path(q: Quiver, names, lineno: int) -> Path:
    for n in names:
        if n not in q._by_name:
            raise ParseError(f"unknown arrow {n!r}", lineno, 1)
    try:
        return q.path(names)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, 1) from None


def parse_presentation(text: str) -> MonomialPresentation:
    parsed = parse_text(text)
    q = build_quiver(parsed)
    rels = [names_to_path(q, names, lineno) for names, lineno in parsed.relations]
    return MonomialPresentation(q, rels, parsed.field)


def load_presentation(path) -> MonomialPresentation:
    with open(path) as fh:
        return parse_presentation(fh.read())


def random_presentation(rng, max_vertices: int = 6, max_arrows: int = 8, max_relations: int = 8,
                        max_length: int = 3, acyclic: bool = True, field: Field = QQ) -> MonomialPresentation:
    """A random connected monomial presentation with a minimal relation set.

    Acyclic quivers keep the algebra finite-dimensional; with
    ``acyclic=False`` the caller must check finiteness.
    """
    while True:
        nv = rng.randint(2, max_vertices)
        if acyclic:
            pairs = [(i, j) for i in range(nv) for j in range(i + 1, nv)]
        else:
            pairs = [(i, j) for i in range(nv) for j in range(nv) if i != j]
        rng.shuffle(pairs)
        chosen = pairs[: rng.randint(nv - 1, min(max_arrows, len(pairs)))]
        q = Quiver([str(i + 1) for i in range(nv)], [(f"x{k + 1}", i, j) for k, (i, j) in enumerate(chosen)])
        if q._is_connected():
            break
    cands = [p for ell in range(2, max_length + 1) for p in q.paths_of_length(ell)]
    rng.shuffle(cands)
    rels = []
    for p in cands:
        if len(rels) >= max_relations or rng.random() < 0.35:
            continue
        if any(path_divides(q, r, p) or path_divides(q, p, r) for r in rels):
            continue
        rels.append(p)
    return MonomialPresentation(q, rels, field)

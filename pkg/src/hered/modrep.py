"""Finite-dimensional left modules over a bound quiver algebra.

A module is a quiver representation: one space per vertex and one matrix per
arrow ``a`` mapping ``M_{t(a)} -> M_{h(a)}``.  Everything here works over any
:class:`~hered.algebra.FDAlgebra`, monomial or not.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .algebra import FDAlgebra, GradedQuotient, MonomialAlgebra, as_algebra
from .linalg import Echelon, Matrix, axpy, solve


def _identity(n, field):
    one = field(1)
    return Matrix(n, n, field, [{i: one} for i in range(n)])


def _zero(r, c, field):
    return Matrix(r, c, field)


def _unit(i, field):
    return {i: field(1)}


class Coordinates:
    """Express vectors in a fixed linearly independent family."""

    def __init__(self, vectors, ambient: int, field):
        self.k = len(vectors)
        self.n = ambient
        self.field = field
        one = field(1)
        self.ech = Echelon(ambient + self.k, field)
        for i, v in enumerate(vectors):
            row = dict(v)
            row[ambient + i] = one
            if not self.ech.insert(row):
                raise ValueError("vectors are dependent")

    def __call__(self, x: dict):
        r = self.ech.reduce(x)
        if any(c < self.n for c in r):
            return None
        f = self.field
        return {c - self.n: (-v % f.p if f.p else -v) for c, v in r.items()}


class Representation:
    def __init__(self, alg: FDAlgebra, dims, maps):
        self.alg = alg
        self.field = alg.field
        self.dims = list(dims)
        self.maps = dict(maps)
        q = alg.quiver
        for a in q.arrows:
            m = self.maps.get(a.id)
            if m is None:
                self.maps[a.id] = _zero(self.dims[a.head], self.dims[a.tail], self.field)
            elif (m.nrows, m.ncols) != (self.dims[a.head], self.dims[a.tail]):
                raise ValueError(f"arrow {a.name}: matrix shape does not match dimension vector")
        self._basis_cache = {}

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def act_path(self, p) -> Matrix:
        """Matrix of a path ``M_{t(p)} -> M_{h(p)}``."""
        m = _identity(self.dims[p.source], self.field)
        for a in reversed(p.arrows):
            m = self.maps[a] @ m
        return m

    def act_basis(self, j: int) -> Matrix:
        hit = self._basis_cache.get(j)
        if hit is None:
            hit = self.act_path(self.alg.paths[j])
            self._basis_cache[j] = hit
        return hit

    def relations_hold(self) -> bool:
        for rel in relation_elements(self.alg):
            acc = None
            for p, c in rel.items():
                m = self.act_path(p)
                if acc is None:
                    acc = Matrix(m.nrows, m.ncols, self.field)
                for i, r in enumerate(m.rows):
                    axpy(acc.rows[i], self.field(c), r, self.field)
            if acc is not None and not acc.is_zero():
                return False
        return True

    def socle_dims(self) -> list[int]:
        q = self.alg.quiver
        out = []
        for v in q.vertices:
            rows = []
            for a in q.arrows_out(v):
                rows.extend(self.maps[a].rows)
            out.append(self.dims[v] - Matrix(len(rows), self.dims[v], self.field, rows).rank())
        return out

    def radical_at(self, v: int) -> list:
        cols = []
        for a in self.alg.quiver.arrows_in(v):
            cols.extend(c for c in self.maps[a].columns() if c)
        return cols

    def top_dims(self) -> list[int]:
        out = []
        for v in self.alg.quiver.vertices:
            ech = Echelon(self.dims[v], self.field, self.radical_at(v))
            out.append(self.dims[v] - ech.rank)
        return out

    def __repr__(self):
        return f"Representation(dims={self.dims})"


def relation_elements(alg: FDAlgebra):
    if isinstance(alg, MonomialAlgebra):
        return [{r: 1} for r in alg.pres.relations]
    if isinstance(alg, GradedQuotient):
        return [rel for _, rel in alg.relations]
    return []


@dataclass
class Morphism:
    src: Representation
    tgt: Representation
    maps: list  # per vertex Matrix(tgt.dims[v], src.dims[v])

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps)

    def rank(self) -> int:
        return sum(m.rank() for m in self.maps)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return Morphism(other.src, self.tgt, [a @ b for a, b in zip(self.maps, other.maps)])

    def is_homomorphism(self) -> bool:
        for a in self.src.alg.quiver.arrows:
            left = self.tgt.maps[a.id] @ self.maps[a.tail]
            right = self.maps[a.head] @ self.src.maps[a.id]
            if left.to_dense() != right.to_dense():
                return False
        return True


def identity(M: Representation) -> Morphism:
    return Morphism(M, M, [_identity(d, M.field) for d in M.dims])


class ProjectiveSum(Representation):
    """``sum_k Lambda e_{v_k}`` with the path basis in each summand."""

    def __init__(self, alg: FDAlgebra, tops):
        self.tops = list(tops)
        q = alg.quiver
        field = alg.field
        self.layout = [[] for _ in q.vertices]  # layout[w] = [(k, basis index)]
        for k, v in enumerate(self.tops):
            for j in alg.elements_from(v):
                self.layout[alg.paths[j].target].append((k, j))
        self.pos = [{kj: n for n, kj in enumerate(lay)} for lay in self.layout]
        maps = {}
        for a in q.arrows:
            m = Matrix(len(self.layout[a.head]), len(self.layout[a.tail]), field)
            for n, (k, j) in enumerate(self.layout[a.tail]):
                for j2, c in alg.left_arrow(a.id, j).items():
                    m.add(self.pos[a.head][(k, j2)], n, c)
            maps[a.id] = m
        super().__init__(alg, [len(x) for x in self.layout], maps)

    def generator(self, k: int) -> dict:
        v = self.tops[k]
        return {self.pos[v][(k, self.alg.idempotent(v))]: self.field(1)}

    def embed(self, k: int, elem: dict, w: int) -> dict:
        """Coordinates at ``w`` of an algebra element lying in ``e_w Lambda e_{v_k}``."""
        return {self.pos[w][(k, j)]: c for j, c in elem.items()}

    def morphism_from_images(self, images, tgt: Representation) -> Morphism:
        """The map sending generator ``k`` to ``images[k]`` in ``tgt`` at ``tops[k]``."""
        maps = []
        for w, lay in enumerate(self.layout):
            cols = []
            for k, j in lay:
                cols.append(tgt.act_basis(j).apply(images[k]))
            maps.append(Matrix.from_columns(tgt.dims[w], cols, self.field))
        return Morphism(self, tgt, maps)


def projective(alg, i: int) -> ProjectiveSum:
    return ProjectiveSum(as_algebra(alg), [i])


def regular(alg) -> ProjectiveSum:
    alg = as_algebra(alg)
    return ProjectiveSum(alg, list(alg.quiver.vertices))


class InjectiveModule(Representation):
    """``D(e_i Lambda)`` with basis dual to the paths ending at ``i``."""

    def __init__(self, alg: FDAlgebra, i: int):
        self.vertex = i
        q = alg.quiver
        self.layout = [[] for _ in q.vertices]
        for j in alg.elements_to(i):
            self.layout[alg.paths[j].source].append(j)
        self.pos = [{j: n for n, j in enumerate(lay)} for lay in self.layout]
        maps = {}
        for a in q.arrows:
            m = Matrix(len(self.layout[a.head]), len(self.layout[a.tail]), alg.field)
            # (a f_x)(y) = f_x(y a)
            for n, y in enumerate(self.layout[a.head]):
                for x, c in alg.right_arrow(y, a.id).items():
                    m.add(n, self.pos[a.tail][x], c)
            maps[a.id] = m
        super().__init__(alg, [len(x) for x in self.layout], maps)


def injective(alg, i: int) -> InjectiveModule:
    return InjectiveModule(as_algebra(alg), i)


def simple(alg, i: int) -> Representation:
    alg = as_algebra(alg)
    dims = [1 if v == i else 0 for v in alg.quiver.vertices]
    return Representation(alg, dims, {})


def injective_map(alg: FDAlgebra, a: int, src: InjectiveModule, tgt: InjectiveModule) -> Morphism:
    """``I_{h(a)} -> I_{t(a)}``, ``f -> f . a`` with ``(f . a)(y) = f(a y)``."""
    maps = []
    for s in alg.quiver.vertices:
        m = Matrix(tgt.dims[s], src.dims[s], alg.field)
        for n, y in enumerate(tgt.layout[s]):
            for x, c in alg.left_arrow(a, y).items():
                m.add(n, src.pos[s][x], c)
        maps.append(m)
    return Morphism(src, tgt, maps)


def direct_sum(reps) -> Representation:
    reps = list(reps)
    alg = reps[0].alg
    q = alg.quiver
    dims = [sum(r.dims[v] for r in reps) for v in q.vertices]
    maps = {}
    for a in q.arrows:
        m = Matrix(dims[a.head], dims[a.tail], alg.field)
        oh = ot = 0
        for r in reps:
            for i, row in enumerate(r.maps[a.id].rows):
                m.rows[oh + i] = {ot + j: v for j, v in row.items()}
            oh += r.dims[a.head]
            ot += r.dims[a.tail]
        maps[a.id] = m
    return Representation(alg, dims, maps)


# -- Hom, kernels, covers ---------------------------------------------------


def hom_space(M: Representation, N: Representation) -> list[Morphism]:
    """A basis of ``Hom_Lambda(M, N)``."""
    q = M.alg.quiver
    field = M.field
    offs, n = [], 0
    for v in q.vertices:
        offs.append(n)
        n += N.dims[v] * M.dims[v]

    def var(v, i, j):
        return offs[v] + i * M.dims[v] + j

    rows = []
    for a in q.arrows:
        t, h = a.tail, a.head
        Na, Ma = N.maps[a.id], M.maps[a.id]
        Ma_cols = Ma.columns()
        # (N_a f_t - f_h M_a)[i, j] = 0
        for i in range(N.dims[h]):
            for j in range(M.dims[t]):
                row = {}
                for k, c in Na.rows[i].items():
                    axpy(row, c, {var(t, k, j): 1}, field)
                for k, c in Ma_cols[j].items():
                    axpy(row, -c, {var(h, i, k): 1}, field)
                if row:
                    rows.append(row)
    basis = Echelon(n, field, rows).kernel()
    out = []
    for x in basis:
        maps = []
        for v in q.vertices:
            m = Matrix(N.dims[v], M.dims[v], field)
            for i in range(N.dims[v]):
                for j in range(M.dims[v]):
                    c = x.get(var(v, i, j))
                    if c:
                        m.rows[i][j] = c
            maps.append(m)
        out.append(Morphism(M, N, maps))
    return out


def hom_dim(M: Representation, N: Representation) -> int:
    return len(hom_space(M, N))


def subrepresentation(M: Representation, bases) -> tuple[Representation, Morphism]:
    """The submodule spanned per vertex by ``bases[v]`` (assumed closed)."""
    q = M.alg.quiver
    field = M.field
    coords = [Coordinates(bases[v], M.dims[v], field) for v in q.vertices]
    maps = {}
    for a in q.arrows:
        cols = []
        for b in bases[a.tail]:
            c = coords[a.head](M.maps[a.id].apply(b))
            if c is None:
                raise ValueError("subspace is not a submodule")
            cols.append(c)
        maps[a.id] = Matrix.from_columns(len(bases[a.head]), cols, field)
    K = Representation(M.alg, [len(b) for b in bases], maps)
    inc = Morphism(K, M, [Matrix.from_columns(M.dims[v], bases[v], field) for v in q.vertices])
    return K, inc


def kernel(f: Morphism) -> tuple[Representation, Morphism]:
    return subrepresentation(f.src, [m.nullspace() for m in f.maps])


def projective_cover(M: Representation) -> tuple[ProjectiveSum, Morphism]:
    alg = M.alg
    tops, images = [], []
    for v in alg.quiver.vertices:
        ech = Echelon(M.dims[v], M.field, M.radical_at(v))
        for i in ech.complement():
            tops.append(v)
            images.append(_unit(i, M.field))
    P = ProjectiveSum(alg, tops)
    return P, P.morphism_from_images(images, M)


def syzygy(M: Representation) -> tuple[Representation, Morphism]:
    """``Omega M``; zero for projective ``M``."""
    P, pi = projective_cover(M)
    return kernel(pi)


def is_projective(M: Representation) -> bool:
    P, _ = projective_cover(M)
    return P.dim == M.dim


def is_injective(M: Representation) -> bool:
    alg = M.alg
    soc = M.socle_dims()
    return M.dim == sum(s * len(alg.elements_to(v)) for v, s in enumerate(soc))


@dataclass
class Resolution:
    module: Representation
    terms: list  # ProjectiveSum P_0, P_1, ...
    diffs: list  # diffs[0]: P_0 -> M, diffs[j]: P_j -> P_{j-1}
    complete: bool

    @property
    def length(self) -> int | None:
        """Projective dimension when the resolution terminated."""
        return len(self.terms) - 1 if self.complete else None

    def multiplicities(self) -> list[list[int]]:
        q = self.module.alg.quiver
        return [[P.tops.count(v) for v in q.vertices] for P in self.terms]

    def generator_images(self, j: int) -> list[dict]:
        """``d_j(g)`` for each generator ``g`` of ``P_j``."""
        P = self.terms[j]
        d = self.diffs[j]
        return [d.maps[v].apply(P.generator(k)) for k, v in enumerate(P.tops)]


def projective_resolution(M: Representation, length: int) -> Resolution:
    """Minimal projective resolution through ``P_length``."""
    terms, diffs = [], []
    K, inc = M, identity(M)
    complete = M.is_zero()
    for _ in range(length + 1):
        if K.is_zero():
            complete = True
            break
        P, pi = projective_cover(K)
        terms.append(P)
        diffs.append(inc @ pi)
        K, inc = kernel(pi)
    else:
        complete = K.is_zero()
    return Resolution(M, terms, diffs, complete)


def projective_dimension(M: Representation, cap: int = 64) -> int | None:
    return projective_resolution(M, cap).length


def module_global_dimension(alg, cap: int = 64) -> int | None:
    """Max projective dimension of the simples, or None beyond ``cap``."""
    alg = as_algebra(alg)
    out = 0
    for v in alg.quiver.vertices:
        pd = projective_dimension(simple(alg, v), cap)
        if pd is None:
            return None
        out = max(out, pd)
    return out


# -- Ext via Hom(P_., N) ----------------------------------------------------


def _hom_offsets(P: ProjectiveSum, N: Representation):
    offs, n = [], 0
    for v in P.tops:
        offs.append(n)
        n += N.dims[v]
    return offs, n


def pullback_matrix(images, Q: ProjectiveSum, P: ProjectiveSum, N: Representation) -> Matrix:
    """``Hom(P, N) -> Hom(Q, N)`` induced by the map ``Q -> P`` with the given
    generator images (vectors of ``P`` at the generator vertices)."""
    field = N.field
    po, pn = _hom_offsets(P, N)
    qo, qn = _hom_offsets(Q, N)
    out = Matrix(qn, pn, field)
    for l, u in enumerate(Q.tops):
        for coord, c in images[l].items():
            k, j = P.layout[u][coord]
            block = N.act_basis(j)  # N_{v_k} -> N_u
            for i, row in enumerate(block.rows):
                for jj, val in row.items():
                    out.add(qo[l] + i, po[k] + jj, c * val)
    return out


@dataclass
class HomComplex:
    res: Resolution
    target: Representation
    dims: list
    deltas: dict  # deltas[j]: Hom(P_j, N) -> Hom(P_{j+1}, N)

    def ext_dim(self, j: int) -> int:
        if j >= len(self.dims):
            if self.res.complete:
                return 0
            raise ValueError("resolution too short")
        out_rank = self.deltas[j].rank() if j in self.deltas else 0
        in_rank = self.deltas[j - 1].rank() if j - 1 in self.deltas else 0
        if j + 1 >= len(self.dims) and not self.res.complete:
            raise ValueError("resolution too short")
        return self.dims[j] - out_rank - in_rank


def hom_complex(res: Resolution, N: Representation) -> HomComplex:
    dims = [_hom_offsets(P, N)[1] for P in res.terms]
    deltas = {}
    for j in range(len(res.terms) - 1):
        deltas[j] = pullback_matrix(res.generator_images(j + 1), res.terms[j + 1], res.terms[j], N)
    return HomComplex(res, N, dims, deltas)


def ext_dims(M: Representation, N: Representation, up_to: int, res: Resolution | None = None) -> list[int]:
    res = res or projective_resolution(M, up_to + 1)
    hc = hom_complex(res, N)
    return [hc.ext_dim(j) for j in range(up_to + 1)]


def ext_module(M: Representation, N: Representation, ell: int) -> int:
    """``dim Ext^ell_Lambda(M, N)``."""
    return ext_dims(M, N, ell)[ell]


def dual_regular(alg) -> list[InjectiveModule]:
    alg = as_algebra(alg)
    return [injective(alg, v) for v in alg.quiver.vertices]


def ext_dual_regular(alg, up_to: int) -> list[int]:
    """``dim Ext^l_Lambda(D Lambda, Lambda)`` for ``l <= up_to``."""
    alg = as_algebra(alg)
    lam = regular(alg)
    out = [0] * (up_to + 1)
    for I in dual_regular(alg):
        for j, d in enumerate(ext_dims(I, lam, up_to)):
            out[j] += d
    return out


# -- endomorphisms and indecomposability -----------------------------------


def _block_power_rank(f: Morphism, power: int) -> int:
    total = 0
    for m in f.maps:
        p = _identity(m.ncols, m.field)
        for _ in range(power):
            p = m @ p
        total += p.rank()
    return total


def _fitting_split(f: Morphism, dim: int) -> bool:
    r = _block_power_rank(f, max(dim, 1))
    return 0 < r < dim


def _trace(f: Morphism):
    s = 0
    for m in f.maps:
        for i, row in enumerate(m.rows):
            s += row.get(i, 0)
    return s


def _combine(maps_list, coeffs, M, field) -> Morphism:
    out = []
    for v in range(len(M.dims)):
        acc = Matrix(M.dims[v], M.dims[v], field)
        for f, c in zip(maps_list, coeffs):
            if not c:
                continue
            for i, row in enumerate(f.maps[v].rows):
                axpy(acc.rows[i], field(c), row, field)
        out.append(acc)
    return Morphism(M, M, out)


def is_indecomposable(M: Representation, seed: int = 0, trials: int = 24) -> bool:
    """Decide whether ``M`` is indecomposable.

    Over Q the radical of ``End(M)`` is the radical of the trace form, so a
    one-dimensional semisimple quotient certifies locality.  Otherwise an
    endomorphism that is neither nilpotent nor invertible is searched for;
    its Fitting decomposition is a certified splitting.
    """
    if M.is_zero():
        return False
    field = M.field
    E = hom_space(M, M)
    dim = M.dim
    if len(E) == 1:
        return True
    if field.p == 0:
        gram = [[_trace(x @ y) for y in E] for x in E]
        rank = Matrix.from_dense(gram, field).rank()
        if rank == 1:
            return True
    for f in E:
        if _fitting_split(f, dim):
            return False
    rng = random.Random(seed)
    for _ in range(trials):
        coeffs = [rng.randint(-3, 3) for _ in E]
        if _fitting_split(_combine(E, coeffs, M, field), dim):
            return False
    for i in range(len(E)):
        for j in range(i + 1, len(E)):
            f = E[i] @ E[j]
            if _fitting_split(f, dim):
                return False
    return True


def split_summands(M: Representation, seed: int = 0) -> list[Representation]:
    """Decompose by repeated Fitting splittings (summands up to the search)."""
    if M.is_zero():
        return []
    if is_indecomposable(M, seed):
        return [M]
    E = hom_space(M, M)
    field = M.field
    rng = random.Random(seed)
    cands = list(E) + [_combine(E, [rng.randint(-3, 3) for _ in E], M, field) for _ in range(24)]
    for f in cands:
        if not _fitting_split(f, M.dim):
            continue
        power = f
        for _ in range(M.dim):
            power = power @ f
        img = [Echelon(0, field) for _ in M.dims]
        img_b = [[c for c in m.columns() if c and img[v].insert(c)] for v, m in enumerate(power.maps)]
        ker_b = [m.nullspace() for m in power.maps]
        A, _ = subrepresentation(M, img_b)
        B, _ = subrepresentation(M, ker_b)
        return split_summands(A, seed) + split_summands(B, seed)
    return [M]


# -- the n-RF orbit probe ----------------------------------------------------


class GlobalDimensionMismatch(ValueError):
    pass


class TauContext:
    """Resolutions of the injectives and lifted arrow maps, shared by all orbits."""

    def __init__(self, alg: FDAlgebra, n: int):
        self.alg = alg
        self.n = n
        self.inj = dual_regular(alg)
        self.res = [projective_resolution(I, n + 1) for I in self.inj]
        self._lifts = {}

    def lift(self, a: int):
        """Degree-``n`` component of a chain map lifting ``I_{h(a)} -> I_{t(a)}``."""
        hit = self._lifts.get(a)
        if hit is not None:
            return hit
        ar = self.alg.quiver.arrows[a]
        src, tgt = self.res[ar.head], self.res[ar.tail]
        phi = injective_map(self.alg, a, self.inj[ar.head], self.inj[ar.tail])
        comp = None
        for j in range(self.n + 1):
            if j >= len(src.terms):
                comp = None
                break
            P = src.terms[j]
            if j >= len(tgt.terms):
                images = [dict() for _ in P.tops]
                comp = P.morphism_from_images(images, _zero_projective(self.alg))
                break
            Pt = tgt.terms[j]
            images = []
            for k, u in enumerate(P.tops):
                if j == 0:
                    m = src.diffs[0].maps[u].apply(P.generator(k))
                    want = phi.maps[u].apply(m)
                else:
                    y = src.diffs[j].maps[u].apply(P.generator(k))
                    want = comp.maps[u].apply(y)
                x = solve(tgt.diffs[j].maps[u], want)
                if x is None:
                    raise ArithmeticError("chain map does not lift")
                images.append(x)
            comp = P.morphism_from_images(images, Pt)
        self._lifts[a] = comp
        return comp


def _zero_projective(alg) -> ProjectiveSum:
    return ProjectiveSum(alg, [])


def tau_inverse(U: Representation, ctx: TauContext):
    """``Ext^n_Lambda(D Lambda, U)`` as a left module, plus the lower Ext dims.

    Returns ``(module, ext)`` where ``ext[j]`` is ``dim Ext^j(D Lambda, U)``
    for ``0 <= j <= n``.
    """
    alg, n = ctx.alg, ctx.n
    field = alg.field
    q = alg.quiver
    ext = [0] * (n + 1)
    reps, coords, spaces = [], [], []
    for v in q.vertices:
        res = ctx.res[v]
        hc = hom_complex(res, U)
        for j in range(n + 1):
            ext[j] += hc.ext_dim(j)
        if n >= len(res.terms):
            reps.append([])
            coords.append(None)
            spaces.append(None)
            continue
        dimn = hc.dims[n]
        cocycles = hc.deltas[n].nullspace() if n in hc.deltas else [_unit(i, field) for i in range(dimn)]
        bnd = Echelon(dimn, field)
        bvecs = []
        if n - 1 in hc.deltas:
            for c in hc.deltas[n - 1].columns():
                if c and bnd.insert(c):
                    bvecs.append(c)
        chosen = []
        for z in cocycles:
            if bnd.insert(z):
                chosen.append(z)
        reps.append(chosen)
        coords.append(Coordinates(bvecs + chosen, dimn, field) if (bvecs or chosen) else None)
        spaces.append(len(bvecs))
    dims = [len(r) for r in reps]
    maps = {}
    for a in q.arrows:
        v, w = a.tail, a.head
        m = Matrix(dims[w], dims[v], field)
        if dims[v] and dims[w]:
            comp = ctx.lift(a.id)
            Pw, Pv = ctx.res[w].terms[n], ctx.res[v].terms[n]
            imgs = [comp.maps[u].apply(Pw.generator(k)) for k, u in enumerate(Pw.tops)]
            pb = pullback_matrix(imgs, Pw, Pv, U)
            cols = []
            for z in reps[v]:
                c = coords[w](pb.apply(z))
                if c is None:
                    raise ArithmeticError("pullback is not a cocycle")
                cols.append({i - spaces[w]: x for i, x in c.items() if i >= spaces[w]})
            m = Matrix.from_columns(dims[w], cols, field)
        maps[a.id] = m
    return Representation(alg, dims, maps), ext


@dataclass
class Orbit:
    vertex: int
    dims: list = dc_field(default_factory=list)  # dimension vectors of U_0, U_1, ...
    ends_injective: bool = False


@dataclass
class NRFVerdict:
    status: str  # "n-RF", "violated", "inconclusive"
    n: int
    orbits: list
    witness: dict | None = None

    @property
    def total_dimension(self) -> int:
        return sum(sum(d) for o in self.orbits for d in o.dims)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "n": self.n,
            "orbits": [{"vertex": o.vertex, "dims": o.dims, "ends_injective": o.ends_injective} for o in self.orbits],
            "total_dimension": self.total_dimension,
            "witness": self.witness,
        }


def nrf_probe(alg, n: int, cap: int | None = None, check_gldim: bool = True) -> NRFVerdict:
    """Iterate ``U -> Ext^n(D Lambda, U)`` from each indecomposable projective."""
    pres = alg if not isinstance(alg, FDAlgebra) else None
    alg = as_algebra(alg)
    q = alg.quiver
    if check_gldim:
        if pres is not None:
            from .bardzell import compute_ap

            data = compute_ap(pres)
            gd = data.top_degree if data.exhausted else None
        else:
            gd = module_global_dimension(alg)
        if gd != n:
            raise GlobalDimensionMismatch(f"global dimension is {gd}, not {n}")
    cap = cap if cap is not None else 10 * len(q.vertices)
    ctx = TauContext(alg, n)
    orbits = []
    for v in q.vertices:
        U = projective(alg, v)
        orbit = Orbit(v)
        for step in range(cap + 1):
            orbit.dims.append(list(U.dims))
            nxt, ext = tau_inverse(U, ctx)
            bad = [j for j in range(1, n) if ext[j]]
            if bad:
                orbits.append(orbit)
                return NRFVerdict("violated", n, orbits, {
                    "kind": "EXT_NONVANISHING", "vertex": q.vertex_names[v], "step": step,
                    "degree": bad[0], "dimension": ext[bad[0]],
                })
            if nxt.is_zero():
                orbit.ends_injective = is_injective(U)
                break
            U = nxt
        else:
            orbits.append(orbit)
            return NRFVerdict("inconclusive", n, orbits, {"kind": "CAP_REACHED", "vertex": q.vertex_names[v], "cap": cap})
        orbits.append(orbit)
        if not orbit.ends_injective:
            return NRFVerdict("violated", n, orbits, {
                "kind": "ORBIT_ENDS_NONINJECTIVE", "vertex": q.vertex_names[v], "step": len(orbit.dims) - 1,
            })
    return NRFVerdict("n-RF", n, orbits)

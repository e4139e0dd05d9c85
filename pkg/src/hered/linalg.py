"""Exact sparse linear algebra over the rationals or a prime field.

Vectors are ``dict[int, scalar]`` with no zero entries.  A matrix is stored as
a list of sparse rows together with its column count; it acts on column
vectors, so an ``m x n`` matrix is a map ``k^n -> k^m``.
"""

from __future__ import annotations

import re
from fractions import Fraction


class Field:
    """The field Q (``p == 0``) or F_p."""

    def __init__(self, p: int = 0):
        if p and (p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1))):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls(0)
        m = re.fullmatch(r"F_?(\d+)", text)
        if not m:
            raise ValueError(f"unknown field {text!r}; expected Q or F<p>")
        return cls(int(m.group(1)))

    @property
    def name(self) -> str:
        return f"F{self.p}" if self.p else "Q"

    def __repr__(self):
        return f"Field({self.name})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __call__(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    def to_int(self, x) -> int:
        """Symmetric integer lift (used for reporting)."""
        if self.p:
            return x if x <= self.p // 2 else x - self.p
        if x.denominator != 1:
            raise ValueError(f"{x} is not an integer")
        return int(x)


QQ = Field(0)


def axpy(y: dict, a, x: dict, field: Field) -> None:
    """In place ``y += a * x``."""
    p = field.p
    for k, v in x.items():
        w = y.get(k, 0) + a * v
        if p:
            w %= p
        if w:
            y[k] = w
        else:
            y.pop(k, None)


def vec_add(x: dict, y: dict, field: Field, scale=1) -> dict:
    out = dict(x)
    axpy(out, field(scale), y, field)
    return out


class Matrix:
    """Sparse matrix ``nrows x ncols`` stored by rows."""

    __slots__ = ("nrows", "ncols", "rows", "field")

    def __init__(self, nrows: int, ncols: int, field: Field = QQ, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    @classmethod
    def from_columns(cls, nrows: int, columns, field: Field = QQ) -> "Matrix":
        columns = list(columns)
        m = cls(nrows, len(columns), field)
        for j, col in enumerate(columns):
            for i, v in col.items():
                v = field(v) if not isinstance(v, (int, Fraction)) or field.p else v
                if field.p:
                    v %= field.p
                if v:
                    m.rows[i][j] = v
        return m

    @classmethod
    def from_dense(cls, data, field: Field = QQ) -> "Matrix":
        data = [list(r) for r in data]
        ncols = len(data[0]) if data else 0
        m = cls(len(data), ncols, field)
        for i, r in enumerate(data):
            for j, v in enumerate(r):
                v = field(v)
                if v:
                    m.rows[i][j] = v
        return m

    def add(self, i: int, j: int, v) -> None:
        v = self.field(v) if self.field.p or not isinstance(v, (int, Fraction)) else v
        w = self.rows[i].get(j, 0) + v
        if self.field.p:
            w %= self.field.p
        if w:
            self.rows[i][j] = w
        else:
            self.rows[i].pop(j, None)

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def columns(self):
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, self.field, self.columns())

    def apply(self, x: dict) -> dict:
        p = self.field.p
        out = {}
        for i, r in enumerate(self.rows):
            s = 0
            if len(r) < len(x):
                for j, v in r.items():
                    if j in x:
                        s += v * x[j]
            else:
                for j, v in x.items():
                    if j in r:
                        s += r[j] * v
            if p:
                s %= p
            if s:
                out[i] = s
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = Matrix(self.nrows, other.ncols, self.field)
        for i, r in enumerate(self.rows):
            acc = {}
            for k, v in r.items():
                axpy(acc, v, other.rows[k], self.field)
            out.rows[i] = acc
        return out

    def is_zero(self) -> bool:
        return not any(self.rows)

    def rank(self) -> int:
        return len(Echelon(self.ncols, self.field, self.rows).pivots)

    def nullspace(self) -> list:
        """Basis of ``{x : A x = 0}``."""
        return Echelon(self.ncols, self.field, self.rows).kernel()

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field.name}, nnz={sum(map(len, self.rows))})"


class Echelon:
    """Incrementally maintained reduced row echelon form of a row space."""

    def __init__(self, ncols: int, field: Field = QQ, rows=()):
        self.ncols = ncols
        self.field = field
        self.pivots: dict[int, dict] = {}
        for r in rows:
            self.insert(r)

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        piv = self.pivots
        while True:
            hit = None
            for c in row:
                if c in piv:
                    hit = c
                    break
            if hit is None:
                return row
            axpy(row, -row[hit], piv[hit], self.field)

    def insert(self, row: dict) -> bool:
        """Add a row; return True when it enlarged the row space."""
        row = self.reduce(row)
        if not row:
            return False
        c = min(row)
        inv = self.field.inv(row[c])
        if inv != 1:
            p = self.field.p
            row = {k: (v * inv) % p if p else v * inv for k, v in row.items()}
        for other in self.pivots.values():
            if c in other:
                axpy(other, -other[c], row, self.field)
        self.pivots[c] = row
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def kernel(self) -> list:
        free = [j for j in range(self.ncols) if j not in self.pivots]
        one = self.field(1)
        basis = []
        for f in free:
            x = {f: one}
            for c, r in self.pivots.items():
                v = r.get(f)
                if v:
                    x[c] = -v % self.field.p if self.field.p else -v
            basis.append(x)
        return basis

    def complement(self) -> list[int]:
        """Standard basis indices spanning a complement of the row space."""
        return [j for j in range(self.ncols) if j not in self.pivots]


def rank(m: Matrix) -> int:
    return m.rank()


def nullspace(m: Matrix) -> list:
    return m.nullspace()


def solve(m: Matrix, b: dict):
    """Return one ``x`` with ``m x = b`` or ``None`` when inconsistent."""
    # Row-reduce the augmented matrix [m | b]; column ncols carries b.
    n = m.ncols
    ech = Echelon(n + 1, m.field)
    for i, r in enumerate(m.rows):
        row = dict(r)
        if i in b:
            row[n] = b[i]
        ech.insert(row)
    if n in ech.pivots:
        return None
    x = {}
    for c, r in ech.pivots.items():
        v = r.get(n)
        if v:
            x[c] = v
    return x


def image_basis(columns, field: Field = QQ) -> list:
    """A basis (as sparse vectors) of the span of ``columns``."""
    out = []
    ech = Echelon(0, field)
    for col in columns:
        if ech.insert(col):
            out.append(dict(col))
    return out


def cohomology_dim(dim: int, incoming: Matrix | None, outgoing: Matrix | None) -> int:
    """``dim ker(outgoing) - rank(incoming)`` at a space of dimension ``dim``."""
    r_in = incoming.rank() if incoming is not None else 0
    r_out = outgoing.rank() if outgoing is not None else 0
    return dim - r_out - r_in

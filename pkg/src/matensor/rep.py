"""Exact matrices over GF(p) and the rationals.

Matroids and polymatroid functions arise from matrices via column ranks, and
tensor products via Kronecker products.  GF(p) entries are ints in 0..p-1,
rational entries are ``fractions.Fraction``; there is no floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import core
from .core import GroundSet, Matroid, MatroidError, ProductGround
from .catalog import pg_points

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class FieldSpec:
    """Either GF(p) for a prime p, or the rationals."""

    p: Optional[int] = None  # None means Q

    def __post_init__(self):
        if self.p is not None:
            if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p**0.5) + 1)):
                raise MatroidError(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def coerce(self, x) -> Scalar:
        if self.is_rational:
            if isinstance(x, str):
                return Fraction(x)
            return Fraction(x)
        if isinstance(x, str):
            x = int(x)
        return x % self.p

    def __str__(self) -> str:
        return "q" if self.is_rational else f"gf({self.p})"

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        text = text.strip().lower()
        if text in ("q", "rational", "rationals"):
            return FieldSpec(None)
        if text.startswith("gf(") and text.endswith(")"):
            return FieldSpec(int(text[3:-1]))
        if text.startswith("gf"):
            return FieldSpec(int(text[2:]))
        raise MatroidError(f"unknown field spec: {text!r}")


ColumnMap = Union[tuple[int, ...], tuple[tuple[int, ...], ...]]


@dataclass(frozen=True)
class MatrixRep:
    """An exact matrix with a column-to-element map.

    ``column_map`` is either a tuple of ints (column i represents matroid
    element column_map[i]; a bijection) or a tuple of tuples (block of
    column indices per element; the polymatroid case).  Blocks must be
    disjoint and cover all columns.
    """

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[tuple[Scalar, ...], ...]
    column_map: ColumnMap

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise MatroidError("entry shape does not match rows x cols")
        if self.is_partition:
            seen: set[int] = set()
            for block in self.column_map:  # type: ignore[union-attr]
                for c in block:
                    if c in seen or not 0 <= c < self.cols:
                        raise MatroidError("partition blocks must be disjoint and in range")
                    seen.add(c)
            if len(seen) != self.cols:
                raise MatroidError("partition blocks must cover all columns")
        else:
            if len(self.column_map) != self.cols or sorted(self.column_map) != list(
                range(self.cols)
            ):
                raise MatroidError("column_map must be a bijection onto 0..cols-1")

    @property
    def is_partition(self) -> bool:
        return bool(self.column_map) and isinstance(self.column_map[0], tuple)

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[_scalar_str(x) for x in row] for row in self.entries],
            "column_map": [list(b) if isinstance(b, tuple) else b for b in self.column_map],
        }


def _scalar_str(x: Scalar) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def make_rep(
    field: FieldSpec | str,
    entries: Sequence[Sequence],
    column_map: Optional[Sequence] = None,
) -> MatrixRep:
    if isinstance(field, str):
        field = FieldSpec.parse(field)
    rows = len(entries)
    cols = len(entries[0]) if rows else 0
    ent = tuple(tuple(field.coerce(x) for x in row) for row in entries)
    if column_map is None:
        cmap: ColumnMap = tuple(range(cols))
    elif column_map and isinstance(column_map[0], (list, tuple)):
        cmap = tuple(tuple(b) for b in column_map)
    else:
        cmap = tuple(column_map)
    return MatrixRep(field, rows, cols, ent, cmap)


def rep_from_json(d: dict) -> MatrixRep:
    return make_rep(d["field"], d["entries"], d.get("column_map"))


class _Eliminator:
    """Incremental Gaussian elimination over an exact field."""

    def __init__(self, field: FieldSpec, rows: int):
        self.field = field
        self.rows = rows
        self.pivots: list[tuple[int, tuple[Scalar, ...]]] = []  # (pivot row, reduced vec)

    def reduce(self, vec: Sequence[Scalar]) -> Optional[tuple[Scalar, ...]]:
        """Reduce vec against current pivots; None if it becomes zero."""
        f = self.field
        v = list(vec)
        for prow, pvec in self.pivots:
            c = v[prow]
            if c:
                if f.is_rational:
                    for i in range(self.rows):
                        v[i] -= c * pvec[i]
                else:
                    p = f.p
                    for i in range(self.rows):
                        v[i] = (v[i] - c * pvec[i]) % p
        for i in range(self.rows):
            if v[i]:
                break
        else:
            return None
        # normalize so the pivot entry is 1
        c = v[i]
        if f.is_rational:
            v = [x / c for x in v]
        else:
            inv = pow(c, f.p - 2, f.p)
            v = [(x * inv) % f.p for x in v]
        return tuple(v)

    def insert(self, vec: Sequence[Scalar]) -> bool:
        red = self.reduce(vec)
        if red is None:
            return False
        for i in range(self.rows):
            if red[i]:
                self.pivots.append((i, red))
                return True
        return False

    def snapshot(self) -> list:
        return list(self.pivots)

    def restore(self, snap: list) -> None:
        self.pivots = snap

    @property
    def rank(self) -> int:
        return len(self.pivots)


def matrix_rank(rep: MatrixRep, cols: Optional[int] = None) -> int:
    """Exact rank of the submatrix on the column subset ``cols`` (a bit
    mask over column indices; None means all columns)."""
    if cols is None:
        cols = (1 << rep.cols) - 1
    if cols < 0 or cols >> rep.cols:
        raise MatroidError("column selection out of range")
    elim = _Eliminator(rep.field, rep.rows)
    for j in core.bits(cols):
        elim.insert(rep.column(j))
    return elim.rank


def rank_of_elements(rep: MatrixRep, element_mask: int) -> int:
    """Rank of the columns attached to the given element subset."""
    if rep.is_partition:
        cols = 0
        for e in core.bits(element_mask):
            cols |= core.mask_of(rep.column_map[e])  # type: ignore[arg-type]
        return matrix_rank(rep, cols)
    cols = 0
    for j, e in enumerate(rep.column_map):  # type: ignore[arg-type]
        if element_mask >> e & 1:
            cols |= 1 << j
    return matrix_rank(rep, cols)


def matroid_from_rep(rep: MatrixRep, name: Optional[str] = None) -> Matroid:
    """The matroid of the columns (column_map must be a bijection)."""
    if rep.is_partition:
        raise MatroidError("matroid_from_rep needs a bijective column map")
    n = rep.cols
    if n > core.MAX_GROUND:
        raise MatroidError(f"{n} columns exceed the {core.MAX_GROUND}-element cap")
    col_of_elem = [0] * n
    for j, e in enumerate(rep.column_map):  # type: ignore[arg-type]
        col_of_elem[e] = j
    rank = matrix_rank(rep)
    bases: list[int] = []
    elim = _Eliminator(rep.field, rep.rows)

    def extend(start: int, chosen: int, depth: int):
        if depth == rank:
            bases.append(chosen)
            return
        for e in range(start, n - (rank - depth) + 1):
            snap = elim.snapshot()
            if elim.insert(rep.column(col_of_elem[e])):
                extend(e + 1, chosen | (1 << e), depth + 1)
            elim.restore(snap)

    extend(0, 0, 0)
    return core._trusted(GroundSet(n), rank, bases, name)


def polymatroid_from_rep(rep: MatrixRep):
    """The subspace polymatroid of a partitioned matrix."""
    from .polylp import PolymatroidFn

    if not rep.is_partition:
        raise MatroidError("polymatroid_from_rep needs a column partition")
    n = len(rep.column_map)
    values = [Fraction(rank_of_elements(rep, x)) for x in range(1 << n)]
    return PolymatroidFn(GroundSet(n), tuple(values))


def kronecker(a: MatrixRep, b: MatrixRep) -> MatrixRep:
    """Kronecker product with the product column map under row-major
    indexing (i, j) -> i * n_b + j."""
    if a.field != b.field:
        raise MatroidError("kronecker requires matching fields")
    f = a.field
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    ent = []
    for ia in range(a.rows):
        for ib in range(b.rows):
            row = []
            for ja in range(a.cols):
                xa = a.entries[ia][ja]
                for jb in range(b.cols):
                    v = xa * b.entries[ib][jb]
                    row.append(v % f.p if not f.is_rational else v)
            ent.append(tuple(row))
    if a.is_partition or b.is_partition:
        blocks_a = (
            a.column_map if a.is_partition else tuple((j,) for j in _inverse_map(a))
        )
        blocks_b = (
            b.column_map if b.is_partition else tuple((j,) for j in _inverse_map(b))
        )
        cmap: ColumnMap = tuple(
            tuple(ca * b.cols + cb for ca in block_a for cb in block_b)
            for block_a in blocks_a
            for block_b in blocks_b
        )
    else:
        n_b = len(set(b.column_map))
        cmap = tuple(
            a.column_map[ja] * n_b + b.column_map[jb]  # type: ignore[operator]
            for ja in range(a.cols)
            for jb in range(b.cols)
        )
    return MatrixRep(f, rows, cols, tuple(ent), cmap)


def _inverse_map(rep: MatrixRep) -> list[int]:
    """For a bijective map, the column index of each element."""
    inv = [0] * rep.cols
    for j, e in enumerate(rep.column_map):  # type: ignore[arg-type]
        inv[e] = j
    return inv


def tensor_from_reps(rep1: MatrixRep, rep2: MatrixRep, certify: bool = True):
    """Tensor product of the two represented objects via the Kronecker
    product: a Matroid for bijective maps, a PolymatroidFn when partitions
    are present.  The matroid result is certified against the tensor
    conditions before being returned."""
    kron = kronecker(rep1, rep2)
    if rep1.is_partition or rep2.is_partition:
        return polymatroid_from_rep(kron)
    m1 = matroid_from_rep(rep1)
    m2 = matroid_from_rep(rep2)
    prod = matroid_from_rep(kron)
    prod = core._trusted(
        ProductGround(m1.ground, m2.ground).ground(), prod.rank_value, prod.bases
    )
    if certify:
        from .tensorprod import is_tensor_product

        ok, witness = is_tensor_product(prod, m1, m2)
        if not ok:
            raise MatroidError(
                f"internal error: Kronecker tensor failed certification at {witness}"
            )
    return prod


# ---------------------------------------------------------------------------
# stock representations
# ---------------------------------------------------------------------------


FANO_MATRIX = [
    [1, 0, 0, 1, 1, 0, 1],
    [0, 1, 0, 1, 0, 1, 1],
    [0, 0, 1, 0, 1, 1, 1],
]


def fano_rep(field: FieldSpec | str = "gf(2)") -> MatrixRep:
    """The 3x7 matrix representing the Fano matroid over GF(2) and the
    non-Fano matroid over fields of characteristic != 2."""
    return make_rep(field, FANO_MATRIX)


def uniform_rep(r: int, n: int, field: FieldSpec | str) -> MatrixRep:
    """A representation of U_{r,n}: columns (1, x, ..., x^{r-1}) at distinct
    field points x (needs enough points; raises otherwise)."""
    if isinstance(field, str):
        field = FieldSpec.parse(field)
    if r == 0:
        return make_rep(field, [[0] * n])
    pts: list[Scalar]
    infinity = False
    if field.is_rational:
        pts = [Fraction(i) for i in range(n)]
    else:
        if n > field.p + 1:
            raise MatroidError(
                f"U_{{{r},{n}}} needs {n} distinct projective points but GF({field.p}) "
                f"offers only {field.p + 1}"
            )
        infinity = n == field.p + 1
        pts = list(range(n - 1 if infinity else n))
    ent = [[field.coerce(x**i) for x in pts] for i in range(r)]
    if infinity:
        for i in range(r):
            ent[i] = list(ent[i]) + [field.coerce(1 if i == r - 1 else 0)]
    return make_rep(field, ent)


def u23_rep(field: FieldSpec | str = "gf(2)") -> MatrixRep:
    """U_{2,3} over any field: columns (1,0), (0,1), (1,1)."""
    return make_rep(field, [[1, 0, 1], [0, 1, 1]])


def pg_rep(p: int) -> MatrixRep:
    """PG(2, p) as a matrix over GF(p) (p prime, p <= 13)."""
    pts = pg_points(p)
    ent = [[v[i] for v in pts] for i in range(3)]
    return make_rep(FieldSpec(p), ent)

"""Named matroids, constructed from first principles and axiom-checked.

Rank-3 entries are built from their line lists: a set is independent iff it
has at most two elements lying in no common nontrivial parallel class, or is
a triple contained in no line.  Graphic entries are built from spanning
forests, projective planes from one representative per 1-dimensional
subspace of GF(p)^3.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import core
from .core import GroundSet, Matroid, MatroidError, mask_of

_MAX_EXPLICIT_BASES = 2_000_000

KEYS = (
    "uniform(r,n)",
    "fano",
    "non_fano",
    "vamos",
    "non_pappus",
    "non_desargues",
    "graphic_k4",
    "cographic_k33",
    "pg(2,p) for prime p <= 13 (explicit matroid for p <= 5)",
)

_PRIMES = {2, 3, 5, 7, 11, 13}


@dataclass(frozen=True)
class CatalogKey:
    kind: str
    params: tuple[int, ...] = ()

    @staticmethod
    def parse(text: str) -> "CatalogKey":
        text = text.strip().lower()
        if ":" in text or "(" in text:
            head, _, tail = text.replace("(", ":").partition(":")
            nums = tuple(
                int(t) for t in tail.replace(")", "").replace(",", " ").split()
            )
            return CatalogKey(head.strip(), nums)
        return CatalogKey(text)

    def __str__(self) -> str:
        if self.params:
            return f"{self.kind}({','.join(map(str, self.params))})"
        return self.kind


def lines_to_matroid(
    n: int, lines: Sequence[int], name: Optional[str] = None,
    labels: Optional[Sequence[str]] = None,
) -> Matroid:
    """The simple rank-3 matroid on ``n`` elements with exactly the given
    dependent lines.

    Requires every line to have at least 3 elements and any two lines to
    meet in at most one element.
    """
    if n < 3:
        raise MatroidError("a rank-3 matroid needs at least 3 elements")
    for ln in lines:
        if ln.bit_count() < 3:
            raise MatroidError(f"line {core.indices_of(ln)} has fewer than 3 elements")
        if ln & ~((1 << n) - 1):
            raise MatroidError("line exceeds the ground set")
    for la, lb in itertools.combinations(lines, 2):
        if (la & lb).bit_count() > 1:
            raise MatroidError(
                f"lines {core.indices_of(la)} and {core.indices_of(lb)} share two elements"
            )
    bases = []
    for combo in itertools.combinations(range(n), 3):
        x = mask_of(combo)
        if not any(x & ln == x for ln in lines):
            bases.append(x)
    if not bases:
        raise MatroidError("line family leaves no independent triple")
    return core.from_bases(GroundSet(n, tuple(labels) if labels else None), 3, bases, name)


def _graphic(num_vertices: int, edges: Sequence[tuple[int, int]], name: str,
             labels: Optional[Sequence[str]] = None) -> Matroid:
    """Graphic matroid of a connected graph: bases are the spanning trees."""
    m = len(edges)
    rank = num_vertices - 1
    bases = []
    for combo in itertools.combinations(range(m), rank):
        parent = list(range(num_vertices))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        acyclic = True
        for idx in combo:
            u, v = edges[idx]
            ru, rv = find(u), find(v)
            if ru == rv:
                acyclic = False
                break
            parent[ru] = rv
        if acyclic:
            bases.append(mask_of(combo))
    return core.from_bases(GroundSet(m, tuple(labels) if labels else None), rank, bases, name)


_FANO_LINES_1IDX = [
    (1, 2, 6), (1, 3, 5), (1, 4, 7), (2, 3, 4), (2, 5, 7), (3, 6, 7), (4, 5, 6),
]

_NON_DESARGUES_LABELS = ("a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3", "d")
# indices: a1..a3 = 0..2, b1..b3 = 3..5, c1..c3 = 6..8, d = 9
_NON_DESARGUES_LINES = [
    (9, 0, 3), (9, 1, 4), (9, 2, 5),
    (0, 1, 8), (0, 2, 7), (1, 2, 6),
    (3, 4, 8), (3, 5, 7), (4, 5, 6),
]

# Pappus configuration on points 1..9; dropping the line {7,8,9} yields the
# non-Pappus matroid.
_PAPPUS_LINES_1IDX = [
    (1, 2, 3), (1, 5, 7), (1, 6, 8), (2, 4, 7), (2, 6, 9), (3, 4, 8), (3, 5, 9),
    (4, 5, 6),
]

# K_4 on vertices 0..3 with edges ordered so that the triangles are
# {e1,e2,e6}, {e1,e3,e5}, {e2,e3,e4}, {e4,e5,e6}.
_K4_EDGES = [(0, 1), (0, 2), (0, 3), (2, 3), (1, 3), (1, 2)]
_K4_LABELS = ("e1", "e2", "e3", "e4", "e5", "e6")

# K_{3,3} with edges in row-major order (s_i, t_j) -> 3*i + j, so the
# cographic ground set matches the product indexing of a 3x3 grid.
_K33_EDGES = [(i, 3 + j) for i in range(3) for j in range(3)]


def fano() -> Matroid:
    lines = [mask_of(i - 1 for i in ln) for ln in _FANO_LINES_1IDX]
    return lines_to_matroid(
        7, lines, "fano", labels=tuple(f"s{i}" for i in range(1, 8))
    )


def non_fano() -> Matroid:
    lines = [mask_of(i - 1 for i in ln) for ln in _FANO_LINES_1IDX[:-1]]
    return lines_to_matroid(
        7, lines, "non_fano", labels=tuple(f"t{i}" for i in range(1, 8))
    )


def non_desargues() -> Matroid:
    lines = [mask_of(ln) for ln in _NON_DESARGUES_LINES]
    return lines_to_matroid(10, lines, "non_desargues", labels=_NON_DESARGUES_LABELS)


def non_pappus() -> Matroid:
    lines = [mask_of(i - 1 for i in ln) for ln in _PAPPUS_LINES_1IDX]
    return lines_to_matroid(
        9, lines, "non_pappus", labels=tuple(f"p{i}" for i in range(1, 10))
    )


def vamos() -> Matroid:
    """Rank-4 matroid on {a1,a2,b1,b2,c1,c2,d1,d2}; the dependent 4-sets are
    the unions of two label pairs except {c1,c2,d1,d2}."""
    labels = ("a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2")
    pairs = [mask_of((2 * i, 2 * i + 1)) for i in range(4)]
    circuits = {
        pairs[0] | pairs[1], pairs[0] | pairs[2], pairs[0] | pairs[3],
        pairs[1] | pairs[2], pairs[1] | pairs[3],
    }
    bases = [
        mask_of(c)
        for c in itertools.combinations(range(8), 4)
        if mask_of(c) not in circuits
    ]
    return core.from_bases(GroundSet(8, labels), 4, bases, "vamos")


def graphic_k4() -> Matroid:
    return _graphic(4, _K4_EDGES, "graphic_k4", labels=_K4_LABELS)


def graphic_k33() -> Matroid:
    return _graphic(6, _K33_EDGES, "graphic_k33")


def cographic_k33() -> Matroid:
    g = graphic_k33()
    d = core.dual(g)
    return core.from_bases(d.ground, d.rank_value, d.bases, "cographic_k33")


def pg_points(p: int) -> list[tuple[int, int, int]]:
    """Lexicographically least representatives of the 1-dim subspaces of
    GF(p)^3, in lexicographic order."""
    pts = []
    for x in range(p):
        for y in range(p):
            for z in range(p):
                v = (x, y, z)
                if v == (0, 0, 0):
                    continue
                lead = x if x else (y if y else z)
                if lead == 1:
                    pts.append(v)
    return pts


def pg(p: int) -> Matroid:
    """The projective plane PG(2, p) as an explicit matroid (p in {2,3,5})."""
    if p not in _PRIMES:
        raise MatroidError(f"pg(2,{p}): p must be a prime <= 13")
    if p > 5:
        raise MatroidError(
            f"pg(2,{p}) is exposed only as a matrix representation "
            "(matensor.rep.pg_rep), not an explicit matroid"
        )
    pts = pg_points(p)
    bases = []
    for combo in itertools.combinations(range(len(pts)), 3):
        a, b, c = (pts[i] for i in combo)
        det = (
            a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
        )
        if det % p:
            bases.append(mask_of(combo))
    labels = tuple("(" + ",".join(map(str, v)) + ")" for v in pts)
    return core.from_bases(GroundSet(len(pts), labels), 3, bases, f"pg(2,{p})")


def build(key: CatalogKey | str) -> Matroid:
    """Construct the axiom-checked catalog matroid for ``key``."""
    if isinstance(key, str):
        key = CatalogKey.parse(key)
    kind = key.kind
    if kind == "uniform":
        if len(key.params) != 2:
            raise MatroidError("uniform key needs (r, n)")
        r, n = key.params
        if not 0 <= r <= n <= core.MAX_GROUND:
            raise MatroidError(f"uniform({r},{n}) out of range")
        import math

        if math.comb(n, r) > _MAX_EXPLICIT_BASES:
            raise MatroidError(
                f"uniform({r},{n}) has {math.comb(n, r)} bases, beyond the explicit cap"
            )
        u = core.uniform(r, n)
        return core.from_bases(u.ground, r, u.bases, u.name)
    if kind == "fano":
        return fano()
    if kind == "non_fano":
        return non_fano()
    if kind == "vamos":
        return vamos()
    if kind == "non_pappus":
        return non_pappus()
    if kind == "non_desargues":
        return non_desargues()
    if kind == "graphic_k4":
        return graphic_k4()
    if kind == "cographic_k33":
        return cographic_k33()
    if kind == "pg":
        if len(key.params) != 2 or key.params[0] != 2:
            raise MatroidError("pg key must be pg(2,p)")
        return pg(key.params[1])
    raise MatroidError(f"unknown catalog key: {key}")


def list_keys() -> list[str]:
    return list(KEYS)

"""Exact finite-matroid kernel.

Matroids are stored by their explicit basis family over a ground set of at
most 64 elements.  Subsets are plain Python ints used as bit vectors, so the
rank oracle ``r(X) = max |B & X|`` and all derived operations are exact
integer computations.  Every matroid admitted from external data goes through
the full basis-exchange validation in :func:`from_bases`; matroids produced by
internally proven constructions (duals, minors, direct sums of valid inputs)
may skip it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

MAX_GROUND = 64

# numpy is only used for integer bit arithmetic; rank values stay exact.
_NP_THRESHOLD = 2048


class MatroidError(ValueError):
    """Raised on invalid matroid data or axiom violations."""


class ExchangeAxiomError(MatroidError):
    """Exchange-axiom failure, carrying a witnessing triple (B1, B2, e)."""

    def __init__(self, b1: int, b2: int, e: int):
        self.witness = (b1, b2, e)
        super().__init__(
            f"basis exchange fails for B1={bin(b1)}, B2={bin(b2)}, e={e}"
        )


def popcount(x: int) -> int:
    return x.bit_count()


def bits(x: int) -> Iterator[int]:
    """Yield the set bit positions of ``x`` in increasing order."""
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> list[int]:
    return list(bits(mask))


def subsets_of(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, in increasing numeric order."""
    elems = list(bits(mask))
    for r in range(len(elems) + 1):
        for combo in itertools.combinations(elems, r):
            yield mask_of(combo)


def ksubsets_of(mask: int, k: int) -> Iterator[int]:
    for combo in itertools.combinations(list(bits(mask)), k):
        yield mask_of(combo)


@dataclass(frozen=True)
class GroundSet:
    """A ground set of ``n`` elements with optional distinct labels."""

    n: int
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if not 1 <= self.n <= MAX_GROUND:
            raise MatroidError(f"ground size {self.n} not in 1..{MAX_GROUND}")
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise MatroidError("label count does not match ground size")
            if len(set(self.labels)) != self.n:
                raise MatroidError("labels are not pairwise distinct")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return str(i)

    def check_subset(self, x: int) -> None:
        if x < 0 or x & ~self.full_mask:
            raise MatroidError(f"subset {bin(x)} has bits outside ground of size {self.n}")


@dataclass(frozen=True)
class ProductGround:
    """Row-major product of two ground sets: (i, j) -> i * n_right + j."""

    left: GroundSet
    right: GroundSet

    def __post_init__(self):
        if self.left.n * self.right.n > MAX_GROUND:
            raise MatroidError(
                f"product ground {self.left.n}x{self.right.n} exceeds {MAX_GROUND} elements"
            )

    @property
    def n(self) -> int:
        return self.left.n * self.right.n

    def ground(self) -> GroundSet:
        labels = None
        if self.left.labels is not None or self.right.labels is not None:
            labels = tuple(
                f"({self.left.label(i)},{self.right.label(j)})"
                for i in range(self.left.n)
                for j in range(self.right.n)
            )
        return GroundSet(self.n, labels)

    def cell(self, i: int, j: int) -> int:
        return i * self.right.n + j

    def rectangle(self, x_left: int, y_right: int) -> int:
        """Bit mask of the rectangle X x Y inside the product."""
        m = 0
        for i in bits(x_left):
            m |= y_right << (i * self.right.n)
        return m

    def row(self, i: int) -> int:
        return self.right.full_mask << (i * self.right.n)

    def col(self, j: int) -> int:
        m = 0
        for i in range(self.left.n):
            m |= 1 << self.cell(i, j)
        return m

    def project_left(self, mask: int) -> int:
        out = 0
        for c in bits(mask):
            out |= 1 << (c // self.right.n)
        return out

    def project_right(self, mask: int) -> int:
        out = 0
        for c in bits(mask):
            out |= 1 << (c % self.right.n)
        return out


@dataclass(frozen=True)
class Matroid:
    """A matroid given by its sorted, deduplicated basis family."""

    ground: GroundSet
    rank_value: int
    bases: tuple[int, ...]
    name: Optional[str] = None
    _np_cache: dict = field(
        default_factory=dict, repr=False, compare=False, hash=False
    )

    @property
    def n(self) -> int:
        return self.ground.n

    def _np_bases(self) -> np.ndarray:
        arr = self._np_cache.get("bases")
        if arr is None:
            arr = np.array(self.bases, dtype=np.uint64)
            self._np_cache["bases"] = arr
        return arr

    def rank(self, x: int) -> int:
        """Rank of the subset ``x``: max over bases B of |B & x|."""
        self.ground.check_subset(x)
        if x == 0 or not self.bases:
            return 0
        if len(self.bases) >= _NP_THRESHOLD:
            arr = self._np_bases()
            return int(np.bitwise_count(arr & np.uint64(x)).max())
        return max((b & x).bit_count() for b in self.bases)

    def rank_many(self, xs: Sequence[int]) -> list[int]:
        """Ranks of many subsets at once (vectorized for large basis lists)."""
        if not xs:
            return []
        if len(self.bases) >= _NP_THRESHOLD and len(xs) > 1:
            arr = self._np_bases()
            out = []
            for x in xs:
                if x == 0:
                    out.append(0)
                else:
                    out.append(int(np.bitwise_count(arr & np.uint64(x)).max()))
            return out
        return [self.rank(x) for x in xs]

    def is_independent(self, x: int) -> bool:
        return self.rank(x) == x.bit_count()

    def is_basis(self, x: int) -> bool:
        return x.bit_count() == self.rank_value and self.rank(x) == self.rank_value

    def closure(self, x: int) -> int:
        """The unique maximal superset of ``x`` with the same rank."""
        self.ground.check_subset(x)
        rx = self.rank(x)
        out = x
        rest = self.ground.full_mask & ~x
        for e in bits(rest):
            if self.rank(x | (1 << e)) == rx:
                out |= 1 << e
        return out

    def flats_of_rank(self, k: int) -> list[int]:
        """All flats of rank exactly ``k``, in increasing bit-vector order."""
        if not 0 <= k <= self.rank_value:
            raise MatroidError(f"rank {k} out of range 0..{self.rank_value}")
        if k == self.rank_value:
            return [self.ground.full_mask]
        seen = set()
        # every rank-k flat is the closure of a k-element independent set
        for combo in itertools.combinations(range(self.n), k):
            x = mask_of(combo)
            if self.rank(x) == k:
                seen.add(self.closure(x))
        return sorted(seen)

    def flats(self) -> list[int]:
        """All flats, sorted by (rank, bit-vector)."""
        out = []
        for k in range(self.rank_value + 1):
            out.extend(self.flats_of_rank(k))
        return out

    def loops(self) -> int:
        return self.closure(0)

    def fundamental_circuit(self, f: int, basis: int) -> int:
        """Circuit of element ``f`` with respect to ``basis`` (f not in basis)."""
        if self.rank((1 << f)) == 0:
            return 1 << f
        c = 1 << f
        for e in bits(basis):
            cand = (basis & ~(1 << e)) | (1 << f)
            if cand in self._basis_set():
                c |= 1 << e
        return c

    def _basis_set(self) -> frozenset:
        s = self._np_cache.get("bset")
        if s is None:
            s = frozenset(self.bases)
            self._np_cache["bset"] = s
        return s

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        d: dict = {}
        if self.name:
            d["name"] = self.name
        if self.ground.labels is not None:
            d["labels"] = list(self.ground.labels)
        d["n"] = self.n
        d["rank"] = self.rank_value
        d["bases"] = [indices_of(b) for b in self.bases]
        return d


# ---------------------------------------------------------------------------
# construction and validation
# ---------------------------------------------------------------------------


def _trusted(ground: GroundSet, rank: int, bases: Iterable[int], name=None) -> Matroid:
    """Construct without the exchange check; callers must hold a proof."""
    bs = tuple(sorted(set(bases)))
    return Matroid(ground, rank, bs, name)


def check_exchange_axiom(bases: Sequence[int], rank: int) -> Optional[tuple[int, int, int]]:
    """Return a witnessing (B1, B2, e) violating basis exchange, or None.

    Uses the near-basis reformulation: exchange holds for the equicardinal
    family B iff for every set H = B1 - e with B1 in B, the replacement set
    G(H) = {g not in H : H + g in B} intersects every member of B.  A member
    B2 disjoint from G(H) yields the witness (B1, B2, e) with B1 = H + e for
    any e in G(H) with H + e in B, since no f in B2 \\ B1 can repair the pair.
    """
    if rank == 0:
        return None
    bset = set(bases)
    support = 0
    for b in bases:
        support |= b
    elems = indices_of(support)
    use_np = len(bases) * rank >= _NP_THRESHOLD
    if use_np:
        arr = np.array(bases, dtype=np.uint64)
        near = np.unique(
            np.concatenate([arr & ~np.uint64(1 << e) for e in elems])
        )
        near = near[np.bitwise_count(near) == rank - 1]
        # replacement masks G(H) for every distinct near-basis H
        g_masks = np.zeros(len(near), dtype=np.uint64)
        sorted_arr = np.sort(arr)
        for g in elems:
            bit = np.uint64(1 << g)
            cand = near | bit
            ok = (near & bit) == 0
            pos = np.searchsorted(sorted_arr, cand)
            pos = np.minimum(pos, len(sorted_arr) - 1)
            member = sorted_arr[pos] == cand
            g_masks |= np.where(ok & member, bit, np.uint64(0))
        order = np.argsort(g_masks, kind="stable")
        g_sorted = g_masks[order]
        near_sorted = near[order]
        uniq, first = np.unique(g_sorted, return_index=True)
        for gm, idx in zip(uniq.tolist(), first.tolist()):
            bad = arr[(arr & np.uint64(gm)) == 0]
            if len(bad):
                h = int(near_sorted[idx])
                b2 = int(bad[0])
                for e in bits(gm):
                    if (h | (1 << e)) in bset:
                        return (h | (1 << e), b2, e)
        return None
    # small case: plain dict/set version of the same computation
    g_of: dict[int, int] = {}
    for b in bases:
        for e in bits(b):
            h = b & ~(1 << e)
            if h in g_of:
                continue
            g = 0
            for cand_bit in elems:
                cand = h | (1 << cand_bit)
                if cand != h and cand in bset:
                    g |= 1 << cand_bit
            g_of[h] = g
    for h, g in g_of.items():
        for b2 in bases:
            if b2 & g == 0:
                for e in bits(g):
                    if (h | (1 << e)) in bset:
                        return (h | (1 << e), b2, e)
    return None


def from_bases(
    ground: GroundSet | int,
    rank: int,
    bases: Iterable[int],
    name: Optional[str] = None,
    labels: Optional[Sequence[str]] = None,
) -> Matroid:
    """Validate all matroid invariants and construct.

    This is the only constructor admitting external data.  Raises
    :class:`ExchangeAxiomError` with a witnessing triple on failure.
    """
    if isinstance(ground, int):
        ground = GroundSet(ground, tuple(labels) if labels else None)
    bs = tuple(sorted(set(bases)))
    if not bs:
        raise MatroidError("basis family is empty")
    for b in bs:
        ground.check_subset(b)
        if b.bit_count() != rank:
            raise MatroidError(
                f"basis {indices_of(b)} has cardinality {b.bit_count()}, expected {rank}"
            )
    witness = check_exchange_axiom(bs, rank)
    if witness is not None:
        raise ExchangeAxiomError(*witness)
    m = Matroid(ground, rank, bs, name)
    if m.rank(ground.full_mask) != rank:
        raise MatroidError("derived rank of the full ground set disagrees with rank")
    return m


def from_json(d: dict) -> Matroid:
    labels = tuple(d["labels"]) if d.get("labels") else None
    bases = [mask_of(b) for b in d["bases"]]
    return from_bases(GroundSet(d["n"], labels), d["rank"], bases, d.get("name"))


def uniform(r: int, n: int, name: Optional[str] = None) -> Matroid:
    if not 0 <= r <= n <= MAX_GROUND:
        raise MatroidError(f"uniform({r},{n}) out of range")
    ground = GroundSet(n)
    bases = [mask_of(c) for c in itertools.combinations(range(n), r)]
    return _trusted(ground, r, bases, name or f"U_{{{r},{n}}}")


# ---------------------------------------------------------------------------
# standard operations
# ---------------------------------------------------------------------------


def minor(m: Matroid, delete: int = 0, contract: int = 0) -> Matroid:
    """M \\ delete / contract, ground relabelled compactly in element order."""
    m.ground.check_subset(delete)
    m.ground.check_subset(contract)
    if delete & contract:
        raise MatroidError("delete and contract sets intersect")
    keep = indices_of(m.ground.full_mask & ~(delete | contract))
    if not keep:
        raise MatroidError("minor has empty ground set")
    rc = m.rank(contract)
    new_rank = m.rank(m.ground.full_mask & ~delete) - rc
    old_of_new = {j: e for j, e in enumerate(keep)}
    new_bases = []
    for combo in itertools.combinations(range(len(keep)), new_rank):
        x = mask_of(old_of_new[j] for j in combo)
        if m.rank(x | contract) - rc == new_rank:
            new_bases.append(mask_of(combo))
    lab = None
    if m.ground.labels is not None:
        lab = tuple(m.ground.labels[e] for e in keep)
    return _trusted(GroundSet(len(keep), lab), new_rank, new_bases)


def restrict(m: Matroid, keep_mask: int) -> Matroid:
    return minor(m, delete=m.ground.full_mask & ~keep_mask)


def contract(m: Matroid, c: int) -> Matroid:
    return minor(m, contract=c)


def delete(m: Matroid, d: int) -> Matroid:
    return minor(m, delete=d)


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    """Direct sum on the concatenated ground set (m1 first)."""
    n = m1.n + m2.n
    if n > MAX_GROUND:
        raise MatroidError(f"direct sum ground size {n} exceeds {MAX_GROUND}")
    lab = None
    if m1.ground.labels is not None and m2.ground.labels is not None:
        lab = m1.ground.labels + m2.ground.labels
    bases = [b1 | (b2 << m1.n) for b1 in m1.bases for b2 in m2.bases]
    return _trusted(GroundSet(n, lab), m1.rank_value + m2.rank_value, bases)


def components(m: Matroid) -> list[int]:
    """Connected components of the circuit hypergraph, as sorted masks.

    Loops and coloops are singleton components.  Uses the fundamental
    circuits of a single basis, which suffice to generate circuit
    connectivity.
    """
    parent = list(range(m.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    b0 = m.bases[0]
    for f in bits(m.ground.full_mask & ~b0):
        circ = m.fundamental_circuit(f, b0)
        members = indices_of(circ)
        for a in members[1:]:
            union(members[0], a)
    groups: dict[int, int] = {}
    for e in range(m.n):
        r = find(e)
        groups[r] = groups.get(r, 0) | (1 << e)
    return sorted(groups.values())


def simplify(m: Matroid) -> tuple[Matroid, tuple[Optional[int], ...]]:
    """Remove loops, keep one representative per parallel class.

    Returns the simplification and a mapping old element -> new index
    (None for loops).
    """
    loops = m.loops()
    reps: list[int] = []
    assign: list[Optional[int]] = [None] * m.n
    for e in range(m.n):
        if (1 << e) & loops:
            continue
        placed = False
        for idx, r in enumerate(reps):
            if m.rank((1 << e) | (1 << r)) == 1:
                assign[e] = idx
                placed = True
                break
        if not placed:
            assign[e] = len(reps)
            reps.append(e)
    keep = mask_of(reps)
    si = restrict(m, keep)
    return si, tuple(assign)


def dual(m: Matroid) -> Matroid:
    full = m.ground.full_mask
    bases = [full & ~b for b in m.bases]
    return _trusted(m.ground, m.n - m.rank_value, bases)


def weak_order_leq(m_less_free: Matroid, m_freer: Matroid) -> bool:
    """True iff every basis of the first matroid is independent in the second."""
    if m_less_free.n != m_freer.n:
        raise MatroidError("weak order comparison requires identical ground sets")
    if m_less_free.rank_value > m_freer.rank_value:
        return False
    if m_less_free.rank_value == m_freer.rank_value:
        bset = m_freer._basis_set()
        return all(b in bset for b in m_less_free.bases)
    return all(
        m_freer.rank(b) == m_less_free.rank_value for b in m_less_free.bases
    )


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------


def _element_invariants(m: Matroid) -> list[tuple]:
    deg = [0] * m.n
    for b in m.bases:
        for e in bits(b):
            deg[e] += 1
    line_profile: list[tuple] = [()] * m.n
    if m.rank_value >= 2 and m.n <= 40:
        lines = m.flats_of_rank(2)
        prof: list[list[int]] = [[] for _ in range(m.n)]
        for ln in lines:
            sz = ln.bit_count()
            for e in bits(ln):
                prof[e].append(sz)
        line_profile = [tuple(sorted(p)) for p in prof]
    return [
        (m.rank(1 << e), deg[e], line_profile[e]) for e in range(m.n)
    ]


def is_isomorphic(m1: Matroid, m2: Matroid) -> Optional[tuple[int, ...]]:
    """A rank-preserving bijection m1 -> m2 as a tuple, or None.

    Backtracking over elements ordered by invariant class (rank of the
    singleton, basis degree, line-size profile), pruning as soon as a fully
    mapped basis of m1 fails to map onto a basis of m2.
    """
    if m1.n != m2.n:
        return None
    if m1.rank_value != m2.rank_value or len(m1.bases) != len(m2.bases):
        return None
    inv1 = _element_invariants(m1)
    inv2 = _element_invariants(m2)
    if sorted(inv1) != sorted(inv2):
        return None
    candidates = [
        [f for f in range(m2.n) if inv2[f] == inv1[e]] for e in range(m1.n)
    ]
    order = sorted(range(m1.n), key=lambda e: (len(candidates[e]), e))
    bset2 = m2._basis_set()
    bases_by_last: dict[int, list[int]] = {}
    pos_in_order = {e: i for i, e in enumerate(order)}
    for b in m1.bases:
        last = max(pos_in_order[e] for e in bits(b))
        bases_by_last.setdefault(last, []).append(b)

    mapping: list[Optional[int]] = [None] * m1.n
    used = [False] * m2.n

    def image(bmask: int) -> int:
        out = 0
        for e in bits(bmask):
            out |= 1 << mapping[e]
        return out

    def rec(i: int) -> bool:
        if i == m1.n:
            return True
        e = order[i]
        for f in candidates[e]:
            if used[f]:
                continue
            mapping[e] = f
            used[f] = True
            ok = all(image(b) in bset2 for b in bases_by_last.get(i, ()))
            if ok and rec(i + 1):
                return True
            mapping[e] = None
            used[f] = False
        return False

    if rec(0):
        return tuple(mapping)  # type: ignore[arg-type]
    return None

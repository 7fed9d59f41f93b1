"""Tensor products of matroids: verification, enumeration, construction.

A tensor product of M1 and M2 lives on the row-major product ground and has
rank r1(X) * r2(Y) on every rectangle X x Y.  Enumeration works over the
candidate basis family: a static analysis first forces sets in or out using
sound rank bounds valid in every tensor product (rectangle ranks, modular
unions of nested rectangles, additive restrictions over independent rows or
columns, and a spanning-propagation closure), and a canonical depth-first
search decides the rest, verifying every leaf in full.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import core
from .core import (
    GroundSet,
    Matroid,
    MatroidError,
    ProductGround,
    bits,
    mask_of,
)

DEFAULT_NODES = 10**8
DEFAULT_SECONDS = 60


@dataclass
class SearchBudget:
    """Node and wall-clock budget for one search level."""

    nodes: int = DEFAULT_NODES
    seconds: int = DEFAULT_SECONDS

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "seconds": self.seconds}


@dataclass
class BudgetMeter:
    budget: SearchBudget
    nodes_used: int = 0
    start_ns: int = field(default_factory=time.monotonic_ns)
    timed_out: bool = False

    def spend(self, n: int = 1) -> bool:
        """Charge n nodes; False once the budget is exhausted."""
        self.nodes_used += n
        if self.nodes_used > self.budget.nodes:
            return False
        if self.nodes_used % 1024 < n:
            if time.monotonic_ns() - self.start_ns > self.budget.seconds * 10**9:
                self.timed_out = True
                return False
        return True

    @property
    def exhausted(self) -> bool:
        return self.timed_out or self.nodes_used > self.budget.nodes


@dataclass(frozen=True)
class TensorCandidate:
    product: ProductGround
    matroid: Matroid
    factors: tuple[Matroid, Matroid]


@dataclass
class EnumerationResult:
    matroids: list[Matroid]
    complete: bool
    nodes_used: int
    reason: str  # "exhausted" | "node-budget" | "time-budget"


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def is_tensor_product(
    p: Matroid, m1: Matroid, m2: Matroid
) -> tuple[bool, Optional[tuple]]:
    """Check the three rectangle-rank condition families that characterize
    tensor products: rows based at single left elements, columns based at
    single right elements, and the full ground set.

    Returns (True, None) or (False, witness) where the witness is the first
    violated triple in canonical order: ("row", e1, Y2, want, got),
    ("col", Y1, e2, want, got) or ("full", want, got).
    """
    pg = ProductGround(m1.ground, m2.ground)
    if p.n != pg.n:
        raise MatroidError("product ground size mismatch")
    n1, n2 = m1.n, m2.n
    r1_single = [m1.rank(1 << e) for e in range(n1)]
    r2_single = [m2.rank(1 << e) for e in range(n2)]
    r2_all = [m2.rank(y) for y in range(1 << n2)]

    queries = []
    meta = []
    for e1 in range(n1):
        for y2 in range(1 << n2):
            queries.append(y2 << (e1 * n2))
            meta.append(("row", e1, y2, r1_single[e1] * r2_all[y2]))
    got = p.rank_many(queries)
    for (kind, e1, y2, want), g in zip(meta, got):
        if g != want:
            return False, (kind, e1, y2, want, g)

    queries = []
    meta = []
    for y1 in range(1 << n1):
        ry1 = m1.rank(y1)
        for e2 in range(n2):
            queries.append(pg.rectangle(y1, 1 << e2))
            meta.append(("col", y1, e2, ry1 * r2_single[e2]))
    got = p.rank_many(queries)
    for (kind, y1, e2, want), g in zip(meta, got):
        if g != want:
            return False, (kind, y1, e2, want, g)

    want = m1.rank_value * m2.rank_value
    g = p.rank(pg.ground().full_mask)
    if g != want:
        return False, ("full", want, g)
    return True, None


# ---------------------------------------------------------------------------
# static analysis shared by the search
# ---------------------------------------------------------------------------


class _Statics:
    """Sound rank bounds valid in every tensor product of (m1, m2)."""

    def __init__(self, m1: Matroid, m2: Matroid):
        self.m1, self.m2 = m1, m2
        self.pg = ProductGround(m1.ground, m2.ground)
        self.n1, self.n2 = m1.n, m2.n
        self.k = m1.rank_value * m2.rank_value
        self.r1tab = [m1.rank(x) for x in range(1 << self.n1)]
        self.r2tab = [m2.rank(y) for y in range(1 << self.n2)]
        flats1 = m1.flats()
        flats2 = m2.flats()
        # rectangle upper bounds |Z & rect| <= r1(F1) * r2(F2)
        caps: dict[int, int] = {}

        def add_cap(mask: int, c: int):
            if mask and c < min(self.k, mask.bit_count()):
                old = caps.get(mask)
                if old is None or c < old:
                    caps[mask] = c

        rects = []
        for f1 in flats1:
            for f2 in flats2:
                mask = self.pg.rectangle(f1, f2)
                if not mask:
                    continue
                c = self.r1tab[f1] * self.r2tab[f2]
                rects.append((mask, f1, f2, c))
                add_cap(mask, c)
        # modular unions of nested rectangles are flats with forced rank
        for f1, f1b in itertools.combinations(flats1, 2):
            if f1 & ~f1b and f1b & ~f1:
                continue
            lo1, hi1 = (f1, f1b) if f1 & ~f1b == 0 else (f1b, f1)
            for f2, f2b in itertools.combinations(flats2, 2):
                if f2 & ~f2b and f2b & ~f2:
                    continue
                lo2, hi2 = (f2, f2b) if f2 & ~f2b == 0 else (f2b, f2)
                # (lo1 x hi2) | (hi1 x lo2)
                mask = self.pg.rectangle(lo1, hi2) | self.pg.rectangle(hi1, lo2)
                c = (
                    self.r1tab[lo1] * self.r2tab[hi2]
                    + self.r1tab[hi1] * self.r2tab[lo2]
                    - self.r1tab[lo1] * self.r2tab[lo2]
                )
                add_cap(mask, c)
        self.caps = sorted(caps.items())
        self.flat_rects = [
            (mask, c) for (mask, f1, f2, c) in rects if 0 < c <= self.k
        ]

    # -- exact rank over additive restrictions ---------------------------

    def fibers_by_row(self, z: int) -> list[int]:
        full2 = (1 << self.n2) - 1
        return [(z >> (i * self.n2)) & full2 for i in range(self.n1)]

    def fibers_by_col(self, z: int) -> list[int]:
        out = []
        for j in range(self.n2):
            f = 0
            for i in range(self.n1):
                if (z >> (i * self.n2 + j)) & 1:
                    f |= 1 << i
            out.append(f)
        return out

    def exact_rank(self, z: int) -> Optional[int]:
        """Exact tensor rank of z when its occupied rows are independent in
        m1 (rank is then additive over the rows) or dually for columns."""
        rows = self.fibers_by_row(z)
        rowset = mask_of(i for i, f in enumerate(rows) if f)
        if self.r1tab[rowset] == rowset.bit_count():
            return sum(self.r2tab[f] for f in rows if f)
        cols = self.fibers_by_col(z)
        colset = mask_of(j for j, f in enumerate(cols) if f)
        if self.r2tab[colset] == colset.bit_count():
            return sum(self.r1tab[f] for f in cols if f)
        return None

    def lower_bound(self, z: int) -> int:
        """A rank lower bound valid in every tensor product: the best
        additive value over an independent set of rows (or columns),
        computed by weighted matroid greedy."""
        best = 0
        rows = self.fibers_by_row(z)
        weights = [(self.r2tab[f], i) for i, f in enumerate(rows) if f]
        weights.sort(key=lambda t: (-t[0], t[1]))
        cur = 0
        total = 0
        for w, i in weights:
            cand = cur | (1 << i)
            if self.r1tab[cand] > self.r1tab[cur]:
                cur = cand
                total += w
        best = max(best, total)
        cols = self.fibers_by_col(z)
        weights = [(self.r1tab[f], j) for j, f in enumerate(cols) if f]
        weights.sort(key=lambda t: (-t[0], t[1]))
        cur = 0
        total = 0
        for w, j in weights:
            cand = cur | (1 << j)
            if self.r2tab[cand] > self.r2tab[cur]:
                cur = cand
                total += w
        return max(best, total)

    def spanning_lower_bound(self, z: int) -> int:
        """Lower bound after closure propagation: a rectangle joins the
        closure once the part already inside it is forced to span it."""
        cl = z
        lb = self.lower_bound(cl)
        if lb >= self.k:
            return lb
        changed = True
        while changed:
            changed = False
            for mask, c in self.flat_rects:
                if mask & ~cl == 0 or cl & mask == 0:
                    continue
                if self.lower_bound(cl & mask) >= c:
                    cl |= mask
                    changed = True
            if changed:
                lb = self.lower_bound(cl)
                if lb >= self.k:
                    return lb
        return lb

    def classify_ksets(self) -> tuple[list[int], list[int], list[int]]:
        """Split all k-subsets of the product ground into (forced bases,
        forced non-bases, undecided), using numpy for the bulk filters."""
        k, n = self.k, self.pg.n
        all_sets = [mask_of(c) for c in itertools.combinations(range(n), k)]
        arr = np.array(all_sets, dtype=np.uint64)
        alive = np.ones(len(arr), dtype=bool)
        for mask, c in self.caps:
            alive &= np.bitwise_count(arr & np.uint64(mask)) <= c
        forced_false = [int(x) for x in arr[~alive]]
        forced_true: list[int] = []
        undecided: list[int] = []
        for z in (int(x) for x in arr[alive]):
            ex = self.exact_rank(z)
            if ex is not None:
                if ex == k:
                    forced_true.append(z)
                else:
                    forced_false.append(z)
                continue
            if self.spanning_lower_bound(z) >= k:
                forced_true.append(z)
            else:
                undecided.append(z)
        return forced_true, sorted(forced_false), undecided


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _validate_candidate(
    bases: list[int], m1: Matroid, m2: Matroid
) -> Optional[Matroid]:
    if not bases:
        return None
    k = m1.rank_value * m2.rank_value
    if core.check_exchange_axiom(bases, k) is not None:
        return None
    pg = ProductGround(m1.ground, m2.ground)
    cand = core._trusted(pg.ground(), k, bases)
    ok, _ = is_tensor_product(cand, m1, m2)
    return cand if ok else None


def _enumerate_simple(
    m1: Matroid, m2: Matroid, budget: SearchBudget
) -> EnumerationResult:
    """Complete (budget permitting) enumeration for simple factors."""
    st = _Statics(m1, m2)
    meter = BudgetMeter(budget)
    forced_true, _, undecided = st.classify_ksets()
    undecided.sort()
    found: list[Matroid] = []

    # rectangle-achievability pruning data: every flat rectangle must keep a
    # candidate basis meeting it in exactly its rank
    watch_rects = []
    for mask, c in st.flat_rects:
        if any((b & mask).bit_count() == c for b in forced_true):
            continue
        achievers = [
            i for i, z in enumerate(undecided) if (z & mask).bit_count() == c
        ]
        if not achievers:
            # no candidate can realize this rectangle's rank: no tensor at all
            return EnumerationResult([], True, meter.nodes_used, "exhausted")
        watch_rects.append((mask, c, set(achievers)))
    achiever_lists: list[list[int]] = [[] for _ in undecided]
    for ridx, (mask, c, achievers) in enumerate(watch_rects):
        for i in achievers:
            achiever_lists[i].append(ridx)
    live_counts = [len(a[2]) for a in watch_rects]

    assignment: list[Optional[bool]] = [None] * len(undecided)

    def leaf():
        bases = forced_true + [z for z, a in zip(undecided, assignment) if a]
        cand = _validate_candidate(sorted(bases), m1, m2)
        if cand is not None:
            found.append(cand)

    def rec(i: int) -> bool:
        """DFS; returns False when the budget ran out."""
        if not meter.spend():
            return False
        if i == len(undecided):
            leaf()
            return True
        assignment[i] = True
        if not rec(i + 1):
            return False
        dead = False
        for ridx in achiever_lists[i]:
            live_counts[ridx] -= 1
            if live_counts[ridx] == 0:
                dead = True
        assignment[i] = False
        ok = True
        if not dead:
            ok = rec(i + 1)
        for ridx in achiever_lists[i]:
            live_counts[ridx] += 1
        assignment[i] = None
        return ok

    completed = rec(0)
    found.sort(key=lambda m: (m.rank_value, m.bases))
    reason = (
        "exhausted"
        if completed
        else ("time-budget" if meter.timed_out else "node-budget")
    )
    return EnumerationResult(found, completed, meter.nodes_used, reason)


def simplification_reduction(
    m1: Matroid, m2: Matroid
) -> tuple[Matroid, Matroid, Callable[[Matroid], Matroid]]:
    """Simplify both factors and return a lift turning any tensor product of
    the simplifications into one of the originals: parallel classes blow up
    cellwise and loop rows/columns come back as loops."""
    si1, map1 = core.simplify(m1)
    si2, map2 = core.simplify(m2)
    classes1: list[list[int]] = [[] for _ in range(si1.n)]
    for e, c in enumerate(map1):
        if c is not None:
            classes1[c].append(e)
    classes2: list[list[int]] = [[] for _ in range(si2.n)]
    for e, c in enumerate(map2):
        if c is not None:
            classes2[c].append(e)
    pg_small = ProductGround(si1.ground, si2.ground)
    pg_big = ProductGround(m1.ground, m2.ground)

    def lift(n: Matroid) -> Matroid:
        if n.n != pg_small.n:
            raise MatroidError("lift argument lives on the wrong ground")
        big_bases: list[int] = []
        for b in n.bases:
            cells = core.indices_of(b)
            choices = []
            for cell in cells:
                j, kk = divmod(cell, si2.n)
                choices.append(
                    [
                        pg_big.cell(x, y)
                        for x in classes1[j]
                        for y in classes2[kk]
                    ]
                )
            for combo in itertools.product(*choices):
                big_bases.append(mask_of(combo))
        return core._trusted(pg_big.ground(), n.rank_value, big_bases)

    return si1, si2, lift


def enumerate_tensor_products(
    m1: Matroid, m2: Matroid, budget: Optional[SearchBudget] = None
) -> EnumerationResult:
    """Enumerate M1 (x) M2 up to equality on the product ground.

    Non-simple factors are handled by the simplification reduction; the
    search itself runs on the simplifications.  The result is sorted
    canonically; ``complete`` is set only if the search tree was exhausted.
    """
    budget = budget or SearchBudget()
    if ProductGround(m1.ground, m2.ground).n > core.MAX_GROUND:
        raise MatroidError("product ground exceeds the element cap")
    if m1.rank_value == 0 or m2.rank_value == 0:
        pg = ProductGround(m1.ground, m2.ground)
        return EnumerationResult(
            [core._trusted(pg.ground(), 0, [0])], True, 0, "exhausted"
        )
    si1, si2, lift = simplification_reduction(m1, m2)
    res = _enumerate_simple(si1, si2, budget)
    if si1.n == m1.n and si2.n == m2.n:
        return res
    lifted = [lift(n) for n in res.matroids]
    lifted.sort(key=lambda m: (m.rank_value, m.bases))
    return EnumerationResult(lifted, res.complete, res.nodes_used, res.reason)


# ---------------------------------------------------------------------------
# minors of tensor products
# ---------------------------------------------------------------------------


def minor_of_tensor(tc: TensorCandidate, a: int) -> Matroid:
    """Contract A x S2 from a verified tensor product; the result is a
    tensor product of M1/A with M2 and is certified before return."""
    m1, m2 = tc.factors
    m1.ground.check_subset(a)
    if a == 0:
        return tc.matroid
    pg = tc.product
    if a == m1.ground.full_mask:
        return core._trusted(pg.ground(), 0, [0])
    rect = pg.rectangle(a, m2.ground.full_mask)
    result = core.minor(tc.matroid, contract=rect)
    m1_contracted = core.contract(m1, a)
    ok, witness = is_tensor_product(result, m1_contracted, m2)
    if not ok:
        raise MatroidError(f"tensor minor failed certification at {witness}")
    return result


# ---------------------------------------------------------------------------
# freest tensor product of a rank-3 matroid with a uniform matroid
# ---------------------------------------------------------------------------


def freest_rank3_uniform(m: Matroid, k: int, n: int) -> Matroid:
    """The freest tensor product of a simple rank-3 matroid with U_{k,n}.

    Bases are the unions A_1^1 | ... | A_n^n of independent sets with total
    size 3k such that no k+1 of the extended line closures share a point
    (the line set is extended by one new point per disjoint line pair) and
    every n-k+1 of the parts together span.  The result goes through the
    full axiom check.
    """
    if m.rank_value != 3:
        raise MatroidError("freest construction needs a rank-3 matroid")
    si, _ = core.simplify(m)
    if si.n != m.n:
        raise MatroidError(
            "freest construction needs a simple matroid; reduce parallel "
            "elements and loops first"
        )
    if not 1 <= k <= n:
        raise MatroidError("need 1 <= k <= n")
    if m.n * n > core.MAX_GROUND:
        raise MatroidError("product ground exceeds the element cap")

    lines = m.flats_of_rank(2)
    line_id = {ln: i for i, ln in enumerate(lines)}
    disjoint_from = [
        mask_of(j for j, lb in enumerate(lines) if lines[i] & lb == 0)
        for i in range(len(lines))
    ]

    # independent sets with closure data: (mask, size, closure mask, line id)
    indep: list[tuple[int, int, int, Optional[int]]] = [(0, 0, 0, None)]
    for e in range(m.n):
        indep.append((1 << e, 1, 1 << e, None))
    for combo in itertools.combinations(range(m.n), 2):
        x = mask_of(combo)
        cl = m.closure(x)
        indep.append((x, 2, cl, line_id[cl]))
    for b in m.bases:
        indep.append((b, 3, m.ground.full_mask, None))

    by_size: dict[int, list[int]] = {0: [], 1: [], 2: [], 3: []}
    for idx, (_, sz, _, _) in enumerate(indep):
        by_size[sz].append(idx)

    # spanning pairs: rank of the union of two independent sets
    spans_pair = {}
    for ia, (xa, _, _, _) in enumerate(indep):
        for ib, (xb, _, _, _) in enumerate(indep):
            spans_pair[(ia, ib)] = m.rank(xa | xb) == 3

    def cond_generators(tuple_ids: tuple[int, ...]) -> bool:
        for js in itertools.combinations(range(n), n - k + 1):
            if len(js) == 2:
                if not spans_pair[(tuple_ids[js[0]], tuple_ids[js[1]])]:
                    return False
            else:
                u = 0
                for j in js:
                    u |= indep[tuple_ids[j]][0]
                if m.rank(u) != 3:
                    return False
        return True

    any_disjoint_pair = any(disjoint_from)

    def cond_closures(tuple_ids: tuple[int, ...]) -> bool:
        # the extended closure of a part is its closure plus, for two-point
        # parts, the new points of line pairs through its line
        for isub in itertools.combinations(range(n), k + 1):
            members = [indep[tuple_ids[i]] for i in isub]
            real = m.ground.full_mask
            for (_, _, cl, _) in members:
                real &= cl
            if real:
                return False
            if any(sz <= 1 for (_, sz, _, _) in members):
                continue  # pointlike closures carry no new points
            distinct = sorted({lid for (_, sz, _, lid) in members if sz == 2})
            if not distinct:
                if any_disjoint_pair:
                    return False
            elif len(distinct) == 1:
                if disjoint_from[distinct[0]]:
                    return False
            elif len(distinct) == 2:
                la, lb = distinct
                if (disjoint_from[la] >> lb) & 1:
                    return False
        return True

    spread = {idx: 0 for idx in range(len(indep))}
    for idx, (x, _, _, _) in enumerate(indep):
        s = 0
        for e in bits(x):
            s |= 1 << (e * n)
        spread[idx] = s

    bases_out: list[int] = []

    def rec(pos: int, remaining: int, chosen: list[int]):
        if pos == n:
            if remaining:
                return
            ids = tuple(chosen)
            if cond_generators(ids) and cond_closures(ids):
                mask = 0
                for i, idx in enumerate(ids):
                    mask |= spread[idx] << i
                bases_out.append(mask)
            return
        lo = max(0, remaining - 3 * (n - pos - 1))
        hi = min(3, remaining)
        for sz in range(lo, hi + 1):
            for idx in by_size[sz]:
                chosen.append(idx)
                rec(pos + 1, remaining - sz, chosen)
                chosen.pop()

    rec(0, 3 * k, [])
    pg = ProductGround(m.ground, GroundSet(n))
    return core.from_bases(pg.ground(), 3 * k, bases_out)


# ---------------------------------------------------------------------------
# bounded k-tensor-compatibility
# ---------------------------------------------------------------------------


@dataclass
class CompatCertificate:
    kind: str  # "chain" | "refuted" | "inconclusive"
    levels: list = field(default_factory=list)  # Matroid or rep dicts
    refuted_at: Optional[int] = None
    method: str = "exhaustive"  # | "inequality" | "kronecker"
    detail: Optional[dict] = None
    nodes_used: int = 0
    budget: Optional[SearchBudget] = None

    def to_json(self) -> dict:
        levels = []
        for lv in self.levels:
            if isinstance(lv, Matroid):
                levels.append(lv.to_json())
            else:
                levels.append(lv)
        d = {
            "kind": self.kind,
            "levels": levels,
            "method": self.method,
            "budget": {
                "nodes_used": self.nodes_used,
                **(self.budget.to_json() if self.budget else {}),
            },
        }
        if self.refuted_at is not None:
            d["refuted_at"] = self.refuted_at
        if self.detail is not None:
            d["detail"] = self.detail
        return d


def _has_u23_minor(n: Matroid) -> bool:
    """True iff some connected component has rank at least 2."""
    return any(n.rank(c) >= 2 for c in core.components(n))


def _inequality_refutation(m: Matroid, n: Matroid) -> Optional[dict]:
    """Try to refute the existence of any tensor product M (x) N by a
    linear rank inequality that tensoring with N would force on M."""
    from . import rank_ineq
    from .catalog import graphic_k4

    checks = []
    if _has_u23_minor(n):
        checks.append(rank_ineq.ingleton())
    if core.is_isomorphic(n, graphic_k4()) is not None:
        checks.append(rank_ineq.new_ineq())
    for ineq in checks:
        for strategy in ("singletons", "flats"):
            res = rank_ineq.search_violation(m, ineq, strategy=strategy)
            if res.witness is not None:
                return {
                    "inequality": ineq.name,
                    "strategy": strategy,
                    "witness": {
                        v: core.indices_of(w) for v, w in res.witness.items()
                    },
                    "slack": str(res.slack),
                }
    return None


def tensor_compat_depth(
    m: Matroid,
    n: Matroid,
    k_max: int,
    budget: Optional[SearchBudget] = None,
    m_rep=None,
    n_rep=None,
) -> CompatCertificate:
    """Search for a left-associative chain of k_max tensor products with n,
    or a refutation that some level admits none.

    An inequality violation is a sound refutation and short-circuits the
    search.  When matrix representations over a common field are supplied,
    the chain is produced by iterated Kronecker products; levels whose
    ground fits in 64 elements are materialized and verified in full, the
    rest are matrix-backed with exact rank-multiplicativity checks.
    """
    budget = budget or SearchBudget()
    refut = _inequality_refutation(m, n)
    if refut is not None:
        return CompatCertificate(
            kind="refuted",
            refuted_at=1,
            method="inequality",
            detail=refut,
            budget=budget,
        )

    if m_rep is not None and n_rep is not None and m_rep.field == n_rep.field:
        from . import rep as repmod

        levels = []
        cur = m_rep
        cur_rank = repmod.matrix_rank(cur)
        n_rank = repmod.matrix_rank(n_rep)
        factor = m
        for depth in range(1, k_max + 1):
            nxt = repmod.kronecker(cur, n_rep)
            nxt_rank = repmod.matrix_rank(nxt)
            if nxt_rank != cur_rank * n_rank:
                raise MatroidError("Kronecker rank multiplicativity failed")
            if nxt.cols <= core.MAX_GROUND:
                prod = repmod.tensor_from_reps(cur, n_rep)
                ok, witness = is_tensor_product(prod, factor, n)
                if not ok:
                    raise MatroidError(f"chain level {depth} failed: {witness}")
                levels.append(prod)
                factor = prod
            else:
                levels.append(
                    {
                        "rep": {
                            "field": str(nxt.field),
                            "rows": nxt.rows,
                            "cols": nxt.cols,
                            "rank": nxt_rank,
                        }
                    }
                )
            cur, cur_rank = nxt, nxt_rank
        return CompatCertificate(
            kind="chain", levels=levels, method="kronecker", budget=budget
        )

    # exhaustive iterative deepening with isomorphism-class memoization
    meter = BudgetMeter(budget)
    frontier = [m]
    chain: list[Matroid] = []
    for depth in range(1, k_max + 1):
        next_frontier: list[Matroid] = []
        all_complete = True
        for p in frontier:
            if ProductGround(p.ground, n.ground).n > core.MAX_GROUND:
                return CompatCertificate(
                    kind="inconclusive",
                    levels=chain,
                    method="exhaustive",
                    detail={"reason": "ground too large"},
                    nodes_used=meter.nodes_used,
                    budget=budget,
                )
            sub = SearchBudget(
                nodes=budget.nodes - meter.nodes_used, seconds=budget.seconds
            )
            res = enumerate_tensor_products(p, n, sub)
            meter.nodes_used += res.nodes_used
            all_complete &= res.complete
            for cand in res.matroids:
                if not any(
                    core.is_isomorphic(cand, seen) is not None
                    for seen in next_frontier
                ):
                    next_frontier.append(cand)
        if not next_frontier:
            if all_complete:
                return CompatCertificate(
                    kind="refuted",
                    levels=chain,
                    refuted_at=depth,
                    method="exhaustive",
                    nodes_used=meter.nodes_used,
                    budget=budget,
                )
            return CompatCertificate(
                kind="inconclusive",
                levels=chain,
                method="exhaustive",
                detail={"reason": "budget exhausted"},
                nodes_used=meter.nodes_used,
                budget=budget,
            )
        chain.append(next_frontier[0])
        frontier = next_frontier
    return CompatCertificate(
        kind="chain",
        levels=chain,
        method="exhaustive",
        nodes_used=meter.nodes_used,
        budget=budget,
    )

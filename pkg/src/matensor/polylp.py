"""Exact-rational polymatroid functions, lifts, quotients, and the
lattice-restricted tensor-feasibility LP.

The LP decides whether a polymatroid function on a product ground can agree
with prescribed rectangle values while staying monotone and submodular on a
meet/join-closed family of subsets.  Infeasibility comes with an exact
Farkas certificate and soundly proves that no tensor product exists, since
the restriction of a true tensor product to the lattice would satisfy every
row.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from . import core, simplex
from .core import GroundSet, Matroid, MatroidError, ProductGround, bits, mask_of

MAX_DENSE_GROUND = 16
DEFAULT_LATTICE_CAP = 4096


class LatticeCapError(MatroidError):
    def __init__(self, partial_size: int, cap: int):
        self.partial_size = partial_size
        self.cap = cap
        super().__init__(f"lattice closure exceeded cap {cap} (reached {partial_size})")


@dataclass(frozen=True)
class PolymatroidFn:
    """A set function on at most 16 elements, stored densely; checked to be
    zero on the empty set, increasing, and submodular at construction."""

    ground: GroundSet
    values: tuple[Fraction, ...]

    def __post_init__(self):
        n = self.ground.n
        if n > MAX_DENSE_GROUND:
            raise MatroidError(f"dense polymatroid limited to {MAX_DENSE_GROUND} elements")
        if len(self.values) != 1 << n:
            raise MatroidError("value table must cover every subset")
        v = self.values
        if v[0] != 0:
            raise MatroidError("value of the empty set must be 0")
        for x in range(1 << n):
            for i in range(n):
                if not (x >> i) & 1:
                    xi = x | (1 << i)
                    if v[xi] < v[x]:
                        raise MatroidError(
                            f"not increasing at {core.indices_of(x)} + {i}"
                        )
                    for j in range(i + 1, n):
                        if not (x >> j) & 1:
                            if v[xi] + v[x | (1 << j)] < v[x] + v[xi | (1 << j)]:
                                raise MatroidError(
                                    f"not submodular at {core.indices_of(x)} with {i},{j}"
                                )

    @property
    def n(self) -> int:
        return self.ground.n

    def __call__(self, x: int) -> Fraction:
        return self.values[x]

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def scale(self, c: Fraction | int) -> "PolymatroidFn":
        c = Fraction(c)
        return PolymatroidFn(self.ground, tuple(v * c for v in self.values))

    def to_json(self) -> dict:
        vals = {}
        for x in range(1 << self.n):
            key = ",".join(str(i) for i in core.indices_of(x))
            v = self.values[x]
            vals[key] = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return {"n": self.n, "values": vals}


def polymatroid_from_json(d: dict) -> PolymatroidFn:
    n = d["n"]
    vals = [Fraction(0)] * (1 << n)
    for key, s in d["values"].items():
        x = mask_of(int(t) for t in key.split(",") if t != "")
        vals[x] = Fraction(s)
    return PolymatroidFn(GroundSet(n), tuple(vals))


def rank_function(m: Matroid) -> PolymatroidFn:
    """The rank function of a matroid as a polymatroid function."""
    vals = [Fraction(m.rank(x)) for x in range(1 << m.n)]
    return PolymatroidFn(m.ground, tuple(vals))


def quotient(
    phi: Union[PolymatroidFn, Matroid], partition: Sequence[int]
) -> PolymatroidFn:
    """Quotient by a partition of the ground set: the value of a set of
    parts is the value of the union of those parts."""
    if isinstance(phi, Matroid):
        ground_n = phi.n
        evaluate = phi.rank
    else:
        ground_n = phi.n
        evaluate = phi.values.__getitem__
    cover = 0
    for block in partition:
        if block & cover:
            raise MatroidError("partition blocks must be disjoint")
        cover |= block
    if cover != (1 << ground_n) - 1:
        raise MatroidError("partition must cover the ground set")
    q = len(partition)
    vals = []
    for x in range(1 << q):
        u = 0
        for i in bits(x):
            u |= partition[i]
        vals.append(Fraction(evaluate(u)))
    return PolymatroidFn(GroundSet(q), tuple(vals))


def helgason_lift(phi: PolymatroidFn) -> tuple[Matroid, tuple[int, ...]]:
    """Materialize the matroid on phi(s) copies of each element s whose
    quotient by the copy classes recovers phi.

    Returns the matroid and the copy-to-original map theta.  A set of
    copies is independent iff it puts at most phi(Y) copies on every
    subset Y of the original ground.
    """
    if not phi.is_integral():
        raise MatroidError("the lift needs an integer-valued polymatroid function")
    nsrc = phi.n
    counts = [int(phi(1 << s)) for s in range(nsrc)]
    total = sum(counts)
    if total > core.MAX_GROUND:
        raise MatroidError(f"lift ground of size {total} exceeds {core.MAX_GROUND}")
    if total == 0:
        raise MatroidError("lift of the zero function has an empty ground set")
    theta: list[int] = []
    for s in range(nsrc):
        theta.extend([s] * counts[s])
    rank = int(phi((1 << nsrc) - 1))

    copies_of = [mask_of(i for i, t in enumerate(theta) if t == s) for s in range(nsrc)]
    bases: list[int] = []

    def independent_counts(cnt: list[int]) -> bool:
        for y in range(1, 1 << nsrc):
            tot = 0
            for s in bits(y):
                tot += cnt[s]
            if tot > phi(y):
                return False
        return True

    for combo in itertools.combinations(range(total), rank):
        cnt = [0] * nsrc
        for i in combo:
            cnt[theta[i]] += 1
        if independent_counts(cnt):
            bases.append(mask_of(combo))
    m = core.from_bases(GroundSet(total), rank, bases)
    # sanity: the quotient must recover phi exactly
    for y in range(1 << nsrc):
        pre = 0
        for s in bits(y):
            pre |= copies_of[s]
        if m.rank(pre) != phi(y):
            raise MatroidError("lift does not project back to the input function")
    return m, tuple(theta)


# ---------------------------------------------------------------------------
# subset lattices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubsetLattice:
    """A family of subsets of a product ground containing the meet/join
    closure of its seeds, with rectangle members tagged by their factor
    sets.

    The full single-row and single-column rectangles are grafted on top of
    the seed closure without re-closing: closing over them would generate
    every single cell (a row meets a column in one cell) and hence the
    entire power set.  Submodularity rows are only generated for pairs
    whose meet and join are members, so the LP families stay well defined.
    """

    base: ProductGround
    members: tuple[int, ...]
    rectangle_tags: dict = field(compare=False)
    seed_closed: tuple[int, ...] = ()

    def __post_init__(self):
        ms = set(self.seed_closed)
        for a, b in itertools.combinations(self.seed_closed, 2):
            if a & b not in ms or a | b not in ms:
                raise MatroidError("seed family is not closed under meet/join")

    @property
    def size(self) -> int:
        return len(self.members)


def _rect_tag(pg: ProductGround, mask: int) -> Optional[tuple[int, int]]:
    x1 = pg.project_left(mask)
    x2 = pg.project_right(mask)
    if pg.rectangle(x1, x2) == mask:
        return (x1, x2)
    return None


def build_lattice(
    base: ProductGround,
    seeds: Iterable[int],
    cap: int = DEFAULT_LATTICE_CAP,
) -> SubsetLattice:
    """Close the seeds under pairwise meets and joins.

    The empty set, the full ground, and the full single-row and
    single-column rectangles touched by some seed are always included.
    Raises :class:`LatticeCapError` when the closure exceeds the cap.
    """
    full = base.ground().full_mask
    members = {0, full}
    touched_rows = 0
    touched_cols = 0
    seeds = list(seeds)
    for s in seeds:
        if s < 0 or s & ~full:
            raise MatroidError("seed outside the product ground")
        touched_rows |= base.project_left(s)
        touched_cols |= base.project_right(s)
    for i in bits(touched_rows):
        members.add(base.row(i))
    for j in bits(touched_cols):
        members.add(base.col(j))
    members.update(seeds)

    frontier = list(members)
    while frontier:
        new: set[int] = set()
        for a in frontier:
            for b in members:
                x = a & b
                if x not in members:
                    new.add(x)
                x = a | b
                if x not in members:
                    new.add(x)
        members.update(new)
        if len(members) > cap:
            raise LatticeCapError(len(members), cap)
        frontier = list(new)
    ordered = tuple(sorted(members))
    tags = {}
    for mask in ordered:
        t = _rect_tag(base, mask)
        if t is not None:
            tags[mask] = t
    return SubsetLattice(base, ordered, tags)


# ---------------------------------------------------------------------------
# LP rows and outcomes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LpRow:
    """A constraint row in lattice terms.

    kinds: "rect" (sets=(R,), equality to value1*value2), "mono"
    (sets=(A,B) with A subset of B, x_B - x_A >= 0), "submod"
    (sets=(A,B), x_A + x_B - x_meet - x_join >= 0).  ``level`` scopes
    variables for chain systems; rect rows of level >= 2 are the linear
    inter-level equalities x_{A x B} = r(B) * x_A.
    """

    kind: str
    sets: tuple[int, ...]
    rhs: Fraction
    level: int = 1
    factor_sets: Optional[tuple[int, int]] = None
    factor_values: Optional[tuple[Fraction, Fraction]] = None
    lower_coeff: Optional[Fraction] = None  # coefficient of the lower-level var

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "sets": [core.indices_of(s) for s in self.sets],
        }


@dataclass
class FarkasEntry:
    row: LpRow
    multiplier: Fraction


@dataclass
class LpOutcome:
    feasible: bool
    model: Optional[dict] = None  # (level, mask) -> Fraction
    farkas: Optional[list[FarkasEntry]] = None
    rows_used: int = 0
    pivots: int = 0

    def to_json(self) -> dict:
        d: dict = {"feasible": self.feasible}
        if self.feasible and self.model is not None:
            d["model"] = {
                ",".join(map(str, core.indices_of(mask)))
                if lvl == 1
                else f"L{lvl}:" + ",".join(map(str, core.indices_of(mask))): _frac_str(v)
                for (lvl, mask), v in sorted(self.model.items())
            }
        if not self.feasible and self.farkas is not None:
            d["farkas"] = {
                "rows": [
                    {
                        **e.row.describe(),
                        "multiplier": _frac_str(e.multiplier),
                    }
                    for e in self.farkas
                ]
            }
        return d


def _frac_str(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


class _LpSystem:
    """Variables are (level, mask) pairs; rows are generated lazily."""

    def __init__(self):
        self.var_index: dict[tuple[int, int], int] = {}
        self.var_list: list[tuple[int, int]] = []

    def var(self, level: int, mask: int) -> int:
        key = (level, mask)
        idx = self.var_index.get(key)
        if idx is None:
            idx = len(self.var_list)
            self.var_index[key] = idx
            self.var_list.append(key)
        return idx

    def row_to_simplex(self, row: LpRow) -> simplex.Row:
        f = Fraction
        if row.kind == "rect":
            coeffs = {self.var(row.level, row.sets[0]): f(1)}
            if row.lower_coeff is not None:
                coeffs[self.var(row.level - 1, row.factor_sets[0])] = -row.lower_coeff
                return simplex.Row(coeffs, "=", f(0))
            return simplex.Row(coeffs, "=", row.rhs)
        if row.kind == "mono":
            a, b = row.sets
            return simplex.Row(
                {self.var(row.level, b): f(1), self.var(row.level, a): f(-1)},
                ">=",
                f(0),
            )
        if row.kind == "submod":
            a, b = row.sets
            meet, join = a & b, a | b
            coeffs: dict[int, Fraction] = {}
            for mask, c in ((a, 1), (b, 1), (meet, -1), (join, -1)):
                idx = self.var(row.level, mask)
                coeffs[idx] = coeffs.get(idx, f(0)) + c
            return simplex.Row(coeffs, ">=", f(0))
        raise MatroidError(f"unknown row kind {row.kind}")


def _candidate_rows(members: Sequence[int], level: int) -> tuple[list[LpRow], list[LpRow]]:
    """Monotonicity rows on cover pairs of the lattice order (covers imply
    all comparable pairs by transitivity) and submodularity rows on
    crossing pairs whose meet and join stay inside the lattice.

    For a full power-set lattice the submodular family reduces to its
    elemental rows (X+i, X+j), which imply the rest.
    """
    mset = set(members)
    full = 0
    for m in members:
        full |= m
    dense = len(members) == 1 << full.bit_count()
    mono: list[LpRow] = []
    submod: list[LpRow] = []
    if dense:
        elems = core.indices_of(full)
        for x in members:
            outside = [i for i in elems if not (x >> i) & 1]
            for i in outside:
                mono.append(LpRow("mono", (x, x | (1 << i)), Fraction(0), level))
            for i, j in itertools.combinations(outside, 2):
                submod.append(
                    LpRow("submod", (x | (1 << i), x | (1 << j)), Fraction(0), level)
                )
        return mono, submod
    for a in members:
        sups = [b for b in members if b != a and a & ~b == 0]
        sups.sort(key=lambda b: (b.bit_count(), b))
        covers: list[int] = []
        for b in sups:
            if not any(c & ~b == 0 for c in covers):
                covers.append(b)
        for b in covers:
            mono.append(LpRow("mono", (a, b), Fraction(0), level))
    for a, b in itertools.combinations(members, 2):
        if a & ~b == 0 or b & ~a == 0:
            continue
        if (a & b) in mset and (a | b) in mset:
            submod.append(LpRow("submod", (a, b), Fraction(0), level))
    return mono, submod


_BATCH = 400


def _check_model(
    system: _LpSystem, model: dict, rows: list[LpRow]
) -> Optional[LpOutcome]:
    """Return a feasible outcome if the proposed model satisfies every row
    exactly; None otherwise."""
    values = [Fraction(0)] * len(system.var_list)
    for key, v in model.items():
        idx = system.var_index.get(key)
        if idx is None:
            return None
        values[idx] = Fraction(v)
    for row in rows:
        s = system.row_to_simplex(row)
        lhs = sum(c * values[j] for j, c in s.coeffs.items())
        if s.sense == ">=":
            if lhs < s.rhs:
                return None
        elif lhs != s.rhs:
            return None
    return LpOutcome(True, dict(model), None, len(rows), 0)


def _solve_lazy(
    system: _LpSystem,
    base_rows: list[LpRow],
    lazy_rows: list[LpRow],
) -> LpOutcome:
    """Solve with rows added lazily and single-variable equalities
    substituted out first.

    Every fixed variable carries a certificate (a combination of original
    rows equal to "x_v - value"), so Farkas vectors of the reduced system
    map back to exact certificates on the original rows, which are
    re-verified before being returned.
    """
    active = list(base_rows)
    srows: list[simplex.Row] = [system.row_to_simplex(r) for r in active]
    pending = list(lazy_rows)
    pivots = 0
    nvars = len(system.var_list)

    def final_farkas(y_orig: dict[int, Fraction]) -> LpOutcome:
        yvec = [y_orig.get(i, Fraction(0)) for i in range(len(srows))]
        if not simplex.verify_farkas(nvars, srows, yvec):
            raise MatroidError("internal error: Farkas certificate failed to verify")
        entries = [
            FarkasEntry(active[i], y) for i, y in enumerate(yvec) if y != 0
        ]
        return LpOutcome(False, None, entries, len(active), pivots)

    while True:
        # presolve: substitute variables pinned by equality rows
        fixed: dict[int, tuple[Fraction, dict[int, Fraction]]] = {}
        changed = True
        bad = None
        while changed and bad is None:
            changed = False
            for pos, s in enumerate(srows):
                coeffs = {}
                rhs = s.rhs
                cert = {pos: Fraction(1)}
                for j, c in s.coeffs.items():
                    if j in fixed:
                        val, vcert = fixed[j]
                        rhs -= c * val
                        for r, w in vcert.items():
                            cert[r] = cert.get(r, Fraction(0)) - c * w
                    else:
                        coeffs[j] = coeffs.get(j, Fraction(0)) + c
                coeffs = {j: c for j, c in coeffs.items() if c}
                if s.sense == "=" and len(coeffs) == 1:
                    (j, c), = coeffs.items()
                    val = rhs / c
                    inv = Fraction(1) / c
                    fixed[j] = (val, {r: w * inv for r, w in cert.items()})
                    changed = True
                    if val < 0:
                        bad = {r: -w for r, w in fixed[j][1].items()}
                        break
                elif not coeffs:
                    viol = rhs > 0 if s.sense == ">=" else rhs != 0
                    if viol:
                        sign = 1 if (s.sense == ">=" or rhs > 0) else -1
                        bad = {r: sign * w for r, w in cert.items()}
                        break
        if bad is not None:
            return final_farkas(bad)

        # reduced system on the unfixed variables, compactly renumbered
        live = sorted(
            {
                j
                for s in srows
                for j in s.coeffs
                if j not in fixed
            }
        )
        renum = {j: i for i, j in enumerate(live)}
        red_rows: list[simplex.Row] = []
        red_cert: list[dict[int, Fraction]] = []
        for pos, s in enumerate(srows):
            coeffs: dict[int, Fraction] = {}
            rhs = s.rhs
            cert = {pos: Fraction(1)}
            for j, c in s.coeffs.items():
                if j in fixed:
                    val, vcert = fixed[j]
                    rhs -= c * val
                    for r, w in vcert.items():
                        cert[r] = cert.get(r, Fraction(0)) - c * w
                else:
                    coeffs[renum[j]] = coeffs.get(renum[j], Fraction(0)) + c
            coeffs = {j: c for j, c in coeffs.items() if c}
            if coeffs:
                red_rows.append(simplex.Row(coeffs, s.sense, rhs))
                red_cert.append(cert)

        res = simplex.solve_feasibility(len(live), red_rows)
        pivots += res.pivots
        if not res.feasible:
            assert res.farkas is not None
            y_orig: dict[int, Fraction] = {}
            for yv, cert in zip(res.farkas, red_cert):
                if yv:
                    for r, w in cert.items():
                        y_orig[r] = y_orig.get(r, Fraction(0)) + yv * w
            return final_farkas(y_orig)

        assert res.model is not None
        values = [Fraction(0)] * nvars
        for j, (val, _) in fixed.items():
            values[j] = val
        for j, idx in renum.items():
            values[j] = res.model[idx]

        violated = []
        still = []
        for row in pending:
            s = system.row_to_simplex(row)
            lhs = sum(c * values[j] for j, c in s.coeffs.items())
            ok = lhs >= s.rhs if s.sense == ">=" else lhs == s.rhs
            if not ok:
                violated.append((row, s, s.rhs - lhs))
            else:
                still.append(row)
        if not violated:
            model = {key: values[idx] for key, idx in system.var_index.items()}
            return LpOutcome(True, model, None, len(active), pivots)
        violated.sort(key=lambda t: -t[2])
        batch = violated[:_BATCH]
        for row, s, _ in batch:
            active.append(row)
            srows.append(s)
        still.extend(row for row, _, _ in violated[_BATCH:])
        pending = still


def matroid_from_rank_fn(phi: PolymatroidFn) -> Optional[Matroid]:
    """Reconstruct a matroid whose rank function is phi, or None."""
    if not phi.is_integral():
        return None
    rank = int(phi((1 << phi.n) - 1))
    bases = []
    for x in range(1 << phi.n):
        if x.bit_count() == rank and phi(x) == rank:
            bases.append(x)
    if not bases:
        return None
    try:
        m = core.from_bases(phi.ground, rank, bases)
    except MatroidError:
        return None
    if all(m.rank(x) == phi(x) for x in range(1 << phi.n)):
        return m
    return None


def _tensor_model_values(
    phi1: PolymatroidFn, phi2: PolymatroidFn
) -> Optional[Matroid]:
    """An explicit tensor product of the two rank functions when both are
    matroidal and a quick bounded search finds one; its rank function is an
    exact feasibility witness for any restricted LP."""
    m1 = matroid_from_rank_fn(phi1)
    m2 = matroid_from_rank_fn(phi2)
    if m1 is None or m2 is None:
        return None
    if m1.n * m2.n > core.MAX_GROUND:
        return None
    from .tensorprod import SearchBudget, enumerate_tensor_products

    try:
        res = enumerate_tensor_products(m1, m2, SearchBudget(nodes=20000, seconds=10))
    except MatroidError:
        return None
    if res.matroids:
        return res.matroids[0]
    return None


def lp_tensor_feasible(
    phi1: PolymatroidFn, phi2: PolymatroidFn, lattice: SubsetLattice
) -> LpOutcome:
    """Feasibility of a tensor product of phi1 and phi2 restricted to the
    lattice: monotone on comparable pairs, submodular on crossing pairs
    with meet and join in the lattice, and exactly multiplicative on the
    tagged rectangles.  Infeasibility soundly proves the tensor set empty.
    """
    pg = lattice.base
    if pg.left.n != phi1.n or pg.right.n != phi2.n:
        raise MatroidError("lattice base does not match the factor grounds")
    system = _LpSystem()
    base_rows: list[LpRow] = []
    for mask in lattice.members:
        tag = lattice.rectangle_tags.get(mask)
        if tag is not None:
            x1, x2 = tag
            v1, v2 = phi1(x1), phi2(x2)
            base_rows.append(
                LpRow(
                    "rect",
                    (mask,),
                    v1 * v2,
                    1,
                    factor_sets=(x1, x2),
                    factor_values=(v1, v2),
                )
            )
    mono, submod = _candidate_rows(lattice.members, 1)
    for key in lattice.members:
        system.var(1, key)
    witness = _tensor_model_values(phi1, phi2)
    if witness is not None:
        model = {(1, mask): Fraction(witness.rank(mask)) for mask in lattice.members}
        out = _check_model(system, model, base_rows + mono + submod)
        if out is not None:
            return out
    return _solve_lazy(system, base_rows, mono + submod)


def lp_chain_feasible(
    phi: PolymatroidFn,
    levels: int,
    u23: PolymatroidFn,
    lattices: Optional[Sequence[SubsetLattice]] = None,
    dense_cap: int = DEFAULT_LATTICE_CAP,
) -> LpOutcome:
    """Feasibility of the k-level iterated tensor system with the level-0
    values pinned exactly to phi.

    Level-i variables live on a lattice over S_{i-1} x T (dense when the
    power set fits under the cap); the inter-level rows force rectangle
    values x^i_{A x B} = x^{i-1}_A * u23(B).
    """
    if levels < 1:
        raise MatroidError("need at least one level")
    system = _LpSystem()
    base_rows: list[LpRow] = []
    lazy: list[LpRow] = []
    level_members: dict[int, list[int]] = {}
    prev_members: list[int] = list(range(1 << phi.n))
    prev_level_values: Optional[PolymatroidFn] = phi
    prev_ground = phi.ground
    for level in range(1, levels + 1):
        pg = ProductGround(prev_ground, u23.ground)
        if lattices is not None and len(lattices) >= level and lattices[level - 1] is not None:
            lat = lattices[level - 1]
            if lat.base.left.n != prev_ground.n or lat.base.right.n != u23.n:
                raise MatroidError(f"level-{level} lattice has the wrong base")
            members = list(lat.members)
            tags = lat.rectangle_tags
        else:
            if 1 << pg.n > dense_cap:
                raise MatroidError(
                    f"level {level} ground of size {pg.n} needs an explicit lattice"
                )
            members = list(range(1 << pg.n))
            tags = {m: _rect_tag(pg, m) for m in members}
            tags = {m: t for m, t in tags.items() if t is not None}
        for mask in members:
            system.var(level, mask)
        for mask in members:
            tag = tags.get(mask)
            if tag is None:
                continue
            x1, x2 = tag
            if x1 not in set(prev_members):
                continue
            if prev_level_values is not None:
                v = prev_level_values(x1) * u23(x2)
                base_rows.append(
                    LpRow("rect", (mask,), v, level, factor_sets=(x1, x2),
                          factor_values=(prev_level_values(x1), u23(x2)))
                )
            else:
                base_rows.append(
                    LpRow(
                        "rect",
                        (mask,),
                        Fraction(0),
                        level,
                        factor_sets=(x1, x2),
                        lower_coeff=u23(x2),
                    )
                )
        mono, submod = _candidate_rows(members, level)
        lazy.extend(mono)
        lazy.extend(submod)
        level_members[level] = members
        prev_members = members
        prev_level_values = None
        prev_ground = pg.ground()

    witness_model = _chain_model_oracle(phi, levels, u23, level_members)
    if witness_model is not None:
        out = _check_model(system, witness_model, base_rows + lazy)
        if out is not None:
            return out
    return _solve_lazy(system, base_rows, lazy)


def _chain_model_oracle(
    phi: PolymatroidFn,
    levels: int,
    u23: PolymatroidFn,
    level_members: dict[int, list[int]],
) -> Optional[dict]:
    """Model candidate from explicit iterated tensor products, when the
    inputs are matroidal and bounded search finds every level."""
    from .tensorprod import SearchBudget, enumerate_tensor_products

    cur = matroid_from_rank_fn(phi)
    mu = matroid_from_rank_fn(u23)
    if cur is None or mu is None:
        return None
    model: dict = {}
    for level in range(1, levels + 1):
        if cur.n * mu.n > core.MAX_GROUND:
            return None
        try:
            res = enumerate_tensor_products(cur, mu, SearchBudget(nodes=20000, seconds=10))
        except MatroidError:
            return None
        if not res.matroids:
            return None
        cur = res.matroids[0]
        for mask in level_members[level]:
            model[(level, mask)] = Fraction(cur.rank(mask))
    return model

"""Exhaustive oracle for limit-series vanishing configurations.

The enumeration is an independent check on the explicit generators: it
performs a depth-first sweep over all vanishing tables, bundle splits and
node matchings of the balanced ansatz (every rank-two bundle a sum of two
degree-``(g-1)`` line bundles with canonical determinant, twist
``a = g - 1``; rank one with degree ``2g - 2`` bundles and twist
``2g - 2``) and reports every configuration satisfying all limit-series
conditions.

Within the ansatz, a table row on a summand of degree ``ds`` has
``u + v = ds - 1`` (the generic branch), or ``u + v = ds`` for the
distinguished section of a pinned summand; so a table is a choice of
``u``-values plus a choice of which rows are distinguished, and the
distinguished rows determine the bundle outright (two of them must sum to
the canonical coefficients; a single one names a summand whose conjugate
is forced; none leaves a free line-bundle choice).  Node matchings can be
fixed to the identity on canonically sorted tables: if any bijection
satisfies the node condition, the pairing of decreasing ``v`` against
increasing ``u`` does.

Pruning is twofold and sound: a row whose ``u`` cannot reach
``a - v_prev`` dies immediately, and a potential function cuts branches
whose remaining components cannot absorb the vanishing still required
(each component turns a ``v``-sum ``f`` into at most
``f + k*(ds - 1) + rank - k*a`` while the final component still needs a
valid nonnegative ``v``-multiset).  Counts are reproducible bit for bit
across traversal order and worker counts; reports claim combinatorial
solutions only.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .chain import ChainCurve, Split, SplitLineBundle, canonical_restriction
from .series import (
    Component,
    LimitSeries,
    NodeGluing,
    VanishingTable,
    derive_forced_pairs,
    serialize_series,
    validate_all,
)

DEFAULT_CAP_RANK2 = 8
DEFAULT_CAP_RANK1 = 10


class SearchCapError(ValueError):
    pass


@dataclass(frozen=True)
class SearchSpace:
    """The balanced-split ansatz at one (g, rank, k), optionally a prefix."""

    g: int
    rank: int
    k: int
    prefix_length: int | None = None

    def __post_init__(self):
        if self.rank not in (1, 2):
            raise ValueError(f"rank must be 1 or 2, got {self.rank}")
        if self.g < 2 or self.k < 1:
            raise ValueError(f"need g >= 2 and k >= 1, got g={self.g}, k={self.k}")
        if self.prefix_length is not None and not 1 <= self.prefix_length <= self.g:
            raise ValueError(f"prefix length {self.prefix_length} out of range")

    @property
    def d(self) -> int:
        return 2 * self.g - 2

    @property
    def a(self) -> int:
        return self.g - 1 if self.rank == 2 else 2 * self.g - 2

    @property
    def summand_degree(self) -> int:
        return self.g - 1 if self.rank == 2 else 2 * self.g - 2

    @property
    def length(self) -> int:
        return self.prefix_length if self.prefix_length is not None else self.g

    @property
    def capacity_slack(self) -> int:
        # max growth of sum(v) from one component to the next
        return self.k * (self.summand_degree - 1) + self.rank - self.k * self.a

    @property
    def min_terminal_v(self) -> int:
        return sum(j // self.rank for j in range(self.k))


@dataclass(frozen=True)
class SearchReport:
    space: SearchSpace
    count: int
    solutions: tuple[str, ...]
    truncated: bool
    nodes_expanded: int
    pruned: tuple[tuple[str, int], ...]
    wall_time: float

    def summary_lines(self) -> list[str]:
        mode = "prefix" if self.space.prefix_length is not None else "full chain"
        lines = [
            f"combinatorial solutions: {self.count}"
            + (" (solution list truncated)" if self.truncated else ""),
            f"search mode: {mode}, components {self.space.length}, "
            f"rank {self.space.rank}, k {self.space.k}, g {self.space.g}",
            f"tables expanded: {self.nodes_expanded}",
        ]
        lines += [f"pruned ({name}): {n}" for name, n in self.pruned]
        lines.append(f"wall time: {self.wall_time:.3f}s")
        return lines


# ---------------------------------------------------------------------------
# canonical forms


def canonical_form(s: LimitSeries) -> LimitSeries:
    """Normalize summand order, row order, matchings and representatives.

    Summands are sorted lexicographically by (p, q); rows by (u, -v);
    matchings and forced-pair tokens are rewritten accordingly; free
    components get the standard representative coefficients.  Idempotent.
    """
    k = s.sections
    comps: list[Component] = []
    orders: list[list[int]] = []
    swaps: list[bool] = []
    for i, c in enumerate(s.components, start=1):
        bundle = c.bundle
        swap = False
        if isinstance(bundle, Split):
            if bundle.second.pair < bundle.first.pair:
                bundle = bundle.swapped()
                swap = True
            if c.is_generic:
                rep = SplitLineBundle(i - 1, s.genus - i)
                bundle = Split(rep, rep)
        rows = c.table.rows
        order = sorted(range(k), key=lambda j: (rows[j][0], -rows[j][1], j))
        comps.append(
            Component(bundle, VanishingTable([rows[j] for j in order]), c.moduli_freedom)
        )
        orders.append(order)
        swaps.append(swap)

    def rename(token: str, swapped: bool) -> str:
        if swapped and token in ("1", "2"):
            return "2" if token == "1" else "1"
        return token

    nodes: list[NodeGluing] = []
    for n, node in enumerate(s.nodes):
        inv_right = {old: new for new, old in enumerate(orders[n + 1])}
        matching = tuple(
            inv_right[node.matching[orders[n][j]] - 1] + 1 for j in range(k)
        )
        forced = tuple(
            sorted((rename(a, swaps[n]), rename(b, swaps[n + 1])) for a, b in node.forced_pairs)
        )
        nodes.append(NodeGluing(matching, forced))
    return replace(s, components=tuple(comps), nodes=tuple(nodes))


def canonical_key(s: LimitSeries) -> str:
    """Byte-stable membership key: the serialized canonical form."""
    return serialize_series(canonical_form(s))


def prefix_key(s: LimitSeries, length: int) -> str:
    """Membership key for the first ``length`` components of a series."""
    c = canonical_form(s)
    pseudo = LimitSeries(
        chain=ChainCurve(c.genus, length),
        rank=c.rank,
        sections=c.sections,
        degree=c.degree,
        twist=c.twist,
        components=c.components[:length],
        nodes=c.nodes[: length - 1],
    )
    return f"prefix {length}\n" + serialize_series(pseudo)


# ---------------------------------------------------------------------------
# enumeration

_CfgT = tuple  # (bundle, rows, moduli_freedom)


def _min_vsum_needed(space: SearchSpace, i: int) -> int:
    """Least sum(v) component ``i`` may carry and still finish the chain.

    Each step changes sum(v) by at most ``capacity_slack`` and the last
    component still needs a valid nonnegative v-multiset.
    """
    return space.min_terminal_v - (space.length - i) * space.capacity_slack


def _table_options(
    space: SearchSpace, i: int, lbs: tuple[int, ...], min_vsum: int = 0, stats=None
):
    """All admissible (bundle, rows, moduli) for component ``i``, row-sorted.

    ``min_vsum`` prunes row prefixes that cannot reach the required total
    vanishing at Q (subsequent rows never exceed the current ``v``).
    """
    k, rank = space.k, space.rank
    ds = space.summand_degree
    canon = canonical_restriction(i, space.g)
    out: list[_CfgT] = []
    rows: list[tuple[int, int]] = []
    if k * (ds - 1) + rank - sum(lbs) < min_vsum:
        if stats is not None:
            stats["pruned_capacity"] += 1
        return out
    # rows after the current one carry at most v - t//rank at position t
    decay = [sum(t // rank for t in range(1, rem)) for rem in range(k + 1)]

    def emit():
        slots = [(u, v) for u, v in rows if u + v == ds]
        if len(slots) == 2:
            (p1, q1), (p2, q2) = slots
            if (p1 + p2, q1 + q2) != canon:
                return
            bundle = Split(SplitLineBundle(p1, q1), SplitLineBundle(p2, q2))
            moduli = 0
        elif len(slots) == 1:
            (p, q) = slots[0]
            if rank == 1:
                bundle = SplitLineBundle(p, q)
            else:
                cp, cq = canon[0] - p, canon[1] - q
                if cp < 0 or cq < 0:
                    return
                pair = sorted([(p, q), (cp, cq)])
                bundle = Split(SplitLineBundle(*pair[0]), SplitLineBundle(*pair[1]))
            moduli = 0
        else:
            if rank == 1:
                bundle = SplitLineBundle(*canon)
            else:
                rep = SplitLineBundle(i - 1, space.g - i)
                bundle = Split(rep, rep)
            moduli = 1
        out.append((bundle, tuple(rows), moduli))

    def rec(j: int, slots_used: int, vsum: int):
        if j == k:
            emit()
            return
        remaining = k - j
        prev_v = rows[-1][1] if rows else None
        base_lo = lbs[j]
        if rows:
            base_lo = max(base_lo, rows[-1][0] + (1 if rank == 1 else 0))
        deficit = min_vsum - vsum + decay[remaining]
        vmin = -(-deficit // remaining) if deficit > 0 else 0
        for extra in (0, 1):  # 0: generic branch, 1: distinguished row
            if extra and slots_used >= rank:
                continue
            s = ds - 1 + extra
            lo = base_lo
            if prev_v is not None and s - prev_v > lo:
                lo = s - prev_v  # keeps v nonincreasing
            hi = s - vmin  # capacity: later rows can never exceed this v
            if hi < lo:
                if vmin > 0 and stats is not None:
                    stats["pruned_capacity"] += 1
                continue
            for u in range(lo, hi + 1):
                v = s - u
                # sorted rows keep equal values adjacent, so multiplicity
                # checks only look at the last two entries
                if len(rows) >= 2 and rows[-1][0] == u and rows[-2][0] == u:
                    continue
                if prev_v is not None and v == prev_v:
                    if rank == 1 or (len(rows) >= 2 and rows[-2][1] == v):
                        continue
                rows.append((u, v))
                rec(j + 1, slots_used + extra, vsum + v)
                rows.pop()

    rec(0, 0, 0)
    return out


def _solution_series(space: SearchSpace, configs: list[_CfgT]) -> LimitSeries:
    comps = tuple(Component(b, VanishingTable(r), m) for b, r, m in configs)
    identity = tuple(range(1, space.k + 1))
    nodes = tuple(
        NodeGluing(identity, derive_forced_pairs(comps[n], comps[n + 1], identity, space.a))
        for n in range(len(comps) - 1)
    )
    return LimitSeries(
        chain=ChainCurve(space.g, space.length),
        rank=space.rank,
        sections=space.k,
        degree=space.d,
        twist=space.a,
        components=comps,
        nodes=nodes,
    )


def _solution_key(space: SearchSpace, configs: list[_CfgT]) -> str:
    series = _solution_series(space, configs)
    if space.prefix_length is None:
        report = validate_all(series)
        if not report.all_passed:
            raise RuntimeError(
                "oracle defect: enumerated configuration fails validation: "
                + "; ".join(c.name for c in report.failures())
            )
        return canonical_key(series)
    return f"prefix {space.prefix_length}\n" + serialize_series(canonical_form(series))


def _search_from(
    space: SearchSpace,
    configs: list[_CfgT],
    prev_vs: tuple[int, ...] | None,
    slow: bool,
    stats: dict,
    solutions: list[str],
):
    idx = len(configs) + 1
    if idx > space.length:
        stats["count"] += 1
        solutions.append(_solution_key(space, configs))
        return
    zeros = (0,) * space.k
    lbs = (
        zeros
        if slow or prev_vs is None
        else tuple(max(0, space.a - v) for v in prev_vs)
    )
    min_vsum = 0 if slow else _min_vsum_needed(space, idx)
    identity = tuple(range(1, space.k + 1))
    prev_component = (
        Component(configs[-1][0], VanishingTable(configs[-1][1]), configs[-1][2])
        if configs
        else None
    )
    for cfg in _table_options(space, idx, lbs, min_vsum, stats):
        rows = cfg[1]
        if slow and prev_vs is not None and any(
            prev_vs[j] + rows[j][0] < space.a for j in range(space.k)
        ):
            continue
        if prev_component is not None:
            # a configuration whose pinned directions cannot be matched by
            # any single fiber isomorphism is not realizable; reject it
            try:
                derive_forced_pairs(
                    prev_component,
                    Component(cfg[0], VanishingTable(rows), cfg[2]),
                    identity,
                    space.a,
                )
            except ValueError:
                stats["direction_conflict"] += 1
                continue
        stats["expanded"] += 1
        _search_from(
            space, configs + [cfg], tuple(v for _, v in rows), slow, stats, solutions
        )


def _enumerate_task(args) -> tuple[int, list[str], int, int, int]:
    space, first, slow = args
    stats = {"count": 0, "expanded": 1, "pruned_capacity": 0, "direction_conflict": 0}
    solutions: list[str] = []
    _search_from(space, [first], tuple(v for _, v in first[1]), slow, stats, solutions)
    return (
        stats["count"],
        solutions,
        stats["expanded"],
        stats["pruned_capacity"],
        stats["direction_conflict"],
    )


def _first_options(space: SearchSpace, disable_pruning: bool) -> list[_CfgT]:
    min_vsum = 0 if disable_pruning else _min_vsum_needed(space, 1)
    return _table_options(space, 1, (0,) * space.k, min_vsum)


def enumerate_series(
    space: SearchSpace,
    limit: int | None = None,
    workers: int = 1,
    disable_pruning: bool = False,
    cap: int | None = None,
) -> SearchReport:
    """Exhaustive depth-first enumeration of the ansatz.

    ``limit`` truncates the stored solution list only; the count is always
    exact.  ``workers`` splits the first component's configurations over a
    process pool; results are merged in a fixed order, so reports are
    identical for any worker count.  ``disable_pruning`` replaces the
    lower-bound and capacity prunes by post-hoc rejection (slow mode, for
    prune-soundness checks).
    """
    effective_cap = cap if cap is not None else (
        DEFAULT_CAP_RANK2 if space.rank == 2 else DEFAULT_CAP_RANK1
    )
    if space.g > effective_cap:
        raise SearchCapError(
            f"g={space.g} exceeds the search cap {effective_cap}; pass cap= "
            f"(or set ELLCHAIN_SEARCH_CAP) to raise it explicitly"
        )
    start = time.perf_counter()
    first_options = _first_options(space, disable_pruning)
    if workers > 1:
        tasks = [(space, cfg, disable_pruning) for cfg in first_options]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_enumerate_task, tasks))
    else:
        results = [
            _enumerate_task((space, cfg, disable_pruning)) for cfg in first_options
        ]
    count = sum(r[0] for r in results)
    solutions = sorted(key for r in results for key in r[1])
    expanded = sum(r[2] for r in results)
    pruned_capacity = sum(r[3] for r in results)
    conflicts = sum(r[4] for r in results)
    truncated = limit is not None and len(solutions) > limit
    if truncated:
        solutions = solutions[:limit]
    return SearchReport(
        space=space,
        count=count,
        solutions=tuple(solutions),
        truncated=truncated,
        nodes_expanded=expanded,
        pruned=(("capacity", pruned_capacity), ("direction-conflict", conflicts)),
        wall_time=time.perf_counter() - start,
    )

"""Limit linear series data on elliptic chains, and its validators.

A limit linear series of rank ``r``, dimension ``k`` and degree ``d`` on a
chain of ``M`` curves consists of, per component, a bundle and a
``k``-dimensional space of sections; per node, an identification of the
projectivized fibers; and a global twist integer ``a``, subject to

* (a) ``sum(d_i) - r*(M-1)*a == d``,
* (b) matched vanishing orders across each node satisfy ``v + u >= a``,
* (c) sections twisted down by ``a`` at either marked point are determined
  by their values at the nodes.

Section spaces are tracked purely by vanishing orders.  On an elliptic
curve, a ``k``-dimensional space of sections of a degree-``d`` line bundle
can be pinned down by ``k`` distinct vanishing pairs ``(u, v)`` at two
generic points with ``u + v = d - 1``; the only way to reach ``u + v = d``
is the distinguished section of ``O(u*P + v*Q)`` itself, and only when the
bundle is exactly that class.  For rank two every vanishing value may
appear twice.  This module encodes that calculus exactly:

* ``admissible_table`` charges each table row either to the generic
  ``d - 1`` budget of a summand or to the single ``sum = d`` slot that a
  pinned summand provides;
* the direction-pinning analysis (``pinned_direction``) decides when a
  row's section has a forced direction in the fiber at a node, which is
  what turns some gluings from four free parameters into three or two.

A row ``(u, v)`` on a summand of degree ``d_s`` with ``u + v = d_s - 1``
has a one-dimensional section space in that summand, but its divisor is
``u*P + v*Q + R`` with ``R`` a point determined by the summand class.  If
the summand equals ``O(u*P + (v+1)*Q)`` then ``R = Q`` and the section
actually vanishes to order ``v + 1`` at ``Q``: that summand is dead at
``Q`` for this row, and the row's direction at ``Q`` is pinned to the
other summand.  Rows with ``u + v = d_s`` are the distinguished summand
sections and are pinned at both points (unless both summands coincide, in
which case a two-dimensional space realizes every direction and nothing
is pinned).  Generic summands (free Jacobian choices) never pin.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import (
    ChainCurve,
    Indecomposable,
    Split,
    SplitLineBundle,
    canonical_restriction,
    determinant,
)

BundleLike = Split | Indecomposable | SplitLineBundle

# Direction tokens used in forced pairs: split summands by position, or the
# marked direction of an indecomposable bundle.
DIR_FIRST = "1"
DIR_SECOND = "2"
DIR_MARKED = "m"


@dataclass(frozen=True)
class VanishingTable:
    """Vanishing orders ``(u_j, v_j)`` at ``(P, Q)`` of a basis of sections.

    Rows are listed with ``u`` nondecreasing and ``v`` nonincreasing.  The
    constructor is permissive; monotonicity, multiplicity and
    admissibility are the validators' business, so that corrupted tables
    remain representable and diagnosable.
    """

    rows: tuple[tuple[int, int], ...]

    def __init__(self, rows):
        object.__setattr__(self, "rows", tuple((int(u), int(v)) for u, v in rows))

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def us(self) -> tuple[int, ...]:
        return tuple(u for u, _ in self.rows)

    @property
    def vs(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.rows)


@dataclass(frozen=True)
class NodeGluing:
    """Gluing data at one node.

    ``matching`` sends section index ``t`` of the left component to
    ``matching[t-1]`` of the right component.  ``forced_pairs`` lists the
    distinct direction identifications the projectivized fiber isomorphism
    must respect, each side named by a direction token.
    """

    matching: tuple[int, ...]
    forced_pairs: tuple[tuple[str, str], ...] = ()

    @property
    def free_parameter_count(self) -> int:
        return 4 - len(self.forced_pairs)


@dataclass(frozen=True)
class Component:
    """One component's bundle, vanishing table and moduli freedom.

    ``moduli_freedom`` is 1 when the bundle involves a free line-bundle
    choice on the Jacobian (the stored coefficients are then only a
    serialization representative and the summands are treated as generic);
    otherwise 0.
    """

    bundle: BundleLike
    table: VanishingTable
    moduli_freedom: int = 0

    @property
    def is_generic(self) -> bool:
        return self.moduli_freedom == 1

    @property
    def degree(self) -> int:
        return self.bundle.degree


@dataclass(frozen=True)
class LimitSeries:
    """A limit linear series on an elliptic chain."""

    chain: ChainCurve
    rank: int
    sections: int
    degree: int
    twist: int
    components: tuple[Component, ...]
    nodes: tuple[NodeGluing, ...]

    @property
    def genus(self) -> int:
        return self.chain.genus


# ---------------------------------------------------------------------------
# admissibility


def _summand_pairs(bundle: BundleLike) -> list[tuple[int, int]]:
    if isinstance(bundle, Split):
        return [bundle.first.pair, bundle.second.pair]
    if isinstance(bundle, SplitLineBundle):
        return [bundle.pair]
    raise TypeError(f"no summands on {type(bundle).__name__}")


def admissibility_failures(
    bundle: BundleLike, table: VanishingTable, generic: bool = False
) -> list[str]:
    """Diagnostics for every table row that cannot be charged to the bundle.

    Split and rank-one bundles: a row is chargeable to a summand of degree
    ``d_s`` when ``u + v == d_s - 1``, or when ``u + v == d_s`` and
    ``(u, v)`` equals that summand's coefficients exactly; each summand
    occurrence absorbs at most one such ``sum = d_s`` row.  Generic
    summands admit only the ``d_s - 1`` branch.

    Indecomposable bundles of degree ``D``: a row is chargeable when
    ``2*(u + v) <= D - 2`` (the twisted-down bundle still has at least a
    two-dimensional space of sections), or once when ``(u, v)`` is the
    marked vanishing pair of the distinguished section.
    """
    failures: list[str] = []
    if isinstance(bundle, Indecomposable):
        marked_used = False
        for j, (u, v) in enumerate(table.rows, start=1):
            if 2 * (u + v) <= bundle.degree - 2:
                continue
            if (u, v) == (bundle.marked_u, bundle.marked_v) and not marked_used:
                marked_used = True
                continue
            failures.append(
                f"row {j} ({u},{v}) not chargeable to indecomposable bundle "
                f"(degree {bundle.degree}, marked ({bundle.marked_u},{bundle.marked_v}))"
            )
        return failures

    summands = _summand_pairs(bundle)
    slot_needed: list[tuple[int, tuple[int, int]]] = []
    for j, (u, v) in enumerate(table.rows, start=1):
        if any(u + v == p + q - 1 for p, q in summands):
            continue
        if not generic and any((u, v) == (p, q) and u + v == p + q for p, q in summands):
            slot_needed.append((j, (u, v)))
            continue
        failures.append(f"row {j} ({u},{v}) not chargeable to any summand")
    for pair in sorted(set(pv for _, pv in slot_needed)):
        needed = sum(1 for _, pv in slot_needed if pv == pair)
        available = summands.count(pair)
        if needed > available:
            rows = [j for j, pv in slot_needed if pv == pair]
            failures.append(
                f"rows {rows} all require the distinguished section of summand {pair}, "
                f"which occurs {available} time(s)"
            )
    return failures


def admissible_table(
    bundle: BundleLike, table: VanishingTable, generic: bool = False
) -> bool:
    """Whether every row of ``table`` is realizable by sections of ``bundle``."""
    return not admissibility_failures(bundle, table, generic)


# ---------------------------------------------------------------------------
# direction pinning and forced pairs


def pinned_direction(component: Component, row_index: int, side: str) -> str | None:
    """Direction token forced on a row's section at ``side`` ("P" or "Q").

    Returns ``None`` when the row's section space realizes more than one
    direction in the fiber (nothing forced).  Rank-one components never
    pin: their fibers are lines and carry no direction moduli.
    """
    bundle = component.bundle
    u, v = component.table.rows[row_index - 1]
    if isinstance(bundle, SplitLineBundle):
        return None
    if isinstance(bundle, Indecomposable):
        marked = (bundle.marked_u, bundle.marked_v)
        if (u, v) == marked:
            return DIR_MARKED
        # one step below the marked twist the section space is a pencil
        # through the marked line, and leading values at the marked side
        # land on that line
        shifted = (u + 1, v) if side == "P" else (u, v + 1)
        if shifted == marked and 2 * (bundle.marked_u + bundle.marked_v) == bundle.degree:
            return DIR_MARKED
        return None
    if component.is_generic:
        return None
    alive: list[str] = []
    for token, summand in ((DIR_FIRST, bundle.first), (DIR_SECOND, bundle.second)):
        p, q = summand.pair
        if u + v > p + q:
            continue
        if u + v == p + q:
            if (u, v) == (p, q):
                alive.append(token)
            continue
        if u + v == p + q - 1:
            # one-dimensional space in this summand; dead at the side where
            # the residual point of its divisor sits
            shifted = (u + 1, v) if side == "P" else (u, v + 1)
            if shifted != (p, q):
                alive.append(token)
            continue
        # amply twisted: the summand realizes the exact order at either side
        alive.append(token)
    # identical summands always live or die together, so alive has 0 or 2
    # entries there and every realized direction comes in a pencil
    if len(alive) == 1:
        return alive[0]
    return None


def derive_forced_pairs(
    left: Component, right: Component, matching: tuple[int, ...], twist: int
) -> tuple[tuple[str, str], ...]:
    """Distinct direction identifications forced at a node.

    A matched row pair constrains the gluing only when it meets the node
    condition with equality (with slack, one side vanishes deeper than
    required and nothing must match); it then forces the gluing exactly
    when its section has a pinned direction on both sides.  Several rows
    may force the same identification; the result is deduplicated and
    checked for consistency (a direction cannot be forced onto two
    different images).
    """
    pairs: list[tuple[str, str]] = []
    for t, t2 in enumerate(matching, start=1):
        if left.table.rows[t - 1][1] + right.table.rows[t2 - 1][0] != twist:
            continue
        dl = pinned_direction(left, t, "Q")
        dr = pinned_direction(right, t2, "P")
        if dl is None or dr is None:
            continue
        if (dl, dr) in pairs:
            continue
        for el, er in pairs:
            if el == dl or er == dr:
                raise ValueError(
                    f"inconsistent forced directions: {dl}->{dr} conflicts with {el}->{er}"
                )
        pairs.append((dl, dr))
    if len(pairs) > 2:
        raise ValueError(f"more than two forced direction pairs: {pairs}")
    return tuple(pairs)


# ---------------------------------------------------------------------------
# validators


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    diagnostics: tuple[str, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]
    flags: tuple[str, ...] = ()

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name}")
            for d in c.diagnostics:
                lines.append(f"      {d}")
        for f in self.flags:
            lines.append(f"note  {f}")
        return lines


def validate_degree_condition(s: LimitSeries) -> bool:
    """Condition (a): ``sum(d_i) - r*(M-1)*a == d``."""
    total = sum(c.degree for c in s.components)
    m = len(s.components)
    return total - s.rank * (m - 1) * s.twist == s.degree


def _node_condition_failures(s: LimitSeries) -> list[str]:
    failures = []
    k = s.sections
    for n, node in enumerate(s.nodes, start=1):
        if sorted(node.matching) != list(range(1, k + 1)):
            failures.append(f"node {n}: matching {node.matching} is not a bijection")
            continue
        left = s.components[n - 1].table
        right = s.components[n].table
        for t, t2 in enumerate(node.matching, start=1):
            v = left.rows[t - 1][1]
            u = right.rows[t2 - 1][0]
            if v + u < s.twist:
                failures.append(
                    f"node {n}: rows {t}->{t2} have v+u = {v}+{u} < twist {s.twist}"
                )
    return failures


def validate_node_condition(s: LimitSeries) -> bool:
    """Condition (b): matched vanishing orders satisfy ``v + u >= a``."""
    return not _node_condition_failures(s)


def validate_determinacy_condition(s: LimitSeries) -> bool:
    """Condition (c), by the sufficient degree criterion.

    A section of a line bundle of degree at most ``a``, twisted down by
    ``a`` at a point, has nonpositive degree and is determined by its
    value there; so split summands of degree ``<= a`` suffice, and an
    indecomposable bundle of degree ``<= 2a`` likewise.
    """
    for c in s.components:
        if isinstance(c.bundle, Indecomposable):
            if c.bundle.degree > 2 * s.twist:
                return False
        else:
            if any(p + q > s.twist for p, q in _summand_pairs(c.bundle)):
                return False
    return True


def validate_canonical_determinant(s: LimitSeries) -> bool:
    """Every component determinant equals the canonical restriction.

    Indecomposable components are checked on degree only (their class is
    not representable); ``validate_all`` flags that weaker check.
    """
    g = s.genus
    for i, c in enumerate(s.components, start=1):
        want = canonical_restriction(i, g)
        if isinstance(c.bundle, Indecomposable):
            if c.bundle.degree != want[0] + want[1]:
                return False
        elif isinstance(c.bundle, SplitLineBundle):
            if c.bundle.pair != want:
                return False
        else:
            if determinant(c.bundle) != want:
                return False
    return True


def _structure_failures(s: LimitSeries) -> list[str]:
    failures = []
    if s.twist < 1:
        failures.append(f"twist {s.twist} must be a positive integer")
    if s.rank not in (1, 2):
        failures.append(f"rank {s.rank} unsupported")
    if len(s.components) != s.chain.length:
        failures.append(
            f"{len(s.components)} components on a chain of length {s.chain.length}"
        )
    if len(s.nodes) != s.chain.length - 1:
        failures.append(f"{len(s.nodes)} nodes on a chain of length {s.chain.length}")
    for i, c in enumerate(s.components, start=1):
        if len(c.table) != s.sections:
            failures.append(
                f"component {i}: {len(c.table)} rows, expected {s.sections}"
            )
        if c.moduli_freedom not in (0, 1):
            failures.append(f"component {i}: moduli_freedom {c.moduli_freedom}")
        if s.rank == 1 and not isinstance(c.bundle, SplitLineBundle):
            failures.append(f"component {i}: rank-1 series needs line bundles")
        if s.rank == 2 and isinstance(c.bundle, SplitLineBundle):
            failures.append(f"component {i}: rank-2 series needs rank-two bundles")
        if isinstance(c.bundle, Indecomposable) and c.moduli_freedom:
            failures.append(f"component {i}: indecomposable bundles are never generic")
        for j, (u, v) in enumerate(c.table.rows, start=1):
            if u < 0 or v < 0:
                failures.append(f"component {i} row {j}: negative vanishing ({u},{v})")
    for n, node in enumerate(s.nodes, start=1):
        if len(node.forced_pairs) > 2:
            failures.append(f"node {n}: {len(node.forced_pairs)} forced pairs")
    return failures


def _monotonicity_failures(s: LimitSeries) -> list[str]:
    failures = []
    for i, c in enumerate(s.components, start=1):
        us, vs = c.table.us, c.table.vs
        if any(us[j] > us[j + 1] for j in range(len(us) - 1)):
            failures.append(f"component {i}: u not nondecreasing {us}")
        if any(vs[j] < vs[j + 1] for j in range(len(vs) - 1)):
            failures.append(f"component {i}: v not nonincreasing {vs}")
    return failures


def _multiplicity_failures(s: LimitSeries) -> list[str]:
    failures = []
    for i, c in enumerate(s.components, start=1):
        for label, values in (("u", c.table.us), ("v", c.table.vs)):
            for value in sorted(set(values)):
                count = values.count(value)
                if count > s.rank:
                    failures.append(
                        f"component {i}: {label}-value {value} occurs {count} times "
                        f"(rank {s.rank} allows {s.rank})"
                    )
    return failures


def validate_all(s: LimitSeries) -> ValidationReport:
    """Run every validator and collect a per-check report."""
    checks = []
    flags: list[str] = []

    structure = _structure_failures(s)
    checks.append(CheckResult("structure", not structure, tuple(structure)))
    mono = _monotonicity_failures(s)
    checks.append(CheckResult("monotonicity", not mono, tuple(mono)))
    mult = _multiplicity_failures(s)
    checks.append(CheckResult("multiplicity", not mult, tuple(mult)))

    adm: list[str] = []
    for i, c in enumerate(s.components, start=1):
        adm.extend(
            f"component {i}: {msg}"
            for msg in admissibility_failures(c.bundle, c.table, c.is_generic)
        )
    checks.append(CheckResult("admissibility", not adm, tuple(adm)))

    ok_a = validate_degree_condition(s)
    checks.append(
        CheckResult(
            "degree-condition",
            ok_a,
            ()
            if ok_a
            else (
                f"sum(d_i) - r*(M-1)*a = "
                f"{sum(c.degree for c in s.components)} - {s.rank}*{len(s.components) - 1}*{s.twist}"
                f" != {s.degree}",
            ),
        )
    )
    node_failures = _node_condition_failures(s)
    checks.append(CheckResult("node-condition", not node_failures, tuple(node_failures)))
    ok_c = validate_determinacy_condition(s)
    checks.append(CheckResult("determinacy", ok_c))
    ok_k = validate_canonical_determinant(s)
    checks.append(CheckResult("canonical-determinant", ok_k))

    for i, c in enumerate(s.components, start=1):
        if isinstance(c.bundle, Indecomposable):
            flags.append(
                f"component {i}: indecomposable; determinant checked on degree only, "
                f"determinacy by the degree <= 2*twist criterion"
            )
    return ValidationReport(tuple(checks), tuple(flags))


# ---------------------------------------------------------------------------
# file format

FORMAT_HEADER = "ellchain-series"
FORMAT_VERSION = "v1"


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def serialize_series(s: LimitSeries) -> str:
    """Canonical textual form; parse/serialize round-trips byte-identically."""
    out = [f"{FORMAT_HEADER} {FORMAT_VERSION}"]
    out.append(
        f"genus {s.genus} rank {s.rank} sections {s.sections} "
        f"degree {s.degree} twist {s.twist}"
    )
    for i, c in enumerate(s.components, start=1):
        b = c.bundle
        if isinstance(b, Split):
            kind = f"split {b.first.p} {b.first.q} {b.second.p} {b.second.q}"
        elif isinstance(b, SplitLineBundle):
            kind = f"line {b.p} {b.q}"
        else:
            kind = f"indec {b.degree} {b.marked_u} {b.marked_v}"
        out.append(f"component {i} {kind} moduli {c.moduli_freedom}")
        for u, v in c.table.rows:
            out.append(f"  row {u} {v}")
    for n, node in enumerate(s.nodes, start=1):
        matching = " ".join(str(t) for t in node.matching)
        forced = (
            " ".join(f"{a}:{b}" for a, b in node.forced_pairs)
            if node.forced_pairs
            else "-"
        )
        out.append(f"node {n} matching {matching} forced {forced}")
    return "\n".join(out) + "\n"


def _parse_int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line_no, f"expected integer {what}, got {token!r}") from None


def parse_series(text: str) -> LimitSeries:
    lines = text.splitlines()
    if not lines:
        raise ParseError(1, "empty input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != FORMAT_HEADER:
        raise ParseError(1, f"expected '{FORMAT_HEADER} <version>' header")
    if head[1] != FORMAT_VERSION:
        raise ParseError(1, f"unknown format version {head[1]!r}")
    if len(lines) < 2:
        raise ParseError(2, "missing parameter line")
    params = lines[1].split()
    expected_keys = ["genus", "rank", "sections", "degree", "twist"]
    if len(params) != 10 or params[0::2] != expected_keys:
        raise ParseError(2, f"expected '{' '.join(k + ' <n>' for k in expected_keys)}'")
    g, r, k, d, a = (_parse_int(params[i], 2, params[i - 1]) for i in (1, 3, 5, 7, 9))

    components: list[Component] = []
    nodes: list[NodeGluing] = []
    pending_bundle: BundleLike | None = None
    pending_moduli = 0
    pending_rows: list[tuple[int, int]] = []
    pending_line = 0

    def close_component(line_no: int):
        nonlocal pending_bundle
        if pending_bundle is None:
            return
        if len(pending_rows) != k:
            raise ParseError(
                line_no, f"component {len(components) + 1} has {len(pending_rows)} rows, expected {k}"
            )
        components.append(
            Component(pending_bundle, VanishingTable(pending_rows), pending_moduli)
        )
        pending_bundle = None
        pending_rows.clear()

    for line_no, raw in enumerate(lines[2:], start=3):
        tokens = raw.split()
        if not tokens:
            continue
        kind = tokens[0]
        if kind == "component":
            close_component(line_no)
            if len(tokens) < 3:
                raise ParseError(line_no, "truncated component record")
            index = _parse_int(tokens[1], line_no, "component index")
            if index != len(components) + 1:
                raise ParseError(line_no, f"component index {index} out of order")
            bkind = tokens[2]
            rest = tokens[3:]
            if len(rest) < 2 or rest[-2] != "moduli":
                raise ParseError(line_no, "component record must end with 'moduli <n>'")
            moduli = _parse_int(rest[-1], line_no, "moduli freedom")
            coeffs = [_parse_int(t, line_no, "bundle coefficient") for t in rest[:-2]]
            if bkind == "split" and len(coeffs) == 4:
                bundle: BundleLike = Split(
                    SplitLineBundle(coeffs[0], coeffs[1]),
                    SplitLineBundle(coeffs[2], coeffs[3]),
                )
            elif bkind == "line" and len(coeffs) == 2:
                bundle = SplitLineBundle(coeffs[0], coeffs[1])
            elif bkind == "indec" and len(coeffs) == 3:
                bundle = Indecomposable(coeffs[0], coeffs[1], coeffs[2])
            else:
                raise ParseError(line_no, f"bad bundle record {bkind!r} {coeffs}")
            pending_bundle = bundle
            pending_moduli = moduli
            pending_line = line_no
        elif kind == "row":
            if pending_bundle is None:
                raise ParseError(line_no, "row outside a component record")
            if len(tokens) != 3:
                raise ParseError(line_no, "expected 'row <u> <v>'")
            pending_rows.append(
                (
                    _parse_int(tokens[1], line_no, "u"),
                    _parse_int(tokens[2], line_no, "v"),
                )
            )
        elif kind == "node":
            close_component(line_no)
            if len(tokens) < 4 or tokens[2] != "matching":
                raise ParseError(line_no, "expected 'node <i> matching ... forced ...'")
            index = _parse_int(tokens[1], line_no, "node index")
            if index != len(nodes) + 1:
                raise ParseError(line_no, f"node index {index} out of order")
            try:
                split_at = tokens.index("forced")
            except ValueError:
                raise ParseError(line_no, "node record missing 'forced'") from None
            matching = tuple(
                _parse_int(t, line_no, "matching entry") for t in tokens[3:split_at]
            )
            if len(matching) != k:
                raise ParseError(line_no, f"matching has {len(matching)} entries, expected {k}")
            forced_tokens = tokens[split_at + 1 :]
            forced: list[tuple[str, str]] = []
            if forced_tokens != ["-"]:
                for t in forced_tokens:
                    sides = t.split(":")
                    if len(sides) != 2 or not all(
                        x in (DIR_FIRST, DIR_SECOND, DIR_MARKED) for x in sides
                    ):
                        raise ParseError(line_no, f"bad forced pair {t!r}")
                    forced.append((sides[0], sides[1]))
            nodes.append(NodeGluing(matching, tuple(forced)))
        else:
            raise ParseError(line_no, f"unknown record {kind!r}")
    close_component(len(lines) + 1)

    if len(components) != g:
        raise ParseError(len(lines), f"{len(components)} components, expected genus {g}")
    if len(nodes) != g - 1:
        raise ParseError(len(lines), f"{len(nodes)} nodes, expected {g - 1}")
    return LimitSeries(
        chain=ChainCurve(g),
        rank=r,
        sections=k,
        degree=d,
        twist=a,
        components=tuple(components),
        nodes=tuple(nodes),
    )

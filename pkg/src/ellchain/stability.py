"""Combinatorial (semi)stability verdicts for glued chain bundles.

Semistability is component-wise: a split of two line bundles of equal
degree, or an indecomposable bundle of even degree, restricts
semistably, and a chain bundle with semistable restrictions is
semistable.  That rule is encoded here as an axiom.

Stability then fails exactly when some choice of slope-equal line
subbundle on every component is identified globally by the node gluings.
The candidate subbundles are: the two summands of a split of distinct
line bundles (including the two distinct generic bundles of a free
component), the unique maximal subbundle of an indecomposable bundle
(its marked direction), and, for a split of two identical line bundles,
a whole pencil of subbundles realizing every fiber direction with one
shared parameter at both marked points.

A candidate chain survives a node only if the gluing identifies the
selected directions there: forced pairs identify summand directions
outright; a pencil absorbs any required direction at the cost of fixing
its parameter; and a gluing whose free part is generic sends any other
direction somewhere new, killing the chain.  Nodes not flagged generic
leave the identification undecided, and a chain surviving only through
such nodes yields the verdict ``unknown``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import Indecomposable, Split
from .series import Component, LimitSeries

FLEX = "*"
FREE_TOKEN = "free"
FIXED_TOKEN = "fixed"

VERDICT_STABLE = "stable"
VERDICT_SEMISTABLE = "strictly-semistable"
VERDICT_UNKNOWN = "unknown"


@dataclass(frozen=True)
class DestabilizingChain:
    """A candidate chain of slope-equal subbundles and its fate.

    ``selections`` lists one choice per component reached: a summand
    token, ``m`` for the indecomposable subbundle, or ``*`` for a pencil.
    ``node_status`` records, per crossed node, how the identification
    fared: ``forced``, ``free`` (absorbed by a pencil), ``generic-free``,
    ``constrained-away`` or ``indeterminate``.  ``killed_at`` is the
    1-based node where the chain dies, or ``None`` for a survivor.
    """

    selections: tuple[str, ...]
    node_status: tuple[str, ...]
    killed_at: int | None
    tainted: bool = False

    @property
    def survives(self) -> bool:
        return self.killed_at is None


@dataclass(frozen=True)
class StabilityReport:
    verdict: str
    survivors: tuple[DestabilizingChain, ...]
    killed: tuple[DestabilizingChain, ...]


def check_semistable(s: LimitSeries) -> bool:
    """Component-wise slope balance: equal summand degrees, even indecomposables."""
    for c in s.components:
        if isinstance(c.bundle, Indecomposable):
            if c.bundle.degree % 2:
                return False
        elif isinstance(c.bundle, Split):
            if c.bundle.first.degree != c.bundle.second.degree:
                return False
    return True


def _candidates(c: Component) -> list[str]:
    if isinstance(c.bundle, Indecomposable):
        return ["m"]
    if c.is_generic:
        # two distinct generic line bundles; stored coefficients are only
        # representatives, so structural equality does not apply
        return ["1", "2"]
    if c.bundle.first == c.bundle.second:
        return [FLEX]
    return ["1", "2"]


def check_stable(
    s: LimitSeries, generic_nodes: tuple[bool, ...] | None = None
) -> StabilityReport:
    """Enumerate destabilizing chains and report the verdict.

    ``generic_nodes`` flags, per node, whether the unforced part of the
    gluing may be assumed generic; generator outputs are meant to be
    checked with every node generic (the default).
    """
    if s.rank != 2:
        raise ValueError("stability verdicts are defined for rank-two series")
    if not check_semistable(s):
        raise ValueError("check_stable requires a component-wise semistable series")
    if generic_nodes is None:
        generic_nodes = tuple(True for _ in s.nodes)
    if len(generic_nodes) != len(s.nodes):
        raise ValueError("one genericity flag per node required")

    survivors: list[DestabilizingChain] = []
    killed: list[DestabilizingChain] = []

    def extend(idx: int, token: str, selections: tuple[str, ...],
               statuses: tuple[str, ...], tainted: bool) -> None:
        # idx: 0-based node about to be crossed; token: direction emitted
        # at Q of component idx+1
        if idx == len(s.nodes):
            chain = DestabilizingChain(selections, statuses, None, tainted)
            survivors.append(chain)
            return
        node = s.nodes[idx]
        generic = generic_nodes[idx]
        forced_of = dict(node.forced_pairs)
        images = {right for _, right in node.forced_pairs}
        for sel in _candidates(s.components[idx + 1]):
            new_sel = selections + (sel,)
            if token == FREE_TOKEN:
                status, out = FREE_TOKEN, (FREE_TOKEN if sel == FLEX else sel)
            elif token in forced_of:
                image = forced_of[token]
                if sel == FLEX:
                    status, out = "forced", FIXED_TOKEN
                elif sel == image:
                    status, out = "forced", sel
                else:
                    killed.append(
                        DestabilizingChain(
                            new_sel, statuses + ("constrained-away",), idx + 1, tainted
                        )
                    )
                    continue
            else:
                # token has no forced image; a rigid target already claimed
                # by another forced pair is unreachable regardless of flags
                if sel == FLEX:
                    status, out = FREE_TOKEN, FIXED_TOKEN
                elif sel in images:
                    killed.append(
                        DestabilizingChain(
                            new_sel, statuses + ("constrained-away",), idx + 1, tainted
                        )
                    )
                    continue
                elif generic:
                    killed.append(
                        DestabilizingChain(
                            new_sel, statuses + ("generic-free",), idx + 1, tainted
                        )
                    )
                    continue
                else:
                    status, out = "indeterminate", sel
            extend(
                idx + 1,
                out,
                new_sel,
                statuses + (status,),
                tainted or status == "indeterminate",
            )

    for sel in _candidates(s.components[0]):
        extend(0, FREE_TOKEN if sel == FLEX else sel, (sel,), (), False)

    if any(not c.tainted for c in survivors):
        verdict = VERDICT_SEMISTABLE
    elif survivors:
        verdict = VERDICT_UNKNOWN
    else:
        verdict = VERDICT_STABLE
    return StabilityReport(verdict, tuple(survivors), tuple(killed))


def external_stable_case(g: int, k: int) -> bool:
    """The one (g, k) whose stable representative is certified externally.

    For three sections on a genus-3 chain every gluing choice leaves the
    glued bundle strictly semistable; a stable bundle with the same
    invariants exists on smooth non-hyperelliptic curves (the dual of the
    kernel of the canonical evaluation map) and is taken as a certified
    external fact rather than constructed here.
    """
    return (g, k) == (3, 3)

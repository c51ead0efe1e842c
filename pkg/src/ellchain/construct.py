"""Deterministic generators for the explicit limit series on elliptic chains.

Three families are produced, all with node conditions holding with
equality at every matched pair:

* ``canonical_limit_series(g)``: the unique rank-one series of dimension
  ``g`` and degree ``2g - 2`` (the limit of the canonical series), with
  twist ``a = 2g - 2``.
* ``construct_even(g, 2*k1)``: rank two, canonical determinant, twist
  ``a = g - 1``.  The first ``k1**2`` components carry pinned splits of
  two degree-``(g-1)`` line bundles driven by the layer decomposition
  ``i = layer**2 + 2c + eps``; the remaining components carry a free
  line bundle and its canonical conjugate.
* ``construct_odd(g, 2*k1 + 1)``: the even data extended by one section,
  rolled through ``k1`` transition components into the indecomposable
  bundle on component ``k1**2 + k1 + 1`` and out along the free tail.

Per component, exactly two table rows add up to ``g - 1`` (one on the
indecomposable component) and they coincide with the summand
coefficients; every other row adds up to ``g - 2``.  Node gluings store
the identity matching (ties between equal vanishing values are broken by
row index) and the forced direction pairs derived from the pinning
analysis in :mod:`ellchain.series`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .chain import ChainCurve, Indecomposable, Split, SplitLineBundle
from .ledger import theorem_threshold
from .series import (
    Component,
    LimitSeries,
    NodeGluing,
    VanishingTable,
    derive_forced_pairs,
)


class ThresholdError(ValueError):
    """Requested genus is below the nonemptiness threshold for this k."""

    def __init__(self, g: int, k: int, required: int):
        super().__init__(
            f"(g={g}, k={k}) is below the theorem threshold: requires g >= {required}"
        )
        self.required = required


@dataclass(frozen=True)
class LayerDecomposition:
    """The unique writing ``i = layer**2 + 2*c + eps`` of a component index.

    Either ``0 <= c <= layer - 1`` with ``eps`` in ``{1, 2}``, or
    ``c == layer`` with ``eps == 1`` (the square indices).
    """

    i: int
    layer: int
    c: int
    eps: int


def decompose_index(i: int, k_1: int) -> LayerDecomposition:
    if not 1 <= i <= k_1 * k_1:
        raise IndexError(f"component index {i} out of range 1..{k_1 * k_1}")
    layer = isqrt(i - 1)
    rem = i - layer * layer
    if rem % 2 == 1:
        c, eps = (rem - 1) // 2, 1
    else:
        c, eps = (rem - 2) // 2, 2
    return LayerDecomposition(i, layer, c, eps)


# ---------------------------------------------------------------------------
# rank one


def _rank1_rows(i: int, g: int) -> list[tuple[int, int]]:
    rows = []
    for e in range(1, g + 1):
        u = i - 3 + e if e < i else i - 2 + e
        v = 2 * g - i - e if e <= i else 2 * g - i - e - 1
        rows.append((u, v))
    return rows


def canonical_limit_series(g: int) -> LimitSeries:
    """The limit of the canonical series: rank 1, dimension g, degree 2g-2."""
    if g < 2:
        raise ValueError(f"canonical limit series needs g >= 2, got {g}")
    components = tuple(
        Component(
            SplitLineBundle(2 * i - 2, 2 * g - 2 * i),
            VanishingTable(_rank1_rows(i, g)),
        )
        for i in range(1, g + 1)
    )
    return _assemble(g, rank=1, k=g, d=2 * g - 2, a=2 * g - 2, components=components)


# ---------------------------------------------------------------------------
# rank two, even number of sections


def _even_pinned_component(i: int, g: int, k1: int) -> Component:
    dec = decompose_index(i, k1)
    layer, c, eps = dec.layer, dec.c, dec.eps
    first = SplitLineBundle(i - 1 + c - layer, g - i - c + layer)
    second = SplitLineBundle(i - 1 + layer - c, g - i - layer + c)
    rows: list[tuple[int, int]] = []
    for e in range(1, c + 1):
        rows += [(i + e - layer - 3, g - i - e + layer + 1)] * 2
    if c == layer:
        # square index: both distinguished rows coincide
        rows += [(i - 1, g - i)] * 2
    else:
        if eps == 1:
            rows.append((i + c - layer - 1, g - i - c + layer))
            rows.append((i + c - layer - 1, g - i - c + layer - 1))
        else:
            rows.append((i + c - layer - 2, g - i - c + layer))
            rows.append((i + c - layer - 1, g - i - c + layer))
        for e in range(c + 2, layer + 1):
            rows += [(i + e - layer - 2, g - i - e + layer)] * 2
        if eps == 1:
            rows.append((i - c + layer - 1, g - i + c - layer))
            rows.append((i + layer - c - 1, g - i - layer + c - 1))
        else:
            rows.append((i - c + layer - 2, g - i + c - layer))
            rows.append((i + layer - c - 1, g - i - layer + c))
    for e in range(layer + 2, k1 + 1):
        rows += [(i + e - 2, g - i - e)] * 2
    return Component(Split(first, second), VanishingTable(rows))


def _free_tail_component(i: int, g: int, k1: int) -> Component:
    # representative coefficients for the free summand and its conjugate
    rep = SplitLineBundle(i - 1, g - i)
    rows: list[tuple[int, int]] = []
    for e in range(1, k1 + 1):
        rows += [(i + e - k1 - 2, g - i + k1 - e)] * 2
    return Component(Split(rep, rep), VanishingTable(rows), moduli_freedom=1)


def construct_even(g: int, k: int, force: bool = False) -> LimitSeries:
    """Rank-two limit series with canonical determinant, ``k = 2*k1`` sections."""
    if k < 2 or k % 2:
        raise ValueError(f"construct_even needs even k >= 2, got {k}")
    k1 = k // 2
    required = theorem_threshold(k)
    if g < required and not force:
        raise ThresholdError(g, k, required)
    if g < k1 * k1:
        raise ValueError(
            f"g={g} cannot host the {k1 * k1} pinned components (needs g >= {k1 * k1})"
        )
    components = tuple(
        _even_pinned_component(i, g, k1) if i <= k1 * k1 else _free_tail_component(i, g, k1)
        for i in range(1, g + 1)
    )
    return _assemble(g, rank=2, k=k, d=2 * g - 2, a=g - 1, components=components)


# ---------------------------------------------------------------------------
# rank two, odd number of sections


def _with_extra_row(component: Component, row: tuple[int, int]) -> Component:
    return Component(
        component.bundle,
        VanishingTable(component.table.rows + (row,)),
        component.moduli_freedom,
    )


def _transition_component(m: int, g: int, k1: int) -> Component:
    i = k1 * k1 + m
    first = SplitLineBundle(i + m - k1 - 2, g - i - m + k1 + 1)
    second = SplitLineBundle(k1 * k1 + k1, g - 1 - k1 * k1 - k1)
    rows: list[tuple[int, int]] = []
    for e in range(1, k1 + 1):
        u_odd = i + e - k1 - 3 if e < m else i + e - k1 - 2
        v_odd = g - i - e + k1 + 1 if e <= m else g - i - e + k1
        rows.append((u_odd, v_odd))
        rows.append((i + e - k1 - 2, g - i - e + k1))
    rows.append(second.pair)
    return Component(Split(first, second), VanishingTable(rows))


def _indecomposable_component(g: int, k1: int) -> Component:
    s = k1 * k1
    rows: list[tuple[int, int]] = []
    for e in range(1, k1 + 1):
        rows.append((s + e - 2, g - s - e))
        rows.append((s + e - 1, g - 1 - s - e))
    rows.append((s + k1, g - 1 - s - k1))
    bundle = Indecomposable(2 * g - 2, s + k1, g - 1 - s - k1)
    return Component(bundle, VanishingTable(rows))


def _odd_tail_component(i: int, g: int, k1: int) -> Component:
    s = k1 * k1
    t = i - (s + k1 + 1)  # offset past the indecomposable component
    rep = SplitLineBundle(i - 1, g - i)
    rows: list[tuple[int, int]] = []
    for e in range(1, k1 + 1):
        rows.append((s + e - 2 + t, g - s - e - t))
        rows.append((s + e - 1 + t, g - 1 - s - e - t))
    rows.append((s + k1 + t - 1, g - 1 - s - k1 - t))
    return Component(Split(rep, rep), VanishingTable(rows), moduli_freedom=1)


def construct_odd(g: int, k: int, force: bool = False) -> LimitSeries:
    """Rank-two limit series with canonical determinant, ``k = 2*k1 + 1`` sections.

    For ``k1 = 1, g = 3`` the combinatorial series exists and validates,
    but every gluing choice leaves the glued bundle strictly semistable;
    a stable representative is certified externally (see
    :func:`ellchain.stability.external_stable_case`).
    """
    if k < 3 or k % 2 == 0:
        raise ValueError(f"construct_odd needs odd k >= 3, got {k}")
    k1 = (k - 1) // 2
    required = theorem_threshold(k)
    if g < required and not force:
        raise ThresholdError(g, k, required)
    if g < k1 * k1 + k1 + 1:
        raise ValueError(
            f"g={g} cannot host the indecomposable component at index {k1 * k1 + k1 + 1}"
        )
    components: list[Component] = []
    for i in range(1, k1 * k1 + 1):
        even = _even_pinned_component(i, g, k1)
        components.append(_with_extra_row(even, (i + k1 - 1, g - i - k1 - 1)))
    for m in range(1, k1 + 1):
        components.append(_transition_component(m, g, k1))
    components.append(_indecomposable_component(g, k1))
    for i in range(k1 * k1 + k1 + 2, g + 1):
        components.append(_odd_tail_component(i, g, k1))
    return _assemble(
        g, rank=2, k=k, d=2 * g - 2, a=g - 1, components=tuple(components)
    )


# ---------------------------------------------------------------------------


def construct(g: int, k: int, force: bool = False) -> LimitSeries:
    """Parity-dispatching generator for the rank-two series."""
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    return construct_even(g, k, force) if k % 2 == 0 else construct_odd(g, k, force)


def _assemble(g, rank, k, d, a, components) -> LimitSeries:
    identity = tuple(range(1, k + 1))
    nodes = tuple(
        NodeGluing(identity, derive_forced_pairs(components[n], components[n + 1], identity, a))
        for n in range(g - 1)
    )
    return LimitSeries(
        chain=ChainCurve(g),
        rank=rank,
        sections=k,
        degree=d,
        twist=a,
        components=components,
        nodes=nodes,
    )

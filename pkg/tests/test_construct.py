import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellchain import (
    Indecomposable,
    Split,
    SplitLineBundle,
    ThresholdError,
    canonical_limit_series,
    canonical_restriction,
    construct,
    construct_even,
    construct_odd,
    decompose_index,
    determinant,
    serialize_series,
    theorem_threshold,
    validate_all,
)


class TestLayerDecomposition:
    def test_small_layer_values(self):
        d = decompose_index(1, 2)
        assert (d.layer, d.c, d.eps) == (0, 0, 1)
        d = decompose_index(3, 2)
        assert (d.layer, d.c, d.eps) == (1, 0, 2)
        d = decompose_index(4, 2)
        assert (d.layer, d.c, d.eps) == (1, 1, 1)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            decompose_index(0, 3)
        with pytest.raises(IndexError):
            decompose_index(10, 3)

    @given(st.integers(1, 12).flatmap(lambda k1: st.tuples(st.just(k1), st.integers(1, k1 * k1))))
    def test_reconstruction_and_constraints(self, pair):
        k1, i = pair
        d = decompose_index(i, k1)
        assert d.layer * d.layer + 2 * d.c + d.eps == i
        assert 0 <= d.layer <= k1 - 1
        assert (0 <= d.c <= d.layer - 1 and d.eps in (1, 2)) or (
            d.c == d.layer and d.eps == 1
        )


class TestRankOne:
    def test_genus3_middle_component(self):
        s = canonical_limit_series(3)
        assert s.components[1].table.rows == ((0, 3), (2, 2), (3, 0))

    def test_genus2_first_bundle(self):
        s = canonical_limit_series(2)
        assert s.components[0].bundle == SplitLineBundle(0, 2)

    def test_validates_up_to_30(self):
        for g in range(2, 31):
            assert validate_all(canonical_limit_series(g)).all_passed

    def test_bundles_are_canonical_restrictions(self):
        s = canonical_limit_series(11)
        for i, c in enumerate(s.components, start=1):
            assert c.bundle.pair == canonical_restriction(i, 11)

    def test_needs_genus_two(self):
        with pytest.raises(ValueError):
            canonical_limit_series(1)


class TestEven:
    def test_component_two_bundle_and_first_table(self):
        s = construct_even(9, 4)
        assert s.components[1].bundle == Split(SplitLineBundle(0, 8), SplitLineBundle(2, 6))
        assert s.components[0].table.rows == ((0, 8), (0, 8), (1, 6), (1, 6))

    def test_last_pinned_component_v_values(self):
        # v at the component before the last, for k = 4: (2, 2, 1, 1)
        for g in (5, 7, 12):
            s = construct_even(g, 4)
            assert s.components[g - 2].table.vs == (2, 2, 1, 1)

    def test_two_distinguished_rows_match_summands(self):
        for k in (2, 4, 6, 8):
            for g in range(theorem_threshold(k), 26):
                s = construct_even(g, k)
                for c in s.components:
                    special = [r for r in c.table.rows if r[0] + r[1] == g - 1]
                    others = [r for r in c.table.rows if r[0] + r[1] == g - 2]
                    if c.is_generic:
                        assert special == []
                        assert len(others) == k
                    else:
                        assert len(special) == 2
                        assert len(others) == k - 2
                        assert sorted(p.pair for p in c.bundle.summands) == sorted(special)

    def test_tail_components_free(self):
        s = construct_even(9, 4)
        k1sq = 4
        for i, c in enumerate(s.components, start=1):
            assert c.moduli_freedom == (1 if i > k1sq else 0)
            if c.is_generic:
                assert c.bundle.first.pair == (i - 1, 9 - i)

    def test_determinants_canonical(self):
        for g, k in [(5, 4), (9, 6), (16, 8), (3, 2)]:
            s = construct_even(g, k)
            for i, c in enumerate(s.components, start=1):
                assert determinant(c.bundle) == canonical_restriction(i, g)

    def test_threshold_refusal(self):
        with pytest.raises(ThresholdError, match="requires g >= 5"):
            construct_even(4, 4)
        with pytest.raises(ThresholdError, match="requires g >= 16"):
            construct_even(15, 8)
        with pytest.raises(ThresholdError, match="requires g >= 3"):
            construct_even(2, 2)

    def test_force_override(self):
        s = construct_even(4, 4, force=True)
        assert validate_all(s).all_passed
        with pytest.raises(ValueError):
            construct_even(3, 4, force=True)  # cannot host 4 pinned components

    def test_validates_across_grid(self):
        for k in (2, 4, 6, 8):
            for g in range(theorem_threshold(k), 31):
                report = validate_all(construct_even(g, k))
                assert report.all_passed, (g, k, [c.name for c in report.failures()])

    def test_determinism(self):
        a = serialize_series(construct_even(12, 6))
        b = serialize_series(construct_even(12, 6))
        assert a == b


class TestOdd:
    def test_extra_row_and_indecomposable_values(self):
        s = construct_odd(7, 3)
        assert s.components[0].table.rows[-1] == (1, 4)
        assert s.components[2].bundle == Indecomposable(12, marked_u=2, marked_v=4)

    def test_extra_row_sums_to_g_minus_2(self):
        for g, k in [(7, 3), (8, 5), (13, 7), (20, 5)]:
            k1 = (k - 1) // 2
            s = construct_odd(g, k)
            for c in s.components[: k1 * k1]:
                u, v = c.table.rows[-1]
                assert u + v == g - 2

    def test_deleting_extra_row_recovers_even_tables(self):
        for g, k in [(7, 3), (8, 5), (13, 7), (25, 7)]:
            k1 = (k - 1) // 2
            odd = construct_odd(g, k)
            even = construct_even(g, k - 1)
            for co, ce in zip(odd.components[: k1 * k1], even.components):
                assert co.table.rows[:-1] == ce.table.rows
                assert co.bundle == ce.bundle

    def test_extra_row_steps_off_the_pair_pattern(self):
        # off the layer boundary the extra row extends the last even pair by 1
        for g, k in [(13, 7), (20, 5)]:
            k1 = (k - 1) // 2
            s = construct_odd(g, k)
            for i in range(1, (k1 - 1) ** 2 + 1):
                rows = s.components[i - 1].table.rows
                assert rows[-1][0] == rows[-2][0] + 1
                assert rows[-1][1] == rows[-2][1] - 1

    def test_transition_bundles_share_constant_summand(self):
        g, k = 13, 7
        k1 = 3
        s = construct_odd(g, k)
        marked = (k1 * k1 + k1, g - 1 - k1 * k1 - k1)
        for m in range(1, k1 + 1):
            c = s.components[k1 * k1 + m - 1]
            assert c.bundle.second.pair == marked
            assert c.table.rows[-1] == marked

    def test_indecomposable_marked_vanishing(self):
        for g, k in [(3, 3), (7, 3), (8, 5), (13, 7)]:
            k1 = (k - 1) // 2
            s = construct_odd(g, k)
            b = s.components[k1 * k1 + k1].bundle
            assert isinstance(b, Indecomposable)
            assert b.degree == 2 * g - 2
            assert (b.marked_u, b.marked_v) == (k1 * k1 + k1, g - 1 - k1 * k1 - k1)

    def test_threshold_refusal(self):
        with pytest.raises(ThresholdError, match="requires g >= 7"):
            construct_odd(6, 5)
        with pytest.raises(ThresholdError, match="requires g >= 3"):
            construct_odd(2, 3)

    def test_genus3_three_sections_constructs_and_validates(self):
        s = construct_odd(3, 3)
        assert validate_all(s).all_passed

    def test_validates_across_grid(self):
        for k in (3, 5, 7):
            for g in range(theorem_threshold(k), 31):
                report = validate_all(construct_odd(g, k))
                assert report.all_passed, (g, k, [c.name for c in report.failures()])


class TestDispatch:
    def test_parity_dispatch(self):
        assert construct(9, 4) == construct_even(9, 4)
        assert construct(7, 3) == construct_odd(7, 3)

    def test_rejects_k_below_two(self):
        with pytest.raises(ValueError):
            construct(9, 1)
        with pytest.raises(ValueError):
            construct(9, 0)

"""集合代数测试。"""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.errors import (
    DuplicateLabelError,
    EmptyUniverseError,
    EnumerationCapError,
    InvalidElementError,
    UniverseTooLargeError,
    UnknownLabelError,
    WidthMismatchError,
)
from core.sets import (
    ElementSet,
    SetFamily,
    canonicalize,
    check_enumeration_cap,
    iter_subsets,
    make_universe,
    subsets_by_size,
)

WIDTH = 6
masks = st.integers(min_value=0, max_value=(1 << WIDTH) - 1)


def es(bits: int, width: int = WIDTH) -> ElementSet:
    return ElementSet(bits, width)


class TestUniverse:
    def test_indices_follow_listing_order(self):
        u = make_universe(["b", "a", "c"])
        assert u.index("b") == 0
        assert u.index("c") == 2
        assert u.subset(["a", "c"]) == ElementSet(0b110, 3)

    def test_rejects_empty(self):
        with pytest.raises(EmptyUniverseError):
            make_universe([])

    def test_rejects_duplicates(self):
        with pytest.raises(DuplicateLabelError):
            make_universe(["x", "y", "x"])

    def test_width_cap(self):
        make_universe([f"e{i}" for i in range(64)])
        with pytest.raises(UniverseTooLargeError):
            make_universe([f"e{i}" for i in range(65)])
        with pytest.raises(UniverseTooLargeError):
            make_universe(["a", "b", "c"], max_width=2)

    def test_unknown_label(self):
        u = make_universe(["u1", "u2"])
        with pytest.raises(UnknownLabelError) as info:
            u.subset(["u9"])
        assert info.value.label == "u9"
        assert info.value.exit_code == 2

    def test_format(self):
        u = make_universe(["u1", "u2", "u3"])
        assert u.format(u.empty) == "∅"
        assert u.format(u.subset(["u3", "u1"])) == "{u1,u3}"
        assert u.names(u.full) == ["u1", "u2", "u3"]


class TestElementSet:
    def test_rejects_bits_outside_width(self):
        with pytest.raises(InvalidElementError):
            ElementSet(0b1000, 3)
        with pytest.raises(InvalidElementError):
            ElementSet(-1, 3)
        with pytest.raises(InvalidElementError):
            ElementSet.from_indices([3], 3)

    def test_width_mismatch(self):
        with pytest.raises(WidthMismatchError):
            ElementSet(1, 2) | ElementSet(1, 3)

    def test_iteration_and_membership(self):
        s = ElementSet(0b10110, 5)
        assert list(s) == [1, 2, 4]
        assert len(s) == 3
        assert 2 in s and 0 not in s and 7 not in s

    def test_empty_and_full(self):
        assert ElementSet.empty(4).is_empty
        assert ElementSet.full(4).is_full
        assert ~ElementSet.full(4) == ElementSet.empty(4)

    @given(masks, masks)
    def test_de_morgan(self, a, b):
        x, y = es(a), es(b)
        assert ~(x | y) == ~x & ~y
        assert ~(x & y) == ~x | ~y

    @given(masks, masks)
    def test_difference_and_order(self, a, b):
        x, y = es(a), es(b)
        assert x - y == x & ~y
        assert (x <= y) == ((x | y) == y)
        assert (x < y) == (x <= y and x != y)

    @given(masks)
    def test_complement_involution(self, a):
        assert ~~es(a) == es(a)

    @given(masks)
    def test_cardinality_with_complement(self, a):
        assert len(es(a)) + len(~es(a)) == WIDTH


class TestSetFamily:
    def test_canonical_order_and_dedup(self):
        fam = SetFamily.from_masks([5, 1, 5, 0], 3)
        assert fam.masks == (0, 1, 5)
        assert len(fam) == 3
        assert ElementSet(5, 3) in fam
        assert 4 not in fam

    def test_equality_is_structural(self):
        assert SetFamily.from_masks([3, 1], 2) == SetFamily.from_masks([1, 3, 1], 2)

    def test_complements(self):
        fam = SetFamily.from_masks([0, 1], 2)
        assert fam.complements().masks == (2, 3)

    def test_issubfamily(self):
        small = SetFamily.from_masks([0, 3], 2)
        big = SetFamily.from_masks([0, 1, 3], 2)
        assert small.issubfamily(big)
        assert not big.issubfamily(small)

    def test_canonicalize_checks_width(self):
        with pytest.raises(WidthMismatchError):
            canonicalize([ElementSet(1, 2), ElementSet(1, 3)])
        assert canonicalize([], width=4).width == 4

    @given(st.lists(masks, max_size=12))
    def test_canonicalize_is_idempotent(self, bits):
        once = canonicalize([es(b) for b in bits], width=WIDTH)
        assert canonicalize(list(once), width=WIDTH) == once
        assert canonicalize(reversed(list(once)), width=WIDTH) == once
        assert list(once.masks) == sorted(set(bits))


class TestEnumeration:
    def test_iter_subsets_in_mask_order(self):
        assert [s.bits for s in iter_subsets(3)] == list(range(8))

    def test_cap(self):
        check_enumeration_cap(20)
        with pytest.raises(EnumerationCapError) as info:
            check_enumeration_cap(25)
        assert info.value.exit_code == 3
        assert "--max-enum" in str(info.value)
        with pytest.raises(EnumerationCapError):
            list(iter_subsets(5, cap=4))

    def test_subsets_by_size(self):
        order = [list(s) for s in subsets_by_size(3, 1, 2)]
        assert order == [[0], [1], [2], [0, 1], [0, 2], [1, 2]]
        assert len(list(subsets_by_size(4))) == 16

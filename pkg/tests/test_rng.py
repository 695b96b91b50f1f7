"""Tests for the Philox stream derivation."""

import numpy as np
import pytest

from qantenna.errors import InvalidInputError
from qantenna.rng import pack_path, stream


class TestPackPath:
    def test_empty_is_zero(self):
        assert pack_path() == 0

    def test_layout(self):
        # components fill 16-bit fields from the top
        assert pack_path(1) == 1 << 48
        assert pack_path(1, 2) == (1 << 48) | (2 << 32)
        assert pack_path(1, 2, 3, 4) == (1 << 48) | (2 << 32) | (3 << 16) | 4

    def test_rejects_large_component(self):
        with pytest.raises(InvalidInputError):
            pack_path(1 << 16)

    def test_rejects_deep_path(self):
        with pytest.raises(InvalidInputError):
            pack_path(1, 2, 3, 4, 5)


class TestStream:
    def test_reproducible(self):
        a = stream(99, 1, 2).uniform(size=5)
        b = stream(99, 1, 2).uniform(size=5)
        assert np.array_equal(a, b)

    def test_distinct_paths_differ(self):
        a = stream(99, 1).uniform(size=5)
        b = stream(99, 2).uniform(size=5)
        assert not np.array_equal(a, b)

    def test_distinct_masters_differ(self):
        a = stream(1).uniform(size=5)
        b = stream(2).uniform(size=5)
        assert not np.array_equal(a, b)

    def test_key_is_master_and_packed_path(self):
        g = stream(7, 3, 1)
        key = g.bit_generator.state["state"]["key"]
        assert key[0] == 7
        assert key[1] == pack_path(3, 1)

    def test_rejects_bad_master(self):
        with pytest.raises(InvalidInputError):
            stream(-1)

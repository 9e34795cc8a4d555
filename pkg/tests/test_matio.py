"""matio: the plain-text matrix/vector format."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from avecond.errors import ParseError
from avecond.matio import (
    dumps_matrix,
    dumps_vector,
    loads_matrix,
    loads_vector,
    parse_matrix,
    write_matrix,
)

finite_floats = st.floats(allow_nan=False, allow_infinity=False, width=64)


class TestParse:
    def test_matrix(self):
        A = loads_matrix("2 2\n3 -1\n-1 3\n")
        assert np.array_equal(A, [[3.0, -1.0], [-1.0, 3.0]])

    def test_vector(self):
        v = loads_vector("2\n1 1\n")
        assert np.array_equal(v, [1.0, 1.0])

    def test_scientific_notation(self):
        A = loads_matrix("1 2\n1e-3 -2.5E+2\n")
        assert np.array_equal(A, [[1e-3, -250.0]])

    def test_missing_entry(self):
        with pytest.raises(ParseError) as exc:
            loads_matrix("2 2\n3 -1\n-1\n")
        assert exc.value.line == 3

    def test_extra_entry(self):
        with pytest.raises(ParseError):
            loads_matrix("1 1\n3 4\n")

    def test_bad_number_has_position(self):
        with pytest.raises(ParseError) as exc:
            loads_matrix("2 2\n3 -1\nx 3\n")
        assert exc.value.line == 3 and exc.value.column == 1

    def test_bad_header(self):
        with pytest.raises(ParseError):
            loads_matrix("0 2\n")
        with pytest.raises(ParseError):
            loads_vector("a\n1\n")


class TestRoundTrip:
    @given(
        st.integers(1, 5),
        st.integers(1, 5),
        st.integers(0, 10_000),
    )
    @settings(max_examples=60, deadline=None)
    def test_matrix_bits(self, r, c, seed):
        A = np.random.default_rng(seed).normal(0, 100, (r, c))
        assert np.array_equal(loads_matrix(dumps_matrix(A)), A)

    @given(st.lists(finite_floats, min_size=1, max_size=8))
    @settings(max_examples=80, deadline=None)
    def test_vector_bits(self, values):
        v = np.array(values)
        assert np.array_equal(loads_vector(dumps_vector(v)), v)

    def test_file_roundtrip(self, tmp_path):
        A = np.array([[1.0 / 3.0, -2.7182818284590451e-8], [5e300, 0.1]])
        path = tmp_path / "A.txt"
        write_matrix(A, path)
        assert np.array_equal(parse_matrix(path), A)

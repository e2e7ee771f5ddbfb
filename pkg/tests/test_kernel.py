from fractions import Fraction as Q

import numpy as np
import pytest
from hypothesis import given, strategies as st

from vok.kernel import (
    F2Span,
    approx_eigenvalues,
    bits_to_int,
    close,
    f2_span_and_solve,
    fmt_q,
    hnf_rows,
    int_to_bits,
    integer_kernel,
    lattice_gcd,
    parse_q,
    qdet,
    qdiv,
    qinverse,
    qmatmul,
    qsolve,
    set_tolerance,
    tolerance,
)

small = st.integers(-6, 6)


def test_fmt_and_parse():
    assert fmt_q(Q(7, 8)) == "7/8"
    assert fmt_q(Q(4, 2)) == "2"
    assert fmt_q(Q(-3, 6)) == "-1/2"
    assert parse_q(" 59/48 ") == Q(59, 48)


@given(st.fractions(max_denominator=1000))
def test_fmt_roundtrip(x):
    assert parse_q(fmt_q(x)) == x


def test_qdiv_by_zero():
    with pytest.raises(ZeroDivisionError):
        qdiv(1, 0)


def test_tolerance_defaults_and_override(monkeypatch):
    assert tolerance("structural") == 1e-9
    assert tolerance("commutation") == 1e-6
    monkeypatch.setenv("VOK_TOL_COMMUTATION", "1e-3")
    assert tolerance("commutation") == 1e-3
    with pytest.raises(ValueError):
        set_tolerance("structural", 0)
    assert close(1.0, 1.0 + 1e-10)
    assert not close(1.0, 1.0 + 1e-8)


def test_eigenvalues_guard():
    with pytest.raises(ValueError):
        approx_eigenvalues(np.zeros((2, 3)))
    vals = approx_eigenvalues([[2, 1], [1, 2]])
    assert [round(v.real, 9) for v in vals] == [1, 3]


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_and_det(rows):
    d = qdet(rows)
    assert d == round(np.linalg.det(np.array(rows, dtype=float)))
    if d:
        inv = qinverse(rows)
        assert qmatmul(rows, inv) == [[Q(int(i == j)) for j in range(3)] for i in range(3)]
        x = qsolve(rows, [1, 2, 3])
        assert [sum(Q(a) * b for a, b in zip(r, x)) for r in rows] == [1, 2, 3]


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_hnf_spans_same_lattice(rows):
    basis = hnf_rows(rows)
    # every input row is an integer combination of the basis, and vice versa
    for r in rows:
        if any(r):
            assert hnf_rows(basis + [r]) == basis
    assert hnf_rows(basis) == basis
    assert len(basis) == np.linalg.matrix_rank(np.array(rows, dtype=float))


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3))
def test_integer_kernel(rows):
    ker = integer_kernel(rows)
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    assert len(ker) == 4 - np.linalg.matrix_rank(np.array(rows, dtype=float))


def test_integer_kernel_is_saturated():
    # x - 2y = 0 has kernel spanned by (2, 1), not by a multiple of it
    assert integer_kernel([[1, -2]]) == [[2, 1]]
    assert lattice_gcd([4, 6, -10]) == 2


@given(st.lists(st.integers(0, 255), max_size=10))
def test_f2_span(vectors):
    span = F2Span(8, vectors)
    els = span.elements()
    assert len(els) == 2 ** span.dim
    for v in vectors:
        assert v in span
    for a in els:
        for b in els[:4]:
            assert a ^ b in span


def test_f2_helpers():
    assert bits_to_int((1, 0, 1)) == 5
    assert int_to_bits(5, 4) == (1, 0, 1, 0)
    assert f2_span_and_solve([(1, 1, 0), (0, 1, 1), (1, 0, 1)]).dim == 2
    with pytest.raises(ValueError):
        F2Span(2, [8])
    with pytest.raises(ValueError):
        f2_span_and_solve([(1, 0), (1, 0, 0)])

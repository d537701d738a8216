import numpy as np
import pytest

from dilatia.dilation import (
    build_dilated_diagonal,
    contraction_report,
    lift_entry,
    minus_branch_operator,
    sznagy_dilate,
)
from dilatia.errors import ContractionError, DimensionError
from dilatia.numerics import is_unitary, svd

from .conftest import random_contraction


def test_lift_entry_real() -> None:
    plus, minus = lift_entry(0.6)
    assert plus == pytest.approx(0.6 + 0.8j)
    assert minus == pytest.approx(0.6 - 0.8j)


def test_lift_entry_zero_and_unit() -> None:
    assert lift_entry(0) == (1j, -1j)
    plus, minus = lift_entry(1j)
    assert plus == pytest.approx(1j)
    assert minus == pytest.approx(1j)


def test_lift_entry_clamps_inside_band() -> None:
    plus, minus = lift_entry(1 + 5e-13)
    assert abs(plus) == pytest.approx(1.0)
    assert (plus + minus) / 2 == pytest.approx(1.0)


def test_lift_entry_rejects_non_contraction() -> None:
    with pytest.raises(ContractionError) as excinfo:
        lift_entry(1.5)
    assert excinfo.value.max_singular_value == pytest.approx(1.5)


def test_dilated_diagonal_random(rng) -> None:
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        diag = rng.uniform(0, 1, n) * np.exp(2j * np.pi * rng.uniform(size=n))
        dd, report = build_dilated_diagonal(diag)
        assert not report.was_rescaled
        assert np.max(np.abs(np.abs(dd.entries) - 1)) <= 1e-12
        np.testing.assert_allclose(((dd.sigma_plus + dd.sigma_minus) / 2)[:n], diag, atol=1e-12, rtol=0)
        assert is_unitary(dd.unitary(), 1e-12)


def test_dilated_diagonal_pads_with_one() -> None:
    dd, _ = build_dilated_diagonal([0.5, 0.5, 0.5])
    assert len(dd) == 4
    assert dd.qubit_count == 2
    assert dd.sigma_plus[3] == 1
    assert dd.sigma_minus[3] == 1


def test_dilated_diagonal_explicit_size() -> None:
    dd, _ = build_dilated_diagonal([0.5], size=2)
    assert len(dd) == 2
    with pytest.raises(DimensionError):
        build_dilated_diagonal([0.5, 0.5, 0.5], size=2)


def test_dilated_diagonal_auto_rescale() -> None:
    dd, report = build_dilated_diagonal([2.0, 1.0], auto_rescale=True)
    assert report.was_rescaled
    assert report.max_singular_value == pytest.approx(2.0)
    assert report.shifted_operator_norm_bound == pytest.approx(1.0)
    assert dd.scale == pytest.approx(2.0)
    np.testing.assert_allclose(dd.original, [1.0, 0.5])


def test_dilated_diagonal_no_rescale_inside_band() -> None:
    _, report = build_dilated_diagonal([1.0 + 1e-13], auto_rescale=True)
    assert not report.was_rescaled


def test_dilated_diagonal_rejects_non_contraction() -> None:
    with pytest.raises(ContractionError, match="modulus"):
        build_dilated_diagonal([1.2, 0.1])


def test_contraction_report() -> None:
    report = contraction_report(np.array([[2, 0], [0, 0]]))
    assert report.max_singular_value == pytest.approx(2.0)
    assert not report.is_contraction
    assert report.to_dict()["was_rescaled"] is False


def test_sznagy_dilate_is_unitary(rng) -> None:
    for r in (1, 2, 3, 4):
        m = random_contraction(rng, r)
        u = sznagy_dilate(m)
        assert u.shape == (2 * r, 2 * r)
        assert is_unitary(u, 1e-10)
        np.testing.assert_allclose(u[:r, :r], m, atol=1e-14)


def test_sznagy_dilate_unitary_input() -> None:
    u = sznagy_dilate(np.array([[0, 1], [1, 0]]))
    assert is_unitary(u)
    np.testing.assert_allclose(u[:2, 2:], 0, atol=1e-12)


def test_sznagy_dilate_rejects_non_contraction() -> None:
    with pytest.raises(ContractionError):
        sznagy_dilate(2 * np.eye(2))


def test_minus_branch_operator(rng) -> None:
    m = random_contraction(rng, 4)
    factors = svd(m)
    dd, _ = build_dilated_diagonal(factors.singular_values)
    plus_op = (factors.u * dd.sigma_plus) @ factors.v_dagger
    minus = minus_branch_operator(factors, dd)
    np.testing.assert_allclose(plus_op - minus, (factors.u * dd.sigma_minus) @ factors.v_dagger, atol=1e-12)
    np.testing.assert_allclose((2 * plus_op - minus) / 2, m, atol=1e-10)

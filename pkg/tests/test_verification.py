"""Tests for the verification suites."""
import pytest

from padic_cauchy.enums import Suite
from padic_cauchy.errors import InvalidFieldValueError
from padic_cauchy.verification import (
    RATIONAL_INSTANCES,
    SUITES,
    SuiteSettings,
    asymptotics_suite,
    corollary_suite,
    expand,
    legendre_suite,
    norm_bounds_suite,
    oracle_suite,
    pde_suite,
    radius_law_suite,
    residual_suite,
    run_suite,
    run_suites,
    wellposedness_suite,
)


@pytest.fixture
def small_settings() -> SuiteSettings:
    return SuiteSettings(seed=0, max_n=60, workers=2)


def skipped(details) -> int:
    return int(details.get("precision_exhausted", "0"))


class TestSuites:
    def test_legendre(self, small_settings: SuiteSettings) -> None:
        result = legendre_suite(small_settings)
        assert result.passed
        assert result.checked == 5 * 61 * 2
        assert result.details["max_n"] == "60"

    def test_asymptotics(self, small_settings: SuiteSettings) -> None:
        """One limit check per prime plus the factorial bound for k = 0 ... 60."""
        result = asymptotics_suite(small_settings)
        assert result.passed, result.failures
        assert result.checked == 5 * (1 + 61)
        assert all(f"deviation_p{p}" in result.details for p in (2, 3, 5, 7, 11))

    def test_radius_law(self, small_settings: SuiteSettings) -> None:
        result = radius_law_suite(small_settings)
        assert result.passed, result.failures
        assert result.checked == 100

    def test_radius_law_is_reproducible(self, small_settings: SuiteSettings) -> None:
        first = radius_law_suite(small_settings)
        assert radius_law_suite(small_settings).details == first.details

    def test_oracle(self, small_settings: SuiteSettings) -> None:
        result = oracle_suite(small_settings)
        assert result.passed, result.failures
        assert result.checked >= RATIONAL_INSTANCES
        assert 2 * skipped(result.details) <= RATIONAL_INSTANCES

    def test_residual(self, small_settings: SuiteSettings) -> None:
        result = residual_suite(small_settings)
        assert result.passed, result.failures
        assert result.checked >= RATIONAL_INSTANCES
        assert 2 * skipped(result.details) <= RATIONAL_INSTANCES

    def test_wellposedness(self, small_settings: SuiteSettings) -> None:
        """10 bases, two epsilons, 10 perturbations each, four shells per perturbation."""
        result = wellposedness_suite(small_settings)
        assert result.passed, result.failures
        assert result.details["rows"] == str(10 * 2 * 10 * 4)
        assert result.checked == 10 * 2 * 10 * 4 + 10 * 2 * 10

    def test_norm_bounds(self, small_settings: SuiteSettings) -> None:
        result = norm_bounds_suite(small_settings)
        assert result.passed, result.failures
        assert result.checked == 1000 * 2 + 100 * 2

    def test_pde(self, small_settings: SuiteSettings) -> None:
        """Per prime: transport 3, reaction 40 partial sums plus the full sum, two Euler
        instances of 13 coefficients each, three structural checks on four solutions."""
        result = pde_suite(small_settings)
        assert result.passed, result.failures
        assert result.checked == 3 * (3 + 41 + 13 + 13 + 12)

    def test_corollary(self, small_settings: SuiteSettings) -> None:
        result = corollary_suite(small_settings)
        assert result.passed, result.failures
        assert result.checked >= 50


class TestRunner:
    def test_expand_all(self) -> None:
        assert expand([Suite.ALL]) == list(SUITES)

    def test_expand_keeps_order_and_drops_repeats(self) -> None:
        assert expand([Suite.PDE, Suite.LEGENDRE, Suite.PDE]) == [Suite.PDE, Suite.LEGENDRE]

    def test_run_suites_follows_the_input_order(self, small_settings: SuiteSettings) -> None:
        results = run_suites([Suite.PDE, Suite.LEGENDRE], small_settings)
        assert [r.name for r in results] == ["pde", "legendre"]
        assert all(r.passed for r in results)

    def test_run_suite_needs_a_single_suite(self) -> None:
        with pytest.raises(InvalidFieldValueError):
            run_suite(Suite.ALL)

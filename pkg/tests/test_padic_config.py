"""Testing the PadicConfig object."""
import json
from fractions import Fraction

import pytest

from padic_cauchy import PadicConfig
from padic_cauchy.errors import InvalidFieldValueError, ValidationError

from .util import invalid_field_value_error_assertions, stub_config, stub_padic_config


@pytest.fixture(autouse=True)
def clean_environment(mocker):
    """Keep PADIC_* variables and .env files out of these tests."""
    mocker.patch("padic_cauchy.padic_config.load_dotenv")
    mocker.patch.dict("os.environ", {}, clear=True)


class TestPadicConfig:
    def test_defaults(self) -> None:
        config = PadicConfig()
        assert config.prime == PadicConfig.DEFAULT_PRIME
        assert config.precision == 32
        assert config.terms == 64
        assert config.window is None
        assert config.effective_window == 16
        assert config.epsilon == Fraction(1, 2)

    def test_valid_custom_config(self) -> None:
        config = stub_padic_config()
        assert config.prime == 3
        assert config.precision == 20
        assert config.terms == 16
        assert config.epsilon == Fraction(1, 2)

    def test_not_a_prime(self) -> None:
        with pytest.raises(ValidationError):
            PadicConfig(dict(prime=9))

    @pytest.mark.parametrize(
        "field_name, value",
        [
            ("precision", 0),
            ("terms", 3),
            ("epsilon", "3/2"),
            ("epsilon", "0"),
            ("workers", 0),
            ("shells", -1),
        ],
    )
    def test_invalid_values(self, field_name: str, value) -> None:
        with pytest.raises(InvalidFieldValueError) as info:
            PadicConfig({field_name: value})
        invalid_field_value_error_assertions(info.value, field_name)

    def test_window_cannot_exceed_terms(self) -> None:
        with pytest.raises(InvalidFieldValueError):
            PadicConfig(dict(terms=8, window=9))

    def test_environment_overrides(self, mocker) -> None:
        mocker.patch.dict("os.environ", {"PADIC_PRIME": "7", "PADIC_EPSILON": "1/4"})
        config = PadicConfig()
        assert config.prime == 7
        assert config.epsilon == Fraction(1, 4)

    def test_explicit_config_beats_environment(self, mocker) -> None:
        mocker.patch.dict("os.environ", {"PADIC_PRIME": "7"})
        assert PadicConfig(dict(prime=11)).prime == 11

    def test_merge_ignores_none(self) -> None:
        merged = stub_padic_config().merge(dict(prime=None, terms=32))
        assert merged.prime == 3
        assert merged.terms == 32

    def test_merge_without_changes(self) -> None:
        config = stub_padic_config()
        assert config.merge() is config

    def test_to_json(self) -> None:
        data = json.loads(PadicConfig(stub_config()).to_json())
        assert data["prime"] == 3
        assert data["epsilon"] == "1/2"

import pytest

from binary_slab.models import ModelFactory
from binary_slab.models.base import Model
from binary_slab.utils.exceptions import UnsupportedTypeError


class TestModelFactory:
    """Test cases for ModelFactory"""

    @pytest.fixture(autouse=True)
    def reset_model_factory(self):
        """Reset the ModelFactory registry before and after each test."""
        original_registry = ModelFactory.REGISTRY.copy()
        ModelFactory.REGISTRY = {}
        yield
        ModelFactory.REGISTRY = original_registry

    class MockModel(Model):
        """Mock implementation of Model for testing."""

        name = "mock"
        model_tag = "LP"

        def __init__(self, **kwargs):
            self.init_args = kwargs

        def solve(self, problem):
            return None

    def test_register_model(self):
        ModelFactory.register_model("mock", self.MockModel)

        assert "mock" in ModelFactory.REGISTRY
        assert ModelFactory.REGISTRY["mock"] == self.MockModel

    def test_register_model_case_insensitive(self):
        ModelFactory.register_model("MockModel", self.MockModel)

        assert "mockmodel" in ModelFactory.REGISTRY

    def test_create_model(self):
        ModelFactory.register_model("mock", self.MockModel)

        model = ModelFactory.create("mock", workers=4)

        assert isinstance(model, self.MockModel)
        assert model.init_args == {"workers": 4}

    def test_create_model_case_insensitive(self):
        ModelFactory.register_model("mock", self.MockModel)

        assert isinstance(ModelFactory.create("MOCK"), self.MockModel)

    def test_create_unsupported_model(self):
        with pytest.raises(UnsupportedTypeError) as exc_info:
            ModelFactory.create("unsupported")

        assert "Unsupported model type: unsupported" in str(exc_info.value)

    def test_model_is_abstract(self):
        with pytest.raises(TypeError):
            Model()


def test_cli_names_registered():
    assert set(ModelFactory.names()) >= {
        "benchmark",
        "lp",
        "alp",
        "am",
        "diff-am",
        "diff-lp",
        "diff-alp",
    }

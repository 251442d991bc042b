import pytest

from richrep import longest_word
from richrep.presets import preset

_results = {}


@pytest.fixture(scope="session")
def search_result():
    """Memoized preset runs so expensive searches execute once per session."""

    def run(name, **kwargs):
        key = (name, tuple(sorted(kwargs.items())))
        if key not in _results:
            _results[key] = longest_word(preset(name), **kwargs)
        return _results[key]

    return run

"""Common pytest fixtures."""

import pytest

from gaplabels import PermVariant, get_backend, set_backend


@pytest.fixture
def keep_backend():
    """Restore the active kernel backend after a test that switches it."""
    before = get_backend()
    yield
    set_backend(before)


@pytest.fixture(params=list(PermVariant), ids=lambda v: v.value)
def variant(request):
    return request.param

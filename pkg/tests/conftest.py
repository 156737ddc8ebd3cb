import pytest

import csmatch.fd as fd


@pytest.fixture(params=fd.available_backends())
def backend(request):
    """Run solver-level tests on every built kernel."""
    return request.param

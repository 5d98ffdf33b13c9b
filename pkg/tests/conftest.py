import pytest

from horolie import fplinalg

try:
    from horolie import _fpkernels  # noqa: F401

    BACKENDS = ["cython", "numpy"]
except ImportError:
    BACKENDS = ["numpy"]


@pytest.fixture(params=BACKENDS)
def backend(request):
    old = fplinalg.BACKEND
    fplinalg.use_backend(request.param)
    yield request.param
    fplinalg.use_backend(old)

import pytest

from monogamy._kernels import warm_up


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # one-time JIT compilation must not leak into timed assertions
    warm_up()

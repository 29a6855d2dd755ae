import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    derandomize=True,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("default")


@pytest.fixture(scope="session", autouse=True)
def _announce_backend():
    from dyckbaker import _kernels

    print(f"\n[kernel backend: {_kernels.backend()}]")
    yield

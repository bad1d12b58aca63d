import numpy as np
import pytest

from proxauth.config import SimConfig
from proxauth.rfsim import build_environment, generate_dataset


@pytest.fixture(scope="session")
def default_config():
    return SimConfig()


@pytest.fixture(scope="session")
def env(default_config):
    return build_environment(default_config, seed=default_config.seed)


@pytest.fixture(scope="session")
def quiet_env():
    """Same layout as the default environment but with zero shadowing."""
    cfg = SimConfig(shadowing_sigma_db=0.0)
    return build_environment(cfg, seed=cfg.seed)


@pytest.fixture(scope="session")
def default_dataset(env, default_config):
    """The full default dataset; built once, shared across the suite."""
    return generate_dataset(env, 2442, 2383, seed=default_config.seed)


@pytest.fixture(scope="session")
def small_dataset(env):
    return generate_dataset(env, 300, 300, seed=7)


@pytest.fixture(scope="session")
def small_split(small_dataset):
    from proxauth.mlcore import train_test_split
    return train_test_split(small_dataset, 0.2, seed=3)


@pytest.fixture(scope="session")
def small_models(small_split):
    """All six classifiers fitted on the small training split, shared."""
    from proxauth.mlcore import train_all
    return train_all(small_split[0], seed=0)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)


class FakeClock:
    """Deterministic time source; tests advance it explicitly."""

    def __init__(self, t0: float = 1_000_000.0):
        self.t = float(t0)

    def __call__(self) -> float:
        return self.t

    def advance(self, dt: float) -> None:
        self.t += float(dt)


@pytest.fixture()
def clock():
    return FakeClock()

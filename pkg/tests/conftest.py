import textwrap

import pytest

from src.core.config import Config
from src.core.metrics import reset_metrics

# enough bits for every identity checked here while keeping quadratures quick
TEST_PREC = 96


@pytest.fixture
def prec():
    return TEST_PREC


@pytest.fixture(autouse=True)
def fresh_metrics():
    reset_metrics()
    yield
    reset_metrics()


@pytest.fixture
def cache_dir(tmp_path):
    path = tmp_path / "cache"
    path.mkdir()
    return path


@pytest.fixture
def config_file(tmp_path, cache_dir):
    path = tmp_path / "qknot.yaml"
    path.write_text(textwrap.dedent(f"""\
        precision:
          bits: {TEST_PREC}
        execution:
          threads: 1
          progress_every: 0
        cache:
          enabled: true
          dir: {cache_dir}
        reporting:
          format: csv
          float_digits: 12
        stats:
          scan_bits: 64
          fast_double: true
          hist_bins: 20
        """))
    return path


@pytest.fixture
def config(config_file):
    return Config(str(config_file))

"""
测试公共配置
- 耗时较长的验收测试标记为 slow，默认跳过，加 --runslow 运行
- 共享的小网格、判据目录与参考函数
"""
import sys
from pathlib import Path

import pytest

# 将项目根目录添加到搜索路径
ROOT_DIR = Path(__file__).parent
if str(ROOT_DIR) not in sys.path:
    sys.path.insert(0, str(ROOT_DIR))

from core.admissibility import RegionSampler
from core.catalog import get_catalog
from core.config import Config
from core.oracle import DiskGrid


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow acceptance tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full sweeps and corpus scans")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def _fresh_config(monkeypatch):
    """每个测试使用默认配置，不受外部 STARLIKE_THREADS 影响"""
    monkeypatch.delenv("STARLIKE_THREADS", raising=False)
    Config.reset()
    yield
    Config.reset()


@pytest.fixture(scope="session")
def catalog():
    return get_catalog()


@pytest.fixture
def small_grid():
    return DiskGrid((0.2, 0.5, 0.8, 0.95), 32)


@pytest.fixture
def small_sampler():
    """小格点，用于快速的可容许性检查"""
    return RegionSampler(rho_count=24, slack_count=4, eta_count=4)

import pytest

from cjones.numkit import PrecisionCfg

VOL_FIG8 = "2.029883212819307250042405108549040571883378"


@pytest.fixture(scope="session")
def cfg():
    return PrecisionCfg(digits=64)


@pytest.fixture(scope="session")
def cfg40():
    return PrecisionCfg(digits=40)


@pytest.fixture(scope="session")
def mp(cfg):
    return cfg.mp

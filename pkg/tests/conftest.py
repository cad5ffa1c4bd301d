from pathlib import Path
import os
import sys

import pytest


ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"

if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

SLOW_ENV = "DNA_ENSEMBLES_SLOW"


def pytest_collection_modifyitems(config, items):
    if os.environ.get(SLOW_ENV) == "1":
        return
    skip = pytest.mark.skip(reason=f"set {SLOW_ENV}=1 to run the desk-scale pipeline")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def toy_splits():
    from tests.helpers import toy_splits as build

    return build()


@pytest.fixture(scope="session")
def toy_model(toy_splits):
    from tests.helpers import train_toy_model

    return train_toy_model(toy_splits.train)

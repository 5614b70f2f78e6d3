from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, Iterator, List

import numpy as np
import pytest
import yaml

from orbisymp.rep.models import GroupRep
from orbisymp.utils.settings import reset_settings_cache
from orbisymp.verify.corpus import corpus_rep

DATA_DIR = Path(__file__).resolve().parent / "data"


def load_cases(name: str) -> List[Dict[str, Any]]:
    config = yaml.safe_load((DATA_DIR / name).read_text(encoding="utf-8")) or {}
    return list(config.get("cases", []))


@pytest.fixture(autouse=True)
def fresh_settings() -> Iterator[None]:
    reset_settings_cache()
    yield
    reset_settings_cache()


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def genus2_rep() -> GroupRep:
    return corpus_rep("genus2")


@pytest.fixture(scope="session")
def genus2_deformed_rep() -> GroupRep:
    return corpus_rep("genus2_deformed")


@pytest.fixture(scope="session")
def s2_2233_rep() -> GroupRep:
    return corpus_rep("s2_2233")


@pytest.fixture(scope="session")
def s2_237_rep() -> GroupRep:
    return corpus_rep("s2_237")


@pytest.fixture(scope="session")
def pants_rep() -> GroupRep:
    return corpus_rep("pants")

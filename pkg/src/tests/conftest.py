"""
Фикстуры профилей и эталонов.
"""
from pathlib import Path

import pytest

from core.models import Matching, PreferenceProfile
from core.profile import validate_profile

# директория эталонных экземпляров относительно корня проекта
FIXTURES_DIR = Path(__file__).resolve().parents[2] / "media" / "instances"


@pytest.fixture
def fixtures_dir() -> Path:
    """
    Фикстура директории с эталонными экземплярами.

    :return: Path
    """

    return FIXTURES_DIR


@pytest.fixture
def instance1() -> PreferenceProfile:
    """
    Фикстура экземпляра 1: две пары агентов с зеркальными списками.

    :return: PreferenceProfile
    """

    return validate_profile(4, [[0, 1, 2, 3], [0, 1, 2, 3], [1, 0, 3, 2], [1, 0, 3, 2]])


@pytest.fixture
def instance2() -> PreferenceProfile:
    """
    Фикстура экземпляра 2 из трёх агентов.

    :return: PreferenceProfile
    """

    return validate_profile(3, [[0, 1, 2], [0, 2, 1], [1, 0, 2]])


@pytest.fixture
def benchmark_b1() -> Matching:
    """
    Фикстура эталона {0 → 0, 1 → 2, 2 → 1}.

    :return: Matching
    """

    return Matching({0: 0, 1: 2, 2: 1})


@pytest.fixture
def benchmark_b2() -> Matching:
    """
    Фикстура эталона {0 → 1, 1 → 0, 2 → 2}.

    :return: Matching
    """

    return Matching({0: 1, 1: 0, 2: 2})

"""
Стратегии hypothesis для генерации профилей и паросочетаний.
"""
from typing import Any, Callable

from hypothesis import strategies as st

from core.models import Matching, PreferenceProfile
from extensions.models import PartialProfile


@st.composite
def profiles(draw: Callable[..., Any], min_n: int = 1, max_n: int = 6) -> PreferenceProfile:
    """
    Случайный профиль полных списков.
    """

    n = draw(st.integers(min_value=min_n, max_value=max_n))
    rows = [draw(st.permutations(range(n))) for _ in range(n)]

    return PreferenceProfile.from_array(rows)


@st.composite
def profiles_with_benchmark(
    draw: Callable[..., Any], min_n: int = 1, max_n: int = 6
) -> tuple[PreferenceProfile, Matching]:
    """
    Случайный профиль вместе со случайным совершенным эталоном.
    """

    profile = draw(profiles(min_n, max_n))
    benchmark = Matching.from_permutation(draw(st.permutations(range(profile.n))))

    return profile, benchmark


@st.composite
def partial_profiles(draw: Callable[..., Any], max_n: int = 6, max_m: int = 6) -> PartialProfile:
    """
    Случайный профиль неполных списков, списки могут быть пустыми.
    """

    n = draw(st.integers(min_value=1, max_value=max_n))
    m = draw(st.integers(min_value=1, max_value=max_m))
    lists = [draw(st.lists(st.integers(min_value=0, max_value=m - 1), unique=True, max_size=m)) for _ in range(n)]

    return PartialProfile(n, m, tuple(tuple(items) for items in lists))

"""
RSD при спросе на наборы из K предметов.
"""
from typing import Sequence

from core.sampling import random_order
from extensions.models import BundleAllocation, BundleProfile
from extensions.partial import Estimate
from logger import get_logger

logger = get_logger(__name__)


def rsd_bundles(profile: BundleProfile, order: Sequence[int]) -> BundleAllocation:
    """
    Агенты в порядке прихода забирают лучший набор из своего списка, все предметы
    которого свободны; если такого нет, агент остаётся без набора.

    :param profile: Профиль наборов.
    :param order: Порядок прихода агентов.
    :return: Распределение попарно непересекающихся наборов.
    """

    taken: set[int] = set()
    assignment = {}
    for agent in order:
        agent = int(agent)
        for index, bundle in enumerate(profile.lists[agent]):
            if taken.isdisjoint(bundle):
                taken.update(bundle)
                assignment[agent] = index
                break

    return BundleAllocation(assignment)


def ordinal_happy_bundles(allocation: BundleAllocation, benchmark: BundleAllocation, profile: BundleProfile) -> int:
    """
    Число агентов, получивших набор не хуже эталонного.

    :param allocation: Оцениваемое распределение.
    :param benchmark: Эталонное распределение (непересекающиеся наборы из списков).
    :param profile: Профиль наборов.
    :return: Количество довольных агентов.
    """

    benchmark.validate_for(profile)

    happy = 0
    for agent in range(profile.n):
        target = benchmark.index_of(agent)
        received = allocation.index_of(agent)
        if target is None or (received is not None and received <= target):
            happy += 1

    return happy


def rsd_bundles_monte_carlo(profile: BundleProfile, benchmark: BundleAllocation, samples: int, seed: int) -> Estimate:
    """
    Доля довольных агентов RSD со спросом на наборы по случайным порядкам.

    :param profile: Профиль наборов.
    :param benchmark: Эталонное распределение.
    :param samples: Количество выборок.
    :param seed: Зерно.
    :return: Оценка доли довольных агентов.
    """

    if samples < 1:
        raise ValueError("Количество выборок должно быть не меньше 1")

    logger.info("RSD с наборами: n=%s, K=%s, выборок %s ...", profile.n, profile.demand, samples)
    fractions = [
        ordinal_happy_bundles(rsd_bundles(profile, random_order(seed, index, profile.n)), benchmark, profile)
        / profile.n
        for index in range(samples)
    ]

    return Estimate.from_values(fractions)

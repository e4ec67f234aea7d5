"""
Последовательная диктатура на неполных списках предпочтений.

Полезность агента, получившего предмет на позиции j своего списка L_a,
равна (|L_a| + 1 − j)/|L_a|; неназначенный агент получает 0.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from core.errors import ItemNotOnListError, TooLargeError
from core.models import Matching
from core.sampling import random_order
from extensions.models import PartialProfile
from logger import get_logger
from settings import DENSE_ASSIGNMENT_LIMIT, ENUM_GUARD

logger = get_logger(__name__)


@dataclass(frozen=True)
class Estimate:
    """
    Выборочное среднее и его стандартная ошибка.
    """

    mean: float
    stderr: float

    @classmethod
    def from_values(cls, values: Sequence[float]) -> Estimate:
        if len(values) < 2:
            return cls(float(np.mean(values)), 0.0)
        return cls(float(np.mean(values)), float(np.std(values, ddof=1) / math.sqrt(len(values))))


@dataclass(frozen=True)
class PartialEstimate:
    """
    Оценки Монте-Карло для RSD на неполных списках.
    """

    utility: Estimate
    matched: Estimate
    happy_fraction: Optional[Estimate] = None


@dataclass(frozen=True)
class PartialOutcome:
    """
    Точные средние по всем порядкам прихода: полезность, размер паросочетания
    и число довольных агентов (при заданном эталоне).
    """

    utility: Fraction
    matched: Fraction
    happy: Optional[Fraction] = None


def sd_partial(profile: PartialProfile, order: Sequence[int]) -> Matching:
    """
    Диктатура на неполных списках: агент забирает лучший свободный предмет своего
    списка либо остаётся без предмета, если все они заняты.

    :param profile: Профиль неполных списков.
    :param order: Порядок прихода агентов.
    :return: Максимальное (по включению) паросочетание.
    """

    taken: set[int] = set()
    assignment = {}
    for agent in order:
        if len(taken) == profile.m:
            break
        agent = int(agent)
        item = next((candidate for candidate in profile.lists[agent] if candidate not in taken), None)
        if item is not None:
            taken.add(item)
            assignment[agent] = item

    return Matching(assignment)


def linear_utility_partial(matching: Matching, profile: PartialProfile) -> Fraction:
    """
    Суммарная полезность паросочетания на неполных списках.

    :param matching: Паросочетание.
    :param profile: Профиль неполных списков.
    :return: Точная полезность.
    :raises ItemNotOnListError: Агенту назначен предмет не из его списка.
    """

    # суммы числителей, сгруппированные по длине списка
    totals: defaultdict[int, int] = defaultdict(int)
    for agent, item in matching.items():
        position = profile.position_of(agent, item)
        if position is None:
            raise ItemNotOnListError(f"Предмет {item} отсутствует в списке агента {agent}")
        length = len(profile.lists[agent])
        totals[length] += length + 1 - position

    return sum((Fraction(total, length) for length, total in totals.items()), Fraction(0))


def ordinal_happy_partial(matching: Matching, benchmark: Matching, profile: PartialProfile) -> int:
    """
    Число довольных агентов на неполных списках. Агент без предмета в эталоне доволен;
    агент, получивший предмет в эталоне, но не в паросочетании, недоволен.

    :param matching: Оцениваемое паросочетание.
    :param benchmark: Эталонное паросочетание.
    :param profile: Профиль неполных списков.
    :return: Количество довольных агентов.
    """

    happy = 0
    for agent in range(profile.n):
        target = benchmark.item_of(agent)
        if target is None:
            happy += 1
            continue
        threshold = profile.position_of(agent, target)
        if threshold is None:
            raise ItemNotOnListError(f"Эталонный предмет {target} отсутствует в списке агента {agent}")
        received = matching.item_of(agent)
        if received is not None and profile.position_of(agent, received) <= threshold:
            happy += 1

    return happy


def rsd_partial_monte_carlo(
    profile: PartialProfile,
    benchmark: Optional[Matching],
    samples: int,
    seed: int,
) -> PartialEstimate:
    """
    Оценка RSD на неполных списках по случайным порядкам прихода.

    :param profile: Профиль неполных списков.
    :param benchmark: Эталон для доли довольных агентов (необязателен).
    :param samples: Количество выборок.
    :param seed: Зерно.
    :return: Средние полезность, размер паросочетания и доля довольных со стандартными ошибками.
    """

    if samples < 1:
        raise ValueError("Количество выборок должно быть не меньше 1")

    logger.info("RSD на неполных списках: n=%s, выборок %s, зерно %s ...", profile.n, samples, seed)
    utilities, matched, happy = [], [], []
    for index in range(samples):
        matching = sd_partial(profile, random_order(seed, index, profile.n))
        utilities.append(float(linear_utility_partial(matching, profile)))
        matched.append(len(matching))
        if benchmark is not None:
            happy.append(ordinal_happy_partial(matching, benchmark, profile) / profile.n)

    return PartialEstimate(
        Estimate.from_values(utilities),
        Estimate.from_values(matched),
        Estimate.from_values(happy) if benchmark is not None else None,
    )


def rsd_partial_exact(
    profile: PartialProfile,
    benchmark: Optional[Matching] = None,
    guard: int = ENUM_GUARD,
) -> PartialOutcome:
    """
    Точные средние RSD на неполных списках по всем n! порядкам.

    Порядки группируются по состоянию (пришедшие агенты, занятые предметы):
    выбор агента зависит только от множества занятых предметов.

    :param profile: Профиль неполных списков.
    :param benchmark: Эталон для числа довольных агентов.
    :param guard: Максимальное n для перебора.
    :return: Точные средние.
    """

    n = profile.n
    if n > guard:
        raise TooLargeError(n, guard)

    def gain(agent: int, item: Optional[int]) -> tuple[Fraction, int, int]:
        if item is None:
            utility = Fraction(0)
        else:
            length = len(profile.lists[agent])
            utility = Fraction(length + 1 - profile.position_of(agent, item), length)
        target = None if benchmark is None else benchmark.item_of(agent)
        if target is None:
            pleased = 1
        else:
            pleased = int(item is not None and profile.position_of(agent, item) <= profile.position_of(agent, target))
        return utility, int(item is not None), pleased

    layer: dict[tuple[int, int], int] = {(0, 0): 1}
    weighted_utility, matched, happy = Fraction(0), 0, 0
    for t in range(n):
        completions = math.factorial(n - t - 1)
        following: defaultdict[tuple[int, int], int] = defaultdict(int)
        for (arrived, taken), count in layer.items():
            for agent in range(n):
                if arrived >> agent & 1:
                    continue
                item = next((c for c in profile.lists[agent] if not taken >> c & 1), None)
                utility, got, pleased = gain(agent, item)
                weight = count * completions
                weighted_utility += utility * weight
                matched += got * weight
                happy += pleased * weight
                following[(arrived | 1 << agent, taken if item is None else taken | 1 << item)] += count
        layer = following

    total = math.factorial(n)

    return PartialOutcome(
        weighted_utility / total,
        Fraction(matched, total),
        Fraction(happy, total) if benchmark is not None else None,
    )


def kvv_expected_matching(profile: PartialProfile, samples: int, seed: int) -> Estimate:
    """
    Ожидаемый размер паросочетания диктатуры со случайным порядком агентов
    (эквивалент алгоритма RANKING для онлайн-паросочетаний).

    :param profile: Профиль неполных списков.
    :param samples: Количество выборок.
    :param seed: Зерно.
    :return: Оценка среднего числа назначенных агентов.
    """

    if samples < 1:
        raise ValueError("Количество выборок должно быть не меньше 1")

    sizes = [len(sd_partial(profile, random_order(seed, index, profile.n))) for index in range(samples)]

    return Estimate.from_values(sizes)


def optimal_linear_partial(profile: PartialProfile) -> tuple[Fraction, Matching]:
    """
    Паросочетание максимальной полезности на неполных списках (не обязательно совершенное).

    Решатель задачи о назначениях работает с весами в числах с плавающей точкой;
    значение найденного паросочетания пересчитывается точно.

    :param profile: Профиль неполных списков.
    :return: Полезность и паросочетание.
    """

    if max(profile.n, profile.m) > DENSE_ASSIGNMENT_LIMIT:
        raise TooLargeError(max(profile.n, profile.m), DENSE_ASSIGNMENT_LIMIT)

    weights = np.zeros((profile.n, profile.m))
    for agent, items in enumerate(profile.lists):
        length = len(items)
        for position, item in enumerate(items, start=1):
            weights[agent, item] = (length + 1 - position) / length

    rows, cols = linear_sum_assignment(weights, maximize=True)
    matching = Matching(
        {int(agent): int(item) for agent, item in zip(rows, cols) if profile.position_of(agent, item) is not None}
    )
    return linear_utility_partial(matching, profile), matching

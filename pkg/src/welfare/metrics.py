"""
Порядковые и линейные метрики благосостояния.

Соглашение о неназначенных агентах: агент, не назначенный в эталоне, считается
довольным; агент, назначенный в эталоне, но не получивший предмета, — недовольным.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Collection, Optional, Union

from core.errors import InvalidMatchingError
from core.models import AllocationMatrix, Matching, PreferenceProfile
from logger import get_logger
from mechanisms.ps import ExhaustTimes, exhaust_times

logger = get_logger(__name__)


@dataclass(frozen=True)
class WelfareReport:
    """
    Сводка благосостояния распределения.

    ``ordinal_happy`` — ожидаемое число агентов, получивших предмет не хуже эталонного
    (None, если эталон не задан); ``linear_utility`` — ожидаемая сумма (n − rank + 1)/n;
    ``opt_linear`` — оптимальная линейная полезность.
    """

    n: int
    linear_utility: Fraction
    opt_linear: Fraction
    ordinal_happy: Optional[Fraction] = None

    @property
    def linear_ratio(self) -> Fraction:
        return self.linear_utility / self.opt_linear

    @property
    def ordinal_ratio(self) -> Optional[Fraction]:
        return None if self.ordinal_happy is None else self.ordinal_happy / self.n


def _check(matching: Matching, profile: PreferenceProfile) -> None:
    matching.validate_for(profile.n)


def ordinal_happy_count(matching: Matching, benchmark: Matching, profile: PreferenceProfile) -> int:
    """
    Число агентов, получивших предмет не хуже эталонного.

    :param matching: Оцениваемое паросочетание.
    :param benchmark: Эталонное паросочетание.
    :param profile: Профиль предпочтений.
    :return: Количество довольных агентов.
    """

    _check(matching, profile)
    _check(benchmark, profile)

    happy = 0
    for agent in range(profile.n):
        target = benchmark.item_of(agent)
        received = matching.item_of(agent)
        if target is None:
            happy += 1
        elif received is not None and profile.rank_of(agent, received) <= profile.rank_of(agent, target):
            happy += 1

    return happy


def expected_ordinal_welfare(matrix: AllocationMatrix, benchmark: Matching, profile: PreferenceProfile) -> Fraction:
    """
    Ожидаемое число довольных агентов: Σ_a Σ_{i не хуже M*(a)} x(a, i).

    :param matrix: Матрица вероятностей назначения.
    :param benchmark: Совершенное эталонное паросочетание.
    :param profile: Профиль предпочтений.
    :return: Точное рациональное значение.
    """

    if not benchmark.is_perfect(profile.n):
        raise InvalidMatchingError("Эталонное паросочетание должно быть совершенным")

    total = Fraction(0)
    for agent, row in enumerate(matrix.rows):
        threshold = profile.rank_of(agent, benchmark.assignment[agent])
        total += sum((value for item, value in row.items() if profile.rank_of(agent, item) <= threshold), Fraction(0))

    return total


def ps_ordinal_via_times(
    profile: PreferenceProfile,
    benchmark: Matching,
    times: Optional[ExhaustTimes] = None,
) -> Fraction:
    """
    Оценка снизу порядкового благосостояния PS через моменты исчерпания: до момента
    исчерпания M*(a) агент ест только предметы не хуже M*(a), поэтому получает такой предмет
    с вероятностью не меньше этого момента. Равенство достигается, если после исчерпания M*(a)
    агент больше не ест предметы не хуже M*(a).

    :param profile: Профиль предпочтений.
    :param benchmark: Совершенное эталонное паросочетание.
    :param times: Готовые моменты исчерпания (если уже вычислены).
    :return: Σ_a t_{M*(a)}.
    """

    if not benchmark.is_perfect(profile.n):
        raise InvalidMatchingError("Эталонное паросочетание должно быть совершенным")

    times = exhaust_times(profile) if times is None else times

    return sum((times[item] for _, item in benchmark.items()), Fraction(0))


def linear_utility(
    allocation: Union[Matching, AllocationMatrix],
    profile: PreferenceProfile,
    agents: Optional[Collection[int]] = None,
    items: Optional[Collection[int]] = None,
) -> Fraction:
    """
    Линейная полезность: предмет ранга r даёт агенту (n − r + 1)/n.

    Необязательные ``agents`` и ``items`` ограничивают сумму подматрицей
    (например, элементами, в которых два распределения различаются).

    :param allocation: Паросочетание или матрица вероятностей.
    :param profile: Профиль предпочтений.
    :param agents: Учитываемые агенты.
    :param items: Учитываемые предметы.
    :return: Точное значение полезности.
    """

    n = profile.n
    if isinstance(allocation, Matching):
        _check(allocation, profile)
        entries = [(agent, item, Fraction(1)) for agent, item in allocation.items()]
    else:
        entries = [(agent, item, value) for agent, row in enumerate(allocation.rows) for item, value in row.items()]

    return sum(
        (
            value * Fraction(n - profile.rank_of(agent, item) + 1, n)
            for agent, item, value in entries
            if (agents is None or agent in agents) and (items is None or item in items)
        ),
        Fraction(0),
    )


def popularity_margin(first: Matching, second: Matching, profile: PreferenceProfile) -> int:
    """
    Разность числа агентов, строго предпочитающих первое паросочетание, и числа
    агентов, строго предпочитающих второе. Отсутствие предмета хуже любого предмета.

    :param first: Паросочетание M.
    :param second: Паросочетание M′.
    :param profile: Профиль предпочтений.
    :return: Знаковая разность голосов.
    """

    _check(first, profile)
    _check(second, profile)

    def rank(matching: Matching, agent: int) -> int:
        item = matching.item_of(agent)
        return profile.n + 1 if item is None else profile.rank_of(agent, item)

    margin = 0
    for agent in range(profile.n):
        left, right = rank(first, agent), rank(second, agent)
        margin += (left < right) - (left > right)

    return margin


def welfare_report(
    matrix: AllocationMatrix,
    profile: PreferenceProfile,
    opt_linear: Fraction,
    benchmark: Optional[Matching] = None,
) -> WelfareReport:
    """
    Сводка благосостояния матрицы назначения.

    :param matrix: Матрица вероятностей.
    :param profile: Профиль предпочтений.
    :param opt_linear: Оптимальная линейная полезность экземпляра.
    :param benchmark: Эталон для порядковой метрики.
    :return: Отчёт.
    """

    ordinal = None if benchmark is None else expected_ordinal_welfare(matrix, benchmark, profile)
    report = WelfareReport(profile.n, linear_utility(matrix, profile), opt_linear, ordinal)
    logger.info("Линейная полезность %s из %s, довольных %s", report.linear_utility, opt_linear, ordinal)

    return report

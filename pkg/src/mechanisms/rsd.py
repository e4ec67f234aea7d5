"""
Случайная последовательная диктатура (RSD): точное распределение перебором порядков,
оценка Монте-Карло и траектория «мёртвых» агентов.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

from core.errors import TooLargeError
from core.models import AllocationMatrix, Matching, PreferenceProfile
from core.sampling import random_order
from core.serial import serial_dictatorship, serial_picks
from logger import get_logger
from settings import ENUM_GUARD

logger = get_logger(__name__)

# состояние перебора: (маска пришедших агентов, маска занятых предметов)
State = tuple[int, int]


@dataclass(frozen=True)
class RsdTrajectory:
    """
    Ожидаемые величины после t шагов RSD, t = 0..n.

    ``happy[t]`` — ожидаемое число агентов, пришедших к шагу t и получивших предмет
    не хуже эталонного; ``dead[t]`` — ожидаемое число «мёртвых» агентов на шаге t.
    """

    happy: tuple[Fraction, ...]
    dead: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.happy) - 1

    def satisfies_recurrence(self) -> bool:
        """
        Проверка тождества happy[t+1] − happy[t] = 1 − dead[t] / (n − t) для всех t < n.

        :return: Тождество выполняется точно.
        """

        return all(
            self.happy[t + 1] - self.happy[t] == 1 - self.dead[t] / (self.n - t) for t in range(self.n)
        )


@dataclass(frozen=True)
class MonteCarloEstimate:
    """
    Выборочная оценка матрицы назначения и стандартные ошибки её элементов.
    """

    matrix: AllocationMatrix
    samples: int

    def standard_error(self, agent: int, item: int) -> float:
        """
        Стандартная ошибка выборочного среднего индикатора «агент получил предмет».

        :param agent: Номер агента.
        :param item: Номер предмета.
        :return: Стандартная ошибка (0 при одной выборке).
        """

        if self.samples < 2:
            return 0.0
        p = float(self.matrix.entry(agent, item))
        return math.sqrt(p * (1 - p) / (self.samples - 1))


@dataclass(frozen=True)
class SampleWelfare:
    """
    Благосостояние в отдельных выборках RSD: линейная полезность и число «довольных» агентов.
    """

    utilities: tuple[Fraction, ...]
    happy: Optional[tuple[int, ...]] = None

    @property
    def mean_utility(self) -> Fraction:
        return sum(self.utilities, Fraction(0)) / len(self.utilities)

    @property
    def utility_stderr(self) -> float:
        return _stderr([float(value) for value in self.utilities])

    @property
    def mean_happy(self) -> Optional[Fraction]:
        return None if self.happy is None else Fraction(sum(self.happy), len(self.happy))

    @property
    def happy_stderr(self) -> Optional[float]:
        return None if self.happy is None else _stderr([float(value) for value in self.happy])


def _stderr(values: Sequence[float]) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1) / math.sqrt(len(values)))


def _check_guard(profile: PreferenceProfile, guard: int) -> None:
    if profile.n > guard:
        raise TooLargeError(profile.n, guard)


def _best_free(items: Sequence[int], taken: int) -> int:
    return next(item for item in items if not taken >> item & 1)


def _walk_layers(profile: PreferenceProfile) -> Iterator[tuple[int, dict[State, int], list[tuple[State, int, int]]]]:
    """
    Послойный обход всех порядков прихода.

    Порядки с одинаковым множеством пришедших агентов и занятых предметов
    неразличимы для дальнейшего хода алгоритма, поэтому слой t хранит состояния
    и число префиксов длины t, приводящих в каждое из них.

    :param profile: Профиль предпочтений.
    :return: Тройки (t, слой, переходы (состояние, агент, предмет)); последний слой — t = n без переходов.
    """

    n = profile.n
    lists = profile.lists
    layer: dict[State, int] = {(0, 0): 1}
    for t in range(n + 1):
        moves = []
        if t < n:
            for state in layer:
                arrived, taken = state
                for agent in range(n):
                    if not arrived >> agent & 1:
                        moves.append((state, agent, _best_free(lists[agent], taken)))
        yield t, layer, moves

        following: defaultdict[State, int] = defaultdict(int)
        for (arrived, taken), agent, item in moves:
            following[(arrived | 1 << agent, taken | 1 << item)] += layer[(arrived, taken)]
        layer = following


def rsd_exact(profile: PreferenceProfile, guard: int = ENUM_GUARD) -> AllocationMatrix:
    """
    Точное распределение RSD: доля порядков, в которых агент получает предмет.

    :param profile: Профиль предпочтений.
    :param guard: Максимальное n для перебора.
    :return: Дважды стохастическая матрица с точными рациональными элементами.
    :raises TooLargeError: n превышает ограничение.
    """

    _check_guard(profile, guard)
    n = profile.n
    logger.info("Точный расчёт RSD для n=%s ...", n)

    counts: list[defaultdict[int, int]] = [defaultdict(int) for _ in range(n)]
    for t, layer, moves in _walk_layers(profile):
        completions = math.factorial(n - t - 1) if t < n else 0
        for state, agent, item in moves:
            counts[agent][item] += layer[state] * completions

    return AllocationMatrix.from_counts(counts, math.factorial(n))


def rsd_exact_bruteforce(profile: PreferenceProfile, guard: int = ENUM_GUARD) -> AllocationMatrix:
    """
    Точное распределение RSD прямым перебором всех n! порядков (эталон для проверок).

    :param profile: Профиль предпочтений.
    :param guard: Максимальное n для перебора.
    :return: Матрица вероятностей.
    """

    _check_guard(profile, guard)
    counts: list[defaultdict[int, int]] = [defaultdict(int) for _ in range(profile.n)]
    for order in itertools.permutations(range(profile.n)):
        for agent, item in serial_dictatorship(profile, order).items():
            counts[agent][item] += 1

    return AllocationMatrix.from_counts(counts, math.factorial(profile.n))


def rsd_monte_carlo(profile: PreferenceProfile, samples: int, seed: int) -> MonteCarloEstimate:
    """
    Оценка распределения RSD по случайным порядкам прихода.

    Выборка ``k`` использует собственный поток, определяемый парой (seed, k),
    поэтому результат детерминирован для заданных (seed, samples).

    :param profile: Профиль предпочтений.
    :param samples: Количество выборок (не менее 1).
    :param seed: Зерно.
    :return: Оценка матрицы со стандартными ошибками.
    """

    if samples < 1:
        raise ValueError("Количество выборок должно быть не меньше 1")

    logger.info("RSD Монте-Карло: n=%s, выборок %s, зерно %s ...", profile.n, samples, seed)
    counts: list[defaultdict[int, int]] = [defaultdict(int) for _ in range(profile.n)]
    for index in range(samples):
        agents, items = serial_picks(profile, random_order(seed, index, profile.n))
        for agent, item in zip(agents, items):
            counts[agent][item] += 1

    return MonteCarloEstimate(AllocationMatrix.from_counts(counts, samples), samples)


def rsd_sample_welfare(
    profile: PreferenceProfile,
    samples: int,
    seed: int,
    benchmark: Optional[Matching] = None,
) -> SampleWelfare:
    """
    Линейная полезность (и число довольных агентов при заданном эталоне) в каждой выборке RSD.

    :param profile: Профиль предпочтений.
    :param samples: Количество выборок.
    :param seed: Зерно.
    :param benchmark: Эталонное совершенное паросочетание.
    :return: Значения по выборкам.
    """

    if samples < 1:
        raise ValueError("Количество выборок должно быть не меньше 1")

    n = profile.n
    benchmark_ranks = None
    if benchmark is not None:
        benchmark_ranks = profile.ranks[np.arange(n), list(benchmark.to_permutation(n))]

    utilities = []
    happy = []
    for index in range(samples):
        agents, items = serial_picks(profile, random_order(seed, index, n))
        ranks = profile.ranks[agents, items]
        utilities.append(Fraction(int(n * n + n - ranks.sum()), n))
        if benchmark_ranks is not None:
            happy.append(int((ranks <= benchmark_ranks[agents]).sum()))
        logger.debug("Выборка %s: полезность %s", index, utilities[-1])

    return SampleWelfare(tuple(utilities), tuple(happy) if benchmark is not None else None)


def dead_agents_after(profile: PreferenceProfile, benchmark: Matching, order: Sequence[int], t: int) -> int:
    """
    Число «мёртвых» агентов после первых t приходов.

    Агент мёртв, если он ещё не пришёл, а все предметы не хуже его эталонного уже распределены.

    :param profile: Профиль предпочтений.
    :param benchmark: Эталонное совершенное паросочетание.
    :param order: Порядок прихода агентов.
    :param t: Номер шага, 0 ≤ t ≤ n.
    :return: Количество мёртвых агентов.
    """

    if not 0 <= t <= profile.n:
        raise ValueError(f"Шаг {t} вне диапазона [0, {profile.n}]")

    agents, items = serial_picks(profile, list(order)[:t])
    arrived, taken = set(agents), set(items)

    return sum(
        1
        for agent, target in benchmark.items()
        if agent not in arrived
        and all(int(item) in taken for item in profile.prefs[agent][: profile.rank_of(agent, target)])
    )


def rsd_trajectory_exact(profile: PreferenceProfile, benchmark: Matching, guard: int = ENUM_GUARD) -> RsdTrajectory:
    """
    Точные средние по всем n! порядкам: довольные агенты и мёртвые агенты на каждом шаге.

    :param profile: Профиль предпочтений.
    :param benchmark: Эталонное совершенное паросочетание.
    :param guard: Максимальное n для перебора.
    :return: Траектория RSD.
    """

    _check_guard(profile, guard)
    n = profile.n
    total = math.factorial(n)
    # маска предметов, которые агент считает не хуже эталонного
    wanted = [
        sum(1 << int(item) for item in profile.prefs[agent][: profile.rank_of(agent, benchmark.assignment[agent])])
        for agent in range(n)
    ]

    happy = [Fraction(0)]
    dead = []
    for t, layer, moves in _walk_layers(profile):
        dead_orders = sum(
            count
            * sum(1 for agent in range(n) if not arrived >> agent & 1 and wanted[agent] & ~taken == 0)
            for (arrived, taken), count in layer.items()
        )
        dead.append(Fraction(dead_orders * math.factorial(n - t), total))
        if t == n:
            break

        happy_orders = sum(layer[state] for state, agent, item in moves if wanted[agent] >> item & 1)
        happy.append(happy[-1] + Fraction(happy_orders * math.factorial(n - t - 1), total))

    return RsdTrajectory(tuple(happy), tuple(dead))


def happy_counts_by_order(
    profile: PreferenceProfile, benchmark: Matching, guard: int = ENUM_GUARD
) -> Mapping[tuple[int, ...], int]:
    """
    Число довольных агентов для каждого порядка прихода (перебор n! порядков).

    :param profile: Профиль предпочтений.
    :param benchmark: Эталонное паросочетание.
    :param guard: Максимальное n для перебора.
    :return: Отображение порядок → число довольных агентов.
    """

    _check_guard(profile, guard)
    result = {}
    for order in itertools.permutations(range(profile.n)):
        matching = serial_dictatorship(profile, order)
        result[order] = sum(
            1
            for agent, item in matching.items()
            if profile.rank_of(agent, item) <= profile.rank_of(agent, benchmark.assignment[agent])
        )

    return result

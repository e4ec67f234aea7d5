"""
Вероятностная сериализация (PS): алгоритм «поедания» предметов в точной рациональной арифметике.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from core.models import AllocationMatrix, PreferenceProfile
from logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class Phase:
    """
    Фаза алгоритма: интервал времени, предметы, исчерпанные в его конце,
    и предмет, который ест каждый агент (``eating[a]``).
    """

    start: Fraction
    end: Fraction
    exhausted: frozenset[int]
    eating: tuple[int, ...]

    @property
    def duration(self) -> Fraction:
        return self.end - self.start


@dataclass(frozen=True)
class PhaseLog:
    """
    Журнал фаз, разбивающих отрезок [0, 1].
    """

    phases: tuple[Phase, ...]

    @property
    def durations(self) -> list[Fraction]:
        return [phase.duration for phase in self.phases]

    def phase_of(self, item: int) -> Optional[int]:
        """
        Номер фазы (с единицы), в конце которой исчерпан предмет.

        :param item: Номер предмета.
        :return: Номер фазы.
        """

        return next((index for index, phase in enumerate(self.phases, start=1) if item in phase.exhausted), None)

    def __len__(self) -> int:
        return len(self.phases)

    def __iter__(self) -> Iterator[Phase]:
        return iter(self.phases)


@dataclass(frozen=True)
class ExhaustTimes:
    """
    Моменты полного распределения предметов, ``times[i]`` ∈ (0, 1].
    """

    times: tuple[Fraction, ...]

    def __getitem__(self, item: int) -> Fraction:
        return self.times[item]

    def __len__(self) -> int:
        return len(self.times)

    def sorted_times(self) -> list[Fraction]:
        return sorted(self.times)

    def satisfies_observation(self) -> bool:
        """
        До момента j/n исчерпано не более j − 1 предметов: j-е по величине время не меньше j/n.

        :return: Свойство выполняется.
        """

        n = len(self.times)
        return all(time >= Fraction(j, n) for j, time in enumerate(self.sorted_times(), start=1))


@dataclass(frozen=True)
class PsOutcome:
    """
    Результат работы PS: матрица назначения, журнал фаз и моменты исчерпания предметов.
    """

    matrix: AllocationMatrix
    phases: PhaseLog
    exhaust_times: ExhaustTimes

    def __iter__(self) -> Iterator:
        return iter((self.matrix, self.phases, self.exhaust_times))


def ps_allocate(profile: PreferenceProfile) -> PsOutcome:
    """
    Событийное моделирование PS.

    В каждой фазе агент ест лучший из доступных предметов со скоростью 1.
    Фаза заканчивается в момент ближайшего исчерпания; все предметы, исчерпанные
    одновременно, закрывают одну и ту же фазу. Время исчерпания предмета равно
    остатку, делённому на число едоков. Алгоритм завершается ровно в момент 1.

    .. code-block::

        matrix, phases, times = ps_allocate(profile)

    :param profile: Профиль полных списков предпочтений.
    :return: Матрица, журнал фаз и моменты исчерпания.
    """

    n = profile.n
    logger.info("Запуск PS для n=%s ...", n)

    remaining = [Fraction(1)] * n
    allocated = [False] * n
    pointers = [0] * n
    times: list[Fraction] = [Fraction(0)] * n
    rows: list[defaultdict[int, Fraction]] = [defaultdict(Fraction) for _ in range(n)]
    phases = []
    clock = Fraction(0)

    lists = profile.lists
    while clock < 1:
        eating = []
        for agent in range(n):
            row = lists[agent]
            # агенты только спускаются по своим спискам
            while allocated[row[pointers[agent]]]:
                pointers[agent] += 1
            eating.append(row[pointers[agent]])

        eaters = Counter(eating)
        duration = min(remaining[item] / count for item, count in eaters.items())
        for agent, item in enumerate(eating):
            rows[agent][item] += duration

        start, clock = clock, clock + duration
        exhausted = set()
        for item, count in eaters.items():
            remaining[item] -= duration * count
            if remaining[item] == 0:
                allocated[item] = True
                times[item] = clock
                exhausted.add(item)

        phases.append(Phase(start, clock, frozenset(exhausted), tuple(eating)))
        logger.debug("Фаза %s: [%s, %s], исчерпаны %s", len(phases), start, clock, sorted(exhausted))

    logger.info("PS завершён: %s фаз", len(phases))

    return PsOutcome(AllocationMatrix(n, tuple(rows)), PhaseLog(tuple(phases)), ExhaustTimes(tuple(times)))


def exhaust_times(profile: PreferenceProfile) -> ExhaustTimes:
    """
    Моменты исчерпания предметов в PS.

    :param profile: Профиль предпочтений.
    :return: Моменты исчерпания.
    """

    return ps_allocate(profile).exhaust_times

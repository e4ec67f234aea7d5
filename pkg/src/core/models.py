"""
Описание типов предметной области: профиль предпочтений, паросочетание,
матрица вероятностей назначения и лотерея над паросочетаниями.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np

from core.errors import InvalidMatchingError, NotDoublyStochasticError


@dataclass(frozen=True, eq=False)
class PreferenceProfile:
    """
    Профиль полных списков предпочтений n агентов над n предметами.

    Строка ``prefs[a]`` — перестановка предметов от лучшего к худшему,
    ``ranks[a, i]`` — позиция предмета ``i`` в списке агента ``a`` (с единицы).
    Массивы доступны только для чтения.

    .. code-block::

        validate_profile(3, [[0, 1, 2], [0, 2, 1], [1, 0, 2]])
    """

    prefs: np.ndarray
    ranks: np.ndarray

    def __post_init__(self) -> None:
        self.prefs.setflags(write=False)
        self.ranks.setflags(write=False)

    @classmethod
    def from_array(cls, prefs: Any) -> PreferenceProfile:
        """
        Построение профиля из заведомо корректного массива списков (без проверки).

        :param prefs: Массив n×n, строки которого являются перестановками.
        :return: Профиль предпочтений.
        """

        array = np.array(prefs, dtype=np.int32)
        n = array.shape[0]
        ranks = np.empty_like(array)
        ranks[np.arange(n)[:, None], array] = np.arange(1, n + 1, dtype=np.int32)

        return cls(prefs=array, ranks=ranks)

    @property
    def n(self) -> int:
        return int(self.prefs.shape[0])

    @cached_property
    def lists(self) -> tuple[tuple[int, ...], ...]:
        """
        Списки предпочтений в виде кортежей Python (для переборных алгоритмов на малых n).

        :return: Кортеж списков предпочтений.
        """

        return tuple(tuple(row) for row in self.prefs.tolist())

    def preference_list(self, agent: int) -> tuple[int, ...]:
        return tuple(int(item) for item in self.prefs[agent])

    def rank_of(self, agent: int, item: int) -> int:
        return int(self.ranks[agent, item])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PreferenceProfile):
            return NotImplemented
        return bool(np.array_equal(self.prefs, other.prefs))

    __hash__ = None  # type: ignore

    def __repr__(self) -> str:
        return f"PreferenceProfile(n={self.n}, prefs={self.prefs.tolist()})"


@dataclass(frozen=True)
class Matching:
    """
    Частичное инъективное отображение агент → предмет.

    .. code-block::

        Matching({0: 0, 1: 2, 2: 1})
    """

    assignment: Mapping[int, int]

    def __post_init__(self) -> None:
        pairs = dict(sorted((int(agent), int(item)) for agent, item in self.assignment.items()))
        if len(set(pairs.values())) != len(pairs):
            raise InvalidMatchingError(f"Паросочетание не инъективно: {pairs}")
        object.__setattr__(self, "assignment", MappingProxyType(pairs))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> Matching:
        return cls({int(agent): int(item) for agent, item in pairs})

    @classmethod
    def from_permutation(cls, items: Sequence[int]) -> Matching:
        """
        Совершенное паросочетание, в котором агент ``a`` получает предмет ``items[a]``.

        :param items: Предметы агентов по порядку.
        :return: Паросочетание.
        """

        return cls({agent: int(item) for agent, item in enumerate(items)})

    @cached_property
    def inverse(self) -> Mapping[int, int]:
        return MappingProxyType({item: agent for agent, item in self.assignment.items()})

    def item_of(self, agent: int) -> Optional[int]:
        return self.assignment.get(agent)

    def agent_of(self, item: int) -> Optional[int]:
        return self.inverse.get(item)

    def is_perfect(self, n: int) -> bool:
        return len(self.assignment) == n and all(agent in self.assignment for agent in range(n))

    def validate_for(self, n: int, m: Optional[int] = None) -> None:
        """
        Проверка, что агенты и предметы паросочетания лежат в допустимых диапазонах.

        :param n: Количество агентов.
        :param m: Количество предметов (по умолчанию равно n).
        """

        m = n if m is None else m
        for agent, item in self.assignment.items():
            if not 0 <= agent < n or not 0 <= item < m:
                raise InvalidMatchingError(f"Пара ({agent}, {item}) вне диапазона n={n}, m={m}")

    def to_permutation(self, n: int) -> tuple[int, ...]:
        if not self.is_perfect(n):
            raise InvalidMatchingError("Паросочетание не является совершенным")
        return tuple(self.assignment[agent] for agent in range(n))

    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.assignment.items())

    def items(self) -> Iterable[tuple[int, int]]:
        return self.assignment.items()

    def __len__(self) -> int:
        return len(self.assignment)

    def __hash__(self) -> int:
        return hash(self.key())


@dataclass(frozen=True)
class AllocationMatrix:
    """
    Матрица вероятностей назначения x(a, i) в разреженном виде: ``rows[a]`` хранит
    только ненулевые элементы строки агента ``a``.
    """

    n: int
    rows: tuple[Mapping[int, Fraction], ...]

    def __post_init__(self) -> None:
        rows = tuple(
            MappingProxyType({int(item): Fraction(value) for item, value in sorted(row.items()) if value != 0})
            for row in self.rows
        )
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_dense(cls, grid: Sequence[Sequence[Any]]) -> AllocationMatrix:
        return cls(len(grid), tuple({item: Fraction(value) for item, value in enumerate(row)} for row in grid))

    @classmethod
    def from_counts(cls, counts: Sequence[Mapping[int, int]], total: int) -> AllocationMatrix:
        """
        Матрица частот: ``counts[a][i]`` делится на общее число испытаний.

        :param counts: Счётчики назначений по агентам.
        :param total: Общее число испытаний (порядков или выборок).
        :return: Матрица вероятностей.
        """

        return cls(len(counts), tuple({item: Fraction(count, total) for item, count in row.items()} for row in counts))

    @classmethod
    def from_matching(cls, matching: Matching, n: int) -> AllocationMatrix:
        return cls(n, tuple({matching.assignment[agent]: Fraction(1)} for agent in range(n)))

    def entry(self, agent: int, item: int) -> Fraction:
        return self.rows[agent].get(item, Fraction(0))

    def row_sum(self, agent: int) -> Fraction:
        return sum(self.rows[agent].values(), Fraction(0))

    def column_sums(self) -> list[Fraction]:
        sums: defaultdict[int, Fraction] = defaultdict(Fraction)
        for row in self.rows:
            for item, value in row.items():
                sums[item] += value
        return [sums[item] for item in range(self.n)]

    def support(self) -> list[tuple[int, int]]:
        return [(agent, item) for agent, row in enumerate(self.rows) for item in row]

    def is_doubly_stochastic(self) -> bool:
        if len(self.rows) != self.n:
            return False
        if any(not 0 <= value <= 1 or not 0 <= item < self.n for row in self.rows for item, value in row.items()):
            return False
        return all(self.row_sum(agent) == 1 for agent in range(self.n)) and all(
            total == 1 for total in self.column_sums()
        )

    def validate(self) -> None:
        """
        Проверка дважды стохастичности (точное равенство сумм строк и столбцов единице).
        """

        if not self.is_doubly_stochastic():
            raise NotDoublyStochasticError("Суммы строк и столбцов матрицы должны быть равны 1")

    def to_dense(self) -> list[list[Fraction]]:
        return [[self.entry(agent, item) for item in range(self.n)] for agent in range(self.n)]


@dataclass(frozen=True)
class Lottery:
    """
    Выпуклая комбинация совершенных паросочетаний (результат разложения Биркгофа – фон Неймана).
    """

    components: tuple[tuple[Fraction, Matching], ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ValueError("Лотерея должна содержать хотя бы одно паросочетание")
        if any(weight <= 0 for weight, _ in self.components):
            raise ValueError("Веса лотереи должны быть строго положительны")
        if sum((weight for weight, _ in self.components), Fraction(0)) != 1:
            raise ValueError("Сумма весов лотереи должна быть равна 1")

    @property
    def n(self) -> int:
        return len(self.components[0][1])

    @property
    def weights(self) -> list[Fraction]:
        return [weight for weight, _ in self.components]

    def recombine(self) -> AllocationMatrix:
        """
        Взвешенная сумма матриц перестановок компонент.

        :return: Дважды стохастическая матрица.
        """

        rows: list[defaultdict[int, Fraction]] = [defaultdict(Fraction) for _ in range(self.n)]
        for weight, matching in self.components:
            for agent, item in matching.items():
                rows[agent][item] += weight

        return AllocationMatrix(self.n, tuple(rows))

    def sample(self, rng: np.random.Generator) -> Matching:
        """
        Выбор одного паросочетания в соответствии с весами.

        :param rng: Генератор случайных чисел.
        :return: Паросочетание.
        """

        probabilities = np.array([float(weight) for weight in self.weights])
        index = int(rng.choice(len(self.components), p=probabilities / probabilities.sum()))

        return self.components[index][1]

    def __len__(self) -> int:
        return len(self.components)

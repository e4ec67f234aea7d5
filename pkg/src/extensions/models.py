"""
Экземпляры с неполными списками предпочтений и со спросом на наборы предметов.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from numbers import Integral
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence

from core.errors import (
    InvalidMatchingError,
    NotPermutationError,
    ProfileError,
    WrongLengthError,
    ZeroAgentsError,
)
from core.models import PreferenceProfile

Bundle = tuple[int, ...]


@dataclass(frozen=True)
class PartialProfile:
    """
    n агентов и m предметов; агент упорядочивает произвольное подмножество
    предметов ``lists[a]`` (список может быть пустым).
    """

    n: int
    m: int
    lists: tuple[tuple[int, ...], ...]

    @cached_property
    def positions(self) -> tuple[Mapping[int, int], ...]:
        """
        Позиции предметов в списках агентов (с единицы).

        :return: Отображения предмет → позиция для каждого агента.
        """

        return tuple(
            MappingProxyType({item: position for position, item in enumerate(items, start=1)}) for items in self.lists
        )

    def position_of(self, agent: int, item: int) -> Optional[int]:
        return self.positions[agent].get(item)

    @classmethod
    def from_complete(cls, profile: PreferenceProfile) -> PartialProfile:
        return cls(profile.n, profile.n, profile.lists)


@dataclass(frozen=True)
class BundleProfile:
    """
    Агенты со спросом на наборы из K предметов: ``lists[a]`` — упорядоченные наборы,
    каждый набор — отсортированный кортеж из K различных предметов.
    """

    n: int
    item_count: int
    demand: int
    lists: tuple[tuple[Bundle, ...], ...]

    def bundle(self, agent: int, index: int) -> Bundle:
        return self.lists[agent][index]


@dataclass(frozen=True)
class BundleAllocation:
    """
    Распределение наборов: агент → номер набора в его собственном списке.
    """

    assignment: Mapping[int, int]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "assignment", MappingProxyType(dict(sorted((int(a), int(i)) for a, i in self.assignment.items())))
        )

    def index_of(self, agent: int) -> Optional[int]:
        return self.assignment.get(agent)

    def items(self) -> Iterable[tuple[int, int]]:
        return self.assignment.items()

    def __len__(self) -> int:
        return len(self.assignment)

    def validate_for(self, profile: BundleProfile) -> None:
        """
        Проверка, что наборы есть в списках владельцев и попарно не пересекаются.

        :param profile: Профиль наборов.
        :raises InvalidMatchingError: Набор не из списка или наборы пересекаются.
        """

        used: set[int] = set()
        for agent, index in self.assignment.items():
            if not 0 <= agent < profile.n or not 0 <= index < len(profile.lists[agent]):
                raise InvalidMatchingError(f"Агенту {agent} назначен несуществующий набор {index}")
            bundle = set(profile.bundle(agent, index))
            if used & bundle:
                raise InvalidMatchingError(f"Набор агента {agent} пересекается с уже распределёнными предметами")
            used |= bundle


def _check_list(agent: int, items: Sequence[int], m: int) -> None:
    seen: set[int] = set()
    for entry, item in enumerate(items):
        if not isinstance(item, Integral) or not 0 <= item < m:
            raise NotPermutationError(f"Агент {agent}: предмет {item} вне диапазона [0, {m})", agent=agent, entry=entry)
        if item in seen:
            raise NotPermutationError(f"Агент {agent}: предмет {item} повторяется", agent=agent, entry=entry)
        seen.add(item)


def validate_partial_profile(n: int, m: int, lists: Sequence[Sequence[int]]) -> PartialProfile:
    """
    Проверка неполных списков: элементы различны и лежат в [0, m).

    :param n: Количество агентов.
    :param m: Количество предметов.
    :param lists: Списки агентов.
    :return: Проверенный профиль.
    """

    if n <= 0:
        raise ZeroAgentsError("Профиль должен содержать хотя бы одного агента")
    if len(lists) != n:
        raise WrongLengthError(f"Ожидалось {n} списков, получено {len(lists)}")

    for agent, items in enumerate(lists):
        _check_list(agent, items, m)

    return PartialProfile(n, m, tuple(tuple(int(item) for item in items) for items in lists))


def validate_bundle_profile(
    n: int,
    item_count: int,
    demand: int,
    lists: Sequence[Sequence[Sequence[int]]],
) -> BundleProfile:
    """
    Проверка профиля наборов: каждый набор состоит из K различных предметов,
    наборы в списке одного агента различны.

    :param n: Количество агентов.
    :param item_count: Количество предметов.
    :param demand: Размер набора K.
    :param lists: Упорядоченные наборы агентов.
    :return: Проверенный профиль.
    """

    if n <= 0:
        raise ZeroAgentsError("Профиль должен содержать хотя бы одного агента")
    if demand < 1:
        raise ProfileError(f"Размер набора должен быть положительным, получено {demand}")
    if len(lists) != n:
        raise WrongLengthError(f"Ожидалось {n} списков, получено {len(lists)}")

    profile_lists = []
    for agent, bundles in enumerate(lists):
        normalized = []
        for entry, bundle in enumerate(bundles):
            if len(bundle) != demand:
                raise WrongLengthError(
                    f"Агент {agent}: набор {entry} содержит {len(bundle)} предметов вместо {demand}",
                    agent=agent,
                    entry=entry,
                )
            _check_list(agent, bundle, item_count)
            normalized.append(tuple(sorted(int(item) for item in bundle)))
        if len(set(normalized)) != len(normalized):
            raise NotPermutationError(f"Агент {agent}: наборы в списке повторяются", agent=agent)
        profile_lists.append(tuple(normalized))

    return BundleProfile(n, item_count, demand, tuple(profile_lists))

"""
Последовательная диктатура: агенты приходят в заданном порядке и забирают
лучший из ещё не распределённых предметов.
"""
from typing import Sequence

import numpy as np

from core.models import Matching, PreferenceProfile

# начиная с этого n выбор предмета выполняется векторно
VECTORIZED_FROM = 128


def serial_dictatorship(profile: PreferenceProfile, order: Sequence[int]) -> Matching:
    """
    Детерминированная последовательная диктатура.

    Агент на позиции t получает предмет с наименьшим рангом среди не занятых
    агентами на позициях 1..t−1. Полнота списков гарантирует совершенное паросочетание.

    :param profile: Профиль предпочтений.
    :param order: Перестановка агентов (порядок прихода).
    :return: Совершенное паросочетание.
    """

    return Matching(dict(zip(*serial_picks(profile, order))))


def serial_picks(profile: PreferenceProfile, order: Sequence[int]) -> tuple[list[int], list[int]]:
    """
    Последовательность выборов: агенты в порядке прихода и доставшиеся им предметы.

    :param profile: Профиль предпочтений.
    :param order: Перестановка агентов.
    :return: Пара списков (агенты, предметы) одинаковой длины.
    """

    agents = [int(agent) for agent in order]
    if profile.n >= VECTORIZED_FROM:
        return agents, _picks_vectorized(profile, agents)

    lists = profile.lists
    taken: set[int] = set()
    items = []
    for agent in agents:
        item = next(candidate for candidate in lists[agent] if candidate not in taken)
        taken.add(item)
        items.append(item)

    return agents, items


def _picks_vectorized(profile: PreferenceProfile, agents: list[int]) -> list[int]:
    free = np.ones(profile.n, dtype=bool)
    items = []
    for agent in agents:
        row = profile.prefs[agent]
        item = int(row[int(np.argmax(free[row]))])
        free[item] = False
        items.append(item)

    return items

"""
Проверка профилей предпочтений.
"""
from typing import Sequence

import numpy as np

from core.errors import NotPermutationError, WrongLengthError, ZeroAgentsError
from core.models import PreferenceProfile
from logger import get_logger

logger = get_logger(__name__)


def validate_profile(n: int, preferences: Sequence[Sequence[int]]) -> PreferenceProfile:
    """
    Проверка сырого профиля и построение неизменяемого :class:`PreferenceProfile`.

    Ошибка указывает агента и позицию первого некорректного элемента.

    :param n: Количество агентов и предметов.
    :param preferences: Списки предпочтений агентов (предметы нумеруются с нуля).
    :return: Проверенный профиль.
    :raises ZeroAgentsError: Профиль пуст.
    :raises WrongLengthError: Количество списков или длина списка отличается от n.
    :raises NotPermutationError: Повтор предмета или предмет вне диапазона.
    """

    if n <= 0:
        raise ZeroAgentsError("Профиль должен содержать хотя бы одного агента")
    if len(preferences) != n:
        raise WrongLengthError(f"Ожидалось {n} списков, получено {len(preferences)}")

    for agent, items in enumerate(preferences):
        if len(items) != n:
            raise WrongLengthError(
                f"Список агента {agent} содержит {len(items)} элементов вместо {n}",
                agent=agent,
            )
        row = np.asarray(items)
        if row.dtype.kind not in "iu":
            raise NotPermutationError(f"Агент {agent}: список должен состоять из целых чисел", agent=agent, entry=0)

        outside = np.flatnonzero((row < 0) | (row >= n))
        if outside.size:
            entry = int(outside[0])
            raise NotPermutationError(
                f"Агент {agent}: предмет {row[entry]} на позиции {entry} вне диапазона [0, {n})",
                agent=agent,
                entry=entry,
            )

        # первое вхождение, повторяющее уже встреченный предмет
        order = np.argsort(row, kind="stable")
        repeated = np.flatnonzero(row[order][1:] == row[order][:-1])
        if repeated.size:
            entry = int(order[repeated + 1].min())
            raise NotPermutationError(
                f"Агент {agent}: предмет {row[entry]} повторяется на позиции {entry}",
                agent=agent,
                entry=entry,
            )

    logger.debug("Профиль из %s агентов прошёл проверку", n)

    return PreferenceProfile.from_array(preferences)


def rank_of(profile: PreferenceProfile, agent: int, item: int) -> int:
    """
    Позиция предмета в списке агента (1 — наиболее предпочтительный).

    :param profile: Профиль предпочтений.
    :param agent: Номер агента.
    :param item: Номер предмета.
    :return: Ранг предмета.
    """

    return profile.rank_of(agent, item)

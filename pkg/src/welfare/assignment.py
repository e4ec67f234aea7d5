"""
Оптимальное назначение для линейных полезностей.
"""
from fractions import Fraction

import numpy as np
from scipy.optimize import linear_sum_assignment

from core.errors import TooLargeError
from core.models import Matching, PreferenceProfile
from logger import get_logger
from settings import ASSIGNMENT_TIE_BREAK_LIMIT, DENSE_ASSIGNMENT_LIMIT

logger = get_logger(__name__)


def _assignment_value(weights: np.ndarray) -> int:
    if weights.size == 0:
        return 0
    rows, cols = linear_sum_assignment(weights, maximize=True)
    return int(weights[rows, cols].sum())


def _lexicographic_optimum(weights: np.ndarray, target: int) -> list[int]:
    """
    Лексикографически наименьшее назначение среди оптимальных: агенты по возрастанию
    закрепляются за наименьшим предметом, сохраняющим достижимость оптимума.
    """

    n = weights.shape[0]
    free = list(range(n))
    items = []
    for agent in range(n):
        for item in free:
            rest = [candidate for candidate in free if candidate != item]
            gained = int(weights[agent, item])
            if gained + _assignment_value(weights[agent + 1 :][:, rest]) == target:
                items.append(item)
                free = rest
                target -= gained
                break

    return items


def optimal_linear_welfare(
    profile: PreferenceProfile,
    tie_break_limit: int = ASSIGNMENT_TIE_BREAK_LIMIT,
) -> tuple[Fraction, Matching]:
    """
    Совершенное паросочетание максимального веса с весами (n − rank + 1)/n.

    Веса умножаются на n и становятся целыми, поэтому решатель задачи о назначениях
    находит точный оптимум. Для n ≤ ``tie_break_limit`` среди оптимумов выбирается
    лексикографически наименьший.

    :param profile: Профиль предпочтений.
    :param tie_break_limit: Максимальное n для лексикографического выбора оптимума.
    :return: Оптимальная полезность и паросочетание.
    """

    n = profile.n
    if n > DENSE_ASSIGNMENT_LIMIT:
        raise TooLargeError(n, DENSE_ASSIGNMENT_LIMIT)

    logger.info("Поиск оптимального назначения для n=%s ...", n)
    weights = (n + 1 - profile.ranks).astype(np.int64)
    rows, cols = linear_sum_assignment(weights, maximize=True)
    value = int(weights[rows, cols].sum())

    items = cols.tolist() if n > tie_break_limit else _lexicographic_optimum(weights, value)

    return Fraction(value, n), Matching.from_permutation(items)

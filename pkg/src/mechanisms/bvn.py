"""
Разложение Биркгофа – фон Неймана дважды стохастической матрицы в лотерею над паросочетаниями.
"""
from fractions import Fraction
from typing import Optional

import numpy as np

from core.models import AllocationMatrix, Lottery, Matching
from core.sampling import sample_stream
from logger import get_logger

logger = get_logger(__name__)


def _support_lists(residual: list[dict[int, Fraction]]) -> list[list[int]]:
    return [sorted(item for item, value in row.items() if value > 0) for row in residual]


def _augment(agent: int, support: list[list[int]], owner: list[int], visited: list[bool]) -> bool:
    """
    Поиск увеличивающего пути (алгоритм Куна) из агента с перебором предметов по возрастанию.
    """

    for item in support[agent]:
        if visited[item]:
            continue
        visited[item] = True
        if owner[item] < 0 or _augment(owner[item], support, owner, visited):
            owner[item] = agent
            return True

    return False


def _reroute(
    agent: int,
    target: int,
    support: list[list[int]],
    owner: list[int],
    fixed: int,
    visited: list[bool],
) -> bool:
    """
    Переназначение агента ``agent`` на свободный предмет ``target`` по чередующемуся пути,
    не затрагивающему агентов с номерами меньше ``fixed``.
    """

    for item in support[agent]:
        if visited[item]:
            continue
        visited[item] = True
        if item == target:
            owner[item] = agent
            return True
        holder = owner[item]
        if holder >= fixed and _reroute(holder, target, support, owner, fixed, visited):
            owner[item] = agent
            return True

    return False


def lexicographic_perfect_matching(support: list[list[int]]) -> Optional[list[int]]:
    """
    Лексикографически наименьшее совершенное паросочетание двудольного графа.

    Сначала строится любое совершенное паросочетание, затем агенты по возрастанию
    номеров закрепляются за наименьшим предметом, который допускает достройку
    оставшихся агентов.

    :param support: Списки смежности агентов (предметы по возрастанию).
    :return: ``items[a]`` — предмет агента ``a``, либо None, если совершенного паросочетания нет.
    """

    n = len(support)
    owner = [-1] * n
    for agent in range(n):
        if not _augment(agent, support, owner, [False] * n):
            return None

    items = [0] * n
    for item, agent in enumerate(owner):
        items[agent] = item

    for agent in range(n):
        for item in support[agent]:
            if item >= items[agent]:
                break
            holder = owner[item]
            if holder < agent:
                continue
            # агент забирает item, а прежний владелец ищет путь к освободившемуся предмету
            freed = items[agent]
            trial = owner.copy()
            trial[item] = agent
            trial[freed] = -1
            visited = [False] * n
            visited[item] = True
            if _reroute(holder, freed, support, trial, agent + 1, visited):
                owner = trial
                for position, current in enumerate(owner):
                    items[current] = position
                break

    return items


def bvn_decompose(matrix: AllocationMatrix) -> Lottery:
    """
    Разложение дважды стохастической матрицы в лотерею.

    На каждом шаге из графа носителя извлекается лексикографически наименьшее
    совершенное паросочетание (существует по теореме Холла), из матрицы вычитается
    его минимальный вес, пока матрица не обнулится.

    :param matrix: Дважды стохастическая матрица.
    :return: Лотерея, точно восстанавливающая матрицу.
    :raises NotDoublyStochasticError: Суммы строк или столбцов отличны от 1.
    """

    matrix.validate()
    n = matrix.n
    residual = [dict(row) for row in matrix.rows]
    components = []
    remaining = Fraction(1)

    while remaining > 0:
        items = lexicographic_perfect_matching(_support_lists(residual))
        if items is None:
            raise AssertionError("Носитель дважды стохастической матрицы обязан содержать совершенное паросочетание")

        weight = min(residual[agent][items[agent]] for agent in range(n))
        for agent in range(n):
            residual[agent][items[agent]] -= weight
            if residual[agent][items[agent]] == 0:
                del residual[agent][items[agent]]
        remaining -= weight
        components.append((weight, Matching.from_permutation(items)))
        logger.debug("Компонента %s: вес %s", len(components), weight)

    logger.info("Разложение построено: %s компонент", len(components))

    return Lottery(tuple(components))


def lottery_frequencies(lottery: Lottery, draws: int, seed: int) -> np.ndarray:
    """
    Частоты назначений при многократном розыгрыше лотереи.

    :param lottery: Лотерея.
    :param draws: Количество розыгрышей.
    :param seed: Зерно.
    :return: Матрица n×n частот (доли розыгрышей).
    """

    weights = np.array([float(weight) for weight in lottery.weights])
    choices = sample_stream(seed, 0).choice(len(lottery), size=draws, p=weights / weights.sum())
    hits = np.bincount(choices, minlength=len(lottery))

    frequencies = np.zeros((lottery.n, lottery.n))
    for count, (_, matching) in zip(hits, lottery.components):
        for agent, item in matching.items():
            frequencies[agent, item] += count

    return frequencies / draws

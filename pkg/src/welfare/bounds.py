"""
Аналитические оценки благосостояния RSD и PS.

Оценки-константы вычисляются в числах с плавающей точкой; величины, зависящие
от конкретного n, возвращаются точными дробями.
"""
import math
from fractions import Fraction
from typing import Optional

from scipy.integrate import quad
from scipy.optimize import bisect

from core.errors import BoundDomainError
from settings import BISECTION_TOLERANCE


def rsd_dead_bound(n: int, t: int) -> Fraction:
    """
    Верхняя оценка ожидаемого числа мёртвых агентов на шаге t: (t + 2)(n − t)/(n + 1).
    """

    return Fraction((t + 2) * (n - t), n + 1)


def rsd_ordinal_floor(n: int) -> Fraction:
    """
    Нижняя оценка ожидаемого числа довольных агентов в RSD: n/2 − 2.
    """

    return Fraction(n, 2) - 2


def ps_ordinal_floor(n: int) -> Fraction:
    """
    Нижняя оценка ожидаемого числа довольных агентов в PS: (n + 1)/2.
    """

    return Fraction(n + 1, 2)


def rsd_efficient_linear_floor(n: int) -> Fraction:
    """
    Оценка полезности RSD на эффективных экземплярах без слагаемого o(1):
    Σ_{t<n} (1 − t(t + 2)/(n(n + 1))) ≈ 2n/3.
    """

    return sum((1 - Fraction(t * (t + 2), n * (n + 1)) for t in range(n)), Fraction(0))


def ps_efficient_linear_floor(n: int) -> Fraction:
    """
    Оценка полезности PS на эффективных экземплярах: Σ_{j=1..n} (n² − (j − 1)²)/n² ≈ 2n/3.
    """

    return sum((Fraction(n * n - (j - 1) ** 2, n * n) for j in range(1, n + 1)), Fraction(0))


def kvv_recurrence_floor(n: int) -> Fraction:
    """
    Решение рекурсии ALG_{t+1} = (1 − 1/(n + 1)) ALG_t + (1 − 2/(n + 1)), ALG_0 = 0,
    для ожидаемого размера паросочетания случайного порядка на неполных списках.

    :param n: Количество агентов.
    :return: ALG_n.
    """

    value = Fraction(0)
    for _ in range(n):
        value = (1 - Fraction(1, n + 1)) * value + (1 - Fraction(2, n + 1))

    return value


def sd_partial_floor(k: int) -> Fraction:
    """
    Нижняя оценка полезности последовательной диктатуры на неполных списках:
    H(⌈k/2⌉), где k — число предметов, распределённых оптимумом.
    """

    return sum((Fraction(1, j) for j in range(1, (k + 1) // 2 + 1)), Fraction(0))


def rsd_general_linear_bound(alpha: float, beta: float) -> float:
    """
    Асимптотическая оценка линейного коэффициента RSD на произвольных экземплярах:
    min(1/2 + (α − β)³/6, 1/(2(1 − β + αβ))).

    .. code-block::

        rsd_general_linear_bound(0.77, 0.22)  # ≈ 0.5266

    :param alpha: Доля «хороших» агентов, 0 < β < α < 1.
    :param beta: Доля верхней части списка.
    :return: Значение оценки.
    :raises BoundDomainError: Параметры вне области определения.
    """

    if not 0 < beta < alpha < 1:
        raise BoundDomainError(f"Требуется 0 < beta < alpha < 1, получено alpha={alpha}, beta={beta}")

    return min(0.5 + (alpha - beta) ** 3 / 6, 1 / (2 * (1 - beta + alpha * beta)))


def rsd_general_linear_integrand(t: float, n: int, alpha: float, beta: float) -> float:
    """
    Подынтегральное выражение при конечном n: (α − (t + 2)/(n + 1)) (t/n − β).
    """

    return (alpha - (t + 2) / (n + 1)) * (t / n - beta)


def rsd_general_linear_quadrature(alpha: float, beta: float, n: Optional[int] = None) -> float:
    """
    Та же оценка, что :func:`rsd_general_linear_bound`, но с численным интегрированием.

    Без ``n`` интегрируется (α − x)(x − β) по [β, α]; при заданном n — конечное
    выражение по t ∈ [βn, α(n + 1) − 2] с нормировкой на n.

    :param alpha: Параметр α.
    :param beta: Параметр β.
    :param n: Количество агентов (None — предел n → ∞).
    :return: Значение оценки.
    """

    if not 0 < beta < alpha < 1:
        raise BoundDomainError(f"Требуется 0 < beta < alpha < 1, получено alpha={alpha}, beta={beta}")

    if n is None:
        benefit, _ = quad(lambda x: (alpha - x) * (x - beta), beta, alpha)
    else:
        benefit, _ = quad(rsd_general_linear_integrand, beta * n, alpha * (n + 1) - 2, args=(n, alpha, beta))
        benefit /= n

    return min(0.5 + benefit, 1 / (2 * (1 - beta + alpha * beta)))


def ps_general_linear_residual(beta: float) -> float:
    """
    Разность нормированных ALG и β·OPT для PS на произвольных экземплярах:
    1/2 + (1 − β)β²/2 + β³/6 − β(1/2 + β − β²/2).
    """

    return 0.5 + (1 - beta) * beta**2 / 2 + beta**3 / 6 - beta * (0.5 + beta - beta**2 / 2)


def ps_general_linear_constant(tolerance: float = BISECTION_TOLERANCE) -> float:
    """
    Корень β ∈ (0, 1) уравнения ALG = β·OPT (методом бисекции); ≈ 0.6602.

    :param tolerance: Точность по аргументу.
    :return: Константа β.
    """

    return float(bisect(ps_general_linear_residual, 0.0, 1.0, xtol=tolerance))


def kdemand_lower_bound(demand: int) -> float:
    """
    Нижняя оценка доли довольных агентов RSD при спросе на наборы из K предметов:
    1 − K·ln(1 + 1/K).

    :param demand: Размер набора K ≥ 1.
    :return: Доля довольных агентов.
    """

    if demand < 1:
        raise BoundDomainError(f"K должно быть не меньше 1, получено {demand}")

    return 1 - demand * math.log1p(1 / demand)


def kdemand_happy_sum(n: int, demand: int) -> Fraction:
    """
    Конечная сумма Σ_{t=1}^{⌊n/(K+1)⌋} (n − (K + 1)t)/(n − t) — нижняя оценка
    ожидаемого числа довольных агентов при спросе на наборы.

    :param n: Количество агентов.
    :param demand: Размер набора K.
    :return: Точное значение суммы.
    """

    return sum(
        (Fraction(n - (demand + 1) * t, n - t) for t in range(1, n // (demand + 1) + 1)),
        Fraction(0),
    )

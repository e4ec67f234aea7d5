"""
Тестирование аналитических оценок.
"""
import math
from fractions import Fraction as F

import pytest

from core.errors import BoundDomainError
from welfare.bounds import (
    kdemand_happy_sum,
    kdemand_lower_bound,
    kvv_recurrence_floor,
    ps_efficient_linear_floor,
    ps_general_linear_constant,
    ps_ordinal_floor,
    rsd_dead_bound,
    rsd_efficient_linear_floor,
    rsd_general_linear_bound,
    rsd_general_linear_quadrature,
    rsd_ordinal_floor,
    sd_partial_floor,
)


class TestExactBounds:
    """
    Тестирование оценок, зависящих от n.
    """

    def test_ordinal(self) -> None:
        """
        Порядковые оценки RSD и PS.
        """

        assert rsd_dead_bound(3, 0) == F(3, 2)
        assert rsd_dead_bound(5, 5) == 0
        assert rsd_ordinal_floor(7) == F(3, 2)
        assert ps_ordinal_floor(4) == F(5, 2)

    def test_kvv_recurrence(self) -> None:
        """
        Первые значения рекурсии для размера паросочетания.
        """

        assert kvv_recurrence_floor(1) == 0
        assert kvv_recurrence_floor(2) == F(5, 9)

    def test_sd_partial(self) -> None:
        """
        Гармонические числа от половины размера оптимума.
        """

        assert sd_partial_floor(4) == F(3, 2)
        assert sd_partial_floor(5) == F(11, 6)

    def test_efficient_linear(self) -> None:
        """
        Оценки на эффективных экземплярах приближаются к 2n/3.
        """

        n = 300
        assert float(rsd_efficient_linear_floor(n)) / n == pytest.approx(2 / 3, abs=0.01)
        assert float(ps_efficient_linear_floor(n)) / n == pytest.approx(2 / 3, abs=0.01)

    def test_kdemand_sum(self) -> None:
        """
        Конечная сумма для спроса на наборы.
        """

        assert kdemand_happy_sum(4, 1) == F(2, 3)


class TestConstants:
    """
    Тестирование асимптотических констант.
    """

    def test_rsd_general(self) -> None:
        """
        Константа RSD на произвольных экземплярах и её вычисление квадратурой.
        """

        bound = rsd_general_linear_bound(0.77, 0.22)

        assert bound == pytest.approx(0.5267, abs=1e-3)
        assert rsd_general_linear_quadrature(0.77, 0.22) == pytest.approx(bound, abs=1e-9)
        assert 0.5 < rsd_general_linear_quadrature(0.77, 0.22, n=10**6) <= bound + 1e-6

    @pytest.mark.parametrize("alpha, beta", [(0.2, 0.5), (1.0, 0.5), (0.5, 0.0)])
    def test_rsd_domain(self, alpha: float, beta: float) -> None:
        """
        Параметры вне области 0 < β < α < 1 отклоняются.

        :param alpha: Параметр α.
        :param beta: Параметр β.
        """

        with pytest.raises(BoundDomainError):
            rsd_general_linear_bound(alpha, beta)
        with pytest.raises(BoundDomainError):
            rsd_general_linear_quadrature(alpha, beta)

    def test_ps_general(self) -> None:
        """
        Корень уравнения для PS лежит в (0.66, 0.661).
        """

        assert 0.66 < ps_general_linear_constant() < 0.661

    def test_kdemand(self) -> None:
        """
        При K = 1 оценка равна 1 − ln 2 и убывает с ростом K.
        """

        assert kdemand_lower_bound(1) == pytest.approx(1 - math.log(2))
        assert kdemand_lower_bound(2) < kdemand_lower_bound(1)
        with pytest.raises(BoundDomainError):
            kdemand_lower_bound(0)

"""
Точная рациональная арифметика: сериализация дробей.
"""
from fractions import Fraction
from typing import Union

Rational = Fraction


def format_rational(value: Union[Fraction, int]) -> str:
    """
    Запись дроби в виде строки "числитель/знаменатель" (знаменатель присутствует всегда).

    .. code-block::

        format_rational(Fraction(34, 12))  # "17/6"
        format_rational(3)  # "3/1"

    :param value: Рациональное число.
    :return: Строковое представление без потери точности.
    """

    value = Fraction(value)

    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """
    Разбор строки "p/q" (или целого числа) в дробь.

    :param text: Строковое представление.
    :return: Рациональное число.
    """

    return Fraction(text.strip())


def to_decimal(value: Fraction, digits: int = 10) -> str:
    """
    Десятичное приближение дроби для табличных отчётов.

    :param value: Рациональное число.
    :param digits: Количество знаков после запятой.
    :return: Строка с десятичным приближением.
    """

    return f"{float(value):.{digits}f}"

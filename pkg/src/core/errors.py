"""
Исключения предметной области.
"""
from typing import Optional


class MatchWelfareError(Exception):
    """
    Базовое исключение приложения.
    """


class ProfileError(MatchWelfareError, ValueError):
    """
    Некорректный профиль предпочтений.
    """

    def __init__(self, message: str, agent: Optional[int] = None, entry: Optional[int] = None) -> None:
        """
        Конструктор.

        :param message: Описание ошибки.
        :param agent: Номер агента, в списке которого найдена ошибка.
        :param entry: Позиция ошибочного элемента в списке агента.
        """

        super().__init__(message)
        self.agent = agent
        self.entry = entry


class ZeroAgentsError(ProfileError):
    """
    В профиле нет ни одного агента.
    """


class WrongLengthError(ProfileError):
    """
    Длина списка агента отличается от n.
    """


class NotPermutationError(ProfileError):
    """
    Список агента не является перестановкой предметов (повтор или выход за диапазон).
    """


class InvalidMatchingError(MatchWelfareError, ValueError):
    """
    Паросочетание не инъективно или ссылается на несуществующих агентов и предметы.
    """


class TooLargeError(MatchWelfareError):
    """
    Экземпляр слишком велик для полного перебора.
    """

    def __init__(self, n: int, guard: int) -> None:
        super().__init__(f"n={n} превышает ограничение перебора {guard}; используйте оценку Монте-Карло")
        self.n = n
        self.guard = guard


class NotDoublyStochasticError(MatchWelfareError, ValueError):
    """
    Матрица не является дважды стохастической.
    """


class DivisibilityError(MatchWelfareError, ValueError):
    """
    Параметры семейства экземпляров не удовлетворяют условиям делимости.
    """

    def __init__(self, message: str, suggestion: Optional[str] = None) -> None:
        """
        Конструктор.

        :param message: Описание ошибки.
        :param suggestion: Ближайшие допустимые значения параметров.
        """

        super().__init__(f"{message}; try {suggestion}" if suggestion else message)
        self.suggestion = suggestion


class OddNError(DivisibilityError):
    """
    Требуется чётное n.
    """


class NotACubeError(DivisibilityError):
    """
    Требуется n, являющееся точным кубом.
    """


class ItemNotOnListError(MatchWelfareError, ValueError):
    """
    Агенту назначен предмет, отсутствующий в его списке.
    """


class BoundDomainError(MatchWelfareError, ValueError):
    """
    Параметры аналитической оценки вне области определения.
    """


class IncompatibleMechanismError(MatchWelfareError):
    """
    Механизм не применим к данному виду экземпляра.
    """


class MissingBenchmarkError(MatchWelfareError):
    """
    Для порядковых метрик не задано эталонное паросочетание.
    """


class InvalidGridError(MatchWelfareError, ValueError):
    """
    Некорректная сетка значений n для параметрического прогона.
    """

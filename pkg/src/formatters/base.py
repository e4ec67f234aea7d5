"""
Выбор стиля оформления результатов.
"""
from enum import Enum, unique
from typing import Type

from formatters.styles.base import BaseOutputStyle, OutputData
from formatters.styles.structured import JsonStyle
from formatters.styles.tabular import CsvStyle
from logger import get_logger

logger = get_logger(__name__)


@unique
class FormatEnum(str, Enum):
    """
    Поддерживаемые форматы вывода.
    """

    JSON = "json"
    CSV = "csv"


class OutputFormatter:
    """
    Оформление результата в выбранном формате.
    """

    styles_map: dict[FormatEnum, Type[BaseOutputStyle]] = {
        FormatEnum.JSON: JsonStyle,
        FormatEnum.CSV: CsvStyle,
    }

    def __init__(self, output_format: FormatEnum | str) -> None:
        """
        Конструктор.

        :param output_format: Формат вывода.
        """

        self.output_format = FormatEnum(output_format)

    def format(self, data: OutputData) -> BaseOutputStyle:
        """
        Оформление данных.

        :param data: Модель или список моделей.
        :return: Оформленный результат.
        """

        logger.info("Оформление результата в формате %s ...", self.output_format.value)

        return self.styles_map[self.output_format](data)

"""
Вывод в формате CSV.
"""
import csv
import io
from typing import Any

from formatters.styles.base import BaseOutputStyle
from logger import get_logger

logger = get_logger(__name__)


class CsvStyle(BaseOutputStyle):
    """
    Оформление строк таблицы в CSV. Заголовок берётся из полей модели первой строки.
    """

    @property
    def extension(self) -> str:
        return ".csv"

    def substitute(self) -> str:

        rows = self.rows()
        logger.info("Оформление %s строк в CSV ...", len(rows))

        if not rows:
            return ""

        buffer = io.StringIO()
        header = list(type(rows[0]).__fields__)
        writer = csv.DictWriter(buffer, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: self.cell(value) for key, value in row.dict().items()})

        return buffer.getvalue()

    @staticmethod
    def cell(value: Any) -> Any:
        """
        Значение ячейки: отсутствующие значения записываются пустой строкой.

        :param value: Значение поля.
        :return:
        """

        return "" if value is None else value

"""
Функции для записи результатов в выходной файл.
"""
from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Optional, Sequence

import click
from openpyxl.workbook import Workbook
from pydantic import BaseModel

from logger import get_logger

logger = get_logger(__name__)

# путь, означающий стандартный вывод
STDOUT = "-"


class Renderer:
    """
    Запись результата: стандартный вывод, текстовый файл или книга Excel.
    """

    def __init__(self, content: str, rows: Optional[Sequence[BaseModel]] = None) -> None:
        """
        Конструктор.

        :param content: Оформленный текст результата.
        :param rows: Строки таблицы для записи в книгу Excel.
        """

        self.content = content
        self.rows = list(rows or [])

    def render(self, path: Path | str) -> None:
        """
        Запись результата. Файл заменяется целиком, частично записанный файл не остаётся.

        :param Path | str path: Путь для сохранения выходного файла ("-" — стандартный вывод).
        """

        if str(path) == STDOUT:
            click.echo(self.content, nl=not self.content.endswith("\n"))
            return

        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        logger.info("Запись результата в %s ...", path)

        handle, temporary = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        os.close(handle)
        try:
            if path.suffix == ".xlsx":
                self.render_workbook(temporary)
            else:
                Path(temporary).write_text(self.content, encoding="utf-8")
            os.replace(temporary, path)
        except BaseException:
            Path(temporary).unlink(missing_ok=True)
            raise

    def render_workbook(self, path: Path | str) -> None:
        """
        Запись строк таблицы на лист книги Excel.

        :param Path | str path: Путь к файлу книги.
        """

        workbook = Workbook()
        sheet = workbook.active
        sheet.title = "results"

        if self.rows:
            header = list(type(self.rows[0]).__fields__)
            sheet.append(header)
            for row in self.rows:
                values = row.dict()
                sheet.append([values[key] for key in header])

        workbook.save(path)

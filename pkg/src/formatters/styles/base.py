"""
Базовые методы для оформления результатов.
"""

from abc import ABC, abstractmethod
from typing import Sequence, Union

from pydantic import BaseModel

OutputData = Union[BaseModel, Sequence[BaseModel]]


class BaseOutputStyle(ABC):
    """
    Абстрактный базовый класс стиля вывода.
    """

    def __init__(self, data: OutputData) -> None:
        self.data = data
        self.formatted = self.substitute()

    @property
    @abstractmethod
    def extension(self) -> str:
        """
        Получение расширения файла для стиля.

        :return:
        """

    @abstractmethod
    def substitute(self) -> str:
        """
        Оформление данных в текст.

        :return:
        """

    def rows(self) -> list[BaseModel]:
        """
        Получение данных в виде списка строк таблицы.

        :return:
        """

        if isinstance(self.data, BaseModel):
            to_rows = getattr(self.data, "to_rows", None)
            return list(to_rows()) if to_rows else [self.data]

        return list(self.data)

    def __str__(self) -> str:
        return self.formatted

    def __repr__(self) -> str:
        return self.formatted

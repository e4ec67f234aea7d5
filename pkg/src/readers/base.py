"""
Базовые функции чтения файлов экземпляров.
"""
from abc import ABC, abstractmethod
from typing import Any, Type

from core.models import Matching
from extensions.models import BundleAllocation
from formatters.models import BenchmarkModel, InstanceModel, KindEnum
from instances.generators import AnyProfile, Instance
from logger import get_logger

logger = get_logger(__name__)


class BaseReader(ABC):
    """
    Базовый класс читателя экземпляра одного вида.
    """

    def __init__(self, payload: dict[str, Any]) -> None:
        """
        Конструктор.

        :param payload: Содержимое JSON-файла экземпляра.
        """

        self.payload = payload

    @property
    def model(self) -> Type[InstanceModel]:
        """
        Получение модели файла экземпляра.

        :return: Модель файла.
        """

        return InstanceModel

    @property
    @abstractmethod
    def kind(self) -> KindEnum:
        """
        Получение вида экземпляра, который обрабатывает читатель.

        :return: Вид экземпляра.
        """

    @abstractmethod
    def build(self, model: InstanceModel) -> AnyProfile:
        """
        Построение проверенного профиля по модели файла.

        :param model: Модель файла экземпляра.
        :return: Профиль предпочтений.
        """

    def benchmark(self, model: BenchmarkModel) -> Matching | BundleAllocation:
        """
        Построение эталона по модели.

        :param model: Модель эталона.
        :return: Паросочетание (для наборов — распределение наборов).
        """

        return Matching.from_pairs(model.matching)

    def read(self) -> Instance:
        """
        Чтение экземпляра.

        :return: Экземпляр с эталоном и порядком прихода, если они заданы в файле.
        """

        model = self.model.parse_obj(self.payload)
        profile = self.build(model)
        benchmark = None if model.benchmark is None else self.benchmark(model.benchmark)
        order = None if model.order is None else tuple(model.order)
        logger.info("Прочитан экземпляр вида %s, n=%s", model.kind.value, model.n)

        return Instance(profile, benchmark, order)

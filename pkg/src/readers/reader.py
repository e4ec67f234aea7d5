"""
Чтение файлов экземпляров и эталонов.
"""
import json
from pathlib import Path
from typing import Any, Type

from core.errors import InvalidMatchingError
from core.models import Matching, PreferenceProfile
from core.profile import validate_profile
from extensions.models import (
    BundleAllocation,
    BundleProfile,
    PartialProfile,
    validate_bundle_profile,
    validate_partial_profile,
)
from formatters.models import BenchmarkModel, InstanceModel, KindEnum
from instances.generators import Instance
from logger import get_logger
from readers.base import BaseReader

logger = get_logger(__name__)


class CompleteProfileReader(BaseReader):
    """
    Чтение экземпляра с полными списками.
    """

    @property
    def kind(self) -> KindEnum:
        return KindEnum.COMPLETE

    def build(self, model: InstanceModel) -> PreferenceProfile:
        return validate_profile(model.n, model.preferences)


class PartialProfileReader(BaseReader):
    """
    Чтение экземпляра с неполными списками.
    """

    @property
    def kind(self) -> KindEnum:
        return KindEnum.PARTIAL

    def build(self, model: InstanceModel) -> PartialProfile:
        return validate_partial_profile(model.n, model.m or model.n, model.preferences)


class BundleProfileReader(BaseReader):
    """
    Чтение экземпляра со спросом на наборы.
    """

    @property
    def kind(self) -> KindEnum:
        return KindEnum.BUNDLE

    def build(self, model: InstanceModel) -> BundleProfile:
        item_count = model.m or model.n * (model.K or 1)
        return validate_bundle_profile(model.n, item_count, model.K or 1, model.preferences)

    def benchmark(self, model: BenchmarkModel) -> BundleAllocation:
        return BundleAllocation({agent: index for agent, index in model.matching})


class InstanceReader:
    """
    Чтение экземпляра из JSON-файла.
    """

    # зарегистрированные читатели
    readers: list[Type[BaseReader]] = [
        CompleteProfileReader,
        PartialProfileReader,
        BundleProfileReader,
    ]

    def __init__(self, path: str | Path) -> None:
        """
        Конструктор.

        :param path: Путь к файлу экземпляра.
        """

        logger.info("Загрузка экземпляра %s ...", path)
        self.payload: dict[str, Any] = json.loads(Path(path).read_text(encoding="utf-8"))

    def read(self) -> Instance:
        """
        Выбор читателя по виду экземпляра и чтение.

        :return: Экземпляр.
        """

        kind = KindEnum(self.payload.get("kind", KindEnum.COMPLETE.value))
        for reader in self.readers:
            candidate = reader(self.payload)
            if candidate.kind is kind:
                return candidate.read()

        raise ValueError(f"Вид экземпляра {kind.value} не поддерживается")


class BenchmarkReader:
    """
    Чтение эталонного распределения из JSON-файла.
    """

    def __init__(self, path: str | Path) -> None:
        """
        Конструктор.

        :param path: Путь к файлу эталона.
        """

        logger.info("Загрузка эталона %s ...", path)
        self.model = BenchmarkModel.parse_file(Path(path))

    def read(self, instance: Instance) -> Matching | BundleAllocation:
        """
        Чтение эталона с проверкой по экземпляру.

        :param instance: Экземпляр, к которому относится эталон.
        :return: Паросочетание или распределение наборов.
        :raises InvalidMatchingError: Эталон не соответствует экземпляру.
        """

        profile = instance.profile
        if isinstance(profile, BundleProfile):
            allocation = BundleAllocation({agent: index for agent, index in self.model.matching})
            allocation.validate_for(profile)
            return allocation

        matching = Matching.from_pairs(self.model.matching)
        matching.validate_for(profile.n, getattr(profile, "m", profile.n))
        if isinstance(profile, PartialProfile) and any(
            profile.position_of(agent, item) is None for agent, item in matching.items()
        ):
            raise InvalidMatchingError("Эталон назначает агентам предметы не из их списков")

        return matching

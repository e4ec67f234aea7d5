"""
Описание параметров запуска механизма (DTO).
"""
from enum import Enum, unique
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field, root_validator

from formatters.base import FormatEnum
from instances.models import GeneratorSpec
from settings import MONTE_CARLO_SAMPLES, OUTPUT_FILE_PATH, RANDOM_SEED

# значение источника эталона, означающее случайный эталон
RANDOM_BENCHMARK = "random"


@unique
class MechanismEnum(str, Enum):
    """
    Поддерживаемые механизмы.
    """

    RSD_EXACT = "rsd-exact"
    RSD_MC = "rsd-mc"
    PS = "ps"
    SD = "sd"
    RSD_PARTIAL = "rsd-partial"
    RSD_BUNDLES = "rsd-bundles"


class ExperimentConfig(BaseModel):
    """
    Параметры запуска:

    .. code-block::

        ExperimentConfig(
            mechanism="ps",
            instance_path="../media/instances/instance2.json",
            benchmark="../media/instances/benchmark_b1.json",
        )

    Экземпляр задаётся ровно одним способом: файлом или параметрами генератора.
    Эталон — путь к файлу, ``random`` (случайный эталон по зерну) или отсутствует.
    """

    mechanism: MechanismEnum
    instance_path: Optional[Path]
    generator: Optional[GeneratorSpec]
    benchmark: Optional[str]
    samples: int = Field(MONTE_CARLO_SAMPLES, gt=0)
    seed: int = Field(RANDOM_SEED, ge=0)
    output_format: FormatEnum = FormatEnum.JSON
    out: str = OUTPUT_FILE_PATH
    lottery: bool = False

    @root_validator(skip_on_failure=True)
    def check_source(cls, values: dict[str, Any]) -> dict[str, Any]:  # pylint: disable=E0213
        """
        Проверка, что экземпляр задан ровно одним способом.
        """

        if (values.get("instance_path") is None) == (values.get("generator") is None):
            raise ValueError("Укажите либо файл экземпляра, либо генератор")

        return values

    @property
    def random_benchmark(self) -> bool:
        return self.benchmark == RANDOM_BENCHMARK

"""
Описание параметров генераторов экземпляров (DTO).
"""
from enum import Enum, unique
from typing import Optional

from pydantic import BaseModel, Field

from settings import RANDOM_SEED


@unique
class FamilyEnum(str, Enum):
    """
    Семейства экземпляров.
    """

    IDENTICAL = "identical"
    RANDOM = "random"
    RSD_HARD = "rsd-hard"
    PS_HARD = "ps-hard"
    KVV = "kvv"
    SD_LOG = "sd-log"
    PARTIAL_ADVERSARIAL = "partial-adversarial"
    KDEMAND = "kdemand"
    RANDOM_PARTIAL = "random-partial"
    RANDOM_BUNDLES = "random-bundles"


class GeneratorSpec(BaseModel):
    """
    Параметры генератора:

    .. code-block::

        GeneratorSpec(family="ps-hard", n=9, t=3)

    ``t`` — число блоков, ``K`` — размер набора, ``m`` и ``degree`` — число предметов
    и длина списков случайных неполных экземпляров, ``extra`` — число лишних наборов
    в случайных экземплярах со спросом на наборы.
    """

    family: FamilyEnum
    n: int = Field(..., gt=0)
    t: Optional[int] = Field(None, gt=0)
    K: Optional[int] = Field(None, gt=0)
    m: Optional[int] = Field(None, gt=0)
    degree: Optional[int] = Field(None, gt=0)
    extra: int = Field(0, ge=0)
    seed: int = Field(RANDOM_SEED, ge=0)

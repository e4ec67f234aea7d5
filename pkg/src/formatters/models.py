"""
Описание схем объектов (DTO), пересекающих границу процесса.

Рациональные числа передаются строками "p/q".
"""
from __future__ import annotations

from enum import Enum, unique
from fractions import Fraction
from typing import Any, Optional, Sequence, Union

from pydantic import BaseModel, Field, StrictInt, conlist, root_validator

from core.models import AllocationMatrix, Lottery, Matching
from core.rational import format_rational, parse_rational
from extensions.models import BundleAllocation, BundleProfile, PartialProfile
from instances.generators import Instance
from mechanisms.ps import PhaseLog
from welfare.metrics import WelfareReport


@unique
class KindEnum(str, Enum):
    """
    Виды экземпляров.
    """

    COMPLETE = "complete"
    PARTIAL = "partial"
    BUNDLE = "bundle"


class CamelModel(BaseModel):
    """
    Базовая модель: поля сериализуются под псевдонимами в стиле camelCase.
    """

    class Config:
        allow_population_by_field_name = True


class BenchmarkModel(BaseModel):
    """
    Модель эталонного распределения (пары агент — предмет или номер набора):

    .. code-block::

        BenchmarkModel(matching=[[0, 0], [1, 2], [2, 1]])
    """

    matching: list[conlist(int, min_items=2, max_items=2)]  # type: ignore

    @classmethod
    def from_domain(cls, benchmark: Union[Matching, BundleAllocation]) -> BenchmarkModel:
        return cls(matching=[[agent, value] for agent, value in benchmark.items()])


class InstanceModel(BaseModel):
    """
    Модель экземпляра:

    .. code-block::

        InstanceModel(
            kind="complete",
            n=3,
            preferences=[[0, 1, 2], [0, 2, 1], [1, 0, 2]],
        )

    Для неполных списков задаётся ``m``, для наборов — ``K`` и списки наборов.
    Необязательные ``benchmark`` и ``order`` сохраняют данные конструкции генератора.
    """

    kind: KindEnum = KindEnum.COMPLETE
    n: int = Field(..., gt=0)
    m: Optional[int] = Field(None, gt=0)
    K: Optional[int] = Field(None, gt=0)
    preferences: Union[list[list[StrictInt]], list[list[list[StrictInt]]]]
    benchmark: Optional[BenchmarkModel]
    order: Optional[list[int]]

    @root_validator(skip_on_failure=True)
    def check_kind(cls, values: dict[str, Any]) -> dict[str, Any]:  # pylint: disable=E0213
        """
        Проверка согласованности вида экземпляра и его параметров.
        """

        if values["kind"] is KindEnum.BUNDLE and values.get("K") is None:
            raise ValueError("Для экземпляра с наборами требуется K")
        if values["kind"] is not KindEnum.BUNDLE and any(
            not isinstance(entry, int) for row in values["preferences"] for entry in row
        ):
            raise ValueError("Списки предпочтений должны состоять из номеров предметов")

        return values

    @classmethod
    def from_instance(cls, instance: Instance) -> InstanceModel:
        profile = instance.profile
        benchmark = None if instance.benchmark is None else BenchmarkModel.from_domain(instance.benchmark)
        order = None if instance.order is None else list(instance.order)

        if isinstance(profile, PartialProfile):
            preferences: Any = [list(items) for items in profile.lists]
            return cls(
                kind=KindEnum.PARTIAL,
                n=profile.n,
                m=profile.m,
                preferences=preferences,
                benchmark=benchmark,
                order=order,
            )
        if isinstance(profile, BundleProfile):
            preferences = [[list(bundle) for bundle in bundles] for bundles in profile.lists]
            return cls(
                kind=KindEnum.BUNDLE,
                n=profile.n,
                m=profile.item_count,
                K=profile.demand,
                preferences=preferences,
                benchmark=benchmark,
                order=order,
            )

        return cls(n=profile.n, preferences=profile.prefs.tolist(), benchmark=benchmark, order=order)


class AllocationModel(BaseModel):
    """
    Модель матрицы вероятностей назначения (плотная запись строк).
    """

    n: int
    matrix: list[list[str]]

    @classmethod
    def from_domain(cls, matrix: AllocationMatrix) -> AllocationModel:
        return cls(n=matrix.n, matrix=[[format_rational(value) for value in row] for row in matrix.to_dense()])


class LotteryComponentModel(BaseModel):
    """
    Компонента лотереи: вес и предметы агентов по порядку.
    """

    weight: str
    matching: list[int]


class LotteryModel(BaseModel):
    """
    Модель лотереи над совершенными паросочетаниями.
    """

    components: list[LotteryComponentModel]

    @classmethod
    def from_domain(cls, lottery: Lottery) -> LotteryModel:
        return cls(
            components=[
                LotteryComponentModel(weight=format_rational(weight), matching=list(matching.to_permutation(lottery.n)))
                for weight, matching in lottery.components
            ]
        )


class PhaseModel(BaseModel):
    """
    Модель фазы PS.
    """

    start: str
    end: str
    exhausted: list[int]

    @classmethod
    def from_log(cls, phases: PhaseLog) -> list[PhaseModel]:
        return [
            cls(start=format_rational(phase.start), end=format_rational(phase.end), exhausted=sorted(phase.exhausted))
            for phase in phases
        ]


class WelfareReportModel(CamelModel):
    """
    Модель отчёта о благосостоянии:

    .. code-block::

        WelfareReportModel(ordinalHappy="9/4", linearUtility="3/1", optLinear="3/1")
    """

    ordinal_happy: Optional[str] = Field(None, alias="ordinalHappy")
    linear_utility: Optional[str] = Field(None, alias="linearUtility")
    opt_linear: Optional[str] = Field(None, alias="optLinear")
    ordinal_ratio: Optional[float] = Field(None, alias="ordinalRatio")
    linear_ratio: Optional[float] = Field(None, alias="linearRatio")

    @classmethod
    def from_values(
        cls,
        n: int,
        linear_utility: Optional[Fraction] = None,
        opt_linear: Optional[Fraction] = None,
        ordinal_happy: Optional[Union[Fraction, int]] = None,
    ) -> WelfareReportModel:
        """
        Построение отчёта из точных значений; отношения считаются, если определены.

        :param n: Количество агентов.
        :param linear_utility: Линейная полезность.
        :param opt_linear: Оптимальная линейная полезность.
        :param ordinal_happy: Число довольных агентов.
        :return: Модель отчёта.
        """

        def text(value: Optional[Union[Fraction, int]]) -> Optional[str]:
            return None if value is None else format_rational(value)

        return cls(
            ordinal_happy=text(ordinal_happy),
            linear_utility=text(linear_utility),
            opt_linear=text(opt_linear),
            ordinal_ratio=None if ordinal_happy is None else float(Fraction(ordinal_happy) / n),
            linear_ratio=None if linear_utility is None or not opt_linear else float(linear_utility / opt_linear),
        )

    @classmethod
    def from_report(cls, report: WelfareReport) -> WelfareReportModel:
        return cls.from_values(report.n, report.linear_utility, report.opt_linear, report.ordinal_happy)


class EstimateModel(BaseModel):
    """
    Выборочная оценка величины.
    """

    name: str
    mean: float
    stderr: float


class RunResultModel(CamelModel):
    """
    Результат запуска механизма.
    """

    mechanism: str
    kind: KindEnum
    n: int
    seed: Optional[int]
    samples: Optional[int]
    allocation: Optional[AllocationModel]
    matching: Optional[list[conlist(int, min_items=2, max_items=2)]]  # type: ignore
    lottery: Optional[LotteryModel]
    phases: Optional[list[PhaseModel]]
    exhaust_times: Optional[list[str]] = Field(None, alias="exhaustTimes")
    welfare: Optional[WelfareReportModel]
    estimates: Optional[list[EstimateModel]]

    def to_rows(self) -> list[RunRowModel]:
        """
        Развёртка результата в длинную таблицу: по строке на ненулевую вероятность,
        пару паросочетания, величину благосостояния и оценку.

        :return: Строки таблицы.
        """

        rows = []
        if self.allocation is not None:
            for agent, row in enumerate(self.allocation.matrix):
                rows.extend(
                    RunRowModel.from_rational("allocation", value, agent=agent, item=item)
                    for item, value in enumerate(row)
                    if value != "0/1"
                )
        for agent, value in self.matching or []:
            rows.append(RunRowModel(section="matching", agent=agent, item=value))
        for index, value in enumerate(self.exhaust_times or []):
            rows.append(RunRowModel.from_rational("exhaust", value, item=index))
        if self.welfare is not None:
            for name, value in self.welfare.dict(by_alias=True, exclude_none=True).items():
                if isinstance(value, str):
                    rows.append(RunRowModel.from_rational("welfare", value, name=name))
                else:
                    rows.append(RunRowModel(section="welfare", name=name, decimal=value))
        for estimate in self.estimates or []:
            rows.append(
                RunRowModel(section="estimate", name=estimate.name, decimal=estimate.mean, stderr=estimate.stderr)
            )

        return rows


class RunRowModel(BaseModel):
    """
    Строка табличного представления результата запуска.
    """

    section: str
    name: Optional[str]
    agent: Optional[int]
    item: Optional[int]
    value: Optional[str]
    decimal: Optional[float]
    stderr: Optional[float]

    @classmethod
    def from_rational(cls, section: str, value: str, **fields: Any) -> RunRowModel:
        return cls(section=section, value=value, decimal=float(parse_rational(value)), **fields)


class SweepRowModel(BaseModel):
    """
    Строка таблицы параметрического прогона: одно значение n и один механизм.
    """

    family: str
    n: int
    mechanism: str
    welfare: Optional[str]
    welfare_decimal: float
    opt: Optional[str]
    opt_decimal: Optional[float]
    ratio: Optional[float]
    stderr: float = 0.0
    happy_fraction: Optional[float]


class ClaimResultModel(BaseModel):
    """
    Результат проверки одного утверждения.
    """

    tag: str
    claim: str
    expected: str
    actual: str
    tolerance: str = "exact"
    passed: bool


def matching_pairs(matching: Union[Matching, BundleAllocation]) -> list[list[int]]:
    return [[agent, value] for agent, value in matching.items()]


def rational_list(values: Sequence[Fraction]) -> list[str]:
    return [format_rational(value) for value in values]

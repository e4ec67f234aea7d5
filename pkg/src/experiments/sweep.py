"""
Параметрические прогоны: благосостояние механизмов на семействе экземпляров по сетке n.
"""
from fractions import Fraction
from typing import Optional, Sequence, Union

from core.errors import InvalidGridError, MissingBenchmarkError
from core.rational import format_rational
from experiments.runner import optimal_value
from extensions.bundles import rsd_bundles_monte_carlo
from extensions.models import BundleAllocation
from extensions.partial import kvv_expected_matching, linear_utility_partial, rsd_partial_monte_carlo, sd_partial
from formatters.models import SweepRowModel
from instances.generators import Instance, gen_random_benchmark, generate
from instances.models import FamilyEnum, GeneratorSpec
from logger import get_logger
from mechanisms.ps import ps_allocate
from mechanisms.rsd import SampleWelfare, rsd_sample_welfare
from welfare.metrics import expected_ordinal_welfare, linear_utility

logger = get_logger(__name__)

Value = Union[Fraction, float]


def make_row(
    family: FamilyEnum,
    n: int,
    mechanism: str,
    welfare: Value,
    opt: Optional[Value] = None,
    stderr: float = 0.0,
    happy_fraction: Optional[float] = None,
) -> SweepRowModel:
    """
    Строка таблицы: точные значения записываются дробью и десятичным приближением,
    выборочные — только десятичным.

    :param family: Семейство.
    :param n: Количество агентов.
    :param mechanism: Механизм.
    :param welfare: Благосостояние механизма.
    :param opt: Оптимум (или его нижняя оценка).
    :param stderr: Стандартная ошибка выборочного значения.
    :param happy_fraction: Доля довольных агентов.
    :return: Строка.
    """

    def text(value: Optional[Value]) -> Optional[str]:
        return format_rational(value) if isinstance(value, Fraction) else None

    return SweepRowModel(
        family=family.value,
        n=n,
        mechanism=mechanism,
        welfare=text(welfare),
        welfare_decimal=float(welfare),
        opt=text(opt),
        opt_decimal=None if opt is None else float(opt),
        ratio=float(welfare) / float(opt) if opt else None,
        stderr=stderr,
        happy_fraction=happy_fraction,
    )


def _mean_happy(sampled: SampleWelfare) -> Fraction:
    if sampled.mean_happy is None:
        raise MissingBenchmarkError("Среднее число довольных агентов не определено без эталона")
    return sampled.mean_happy


def _complete_rows(family: FamilyEnum, instance: Instance, samples: int, seed: int) -> list[SweepRowModel]:
    profile = instance.complete_profile
    n = profile.n

    if family is FamilyEnum.IDENTICAL:
        benchmark = gen_random_benchmark(profile, seed)
        sampled = rsd_sample_welfare(profile, samples, seed, benchmark)
        happy = _mean_happy(sampled)
        exact = expected_ordinal_welfare(ps_allocate(profile).matrix, benchmark, profile)
        return [
            make_row(
                family,
                n,
                "rsd-mc",
                happy,
                stderr=sampled.happy_stderr or 0.0,
                happy_fraction=float(happy) / n,
            ),
            make_row(family, n, "ps", exact, happy_fraction=float(exact) / n),
        ]

    opt = optimal_value(instance)
    if family is FamilyEnum.RSD_HARD:
        sampled = rsd_sample_welfare(profile, samples, seed)
        return [make_row(family, n, "rsd-mc", sampled.mean_utility, opt, sampled.utility_stderr)]

    ps_utility = linear_utility(ps_allocate(profile).matrix, profile)
    if family is FamilyEnum.PS_HARD:
        return [make_row(family, n, "ps", ps_utility, opt)]

    benchmark = gen_random_benchmark(profile, seed)
    sampled = rsd_sample_welfare(profile, samples, seed, benchmark)
    return [
        make_row(
            family,
            n,
            "rsd-mc",
            sampled.mean_utility,
            opt,
            sampled.utility_stderr,
            float(_mean_happy(sampled)) / n,
        ),
        make_row(family, n, "ps", ps_utility, opt),
    ]


def _partial_rows(family: FamilyEnum, instance: Instance, samples: int, seed: int) -> list[SweepRowModel]:
    profile = instance.partial_profile
    n = profile.n

    if family in {FamilyEnum.KVV, FamilyEnum.RANDOM_PARTIAL}:
        matched = kvv_expected_matching(profile, samples, seed)
        return [make_row(family, n, "rsd-partial", matched.mean, Fraction(n), matched.stderr)]

    opt = optimal_value(instance)
    estimate = rsd_partial_monte_carlo(profile, None, samples, seed)
    rows = [make_row(family, n, "rsd-partial", estimate.utility.mean, opt, estimate.utility.stderr)]
    if instance.order is not None:
        matching = sd_partial(profile, instance.order)
        rows.append(make_row(family, n, "sd", linear_utility_partial(matching, profile), opt))

    return rows


def sweep(
    family: FamilyEnum,
    grid: Sequence[int],
    samples: int,
    seed: int,
    t: Optional[int] = None,
    demand: Optional[int] = None,
) -> list[SweepRowModel]:
    """
    Прогон по сетке n: по строке на каждое n и механизм. Результат детерминирован при заданном зерне.

    :param family: Семейство экземпляров.
    :param grid: Значения n.
    :param samples: Количество выборок Монте-Карло.
    :param seed: Зерно.
    :param t: Число блоков (ps-hard).
    :param demand: Размер набора K (kdemand, random-bundles).
    :return: Строки таблицы.
    :raises InvalidGridError: Сетка пуста или содержит неположительные значения.
    """

    if not grid or any(n <= 0 for n in grid):
        raise InvalidGridError(f"Сетка должна состоять из положительных n, получено {list(grid)}")

    rows: list[SweepRowModel] = []
    for n in grid:
        logger.info("Прогон семейства %s при n=%s ...", family.value, n)
        instance = generate(GeneratorSpec(family=family, n=n, t=t, K=demand, seed=seed))

        if instance.kind == "complete":
            rows.extend(_complete_rows(family, instance, samples, seed))
        elif instance.kind == "partial":
            rows.extend(_partial_rows(family, instance, samples, seed))
        else:
            if not isinstance(instance.benchmark, BundleAllocation):
                raise MissingBenchmarkError(f"Семейство {family.value} не задаёт эталонное распределение")
            estimate = rsd_bundles_monte_carlo(instance.bundle_profile, instance.benchmark, samples, seed)
            rows.append(
                make_row(
                    family,
                    n,
                    "rsd-bundles",
                    estimate.mean * n,
                    stderr=estimate.stderr * n,
                    happy_fraction=estimate.mean,
                )
            )

    return rows

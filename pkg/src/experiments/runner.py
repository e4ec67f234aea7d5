"""
Запуск механизма на экземпляре и построение отчёта о благосостоянии.
"""
from fractions import Fraction
from typing import Optional, Union

from core.errors import IncompatibleMechanismError, MissingBenchmarkError, TooLargeError
from core.models import AllocationMatrix, Matching, PreferenceProfile
from core.sampling import BENCHMARK_STREAM, random_order
from core.serial import serial_dictatorship
from experiments.config import ExperimentConfig, MechanismEnum
from extensions.bundles import ordinal_happy_bundles, rsd_bundles, rsd_bundles_monte_carlo
from extensions.models import BundleAllocation, BundleProfile, PartialProfile
from extensions.partial import (
    linear_utility_partial,
    optimal_linear_partial,
    ordinal_happy_partial,
    rsd_partial_exact,
    rsd_partial_monte_carlo,
    sd_partial,
)
from formatters.models import (
    AllocationModel,
    EstimateModel,
    KindEnum,
    LotteryModel,
    PhaseModel,
    RunResultModel,
    WelfareReportModel,
    matching_pairs,
    rational_list,
)
from instances.generators import Instance, gen_random_benchmark, generate
from logger import get_logger
from mechanisms.bvn import bvn_decompose
from mechanisms.ps import ps_allocate
from mechanisms.rsd import rsd_exact, rsd_monte_carlo, rsd_sample_welfare
from readers.reader import BenchmarkReader, InstanceReader
from settings import ENUM_GUARD
from welfare.assignment import optimal_linear_welfare
from welfare.metrics import linear_utility, ordinal_happy_count, welfare_report

logger = get_logger(__name__)

Benchmark = Union[Matching, BundleAllocation]

# механизмы, применимые к каждому виду экземпляров
COMPATIBLE: dict[KindEnum, frozenset[MechanismEnum]] = {
    KindEnum.COMPLETE: frozenset(
        {MechanismEnum.RSD_EXACT, MechanismEnum.RSD_MC, MechanismEnum.PS, MechanismEnum.SD}
    ),
    KindEnum.PARTIAL: frozenset({MechanismEnum.RSD_PARTIAL, MechanismEnum.SD}),
    KindEnum.BUNDLE: frozenset({MechanismEnum.RSD_BUNDLES, MechanismEnum.SD}),
}


def load_instance(config: ExperimentConfig) -> Instance:
    """
    Загрузка экземпляра из файла или построение генератором.

    :param config: Параметры запуска.
    :return: Экземпляр.
    """

    if config.instance_path is not None:
        return InstanceReader(config.instance_path).read()

    if config.generator is None:
        raise ValueError("Укажите либо файл экземпляра, либо генератор")

    return generate(config.generator)


def random_benchmark(instance: Instance, seed: int) -> Benchmark:
    """
    Случайный эталон, согласованный с видом экземпляра: случайная перестановка для
    полных списков и результат диктатуры со случайным порядком для неполных списков и наборов.

    :param instance: Экземпляр.
    :param seed: Зерно.
    :return: Эталон.
    """

    profile = instance.profile
    order = random_order(seed, BENCHMARK_STREAM, profile.n)
    if isinstance(profile, PartialProfile):
        return sd_partial(profile, order)
    if isinstance(profile, BundleProfile):
        return rsd_bundles(profile, order)

    return gen_random_benchmark(profile, seed)


def load_benchmark(config: ExperimentConfig, instance: Instance) -> Optional[Benchmark]:
    """
    Выбор эталона: файл, случайный эталон или эталон, сохранённый в экземпляре.

    :param config: Параметры запуска.
    :param instance: Экземпляр.
    :return: Эталон или None.
    """

    if config.benchmark is None:
        return instance.benchmark
    if config.random_benchmark:
        return random_benchmark(instance, config.seed)

    return BenchmarkReader(config.benchmark).read(instance)


def optimal_value(instance: Instance) -> Optional[Fraction]:
    """
    Оптимальная линейная полезность экземпляра; для экземпляров, слишком больших для
    решателя, используется полезность паросочетания-свидетеля (нижняя оценка оптимума).

    :param instance: Экземпляр.
    :return: Значение или None, если оно не определено.
    """

    profile = instance.profile
    try:
        if isinstance(profile, PartialProfile):
            return optimal_linear_partial(profile)[0]
        if isinstance(profile, PreferenceProfile):
            return optimal_linear_welfare(profile)[0]
    except TooLargeError:
        logger.info("Экземпляр слишком велик для решателя, оптимум оценивается свидетелем")
        if instance.witness is None:
            return None
        if isinstance(profile, PartialProfile):
            return linear_utility_partial(instance.witness, profile)
        return linear_utility(instance.witness, instance.complete_profile)

    return None


def matching_benchmark(benchmark: Optional[Benchmark]) -> Optional[Matching]:
    """
    Эталонное паросочетание для экземпляров со списками предметов.

    :param benchmark: Эталон или None.
    :return: Паросочетание или None.
    :raises IncompatibleMechanismError: Эталон задан распределением наборов.
    """

    if isinstance(benchmark, BundleAllocation):
        raise IncompatibleMechanismError("Эталон из наборов неприменим к экземпляру со списками предметов")
    return benchmark


def check_compatible(mechanism: MechanismEnum, kind: KindEnum) -> None:
    """
    Проверка применимости механизма к виду экземпляра.

    :param mechanism: Механизм.
    :param kind: Вид экземпляра.
    :raises IncompatibleMechanismError: Механизм неприменим.
    """

    if mechanism not in COMPATIBLE[kind]:
        allowed = ", ".join(sorted(item.value for item in COMPATIBLE[kind]))
        raise IncompatibleMechanismError(
            f"Механизм {mechanism.value} неприменим к экземпляру вида {kind.value}; допустимы: {allowed}"
        )


def _matrix_result(
    config: ExperimentConfig,
    matrix: AllocationMatrix,
    profile: PreferenceProfile,
    benchmark: Optional[Matching],
    opt: Optional[Fraction],
) -> dict:
    fields: dict = {"allocation": AllocationModel.from_domain(matrix)}
    if opt is not None:
        report = welfare_report(matrix, profile, opt, benchmark)
        fields["welfare"] = WelfareReportModel.from_report(report)
    else:
        fields["welfare"] = WelfareReportModel.from_values(profile.n, linear_utility(matrix, profile))
    if config.lottery:
        fields["lottery"] = LotteryModel.from_domain(bvn_decompose(matrix))

    return fields


def _run_complete(
    config: ExperimentConfig,
    instance: Instance,
    source: Optional[Benchmark],
) -> dict:
    profile = instance.complete_profile
    benchmark = matching_benchmark(source)
    opt = optimal_value(instance)

    if config.mechanism is MechanismEnum.RSD_EXACT:
        return _matrix_result(config, rsd_exact(profile), profile, benchmark, opt)

    if config.mechanism is MechanismEnum.RSD_MC:
        estimate = rsd_monte_carlo(profile, config.samples, config.seed)
        fields = _matrix_result(config, estimate.matrix, profile, benchmark, opt)
        sampled = rsd_sample_welfare(profile, config.samples, config.seed, benchmark)
        fields["estimates"] = [
            EstimateModel(name="linearUtility", mean=float(sampled.mean_utility), stderr=sampled.utility_stderr)
        ]
        if sampled.mean_happy is not None:
            fields["estimates"].append(
                EstimateModel(name="ordinalHappy", mean=float(sampled.mean_happy), stderr=sampled.happy_stderr)
            )
        return fields

    if config.mechanism is MechanismEnum.PS:
        outcome = ps_allocate(profile)
        fields = _matrix_result(config, outcome.matrix, profile, benchmark, opt)
        fields["phases"] = PhaseModel.from_log(outcome.phases)
        fields["exhaust_times"] = rational_list(outcome.exhaust_times.times)
        return fields

    matching = serial_dictatorship(profile, instance.arrival_order)
    happy = None if benchmark is None else ordinal_happy_count(matching, benchmark, profile)

    return {
        "matching": matching_pairs(matching),
        "welfare": WelfareReportModel.from_values(profile.n, linear_utility(matching, profile), opt, happy),
    }


def _run_partial(
    config: ExperimentConfig,
    instance: Instance,
    source: Optional[Benchmark],
) -> dict:
    profile = instance.partial_profile
    benchmark = matching_benchmark(source)
    opt = optimal_value(instance)

    if config.mechanism is MechanismEnum.SD:
        matching = sd_partial(profile, instance.arrival_order)
        happy = None if benchmark is None else ordinal_happy_partial(matching, benchmark, profile)
        return {
            "matching": matching_pairs(matching),
            "welfare": WelfareReportModel.from_values(
                profile.n, linear_utility_partial(matching, profile), opt, happy
            ),
        }

    if profile.n <= ENUM_GUARD:
        outcome = rsd_partial_exact(profile, benchmark)
        return {
            "welfare": WelfareReportModel.from_values(profile.n, outcome.utility, opt, outcome.happy),
            "estimates": [EstimateModel(name="matched", mean=float(outcome.matched), stderr=0.0)],
        }

    estimate = rsd_partial_monte_carlo(profile, benchmark, config.samples, config.seed)
    estimates = [
        EstimateModel(name="linearUtility", mean=estimate.utility.mean, stderr=estimate.utility.stderr),
        EstimateModel(name="matched", mean=estimate.matched.mean, stderr=estimate.matched.stderr),
    ]
    if estimate.happy_fraction is not None:
        estimates.append(
            EstimateModel(
                name="happyFraction", mean=estimate.happy_fraction.mean, stderr=estimate.happy_fraction.stderr
            )
        )

    return {"welfare": WelfareReportModel.from_values(profile.n, opt_linear=opt), "estimates": estimates}


def _run_bundle(
    config: ExperimentConfig,
    instance: Instance,
    benchmark: Optional[Benchmark],
) -> dict:
    profile = instance.bundle_profile
    if not isinstance(benchmark, BundleAllocation):
        raise MissingBenchmarkError("Для механизмов на наборах требуется эталонное распределение (--benchmark)")

    if config.mechanism is MechanismEnum.SD:
        allocation = rsd_bundles(profile, instance.arrival_order)
        happy = ordinal_happy_bundles(allocation, benchmark, profile)
        return {
            "matching": matching_pairs(allocation),
            "welfare": WelfareReportModel.from_values(profile.n, ordinal_happy=happy),
        }

    estimate = rsd_bundles_monte_carlo(profile, benchmark, config.samples, config.seed)

    return {"estimates": [EstimateModel(name="happyFraction", mean=estimate.mean, stderr=estimate.stderr)]}


def run_experiment(config: ExperimentConfig) -> RunResultModel:
    """
    Запуск механизма. Результат детерминирован при заданных параметрах (включая зерно).

    :param config: Параметры запуска.
    :return: Результат: распределение, лотерея или паросочетание и отчёт о благосостоянии.
    :raises IncompatibleMechanismError: Механизм неприменим к виду экземпляра.
    :raises MissingBenchmarkError: Для механизма на наборах не задан эталон.
    """

    instance = load_instance(config)
    kind = KindEnum(instance.kind)
    check_compatible(config.mechanism, kind)
    benchmark = load_benchmark(config, instance)
    logger.info(
        "Запуск механизма %s на экземпляре вида %s, n=%s ...", config.mechanism.value, kind.value, instance.profile.n
    )

    if kind is KindEnum.COMPLETE:
        fields = _run_complete(config, instance, benchmark)
    elif kind is KindEnum.PARTIAL:
        fields = _run_partial(config, instance, benchmark)
    else:
        fields = _run_bundle(config, instance, benchmark)

    sampled = config.mechanism in {MechanismEnum.RSD_MC, MechanismEnum.RSD_PARTIAL, MechanismEnum.RSD_BUNDLES}

    return RunResultModel(
        mechanism=config.mechanism.value,
        kind=kind,
        n=instance.profile.n,
        seed=config.seed if sampled or config.random_benchmark else None,
        samples=config.samples if sampled else None,
        **fields,
    )

"""
Набор проверяемых утверждений о благосостоянии RSD и PS.

Каждое утверждение вычисляет ожидаемое и фактическое значения и сообщает,
выполнено ли оно. Ошибка при вычислении считается невыполнением.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from core.errors import InvalidMatchingError, MatchWelfareError, MissingBenchmarkError
from core.models import Matching, PreferenceProfile
from core.rational import format_rational
from core.sampling import random_order
from extensions.bundles import ordinal_happy_bundles, rsd_bundles, rsd_bundles_monte_carlo
from extensions.partial import (
    kvv_expected_matching,
    linear_utility_partial,
    optimal_linear_partial,
    ordinal_happy_partial,
    rsd_partial_monte_carlo,
    sd_partial,
)
from formatters.models import ClaimResultModel
from instances.generators import (
    Instance,
    gen_identical,
    gen_kdemand_hard,
    gen_kvv_hard,
    gen_partial_adversarial,
    gen_ps_linear_hard,
    gen_random,
    gen_random_benchmark,
    gen_random_bundles,
    gen_random_partial,
    gen_rsd_linear_hard,
    gen_sd_log_hard,
)
from logger import get_logger
from mechanisms.bvn import bvn_decompose, lottery_frequencies
from mechanisms.ps import exhaust_times, ps_allocate
from mechanisms.rsd import rsd_exact, rsd_sample_welfare, rsd_trajectory_exact
from readers.reader import BenchmarkReader, InstanceReader
from settings import FIXTURES_PATH
from welfare.assignment import optimal_linear_welfare
from welfare.bounds import (
    kdemand_lower_bound,
    ps_general_linear_constant,
    ps_ordinal_floor,
    rsd_dead_bound,
    rsd_general_linear_bound,
    rsd_ordinal_floor,
    sd_partial_floor,
)
from welfare.metrics import expected_ordinal_welfare, linear_utility, ps_ordinal_via_times

logger = get_logger(__name__)

Table = list[list[Fraction]]


def _table(rows: Sequence[str]) -> Table:
    return [[Fraction(value) for value in row.split()] for row in rows]


# эталонные таблицы распределений для экземпляров 1 и 2
RSD_INSTANCE_1 = _table(["5/12 1/12 5/12 1/12"] * 2 + ["1/12 5/12 1/12 5/12"] * 2)
PS_INSTANCE_1 = _table(["1/2 0 1/2 0"] * 2 + ["0 1/2 0 1/2"] * 2)
RSD_INSTANCE_2 = _table(["1/2 1/6 1/3", "1/2 0 1/2", "0 5/6 1/6"])
PS_INSTANCE_2 = _table(["1/2 1/4 1/4", "1/2 0 1/2", "0 3/4 1/4"])

# корпус случайных профилей: число профилей, эталонов на профиль и диапазон n
CORPUS_PROFILES = 100
CORPUS_BENCHMARKS = 5
CORPUS_SIZES = range(3, 8)

# сетка n для rsd-hard: t = 3, 4, 5
RSD_HARD_GRID = (243, 1024, 4095)
RSD_HARD_SEED = 7


@dataclass(frozen=True)
class ClaimOutcome:
    """
    Итог вычисления утверждения.
    """

    expected: str
    actual: str
    passed: bool
    tolerance: str = "exact"


@dataclass(frozen=True)
class Claim:
    """
    Утверждение: метка группы, формулировка и функция проверки.
    """

    tag: str
    claim: str
    check: Callable[[Path], ClaimOutcome]

    def run(self, fixtures_path: Path) -> ClaimResultModel:
        """
        Вычисление утверждения.

        :param fixtures_path: Директория с эталонными экземплярами.
        :return: Результат проверки.
        """

        logger.info("Проверка [%s] %s ...", self.tag, self.claim)
        try:
            outcome = self.check(fixtures_path)
        except (MatchWelfareError, ValidationError, ValueError, OSError) as ex:
            logger.error("Утверждение [%s] не вычислено: %s", self.tag, ex)
            outcome = ClaimOutcome(expected="-", actual=f"error: {ex}", passed=False)

        return ClaimResultModel(
            tag=self.tag,
            claim=self.claim,
            expected=outcome.expected,
            actual=outcome.actual,
            tolerance=outcome.tolerance,
            passed=outcome.passed,
        )


def _render(table: Table) -> str:
    return "; ".join(" ".join(format_rational(value) for value in row) for row in table)


def _profile(fixtures_path: Path, name: str) -> PreferenceProfile:
    return InstanceReader(fixtures_path / name).read().complete_profile


def _benchmark(fixtures_path: Path, name: str, instance: Instance) -> Matching:
    benchmark = BenchmarkReader(fixtures_path / name).read(instance)
    if not isinstance(benchmark, Matching):
        raise InvalidMatchingError(f"Эталон {name} должен быть паросочетанием")
    return benchmark


def random_corpus() -> list[tuple[PreferenceProfile, list[Matching]]]:
    """
    Корпус воспроизводимых случайных профилей с несколькими случайными эталонами каждый.

    :return: Пары (профиль, эталоны).
    """

    corpus = []
    for index in range(CORPUS_PROFILES):
        n = CORPUS_SIZES[index % len(CORPUS_SIZES)]
        profile = gen_random(n, index)
        benchmarks = [
            gen_random_benchmark(profile, CORPUS_PROFILES + index * CORPUS_BENCHMARKS + number)
            for number in range(CORPUS_BENCHMARKS)
        ]
        corpus.append((profile, benchmarks))

    return corpus


def check_reference_tables(fixtures_path: Path) -> ClaimOutcome:
    first = _profile(fixtures_path, "instance1.json")
    second = _profile(fixtures_path, "instance2.json")
    actual = [
        rsd_exact(first).to_dense(),
        ps_allocate(first).matrix.to_dense(),
        rsd_exact(second).to_dense(),
        ps_allocate(second).matrix.to_dense(),
    ]
    expected = [RSD_INSTANCE_1, PS_INSTANCE_1, RSD_INSTANCE_2, PS_INSTANCE_2]

    return ClaimOutcome(
        expected=" | ".join(_render(table) for table in expected),
        actual=" | ".join(_render(table) for table in actual),
        passed=actual == expected,
    )


def check_reference_welfare(fixtures_path: Path) -> ClaimOutcome:
    first = _profile(fixtures_path, "instance1.json")
    instance = InstanceReader(fixtures_path / "instance2.json").read()
    second = instance.complete_profile
    benchmarks = [_benchmark(fixtures_path, name, instance) for name in ("benchmark_b1.json", "benchmark_b2.json")]
    rsd, ps = rsd_exact(second), ps_allocate(second).matrix

    actual: list[Fraction] = []
    for benchmark in benchmarks:
        actual.append(expected_ordinal_welfare(rsd, benchmark, second))
        actual.append(expected_ordinal_welfare(ps, benchmark, second))
    actual.append(linear_utility(rsd_exact(first), first))
    actual.append(linear_utility(ps_allocate(first).matrix, first))
    actual.append(linear_utility(rsd, second, agents={0, 2}, items={1, 2}))
    actual.append(linear_utility(ps, second, agents={0, 2}, items={1, 2}))

    expected = [Fraction(value) for value in ("7/3", "9/4", "13/6", "9/4", "34/12", "3", "10/9", "13/12")]

    return ClaimOutcome(
        expected=" ".join(format_rational(value) for value in expected),
        actual=" ".join(format_rational(value) for value in actual),
        passed=actual == expected,
    )


def check_rsd_bounds(_: Path) -> ClaimOutcome:
    violations = 0
    worst = None
    for profile, benchmarks in random_corpus():
        n = profile.n
        for benchmark in benchmarks:
            trajectory = rsd_trajectory_exact(profile, benchmark)
            margin = trajectory.happy[n] - rsd_ordinal_floor(n)
            worst = margin if worst is None else min(worst, margin)
            if margin < 0 or any(trajectory.dead[t] > rsd_dead_bound(n, t) for t in range(len(trajectory.dead))):
                violations += 1

    return ClaimOutcome(
        expected="0 violations",
        actual=f"{violations} violations, min happy margin {format_rational(worst or 0)}",
        passed=violations == 0,
    )


def check_identical_ceiling(_: Path) -> ClaimOutcome:
    mismatches = []
    for n in CORPUS_SIZES:
        profile = gen_identical(n)
        matrix = rsd_exact(profile)
        total = sum(
            (
                expected_ordinal_welfare(matrix, Matching.from_permutation(items), profile)
                for items in itertools.permutations(range(n))
            ),
            Fraction(0),
        )
        average = total / math.factorial(n)
        if average != ps_ordinal_floor(n):
            mismatches.append(f"n={n}: {format_rational(average)}")

    return ClaimOutcome(
        expected="(n+1)/2 for n=3..7",
        actual="; ".join(mismatches) or "(n+1)/2 for n=3..7",
        passed=not mismatches,
    )


def check_ps_ordinal(_: Path) -> ClaimOutcome:
    violations = 0
    for profile, benchmarks in random_corpus():
        times = exhaust_times(profile)
        matrix = ps_allocate(profile).matrix
        for benchmark in benchmarks:
            via_times = ps_ordinal_via_times(profile, benchmark, times)
            if via_times < ps_ordinal_floor(profile.n) or via_times > expected_ordinal_welfare(
                matrix, benchmark, profile
            ):
                violations += 1

    return ClaimOutcome(expected="0 violations", actual=f"{violations} violations", passed=violations == 0)


def check_ps_hard(_: Path) -> ClaimOutcome:
    n, blocks = 2000, 20
    size = n // blocks
    profile = gen_ps_linear_hard(n, blocks)
    outcome = ps_allocate(profile)
    opt, _ = optimal_linear_welfare(profile)
    ratio = float(linear_utility(outcome.matrix, profile)) / n

    durations = all(duration == Fraction(1, blocks) for duration in outcome.phases.durations)
    exhausted = all(outcome.phases.phase_of(item) == item // size + 1 for item in range(n))
    passed = len(outcome.phases) == blocks and durations and exhausted and opt >= n - blocks and 0.66 <= ratio <= 0.70

    return ClaimOutcome(
        expected=(
            f"{blocks} phases of 1/{blocks}, block j exhausted in phase j, "
            f"OPT >= {n - blocks}, PS/n in [0.66, 0.70]"
        ),
        actual=(
            f"{len(outcome.phases)} phases, equal durations {durations}, blocks in order {exhausted}, "
            f"OPT {float(opt):.2f}, PS/n {ratio:.4f}"
        ),
        passed=passed,
        tolerance="ratio in [0.66, 0.70]",
    )


def check_rsd_hard(_: Path) -> ClaimOutcome:
    ratios = []
    for n in RSD_HARD_GRID:
        profile = gen_rsd_linear_hard(n, RSD_HARD_SEED)
        witness = linear_utility(Matching.from_permutation(range(n)), profile)
        sampled = rsd_sample_welfare(profile, 50, RSD_HARD_SEED)
        ratios.append(float(sampled.mean_utility / witness))

    decreasing = all(left > right for left, right in zip(ratios, ratios[1:]))

    return ClaimOutcome(
        expected="ratio <= 0.80 at the largest n and decreasing over n",
        actual=", ".join(f"n={n}: {ratio:.4f}" for n, ratio in zip(RSD_HARD_GRID, ratios)),
        passed=ratios[-1] <= 0.80 and decreasing,
        tolerance="trend over 50 samples",
    )


def check_kvv(_: Path) -> ClaimOutcome:
    n = 100
    instance = gen_random_partial(n, n, 3, 11)
    estimate = kvv_expected_matching(instance.partial_profile, 10_000, 11)
    floor = (1 - 1 / math.e) * n - 1

    hard = gen_kvv_hard(n)
    matching = sd_partial(hard.partial_profile, hard.arrival_order)
    happy = ordinal_happy_partial(matching, hard.matching_benchmark, hard.partial_profile)

    return ClaimOutcome(
        expected=f"matched >= {floor:.2f} (3 sigma); 1 happy agent on the adversarial order",
        actual=f"matched {estimate.mean:.2f} +- {estimate.stderr:.3f}; {happy} happy",
        passed=estimate.mean + 3 * estimate.stderr >= floor and happy == 1,
        tolerance="3 sigma",
    )


def check_partial(_: Path) -> ClaimOutcome:
    n = 100
    log_hard = gen_sd_log_hard(n)
    profile = log_hard.partial_profile
    utility = linear_utility_partial(sd_partial(profile, log_hard.arrival_order), profile)
    opt, _ = optimal_linear_partial(profile)
    harmonic = sd_partial_floor(n)

    adversarial = gen_partial_adversarial(125_000)
    if adversarial.witness is None:
        raise MissingBenchmarkError("Неблагоприятный экземпляр не содержит свидетеля оптимума")
    witness = linear_utility_partial(adversarial.witness, adversarial.partial_profile)
    estimate = rsd_partial_monte_carlo(adversarial.partial_profile, None, 20, 13)
    ratio = estimate.utility.mean / float(witness)

    return ClaimOutcome(
        expected=f"SD = H({n // 2}) = {float(harmonic):.4f}, OPT = {n // 2}, adversarial RSD/OPT <= 0.35",
        actual=f"SD = {float(utility):.4f}, OPT = {format_rational(opt)}, adversarial RSD/OPT = {ratio:.4f}",
        passed=utility == harmonic and opt == n // 2 and ratio <= 0.35,
        tolerance="exact; ratio over 20 samples",
    )


def check_kdemand(_: Path) -> ClaimOutcome:
    n, demand = 40, 4
    hard = gen_kdemand_hard(n, demand)
    fractions = {
        Fraction(
            ordinal_happy_bundles(
                rsd_bundles(hard.bundle_profile, random_order(17, index, n)),
                hard.bundle_benchmark,
                hard.bundle_profile,
            ),
            n,
        )
        for index in range(100)
    }

    demand_random = 3
    corpus = gen_random_bundles(60, demand_random, 3, 19)
    estimate = rsd_bundles_monte_carlo(corpus.bundle_profile, corpus.bundle_benchmark, 2000, 19)
    floor = kdemand_lower_bound(demand_random)

    return ClaimOutcome(
        expected=f"happy fraction 1/{demand} on every order; random >= {floor:.4f} (3 sigma)",
        actual=f"fractions {sorted(format_rational(value) for value in fractions)}; random {estimate.mean:.4f}",
        passed=fractions == {Fraction(1, demand)} and estimate.mean + 3 * estimate.stderr >= floor,
        tolerance="exact; 3 sigma",
    )


def check_constants(_: Path) -> ClaimOutcome:
    rsd_bound = rsd_general_linear_bound(0.77, 0.22)
    ps_constant = ps_general_linear_constant()
    scaled = kdemand_lower_bound(1000) * 2000

    return ClaimOutcome(
        expected="RSD bound in [0.525, 0.528]; PS constant 0.6602 +- 0.0005; 2K * bound -> 1 within 1%",
        actual=f"{rsd_bound:.5f}; {ps_constant:.5f}; {scaled:.5f}",
        passed=0.525 <= rsd_bound <= 0.528 and abs(ps_constant - 0.6602) <= 0.0005 and abs(scaled - 1) <= 0.01,
        tolerance="as stated",
    )


def check_bvn(_: Path) -> ClaimOutcome:
    failures = []
    draws = 20_000
    for index in range(200):
        n = 2 + index % 11
        matrix = ps_allocate(gen_random(n, 1000 + index)).matrix
        lottery = bvn_decompose(matrix)
        if len(lottery) > n * n - 2 * n + 2 or lottery.recombine().to_dense() != matrix.to_dense():
            failures.append(f"profile {index}: decomposition")
            continue
        frequencies = lottery_frequencies(lottery, draws, index)
        expected = np.array([[float(value) for value in row] for row in matrix.to_dense()])
        # дисперсия ограничена снизу 1/draws: для малых p одно попадание не превышает 5 sigma
        sigma = np.sqrt(np.maximum(expected * (1 - expected), 1 / draws) / draws)
        if np.any(np.abs(frequencies - expected) > 5 * sigma):
            failures.append(f"profile {index}: sampling")

    return ClaimOutcome(
        expected="<= n^2 - 2n + 2 components, exact recombination, sampling within 5 sigma",
        actual="; ".join(failures) or "all 200 profiles",
        passed=not failures,
        tolerance="exact; 5 sigma",
    )


CLAIMS: tuple[Claim, ...] = (
    Claim("appendix-a", "Таблицы распределений RSD и PS на экземплярах 1 и 2", check_reference_tables),
    Claim("appendix-a", "Порядковое, линейное и частичное благосостояние экземпляров 1 и 2", check_reference_welfare),
    Claim("rsd-bounds", "RSD: довольных >= n/2 - 2, мёртвых <= (t+2)(n-t)/(n+1)", check_rsd_bounds),
    Claim("ceiling", "Среднее по эталонам благосостояние RSD на одинаковых списках", check_identical_ceiling),
    Claim("ps-ordinal", "Сумма моментов исчерпания PS: >= (n+1)/2, <= порядкового благосостояния", check_ps_ordinal),
    Claim("ps-hard", "PS на блочном экземпляре n=2000, t=20", check_ps_hard),
    Claim("rsd-hard", "Линейный коэффициент RSD на блочном экземпляре убывает с ростом n", check_rsd_hard),
    Claim("kvv", "Размер паросочетания при случайном порядке >= (1-1/e)n и неблагоприятный порядок", check_kvv),
    Claim("partial", "Крайние случаи диктатуры на неполных списках", check_partial),
    Claim("kdemand", "Доля довольных агентов RSD при спросе на наборы", check_kdemand),
    Claim("constants", "Аналитические константы", check_constants),
    Claim("bvn", "Разложение Биркгофа – фон Неймана матриц PS", check_bvn),
)

CLAIM_TAGS: tuple[str, ...] = tuple(dict.fromkeys(claim.tag for claim in CLAIMS))


def run_claims(only: Optional[str] = None, fixtures_path: Path | str = FIXTURES_PATH) -> list[ClaimResultModel]:
    """
    Проверка утверждений.

    :param only: Метка группы утверждений (None — все утверждения).
    :param fixtures_path: Директория с эталонными экземплярами.
    :return: Результаты в порядке объявления.
    """

    selected = [claim for claim in CLAIMS if only is None or claim.tag == only]
    results = [claim.run(Path(fixtures_path)) for claim in selected]
    logger.info("Выполнено %s из %s утверждений", sum(result.passed for result in results), len(results))

    return results

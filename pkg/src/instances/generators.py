"""
Генераторы экземпляров: детерминированные семейства трудных экземпляров и
случайные корпуса с фиксированным зерном.

Все генераторы — чистые функции своих параметров. Агенты и предметы нумеруются с нуля.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from core.errors import DivisibilityError, IncompatibleMechanismError, MissingBenchmarkError, NotACubeError, OddNError
from core.models import Matching, PreferenceProfile
from core.sampling import BENCHMARK_STREAM, random_order, sample_stream
from extensions.models import BundleAllocation, BundleProfile, PartialProfile
from instances.models import FamilyEnum, GeneratorSpec
from logger import get_logger

logger = get_logger(__name__)

# максимальное удаление при поиске ближайшего допустимого n
SUGGESTION_RADIUS = 100_000

AnyProfile = Union[PreferenceProfile, PartialProfile, BundleProfile]


@dataclass(frozen=True)
class Instance:
    """
    Экземпляр вместе с сопутствующими данными конструкции: эталонным распределением,
    порядком прихода (для детерминированной диктатуры) и паросочетанием-свидетелем,
    которое даёт нижнюю оценку оптимума без решателя.
    """

    profile: AnyProfile
    benchmark: Optional[Union[Matching, BundleAllocation]] = None
    order: Optional[tuple[int, ...]] = None
    witness: Optional[Matching] = None

    @property
    def kind(self) -> str:
        if isinstance(self.profile, PartialProfile):
            return "partial"
        if isinstance(self.profile, BundleProfile):
            return "bundle"
        return "complete"

    @property
    def complete_profile(self) -> PreferenceProfile:
        """
        Профиль полных списков.

        :raises IncompatibleMechanismError: Экземпляр другого вида.
        """

        if not isinstance(self.profile, PreferenceProfile):
            raise IncompatibleMechanismError(f"Ожидается экземпляр с полными списками, получен {self.kind}")
        return self.profile

    @property
    def partial_profile(self) -> PartialProfile:
        """
        Профиль неполных списков.

        :raises IncompatibleMechanismError: Экземпляр другого вида.
        """

        if not isinstance(self.profile, PartialProfile):
            raise IncompatibleMechanismError(f"Ожидается экземпляр с неполными списками, получен {self.kind}")
        return self.profile

    @property
    def bundle_profile(self) -> BundleProfile:
        """
        Профиль наборов.

        :raises IncompatibleMechanismError: Экземпляр другого вида.
        """

        if not isinstance(self.profile, BundleProfile):
            raise IncompatibleMechanismError(f"Ожидается экземпляр с наборами, получен {self.kind}")
        return self.profile

    @property
    def matching_benchmark(self) -> Matching:
        """
        Эталонное паросочетание конструкции.

        :raises MissingBenchmarkError: Эталон не задан или задан наборами.
        """

        if not isinstance(self.benchmark, Matching):
            raise MissingBenchmarkError("Экземпляр не содержит эталонного паросочетания")
        return self.benchmark

    @property
    def bundle_benchmark(self) -> BundleAllocation:
        """
        Эталонное распределение наборов конструкции.

        :raises MissingBenchmarkError: Эталон не задан или задан паросочетанием.
        """

        if not isinstance(self.benchmark, BundleAllocation):
            raise MissingBenchmarkError("Экземпляр не содержит эталонного распределения наборов")
        return self.benchmark

    @property
    def arrival_order(self) -> tuple[int, ...]:
        """
        Порядок прихода конструкции; без него — тождественный порядок.
        """

        return self.order if self.order is not None else tuple(range(self.profile.n))


def integer_root(value: int, degree: int) -> int:
    """
    Целая часть корня степени ``degree``.

    :param value: Неотрицательное целое.
    :param degree: Степень корня.
    :return: Наибольшее r, для которого r**degree ≤ value.
    """

    root = int(round(value ** (1 / degree)))
    while root**degree > value:
        root -= 1
    while (root + 1) ** degree <= value:
        root += 1

    return root


def nearest_valid(n: int, valid: Callable[[int], bool]) -> str:
    """
    Ближайшие допустимые значения n снизу и сверху в виде подсказки.

    .. code-block::

        nearest_valid(10, lambda k: k % 3 == 0)  # "n=9 or n=12"

    :param n: Недопустимое значение.
    :param valid: Проверка допустимости.
    :return: Строка подсказки.
    """

    below = next((k for k in range(n - 1, 0, -1) if valid(k)), None)
    above = next((k for k in range(n + 1, n + SUGGESTION_RADIUS) if valid(k)), None)

    return " or ".join(f"n={k}" for k in (below, above) if k is not None)


def _rsd_hard_valid(n: int) -> bool:
    blocks = integer_root(n, 5)
    return blocks >= 2 and n % blocks == 0


def gen_identical(n: int) -> PreferenceProfile:
    """
    Все агенты имеют одинаковый список (0, 1, …, n − 1).
    """

    return PreferenceProfile.from_array(np.tile(np.arange(n, dtype=np.int32), (n, 1)))


def gen_random(n: int, seed: int) -> PreferenceProfile:
    """
    Независимые равномерно случайные перестановки в качестве списков.

    :param n: Количество агентов.
    :param seed: Зерно.
    :return: Профиль предпочтений.
    """

    rng = sample_stream(seed, 0)

    return PreferenceProfile.from_array(rng.permuted(np.tile(np.arange(n, dtype=np.int32), (n, 1)), axis=1))


def gen_random_benchmark(profile: AnyProfile, seed: int) -> Matching:
    """
    Равномерно случайное совершенное эталонное паросочетание.

    :param profile: Профиль (используется только n).
    :param seed: Зерно.
    :return: Паросочетание.
    """

    return Matching.from_permutation(random_order(seed, BENCHMARK_STREAM, profile.n).tolist())


def gen_rsd_linear_hard(n: int, seed: int) -> PreferenceProfile:
    """
    Экземпляр, на котором RSD теряет линейное благосостояние.

    Агенты и предметы разбиты на t = ⌊n^(1/5)⌋ блоков. Агент блока j сначала
    перечисляет по t³ случайных предметов (без повторений) из каждого предыдущего
    блока в порядке возрастания, затем предмет со своим номером, затем остальные
    предметы по возрастанию. Поток случайных чисел агента определяется парой (seed, агент).

    :param n: Количество агентов, t ≥ 2 и t делит n.
    :param seed: Зерно.
    :return: Профиль предпочтений.
    :raises DivisibilityError: Условия на n не выполнены.
    """

    if not _rsd_hard_valid(n):
        raise DivisibilityError(
            f"Для n={n} требуется t = ⌊n^(1/5)⌋ ≥ 2, делящее n", suggestion=nearest_valid(n, _rsd_hard_valid)
        )

    blocks = integer_root(n, 5)
    size = n // blocks
    sampled = blocks**3
    logger.info("Генерация rsd-hard: n=%s, t=%s ...", n, blocks)

    prefs = np.empty((n, n), dtype=np.int32)
    for agent in range(n):
        rng = sample_stream(seed, agent)
        block = agent // size
        prefix = np.sort(
            np.concatenate(
                [earlier * size + rng.choice(size, sampled, replace=False) for earlier in range(block)]
                + [np.empty(0, dtype=np.int64)]
            )
        )
        free = np.ones(n, dtype=bool)
        free[prefix] = False
        free[agent] = False
        prefs[agent] = np.concatenate([prefix, [agent], np.flatnonzero(free)])

    return PreferenceProfile.from_array(prefs)


def gen_ps_linear_hard(n: int, blocks: int) -> PreferenceProfile:
    """
    Блочный экземпляр, на котором PS получает около 2n/3 линейной полезности.

    Агент k блока j: первые j + 1 позиций занимают k-е предметы блоков 0..j;
    для каждого следующего блока ℓ > j его k-й предмет стоит на позиции ℓ·n/t;
    остальные позиции заполняются оставшимися предметами по возрастанию.

    .. code-block::

        gen_ps_linear_hard(9, 3).preference_list(3)  # (0, 3, 1, 2, 4, 5, 6, 7, 8)

    :param n: Количество агентов.
    :param blocks: Количество блоков t, делящее n.
    :return: Профиль предпочтений.
    :raises DivisibilityError: t не делит n.
    """

    if n % blocks:
        raise DivisibilityError(
            f"t={blocks} должно делить n={n}", suggestion=nearest_valid(n, lambda k: k % blocks == 0)
        )

    size = n // blocks
    prefs = np.empty((n, n), dtype=np.int32)
    for agent in range(n):
        block, k = divmod(agent, size)
        row = np.full(n, -1, dtype=np.int32)
        row[: block + 1] = np.arange(block + 1) * size + k
        later = np.arange(block + 1, blocks)
        row[later * size] = later * size + k
        used = np.zeros(n, dtype=bool)
        used[row[row >= 0]] = True
        row[row < 0] = np.flatnonzero(~used)
        prefs[agent] = row

    return PreferenceProfile.from_array(prefs)


def default_blocks(n: int) -> int:
    """
    Число блоков по умолчанию для ps-hard: наибольший делитель n, не превосходящий √n.
    """

    return max(divisor for divisor in range(1, math.isqrt(n) + 1) if n % divisor == 0)


def gen_kvv_hard(n: int) -> Instance:
    """
    Экземпляр для диктатуры с заданным порядком: агент 0 перечисляет (0, n − 1),
    агент i ≥ 1 — (i − 1, i). Эталон: агент i → i − 1, агент 0 → n − 1.
    Порядок 0, 1, …, n − 1 оставляет довольным только агента 0.

    :param n: Количество агентов (не меньше 2).
    :return: Экземпляр с эталоном и порядком прихода.
    """

    if n < 2:
        raise DivisibilityError(f"Требуется n ≥ 2, получено {n}", suggestion="n=2")

    lists = ((0, n - 1),) + tuple((agent - 1, agent) for agent in range(1, n))
    benchmark = Matching({0: n - 1, **{agent: agent - 1 for agent in range(1, n)}})

    return Instance(PartialProfile(n, n, lists), benchmark, tuple(range(n)), benchmark)


def gen_sd_log_hard(n: int) -> Instance:
    """
    Экземпляр, на котором диктатура получает H(n/2) при оптимуме n/2:
    агент i < n/2 перечисляет (0, …, i), агент n/2 + i — только предмет i.

    :param n: Чётное количество агентов.
    :return: Экземпляр с порядком 0..n−1 и оптимальным свидетелем.
    :raises OddNError: n нечётно.
    """

    if n % 2:
        raise OddNError(f"Требуется чётное n, получено {n}", suggestion=nearest_valid(n, lambda k: k % 2 == 0))

    half = n // 2
    lists = tuple(tuple(range(agent + 1)) for agent in range(half)) + tuple((item,) for item in range(half))
    witness = Matching({half + item: item for item in range(half)})

    return Instance(PartialProfile(n, half, lists), order=tuple(range(n)), witness=witness)


def gen_partial_adversarial(n: int) -> Instance:
    """
    Экземпляр с «хорошими» и «плохими» агентами.

    При c = n^(1/3): c² хороших агентов с единственным предметом i; плохой агент j
    (j = 1..n − c²) перечисляет c «плохих» предметов, затем хороший предмет j mod c².

    :param n: Количество агентов — точный куб.
    :return: Экземпляр со свидетелем «хороший агент i → предмет i».
    :raises NotACubeError: n не является кубом.
    """

    side = integer_root(n, 3)
    if side**3 != n:
        lower, upper = side**3, (side + 1) ** 3
        suggestion = " or ".join(f"n={k}" for k in (lower, upper) if k > 0)
        raise NotACubeError(f"n={n} не является точным кубом", suggestion=suggestion)

    good = side * side
    bad_items = tuple(range(good, good + side))
    lists = tuple((agent,) for agent in range(good)) + tuple(
        bad_items + (number % good,) for number in range(1, n - good + 1)
    )
    witness = Matching({agent: agent for agent in range(good)})
    logger.info("Генерация partial-adversarial: %s хороших и %s плохих агентов", good, n - good)

    return Instance(PartialProfile(n, good + side, lists), witness=witness)


def gen_kdemand_hard(n: int, demand: int) -> Instance:
    """
    Экземпляр со спросом на наборы, на котором RSD делает довольной ровно долю 1/K агентов.

    Группа i из K агентов владеет блоком из K² предметов. Агент j группы i
    сначала хочет «столбец» {iK² + j′K}, затем собственную «строку» {iK² + jK + r}.
    Эталон — вторые выборы (строки). При K = 1 оба набора совпадают и перечисляются один раз.

    :param n: Количество агентов, кратное K.
    :param demand: Размер набора K.
    :return: Экземпляр с эталонным распределением.
    :raises DivisibilityError: K не делит n.
    """

    if n % demand:
        raise DivisibilityError(
            f"K={demand} должно делить n={n}", suggestion=nearest_valid(n, lambda k: k % demand == 0)
        )

    square = demand * demand
    lists = []
    for agent in range(n):
        group, member = divmod(agent, demand)
        column = tuple(group * square + other * demand for other in range(demand))
        row = tuple(group * square + member * demand + shift for shift in range(demand))
        lists.append((column, row) if column != row else (row,))

    benchmark = BundleAllocation({agent: len(lists[agent]) - 1 for agent in range(n)})

    return Instance(BundleProfile(n, n * demand, demand, tuple(lists)), benchmark=benchmark)


def gen_random_partial(n: int, m: int, degree: int, seed: int) -> Instance:
    """
    Случайные неполные списки длины ``degree``, содержащие скрытое совершенное паросочетание.

    :param n: Количество агентов.
    :param m: Количество предметов (m ≥ n).
    :param degree: Длина списка (1 ≤ degree ≤ m).
    :param seed: Зерно.
    :return: Экземпляр со скрытым паросочетанием в роли эталона.
    """

    if m < n or not 1 <= degree <= m:
        raise DivisibilityError(f"Требуется m ≥ n и 1 ≤ degree ≤ m, получено m={m}, degree={degree}")

    rng = sample_stream(seed, 0)
    hidden = rng.permutation(m)[:n]
    lists = []
    for agent in range(n):
        others = np.delete(np.arange(m), hidden[agent])
        chosen = np.append(rng.choice(others, degree - 1, replace=False), hidden[agent])
        lists.append(tuple(rng.permutation(chosen).tolist()))

    benchmark = Matching({agent: int(hidden[agent]) for agent in range(n)})

    return Instance(PartialProfile(n, m, tuple(lists)), benchmark=benchmark, witness=benchmark)


def gen_random_bundles(n: int, demand: int, extra: int, seed: int) -> Instance:
    """
    Случайные списки наборов: у каждого агента скрытый набор из непересекающегося
    разбиения nK предметов плюс ``extra`` случайных наборов; порядок списка случаен.

    :param n: Количество агентов.
    :param demand: Размер набора K.
    :param extra: Количество дополнительных наборов на агента.
    :param seed: Зерно.
    :return: Экземпляр со скрытыми наборами в роли эталона.
    """

    items = n * demand
    if math.comb(items, demand) < extra + 1:
        raise DivisibilityError(f"Недостаточно различных наборов для extra={extra}")

    rng = sample_stream(seed, 0)
    hidden = rng.permutation(items).reshape(n, demand)
    lists = []
    benchmark = {}
    for agent in range(n):
        own = tuple(sorted(hidden[agent].tolist()))
        bundles = [own]
        while len(bundles) < extra + 1:
            candidate = tuple(sorted(rng.choice(items, demand, replace=False).tolist()))
            if candidate not in bundles:
                bundles.append(candidate)
        shuffled = [bundles[index] for index in rng.permutation(len(bundles))]
        lists.append(tuple(shuffled))
        benchmark[agent] = shuffled.index(own)

    return Instance(BundleProfile(n, items, demand, tuple(lists)), benchmark=BundleAllocation(benchmark))


def generate(spec: GeneratorSpec) -> Instance:
    """
    Построение экземпляра семейства по его параметрам.

    :param spec: Параметры генератора.
    :return: Экземпляр с сопутствующими данными.
    """

    logger.info("Генерация семейства %s с параметрами %s ...", spec.family.value, spec.dict(exclude={"family"}))
    n = spec.n

    if spec.family is FamilyEnum.IDENTICAL:
        return Instance(gen_identical(n))
    if spec.family is FamilyEnum.RANDOM:
        return Instance(gen_random(n, spec.seed))
    if spec.family is FamilyEnum.RSD_HARD:
        return Instance(gen_rsd_linear_hard(n, spec.seed), witness=Matching.from_permutation(range(n)))
    if spec.family is FamilyEnum.PS_HARD:
        blocks = spec.t or default_blocks(n)
        return Instance(gen_ps_linear_hard(n, blocks), witness=Matching.from_permutation(range(n)))
    if spec.family is FamilyEnum.KVV:
        return gen_kvv_hard(n)
    if spec.family is FamilyEnum.SD_LOG:
        return gen_sd_log_hard(n)
    if spec.family is FamilyEnum.PARTIAL_ADVERSARIAL:
        return gen_partial_adversarial(n)
    if spec.family is FamilyEnum.KDEMAND:
        if spec.K is None:
            raise DivisibilityError("Для семейства kdemand требуется параметр K", suggestion="K=2")
        return gen_kdemand_hard(n, spec.K)
    if spec.family is FamilyEnum.RANDOM_PARTIAL:
        m = spec.m or n
        return gen_random_partial(n, m, spec.degree or min(3, m), spec.seed)

    return gen_random_bundles(n, spec.K or 2, spec.extra, spec.seed)

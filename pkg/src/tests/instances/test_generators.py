"""
Тестирование генераторов экземпляров.
"""
import json
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from core.errors import DivisibilityError, IncompatibleMechanismError, MissingBenchmarkError, NotACubeError, OddNError
from core.models import Matching, PreferenceProfile
from core.sampling import BENCHMARK_STREAM, random_order
from extensions.models import BundleAllocation, BundleProfile, PartialProfile
from instances.generators import (
    Instance,
    default_blocks,
    gen_identical,
    gen_ps_linear_hard,
    gen_random,
    gen_random_benchmark,
    gen_random_bundles,
    gen_random_partial,
    gen_rsd_linear_hard,
    generate,
    integer_root,
    nearest_valid,
)
from instances.models import FamilyEnum, GeneratorSpec


class TestHelpers:
    """
    Тестирование вспомогательных функций генераторов.
    """

    @pytest.mark.parametrize("value, degree, root", [(125000, 3, 50), (124999, 3, 49), (4095, 5, 5), (32, 5, 2)])
    def test_integer_root(self, value: int, degree: int, root: int) -> None:
        """
        Целая часть корня без ошибок округления.

        :param value: Число.
        :param degree: Степень корня.
        :param root: Ожидаемый результат.
        """

        assert integer_root(value, degree) == root

    def test_nearest_valid(self) -> None:
        """
        Подсказка содержит ближайшие допустимые значения с обеих сторон.
        """

        assert nearest_valid(10, lambda k: k % 3 == 0) == "n=9 or n=12"
        assert nearest_valid(1, lambda k: k % 2 == 0) == "n=2"

    @pytest.mark.parametrize("n, blocks", [(9, 3), (12, 3), (7, 1), (2000, 40)])
    def test_default_blocks(self, n: int, blocks: int) -> None:
        """
        Наибольший делитель n, не превосходящий √n.

        :param n: Количество агентов.
        :param blocks: Ожидаемое число блоков.
        """

        assert default_blocks(n) == blocks


class TestCompleteFamilies:
    """
    Тестирование семейств полных списков.
    """

    def test_identical(self) -> None:
        """
        Все списки одинаковы.
        """

        profile = gen_identical(5)

        assert all(profile.preference_list(agent) == (0, 1, 2, 3, 4) for agent in range(5))

    def test_random(self) -> None:
        """
        Случайный профиль детерминирован зерном и состоит из перестановок.
        """

        profile = gen_random(8, 3)

        assert profile == gen_random(8, 3)
        assert all(sorted(profile.preference_list(agent)) == list(range(8)) for agent in range(8))
        assert gen_random_benchmark(profile, 3).is_perfect(8)

    def test_random_benchmark_stream(self) -> None:
        """
        Случайный эталон берётся из отдельного потока, а не из потока первой выборки.
        """

        benchmark = gen_random_benchmark(gen_identical(20), 3)

        assert benchmark == Matching.from_permutation(random_order(3, BENCHMARK_STREAM, 20).tolist())
        assert benchmark != Matching.from_permutation(random_order(3, 0, 20).tolist())

    def test_ps_hard_golden(self, fixtures_dir: Path) -> None:
        """
        Блочный экземпляр 9/3 совпадает с эталонным файлом.

        :param Path fixtures_dir: Директория эталонных экземпляров.
        """

        payload = json.loads((fixtures_dir / "ps_hard_9_3.json").read_text(encoding="utf-8"))

        assert gen_ps_linear_hard(9, 3).prefs.tolist() == payload["preferences"]

    def test_ps_hard_divisibility(self) -> None:
        """
        Ошибка делимости содержит подсказку с ближайшими допустимыми n.
        """

        with pytest.raises(DivisibilityError, match="try n=9 or n=12"):
            generate(GeneratorSpec(family=FamilyEnum.PS_HARD, n=10, t=3))

    def test_rsd_hard(self) -> None:
        """
        Агент второго блока перечисляет t³ предметов первого блока, затем свой предмет.
        """

        profile = gen_rsd_linear_hard(32, 5)
        row = profile.preference_list(16)

        assert profile == gen_rsd_linear_hard(32, 5)
        assert profile.preference_list(0)[0] == 0
        assert list(row[:8]) == sorted(row[:8]) and all(item < 16 for item in row[:8])
        assert row[8] == 16
        assert sorted(row) == list(range(32))

    def test_rsd_hard_invalid(self) -> None:
        """
        n = 33 не делится на ⌊n^(1/5)⌋ = 2.
        """

        with pytest.raises(DivisibilityError, match="try"):
            gen_rsd_linear_hard(33, 1)


class TestPartialFamilies:
    """
    Тестирование семейств неполных списков.
    """

    def test_kvv(self) -> None:
        """
        Структура экземпляра с одним довольным агентом.
        """

        instance = generate(GeneratorSpec(family=FamilyEnum.KVV, n=4))

        assert isinstance(instance.profile, PartialProfile)
        assert instance.profile.lists == ((0, 3), (0, 1), (1, 2), (2, 3))
        assert instance.order == (0, 1, 2, 3)
        assert instance.kind == "partial"

    def test_sd_log(self) -> None:
        """
        Первая половина агентов перечисляет префиксы, вторая — по одному предмету.
        """

        instance = generate(GeneratorSpec(family=FamilyEnum.SD_LOG, n=6))

        assert instance.profile.lists == ((0,), (0, 1), (0, 1, 2), (0,), (1,), (2,))
        assert instance.witness is not None and len(instance.witness) == 3

    def test_sd_log_odd(self) -> None:
        """
        Нечётное n отклоняется с подсказкой.
        """

        with pytest.raises(OddNError, match="try n=8 or n=10"):
            generate(GeneratorSpec(family=FamilyEnum.SD_LOG, n=9))

    def test_partial_adversarial(self) -> None:
        """
        n = 27: девять хороших агентов и три плохих предмета.
        """

        instance = generate(GeneratorSpec(family=FamilyEnum.PARTIAL_ADVERSARIAL, n=27))
        profile = instance.profile

        assert isinstance(profile, PartialProfile)
        assert profile.m == 12
        assert profile.lists[0] == (0,)
        assert profile.lists[9] == (9, 10, 11, 1)

    def test_partial_adversarial_not_cube(self) -> None:
        """
        n, не являющееся кубом, отклоняется с подсказкой.
        """

        with pytest.raises(NotACubeError, match="try n=8 or n=27"):
            generate(GeneratorSpec(family=FamilyEnum.PARTIAL_ADVERSARIAL, n=10))

    def test_random_partial(self) -> None:
        """
        Скрытое паросочетание содержится в списках.
        """

        instance = gen_random_partial(10, 15, 4, 2)
        profile = instance.profile

        assert isinstance(profile, PartialProfile)
        assert all(len(items) == 4 for items in profile.lists)
        assert instance.benchmark is not None
        assert all(profile.position_of(agent, item) is not None for agent, item in instance.benchmark.items())

    def test_random_partial_invalid(self) -> None:
        """
        m < n отклоняется.
        """

        with pytest.raises(DivisibilityError):
            gen_random_partial(10, 5, 2, 0)


class TestBundleFamilies:
    """
    Тестирование семейств со спросом на наборы.
    """

    def test_kdemand(self) -> None:
        """
        Агент сначала хочет «столбец» своей группы, затем собственную «строку».
        """

        instance = generate(GeneratorSpec(family=FamilyEnum.KDEMAND, n=4, K=2))
        profile = instance.profile

        assert isinstance(profile, BundleProfile)
        assert profile.lists[1] == ((0, 2), (2, 3))
        assert profile.lists[2] == ((4, 6), (4, 5))
        assert instance.kind == "bundle"

    def test_kdemand_single(self) -> None:
        """
        При K = 1 столбец и строка совпадают, набор перечисляется один раз.
        """

        instance = generate(GeneratorSpec(family=FamilyEnum.KDEMAND, n=3, K=1))

        assert instance.profile.lists == (((0,),), ((1,),), ((2,),))

    def test_kdemand_requires_k(self) -> None:
        """
        Без K экземпляр не строится.
        """

        with pytest.raises(DivisibilityError):
            generate(GeneratorSpec(family=FamilyEnum.KDEMAND, n=4))

    def test_random_bundles(self) -> None:
        """
        Скрытые наборы попарно не пересекаются.
        """

        instance = gen_random_bundles(6, 3, 2, 4)
        profile = instance.profile

        assert isinstance(profile, BundleProfile)
        assert all(len(bundles) == 3 for bundles in profile.lists)
        assert isinstance(instance.benchmark, BundleAllocation)
        instance.benchmark.validate_for(profile)


class TestGeneratorSpec:
    """
    Тестирование параметров генератора.
    """

    def test_defaults(self) -> None:
        """
        Тестирование значений по умолчанию.
        """

        spec = GeneratorSpec(family="identical", n=3)

        assert spec.family is FamilyEnum.IDENTICAL
        assert spec.extra == 0
        assert isinstance(generate(spec).profile, PreferenceProfile)

    @pytest.mark.parametrize("fields", [{"n": 0}, {"n": 3, "t": 0}, {"n": 3, "seed": -1}, {"n": 3, "extra": -1}])
    def test_invalid(self, fields: dict) -> None:
        """
        Неположительные параметры отклоняются.

        :param fields: Параметры.
        """

        with pytest.raises(ValidationError):
            GeneratorSpec(family="ps-hard", **fields)

    def test_witness_identity(self) -> None:
        """
        Свидетель блочного экземпляра — тождественное паросочетание.
        """

        instance = generate(GeneratorSpec(family="ps-hard", n=9))

        assert instance.witness is not None
        assert np.array_equal(instance.witness.to_permutation(9), np.arange(9))


class TestInstance:
    """
    Тестирование доступа к данным экземпляра.
    """

    def test_accessors(self) -> None:
        """
        Профиль и эталон доступны по виду экземпляра.
        """

        complete = Instance(gen_identical(3))
        bundles = generate(GeneratorSpec(family="kdemand", n=4, K=2))

        assert complete.complete_profile.n == 3
        assert complete.arrival_order == (0, 1, 2)
        assert bundles.bundle_profile.demand == 2
        assert isinstance(bundles.bundle_benchmark, BundleAllocation)
        with pytest.raises(IncompatibleMechanismError):
            _ = complete.partial_profile
        with pytest.raises(IncompatibleMechanismError):
            _ = bundles.complete_profile
        with pytest.raises(MissingBenchmarkError):
            _ = complete.matching_benchmark
        with pytest.raises(MissingBenchmarkError):
            _ = bundles.matching_benchmark

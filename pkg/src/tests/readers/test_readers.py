"""
Тестирование функций чтения экземпляров и эталонов.
"""
import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from core.errors import InvalidMatchingError, NotPermutationError
from core.models import Matching, PreferenceProfile
from extensions.models import BundleAllocation, BundleProfile, PartialProfile
from formatters.models import InstanceModel
from instances.generators import gen_kdemand_hard, gen_kvv_hard
from readers.reader import BenchmarkReader, CompleteProfileReader, InstanceReader


class TestReaders:
    """
    Тестирование функций чтения экземпляров.
    """

    @staticmethod
    def write(path: Path, payload: dict) -> Path:
        """
        Запись JSON-файла.

        :param path: Путь к файлу.
        :param payload: Содержимое.
        :return: Путь к файлу.
        """

        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    def test_instance1(self, fixtures_dir: Path, instance1: PreferenceProfile) -> None:
        """
        Тестирование чтения экземпляра 1.

        :param Path fixtures_dir: Директория эталонных экземпляров.
        :param PreferenceProfile instance1: Фикстура экземпляра 1.
        """

        instance = InstanceReader(fixtures_dir / "instance1.json").read()

        assert instance.kind == "complete"
        assert instance.profile == instance1
        assert instance.benchmark is None and instance.order is None

    def test_benchmark(self, fixtures_dir: Path, benchmark_b1: Matching) -> None:
        """
        Тестирование чтения эталона B1 для экземпляра 2.

        :param Path fixtures_dir: Директория эталонных экземпляров.
        :param Matching benchmark_b1: Фикстура эталона B1.
        """

        instance = InstanceReader(fixtures_dir / "instance2.json").read()

        assert BenchmarkReader(fixtures_dir / "benchmark_b1.json").read(instance) == benchmark_b1

    def test_benchmark_out_of_range(self, fixtures_dir: Path, tmp_path: Path) -> None:
        """
        Эталон с предметом вне диапазона отклоняется.

        :param Path fixtures_dir: Директория эталонных экземпляров.
        :param Path tmp_path: Временная директория.
        """

        instance = InstanceReader(fixtures_dir / "instance2.json").read()
        path = self.write(tmp_path / "benchmark.json", {"matching": [[0, 5]]})

        with pytest.raises(InvalidMatchingError):
            BenchmarkReader(path).read(instance)

    def test_invalid_profile(self) -> None:
        """
        Ошибка профиля указывает агента и позицию.
        """

        reader = CompleteProfileReader({"n": 2, "preferences": [[0, 1], [1, 1]]})

        with pytest.raises(NotPermutationError) as info:
            reader.read()

        assert (info.value.agent, info.value.entry) == (1, 1)

    def test_invalid_schema(self, tmp_path: Path) -> None:
        """
        Файл без списков предпочтений не проходит проверку схемы.

        :param Path tmp_path: Временная директория.
        """

        path = self.write(tmp_path / "broken.json", {"kind": "complete", "n": 2})

        with pytest.raises(ValidationError):
            InstanceReader(path).read()

    def test_partial(self, tmp_path: Path) -> None:
        """
        Неполный экземпляр читается вместе с эталоном и порядком прихода.

        :param Path tmp_path: Временная директория.
        """

        model = InstanceModel.from_instance(gen_kvv_hard(4))
        path = self.write(tmp_path / "kvv.json", json.loads(model.json(exclude_none=True)))

        instance = InstanceReader(path).read()

        assert isinstance(instance.profile, PartialProfile)
        assert instance.profile.lists == ((0, 3), (0, 1), (1, 2), (2, 3))
        assert instance.benchmark == Matching({0: 3, 1: 0, 2: 1, 3: 2})
        assert instance.order == (0, 1, 2, 3)

    def test_partial_benchmark_off_list(self, tmp_path: Path) -> None:
        """
        Эталон, назначающий предмет не из списка агента, отклоняется.

        :param Path tmp_path: Временная директория.
        """

        instance = gen_kvv_hard(4)
        path = self.write(tmp_path / "benchmark.json", {"matching": [[0, 1]]})

        with pytest.raises(InvalidMatchingError):
            BenchmarkReader(path).read(instance)

    def test_bundles(self, tmp_path: Path) -> None:
        """
        Экземпляр со спросом на наборы читается с эталонным распределением наборов.

        :param Path tmp_path: Временная директория.
        """

        model = InstanceModel.from_instance(gen_kdemand_hard(4, 2))
        path = self.write(tmp_path / "kdemand.json", json.loads(model.json(exclude_none=True)))

        instance = InstanceReader(path).read()

        assert isinstance(instance.profile, BundleProfile)
        assert instance.profile.demand == 2
        assert isinstance(instance.benchmark, BundleAllocation)
        assert dict(instance.benchmark.assignment) == {0: 1, 1: 1, 2: 1, 3: 1}

        benchmark = self.write(tmp_path / "benchmark.json", {"matching": [[0, 0], [1, 0]]})
        # оба агента группы претендуют на один «столбец»
        with pytest.raises(InvalidMatchingError):
            BenchmarkReader(benchmark).read(instance)

    def test_bundle_requires_k(self) -> None:
        """
        Экземпляр с наборами без K не проходит проверку схемы.
        """

        with pytest.raises(ValidationError):
            InstanceModel.parse_obj({"kind": "bundle", "n": 1, "preferences": [[[0]]]})

    def test_ps_hard_fixture(self, fixtures_dir: Path) -> None:
        """
        Эталонный блочный экземпляр читается как полный профиль из девяти агентов.

        :param Path fixtures_dir: Директория эталонных экземпляров.
        """

        instance = InstanceReader(fixtures_dir / "ps_hard_9_3.json").read()

        assert isinstance(instance.profile, PreferenceProfile)
        assert instance.profile.n == 9
        assert instance.profile.preference_list(3) == (0, 3, 1, 2, 4, 5, 6, 7, 8)

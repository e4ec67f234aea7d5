"""
Тестирование проверки утверждений.
"""
import json
import shutil
from pathlib import Path

import pytest

from verification.claims import CLAIM_TAGS, CLAIMS, Claim, ClaimOutcome, random_corpus, run_claims


class TestClaims:
    """
    Тестирование набора утверждений.
    """

    def test_tags(self) -> None:
        """
        Метки групп уникальны и идут в порядке объявления.
        """

        assert CLAIM_TAGS[0] == "appendix-a"
        assert len(CLAIM_TAGS) == len(set(CLAIM_TAGS))
        assert {claim.tag for claim in CLAIMS} == set(CLAIM_TAGS)

    @pytest.mark.parametrize("tag", ["appendix-a", "ceiling", "constants", "ps-ordinal", "bvn"])
    def test_cheap_claims(self, tag: str, fixtures_dir: Path) -> None:
        """
        Быстрые утверждения выполняются на эталонных экземплярах.

        :param tag: Метка группы.
        :param Path fixtures_dir: Директория эталонных экземпляров.
        """

        results = run_claims(tag, fixtures_dir)

        assert results
        assert all(result.passed for result in results), [result.actual for result in results]

    def test_corrupted_fixture(self, fixtures_dir: Path, tmp_path: Path) -> None:
        """
        Испорченная таблица экземпляра приводит к невыполнению утверждения.

        :param Path fixtures_dir: Директория эталонных экземпляров.
        :param Path tmp_path: Временная директория.
        """

        for path in fixtures_dir.iterdir():
            shutil.copy(path, tmp_path / path.name)
        payload = json.loads((tmp_path / "instance2.json").read_text(encoding="utf-8"))
        payload["preferences"][2] = [0, 1, 2]
        (tmp_path / "instance2.json").write_text(json.dumps(payload), encoding="utf-8")

        results = run_claims("appendix-a", tmp_path)

        assert [result.passed for result in results] == [False, False]

    def test_missing_fixture(self, tmp_path: Path) -> None:
        """
        Ошибка при вычислении считается невыполнением утверждения.

        :param Path tmp_path: Пустая временная директория.
        """

        (result, _) = run_claims("appendix-a", tmp_path)

        assert not result.passed
        assert result.actual.startswith("error:")

    def test_claim_run(self, tmp_path: Path) -> None:
        """
        Результат проверки переносит ожидаемое и фактическое значения.

        :param Path tmp_path: Временная директория.
        """

        claim = Claim("demo", "тест", lambda _: ClaimOutcome(expected="1", actual="1", passed=True, tolerance="±0"))
        result = claim.run(tmp_path)

        assert (result.tag, result.expected, result.actual, result.tolerance, result.passed) == (
            "demo",
            "1",
            "1",
            "±0",
            True,
        )

    def test_random_corpus(self) -> None:
        """
        Корпус воспроизводим и покрывает n = 3..7.
        """

        corpus = random_corpus()

        assert len(corpus) == 100
        assert {profile.n for profile, _ in corpus} == {3, 4, 5, 6, 7}
        assert all(len(benchmarks) == 5 for _, benchmarks in corpus)
        assert corpus[0][0] == random_corpus()[0][0]

"""
Тестирование консольных команд.
"""
import json
import shutil
from pathlib import Path

import pytest
from click.testing import CliRunner

from main import USAGE_ERROR, VERIFICATION_FAILURE, cli


class TestCli:
    """
    Тестирование консольных команд.
    """

    @pytest.fixture
    def runner(self) -> CliRunner:
        """
        Получение исполнителя команд.

        :return:
        """

        return CliRunner(mix_stderr=False)

    def test_gen(self, runner: CliRunner) -> None:
        """
        Генерация экземпляра с одинаковыми списками.

        :param CliRunner runner: Исполнитель команд.
        """

        result = runner.invoke(cli, ["gen", "--generator", "identical", "--n", "3"])

        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert payload["kind"] == "complete"
        assert payload["preferences"] == [[0, 1, 2]] * 3

    def test_gen_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """
        Генерация экземпляра в файл.

        :param CliRunner runner: Исполнитель команд.
        :param Path tmp_path: Временная директория.
        """

        path = tmp_path / "ps_hard.json"
        result = runner.invoke(cli, ["gen", "-g", "ps-hard", "--n", "9", "--t", "3", "-o", str(path)])

        assert result.exit_code == 0
        assert json.loads(path.read_text(encoding="utf-8"))["preferences"][3] == [0, 3, 1, 2, 4, 5, 6, 7, 8]

    def test_gen_divisibility(self, runner: CliRunner) -> None:
        """
        Недопустимые параметры семейства завершают команду с кодом 2.

        :param CliRunner runner: Исполнитель команд.
        """

        result = runner.invoke(cli, ["gen", "--generator", "ps-hard", "--n", "10", "--t", "3"])

        assert result.exit_code == USAGE_ERROR
        assert "try n=9 or n=12" in result.stderr

    def test_gen_requires_family(self, runner: CliRunner) -> None:
        """
        Без семейства генерация невозможна.

        :param CliRunner runner: Исполнитель команд.
        """

        assert runner.invoke(cli, ["gen", "--n", "3"]).exit_code == USAGE_ERROR

    def test_run_ps(self, runner: CliRunner, fixtures_dir: Path) -> None:
        """
        PS на экземпляре 2 с эталоном B1.

        :param CliRunner runner: Исполнитель команд.
        :param Path fixtures_dir: Директория эталонных экземпляров.
        """

        result = runner.invoke(
            cli,
            [
                "run",
                "--mechanism",
                "ps",
                "-i",
                str(fixtures_dir / "instance2.json"),
                "-b",
                str(fixtures_dir / "benchmark_b1.json"),
            ],
        )

        assert result.exit_code == 0, result.stderr
        payload = json.loads(result.stdout)
        assert payload["welfare"]["ordinalHappy"] == "9/4"
        assert payload["exhaustTimes"] == ["1/2", "3/4", "1/1"]

    def test_run_csv(self, runner: CliRunner, fixtures_dir: Path) -> None:
        """
        Табличный вывод результата запуска.

        :param CliRunner runner: Исполнитель команд.
        :param Path fixtures_dir: Директория эталонных экземпляров.
        """

        result = runner.invoke(
            cli, ["run", "--mechanism", "rsd-exact", "-i", str(fixtures_dir / "instance1.json"), "-f", "csv"]
        )

        lines = result.stdout.splitlines()
        assert result.exit_code == 0
        assert lines[0] == "section,name,agent,item,value,decimal,stderr"
        assert any(line.startswith("welfare,linearUtility,,,17/6,2.83") for line in lines)

    def test_run_reproducible(self, runner: CliRunner) -> None:
        """
        Повторный запуск Монте-Карло с тем же зерном даёт идентичный вывод.

        :param CliRunner runner: Исполнитель команд.
        """

        arguments = ["run", "--mechanism", "rsd-mc", "-g", "random", "--n", "6", "-b", "random", "-s", "300"]
        first = runner.invoke(cli, arguments + ["--seed", "5"])
        second = runner.invoke(cli, arguments + ["--seed", "5"])

        assert first.exit_code == 0, first.stderr
        assert first.stdout == second.stdout
        assert json.loads(first.stdout)["seed"] == 5

    def test_run_incompatible(self, runner: CliRunner, fixtures_dir: Path) -> None:
        """
        Неприменимый механизм завершает команду с кодом 2.

        :param CliRunner runner: Исполнитель команд.
        :param Path fixtures_dir: Директория эталонных экземпляров.
        """

        result = runner.invoke(
            cli, ["run", "--mechanism", "rsd-partial", "-i", str(fixtures_dir / "instance1.json")]
        )

        assert result.exit_code == USAGE_ERROR

    def test_run_two_sources(self, runner: CliRunner, fixtures_dir: Path) -> None:
        """
        Экземпляр нельзя задать одновременно файлом и генератором.

        :param CliRunner runner: Исполнитель команд.
        :param Path fixtures_dir: Директория эталонных экземпляров.
        """

        result = runner.invoke(
            cli, ["run", "--mechanism", "ps", "-i", str(fixtures_dir / "instance1.json"), "-g", "identical", "--n", "3"]
        )

        assert result.exit_code == USAGE_ERROR

    def test_verify(self, runner: CliRunner, fixtures_dir: Path) -> None:
        """
        Проверка утверждений на эталонных экземплярах.

        :param CliRunner runner: Исполнитель команд.
        :param Path fixtures_dir: Директория эталонных экземпляров.
        """

        result = runner.invoke(cli, ["verify", "--only", "appendix-a", "--fixtures", str(fixtures_dir)])

        assert result.exit_code == 0, result.stdout
        assert all(item["passed"] for item in json.loads(result.stdout))

    def test_verify_failure(self, runner: CliRunner, fixtures_dir: Path, tmp_path: Path) -> None:
        """
        Испорченный экземпляр приводит к коду завершения 1.

        :param CliRunner runner: Исполнитель команд.
        :param Path fixtures_dir: Директория эталонных экземпляров.
        :param Path tmp_path: Временная директория.
        """

        for path in fixtures_dir.iterdir():
            shutil.copy(path, tmp_path / path.name)
        payload = json.loads((tmp_path / "instance1.json").read_text(encoding="utf-8"))
        payload["preferences"][0] = [3, 2, 1, 0]
        (tmp_path / "instance1.json").write_text(json.dumps(payload), encoding="utf-8")

        result = runner.invoke(cli, ["verify", "--only", "appendix-a", "--fixtures", str(tmp_path), "-f", "csv"])

        assert result.exit_code == VERIFICATION_FAILURE
        assert result.stdout.startswith("tag,claim,expected,actual,tolerance,passed")

    def test_sweep(self, runner: CliRunner, tmp_path: Path) -> None:
        """
        Параметрический прогон в CSV и в книгу Excel.

        :param CliRunner runner: Исполнитель команд.
        :param Path tmp_path: Временная директория.
        """

        result = runner.invoke(cli, ["sweep", "-g", "kdemand", "--grid", "8,16", "--K", "4", "-s", "20"])

        assert result.exit_code == 0, result.stderr
        lines = result.stdout.splitlines()
        assert lines[0].startswith("family,n,mechanism")
        assert len(lines) == 3

        path = tmp_path / "sweep.xlsx"
        result = runner.invoke(cli, ["sweep", "-g", "kdemand", "--grid", "8", "--K", "4", "-s", "5", "-o", str(path)])
        assert result.exit_code == 0
        assert path.exists()

    @pytest.mark.parametrize("grid", ["a,b", "0"])
    def test_sweep_invalid_grid(self, runner: CliRunner, grid: str) -> None:
        """
        Некорректная сетка завершает команду с кодом 2.

        :param CliRunner runner: Исполнитель команд.
        :param grid: Сетка.
        """

        result = runner.invoke(cli, ["sweep", "-g", "identical", "--grid", grid])

        assert result.exit_code == USAGE_ERROR

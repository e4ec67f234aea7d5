"""
Запуск приложения.
"""
from typing import Any, Callable, Optional

import click
from pydantic import ValidationError

from core.errors import MatchWelfareError
from experiments.config import ExperimentConfig, MechanismEnum
from experiments.runner import run_experiment
from experiments.sweep import sweep
from formatters.base import FormatEnum, OutputFormatter
from formatters.models import InstanceModel
from instances.generators import generate
from instances.models import FamilyEnum, GeneratorSpec
from logger import get_logger
from renderer import Renderer
from settings import FIXTURES_PATH, MONTE_CARLO_SAMPLES, OUTPUT_FILE_PATH, RANDOM_SEED
from verification.claims import CLAIM_TAGS, run_claims

logger = get_logger(__name__)

# код завершения при ошибке параметров или входных данных
USAGE_ERROR = 2
# код завершения при невыполненном утверждении
VERIFICATION_FAILURE = 1


class MatchWelfareGroup(click.Group):
    """
    Группа команд: ошибки входных данных завершают процесс с кодом 2.
    """

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except (MatchWelfareError, ValidationError) as ex:
            logger.error("При обработке команды возникла ошибка: %s", ex)
            click.echo(f"Ошибка: {ex}", err=True)
            ctx.exit(USAGE_ERROR)


def parse_grid(_: click.Context, __: click.Parameter, value: str) -> list[int]:
    """
    Разбор сетки значений n, записанной через запятую.
    """

    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError as ex:
        raise click.BadParameter(f"ожидаются целые числа через запятую, получено {value!r}") from ex


def generator_options(command: Callable) -> Callable:
    """
    Общие параметры генератора экземпляров.
    """

    options = [
        click.option(
            "--generator",
            "-g",
            "family",
            type=click.Choice([item.value for item in FamilyEnum]),
            default=None,
            help="Семейство экземпляров",
        ),
        click.option("--n", "n", type=int, default=None, help="Количество агентов"),
        click.option("--t", "t", type=int, default=None, help="Количество блоков (ps-hard)"),
        click.option("--K", "demand", type=int, default=None, help="Размер набора (kdemand, random-bundles)"),
        click.option("--m", "m", type=int, default=None, help="Количество предметов (random-partial)"),
        click.option("--degree", "degree", type=int, default=None, help="Длина списков (random-partial)"),
        click.option("--extra", "extra", type=int, default=0, show_default=True, help="Лишние наборы"),
        click.option("--seed", "seed", type=int, default=RANDOM_SEED, show_default=True, help="Зерно"),
    ]
    for option in reversed(options):
        command = option(command)

    return command


def output_options(default_format: FormatEnum) -> Callable:
    """
    Общие параметры вывода.
    """

    def decorate(command: Callable) -> Callable:
        command = click.option(
            "--out",
            "-o",
            "out",
            type=str,
            default=OUTPUT_FILE_PATH,
            show_default=True,
            help="Путь к выходному файлу (- — стандартный вывод)",
        )(command)
        return click.option(
            "--format",
            "-f",
            "output_format",
            type=click.Choice([item.value for item in FormatEnum]),
            default=default_format.value,
            show_default=True,
            help="Формат вывода",
        )(command)

    return decorate


def build_spec(family: Optional[str], **fields: Any) -> Optional[GeneratorSpec]:
    if family is None:
        return None
    return GeneratorSpec(family=family, K=fields.pop("demand"), **fields)


def emit(data: Any, output_format: str, out: str) -> None:
    """
    Оформление результата и запись в выходной файл.
    """

    style = OutputFormatter(output_format).format(data)
    Renderer(str(style), style.rows()).render(out)


@click.group(cls=MatchWelfareGroup)
def cli() -> None:
    """
    Благосостояние механизмов одностороннего распределения: генерация экземпляров,
    запуск механизмов, проверка утверждений и параметрические прогоны.
    """


@cli.command()
@generator_options
@click.option("--out", "-o", "out", type=str, default=OUTPUT_FILE_PATH, show_default=True, help="Путь к файлу")
def gen(family: Optional[str], out: str, **fields: Any) -> None:
    """
    Генерация экземпляра в JSON.
    """

    logger.info("Генерация экземпляра семейства %s с параметрами %s", family, fields)
    spec = build_spec(family, **fields)
    if spec is None:
        raise click.UsageError("Укажите семейство экземпляров (--generator)")

    model = InstanceModel.from_instance(generate(spec))
    Renderer(model.json(exclude_none=True, indent=2) + "\n").render(out)

    logger.info("Команда успешно завершена.")


@cli.command()
@click.option(
    "--mechanism",
    "mechanism",
    type=click.Choice([item.value for item in MechanismEnum]),
    required=True,
    help="Механизм",
)
@click.option("--instance", "-i", "instance_path", type=str, default=None, help="Путь к файлу экземпляра")
@generator_options
@click.option("--benchmark", "-b", "benchmark", type=str, default=None, help="Путь к файлу эталона или random")
@click.option("--samples", "-s", "samples", type=int, default=MONTE_CARLO_SAMPLES, show_default=True, help="Выборки")
@click.option("--lottery", "lottery", is_flag=True, default=False, help="Разложить матрицу в лотерею")
@output_options(FormatEnum.JSON)
def run(
    mechanism: str,
    instance_path: Optional[str],
    family: Optional[str],
    benchmark: Optional[str],
    samples: int,
    lottery: bool,
    output_format: str,
    out: str,
    **fields: Any,
) -> None:
    """
    Запуск механизма и отчёт о благосостоянии.
    """

    logger.info(
        """Обработка команды run с параметрами:
        - Механизм: %s.
        - Экземпляр: %s.
        - Эталон: %s.
        - Выборки: %s, зерно: %s.""",
        mechanism,
        instance_path or family,
        benchmark,
        samples,
        fields["seed"],
    )

    config = ExperimentConfig(
        mechanism=mechanism,
        instance_path=instance_path,
        generator=build_spec(family, **fields),
        benchmark=benchmark,
        samples=samples,
        seed=fields["seed"],
        output_format=output_format,
        out=out,
        lottery=lottery,
    )
    emit(run_experiment(config), config.output_format, config.out)

    logger.info("Команда успешно завершена.")


@cli.command()
@click.option("--only", "only", type=click.Choice(CLAIM_TAGS), default=None, help="Проверить одну группу")
@click.option(
    "--fixtures", "fixtures_path", type=str, default=FIXTURES_PATH, show_default=True, help="Директория экземпляров"
)
@output_options(FormatEnum.JSON)
def verify(only: Optional[str], fixtures_path: str, output_format: str, out: str) -> None:
    """
    Проверка утверждений; код завершения 1, если хотя бы одно не выполнено.
    """

    logger.info("Проверка утверждений %s ...", only or "(все)")
    results = run_claims(only, fixtures_path)
    emit(results, output_format, out)

    failed = [result.tag for result in results if not result.passed]
    if failed:
        logger.error("Не выполнены утверждения: %s", ", ".join(failed))
        click.get_current_context().exit(VERIFICATION_FAILURE)

    logger.info("Команда успешно завершена.")


@cli.command(name="sweep")
@click.option(
    "--generator",
    "-g",
    "family",
    type=click.Choice([item.value for item in FamilyEnum]),
    required=True,
    help="Семейство экземпляров",
)
@click.option("--grid", "grid", type=str, callback=parse_grid, required=True, help="Значения n через запятую")
@click.option("--samples", "-s", "samples", type=int, default=MONTE_CARLO_SAMPLES, show_default=True, help="Выборки")
@click.option("--seed", "seed", type=int, default=RANDOM_SEED, show_default=True, help="Зерно")
@click.option("--t", "t", type=int, default=None, help="Количество блоков (ps-hard)")
@click.option("--K", "demand", type=int, default=None, help="Размер набора (kdemand, random-bundles)")
@output_options(FormatEnum.CSV)
def sweep_command(
    family: str,
    grid: list[int],
    samples: int,
    seed: int,
    t: Optional[int],
    demand: Optional[int],
    output_format: str,
    out: str,
) -> None:
    """
    Параметрический прогон по сетке n (таблица CSV, JSON или книга Excel при пути .xlsx).
    """

    logger.info("Прогон семейства %s по сетке %s ...", family, grid)
    rows = sweep(FamilyEnum(family), grid, samples, seed, t=t, demand=demand)
    emit(rows, output_format, out)

    logger.info("Команда успешно завершена.")


if __name__ == "__main__":
    try:
        # запуск обработки команды
        cli()
    except Exception as ex:
        logger.error("При обработке команды возникла ошибка: %s", ex)
        raise

"""
Функции для логирования.
"""
import logging
import sys
from pathlib import Path

from settings import LOGGING_FORMAT, LOGGING_LEVEL, LOGGING_PATH


def get_logger(
    module_name: str,
    logging_level: str = LOGGING_LEVEL,
    logging_format: str = LOGGING_FORMAT,
    logging_path: str = LOGGING_PATH,
) -> logging.Logger:
    """
    Настройка логгера модуля: запись в файл ``<logging_path>/<module_name>.log``
    и в стандартный поток ошибок (стандартный вывод занят результатами команд).

    :param module_name: Наименование модуля
    :param logging_level: Уровень логирования
    :param logging_format: Формат логов
    :param logging_path: Директория файлов логов
    :return: Настроенный логгер модуля.
    """

    logger = logging.getLogger(module_name)
    logger.setLevel(logging_level)
    if logger.handlers:
        return logger

    formatter = logging.Formatter(logging_format)
    directory = Path(logging_path)
    directory.mkdir(parents=True, exist_ok=True)

    handlers: list[logging.Handler] = [
        logging.FileHandler(directory / f"{module_name}.log", encoding="utf-8"),
        logging.StreamHandler(sys.stderr),
    ]
    for handler in handlers:
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    return logger

"""
Настройки проекта.
"""

import os

# путь к директории с эталонными экземплярами (JSON)
FIXTURES_PATH: str = os.getenv("FIXTURES_PATH", "../media/instances")
# путь к выходному файлу ("-" означает стандартный вывод)
OUTPUT_FILE_PATH: str = os.getenv("OUTPUT_FILE_PATH", "-")

# максимальное число агентов для полного перебора порядков прихода
ENUM_GUARD: int = int(os.getenv("MATCHWELFARE_ENUM_GUARD", "10"))
# число выборок Монте-Карло по умолчанию
MONTE_CARLO_SAMPLES: int = int(os.getenv("MONTE_CARLO_SAMPLES", "10000"))
# зерно генератора случайных чисел по умолчанию
RANDOM_SEED: int = int(os.getenv("RANDOM_SEED", "7"))

# максимальное n, для которого оптимальное назначение приводится к лексикографически наименьшему
ASSIGNMENT_TIE_BREAK_LIMIT: int = int(os.getenv("ASSIGNMENT_TIE_BREAK_LIMIT", "12"))
# максимальная сторона плотной матрицы весов для решателя задачи о назначениях
DENSE_ASSIGNMENT_LIMIT: int = int(os.getenv("DENSE_ASSIGNMENT_LIMIT", "5000"))
# точность метода бисекции для аналитических констант
BISECTION_TOLERANCE: float = float(os.getenv("BISECTION_TOLERANCE", "1e-10"))

# путь к директории для логирования
LOGGING_PATH: str = os.getenv("LOGGING_PATH", "../logs")
# формат для записей логов
LOGGING_FORMAT: str = os.getenv("LOGGING_FORMAT", "%(name)s %(asctime)s %(levelname)s %(message)s")
# уровень логирования
LOGGING_LEVEL: str = os.getenv("LOGGING_LEVEL", "INFO")

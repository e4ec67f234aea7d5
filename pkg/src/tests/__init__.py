"""
Автоматические тесты механизмов распределения и консольных команд.
"""

import logging

# записи логов не должны попадать в перехватываемые потоки вывода команд
logging.disable(logging.CRITICAL)

"""
Воспроизводимые случайные потоки для выборок Монте-Карло.

Каждая выборка получает собственный поток, определяемый парой (зерно, номер выборки),
поэтому результат не зависит от порядка вычисления выборок и числа исполнителей.
"""
import numpy as np

# номер потока случайных эталонов, выборки Монте-Карло его не используют
BENCHMARK_STREAM = 2**128 - 1


def sample_stream(seed: int, index: int) -> np.random.Generator:
    """
    Поток случайных чисел выборки с номером ``index``.

    Используется счётчиковый генератор Philox: ключ — зерно эксперимента,
    старшее слово счётчика — номер выборки.

    :param seed: Зерно эксперимента (неотрицательное, меньше 2**128).
    :param index: Номер выборки.
    :return: Генератор случайных чисел.
    """

    if seed < 0 or index < 0:
        raise ValueError("Зерно и номер выборки должны быть неотрицательны")

    return np.random.Generator(np.random.Philox(key=seed, counter=index << 128))


def random_order(seed: int, index: int, n: int) -> np.ndarray:
    """
    Равномерно случайная перестановка агентов (перемешивание Фишера – Йетса).

    :param seed: Зерно эксперимента.
    :param index: Номер выборки.
    :param n: Количество агентов.
    :return: Порядок прихода агентов.
    """

    return sample_stream(seed, index).permutation(n)

"""
Тестирование профилей неполных списков и наборов.
"""
import pytest

from core.errors import InvalidMatchingError, NotPermutationError, ProfileError, WrongLengthError, ZeroAgentsError
from core.models import PreferenceProfile
from extensions.models import BundleAllocation, PartialProfile, validate_bundle_profile, validate_partial_profile


class TestPartialProfile:
    """
    Тестирование профиля неполных списков.
    """

    def test_valid(self) -> None:
        """
        Пустые списки допустимы.
        """

        profile = validate_partial_profile(2, 3, [[2, 0], []])

        assert profile.position_of(0, 0) == 2
        assert profile.position_of(1, 0) is None

    def test_from_complete(self, instance2: PreferenceProfile) -> None:
        """
        Полный профиль является частным случаем неполного.

        :param PreferenceProfile instance2: Фикстура экземпляра 2.
        """

        profile = PartialProfile.from_complete(instance2)

        assert profile.lists == ((0, 1, 2), (0, 2, 1), (1, 0, 2))
        assert profile.m == 3

    @pytest.mark.parametrize(
        "n, lists, error",
        [
            (0, [], ZeroAgentsError),
            (2, [[0]], WrongLengthError),
            (2, [[0], [3]], NotPermutationError),
            (2, [[1, 1], []], NotPermutationError),
        ],
    )
    def test_invalid(self, n: int, lists: list[list[int]], error: type) -> None:
        """
        Некорректные списки отклоняются.

        :param n: Количество агентов.
        :param lists: Списки.
        :param error: Ожидаемое исключение.
        """

        with pytest.raises(error):
            validate_partial_profile(n, 3, lists)


class TestBundleProfile:
    """
    Тестирование профиля наборов.
    """

    def test_normalized(self) -> None:
        """
        Наборы сортируются.
        """

        profile = validate_bundle_profile(1, 4, 2, [[[3, 1], [0, 2]]])

        assert profile.lists == (((1, 3), (0, 2)),)

    def test_wrong_size(self) -> None:
        """
        Размер набора отличается от K.
        """

        with pytest.raises(WrongLengthError) as info:
            validate_bundle_profile(1, 4, 2, [[[0, 1], [2]]])

        assert info.value.entry == 1

    def test_duplicates(self) -> None:
        """
        Повтор набора в списке агента.
        """

        with pytest.raises(NotPermutationError):
            validate_bundle_profile(1, 4, 2, [[[0, 1], [1, 0]]])

    def test_zero_demand(self) -> None:
        """
        K должно быть положительным.
        """

        with pytest.raises(ProfileError):
            validate_bundle_profile(1, 4, 0, [[]])

    def test_allocation_validation(self) -> None:
        """
        Наборы распределения должны быть из списков и не пересекаться.
        """

        profile = validate_bundle_profile(2, 4, 2, [[[0, 1]], [[1, 2], [2, 3]]])

        BundleAllocation({0: 0, 1: 1}).validate_for(profile)
        with pytest.raises(InvalidMatchingError):
            BundleAllocation({0: 0, 1: 0}).validate_for(profile)
        with pytest.raises(InvalidMatchingError):
            BundleAllocation({0: 1}).validate_for(profile)

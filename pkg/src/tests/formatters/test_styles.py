"""
Тестирование стилей вывода.
"""
import json
from fractions import Fraction as F

import pytest

from formatters.base import FormatEnum, OutputFormatter
from formatters.models import ClaimResultModel, SweepRowModel, WelfareReportModel
from formatters.styles.structured import JsonStyle
from formatters.styles.tabular import CsvStyle


class TestStyles:
    """
    Тестирование оформления результатов.
    """

    @pytest.fixture
    def claims(self) -> list[ClaimResultModel]:
        """
        Получение результатов проверки утверждений.

        :return:
        """

        return [
            ClaimResultModel(tag="appendix-a", claim="RSD", expected="7/3", actual="7/3", passed=True),
            ClaimResultModel(tag="constants", claim="PS", expected="0.66", actual="0.5", passed=False),
        ]

    def test_json_model(self) -> None:
        """
        Модель записывается с псевдонимами полей и без пустых значений.
        """

        style = JsonStyle(WelfareReportModel.from_values(3, ordinal_happy=F(7, 3)))
        payload = json.loads(str(style))

        assert payload == {"ordinalHappy": "7/3", "ordinalRatio": pytest.approx(7 / 9)}
        assert style.extension == ".json"

    def test_json_list(self, claims: list[ClaimResultModel]) -> None:
        """
        Список моделей записывается массивом JSON.

        :param claims: Результаты проверки утверждений.
        """

        payload = json.loads(OutputFormatter("json").format(claims).formatted)

        assert [item["passed"] for item in payload] == [True, False]

    def test_csv(self, claims: list[ClaimResultModel]) -> None:
        """
        Заголовок CSV берётся из полей модели.

        :param claims: Результаты проверки утверждений.
        """

        style = OutputFormatter(FormatEnum.CSV).format(claims)
        lines = style.formatted.splitlines()

        assert isinstance(style, CsvStyle)
        assert lines[0] == "tag,claim,expected,actual,tolerance,passed"
        assert lines[1] == "appendix-a,RSD,7/3,7/3,exact,True"
        assert len(lines) == 3

    def test_csv_empty_cells(self) -> None:
        """
        Отсутствующие значения записываются пустыми ячейками.
        """

        row = SweepRowModel(family="identical", n=3, mechanism="ps", welfare="2/1", welfare_decimal=2.0)

        assert CsvStyle([row]).formatted.splitlines()[1] == "identical,3,ps,2/1,2.0,,,,0.0,"

    def test_csv_empty(self) -> None:
        """
        Пустой результат даёт пустой текст.
        """

        assert CsvStyle([]).formatted == ""

    def test_unknown_format(self) -> None:
        """
        Неизвестный формат отклоняется.
        """

        with pytest.raises(ValueError):
            OutputFormatter("xml")

"""
Вывод в формате JSON.
"""
import json

from pydantic import BaseModel

from formatters.styles.base import BaseOutputStyle
from logger import get_logger

logger = get_logger(__name__)


class JsonStyle(BaseOutputStyle):
    """
    Оформление модели (или списка моделей) в JSON с псевдонимами полей.
    """

    @property
    def extension(self) -> str:
        return ".json"

    def substitute(self) -> str:

        logger.info("Оформление результата в JSON ...")

        if isinstance(self.data, BaseModel):
            return self.data.json(by_alias=True, exclude_none=True, indent=2, ensure_ascii=False)

        return json.dumps(
            [item.dict(by_alias=True, exclude_none=True) for item in self.data],
            indent=2,
            ensure_ascii=False,
        )

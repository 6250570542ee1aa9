"""
Run configuration
运行配置：表路径、输出格式、搜索上限、并行度
"""

from pathlib import Path
from typing import Optional
import logging
import os

from pydantic import BaseModel, field_validator

# Load environment variables from .env file
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # python-dotenv not installed, use system environment variables

logger = logging.getLogger(__name__)

PACKAGE_ROOT = Path(__file__).resolve().parent.parent
SHIPPED_TABLE = PACKAGE_ROOT / "data" / "tables" / "dyd.tsv"

TABLE_ENV = "CERTIFIER_TABLE"
ORDER_CAP_ENV = "CERTIFIER_ORDER_CAP"
SEARCH_ORDER_CAP_ENV = "CERTIFIER_SEARCH_ORDER_CAP"
WORKERS_ENV = "CERTIFIER_WORKERS"

OUTPUT_FORMATS = ("text", "structured")


class RunConfig(BaseModel):
    """Settings shared by the CLI, the client and the coordinator"""

    table_path: Path = SHIPPED_TABLE
    output_format: str = "text"
    order_cap: int = 10000
    search_order_cap: int = 128
    workers: int = 1
    digits: int = 2

    @field_validator("output_format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in OUTPUT_FORMATS:
            raise ValueError(f"output format must be one of {OUTPUT_FORMATS}, got {value!r}")
        return value

    @field_validator("order_cap", "search_order_cap", "workers", "digits")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("caps, workers and digits must be positive")
        return value

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        """
        Build a configuration from the environment, then apply explicit overrides

        Args:
            **overrides: field values that win over the environment (None is ignored)

        Returns:
            validated RunConfig
        """
        values = {}
        if os.getenv(TABLE_ENV):
            values["table_path"] = Path(os.environ[TABLE_ENV])
        if os.getenv(ORDER_CAP_ENV):
            values["order_cap"] = int(os.environ[ORDER_CAP_ENV])
        if os.getenv(SEARCH_ORDER_CAP_ENV):
            values["search_order_cap"] = int(os.environ[SEARCH_ORDER_CAP_ENV])
        if os.getenv(WORKERS_ENV):
            values["workers"] = int(os.environ[WORKERS_ENV])
        values.update({k: v for k, v in overrides.items() if v is not None})
        config = cls(**values)
        logger.debug(f"Run configuration: {config}")
        return config



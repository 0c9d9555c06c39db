import os
from typing import Dict, Optional

from dotenv import dotenv_values, load_dotenv

# Load .env if present (project root)
load_dotenv()

# Keys a config file may set; they mirror the verify flags
FILE_KEYS = (
    "from",
    "to",
    "workers",
    "format",
    "out",
    "method",
    "fail_fast",
    "allow_large",
    "timing",
)

FORMATS = ("json", "csv", "table")

# Integer settings whose environment value did not parse; validate() reports them
_UNPARSED: Dict[str, str] = {}


def _env_int(name: str, default: int) -> int:
    """Integer from the environment, or the default when unset or unparsable"""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        _UNPARSED[name] = raw
        return default


class Config:
    """Configuration for the isogeny sum verifier"""

    # Sweep execution
    WORKERS: int = _env_int("ISOSUM_WORKERS", 1)
    NAIVE_CAP: int = _env_int("ISOSUM_NAIVE_CAP", 20000)

    # Residue tables are skipped above this prime
    TABLE_LIMIT: int = _env_int("ISOSUM_TABLE_LIMIT", 5000000)

    # Primes up to this bound get every x in the row-sum spot checks
    EXHAUSTIVE_LIMIT: int = _env_int("ISOSUM_EXHAUSTIVE_LIMIT", 199)

    # Reporting
    OUTPUT_FORMAT: str = os.getenv("ISOSUM_FORMAT", "table")
    LOG_LEVEL: str = os.getenv("ISOSUM_LOG_LEVEL", "WARNING")

    SCHEMA_VERSION: str = "1.0"

    @classmethod
    def worker_count(cls) -> int:
        """Default worker count, re-read so the environment always wins over the class default"""
        raw = os.getenv("ISOSUM_WORKERS")
        if raw is None or not raw.strip():
            return cls.WORKERS
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"ISOSUM_WORKERS must be an integer, got {raw!r}") from None

    @classmethod
    def load_file(cls, path: Optional[str]) -> Dict[str, str]:
        """Read an optional KEY=VALUE config file; unknown keys are rejected"""
        if not path:
            return {}
        if not os.path.exists(path):
            raise ValueError(f"Config file not found: {path}")

        values = {k.lower().replace("-", "_"): v for k, v in dotenv_values(path).items()}
        unknown = sorted(set(values) - {k.replace("-", "_") for k in FILE_KEYS})
        if unknown:
            raise ValueError(f"Unknown config keys in {path}: {', '.join(unknown)}")
        return {k: v for k, v in values.items() if v is not None}

    @classmethod
    def validate(cls):
        """Validate configuration"""
        problems = [f"{name} must be an integer, got {raw!r}" for name, raw in _UNPARSED.items()]

        try:
            if cls.worker_count() < 1:
                problems.append("ISOSUM_WORKERS must be >= 1")
        except ValueError as e:
            problems.append(str(e))

        if cls.NAIVE_CAP < 5:
            problems.append("ISOSUM_NAIVE_CAP must be >= 5")

        if cls.TABLE_LIMIT < 5:
            problems.append("ISOSUM_TABLE_LIMIT must be >= 5")

        if cls.OUTPUT_FORMAT not in FORMATS:
            problems.append(f"ISOSUM_FORMAT must be one of {', '.join(FORMATS)}")

        if problems:
            raise ValueError(f"Invalid configuration: {'; '.join(dict.fromkeys(problems))}")

        return True

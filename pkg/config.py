from typing import Final, List
from dotenv import load_dotenv
import os

# Load environment variables from .env file
load_dotenv()

# Malformed CFD_* values; RunConfig turns them into an input error
ENV_ERRORS: Final[List[str]] = []


def _int_env(name: str, default: int) -> int:
    value = os.getenv(name)
    if value in (None, ''):
        return default
    try:
        return int(value)
    except ValueError:
        ENV_ERRORS.append(f"{name}={value!r} is not an integer")
        return default


# Size Limits
MAX_GENUS: Final = _int_env("CFD_MAX_GENUS", 512)
MAX_UNITS: Final = _int_env("CFD_MAX_UNITS", 4096)
MAX_Q: Final = _int_env("CFD_MAX_Q", 16)
MAX_ORACLE_DIM: Final = _int_env("CFD_MAX_ORACLE_DIM", 64)
MAX_CARLITZ_DEGREE: Final = _int_env("CFD_MAX_CARLITZ_DEGREE", 4096)
MAX_RANK_ENTRIES: Final = 2_000_000     # rows * columns for oracle rank checks

# Logging
LOG_LEVEL: Final = os.getenv("CFD_LOG_LEVEL", "WARNING")

# Verification Settings
DEFAULT_VERIFY_MAX_DEG: Final = 3
VERIFY_MAX_ORACLE_DIM: Final = 36       # oracle suites skip larger towers
VERIFY_MAX_REP_UNITS: Final = 64        # homomorphism suite skips larger unit groups

# Output
DEFAULT_FORMATS: Final = {
    'genus': 'text',
    'count': 'text',
    'basis': 'json',
    'generators': 'json',
    'rep': 'json',
    'gaps': 'csv',
    'verify': 'json',
}
GAP_CONVENTION: Final = 'gap = order + 1'

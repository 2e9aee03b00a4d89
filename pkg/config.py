"""
Frame Completion Solver - Configuration Management
==================================================
Centralized configuration for the frame completion pipeline.
"""

import logging
import os
import sys
from pathlib import Path

from colorama import Fore, Style, just_fix_windows_console
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_float(name: str, default: float) -> float:
    return float(os.getenv(name, str(default)))


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


def _env_flag(name: str, default: bool = False) -> bool:
    return os.getenv(name, str(default)).lower() == "true"


# =============================================================================
# PATH CONFIGURATION
# =============================================================================

# Base directory of the project
BASE_DIR = Path(__file__).parent.absolute()

TEMPLATES_DIR = BASE_DIR / "templates"

# =============================================================================
# SOLVER CONFIGURATION
# =============================================================================

# Assert the M - k constraints the optimizer does not impose at level k
CHECK_TRAILING_CONSTRAINTS = _env_flag("CHECK_TRAILING_CONSTRAINTS")

COMPLETION_MODES = ["fast", "naive", "both"]
DEFAULT_COMPLETION_MODE = os.getenv("COMPLETION_MODE", "both")

# =============================================================================
# SYNTHESIS CONFIGURATION
# =============================================================================

FRAME_TOL = _env_float("FRAME_TOL", 1e-8)
NORM_REL_TOL = _env_float("NORM_REL_TOL", 1e-9)
INPUT_SPECTRUM_TOL = _env_float("INPUT_SPECTRUM_TOL", 1e-6)

# Random directions tried inside an eigenspace before a step fails
SYNTHESIS_MAX_RETRIES = _env_int("SYNTHESIS_MAX_RETRIES", 8)
DEFAULT_SEED = _env_int("DEFAULT_SEED", 0)

# =============================================================================
# CLI CONFIGURATION
# =============================================================================

EXIT_CODES = {
    "ok": 0,
    "infeasible": 1,
    "input_error": 2,
    "path_disagreement": 3,
    "verification_failed": 4,
}

REPORT_TEMPLATES = {
    "check": "feasibility_report.json",
    "complete": "completion_report.json",
    "eigensteps": "eigensteps_report.json",
    "synthesize": "synthesis_report.json",
    "verify": "verification_report.json",
}

# =============================================================================
# LOGGING CONFIGURATION
# =============================================================================

DEBUG = _env_flag("DEBUG")

LEVEL_COLORS = {
    "DEBUG": Fore.CYAN,
    "INFO": Fore.BLUE,
    "WARNING": Fore.YELLOW,
    "ERROR": Fore.RED,
    "CRITICAL": Fore.RED + Style.BRIGHT,
}


class ColorFormatter(logging.Formatter):
    """Prefix each record with its level name in color."""

    def format(self, record: logging.LogRecord) -> str:
        color = LEVEL_COLORS.get(record.levelname, "")
        message = super().format(record)
        return f"{color}{record.levelname:<7}{Style.RESET_ALL} {message}"


def setup_logging(debug: bool = DEBUG) -> None:
    """Install one colored handler on the root logger, bound to the current stderr."""
    just_fix_windows_console()
    root = logging.getLogger()
    for old in [h for h in root.handlers if getattr(h, "_frame_completion", False)]:
        root.removeHandler(old)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(ColorFormatter("%(name)s: %(message)s"))
    handler._frame_completion = True
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if debug else logging.WARNING)


# =============================================================================
# PROBLEM SCHEMA
# =============================================================================

RATIONAL_STRING = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}

PROBLEM_INPUT_SCHEMA = {
    "type": "object",
    "required": ["alpha", "mu"],
    "properties": {
        "alpha": {"type": "array", "minItems": 1, "items": RATIONAL_STRING},
        "mu": {"type": "array", "items": RATIONAL_STRING},
        "lambda": {"type": "array", "items": RATIONAL_STRING},
        "matrix": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}},
        },
    },
}

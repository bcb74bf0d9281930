# Loads env variables from .env file
from dotenv import load_dotenv
import os

load_dotenv()


def _int_setting(name: str, default: int) -> int:
    raw = os.getenv(name, str(default))
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer in .env file.")


def _float_setting(name: str, default: float) -> float:
    raw = os.getenv(name, str(default))
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{name} must be a number in .env file.")


# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_DIR = os.getenv("LOG_DIR", "logs")
if not LOG_DIR:
    raise ValueError("LOG_DIR not found in .env file.")

# Painleve analysis
JMAX = _int_setting("JMAX", 64)
LAURENT_DEPTH = _int_setting("LAURENT_DEPTH", 8)
P_SEARCH_BOUND = _int_setting("P_SEARCH_BOUND", 4)

# Residual verification
SAMPLES = _int_setting("SAMPLES", 20)
SEED = _int_setting("SEED", 0)
TOL = _float_setting("TOL", 1e-8)
POLE_EPS = _float_setting("POLE_EPS", 1e-8)
NEWTON_STARTS = _int_setting("NEWTON_STARTS", 8)

# Special functions
WP_SERIES_DEGREE = _int_setting("WP_SERIES_DEGREE", 30)
DEGENERACY_TOL = _float_setting("DEGENERACY_TOL", 1e-12)

# Growth estimation
RMIN = _float_setting("RMIN", 2.0)
RMAX = _float_setting("RMAX", 16.0)
STEPS = _int_setting("STEPS", 8)
QUAD_POINTS = _int_setting("QUAD_POINTS", 512)

if JMAX < 0:
    raise ValueError("JMAX must be nonnegative in .env file.")
if SAMPLES < 1:
    raise ValueError("SAMPLES must be positive in .env file.")
if QUAD_POINTS < 16:
    raise ValueError("QUAD_POINTS must be at least 16 in .env file.")

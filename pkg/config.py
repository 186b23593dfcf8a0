# Iseki Kernel Configuration
# Edit these values to change the defaults; environment variables (or a .env
# file) override them, command-line flags override both.

import os

from dotenv import load_dotenv

load_dotenv()

# Series truncation
TAIL_EPS = 1e-18  # Stop summing once the term bound drops below this
MAX_TERMS = 10_000  # Hard ceiling; reaching it raises ConvergenceError

# Sampling
DEFAULT_SEED = 42
DEFAULT_COUNT = 200  # Draws per random family; matrix sweeps use count // 10 per matrix
MATRIX_C_MAX = 10  # theta1 / eta matrix sweep: 1 <= c <= MATRIX_C_MAX
MATRIX_A_MAX = 10  # ... and |a| <= MATRIX_A_MAX
CHARACTER_C_MAX = 50  # Exhaustive eta-character consistency sweep
RECIPROCITY_K_MAX = 300  # Exhaustive Dedekind reciprocity sweep
SAWTOOTH_K_MAX = 30  # Exhaustive sawtooth-sum sweep
QUASIPERIOD_M_MAX = 8
EQ29_C_MAX = 8
FOURIER_M = 100_000  # Partial-sum length for the Fourier building blocks

# Numerical guards
LAMBDA_GUARD = 1e-6  # Reject Lambda draws with a log argument modulus above 1 - LAMBDA_GUARD
THETA_ZERO_GUARD = 1e-8  # Skip theta1 transform samples with |theta1(z, tau)| at or below this
ISEKI_MAX_W_SPREAD = 25.0  # Skip Iseki draws with max(|w|, 1/|w|) above this
OVERFLOW_LOG_LIMIT = 700.0  # Largest exponent accepted before e^x overflows a double

# Tolerances per check family
TOLERANCES = {
    "iseki": 1e-9,
    "iseki-complex": 1e-9,
    "lambda-fourier": 1e-12,
    "theta1": 1e-9,
    "eq17": 1e-9,
    "eta": 1e-10,
    "frame": 1e-12,
    "oracle": 1e-12,
    "zeros": 1e-10,
    "translate": 1e-12,
    "eta-factor": 1e-12,
    "quasiperiod": 1e-9,
    "eq29": 1e-9,
    "partial-fraction": 1e-3,  # at M = FOURIER_M, scaled as 1/M
    "fourier-slope": 0.15,  # allowed |r(2M)/r(M) - 1/2|
    # exact checks report residual 0 or 1
    "characters": 0.0,
    "reciprocity": 0.0,
    "sawtooth": 0.0,
}

# Output
DEFAULT_FORMAT = "json"
LOG_LEVEL = "WARNING"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _env_float(name: str, default: float) -> float:
    """Read a float override from the environment"""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{name} must be a number, got {raw!r}")


def _env_int(name: str, default: int) -> int:
    """Read an integer override from the environment"""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


def tail_eps() -> float:
    return _env_float("IK_TAIL_EPS", TAIL_EPS)


def max_terms() -> int:
    return _env_int("IK_MAX_TERMS", MAX_TERMS)


def seed() -> int:
    return _env_int("IK_SEED", DEFAULT_SEED)


def count() -> int:
    return _env_int("IK_COUNT", DEFAULT_COUNT)


def log_level() -> str:
    return os.getenv("IK_LOG_LEVEL", LOG_LEVEL).upper()

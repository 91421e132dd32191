import os
from pathlib import Path

# Define paths
script_dir = Path(__file__).resolve().parent
base_path = script_dir.parent
template_dir = base_path / "templates"
log_dir = base_path / "logs"
default_log_file = log_dir / "blowup_verify.log"

# Environment variable that overrides the enumeration cache directory
CACHE_DIR_ENV = "BLOWUP_CACHE_DIR"

# Report schema version, bump when the JSON layout changes
SCHEMA_VERSION = "1.0"

# Fixed seeds used when the caller does not give any
DEFAULT_SEEDS = (11, 23, 37, 41, 53)

# Sampling of equivariant parameters
PRNG_NAME = "numpy PCG64"
SAMPLE_LOW = 2
SAMPLE_HIGH = 97
MAX_RESEED_ATTEMPTS = 20

# Conventions written into every report
CONVENTIONS = {
    "box": "1-based (row, column); arm = lambda_i - j, leg = lambda^t_j - i",
    "grading": "zhat exponent 2r*sum(|Y|+|Z|) + sum_{i<j}(k_i-k_j)^2, vdim = 2rn + k(r-k)",
    "theta": "theta(x) = (x - y)/(x - 1) = (1 - y/x)/(1 - 1/x)",
    "limit_order": "e_1 -> 0 first, then e_2, ..., e_r",
    "y_sign": "y^{sum_{i<j}(k_i-k_j)/2} as stated; the reversed sign is also reported",
    "order": "order N means every q-exponent <= N is checked",
    "prng": PRNG_NAME,
}

# Default sizes for the verify-all suite: (rank, k, order)
DEFAULT_SUITE = [
    (1, 0, 16),
    (2, 0, 16),
    (2, 1, 17),
    (3, 0, 12),
    (3, 1, 12),
    (3, 2, 12),
]
DEFAULT_RANK1_ORDER = 8
DEFAULT_RANK1_SEEDS = 3


def get_cache_dir(cli_value=None):
    """Resolve the cache directory: CLI flag first, then the environment."""
    if cli_value:
        return Path(cli_value)
    env_value = os.environ.get(CACHE_DIR_ENV)
    if env_value:
        return Path(env_value)
    return None

"""
Runtime Configuration

Limits and defaults for the counting engine, read once from the environment
(with `.env` support). Every exhaustive enumeration in the package checks one
of these caps before it starts instead of silently truncating.
"""

import os
from dotenv import load_dotenv

load_dotenv()


def _int_env(name: str, default: int) -> int:
    value = os.getenv(name)
    return int(value) if value not in (None, "") else default


# ============================================================================
# Reproducibility
# ============================================================================

DEFAULT_SEED = _int_env("SUBCOUNT_DEFAULT_SEED", 1729)
DEFAULT_WORKERS = _int_env("SUBCOUNT_WORKERS", 1)

# Trials per independently seeded substream of the union estimator
TRIAL_CHUNK = _int_env("SUBCOUNT_TRIAL_CHUNK", 4096)

# ============================================================================
# Exhaustive-enumeration caps
# ============================================================================

# brute-force subset counting: C(n, k) subsets, n ≤ 20 with k ≤ 6
BRUTE_MAX_N = _int_env("SUBCOUNT_BRUTE_MAX_N", 20)
BRUTE_MAX_K = _int_env("SUBCOUNT_BRUTE_MAX_K", 6)

# 2^(k choose 2) labelled graphs: 32768 at k=6
PATTERN_ENUM_MAX_K = _int_env("SUBCOUNT_PATTERN_ENUM_MAX_K", 6)
DIRECT_ODD_CYCLE_MAX_K = _int_env("SUBCOUNT_DIRECT_ODD_CYCLE_MAX_K", 9)
MONOTONE_CHECK_MAX_K = _int_env("SUBCOUNT_MONOTONE_CHECK_MAX_K", 6)

# subset DP over 2^k vertex sets
TREEWIDTH_MAX_K = _int_env("SUBCOUNT_TREEWIDTH_MAX_K", 12)
# minimum-width elimination orders compared when breaking decomposition ties (5! = 120)
TREEWIDTH_TIE_ORDERS = _int_env("SUBCOUNT_TREEWIDTH_TIE_ORDERS", 120)

# exact-greedy hash families enumerate all C(n, k) subsets
HASH_EXACT_SUBSET_CAP = _int_env("SUBCOUNT_HASH_EXACT_SUBSET_CAP", 250000)

# partition lattice: B_8 = 4140 partitions; meet matrices B_6 = 203 square
LATTICE_MAX_K = _int_env("SUBCOUNT_LATTICE_MAX_K", 8)
MEET_MATRIX_MAX_K = _int_env("SUBCOUNT_MEET_MATRIX_MAX_K", 6)
REDUCTION_MAX_K = _int_env("SUBCOUNT_REDUCTION_MAX_K", 6)

# ============================================================================
# Sampling
# ============================================================================

# Witness lists up to this size are materialized for O(1) uniform draws
SAMPLE_CACHE_LIMIT = _int_env("SUBCOUNT_SAMPLE_CACHE_LIMIT", 2048)

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv(dotenv_path=Path(__file__).resolve().parent.parent / ".env")
load_dotenv()

# General
ENV = os.getenv("GRUNDY_ENV", "development")
LOG_LEVEL = os.getenv("GRUNDY_LOG_LEVEL", "INFO").upper()

# Word-width cap for solver entry points (VertexSet = one machine word)
GRUNDY_MAX_VERTICES = int(os.getenv("GRUNDY_MAX_VERTICES", "63"))

# Subset DP (2^n table entries, one byte each)
DP_MAX_VERTICES = int(os.getenv("DP_MAX_VERTICES", "24"))
DP_DEFAULT_MAX_VERTICES = 24
DP_STORE_CHOICES = os.getenv("DP_STORE_CHOICES", "false").lower() == "true"

# Exhaustive oracles
CHROMATIC_ORACLE_MAX_VERTICES = int(os.getenv("CHROMATIC_ORACLE_MAX_VERTICES", "16"))
ASSIGNMENT_ORACLE_MAX_VERTICES = int(os.getenv("ASSIGNMENT_ORACLE_MAX_VERTICES", "10"))
EXHAUSTIVE_ORACLE_MAX_VERTICES = int(os.getenv("EXHAUSTIVE_ORACLE_MAX_VERTICES", "8"))
ORDERING_ORACLE_MAX_VERTICES = int(os.getenv("ORDERING_ORACLE_MAX_VERTICES", "10"))
NAIVE_ENUM_MAX_VERTICES = int(os.getenv("NAIVE_ENUM_MAX_VERTICES", "12"))

# Witness searches
XP_MAX_WITNESS_SIZE = int(os.getenv("XP_MAX_WITNESS_SIZE", "16"))
XP_MAX_SUBSETS = int(os.getenv("XP_MAX_SUBSETS", "10000000"))
LOCAL_MAX_BALL = int(os.getenv("LOCAL_MAX_BALL", "16"))

# Color coding
COLOR_CODING_MAX_TRIALS = int(os.getenv("COLOR_CODING_MAX_TRIALS", "10000000"))
COLOR_CODING_BATCH = int(os.getenv("COLOR_CODING_BATCH", "4096"))
DEFAULT_EPSILON = float(os.getenv("DEFAULT_EPSILON", "0.01"))
DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", "0"))

# Connected branch-and-bound (budget unit = search-tree nodes)
CONNECTED_DEFAULT_BUDGET = int(os.getenv("CONNECTED_DEFAULT_BUDGET", "100000000"))
CONNECTED_MEMO = os.getenv("CONNECTED_MEMO", "true").lower() == "true"

# Bench harness
BENCH_REPEATS = int(os.getenv("BENCH_REPEATS", "3"))
BENCH_WORKERS = int(os.getenv("BENCH_WORKERS", "1"))

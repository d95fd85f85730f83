"""
Configuration constants for the SIMPLE-RC group network inference library
"""

# ============================================================================
# MODEL VALIDATION
# ============================================================================
ROW_SUM_TOLERANCE = 1e-12      # membership rows must sum to 1 within this
SYMMETRY_TOLERANCE = 1e-12     # kernel / covariance symmetry check
H_BOUND_EPSILON = 0.05         # max h_ij <= 1 - epsilon
DEFAULT_SELF_LOOPS = False

# ============================================================================
# SPECTRAL
# ============================================================================
PAIR_LOG_EXPONENT = 0.5        # threshold q * (log n)^e * loglog n, pair test
GROUP_LOG_EXPONENT = 1.5       # same, group test
RECONSTRUCTION_TOLERANCE = 1e-8
RANK_TOLERANCE = 1e-8          # relative to n * max|h_ij|

# ============================================================================
# COVARIANCE
# ============================================================================
RATIO_GUARD_FACTOR = 1e-8      # eps_ratio = factor * ||v_1||_inf
CONDITION_CAP = 1e12
PINV_RELATIVE_CUTOFF = 1e-10

# ============================================================================
# INFERENCE
# ============================================================================
DEFAULT_ALPHA = 0.05
MIN_GUMBEL_GROUP = 6           # effective group size for Gumbel calibration
COUPLING_STREAM = 0x5C0C       # tag separating coupling from sampling streams
SUBSAMPLE_STREAM = 0x5B5A

# ============================================================================
# RANDOM MATRIX DIAGNOSTICS
# ============================================================================
QVE_TOLERANCE = 1e-12
QVE_MAX_ITERATIONS = 10_000
QVE_MARGIN = 0.05              # |z| > 2 sqrt(frak M) + margin
EIGENGAP_CAP = 1.0             # cap on eps_0 used for the t_k bracket
SPIKE_FACTOR = 1.0             # |d_K0| >= factor * sqrt(n theta log n)

# ============================================================================
# HARNESS
# ============================================================================
DEFAULT_REPS = 500
DEFAULT_WORKERS = 1
ECDF_GRID_POINTS = 512
MODEL_STREAM = 0x3D0E          # degree draws for DCMM presets
CI_LEVEL = 0.95

SIZE_POWER_FILE = "size_power.csv"
ECDF_FILE = "ecdf.csv"
K0_TALLY_FILE = "k0_tally.csv"
MANIFEST_FILE = "run_manifest.json"
RMT_SWEEP_FILE = "rmt_sweep.csv"

# ============================================================================
# CORRELATION NETWORKS
# ============================================================================
DEFAULT_CORRELATION_THRESHOLD = 0.5

# ============================================================================
# OUTPUT FORMAT
# ============================================================================
JSON_INDENT = 2
CSV_FLOAT_FORMAT = "%.10g"

# ============================================================================
# LOGGING
# ============================================================================
LOG_LEVEL = "INFO"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
VERBOSE_OUTPUT = True

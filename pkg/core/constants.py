"""
Constants for sigma-spectra.
Centralizes schema tags, exit codes, search defaults and text layout.
"""


class SchemaInfo:
    """Report schema versioning"""
    SCHEMA = "sigma-spectra/1"
    PROGRAM = "sigma-spectra"


class ExitCodes:
    """Process exit statuses of the command-line surface"""
    SUCCESS = 0
    FAILURE = 1
    REFUTED = 2
    VALIDATION = 3


class SearchDefaults:
    """Budgets and caps used when config does not say otherwise"""
    NODE_BUDGET = 10 ** 8
    EDGE_CAP = 10 ** 6
    WALK_STEP_LIMIT = 64
    MAX_CONCURRENT_SEARCHES = 4


class RandomDefaults:
    """Seeds and trial counts of the randomized suites"""
    SEED = 20240607
    ORACLE_TRIALS = 10_000
    RECOLOUR_TRIALS = 1_000


class ConditionNames:
    """Names reported for failed instance conditions"""
    N_POSITIVE = "n >= 1"
    Q_POSITIVE = "q >= 1"
    R_AT_LEAST_3 = "r >= 3"
    SIGMA_SUMS_TO_R = "sum(sigma) = r"
    TWO_PARTS = "s(sigma) >= 2"
    PARTS_POSITIVE = "parts >= 1"
    NON_EMPTY = "parts non-empty"
    DELTA_MIN_2 = "delta_min(sigma) >= 2"
    VALID_START = "start colouring is NMNR-valid"
    PRIVATE_COLOURS = "colours private to the class"
    DISTINCT_COLOURS = "x != y"


class TextLayout:
    """Separators for text-mode reports"""
    HEADER_SEPARATOR = "=" * 72
    SECTION_SEPARATOR = "-" * 72
    EMPTY_SET = "∅"
    UNION = " ∪ "

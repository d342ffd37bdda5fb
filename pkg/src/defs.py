"""
Common definitions.
"""


# ---------------
# Guard definitions
# ---------------

MAX_ENUMERATION_PARTIES = 12  # B(12) = 4,213,597
MAX_PROFILE_PARTIES = 5
MAX_TOTAL_DIM = 64


# ---------------
# Tolerance definitions
# ---------------

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
NORM_TOL = 1e-12
PSD_TOL = 1e-10
WEIGHT_TOL = 1e-12

PPT_TOL = 1e-9
FACTORIZATION_TOL = 1e-8
WITNESS_TOL = 1e-9
SCHMIDT_TOL = 1e-9
UNITARY_TOL = 1e-9


# ---------------
# Partition definitions
# ---------------

BLOCK_SEP = '|'
MEMBER_SEP = ','


# ---------------
# Gate definitions
# ---------------

GATE_LOCAL = 'local'
GATE_ENTANGLING = 'entangling'
GATE_PRODUCT = 'product'
GATE_EXPLICIT = 'explicit'

GATE_KIND_SET = {GATE_LOCAL, GATE_ENTANGLING, GATE_PRODUCT, GATE_EXPLICIT}


# ---------------
# State family definitions
# ---------------

FAMILY_GHZ = 'ghz'
FAMILY_W = 'w'
FAMILY_BELL = 'bell'
FAMILY_PRODUCT = 'product'
FAMILY_MIXTURE = 'mixture'
FAMILY_GHZ_DIAGONAL = 'ghz_diagonal'
FAMILY_WERNER = 'werner'

FAMILY_SET = {FAMILY_GHZ, FAMILY_W, FAMILY_BELL, FAMILY_PRODUCT, FAMILY_MIXTURE, FAMILY_GHZ_DIAGONAL,
              FAMILY_WERNER}


# ---------------
# CLI definitions
# ---------------

TOL_ENV_VAR = 'SEPPOLY_TOL'

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_GUARD = 3

SCHEMA_DIR_NAME = 'docs/schemas'
DOT_RADIUS = 2.0


# ---------------
# Project definitions
# ---------------

PROJECT_ROOT_NAME = "project_root"

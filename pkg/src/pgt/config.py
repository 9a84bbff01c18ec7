"""Size caps shared across modules.

These are plain module-level constants; callers that need different limits
pass explicit ``cap=`` arguments instead of mutating them.
"""

# finite algebra
EXT_DEGREE_CAP = 8
FIELD_ORDER_CAP = 6561
FIELD_AXIOM_CHECK_CAP = 729
SEMIFIELD_CHECK_CAP = 2187

# group models
TABLE_CAP = 20000
PERM_CLOSURE_CAP = 20000
ASSOC_EXHAUSTIVE_CAP = 512
ASSOC_SAMPLES = 10**6
ASSOC_SEED = 7919
BILINEAR_RANK_CAP = 32  # d + m

# analyses
MAXABEL_TABLE_CAP = 2000
MAXABEL_BILINEAR_CAP = 3**7  # p ** (d - dim radical)
ORACLE_ORDER_CAP = 3**6
OPENQ_EXHAUSTIVE_ORDER = 3**6
OPENQ_MAX_TUPLES = 20000
OPENQ_SEED = 2024

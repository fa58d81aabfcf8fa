"""Table reordering toolkit for run-length-encoding friendliness.

Sort relational tables by lexicographic, reflected or modular mixed-radix
Gray-code, or compact-Hilbert order under arbitrary column permutations;
measure per-column runs and seamless joins; compare against closed-form
expectations for uniformly distributed tables and against an exact
small-instance optimum.
"""

from .metrics import (
    BoundReport,
    RunStats,
    adversarial_table,
    is_discriminating,
    is_recursive_ordering,
    mu_bounds,
    run_count,
    seamless_joins,
)
from .models import (
    ExpectationReport,
    UniformModel,
    check_order_inequality,
    complete_runs,
    expected_joins_lexico,
    expected_joins_reflected,
    expected_runs,
    gray_benefit,
    lambda_reflected,
    p_dd,
    p_ud,
    rho,
)
from .oracle import (
    BudgetError,
    OracleResult,
    best_column_order,
    brute_force_min_runs,
    exhaustive_min_runs,
    generate_uniform,
    mu_sweep,
)
from .orders import (
    FAMILIES,
    RECURSIVE_FAMILIES,
    OrderSpec,
    cmp_lexicographic,
    cmp_modular_gray,
    cmp_reflected_gray,
    hilbert_key,
    modular_gray_rank,
    reflected_gray_rank,
    sort_table,
)
from .table import (
    ColumnProfile,
    EncodedTable,
    Permutation,
    RawTable,
    encode,
    load_delimited,
    permute_columns,
    profile,
    shuffle_rows,
)

__version__ = "0.1.0"

"""Dedekind sums, Dedekind symbols on double cosets, Kloosterman sums and
equidistribution statistics, with exact rational arithmetic throughout."""
from .cosets import (
    CountReport,
    complete_matrix,
    coset_count_at,
    coset_counts,
    enumerate_cosets,
    pi_count,
    zeta_partial,
)
from .dedekind import (
    MultiplierSystem,
    dedekind_sum_fast,
    dedekind_sum_naive,
    dedekind_symbol,
    multiplier,
    phi_cocycle,
    psi_cocycle,
    random_group_word,
    sawtooth,
    symbol_of_matrix,
    word_matrix,
)
from .equidist import (
    DiscrepancyReport,
    SampleStream,
    WeylReport,
    erdos_turan_bound,
    histogram,
    sample_stream,
    star_discrepancy,
    weyl_sum,
)
from .errors import (
    DedekindLabError,
    EmptyStream,
    InfinityCoset,
    IntegralityViolation,
    NotCoprime,
    NotPrime,
    ResourceLimit,
    UnsupportedGroup,
)
from .exact_arith import Rational, batch_mod_inverse, gcd, mod_inverse, totient_sieve
from .groups import SL2Z, DoubleCoset, GroupSpec, UnimodularMatrix
from .kloosterman import (
    KloostermanValue,
    kloosterman_classical,
    kloosterman_partial_sum,
    kloosterman_table,
    kloosterman_twisted,
    kloosterman_values,
    vardi_check,
    vardi_lhs,
    vardi_scan,
    weil_ratio,
)

__version__ = "0.1.0"

"""orddens: exact densities of primes by order divisibility.

For a finitely generated group G inside a number field K, compute the
natural density of primes p of K for which the multiplicative order of
(G mod p) is divisible by m, is k-free, has prescribed valuations, or is
coprime to k.  Values are exact rationals (or rational multiples of the
universal constants A(k, r)), with independent series and prime-counting
verifiers.
"""

from .arith import (
    FactoredInt,
    Rat,
    divisors,
    euler_phi,
    factorize,
    gcd_supernatural,
    mobius,
    radical,
    smooth_divisors,
    tau,
    valuation,
)
from .density import (
    A_constant,
    CoefficientOracle,
    DensityValue,
    LinearlyDisjoint,
    ScaledConstant,
    SplitCompletely,
    TRIVIAL,
    Trivial,
    apply_frobenius_mode,
    beta_closed,
    beta_series,
    coprime_density,
    gamma_closed,
    gamma_via_rho,
    rho_closed,
    rho_series,
    torsion_reduce,
)
from .empirical import (
    Coprime,
    Degree1Prime,
    Divisible,
    EmpiricalCount,
    KFree,
    KummerSplit,
    ValuationProfile,
    compute_bad_primes,
    count_event,
    count_events,
    degree_one_primes,
    ord_index,
    prime_stream,
    roots_mod_p,
)
from .kummer import (
    BUILTIN_FIELDS,
    DegreeTable,
    FieldSpec,
    GroupSpec,
    bundled_table,
    compute_degree_table_Q,
    empirical_degree_check,
    lift_degree,
    load_degree_table,
    save_degree_table,
    table_for,
    validate_table,
)

__version__ = "0.1.0"

"""Complete-complementary / zero-correlation-zone code sets of prime-power
length: construction from second-order multivariable functions, exact
correlation verification, coset counting, and PMEPR evaluation."""

from .algebra import (
    MultivariableFunction,
    ParameterError,
    Params,
    PhaseSequence,
    digits,
    realize_complex,
    realize_phase,
    theta,
    undigits,
)
from .construct import (
    CodeMatrix,
    CodeSet,
    ConstraintError,
    Partition,
    build_ccc,
    build_cczcz_theorem1,
    build_cczcz_theorem2,
    build_pmepr_reduced,
    build_row,
    build_seed_function,
    strict_theorem1_partitions,
    strict_theorem2_partitions,
)
from .correlation import (
    CorrelationProfile,
    CyclotomicValue,
    accf,
    accf_profile,
    code_accf,
    pccf,
    pccf_profile,
    pccf_profile_fast,
)
from .grm import (
    CosetRep,
    Monomial,
    coset_membership,
    count_coset_reps,
    count_sets_in_coset,
    enumerate_coset_reps,
    generator_matrix,
    grm_dimension,
    grm_min_distance,
)
from .pmepr import OFDMConfig, PmeprReport, column_pmepr_report, pmepr, row_pmepr_report
from .verify import (
    BoundViolationError,
    OptimalityVerdict,
    VerificationReport,
    check_lemma2_pairing,
    classify_optimality,
    measure_zcz,
    min_hamming_distance,
    verify_ccc,
    verify_cczcz,
    verify_gcs,
    verify_golay_zcz,
)

__version__ = "0.1.0"

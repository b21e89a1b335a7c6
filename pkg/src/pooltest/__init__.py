"""Pooled (group) testing toolkit.

Build non-adaptive pool designs, decode noiseless OR-channel outcomes,
analyze why decoders fail (masking, explained tests, posterior ambiguity),
and measure error rates with a deterministic Monte Carlo harness.
"""

from .analysis import (
    ExplainCount,
    ExplainScorer,
    MaskingReport,
    UniformityReport,
    explained_tests,
    good_test_counts,
    masking_report,
    posterior_uniformity_check,
    satisfying_sets,
    set_hamming,
)
from .decode import (
    DecodeResult,
    PipelineResult,
    SubsetParams,
    candidate_family,
    comp_decode,
    dd_decode,
    dd_pad_frontend,
    deletion_pipeline,
    family_size,
    ml_oracle,
    score_estimate,
    subset_decode,
)
from .design import (
    DesignSpec,
    TestDesign,
    bernoulli_design,
    build_design,
    load_design,
    ncc_design,
    save_design,
)
from .errors import (
    CapExceededError,
    DesignFormatError,
    ParameterError,
    RefusalBudgetError,
)
from .harness import (
    ExperimentConfig,
    ExperimentSummary,
    TrialRecord,
    masking_sweep,
    oracle_check,
    run_experiment,
    trial_seed,
    wilson_interval,
    write_masking_csv,
    write_trials_csv,
)
from .metrics import (
    Criterion,
    EvalOutcome,
    THETA_KNEE,
    ThresholdPoint,
    chernoff_lower,
    chernoff_upper,
    chernoff_weak_lower,
    chernoff_weak_upper,
    evaluate,
    log2_binomial,
    r_star,
    rate,
    tests_for_rate,
    threshold_curve,
    write_threshold_csv,
    zeta,
)
from .model import (
    DefectiveSet,
    OutcomeVector,
    PriorSpec,
    generate_outcomes,
    k_from_theta,
    sample_defectives,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "Criterion",
    "DecodeResult",
    "DefectiveSet",
    "DesignFormatError",
    "DesignSpec",
    "EvalOutcome",
    "ExperimentConfig",
    "ExperimentSummary",
    "ExplainCount",
    "ExplainScorer",
    "MaskingReport",
    "OutcomeVector",
    "ParameterError",
    "PipelineResult",
    "PriorSpec",
    "RefusalBudgetError",
    "SubsetParams",
    "THETA_KNEE",
    "TestDesign",
    "ThresholdPoint",
    "TrialRecord",
    "UniformityReport",
    "bernoulli_design",
    "build_design",
    "candidate_family",
    "chernoff_lower",
    "chernoff_upper",
    "chernoff_weak_lower",
    "chernoff_weak_upper",
    "comp_decode",
    "dd_decode",
    "dd_pad_frontend",
    "deletion_pipeline",
    "evaluate",
    "explained_tests",
    "family_size",
    "generate_outcomes",
    "good_test_counts",
    "k_from_theta",
    "load_design",
    "log2_binomial",
    "masking_report",
    "masking_sweep",
    "ml_oracle",
    "ncc_design",
    "oracle_check",
    "posterior_uniformity_check",
    "r_star",
    "rate",
    "run_experiment",
    "sample_defectives",
    "satisfying_sets",
    "save_design",
    "score_estimate",
    "set_hamming",
    "subset_decode",
    "tests_for_rate",
    "threshold_curve",
    "trial_seed",
    "wilson_interval",
    "write_masking_csv",
    "write_threshold_csv",
    "write_trials_csv",
    "zeta",
]

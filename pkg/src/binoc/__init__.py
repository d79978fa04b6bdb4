"""Error probabilities for binary optical communication over noisy
single-mode and twin-beam entangled Gaussian channels."""

from .channel import (
    ChannelBudget,
    NoiseParams,
    SingleModeState,
    TwoModeGaussianState,
    delta_lambda_sq,
    erf,
    evolve_single_mode,
    evolve_two_mode,
)
from .compare import (
    ComparisonParams,
    CrossoverReport,
    Regime,
    a_e,
    asymptotic_floor,
    b_e,
    c_e,
    find_crossovers,
    helstrom_pe,
    receiver_regime_table,
)
from .entangled import (
    HeterodyneVariance,
    SeparabilityReport,
    beta_opt_full,
    beta_opt_ideal,
    heterodyne_variance_sq,
    qe_ideal,
    re_ideal,
    re_noisy,
    separability,
    survival_fraction,
    survival_fraction_printed,
    survival_gamma_t,
)
from .single_mode import (
    DEFAULT_TRANSMISSIVITY,
    DecisionThreshold,
    DirectReceiverConfig,
    OnOffConditionals,
    he_ideal,
    he_noisy,
    he_with_threshold,
    homodyne_density,
    ke_conditionals,
    ke_ideal,
    ke_noisy,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelBudget",
    "NoiseParams",
    "SingleModeState",
    "TwoModeGaussianState",
    "delta_lambda_sq",
    "erf",
    "evolve_single_mode",
    "evolve_two_mode",
    "ComparisonParams",
    "CrossoverReport",
    "Regime",
    "a_e",
    "asymptotic_floor",
    "b_e",
    "c_e",
    "find_crossovers",
    "helstrom_pe",
    "receiver_regime_table",
    "HeterodyneVariance",
    "SeparabilityReport",
    "beta_opt_full",
    "beta_opt_ideal",
    "heterodyne_variance_sq",
    "qe_ideal",
    "re_ideal",
    "re_noisy",
    "separability",
    "survival_fraction",
    "survival_fraction_printed",
    "survival_gamma_t",
    "DEFAULT_TRANSMISSIVITY",
    "DecisionThreshold",
    "DirectReceiverConfig",
    "OnOffConditionals",
    "he_ideal",
    "he_noisy",
    "he_with_threshold",
    "homodyne_density",
    "ke_conditionals",
    "ke_ideal",
    "ke_noisy",
    "__version__",
]

"""Finite-alphabet toolkit for hockey-stick divergences, contraction
coefficients of Markov kernels, exact (epsilon, delta)-LDP profiles, and
privacy-constrained risk lower bounds."""

from .bounds import (
    BayesConfig,
    BoundReport,
    FanoConfig,
    GridSpec,
    LeCamConfig,
    bayes_egamma_lb,
    bayes_gamma_opt_lb,
    bayes_xu_raginsky_private,
    fano_lb,
    fano_mi_upper,
    highdim_mean_lb,
    ht_exponent,
    lecam_private,
    mi_cap,
    moment_estimation_lb,
    small_ball_uniform01,
)
from .contraction import (
    ContractionReport,
    PrivacyParams,
    eta_f_tensor_upper,
    eta_f_upper_ldp,
    eta_gamma_curve,
    eta_gamma_two_point,
    eta_kl_bsc,
    eta_tv_dobrushin,
    eta_tv_from_eta_gamma,
    phi,
    phi_n,
)
from .dist import (
    Distribution,
    FGenerator,
    egamma,
    egamma_integral_form,
    egamma_threshold_form,
    f_divergence,
    hellinger_sq,
    tv,
)
from .errors import CapacityError, DimensionError, DomainError
from .info import (
    BernoulliUniformModel,
    JointDistribution,
    bu_class_marginal,
    bu_igamma,
    bu_igamma_closed_n1,
    bu_mutual_information,
    egamma_information,
    entropy,
    mutual_information,
)
from .kernel import (
    Kernel,
    bsc,
    k_rr,
    load_kernel,
    parse_kernel,
    product_distribution,
    pushforward,
    randomized_response,
    tensor_power,
)
from .ldp import (
    EpsilonSearchResult,
    EquivalenceReport,
    PrivacyProfile,
    delta_at,
    is_ldp,
    privacy_profile,
    tightest_epsilon,
    verify_equivalence,
)
from .oracle import (
    ProfileCheckReport,
    SearchConfig,
    brute_eta_f,
    brute_profile_check,
    grid_max,
)

__version__ = "0.1.0"

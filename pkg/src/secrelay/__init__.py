"""Secrecy performance of a full-duplex decode-and-forward relay network.

The package turns a physical network description (geometry, powers,
self-interference attenuation, eavesdropper antennas) into log-normal SNR
distributions under composite Nakagami-m/log-normal fading, and evaluates
the average secrecy rate and secrecy outage probability three ways:
fixed-order Gaussian quadrature (the closed forms), adaptive numerical
integration (reference), and seeded Monte-Carlo simulation (oracle).
"""
from .channel import (Endpoints, EveComposite, EveDirect, LinkBudget, LinkSet,
                      SystemConfig, build_links, endpoint_distributions,
                      endpoints_for, link_budget, sanity_preset)
from .config import RunConfig, load_config, parse_config_text
from .errors import AccuracyError, ConfigParseError, ConfigurationError
from .lognormal import (DB_TO_NAT, CompositeLink, Cumulants, LogNormal,
                        cumulants, from_composite, from_cumulants, iid_sum,
                        ratio, scale_db, sum_lognormals)
from .metrics import (MetricResult, avg_secrecy_rate, avg_secrecy_rate_reference,
                      min_snr_cdf, secrecy_outage, secrecy_outage_reference)
from .montecarlo import (McEstimate, mc_avg_secrecy_rate, mc_secrecy_outage,
                         mc_secrecy_outage_multi, sample_composite_snr)
from .numerics import (IntegralEstimate, QuadratureRule, adaptive_integrate,
                       digamma, erfc, gauss_hermite_rule, gauss_laguerre_rule,
                       trigamma)
from .sweep import SweepRow, SweepSpec, preset_run_config, run_sweep
from .validate import CheckResult, run_validation

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "CheckResult", "CompositeLink", "ConfigParseError",
    "ConfigurationError", "Cumulants", "DB_TO_NAT", "Endpoints",
    "EveComposite", "EveDirect", "IntegralEstimate", "LinkBudget", "LinkSet",
    "LogNormal", "McEstimate", "MetricResult", "QuadratureRule", "RunConfig",
    "SweepRow", "SweepSpec", "SystemConfig", "adaptive_integrate",
    "avg_secrecy_rate", "avg_secrecy_rate_reference", "build_links",
    "cumulants", "digamma", "endpoint_distributions", "endpoints_for", "erfc",
    "from_composite", "from_cumulants", "gauss_hermite_rule",
    "gauss_laguerre_rule", "iid_sum", "link_budget", "load_config",
    "mc_avg_secrecy_rate", "mc_secrecy_outage", "mc_secrecy_outage_multi",
    "min_snr_cdf", "parse_config_text", "preset_run_config", "ratio",
    "run_sweep", "run_validation", "sample_composite_snr", "sanity_preset",
    "scale_db", "secrecy_outage", "secrecy_outage_reference",
    "sum_lognormals", "trigamma", "__version__",
]

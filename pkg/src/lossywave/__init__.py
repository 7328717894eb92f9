"""Dissipative pressure-wave toolkit.

Evaluates causal and power-law attenuation-dispersion models, samples
and integrates the corresponding frequency-domain Green functions,
bounds the L2 error of band truncation and of the power-law
approximation, and synthesizes time-domain pulses by inverse FFT.
"""

from .numerics import NumericalError, complex_expm1
from .laws import (
    CausalLaw,
    PowerLaw,
    DispersionLaw,
    MediumPreset,
    derive_powerlaw_coeffs,
    alpha1_from_a1,
    eval_alpha,
    alpha_difference,
    wavenumber,
    phase_speed,
    powerlaw_phase_singularity,
    small_frequency_bound,
    builtin_preset,
    load_preset,
)
from .spectrum import (
    FrequencyGrid,
    ComplexSpectrum,
    NormDomain,
    green_hat,
    sample_green_spectrum,
    truncate_spectrum,
    tail_cut_frequency,
    spectral_l2_norm,
    relative_truncation_error,
    relative_model_error,
    energy_band_edge,
    write_spectrum_csv,
)
from .timedomain import (
    RealSignal,
    ForcingSignal,
    synthesize_time_signal,
    causality_energy_fraction,
    forward_point_source,
    helmholtz_radial_residual,
    apply_dissipation_operator,
    write_signal_csv,
)
from .bounds import (
    EnvelopeBoundConstants,
    EnvelopeCheck,
    ModelErrorReport,
    envelope_bound_constants,
    verify_envelope,
    bound_coefficient,
    bound_decay_rate,
    truncation_error_bound,
    deviation_factor,
    model_error_report,
)

__version__ = "0.1.0"

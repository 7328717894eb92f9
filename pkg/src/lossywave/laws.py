"""Attenuation-dispersion laws for dissipative pressure waves.

Two complex-valued laws alpha*(omega) are implemented:

* ``CausalLaw`` -- a relaxation model with parameters (gamma, c0,
  alpha1, tau0) whose wave front travels at the finite speed c0,
* ``PowerLaw`` -- the empirical frequency power law with coefficients
  (gamma, a1, a2) whose attenuation grows like a1*|omega|**gamma.

The real part of alpha* is the attenuation in Np/cm, the imaginary
part shifts the phase of a propagating wave.  For small |tau0*omega|
the power law with coefficients from ``derive_powerlaw_coeffs``
approximates the causal law.

Unit convention, fixed throughout the package: angular frequency
omega in rad/us (conventionally written "MHz"), length in cm, time in
us, attenuation in Np/cm.  All constants are bare numbers in these
units; no dimensional analysis is performed.

Branch convention for the fractional power:

    (-1j*omega)**p = |omega|**p * exp(-1j * p * (pi/2) * sign(omega)),

the principal branch approached from the lower half-plane, which is
exactly what numpy's complex power evaluates.  With it Re(alpha*) is
even in omega, Im(alpha*) is odd, so sampled Green-function spectra
are Hermitian and synthesized signals are real.  The square root in
the causal law is the principal square root; its argument always has
real part >= 1, so no branch cut is ever crossed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .numerics import NumericalError, bisect_root

__all__ = [
    "CausalLaw",
    "PowerLaw",
    "DispersionLaw",
    "MediumPreset",
    "derive_powerlaw_coeffs",
    "alpha1_from_a1",
    "eval_alpha",
    "alpha_difference",
    "wavenumber",
    "phase_speed",
    "powerlaw_phase_singularity",
    "small_frequency_bound",
    "builtin_preset",
    "load_preset",
]


def _require(condition, message):
    if not condition:
        raise ValueError(message)


def _finite(*values):
    return all(math.isfinite(v) for v in values)


@dataclass(frozen=True)
class CausalLaw:
    """Causal relaxation law alpha*(w) = alpha1*(-i w) / (c0*sqrt(1 + (-i tau0 w)**(gamma-1))).

    gamma in (1, 2]; c0 [cm/us], alpha1 [1/us] and tau0 [us] positive.
    """

    gamma: float
    c0: float
    alpha1: float
    tau0: float

    def __post_init__(self):
        _require(_finite(self.gamma, self.c0, self.alpha1, self.tau0),
                 "causal law parameters must be finite")
        _require(1.0 < self.gamma <= 2.0, f"gamma must lie in (1, 2], got {self.gamma}")
        _require(self.c0 > 0.0, "c0 must be positive")
        _require(self.alpha1 > 0.0, "alpha1 must be positive")
        _require(self.tau0 > 0.0, "tau0 must be positive")

    @property
    def tag(self):
        return "causal"


@dataclass(frozen=True)
class PowerLaw:
    """Frequency power law alpha*(w) = a1*(-i w)**gamma / cos(gamma*pi/2) + a2*(-i w).

    a1 [1/(cm (rad/us)^gamma)] and a2 [1/(cm (rad/us))] are the
    attenuation and dispersion-offset coefficients.  c0 [cm/us] is the
    phase reference of the originating medium: the law itself does not
    depend on it, but the Green-function phase factor and the phase
    speed do.

    gamma = 2 makes cos(gamma*pi/2) = -1 and the law degenerates to
    the thermoviscous quadratic a1*w**2 - i*a2*w, which is evaluated
    directly to avoid sign ambiguity.  a1 = a2 = 0 yields the lossless
    law alpha* = 0, useful as a reference medium.
    """

    gamma: float
    a1: float
    a2: float
    c0: float

    def __post_init__(self):
        _require(_finite(self.gamma, self.a1, self.a2, self.c0),
                 "power law parameters must be finite")
        _require(1.0 < self.gamma <= 2.0, f"gamma must lie in (1, 2], got {self.gamma}")
        _require(self.a1 >= 0.0, "a1 must be non-negative")
        _require(self.a2 >= 0.0, "a2 must be non-negative")
        _require(self.c0 > 0.0, "c0 must be positive")

    @property
    def tag(self):
        return "power-law"


DispersionLaw = Union[CausalLaw, PowerLaw]


def derive_powerlaw_coeffs(causal):
    """Small-frequency power-law coefficients (a1, a2) of a causal law.

    a1 = alpha1 * tau0**(gamma-1) * |cos(gamma*pi/2)| / (2*c0)
    a2 = alpha1 / c0

    Both scale linearly with alpha1.
    """
    g = causal.gamma
    a1 = causal.alpha1 * causal.tau0 ** (g - 1.0) * abs(math.cos(g * math.pi / 2.0)) / (2.0 * causal.c0)
    a2 = causal.alpha1 / causal.c0
    return a1, a2


def alpha1_from_a1(a1, gamma, c0, tau0):
    """Invert the a1 relation of `derive_powerlaw_coeffs` back to alpha1."""
    _require(a1 > 0.0 and c0 > 0.0 and tau0 > 0.0, "a1, c0 and tau0 must be positive")
    _require(1.0 < gamma <= 2.0, f"gamma must lie in (1, 2], got {gamma}")
    return 2.0 * c0 * a1 / (tau0 ** (gamma - 1.0) * abs(math.cos(gamma * math.pi / 2.0)))


@dataclass(frozen=True)
class MediumPreset:
    """Named bundle of a causal law and its derived power law."""

    name: str
    causal: CausalLaw
    powerlaw: PowerLaw

    def __post_init__(self):
        a1, a2 = derive_powerlaw_coeffs(self.causal)
        ok = (
            self.powerlaw.gamma == self.causal.gamma
            and self.powerlaw.c0 == self.causal.c0
            and abs(self.powerlaw.a1 - a1) <= 1e-12 * abs(a1)
            and abs(self.powerlaw.a2 - a2) <= 1e-12 * abs(a2)
        )
        _require(ok, "power-law coefficients are inconsistent with the causal law")

    @classmethod
    def from_causal(cls, name, causal):
        a1, a2 = derive_powerlaw_coeffs(causal)
        return cls(name=name, causal=causal,
                   powerlaw=PowerLaw(gamma=causal.gamma, a1=a1, a2=a2, c0=causal.c0))


_BUILTIN_PRESETS = {
    "castor-oil": dict(gamma=1.66, c0=0.15, alpha1=138.08, tau0=1e-6),
}


def builtin_preset(name):
    """Return a built-in medium preset by name ("castor-oil")."""
    try:
        params = _BUILTIN_PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; built-ins: {sorted(_BUILTIN_PRESETS)}") from None
    return MediumPreset.from_causal(name, CausalLaw(**params))


def load_preset(source):
    """Load a preset from a built-in name or a JSON file.

    The file schema is {"name", "gamma", "c0", "alpha1", "tau0"}; the
    power-law coefficients are always derived on load, never stored.
    """
    if isinstance(source, str) and source in _BUILTIN_PRESETS:
        return builtin_preset(source)
    path = Path(source)
    if not path.exists():
        raise ValueError(f"preset {source!r} is neither a built-in name nor an existing file")
    doc = json.loads(path.read_text(encoding="utf-8"))
    missing = {"name", "gamma", "c0", "alpha1", "tau0"} - set(doc)
    _require(not missing, f"preset file {path} lacks fields {sorted(missing)}")
    causal = CausalLaw(gamma=float(doc["gamma"]), c0=float(doc["c0"]),
                       alpha1=float(doc["alpha1"]), tau0=float(doc["tau0"]))
    return MediumPreset.from_causal(str(doc["name"]), causal)


def eval_alpha(law, omega):
    """Complex attenuation-dispersion value alpha*(omega) in 1/cm.

    Accepts a scalar or a numpy array of finite frequencies in rad/us.
    Re(alpha*) is even in omega and positive away from zero (for
    non-degenerate laws); Im(alpha*) is odd, so
    eval_alpha(law, -w) == conj(eval_alpha(law, w)).
    """
    w = np.asarray(omega, dtype=float)
    if not np.all(np.isfinite(w)):
        raise ValueError("omega must be finite")
    if isinstance(law, CausalLaw):
        root = np.sqrt(1.0 + (-1j * law.tau0 * w) ** (law.gamma - 1.0))
        out = law.alpha1 * (-1j * w) / (law.c0 * root)
    elif isinstance(law, PowerLaw):
        if law.gamma == 2.0:
            out = law.a1 * w**2 - 1j * law.a2 * w
        else:
            out = (law.a1 * (-1j * w) ** law.gamma / math.cos(law.gamma * math.pi / 2.0)
                   + law.a2 * (-1j * w))
    else:
        raise TypeError(f"not a dispersion law: {law!r}")
    return out if out.ndim else complex(out)


# Taylor coefficients of g(u) = 1 - u/2 - (1+u)**-0.5 from u**2 up:
# g(u) = -(3/8)u^2 + (5/16)u^3 - (35/128)u^4 + ...
_DIFF_SERIES = (-3.0 / 8.0, 5.0 / 16.0, -35.0 / 128.0, 63.0 / 256.0,
                -231.0 / 1024.0, 429.0 / 2048.0, -6435.0 / 32768.0)


def _is_derived_pair(causal, powerlaw):
    if not (isinstance(causal, CausalLaw) and isinstance(powerlaw, PowerLaw)):
        return False
    if powerlaw.gamma != causal.gamma or powerlaw.c0 != causal.c0:
        return False
    a1, a2 = derive_powerlaw_coeffs(causal)
    return (abs(powerlaw.a1 - a1) <= 1e-12 * abs(a1)
            and abs(powerlaw.a2 - a2) <= 1e-12 * abs(a2))


def alpha_difference(causal, powerlaw, omega):
    """alpha*_powerlaw(omega) - alpha*_causal(omega), cancellation-free.

    For a power law derived from the causal law the difference has the
    closed form (alpha1/c0)*(-1j*w)*g(u) with u = (-1j*tau0*w)**(gamma-1)
    and g(u) = 1 - u/2 - (1+u)**-0.5; g is evaluated by series for
    small |u|, where the plain difference of the two laws would lose
    most of its digits to cancellation.  Unrelated law pairs fall back
    to the plain difference.
    """
    if not _is_derived_pair(causal, powerlaw):
        return eval_alpha(powerlaw, omega) - eval_alpha(causal, omega)
    w = np.asarray(omega, dtype=float)
    if not np.all(np.isfinite(w)):
        raise ValueError("omega must be finite")
    u = (-1j * causal.tau0 * w) ** (causal.gamma - 1.0)
    small = np.abs(u) <= 0.01
    u_small = np.where(small, u, 0.0)
    series = np.zeros_like(u)
    for coeff in reversed(_DIFF_SERIES):
        series = coeff + u_small * series
    series *= u_small * u_small
    u_big = np.where(small, 1.0, u)  # placeholder avoids sqrt warnings off-branch
    direct = 1.0 - 0.5 * u_big - 1.0 / np.sqrt(1.0 + u_big)
    g = np.where(small, series, direct)
    out = (causal.alpha1 / causal.c0) * (-1j * w) * g
    return out if out.ndim else complex(out)


def wavenumber(law, omega):
    """Effective wavenumber k(omega) = omega/c0 - Im(alpha*(omega)) in rad/cm."""
    w = np.asarray(omega, dtype=float)
    out = w / law.c0 - np.imag(eval_alpha(law, w))
    return out if out.ndim else float(out)


def phase_speed(law, omega):
    """Phase speed c(omega) = omega / k(omega) in cm/us, for omega != 0.

    Raises ValueError when k(omega) vanishes to machine precision: the
    power law's phase speed has a pole there (see
    `powerlaw_phase_singularity`); the causal law's does not.
    """
    w = float(omega)
    _require(w != 0.0 and math.isfinite(w), "omega must be finite and non-zero")
    k = wavenumber(law, w)
    scale = abs(w) / law.c0 + abs(float(np.imag(eval_alpha(law, w))))
    if abs(k) <= 1e-9 * scale:
        raise ValueError(f"phase speed singular near omega={w!r}")
    return w / k


def powerlaw_phase_singularity(medium):
    """Positive frequency where the power-law phase speed diverges.

    Accepts a MediumPreset or a bare PowerLaw.  The root of
    k(w) = w*(1/c0 + a2) - a1*|tan(gamma*pi/2)|*w**gamma is located by
    bisection and verified against the closed form
    ((1/c0 + a2)/(a1*|tan(gamma*pi/2)|))**(1/(gamma-1)) to 1e-9
    relative.  Raises ValueError when no singularity exists
    (gamma = 2, or a vanishing tangent/attenuation coefficient).
    """
    law = medium.powerlaw if isinstance(medium, MediumPreset) else medium
    _require(isinstance(law, PowerLaw), "a power law is required")
    g = law.gamma
    if g == 2.0:
        raise ValueError("no phase-speed singularity: gamma = 2")
    a_tan = law.a1 * abs(math.tan(g * math.pi / 2.0))
    if a_tan == 0.0:
        raise ValueError("no phase-speed singularity: a1*|tan(gamma*pi/2)| vanishes")
    closed_form = ((1.0 / law.c0 + law.a2) / a_tan) ** (1.0 / (g - 1.0))

    def k_of(w):
        return w * (1.0 / law.c0 + law.a2) - a_tan * w**g

    lo, hi = 1.0, 1e10
    while k_of(lo) <= 0.0 and lo > 1e-300:
        lo /= 16.0
    while k_of(hi) >= 0.0 and hi < 1e150:
        hi *= 16.0
    root = bisect_root(k_of, lo, hi, rtol=1e-12)
    if abs(root - closed_form) > 1e-9 * closed_form:
        raise NumericalError(
            f"singularity root {root!r} disagrees with closed form {closed_form!r}")
    return root


def small_frequency_bound(gamma, tau0, threshold=0.1):
    """Largest M with |tau0*omega|**(gamma-1) <= threshold for |omega| <= M.

    M = threshold**(1/(gamma-1)) / tau0.
    """
    _require(gamma > 1.0, f"gamma must exceed 1, got {gamma}")
    _require(tau0 > 0.0, "tau0 must be positive")
    _require(0.0 < threshold < 1.0, "threshold must lie in (0, 1)")
    return threshold ** (1.0 / (gamma - 1.0)) / tau0

"""Time-domain synthesis, causality metrics, and wave-equation residuals.

Fourier convention, fixed package-wide:

    forward   F{g}(w) = (1/sqrt(2*pi)) * integral g(t) * exp(+1j*w*t) dt
    inverse   g(t)    = (1/sqrt(2*pi)) * integral ghat(w) * exp(-1j*w*t) dw

With the +1j*w*t forward kernel a delta at t = r/c0 transforms to
exp(1j*w*r/c0)/sqrt(2*pi), matching the phase factor of the sampled
Green spectrum, and the dissipation operator has the multiplier
alpha*(w)/sqrt(2*pi).  This is a modeling choice; it is asserted by
the delta-arrival test rather than assumed.

Discretely, a spectrum on the grid w_k = -W + k*dw maps to samples on
t_j = j*dt with dt = 2*pi/(n*dw) = pi/W, and the discrete transform
satisfies Parseval exactly: sum |g_j|^2 dt = sum |ghat_k|^2 dw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .laws import eval_alpha
from .spectrum import ComplexSpectrum, FrequencyGrid, sample_green_spectrum

__all__ = [
    "RealSignal",
    "ForcingSignal",
    "synthesize_time_signal",
    "causality_energy_fraction",
    "forward_point_source",
    "helmholtz_radial_residual",
    "apply_dissipation_operator",
    "write_signal_csv",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_HERMITIAN_RTOL = 1e-12


@dataclass(frozen=True)
class RealSignal:
    """Real time-domain samples on t_j = t0 + j*dt at distance r.

    residual_imag records the largest imaginary component discarded
    during synthesis; for Hermitian input it is pure round-off, at or
    below 1e-8 of the peak sample.
    """

    t0: float
    dt: float
    samples: np.ndarray
    r: float
    residual_imag: float = 0.0

    def times(self):
        return self.t0 + self.dt * np.arange(len(self.samples))

    def l2_norm(self):
        """Time-domain L2 norm sqrt(sum samples^2 * dt)."""
        return math.sqrt(float(np.sum(self.samples**2)) * self.dt)


_FORCING_KINDS = ("delta", "gaussian-pulse", "gaussian-modulated-sine")


@dataclass(frozen=True)
class ForcingSignal:
    """Source time profile g(t) for point-source forward solves.

    kinds: "delta" (impulse at `center`), "gaussian-pulse"
    (exp(-(t-center)^2/(2 width^2))), "gaussian-modulated-sine"
    (sin(carrier*(t-center)) times the same envelope).
    """

    kind: str
    center: float = 0.0
    width: float = 0.0
    carrier: float = 0.0

    def __post_init__(self):
        if self.kind not in _FORCING_KINDS:
            raise ValueError(f"unknown forcing kind {self.kind!r}; choose from {_FORCING_KINDS}")
        if self.kind != "delta" and not self.width > 0.0:
            raise ValueError("width must be positive for non-delta forcings")

    def spectrum(self, omega):
        """Forcing spectrum under the package Fourier convention."""
        w = np.asarray(omega, dtype=float)
        phase = np.exp(1j * w * self.center)
        if self.kind == "delta":
            out = phase / _SQRT_2PI
        elif self.kind == "gaussian-pulse":
            out = self.width * phase * np.exp(-0.5 * (w * self.width) ** 2)
        else:
            k = self.carrier
            out = (self.width * phase / 2j) * (
                np.exp(-0.5 * ((w + k) * self.width) ** 2)
                - np.exp(-0.5 * ((w - k) * self.width) ** 2)
            )
        return out if out.ndim else complex(out)


def _inverse_transform(values, grid, t0=0.0):
    """Inverse transform of grid samples onto t_j = t0 + j*dt.

    g_j = (dw/sqrt(2pi)) * sum_k values_k * exp(-1j*w_k*t_j); with
    w_k = -W + k*dw and dt = pi/W this reduces to an FFT with an
    alternating-sign twiddle.
    """
    n = grid.n
    dw = grid.delta_omega
    v = np.asarray(values, dtype=complex)
    if t0 != 0.0:
        v = v * np.exp(-1j * grid.omegas() * t0)
    sign = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    return (dw / _SQRT_2PI) * sign * np.fft.fft(v)


def _forward_transform(signal):
    """Forward transform of a RealSignal back onto its implied grid."""
    n = len(signal.samples)
    dw = 2.0 * math.pi / (n * signal.dt)
    grid = FrequencyGrid(omega_max=0.5 * n * dw, n=n)
    sign = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    ghat = (signal.dt * n / _SQRT_2PI) * np.fft.ifft(signal.samples * sign)
    if signal.t0 != 0.0:
        ghat = ghat * np.exp(1j * grid.omegas() * signal.t0)
    return ghat, grid


def synthesize_time_signal(spec):
    """Real time signal from a Hermitian sampled spectrum.

    Validates the pairwise Hermitian symmetry of the input to 1e-12
    relative.  The lone -omega_max sample is self-conjugate under the
    discrete transform and must be real; its imaginary part (zero for
    any spectrum that has decayed by the grid edge) is dropped.  The
    output window is t in [0, n*dt) with dt = pi/omega_max; the
    largest discarded imaginary component is recorded on the signal.
    """
    peak = float(np.max(np.abs(spec.values)))
    if peak > 0.0 and spec.hermitian_defect() > _HERMITIAN_RTOL * peak:
        raise ValueError("spectrum is not Hermitian: a real signal cannot be synthesized")
    v = np.array(spec.values, dtype=complex)
    v[0] = v[0].real
    g = _inverse_transform(v, spec.grid)
    residual = float(np.max(np.abs(g.imag)))
    return RealSignal(t0=0.0, dt=math.pi / spec.grid.omega_max,
                      samples=np.ascontiguousarray(g.real), r=spec.r,
                      residual_imag=residual)


def causality_energy_fraction(signal, arrival, guard=None):
    """Fraction of signal energy arriving before `arrival - guard`.

    guard defaults to 2*dt to absorb discretization ringing at the
    wave front; pass guard=0.0 for the raw fraction.  Raises when the
    guarded arrival precedes the signal window.
    """
    if guard is None:
        guard = 2.0 * signal.dt
    if guard < 0.0:
        raise ValueError("guard must be non-negative")
    edge = arrival - guard
    if edge <= signal.t0:
        raise ValueError("window too short: guarded arrival precedes the first sample")
    total = float(np.sum(signal.samples**2))
    if total == 0.0:
        return 0.0
    pre = float(np.sum(signal.samples[signal.times() < edge] ** 2))
    return pre / total


def forward_point_source(law, r, forcing, grid):
    """Pressure at distance r from a point source with time profile g.

    The output is the inverse transform of
    G_hat(r, w) * ghat(w) * sqrt(2*pi) (convolution theorem under the
    unitary convention); a delta forcing therefore reproduces
    synthesize_time_signal of the Green spectrum sample for sample.
    Non-delta forcing spectra must be negligible at the grid edge:
    |ghat(omega_max)| < 1e-12 * max|ghat|.  A delta is exempt (it is
    never band-limited; the product decays through G_hat alone).
    """
    ghat = forcing.spectrum(grid.omegas())
    if forcing.kind != "delta":
        edge = max(abs(complex(forcing.spectrum(grid.omega_max))), abs(complex(ghat[0])))
        if edge >= 1e-12 * float(np.max(np.abs(ghat))):
            raise ValueError("forcing bandwidth exceeds the grid: raise omega_max")
    spec = sample_green_spectrum(law, r, grid)
    product = ComplexSpectrum(grid=grid, r=float(r),
                              values=spec.values * ghat * _SQRT_2PI,
                              law_tag=spec.law_tag)
    return synthesize_time_signal(product)


def helmholtz_radial_residual(law, r, omega, h):
    """Relative residual of the radial Helmholtz identity at (r, omega).

    u(rho) = rho * G_hat(rho, w) satisfies u'' = k*^2 u away from the
    origin, with k* = alpha*(w) - 1j*w/c0.  Returns
    |second-difference(u, h) - k*^2 u| / |k*^2 u|, which converges to
    zero at O(h^2) once h resolves the local wavelength 2*pi/|k*|.
    """
    if not (h > 0.0 and r > 2.0 * h):
        raise ValueError("step too large: r > 2h > 0 is required")
    a = complex(eval_alpha(law, omega))

    def u(rho):
        return np.exp((-a + 1j * omega / law.c0) * rho) / (4.0 * math.pi)

    k = a - 1j * omega / law.c0
    center = u(r)
    second = (u(r + h) - 2.0 * center + u(r - h)) / h**2
    return abs(second - k**2 * center) / abs(k**2 * center)


def apply_dissipation_operator(law, signal):
    """Apply the dissipative time-convolution operator to a signal.

    The operator multiplies the signal spectrum by
    alpha*(w)/sqrt(2*pi) under the package Fourier convention.  The
    multiplier is Hermitian, so the output is real; the discarded
    imaginary residue is recorded.
    """
    ghat, grid = _forward_transform(signal)
    product = ghat * eval_alpha(law, grid.omegas()) / _SQRT_2PI
    product[0] = product[0].real  # unpaired -omega_max bin is self-conjugate
    out = _inverse_transform(product, grid, t0=signal.t0)
    return RealSignal(t0=signal.t0, dt=signal.dt,
                      samples=np.ascontiguousarray(out.real), r=signal.r,
                      residual_imag=float(np.max(np.abs(out.imag))))


def write_signal_csv(signal, path, law_tag="", grid_note=""):
    """Write a time signal as CSV: t, value.

    The comment line records the distance, law tag, grid parameters
    and the Fourier convention so the file is self-describing.
    """
    parts = [
        f"r={signal.r:.17g}", f"law={law_tag or 'unknown'}", f"t0={signal.t0:.17g}",
        f"dt={signal.dt:.17g}", f"n={len(signal.samples)}",
    ]
    if grid_note:
        parts.append(grid_note.strip())
    parts.append("convention=forward-kernel exp(+i w t), unitary 1/sqrt(2 pi)")
    lines = ["# " + " ".join(parts), "t,value"]
    for t, s in zip(signal.times(), signal.samples):
        lines.append(f"{t:.17g},{s:.17g}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")

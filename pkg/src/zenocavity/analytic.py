"""Closed-form cavity dynamics under pulsed drive and dispersive phase kicks.

A drive pulse of duration tau displaces the field by

    alpha(tau) = [exp(-i delta tau) - 1] f / delta,

with global phase phi(tau) = (sin(delta tau) - delta tau) f^2 / delta^2.
Each measurement window multiplies the |+/-> field branch by
exp(-/+ i xi_m a^dag a), xi_m = chi tau_m.  After N drive/kick cycles,
the two branches are coherent states whose amplitudes accumulate as a
geometric sum, giving the Dirichlet ratio sin(N xi_m/2)/sin(xi_m/2) and
the photon-number freezing away from xi_m = 2 k pi.

All frequencies are angular (rad/s); all times are seconds.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

# Series fallbacks engage below these thresholds; keeps relative error
# under ~1e-9 while avoiding catastrophic cancellation.
SMALL_PHASE = 1e-8
RESONANCE_TOL = 1e-8


@dataclass(frozen=True)
class CavityParams:
    """Drive/cavity constants. omega_F is derived: omega_F = omega + delta."""

    omega: float      # cavity frequency
    delta: float      # drive detuning omega_F - omega
    f: float          # drive strength
    chi: float        # dispersive shift g^2/Delta

    def __post_init__(self):
        if self.f < 0:
            raise ParameterError(f"drive strength must be >= 0, got {self.f}")

    @property
    def omega_F(self) -> float:
        return self.omega + self.delta


@dataclass(frozen=True)
class PulseSchedule:
    """Bang-bang timing: N cycles of (drive tau, measurement tau_m)."""

    tau: float
    tau_m: float
    n_cycles: int

    def __post_init__(self):
        if self.tau <= 0:
            raise ParameterError(f"tau must be > 0, got {self.tau}")
        if self.tau_m < 0:
            raise ParameterError(f"tau_m must be >= 0, got {self.tau_m}")
        if self.n_cycles < 1:
            raise ParameterError(f"n_cycles must be >= 1, got {self.n_cycles}")

    @property
    def t_total(self) -> float:
        return self.n_cycles * self.tau


@dataclass(frozen=True)
class BranchRecord:
    """Per-branch coherent labels and phases after N cycles."""

    alpha_plus: complex
    alpha_minus: complex
    theta_plus: float
    theta_minus: float
    phi_common: float
    xi_m: float


def displacement_alpha(params: CavityParams, tau: float) -> complex:
    """Displacement alpha(tau) added by one drive pulse of duration tau."""
    if tau < 0:
        raise ParameterError(f"tau must be >= 0, got {tau}")
    x = params.delta * tau
    if abs(x) < SMALL_PHASE:
        # -i f tau (1 - i x/2 - x^2/6 + i x^3/24)
        return -1j * params.f * tau * (1.0 - 1j * x / 2.0 - x * x / 6.0 + 1j * x**3 / 24.0)
    # exp(-ix) - 1 = -2i sin(x/2) exp(-ix/2): no cancellation at small x
    return -2j * math.sin(x / 2.0) * np.exp(-0.5j * x) * params.f / params.delta


# sin(x) - x loses all significant digits well before |x| ~ 1e-8, so the
# series window for phi is much wider than SMALL_PHASE.
PHI_SERIES_WINDOW = 1e-2


def phase_phi(params: CavityParams, tau: float) -> float:
    """Global pulse phase phi(tau) = (sin(delta tau) - delta tau) f^2/delta^2."""
    if tau < 0:
        raise ParameterError(f"tau must be >= 0, got {tau}")
    x = params.delta * tau
    if abs(x) < PHI_SERIES_WINDOW:
        return (
            -params.f**2 * params.delta * tau**3 / 6.0
            * (1.0 - x * x / 20.0 + x**4 / 840.0)
        )
    return (math.sin(x) - x) * params.f**2 / params.delta**2


def reduced_kick(xi_m: float) -> tuple[float, bool]:
    """Kick angle reduced to (-pi, pi] and whether it is 2*pi-resonant."""
    r = math.remainder(xi_m, 2.0 * math.pi)
    return r, abs(r) < RESONANCE_TOL


def _dirichlet_sum(xi_m: float, n: int) -> complex:
    """sum_{m=1..n} exp(-i m xi_m), the + branch amplitude accumulation factor.

    Equals exp(-i (n+1) xi_m / 2) * sin(n xi_m / 2) / sin(xi_m / 2).  The sum
    is 2*pi-periodic in xi_m, so it is evaluated at the reduced angle r: that
    keeps full precision arbitrarily close to a resonance, where the raw
    products n*xi_m would wash out the tiny sines.
    """
    r, resonant = reduced_kick(xi_m)
    if resonant:
        mag = n * (1.0 - (n * n - 1.0) * r * r / 24.0)
    else:
        mag = math.sin(n * r / 2.0) / math.sin(r / 2.0)
    return mag * np.exp(-1j * (n + 1) * r / 2.0)


def _theta_factor(xi_m: float, n: int) -> float:
    """[n sin(xi) - sin(n xi)] / (1 - cos(xi)), with its resonant limit.

    Also 2*pi-periodic; the series kicks in whenever n sin(r) and sin(n r)
    agree to the point of cancellation (small |n r|), not only on resonance.
    """
    r, resonant = reduced_kick(xi_m)
    if resonant or abs(n * r) < 1e-2:
        return (n**3 - n) * r / 3.0 * (1.0 + r * r / 12.0) - (n**5 - n) * r**3 / 60.0
    return (n * math.sin(r) - math.sin(n * r)) / (2.0 * math.sin(r / 2.0) ** 2)


def branch_after_n(params: CavityParams, sched: PulseSchedule) -> BranchRecord:
    """Coherent labels alpha_{+/-N} and phases theta_{+/-}(N) after N cycles.

    alpha_{+N} = alpha(tau) * sum_{m=1..N} exp(-i m xi_m); the minus branch
    is its mirror (conjugate kick).  theta_{+/-} = +/- |alpha|^2/2 *
    [N sin(xi_m) - sin(N xi_m)] / (1 - cos(xi_m)).
    """
    alpha = displacement_alpha(params, sched.tau)
    xi_m = params.chi * sched.tau_m
    n = sched.n_cycles
    acc = _dirichlet_sum(xi_m, n)
    theta = abs(alpha) ** 2 / 2.0 * _theta_factor(xi_m, n)
    return BranchRecord(
        alpha_plus=alpha * acc,
        alpha_minus=alpha * np.conj(acc),
        theta_plus=theta,
        theta_minus=-theta,
        phi_common=n * phase_phi(params, sched.tau),
        xi_m=xi_m,
    )


def mean_photon_zeno(params: CavityParams, sched: PulseSchedule) -> float:
    """Mean photon number |alpha(tau)|^2 sin^2(N xi_m/2)/sin^2(xi_m/2).

    Bounded by |alpha(tau)|^2 / sin^2(xi_m/2) for every N whenever xi_m is
    not a multiple of 2*pi; grows as N^2 |alpha|^2 on resonance.
    """
    alpha2 = abs(displacement_alpha(params, sched.tau)) ** 2
    acc = _dirichlet_sum(params.chi * sched.tau_m, sched.n_cycles)
    return alpha2 * abs(acc) ** 2


def mean_photon_free(params: CavityParams, n_cycles: int, tau: float) -> float:
    """|alpha(N tau)|^2: uninterrupted drive for the whole duration N*tau."""
    if n_cycles < 0:
        raise ParameterError(f"n_cycles must be >= 0, got {n_cycles}")
    return abs(displacement_alpha(params, n_cycles * tau)) ** 2


def critical_tau_m(params: CavityParams, k: int) -> float:
    """k-th measurement duration where the kick acts as the identity: 2 k pi / chi."""
    if params.chi == 0:
        raise ParameterError("chi = 0: no measurement coupling, critical time undefined")
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    return 2.0 * math.pi * k / params.chi


def photon_bound(params: CavityParams, sched: PulseSchedule) -> float:
    """Upper bound |alpha(tau)|^2/sin^2(xi_m/2); inf on a 2*pi resonance."""
    alpha2 = abs(displacement_alpha(params, sched.tau)) ** 2
    r, resonant = reduced_kick(params.chi * sched.tau_m)
    if resonant:
        return math.inf
    return alpha2 / math.sin(r / 2.0) ** 2


def vacuum_survival(params: CavityParams, sched: PulseSchedule) -> float:
    """Probability exp(-nbar) that the field is still in the vacuum."""
    return math.exp(-mean_photon_zeno(params, sched))


def atom_coherence(params: CavityParams, sched: PulseSchedule) -> float:
    """|<alpha_+N | alpha_-N>| = exp(-|alpha_+N - alpha_-N|^2 / 2).

    1 means the branches stayed indistinguishable (no which-path record);
    small values signal the dephasing that freezes the photon growth.
    """
    rec = branch_after_n(params, sched)
    return math.exp(-abs(rec.alpha_plus - rec.alpha_minus) ** 2 / 2.0)

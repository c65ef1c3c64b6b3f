"""Monte Carlo oracle for the analytic steady state.

Simulates c-number stochastic analogues of the coupled polarization/field
equations with complex Gaussian increments whose covariances equal the
normal-ordered quantum noise correlators.  Because the system is linear,
the classical ensemble average E[|c0|^2] then equals the quantum photon
number, so the simulation validates the closed-form steady state without
any Hilbert-space machinery (see docs/mc_transcription.md).

The continuum k-sum is represented by a small number of bins carrying
summed populations; the analytic reference is evaluated on the identical
binning so the comparison is exact-in-model.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_discrete_lyapunov

from .emitter import transition_freq
from .errors import StepTooLarge, Unstable
from .langevin import thermal_occupation

_TRAJ_BATCH = 256
_TIME_CHUNK = 1024


@dataclass(frozen=True)
class SdeConfig:
    """Discretization of the stochastic integration.

    dt, t_end, burn_in in seconds; per-trajectory RNG streams are derived
    from (seed, trajectory index) so results do not depend on scheduling.
    """

    dt: float
    t_end: float
    burn_in: float
    n_trajectories: int = 2000
    seed: int = 0
    k_modes: int = 1

    def __post_init__(self):
        if self.dt <= 0 or self.t_end <= self.burn_in or self.burn_in < 0:
            raise ValueError("need 0 < dt and 0 <= burn_in < t_end")
        if self.n_trajectories < 100:
            raise ValueError("n_trajectories must be >= 100")
        if not 1 <= self.k_modes <= 64:
            raise ValueError("k_modes must be in [1, 64]")


@dataclass(frozen=True)
class McEstimate:
    photon_number_mean: float
    std_error: float  # 1 sigma over trajectory batch means
    n_effective_samples: int


@dataclass(frozen=True)
class KBins:
    """Discrete transition bins: per-bin frequency, dephasing and summed populations."""

    omega21: np.ndarray  # rad/s
    gamma21: np.ndarray  # rad/s
    pop1: np.ndarray  # summed lower-subband occupation per bin
    pop2: np.ndarray  # summed upper-subband occupation per bin

    def __post_init__(self):
        for arr in (self.omega21, self.gamma21, self.pop1, self.pop2):
            if np.asarray(arr).shape != np.asarray(self.omega21).shape:
                raise ValueError("bin arrays must have matching shapes")
        if np.any(np.asarray(self.gamma21) <= 0):
            raise ValueError("gamma21 must be > 0 per bin")

    def __len__(self):
        return len(np.asarray(self.omega21))

    @classmethod
    def single(cls, omega21, gamma21, pop1, pop2):
        return cls(
            omega21=np.array([omega21]),
            gamma21=np.array([gamma21]),
            pop1=np.array([float(pop1)]),
            pop2=np.array([float(pop2)]),
        )

    @classmethod
    def from_sheet(cls, sheet, geometry, n_bins):
        """Bin the sheet's radial k grid into contiguous chunks.

        Summed populations use the same trapezoid weights as the continuum
        k-sum; per-bin gamma21 and omega21 are n2-weighted means.
        """
        k = sheet.k_grid
        # trapezoid weights of int f(k) k dk scaled to the 2D state count
        w = np.zeros_like(k)
        dk = np.diff(k)
        w[:-1] += dk / 2
        w[1:] += dk / 2
        weights = sheet.degeneracy * geometry.area / (2 * np.pi) * w * k
        w21 = transition_freq(sheet, k)
        chunks = np.array_split(np.arange(k.size), n_bins)
        om, gm, p1, p2 = [], [], [], []
        for idx in chunks:
            cw = weights[idx]
            n2w = cw * sheet.n2[idx]
            p1.append(np.sum(cw * sheet.n1[idx]))
            p2.append(np.sum(n2w))
            ref = n2w if np.sum(n2w) > 0 else cw
            gm.append(np.average(sheet.gamma21[idx], weights=ref))
            om.append(np.average(w21[idx], weights=ref))
        return cls(
            omega21=np.array(om),
            gamma21=np.array(gm),
            pop1=np.array(p1),
            pop2=np.array(p2),
        )


def binned_response(bins, rabi2, omega_nu):
    """(delta_omega, gamma) of the medium evaluated on the discrete bins."""
    det = np.asarray(bins.omega21) - omega_nu
    g21 = np.asarray(bins.gamma21)
    dn = np.asarray(bins.pop1) - np.asarray(bins.pop2)
    denom = det**2 + g21**2
    return (
        rabi2 * np.sum(dn * det / denom),
        rabi2 * np.sum(dn * g21 / denom),
    )


def binned_photon_number(bins, rabi2, omega_nu, params, include_thermal=True):
    """Closed-form steady-state photon number on the discrete bins."""
    _, gamma = binned_response(bins, rabi2, omega_nu)
    gamma_t = params.gamma_r + params.gamma_sigma + gamma
    if gamma_t <= 0:
        raise Unstable(f"total decay {gamma_t:g} <= 0")
    det = omega_nu - np.asarray(bins.omega21)
    g21 = np.asarray(bins.gamma21)
    ab = gamma_t + g21
    n = rabi2 * np.sum(
        np.asarray(bins.pop2) * ab / (gamma_t * (det**2 + ab**2))
    )
    if include_thermal:
        n += params.gamma_r / gamma_t * thermal_occupation(omega_nu, params.t_r)
        n += params.gamma_sigma / gamma_t * thermal_occupation(omega_nu, params.t_sigma)
    return n


def _check_step(bins, rabi2, omega_nu, params, cfg):
    _, gamma = binned_response(bins, rabi2, omega_nu)
    gamma_t = params.gamma_r + params.gamma_sigma + gamma
    if gamma_t <= 0:
        raise Unstable(f"total decay {gamma_t:g} <= 0")
    det = np.abs(np.asarray(bins.omega21) - omega_nu)
    fastest = max(
        float(np.max(np.asarray(bins.gamma21))), gamma_t, float(np.max(det, initial=0.0))
    )
    if cfg.dt >= 0.1 / fastest:
        raise StepTooLarge(
            f"dt={cfg.dt:g} >= 0.1/max rate {0.1 / fastest:g}"
        )
    slowest = min(float(np.min(np.asarray(bins.gamma21))), gamma_t)
    if cfg.burn_in < 5.0 / slowest:
        raise ValueError(f"burn_in must be >= {5.0 / slowest:g} s for these rates")
    return gamma_t


def _trajectory_rng(seed, index):
    return np.random.default_rng([int(seed), int(index)])


def simulate_steady_state(bins, rabi2, omega_nu, params, cfg):
    """Euler-Maruyama estimate of the steady-state photon number.

    Integrates, per trajectory and in the frame rotating at the cavity
    frequency,

        dP_j = [-i(w21_j - w_nu) - g21_j] P_j dt + i g (N1_j - N2_j) c dt + dW_j
        dc   = -(Gr + Gs) c dt + i g sum_j P_j dt + dW_r + dW_s

    with independent complex Gaussian increments of normal-ordered
    covariance E[dW_j* dW_j] = 2 g21_j N2_j dt, E[dW_r* dW_r] = 2 Gr nT_r dt,
    E[dW_s* dW_s] = 2 Gs nT_s dt.  Returns the time average of |c|^2 after
    burn-in with the batch-mean standard error across trajectories.
    """
    _check_step(bins, rabi2, omega_nu, params, cfg)
    g = np.sqrt(rabi2)
    det = np.asarray(bins.omega21) - omega_nu
    g21 = np.asarray(bins.gamma21)
    nbar = np.asarray(bins.pop1) - np.asarray(bins.pop2)
    n_bins = len(bins)
    dt = cfg.dt

    drift_p = -1j * det - g21
    loss_c = params.gamma_r + params.gamma_sigma
    # per-component std dev: E[|dW|^2] = 2 * rate * occupation * dt
    sig_p = np.sqrt(g21 * np.asarray(bins.pop2) * dt)
    sig_r = np.sqrt(params.gamma_r * thermal_occupation(omega_nu, params.t_r) * dt)
    sig_s = np.sqrt(
        params.gamma_sigma * thermal_occupation(omega_nu, params.t_sigma) * dt
    )

    n_steps = int(round(cfg.t_end / dt))
    n_burn = int(round(cfg.burn_in / dt))
    traj_means = np.empty(cfg.n_trajectories)

    for start in range(0, cfg.n_trajectories, _TRAJ_BATCH):
        stop = min(start + _TRAJ_BATCH, cfg.n_trajectories)
        b = stop - start
        rngs = [_trajectory_rng(cfg.seed, i) for i in range(start, stop)]
        c = np.zeros(b, dtype=complex)
        pol = np.zeros((b, n_bins), dtype=complex)
        acc = np.zeros(b)
        step = 0
        while step < n_steps:
            chunk = min(_TIME_CHUNK, n_steps - step)
            xi = np.empty((b, chunk, n_bins + 2, 2))
            for i, rng in enumerate(rngs):
                xi[i] = rng.standard_normal((chunk, n_bins + 2, 2))
            for s in range(chunk):
                z = xi[:, s]
                dw_p = (z[:, :n_bins, 0] + 1j * z[:, :n_bins, 1]) * sig_p
                dw_c = (z[:, n_bins, 0] + 1j * z[:, n_bins, 1]) * sig_r + (
                    z[:, n_bins + 1, 0] + 1j * z[:, n_bins + 1, 1]
                ) * sig_s
                pol_sum = pol.sum(axis=1)
                pol = pol + dt * (drift_p * pol + 1j * g * nbar * c[:, None]) + dw_p
                c = c + dt * (-loss_c * c + 1j * g * pol_sum) + dw_c
                step += 1
                if step > n_burn:
                    acc += np.abs(c) ** 2
            del xi
        traj_means[start:stop] = acc / max(n_steps - n_burn, 1)

    mean = float(np.mean(traj_means))
    if cfg.n_trajectories > 1:
        stderr = float(np.std(traj_means, ddof=1) / np.sqrt(cfg.n_trajectories))
    else:
        stderr = 0.0
    return McEstimate(
        photon_number_mean=mean,
        std_error=stderr,
        n_effective_samples=cfg.n_trajectories,
    )


def euler_stationary_photon_number(bins, rabi2, omega_nu, params, dt):
    """Exact stationary E[|c|^2] of the Euler-Maruyama chain at step dt.

    The chain is linear, x_{n+1} = A x_n + w_n, so its stationary
    covariance solves the discrete Lyapunov equation; this gives the weak
    discretization error without any sampling noise.
    """
    g = np.sqrt(rabi2)
    det = np.asarray(bins.omega21) - omega_nu
    g21 = np.asarray(bins.gamma21)
    nbar = np.asarray(bins.pop1) - np.asarray(bins.pop2)
    j = len(bins)
    m = np.zeros((j + 1, j + 1), dtype=complex)
    m[np.arange(j), np.arange(j)] = -1j * det - g21
    m[:j, j] = 1j * g * nbar
    m[j, :j] = 1j * g
    m[j, j] = -(params.gamma_r + params.gamma_sigma)
    a = np.eye(j + 1, dtype=complex) + dt * m
    q = np.zeros((j + 1, j + 1), dtype=complex)
    q[np.arange(j), np.arange(j)] = 2.0 * g21 * np.asarray(bins.pop2) * dt
    q[j, j] = 2.0 * dt * (
        params.gamma_r * thermal_occupation(omega_nu, params.t_r)
        + params.gamma_sigma * thermal_occupation(omega_nu, params.t_sigma)
    )
    sigma = solve_discrete_lyapunov(a, q)
    return float(sigma[j, j].real)


@dataclass(frozen=True)
class CorrelatorCheck:
    label: str
    expected: float  # configured 2 * rate * occupation
    empirical: float
    std_error: float
    commutator_gap: float  # anti-normal minus normal covariance, = 2 * rate
    passed: bool


@dataclass(frozen=True)
class NoiseReport:
    channels: tuple
    cross_covariance: complex
    cross_std_error: float
    cross_ok: bool

    @property
    def passed(self):
        return self.cross_ok and all(ch.passed for ch in self.channels)


def check_noise_correlators(cfg, channels=None, n_samples=1_000_000):
    """Verify the discrete noise streams against their configured covariances.

    channels: iterable of (label, rate, occupation).  Checks the empirical
    normal-ordered covariance E[dW* dW]/dt against 2*rate*occupation
    within 5 sampled standard errors, the independence of the first two
    channels, and reports the commutator gap 2*rate between the
    anti-normal and normal covariances (exact by construction).
    """
    if channels is None:
        channels = [("radiative", 1.0, 2.0), ("ohmic", 1.0, 0.0)]
    rng = np.random.default_rng([int(cfg.seed), 0xC0FFEE])
    dt = cfg.dt
    results = []
    streams = []
    for label, rate, occ in channels:
        z = rng.standard_normal((n_samples, 2))
        dw = np.sqrt(rate * occ * dt) * (z[:, 0] + 1j * z[:, 1])
        streams.append(dw)
        sq = np.abs(dw) ** 2 / dt
        emp = float(np.mean(sq))
        err = float(np.std(sq, ddof=1) / np.sqrt(n_samples)) if occ > 0 else 0.0
        expected = 2.0 * rate * occ
        ok = abs(emp - expected) <= 5.0 * err if occ > 0 else emp == 0.0
        results.append(
            CorrelatorCheck(
                label=label,
                expected=expected,
                empirical=emp,
                std_error=err,
                commutator_gap=2.0 * rate,
                passed=bool(ok),
            )
        )
    if len(streams) >= 2:
        prod = np.conj(streams[0]) * streams[1] / dt
        cross = complex(np.mean(prod))
        cerr = float(np.std(prod.real, ddof=1) / np.sqrt(n_samples))
        cross_ok = abs(cross) <= 5.0 * max(cerr, 1e-300)
    else:
        cross, cerr, cross_ok = 0.0, 0.0, True
    return NoiseReport(
        channels=tuple(results),
        cross_covariance=cross,
        cross_std_error=cerr,
        cross_ok=bool(cross_ok),
    )


@dataclass(frozen=True)
class DecayReport:
    amplitude_rel_error: float
    error_bound: float
    phase_slope: float  # rad/s fitted on the trajectory
    phase_slope_expected: float
    passed: bool


def check_decay_without_noise(params, cfg, detuning=0.0):
    """Deterministic part of the field equation against the exact exponential.

    |c(t)| must match |c(0)| e^{-Gamma t} within the first-order
    Euler-Maruyama bound, and the phase must rotate at the detuning.
    """
    gamma = params.gamma_r + params.gamma_sigma
    n_steps = int(round(cfg.t_end / cfg.dt))
    mult = 1.0 + cfg.dt * (-1j * detuning - gamma)
    c = mult ** np.arange(n_steps + 1)
    t = cfg.dt * np.arange(n_steps + 1)
    exact = np.exp(-gamma * t[-1])
    if exact > 0:
        amp_err = abs(abs(c[-1]) - exact) / exact
    else:
        amp_err = abs(c[-1])
    # first-order Euler bound; the detuning leaks into |mult| at O(dt d^2)
    bound = max(cfg.dt * (gamma**2 + detuning**2) * t[-1], 1e-12)
    if detuning != 0.0 or gamma == 0.0:
        phase = np.unwrap(np.angle(c))
        slope = float(np.polyfit(t, phase, 1)[0])
    else:
        slope = 0.0
    expected_slope = -detuning
    if detuning != 0.0:
        phase_ok = abs(slope - expected_slope) <= cfg.dt * abs(detuning) * (
            gamma + abs(detuning)
        )
    else:
        phase_ok = abs(slope) <= 1e-12
    return DecayReport(
        amplitude_rel_error=float(amp_err),
        error_bound=float(bound),
        phase_slope=slope,
        phase_slope_expected=expected_slope,
        passed=bool(amp_err <= bound and phase_ok),
    )

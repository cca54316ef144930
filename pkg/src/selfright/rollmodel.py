"""Roll-angle energy landscape and quasi-static roll integration.

The body's transverse silhouette determines a potential energy U(gamma)
over the roll angle; static legs carve two wells (upright and inverted)
separated by a barrier. Gait waves apply a phase-tracking drive torque.
Quasi-static integration (first order, no inertia) turns commanded roll
phases into roll trajectories, in a lumped mode (one shared gamma) or a
segmented mode (per-module gamma with torsional neighbor coupling).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, GeometryError, IntegrationError
from .gait import TWO_PI, GaitParams, coherence
from .kinematics import Morphology, wave_height_slope

GRAVITY = 9.80665

# Mobility of the quasi-static roll dynamics, rad/s per N*m.
MU_DEFAULT = 5.0

# Torsional neighbor coupling for segmented mode, N*m/rad. Stiff enough to
# keep neighbor phases coherent, soft enough for the per-interval marching
# to converge; much stiffer couplings make the substep control thrash.
KAPPA_DEFAULT = 0.05

# Dimensionless calibration of the drive gain, fixed once so that the
# legged one-shot boundary falls between A = pi/8 and A = pi/6.
DRIVE_CALIBRATION = 0.5

# Drive frequency (rad/s) for simulation contexts. The model is
# quasi-static, so results depend on gait phase, not on wall-clock rate;
# keep the frequency well above the stall-rate threshold.
QUASI_STATIC_OMEGA = 1e-3

STEPS_PER_CYCLE = 256
MIN_STEPS_PER_CYCLE = 200

# Stall rule: commanded roll rate below this for a quarter of a cycle's
# worth of consecutive output intervals marks the trial stalled.
STALL_RATE = 1e-4

# Substep marching constants. CAP bounds the roll advance of a single
# substep; a sign flip of the rate halves the working cap, two calm
# substeps grow it again. CAP_KICK re-arms parked lanes at interval start
# without polluting the stall signal. MOVE_FLOOR treats sub-nanoradian
# substeps as equilibrated so flat landscapes cost one substep.
CAP = math.pi / 128
CAP_KICK = CAP / 64
MOVE_FLOOR = 1e-9
SUBSTEP_GUARD = 8192

DEFAULT_RESOLUTION = 1024


@dataclass(frozen=True)
class EnergyLandscape:
    """Sampled potential energy over one roll revolution.

    energy and denergy are sampled on gamma_samples, a uniform grid on
    [0, 2*pi). minima holds the roll angles of the stable configurations;
    barrier is the highest rise of U along the easier rolling path from
    gamma = pi back to gamma = 0.
    """

    gamma_samples: np.ndarray
    energy: np.ndarray
    denergy: np.ndarray
    minima: tuple[float, ...]
    barrier: float

    @property
    def resolution(self) -> int:
        return len(self.gamma_samples)

    @staticmethod
    def from_energy(gamma_samples: np.ndarray, energy: np.ndarray) -> "EnergyLandscape":
        """Build a landscape from raw samples (synthetic landscapes, tests)."""
        gamma_samples = np.asarray(gamma_samples, dtype=float)
        energy = np.asarray(energy, dtype=float)
        if gamma_samples.shape != energy.shape or gamma_samples.ndim != 1:
            raise ConfigError("gamma_samples and energy must be equal-length vectors")
        res = len(gamma_samples)
        denergy = (np.roll(energy, -1) - np.roll(energy, 1)) * (res / (2.0 * TWO_PI))
        minima = _find_minima(energy)
        barrier = _path_barrier(energy)
        return EnergyLandscape(gamma_samples=gamma_samples, energy=energy,
                               denergy=denergy,
                               minima=tuple(gamma_samples[i] for i in minima),
                               barrier=barrier)


def _find_minima(energy: np.ndarray) -> list[int]:
    """Indices of strict local minima, plateau-aware and circular.

    Equal-valued runs count as one candidate; a run is a minimum when both
    neighboring runs sit strictly higher. Flat landscapes have no minima.
    """
    res = len(energy)
    span = float(energy.max() - energy.min())
    if span <= 0.0:
        return []
    tol = 1e-9 * span

    # Group circularly into runs of (near-)equal value.
    runs: list[list[int]] = []
    start = 0
    # Rotate so index 0 starts a fresh run, keeping the wrap-around plateau whole.
    while start < res and abs(energy[start - 1] - energy[start]) <= tol:
        start += 1
    if start == res:
        return []
    order = [(start + k) % res for k in range(res)]
    current = [order[0]]
    for idx in order[1:]:
        if abs(energy[idx] - energy[current[0]]) <= tol:
            current.append(idx)
        else:
            runs.append(current)
            current = [idx]
    runs.append(current)

    minima: list[int] = []
    for k, run in enumerate(runs):
        prev_val = energy[runs[k - 1][0]]
        next_val = energy[runs[(k + 1) % len(runs)][0]]
        val = energy[run[0]]
        if val < prev_val - tol and val < next_val - tol:
            minima.append(run[len(run) // 2])
    return sorted(minima)


def _path_barrier(energy: np.ndarray) -> float:
    """Highest rise of U - U(pi) along the easier path from pi to 0."""
    res = len(energy)
    mid = res // 2
    u_pi = energy[mid]
    down_path = energy[:mid + 1]          # gamma decreasing pi -> 0
    up_path = energy[mid:]                # gamma increasing pi -> 2*pi (= 0)
    barrier = min(float(down_path.max()), float(up_path.max())) - float(u_pi)
    return max(barrier, 0.0)


def support_height(morph: Morphology, gamma: np.ndarray | float) -> np.ndarray | float:
    """Height of the section axis above the floor when resting at roll gamma.

    The silhouette rests on whichever point reaches lowest: the disc bottom
    (always r) or a leg tip once it swings below the disc.
    """
    if morph.body_radius <= 0:
        raise GeometryError("body_radius must be positive")
    r = morph.body_radius
    if morph.leg_length <= 0:
        if np.isscalar(gamma):
            return r
        return np.full_like(np.asarray(gamma, dtype=float), r)
    tip = r + morph.leg_length
    a = morph.leg_angle
    g = np.asarray(gamma, dtype=float)
    tip1_y = tip * np.sin(g - a)
    tip2_y = -tip * np.sin(g + a)
    h = np.maximum(r, np.maximum(-tip1_y, -tip2_y))
    return float(h) if np.isscalar(gamma) else h


def energy_landscape(morph: Morphology, resolution: int = DEFAULT_RESOLUTION) -> EnergyLandscape:
    """Potential energy of the whole body over one roll revolution.

    U(gamma) = M*m*g*h(gamma) with h the axis height of the resting
    silhouette; module mass is lumped on the axis (the thin legs carry no
    modeled mass), so the axis height is the center-of-mass height.
    """
    if resolution < 64:
        raise ConfigError("landscape resolution must be >= 64")
    gamma = np.arange(resolution) * (TWO_PI / resolution)
    height = support_height(morph, gamma)
    energy = morph.total_mass * GRAVITY * np.asarray(height, dtype=float)
    return EnergyLandscape.from_energy(gamma, energy)


def stable_configurations(landscape: EnergyLandscape) -> list[float]:
    """Roll angles of the landscape's strict local minima, sorted ascending."""
    idx = _find_minima(landscape.energy)
    return sorted(float(landscape.gamma_samples[i]) for i in idx)


_slope_cache: dict[tuple, float] = {}


def _cached_slope(morph: Morphology, n_lat: int) -> float:
    key = (morph.num_modules, morph.link_length, n_lat)
    if key not in _slope_cache:
        _slope_cache[key] = wave_height_slope(morph, n_lat)
    return _slope_cache[key]


def drive_gain(params: GaitParams, morph: Morphology) -> float:
    """Peak drive torque G of the phase-tracking roll drive.

    Proportional to the vertical wave's lifting moment (linearized wave
    height times half the body weight) and to the phase coherence of the
    staggered segment commands.
    """
    if params.amplitude_vertical == 0.0:
        return 0.0
    slope = _cached_slope(morph, params.num_lateral_joints)
    return (morph.total_mass * GRAVITY
            * (slope * params.amplitude_vertical / 2.0)
            * DRIVE_CALIBRATION
            * coherence(params.spatial_frequency, params.num_lateral_joints))


def roll_drive(params: GaitParams, morph: Morphology, t: float, gamma: float) -> float:
    """Drive torque at time t and roll gamma: G*sin(phi_cmd(t) - gamma)."""
    g = drive_gain(params, morph)
    return g * math.sin(params.temporal_frequency * t - gamma)


@dataclass(frozen=True)
class PerturbationSpec:
    """Seeded trial-to-trial variability: initial-roll jitter and gain noise."""

    gamma_jitter: float = 0.2
    gain_noise: float = 0.1

    @staticmethod
    def none() -> "PerturbationSpec":
        return PerturbationSpec(gamma_jitter=0.0, gain_noise=0.0)


@dataclass(frozen=True)
class RollState:
    """Roll angle (unwrapped, accumulating over revolutions) at a time."""

    gamma: float | np.ndarray
    time: float = 0.0


@dataclass(frozen=True)
class RollTrajectory:
    """Recorded roll trajectory of one trial.

    gammas has shape (steps+1,) in lumped mode or (steps+1, M) in
    segmented mode. delta_gamma_per_cycle averages over modules in
    segmented mode; its length is the number of completed full cycles.
    """

    times: np.ndarray
    gammas: np.ndarray
    cycles: float
    delta_gamma_per_cycle: np.ndarray
    stalled: bool
    mode: str

    @property
    def states(self) -> list[RollState]:
        return [RollState(gamma=g if np.ndim(g) else float(g), time=float(t))
                for t, g in zip(self.times, self.gammas)]

    @property
    def delta_gamma_total(self) -> float:
        start = self.gammas[0]
        end = self.gammas[-1]
        return float(np.mean(end - start))


@dataclass(frozen=True)
class TrialOutcome:
    self_righted: bool
    rolls_per_cycle: float
    stalled: bool


def _slope_at(denergy: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    """Linear interpolation of the landscape slope at unwrapped angles."""
    res = len(denergy)
    x = gamma * (res / TWO_PI)
    i0 = np.floor(x).astype(np.int64)
    frac = x - np.floor(x)
    lo = np.take(denergy, i0, mode="wrap")
    hi = np.take(denergy, i0 + 1, mode="wrap")
    return lo * (1.0 - frac) + hi * frac


def _march_interval(gam: np.ndarray, phi1: np.ndarray, dt_len: float,
                    rate_fn, cap_cur: np.ndarray,
                    interval_index: int) -> tuple[np.ndarray, np.ndarray]:
    """Advance all lanes through one output interval with adaptive substeps.

    Lanes march independently: each substep moves at the current rate,
    bounded by the working cap and clipped so gamma never advances past
    the interval-end command phase. An interval ends for a lane when its
    time is consumed, it rides the command clip, or it has equilibrated.
    """
    lanes = gam.shape[0]
    remaining = np.full(lanes, dt_len)
    prev_sign = np.zeros(lanes)
    calm = np.zeros(lanes)
    cap_cur = np.clip(cap_cur, CAP_KICK, CAP)
    iterations = 0
    while True:
        active = remaining > 0
        if not active.any():
            break
        iterations += 1
        if iterations > SUBSTEP_GUARD:
            raise IntegrationError(
                f"substep budget exceeded in output interval {interval_index}")
        rate = np.where(active, rate_fn(gam), 0.0)
        sign = np.sign(rate)
        flip = (sign * prev_sign) < 0
        calm = np.where(flip, 0.0, calm + 1)
        cap_cur = np.where(flip, cap_cur * 0.5,
                           np.where(calm >= 2, np.minimum(CAP, cap_cur * 1.5), cap_cur))
        prev_sign = np.where(active, sign, prev_sign)
        abs_rate = np.abs(rate)
        dt_sub = np.where(abs_rate > 0,
                          np.minimum(remaining, cap_cur / np.maximum(abs_rate, 1e-300)),
                          remaining)
        proposed = gam + rate * dt_sub
        hi = np.maximum(gam, phi1)
        clipped = proposed > hi
        new = np.where(clipped, hi, proposed)
        moved = np.abs(new - gam)
        done = (~active) | clipped | (abs_rate == 0) | (moved < MOVE_FLOOR)
        gam = np.where(active, new, gam)
        if not np.isfinite(gam).all():
            raise IntegrationError(
                f"non-finite roll state in output interval {interval_index}")
        remaining = np.where(done, 0.0, remaining - dt_sub)
    return gam, cap_cur


def _integrate(denergy: np.ndarray, gains: np.ndarray, gamma0: np.ndarray,
               omega: float, dt: float, n_intervals: int, mu: float,
               phase_offsets: np.ndarray | None = None,
               kappa: float = 0.0,
               steps_per_cycle: int = STEPS_PER_CYCLE,
               record_full: bool = True):
    """March all lanes through n_intervals output intervals.

    Command phase per lane: gamma0 + omega*t - phase_offset, referenced to
    each lane's initial roll. kappa > 0 treats the lanes as a torsionally
    coupled chain (segmented mode); the coupling bias is frozen over each
    interval (operator splitting), which keeps identical-state chains
    exactly equal to the lumped trajectory.

    Returns (records, stalled): records holds lane states at every interval
    boundary when record_full, else only at whole-cycle boundaries.
    """
    lanes = len(gamma0)
    gam = np.asarray(gamma0, dtype=float).copy()
    offsets = np.zeros(lanes) if phase_offsets is None else np.asarray(phase_offsets)
    cap_cur = np.full(lanes, CAP)
    quiet = np.zeros(lanes, dtype=int)
    quiet_needed = max(1, steps_per_cycle // 4)
    stalled = np.zeros(lanes, dtype=bool)

    if record_full:
        records = np.empty((n_intervals + 1, lanes))
    else:
        n_marks = n_intervals // steps_per_cycle
        records = np.empty((n_marks + 1, lanes))
    records[0] = gam

    gamma_ref = gam.copy()
    for n in range(n_intervals):
        phi1 = gamma_ref + omega * (n + 1) * dt - offsets
        if kappa > 0.0:
            lap = np.empty(lanes)
            if lanes == 1:
                lap[0] = 0.0
            else:
                lap[1:-1] = gam[:-2] - 2.0 * gam[1:-1] + gam[2:]
                lap[0] = gam[1] - gam[0]
                lap[-1] = gam[-2] - gam[-1]
            bias = kappa * lap
        else:
            bias = 0.0

        def rate_fn(g):
            return mu * (gains * np.sin(phi1 - g) - _slope_at(denergy, g) + bias)

        before = gam
        gam, cap_cur = _march_interval(gam, phi1, dt, rate_fn, cap_cur, n)

        interval_rate = np.abs(gam - before) / dt
        quiet = np.where(interval_rate < STALL_RATE, quiet + 1, 0)
        stalled |= quiet >= quiet_needed

        if record_full:
            records[n + 1] = gam
        elif (n + 1) % steps_per_cycle == 0:
            records[(n + 1) // steps_per_cycle] = gam
    return records, stalled


def simulate_roll(params: GaitParams, morph: Morphology, cycles: float = 1.0,
                  init: RollState | None = None,
                  perturb: PerturbationSpec | None = None,
                  mode: str = "lumped",
                  rng: np.random.Generator | None = None,
                  *,
                  mu: float = MU_DEFAULT,
                  kappa: float = KAPPA_DEFAULT,
                  steps_per_cycle: int = STEPS_PER_CYCLE,
                  resolution: int = DEFAULT_RESOLUTION,
                  landscape: EnergyLandscape | None = None) -> RollTrajectory:
    """Integrate the quasi-static roll response to the commanded gait.

    The commanded roll phase ramps from the trial's initial roll:
    phi_cmd(t) = gamma_start + omega*t. Fractional cycles are allowed
    (a half cycle is the one-shot righting maneuver); per-cycle roll
    displacements are reported for completed full cycles.

    Segmented mode evolves one roll angle per module, staggering each
    module's command phase across the body by the gait's total phase span
    and coupling neighbors with a torsional spring kappa.
    """
    if cycles <= 0:
        raise ConfigError("cycles must be positive")
    if steps_per_cycle < MIN_STEPS_PER_CYCLE:
        raise ConfigError(f"steps_per_cycle must be >= {MIN_STEPS_PER_CYCLE}")
    if mode not in ("lumped", "segmented"):
        raise ConfigError(f"unknown mode {mode!r}")

    if landscape is None:
        landscape = energy_landscape(morph, resolution)
    if init is None:
        init = RollState(gamma=0.0, time=0.0)

    omega = params.temporal_frequency
    gamma_start = float(np.mean(init.gamma))
    # Coherence-free gain base: the lumped drive applies the coherence
    # factor, the segmented drive staggers the modules explicitly instead.
    slope = _cached_slope(morph, params.num_lateral_joints)
    gain_base = (morph.total_mass * GRAVITY
                 * (slope * params.amplitude_vertical / 2.0) * DRIVE_CALIBRATION)

    if perturb is not None and (perturb.gamma_jitter > 0 or perturb.gain_noise > 0):
        if rng is None:
            raise ConfigError("perturbation requires an explicit rng")
        gamma_start += rng.uniform(-perturb.gamma_jitter, perturb.gamma_jitter)
        gain_base *= 1.0 + rng.uniform(-perturb.gain_noise, perturb.gain_noise)

    dt = (TWO_PI / omega) / steps_per_cycle
    n_intervals = max(1, round(cycles * steps_per_cycle))

    if mode == "lumped":
        gamma0 = np.array([gamma_start])
        gains = np.array([gain_base * coherence(params.spatial_frequency,
                                                params.num_lateral_joints)])
        offsets = None
        kappa_eff = 0.0
        denergy = landscape.denergy
    else:
        m = morph.num_modules
        gamma0 = np.full(m, gamma_start)
        if np.ndim(init.gamma) == 1:
            gamma0 = np.asarray(init.gamma, dtype=float).copy()
            if len(gamma0) != m:
                raise ConfigError("segmented init needs one gamma per module")
        # Each lane runs the body's specific dynamics at its own staggered
        # phase: drive and slope stay whole-body (per-module torque and
        # inertia scale down together, so the specific rate is unchanged),
        # which makes an in-phase chain reduce to the lumped trajectory
        # bitwise. No coherence factor here, the stagger is explicit. The
        # neighbor spring acts per module pair, so its specific effect
        # carries a factor of the module count.
        gains = np.full(m, gain_base)
        offsets = (TWO_PI * params.spatial_frequency
                   * np.arange(m) / (m - 1))
        kappa_eff = kappa * m
        denergy = landscape.denergy

    records, stalled = _integrate(denergy, gains, gamma0, omega, dt,
                                  n_intervals, mu,
                                  phase_offsets=offsets, kappa=kappa_eff,
                                  steps_per_cycle=steps_per_cycle,
                                  record_full=True)

    times = init.time + dt * np.arange(n_intervals + 1)
    full_cycles = int(n_intervals // steps_per_cycle)
    marks = records[::steps_per_cycle][:full_cycles + 1]
    per_cycle = np.diff(marks.mean(axis=1))

    gammas = records[:, 0] if mode == "lumped" else records
    # A segmented body counts as stalled only when every module went quiet.
    trial_stalled = bool(stalled.all()) if mode == "segmented" else bool(stalled[0])
    return RollTrajectory(times=times, gammas=gammas, cycles=cycles,
                          delta_gamma_per_cycle=per_cycle,
                          stalled=trial_stalled, mode=mode)


def classify_trial(traj: RollTrajectory) -> TrialOutcome:
    """Outcome of one trial: righting success and mean rolls per cycle."""
    if len(traj.delta_gamma_per_cycle) > 0:
        mean_delta = float(np.mean(traj.delta_gamma_per_cycle))
    else:
        mean_delta = traj.delta_gamma_total / traj.cycles
    return TrialOutcome(self_righted=mean_delta >= math.pi,
                        rolls_per_cycle=mean_delta / TWO_PI,
                        stalled=traj.stalled)

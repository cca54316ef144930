"""Behavior-diagram engine: (amplitude x spatial-frequency) sweeps.

Each grid cell runs seeded Monte-Carlo trials of the quasi-static roll
simulation from the inverted pose and reports P_sr, the self-righting
probability estimated as mean roll displacement per cycle over 2*pi.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, IntegrationError
from .gait import TWO_PI, GaitParams
from .kinematics import Morphology
from .rollmodel import (DEFAULT_RESOLUTION, KAPPA_DEFAULT, MU_DEFAULT,
                        QUASI_STATIC_OMEGA, STEPS_PER_CYCLE, EnergyLandscape,
                        PerturbationSpec, RollState, _integrate, drive_gain,
                        energy_landscape, simulate_roll)

DEFAULT_AMPLITUDES = tuple(k * math.pi / 24 for k in range(1, 12))
DEFAULT_XIS = tuple(k / 10 for k in range(13))

# P_sr values this close to an endpoint collapse onto it, so exact-binary
# claims are testable without float fuzz.
ENDPOINT_SNAP = 1e-12


@dataclass(frozen=True)
class SweepSpec:
    """Grid, trial protocol, and simulation settings of one sweep."""

    amplitudes: tuple[float, ...] = DEFAULT_AMPLITUDES
    xis: tuple[float, ...] = DEFAULT_XIS
    trials_per_cell: int = 5
    cycles_per_trial: int = 3
    seed: int = 0
    morphology: Morphology = field(default_factory=Morphology)
    mode: str = "lumped"
    perturb: PerturbationSpec = field(default_factory=PerturbationSpec)
    drive_frequency: float = QUASI_STATIC_OMEGA
    steps_per_cycle: int = STEPS_PER_CYCLE
    mu: float = MU_DEFAULT
    kappa: float = KAPPA_DEFAULT
    resolution: int = DEFAULT_RESOLUTION

    def __post_init__(self) -> None:
        if not self.amplitudes or not self.xis:
            raise ConfigError("sweep grids must be nonempty")
        if self.trials_per_cell < 1 or self.cycles_per_trial < 1:
            raise ConfigError("trials and cycles must be >= 1")
        if self.mode not in ("lumped", "segmented"):
            raise ConfigError(f"unknown mode {self.mode!r}")

    def gait_for(self, amplitude: float, xi: float) -> GaitParams:
        return GaitParams(amplitude_lateral=amplitude,
                          amplitude_vertical=amplitude,
                          temporal_frequency=self.drive_frequency,
                          spatial_frequency=xi)


@dataclass(frozen=True)
class BehaviorDiagram:
    """Sweep results on the (amplitude, xi) grid.

    trial_rolls[a, x, t] is rolls-per-cycle of one trial; p_sr[a, x] is the
    cell estimate (NaN for cells whose integration failed; see errors).
    """

    amplitudes: np.ndarray
    xis: np.ndarray
    trial_rolls: np.ndarray
    p_sr: np.ndarray
    errors: tuple[str, ...]
    spec: SweepSpec

    @property
    def mean_rolls(self) -> np.ndarray:
        return self.trial_rolls.mean(axis=2)


def estimate_psr(trial_rolls: np.ndarray) -> float:
    """P_sr of one cell: mean rolls per cycle, clamped to [0, 1]."""
    rolls = np.asarray(trial_rolls, dtype=float)
    if rolls.size == 0:
        raise ConfigError("estimate_psr needs at least one trial")
    p = float(np.clip(rolls.mean(), 0.0, 1.0))
    if p > 1.0 - ENDPOINT_SNAP:
        return 1.0
    if p < ENDPOINT_SNAP:
        return 0.0
    return p


def binariness(diagram: BehaviorDiagram) -> float:
    """Fraction of cells with P_sr strictly inside (0.2, 0.8)."""
    p = diagram.p_sr
    inside = (p > 0.2) & (p < 0.8)
    return float(np.count_nonzero(inside)) / p.size


def _trial_draws(seed: int, cell_idx: int, trial: int,
                 perturb: PerturbationSpec) -> tuple[float, float]:
    """Per-trial jitter and gain factor from an order-independent stream."""
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(cell_idx, trial)))
    jitter = rng.uniform(-perturb.gamma_jitter, perturb.gamma_jitter) \
        if perturb.gamma_jitter > 0 else 0.0
    gain_factor = 1.0 + (rng.uniform(-perturb.gain_noise, perturb.gain_noise)
                         if perturb.gain_noise > 0 else 0.0)
    return jitter, gain_factor


def run_sweep(spec: SweepSpec) -> BehaviorDiagram:
    """Run the full grid sweep; deterministic for a given spec and seed.

    Trials start inverted (gamma = pi, plus the seeded jitter). Lumped
    cells are integrated as one batch of lanes; when the batch raises an
    integration error, cells are rerun in isolation so failures tag only
    the cells that caused them.
    """
    landscape = energy_landscape(spec.morphology, spec.resolution)
    if spec.mode == "segmented":
        return _run_sweep_segmented(spec, landscape)

    n_a, n_x, n_t = len(spec.amplitudes), len(spec.xis), spec.trials_per_cell
    gains = np.empty(n_a * n_x * n_t)
    gamma0 = np.empty_like(gains)
    lane = 0
    for a_idx, amp in enumerate(spec.amplitudes):
        for x_idx, xi in enumerate(spec.xis):
            cell_idx = a_idx * n_x + x_idx
            base_gain = drive_gain(spec.gait_for(amp, xi), spec.morphology)
            for trial in range(n_t):
                jitter, gain_factor = _trial_draws(spec.seed, cell_idx, trial,
                                                   spec.perturb)
                gains[lane] = base_gain * gain_factor
                gamma0[lane] = math.pi + jitter
                lane += 1

    dt = (TWO_PI / spec.drive_frequency) / spec.steps_per_cycle
    n_intervals = spec.cycles_per_trial * spec.steps_per_cycle
    errors: list[str] = []
    try:
        marks, _ = _integrate(landscape.denergy, gains, gamma0,
                              spec.drive_frequency, dt, n_intervals, spec.mu,
                              steps_per_cycle=spec.steps_per_cycle,
                              record_full=False)
        rolls = (marks[-1] - marks[0]) / (TWO_PI * spec.cycles_per_trial)
        trial_rolls = rolls.reshape(n_a, n_x, n_t)
    except IntegrationError:
        trial_rolls = np.full((n_a, n_x, n_t), np.nan)
        for a_idx in range(n_a):
            for x_idx in range(n_x):
                cell_idx = a_idx * n_x + x_idx
                sel = slice(cell_idx * n_t, (cell_idx + 1) * n_t)
                try:
                    cell_marks, _ = _integrate(
                        landscape.denergy, gains[sel], gamma0[sel],
                        spec.drive_frequency, dt, n_intervals, spec.mu,
                        steps_per_cycle=spec.steps_per_cycle, record_full=False)
                    trial_rolls[a_idx, x_idx] = (
                        (cell_marks[-1] - cell_marks[0])
                        / (TWO_PI * spec.cycles_per_trial))
                except IntegrationError as exc:
                    errors.append(f"cell({a_idx},{x_idx}): {exc}")

    p_sr = np.empty((n_a, n_x))
    for a_idx in range(n_a):
        for x_idx in range(n_x):
            cell = trial_rolls[a_idx, x_idx]
            p_sr[a_idx, x_idx] = (np.nan if np.isnan(cell).any()
                                  else estimate_psr(cell))
    return BehaviorDiagram(amplitudes=np.asarray(spec.amplitudes),
                           xis=np.asarray(spec.xis),
                           trial_rolls=trial_rolls, p_sr=p_sr,
                           errors=tuple(errors), spec=spec)


def _run_sweep_segmented(spec: SweepSpec, landscape: EnergyLandscape) -> BehaviorDiagram:
    n_a, n_x, n_t = len(spec.amplitudes), len(spec.xis), spec.trials_per_cell
    trial_rolls = np.empty((n_a, n_x, n_t))
    errors: list[str] = []
    for a_idx, amp in enumerate(spec.amplitudes):
        for x_idx, xi in enumerate(spec.xis):
            cell_idx = a_idx * n_x + x_idx
            params = spec.gait_for(amp, xi)
            for trial in range(n_t):
                rng = np.random.default_rng(
                    np.random.SeedSequence(entropy=spec.seed,
                                           spawn_key=(cell_idx, trial)))
                try:
                    traj = simulate_roll(
                        params, spec.morphology,
                        cycles=float(spec.cycles_per_trial),
                        init=RollState(gamma=math.pi), perturb=spec.perturb,
                        mode="segmented", rng=rng, mu=spec.mu,
                        kappa=spec.kappa,
                        steps_per_cycle=spec.steps_per_cycle,
                        landscape=landscape)
                    trial_rolls[a_idx, x_idx, trial] = (
                        traj.delta_gamma_total / (TWO_PI * spec.cycles_per_trial))
                except IntegrationError as exc:
                    trial_rolls[a_idx, x_idx, trial] = np.nan
                    errors.append(f"cell({a_idx},{x_idx}) trial {trial}: {exc}")
    p_sr = np.empty((n_a, n_x))
    for a_idx in range(n_a):
        for x_idx in range(n_x):
            cell = trial_rolls[a_idx, x_idx]
            p_sr[a_idx, x_idx] = (np.nan if np.isnan(cell).any()
                                  else estimate_psr(cell))
    return BehaviorDiagram(amplitudes=np.asarray(spec.amplitudes),
                           xis=np.asarray(spec.xis),
                           trial_rolls=trial_rolls, p_sr=p_sr,
                           errors=tuple(errors), spec=spec)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_diagram_csv(diagram: BehaviorDiagram, path, meta: dict) -> None:
    """One row per trial plus a summary row per cell.

    Trial rows leave p_sr empty; the summary row (trial column 'summary')
    carries the cell's mean rolls per cycle and P_sr.
    """
    lines = ["# " + " ".join(f"{k}={v}" for k, v in sorted(meta.items()))]
    lines.append("A_rad,xi,trial,rolls_per_cycle,p_sr")
    mean_rolls = diagram.mean_rolls
    for a_idx, amp in enumerate(diagram.amplitudes):
        for x_idx, xi in enumerate(diagram.xis):
            for trial in range(diagram.trial_rolls.shape[2]):
                rolls = diagram.trial_rolls[a_idx, x_idx, trial]
                lines.append(f"{_fmt(amp)},{_fmt(xi)},{trial},{_fmt(rolls)},")
            lines.append(f"{_fmt(amp)},{_fmt(xi)},summary,"
                         f"{_fmt(mean_rolls[a_idx, x_idx])},"
                         f"{_fmt(diagram.p_sr[a_idx, x_idx])}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def diagram_to_dict(diagram: BehaviorDiagram, meta: dict) -> dict:
    spec = diagram.spec
    return {
        "meta": dict(sorted(meta.items())),
        "calibration": {"mu": spec.mu, "kappa": spec.kappa,
                        "drive_frequency": spec.drive_frequency,
                        "steps_per_cycle": spec.steps_per_cycle,
                        "resolution": spec.resolution},
        "protocol": {"trials_per_cell": spec.trials_per_cell,
                     "cycles_per_trial": spec.cycles_per_trial,
                     "seed": spec.seed, "mode": spec.mode},
        "amplitudes": list(diagram.amplitudes),
        "xis": list(diagram.xis),
        "p_sr": [[None if np.isnan(v) else v for v in row]
                 for row in diagram.p_sr],
        "trial_rolls": [[[None if np.isnan(v) else v for v in cell]
                         for cell in row] for row in diagram.trial_rolls],
        "errors": list(diagram.errors),
    }


def write_diagram_json(diagram: BehaviorDiagram, path, meta: dict) -> None:
    with open(path, "w") as fh:
        json.dump(diagram_to_dict(diagram, meta), fh, indent=1, sort_keys=True)
        fh.write("\n")

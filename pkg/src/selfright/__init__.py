"""Body-driven self-righting in elongate multi-jointed robots.

Simulation package organized around a quasi-static roll model: a
two-wave gait generator, forward kinematics of an alternating-axis
module chain, leg-induced roll-energy landscapes, a quasi-static roll
integrator (lumped and per-module variants), a sweep harness that maps
self-righting probability over gait parameters, and a planar
sidewinding displacement estimator.
"""

from .config import (RunConfig, config_from_dict, config_hash, config_json,
                     config_to_dict, load_config, save_config)
from .errors import (ConfigError, ContactError, DimensionError,
                     GeometryError, IntegrationError, SelfRightError)
from .gait import (GaitParams, JointAngles, coherence, joint_vector,
                   lateral_angle, phase_lag, vertical_angle)
from .kinematics import (FramePose, Morphology, body_wave_height,
                         center_of_mass, cross_section, forward_kinematics,
                         polygon_area, wave_height_slope)
from .rollmodel import (EnergyLandscape, PerturbationSpec, RollState,
                        RollTrajectory, TrialOutcome, classify_trial,
                        drive_gain, energy_landscape, roll_drive,
                        simulate_roll, stable_configurations, support_height)
from .sidewinding import (DisplacementReport, contact_set,
                          displacement_trajectory, lateral_displacement)
from .sweep import (BehaviorDiagram, SweepSpec, binariness, estimate_psr,
                    run_sweep, write_diagram_csv, write_diagram_json)

__version__ = "0.1.0"

__all__ = [
    "BehaviorDiagram", "ConfigError", "ContactError", "DimensionError",
    "DisplacementReport", "EnergyLandscape", "FramePose", "GaitParams",
    "GeometryError", "IntegrationError", "JointAngles", "Morphology",
    "PerturbationSpec", "RollState", "RollTrajectory", "RunConfig",
    "SelfRightError", "SweepSpec", "TrialOutcome", "binariness",
    "body_wave_height", "center_of_mass", "classify_trial", "coherence",
    "config_from_dict", "config_hash", "config_json", "config_to_dict",
    "contact_set", "cross_section", "displacement_trajectory", "drive_gain",
    "energy_landscape", "estimate_psr", "forward_kinematics",
    "joint_vector", "lateral_angle", "lateral_displacement", "load_config",
    "phase_lag", "polygon_area", "roll_drive", "run_sweep", "save_config",
    "simulate_roll", "stable_configurations", "support_height",
    "vertical_angle", "wave_height_slope", "write_diagram_csv",
    "write_diagram_json",
]

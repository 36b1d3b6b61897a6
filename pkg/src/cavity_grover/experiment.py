"""End-to-end physical runs of the search sequence.

A run starts from both atoms in g with the cavity in vacuum, applies
the compiled pulse list, and reads the atomic populations at the end.
Single-qubit pulses are instantaneous unitaries (their real duration
is negligible next to the collisions); each of the two collisions
lasts pi/lam. Fidelity is the marginal probability of finding the
atoms in the target level pair, photon number traced out.

Pulse compilation decomposes each logical gate into what the classical
sources actually drive, dropping global phases:

    S_j        R_y(pi/2)
    H_j        Z_j(pi) after R_y(-pi/2)
    P_j(theta) Z_j(theta + pi) after R_y(-pi/2)

where R_y is a resonant Rabi rotation and Z_j a Stark-induced phase.
A fractional pulse-duration error epsilon scales every Rabi angle by
(1 + epsilon); the "all_angles" error model scales the Stark angles
too. Collision durations are never scaled: they are set by the atoms'
flight through the mode, not by the pulse clock.

Frames: the collision propagator is generated in the frame rotating at
the cavity frequency, where the coupling is time independent, while
the pulse rotations are written in the frame of the atomic
transitions. After each exact-model collision a diagonal phase
exp(i delta t N) converts between the two. At the default working
point delta*t is a multiple of 2 pi and the correction is the
identity; at other detunings it keeps interleaved pulses and
collisions phase-consistent.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .cavity import (
    A1_G,
    A2_G,
    CouplingParams,
    PhysicalBasis,
    PhysicalState,
    atomic_marginal,
    basis_state,
    evolve_collision,
    excitation_number,
    qpg_gate_time,
)
from .gates import oracle_angles, z_rot
from .linalg import NumericalError, apply, embed

#: Axis phase selecting a rotation about y.
AXIS_Y = np.pi / 2

#: Marginal-table label for each target item.
TARGET_LABELS = {0: "g1g2", 1: "g1i2", 2: "e1g2", 3: "e1i2"}

COLLISION_MODELS = ("exact", "effective")
ERROR_MODELS = ("rabi_only", "all_angles")


class ConfigError(ValueError):
    """An experiment configuration violates its invariants."""


@dataclass
class ExperimentConfig:
    omega_over_2pi: float = 5.0e4  # vacuum Rabi frequency / 2 pi, Hz
    delta_over_omega: float = 4.0  # detuning in units of omega
    target: int = 3  # searched item, 0..3
    epsilon: float = 0.0  # fractional pulse-duration error
    n_max: int = 2  # Fock cutoff
    collision_model: str = "exact"
    error_model: str = "rabi_only"

    def __post_init__(self):
        if not self.omega_over_2pi > 0:
            raise ConfigError(f"omega_over_2pi must be positive, got {self.omega_over_2pi}")
        if not self.delta_over_omega >= 1:
            raise ConfigError(f"delta_over_omega must be at least 1, got {self.delta_over_omega}")
        if self.target not in (0, 1, 2, 3):
            raise ConfigError(f"target must be one of 0, 1, 2, 3, got {self.target!r}")
        if not abs(self.epsilon) <= 0.5:
            raise ConfigError(f"epsilon must satisfy |epsilon| <= 0.5, got {self.epsilon}")
        if self.n_max < 1:
            raise ConfigError(f"n_max must be at least 1, got {self.n_max}")
        if self.collision_model not in COLLISION_MODELS:
            raise ConfigError(f"collision_model must be one of {COLLISION_MODELS}, got {self.collision_model!r}")
        if self.error_model not in ERROR_MODELS:
            raise ConfigError(f"error_model must be one of {ERROR_MODELS}, got {self.error_model!r}")


@dataclass
class PulseOp:
    """One step of the physical sequence.

    kind "rabi_rotation": resonant rotation by `angle` about the axis at
    `axis_phase` in the equatorial plane, on atom 1 or 2.
    kind "stark_z": Stark-induced z rotation by `angle` on one atom.
    kind "collision": joint evolution in the cavity for duration_s.
    """

    kind: str
    angle: float = 0.0
    axis_phase: float = 0.0
    atom: int = 0
    duration_s: float = 0.0

    def __post_init__(self):
        if self.kind in ("rabi_rotation", "stark_z"):
            if not np.isfinite(self.angle):
                raise ValueError(f"{self.kind} angle must be finite, got {self.angle}")
            if self.atom not in (1, 2):
                raise ValueError(f"{self.kind} needs atom 1 or 2, got {self.atom}")
        elif self.kind == "collision":
            if not self.duration_s > 0:
                raise ValueError(f"collision duration must be positive, got {self.duration_s}")
        else:
            raise ValueError(f"unknown pulse kind {self.kind!r}")

    @classmethod
    def rabi(cls, angle, atom, axis_phase=AXIS_Y):
        return cls(kind="rabi_rotation", angle=angle, axis_phase=axis_phase, atom=atom)

    @classmethod
    def stark(cls, angle, atom):
        return cls(kind="stark_z", angle=angle, atom=atom)

    @classmethod
    def collision(cls, duration_s):
        return cls(kind="collision", duration_s=duration_s)


def compile_pulses(target, epsilon, error_model, gate_time_s):
    """The full pulse list for one search: P on both atoms, collision,
    H on both atoms, collision, S on both atoms.

    Rabi angles are scaled by (1 + epsilon); Stark angles only under
    error_model "all_angles"; collision durations never.
    """
    if error_model not in ERROR_MODELS:
        raise ConfigError(f"error_model must be one of {ERROR_MODELS}, got {error_model!r}")
    theta1, theta2 = oracle_angles(target)
    rabi_scale = 1.0 + epsilon
    stark_scale = 1.0 + epsilon if error_model == "all_angles" else 1.0

    ops = []
    for atom, theta in ((1, theta1), (2, theta2)):
        ops.append(PulseOp.rabi(-np.pi / 2 * rabi_scale, atom))
        ops.append(PulseOp.stark((theta + np.pi) * stark_scale, atom))
    ops.append(PulseOp.collision(gate_time_s))
    for atom in (1, 2):
        ops.append(PulseOp.rabi(-np.pi / 2 * rabi_scale, atom))
        ops.append(PulseOp.stark(np.pi * stark_scale, atom))
    ops.append(PulseOp.collision(gate_time_s))
    for atom in (1, 2):
        ops.append(PulseOp.rabi(np.pi / 2 * rabi_scale, atom))
    return ops


def rabi_unitary(angle, axis_phase):
    """Rotation by `angle` about the equatorial axis at `axis_phase`
    (axis_phase pi/2 is a y rotation)."""
    c = np.cos(angle / 2)
    s = np.sin(angle / 2)
    ax = np.cos(axis_phase)
    ay = np.sin(axis_phase)
    return np.array(
        [[c, -1j * s * (ax - 1j * ay)], [-1j * s * (ax + 1j * ay), c]]
    )


def pulse_unitary(op, basis):
    """The full-space unitary of a single-atom pulse.

    Atom 2's rotation acts on its {g, i} logical pair and leaves e
    untouched: the pulse frequencies address the g <-> i transition
    only.
    """
    if op.kind == "rabi_rotation":
        u2 = rabi_unitary(op.angle, op.axis_phase)
    elif op.kind == "stark_z":
        u2 = z_rot(op.angle)
    else:
        raise ValueError(f"no pulse unitary for kind {op.kind!r}")
    dims = [2, 3, basis.n_fock]
    if op.atom == 1:
        return embed(u2, dims, 0)
    u3 = np.eye(3, dtype=complex)
    u3[:2, :2] = u2
    return embed(u3, dims, 1)


@dataclass
class RunTiming:
    """Collision durations in order; pulses are instantaneous and
    contribute nothing."""

    segments_s: tuple
    total_s: float


@dataclass
class RunResult:
    fidelity: float
    populations: dict  # label -> probability, all six atomic level pairs
    timing: RunTiming
    leaked_photon_probability: float


def _population_labels(basis):
    return [
        f"{l1}1{l2}2" for l1 in basis.atom1_levels for l2 in basis.atom2_levels
    ]


def run_physical(config):
    """Run the full physical sequence for one configuration."""
    params = CouplingParams.from_ratio(config.omega_over_2pi, config.delta_over_omega)
    basis = PhysicalBasis(config.n_max)
    t_gate = qpg_gate_time(params)
    if not np.isfinite(t_gate):
        raise NumericalError(f"gate time overflowed to {t_gate}")
    pulses = compile_pulses(config.target, config.epsilon, config.error_model, t_gate)

    n_diag = np.real(np.diag(excitation_number(basis)))
    state = basis_state(basis, A1_G, A2_G, 0)
    segments = []
    for op in pulses:
        if op.kind == "collision":
            state = evolve_collision(state, params, op.duration_s, config.collision_model)
            if config.collision_model == "exact":
                # cavity frame -> atomic frame, where the pulse
                # rotations are defined
                align = np.exp(1j * params.delta * op.duration_s * n_diag)
                state = PhysicalState(align * state.amplitudes, basis)
            segments.append(op.duration_s)
        else:
            state = PhysicalState(apply(pulse_unitary(op, basis), state.amplitudes), basis)

    table = atomic_marginal(state)
    populations = {
        label: float(p)
        for label, p in zip(_population_labels(basis), table.ravel())
    }
    probs = np.abs(state.amplitudes) ** 2
    leaked = float(probs.reshape(2, 3, basis.n_fock)[:, :, 1:].sum())
    timing = RunTiming(tuple(segments), float(sum(segments)))
    return RunResult(
        fidelity=populations[TARGET_LABELS[config.target]],
        populations=populations,
        timing=timing,
        leaked_photon_probability=leaked,
    )


def sweep_error(config, epsilons):
    """One run per epsilon, everything else fixed. Returns
    [(epsilon, fidelity), ...] in input order."""
    if len(epsilons) == 0:
        raise ConfigError("sweep_error needs at least one epsilon")
    out = []
    for eps in epsilons:
        result = run_physical(replace(config, epsilon=float(eps)))
        out.append((float(eps), result.fidelity))
    return out


def sweep_detuning(config, ratios):
    """Fidelity versus delta/omega at epsilon 0 under the exact model,
    the convergence study behind the default working point. Returns
    [(ratio, fidelity), ...] in input order."""
    if len(ratios) == 0:
        raise ConfigError("sweep_detuning needs at least one ratio")
    out = []
    for ratio in ratios:
        run_cfg = replace(
            config,
            delta_over_omega=float(ratio),
            epsilon=0.0,
            collision_model="exact",
        )
        out.append((float(ratio), run_physical(run_cfg).fidelity))
    return out


@dataclass
class FeasibilityReport:
    omega_over_2pi_hz: float
    delta_over_omega: float
    lambda_over_2pi_hz: float
    gate_time_s: float
    two_gate_time_s: float
    total_time_s: float
    interaction_length_m: float
    velocity_m_per_s: float
    photon_lifetime_s: float
    lifetime_ratio: float
    flag: str
    note: str


def feasibility_report(
    omega_over_2pi,
    delta_over_omega=4.0,
    interaction_length_m=0.01,
    photon_lifetime_s=1e-3,
    total_time_override_s=None,
):
    """Timing budget of the two-collision sequence.

    All times follow from the lambda*t = pi condition. The atoms must
    cross the interaction region within the total time, which sets the
    velocity; the total time over the photon lifetime gives the
    pass/warn flag (warn at 0.5 and above). total_time_override_s
    substitutes an externally imposed budget for the derived two-gate
    time in the velocity and lifetime figures.
    """
    for name, value in (
        ("omega_over_2pi", omega_over_2pi),
        ("delta_over_omega", delta_over_omega),
        ("interaction_length_m", interaction_length_m),
        ("photon_lifetime_s", photon_lifetime_s),
    ):
        if not value > 0:
            raise ConfigError(f"{name} must be positive, got {value}")
    if total_time_override_s is not None and not total_time_override_s > 0:
        raise ConfigError(f"total_time_override_s must be positive, got {total_time_override_s}")

    params = CouplingParams.from_ratio(omega_over_2pi, delta_over_omega)
    gate_time = qpg_gate_time(params)
    two_gate = 2.0 * gate_time
    total = two_gate if total_time_override_s is None else float(total_time_override_s)
    velocity = interaction_length_m / total
    ratio = total / photon_lifetime_s
    note = (
        f"collision timing follows lambda*t = pi: {gate_time:.6e} s per gate, "
        f"{two_gate:.6e} s for two; the often quoted budgets of 2.5e-04 s for "
        "two gates and 120 us of total interaction are inconsistent with that "
        "arithmetic and are listed for comparison only"
    )
    return FeasibilityReport(
        omega_over_2pi_hz=float(omega_over_2pi),
        delta_over_omega=float(delta_over_omega),
        lambda_over_2pi_hz=params.lam / (2.0 * np.pi),
        gate_time_s=gate_time,
        two_gate_time_s=two_gate,
        total_time_s=total,
        interaction_length_m=float(interaction_length_m),
        velocity_m_per_s=velocity,
        photon_lifetime_s=float(photon_lifetime_s),
        lifetime_ratio=ratio,
        flag="pass" if ratio < 0.5 else "warn",
        note=note,
    )

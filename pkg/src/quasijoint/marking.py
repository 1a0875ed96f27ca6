"""Spin marking of the path, analyzer readout, and the measured joint statistics.

The upper-aperture amplitude is tagged by rotating a spin marker from
|right> toward |up> by the marking angle theta (theta = 0: no marking,
theta = pi/2: full which-path tagging); the lower aperture leaves the
marker in |right>.  An analyzer at angle vartheta reads the marker out
jointly with the fringe or phase measurement.

Composite amplitudes are ordered (upper,right), (upper,up), (lower,right),
(lower,up): path index 0 is the upper aperture (z = +1), spin index 0 is
|right>.  Every projection in this module uses that order.

The measured joints exist twice on purpose: once through the closed-form
analyzer coefficients (`gamma_coefficients`) and once by direct Born-rule
projection of the composite state (`born_joint_discrete`,
`born_joint_phase`).  The projection path knows nothing about the
coefficient algebra and is the reference the closed forms are tested
against; downstream modules reuse it for the same role.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from quasijoint.states import (
    OUTCOMES,
    TWO_PI,
    BinaryDistribution,
    PhaseDensity,
    PureState,
    _require_outcome,
    bloch_from_state,
)

Kind = Literal["operational", "quasi"]
OPERATIONAL: Kind = "operational"
QUASI: Kind = "quasi"

#: slack on normalization and (for operational tables) nonnegativity
JOINT_TOL = 1e-12


@dataclass(frozen=True)
class MarkerConfig:
    """Marking angle theta and analyzer angle vartheta, radians.

    Both angles are reduced mod pi into [0, pi) at construction.  For the
    analyzer this is exact: vartheta and vartheta + pi give the same
    projectors.  For the marking angle the mod-pi representative yields the
    same statistics up to the fringe relabeling x -> -x (phi -> phi + pi).
    The canonical marking regime is [0, pi/2]; values in (pi/2, pi) are
    legitimate over-rotations and are kept as given.
    """

    theta: float
    vartheta: float

    def __post_init__(self) -> None:
        for name in ("theta", "vartheta"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            reduced = value % math.pi
            if reduced >= math.pi:  # guard against float-modulo edge rounding
                reduced = 0.0
            object.__setattr__(self, name, reduced)


@dataclass(frozen=True)
class GammaCoefficients:
    """Per-analyzer-outcome coefficients of the measured joint.

    gamma_0 weights the constant term, gamma_X the fringe/phase harmonic,
    gamma_Z the path term.  gamma_X may be negative; gamma_Z(+1) equals
    gamma_Z(-1) identically, which is why the fringe marginal carries no
    path term.
    """

    g0_plus: float
    g0_minus: float
    gx_plus: float
    gx_minus: float
    gz_plus: float
    gz_minus: float

    def g0(self, z: int) -> float:
        _require_outcome(z)
        return self.g0_plus if z == 1 else self.g0_minus

    def gx(self, z: int) -> float:
        _require_outcome(z)
        return self.gx_plus if z == 1 else self.gx_minus

    def gz(self, z: int) -> float:
        _require_outcome(z)
        return self.gz_plus if z == 1 else self.gz_minus


@dataclass(frozen=True)
class CompositeState:
    """Normalized amplitudes over aperture (x) spin, basis order as in the module docstring."""

    upper_right: complex
    upper_up: complex
    lower_right: complex
    lower_up: complex

    def __post_init__(self) -> None:
        amps = [
            complex(self.upper_right),
            complex(self.upper_up),
            complex(self.lower_right),
            complex(self.lower_up),
        ]
        norm_sq = sum(abs(a) ** 2 for a in amps)
        if not math.isfinite(norm_sq) or abs(norm_sq - 1.0) > JOINT_TOL:
            raise ValueError(f"composite norm^2 = {norm_sq!r}, must be 1")
        for name, amp in zip(("upper_right", "upper_up", "lower_right", "lower_up"), amps):
            object.__setattr__(self, name, amp)

    def as_array(self) -> np.ndarray:
        """2x2 array indexed [path, spin]; path 0 = upper (z=+1), spin 0 = right."""
        return np.array(
            [[self.upper_right, self.upper_up], [self.lower_right, self.lower_up]],
            dtype=np.complex128,
        )


@dataclass(frozen=True)
class DiscreteJoint:
    """Real-valued 2x2 table over the fringe outcome x and analyzer outcome z.

    Field names spell the outcome pair: first letter x, second z, with
    p = +1 and m = -1.  kind="operational" tables are genuinely measured
    and nonnegative; kind="quasi" tables come out of the data inversion
    and may hold negative values.
    """

    pp: float
    pm: float
    mp: float
    mm: float
    kind: Kind = OPERATIONAL

    def __post_init__(self) -> None:
        if self.kind not in (OPERATIONAL, QUASI):
            raise ValueError(f"unknown joint kind {self.kind!r}")
        values = []
        for name in ("pp", "pm", "mp", "mm"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
            values.append(value)
        total = math.fsum(values)
        if abs(total - 1.0) > JOINT_TOL:
            raise ValueError(f"joint sums to {total!r}, must be 1")
        if self.kind == OPERATIONAL and min(values) < -JOINT_TOL:
            raise ValueError(
                f"operational joint has negative entry {min(values)!r}"
            )

    def value(self, x: int, z: int) -> float:
        _require_outcome(x)
        _require_outcome(z)
        return {(1, 1): self.pp, (1, -1): self.pm, (-1, 1): self.mp, (-1, -1): self.mm}[(x, z)]

    def items(self):
        """Fixed-order iteration: ((x, z), value) with x outer, +1 before -1."""
        for x in OUTCOMES:
            for z in OUTCOMES:
                yield (x, z), self.value(x, z)

    def as_array(self) -> np.ndarray:
        """2x2 array, rows x = (+1, -1), columns z = (+1, -1)."""
        return np.array([[self.pp, self.pm], [self.mp, self.mm]], dtype=float)

    @classmethod
    def from_array(cls, table: np.ndarray, kind: Kind) -> DiscreteJoint:
        arr = np.asarray(table, dtype=float)
        if arr.shape != (2, 2):
            raise ValueError(f"expected a 2x2 table, got shape {arr.shape}")
        return cls(float(arr[0, 0]), float(arr[0, 1]), float(arr[1, 0]), float(arr[1, 1]), kind=kind)


@dataclass(frozen=True)
class PhaseJoint:
    """Pair of first-harmonic phase densities, one per analyzer outcome z.

    Normalization is joint: 2*pi*(c0(+1) + c0(-1)) = 1.  Operational
    slices are individually nonnegative; quasi slices need not be.
    """

    plus: PhaseDensity
    minus: PhaseDensity
    kind: Kind = OPERATIONAL

    def __post_init__(self) -> None:
        if self.kind not in (OPERATIONAL, QUASI):
            raise ValueError(f"unknown joint kind {self.kind!r}")
        total = TWO_PI * (self.plus.c0 + self.minus.c0)
        if abs(total - 1.0) > JOINT_TOL:
            raise ValueError(f"phase joint integrates to {total!r}, must be 1")
        if self.kind == OPERATIONAL:
            for z, density in (((1), self.plus), ((-1), self.minus)):
                if not density.is_nonnegative(tol=JOINT_TOL):
                    raise ValueError(
                        f"operational z={z} slice dips to {density.min_value!r}"
                    )

    def for_z(self, z: int) -> PhaseDensity:
        _require_outcome(z)
        return self.plus if z == 1 else self.minus

    def slice_weights(self) -> tuple[float, float]:
        """Total weight of the z = +1 and z = -1 slices (they sum to 1)."""
        return (TWO_PI * self.plus.c0, TWO_PI * self.minus.c0)


def entangled_state(state: PureState, theta: float) -> CompositeState:
    """Composite state after marking: (alpha*cos(theta), alpha*sin(theta), beta, 0)."""
    return CompositeState(
        upper_right=state.alpha * math.cos(theta),
        upper_up=state.alpha * math.sin(theta),
        lower_right=state.beta,
        lower_up=0.0,
    )


def analyzer_states(vartheta: float) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal analyzer vectors for outcomes z = +1 and z = -1.

    z = +1 reads (cos(vartheta), sin(vartheta)); z = -1 the orthogonal
    (-sin(vartheta), cos(vartheta)).  Real-valued by construction.
    """
    c, s = math.cos(vartheta), math.sin(vartheta)
    return np.array([c, s]), np.array([-s, c])


def gamma_coefficients(config: MarkerConfig) -> GammaCoefficients:
    """Analyzer coefficients, kept as the literal per-outcome trigonometric forms."""
    cd = math.cos(config.vartheta - config.theta)
    sd = math.sin(config.vartheta - config.theta)
    cv = math.cos(config.vartheta)
    sv = math.sin(config.vartheta)
    return GammaCoefficients(
        g0_plus=0.5 * (cd * cd + cv * cv),
        g0_minus=0.5 * (sd * sd + sv * sv),
        gx_plus=cd * cv,
        gx_minus=sd * sv,
        gz_plus=0.5 * (cd * cd - cv * cv),
        gz_minus=0.5 * (sv * sv - sd * sd),
    )


def operational_joint_discrete(state: PureState, config: MarkerConfig) -> DiscreteJoint:
    """Measured joint P(x, z) = [gamma_0(z) + x*gamma_X(z)<X> + z*gamma_Z(z)<Z>]/2."""
    g = gamma_coefficients(config)
    e = bloch_from_state(state)

    def cell(x: int, z: int) -> float:
        return 0.5 * (g.g0(z) + x * g.gx(z) * e.ex + z * g.gz(z) * e.ez)

    return DiscreteJoint(cell(1, 1), cell(1, -1), cell(-1, 1), cell(-1, -1), kind=OPERATIONAL)


def operational_joint_phase(state: PureState, config: MarkerConfig) -> PhaseJoint:
    """Measured phase joint as one Fourier triple per analyzer outcome.

    c0(z) = [gamma_0(z) + z*gamma_Z(z)<Z>]/(2*pi), and the harmonics carry
    gamma_X(z)<X> and gamma_X(z)<Y>.
    """
    g = gamma_coefficients(config)
    e = bloch_from_state(state)

    def slice_for(z: int) -> PhaseDensity:
        return PhaseDensity(
            (g.g0(z) + z * g.gz(z) * e.ez) / TWO_PI,
            g.gx(z) * e.ex / TWO_PI,
            g.gx(z) * e.ey / TWO_PI,
        )

    return PhaseJoint(slice_for(1), slice_for(-1), kind=OPERATIONAL)


def born_joint_discrete(state: PureState, config: MarkerConfig) -> DiscreteJoint:
    """Reference path: project the composite state directly, cell by cell.

    Computes |<analyzer(z)| <x| composite>|^2 with no use of the gamma
    coefficients.
    """
    psi = entangled_state(state, config.theta).as_array()
    vectors = dict(zip(OUTCOMES, analyzer_states(config.vartheta)))
    values = {}
    for x in OUTCOMES:
        spin = (psi[0, :] + x * psi[1, :]) / math.sqrt(2.0)
        for z in OUTCOMES:
            vec = vectors[z]  # real components, no conjugation needed
            amp = vec[0] * spin[0] + vec[1] * spin[1]
            values[(x, z)] = abs(amp) ** 2
    return DiscreteJoint(
        values[(1, 1)], values[(1, -1)], values[(-1, 1)], values[(-1, -1)], kind=OPERATIONAL
    )


def born_joint_phase(state: PureState, config: MarkerConfig, phi) -> np.ndarray:
    """Reference path for the phase joint, evaluated on a phi grid.

    Returns an array of shape (len(phi), 2) holding
    |<analyzer(z)| <phi| composite>|^2 with columns z = (+1, -1).
    """
    psi = entangled_state(state, config.theta).as_array()
    plus_vec, minus_vec = analyzer_states(config.vartheta)
    phi_arr = np.atleast_1d(np.asarray(phi, dtype=float))
    lower_phase = np.exp(-1j * phi_arr)[:, None]  # conjugate of the lower-slit factor
    spin = (psi[0, :][None, :] + lower_phase * psi[1, :][None, :]) / math.sqrt(TWO_PI)
    out = np.empty((phi_arr.size, 2))
    for col, vec in enumerate((plus_vec, minus_vec)):
        out[:, col] = np.abs(spin @ vec.astype(np.complex128)) ** 2
    return out


def marginal_x(joint: DiscreteJoint) -> BinaryDistribution:
    """Fringe marginal; for operational joints this is (1 + x*cos(theta)<X>)/2."""
    return BinaryDistribution(joint.pp + joint.pm, joint.mp + joint.mm)


def marginal_z(joint: DiscreteJoint) -> BinaryDistribution:
    """Analyzer marginal; for operational joints, gamma_0(z) + z*gamma_Z(z)<Z>."""
    return BinaryDistribution(joint.pp + joint.mp, joint.pm + joint.mm)


def marginal_phase(joint: PhaseJoint) -> PhaseDensity:
    """Phase marginal: the z slices summed coefficient-wise."""
    return PhaseDensity(
        joint.plus.c0 + joint.minus.c0,
        joint.plus.c_cos + joint.minus.c_cos,
        joint.plus.c_sin + joint.minus.c_sin,
    )


def marginal_z_of_phase(joint: PhaseJoint) -> BinaryDistribution:
    """Analyzer marginal of the phase joint: slice weights 2*pi*c0(z)."""
    w_plus, w_minus = joint.slice_weights()
    return BinaryDistribution(w_plus, w_minus)

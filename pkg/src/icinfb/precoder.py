"""Interference-nulling beamformer construction and rate evaluation.

Each base station stacks the direction it serves and the directions along
which it interferes with neighboring cells' users, and beamforms in the
null space of the latter. Inner products are conjugate-transpose (a^H b)
throughout the package.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, SingularMatrixError
from .numerics import right_pseudo_inverse

__all__ = ["Beamformer", "CellSideInfo", "icin_beamformer", "sinr", "sum_rate"]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class Beamformer:
    """Unit-norm transmit beamforming vector."""

    vector: np.ndarray


@dataclass(frozen=True)
class CellSideInfo:
    """CSI available at one base station for beamformer construction.

    desired_direction is the (possibly quantized, delayed) direction of the
    served user's channel; caused_interference holds the directions along
    which this base station interferes with each neighboring cell's user.
    """

    desired_direction: np.ndarray
    caused_interference: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(
            self, "desired_direction",
            np.asarray(self.desired_direction, dtype=np.complex128),
        )
        object.__setattr__(
            self, "caused_interference",
            tuple(np.asarray(g, dtype=np.complex128) for g in self.caused_interference),
        )


def icin_beamformer(info: CellSideInfo) -> Beamformer:
    """Zero-forcing beam: serve the desired direction, null the caused ones.

    The desired direction and the caused-interference directions are
    stacked (conjugated) as rows of a K x Nt matrix; the beam is the first
    column of the right pseudo-inverse, renormalized. The result is the
    unit-norm projection of the desired direction onto the null space of
    the caused-interference directions, so <g, f> = 0 for every caused
    direction g. When K == Nt the null space is one-dimensional and the
    beam no longer depends on the desired direction (up to phase).

    Raises
    ------
    CapacityError
        If there are more stacked directions than antennas.
    SingularMatrixError
        If the stacked directions are too close to linearly dependent.
    """
    desired = info.desired_direction
    nt = desired.shape[-1]
    k = 1 + len(info.caused_interference)
    if k > nt:
        raise CapacityError(
            f"cannot null {k - 1} interference directions with {nt} antennas"
        )
    stack = np.conj(np.vstack([desired, *info.caused_interference]))
    pinv = right_pseudo_inverse(stack)
    f = pinv[:, 0]
    return Beamformer(f / np.linalg.norm(f))


def _nulling_beams(direction_stacks: np.ndarray, cond_cap: float = 1e12) -> np.ndarray:
    """Batched icin_beamformer for the simulation hot path.

    direction_stacks has shape (m, k, nt); element [i] holds the k
    directions of one cell's stack (desired first, unconjugated). Returns
    (m, nt) unit beams, each equal to icin_beamformer applied to the
    corresponding stack. Kept next to icin_beamformer so the two routes
    cannot drift apart unnoticed; tests assert their agreement.
    """
    stacks = np.conj(direction_stacks)
    k, nt = stacks.shape[-2], stacks.shape[-1]
    if k > nt:
        raise CapacityError(
            f"cannot null {k - 1} interference directions with {nt} antennas")
    gram = stacks @ stacks.conj().transpose(0, 2, 1)
    cond = np.linalg.cond(gram)
    if not np.all(np.isfinite(cond) & (cond < cond_cap)):
        raise SingularMatrixError(
            f"stack Gram condition number {np.max(cond):.6e} exceeds {cond_cap:.1e}")
    beams = np.conj(np.linalg.solve(gram, stacks)[:, 0, :])
    return beams / np.linalg.norm(beams, axis=1, keepdims=True)


def sinr(desired_channel, desired_beam, interferer_channels, interferer_beams,
         rho: float, alphas) -> float:
    """Signal-to-interference-plus-noise ratio of the evaluated user.

        rho |h^H f|^2 / (1 + rho * sum_l alpha_l |g_l^H f_l|^2)

    where h is the user's channel from its serving base station with beam
    f, and g_l is its channel from interfering base station l with beam
    f_l.
    """
    rho = float(rho)
    if rho < 0:
        raise ValueError(f"rho must be >= 0, got {rho}")
    if len(interferer_channels) != len(interferer_beams) or len(interferer_beams) != len(alphas):
        raise ValueError("interferer channels, beams and alphas must have equal length")
    signal = rho * abs(np.vdot(desired_channel, desired_beam)) ** 2
    interference = 0.0
    for g, f, alpha in zip(interferer_channels, interferer_beams, alphas):
        interference += float(alpha) * abs(np.vdot(g, f)) ** 2
    return signal / (1.0 + rho * interference)


def sum_rate(sinrs) -> float:
    """Sum of log2(1 + SINR) over users, in bits/s/Hz."""
    total = 0.0
    for s in sinrs:
        s = float(s)
        if s < 0:
            raise ValueError(f"SINR must be >= 0, got {s}")
        total += math.log1p(s) / _LN2
    return total

"""Single-qubit Hermitian observables and their correlation on a two-qubit state.

The dense 4x4 route here is the ground truth the construction is checked
against; it deliberately avoids the expanded polynomial forms.
"""
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateObservable, NonHermitianInput
from .quantum_state import Amplitudes, wrap_phase

logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-24
IMAG_WARN = 1e-12
IMAG_FAIL = 1e-10

I2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


@dataclass(frozen=True)
class ObservableParams:
    """[[center + eps, offdiag e^{i phase}], [offdiag e^{-i phase}, center - eps]]"""

    center: float
    eps: float
    offdiag: float
    phase: float

    @classmethod
    def signed(cls, center: float, eps: float, offdiag: float, phase: float) -> "ObservableParams":
        """Accept a signed off-diagonal value; a negative one moves into the phase."""
        if offdiag < 0.0:
            return cls(center, eps, -offdiag, wrap_phase(phase + math.pi))
        return cls(center, eps, offdiag, wrap_phase(phase))

    def to_json(self) -> dict:
        return {"center": self.center, "eps": self.eps, "offdiag": self.offdiag, "phase": self.phase}

    @classmethod
    def from_json(cls, obj: dict) -> "ObservableParams":
        return cls.signed(
            float(obj.get("center", 0.0)),
            float(obj["eps"]),
            float(obj["offdiag"]),
            float(obj.get("phase", 0.0)),
        )


@dataclass(frozen=True)
class HermitianObservable:
    m11: float
    m12: complex
    m21: complex
    m22: float

    def __post_init__(self):
        if abs(self.m21 - self.m12.conjugate()) > 1e-14:
            raise NonHermitianInput(f"m21={self.m21} is not conj(m12)={self.m12.conjugate()}")

    @classmethod
    def from_matrix(cls, m) -> "HermitianObservable":
        m = np.asarray(m, dtype=np.complex128)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        if abs(m[0, 0].imag) > 1e-14 or abs(m[1, 1].imag) > 1e-14:
            raise NonHermitianInput("diagonal entries must be real")
        return cls(float(m[0, 0].real), complex(m[0, 1]), complex(m[1, 0]), float(m[1, 1].real))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=np.complex128)

    def to_json(self) -> list:
        return [[[z.real, z.imag] for z in row] for row in self.matrix.tolist()]


@dataclass(frozen=True)
class CorrelationReport:
    e_xy: float
    e_x: float
    e_y: float
    covariance: float

    def to_json(self) -> dict:
        return {"e_xy": self.e_xy, "e_x": self.e_x, "e_y": self.e_y, "covariance": self.covariance}


def assemble(params: ObservableParams) -> HermitianObservable:
    if params.eps ** 2 + params.offdiag ** 2 <= DEGENERACY_TOL:
        raise DegenerateObservable(
            f"eps={params.eps}, offdiag={params.offdiag}: observable has one eigenvalue"
        )
    m12 = params.offdiag * cmath.exp(1j * params.phase)
    return HermitianObservable(
        params.center + params.eps, m12, m12.conjugate(), params.center - params.eps
    )


def local_pair(qa: HermitianObservable, rb: HermitianObservable) -> tuple[np.ndarray, np.ndarray]:
    """X = Q (x) 1 acting on particle A, Y = 1 (x) R acting on particle B."""
    return np.kron(qa.matrix, I2), np.kron(I2, rb.matrix)


def expectation(state: Amplitudes, op: np.ndarray) -> float:
    """<psi|op|psi> for a normalized state; the imaginary part must vanish."""
    psi = state.vector
    value = np.vdot(psi, op @ psi)
    residue = abs(value.imag)
    if residue > IMAG_FAIL:
        raise NonHermitianInput(f"expectation has imaginary part {value.imag!r}")
    if residue > IMAG_WARN:
        logger.warning("expectation imaginary residue %.3e above %.0e", residue, IMAG_WARN)
    return float(value.real)


def covariance(state: Amplitudes, qa: HermitianObservable, rb: HermitianObservable) -> CorrelationReport:
    x, y = local_pair(qa, rb)
    e_xy = expectation(state, x @ y)
    e_x = expectation(state, x)
    e_y = expectation(state, y)
    return CorrelationReport(e_xy, e_x, e_y, e_xy - e_x * e_y)

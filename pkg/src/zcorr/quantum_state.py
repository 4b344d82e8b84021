"""Two-qubit pure states in the (alpha, beta, gamma, delta, phi, kappa, lambda) form.

The state is

    alpha|11> + beta e^{i phi}|12> + gamma e^{i kappa}|21> + delta e^{i lambda}|22>

with real (possibly signed) amplitudes and phases in [0, 2pi).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, fields
from typing import Iterable

import numpy as np

from .errors import NonFinite, NormViolation, ZeroVector

TWO_PI = 2.0 * math.pi
NORM_TOL = 1e-9
SEP_TOL = 1e-12


def wrap_phase(theta: float) -> float:
    """Map an angle into [0, 2pi)."""
    w = math.fmod(theta, TWO_PI)
    if w < 0.0:
        w += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2pi
    if w >= TWO_PI:
        w = 0.0
    return w


def angular_distance(a: float, b: float) -> float:
    """Shortest distance between two angles on the circle, in [0, pi]."""
    d = wrap_phase(a - b)
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class StateParams:
    alpha: float
    beta: float
    gamma: float
    delta: float
    phi: float = 0.0
    kappa: float = 0.0
    lam: float = 0.0

    @property
    def magnitudes(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    @property
    def is_signed(self) -> bool:
        return any(m < 0.0 for m in self.magnitudes)

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "delta": self.delta,
            "phi": self.phi,
            "kappa": self.kappa,
            "lambda": self.lam,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "StateParams":
        return cls(
            float(obj["alpha"]),
            float(obj["beta"]),
            float(obj["gamma"]),
            float(obj["delta"]),
            float(obj.get("phi", 0.0)),
            float(obj.get("kappa", 0.0)),
            float(obj.get("lambda", 0.0)),
        )


@dataclass(frozen=True)
class Amplitudes:
    """Coefficients of |a_i> (x) |b_j> in the order 11, 12, 21, 22."""

    omega11: complex
    omega12: complex
    omega21: complex
    omega22: complex

    @classmethod
    def from_vector(cls, vec: Iterable[complex]) -> "Amplitudes":
        w = [complex(x) for x in vec]
        if len(w) != 4:
            raise ValueError(f"expected 4 amplitudes, got {len(w)}")
        return cls(*w)

    @property
    def vector(self) -> np.ndarray:
        return np.array(
            [self.omega11, self.omega12, self.omega21, self.omega22], dtype=np.complex128
        )

    @property
    def norm_sq(self) -> float:
        return sum(abs(getattr(self, f.name)) ** 2 for f in fields(self))

    def determinant(self) -> complex:
        return self.omega11 * self.omega22 - self.omega12 * self.omega21

    def to_json(self) -> dict:
        return {"amplitudes": [[w.real, w.imag] for w in self.vector.tolist()]}

    @classmethod
    def from_json(cls, obj: dict) -> "Amplitudes":
        pairs = obj["amplitudes"]
        return cls.from_vector(complex(float(re), float(im)) for re, im in pairs)


@dataclass(frozen=True)
class SeparabilityReport:
    is_separable: bool
    determinant_magnitude: float
    criterion_residuals: tuple[float, float]

    def to_json(self) -> dict:
        return {
            "is_separable": self.is_separable,
            "determinant_magnitude": self.determinant_magnitude,
            "criterion_residuals": list(self.criterion_residuals),
        }


def validate(params: StateParams) -> StateParams:
    """Check finiteness and norm; wrap phases and renormalize the amplitudes.

    Raises NonFinite for NaN/inf fields and NormViolation when the squared
    amplitudes miss 1 by more than 1e-9.
    """
    values = [getattr(params, f.name) for f in fields(params)]
    if not all(math.isfinite(v) for v in values):
        raise NonFinite(f"non-finite state parameter in {params}")
    mags = params.magnitudes
    total = math.fsum(m * m for m in mags)
    if abs(total - 1.0) > NORM_TOL:
        raise NormViolation(f"sum of squared amplitudes is {total!r}, expected 1")
    scale = 1.0 / math.sqrt(total)
    a, b, g, d = (m * scale for m in mags)
    return StateParams(
        a, b, g, d, wrap_phase(params.phi), wrap_phase(params.kappa), wrap_phase(params.lam)
    )


def to_amplitudes(params: StateParams) -> Amplitudes:
    return Amplitudes(
        complex(params.alpha),
        params.beta * cmath.exp(1j * params.phi),
        params.gamma * cmath.exp(1j * params.kappa),
        params.delta * cmath.exp(1j * params.lam),
    )


def from_amplitudes(amps: Amplitudes) -> StateParams:
    """Canonical parameters: nonnegative magnitudes, global phase removed.

    The global phase is fixed by rotating the first nonzero amplitude (in the
    order 11, 12, 21, 22) onto the positive real axis. Phases of zero
    amplitudes are set to 0.
    """
    w = amps.vector
    if not np.all(np.isfinite(w)):
        raise NonFinite("non-finite amplitude")
    nonzero = np.flatnonzero(w)
    if nonzero.size == 0:
        raise ZeroVector("all amplitudes are zero")
    w = w / np.linalg.norm(w)
    ref = cmath.phase(w[nonzero[0]])
    mags = [float(abs(x)) for x in w]
    phases = [wrap_phase(cmath.phase(x) - ref) if x != 0 else 0.0 for x in w]
    # the reference amplitude is real-positive by construction
    phases[nonzero[0]] = 0.0
    # omega11 carries no phase parameter: a nonzero omega11 is always the reference
    return StateParams(mags[0], mags[1], mags[2], mags[3], phases[1], phases[2], phases[3])


def canonicalize(params: StateParams) -> StateParams:
    """Same physical state with nonnegative magnitudes (signs moved into phases)."""
    return from_amplitudes(to_amplitudes(params))


def separability(params: StateParams, tol: float = SEP_TOL) -> SeparabilityReport:
    """Determinant test |w11 w22 - w12 w21| <= tol.

    The residuals of the two-condition form (alpha*delta = beta*gamma and
    lambda = phi + kappa mod 2pi) are reported alongside; they are
    informative only and do not drive the verdict.
    """
    det = abs(to_amplitudes(params).determinant())
    r_amp = abs(params.alpha * params.delta - params.beta * params.gamma)
    r_phase = angular_distance(params.lam, params.phi + params.kappa)
    return SeparabilityReport(det <= tol, det, (r_amp, r_phase))


def paper_separable(params: StateParams, tol: float = SEP_TOL, phase_tol: float = 1e-8) -> bool | None:
    """Two-condition separability test; None where the phase condition is undefined.

    The phase condition carries no information when alpha*delta and
    beta*gamma both vanish, so no verdict is given there.
    """
    ad = params.alpha * params.delta
    bg = params.beta * params.gamma
    if abs(ad) <= tol and abs(bg) <= tol:
        return None
    return abs(ad - bg) <= tol and angular_distance(params.lam, params.phi + params.kappa) <= phase_tol

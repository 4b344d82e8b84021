"""Two binary random variables: covariance versus independence.

For a 2x2 joint distribution the covariance factorizes as

    Cov[X, Y] = (x1 - x2)(y1 - y2)(p11 p22 - p12 p21)

so with distinct outcome values it vanishes exactly when the variables are
independent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateValues, InvalidDistribution, NonFinite

PROB_TOL = 1e-12
VALUE_SEP = 1e-12
FACTOR_TOL = 1e-13


@dataclass(frozen=True)
class JointDist2x2:
    p11: float
    p12: float
    p21: float
    p22: float
    x1: float
    x2: float
    y1: float
    y2: float

    def __post_init__(self):
        vals = (self.p11, self.p12, self.p21, self.p22, self.x1, self.x2, self.y1, self.y2)
        if not all(math.isfinite(v) for v in vals):
            raise NonFinite("non-finite entry in joint distribution")
        probs = self.probs
        if min(probs) < -PROB_TOL or abs(math.fsum(probs) - 1.0) > PROB_TOL:
            raise InvalidDistribution(f"not a probability distribution: {probs}")
        if abs(self.x1 - self.x2) <= VALUE_SEP or abs(self.y1 - self.y2) <= VALUE_SEP:
            raise DegenerateValues(
                f"values must be distinct: x=({self.x1}, {self.x2}), y=({self.y1}, {self.y2})"
            )

    @property
    def probs(self) -> tuple[float, float, float, float]:
        return (self.p11, self.p12, self.p21, self.p22)

    @property
    def det(self) -> float:
        return self.p11 * self.p22 - self.p12 * self.p21

    @classmethod
    def from_json(cls, obj: dict) -> "JointDist2x2":
        p, x, y = obj["p"], obj["x"], obj["y"]
        if len(p) != 4 or len(x) != 2 or len(y) != 2:
            raise InvalidDistribution("expected p of length 4, x and y of length 2")
        return cls(*(float(v) for v in (*p, *x, *y)))

    def to_json(self) -> dict:
        return {"p": list(self.probs), "x": [self.x1, self.x2], "y": [self.y1, self.y2]}


@dataclass(frozen=True)
class ClassicalReport:
    e_x: float
    e_y: float
    e_xy: float
    covariance: float
    is_independent: bool
    det: float

    def to_json(self) -> dict:
        return {
            "e_x": self.e_x,
            "e_y": self.e_y,
            "e_xy": self.e_xy,
            "covariance": self.covariance,
            "is_independent": self.is_independent,
            "det": self.det,
        }


def marginals(d: JointDist2x2) -> tuple[float, float, float, float]:
    """(P(x1), P(x2), P(y1), P(y2))"""
    return (d.p11 + d.p12, d.p21 + d.p22, d.p11 + d.p21, d.p12 + d.p22)


def analyze(d: JointDist2x2, tol: float = PROB_TOL) -> ClassicalReport:
    """Expectations by direct summation; independence from the determinant.

    Also checks the closed-form factorization of the covariance and raises
    ArithmeticError if the two disagree beyond rounding.
    """
    px1, px2, py1, py2 = marginals(d)
    e_x = px1 * d.x1 + px2 * d.x2
    e_y = py1 * d.y1 + py2 * d.y2
    e_xy = math.fsum(
        (d.p11 * d.x1 * d.y1, d.p12 * d.x1 * d.y2, d.p21 * d.x2 * d.y1, d.p22 * d.x2 * d.y2)
    )
    cov = e_xy - e_x * e_y
    det = d.det
    factored = (d.x1 - d.x2) * (d.y1 - d.y2) * det
    # rounding in e_xy grows with the outcome magnitudes
    mag = max(1.0, max(abs(d.x1), abs(d.x2)) * max(abs(d.y1), abs(d.y2)))
    if abs(cov - factored) > FACTOR_TOL * mag:
        raise ArithmeticError(f"covariance {cov!r} does not match factorized form {factored!r}")
    return ClassicalReport(e_x, e_y, e_xy, cov, abs(det) <= tol, det)


def dependence_gap(d: JointDist2x2) -> float:
    """|Cov[X, Y]|, which equals |x1 - x2| |y1 - y2| |det| and so is > 0 under dependence."""
    return abs(analyze(d).covariance)


def product_distribution(px1: float, py1: float, x: tuple[float, float], y: tuple[float, float]) -> JointDist2x2:
    """Independent joint distribution with the given marginals."""
    px2, py2 = 1.0 - px1, 1.0 - py1
    return JointDist2x2(px1 * py1, px1 * py2, px2 * py1, px2 * py2, x[0], x[1], y[0], y[1])

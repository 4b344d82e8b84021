"""Zero-correlation observable pairs for any two-qubit pure state.

With the off-diagonal phases pinned to

    s = (phi - kappa - lambda) / 2,    v = (kappa - phi - lambda) / 2

and Q = Q0 + eps sigma_z-part, R = R0 + eta sigma_z-part, the covariance of
X = Q (x) 1 and Y = 1 (x) R reduces to a bilinear condition in
(eps, eta, q, r) whose coefficients depend on the amplitudes and on
xi = cos((lambda - phi - kappa) / 2). States are sorted into a case tree on
the vanishing of

    D = ad - bg,  S = ad + bg,  A = ab - gd,  B = ag - bd

(a, b, g, d = alpha, beta, gamma, delta) and each case gets an explicit
solution.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import DegenerateObservable, UnclassifiableState
from .observables import DEGENERACY_TOL, CorrelationReport, ObservableParams, assemble, covariance
from .quantum_state import StateParams, canonicalize, to_amplitudes, wrap_phase

DEFAULT_TOL = 1e-9
# covariance == ZCE3_FACTOR * zce3_residual, fixed against the 4x4 oracle
ZCE3_FACTOR = 2.0


class CaseLabel(enum.Enum):
    C311 = "3.1.1"
    C312i_optA = "3.1.2(i)-A"
    C312i_optB = "3.1.2(i)-B"
    C312ii = "3.1.2(ii)"
    C312iii = "3.1.2(iii)"
    C312iv_a = "3.1.2(iv-a)"
    C312iv_b = "3.1.2(iv-b)"
    C312iv_c_generic = "3.1.2(iv-c)"
    C312iv_c_degenerate = "3.1.2(iv-c)-degenerate"
    C321 = "3.2.1"
    C322 = "3.2.2"
    C331 = "3.3.1"
    C332 = "3.3.2"
    C341_separable = "3.4.1"
    C342i = "3.4.2(i)"
    C342ii = "3.4.2(ii)"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ConstructionOptions:
    scale: float = 1.0
    q0: float = 0.0
    r0: float = 0.0
    tol: float = DEFAULT_TOL
    prefer_option: str = "auto"

    def __post_init__(self):
        if not math.isfinite(self.scale) or self.scale == 0.0:
            raise ValueError(f"scale must be finite and nonzero, got {self.scale}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.prefer_option not in ("auto", "A", "B"):
            raise ValueError(f"prefer_option must be auto, A or B, got {self.prefer_option!r}")

    def to_json(self) -> dict:
        return {
            "scale": self.scale,
            "q0": self.q0,
            "r0": self.r0,
            "tol": self.tol,
            "prefer_option": self.prefer_option,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ConstructionOptions":
        return cls(**{k: obj[k] for k in ("scale", "q0", "r0", "tol", "prefer_option") if k in obj})


@dataclass(frozen=True)
class Guards:
    D: float
    S: float
    A: float
    B: float
    C: float
    E: float
    xi: float

    @classmethod
    def of(cls, p: StateParams) -> "Guards":
        a, b, g, d = p.magnitudes
        return cls(
            D=a * d - b * g,
            S=a * d + b * g,
            A=a * b - g * d,
            B=a * g - b * d,
            C=a * g + b * d,
            E=a * b + g * d,
            xi=xi_of(p),
        )


@dataclass(frozen=True)
class Classification:
    """A case label plus the parameters its guards were evaluated on.

    ``params`` differs from the input only when a signed state had to be
    canonicalized to find its (iv) sub-case. ``sensitive`` marks states with
    a guard quantity inside (tol, 10 tol].
    """

    case: CaseLabel
    params: StateParams
    xi: float
    canonicalized: bool = False
    sensitive: bool = False


@dataclass(frozen=True)
class ConstructionResult:
    case: CaseLabel
    qa_params: ObservableParams
    rb_params: ObservableParams
    xi: float
    free_choices: dict = field(default_factory=dict)
    canonicalized: bool = False
    sensitive: bool = False

    def to_json(self, covariance_check: float | None = None) -> dict:
        out = {
            "case": self.case.value,
            "qa": self.qa_params.to_json(),
            "rb": self.rb_params.to_json(),
            "xi": self.xi,
        }
        if covariance_check is not None:
            out["covariance_check"] = covariance_check
        out["free_choices"] = self.free_choices
        out["canonicalized"] = self.canonicalized
        out["sensitive"] = self.sensitive
        return out


def xi_of(params: StateParams) -> float:
    return math.cos(0.5 * (params.lam - params.phi - params.kappa))


def substituted_phases(params: StateParams) -> tuple[float, float]:
    """Off-diagonal phases (s, v) that remove all phase dependence except xi."""
    s = 0.5 * (-params.kappa + params.phi - params.lam)
    v = 0.5 * (params.kappa - params.phi - params.lam)
    return wrap_phase(s), wrap_phase(v)


class _GuardTracker:
    def __init__(self, tol: float):
        self.tol = tol
        self.sensitive = False

    def zero(self, x: float) -> bool:
        ax = abs(x)
        if self.tol < ax <= 10.0 * self.tol:
            self.sensitive = True
        return ax <= self.tol


def _classify_iv(p: StateParams, g: Guards, t: _GuardTracker) -> CaseLabel | None:
    a, b, c, d = p.magnitudes
    if t.zero(a) and t.zero(d):
        return CaseLabel.C312iv_a
    if t.zero(b) and t.zero(c):
        return CaseLabel.C312iv_b
    if t.zero(a - d) and t.zero(b - c):
        if t.zero(16.0 * a * a * b * b * g.xi * g.xi - 1.0):
            return CaseLabel.C312iv_c_degenerate
        return CaseLabel.C312iv_c_generic
    return None


def classification(
    params: StateParams, tol: float = DEFAULT_TOL, prefer_option: str = "auto"
) -> Classification:
    """Place a validated state in the case tree.

    Guards are evaluated top-down: (D, xi) first, then S, A, B and the (iv)
    sub-cases. A quantity counts as zero when its magnitude is <= tol.
    """
    return _classify(params, tol, prefer_option, canonicalized=False)


def _classify(p: StateParams, tol: float, prefer: str, canonicalized: bool) -> Classification:
    g = Guards.of(p)
    t = _GuardTracker(tol)

    def done(label: CaseLabel) -> Classification:
        return Classification(label, p, g.xi, canonicalized, t.sensitive)

    d_zero = t.zero(g.D)
    xi_zero = t.zero(g.xi)

    if not d_zero and not xi_zero:
        if t.zero(g.S):
            return done(CaseLabel.C311)
        a_zero, b_zero = t.zero(g.A), t.zero(g.B)
        if not a_zero and not b_zero:
            if prefer == "A" or (prefer == "auto" and abs(g.A) >= abs(g.B)):
                return done(CaseLabel.C312i_optA)
            return done(CaseLabel.C312i_optB)
        if not a_zero:
            return done(CaseLabel.C312ii)
        if not b_zero:
            return done(CaseLabel.C312iii)
        label = _classify_iv(p, g, t)
        if label is not None:
            return done(label)
        # (a)/(b)/(c) only exhaust (iv) for nonnegative amplitudes
        if p.is_signed and not canonicalized:
            return _classify(canonicalize(p), tol, prefer, canonicalized=True)
        # nonnegative but near a sub-case boundary: take the closest sub-case
        a, b, c, d = p.magnitudes
        dist = {
            CaseLabel.C312iv_a: max(abs(a), abs(d)),
            CaseLabel.C312iv_b: max(abs(b), abs(c)),
            CaseLabel.C312iv_c_generic: max(abs(a - d), abs(b - c)),
        }
        label = min(dist, key=dist.get)
        if label is CaseLabel.C312iv_c_generic and t.zero(16.0 * a * a * b * b * g.xi**2 - 1.0):
            label = CaseLabel.C312iv_c_degenerate
        return Classification(label, p, g.xi, canonicalized, True)

    if not d_zero and xi_zero:
        return done(CaseLabel.C321 if t.zero(g.S) else CaseLabel.C322)

    if d_zero and xi_zero:
        return done(CaseLabel.C331 if t.zero(p.beta * p.gamma) else CaseLabel.C332)

    if d_zero and not xi_zero:
        # xi = -1 is the same separable condition with lambda shifted by 2pi
        if t.zero(g.xi * g.xi - 1.0):
            return done(CaseLabel.C341_separable)
        if t.zero(p.beta * p.gamma - g.xi**2 * g.C * g.E):
            return done(CaseLabel.C342i)
        return done(CaseLabel.C342ii)

    raise UnclassifiableState(f"no case matched {p} (guards {g})")


def classify(params: StateParams, tol: float = DEFAULT_TOL, prefer_option: str = "auto") -> CaseLabel:
    return classification(params, tol, prefer_option).case


def _solve_product(c_ee: float, c_qr: float, m: float) -> tuple[float, float, float, float, str | None]:
    """Solve c_ee * eps*eta = c_qr * q*r starting from eps = eta = q = r = m.

    Whichever of eps, r has the larger coefficient in front of it is solved
    for, to avoid dividing by a small number. Ties (to rounding) go to eps.
    """
    eps = eta = q = r = m
    if c_ee == 0.0 and c_qr == 0.0:
        return eps, eta, q, r, None
    if abs(c_ee) >= abs(c_qr) * (1.0 - 1e-12):
        return c_qr * q * r / (c_ee * eta), eta, q, r, "eps"
    return eps, eta, q, c_ee * eps * eta / (c_qr * q), "r"


_CONSTRAINTS = {
    CaseLabel.C311: "q = r = 0",
    CaseLabel.C312i_optA: "r = 0, (ad+bg) eps = xi (ab-gd) q",
    CaseLabel.C312i_optB: "q = 0, (ad+bg) eta = xi (ag-bd) r",
    CaseLabel.C312ii: "eta = 0, q = 0",
    CaseLabel.C312iii: "eps = 0, r = 0",
    CaseLabel.C312iv_a: "2 bg eps eta = q r",
    CaseLabel.C312iv_b: "-2 ad eps eta = q r",
    CaseLabel.C312iv_c_generic: "2 (a^2-b^2) eps eta = (16 a^2 b^2 xi^2 - 1) q r",
    CaseLabel.C312iv_c_degenerate: "eps eta = 0",
    CaseLabel.C321: "none",
    CaseLabel.C322: "-2 (ad-bg) eps eta = q r",
    CaseLabel.C331: "none",
    CaseLabel.C332: "q r = 0",
    CaseLabel.C341_separable: "none",
    CaseLabel.C342i: "none",
    CaseLabel.C342ii: "q r = 0",
}


def construct(params: StateParams, options: ConstructionOptions | None = None) -> ConstructionResult:
    """Observable parameters with zero covariance on ``params``.

    ``params`` must already be validated. Every free magnitude is set to
    ``options.scale``; where a case fixes a product, one factor is solved
    for. The centers Q0, R0 never enter the condition and come straight from
    the options.
    """
    opts = options or ConstructionOptions()
    cl = classification(params, opts.tol, opts.prefer_option)
    p, case, m = cl.params, cl.case, opts.scale
    g = Guards.of(p)
    solved = None
    free = ["eps", "eta", "q", "r"]

    if case is CaseLabel.C311:
        eps, eta, q, r = m, m, 0.0, 0.0
        free = ["eps", "eta"]
    elif case is CaseLabel.C312i_optA:
        q, eta, r = m, m, 0.0
        eps = q * g.xi * g.A / g.S
        solved, free = "eps", ["eta", "q"]
    elif case is CaseLabel.C312i_optB:
        eps, r, q = m, m, 0.0
        eta = r * g.xi * g.B / g.S
        solved, free = "eta", ["eps", "r"]
    elif case is CaseLabel.C312ii:
        eps, eta, q, r = m, 0.0, 0.0, m
        free = ["eps", "r"]
    elif case is CaseLabel.C312iii:
        eps, eta, q, r = 0.0, m, m, 0.0
        free = ["eta", "q"]
    elif case in (
        CaseLabel.C312iv_a,
        CaseLabel.C312iv_b,
        CaseLabel.C312iv_c_generic,
        CaseLabel.C312iv_c_degenerate,
    ):
        # With A = B = 0 the condition is 2DS eps eta = (2CE xi^2 - S) q r,
        # which is each sub-case's equation up to a common nonzero factor.
        c_ee = 2.0 * g.D * g.S
        c_qr = 2.0 * g.C * g.E * g.xi**2 - g.S
        if case is CaseLabel.C312iv_c_degenerate:
            # c_qr is zero to within tol here; eps comes out ~0, i.e. eps*eta = 0,
            # while q = r = scale keep both observables non-degenerate
            eta = q = r = m
            eps = c_qr * q * r / (c_ee * eta)
            solved = "eps"
        else:
            eps, eta, q, r, solved = _solve_product(c_ee, c_qr, m)
    elif case is CaseLabel.C322:
        eps, eta, q, r, solved = _solve_product(-2.0 * g.D, 1.0, m)
    elif case in (CaseLabel.C332, CaseLabel.C342ii):
        eps, eta, q, r = m, m, 0.0, m
        free = ["eps", "eta", "r"]
    else:
        # C321, C331, C341_separable, C342i: any observables work
        eps = eta = q = r = m

    if solved in free:
        free = [f for f in free if f != solved]

    if eps * eps + q * q <= DEGENERACY_TOL or eta * eta + r * r <= DEGENERACY_TOL:
        raise DegenerateObservable(f"case {case.value} produced a degenerate observable")

    s, v = substituted_phases(p)
    return ConstructionResult(
        case=case,
        qa_params=ObservableParams.signed(opts.q0, eps, q, s),
        rb_params=ObservableParams.signed(opts.r0, eta, r, v),
        xi=cl.xi,
        free_choices={
            "eps": eps,
            "eta": eta,
            "q": q,
            "r": r,
            "free": free,
            "solved": solved,
            "constraint": _CONSTRAINTS[case],
        },
        canonicalized=cl.canonicalized,
        sensitive=cl.sensitive,
    )


def verify(params: StateParams, result: ConstructionResult) -> CorrelationReport:
    """Covariance of the constructed pair on ``params`` via the 4x4 oracle."""
    return covariance(to_amplitudes(params), assemble(result.qa_params), assemble(result.rb_params))


def zce2_residual(params: StateParams, qa: ObservableParams, rb: ObservableParams) -> float:
    """Expanded <XY> - <X><Y> written out in the state and observable parameters.

    Holds for arbitrary inputs, not only solutions; agrees with the 4x4
    covariance to rounding.
    """
    a, b, g, d = params.magnitudes
    ph, ka, la = params.phi, params.kappa, params.lam
    qp, qm, q, s = qa.center + qa.eps, qa.center - qa.eps, qa.offdiag, qa.phase
    rp, rm, r, v = rb.center + rb.eps, rb.center - rb.eps, rb.offdiag, rb.phase
    cos = math.cos

    c_ab = 2 * a * b * cos(ph + v)
    c_ag = 2 * a * g * cos(ka + s)
    c_bd = 2 * b * d * cos(la - ph + s)
    c_gd = 2 * g * d * cos(la - ka + v)

    lhs = (
        a * a * qp * rp
        + b * b * qp * rm
        + g * g * qm * rp
        + d * d * qm * rm
        + c_ab * qp * r
        + c_ag * q * rp
        + c_bd * q * rm
        + c_gd * qm * r
        + 2 * a * d * cos(la + s + v) * q * r
        + 2 * b * g * cos(ka - ph + s - v) * q * r
    )
    ex = (a * a + b * b) * qp + (g * g + d * d) * qm + (c_ag + c_bd) * q
    ey = (a * a + g * g) * rp + (b * b + d * d) * rm + (c_ab + c_gd) * r
    return lhs - ex * ey


def zce3_residual(params: StateParams, eps: float, eta: float, q: float, r: float) -> float:
    """Reduced zero-correlation condition, LHS - RHS.

    Assumes the off-diagonal phases from :func:`substituted_phases`. Under
    that substitution the 4x4 covariance equals ``ZCE3_FACTOR`` times this
    value for every input, so the two vanish together.
    """
    gd = Guards.of(params)
    lhs = 2 * gd.D * gd.S * eps * eta + gd.S * q * r
    rhs = (
        2 * gd.D * gd.A * gd.xi * q * eta
        + 2 * gd.D * gd.B * gd.xi * r * eps
        + 2 * gd.C * gd.E * gd.xi**2 * q * r
    )
    return lhs - rhs

"""Poisson point-process limits.

Bounded fitness: V_1 is the sum of the points of a Poisson process with
mean measure A_1 u_1 V_0 z^{-c}, c = lambda0/(lambda0+b).

Unbounded fitness with tail x^beta exp(-gamma x^alpha): log Z_1(t) is
governed by the rightmost point of the process of growth exponents
(lambda0 + x)(t - s).  With r = t - s, eps = z^{-1/(alpha+1)} and
r = W z^{alpha/(alpha+1)}, the stationarity condition becomes

    W = a_0 (1 - lambda0 eps W)^{(alpha-1)/(alpha+1)},   a_0^{alpha+1} = alpha gamma / lambda0,

and the maximum of phi(s, z) - lambda0 t is sum_j d_j z^{(alpha-j)/(alpha+1)}.
All series below are produced by truncated power-series arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np
from scipy import integrate, optimize

from .errors import DegenerateAlpha, InvalidParameter, QuadFail
from .model import BranchingModel, UnboundedFitness

__all__ = [
    "constant_A1",
    "V1Sample",
    "v1_truncation",
    "eps_for_bias",
    "sample_v1",
    "UnboundedConstants",
    "unbounded_constants",
    "phi",
    "phi_max_numeric",
    "phi_max_series",
    "mu_tail",
    "centering_sequence",
    "centering_alpha1",
    "rightmost_log_prefactor",
    "rightmost_cdf",
    "rightmost_quantile",
]


# --- bounded fitness: V_1 ----------------------------------------------------


def constant_A1(model: BranchingModel) -> float:
    """A_1 = g(b)/lambda0 ((lambda0+b)/(a0+b))^{b/(lambda0+b)} Gamma(lambda0/(lambda0+b))."""
    lam0, b = model.lambda0, model.b
    lam1 = lam0 + b
    return model.g_at_b / lam0 * (lam1 / (model.a0 + b)) ** (b / lam1) * math.gamma(lam0 / lam1)


class V1Sample(NamedTuple):
    values: np.ndarray
    eps: float
    truncated_mean: float  # expected mass of the points below eps (added back)
    truncated_var: float  # variance of that mass
    mean_points: float  # expected number of points above eps

    def lt_bias_bound(self, theta: float) -> float:
        """Bound on |E e^{-theta V} - E e^{-theta V_eps}| from replacing the
        small points by their mean: theta^2 Var / 2."""
        return 0.5 * theta * theta * self.truncated_var


def _v1_params(model: BranchingModel):
    lam0, b = model.lambda0, model.b
    c = lam0 / (lam0 + b)
    K = constant_A1(model) * model.u[0] * model.V0
    return K, c


def v1_truncation(model: BranchingModel, eps: float) -> Tuple[float, float, float]:
    """(mean points above eps, mean mass below eps, variance of mass below eps)."""
    K, c = _v1_params(model)
    return K * eps**-c, K * c / (1.0 - c) * eps ** (1.0 - c), K * c / (2.0 - c) * eps ** (2.0 - c)


def eps_for_bias(model: BranchingModel, bias: float = 1e-3, theta_max: float = 5.0) -> float:
    """Largest eps whose LT bias bound at theta_max stays below ``bias``."""
    K, c = _v1_params(model)
    # theta^2/2 * K c/(2-c) eps^{2-c} = bias
    return (2.0 * bias * (2.0 - c) / (theta_max**2 * K * c)) ** (1.0 / (2.0 - c))


def sample_v1(
    model: BranchingModel,
    eps: float,
    rng: np.random.Generator,
    size: Optional[int] = None,
    chunk: int = 2000,
) -> V1Sample:
    """Draws of V_1 truncated at eps.

    Points above eps are drawn exactly (count Poisson, locations by tail
    inversion z = eps U^{-1/c}); the points below eps are replaced by their
    expected total mass, which is reported together with its variance.
    """
    if not eps > 0:
        raise InvalidParameter("eps must be positive")
    K, c = _v1_params(model)
    m_above, m_below, v_below = v1_truncation(model, eps)
    n = 1 if size is None else int(size)
    out = np.empty(n)
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        counts = rng.poisson(m_above, hi - lo)
        pts = eps * rng.random(int(counts.sum())) ** (-1.0 / c)
        owner = np.repeat(np.arange(hi - lo), counts)
        out[lo:hi] = np.bincount(owner, weights=pts, minlength=hi - lo) + m_below
    return V1Sample(out if size is not None else out[:1], eps, m_below, v_below, m_above)


# --- truncated power series ------------------------------------------------


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    return np.convolve(a, b)[:n]


def _pow1p(u: np.ndarray, p: float) -> np.ndarray:
    """(1 + u)^p for a series u with zero constant term."""
    n = u.shape[0]
    out = np.zeros(n)
    out[0] = 1.0
    term = np.zeros(n)
    term[0] = 1.0
    coef = 1.0
    for k in range(1, n):
        term = _mul(term, u)
        coef *= (p - k + 1) / k
        out += coef * term
    return out


def _pow(a: np.ndarray, p: float) -> np.ndarray:
    """a^p for a series with a[0] > 0."""
    return a[0] ** p * _pow1p(np.concatenate(([0.0], a[1:] / a[0])), p)


@dataclass(frozen=True)
class UnboundedConstants:
    alpha: int
    beta: float
    gamma: float
    lambda0: float
    a_seq: Tuple[float, ...]
    b_seq: Tuple[float, ...]
    d_seq: Tuple[float, ...]
    rho_seq: Tuple[float, ...]  # rho_1..rho_alpha at x = 0 after solving
    kappa_seq: Tuple[float, ...]  # kappa_1..kappa_{alpha-1}
    kappa: float
    c0: float
    k1: float
    k2: float
    k3: float

    @property
    def curvature_printed(self) -> float:
        """Second-derivative constant of the Laplace step as typeset."""
        a, a0, c0 = self.alpha, self.a_seq[0], self.c0
        return a * a * self.gamma / (a0 ** (a + 2) * c0 ** (a / (a + 1)))

    @property
    def curvature(self) -> float:
        """|d^2 phi/ds^2| at the maximizer, times t^{1/alpha}, in the limit."""
        a, a0, c0 = self.alpha, self.a_seq[0], self.c0
        return a * (a + 1) * self.gamma / (a0 ** (a + 2) * c0 ** (a / (a + 1)))


def unbounded_constants(alpha: int, beta: float, gamma: float, lambda0: float) -> UnboundedConstants:
    if alpha < 1 or alpha != int(alpha):
        raise DegenerateAlpha(f"alpha must be an integer >= 1, got {alpha}")
    if not (gamma > 0 and lambda0 > 0):
        raise InvalidParameter("gamma and lambda0 must be positive")
    A = int(alpha)
    n = A + 1
    lam0 = float(lambda0)
    a0 = (A * gamma / lam0) ** (1.0 / (A + 1))
    q = (A - 1) / (A + 1)
    eps = np.zeros(n)
    if n > 1:
        eps[1] = 1.0
    # W = a0 (1 - lam0 eps W)^q, iterated; each pass fixes one more order
    W = np.zeros(n)
    W[0] = a0
    for _ in range(n):
        W = a0 * _pow1p(-lam0 * _mul(eps, W), q)
    B = _pow(W, -1.0) - lam0 * eps
    H = -lam0 * W - gamma * _pow(B, float(A))
    d = H
    c0 = (-lam0 / d[0]) ** ((A + 1) / A)
    qq = c0 ** (1.0 / (A + 1))

    def expansion(kap: np.ndarray) -> np.ndarray:
        # sum_j d_j q^{A-j} u^j (1 + Delta)^{(A-j)/(A+1)},  Delta = sum_m kap_m u^m
        u = np.zeros(n)
        if n > 1:
            u[1] = 1.0
        delta = kap.copy()
        out = np.zeros(n)
        upow = np.zeros(n)
        upow[0] = 1.0
        for j in range(n):
            out += d[j] * qq ** (A - j) * _mul(upow, _pow1p(delta, (A - j) / (A + 1)))
            upow = _mul(upow, u)
        return out

    kap = np.zeros(n)
    slope = A * lam0 / (A + 1)
    for m in range(1, A):
        rho_m = expansion(kap)[m]
        kap[m] = rho_m / slope
    rho = expansion(kap)
    k2 = A * lam0 / ((A + 1) * c0)
    k3 = (2.0 * beta / A + 1.0) / 2.0
    return UnboundedConstants(
        alpha=A,
        beta=float(beta),
        gamma=float(gamma),
        lambda0=lam0,
        a_seq=tuple(map(float, W)),
        b_seq=tuple(map(float, B)),
        d_seq=tuple(map(float, d)),
        rho_seq=tuple(map(float, rho[1:])),
        kappa_seq=tuple(map(float, kap[1:A])),
        kappa=(A + 1) * k3 / (A * lam0),
        c0=float(c0),
        k1=float(rho[A]),
        k2=float(k2),
        k3=k3,
    )


def phi(s, z, t: float, lambda0: float, gamma: float, alpha: float):
    """lambda0 s - gamma (z/(t-s) - lambda0)^alpha."""
    s = np.asarray(s, dtype=float)
    return lambda0 * s - gamma * (z / (t - s) - lambda0) ** alpha


def phi_max_numeric(z: float, lambda0: float, gamma: float, alpha: float) -> float:
    """max over r = t - s in (0, z/lambda0) of -lambda0 r - gamma (z/r - lambda0)^alpha."""
    r_hi = z / lambda0
    # derivative: -lambda0 + gamma alpha (z/r - lambda0)^{alpha-1} z / r^2, decreasing in r
    dphi = lambda r: -lambda0 + gamma * alpha * (z / r - lambda0) ** (alpha - 1) * z / r**2
    lo = r_hi * 1e-12
    while dphi(lo) <= 0:
        lo *= 1e-3
    r = optimize.brentq(dphi, lo, r_hi * (1 - 1e-15) if alpha > 1 else r_hi, xtol=1e-300, rtol=1e-15, maxiter=500)
    return -lambda0 * r - gamma * (z / r - lambda0) ** alpha


def phi_max_series(consts: UnboundedConstants, z: float) -> float:
    A = consts.alpha
    return math.fsum(dj * z ** ((A - j) / (A + 1)) for j, dj in enumerate(consts.d_seq))


def mu_tail(model: BranchingModel, t: float, z: float, rel_tol: float = 1e-10) -> float:
    """Expected number of mutants with (lambda0 + x)(t - s) > z:
    u_1 V_0 int_0^t e^{lambda0 s} P(X > z/(t-s) - lambda0) ds."""
    law = model.fitness
    if not isinstance(law, UnboundedFitness):
        raise InvalidParameter("mu_tail needs an unbounded fitness law")
    lam0 = model.lambda0
    log_pre = math.log(model.u[0] * model.V0)

    def log_f(s):
        x = z / (t - s) - lam0
        return lam0 * s + float(law.log_tail(max(x, 0.0)))

    # locate the peak to scale the integrand and split the range there
    res = optimize.minimize_scalar(lambda s: -log_f(s), bounds=(0.0, t * (1 - 1e-12)), method="bounded",
                                   options={"xatol": 1e-10 * max(t, 1.0)})
    s_star = float(res.x)
    peak = log_f(s_star)
    val, err = integrate.quad(lambda s: math.exp(log_f(s) - peak) if s < t else 0.0, 0.0, t,
                              points=[s_star], limit=500, epsabs=0.0, epsrel=rel_tol)
    if err > 1e3 * rel_tol * val:
        raise QuadFail(f"mu_tail: error {err!r} for value {val!r}")
    return math.exp(log_pre + peak + math.log(val))


def centering_sequence(consts: UnboundedConstants, t: float) -> float:
    """c0 t^{(a+1)/a} (1 + sum_k kappa_k t^{-k/a} + kappa log t / t)."""
    if not t > 1:
        raise InvalidParameter("centering needs t > 1")
    A = consts.alpha
    bracket = 1.0 + math.fsum(kj * t ** (-(j + 1) / A) for j, kj in enumerate(consts.kappa_seq))
    bracket += consts.kappa * math.log(t) / t
    return consts.c0 * t ** ((A + 1) / A) * bracket


def centering_alpha1(beta: float, gamma: float, lambda0: float, t: float) -> float:
    """alpha = 1 closed form c0 t^2 (1 + (2 beta + 1) log t / (lambda0 t))."""
    c0 = lambda0 / (4.0 * gamma)
    return c0 * t * t * (1.0 + (2.0 * beta + 1.0) * math.log(t) / (lambda0 * t))


def rightmost_log_prefactor(consts: UnboundedConstants, model: BranchingModel, prefactor: str = "corrected") -> float:
    """log C with mu(z_y, inf) -> C e^{-k2 y}.

    ``corrected`` (default) uses the curvature of phi at its maximizer, which
    is what the exact tail measure mu_tail converges to.  ``printed`` uses the
    curvature as typeset, which at alpha = 1 gives the displayed factor
    (2c0)^beta (pi/lambda0)^{1/2} V0 u1 e^{gamma lambda0}, larger by sqrt(2).
    """
    if prefactor == "printed":
        curv = consts.curvature_printed
    elif prefactor == "corrected":
        curv = consts.curvature
    else:
        raise InvalidParameter("prefactor must be 'printed' or 'corrected'")
    A = consts.alpha
    a0 = consts.a_seq[0]
    x_scale = consts.c0 ** (1.0 / (A + 1)) / a0
    return (
        math.log(model.V0 * model.u[0])
        + consts.beta * math.log(x_scale)
        + 0.5 * math.log(2.0 * math.pi / curv)
        + consts.k1
    )


def rightmost_cdf(consts: UnboundedConstants, model: BranchingModel, y, prefactor: str = "corrected"):
    """P(y* <= y) = exp(-C e^{-k2 y}): Gumbel with scale 1/k2."""
    y = np.asarray(y, dtype=float)
    logC = rightmost_log_prefactor(consts, model, prefactor)
    out = np.exp(-np.exp(logC - consts.k2 * y))
    return out if out.ndim else float(out)


def rightmost_quantile(consts: UnboundedConstants, model: BranchingModel, p, prefactor: str = "corrected"):
    p = np.asarray(p, dtype=float)
    logC = rightmost_log_prefactor(consts, model, prefactor)
    out = (logC - np.log(-np.log(p))) / consts.k2
    return out if out.ndim else float(out)


def gumbel_location(consts: UnboundedConstants, model: BranchingModel, prefactor: str = "corrected") -> float:
    return rightmost_log_prefactor(consts, model, prefactor) / consts.k2

"""Exact means and Laplace transforms by quadrature, plus the bounded-case
asymptotic constants and limiting transforms."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import integrate, linalg, special

from .birth_death import LineageParams, one_minus_transient_lt
from .errors import InvalidParameter, QuadFail, UnsupportedK, ZeroRate
from .lineage_sim import log_scale_factor
from .model import BranchingModel, composite_rate_u1k, exponent_pk

__all__ = [
    "QuadratureSpec",
    "AsymptoticConstants",
    "exact_mean_z1",
    "log_exact_mean_z1",
    "exact_lt_z1",
    "scaled_exact_lt_z1",
    "lt_exponent_z1",
    "exact_mean_zk",
    "log_exact_mean_zk",
    "mean_zk_asymptote",
    "log_mean_zk_asymptote",
    "mean_ratio",
    "constant_c1",
    "constant_ch",
    "constants_ck",
    "asymptotic_lt_zk",
    "gamma_product",
    "gamma_product_quad",
]


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 400
    # fitness window [b - window_width * log t / t, b] for generation k uses
    # window_width = 2k + 1; it only places breakpoints, nothing is dropped
    nodes: int = 16  # starting Gauss-Legendre order per panel
    max_nodes: int = 256

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise InvalidParameter("quadrature tolerances must be positive")
        if self.max_subdivisions < 1 or self.nodes < 2:
            raise InvalidParameter("quadrature sizes must be positive")


DEFAULT_QUAD = QuadratureSpec()


def _quad(f, lo, hi, quad: QuadratureSpec, points=None, what="integral") -> float:
    pts = None
    if points:
        pts = sorted(p for p in points if lo < p < hi) or None
    val, err, info = integrate.quad(
        f, lo, hi, points=pts, limit=quad.max_subdivisions, epsabs=quad.abs_tol * 1e-3,
        epsrel=quad.rel_tol, full_output=True
    )[:3]
    if not np.isfinite(val) or err > max(quad.abs_tol, quad.rel_tol * abs(val)) * 10.0:
        raise QuadFail(f"{what}: estimate {val!r} with error {err!r} misses tolerance")
    return val


def _window_point(model: BranchingModel, t: float, k: int) -> float:
    return model.b - (2 * k + 1) * math.log(max(t, math.e)) / t


# --- first generation -----------------------------------------------------


def log_exact_mean_z1(model: BranchingModel, t: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """log E Z_1(t); -inf when u_1 = 0."""
    if not t > 0:
        raise InvalidParameter("t must be positive")
    u1 = model.u[0]
    if u1 == 0.0:
        return -math.inf
    b, law = model.b, model.fitness

    # g(x) (e^{tx} - 1) / x scaled by e^{-tb}; the x -> 0 limit is t e^{-tb}
    def f(x):
        xt = x * t
        ratio = t if xt < 1e-300 else math.expm1(xt) / x
        return float(law.pdf(x)) * ratio * math.exp(-t * b)

    val = _quad(f, 0.0, b, quad, points=[_window_point(model, t, 1)], what="E Z_1")
    return math.log(u1 * model.V0) + model.lambda0 * t + t * b + math.log(val)


def exact_mean_z1(model: BranchingModel, t: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """E Z_1(t) = u_1 V_0 e^{lambda0 t} int_0^b g(x) (e^{tx} - 1)/x dx."""
    return math.exp(log_exact_mean_z1(model, t, quad))


def lt_exponent_z1(model: BranchingModel, t: float, theta: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """-log E exp(-theta Z_1(t)) for deterministic type-0 growth."""
    if theta < 0:
        raise InvalidParameter("theta must be >= 0")
    u1 = model.u[0]
    if theta == 0.0 or u1 == 0.0:
        return 0.0
    lam0, d, t = model.lambda0, model.b0, float(t)
    w = -math.expm1(-theta)
    law = model.fitness

    def inner(x):
        p = LineageParams(model.a0 + x, d)
        # r = t - s; integrand e^{-lambda0 r} (1 - phi_r(theta)), scaled by e^{lambda0 t}
        f = lambda r: math.exp(-lam0 * r) * float(one_minus_transient_lt(p, r, theta))
        aw = p.a * w
        pts = []
        if p.lam > aw:
            pts.append(math.log((p.lam - aw) / aw) / p.lam)
        return _quad(f, 0.0, t, quad, points=pts, what="LT inner integral")

    outer = _quad(
        lambda x: float(law.pdf(x)) * inner(x),
        0.0,
        model.b,
        quad,
        points=[_window_point(model, t, 1)],
        what="LT outer integral",
    )
    return u1 * model.V0 * math.exp(lam0 * t) * outer


def exact_lt_z1(model: BranchingModel, t: float, theta: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """E exp(-theta Z_1(t)) by nested adaptive quadrature."""
    return math.exp(-lt_exponent_z1(model, t, theta, quad))


def scaled_exact_lt_z1(model: BranchingModel, t: float, theta: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Transform of t^{1+p} e^{-(lambda0+b)t} Z_1(t) at theta."""
    return exact_lt_z1(model, t, theta * math.exp(log_scale_factor(model, 1, t)), quad)


# --- generation k means ----------------------------------------------------


def _log_divided_difference_exp(t: float, y: np.ndarray) -> np.ndarray:
    """log of the divided difference of e^{t.} at nodes (0, y_1, ..., y_k).

    ``y`` has shape (n, k).  The value is the time integral over the simplex
    0 < s_1 < ... < s_k < t of exp(sum_j y_j (s_{j+1} - s_j)), s_{k+1} = t,
    obtained as the corner entry of the matrix exponential of a bidiagonal
    matrix, shifted by max(y) to stay in range.
    """
    n, k = y.shape
    nodes = np.concatenate((np.zeros((n, 1)), y), axis=1)
    shift = nodes.max(axis=1)
    J = np.zeros((n, k + 1, k + 1))
    idx = np.arange(k + 1)
    J[:, idx, idx] = t * (nodes - shift[:, None])
    J[:, idx[:-1], idx[1:]] = t
    corner = linalg.expm(J)[:, 0, k]
    with np.errstate(divide="ignore"):
        return np.log(np.maximum(corner, 0.0)) + t * shift


def _gl_panels(edges, n):
    xs, ws = np.polynomial.legendre.leggauss(n)
    pts, wts = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        pts.append(lo + half * (xs + 1.0))
        wts.append(half * ws)
    return np.concatenate(pts), np.concatenate(wts)


def _log_simplex_integral(model: BranchingModel, t: float, k: int, n: int, chunk: int = 100_000) -> float:
    b = model.b
    cut = _window_point(model, t, k)
    edges = [0.0, cut, b] if 0.0 < cut < b else [0.0, b]
    x, w = _gl_panels(edges, n)
    lg = np.log(np.maximum(model.fitness.pdf(x), 1e-300)) + np.log(w)
    m = x.shape[0]
    parts = []
    for lo in range(0, m**k, chunk):
        flat = np.arange(lo, min(m**k, lo + chunk))
        idx = np.stack(np.unravel_index(flat, (m,) * k), axis=1)
        Y = np.cumsum(x[idx], axis=1)
        parts.append(special.logsumexp(lg[idx].sum(axis=1) + _log_divided_difference_exp(t, Y)))
    return float(special.logsumexp(parts))


def log_exact_mean_zk(model: BranchingModel, t: float, k: int, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """log E Z_k(t) for k <= 3 (deterministic type-0 growth).

    The k fitness integrals use tensor Gauss-Legendre rules on panels split
    at the window edge; the order doubles until two successive levels agree.
    """
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    if k > 3:
        raise UnsupportedK("exact means are provided for k <= 3 only")
    if not t > 0:
        raise InvalidParameter("t must be positive")
    rates = [model.rate(j) for j in range(1, k + 1)]
    if any(r == 0.0 for r in rates):
        return -math.inf
    n = quad.nodes
    coarse = _log_simplex_integral(model, t, k, n)
    while True:
        fine = _log_simplex_integral(model, t, k, 2 * n)
        if abs(fine - coarse) <= max(quad.rel_tol, 1e-13) * 10.0:
            break
        n *= 2
        if n > quad.max_nodes:
            raise QuadFail(f"E Z_{k}: Gauss-Legendre levels still differ by {abs(fine - coarse):.3e} (log)")
        coarse = fine
    return math.log(model.V0) + sum(math.log(r) for r in rates) + model.lambda0 * t + fine


def exact_mean_zk(model: BranchingModel, t: float, k: int, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    return math.exp(log_exact_mean_zk(model, t, k, quad))


def log_mean_zk_asymptote(model: BranchingModel, t: float, k: int) -> float:
    """log of V0 u_1..u_k g(b)^k e^{(lambda0+kb)t} / (t^k b^k k!)."""
    b, gb = model.b, model.g_at_b
    log_u = sum(math.log(model.rate(j)) for j in range(1, k + 1))
    return (
        math.log(model.V0) + log_u + k * math.log(gb) + (model.lambda0 + k * b) * t
        - k * math.log(t * b) - math.lgamma(k + 1)
    )


def mean_zk_asymptote(model: BranchingModel, t: float, k: int) -> float:
    return math.exp(log_mean_zk_asymptote(model, t, k))


def mean_ratio(model: BranchingModel, t: float, k: int, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """E Z_k(t) divided by its large-t equivalent."""
    log_exact = log_exact_mean_z1(model, t, quad) if k == 1 else log_exact_mean_zk(model, t, k, quad)
    return math.exp(log_exact - log_mean_zk_asymptote(model, t, k))


# --- constants -------------------------------------------------------------


def gamma_product(c: float) -> float:
    """Gamma(c) Gamma(1 - c) = pi / sin(pi c) for 0 < c < 1."""
    if not 0.0 < c < 1.0:
        raise InvalidParameter("gamma_product needs 0 < c < 1")
    return math.pi / math.sin(math.pi * c)


def gamma_product_quad(c: float, tol: float = 1e-12) -> float:
    """The same value as the integral of e^{qc} e^{-q} / (e^{-q} + 1) over the real line."""
    if not 0.0 < c < 1.0:
        raise InvalidParameter("gamma_product needs 0 < c < 1")
    f = lambda q: math.exp(q * c - np.logaddexp(0.0, q))
    left = integrate.quad(f, -np.inf, 0.0, epsabs=0.0, epsrel=tol, limit=500)[0]
    right = integrate.quad(f, 0.0, np.inf, epsabs=0.0, epsrel=tol, limit=500)[0]
    return left + right


def constant_c1(model: BranchingModel) -> float:
    lam0, b = model.lambda0, model.b
    lam1 = lam0 + b
    c = lam0 / lam1
    return (
        model.g_at_b * (lam1 / lam0) / lam1
        * ((model.a0 + b) / lam1) ** (-b / lam1)
        * math.exp(special.gammaln(c) + special.gammaln(1.0 - c))
    )


def _lambdas(lam0: float, b: float, k: int) -> np.ndarray:
    return lam0 + b * np.arange(k + 1)


def constant_ch(lam0: float, a0: float, b: float, j: int) -> float:
    """c_{h,j} with lambda_j = lambda0 + j b and a_j = a0 + j b."""
    lam_prev, lam_j = lam0 + (j - 1) * b, lam0 + j * b
    r = lam_prev / lam_j
    return (1.0 / lam_prev) * ((a0 + j * b) / lam_j) ** (-1.0 + r) * math.gamma(1.0 + r) * math.gamma(1.0 - r)


def _ck_recursive(g_b: float, lam0: float, a0: float, b: float, k: int) -> float:
    """c_k(lambda0) = c_{k-1}(lambda1)^{lambda0/lambda1} g(b) (lambda_k/lambda0) c_{h,1}."""
    lam_k = lam0 + k * b
    head = g_b * (lam_k / lam0) * constant_ch(lam0, a0, b, 1)
    if k == 1:
        return head
    lam1 = lam0 + b
    return _ck_recursive(g_b, lam1, a0 + b, b, k - 1) ** (lam0 / lam1) * head


@dataclass(frozen=True)
class AsymptoticConstants:
    k: int
    p_k: float
    u_1k: float
    c1: float
    c_hj: Tuple[float, ...]
    c_k: float
    c_k_recursive: float
    c_k_printed: float
    A1: float
    lambda_j: Tuple[float, ...]


def constants_ck(model: BranchingModel, k: int) -> AsymptoticConstants:
    """Constants of the generation-k limit.

    ``c_k`` is the product over j of (g(b) (lambda_k/lambda_{j-1}) c_{h,j})
    to the power lambda0/lambda_{j-1}, which is what unrolling the
    recursion gives; ``c_k_printed`` keeps the factor lambda_{k-j+1}/lambda0
    in the closed-form product instead, for comparison (they agree only at k = 1).
    """
    from .limit_pp import constant_A1

    if k < 1:
        raise InvalidParameter("k must be >= 1")
    lam0, b, gb, a0 = model.lambda0, model.b, model.g_at_b, model.a0
    lams = _lambdas(lam0, b, k)
    ch = tuple(constant_ch(lam0, a0, b, j) for j in range(1, k + 1))
    log_prod = 0.0
    log_printed = 0.0
    for j in range(1, k + 1):
        e = lam0 / lams[j - 1]
        log_prod += e * math.log(gb * (lams[k] / lams[j - 1]) * ch[j - 1])
        log_printed += e * math.log(gb * (lams[k - j + 1] / lam0) * ch[j - 1])
    try:
        u1k = composite_rate_u1k(model, k) if len(model.u) >= k else math.nan
    except ZeroRate:
        u1k = 0.0
    return AsymptoticConstants(
        k=k,
        p_k=exponent_pk(model, k),
        u_1k=u1k,
        c1=constant_c1(model),
        c_hj=ch,
        c_k=math.exp(log_prod),
        c_k_recursive=_ck_recursive(gb, lam0, a0, b, k),
        c_k_printed=math.exp(log_printed),
        A1=constant_A1(model),
        lambda_j=tuple(float(v) for v in lams),
    )


def asymptotic_lt_zk(model: BranchingModel, k: int, theta) -> np.ndarray:
    """exp(-c_k V0 u_{1,k} theta^{lambda0/(lambda0+kb)})."""
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0):
        raise InvalidParameter("theta must be >= 0")
    consts = constants_ck(model, k)
    expo = model.lambda0 / (model.lambda0 + k * model.b)
    out = np.exp(-consts.c_k * model.V0 * consts.u_1k * theta**expo)
    return out if out.ndim else float(out)

"""Explicit formula for the smoothed summatory function.

Assembles  A_exp(x) = Delta_1(x) + Delta_{1/2}(x) + sum_rho Delta_rho(x)
from Laplace-type integrals over the jumps of F(s) Gamma(s) x^s across the
branch cuts at s=1, s=1/2 and the nontrivial zeros:

  Delta_1    = sin(pi z)/pi * x * int_0^{1/2}  e^{-Lu} u^{-z} J_1(u) du
  Delta_1/2  = sin(pi(z+w))/pi * 2^{1-w} * sqrt(x)
                 * int_0^{1/2-a} e^{-Lu} u^{-w} J_half(u) du
  Delta_rho  = -sin(pi z)/pi * x^rho * int_0^{1/2-a} e^{-Lu} u^{z} J_rho(u) du

with L = log x and

  J_1(u)    = exp(z L1(1-u) + w L1(2-2u)) (1-2u)^{-w} G(1-u) Gamma(1-u)
  J_half(u) = (1/2-u)^2 (1/2+u)^{-z} Z(1/2-u;z) Z(1-2u;w) G(1/2-u) Gamma(1/2-u)
  J_rho(u)  = (rho-1-u)^{-z} G(rho-u) Z_rho(rho-u;z) zeta(2rho-2u)^w Gamma(rho-u)

The (1/2-u)^2 in J_half and the (rho-1-u) argument in J_rho come from
substituting t = 1/2 - u (resp. s = rho - u) into the cut jump of
t (t-1)^{-z} Z(t;z) * 2t (2t-1)^{-w} Z(2t;w) G(t) Gamma(t) x^t.  Two
limits pin these factors: at z = 0 the Selberg-Delange main term
2^{-w} sqrt(pi) G(1/2) x^{1/2} L^{w-1} / Gamma(w) must emerge, and at
z = -1 (resp. w = 1) the residue formulas must.

Integer z or w switch the affected parts to exact residue formulas; the
sine prefactors make the complementary parts vanish identically.

Quadrature is tanh-sinh (double-exponential), which absorbs the algebraic
endpoint singularities u^{-Re z}, u^{-Re w}, u^{Re z}; integrand values
J(u) are cached per node so repeated evaluation at many x is cheap.
Watson coefficients lambda_{xi,k} come from a 256-node trapezoid rule on
the circle |u| = r'.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .eps_model import EpsilonSpec, FactorParams, near_integer, zw_params
from .errors import (
    ConsistencyError,
    DomainError,
    QuadratureError,
    RangeError,
    WindowError,
)
from .euler_residual import G_f, GfConfig
from .zeta_kernel import ZetaKernel, _track_log, default_kernel, gamma, log_zeta_euler

SQRT_PI = math.sqrt(math.pi)


@dataclass(eq=False)
class FormulaConfig:
    """Knobs for the explicit-formula evaluation.

    a: abscissa of the leftmost contour line, 1/3 < a < 1/2.  n_zeros pairs
    of zeros enter the zero sum.  watson_radius is the Taylor-coefficient
    contour radius r' (must stay inside the smallest analyticity disc,
    radius 1/2 - a).
    """

    a: float = 0.40
    n_zeros: int = 30
    quad_tol: float = 1e-10
    watson_radius: float = 0.05
    gf_config: GfConfig = field(default_factory=GfConfig)
    kernel: Optional[ZetaKernel] = None
    max_level: int = 12
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not (1.0 / 3.0 < self.a < 0.5):
            raise DomainError("a must lie in (1/3, 1/2)")
        if not (0.0 < self.watson_radius < 0.5 - self.a):
            raise DomainError("watson_radius must lie in (0, 1/2 - a)")
        if self.n_zeros < 0:
            raise DomainError("n_zeros must be >= 0")

    def get_kernel(self) -> ZetaKernel:
        if self.kernel is None:
            self.kernel = default_kernel()
        if self.n_zeros > len(self.kernel.table):
            raise DomainError(
                f"n_zeros={self.n_zeros} exceeds zero table size "
                f"{len(self.kernel.table)}"
            )
        return self.kernel


@dataclass(frozen=True)
class FormulaBreakdown:
    """One explicit-formula evaluation at a single x."""

    x: float
    delta_1: complex
    delta_half: complex
    delta_rho: tuple[tuple[int, complex], ...]  # conjugate-pair totals
    zero_sum: complex
    total: complex
    modes: dict
    zero_tail: float  # |last included pair|, truncation indicator


# --------------------------------------------------------------------------
# tanh-sinh quadrature with per-node integrand caching
# --------------------------------------------------------------------------

_T_HARD_MAX = math.asinh(680.0 / math.pi)
_SINH_TAIL = 16.0 * math.log(10.0) / math.pi  # e^{-pi sinh t} < 1e-16


def _t_cut(alpha: float) -> float:
    """Truncation |t| for an endpoint singularity u^{-alpha}."""
    a = min(max(alpha, 0.0), 0.98)
    return min(math.asinh(_SINH_TAIL / max(1.0 - a, 0.02)), _T_HARD_MAX)


def _ts_points(b: float, t: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Map tanh-sinh parameters t to (u, b-u, weight) on (0, b), cancellation-free."""
    a = math.pi * np.sinh(t)
    g = np.exp(-np.abs(a))
    denom = 1.0 + g
    right = a >= 0
    u = b * np.where(right, 1.0, g) / denom
    cu = b * np.where(right, g, 1.0) / denom
    w = b * math.pi * np.cosh(t) * g / (denom * denom)
    return u, cu, w


class _NodeCache:
    """Memoized integrand values J(u) keyed by the tanh-sinh parameter t."""

    def __init__(self, j: Callable[[complex, Optional[float]], complex]):
        self.j = j
        self.vals: dict[float, complex] = {}

    def values(self, t: np.ndarray, u: np.ndarray, cu: np.ndarray) -> np.ndarray:
        out = np.empty(t.size, dtype=np.complex128)
        for i, tk in enumerate(t):
            key = float(tk)
            v = self.vals.get(key)
            if v is None:
                v = self.j(complex(u[i]), float(cu[i]))
                self.vals[key] = v
            out[i] = v
        return out


def _laplace_quad(
    cache: _NodeCache,
    weight: Callable[[np.ndarray], np.ndarray],
    b: float,
    alpha_left: float,
    alpha_right: float,
    tol: float,
    max_level: int,
) -> complex:
    """int_0^b weight(u) J(u) du by level-doubling tanh-sinh."""
    t_left = _t_cut(alpha_left)
    t_right = _t_cut(alpha_right)
    prev = None
    for level in range(3, max_level + 1):
        h = 2.0 ** (1 - level)
        k = np.arange(-math.floor(t_left / h), math.floor(t_right / h) + 1)
        t = k * h
        u, cu, wts = _ts_points(b, t)
        j = cache.values(t, u, cu)
        terms = wts * weight(u) * j
        cur = h * complex(np.sum(terms))
        mass = h * float(np.sum(np.abs(terms)))
        if prev is not None:
            if abs(cur - prev) <= tol * (abs(cur) + 1e-13 * mass) + 1e-300:
                return cur
        prev = cur
    raise QuadratureError(
        f"tanh-sinh did not reach tol={tol} at level {max_level}"
    )


# --------------------------------------------------------------------------
# line caches for the continued logs entering J_rho
# --------------------------------------------------------------------------

class _LineCache:
    """Branch values of log h along a parametrized straight line.

    Positions are real parameters; a request continues from the nearest
    already-computed position, so a sweep over quadrature nodes costs a
    couple of zeta evaluations per new node.
    """

    def __init__(self, s_of, h, seed_pos: float, seed_val: complex):
        self.s_of = s_of
        self.h = h
        self.items: dict[float, complex] = {seed_pos: seed_val}

    def value(self, pos: float) -> complex:
        got = self.items.get(pos)
        if got is not None:
            return got
        nearest = min(self.items, key=lambda q: abs(q - pos))
        val, _ = _track_log(
            self.h, self.s_of(nearest), self.items[nearest], self.s_of(pos)
        )
        self.items[pos] = val
        return val


# --------------------------------------------------------------------------
# evaluation context (per spec + config), memoized on the config
# --------------------------------------------------------------------------

class _Ctx:
    def __init__(self, spec: EpsilonSpec, cfg: FormulaConfig):
        self.spec = spec
        self.cfg = cfg
        self.kernel = cfg.get_kernel()
        self.pars: FactorParams = zw_params(spec)
        self.z = self.pars.z
        self.w = self.pars.w
        self._g_points: dict[complex, complex] = {}
        self._caches: dict = {}

    # -- residual Euler product, memoized pointwise --------------------------

    def G(self, s: complex) -> complex:
        s = complex(s)
        got = self._g_points.get(s)
        if got is None:
            got = G_f(self.spec, s, self.cfg.gf_config)
            self._g_points[s] = got
        return got

    # -- integrands -----------------------------------------------------------

    def j1(self, u: complex, cu: Optional[float] = None) -> complex:
        """J_1; cu = 1/2 - u passed exactly near the right endpoint."""
        k = self.kernel
        one_minus_2u = 2.0 * cu if cu is not None else 1.0 - 2.0 * u
        lz1 = k.L1(1.0 - u).value
        lz2 = k.L1(2.0 - 2.0 * u).value
        return (
            cmath.exp(self.z * lz1 + self.w * lz2)
            * one_minus_2u ** (-self.w)
            * self.G(1.0 - u)
            * gamma(1.0 - u)
        )

    def j_half(self, u: complex, cu: Optional[float] = None) -> complex:
        k = self.kernel
        half_minus = 0.5 - u
        lz1 = k.L1(half_minus).value
        lz2 = k.L1(1.0 - 2.0 * u).value
        return (
            half_minus
            * (0.5 + u) ** (-self.z)
            * cmath.exp(self.z * lz1 + self.w * lz2)
            / (1.0 - 2.0 * u)
            * self.G(half_minus)
            * gamma(half_minus)
        )

    def _rho_lines(self, zero_index: int, conjugate: bool):
        key = ("lines", zero_index, conjugate)
        got = self._caches.get(key)
        if got is not None:
            return got
        k = self.kernel
        rho = k.rho(zero_index, conjugate)
        anchor_log, r = k._rho_anchor(zero_index, conjugate)
        lrho = _LineCache(
            lambda q: rho - q, k._h_rho(zero_index, conjugate), -r, anchor_log
        )
        height = 2.0 * rho.imag
        clog = _LineCache(
            lambda q: 2.0 * rho - 2.0 * q,
            k.zeta,
            -1.0,  # 2 rho - 2(-1) = 3 + i 2 gamma, the right-edge anchor
            log_zeta_euler(complex(3.0, height)),
        )
        got = (rho, lrho, clog)
        self._caches[key] = got
        return got

    def j_rho_real(self, zero_index: int, u: float, conjugate: bool = False) -> complex:
        """J_rho at real u (the Laplace path), via incremental line sweeps."""
        rho, lrho, clog = self._rho_lines(zero_index, conjugate)
        s = rho - u
        return (
            (rho - 1.0 - u) ** (-self.z)
            * self.G(s)
            * cmath.exp(self.z * lrho.value(u) + self.w * clog.value(u))
            * gamma(s)
        )

    def j_rho_circle(self, zero_index: int, r: float, n: int) -> np.ndarray:
        """J_rho on the circle |u| = r (n nodes), walked from the real axis."""
        k = self.kernel
        rho, lrho, clog = self._rho_lines(zero_index, False)
        ang = 2.0 * math.pi * np.arange(n) / n
        us = r * np.exp(1j * ang)
        lr = lrho.value(r)
        cz = clog.value(r)
        out = np.empty(n, dtype=np.complex128)
        cur_u = complex(r)
        for i, u in enumerate(us):
            u = complex(u)
            if i > 0:
                lr, _ = _track_log(
                    k._h_rho(zero_index, False), rho - cur_u, lr, rho - u
                )
                cz, _ = _track_log(
                    k.zeta, 2.0 * rho - 2.0 * cur_u, cz, 2.0 * rho - 2.0 * u
                )
                cur_u = u
            s = rho - u
            out[i] = (
                (rho - 1.0 - u) ** (-self.z)
                * self.G(s)
                * cmath.exp(self.z * lr + self.w * cz)
                * gamma(s)
            )
        return out

    def node_cache(self, key: str, j) -> _NodeCache:
        got = self._caches.get(key)
        if got is None:
            got = _NodeCache(j)
            self._caches[key] = got
        return got

    # -- special values -------------------------------------------------------

    def zeta_half_pow_z(self) -> complex:
        """zeta(1/2)^z, boundary value from above the cut (-inf, 1]."""
        l_half = self.kernel.L1(0.5).value
        return cmath.exp(self.z * (math.log(2.0) + l_half - 1j * math.pi))

    def zeta_2rho_pow_w(self, zero_index: int, conjugate: bool = False) -> complex:
        _, _, clog = self._rho_lines(zero_index, conjugate)
        return cmath.exp(self.w * clog.value(0.0))


def _ctx(spec: EpsilonSpec, cfg: Optional[FormulaConfig]) -> tuple[_Ctx, FormulaConfig]:
    if cfg is None:
        cfg = FormulaConfig()
    got = cfg._memo.get(spec)
    if got is None:
        got = _Ctx(spec, cfg)
        cfg._memo[spec] = got
    return got, cfg


# --------------------------------------------------------------------------
# public integrand evaluators
# --------------------------------------------------------------------------

def J1(spec: EpsilonSpec, u: complex, cfg: Optional[FormulaConfig] = None) -> complex:
    """Integrand at the s=1 branch point, analytic on |u| < 1/2 off [1/2, inf)."""
    u = complex(u)
    if abs(u) >= 0.5 or (u.imag == 0 and u.real >= 0.5):
        raise RangeError("J1 requires |u| < 1/2 off the cut [1/2, inf)")
    if (1.0 - u).real < 0.35:
        raise RangeError("J1 requires Re(1-u) >= 0.35")
    ctx, _ = _ctx(spec, cfg)
    return ctx.j1(u)


def J_half(spec: EpsilonSpec, u: complex, cfg: Optional[FormulaConfig] = None) -> complex:
    """Integrand at the s=1/2 branch point, analytic on |u| < 1/2 - a."""
    u = complex(u)
    ctx, cfg = _ctx(spec, cfg)
    if abs(u) >= 0.5 - cfg.a:
        raise RangeError("J_half requires |u| < 1/2 - a")
    if (0.5 - u).real < 0.35:
        raise RangeError("J_half requires Re(1/2-u) >= 0.35")
    return ctx.j_half(u)


def J_rho(
    spec: EpsilonSpec,
    zero_index: int,
    u: complex,
    cfg: Optional[FormulaConfig] = None,
) -> complex:
    """Integrand at zero rho_k; u real uses the cached line sweep."""
    u = complex(u)
    ctx, cfg = _ctx(spec, cfg)
    k = ctx.kernel
    rad = k.table.gap_radius(zero_index)
    if abs(u) > rad:
        raise RangeError(f"J_rho requires |u| <= {rad:.3f} at zero {zero_index}")
    if u.imag == 0.0 and 0.0 <= u.real and (0.5 - u.real) < 0.35 - 1e-12:
        raise RangeError("J_rho real path requires Re(rho - u) >= 0.35")
    if u.imag == 0.0:
        return ctx.j_rho_real(zero_index, u.real)
    rho = k.rho(zero_index)
    lr = k.L_rho(zero_index, rho - u).value
    cz = k.clog_zeta(2.0 * rho - 2.0 * u)
    return (
        (rho - 1.0 - u) ** (-ctx.z)
        * ctx.G(rho - u)
        * cmath.exp(ctx.z * lr + ctx.w * cz)
        * gamma(rho - u)
    )


# --------------------------------------------------------------------------
# Laplace-form parts
# --------------------------------------------------------------------------

def _require_x(x: float, minimum: float = 3.0) -> float:
    if x < minimum:
        raise DomainError(f"x must be >= {minimum}")
    return float(x)


def delta_1(spec: EpsilonSpec, x: float, cfg: Optional[FormulaConfig] = None) -> complex:
    """Main term from s=1.  Exactly 0 for z in {-1, 0}; residue for z=1."""
    x = _require_x(x)
    ctx, cfg = _ctx(spec, cfg)
    z, w = ctx.z, ctx.w
    zi = ctx.pars.z_integer_case
    if zi in (-1, 0):
        return 0.0 + 0.0j
    if zi == 1:
        # Res_{s=1} F(s) Gamma(s) x^s = x * zeta(2)^w * G(1)
        return x * cmath.exp(w * ctx.kernel.L1(2.0).value) * ctx.G(1.0)
    ell = math.log(x)
    cache = ctx.node_cache("J1", ctx.j1)

    def weight(u: np.ndarray) -> np.ndarray:
        return np.exp(-ell * u - z * np.log(u))

    val = _laplace_quad(
        cache, weight, 0.5, max(z.real, 0.0), max(w.real, 0.0),
        cfg.quad_tol, cfg.max_level,
    )
    return cmath.sin(cmath.pi * z) / math.pi * x * val


def delta_half(spec: EpsilonSpec, x: float, cfg: Optional[FormulaConfig] = None) -> complex:
    """Secondary term from s=1/2.  Exactly 0 for z+w integer (w != 1);
    residue for w=1."""
    x = _require_x(x)
    ctx, cfg = _ctx(spec, cfg)
    z, w = ctx.z, ctx.w
    if ctx.pars.w_is_one:
        # Res_{s=1/2} zeta(2s)=1/2: sqrt(x)/2 * Gamma(1/2) zeta(1/2)^z G(1/2)
        return math.sqrt(x) * 0.5 * SQRT_PI * ctx.zeta_half_pow_z() * ctx.G(0.5)
    if near_integer(z + w) is not None:
        return 0.0 + 0.0j
    if w.real >= 1.0:
        raise WindowError(f"Re w = {w.real} >= 1 outside the treated window")
    ell = math.log(x)
    cache = ctx.node_cache("Jhalf", ctx.j_half)

    def weight(u: np.ndarray) -> np.ndarray:
        return np.exp(-ell * u - w * np.log(u))

    val = _laplace_quad(
        cache, weight, 0.5 - cfg.a, max(w.real, 0.0), 0.0,
        cfg.quad_tol, cfg.max_level,
    )
    return (
        cmath.sin(cmath.pi * (z + w)) / math.pi
        * cmath.exp((1.0 - w) * math.log(2.0))
        * math.sqrt(x)
        * val
    )


def delta_rho(
    spec: EpsilonSpec,
    zero_index: int,
    x: float,
    cfg: Optional[FormulaConfig] = None,
    conjugate: bool = False,
) -> complex:
    """Oscillatory term of one zero.  Exactly 0 for z in {0, 1}; residue
    Gamma(rho) x^rho zeta(2 rho)^w G(rho) / zeta'(rho) for z = -1."""
    x = _require_x(x)
    ctx, cfg = _ctx(spec, cfg)
    z, w = ctx.z, ctx.w
    k = ctx.kernel
    zi = ctx.pars.z_integer_case
    if zi in (0, 1):
        return 0.0 + 0.0j
    rho = k.rho(zero_index, conjugate)
    x_rho = cmath.exp(rho * math.log(x))
    if zi == -1:
        zp = k.zeta_prime_at_zero(zero_index)
        if conjugate:
            zp = zp.conjugate()
        return (
            gamma(rho) * x_rho * ctx.zeta_2rho_pow_w(zero_index, conjugate)
            * ctx.G(rho) / zp
        )
    ell = math.log(x)
    cache = ctx.node_cache(
        ("Jrho", zero_index, conjugate),
        lambda u, cu: ctx.j_rho_real(zero_index, u.real, conjugate),
    )

    def weight(u: np.ndarray) -> np.ndarray:
        return np.exp(-ell * u + z * np.log(u))

    val = _laplace_quad(
        cache, weight, 0.5 - cfg.a, max(-z.real, 0.0), 0.0,
        cfg.quad_tol, cfg.max_level,
    )
    return -cmath.sin(cmath.pi * z) / math.pi * x_rho * val


def _zero_pair(
    spec: EpsilonSpec, zero_index: int, x: float, cfg: FormulaConfig
) -> complex:
    """Delta_rho + Delta_{conj rho} for one positive-ordinate zero."""
    d = delta_rho(spec, zero_index, x, cfg)
    if spec.is_real_valued():
        return d + d.conjugate()
    return d + delta_rho(spec, zero_index, x, cfg, conjugate=True)


def zero_sum(spec: EpsilonSpec, x: float, cfg: Optional[FormulaConfig] = None) -> complex:
    """Sum over the first n_zeros zeros, each with its mirror at -gamma."""
    ctx, cfg = _ctx(spec, cfg)
    total = 0.0 + 0.0j
    for k in range(1, cfg.n_zeros + 1):
        total += _zero_pair(spec, k, x, cfg)
    return total


# --------------------------------------------------------------------------
# Watson coefficients and asymptotic form
# --------------------------------------------------------------------------

def _parse_point(point) -> tuple[str, int]:
    if isinstance(point, tuple):
        return ("zero", int(point[1]))
    p = str(point).lower()
    if p in ("one", "half"):
        return (p, 0)
    if p.startswith("zero:"):
        return ("zero", int(p.split(":", 1)[1]))
    raise DomainError(f"unknown expansion point {point!r}")


def watson_coeffs(
    spec: EpsilonSpec, point, M: int, cfg: Optional[FormulaConfig] = None,
    nodes: int = 256,
) -> list[complex]:
    """Taylor coefficients lambda_{xi,0..M} of J_xi at u=0.

    Trapezoid rule with 256 nodes on |u| = watson_radius (spectrally
    accurate for analytic integrands); lambda_0 is cross-checked against
    the direct value J_xi(0) to 1e-9 relative.
    """
    if M < 0 or M > 8:
        raise DomainError("Watson order M must be in [0, 8]")
    ctx, cfg = _ctx(spec, cfg)
    kind, kz = _parse_point(point)
    r = cfg.watson_radius
    n = nodes
    if kind == "one":
        j0 = ctx.j1(0.0)
        ang = 2.0 * math.pi * np.arange(n) / n
        vals = np.array([ctx.j1(complex(r * np.cos(t), r * np.sin(t))) for t in ang])
    elif kind == "half":
        j0 = ctx.j_half(0.0)
        ang = 2.0 * math.pi * np.arange(n) / n
        vals = np.array([ctx.j_half(complex(r * np.cos(t), r * np.sin(t))) for t in ang])
    else:
        j0 = ctx.j_rho_real(kz, 0.0)
        vals = ctx.j_rho_circle(kz, r, n)
        ang = 2.0 * math.pi * np.arange(n) / n
    coeffs = []
    for k in range(M + 1):
        lam = complex(np.mean(vals * np.exp(-1j * k * ang))) / r ** k
        coeffs.append(lam)
    if abs(coeffs[0] - j0) > 1e-9 * max(abs(j0), 1e-300):
        raise ConsistencyError(
            f"lambda_0 = {coeffs[0]} disagrees with J(0) = {j0}"
        )
    return coeffs


def c_half(spec: EpsilonSpec, cfg: Optional[FormulaConfig] = None) -> complex:
    """Bias constant: sin(pi(z+w))/pi * 2^{1-w} Gamma(1-w) lambda_{1/2,0}.

    For w = 1 the residue path gives Gamma(1/2) zeta(1/2)^z G(1/2) / 2,
    the coefficient of sqrt(x) in Delta_{1/2}.
    """
    ctx, cfg = _ctx(spec, cfg)
    z, w = ctx.z, ctx.w
    if ctx.pars.w_is_one:
        return 0.5 * SQRT_PI * ctx.zeta_half_pow_z() * ctx.G(0.5)
    if near_integer(z + w) is not None:
        return 0.0 + 0.0j
    if w.real >= 1.0:
        raise WindowError(f"Re w = {w.real} >= 1 outside the treated window")
    lam0 = ctx.j_half(0.0)
    return (
        cmath.sin(cmath.pi * (z + w)) / math.pi
        * cmath.exp((1.0 - w) * math.log(2.0))
        * gamma(1.0 - w)
        * lam0
    )


def watson_delta_half(
    spec: EpsilonSpec, x: float, M: int, cfg: Optional[FormulaConfig] = None
) -> complex:
    """Truncated Watson expansion of Delta_{1/2} (no error term added)."""
    x = _require_x(x, 10.0)
    ctx, cfg = _ctx(spec, cfg)
    z, w = ctx.z, ctx.w
    if ctx.pars.w_is_one or w.real >= 1.0:
        raise WindowError("watson_delta_half requires Re w < 1")
    if near_integer(z + w) is not None:
        return 0.0 + 0.0j
    lams = watson_coeffs(spec, "half", M, cfg)
    ell = math.log(x)
    log_ell = math.log(ell)
    series = 0.0 + 0.0j
    for k, lam in enumerate(lams):
        series += lam * gamma(1.0 - w + k) * cmath.exp(-(1.0 - w + k) * log_ell)
    return (
        cmath.sin(cmath.pi * (z + w)) / math.pi
        * cmath.exp((1.0 - w) * math.log(2.0))
        * math.sqrt(x)
        * series
    )


# --------------------------------------------------------------------------
# assembled formula
# --------------------------------------------------------------------------

def a_exp_formula(
    spec: EpsilonSpec, x: float, cfg: Optional[FormulaConfig] = None
) -> FormulaBreakdown:
    """All explicit-formula parts at one x; total = d1 + d1/2 + zero sum."""
    x = _require_x(x)
    ctx, cfg = _ctx(spec, cfg)
    pars = ctx.pars
    if not pars.in_window and pars.z_integer_case is None:
        raise WindowError(f"(z, w) = ({pars.z}, {pars.w}) outside treated window")
    zi = pars.z_integer_case
    modes = {
        "delta_1": "zero" if zi in (-1, 0) else ("residue" if zi == 1 else "quadrature"),
        "delta_half": "residue" if pars.w_is_one else (
            "zero" if near_integer(pars.z + pars.w) is not None else "quadrature"
        ),
        "delta_rho": "zero" if zi in (0, 1) else (
            "residue" if zi == -1 else "quadrature"
        ),
    }
    d1 = delta_1(spec, x, cfg)
    dh = delta_half(spec, x, cfg)
    pairs = []
    zsum = 0.0 + 0.0j
    tail = 0.0
    for k in range(1, cfg.n_zeros + 1):
        pk = _zero_pair(spec, k, x, cfg)
        pairs.append((k, pk))
        zsum += pk
        tail = abs(pk)
    return FormulaBreakdown(
        x=x,
        delta_1=d1,
        delta_half=dh,
        delta_rho=tuple(pairs),
        zero_sum=zsum,
        total=d1 + dh + zsum,
        modes=modes,
        zero_tail=tail,
    )

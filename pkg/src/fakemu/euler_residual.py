"""Residual Euler product G(s).

The Dirichlet series of f factors as zeta(s)^z zeta(2s)^w G(s), where the
local factors  G_p(s) = (1-p^{-s})^z (1-p^{-2s})^w g(p^{-s})  satisfy
G_p - 1 = O(p^{-3 Re s}), so G is holomorphic and bounded on Re s > 1/3.
Evaluation truncates the log-sum

    log G(s) ~ sum_{p <= P} [log g(p^{-s}) + z log(1-p^{-s}) + w log(1-p^{-2s})]

at P = prime_limit (default 1e5) with principal logs per factor; a
calibrated heuristic bounds the dropped tail.  Any winding error a
principal log could commit at the few smallest primes is caught by the
global factorization-identity tests rather than per-factor logic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .eps_model import EpsilonSpec, _g_eval_array, zw_params
from .errors import DomainError, RangeError
from .sieve import primes_up_to

RE_S_MIN = 0.35


@dataclass(eq=False)
class GfConfig:
    """Prime-limit configuration; the prime list is sieved once and cached."""

    prime_limit: int = 100_000
    _logp: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if self.prime_limit < 2:
            raise DomainError("prime_limit must be >= 2")

    @property
    def logp(self) -> np.ndarray:
        if self._logp is None:
            self._logp = np.log(primes_up_to(self.prime_limit).astype(np.float64))
        return self._logp


def _log_terms(spec: EpsilonSpec, s: complex, logp: np.ndarray) -> np.ndarray:
    """Per-prime log G_p(s) with principal logs."""
    pars = zw_params(spec)
    u = np.exp(-s * logp)
    g = _g_eval_array(spec, u)
    if np.any(np.abs(g) < 1e-12):
        p_bad = math.exp(logp[int(np.argmin(np.abs(g)))])
        raise DomainError(
            f"local factor g(p^-s) vanishes at p ~ {p_bad:.0f}, s = {s}"
        )
    return np.log(g) + pars.z * np.log(1.0 - u) + pars.w * np.log(1.0 - u * u)


def G_f(spec: EpsilonSpec, s: complex, cfg: Optional[GfConfig] = None) -> complex:
    """Truncated residual Euler product at s (Re s >= 0.35)."""
    s = complex(s)
    if s.real < RE_S_MIN:
        raise RangeError(f"G_f requires Re s >= {RE_S_MIN}")
    if cfg is None:
        cfg = GfConfig()
    return complex(np.exp(np.sum(_log_terms(spec, s, cfg.logp))))


def _exp1(x: float) -> float:
    """Exponential integral E1(x), x > 0 (series below 1, Lentz CF above)."""
    if x <= 0:
        raise DomainError("E1 requires x > 0")
    if x <= 1.0:
        total = -0.5772156649015329 - math.log(x)
        term = 1.0
        for k in range(1, 30):
            term *= -x / k
            total -= term / k
        return total
    # continued fraction e^{-x}/(x+1- 1/(x+3- 4/(x+5- ...)))
    b = x + 1.0
    c = 1e308
    d = 1.0 / b
    h = d
    for k in range(1, 60):
        a = -(k * k)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        h *= c * d
        if abs(c * d - 1.0) < 1e-15:
            break
    return math.exp(-x) * h


def G_f_tail_estimate(
    spec: EpsilonSpec, s: complex, cfg: Optional[GfConfig] = None
) -> float:
    """Heuristic absolute bound on the truncated part of log G(s).

    The local decay constant is calibrated on the top octave of sieved
    primes, C = max_{P/2<=p<=P} |log G_p| p^{3 sigma}, and the tail is
    C * int_P^inf t^{-3 sigma}/log t dt = C * E1((3 sigma - 1) log P).
    """
    s = complex(s)
    if s.real < RE_S_MIN:
        raise RangeError(f"tail estimate requires Re s >= {RE_S_MIN}")
    if cfg is None:
        cfg = GfConfig()
    sigma = s.real
    logp = cfg.logp
    log_half = math.log(cfg.prime_limit / 2.0)
    top = logp[logp >= log_half]
    if top.size == 0:
        top = logp[-1:]
    terms = _log_terms(spec, s, top)
    c = float(np.max(np.abs(terms) * np.exp(3.0 * sigma * top)))
    if c == 0.0:
        return 0.0
    return c * _exp1((3.0 * sigma - 1.0) * math.log(cfg.prime_limit))

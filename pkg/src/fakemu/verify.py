"""Self-check suites behind `fakemu verify --suite {core|oracle|asymptotics}`.

core:         parser/sequence semantics, zeta-kernel identities
oracle:       sieve ground truths and direct-vs-formula closure
asymptotics:  Watson remainder order, sine-factor exactness, bias labels

Each check either returns quietly or raises AssertionError; the runner
reports one PASS/FAIL line per check.  Checks are deterministic (fixed
RNG seeds) so repeated runs agree bit for bit.
"""

from __future__ import annotations

import cmath
import math
import random
from typing import Callable, Optional

import numpy as np

from . import bias, eps_model, explicit_formula as xf, sieve, zeta_kernel as zk

CANONICAL = (
    ("mobius", "finite:[-1]"),
    ("liouville", "cm:xi=-1"),
    ("ones", "cm:xi=1"),
    ("fig51a", "finite:[exp(i*pi/5),1]"),
    ("fig53", "periodic:m=2:[i,-i]"),
)


def _spec(text: str) -> eps_model.EpsilonSpec:
    return eps_model.parse_eps_spec(text)


# ---------------------------------------------------------------- core

def check_parser_semantics() -> None:
    mob = _spec("finite:[-1]")
    assert eps_model.eps_at(mob, 2) == 0
    pars = eps_model.zw_params(mob)
    assert pars.z == -1 and pars.w == 0
    cm = _spec("cm:xi=i")
    assert abs(eps_model.eps_at(cm, 3) - (-1j)) < 1e-15
    qp = _spec("quadphase:alpha=0.25")
    assert abs(eps_model.eps_at(qp, 2) - 1.0) < 1e-12
    per = _spec("periodic:m=2:[i,-i]")
    got = eps_model.g_eval(per, 0.2)
    u = 0.2
    want = (1 + 1j * u - (1 + 1j) * u * u) / (1 - u * u)
    assert abs(got - want) < 1e-14


def check_g_series_agreement() -> None:
    rng = random.Random(11)
    specs = [
        _spec("cm:xi=exp(i*pi/7)"),
        _spec("periodic:m=3:[i,-1,exp(i*1.0)]"),
        _spec("finite:[exp(i*pi/5),1]"),
        _spec("quadphase:alpha=0.381966"),
    ]
    for spec in specs:
        for _ in range(8):
            u = cmath.rect(rng.uniform(0, 0.5), rng.uniform(0, 2 * math.pi))
            series = sum(
                eps_model.eps_at(spec, k) * u ** k for k in range(201)
            )
            assert abs(eps_model.g_eval(spec, u) - series) <= 1e-12, (spec, u)


def check_exp_log_identity() -> None:
    kernel = zk.default_kernel()
    rng = random.Random(5)
    n_done = 0
    while n_done < 200:
        s = complex(rng.uniform(0.35, 3.0), rng.uniform(-50.0, 50.0))
        try:
            v = kernel.L1(s).value
        except zk.CutError:
            continue
        h = zk.zeta_times_s_minus_1(s)
        assert abs(cmath.exp(v) - h) <= 1e-10 * (1.0 + abs(h)), s
        n_done += 1


def check_branch_coherence() -> None:
    kernel = zk.default_kernel()
    for z in (-1, 1, 2):
        for i in range(40):
            s = 1.101 + (3.0 - 1.101) * i / 39.0
            lhs = s * (s - 1.0) ** (-z) * kernel.Z(s, z)
            rhs = zk.zeta(s) ** z
            assert abs(lhs - rhs) <= 1e-10 * abs(rhs), (z, s)


def check_schwarz_reflection() -> None:
    rng = random.Random(17)
    for _ in range(100):
        s = complex(rng.uniform(-1.0, 4.0), rng.uniform(0.1, 300.0))
        a = zk.zeta(s.conjugate())
        b = zk.zeta(s).conjugate()
        assert abs(a - b) <= 1e-11 * (1 + abs(b)), s


def check_gamma_recurrence() -> None:
    rng = random.Random(23)
    for _ in range(100):
        s = complex(rng.uniform(-8.0, 8.0), rng.uniform(-200.0, 200.0))
        if s.imag == 0.0:
            continue
        g1 = zk.gamma(s + 1.0)
        assert abs(g1 - s * zk.gamma(s)) <= 1e-12 * abs(g1), s


def check_zero_table() -> None:
    table = zk.default_kernel().table
    assert len(table) >= 100
    for g in table.ordinates:
        assert abs(zk.zeta(complex(0.5, g))) <= 1e-8, g


CORE_CHECKS = [
    ("parser-semantics", check_parser_semantics),
    ("g-series-agreement", check_g_series_agreement),
    ("exp-log-identity", check_exp_log_identity),
    ("integer-power-coherence", check_branch_coherence),
    ("schwarz-reflection", check_schwarz_reflection),
    ("gamma-recurrence", check_gamma_recurrence),
    ("zero-table-sanity", check_zero_table),
]


# ---------------------------------------------------------------- oracle

def check_geometric_closed_form() -> None:
    ones = _spec("cm:xi=1")
    for x in (10.0, 100.0, 1000.0):
        got = sieve.direct_exp_sum(ones, x)
        want = 1.0 / math.expm1(1.0 / x)
        assert abs(got - want) <= 1e-9 * want, x


def check_multiplicativity() -> None:
    table = sieve.build_spf(100_000)
    spec = _spec("periodic:m=2:[i,-i]")
    rng = random.Random(41)
    done = 0
    while done < 500:
        m = rng.randint(2, 900)
        n = rng.randint(2, 100_000 // m)
        if math.gcd(m, n) != 1:
            continue
        fm = sieve.f_of_n(table, spec, m)
        fn = sieve.f_of_n(table, spec, n)
        fmn = sieve.f_of_n(table, spec, m * n)
        assert abs(fmn - fm * fn) <= 1e-14, (m, n)
        done += 1


def check_dirichlet_consistency() -> None:
    spec = _spec("finite:[exp(i*pi/5),1]")
    s = 2.5
    acc = sieve._Kahan()

    def consume(n, f):
        acc.add(complex(np.sum(f * np.exp(-s * np.log(n)))))

    sieve._sweep(spec, 10 ** 6, consume)
    series = acc.s
    prod = complex(
        np.exp(
            np.sum(
                np.log(
                    eps_model._g_eval_array(
                        spec, np.exp(-s * np.log(sieve.primes_up_to(1000).astype(float)))
                    )
                )
            )
        )
    )
    series_tail = (10.0 ** 6) ** (1 - s) / (s - 1)
    prod_tail = 3e-6  # ~ sum_{p > 1e3} p^{-2.5}
    assert abs(series - prod) <= 10 * (series_tail + prod_tail), abs(series - prod)


def check_direct_vs_formula() -> None:
    cfg = xf.FormulaConfig()
    for name, text in CANONICAL:
        spec = _spec(text)
        for x in (1e3, 1e4):
            b = xf.a_exp_formula(spec, x, cfg)
            direct = sieve.direct_exp_sum(spec, x)
            assert abs(direct - b.total) <= 0.25 * x ** 0.45, (name, x)


ORACLE_CHECKS = [
    ("geometric-closed-form", check_geometric_closed_form),
    ("multiplicativity", check_multiplicativity),
    ("dirichlet-consistency", check_dirichlet_consistency),
    ("direct-vs-formula", check_direct_vs_formula),
]


# ---------------------------------------------------------------- asymptotics

def check_sine_factor_exactness() -> None:
    cfg = xf.FormulaConfig()
    mob = _spec("finite:[-1]")
    ones = _spec("cm:xi=1")
    assert xf.delta_1(mob, 1e3, cfg) == 0
    assert xf.delta_rho(ones, 1, 1e3, cfg) == 0
    assert xf.delta_half(ones, 1e3, cfg) == 0  # z+w = 1 integer, w = 0


def check_watson_remainder_order() -> None:
    cfg = xf.FormulaConfig()
    spec = _spec("periodic:m=2:[i,-i]")
    w = eps_model.zw_params(spec).w

    def rem(x: float) -> float:
        scale = math.sqrt(x) * math.log(x) ** (w.real - 1.0)
        return abs(
            xf.delta_half(spec, x, cfg) - xf.watson_delta_half(spec, x, 3, cfg)
        ) / scale

    r3, r5 = rem(1e3), rem(1e5)
    bound = 2.0 * (math.log(1e5) / math.log(1e3)) ** (-4.0)
    assert r5 <= bound * r3, (r3, r5, bound)


def check_bias_labels() -> None:
    cfg = xf.FormulaConfig()
    cases = [
        ("finite:[exp(i*pi/5),1]", bias.PERSISTENT, 1.25),
        ("finite:[exp(i*pi/5),-0.25+0.96824583655185426i]", bias.APPARENT, 0.0),
        ("finite:[exp(i*pi/5),-1]", bias.UNBOUNDED, -0.75),
        ("cm:xi=exp(i*pi/5)", bias.PERSISTENT, 0.5590169943749474),
        ("cm:xi=exp(i*pi/3)", bias.APPARENT, 0.0),
        ("cm:xi=exp(i*2*pi/3)", bias.UNBOUNDED, -0.5),
    ]
    for text, want, rzw in cases:
        rep = bias.classify(_spec(text), cfg)
        assert rep.classification == want, (text, rep.classification)
        assert abs(rep.re_z_plus_w - rzw) <= 1e-4, (text, rep.re_z_plus_w)


def check_trajectory_contraction() -> None:
    cfg = xf.FormulaConfig()
    spec = _spec("periodic:m=2:[i,-i]")
    samples = bias.trajectory(spec, 1e3, 1e5, 9, "LOG", bias.DIRECT, cfg)
    assert abs(samples[-1].B_centered) < abs(samples[0].B_centered), [
        abs(s.B_centered) for s in samples
    ]


ASYMPTOTICS_CHECKS = [
    ("sine-factor-exactness", check_sine_factor_exactness),
    ("watson-remainder-order", check_watson_remainder_order),
    ("bias-labels", check_bias_labels),
    ("trajectory-contraction", check_trajectory_contraction),
]

SUITES = {
    "core": CORE_CHECKS,
    "oracle": ORACLE_CHECKS,
    "asymptotics": ASYMPTOTICS_CHECKS,
}


def run_suite(name: str, emit: Optional[Callable[[str], None]] = print) -> tuple[int, int]:
    """Run one suite; returns (passed, failed)."""
    checks = SUITES.get(name)
    if checks is None:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    passed = failed = 0
    for label, fn in checks:
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - report any failure kind
            failed += 1
            if emit:
                emit(f"FAIL {name}:{label}: {exc!r}")
        else:
            passed += 1
            if emit:
                emit(f"PASS {name}:{label}")
    if emit:
        emit(f"suite {name}: {passed} passed, {failed} failed")
    return passed, failed

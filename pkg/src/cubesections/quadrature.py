"""Floating-point oracle for the oscillatory section integrals.

The integrals are split at u = U (a multiple of π).  On [0, U] an adaptive
Gauss-Legendre rule runs on panels aligned with the zeros of sin u.  Beyond U
every integrand is a trigonometric polynomial times a power u^{-p}; the tail
is either negligible by the bound ∫_U^∞ u^{-p} du or is computed from the
generalized exponential integral

    ∫_U^∞ u^{-p} e^{iωu} du = U^{1-p} E_p(-iωU).

This module is deliberately independent of the exact code paths: it is the
cross-check, not the source of truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import mpmath
import numpy as np

from .errors import DomainError, ToleranceUnreachable
from .numeric.interval import DyadicInterval, interval_log, interval_sin
from .numeric.roots import IsolatingInterval, certified_bisection

_GL_ORDER = 20
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_ORDER)
_SERIES_SWITCH = 0.5
_MAX_CUTOFF_PERIODS = 24


class IntegrandKind(Enum):
    SINC_POWER = "SincPower"
    EXTREMALITY_F = "ExtremalityF"
    EXTREMALITY_G = "ExtremalityG"


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-9
    max_panels: int = 200_000
    tail_cutoff: Optional[float] = None

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")


@dataclass(frozen=True)
class IntegrandSpec:
    """(sin u/u)^d·cos(2√D·t·u)·u^k for SincPower, with D = freq_dim or d.

    For the extremality kinds ``d`` is the face dimension n and the factor
    u^k is unused; the integrands are (sin u/u)^{n-2}f(u)·cos(...) and
    −(sin u/u)^{n-1}g(u)·cos(...).
    """

    d: int
    k: int = 0
    t: float = 0.0
    kind: IntegrandKind = IntegrandKind.SINC_POWER
    freq_dim: Optional[int] = None

    @property
    def omega(self) -> float:
        return 2.0 * math.sqrt(self.freq_dim or self.d) * abs(float(self.t))


# -- series for f and g near zero ------------------------------------------------

@lru_cache(maxsize=1)
def _fg_series(n_terms: int = 16) -> Tuple[np.ndarray, np.ndarray]:
    """Even power-series coefficients of f and g (in u², lowest first)."""
    N = n_terms + 2
    sinc = [Fraction((-1) ** j, math.factorial(2 * j + 1)) for j in range(N)]
    cos = [Fraction((-1) ** j, math.factorial(2 * j)) for j in range(N)]

    def mul(a, b):
        out = [Fraction(0)] * N
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if i + j < N:
                    out[i + j] += x * y
        return out

    sinc2 = mul(sinc, sinc)
    cs = mul(cos, sinc)
    f = [2 * a - b for a, b in zip(sinc2, cs)]
    f[0] -= 1
    # g = cos + (u²/3 − 1)·sinc
    u2_sinc = [Fraction(0)] + [x / 3 for x in sinc[:-1]]
    g = [c + a - s for c, a, s in zip(cos, u2_sinc, sinc)]
    return (np.array([float(x) for x in f[:n_terms]]), np.array([float(x) for x in g[:n_terms]]))


def _poly_u2(coeffs: np.ndarray, u: np.ndarray) -> np.ndarray:
    return np.polynomial.polynomial.polyval(u * u, coeffs)


def f_func(u: np.ndarray) -> np.ndarray:
    """f(u) = 2 sin²u/u² − cos u·sin u/u − 1, cancellation-free near 0."""
    u = np.asarray(u, dtype=float)
    fs, _ = _fg_series()
    small = np.abs(u) < _SERIES_SWITCH
    s = np.sinc(u / np.pi)
    out = 2 * s * s - np.cos(u) * s - 1
    return np.where(small, _poly_u2(fs, u), out)


def g_func(u: np.ndarray) -> np.ndarray:
    """g(u) = cos u + (u²/3 − 1)·sin u/u, cancellation-free near 0."""
    u = np.asarray(u, dtype=float)
    _, gs = _fg_series()
    small = np.abs(u) < _SERIES_SWITCH
    s = np.sinc(u / np.pi)
    out = np.cos(u) + (u * u / 3 - 1) * s
    return np.where(small, _poly_u2(gs, u), out)


def _integrand(spec: IntegrandSpec, u: np.ndarray) -> np.ndarray:
    s = np.sinc(u / np.pi)
    c = np.cos(spec.omega * u)
    if spec.kind is IntegrandKind.SINC_POWER:
        return s ** spec.d * c * u ** spec.k
    if spec.kind is IntegrandKind.EXTREMALITY_F:
        return s ** (spec.d - 2) * f_func(u) * c
    return -(s ** (spec.d - 1)) * g_func(u) * c


# -- tail decomposition ------------------------------------------------------------

# Each tail term: (coefficient, power of sin, power of cos, power p of 1/u).
_TailTerm = Tuple[float, int, int, int]


def _tail_terms(spec: IntegrandSpec) -> List[_TailTerm]:
    n = spec.d
    if spec.kind is IntegrandKind.SINC_POWER:
        return [(1.0, n, 0, n - spec.k)]
    if spec.kind is IntegrandKind.EXTREMALITY_F:
        return [(2.0, n, 0, n), (-1.0, n - 1, 1, n - 1), (-1.0, n - 2, 0, n - 2)]
    return [(-1.0, n - 1, 1, n - 1), (-1.0 / 3.0, n, 0, n - 2), (1.0, n, 0, n)]


def _decay_power(spec: IntegrandSpec) -> int:
    return min(p for _, _, _, p in _tail_terms(spec))


def _tail_bound(spec: IntegrandSpec, U: float) -> float:
    if _decay_power(spec) <= 1:
        return math.inf
    return sum(abs(c) * U ** (1 - p) / (p - 1) for c, _, _, p in _tail_terms(spec))


@lru_cache(maxsize=4096)
def _trig_expansion(a: int, b: int) -> Tuple[Tuple[int, complex], ...]:
    """sin^a(u)·cos^b(u) = Σ c_j e^{i j u}."""
    poly = {0: complex(1.0)}

    def times(p, q):
        out: Dict[int, complex] = {}
        for i, x in p.items():
            for j, y in q.items():
                out[i + j] = out.get(i + j, 0) + x * y
        return out

    sin_e = {1: 1 / 2j, -1: -1 / 2j}
    cos_e = {1: 0.5, -1: 0.5}
    for _ in range(a):
        poly = times(poly, sin_e)
    for _ in range(b):
        poly = times(poly, cos_e)
    return tuple(sorted((k, v) for k, v in poly.items() if abs(v) > 0))


def _exact_tail(spec: IntegrandSpec, U: float) -> float:
    omega = spec.omega
    total = mpmath.mpf(0)
    with mpmath.workdps(30):
        Um = mpmath.mpf(U)
        for coef, a, b, p in _tail_terms(spec):
            # cos(ωu) = (e^{iωu} + e^{−iωu})/2; gather weights per frequency first
            # so that cancelling zero-frequency parts never reach E_1(0).
            weights: Dict[float, complex] = {}
            for j, cj in _trig_expansion(a, b):
                for w in (j + omega, j - omega):
                    key = 0.0 if abs(w) < 1e-12 else w
                    weights[key] = weights.get(key, 0) + cj / 2
            acc = mpmath.mpc(0)
            for w, weight in weights.items():
                if abs(weight) < 1e-15:
                    continue
                if w == 0.0:
                    if p <= 1:
                        raise DomainError("integral diverges at this frequency")
                    acc += mpmath.mpc(weight) * Um ** (1 - p) / (p - 1)
                else:
                    acc += mpmath.mpc(weight) * Um ** (1 - p) * mpmath.expint(p, mpmath.mpc(0, -w) * Um)
            total += coef * acc.real
    return float(total)


def _choose_cutoff(spec: IntegrandSpec, cfg: QuadratureConfig) -> Tuple[float, bool]:
    """(U, exact_tail) with U a multiple of π."""
    if cfg.tail_cutoff is not None:
        U = math.pi * max(1, math.ceil(cfg.tail_cutoff / math.pi))
        return U, _tail_bound(spec, U) >= cfg.abs_tol / 4
    for m in range(1, _MAX_CUTOFF_PERIODS + 1):
        U = m * math.pi
        if _tail_bound(spec, U) < cfg.abs_tol / 4:
            return U, False
    return _MAX_CUTOFF_PERIODS * math.pi, True


# -- adaptive panel quadrature ---------------------------------------------------------

def _gl(spec: IntegrandSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    half = (b - a)[:, None] / 2
    mid = (b + a)[:, None] / 2
    u = mid + half * _GL_X[None, :]
    return (_integrand(spec, u) * _GL_W[None, :]).sum(axis=1) * half[:, 0]


def _adaptive(spec: IntegrandSpec, U: float, cfg: QuadratureConfig) -> float:
    per_pi = max(1, math.ceil(spec.omega / 2))
    n0 = max(1, round(U / math.pi)) * per_pi
    edges = np.linspace(0.0, U, n0 + 1)
    a, b = edges[:-1], edges[1:]
    budget = cfg.abs_tol / 2
    total = 0.0
    panels = len(a)
    while len(a):
        whole = _gl(spec, a, b)
        m = (a + b) / 2
        left, right = _gl(spec, a, m), _gl(spec, m, b)
        halves = left + right
        err = np.abs(whole - halves)
        ok = err <= budget * (b - a) / U
        total += float(halves[ok].sum())
        a, b, m = a[~ok], b[~ok], m[~ok]
        a, b = np.concatenate([a, m]), np.concatenate([m, b])
        panels += len(a)
        if panels > cfg.max_panels:
            raise ToleranceUnreachable(
                f"panel budget {cfg.max_panels} exhausted before reaching abs_tol={cfg.abs_tol}"
            )
    return total


def raw_integral(spec: IntegrandSpec, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """∫_0^∞ of the integrand described by ``spec``."""
    if spec.kind is IntegrandKind.SINC_POWER:
        if spec.k % 2 or spec.k < 0:
            raise DomainError("k must be a non-negative even integer")
        if spec.d < spec.k + 1:
            raise DomainError(f"integral diverges: need d > k, got d={spec.d}, k={spec.k}")
    elif spec.d < 4:
        raise DomainError("extremality integrals need n ≥ 4")
    U, exact = _choose_cutoff(spec, cfg)
    value = _adaptive(spec, U, cfg)
    if exact:
        value += _exact_tail(spec, U)
    return value


def integrate(spec: IntegrandSpec, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """I_{d,k}(t) = (2√d/π)∫_0^∞ (sin u/u)^d cos(2√d t u) u^k du for SincPower;
    the bare integral for the extremality kinds."""
    if spec.kind is not IntegrandKind.SINC_POWER:
        return raw_integral(spec, cfg)
    scale = 2 * math.sqrt(spec.d) / math.pi
    inner = raw_integral(spec, QuadratureConfig(cfg.abs_tol / scale, cfg.max_panels, cfg.tail_cutoff))
    return scale * inner


def section_volume(d: int, t, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    return integrate(IntegrandSpec(d, 0, float(t)), cfg)


def integrate_rs(n: int, d: int, t, cfg: QuadratureConfig = QuadratureConfig()) -> Tuple[float, float]:
    """The extremality integrals (r, s) with the cosine frequency 2√d·t as printed."""
    if n < 4 or d < n:
        raise DomainError(f"need 4 ≤ n ≤ d, got n={n}, d={d}")
    r = raw_integral(IntegrandSpec(n, 0, float(t), IntegrandKind.EXTREMALITY_F, d), cfg)
    s = raw_integral(IntegrandSpec(n, 0, float(t), IntegrandKind.EXTREMALITY_G, d), cfg)
    return r, s


# -- the substitution sin u/u = e^{−x²/6} ------------------------------------------------

def phi(u: float) -> float:
    """φ(u) = √(−6·log(sin u/u)) on (0, π)."""
    if not 0 < u < math.pi:
        raise DomainError("phi is defined on (0, π)")
    if u < 1e-4:
        # log(sin u/u) = −u²/6 − u⁴/180 − ...
        return u * math.sqrt(1 + u * u / 30)
    return math.sqrt(-6 * math.log(math.sin(u) / u))


def psi1_bracket(width=Fraction(1, 10**8)) -> IsolatingInterval:
    """Certified bracket of ψ(1), the u in (0, π) with φ(u) = 1."""

    def g(x: Fraction, bits: int) -> DyadicInterval:
        u = DyadicInterval.exact(x, bits)
        return interval_log(interval_sin(u, bits) / u, bits) + Fraction(1, 6)

    return certified_bisection(g, Fraction(9, 10), Fraction(11, 10), width)

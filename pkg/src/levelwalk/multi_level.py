"""Closed forms for the walk on an unbounded ladder of levels.

Level ``m`` is left only upwards, to ``m + 1``, with probability ``r``.
``f_{n,m}`` is the expected number of visits to site ``n`` on level ``m``
when the walk starts at site 0 of level 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, RangeError
from .params import WalkParams, single_spectrum
from .two_level import GF_DERIVATIVE, MAX_SITE, PAPER, POLE_GUARD

MAX_GF_LAYER = 64
MAX_PI_LAYER = 1000
MAX_VISIT_LAYER = 30
MAX_POLY_LAYER = 12


@dataclass(frozen=True)
class MultiValue:
    m: int
    value: float
    variant: str


@dataclass(frozen=True)
class LayerPolynomial:
    """Polynomial part of ``f_{n,m}``.

    For ``n >= 0``, ``f_{n,m} = r**m * zeta**(m+1) * xi2**n * sum(c_k * n**k)``;
    for ``n <= 0`` the same coefficients carry signs ``(-1)**k`` and ``xi2``
    becomes ``xi1``.
    """

    m: int
    coeffs: tuple[float, ...]

    def __call__(self, n: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc


def _check_layer(m: int, cap: int) -> None:
    if not 0 <= m <= cap:
        raise RangeError(f"m={m!r} outside [0, {cap}]")


def gf_F2(params: WalkParams, u: float, v: float) -> float:
    """Two-variable generating function ``sum f_{n,m} u**n v**m``."""
    p, q, r = params.p, params.q, params.r
    if u <= 0.0 or v <= 0.0:
        raise DomainError(f"u={u!r}, v={v!r} must be positive")
    if p * u + q / u + r * v >= 1.0 - POLE_GUARD:
        raise DomainError(f"(u, v)=({u!r}, {v!r}) outside the convergence region")
    return 1.0 / (1.0 - p * u - q / u - r * v)


def gf_Gm(params: WalkParams, u: float, m: int) -> float:
    """Generating function ``sum_n f_{n,m} u**n`` of a single level."""
    _check_layer(m, MAX_GF_LAYER)
    roots = single_spectrum(params)
    if not (roots.xi2 + POLE_GUARD < u < roots.xi1 - POLE_GUARD):
        raise DomainError(f"u={u!r} outside ({roots.xi2!r}, {roots.xi1!r})")
    a = 1.0 - params.p * u - params.q / u
    return (params.r / a) ** (m + 1) / params.r


def alpha_m(params: WalkParams, m: int) -> float:
    """Expected total visits to level ``m``: ``r**m / (r+s)**(m+1)``."""
    _check_layer(m, MAX_PI_LAYER)
    r, s = params.r, params.s
    return (r / (r + s)) ** m / (r + s)


def pi_m(params: WalkParams, m: int) -> float:
    """Probability of absorption on level ``m`` (geometric in ``m``)."""
    _check_layer(m, MAX_PI_LAYER)
    stop = params.s / (params.r + params.s)
    return stop * (1.0 - stop) ** m


def v_m_paper(params: WalkParams, m: int) -> MultiValue:
    """The printed level value, reproduced as written."""
    _check_layer(m, MAX_GF_LAYER)
    r, s = params.r, params.s
    value = (m + 1) * params.drift / r * (r / (r + s)) ** (m + 1)
    return MultiValue(m, value, PAPER)


def v_m_gf(params: WalkParams, m: int) -> MultiValue:
    """``G_m'(1) = sum_n n f_{n,m} = (m+1) r**m (p-q) / (r+s)**(m+2)``."""
    _check_layer(m, MAX_GF_LAYER)
    r, s = params.r, params.s
    value = (m + 1) * params.drift * (r / (r + s)) ** m / (r + s) ** 2
    return MultiValue(m, value, GF_DERIVATIVE)


def payoff_paper_multi(params: WalkParams) -> float:
    """The printed unit-payoff closed form ``(p - q) / (2r + s)``."""
    return params.drift / (2.0 * params.r + params.s)


def payoff_sum(params: WalkParams, variant: str = GF_DERIVATIVE, m_max: int = 60) -> float:
    """Truncated ``sum_{m <= m_max} pi_m * v_m`` under either value variant."""
    value = v_m_gf if variant == GF_DERIVATIVE else v_m_paper
    return math.fsum(pi_m(params, m) * value(params, m).value for m in range(m_max + 1))


def _check_site(n: int, m: int) -> None:
    if abs(n) > MAX_SITE:
        raise RangeError(f"|n|={abs(n)} exceeds {MAX_SITE}")
    _check_layer(m, MAX_VISIT_LAYER)


def _upper_branch(params: WalkParams, n: int, m: int) -> float:
    # n >= 0: every term of the binomial sum is positive
    roots = single_spectrum(params)
    w = (roots.zeta - 1.0) / 2.0
    total = 0.0
    wk = 1.0
    for k in range(m + 1):
        total += math.comb(n + m, m - k) * math.comb(m + k, m) * wk
        wk *= w
    prefactor = params.r**m * roots.zeta ** (m + 1)
    decay = roots.xi2**n
    if decay < 1e-250:
        return math.exp(math.log(prefactor) + n * math.log(roots.xi2) + math.log(total))
    return prefactor * decay * total


def visit_count_multi(params: WalkParams, n: int, m: int) -> float:
    """Expected visits ``f_{n,m}``; negative ``n`` goes through the reflected walk."""
    _check_site(n, m)
    if n < 0:
        return _upper_branch(params.swapped(), -n, m)
    return _upper_branch(params, n, m)


def _gen_binom(x: int, k: int) -> int:
    """``C(x, k)`` for any integer ``x`` (falling factorial over ``k!``)."""
    num = 1
    for i in range(k):
        num *= x - i
    return num // math.factorial(k)


def visit_count_multi_alternating(params: WalkParams, n: int, m: int) -> float:
    """``f_{n,m}`` for ``n <= 0`` from the alternating large-root sum, term by term.

    Only used to cross-check :func:`visit_count_multi`; the alternating sum
    cancels badly once ``|n|`` or ``m`` grows.
    """
    _check_site(n, m)
    if n > 0:
        raise RangeError("alternating form applies to n <= 0")
    roots = single_spectrum(params)
    w = (roots.zeta + 1.0) / 2.0
    total = 0.0
    for k in range(m + 1):
        total += (-1) ** k * _gen_binom(n + m, m - k) * math.comb(m + k, m) * w**k
    return (-1) ** m * params.r**m * roots.zeta ** (m + 1) * roots.xi1**n * total


def layer_polynomial(params: WalkParams, m: int) -> LayerPolynomial:
    """Expand the level-``m`` binomial sum into powers of ``n``."""
    _check_layer(m, MAX_POLY_LAYER)
    w = (single_spectrum(params).zeta - 1.0) / 2.0
    coeffs = [0.0] * (m + 1)
    for j in range(m + 1):
        # C(n+m, m-j) = prod_{i<m-j} (n + m - i) / (m-j)!
        poly = [1]
        for i in range(m - j):
            shift = m - i
            nxt = [0] * (len(poly) + 1)
            for deg, c in enumerate(poly):
                nxt[deg] += shift * c
                nxt[deg + 1] += c
            poly = nxt
        scale = math.comb(m + j, m) * w**j
        denom = math.factorial(m - j)
        for deg, c in enumerate(poly):
            coeffs[deg] += float(Fraction(c, denom)) * scale
    return LayerPolynomial(m, tuple(coeffs))


def state_absorption_multi(params: WalkParams, n: int, m: int) -> float:
    return params.s * visit_count_multi(params, n, m)

"""Closed forms for the walk on two levels.

The particle starts at site 0 of level 0. Each step it moves forward (``p``),
backward (``q``), switches level (``r``) or is absorbed where it stands
(``s``). ``f_n`` and ``g_n`` are the expected visits to site ``n`` on levels
0 and 1.

Value and payoff come in two flavours. The ``*_paper`` functions return the
printed closed forms verbatim. The ``*_gf`` functions return the exact
derivatives of the generating functions at ``u = 1``, which is what
``sum(n * f_n)`` actually equals. The two disagree for generic parameters.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, RangeError
from .params import WalkParams, two_level_spectrum

POLE_GUARD = 1e-9
MAX_SITE = 10_000

PAPER = "paper"
GF_DERIVATIVE = "gf-derivative"


@dataclass(frozen=True)
class LayerSplit:
    """Probability of being absorbed on level 0 and on level 1."""

    pi0: float
    pi1: float


@dataclass(frozen=True)
class ValuePair:
    v0: float
    v1: float
    variant: str


def _check_annulus(params: WalkParams, u: float) -> float:
    roots = two_level_spectrum(params)
    lo, hi = roots.annulus
    if not (lo + POLE_GUARD < u < hi - POLE_GUARD):
        raise DomainError(f"u={u!r} outside the convergence annulus ({lo!r}, {hi!r})")
    return 1.0 - params.p * u - params.q / u


def gf_F(params: WalkParams, u: float) -> float:
    """Generating function ``sum f_n u**n`` of the level-0 visit counts."""
    a = _check_annulus(params, u)
    return a / (a * a - params.r**2)


def gf_G(params: WalkParams, u: float) -> float:
    """Generating function ``sum g_n u**n`` of the level-1 visit counts."""
    a = _check_annulus(params, u)
    return params.r / (a * a - params.r**2)


def layer_absorption(params: WalkParams) -> LayerSplit:
    r, s = params.r, params.s
    pi1 = r / (2.0 * r + s)
    return LayerSplit(pi0=1.0 - pi1, pi1=pi1)


def layer_value_paper(params: WalkParams) -> ValuePair:
    """The printed value formulas, reproduced as written."""
    p, q, r, s = params.p, params.q, params.r, params.s
    d = p - q
    v0 = d * (1.0 + 2.0 * r**2 / (s * (2.0 * r + s)))
    v1 = r * d * (2.0 * r**2 + s * (2.0 * r + s) + (r + s)) / (s * (2.0 * r + s) * (r + s))
    return ValuePair(v0, v1, PAPER)


def layer_value_gf(params: WalkParams) -> ValuePair:
    """``F'(1)`` and ``G'(1)``, i.e. ``sum n f_n`` and ``sum n g_n``.

    With ``A = 1 - p u - q/u`` the generating functions split as
    ``F = (1/(A-r) + 1/(A+r))/2`` and ``G = (1/(A-r) - 1/(A+r))/2``; at
    ``u = 1``, ``A - r = s``, ``A + r = 2r + s`` and ``A' = q - p``.
    """
    d = params.drift
    inner = 1.0 / params.s**2
    outer = 1.0 / (2.0 * params.r + params.s) ** 2
    return ValuePair(0.5 * d * (inner + outer), 0.5 * d * (inner - outer), GF_DERIVATIVE)


def payoff_paper(params: WalkParams, tau0: float = 1.0, tau1: float = 1.0) -> float:
    """``pi0*tau0*v0 + pi1*tau1*v1`` using the printed values."""
    split = layer_absorption(params)
    v = layer_value_paper(params)
    return split.pi0 * tau0 * v.v0 + split.pi1 * tau1 * v.v1


def payoff_gf(params: WalkParams, tau0: float = 1.0, tau1: float = 1.0) -> float:
    """Same combination as :func:`payoff_paper` with derivative values."""
    split = layer_absorption(params)
    v = layer_value_gf(params)
    return split.pi0 * tau0 * v.v0 + split.pi1 * tau1 * v.v1


def payoff_printed(params: WalkParams) -> float:
    """The printed unit-payoff closed form, evaluated verbatim."""
    p, q, r, s = params.p, params.q, params.r, params.s
    num = 2 * r**3 + (3 * r**2 + 1) * (r + s) + r**2 * (2 * r + s) + (r + s) * (2 * r + s)
    return (p - q) * num / (s * (2 * r + s) ** 2 * (r + s))


def _check_site(layer: int, n: int) -> None:
    if layer not in (0, 1):
        raise RangeError(f"layer={layer!r} must be 0 or 1")
    if abs(n) > MAX_SITE:
        raise RangeError(f"|n|={abs(n)} exceeds {MAX_SITE}")


def visit_count(params: WalkParams, layer: int, n: int) -> float:
    """Expected visits to site ``n`` of ``layer``.

    Negative sites are mapped onto the reflected walk so that only the small
    roots are ever raised to a power.
    """
    _check_site(layer, n)
    if n < 0:
        return visit_count(params.swapped(), layer, -n)
    roots = two_level_spectrum(params)
    slow = 0.5 * roots.zeta2 * roots.mu4**n
    fast = 0.5 * roots.zeta1 * roots.mu2**n
    return slow + fast if layer == 0 else slow - fast


def state_absorption(params: WalkParams, layer: int, n: int) -> float:
    return params.s * visit_count(params, layer, n)

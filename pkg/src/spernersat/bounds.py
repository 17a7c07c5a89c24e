"""Numeric bounds on the minimum size of a saturated k-Sperner system.

Lower bounds: every layer i of a k-layer system has at least
2^(2i(k-i-1)/(k-1)) members (a weighted covering argument), summing the
layers gives sum_lower_bound, and approximating that sum by a Gaussian
integral gives the closed form

    2^(k/2) * sqrt(k) * sqrt(pi(k-1)/(4k ln 2))
            * (erf(sqrt((k-3)^2 ln2 / (2(k-1)))) - erf(sqrt(2 ln2 / (k-1))))

handled here entirely in log2 space.  The bracketed factor tends to
sqrt(pi/(4 ln 2)) ~ 1.0645 > 1, so the bound eventually beats
sqrt(k) * 2^(k/2); find_threshold locates the first k where it stays
ahead.  Upper bounds come from the composed constructions: size
2^(s+1) * 28^j at degree k = 5j+2+s, i.e. exponent (1 - eps) * k with
eps = 1 - log2(28)/5 ~ 0.0385, improving on eps = 1 - log2(15)/4.

erf is computed locally to keep the whole chain auditable: a Maclaurin
series up to |x| = 3 and a continued fraction for the complement beyond,
both well inside the 1e-12 absolute-error budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LN2 = math.log(2.0)
SQRT_PI = math.sqrt(math.pi)

EPS_NEW = 1.0 - math.log2(28.0) / 5.0
EPS_MNS = 1.0 - math.log2(15.0) / 4.0


def _erf_series(x: float) -> float:
    # erf(x) = (2/sqrt(pi)) * sum (-1)^n x^(2n+1) / (n! (2n+1)); |x| <= 3
    term = x
    total = x
    n = 0
    xx = x * x
    while True:
        n += 1
        term *= -xx / n
        contribution = term / (2 * n + 1)
        total += contribution
        if abs(contribution) < 1e-18 * max(1.0, abs(total)):
            break
    return (2.0 / SQRT_PI) * total


def _erfc_continued_fraction(x: float) -> float:
    # erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))));
    # modified Lentz iteration, x > 3
    tiny = 1e-300
    f = x
    c = x
    d = 0.0
    n = 0
    while True:
        n += 1
        a = n / 2.0
        d = x + a * d
        if d == 0.0:
            d = tiny
        c = x + a / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-17:
            break
        if n > 10_000:
            raise RuntimeError("erfc continued fraction failed to converge; this is a defect")
    return math.exp(-x * x) / SQRT_PI / f


def erf_fn(x: float) -> float:
    """Error function, absolute error <= 1e-12 on all of R."""
    if x < 0.0:
        return -erf_fn(-x)
    if x <= 3.0:
        return _erf_series(x)
    return 1.0 - _erfc_continued_fraction(x)


def erfc_fn(x: float) -> float:
    """Complementary error function, absolute error <= 1e-12."""
    if x < 0.0:
        return 2.0 - erfc_fn(-x)
    if x <= 3.0:
        return 1.0 - _erf_series(x)
    return _erfc_continued_fraction(x)


def layer_lower_bound(i: int, k: int) -> float:
    """Minimum size of layer i in a k-layer system: 2^(2i(k-i-1)/(k-1))."""
    if k < 7:
        raise ValueError("k must be >= 7")
    if not 2 <= i <= (k - 1) // 2:
        raise ValueError(f"layer index must be in [2, {(k - 1) // 2}]")
    return 2.0 ** (2.0 * i * (k - i - 1) / (k - 1))


def sum_lower_bound(k: int) -> float:
    """Sum of the per-layer minima: 2 for the end layers, 2(k-1) for the
    layers next to them, the doubled middle terms, and the center layer
    when k is odd."""
    if k < 7:
        raise ValueError("k must be >= 7")
    total = 2.0 + 2.0 * (k - 1)
    for i in range(2, math.ceil((k - 1) / 2)):
        total += 2.0 * 2.0 ** (2.0 * i * (k - i - 1) / (k - 1))
    if k % 2 == 1:
        total += 2.0 ** ((k - 1) / 2.0)
    return total


def _erf_bracket_parts(k: int) -> tuple[float, float]:
    """(sqrt factor, erf difference) of the closed-form bound."""
    a = math.sqrt((k - 3) * (k - 3) * LN2 / (2.0 * (k - 1)))
    b = math.sqrt(2.0 * LN2 / (k - 1))
    diff = (1.0 - erfc_fn(a)) - erf_fn(b)
    root = math.sqrt(math.pi * (k - 1) / (4.0 * k * LN2))
    return root, diff


def bracket_factor(k: int) -> float:
    """sqrt(pi(k-1)/(4k ln2)) * (erf(a_k) - erf(b_k)); the bound beats
    sqrt(k) * 2^(k/2) exactly when this exceeds 1."""
    if k < 7:
        raise ValueError("k must be >= 7")
    root, diff = _erf_bracket_parts(k)
    return root * diff


def erf_lower_bound_log2(k: int) -> float:
    """log2 of the closed-form lower bound."""
    if k < 7:
        raise ValueError("k must be >= 7")
    root, diff = _erf_bracket_parts(k)
    if diff <= 0.0:
        raise RuntimeError("erf difference must be positive; this is a defect")
    return k / 2.0 + 0.5 * math.log2(k) + math.log2(root) + math.log2(diff)


@dataclass(frozen=True)
class ThresholdScan:
    """Smallest k whose whole suffix up to k_max clears sqrt(k) * 2^(k/2)."""

    k_max: int
    threshold: int | None
    margins: dict[int, float]  # erf_lower_bound_log2(k) - (k/2 + log2(k)/2)

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "k_max": self.k_max,
            "threshold": self.threshold,
            "margins": {str(k): v for k, v in sorted(self.margins.items())},
        }


def find_threshold(k_max: int) -> ThresholdScan:
    """Scan k in [7, k_max] for the first k from which the closed-form bound
    stays at or above k/2 + log2(k)/2 through k_max."""
    if k_max < 7:
        raise ValueError("k_max must be >= 7")
    margins = {}
    for k in range(7, k_max + 1):
        margins[k] = erf_lower_bound_log2(k) - (k / 2.0 + 0.5 * math.log2(k))
    threshold = None
    for k in range(k_max, 6, -1):
        if margins[k] < 0.0:
            break
        threshold = k
    return ThresholdScan(k_max=k_max, threshold=threshold, margins=margins)


@dataclass(frozen=True)
class BoundReport:
    """Every bound the package knows about one degree k.

    Log-space fields are always finite; sum_lower may overflow to inf for
    very large k and is accompanied by its log2.  Fields that require
    k >= 7 are None below that.
    """

    k: int
    baseline_lower_log2: float
    j: int
    s: int
    upper_log2: float
    eps_new: float
    eps_mns: float
    margin_upper: float
    layer_bounds_log2: dict[int, float] | None
    sum_lower: float | None
    sum_lower_log2: float | None
    erf_lower_log2: float | None
    claimed_lower_log2_166: float | None
    claimed_lower_log2: float | None
    margin_166: float | None
    margin_497: float | None

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "k": self.k,
            "baseline_lower_log2": self.baseline_lower_log2,
            "j": self.j,
            "s": self.s,
            "upper_log2": self.upper_log2,
            "eps_new": self.eps_new,
            "eps_mns": self.eps_mns,
            "layer_bounds_log2": None if self.layer_bounds_log2 is None else {
                str(i): v for i, v in sorted(self.layer_bounds_log2.items())
            },
            "sum_lower": self.sum_lower,
            "sum_lower_log2": self.sum_lower_log2,
            "erf_lower_log2": self.erf_lower_log2,
            "claimed_lower_log2_166": self.claimed_lower_log2_166,
            "claimed_lower_log2": self.claimed_lower_log2,
            "margins": {
                "upper_vs_eps": self.margin_upper,
                "erf_vs_166": self.margin_166,
                "erf_vs_497": self.margin_497,
            },
        }


def _log2_sum(terms: list[float]) -> float:
    # log2 of a sum given the log2 of each term
    peak = max(terms)
    return peak + math.log2(sum(2.0 ** (t - peak) for t in terms))


def upper_bound_report(k: int) -> BoundReport:
    """Assemble the full report for one k (k >= 2); the lower-bound side is
    populated from k = 7 on."""
    if k < 2:
        raise ValueError("k must be >= 2")
    j, s = divmod(k - 2, 5)
    upper_log2 = (s + 1) + j * math.log2(28.0)
    margin_upper = (1.0 - EPS_NEW) * k - upper_log2
    baseline = k / 2.0 - 0.5
    if k < 7:
        return BoundReport(
            k=k, baseline_lower_log2=baseline, j=j, s=s, upper_log2=upper_log2,
            eps_new=EPS_NEW, eps_mns=EPS_MNS, margin_upper=margin_upper,
            layer_bounds_log2=None, sum_lower=None, sum_lower_log2=None,
            erf_lower_log2=None, claimed_lower_log2_166=None,
            claimed_lower_log2=None, margin_166=None, margin_497=None,
        )
    layer_bounds = {i: 2.0 * i * (k - i - 1) / (k - 1) for i in range(2, (k - 1) // 2 + 1)}
    log_terms = [1.0, 1.0 + math.log2(k - 1.0)]
    for i in range(2, math.ceil((k - 1) / 2)):
        log_terms.append(1.0 + 2.0 * i * (k - i - 1) / (k - 1))
    if k % 2 == 1:
        log_terms.append((k - 1) / 2.0)
    sum_log2 = _log2_sum(log_terms)
    erf_log2 = erf_lower_bound_log2(k)
    claimed_166 = k / 2.0 + 0.5 * math.log2(k) - 1.66
    claimed = k / 2.0 + 0.5 * math.log2(k)
    return BoundReport(
        k=k, baseline_lower_log2=baseline, j=j, s=s, upper_log2=upper_log2,
        eps_new=EPS_NEW, eps_mns=EPS_MNS, margin_upper=margin_upper,
        layer_bounds_log2=layer_bounds,
        sum_lower=sum_lower_bound(k) if sum_log2 < 1020 else math.inf,
        sum_lower_log2=sum_log2,
        erf_lower_log2=erf_log2,
        claimed_lower_log2_166=claimed_166,
        claimed_lower_log2=claimed,
        margin_166=erf_log2 - claimed_166,
        margin_497=erf_log2 - claimed,
    )


def bound_table(k_lo: int, k_hi: int) -> list[BoundReport]:
    if not 2 <= k_lo <= k_hi:
        raise ValueError("need 2 <= k_lo <= k_hi")
    return [upper_bound_report(k) for k in range(k_lo, k_hi + 1)]

"""Numeric engine: hand-rolled erf/erfc against independent oracles, the
per-layer and summed lower bounds, the closed-form erf bound, the threshold
scan, and the assembled per-k reports."""

import math

import pytest

from spernersat import (
    EPS_MNS,
    EPS_NEW,
    bound_table,
    bracket_factor,
    erf_fn,
    erfc_fn,
    erf_lower_bound_log2,
    find_threshold,
    layer_lower_bound,
    sum_lower_bound,
    upper_bound_report,
)

# Reference values computed once with 40-digit arbitrary-precision
# arithmetic and frozen; the implementation must match to 1e-12 absolute.
ERF_TABLE = [
    (0.25, 0.27632639016823693299, 0.72367360983176306701),
    (0.5, 0.52049987781304653768, 0.47950012218695346232),
    (1.0, 0.84270079294971486934, 0.15729920705028513066),
    (1.5, 0.96610514647531072707, 0.033894853524689272933),
    (2.0, 0.99532226501895273416, 0.0046777349810472658379),
    (2.5, 0.99959304798255504106, 0.00040695201744495893956),
    (2.9, 0.99995890212190054116, 0.000041097878099458835684),
    (3.0, 0.99997790950300141456, 0.000022090496998585441373),
    (3.1, 0.9999883513426328004, 0.000011648657367199596034),
    (3.5, 0.99999925690162765859, 7.4309837234141274552e-7),
    (4.0, 0.99999998458274209972, 1.5417257900280018852e-8),
    (5.0, 0.99999999999846254021, 1.5374597944280348502e-12),
    (6.0, 0.99999999999999997848, 2.1519736712498913117e-17),
    (8.0, 1.0, 1.122429717298292708e-29),
]


# ------------------------------------------------------------ erf / erfc

def test_erf_frozen_table():
    for x, erf_ref, erfc_ref in ERF_TABLE:
        assert erf_fn(x) == pytest.approx(erf_ref, abs=1e-12), x
        assert erfc_fn(x) == pytest.approx(erfc_ref, abs=1e-12), x


def test_erfc_relative_accuracy_in_the_tail():
    """Absolute error 1e-12 is vacuous at x >= 6; the continued fraction
    actually holds relative error there."""
    for x, _, erfc_ref in ERF_TABLE:
        if x > 3.0:
            assert erfc_fn(x) == pytest.approx(erfc_ref, rel=1e-10), x


def test_erf_odd_symmetry_and_complement():
    for x in [0.0, 0.3, 1.7, 2.9, 3.0, 3.2, 5.5]:
        assert erf_fn(-x) == pytest.approx(-erf_fn(x), abs=1e-15)
        assert erfc_fn(-x) == pytest.approx(2.0 - erfc_fn(x), abs=1e-12)
        assert erf_fn(x) + erfc_fn(x) == pytest.approx(1.0, abs=1e-12)


def test_erf_matches_stdlib():
    x = -6.0
    while x <= 6.0:
        assert erf_fn(x) == pytest.approx(math.erf(x), abs=1e-12), x
        assert erfc_fn(x) == pytest.approx(math.erfc(x), abs=1e-12), x
        x += 0.0625


def test_erf_matches_mpmath_when_available():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 30
    x = 0.0
    worst = 0.0
    while x <= 8.0:
        worst = max(worst, abs(erf_fn(x) - float(mpmath.erf(x))))
        worst = max(worst, abs(erfc_fn(x) - float(mpmath.erfc(x))))
        x += 0.03125
    assert worst < 1e-12


def test_erf_series_lentz_crossover_is_seamless():
    eps = 1e-9
    assert erf_fn(3.0 + eps) - erf_fn(3.0 - eps) == pytest.approx(0.0, abs=1e-11)
    assert erfc_fn(3.0 + eps) - erfc_fn(3.0 - eps) == pytest.approx(0.0, abs=1e-11)


# -------------------------------------------------------- layer and sum

def test_layer_lower_bound_fixed_values():
    assert layer_lower_bound(2, 7) == pytest.approx(2.0 ** (8.0 / 3.0), rel=1e-15)
    assert layer_lower_bound(3, 7) == pytest.approx(8.0, rel=1e-15)
    assert layer_lower_bound(4, 11) == pytest.approx(2.0 ** 4.8, rel=1e-15)
    assert layer_lower_bound(5, 11) == pytest.approx(2.0 ** 5.0, rel=1e-15)


def test_layer_lower_bound_guards():
    with pytest.raises(ValueError):
        layer_lower_bound(2, 6)
    with pytest.raises(ValueError):
        layer_lower_bound(1, 7)
    with pytest.raises(ValueError):
        layer_lower_bound(4, 7)


def test_sum_lower_bound_frozen_values():
    assert sum_lower_bound(7) == pytest.approx(34.699208415745595, abs=1e-9)
    assert sum_lower_bound(8) == pytest.approx(52.025981710340204, abs=1e-9)
    assert sum_lower_bound(20) == pytest.approx(4781.247615176261, rel=1e-12)
    with pytest.raises(ValueError):
        sum_lower_bound(6)


def test_sum_lower_bound_dominates_its_pieces():
    for k in range(7, 40):
        total = 2.0 + 2.0 * (k - 1)
        for i in range(2, (k - 1) // 2 + 1):
            total += layer_lower_bound(i, k) * (1 if 2 * i == k - 1 else 2)
        assert sum_lower_bound(k) == pytest.approx(total, rel=1e-12)


# ------------------------------------------------------ closed-form bound

def test_bracket_factor_frozen_values():
    assert bracket_factor(496) == pytest.approx(0.9999525926429138, abs=1e-12)
    assert bracket_factor(497) == pytest.approx(1.0000184905969367, abs=1e-12)
    assert bracket_factor(10 ** 6) == pytest.approx(1.063052274288716, rel=1e-9)
    assert bracket_factor(496) < 1.0 < bracket_factor(497)


def test_bracket_factor_increases():
    samples = [7, 20, 100, 496, 497, 1000, 5000, 10 ** 5, 10 ** 6]
    values = [bracket_factor(k) for k in samples]
    assert values == sorted(values)
    # limit sqrt(pi / (4 ln 2)) is never exceeded
    assert values[-1] < math.sqrt(math.pi / (4.0 * math.log(2.0)))


def test_erf_lower_bound_log2_frozen():
    assert erf_lower_bound_log2(7) == pytest.approx(3.2507642849041414, abs=1e-9)
    assert erf_lower_bound_log2(497) == pytest.approx(252.97857769682702, abs=1e-9)
    with pytest.raises(ValueError):
        erf_lower_bound_log2(6)


def test_erf_bound_equals_baseline_plus_bracket_margin():
    for k in (7, 50, 497, 2000):
        margin = erf_lower_bound_log2(k) - (k / 2.0 + 0.5 * math.log2(k))
        assert margin == pytest.approx(math.log2(bracket_factor(k)), abs=1e-12)


# ------------------------------------------------------------- threshold

def test_find_threshold_at_1000():
    scan = find_threshold(1000)
    assert scan.threshold == 497
    assert scan.margins[496] == pytest.approx(-6.839598020746962e-05, abs=1e-12)
    assert scan.margins[497] == pytest.approx(2.6676045877138677e-05, abs=1e-12)
    assert scan.margins[496] < 0.0 < scan.margins[497]
    d = scan.to_json_dict()
    assert d["schema_version"] == 1 and d["threshold"] == 497


def test_threshold_is_stable_for_larger_scans():
    scan = find_threshold(5000)
    assert scan.threshold == 497
    tail = [scan.margins[k] for k in range(497, 5001)]
    assert all(b > a for a, b in zip(tail, tail[1:]))


def test_find_threshold_guard():
    with pytest.raises(ValueError):
        find_threshold(6)


# ------------------------------------------------------------ constants

def test_epsilon_constants():
    assert EPS_NEW == 1.0 - math.log2(28.0) / 5.0
    assert EPS_MNS == 1.0 - math.log2(15.0) / 4.0
    assert EPS_NEW == pytest.approx(0.038529, abs=1e-6)
    assert EPS_MNS == pytest.approx(0.023277, abs=1e-6)


# -------------------------------------------------------------- reports

def test_report_below_seven_has_no_lower_side():
    r = upper_bound_report(4)
    assert (r.j, r.s) == (0, 2)
    assert r.upper_log2 == pytest.approx(3.0)
    for field in (r.layer_bounds_log2, r.sum_lower, r.sum_lower_log2,
                  r.erf_lower_log2, r.margin_166, r.margin_497):
        assert field is None
    with pytest.raises(ValueError):
        upper_bound_report(1)


def test_report_at_seven():
    r = upper_bound_report(7)
    assert (r.j, r.s) == (1, 0)
    assert r.upper_log2 == pytest.approx(1.0 + math.log2(28.0), rel=1e-15)
    assert r.layer_bounds_log2 == {2: pytest.approx(8.0 / 3.0), 3: pytest.approx(3.0)}
    assert r.sum_lower == pytest.approx(34.699208415745595, abs=1e-9)
    assert r.sum_lower_log2 == pytest.approx(math.log2(r.sum_lower), abs=1e-12)
    assert r.erf_lower_log2 == pytest.approx(3.2507642849041414, abs=1e-9)
    assert r.margin_166 > 0.0       # beats the 1.66-constant line already
    assert r.margin_497 < 0.0       # but not the constant-free line below 497
    assert r.margin_upper >= 0.0


def test_report_upper_margin_nonnegative_through_sixty():
    for k in range(2, 61):
        r = upper_bound_report(k)
        assert r.margin_upper >= 0.0, k
        assert r.upper_log2 <= (1.0 - EPS_NEW) * k + 1e-12, k


def test_report_switches_to_log_space_when_sum_overflows():
    r = upper_bound_report(2100)
    assert r.sum_lower == math.inf
    assert r.sum_lower_log2 == pytest.approx(1055.6078744768547, rel=1e-12)
    assert r.sum_lower_log2 < 2100  # still far below the trivial upper bound


def test_report_json_shape():
    d = upper_bound_report(12).to_json_dict()
    assert d["schema_version"] == 1
    assert d["k"] == 12
    assert set(d["margins"]) == {"upper_vs_eps", "erf_vs_166", "erf_vs_497"}
    assert d["layer_bounds_log2"]["2"] == pytest.approx(2 * 2 * 9 / 11)


def test_bound_table_range():
    table = bound_table(2, 12)
    assert [r.k for r in table] == list(range(2, 13))
    with pytest.raises(ValueError):
        bound_table(5, 4)
    with pytest.raises(ValueError):
        bound_table(1, 4)

import math

import pytest

from nestedmzi.scenario import (
    MIRRORS,
    Scenario,
    check_frequency_plan,
    standard_case,
)


def test_standard_cases_phi_kappa():
    assert standard_case("a").phi == pytest.approx(math.pi)
    assert standard_case("a").kappa == 1.0
    assert standard_case("b").phi == 0.0
    assert standard_case("b").kappa == 1.0
    assert standard_case("c").phi == 0.0
    assert standard_case("c").kappa == 0.0


def test_standard_case_defaults():
    sc = standard_case("b")
    assert sc.epsilon == 0.01
    assert sc.duration == 1.0
    assert sc.sample_rate == 1024.0
    assert sc.mirror_freq == {"A": 31.0, "B": 37.0, "C": 41.0, "E": 47.0, "F": 59.0}
    assert sc.series_order == 4
    assert all(sc.vib_amplitude[m] == sc.epsilon for m in MIRRORS)


def test_standard_case_pure():
    assert standard_case("a") == standard_case("a")


def test_unknown_case_rejected():
    with pytest.raises(ValueError):
        standard_case("d")


@pytest.mark.parametrize(
    "kwargs",
    [
        {"epsilon": 0.0},
        {"epsilon": 0.2},
        {"kappa": 0.5},
        {"duration": 0.0},
        {"series_order": 2},
        {"sample_rate": 100.0},
        {"mirror_freq": {"A": 31.5, "B": 37, "C": 41, "E": 47, "F": 59}},
        {"mirror_freq": {"A": 31, "B": 37, "C": 41, "E": 47}},
    ],
)
def test_invariant_violations_rejected(kwargs):
    base = standard_case("b").to_dict()
    base.update(kwargs)
    with pytest.raises(ValueError):
        Scenario.from_dict(base)


def test_json_round_trip():
    sc = standard_case("a")
    again = Scenario.from_json(sc.to_json())
    assert again == sc


def test_json_unknown_key_rejected():
    data = standard_case("a").to_dict()
    data["extra"] = 1
    with pytest.raises(ValueError, match="unknown"):
        Scenario.from_dict(data)


def test_default_plan_collision_free():
    for case in "abc":
        report = check_frequency_plan(standard_case(case))
        assert report.ok
        assert report.doubles == (62.0, 74.0, 82.0, 94.0, 118.0)


def _exhaustive_tone_collisions(freqs):
    """Independent oracle: enumerate the full tone set by brute force."""
    vals = list(freqs.values())
    bins = set(vals) | {2 * f for f in vals}
    hits = []
    for i, fi in enumerate(vals):
        for j, fj in enumerate(vals):
            if i == j:
                continue
            for tone in (fi + fj, abs(fi - fj)):
                if tone in bins:
                    hits.append(tone)
    for i, fi in enumerate(vals):
        for j, fj in enumerate(vals):
            if i != j and (fi == 2 * fj or fi == fj):
                hits.append(fi)
    return hits


def test_default_plan_matches_brute_force():
    sc = standard_case("b")
    assert _exhaustive_tone_collisions(sc.mirror_freq) == []
    assert check_frequency_plan(sc).ok


def test_colliding_plan_detected():
    freqs = {"A": 37.0, "B": 41.0, "C": 43.0, "E": 47.0, "F": 53.0}
    assert _exhaustive_tone_collisions(freqs) != []
    sc = standard_case("b").with_overrides(mirror_freq=freqs)
    report = check_frequency_plan(sc)
    assert not report.ok
    # 41 + 53 = 94 = 2 * 47
    assert any(
        c.tone_freq == 94.0 and c.bin_freq == 94.0 for c in report.collisions
    )


def test_single_mirror_plan_trivially_clean():
    sc = standard_case("b").with_overrides(
        vib_amplitude={"A": 0, "B": 0, "C": 0.01, "E": 0, "F": 0}
    )
    report = check_frequency_plan(sc)
    assert report.ok
    assert report.fundamentals == (41.0,)
    assert report.sums == ()

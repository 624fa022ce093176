import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nestedmzi import beam
from nestedmzi.beam import (
    SQRT_HALF_PI,
    BeamComponent,
    BeamField,
    field_at,
    linearized_field_intensity,
    linearized_profile,
    mirror_shifts,
    quadcell_signal,
    quadcell_signal_quadrature,
    second_order_intensity,
    total_intensity,
    total_intensity_quadrature,
)
from nestedmzi.scenario import MIRRORS, standard_case


def scaled_case(case, eps):
    return standard_case(case).with_overrides(
        epsilon=eps, vib_amplitude={m: eps for m in MIRRORS}
    )


# -- field construction --------------------------------------------------


def test_mirror_shifts_bounds_and_zero_start():
    sc = standard_case("a")
    d0 = mirror_shifts(sc, 0.0)
    assert all(v == 0.0 for v in d0.values())
    for t in np.linspace(0, 1, 37):
        d = mirror_shifts(sc, t)
        for m in MIRRORS:
            assert abs(d[m]) <= sc.vib_amplitude[m] + 1e-15


def test_case_c_field_two_components():
    field = field_at(standard_case("c"), 0.123)
    assert len(field.components) == 2
    coeffs = sorted(c.coeff.real for c in field.components)
    assert coeffs == [-1.0, 1.0]


def test_static_field_components():
    sc = standard_case("b").with_overrides(
        vib_amplitude={m: 0.0 for m in MIRRORS}
    )
    field = field_at(sc, 0.5)
    assert all(c.shift == 0.0 for c in field.components)
    # kappa - 1 + e^{i phi} = 1 at phi=0
    assert sum(c.coeff for c in field.components) == pytest.approx(1.0)


def test_case_a_with_only_c_vibrating():
    sc = standard_case("a").with_overrides(
        vib_amplitude={"A": 0, "B": 0, "C": 0.01, "E": 0, "F": 0}
    )
    t = 1.0 / (4 * 41.0)  # quarter period of mirror C
    field = field_at(sc, t)
    shifts = {round(c.coeff.real, 6): c.shift for c in field.components}
    assert shifts[1.0] == pytest.approx(0.01)
    assert field.components[1].shift == 0.0
    assert field.components[2].shift == 0.0


# -- total intensity -----------------------------------------------------


def test_single_component_independent_of_shift():
    vals = [
        total_intensity(BeamField((BeamComponent(1.0, d),)))
        for d in (-0.3, 0.0, 0.08, 2.0)
    ]
    assert all(v == pytest.approx(SQRT_HALF_PI, rel=1e-14) for v in vals)


def test_perfect_destructive_overlap():
    field = BeamField((BeamComponent(1.0, 0.0), BeamComponent(-1.0, 0.0)))
    assert total_intensity(field) == pytest.approx(0.0, abs=1e-15)


def test_two_component_closed_form_vs_oracle():
    delta = 0.07
    field = BeamField((BeamComponent(-1.0, delta), BeamComponent(1.0, 0.0)))
    expected = SQRT_HALF_PI * 2.0 * (1.0 - math.exp(-(delta**2) / 2.0))
    assert total_intensity(field) == pytest.approx(expected, rel=1e-14)
    oracle = total_intensity_quadrature(field)
    assert total_intensity(field) == pytest.approx(oracle, rel=1e-9)


def test_quadrature_basics():
    assert total_intensity_quadrature(BeamField(())) == 0.0
    one = BeamField((BeamComponent(1.0, 0.0),))
    assert total_intensity_quadrature(one) == pytest.approx(SQRT_HALF_PI, rel=1e-9)
    with pytest.raises(ValueError):
        total_intensity_quadrature(one, half_width=4.0)
    with pytest.raises(ValueError):
        total_intensity_quadrature(one, step=0.1)


def test_quadrature_step_halving_agreement():
    field = BeamField((BeamComponent(0.4 - 0.3j, 0.05), BeamComponent(1.0, -0.02)))
    coarse = total_intensity_quadrature(field, step=1e-3)
    fine = total_intensity_quadrature(field, step=5e-4)
    assert coarse == pytest.approx(fine, rel=1e-12)


component = st.builds(
    BeamComponent,
    st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
    st.floats(min_value=-0.1, max_value=0.1),
)
fields = st.builds(
    BeamField, st.lists(component, min_size=1, max_size=3).map(tuple)
)


@settings(max_examples=60, deadline=None)
@given(fields)
def test_total_intensity_matches_quadrature(field):
    closed = total_intensity(field)
    oracle = total_intensity_quadrature(field)
    assert closed == pytest.approx(oracle, rel=1e-9, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(fields, st.floats(min_value=-0.5, max_value=0.5))
def test_translation_invariance(field, offset):
    moved = BeamField(
        tuple(BeamComponent(c.coeff, c.shift + offset) for c in field.components)
    )
    assert total_intensity(moved) == pytest.approx(
        total_intensity(field), abs=1e-12
    )


@settings(max_examples=40, deadline=None)
@given(fields, st.floats(min_value=-0.3, max_value=0.3))
def test_quadcell_not_translation_invariant_but_oracle_agrees(field, offset):
    moved = BeamField(
        tuple(BeamComponent(c.coeff, c.shift + offset) for c in field.components)
    )
    closed = quadcell_signal(moved)
    oracle = quadcell_signal_quadrature(moved)
    scale = max(abs(oracle), total_intensity(moved), 1e-12)
    assert abs(closed - oracle) / scale < 1e-9


# -- quad-cell detector --------------------------------------------------


def test_quadcell_single_component():
    for d in (0.01, -0.04, 0.08):
        field = BeamField((BeamComponent(1.0, d),))
        expected = SQRT_HALF_PI * math.erf(math.sqrt(2.0) * d)
        assert quadcell_signal(field) == pytest.approx(expected, rel=1e-12)
        assert quadcell_signal(field) == pytest.approx(
            quadcell_signal_quadrature(field), rel=1e-9
        )


def test_quadcell_zero_shifts():
    field = BeamField((BeamComponent(1.0, 0.0), BeamComponent(-0.5j, 0.0)))
    assert quadcell_signal(field) == 0.0


def test_case_c_quadcell_is_quintic():
    # linear and cubic orders cancel exactly for a (-1, +1) pair; the
    # residual is fifth order: amplitude ratio 32 under eps halving
    vals = []
    for eps in (0.02, 0.01):
        sc = scaled_case("c", eps)
        worst = max(
            abs(quadcell_signal(field_at(sc, i / 128.0))) for i in range(128)
        )
        vals.append(worst)
    assert vals[0] / vals[1] == pytest.approx(32.0, rel=0.05)


def test_case_c_quadcell_nonzero_exact_zero_linearized():
    sc = standard_case("c")
    exact = [abs(quadcell_signal(field_at(sc, i / 64.0))) for i in range(1, 64)]
    assert max(exact) > 0.0
    for i in range(64):
        assert linearized_field_intensity(sc, i / 64.0)[1] == 0.0


# -- linearized model ----------------------------------------------------


def test_case_c_linearized_profile():
    sc = standard_case("c")
    for t in np.linspace(0.0, 1.0, 100):
        s0, s1 = linearized_profile(sc, t)
        d = mirror_shifts(sc, t)
        assert abs(s0) < 1e-15
        # |Psi_lin| = |2 y e^{-y^2} (d_A - d_B)| pointwise (sign is the
        # unphysical overall phase of the field)
        for y in (-1.2, -0.3, 0.4, 2.0):
            lin = abs(s0 + 2.0 * s1 * y) * math.exp(-(y**2))
            target = abs(2.0 * y * math.exp(-(y**2)) * (d["A"] - d["B"]))
            assert lin == pytest.approx(target, abs=1e-12)


def test_linearized_static_matches_exact():
    sc = standard_case("a").with_overrides(vib_amplitude={m: 0.0 for m in MIRRORS})
    i_lin, di_lin = linearized_field_intensity(sc, 0.37)
    assert i_lin == pytest.approx(total_intensity(field_at(sc, 0.37)), rel=1e-14)
    assert di_lin == 0.0


def test_linearized_intensity_matches_quadrature():
    sc = standard_case("b")
    x, w = np.polynomial.legendre.leggauss(200)
    y = 4.0 * (x + 1.0)  # [0, 8]
    wy = 4.0 * w
    for t in (0.1, 0.31, 0.77):
        s0, s1 = linearized_profile(sc, t)

        def intensity(yv):
            return np.abs(np.exp(-(yv**2)) * (s0 + 2.0 * s1 * yv)) ** 2

        pos = float(np.sum(wy * intensity(y)))
        neg = float(np.sum(wy * intensity(-y)))
        i_lin, di_lin = linearized_field_intensity(sc, t)
        assert i_lin == pytest.approx(pos + neg, rel=1e-9)
        assert di_lin == pytest.approx(pos - neg, rel=1e-9, abs=1e-14)


# -- second-order expansion ----------------------------------------------


def test_second_order_symbolic_forms():
    # case b: I/sqrt(pi/2) = 1 + 2 (d_A - d_B)(d_A - d_C + d_E + d_F)
    sc = standard_case("b")
    for t in (0.11, 0.29, 0.83):
        d = mirror_shifts(sc, t)
        expected = SQRT_HALF_PI * (
            1.0
            + 2.0 * (d["A"] - d["B"]) * (d["A"] - d["C"] + d["E"] + d["F"])
        )
        assert second_order_intensity(sc, t) == pytest.approx(expected, rel=1e-12)
    # case c: I/sqrt(pi/2) = (d_A - d_B)^2
    sc = standard_case("c")
    for t in (0.11, 0.29, 0.83):
        d = mirror_shifts(sc, t)
        expected = SQRT_HALF_PI * (d["A"] - d["B"]) ** 2
        # the implementation reaches this value through a 2 - 2(1 - ...)
        # cancellation, so compare at absolute rounding level
        assert second_order_intensity(sc, t) == pytest.approx(
            expected, rel=1e-8, abs=1e-15
        )


def test_second_order_matches_exact_to_quartic():
    consts = []
    for eps in (0.04, 0.02, 0.01):
        sc = scaled_case("a", eps)
        worst = 0.0
        for i in range(64):
            t = i / 64.0
            diff = abs(
                total_intensity(field_at(sc, t)) - second_order_intensity(sc, t)
            )
            shift = max(abs(v) for v in mirror_shifts(sc, t).values())
            if shift > 1e-6:
                worst = max(worst, diff / shift**4)
        consts.append(worst)
    assert max(consts) / min(consts) < 1.5


def test_second_order_shift_bound():
    sc = standard_case("a").with_overrides(
        epsilon=0.08, vib_amplitude={m: 0.08 for m in MIRRORS}
    )
    t = 1.0 / (4 * 31.0)
    with pytest.raises(ValueError, match="bound"):
        second_order_intensity(sc, t)


def test_single_mirror_total_intensity_null():
    values = []
    for i in range(512):
        t = i / 512.0
        d = 0.01 * math.sin(2 * math.pi * 41.0 * t)
        values.append(total_intensity(BeamField((BeamComponent(1.0, d),))))
    values = np.array(values)
    assert (values.max() - values.min()) / values.mean() < 1e-12

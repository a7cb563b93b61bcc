import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pqcheck.errors import (
    DimensionMismatchError, QuantityError, Type1KoqError, Type1UnitError,
)
from pqcheck.koq import KoqSignature
from pqcheck.quantity import Quantity, q_add, q_convert, q_mul, q_pow
from pqcheck.units import UnitRegistry, conversion_factor


@pytest.fixture(scope="module")
def reg():
    return UnitRegistry.builtin()


def q(reg, value, text, **sig):
    return Quantity(value, reg.parse(text),
                    KoqSignature.from_dict(sig) if sig else
                    KoqSignature.empty())


class TestConstruction:
    def test_nonfinite_rejected(self, reg):
        for bad in (float("nan"), float("inf"), float("-inf")):
            with pytest.raises(QuantityError):
                Quantity(bad, reg.parse("m"))

    def test_dimensionless_scalar_display(self, reg):
        s = Quantity(0.5, reg.dimensionless())
        assert s.display() == "0.5"


class TestAdd:
    def test_cm_plus_ft(self, reg):
        total = q_add(q(reg, 10.5, "cm"), q(reg, 3.3, "ft"))
        assert total.value == pytest.approx(111.084, rel=1e-9)
        assert total.unit.display_str() == "cm"

    def test_incompatible_dimensions(self, reg):
        with pytest.raises(Type1UnitError) as exc:
            q_add(q(reg, 10.5, "cm"), q(reg, 42.0, "km/hr"))
        assert exc.value.left_dim == "[length]"
        assert exc.value.right_dim == "[length] / [time]"

    def test_additive_identity(self, reg):
        x = q(reg, 3.25, "m")
        assert q_add(x, q(reg, 0.0, "m")).value == 3.25

    def test_value_formula_is_exact(self, reg):
        a, b = q(reg, 10.5, "cm"), q(reg, 3.3, "ft")
        expected = a.value + b.value * conversion_factor(b.unit, a.unit)
        assert q_add(a, b).value == expected

    def test_subtraction_uses_sign(self, reg):
        out = q_add(q(reg, 2.0, "m"), q(reg, 50.0, "cm"), -1)
        assert out.value == pytest.approx(1.5, rel=1e-12)

    def test_koq_mismatch_after_unit_pass(self, reg):
        a = q(reg, 1.0, "J", ROTENERGY=1)
        b = q(reg, 1.0, "J", TORQUE=1)
        with pytest.raises(Type1KoqError):
            q_add(a, b)


class TestMul:
    # paper scenario: I = 16000 kg*m^2, duration = 180 s,
    # av1 = 10 rev/min, av2 = 93.75 rev/min as plain 1/s values
    def test_average_torque(self, reg):
        av1 = q(reg, 10.0 / 60.0 * 2.0 * math.pi, "s^-1")
        av2 = q(reg, 93.75 / 60.0 * 2.0 * math.pi, "s^-1")
        moi = q(reg, 16000.0, "kg*m^2")
        duration = q(reg, 180.0, "s")
        out = q_mul(q_mul(q_add(av2, av1, -1), moi), duration, "/")
        # oracle: ((93.75-10)/60*2*pi)*16000/180 = 779.5803992241338
        assert out.value == pytest.approx(779.5803992241338, rel=1e-12)
        assert out.value == pytest.approx(779.5804, rel=1e-3)
        assert out.unit.dimension == reg.parse("kg*m^2/s^2").dimension

    def test_final_energy(self, reg):
        av2 = q(reg, 93.75 / 60.0 * 2.0 * math.pi, "s^-1")
        moi = q(reg, 16000.0, "kg*m^2")
        half = Quantity(0.5, reg.dimensionless())
        out = q_mul(q_mul(q_mul(half, moi), av2), av2)
        # oracle: 8000 * (2*pi*93.75/60)^2 = 771062.8438351062
        assert out.value == pytest.approx(771062.8438351062, rel=1e-12)
        assert out.value == pytest.approx(7.7106e5, rel=1e-3)

    def test_multiplicative_identity(self, reg):
        x = q(reg, 7.5, "km/hr")
        one = Quantity(1.0, reg.dimensionless())
        out = q_mul(x, one)
        assert out.value == x.value
        assert out.unit.dimension == x.unit.dimension

    def test_display_concatenates_without_simplification(self, reg):
        out = q_mul(q(reg, 2.0, "kg*m^2/s^3"), q(reg, 4.0, "s^-1"), "/")
        assert out.unit.display_str() == "kg*m^2/s^3*s"

    def test_divide_by_zero(self, reg):
        with pytest.raises(QuantityError):
            q_mul(q(reg, 1.0, "m"), q(reg, 0.0, "s"), "/")

    def test_koq_signatures_combine(self, reg):
        a = q(reg, 2.0, "kg*m^2", MOI=1)
        b = q(reg, 3.0, "s^-1", AV=1)
        out = q_mul(q_mul(a, b), b)
        assert out.sig == KoqSignature.from_dict({"MOI": 1, "AV": 2})

    def test_untagged_scalar_is_transparent(self, reg):
        tagged = q(reg, 2.0, "kg*m^2", MOI=1)
        half = Quantity(0.5, reg.dimensionless())
        assert q_mul(half, tagged).sig == tagged.sig
        assert q_mul(tagged, half, "/").sig == tagged.sig

    def test_dimensionless_tagged_quantity_contributes(self, reg):
        # characteristic numbers carry a kind despite dimension '1'
        mach = Quantity(0.8, reg.dimensionless(),
                        KoqSignature.from_dict({"MACH": 1}))
        speed = q(reg, 340.0, "m", SPEED=1)
        assert q_mul(speed, mach).sig == \
            KoqSignature.from_dict({"MACH": 1, "SPEED": 1})


class TestPow:
    def test_square_matches_repeated_multiplication(self, reg):
        av = q(reg, 9.8174770425, "s^-1")
        assert q_pow(av, 2).value == pytest.approx(
            q_mul(av, av).value, rel=1e-12)
        assert q_pow(av, 2).unit.dimension == q_mul(av, av).unit.dimension
        # oracle: 9.8174770425^2 = 96.38285548001456
        assert q_pow(av, 2).value == pytest.approx(96.38285548001456,
                                                   rel=1e-12)
        assert q_pow(av, 2).value == pytest.approx(96.3829, rel=1e-3)

    def test_zero_power_is_dimensionless_untagged_one(self, reg):
        x = q(reg, 4.2, "km/hr", SPEED=1)
        out = q_pow(x, 0)
        assert out.value == 1.0
        assert out.unit.dimension.is_dimensionless()
        assert out.sig.is_empty()

    def test_zero_to_negative_power(self, reg):
        with pytest.raises(QuantityError):
            q_pow(q(reg, 0.0, "m"), -1)

    def test_sig_scales(self, reg):
        x = q(reg, 2.0, "s^-1", AV=1)
        assert q_pow(x, 3).sig == KoqSignature.from_dict({"AV": 3})


class TestConvert:
    def test_kj_to_ftlbf(self, reg):
        reg2 = reg.extended("unit ftlbf 1.0 ft*lbf\n")
        out = q_convert(q(reg2, 1.0, "kJ"), reg2.parse("ftlbf"))
        # oracle: 1000/(0.3048*4.4482216152605) = 737.5621492772653
        assert out.value == pytest.approx(737.5621492772653, rel=1e-12)
        assert out.value == pytest.approx(737.5621, rel=1e-4)

    def test_identity_conversion(self, reg):
        x = q(reg, 12.5, "km/hr")
        assert q_convert(x, x.unit).value == 12.5

    def test_ft_to_cm(self, reg):
        out = q_convert(q(reg, 3.3, "ft"), reg.parse("cm"))
        # oracle: 3.3 * 30.48 = 100.58399999999999
        assert out.value == pytest.approx(100.584, rel=1e-9)

    def test_mismatch_raises(self, reg):
        with pytest.raises(DimensionMismatchError):
            q_convert(q(reg, 1.0, "m"), reg.parse("s"))

    def test_signature_never_changes(self, reg):
        x = q(reg, 1.0, "kJ", ROTENERGY=1)
        assert q_convert(x, reg.parse("J")).sig == x.sig


UNIT_TEXTS = ["m", "cm", "km", "ft", "s", "hr", "min", "J", "kJ", "km/hr",
              "kg*m^2/s^2", "N*m"]


class TestProperties:
    @given(st.sampled_from(UNIT_TEXTS), st.sampled_from(UNIT_TEXTS),
           st.floats(min_value=-1e6, max_value=1e6,
                     allow_nan=False, allow_infinity=False))
    def test_conversion_round_trip(self, a_text, b_text, value):
        reg = UnitRegistry.builtin()
        a, b = reg.parse(a_text), reg.parse(b_text)
        try:
            there = q_convert(Quantity(value, a), b)
        except DimensionMismatchError:
            return
        back = q_convert(there, a)
        assert back.value == pytest.approx(value, rel=1e-9, abs=1e-30)

    @given(st.sampled_from(UNIT_TEXTS), st.sampled_from(UNIT_TEXTS),
           st.floats(min_value=-1e3, max_value=1e3,
                     allow_nan=False, allow_infinity=False),
           st.floats(min_value=-1e3, max_value=1e3,
                     allow_nan=False, allow_infinity=False))
    def test_add_checks_match_dim_eq(self, a_text, b_text, va, vb):
        # any Type1UnitError implies the dimensions really differ
        reg = UnitRegistry.builtin()
        a = Quantity(va, reg.parse(a_text))
        b = Quantity(vb, reg.parse(b_text))
        try:
            out = q_add(a, b)
        except Type1UnitError:
            assert a.unit.dimension != b.unit.dimension
        else:
            assert a.unit.dimension == b.unit.dimension
            expected = va + vb * conversion_factor(b.unit, a.unit)
            assert out.value == expected


class TestOperators:
    def test_scalar_lifting(self, reg):
        moi = q(reg, 16000.0, "kg*m^2")
        out = 0.5 * moi
        assert out.value == 8000.0
        assert out.unit.dimension == moi.unit.dimension

    def test_expression_reads_like_formula(self, reg):
        av2 = 93.75 / 60.0 * 2.0 * math.pi / q(reg, 1.0, "s")
        moi = q(reg, 16000.0, "kg*m^2")
        energy = 0.5 * moi * av2 * av2
        assert energy.value == pytest.approx(771062.8438351062, rel=1e-12)

    def test_pow_operator(self, reg):
        x = q(reg, 3.0, "m")
        assert (x ** 2).value == 9.0

    def test_display(self, reg):
        assert q(reg, 111.084, "cm").display() == "111.084 cm"

import random

import pytest

from larmour.base_fields import PrimeField, RationalField, ResElem
from larmour.errors import (
    NegativeValuation,
    SplitAlgebra,
    UndecidableDivision,
    ZeroInput,
)
from larmour.quad_forms import springer_boundary
from larmour.quaternion import (
    HalfInt,
    QuatAlgebra,
    _mul_generic,
    norm_form,
    normalize_presentation,
    residue_D,
    residue_field_extension,
    val_floor_half_units,
    valuation_D,
)
from larmour.random_forms import rand_laurent, rational_algebra
from larmour.valued_field import LaurentField, parse_laurent

K3 = LaurentField(PrimeField(3))
B3 = normalize_presentation(K3, K3.const(2), K3.t())


def rand_quat(rng, alg, min_val=-2, max_val=3, allow_zero=True):
    return alg.elem(
        *(rand_laurent(rng, alg.base, min_val, max_val, allow_zero=allow_zero) for _ in range(4))
    )


class TestMultiplication:
    def test_named_op_surface(self):
        from larmour.quaternion import conj_tau, nrd, quat_inv, quat_mul, trd

        x, y = B3.gen_x(), B3.gen_y()
        assert quat_mul(x, y) == B3.gen_z()
        assert conj_tau(x) == -x
        assert nrd(y) == parse_laurent(K3, "2*t")
        assert trd(B3.one()) == parse_laurent(K3, "2")
        assert quat_mul(x, quat_inv(x)) == B3.one()

    def test_defining_relations(self):
        x, y, z = B3.gen_x(), B3.gen_y(), B3.gen_z()
        assert x * y == z
        assert y * x == -z
        assert (x * x).c1 == B3.a
        assert (y * y).c1 == B3.b
        assert (z * z).c1 == -(B3.a * B3.b)

    def test_nrd_of_y(self):
        # Nrd(y) = -b = -t = 2t over F_3((t))
        assert B3.gen_y().nrd() == parse_laurent(K3, "2*t")

    def test_nrd_multiplicative(self):
        rng = random.Random(0)
        for _ in range(100):
            u, v = rand_quat(rng, B3), rand_quat(rng, B3)
            delta = (u * v).nrd() - u.nrd() * v.nrd()
            assert delta.is_possibly_zero() or delta.vanishes_below(delta.prec or 20)

    def test_packed_agrees_with_generic(self):
        rng = random.Random(1)
        for _ in range(250):
            u, v = rand_quat(rng, B3), rand_quat(rng, B3)
            assert u * v == _mul_generic(u, v)

    def test_inverse(self):
        rng = random.Random(2)
        for _ in range(40):
            u = rand_quat(rng, B3, allow_zero=False)
            prod = u * u.inv()
            assert all(c.vanishes_below(12) for c in (prod - B3.one()).co)

    def test_conj_and_trd(self):
        u = B3.elem(K3.one(), K3.t(), K3.const(2), K3.zero())
        c = u.conj()
        assert c.c1 == u.c1 and c.cx == -u.cx and c.cy == -u.cy
        assert u.trd() == parse_laurent(K3, "2")
        assert (u * c).c1 == u.nrd()


class TestValuation:
    def test_basis_values_ramified(self):
        assert valuation_D(B3.gen_y()) == HalfInt(1)
        assert valuation_D(B3.gen_z()) == HalfInt(1)
        assert valuation_D(B3.gen_x()) == HalfInt(0)
        assert valuation_D(B3.one()) == HalfInt(0)

    def test_zero_raises(self):
        with pytest.raises(ZeroInput):
            valuation_D(B3.zero())

    def test_multiplicative(self):
        rng = random.Random(3)
        for _ in range(60):
            u, v = rand_quat(rng, B3, allow_zero=False), rand_quat(rng, B3, allow_zero=False)
            assert valuation_D(u * v) == valuation_D(u) + valuation_D(v)

    def test_invariant_under_canonical_involution(self):
        rng = random.Random(4)
        for _ in range(60):
            u = rand_quat(rng, B3, allow_zero=False)
            assert valuation_D(u.conj()) == valuation_D(u)

    def test_integrality_criterion(self):
        # nu_D(u) >= 0 iff all four coordinates are integral, both kinds
        rng = random.Random(5)
        A = rational_algebra()
        for alg in (B3, A):
            for _ in range(150):
                u = rand_quat(rng, alg, -2, 3, allow_zero=False)
                coords_integral = all(
                    c.is_exact_zero() or c.valuation() >= 0 for c in u.co
                )
                assert (valuation_D(u).numerator >= 0) == coords_integral

    def test_coordinate_floor_matches_valuation(self):
        rng = random.Random(6)
        for _ in range(80):
            u = rand_quat(rng, B3, allow_zero=False)
            assert val_floor_half_units(u) == valuation_D(u).numerator

    def test_value_group_parities(self):
        rng = random.Random(7)
        A = rational_algebra()
        nums_unram = {valuation_D(rand_quat(rng, A, -2, 2, allow_zero=False)).numerator % 2 for _ in range(50)}
        assert nums_unram == {0}
        nums_ram = {valuation_D(rand_quat(rng, B3, -2, 2, allow_zero=False)).numerator % 2 for _ in range(80)}
        assert nums_ram == {0, 1}


class TestNormalizePresentation:
    def test_two_uniformizers(self):
        alg = normalize_presentation(K3, K3.t(), K3.t())
        assert (str(alg.a), str(alg.b)) == ("2", "t")
        raw_norm = springer_boundary(
            norm_form(QuatAlgebra(K3, K3.const(2), K3.t()))
        )
        assert springer_boundary(norm_form(alg)) == raw_norm

    def test_already_normalized(self):
        alg = normalize_presentation(K3, K3.const(2), K3.t())
        assert alg.ramified and alg.j == 2

    def test_split_detected(self):
        with pytest.raises(SplitAlgebra):
            normalize_presentation(K3, K3.one(), K3.t())

    def test_direct_construction_certifies_division(self):
        with pytest.raises(SplitAlgebra):
            QuatAlgebra(K3, K3.one(), K3.t())
        KQ = LaurentField(RationalField())
        with pytest.raises(UndecidableDivision):
            QuatAlgebra(KQ, KQ.const(-1), KQ.const(-1))

    def test_rationals_needs_assertion(self):
        KQ = LaurentField(RationalField())
        with pytest.raises(UndecidableDivision):
            normalize_presentation(KQ, KQ.const(-1), KQ.const(-1))
        alg = normalize_presentation(KQ, KQ.const(-1), KQ.const(-1), assume_division=True)
        assert not alg.ramified and alg.j == 1 and alg.division == "assumed"

    def test_square_class_reduction(self):
        alg = normalize_presentation(K3, parse_laurent(K3, "2*t^2"), K3.t(3))
        assert (str(alg.a), str(alg.b)) == ("2", "t")


class TestResidue:
    def test_uniformizer_residue_is_zero(self):
        r = residue_D(B3.gen_y())
        assert r.is_zero()

    def test_ramified_residue_pair(self):
        u = B3.elem(parse_laurent(K3, "2 + t"), parse_laurent(K3, "1 + t"), K3.zero(), K3.zero())
        r = residue_D(u)
        assert isinstance(r, ResElem) and r.raw == (2, 1)
        assert residue_field_extension(B3).abar == 2

    def test_negative_valuation_rejected(self):
        with pytest.raises(NegativeValuation):
            residue_D(B3.scalar(K3.t(-1)))

    def test_multiplicative_on_integral_elements(self):
        rng = random.Random(8)
        for _ in range(100):
            u = rand_quat(rng, B3, 0, 2)
            v = rand_quat(rng, B3, 0, 2)
            assert residue_D(u * v) == residue_D(u) * residue_D(v)

    def test_unramified_residue_multiplicative(self):
        rng = random.Random(9)
        A = rational_algebra()
        for _ in range(60):
            u = rand_quat(rng, A, 0, 2)
            v = rand_quat(rng, A, 0, 2)
            lhs = residue_D(u * v)
            rhs = residue_D(u) * residue_D(v)
            assert lhs == rhs

import random

import pytest

from larmour.base_fields import PrimeField, RationalField
from larmour.errors import UnsupportedField
from larmour.quad_forms import (
    QuadFormK,
    is_anisotropic_quad_K,
    residue_form,
    springer_boundary,
    springer_split,
)
from larmour.valued_field import LaurentField, parse_laurent

K3 = LaurentField(PrimeField(3))


def rand_form(rng, K, dim=None):
    dim = dim or rng.randint(1, 3)
    entries = []
    for _ in range(dim):
        val = rng.randint(-2, 4)
        terms = [(val, rng.randrange(1, 3))] + [
            (val + rng.randint(1, 3), rng.randrange(3)) for _ in range(rng.randrange(3))
        ]
        entries.append(K.from_terms(terms))
    return QuadFormK(K, tuple(entries))


class TestSplit:
    def test_unit_and_uniformizer(self):
        q = QuadFormK(K3, (K3.one(), K3.t()))
        q0, q1 = springer_split(q)
        assert [str(e) for e in q0.entries] == ["1"]
        assert [str(e) for e in q1.entries] == ["1"]

    def test_even_odd_valuations(self):
        q = QuadFormK(K3, (K3.t(2), parse_laurent(K3, "2*t^3")))
        q0, q1 = springer_split(q)
        assert [str(e) for e in q0.entries] == ["1"]
        assert [str(e) for e in q1.entries] == ["2"]

    def test_split_entries_are_units(self):
        rng = random.Random(0)
        for _ in range(50):
            q = rand_form(rng, K3)
            q0, q1 = springer_split(q)
            assert all(e.valuation() == 0 for e in q0.entries + q1.entries)
            assert q0.dim + q1.dim == q.dim

    def test_split_preserves_class(self):
        # q and q0 + t*q1 have the same boundary
        rng = random.Random(1)
        for _ in range(50):
            q = rand_form(rng, K3)
            q0, q1 = springer_split(q)
            recombined = q0.orth_sum(QuadFormK(K3, tuple(e * K3.t() for e in q1.entries)))
            assert springer_boundary(q) == springer_boundary(recombined)


class TestBoundary:
    def test_unit_uniformizer_pair(self):
        b0, b1 = springer_boundary(QuadFormK(K3, (K3.one(), K3.t())))
        assert b0.rank_parity == 1 and b0.disc == 1
        assert b1.rank_parity == 1 and b1.disc == 1

    def test_hyperbolic_is_zero(self):
        b0, b1 = springer_boundary(QuadFormK(K3, (K3.one(), -K3.one())))
        assert b0.is_zero() and b1.is_zero()

    def test_mixed_example(self):
        q = QuadFormK(
            K3,
            (K3.one(), K3.one(), K3.t(), K3.t(), K3.const(2)),
        )
        b0, b1 = springer_boundary(q)
        # <1,1,2> = <1> + <1,2> = <1> + hyperbolic; <1,1> stays anisotropic
        assert (b0.rank_parity, b0.disc) == (1, 1)
        assert (b1.rank_parity, b1.disc) == (0, 2)

    def test_additive(self):
        rng = random.Random(2)
        for _ in range(200):
            q1, q2 = rand_form(rng, K3), rand_form(rng, K3)
            lhs = springer_boundary(q1.orth_sum(q2))
            r1, r2 = springer_boundary(q1), springer_boundary(q2)
            assert lhs == (r1[0] + r2[0], r1[1] + r2[1])

    def test_kills_all_hyperbolic_square_classes(self):
        u = K3.nonsquare_unit()
        for c in (K3.one(), u, K3.t(), u * K3.t()):
            b0, b1 = springer_boundary(QuadFormK(K3, (c, -c)))
            assert b0.is_zero() and b1.is_zero()

    def test_empty_form_zero_boundary(self):
        b0, b1 = springer_boundary(QuadFormK(K3, ()))
        assert b0.is_zero() and b1.is_zero()

    def test_first_residue_independent_of_uniformizer_scaling(self):
        # replacing t by w*t for a unit square w rescales odd-valuation
        # entries by a square unit: the first residue class cannot move
        rng = random.Random(3)
        for _ in range(60):
            q = rand_form(rng, K3)
            w = rng.choice((1, 4))  # unit squares mod 3 in O_K
            scaled_entries = tuple(
                e if e.valuation() % 2 == 0 else e.scale(w) for e in q.entries
            )
            scaled = QuadFormK(K3, scaled_entries)
            assert springer_boundary(q)[0] == springer_boundary(scaled)[0]

    def test_rationals_unsupported(self):
        KQ = LaurentField(RationalField())
        with pytest.raises(UnsupportedField):
            springer_boundary(QuadFormK(KQ, (KQ.one(),)))


class TestAnisotropy:
    def test_norm_form_of_division_algebra(self):
        q = QuadFormK(
            K3,
            (K3.one(), K3.const(-2), -K3.t(), parse_laurent(K3, "2*t")),
        )
        assert is_anisotropic_quad_K(q)
        q0, q1 = springer_split(q)
        assert list(residue_form(q0).entries) == [1, 1]
        assert list(residue_form(q1).entries) == [2, 2]

    def test_hyperbolic_plane(self):
        assert not is_anisotropic_quad_K(QuadFormK(K3, (K3.one(), -K3.one())))

    def test_three_ones_isotropic(self):
        q = QuadFormK(K3, (K3.one(), K3.one(), K3.one()))
        assert not is_anisotropic_quad_K(q)

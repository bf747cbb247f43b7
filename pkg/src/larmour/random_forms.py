"""Seeded random generators for property suites.

Everything here is driven by an explicit random.Random instance so the
self-test and the acceptance suite are reproducible run to run.  The ten
cases draw from the fixture algebras: ramified (a, t-unit) algebras over
F_p((t)) for the B-cases and (-1,-1) over Q((t)) for the A-cases (finite
residue fields admit no unramified division quaternion algebra, so the
A-cases live over the rationals mode).
"""

from __future__ import annotations

import random

from .base_fields import PrimeField, RationalField
from .errors import LarmourError
from .hermitian import HermitianForm
from .involutions import CaseRecord, InvolutionDesc, classify_case
from .quaternion import QuatAlgebra, QuatElem, normalize_presentation, val_floor_half_units
from .valued_field import LaurentElem, LaurentField

ALL_CASE_LABELS = ("A11", "A12", "A21", "A22", "B11", "B12", "B211", "B212", "B221", "B222")
B_CASE_LABELS = ("B11", "B12", "B211", "B212", "B221", "B222")

_SIGMA_FOR_FAMILY = {
    "A1": InvolutionDesc.canonical(),
    "A2": InvolutionDesc.twisted("x"),
    "B1": InvolutionDesc.canonical(),
    "B21": InvolutionDesc.twisted("x"),
    "B22": InvolutionDesc.twisted("y"),
}


def rational_field(precision: int = 32) -> LaurentField:
    return LaurentField(RationalField(), precision)


def finite_field(p: int, precision: int = 32) -> LaurentField:
    return LaurentField(PrimeField(p), precision)


def ramified_algebra(p: int, unit_b: bool = False, precision: int = 32) -> QuatAlgebra:
    """(u, t) or (u, u*t) over F_p((t)), u the fixed nonsquare unit."""
    K = finite_field(p, precision)
    u = K.nonsquare_unit()
    b = K.t() if not unit_b else u * K.t()
    return normalize_presentation(K, u, b)

def rational_algebra(precision: int = 32) -> QuatAlgebra:
    K = rational_field(precision)
    minus_one = K.const(-1)
    return normalize_presentation(K, minus_one, minus_one, assume_division=True)


def case_setup(label: str, p: int = 3, precision: int = 32):
    """(algebra, sigma, eps) reaching the given label."""
    if label not in ALL_CASE_LABELS:
        raise ValueError(f"unknown case {label}")
    eps = 1 if label.endswith("1") else -1
    family = label[:-1]
    sigma = _SIGMA_FOR_FAMILY[family]
    algebra = rational_algebra(precision) if label.startswith("A") else ramified_algebra(p, precision=precision)
    return algebra, sigma, eps


def case_record(label: str, p: int = 3, precision: int = 32) -> CaseRecord:
    algebra, sigma, eps = case_setup(label, p, precision)
    return classify_case(algebra, sigma, eps)


# ---------------------------------------------------------------------------
# random elements
# ---------------------------------------------------------------------------


def rand_laurent(
    rng: random.Random,
    K: LaurentField,
    min_val: int = 0,
    max_val: int = 3,
    terms: int = 3,
    allow_zero: bool = False,
) -> LaurentElem:
    """Sparse exact element with valuation in [min_val, max_val]."""
    res = K.residue
    if allow_zero and rng.random() < 0.25:
        return K.zero()
    val = rng.randint(min_val, max_val)
    if isinstance(res, PrimeField):
        lead = rng.randrange(1, res.p)
        tail = [(val + rng.randint(1, 4), rng.randrange(res.p)) for _ in range(rng.randrange(terms))]
    else:
        lead = rng.choice([1, -1, 2, -2, 3, 1, -1])
        tail = [(val + rng.randint(1, 4), rng.choice([0, 1, -1, 2])) for _ in range(rng.randrange(terms))]
    return K.from_terms([(val, lead)] + tail)


def rand_unit_laurent(rng: random.Random, K: LaurentField, terms: int = 3) -> LaurentElem:
    return rand_laurent(rng, K, 0, 0, terms)


_SPAN_INDEX = {"1": 0, "x": 1, "y": 2, "z": 3}


def rand_sym_entry(
    rng: random.Random,
    record: CaseRecord,
    min_val: int = 0,
    max_val: int = 2,
) -> QuatElem:
    """Random nonzero eps-symmetric entry (arbitrary value) in the Sym span."""
    K = record.algebra.base
    span = record.sym_basis
    while True:
        coords = [K.zero()] * 4
        for name in span:
            coords[_SPAN_INDEX[name]] = rand_laurent(rng, K, min_val, max_val, allow_zero=len(span) > 1)
        u = QuatElem(record.algebra, tuple(coords))
        if not u.is_possibly_zero():
            return u


def rand_sym_unit(rng: random.Random, record: CaseRecord) -> QuatElem | None:
    """Random eps-symmetric unit, or None when the span admits no units."""
    K = record.algebra.base
    span = record.sym_basis
    unit_slots = [n for n in span if n in ("1", "x")] if record.algebra.ramified else list(span)
    if not unit_slots:
        return None
    for _ in range(64):
        coords = [K.zero()] * 4
        anchor = rng.choice(unit_slots)
        for name in span:
            lo = 0 if name == anchor else rng.choice([0, 1])
            if record.algebra.ramified and name in ("y", "z"):
                lo = max(lo, 0)
            coords[_SPAN_INDEX[name]] = rand_laurent(rng, K, lo, lo + 2, allow_zero=name != anchor)
        u = QuatElem(record.algebra, tuple(coords))
        if u.is_possibly_zero():
            continue
        if val_floor_half_units(u) == 0:
            return u
    raise LarmourError("failed to sample a symmetric unit")  # pragma: no cover


def rand_unit(rng: random.Random, algebra: QuatAlgebra) -> QuatElem:
    """Random unit of the algebra (value exactly 0)."""
    K = algebra.base
    for _ in range(64):
        coords = [rand_laurent(rng, K, 0, 2, allow_zero=True) for _ in range(4)]
        anchor = rng.choice((0, 1) if algebra.ramified else (0, 1, 2, 3))
        coords[anchor] = rand_unit_laurent(rng, K)
        u = QuatElem(algebra, tuple(coords))
        if val_floor_half_units(u) == 0:
            return u
    raise LarmourError("failed to sample a unit")  # pragma: no cover


def rand_form(
    rng: random.Random,
    record: CaseRecord,
    max_dim: int = 2,
    min_dim: int = 1,
    min_val: int = 0,
    max_val: int = 2,
) -> HermitianForm:
    dim = rng.randint(min_dim, max_dim)
    entries = tuple(rand_sym_entry(rng, record, min_val, max_val) for _ in range(dim))
    return HermitianForm(record.algebra, record.sigma, record.eps, entries)

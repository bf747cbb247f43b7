"""Residue-field arithmetic and Witt-group reducers.

Three residue fields are supported: the prime field F_p (p an odd prime),
its quadratic extension F_{p^2} = F_p(xbar) with xbar^2 a fixed nonsquare,
and a bounded-rational mode for k = Q.  Elements are stored in canonical
form (reduced mod p, pairs of reduced ints, or a Fraction in lowest terms)
and wrapped in :class:`ResElem` at the public surface; the raw payloads
(int, (int, int), Fraction) are what the Laurent-series layer operates on.

On top of the field arithmetic this module implements the Witt-group
machinery used by the residue maps: canonical Witt classes of diagonal
quadratic forms over F_q (exactly four classes), the isotropy decision
rule with its brute-force enumeration oracle, and the rank-mod-2 Witt
class of hermitian forms over (F_{p^2}, iota).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import (
    DivisionByZero,
    EntryNotFixed,
    FieldMismatch,
    MagnitudeExceeded,
    UnsupportedField,
    ZeroInput,
)

RATIONAL_BOUND = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def smallest_nonresidue(p: int) -> int:
    """Smallest quadratic nonresidue mod p (deterministic)."""
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) != 1:
            return n
    raise ValueError(f"no nonresidue found mod {p}")


def _sqrt_mod_p(a: int, p: int) -> int:
    """A square root of the residue a mod p.

    Exhaustive search for p <= 100, Tonelli-Shanks above; correctness must
    not depend on p staying desk-scale.
    """
    a %= p
    if a == 0:
        return 0
    if p <= 100:
        for r in range(1, p):
            if r * r % p == a:
                return r
        raise ValueError("not a square")
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError("not a square")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks with the smallest nonresidue as the deterministic seed
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = smallest_nonresidue(p)
    c = pow(z, q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, probe = 0, t
        while probe != 1:
            probe = probe * probe % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return x


class ResidueField:
    """Common surface of the three residue fields (raw-payload arithmetic)."""

    kind = "abstract"

    def elem(self, raw) -> "ResElem":
        return ResElem(self, self.coerce(raw))

    def zero(self) -> "ResElem":
        return ResElem(self, self.zero_raw)

    def one(self) -> "ResElem":
        return ResElem(self, self.one_raw)

    # raw-level hooks implemented by subclasses:
    #   coerce, add, sub, mul, neg, inv, is_zero, is_square_raw, sqrt_raw,
    #   canonical_key, format_raw

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def sqrt_canonical(self, raw):
        """The square root with the smaller canonical key (deterministic)."""
        r = self.sqrt_raw(raw)
        other = self.neg(r)
        return r if self.canonical_key(r) <= self.canonical_key(other) else other


@dataclass(frozen=True)
class PrimeField(ResidueField):
    """F_p for an odd prime p; raw payload is an int in [0, p)."""

    p: int
    kind = "prime"

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")

    @property
    def zero_raw(self):
        return 0

    @property
    def one_raw(self):
        return 1

    @property
    def order(self):
        return self.p

    def coerce(self, raw) -> int:
        if isinstance(raw, ResElem):
            if raw.field != self:
                raise FieldMismatch(f"{raw.field} vs {self}")
            return raw.raw
        if isinstance(raw, Fraction):
            if raw.denominator % self.p == 0:
                raise DivisionByZero("denominator vanishes mod p")
            return raw.numerator * pow(raw.denominator, -1, self.p) % self.p
        return int(raw) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a == 0

    def is_square_raw(self, a):
        if a == 0:
            raise ZeroInput("squareness of zero")
        return pow(a, (self.p - 1) // 2, self.p) == 1

    def sqrt_raw(self, a):
        return _sqrt_mod_p(a, self.p)

    def nonsquare_raw(self):
        return smallest_nonresidue(self.p)

    def canonical_key(self, a):
        return (a,)

    def format_raw(self, a):
        return str(a)

    def all_raw(self):
        return range(self.p)

    def __str__(self):
        return f"F_{self.p}"


@dataclass(frozen=True)
class QuadExtField(ResidueField):
    """F_{p^2} = F_p(xbar) with xbar^2 = abar; raw payload is (e0, e1)."""

    p: int
    abar: int
    kind = "quadext"

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if pow(self.abar % self.p, (self.p - 1) // 2, self.p) == 1:
            raise ValueError(f"{self.abar} is a square mod {self.p}")

    @property
    def base(self) -> PrimeField:
        return PrimeField(self.p)

    @property
    def zero_raw(self):
        return (0, 0)

    @property
    def one_raw(self):
        return (1, 0)

    @property
    def order(self):
        return self.p * self.p

    def gen(self) -> "ResElem":
        """xbar itself."""
        return ResElem(self, (0, 1))

    def coerce(self, raw):
        if isinstance(raw, ResElem):
            if raw.field == self:
                return raw.raw
            if isinstance(raw.field, PrimeField) and raw.field.p == self.p:
                return (raw.raw, 0)
            raise FieldMismatch(f"{raw.field} vs {self}")
        if isinstance(raw, tuple):
            return (int(raw[0]) % self.p, int(raw[1]) % self.p)
        return (int(raw) % self.p, 0)

    def add(self, a, b):
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def mul(self, a, b):
        # (e0 + e1*xbar)(f0 + f1*xbar) with xbar^2 = abar
        e0, e1 = a
        f0, f1 = b
        return (
            (e0 * f0 + self.abar * e1 * f1) % self.p,
            (e0 * f1 + e1 * f0) % self.p,
        )

    def neg(self, a):
        return (-a[0] % self.p, -a[1] % self.p)

    def conj(self, a):
        """The nontrivial automorphism iota: xbar -> -xbar."""
        return (a[0], -a[1] % self.p)

    def norm(self, a) -> int:
        """Norm to F_p: e0^2 - abar*e1^2."""
        return (a[0] * a[0] - self.abar * a[1] * a[1]) % self.p

    def inv(self, a):
        n = self.norm(a)
        if n == 0:
            raise DivisionByZero("inverse of zero")
        ninv = pow(n, -1, self.p)
        return (a[0] * ninv % self.p, -a[1] * ninv % self.p)

    def is_zero(self, a):
        return a == (0, 0)

    def is_square_raw(self, a):
        # a is a square in F_{p^2} iff its norm is a square in F_p
        if self.is_zero(a):
            raise ZeroInput("squareness of zero")
        return pow(self.norm(a), (self.p - 1) // 2, self.p) == 1

    def sqrt_raw(self, a):
        p = self.p
        a0, a1 = a
        if a1 == 0:
            # roots inside F_p, or along xbar when a0 is a nonresidue
            if pow(a0, (p - 1) // 2, p) == 1:
                return (_sqrt_mod_p(a0, p), 0)
            d = a0 * pow(self.abar, -1, p) % p  # ratio of two nonresidues
            return (0, _sqrt_mod_p(d, p))
        # solve (c + d*xbar)^2 = a: abar*D^2 - a0*D + a1^2/4 = 0 for D = d^2;
        # exactly one root is a square in F_p (their product is a nonresidue)
        disc = (a0 * a0 - self.abar * a1 * a1) % p
        if pow(disc, (p - 1) // 2, p) != 1:
            raise ValueError("not a square")
        s = _sqrt_mod_p(disc, p)
        inv2a = pow(2 * self.abar % p, -1, p)
        for root in ((a0 + s) * inv2a % p, (a0 - s) * inv2a % p):
            if root and pow(root, (p - 1) // 2, p) == 1:
                d = _sqrt_mod_p(root, p)
                c = a1 * pow(2 * d % p, -1, p) % p
                return (c, d)
        raise ValueError("not a square")

    def nonsquare_raw(self):
        for raw in self.all_raw():
            if not self.is_zero(raw) and not self.is_square_raw(raw):
                return raw
        raise ValueError("no nonsquare found")

    def canonical_key(self, a):
        return a

    def format_raw(self, a):
        e0, e1 = a
        if e1 == 0:
            return str(e0)
        xterm = "xbar" if e1 == 1 else f"{e1}*xbar"
        return xterm if e0 == 0 else f"{e0} + {xterm}"

    def all_raw(self):
        return ((e0, e1) for e0 in range(self.p) for e1 in range(self.p))

    def __str__(self):
        return f"F_{self.p}(xbar), xbar^2 = {self.abar}"


@dataclass(frozen=True)
class RationalField(ResidueField):
    """Exact rationals with a magnitude bound on numerator and denominator."""

    bound: int = RATIONAL_BOUND
    kind = "rationals"

    @property
    def zero_raw(self):
        return Fraction(0)

    @property
    def one_raw(self):
        return Fraction(1)

    def _check(self, q: Fraction) -> Fraction:
        if abs(q.numerator) > self.bound or q.denominator > self.bound:
            raise MagnitudeExceeded(f"{q} exceeds bound 2^31")
        return q

    def coerce(self, raw):
        if isinstance(raw, ResElem):
            if raw.field != self:
                raise FieldMismatch(f"{raw.field} vs {self}")
            return raw.raw
        return self._check(Fraction(raw))

    def add(self, a, b):
        return self._check(a + b)

    def mul(self, a, b):
        return self._check(a * b)

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._check(1 / a)

    def is_zero(self, a):
        return a == 0

    def is_square_raw(self, a):
        if a == 0:
            raise ZeroInput("squareness of zero")
        if a < 0:
            return False
        return isqrt(a.numerator) ** 2 == a.numerator and isqrt(a.denominator) ** 2 == a.denominator

    def sqrt_raw(self, a):
        if not self.is_square_raw(a):
            raise ValueError("not a square")
        return Fraction(isqrt(a.numerator), isqrt(a.denominator))

    def sqrt_canonical(self, raw):
        return self.sqrt_raw(raw)  # positive root

    def squarefree_part(self, a: Fraction) -> int:
        """Signed square-free integer s with a = s * (square)."""
        if a == 0:
            raise ZeroInput("square class of zero")
        n = a.numerator * a.denominator
        sign = -1 if n < 0 else 1
        n = abs(n)
        s, d = 1, 2
        while d * d <= n:
            exp = 0
            while n % d == 0:
                n //= d
                exp += 1
            if exp % 2:
                s *= d
            d += 1
        return sign * s * n

    def canonical_key(self, a):
        return (a,)

    def format_raw(self, a):
        return str(a)

    def __str__(self):
        return "Q"


class ResElem:
    """An element of a residue field, always in canonical form."""

    __slots__ = ("field", "raw")

    def __init__(self, field: ResidueField, raw):
        self.field = field
        self.raw = raw

    def _coerced(self, other):
        if isinstance(other, ResElem):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.raw
        return self.field.coerce(other)

    def __add__(self, other):
        return ResElem(self.field, self.field.add(self.raw, self._coerced(other)))

    def __sub__(self, other):
        return ResElem(self.field, self.field.sub(self.raw, self._coerced(other)))

    def __mul__(self, other):
        return ResElem(self.field, self.field.mul(self.raw, self._coerced(other)))

    def __neg__(self):
        return ResElem(self.field, self.field.neg(self.raw))

    def inv(self):
        return ResElem(self.field, self.field.inv(self.raw))

    def __truediv__(self, other):
        return ResElem(self.field, self.field.mul(self.raw, self.field.inv(self._coerced(other))))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.raw)

    def __eq__(self, other):
        if isinstance(other, ResElem):
            return self.field == other.field and self.raw == other.raw
        try:
            return self.raw == self.field.coerce(other)
        except (TypeError, ValueError, FieldMismatch):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __repr__(self):
        return f"ResElem({self.field}, {self.field.format_raw(self.raw)})"

    def __str__(self):
        return self.field.format_raw(self.raw)


def field_arith(op: str, lhs: ResElem, rhs: ResElem | None = None) -> ResElem:
    """Named-op entry point: add, mul, inv, neg (inv/neg ignore rhs)."""
    if op == "inv":
        return lhs.inv()
    if op == "neg":
        return -lhs
    if rhs is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown op {op!r}")


def is_square(e: ResElem) -> bool:
    if e.is_zero():
        raise ZeroInput("squareness of zero")
    return e.field.is_square_raw(e.raw)


def sqrt(e: ResElem) -> ResElem:
    """The canonical square root (smaller canonical representative)."""
    if not is_square(e):
        raise ValueError(f"{e} is not a square in {e.field}")
    return ResElem(e.field, e.field.sqrt_canonical(e.raw))


# ---------------------------------------------------------------------------
# Diagonal quadratic forms over the finite residue fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadFormRes:
    """Diagonal quadratic form with nonzero entries over a residue field."""

    field: ResidueField
    entries: tuple

    def __post_init__(self):
        canon = tuple(self.field.coerce(e) for e in self.entries)
        for e in canon:
            if self.field.is_zero(e):
                raise ZeroInput("quadratic form entries must be nonzero")
        object.__setattr__(self, "entries", canon)

    @property
    def dim(self):
        return len(self.entries)

    def orth_sum(self, other: "QuadFormRes") -> "QuadFormRes":
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return QuadFormRes(self.field, self.entries + other.entries)

    def negated(self) -> "QuadFormRes":
        return QuadFormRes(self.field, tuple(self.field.neg(e) for e in self.entries))

    def __str__(self):
        return "<" + ", ".join(self.field.format_raw(e) for e in self.entries) + ">"


def _require_finite(field):
    if field.kind not in ("prime", "quadext"):
        raise UnsupportedField("finite residue field required")


def is_isotropic_quad_finite(q: QuadFormRes) -> bool:
    """Isotropy over F_q: dim >= 3 always, dim 2 iff -(d1*d2) is a square."""
    _require_finite(q.field)
    if q.dim >= 3:
        return True
    if q.dim == 2:
        d = q.field.neg(q.field.mul(q.entries[0], q.entries[1]))
        return q.field.is_square_raw(d)
    return False


def brute_force_isotropic(q: QuadFormRes, cap: int = 1_000_000) -> bool:
    """Exhaustive enumeration oracle (independent of the decision rule)."""
    _require_finite(q.field)
    f = q.field
    total = f.order**q.dim
    if total > cap:
        raise ValueError(f"enumeration too large ({total} vectors)")
    elems = list(f.all_raw())

    def rec(i, acc, nontrivial):
        if i == q.dim:
            return nontrivial and f.is_zero(acc)
        for v in elems:
            term = f.mul(q.entries[i], f.mul(v, v))
            if rec(i + 1, f.add(acc, term), nontrivial or not f.is_zero(v)):
                return True
        return False

    return rec(0, f.zero_raw, False)


@dataclass(frozen=True)
class WittClassQuadFinite:
    """One of the four Witt classes of W(F_q).

    The pair (rank_parity, disc) identifies the class: the zero class is
    (0, None), rank-1 classes carry their square-class representative, and
    the unique nonzero even class carries the signed discriminant (always
    the nonsquare class).
    """

    field: ResidueField
    rank_parity: int
    disc: object  # raw square-class representative, or None for the zero class

    def is_zero(self) -> bool:
        return self.rank_parity == 0 and self.disc is None

    def representative(self) -> tuple:
        """A diagonal anisotropic representative (possibly empty)."""
        f = self.field
        if self.is_zero():
            return ()
        if self.rank_parity == 1:
            return (self.disc,)
        # even nonzero: <1, -u> has signed discriminant u and is anisotropic
        return (f.one_raw, f.neg(f.nonsquare_raw()))

    def __add__(self, other: "WittClassQuadFinite") -> "WittClassQuadFinite":
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        combined = self.representative() + other.representative()
        if not combined:
            return self
        return witt_class_quad(QuadFormRes(self.field, combined))

    def __neg__(self) -> "WittClassQuadFinite":
        rep = tuple(self.field.neg(e) for e in self.representative())
        if not rep:
            return self
        return witt_class_quad(QuadFormRes(self.field, rep))

    def __str__(self):
        if self.is_zero():
            return "0"
        return f"(rank_parity={self.rank_parity}, disc={self.field.format_raw(self.disc)})"


def witt_class_quad(q: QuadFormRes) -> WittClassQuadFinite:
    """Canonical Witt class by concatenate-then-reduce.

    Reduction loop: strip <c, -c> pairs found by the dim-2 isotropy rule;
    once no pair is hyperbolic, fold the first three entries through the
    universality of nondegenerate binary forms over finite fields
    (<d1, d2> represents -d3, so <d1, d2, d3> is Witt-equal to <-d1*d2*d3>).
    Terminates at an anisotropic representative of dimension <= 2.
    """
    _require_finite(q.field)
    f = q.field
    entries = list(q.entries)
    while True:
        stripped = False
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                d = f.neg(f.mul(entries[i], entries[j]))
                if f.is_square_raw(d):
                    del entries[j], entries[i]
                    stripped = True
                    break
            if stripped:
                break
        if stripped:
            continue
        if len(entries) >= 3:
            d1, d2, d3 = entries[0], entries[1], entries[2]
            folded = f.neg(f.mul(d1, f.mul(d2, d3)))
            entries[0:3] = [folded]
            continue
        break
    if not entries:
        return WittClassQuadFinite(f, 0, None)
    if len(entries) == 1:
        disc = f.one_raw if f.is_square_raw(entries[0]) else f.nonsquare_raw()
        return WittClassQuadFinite(f, 1, disc)
    # anisotropic binary form: signed discriminant -d1*d2 is a nonsquare
    return WittClassQuadFinite(f, 0, f.nonsquare_raw())


def witt_class_herm_quadext(field: QuadExtField, entries) -> int:
    """Witt class (= rank mod 2) of a hermitian form over (F_{p^2}, iota).

    Entries must lie in the iota-fixed subfield F_p; the norm of the
    quadratic extension is surjective, so rank mod 2 classifies.
    """
    if not isinstance(field, QuadExtField):
        raise UnsupportedField("hermitian Witt classes need the quadratic extension")
    for e in entries:
        raw = field.coerce(e)
        if field.is_zero(raw):
            raise ZeroInput("hermitian form entries must be nonzero")
        if raw[1] != 0:
            raise EntryNotFixed(f"{field.format_raw(raw)} is not iota-fixed")
    return len(tuple(entries)) % 2


def brute_force_herm_isotropic(field: QuadExtField, entries, cap: int = 1_000_000) -> bool:
    """Enumeration oracle for hermitian isotropy over (F_{p^2}, iota)."""
    entries = tuple(field.coerce(e) for e in entries)
    total = field.order ** len(entries)
    if total > cap:
        raise ValueError("enumeration too large")
    elems = list(field.all_raw())

    def rec(i, acc, nontrivial):
        if i == len(entries):
            return nontrivial and field.is_zero(acc)
        for v in elems:
            term = field.mul(entries[i], (field.norm(v), 0))
            if rec(i + 1, field.add(acc, term), nontrivial or not field.is_zero(v)):
                return True
        return False

    return rec(0, field.zero_raw, False)

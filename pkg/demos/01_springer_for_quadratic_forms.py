"""Quadratic forms over F_3((t)): square classes, the two-residue split,
and the boundary into W(F_3) + W(F_3).

Run:  python3 demos/01_springer_for_quadratic_forms.py
"""

from larmour import (
    LaurentField,
    PrimeField,
    QuadFormK,
    hensel_sqrt,
    is_anisotropic_quad_K,
    parse_laurent,
    springer_boundary,
    springer_split,
    square_class_K,
)

K = LaurentField(PrimeField(3))
print(f"working over K = {K}, default precision {K.default_prec}")

# --- element arithmetic is exact through the precision cap ----------------
e = parse_laurent(K, "2*t^-1 + 1 + 2*t^3")
print(f"\nparsed element      : {e}")
print(f"valuation           : {e.valuation()}")

u = parse_laurent(K, "1 + t")
print(f"\ninverse of 1 + t    : {u.inv()}")
print(f"hensel sqrt of 1 + t: {hensel_sqrt(u)}")

# --- K* has exactly four square classes: 1, u, t, ut ----------------------
print("\nsquare classes:")
for text in ("4 + t", "2 + t^2", "t + t^2", "2*t"):
    x = parse_laurent(K, text)
    print(f"  {text:10s} -> {square_class_K(x).label}")

# --- the decomposition q = q0 + t*q1 into unit-entry parts ----------------
q = QuadFormK(K, tuple(parse_laurent(K, s) for s in ("1", "1", "t", "t", "2")))
q0, q1 = springer_split(q)
print(f"\nq  = {q}")
print(f"q0 = {q0}   (even-valuation entries, reduced to units)")
print(f"q1 = {q1}   (odd-valuation entries, divided by t)")

b0, b1 = springer_boundary(q)
print(f"boundary classes    : ({b0}, {b1})")

# --- hyperbolic planes die in the boundary --------------------------------
for c in ("1", "2", "t", "2*t"):
    h = QuadFormK(K, (parse_laurent(K, c), -parse_laurent(K, c)))
    print(f"boundary of <{c}, -{c}>: {springer_boundary(h)[0]}, {springer_boundary(h)[1]}")

# --- anisotropy decides which quaternion algebras are division ------------
norm_form = QuadFormK(K, tuple(parse_laurent(K, s) for s in ("1", "-2", "-t", "2*t")))
print(f"\nnorm form of (2,t)  : {norm_form}")
print(f"anisotropic over K  : {is_anisotropic_quad_K(norm_form)}  (so (2,t/K) is division)")

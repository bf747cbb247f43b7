"""The quaternion algebra (2, t / F_3((t))): arithmetic, reduced norm, the
extended valuation in half-units, and residues in F_9 = F_3(xbar).

Run:  python3 demos/02_quaternions_and_valuation.py
"""

from larmour import (
    LaurentField,
    PrimeField,
    normalize_presentation,
    parse_laurent,
    residue_D,
    valuation_D,
)

K = LaurentField(PrimeField(3))

# any nonzero pair normalizes onto a canonical presentation (or is refused
# as split); (t, t) lands on (2, t) through (a, b) ~ (a, -ab) and a swap
alg = normalize_presentation(K, K.t(), K.t())
print(f"normalize (t, t) -> {alg}   ramified={alg.ramified}, j={alg.j}")

x, y, z = alg.gen_x(), alg.gen_y(), alg.gen_z()
print(f"\nx*y = {x * y},  y*x = {y * x},  z^2 = {(z * z).c1}")

u = alg.elem(parse_laurent(K, "2 + t"), parse_laurent(K, "1 + t"), K.one(), K.zero())
print(f"\nu        = {u}")
print(f"Nrd(u)   = {u.nrd()}")
print(f"Trd(u)   = {u.trd()}")
print(f"nu_D(u)  = {valuation_D(u)}")

prod = u * u.inv()
print(f"u * u^-1 = 1 up to O(t^12): {all(c.vanishes_below(12) for c in (prod - alg.one()).co)}")

# the value group is half-integral exactly because the algebra is ramified
for name, elem in (("1", alg.one()), ("x", x), ("y", y), ("z", z), ("t", alg.scalar(K.t()))):
    print(f"nu_D({name}) = {valuation_D(elem)}")

# integral elements reduce into the residue field F_9 = F_3(xbar);
# the y and z coordinates fall into the maximal ideal and vanish
print(f"\nresidue of u      = {residue_D(u)}")
print(f"residue of y      = {residue_D(y)}")
print(f"residue of u*u    = {residue_D(u * u)} (= residue(u)^2 = {residue_D(u) * residue_D(u)})")

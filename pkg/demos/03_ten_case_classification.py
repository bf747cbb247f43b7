"""The ten-case classification of (D, sigma, eps) over k((t)).

For each case: the ramification index j, the distinguished uniformizers
pi' and pi'', the invariant s, the residue structure, and the spans the
decomposition reduces entries to.

Run:  python3 demos/03_ten_case_classification.py
"""

from larmour import (
    InvolutionDesc,
    classify_case,
    normalize_involution,
    symmetric_uniformizer,
    valuation_D,
)
from larmour.random_forms import case_setup, ramified_algebra

HEADER = ("case", "j", "pi'", "sigma", "Dbar", "inv0", "eps", "pi''", "s", "Sym", "h0", "h1")
ROW = "{:6} {:2} {:5} {:6} {:8} {:9} {:3} {:5} {:2} {:9} {:6} {:6}"

print(ROW.format(*HEADER))
print("-" * 78)
for label in ("A11", "A12", "A21", "A22", "B11", "B12", "B211", "B212", "B221", "B222"):
    algebra, sigma, eps = case_setup(label, p=3)
    rec = classify_case(algebra, sigma, eps)
    print(
        ROW.format(
            rec.label,
            rec.j,
            rec.pi_prime_name,
            rec.sigma.name,
            rec.residue_algebra,
            rec.res_inv0,
            f"{rec.eps:+d}",
            rec.pi_dblprime_name,
            rec.s_eps,
            ",".join(rec.sym_basis),
            ",".join(rec.h0_span) or "-",
            ",".join(rec.h1_span) or "-",
        )
    )

# odd-s cases admit an eps-symmetric uniformizer built from pi', pi''
print("\neps-symmetric uniformizers (odd s):")
for label in ("A12", "B12", "B211", "B221", "B222"):
    algebra, sigma, eps = case_setup(label, p=3)
    rec = classify_case(algebra, sigma, eps)
    w = symmetric_uniformizer(rec, sigma)
    print(f"  {label}: w = {w}, nu_D(w) = {valuation_D(w)}")

# a twist given on an arbitrary skew element is normalized onto x or y of
# an adapted presentation, with the coordinate change recorded
B = ramified_algebra(3)
zeta = B.gen_y() + B.gen_z()
sigma, change = normalize_involution(B, zeta)
print(f"\ntwist by y + z on {B}:")
print(f"  normalized slot   : {sigma.name}")
print(f"  adapted algebra   : {change.new_algebra}")
print(f"  new y in old basis: {change.new_y}")

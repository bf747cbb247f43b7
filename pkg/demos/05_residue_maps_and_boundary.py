"""The residue maps d0/d1 and the boundary into the residue Witt groups:
form-level residues, canonical classes, Witt-class equality, and the
anisotropy decision.

Run:  python3 demos/05_residue_maps_and_boundary.py
"""

from larmour import (
    HermitianForm,
    InvolutionDesc,
    LaurentField,
    PrimeField,
    RationalField,
    boundary,
    classify_case,
    d0,
    d1,
    is_anisotropic_herm,
    larmour_decompose,
    normalize_presentation,
    parse_laurent,
    residue_targets,
    witt_equal,
)

K = LaurentField(PrimeField(3))
D = normalize_presentation(K, K.const(2), K.t())
tau = InvolutionDesc.canonical()
tau_x = InvolutionDesc.twisted("x")

# --- case B12: skew-hermitian over (D, tau) -------------------------------
record = classify_case(D, tau, -1)
t0, t1 = residue_targets(record)
print(f"case {record.label}: d0 -> {t0},  d1 -> {t1}")

h = HermitianForm(D, tau, -1, (D.gen_x(), D.gen_y() + D.gen_z()))
split = larmour_decompose(h, record)
print(f"\nh      = {h}")
print(f"d0(h)  = {d0(split, record)}")
print(f"d1(h)  = {d1(split, record)}   ((y+z)*y^-1 = 1 + x)")
print(f"class  = {boundary(h, record)}")

# --- the boundary kills h + (-h) and decides Witt equality ----------------
print(f"\nboundary of h + (-h) is zero: {boundary(h.orth_sum(h.negated()), record).is_zero()}")

y_form = HermitianForm(D, tau, -1, (D.gen_y(),))
minus_y = HermitianForm(D, tau, -1, (-D.gen_y(),))
print(f"<y> ~ <-y>: {witt_equal(y_form, minus_y)}   (-1 is a square in F_9)")

one = HermitianForm(D, tau_x, 1, (D.one(),))
two = HermitianForm(D, tau_x, 1, (D.one(), D.one()))
print(f"<1> ~ <1,1> over (D, tau_x): {witt_equal(one, two)}   (rank parities differ)")

# --- anisotropy from the residue forms -------------------------------------
print(f"\n<y> anisotropic          : {is_anisotropic_herm(y_form)}")
hyp = HermitianForm(D, tau, -1, (D.gen_y(), -D.gen_y()))
print(f"<y, -y> anisotropic      : {is_anisotropic_herm(hyp)}")

# --- unramified algebras (rationals residue) stay at form level ------------
KQ = LaurentField(RationalField())
A = normalize_presentation(KQ, KQ.const(-1), KQ.const(-1), assume_division=True)
rec_a = classify_case(A, tau, 1)
g = HermitianForm(A, tau, 1, (A.scalar(parse_laurent(KQ, "3 + t")), A.scalar(parse_laurent(KQ, "t"))))
split_a = larmour_decompose(g, rec_a)
print(f"\ncase {rec_a.label} over {A}:")
print(f"d0 = {d0(split_a, rec_a)}")
print(f"d1 = {d1(split_a, rec_a)}   (no canonical Witt class over Q)")

"""Characteristic polynomial and resonances of a hypersurface graph.

A surface Im w = phi(z, zb, Re w) with phi = u(|z|^2 + ...) carries a monic
degree-7 polynomial in the stage index k, built from the u-linear
coefficients phi_ab with a, b <= 4.  Its integer roots k >= 2 are the
resonances: the stages at which the normalization system degenerates.
Everything below is exact rational arithmetic; nothing is floating point.
"""

from fractions import Fraction

from nfc import char_poly, gen_cd, gen_quadric, jet7

print(__doc__)

print("--- the model surface phi = u |z|^2 ---")
quadric = gen_quadric(9)
rep = char_poly(jet7(quadric))
print(f"characteristic polynomial P(k) = {rep.char_poly}")
print(f"monic scaling constant c = {rep.monic_constant}  (P = c det B)")
print(f"resonances: {rep.resonances}  -> the model is nonresonant\n")

print("--- the family phi = u(|z|^2 + (C/4)|z|^4 + (D/36)|z|^6) ---")
for C, D in ((1, 0), (0, -24), (0, 18), (0, 36)):
    M = gen_cd(Fraction(C), Fraction(D), 9)
    rep = char_poly(jet7(M))
    print(f"C = {C:3}, D = {D:4}:  resonances {rep.resonances}")
print()
print("For C = 0 the resonance pattern is controlled by D: no integer roots")
print("k >= 2 for D < -12, while D = 18 hits k = 2 and D = 36 hits both 2 and 3.")

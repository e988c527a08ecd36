"""Resonant surfaces: singular stages, gauge freedom, and a 1-parameter
family of automorphisms that realizes the freedom.

The surface M_m (phi = u tan(arcsin(2m|z|^2)/(2m)) in closed form) has
resonances exactly at k = m+1 and k = 2m+1.  At those stages the
normalization system is singular: the solver pins the free unknowns to zero
and reports them.  The family H_t(z, w) = (z(1-tw^{2m})^{-1/2},
w(1-tw^{2m})^{-1/2m}) consists of genuinely different automorphisms of M_m
whose jets agree up to order 2m, which is precisely the stage-(2m+1)
freedom the resonance predicts.
"""

from nfc import char_poly, gen_Ht, gen_mm, jet7, map_defect, normalize, transform

print(__doc__)

m = 1
N = 11
M = gen_mm(m, N)
rep = char_poly(jet7(M))
print(f"M_{m}: resonances = {rep.resonances} (expected {[m + 1, 2 * m + 1]})")

result = normalize(M, K=5)
for stage in result.stages:
    line = f"  stage k = {stage.k}: {stage.status}"
    if stage.gauge:
        labels = ", ".join("".join(map(str, lab)) for lab in stage.gauge)
        line += f"  [free: {labels} pinned to 0]"
    print(line)
print("observed singular stages:", result.resonances_observed)

print("\n--- the automorphism family H_t ---")
for t in (1, -2):
    H = gen_Ht(m, t, N)
    print(f"t = {t:2}: defect of H_t on M_{m} is zero:",
          map_defect(M, H, M).is_zero(),
          "| transform(M, H_t) == M:", transform(M, H) == M)

h1, h2 = gen_Ht(m, 1, N), gen_Ht(m, 2, N)
agree = all(h1.f.coeff(l, k) == h2.f.coeff(l, k) and h1.g.coeff(l, k) == h2.g.coeff(l, k)
            for l in range(2 * m + 1) for k in range(2 * m + 1 - l))
print(f"\njets of H_1 and H_2 agree through order {2 * m}:", agree)
print("first divergence: f coefficient at z w^2:",
      h1.f.coeff(1, 2), "vs", h2.f.coeff(1, 2))

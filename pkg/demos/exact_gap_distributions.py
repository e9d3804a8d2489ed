#!/usr/bin/env python3
"""Exact gap-count distributions between consecutive roots.

Shows the interval recursion table at work: distributions of the number of
gaps of each length for the cyclic process, the specialized unit-gap
polynomial triples, the linear moment laws, and the two exact identities
that tie gap counts back to the root count.
"""

from fractions import Fraction as F

from stripdep import abc_recursion, gap_distribution, gap_moments, pgf_moments

print("Gap-count PGFs at width 8 (coefficients indexed by gap count)")
print("-" * 64)
for i in range(1, 8):
    print(f"  gaps of length {i}: {gap_distribution(i, 8).fraction_strings()}")

print()
print("Unit-gap polynomial triples (a_K, b_K, c_K); c_K is the PGF of the")
print("unit-gap count at width K+1")
print("-" * 64)
for t in abc_recursion(7):
    print(f"K={t.K}")
    print(f"  a = {t.a.fraction_strings()}")
    print(f"  b = {t.b.fraction_strings()}")
    print(f"  c = {t.c.fraction_strings()}")

print()
print("Unit-gap moments: mean 2K/15 from width 5 on, variance 1772K/14175")
print("from width 9 on (five exceptional widths first)")
for K in (4, 5, 6, 7, 8, 9, 20, 40):
    m = gap_moments(1, K)
    print(f"  K={K:>2}: mean {str(m.mean):>7}  variance {m.variance}")

print()
print("Longer gaps also grow linearly (exact slopes, widths >= 31):")
slopes = {2: F(1, 9), 3: F(2, 35), 4: F(1, 45), 5: F(4, 567), 6: F(1, 525),
          7: F(2, 4455)}
for i, slope in slopes.items():
    m = gap_moments(i, 35)
    assert m.mean == slope * 35
    print(f"  length {i}: mean/K = {slope}")

print()
print("Identities: gap means sum to the root-count mean K/3, and")
print("length-weighted means account for the remaining sites, 2K/3")
for K in (6, 12, 25):
    total = sum((gap_moments(i, K).mean for i in range(1, K)), F(0))
    weighted = sum((i * gap_moments(i, K).mean for i in range(1, K)), F(0))
    print(f"  K={K:>2}: sum = {total}  weighted sum = {weighted}")
    assert total == F(K, 3) and weighted == F(2 * K, 3)

"""Distances between bi-infinite configurations, exactly.

Eventually periodic points admit closed-form density distances; this script
computes a few, checks them against large-window estimates, and measures the
distance from a point to a whole sofic shift.
"""

from fractions import Fraction as F

from shiftgeo import (BINARY, block_path_source, d_besicovitch, d_cantor,
                      d_weyl, density_estimate, distance_to_shift,
                      golden_mean, nearest_periodic, parse_config,
                      unique_approximation_search)

alternating = parse_config("inf(01).inf(01)", BINARY)
zeros = parse_config("inf(0).inf(0)", BINARY)
halfline = parse_config("inf(0).1inf(1)", BINARY)

print("exact distances")
print("  centered density, (01)* vs 0*:   ", d_besicovitch(alternating, zeros))
print("  centered density, 0*.1* vs 0*:   ", d_besicovitch(halfline, zeros))
print("  uniform density,  0*.1* vs 0*:   ", d_weyl(halfline, zeros))
print("  first-difference, 0*.1* vs 0*:   ", d_cantor(halfline, zeros))

print("\nlarge windows approach the closed form")
for N in (100, 1000, 10000):
    est = density_estimate(alternating, zeros, N)
    print(f"  N = {N:>5}: {est} ~ {float(est):.6f}")

print("\ndistance to the no-11 shift (minimum mean cycle over arm products)")
g = golden_mean()
for literal in ("inf(1).inf(1)", "inf(110).inf(110)", "inf(0).1inf(1)"):
    x = parse_config(literal, BINARY)
    print(f"  d({literal}, X) = {distance_to_shift(x, g)}")

print("\nnearest periodic points in the no-11 shift")
ms = nearest_periodic(g, parse_config("inf(1).inf(1)", BINARY), 4)
print("  to 1*: distance", ms.distance, "minimizers",
      [m.right_period for m in ms.minimizers])

print("\nunique approximation fails for the no-11 shift")
v = unique_approximation_search(g, 8)
print(" ", v)

print("\npath construction: window densities realize |r - s|")
r, s = F(1, 3), F(3, 4)
est = density_estimate(block_path_source(r), block_path_source(s), 2 ** 14)
print(f"  r = {r}, s = {s}: estimate {float(est):.5f} vs |r-s| = "
      f"{float(abs(r - s)):.5f}")

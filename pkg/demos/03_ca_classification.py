"""Which cellular automata contract, preserve, or expand the density
pseudometric?

On the full shift the answer is structural: exactly the single-cell rules
contract, and the isometries are shifts composed with symbol permutations.
Every multi-cell rule carries an explicit periodic witness pair.  On proper
subshifts the picture is subtler; the no-111 shift admits a genuinely
two-cell contracting rule.
"""

from collections import Counter

from shiftgeo import (BINARY, CellularAutomaton, SftSpec, check_on_subshift,
                      classify_full_shift, compile_sft, elementary_ca)

counts = Counter()
for rule in range(256):
    rep = classify_full_shift(elementary_ca(rule))
    counts["contracting"] += rep.contracting
    counts["isometric"] += rep.isometric
    counts["expanding"] += rep.expanding
print("elementary rules on the full shift:", dict(counts))

rep = classify_full_shift(elementary_ca(232))   # majority
x, y, d_in, d_out = rep.witness
print("\nmajority rule witness pair (one change per period):")
print("  x =", x, " y =", y)
print(f"  distance {d_in} grows to {d_out}")

rep = classify_full_shift(elementary_ca(170))   # right neighbor
print("\nrule 170 decomposes as shift", rep.decomposition[0],
      "composed with", rep.decomposition[1])

print("\non the no-111 shift, zeroing the 1 of every 01 is contracting:")
X = compile_sft(SftSpec(BINARY, ("111",)))
f = CellularAutomaton(BINARY, -1, 0,
                      {"00": "0", "01": "0", "10": "0", "11": "1"})
chk = check_on_subshift(f, X, 8)
print(" ", chk.verdict("contracting"))
print(" ", chk.verdict("isometric"))

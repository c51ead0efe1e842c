"""Tabulate the numerology driving the constructions.

For each number of sections: the nonemptiness threshold, the expected
dimension of the canonical-determinant locus, and the genus window where
that locus certifies a larger-than-expected component of the plain
degree-(2g-2) locus.
"""

import ellchain as ec

print("k   threshold   corollary window   excess genera actually certified")
for k in range(2, 9):
    lo, hi = ec.corollary_range(k)
    usable = [g for g in range(lo, hi) if g >= ec.theorem_threshold(k)]
    window = f"[{lo}, {hi})" if hi > lo else "empty"
    print(f"{k:<4}{ec.theorem_threshold(k):<12}{window:<19}{usable if usable else '-'}")

print()
print("g   k   rho_K   rho(2,2g-2)   ledger total   excess")
for k in (4, 6, 7):
    for g in range(ec.theorem_threshold(k), ec.theorem_threshold(k) + 5):
        rho_k = ec.rho_canonical(g, k)
        rho_plain = ec.rho_general(2, 2 * g - 2, g, k)
        total = ec.count_dimension(ec.construct(g, k)).total
        marker = "  <-- bigger than expected" if rho_k > rho_plain else ""
        print(f"{g:<4}{k:<4}{rho_k:<8}{rho_plain:<14}{total:<15}{marker}")
    print()

print("the ledger total equals rho_K exactly on every row above;")
print("where it exceeds rho(2, 2g-2), the plain locus is reducible.")

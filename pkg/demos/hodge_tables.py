"""Print the Hodge Euler characteristics of genus-1 compactified universal
Jacobians next to those of the stable-curve moduli spaces.

    python3 demos/hodge_tables.py [max_n]
"""

import sys

from jacgen import genfun
from jacgen.symfun import schur_coeffs

N = int(sys.argv[1]) if len(sys.argv) > 1 else 5

jbar = genfun.series("jbar", N)
b1 = genfun.series("b1", N)

for n in range(1, N + 1):
    print(f"-- n = {n}")
    jac = schur_coeffs(jbar.degree_part(n))
    stable = schur_coeffs(b1.degree_part(n))
    for lam in sorted(set(jac) | set(stable), reverse=True):
        left = jac[lam].pretty() if lam in jac else "0"
        right = stable[lam].pretty() if lam in stable else "0"
        print(f"  {'s' + str(list(lam)):<16} jacobian: {left:<40} stable: {right}")

# forgetting the symmetric group action gives the plain Hodge Euler
# characteristic of the space
print()
for n in range(1, N + 1):
    print(f"n={n}  non-equivariant: {jbar.dimension(n).pretty()}")

"""A fine compactified universal Jacobian that does not come from a
polarisation, for six marked points.

    python3 demos/exotic_example.py
"""

from jacgen.necklace import fcj_from_f, polarisation_of, to_cycle
from jacgen.universal import (
    exotic_f,
    is_mildly_superadditive,
    normalize_order,
    realizable_phi,
    restrict_f_to_order,
    verify_certificate,
)

f = exotic_f(6)
print("f(I) = 1 exactly when I contains {1,3,5} or {2,4,5}")
print("mildly superadditive:", is_mildly_superadditive(f)[0])

res = realizable_phi(f)
print("realizable by a polarisation:", res.feasible, " best margin:", res.margin)
cert = res.certificate
for kind, part in (("lower", cert.lower), ("upper", cert.upper)):
    for m, w in part.items():
        print(f"  {kind} bound on {sorted(i + 1 for i in range(5) if m >> i & 1)} with weight {w}")
print("certificate verified:", verify_certificate(f, cert))

# locally, on every necklace of the universal curve, f is still polarised:
# each cyclic order gets its own stability condition
print()
print("degree 2 assignments on a few necklaces (marking: value)")
for order in [(1, 2, 3, 4, 5, 6), (1, 3, 2, 4, 6, 5), (1, 5, 2, 4, 3, 6)]:
    fc = fcj_from_f(6, 2, restrict_f_to_order(f, order))
    labels = normalize_order(order)
    phi = polarisation_of(fc).phi
    vals = ", ".join(f"{labels[i]}: {phi[i]}" for i in range(6))
    print(f"  order {order}  cycle {to_cycle(fc)}  {vals}")

"""Smoothable and non-smoothable compactified Jacobians of necklace curves.

    python3 demos/necklaces.py
"""

from jacgen.necklace import build_fcj, enumerate_smoothable, polarisation_of, to_cycle, validate_seq

print("smoothable Jacobians of a four-component necklace, degree 0")
for fc in enumerate_smoothable(4, 0):
    phi = ", ".join(str(v) for v in polarisation_of(fc).phi)
    print(f"  {to_cycle(fc)}  components {list(fc.components)}  phi ({phi})")

# a sequence visiting every node twice gives a Jacobian with six components
# on three-component necklaces; it has no polarisation
seq = (1, 1, 2, 2, 3, 3)
check = validate_seq(3, seq)
fc = build_fcj(3, -2, (-2, 0, 0), seq)
print()
print(f"sequence {seq}: valid={check.valid} rho={check.rho} smoothable={fc.smoothable}")
for comp, (j, node) in zip(fc.components, fc.nodes):
    print(f"  component {comp}   singular at node {j}: {node}")

print()
print("a sequence with a balanced proper window is rejected:", validate_seq(2, (1, 2, 1, 2)).reason)

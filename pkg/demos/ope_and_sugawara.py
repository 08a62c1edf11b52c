"""A tour of the vertex-algebra engine on sl2 at formal level k.

Builds the current algebra from its structure constants, prints the singular
OPEs, and checks the Virasoro relations of the Sugawara vector with exact
rational-function coefficients.
"""

from voa import liedata, vertexcore as vc
from voa.vertexcore import State

spec = liedata.sl2_spec()
print("algebra:", spec.name, "basis:", ", ".join(spec.labels))
print("validation:", liedata.validate(spec))
print()

print("Singular OPEs of the currents (second- and first-order poles):")
for a in range(3):
    for b in range(3):
        pairs = vc.ope(spec, State.generator(a), State.generator(b))
        print(" ", vc.ope_text(spec, spec.labels[a], spec.labels[b], pairs))
print()

L = vc.sugawara(spec, 2)
print("Sugawara vector (denominators carry k + 2):")
print(" ", vc.state_text(spec, L))
print()

print("Virasoro checks, exact in k:")
print("  L o_3 L =", vc.state_text(spec, vc.circle_product(spec, L, 3, L)),
      " (c/2 with c = 3k/(k+2))")
print("  L o_2 L =", vc.state_text(spec, vc.circle_product(spec, L, 2, L)))
print("  L o_1 L == 2L:", vc.circle_product(spec, L, 1, L) == L.scale(2))
print("  L o_0 L == dL:", vc.circle_product(spec, L, 0, L) == vc.derivative(spec, L))
for g, label in enumerate(spec.labels):
    X = State.generator(g)
    primary = vc.circle_product(spec, L, 1, X) == X and all(
        vc.circle_product(spec, L, n, X).is_zero() for n in (2, 3)
    )
    print(f"  X^{label} primary of weight one:", primary)
print()

print("Specializing the central charge c = 3k/(k+2) at a few levels:")
c = vc.circle_product(spec, L, 3, L).coefficient(()).scale(2)
for k0 in (1, 2, 10):
    print(f"  k = {k0}: c = {c.evaluate_at(k0)}")

"""From a Weierstrass model to a resolved discriminant and back.

y^2 = x^3 + s x + t has discriminant 4 s^3 + 27 t^2, a cusp at the origin.
Three blow-ups make it a normal crossing divisor; the exceptional curves carry
fibers of type II, III and I0*.  The boundary divisor pulls back at every
step, and the log MMP contracts the three curves again.

Run: python3 demos/05_weierstrass_cusp.py
"""
from ellflat import analyze, collision_report, discriminant, mmp_drive

print("Delta =", discriminant("s", "t"))
r = analyze("s", "t")
for d in r.divisors:
    print(f"  {d.name}: ord(a, b, Delta) = ({d.ord_a}, {d.ord_b}, {d.ord_delta}), "
          f"type {d.fiber_type}, Lambda coefficient {d.lambda_coefficient}")
for step in r.steps:
    print(f"  blow-up {step.index} at {step.location}: multiplicities {step.multiplicities}, "
          f"pullback holds: {step.pullback_holds}")
print("SNC:", r.snc)

for c in collision_report(r):
    print(f"  collision {c.point.left} x {c.point.right}: {c.left_type} x {c.right_type}, "
          f"beta={c.outcome.beta}, {c.verdict.value}")

surface, lam = r.surface()
result = mmp_drive(surface, lam)
print("Lambda on the tower:", lam)
print("MMP contracts", result.contracted, "leaving basis", result.surface.basis)

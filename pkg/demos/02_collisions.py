"""Collisions of two fiber types meeting transversally on the base.

Blowing up the crossing point creates a new curve Gamma.  Its fiber type
comes from the product of the two monodromies; alpha measures how much the
canonical class fails to be a pullback, and collisions with alpha >= 1 are bad.

Run: python3 demos/02_collisions.py
"""
from ellflat import classify_collision, collide, equidimensional_verdict, miranda_model_smoothness
from ellflat.errors import IncompatibleJFamilies

for left, right in [("II*", "IV"), ("IV*", "II"), ("III", "I0*"), ("I2*", "I3"), ("I1*", "I0*")]:
    o = collide(left, right)
    verdict = classify_collision(left, right).value
    print(f"{left:4} x {right:4}: beta={o.beta}, Gamma={o.gamma_type}, alpha={o.alpha}, "
          f"delta={o.delta} -> {verdict}; over the old base: {equidimensional_verdict(o).value}")

print("\nsmoothness of the good model for IV x IV:", miranda_model_smoothness("IV", "IV").value)

# Two multiple fibers crossing: the multiplicity of Gamma is an input.
o = collide("m3:I0", "m3:I0", n_gamma=1)
print(f"m3:I0 x m3:I0 (Gamma simple): alpha={o.alpha}, delta={o.delta}")

# Branches forcing different values of J cannot cross.
try:
    collide("II", "III")
except IncompatibleJFamilies as exc:
    print("II x III rejected:", exc)

"""Resolving a bad collision by repeated blow-ups.

Run: python3 demos/03_resolution.py
"""
from ellflat import blowup_count, resolve

tree = resolve("II*", "IV*")
print(tree.render())
print("\nblow-ups:", tree.blowup_count, "longest chain:", tree.depth)
print("Gamma types along the II* branch:", [str(t) for t in tree.gamma_chain("left")])

print("\nblow-ups needed, by pair:")
for pair in [("II*", "II"), ("I0*", "I0*"), ("I2*", "I3*"), ("III*", "III*"), ("IV", "IV")]:
    print(f"  {pair[0]} x {pair[1]}: {blowup_count(*pair)}")

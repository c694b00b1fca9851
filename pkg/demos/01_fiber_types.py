"""Kodaira fiber types: per-type data and classification.

Run: python3 demos/01_fiber_types.py
"""
from ellflat import (
    FiberType, SL2Matrix, classify_from_monodromy, classify_from_orders, coefficient_a,
    euler_characteristic, j_behavior_of, lambda_coefficient, monodromy_of, order_of,
)

print("type    a     chi  order  J        monodromy")
for name in ["I0", "I3", "I0*", "I2*", "II", "III", "IV", "IV*", "III*", "II*"]:
    t = FiberType.parse(name)
    m = monodromy_of(t)
    print(f"{name:6} {str(coefficient_a(t)):5} {euler_characteristic(t):4}  "
          f"{str(order_of(m)):5}  {str(j_behavior_of(t)):8} {m.to_list()}")
# finite monodromy order goes with 12a = chi; infinite order with a pole of J

print("\nclassification from vanishing orders (a, b, Delta):")
for orders in [(1, 1, 2), (1, 2, 3), (2, 3, 6), (2, 3, 9), (3, 5, 9), (0, 0, 4)]:
    print(f"  {orders} -> {classify_from_orders(*orders)}")

# A conjugated matrix still identifies its type once the pole order is known.
g = SL2Matrix(2, 1, 1, 1)
m = g @ monodromy_of(FiberType.parse("IV*")) @ g.inverse()
print(f"\nconjugate {m.to_list()} classifies as {classify_from_monodromy(m, 0)}")

# Multiple fibers contribute (m-1)/m to the boundary divisor on the base.
print("Lambda coefficient of m3:I0 =", lambda_coefficient(FiberType.parse("m3:I0")))

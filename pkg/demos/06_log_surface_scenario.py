"""A ruled surface with two multiple fibers, given as a scenario file.

The surface is the plane blown up once at the point where two lines f1, f2
meet.  Both lines carry fibers of type m3:I0, so Lambda = (2/3) f1 + (2/3) f2.
Contracting the exceptional curve G is not log extremal: delta = -1/3 and
no equidimensional model exists over the plane.

Run: python3 demos/06_log_surface_scenario.py
"""
from pathlib import Path

from ellflat.scenario import evaluate, load_scenario

path = Path(__file__).parent / "data" / "ruled_surface_two_multiple_fibers.json"
report = evaluate(load_scenario(path))
print("Lambda:", report.lam_curves)
for b in report.blowdowns:
    print(f"contract {b.exceptional}: (K + Lambda).G = {b.k_plus_lambda_dot_gamma}, delta = {b.delta}, "
          f"log extremal: {b.log_extremal}, verdict: {b.verdict.value}")
print("MMP:", report.mmp.status.value, "blocked by", report.mmp.blocked)

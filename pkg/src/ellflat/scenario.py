"""JSON scenario files: a surface, its marked curves and contractions to test.

Schema::

    {
      "surface": {
        "basis": ["h", "G"],
        "gram": [[1, 0], [0, -1]],
        "canonical": {"h": -3, "G": 1},
        "exceptional": ["G"]
      },
      "curves": {"f1": {"h": 1, "G": -1}},
      "components": [{"class": "f1", "type": "I0", "multiplicity": 3}],
      "blowdowns": [{"exceptional": "G", "pullback_defect_effective": true}]
    }

``curves`` is optional; a component may name either a curve or a basis
class.  Coefficients are integers or strings such as ``"2/3"``.
``multiplicity`` may be omitted when the type string already carries it
(``"m3:I0"``).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import collision as coll
from .errors import InconsistentMultiplicity, ScenarioError
from .kodaira import FiberType
from .logsurface import (
    BlowUpRecord,
    MarkedComponent,
    MMPResult,
    QDivisor,
    Surface,
    delta_of_contraction,
    lambda_of,
    mmp_drive,
)


def _fraction(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ScenarioError(f"coefficient {x!r} must be an integer or a string like '2/3'")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise ScenarioError(f"bad coefficient {x!r}") from exc


def _divisor(obj, what: str) -> QDivisor:
    if not isinstance(obj, dict):
        raise ScenarioError(f"{what} must be an object mapping class names to coefficients")
    return QDivisor({k: _fraction(v) for k, v in obj.items()})


def _require(obj: dict, key: str, kind, what: str):
    if key not in obj:
        raise ScenarioError(f"{what}: missing key {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise ScenarioError(f"{what}.{key} has the wrong type")
    return val


@dataclass(frozen=True)
class Blowdown:
    exceptional: str
    pullback_defect_effective: bool = True


@dataclass(frozen=True)
class Scenario:
    surface: Surface
    components: tuple[MarkedComponent, ...]
    blowdowns: tuple[Blowdown, ...]

    @property
    def lam(self) -> QDivisor:
        """The boundary divisor in basis coordinates."""
        return self.surface.curve_divisor(lambda_of(self.components))


def parse_scenario(data: dict[str, Any]) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    unknown = set(data) - {"surface", "curves", "components", "blowdowns"}
    if unknown:
        raise ScenarioError(f"unknown keys {sorted(unknown)}")
    surf = _require(data, "surface", dict, "scenario")
    basis = _require(surf, "basis", list, "surface")
    gram = _require(surf, "gram", list, "surface")
    for row in gram:
        if not isinstance(row, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in row):
            raise ScenarioError("surface.gram must be a matrix of integers")
    canonical = _divisor(_require(surf, "canonical", dict, "surface"), "surface.canonical")
    exceptional = surf.get("exceptional", [])
    curves = {k: _divisor(v, f"curves.{k}") for k, v in data.get("curves", {}).items()}
    history = tuple(BlowUpRecord(str(e), "given") for e in exceptional)
    surface = Surface(tuple(map(str, basis)), tuple(tuple(r) for r in gram), canonical, history, curves)

    comps = []
    for i, c in enumerate(data.get("components", [])):
        what = f"components[{i}]"
        if not isinstance(c, dict):
            raise ScenarioError(f"{what} must be an object")
        name = _require(c, "class", str, what)
        ftype = FiberType.parse(_require(c, "type", str, what))
        m = c.get("multiplicity")
        if m is not None:
            if isinstance(m, bool) or not isinstance(m, int):
                raise ScenarioError(f"{what}.multiplicity must be an integer")
            if ftype.multiplicity > 1 and ftype.multiplicity != m:
                raise InconsistentMultiplicity(f"{what}: type {ftype} but multiplicity {m}")
            ftype = ftype.with_multiplicity(m)
        surface.curve_class(name)
        comps.append(MarkedComponent(name, ftype))

    blowdowns = []
    for i, b in enumerate(data.get("blowdowns", [])):
        what = f"blowdowns[{i}]"
        if not isinstance(b, dict):
            raise ScenarioError(f"{what} must be an object")
        flag = b.get("pullback_defect_effective", True)
        if not isinstance(flag, bool):
            raise ScenarioError(f"{what}.pullback_defect_effective must be a boolean")
        blowdowns.append(Blowdown(_require(b, "exceptional", str, what), flag))
    return Scenario(surface, tuple(comps), tuple(blowdowns))


def load_scenario(path: str | Path) -> Scenario:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: invalid JSON ({exc})") from exc
    return parse_scenario(data)


@dataclass(frozen=True)
class BlowdownReport:
    exceptional: str
    k_plus_lambda_dot_gamma: Fraction
    delta: Fraction
    log_extremal: bool
    verdict: coll.ModelExistence
    pullback_defect_effective: bool

    def to_dict(self) -> dict:
        return {
            "exceptional": self.exceptional,
            "k_plus_lambda_dot_gamma": str(self.k_plus_lambda_dot_gamma),
            "delta": str(self.delta),
            "log_extremal": self.log_extremal,
            "verdict": self.verdict.value,
            "pullback_defect_effective": self.pullback_defect_effective,
        }


@dataclass(frozen=True)
class ScenarioReport:
    lam: QDivisor
    lam_curves: QDivisor
    blowdowns: tuple[BlowdownReport, ...]
    mmp: MMPResult

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam_curves.to_dict(),
            "lambda_basis": self.lam.to_dict(),
            "blowdowns": [b.to_dict() for b in self.blowdowns],
            "mmp": self.mmp.to_dict(),
        }


def evaluate(scenario: Scenario) -> ScenarioReport:
    s, lam = scenario.surface, scenario.lam
    reports = []
    for b in scenario.blowdowns:
        delta = delta_of_contraction(s, lam, b.exceptional)
        reports.append(
            BlowdownReport(
                b.exceptional,
                -delta,
                delta,
                delta > 0,
                coll.equidimensional_verdict(delta, b.pullback_defect_effective),
                b.pullback_defect_effective,
            )
        )
    return ScenarioReport(lam, lambda_of(scenario.components), tuple(reports), mmp_drive(s, lam))

"""Scenario files: JSON schema, validation with locations, and conversion to
library objects."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Any, Dict, List, Optional

import jsonschema

from .nevanlinna import CurveSpec, QuadratureConfig
from .poly import PolyParseError, parse_poly
from .position import HypersurfaceFamily, Hypersurface, SamplingConfig
from .variety import Ideal

SCHEMA_VERSION = "1"

_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^[+-]?[0-9]+(/[0-9]*[1-9][0-9]*|\.[0-9]+)?$"},
    ]
}

SCENARIO_SCHEMA: Dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "variables"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "description": {"type": "string"},
        "variables": {
            "type": "array", "minItems": 1, "uniqueItems": True,
            "items": {"type": "string", "pattern": r"^[A-Za-z_][A-Za-z_0-9]*$", "not": {"const": "z"}},
        },
        "variety": {
            "type": "object", "additionalProperties": False,
            "properties": {"generators": {"type": "array", "items": {"type": "string"}}},
        },
        "hypersurfaces": {
            "type": "array",
            "items": {
                "type": "object", "required": ["name", "poly"], "additionalProperties": False,
                "properties": {
                    "name": {"type": "string", "minLength": 1},
                    "degree": {"type": "integer", "minimum": 1},
                    "poly": {"type": "string"},
                },
            },
        },
        "curve": {
            "type": "object", "required": ["components"], "additionalProperties": False,
            "properties": {
                "components": {
                    "type": "array", "minItems": 1,
                    "items": {
                        "type": "object", "required": ["p"], "additionalProperties": False,
                        "properties": {
                            "p": {"type": "array", "items": _RATIONAL},
                            "q": {"type": "array", "items": _RATIONAL},
                        },
                    },
                },
            },
        },
        "sampling": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "seed": {"type": "integer", "minimum": 0, "maximum": 2 ** 64 - 1},
                "num_points": {"type": "integer", "minimum": 3},
                "coeff_bound": {"type": "integer", "minimum": 1},
            },
        },
        "analysis": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "l": {"type": "integer", "minimum": 0},
                "u": {"type": "integer", "minimum": 1},
                "c": {"type": "array", "items": _RATIONAL},
                "J": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                "epsilon": _RATIONAL,
                "r_range": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 1},
                            "minItems": 2, "maxItems": 2},
                "r_grid": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 1},
                           "minItems": 1},
                "samples": {"type": "integer", "minimum": 1},
                "tolerance": {"type": "number", "exclusiveMinimum": 0},
                "initial_nodes": {"type": "integer", "minimum": 16},
                "max_doublings": {"type": "integer", "minimum": 2},
                "t": {"type": "array", "items": {"type": "integer"}, "minItems": 2},
                "a": {"type": "array", "items": _RATIONAL},
                "instances": {"type": "integer", "minimum": 1},
                "q": {"type": "integer", "minimum": 1},
                "retry_budget": {"type": "integer", "minimum": 0},
                "target": {"type": "string"},
                "brute_force": {"type": "boolean"},
            },
        },
    },
}


class ScenarioError(ValueError):
    """Invalid scenario; ``location`` is a JSON path like ``hypersurfaces[2].poly``."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


def _path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


def validate(data: Any) -> None:
    validator = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        e = errors[0]
        raise ScenarioError(e.message, _path(e.absolute_path) or "<root>")


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read file: {exc.strerror}", path) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from exc


def unwrap_report(data: Any) -> Any:
    """A report file carries its effective input; accept it in place of a scenario."""
    if isinstance(data, dict) and "report_version" in data and "input" in data:
        return data["input"]
    return data


def bundled_names() -> List[str]:
    folder = resources.files("smtlab") / "scenarios"
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


def load_bundled(name: str) -> Dict[str, Any]:
    path = resources.files("smtlab") / "scenarios" / f"{name}.json"
    if not path.is_file():
        raise ScenarioError(f"no bundled scenario {name!r}; have {bundled_names()}")
    return json.loads(path.read_text(encoding="utf-8"))


def rational(x) -> Fraction:
    return Fraction(x) if isinstance(x, int) else Fraction(str(x))


@dataclass
class Scenario:
    """A validated scenario with lazily built library objects."""

    data: Dict[str, Any]

    @classmethod
    def from_data(cls, data: Any) -> "Scenario":
        data = copy.deepcopy(unwrap_report(data))
        validate(data)
        return cls(data)

    @property
    def variables(self) -> List[str]:
        return self.data["variables"]

    @property
    def analysis(self) -> Dict[str, Any]:
        return self.data.setdefault("analysis", {})

    def require(self, *keys: str) -> None:
        for key in keys:
            if key in ("hypersurfaces", "curve", "variety"):
                if key not in self.data:
                    raise ScenarioError("required by this command", key)
            elif key not in self.analysis:
                raise ScenarioError("required by this command", f"analysis.{key}")

    def ideal(self) -> Ideal:
        gens = self.data.get("variety", {}).get("generators", [])
        polys = []
        for i, text in enumerate(gens):
            try:
                p = parse_poly(text, self.variables)
            except PolyParseError as exc:
                raise ScenarioError(str(exc), f"variety.generators[{i}]") from exc
            if not p.is_constant():
                raise ScenarioError("variety generators must have constant coefficients",
                                    f"variety.generators[{i}]")
            polys.append(p.to_fixed())
        return Ideal(polys, nvars=len(self.variables))

    def family(self) -> HypersurfaceFamily:
        self.require("hypersurfaces")
        entries = []
        for i, h in enumerate(self.data["hypersurfaces"]):
            try:
                p = parse_poly(h["poly"], self.variables)
            except PolyParseError as exc:
                raise ScenarioError(str(exc), f"hypersurfaces[{i}].poly") from exc
            degree = h.get("degree", p.degree)
            try:
                entries.append(Hypersurface(h["name"], degree, p))
            except ValueError as exc:
                raise ScenarioError(str(exc), f"hypersurfaces[{i}]") from exc
        if not entries:
            raise ScenarioError("at least one hypersurface is required", "hypersurfaces")
        try:
            return HypersurfaceFamily(tuple(entries), len(self.variables))
        except ValueError as exc:
            raise ScenarioError(str(exc), "hypersurfaces") from exc

    def hypersurface(self, name: Optional[str] = None):
        fam = self.family()
        if name is None:
            return fam.entries[0]
        for e in fam.entries:
            if e.name == name:
                return e
        raise ScenarioError(f"no hypersurface named {name!r}", "analysis.target")

    def curve(self) -> CurveSpec:
        self.require("curve")
        comps = self.data["curve"]["components"]
        if len(comps) != len(self.variables):
            raise ScenarioError(f"{len(comps)} components for {len(self.variables)} variables",
                                "curve.components")
        try:
            return CurveSpec.from_coefficients(
                [([rational(x) for x in c["p"]], [rational(x) for x in c.get("q", [])]) for c in comps])
        except ValueError as exc:
            raise ScenarioError(str(exc), "curve") from exc

    def sampling(self) -> SamplingConfig:
        s = self.data.get("sampling", {})
        return SamplingConfig(**s)

    def quadrature(self) -> QuadratureConfig:
        a = self.analysis
        kwargs = {}
        if "tolerance" in a:
            kwargs["tolerance"] = float(a["tolerance"])
        if "initial_nodes" in a:
            kwargs["initial_nodes"] = a["initial_nodes"]
        if "max_doublings" in a:
            kwargs["max_doublings"] = a["max_doublings"]
        return QuadratureConfig(**kwargs)

    def r_grid(self, default_samples: int = 20) -> List[float]:
        a = self.analysis
        if "r_grid" in a:
            grid = [float(r) for r in a["r_grid"]]
            if any(b <= x for x, b in zip(grid, grid[1:])):
                raise ScenarioError("radii must increase", "analysis.r_grid")
            return grid
        self.require("r_range")
        lo, hi = (float(x) for x in a["r_range"])
        if hi <= lo:
            raise ScenarioError("r_range must be increasing", "analysis.r_range")
        n = a.get("samples", default_samples)
        if n == 1:
            return [lo]
        return [lo * (hi / lo) ** (i / (n - 1)) for i in range(n)]

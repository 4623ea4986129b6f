"""Reading and writing shift specifications as JSON documents."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from .core import (
    EventuallyPeriodicGapSet,
    FactorSource,
    FiniteGapSet,
    FullShift,
    GapSet,
    Periodic,
    PredicateGapSet,
    ShiftSpec,
    Substitution,
)

CONFIG_DEFAULTS = {
    "tol": 1e-10,
    "max_depth": None,
    "mass_tol": 1e-9,
    "enumeration_budget": 3 ** 14,
    "seed": 0,
}


def load_schema(name: str) -> dict:
    text = resources.files("gapshift.schemas").joinpath(name).read_text()
    return json.loads(text)


@dataclass
class SpecFile:
    spec: ShiftSpec
    config: dict = field(default_factory=dict)
    name: str | None = None

    def setting(self, key):
        return self.config.get(key, CONFIG_DEFAULTS[key])


def parse_spec(doc: dict) -> SpecFile:
    """Validate against specfile.schema.json and build the shift."""
    jsonschema.validate(doc, load_schema("specfile.schema.json"))
    k = doc["alphabet_size"]
    return SpecFile(ShiftSpec(_gap_set(doc["gap_set"]), _factor_source(doc["factor_source"], k)),
                    dict(doc.get("config", {})), doc.get("name"))


def load_spec(path) -> SpecFile:
    with open(Path(path)) as fh:
        return parse_spec(json.load(fh))


def _gap_set(d: dict) -> GapSet:
    kind = d["type"]
    if kind == "finite":
        return FiniteGapSet(d["elements"])
    if kind == "eventually_periodic":
        return EventuallyPeriodicGapSet(d.get("sporadic", ()), [tuple(p) for p in d.get("progressions", ())])
    return PredicateGapSet.named(d["name"], d.get("enumeration_bound", 10 ** 6), d.get("infinite", True))


def _factor_source(d: dict, k: int) -> FactorSource:
    kind = d["type"]
    if kind == "periodic":
        return Periodic(d["word"], k)
    if kind == "substitution":
        return Substitution(d["rules"], d.get("seed"), d.get("primitive", True), k)
    return FullShift(k)


def spec_to_dict(sf: SpecFile) -> dict:
    """Inverse of :func:`parse_spec`, in normalized form."""
    S, w = sf.spec.gap_set, sf.spec.factor_source
    if isinstance(S, FiniteGapSet):
        gap = {"type": "finite", "elements": list(S.elements)}
    elif isinstance(S, EventuallyPeriodicGapSet):
        gap = {"type": "eventually_periodic", "sporadic": list(S.sporadic),
               "progressions": [list(p) for p in S.progressions]}
    else:
        gap = {"type": "predicate", "name": S.name, "enumeration_bound": S.enumeration_bound,
               "infinite": S.infinite}
    if isinstance(w, Periodic):
        src = {"type": "periodic", "word": w.word}
    elif isinstance(w, Substitution):
        src = {"type": "substitution", "rules": dict(w.rules), "seed": w.seed, "primitive": w.primitive}
    else:
        src = {"type": "full_shift"}
    doc = {"alphabet_size": sf.spec.k, "gap_set": gap, "factor_source": src}
    if sf.name is not None:
        doc["name"] = sf.name
    if sf.config:
        doc["config"] = dict(sf.config)
    return doc

"""Finite local hidden-variable models for the CHSH scenario.

A model is a finite sample space with a probability weight per point and a
table of +/-1 responses ``f_A(omega)`` for the four single-party settings
``a1, a2`` (party 1) and ``b1, b2`` (party 2).  Joint responses factorize
pointwise: ``f_{a b}(omega) = f_a(omega) * f_b(omega)``.
"""

from __future__ import annotations

import itertools
import json
import math
from collections.abc import Hashable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

import jsonschema

from . import quantum
from .errors import ModelError, UnknownObservableError

LABELS = ("a1", "a2", "b1", "b2")
CHSH_TERMS = ((+1, "a1", "b1"), (-1, "a1", "b2"), (+1, "a2", "b1"), (+1, "a2", "b2"))
WEIGHT_TOL = 1e-12

Point = Hashable


@dataclass(frozen=True)
class SampleSpace:
    points: tuple
    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if not self.points:
            raise ModelError("sample space needs at least one point")
        if len(self.points) != len(self.weights):
            raise ModelError(f"{len(self.points)} points but {len(self.weights)} weights")
        if len(set(self.points)) != len(self.points):
            raise ModelError("duplicate sample points")
        if any(not math.isfinite(w) or w < 0 for w in self.weights):
            raise ModelError("weights must be finite and non-negative")
        total = math.fsum(self.weights)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ModelError(f"weights sum to {total!r}, expected 1")

    @classmethod
    def uniform(cls, points: Sequence[Point]) -> "SampleSpace":
        n = len(points)
        return cls(tuple(points), (1.0 / n,) * n)


class AssignmentTable(Mapping):
    """Read-only map ``(label, point) -> +1 | -1``."""

    def __init__(self, values: Mapping[tuple[str, Point], int]):
        table = {}
        for key, v in values.items():
            if v not in (-1, 1):
                raise ModelError(f"response {key} = {v!r} is not in {{-1, +1}}")
            table[key] = int(v)
        self._values = table

    @classmethod
    def from_nested(cls, nested: Mapping[str, Mapping[Point, int]]) -> "AssignmentTable":
        return cls({(label, pt): v for label, row in nested.items() for pt, v in row.items()})

    def __getitem__(self, key):
        try:
            return self._values[key]
        except KeyError:
            label, point = key
            raise UnknownObservableError(f"no response for {label!r} at point {point!r}") from None

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def __repr__(self):
        return f"AssignmentTable({self._values!r})"

    def is_total(self, labels: Sequence[str], points: Sequence[Point]) -> bool:
        return all((lab, pt) in self._values for lab in labels for pt in points)


@dataclass(frozen=True)
class HiddenVariableModel:
    space: SampleSpace
    table: AssignmentTable
    labels: tuple[str, ...] = LABELS

    def __post_init__(self):
        missing = [
            (lab, pt) for lab in self.labels for pt in self.space.points if (lab, pt) not in self.table
        ]
        if missing:
            raise ModelError(f"response table is missing {len(missing)} entries, e.g. {missing[0]}")

    @classmethod
    def deterministic(cls, responses: Mapping[str, int]) -> "HiddenVariableModel":
        """Single-point model with fixed responses."""
        return cls(SampleSpace((0,), (1.0,)), AssignmentTable({(k, 0): v for k, v in responses.items()}))


@dataclass(frozen=True)
class TwoTimeStrategy:
    """Responses at two sample points, one per measurement time."""

    omega_t1: Point
    omega_t2: Point
    table: AssignmentTable


def _split_label(label) -> tuple[str, ...]:
    if isinstance(label, str):
        return tuple(part for part in label.replace("*", " ").split() if part)
    return tuple(label)


def lhv_expectation(model: HiddenVariableModel, label) -> float:
    """Weighted average of ``f_A``; ``label`` may be ``"a1"``, ``"a1 b1"`` or ``("a1", "b1")``."""
    parts = _split_label(label)
    for part in parts:
        if part not in model.labels:
            raise UnknownObservableError(f"unknown observable label {part!r}")
    total = 0.0
    for pt, w in zip(model.space.points, model.space.weights):
        value = 1
        for part in parts:
            value *= model.table[part, pt]
        total += w * value
    return total


def chsh_u(strategy: TwoTimeStrategy) -> int:
    """CHSH combination with the ``a1``/``b1`` responses read at the first
    point and the ``a2``/``b2`` responses at the second."""
    f, t1, t2 = strategy.table, strategy.omega_t1, strategy.omega_t2
    return (
        f["a1", t1] * f["b1", t1]
        - f["a1", t1] * f["b2", t2]
        + f["a2", t2] * f["b1", t1]
        + f["a2", t2] * f["b2", t2]
    )


def chsh_v(point: Point, table: AssignmentTable) -> int:
    return chsh_u(TwoTimeStrategy(point, point, table))


def lhv_chsh(model: HiddenVariableModel) -> float:
    return sum(sign * lhv_expectation(model, (a, b)) for sign, a, b in CHSH_TERMS)


def deterministic_tables() -> Iterator[AssignmentTable]:
    """All 16 single-point response tables (point id 0)."""
    for values in itertools.product((1, -1), repeat=len(LABELS)):
        yield AssignmentTable({(lab, 0): v for lab, v in zip(LABELS, values)})


def two_point_tables() -> Iterator[TwoTimeStrategy]:
    """All 2^8 response tables over two distinct points."""
    keys = [(lab, pt) for pt in (1, 2) for lab in LABELS]
    for values in itertools.product((1, -1), repeat=len(keys)):
        yield TwoTimeStrategy(1, 2, AssignmentTable(dict(zip(keys, values))))


@dataclass(frozen=True)
class LhvBound:
    maximum: int
    attaining: int
    strategies: int
    values: frozenset


def lhv_bound() -> LhvBound:
    """Enumerate the deterministic vertices of the local polytope.

    A linear functional over the polytope peaks at a vertex, so the maximum
    over the 16 deterministic tables is the maximum over all models.
    """
    values = [chsh_v(0, table) for table in deterministic_tables()]
    best = max(values)
    return LhvBound(best, values.count(best), len(values), frozenset(values))


def max_chsh_lhv() -> int:
    return lhv_bound().maximum


def quantum_gap(settings: quantum.ChshSettings | None = None) -> float:
    """Quantum CHSH value of the entangled test state minus the local bound."""
    settings = quantum.xy_settings() if settings is None else settings
    return quantum.chsh_value(quantum.entangled_state(), settings) - max_chsh_lhv()


def mixture_of_deterministic(weights: Sequence[float]) -> HiddenVariableModel:
    """Convex mixture over the 16 deterministic tables (point ``k`` = table ``k``)."""
    tables = list(deterministic_tables())
    if len(weights) != len(tables):
        raise ModelError(f"expected {len(tables)} weights, got {len(weights)}")
    merged = {(lab, k): t[lab, 0] for k, t in enumerate(tables) for lab in LABELS}
    return HiddenVariableModel(SampleSpace(tuple(range(len(tables))), tuple(weights)), AssignmentTable(merged))


MODEL_SCHEMA = {
    "type": "object",
    "required": ["points", "weights", "table"],
    "additionalProperties": False,
    "properties": {
        "points": {"type": "array", "minItems": 1, "items": {"type": ["string", "integer"]}},
        "weights": {"type": "array", "minItems": 1, "items": {"type": "number", "minimum": 0}},
        "table": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": {"enum": [-1, 1]},
            },
        },
    },
}


def model_from_dict(doc: Mapping) -> HiddenVariableModel:
    """Build a model from ``{points, weights, table: {label: {point: +/-1}}}``.

    JSON object keys are strings, so table entries are matched against
    ``str(point)``.
    """
    jsonschema.validate(doc, MODEL_SCHEMA)
    points = tuple(doc["points"])
    by_name = {str(p): p for p in points}
    values = {}
    for label, row in doc["table"].items():
        for key, v in row.items():
            if key not in by_name:
                raise ModelError(f"table[{label!r}] refers to unknown point {key!r}")
            values[label, by_name[key]] = v
    return HiddenVariableModel(SampleSpace(points, doc["weights"]), AssignmentTable(values))


def model_to_dict(model: HiddenVariableModel) -> dict:
    return {
        "points": list(model.space.points),
        "weights": list(model.space.weights),
        "table": {
            lab: {str(pt): model.table[lab, pt] for pt in model.space.points} for lab in model.labels
        },
    }


def load_model(path: str | Path) -> HiddenVariableModel:
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))

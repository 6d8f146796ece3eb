"""Kochen-Specker style value-assignment checks.

An instance is a list of dichotomic observables plus *contexts*: groups of
pairwise commuting observables whose ordered product equals ``sign * I``.
A noncontextual coloring assigns each observable a value in {-1, +1} so that
every context's product of values equals its sign.  ``find_coloring``
searches all 2^n assignments exhaustively.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema
import numpy as np

from . import linalg
from .errors import DimensionError, InstanceTooLargeError, NotDichotomicError
from .quantum import Observable, two_qubit

MAX_SEARCH_OBSERVABLES = 24
MAX_POLY_DEGREE = 8
_CHUNK_BITS = 16


@dataclass(frozen=True)
class Context:
    members: tuple[int, ...]
    sign: int

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(int(i) for i in self.members))
        if self.sign not in (-1, 1):
            raise ValueError(f"context sign must be +1 or -1, got {self.sign!r}")
        if not self.members:
            raise ValueError("context needs at least one member")


@dataclass(frozen=True)
class KSInstance:
    observables: tuple[Observable, ...]
    contexts: tuple[Context, ...]

    def __post_init__(self):
        object.__setattr__(self, "observables", tuple(self.observables))
        object.__setattr__(self, "contexts", tuple(self.contexts))
        n = len(self.observables)
        for ctx in self.contexts:
            bad = [i for i in ctx.members if not 0 <= i < n]
            if bad:
                raise IndexError(f"context refers to unknown observable index {bad[0]}")

    @property
    def labels(self) -> list[str]:
        return [o.label for o in self.observables]

    def sign_parity(self) -> int:
        """Product of all context signs."""
        return int(np.prod([c.sign for c in self.contexts])) if self.contexts else 1

    def occurrences(self) -> list[int]:
        counts = [0] * len(self.observables)
        for ctx in self.contexts:
            for i in ctx.members:
                counts[i] += 1
        return counts


@dataclass(frozen=True)
class KSAssignment:
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if any(v not in (-1, 1) for v in self.values):
            raise ValueError("assignment values must be +1 or -1")

    def __getitem__(self, index: int) -> int:
        return self.values[index]

    def __len__(self) -> int:
        return len(self.values)

    def violations(self, instance: KSInstance) -> list[int]:
        """Indices of contexts whose value product differs from the sign."""
        if len(self.values) != len(instance.observables):
            raise ValueError("assignment is not total over the instance's observables")
        out = []
        for k, ctx in enumerate(instance.contexts):
            prod = 1
            for i in ctx.members:
                prod *= self.values[i]
            if prod != ctx.sign:
                out.append(k)
        return out


@dataclass(frozen=True)
class NoColoring:
    min_violations: int
    witness: KSAssignment
    searched: int

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class ContextCheck:
    members: tuple[int, ...]
    sign: int
    commuting: bool
    product_ok: bool

    @property
    def ok(self) -> bool:
        return self.commuting and self.product_ok


@dataclass(frozen=True)
class InstanceReport:
    contexts: tuple[ContextCheck, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.contexts)


def mermin_peres_square() -> KSInstance:
    """The 3x3 square of two-qubit Pauli products.

    Rows multiply to +I; columns to +I, +I, -I.  The third column holds
    ``xx``, ``yy``, ``zz`` with ``xx * yy * zz = -I``.
    """
    grid = [
        [("x", "i"), ("i", "x"), ("x", "x")],
        [("i", "y"), ("y", "i"), ("y", "y")],
        [("x", "y"), ("y", "x"), ("z", "z")],
    ]
    observables = [two_qubit(a, b) for row in grid for a, b in row]
    contexts = [Context((3 * r, 3 * r + 1, 3 * r + 2), +1) for r in range(3)]
    contexts += [Context((c, c + 3, c + 6), -1 if c == 2 else +1) for c in range(3)]
    return KSInstance(tuple(observables), tuple(contexts))


def verify_instance(instance: KSInstance, tol: float = linalg.EPS_MAT) -> InstanceReport:
    """Check each context quantum-mechanically: pairwise commutation and
    ``ordered product == sign * I``."""
    checks = []
    for ctx in instance.contexts:
        mats = [instance.observables[i].matrix for i in ctx.members]
        dim = mats[0].shape[0]
        if any(m.shape[0] != dim for m in mats):
            raise DimensionError(f"context {ctx.members} mixes observable dimensions")
        commuting = all(
            linalg.allclose(linalg.commutator(a, b), 0.0 * a, tol) for a, b in itertools.combinations(mats, 2)
        )
        prod = linalg.identity(dim)
        for m in mats:
            prod = prod @ m
        product_ok = linalg.allclose(prod, ctx.sign * linalg.identity(dim), tol)
        if commuting:
            backward = linalg.identity(dim)
            for m in reversed(mats):
                backward = backward @ m
            assert linalg.allclose(prod, backward, 10 * tol), "commuting product depends on order"
        checks.append(ContextCheck(ctx.members, ctx.sign, commuting, product_ok))
    return InstanceReport(tuple(checks))


def _violation_counts(instance: KSInstance, start: int, stop: int) -> np.ndarray:
    """Violated-context counts for assignments ``start..stop-1``.

    Assignment ``k`` gives observable ``i`` the value -1 iff bit ``n-1-i`` of
    ``k`` is set, so integer order is lexicographic order with +1 < -1.
    """
    n = len(instance.observables)
    ks = np.arange(start, stop, dtype=np.int64)
    bits = (ks[:, None] >> (n - 1 - np.arange(n))) & 1
    counts = np.zeros(len(ks), dtype=np.int64)
    for ctx in instance.contexts:
        parity = np.bitwise_xor.reduce(bits[:, list(ctx.members)], axis=1)
        counts += parity != (1 if ctx.sign == -1 else 0)
    return counts


def _assignment_from_index(k: int, n: int) -> KSAssignment:
    return KSAssignment(tuple(-1 if (k >> (n - 1 - i)) & 1 else 1 for i in range(n)))


def find_coloring(instance: KSInstance) -> KSAssignment | NoColoring:
    """Exhaustive search for a noncontextual +/-1 coloring.

    Returns the lexicographically first valid coloring (observables in index
    order, +1 before -1).  When none exists, returns ``NoColoring`` with the
    minimum number of violated contexts and the first assignment attaining
    it.
    """
    n = len(instance.observables)
    if n > MAX_SEARCH_OBSERVABLES:
        raise InstanceTooLargeError(f"{n} observables exceeds the search budget of {MAX_SEARCH_OBSERVABLES}")
    total = 1 << n
    chunk = 1 << _CHUNK_BITS
    best, best_k = None, 0
    for start in range(0, total, chunk):
        counts = _violation_counts(instance, start, min(start + chunk, total))
        k = int(np.argmin(counts))
        if best is None or counts[k] < best:
            best, best_k = int(counts[k]), start + k
        if best == 0:
            return _assignment_from_index(best_k, n)
    return NoColoring(best, _assignment_from_index(best_k, n), total)


def count_colorings(instance: KSInstance) -> int:
    n = len(instance.observables)
    if n > MAX_SEARCH_OBSERVABLES:
        raise InstanceTooLargeError(f"{n} observables exceeds the search budget of {MAX_SEARCH_OBSERVABLES}")
    total, chunk = 1 << n, 1 << _CHUNK_BITS
    return sum(int(np.sum(_violation_counts(instance, s, min(s + chunk, total)) == 0)) for s in range(0, total, chunk))


def parity_obstruction(instance: KSInstance) -> bool:
    """True when the sign product is -1 but every observable sits in an even
    number of contexts, which rules out any coloring without search."""
    return instance.sign_parity() == -1 and all(c % 2 == 0 for c in instance.occurrences())


@dataclass(frozen=True)
class FunctionalRuleResult:
    holds: bool
    value: int
    mapped_value: float
    forced_value: float | None
    dichotomic: bool

    def __bool__(self) -> bool:
        return self.holds


def _poly(coeffs: Sequence[float]):
    coeffs = [float(c) for c in coeffs]
    if len(coeffs) - 1 > MAX_POLY_DEGREE:
        raise ValueError(f"polynomial degree {len(coeffs) - 1} exceeds {MAX_POLY_DEGREE}")
    return lambda x: sum(c * x**k for k, c in enumerate(coeffs))


def functional_rule_check(
    obs: Observable, value: int, coeffs: Sequence[float], tol: float = linalg.EPS_SPECTRAL
) -> FunctionalRuleResult:
    """Test ``g(f(A)) == f(g(A))`` for a real polynomial ``g``.

    ``coeffs`` lists the coefficients lowest degree first, so ``[0, 0, 1]`` is
    ``x**2``.  ``g(A)`` is built spectrally.  The value the rule allows for
    ``g(A)`` is its eigenvalue on the eigenspace where ``A`` takes ``value``;
    it exists only if ``value`` is in the spectrum of ``A``.  ``dichotomic``
    reports whether that forced value stays in {-1, +1}.
    """
    if not obs.is_dichotomic():
        raise NotDichotomicError(f"{obs.label!r} does not square to identity")
    if value not in (-1, 1):
        raise ValueError(f"value must be +1 or -1, got {value!r}")
    g = _poly(coeffs)
    ga = linalg.apply_spectral(obs.matrix, g)
    w, v = linalg.hermitian_eigh(obs.matrix)
    cols = v[:, np.abs(w - value) <= tol]
    mapped = float(g(value))
    if cols.shape[1] == 0:
        return FunctionalRuleResult(False, value, mapped, None, abs(abs(mapped) - 1) <= tol)
    projector = cols @ cols.conj().T
    forced = float((np.trace(projector @ ga) / np.trace(projector)).real)
    holds = abs(forced - mapped) <= tol
    dichotomic = min(abs(forced - 1), abs(forced + 1)) <= tol
    return FunctionalRuleResult(holds, value, mapped, forced, dichotomic)


@dataclass(frozen=True)
class ValueEntanglement:
    zeta: int
    forced_product: int
    admissible_pairs: tuple[tuple[int, int], ...]
    quantum_relation_holds: bool


def value_entanglement_demo(zeta: int) -> ValueEntanglement:
    """Fix ``f(zz) = zeta`` and list the (f(xx), f(yy)) pairs compatible
    with ``zz = -(yy)(xx)``."""
    if zeta not in (-1, 1):
        raise ValueError(f"zeta must be +1 or -1, got {zeta!r}")
    xx, yy, zz = two_qubit("x", "x"), two_qubit("y", "y"), two_qubit("z", "z")
    relation = linalg.allclose(zz.matrix, -(yy.matrix @ xx.matrix))
    pairs = tuple((fx, fy) for fx in (1, -1) for fy in (1, -1) if -fy * fx == zeta)
    return ValueEntanglement(zeta, -zeta, pairs, relation)


def _matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def instance_to_dict(instance: KSInstance) -> dict:
    return {
        "observables": [{"label": o.label, "matrix": _matrix_to_json(o.matrix)} for o in instance.observables],
        "contexts": [{"members": list(c.members), "sign": c.sign} for c in instance.contexts],
    }


INSTANCE_SCHEMA = {
    "type": "object",
    "required": ["observables", "contexts"],
    "properties": {
        "observables": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "matrix"],
                "properties": {
                    "label": {"type": "string"},
                    "matrix": {
                        "type": "array",
                        "items": {
                            "type": "array",
                            "items": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "number"}},
                        },
                    },
                },
            },
        },
        "contexts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["members", "sign"],
                "properties": {
                    "members": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}},
                    "sign": {"enum": [-1, 1]},
                },
            },
        },
    },
}


def instance_from_dict(doc: dict) -> KSInstance:
    jsonschema.validate(doc, INSTANCE_SCHEMA)
    observables = []
    for entry in doc["observables"]:
        m = np.array([[complex(re, im) for re, im in row] for row in entry["matrix"]], dtype=np.complex128)
        observables.append(Observable(entry["label"], m))
    contexts = [Context(tuple(c["members"]), c["sign"]) for c in doc["contexts"]]
    return KSInstance(tuple(observables), tuple(contexts))


def save_instance(instance: KSInstance, path: str | Path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(instance), indent=2) + "\n", encoding="utf-8")


def load_instance(path: str | Path) -> KSInstance:
    return instance_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


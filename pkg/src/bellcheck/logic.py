"""Two-valued propositional logic and the consistency case analysis.

Quantified sentences are treated as single atoms:

* ``BT``  - the Bell theorem,
* ``C``   - the claim that local realism forces every commutator
  observable to vanish, read as ``NB or K``,
* ``NB``  - for every state, the local-realism bundle fails,
* ``K``   - for every state and pair, ``<F(A, B)> = 0``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping
from dataclasses import dataclass

from .errors import UnboundAtomError


class Formula:
    def __invert__(self) -> "Formula":
        return Not(self)

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom name must be non-empty")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula

    def __str__(self):
        return f"~{self.operand}"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} -> {self.right})"


# Disjunction truth table, rows (A, B) -> A or B.
OR_TABLE = {(1, 1): 1, (1, 0): 1, (0, 1): 1, (0, 0): 0}


def evaluate(formula: Formula, assignment: Mapping[str, int]) -> int:
    match formula:
        case Atom(name):
            try:
                value = assignment[name]
            except KeyError:
                raise UnboundAtomError(f"atom {name!r} has no truth value") from None
            if value not in (0, 1):
                raise ValueError(f"truth value of {name!r} must be 0 or 1, got {value!r}")
            return int(value)
        case Not(operand):
            return 1 - evaluate(operand, assignment)
        case And(left, right):
            return evaluate(left, assignment) & evaluate(right, assignment)
        case Or(left, right):
            return OR_TABLE[evaluate(left, assignment), evaluate(right, assignment)]
        case Implies(left, right):
            return OR_TABLE[1 - evaluate(left, assignment), evaluate(right, assignment)]
    raise TypeError(f"not a formula: {formula!r}")


def atoms(formula: Formula) -> list[str]:
    """Atom names in first-occurrence order."""
    seen: dict[str, None] = {}

    def walk(f):
        match f:
            case Atom(name):
                seen.setdefault(name)
            case Not(operand):
                walk(operand)
            case And(l, r) | Or(l, r) | Implies(l, r):
                walk(l)
                walk(r)

    walk(formula)
    return list(seen)


def assignments(names) -> Iterator[dict[str, int]]:
    names = list(names)
    for values in itertools.product((1, 0), repeat=len(names)):
        yield dict(zip(names, values))


def truth_table(formula: Formula, names=None) -> list[tuple[dict[str, int], int]]:
    names = atoms(formula) if names is None else names
    return [(a, evaluate(formula, a)) for a in assignments(names)]


def equivalent(f: Formula, g: Formula) -> bool:
    names = sorted(set(atoms(f)) | set(atoms(g)))
    return all(evaluate(f, a) == evaluate(g, a) for a in assignments(names))


def implication_as_disjunction(formula: Formula) -> Formula:
    """Rewrite every ``P -> Q`` as ``~P | Q``."""
    match formula:
        case Atom():
            return formula
        case Not(operand):
            return Not(implication_as_disjunction(operand))
        case And(l, r):
            return And(implication_as_disjunction(l), implication_as_disjunction(r))
        case Or(l, r):
            return Or(implication_as_disjunction(l), implication_as_disjunction(r))
        case Implies(l, r):
            return Or(Not(implication_as_disjunction(l)), implication_as_disjunction(r))
    raise TypeError(f"not a formula: {formula!r}")


BT, C, NB, K = Atom("BT"), Atom("C"), Atom("NB"), Atom("K")

# The Bell theorem holds exactly when some state violates the bundle, and C
# is the disjunction NB | K.
CASE_RULES = (
    Not(BT) >> NB,
    BT >> Not(NB),
    (C >> (NB | K)) & ((NB | K) >> C),
)

PROPOSITION_FOR_INPUT = {(1, 0): 1, (0, 1): 2, (1, 1): 3}


@dataclass(frozen=True)
class CaseReport:
    bt: int
    c: int
    nb: int | None
    k: int | str | None
    nb_or_k: int | None
    consistent: bool
    proposition: int | None
    covered: bool
    models: tuple[dict, ...]
    constraints: tuple[str, ...]

    @property
    def verdict(self) -> str:
        return "consistent" if self.consistent else "inconsistent"


def _forced(models, name):
    values = {m[name] for m in models}
    if not values:
        return None
    if len(values) == 1:
        return values.pop()
    return "unconstrained"


def case_analysis(bell_theorem: int, proposition_c: int) -> CaseReport:
    """Derive NB, K and NB|K from fixed truth values of BT and C.

    Enumerates every assignment of the free atoms that satisfies the case
    rules; an atom with one surviving value is forced, one with both is
    reported as ``"unconstrained"``.
    """
    if bell_theorem not in (0, 1) or proposition_c not in (0, 1):
        raise ValueError("truth values must be 0 or 1")
    models = []
    for free in assignments(["NB", "K"]):
        a = {"BT": bell_theorem, "C": proposition_c, **free}
        if all(evaluate(rule, a) for rule in CASE_RULES):
            models.append(a)
    nb = _forced(models, "NB")
    k = _forced(models, "K")
    disj = {evaluate(NB | K, m) for m in models}
    nb_or_k = disj.pop() if len(disj) == 1 else None
    key = (bell_theorem, proposition_c)
    return CaseReport(
        bt=bell_theorem,
        c=proposition_c,
        nb=nb if nb != "unconstrained" else None,
        k=k,
        nb_or_k=nb_or_k,
        consistent=bool(models),
        proposition=PROPOSITION_FOR_INPUT.get(key),
        covered=key in PROPOSITION_FOR_INPUT,
        models=tuple(models),
        constraints=(
            f"NB = {1 - bell_theorem} (forced by BT = {bell_theorem})",
            f"NB | K = {proposition_c} (forced by C = {proposition_c})",
        ),
    )


PREMISES = ("R", "D", "L", "M", "K")
PREMISE_NAMES = {
    "R": "realism: a response function f_A exists",
    "D": "the measure reproduces quantum probabilities",
    "L": "Bell locality: omega_t1 == omega_t2",
    "M": "responses take values in {-1, +1}",
    "K": "for all t, psi, A, B: <F(A, B)> = 0",
}

# P0: the product of commutator norms at two times is 0.
# P1: the same product is 1.
P0, P1 = Atom("P0"), Atom("P1")
SCHEMA_RULES = (
    Atom("K") >> P0,
    (Atom("R") & Atom("D") & Atom("L") & Atom("M")) >> P1,
    Not(P0 & P1),
)


@dataclass(frozen=True)
class ContradictionReport:
    members: tuple[str, ...]
    quantity: str
    conflicting_values: frozenset[int]
    satisfiable: bool


def contradiction_schema(premises=PREMISES) -> ContradictionReport:
    """Check whether the accepted premises can all be true together.

    Premises left out of ``premises`` are free atoms.  The norm product is
    forced to 0 by ``K`` and to 1 by ``R & D & L & M``; both at once is
    unsatisfiable.
    """
    premises = tuple(premises)
    unknown = set(premises) - set(PREMISES)
    if unknown:
        raise ValueError(f"unknown premises {sorted(unknown)}")
    forced = set()
    if "K" in premises:
        forced.add(0)
    if {"R", "D", "L", "M"} <= set(premises):
        forced.add(1)
    free = [p for p in PREMISES if p not in premises] + ["P0", "P1"]
    satisfiable = any(
        all(evaluate(rule, {**{p: 1 for p in premises}, **a}) for rule in SCHEMA_RULES)
        for a in assignments(free)
    )
    return ContradictionReport(premises, "norm_product", frozenset(forced), satisfiable)

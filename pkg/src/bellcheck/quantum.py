"""Pauli observables, density matrices and the CHSH functional.

Basis convention
----------------
The computational basis is the sigma_z eigenbasis, ``|0> = z-up``.  The
entangled test state used throughout is

    psi = (|+_1>|+_2> + e^{i pi/4} |-_1>|-_2>) / sqrt(2)

with ``|+_1> = |0>``, ``|-_1> = |1>`` on qubit 1 and the opposite labelling
``|+_2> = |1>``, ``|-_2> = |0>`` on qubit 2.  With the standard Pauli
matrices this is the labelling for which both partial sums
``<xx> + <yy>`` and ``-<xy> + <yx>`` equal sqrt(2); labelling both qubits
z-up gives zero for each of them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import DimensionError, NotDichotomicError, NotHermitianError

AXES = ("x", "y", "z", "i")

_PAULI = {
    "i": np.eye(2, dtype=np.complex128),
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@dataclass(frozen=True, eq=False)
class Observable:
    """A labelled Hermitian matrix."""

    label: str
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        if not linalg.is_hermitian(m):
            raise NotHermitianError(f"observable {self.label!r} is not Hermitian")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def is_dichotomic(self, tol: float = linalg.EPS_MAT) -> bool:
        return linalg.allclose(self.matrix @ self.matrix, linalg.identity(self.dim), tol)

    def __matmul__(self, other: "Observable") -> np.ndarray:
        return linalg.mat_mul(self.matrix, other.matrix)


@dataclass(frozen=True, eq=False)
class QuantumState:
    """A density matrix.  Pure states are stored as ``|psi><psi|``."""

    label: str
    rho: np.ndarray = field(repr=False)

    def __post_init__(self):
        r = linalg.as_matrix(self.rho)
        if not linalg.is_hermitian(r):
            raise NotHermitianError(f"state {self.label!r} is not Hermitian")
        if abs(linalg.trace(r) - 1.0) > 1e-12:
            raise ValueError(f"state {self.label!r} has trace {linalg.trace(r)}, expected 1")
        if linalg.hermitian_eigenvalues(r)[0] < -1e-12:
            raise ValueError(f"state {self.label!r} is not positive semidefinite")
        r = r.copy()
        r.setflags(write=False)
        object.__setattr__(self, "rho", r)

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    @classmethod
    def from_vector(cls, label: str, psi) -> "QuantumState":
        v = np.asarray(psi, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise ValueError("zero state vector")
        v = v / norm
        return cls(label, np.outer(v, v.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "QuantumState":
        return cls(f"I/{dim}", linalg.identity(dim) / dim)


@dataclass(frozen=True)
class ChshSettings:
    """Two dichotomic settings per party.

    The CHSH combination is ``a1b1 - a1b2 + a2b1 + a2b2``.
    """

    a1: Observable
    a2: Observable
    b1: Observable
    b2: Observable

    def __post_init__(self):
        for name in ("a1", "a2", "b1", "b2"):
            obs = getattr(self, name)
            if not obs.is_dichotomic():
                raise NotDichotomicError(f"setting {name} ({obs.label}) does not square to identity")
        if self.a1.dim != self.a2.dim or self.b1.dim != self.b2.dim:
            raise DimensionError("settings of one party must share a dimension")

    def terms(self) -> list[tuple[int, Observable]]:
        """The four joint observables with their CHSH signs."""
        out = []
        for sign, a, b in (
            (+1, self.a1, self.b1),
            (-1, self.a1, self.b2),
            (+1, self.a2, self.b1),
            (+1, self.a2, self.b2),
        ):
            out.append((sign, Observable(f"{a.label} {b.label}", linalg.tensor(a.matrix, b.matrix))))
        return out


def pauli(axis: str) -> Observable:
    if axis == "identity":
        axis = "i"
    try:
        return Observable(f"s_{axis}", _PAULI[axis])
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}; expected one of {AXES}") from None


def two_qubit(axis1: str, axis2: str) -> Observable:
    m = linalg.tensor(pauli(axis1).matrix, pauli(axis2).matrix)
    return Observable(f"s1_{axis1} s2_{axis2}", m)


def xy_settings() -> ChshSettings:
    """sigma_x / sigma_y on each side, as in the textbook CHSH test."""
    return ChshSettings(a1=pauli("x"), a2=pauli("y"), b1=pauli("x"), b2=pauli("y"))


def entangled_state_vector() -> np.ndarray:
    plus1, minus1 = np.array([1, 0]), np.array([0, 1])
    plus2, minus2 = np.array([0, 1]), np.array([1, 0])
    phase = cmath.exp(1j * math.pi / 4)
    return (np.kron(plus1, plus2) + phase * np.kron(minus1, minus2)) / math.sqrt(2)


def entangled_state() -> QuantumState:
    return QuantumState.from_vector("psi(t)", entangled_state_vector())


def expectation(state: QuantumState, obs: Observable) -> float:
    """``tr[rho A]``; the imaginary part must vanish to 1e-12."""
    if state.dim != obs.dim:
        raise DimensionError(f"state dim {state.dim} != observable dim {obs.dim}")
    value = linalg.trace(state.rho @ obs.matrix)
    if abs(value.imag) > 1e-12:
        raise ArithmeticError(f"expectation of {obs.label!r} has imaginary part {value.imag:.3e}")
    return value.real


def chsh_value(state: QuantumState, settings: ChshSettings) -> float:
    return sum(sign * expectation(state, obs) for sign, obs in settings.terms())


def bell_operator(settings: ChshSettings) -> Observable:
    terms = settings.terms()
    m = sum(sign * obs.matrix for sign, obs in terms)
    return Observable("bell", m)


def tsirelson_max(settings: ChshSettings) -> float:
    """Largest eigenvalue of the Bell operator, i.e. the quantum optimum."""
    return linalg.hermitian_eigenvalues(bell_operator(settings).matrix)[-1]


def commutator_observable(a: Observable, b: Observable) -> Observable:
    """``|[A, B]|^2`` realised as ``C^dagger C`` with ``C = [A, B]``."""
    c = linalg.commutator(a.matrix, b.matrix)
    f = linalg.adjoint(c) @ c
    # C^dagger C is Hermitian in exact arithmetic; enforce it bit-for-bit
    f = 0.5 * (f + f.conj().T)
    return Observable(f"F({a.label}, {b.label})", f)


def commutator_norm_expectation(state: QuantumState, a: Observable, b: Observable) -> float:
    return expectation(state, commutator_observable(a, b))


def random_state(dim: int, rng: np.random.Generator, rank: int | None = None) -> QuantumState:
    """Random density matrix of the given rank (full rank by default)."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return QuantumState("random", rho / np.trace(rho).real)


def random_hermitian(dim: int, rng: np.random.Generator, label: str = "H") -> Observable:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return Observable(label, 0.5 * (g + g.conj().T))

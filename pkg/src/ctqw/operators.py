"""Phased Hermitian adjacency, coupling series, and Hamiltonian assembly.

The single-phase Hermitian adjacency of a directed graph is

    A_H(alpha) = exp(i alpha) A + exp(-i alpha) A^T,

and a real-coefficient coupling series J lifts it to the walk Hamiltonian

    H = J(A_H) + J(A_H)^T.

J(A_H) is Hermitian for real series, so its transpose equals its complex
conjugate and H is always real symmetric.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-12

_SERIES_KINDS = ("polynomial", "exp", "sinh", "cosh", "identity")

_PI_TOKEN = re.compile(
    r"^(?P<sign>[+-])?(?P<num>\d+(\.\d+)?)?\s*\*?\s*pi\s*(/\s*(?P<den>\d+(\.\d+)?))?$"
)


class EigendecompositionError(ArithmeticError):
    """Raised when the Hermitian eigensolver fails to converge."""


def parse_phase(token) -> float:
    """Parse a phase value from a number or a symbolic token.

    Accepts plain numbers, numeric strings, and pi fractions such as
    ``"pi"``, ``"pi/2"``, ``"3pi/4"``, ``"-pi/3"``, ``"0.5pi"``.
    """
    if isinstance(token, bool):
        raise ValueError(f"not a phase: {token!r}")
    if isinstance(token, (int, float)):
        value = float(token)
    elif isinstance(token, str):
        text = token.strip().lower()
        m = _PI_TOKEN.match(text)
        if m:
            value = math.pi
            if m.group("num"):
                value *= float(m.group("num"))
            if m.group("den"):
                den = float(m.group("den"))
                if den == 0.0:
                    raise ValueError(f"cannot parse phase token {token!r}")
                value /= den
            if m.group("sign") == "-":
                value = -value
        else:
            try:
                value = float(text)
            except ValueError:
                raise ValueError(f"cannot parse phase token {token!r}") from None
    else:
        raise ValueError(f"cannot parse phase token {token!r}")
    if not math.isfinite(value):
        raise ValueError(f"phase must be finite, got {value!r}")
    return value


def reduce_phase(alpha: float) -> float:
    """Canonical representative of alpha in [0, 2*pi).  Never applied implicitly."""
    return float(alpha) % (2.0 * math.pi)


@dataclass(eq=False, frozen=True)
class HermitianOperator:
    """A square complex matrix certified and stored as exactly Hermitian.

    Construction rejects matrices whose Hermiticity defect max|M - M^H|
    exceeds ``HERMITICITY_TOL`` and stores the hermitized (M + M^H)/2.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator must be square, got shape {m.shape}")
        defect = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
        if defect > HERMITICITY_TOL:
            raise ValueError(f"Hermiticity defect {defect:.3e} exceeds {HERMITICITY_TOL:g}")
        m = (m + m.conj().T) / 2.0
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class CouplingSeries:
    """Real-coefficient scalar series J applied spectrally to operators.

    ``polynomial`` carries explicit coefficients (j_0, j_1, ...); the other
    kinds are the usual entire functions.  ``identity`` is J(x) = x.
    """

    kind: str
    coefficients: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in _SERIES_KINDS:
            raise ValueError(f"unknown series kind {self.kind!r}; expected one of {_SERIES_KINDS}")
        coeffs = tuple(float(c) for c in (self.coefficients or ()))
        if self.kind == "polynomial":
            if not coeffs:
                raise ValueError("polynomial series needs at least one coefficient")
            if not all(math.isfinite(c) for c in coeffs):
                raise ValueError("polynomial coefficients must be finite")
        elif coeffs:
            raise ValueError(f"{self.kind!r} series takes no coefficients")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def polynomial(cls, coefficients) -> "CouplingSeries":
        return cls("polynomial", tuple(coefficients))

    @classmethod
    def exp(cls) -> "CouplingSeries":
        return cls("exp")

    @classmethod
    def sinh(cls) -> "CouplingSeries":
        return cls("sinh")

    @classmethod
    def cosh(cls) -> "CouplingSeries":
        return cls("cosh")

    @classmethod
    def identity(cls) -> "CouplingSeries":
        return cls("identity")

    def scalar(self, x):
        """Evaluate J elementwise on a scalar or array."""
        x = np.asarray(x, dtype=float)
        if self.kind == "polynomial":
            return np.polynomial.polynomial.polyval(x, self.coefficients)
        if self.kind == "exp":
            return np.exp(x)
        if self.kind == "sinh":
            return np.sinh(x)
        if self.kind == "cosh":
            return np.cosh(x)
        return x.copy()

    @property
    def j0(self) -> float:
        """Constant term j_0 of the series."""
        if self.kind == "polynomial":
            return self.coefficients[0]
        return 1.0 if self.kind in ("exp", "cosh") else 0.0

    def even_scalar(self, x):
        """Even part above the constant term: (J(x) + J(-x))/2 - j_0."""
        return (self.scalar(x) + self.scalar(-np.asarray(x, dtype=float))) / 2.0 - self.j0

    def odd_scalar(self, x):
        """Odd part: (J(x) - J(-x))/2."""
        return (self.scalar(x) - self.scalar(-np.asarray(x, dtype=float))) / 2.0


def hermitian_adjacency(g, alpha: float) -> HermitianOperator:
    """A_H(alpha) = exp(i alpha) A + exp(-i alpha) A^T for a directed graph."""
    a = g.adjacency()
    m = np.exp(1j * alpha) * a + np.exp(-1j * alpha) * a.T
    return HermitianOperator(m)


@dataclass(eq=False, frozen=True)
class EigenSystem:
    """Ascending eigenvalues and matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def hermitian_eigendecomposition(op: HermitianOperator) -> EigenSystem:
    """Full eigendecomposition of a Hermitian operator (ascending order)."""
    try:
        w, v = np.linalg.eigh(op.matrix)
    except np.linalg.LinAlgError as exc:
        raise EigendecompositionError(str(exc)) from exc
    return EigenSystem(w, v)


def apply_coupling(series: CouplingSeries, op: HermitianOperator) -> HermitianOperator:
    """Evaluate J(M) spectrally: V J(w) V^H from the eigensystem of M.

    The identity series returns its input unchanged.
    """
    if series.kind == "identity":
        return op
    es = hermitian_eigendecomposition(op)
    f = series.scalar(es.values)
    m = (es.vectors * f) @ es.vectors.conj().T
    # V f(w) V^H is Hermitian up to roundoff; the constructor re-certifies it.
    return HermitianOperator(m)


def assemble_hamiltonian(g, alpha: float, series: CouplingSeries) -> HermitianOperator:
    """Walk Hamiltonian H = J(A_H(alpha)) + J(A_H(alpha))^T.

    J(A_H) is Hermitian, so its plain transpose is its conjugate and the sum
    is real symmetric; the imaginary roundoff is projected out.
    """
    j = apply_coupling(series, hermitian_adjacency(g, alpha))
    h = j.matrix + j.matrix.T
    certified = HermitianOperator(h)
    return HermitianOperator(certified.matrix.real)


def dump_operator(op: HermitianOperator, path) -> None:
    """Write an operator as a dimension line plus row-major ``re,im`` pairs."""
    m = op.matrix
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{m.shape[0]}\n")
        for row in m:
            fh.write(" ".join(f"{v.real:.17g},{v.imag:.17g}" for v in row) + "\n")


def load_operator(path) -> HermitianOperator:
    """Read the format written by :func:`dump_operator`."""
    with open(path, "r", encoding="ascii") as fh:
        lines = [line.strip() for line in fh if line.strip()]
    n = int(lines[0])
    if len(lines) != n + 1:
        raise ValueError(f"{path}: expected {n} rows, found {len(lines) - 1}")
    m = np.zeros((n, n), dtype=complex)
    for i, line in enumerate(lines[1:]):
        entries = line.split()
        if len(entries) != n:
            raise ValueError(f"{path}: row {i} has {len(entries)} entries, expected {n}")
        for j, entry in enumerate(entries):
            re_part, im_part = entry.split(",")
            m[i, j] = complex(float(re_part), float(im_part))
    return HermitianOperator(m)

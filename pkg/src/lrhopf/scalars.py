"""Exact field arithmetic and certified sparse linear solving.

Everything downstream computes over a ``Field``: the rationals or a
prime field GF(p).  All arithmetic is exact -- rationals are stdlib
``Fraction`` (always lowest terms, positive denominator), prime-field
elements are residues in [0, p).  There is no floating point anywhere
in this package.

``solve_linear`` decides A.x = b by deterministic exact row reduction
and always hands back checkable evidence: a particular witness plus a
nullspace basis when feasible, or a Farkas-style row vector u with
u.A = 0 and u.b != 0 when infeasible.  ``verify_witness`` and
``verify_certificate`` recheck that evidence from the sparse input,
independently of the elimination path that produced it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import FieldMismatchError, LrhInputError

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_INTEGER_RE = re.compile(r"^[+-]?\d+$")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Exact coefficient field: characteristic 0 means the rationals,
    a prime p means GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise LrhInputError(
                f"characteristic must be 0 or prime, got {self.characteristic}"
            )

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    def scalar(self, value: Union[int, Fraction, "Scalar"]) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(
                    f"scalar over {value.field} used in {self}"
                )
            return value
        p = self.characteristic
        if p == 0:
            return Scalar(self, Fraction(value))
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise FieldMismatchError(
                    f"fraction {value} is not a GF({p}) literal"
                )
            value = value.numerator
        return Scalar(self, value % p)

    @property
    def zero(self) -> "Scalar":
        return self.scalar(0)

    @property
    def one(self) -> "Scalar":
        return self.scalar(1)

    def parse(self, text: str) -> "Scalar":
        """Parse a scalar literal: decimal integers and p/q fractions over
        the rationals, decimal integers over GF(p)."""
        text = text.strip()
        if self.characteristic == 0:
            if not _RATIONAL_RE.match(text):
                raise FieldMismatchError(f"bad rational literal {text!r}")
            return Scalar(self, Fraction(text))
        if not _INTEGER_RE.match(text):
            raise FieldMismatchError(
                f"bad GF({self.characteristic}) literal {text!r}"
                + (" (fractions are not prime-field literals)"
                   if "/" in text else "")
            )
        return self.scalar(int(text))

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"


RATIONALS = Field(0)


@dataclass(frozen=True)
class Scalar:
    """Immutable exact field element.  Arithmetic refuses mixed fields."""

    field: Field
    value: Union[int, Fraction]

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"mixed fields: {self.field} vs {other.field}"
                )
            return other
        if isinstance(other, int):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.scalar(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.scalar(self.value - other.value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.scalar(self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise ZeroDivisionError(f"division by zero in {self.field}")
        p = self.field.characteristic
        if p == 0:
            return self.field.scalar(self.value / other.value)
        return self.field.scalar(self.value * pow(other.value, p - 2, p))

    def inverse(self) -> "Scalar":
        return self.field.one / self

    def __neg__(self):
        return self.field.scalar(-self.value)

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self.value})"


Vector = tuple  # tuple[Scalar, ...]; a type alias, nothing more


def zero_vector(fld: Field, n: int) -> Vector:
    return (fld.zero,) * n


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    assert len(u) == len(v)
    total = u[0].field.zero if u else None
    for a, b in zip(u, v):
        total = total + a * b
    return total


@dataclass(frozen=True)
class LinearSystem:
    """Sparse exact linear system A.x = rhs.

    entries is a sequence of (row, col, Scalar) triples, at most one per
    position; rhs is dense of length rows.
    """

    rows: int
    cols: int
    entries: tuple
    rhs: tuple
    field: Field = dc_field(default=RATIONALS)

    def __post_init__(self):
        seen = set()
        for r, c, s in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise LrhInputError(f"entry ({r},{c}) out of range")
            if (r, c) in seen:
                raise LrhInputError(f"duplicate entry at ({r},{c})")
            if s.field != self.field:
                raise FieldMismatchError("system entry over wrong field")
            seen.add((r, c))
        if len(self.rhs) != self.rows:
            raise LrhInputError("rhs length != rows")
        for s in self.rhs:
            if s.field != self.field:
                raise FieldMismatchError("rhs entry over wrong field")

    @classmethod
    def from_dense(cls, matrix: Sequence[Sequence[Scalar]],
                   rhs: Sequence[Scalar], fld: Field) -> "LinearSystem":
        entries = []
        for r, row in enumerate(matrix):
            for c, s in enumerate(row):
                if s:
                    entries.append((r, c, s))
        return cls(rows=len(matrix), cols=len(matrix[0]) if matrix else 0,
                   entries=tuple(entries), rhs=tuple(rhs), field=fld)

    def dense_matrix(self) -> list:
        a = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for r, c, s in self.entries:
            a[r][c] = s
        return a


@dataclass(frozen=True)
class SolveOutcome:
    """Verdict of an exact solve, with re-checkable evidence attached.

    feasible: witness is one particular solution, nullity the dimension
    of the solution space, nullspace a basis of it.  infeasible:
    certificate u satisfies u.A = 0 and u.rhs != 0 exactly.
    """

    verdict: str  # "feasible" | "infeasible"
    witness: tuple = None
    nullity: int = None
    nullspace: tuple = None
    certificate: tuple = None

    @property
    def feasible(self) -> bool:
        return self.verdict == "feasible"


def solve_linear(system: LinearSystem) -> SolveOutcome:
    """Exact Gauss-Jordan elimination with deterministic pivoting.

    Pivot choice is the first nonzero in row-major order, so witnesses
    and certificates are reproducible.  Row operations are mirrored on
    an identity block T; when elimination produces a zero row with a
    nonzero right-hand side, the matching row of T is the Farkas
    certificate.
    """
    fld = system.field
    nrows, ncols = system.rows, system.cols
    a = system.dense_matrix()
    b = list(system.rhs)
    t = [[fld.one if i == j else fld.zero for j in range(nrows)]
         for i in range(nrows)]

    pivots = []  # (row, col)
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, nrows):
            if a[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        if pivot_row != rank:
            a[rank], a[pivot_row] = a[pivot_row], a[rank]
            b[rank], b[pivot_row] = b[pivot_row], b[rank]
            t[rank], t[pivot_row] = t[pivot_row], t[rank]
        inv = a[rank][col].inverse()
        a[rank] = [x * inv for x in a[rank]]
        b[rank] = b[rank] * inv
        t[rank] = [x * inv for x in t[rank]]
        for r in range(nrows):
            if r != rank and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
                b[r] = b[r] - f * b[rank]
                t[r] = [x - f * y for x, y in zip(t[r], t[rank])]
        pivots.append((rank, col))
        rank += 1

    for r in range(rank, nrows):
        if b[r]:
            return SolveOutcome(verdict="infeasible",
                                certificate=tuple(t[r]))

    witness = [fld.zero] * ncols
    for r, c in pivots:
        witness[c] = b[r]
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    nullspace = []
    for f in free_cols:
        v = [fld.zero] * ncols
        v[f] = fld.one
        for r, c in pivots:
            v[c] = -a[r][f]
        nullspace.append(tuple(v))
    return SolveOutcome(verdict="feasible", witness=tuple(witness),
                        nullity=len(free_cols), nullspace=tuple(nullspace))


def apply_sparse(system: LinearSystem, x: Sequence[Scalar]) -> list:
    """A.x computed from the sparse entries."""
    out = [system.field.zero] * system.rows
    for r, c, s in system.entries:
        out[r] = out[r] + s * x[c]
    return out


def verify_witness(system: LinearSystem, witness: Sequence[Scalar]) -> bool:
    """Exact residual check A.witness == rhs, component-wise."""
    residual = apply_sparse(system, witness)
    return all(not (r - want) for r, want in zip(residual, system.rhs))


def verify_certificate(system: LinearSystem, u: Sequence[Scalar]) -> bool:
    """Farkas check: u.A == 0 and u.rhs != 0, from the sparse entries."""
    ua = [system.field.zero] * system.cols
    for r, c, s in system.entries:
        ua[c] = ua[c] + u[r] * s
    if any(ua):
        return False
    ub = system.field.zero
    for r, s in enumerate(system.rhs):
        ub = ub + u[r] * s
    return bool(ub)

"""Exact dense linear algebra over a number field.

The workhorse is an incremental echelon structure.  Rows are kept primitive
(integer coordinates, global content 1, sign-normalized) and elimination uses
cross-multiplication followed by exact content division, so no fractions
appear mid-stream; pivots are only inverted when producing the canonical
reduced echelon form.  Pivoting is deterministic (first nonzero in column
order, rows in the order supplied), which makes every downstream witness
byte-reproducible.

Membership questions return a SpanWitness that is re-verified against the
original rows before it is handed back; a witness that fails its own check is
a bug, never a result.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .numberfield import FieldElement, NumberField

Vector = list[FieldElement]


class LinAlgError(ValueError):
    pass


# -- row helpers ---------------------------------------------------------------


def _primitive(row: Vector, field: NumberField) -> tuple[Vector, Fraction]:
    """Scale a row to integer coordinates with content 1 and a positive lead.

    Returns (scaled_row, factor) with scaled_row == factor * row exactly.
    The zero row is returned unchanged with factor 1.
    """
    den_lcm = 1
    num_gcd = 0
    lead_sign = 0
    for e in row:
        for v in e.nums:
            if v:
                num_gcd = gcd(num_gcd, v)
                if lead_sign == 0:
                    lead_sign = 1 if v > 0 else -1
        den_lcm = lcm(den_lcm, e.den)
    if num_gcd == 0:
        return row, Fraction(1)
    factor = Fraction(lead_sign * den_lcm, num_gcd)
    if factor == 1:
        return row, Fraction(1)
    scaled = [
        FieldElement(
            field,
            tuple(v * lead_sign * (den_lcm // e.den) // num_gcd for v in e.nums),
            1,
            _raw=True,
        )
        for e in row
    ]
    return scaled, factor


def _leading_index(row: Vector) -> int | None:
    for i, e in enumerate(row):
        if e:
            return i
    return None


def dot(u: Sequence[FieldElement], v: Sequence[FieldElement], field: NumberField) -> FieldElement:
    acc = field.zero()
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


# -- matrices -----------------------------------------------------------------


class ExactMatrix:
    """Dense matrix of field elements; immutable by convention."""

    def __init__(self, field: NumberField, entries: Sequence[Sequence]):
        self.field = field
        self.entries: list[Vector] = [
            [field.element(e) for e in row] for row in entries
        ]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise LinAlgError("ragged matrix")

    @classmethod
    def from_rows(cls, field: NumberField, rows: Sequence[Vector], cols: int | None = None) -> "ExactMatrix":
        m = cls.__new__(cls)
        m.field = field
        m.entries = [list(r) for r in rows]
        m.rows = len(m.entries)
        m.cols = len(m.entries[0]) if m.entries else (cols or 0)
        return m

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def mul_vector(self, v: Sequence[FieldElement]) -> Vector:
        return [dot(row, v, self.field) for row in self.entries]


@dataclass
class RrefResult:
    rank: int
    pivots: tuple[int, ...]
    matrix: ExactMatrix


@dataclass
class SpanWitness:
    """Outcome of a row-space membership query, re-verified before return."""

    member: bool
    combination: Vector | None = None
    dual: Vector | None = None


# -- the incremental echelon ----------------------------------------------------


class Echelon:
    """Row echelon accumulator with optional provenance tracking.

    Pivot rows are primitive integer-coordinate vectors, ordered by pivot
    column.  ``track=True`` additionally records each pivot row as an exact
    combination of the inserted rows, which is what membership certificates
    are made of.
    """

    def __init__(self, field: NumberField, ncols: int, track: bool = False):
        self.field = field
        self.ncols = ncols
        self.track = track
        self.pivot_rows: list[tuple[int, Vector, dict[int, FieldElement] | None]] = []
        self.n_inserted = 0
        self._rref_cache: list[tuple[int, Vector]] | None = None

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def pivot_cols(self) -> list[int]:
        return [c for c, _, _ in self.pivot_rows]

    def _reduce_raw(
        self, vec: Vector, comb: dict[int, FieldElement] | None, scalar: FieldElement | None
    ):
        """Cross-multiplication reduction of vec against all pivot rows.

        Maintains vec == scalar * original - sum(comb[k] * inserted_row_k)
        whenever tracking is active (scalar may be None for plain rank work).
        """
        field = self.field
        row, factor = _primitive(list(vec), field)
        if comb is not None:
            comb = {k: v * factor for k, v in comb.items()}
        if scalar is not None:
            scalar = scalar * factor
        for c, prow, pcomb in self.pivot_rows:
            rc = row[c]
            if not rc:
                continue
            p = prow[c]
            row = [p * a - rc * b for a, b in zip(row, prow)]
            if comb is not None:
                comb = {k: p * v for k, v in comb.items()}
                if pcomb:
                    for k, v in pcomb.items():
                        delta = rc * v
                        acc = comb.get(k)
                        s = -delta if acc is None else acc - delta
                        if s:
                            comb[k] = s
                        elif acc is not None:
                            del comb[k]
            if scalar is not None:
                scalar = scalar * p
            row, factor = _primitive(row, field)
            if comb is not None:
                comb = {k: v * factor for k, v in comb.items()}
            if scalar is not None:
                scalar = scalar * factor
        return row, comb, scalar

    def insert(self, vec: Sequence[FieldElement]) -> bool:
        """Add a row to the span; returns True when the rank grew."""
        if len(vec) != self.ncols:
            raise LinAlgError(f"row length {len(vec)} != {self.ncols} columns")
        idx = self.n_inserted
        self.n_inserted += 1
        comb = {idx: self.field.one()} if self.track else None
        row, comb, _ = self._reduce_raw(list(vec), comb, None)
        lead = _leading_index(row)
        if lead is None:
            return False
        self.pivot_rows.append((lead, row, comb))
        self.pivot_rows.sort(key=lambda t: t[0])
        self._rref_cache = None
        return True

    def reduce(self, vec: Sequence[FieldElement]):
        """Reduce without inserting; returns (residual, scalar, combination).

        residual == scalar * vec - sum(combination[k] * row_k), residual having
        zeros at all pivot columns reachable by forward elimination.
        """
        if len(vec) != self.ncols:
            raise LinAlgError(f"row length {len(vec)} != {self.ncols} columns")
        comb: dict[int, FieldElement] | None = {} if self.track else None
        row, comb, scalar = self._reduce_raw(list(vec), comb, self.field.one())
        return row, scalar, comb

    def contains(self, vec: Sequence[FieldElement]) -> bool:
        row, _, _ = self.reduce(vec)
        return _leading_index(row) is None

    def rref_rows(self) -> list[tuple[int, Vector]]:
        """Canonical reduced rows (pivot 1, zeros above pivots), by pivot column."""
        if self._rref_cache is not None:
            return self._rref_cache
        field = self.field
        work: list[tuple[int, Vector]] = [
            (c, list(r)) for c, r, _ in self.pivot_rows
        ]
        for i in range(len(work) - 1, -1, -1):
            c_i, row_i = work[i]
            inv = row_i[c_i].inverse()
            row_i = [e * inv for e in row_i]
            work[i] = (c_i, row_i)
            for j in range(i):
                c_j, row_j = work[j]
                f = row_j[c_i]
                if f:
                    work[j] = (c_j, [a - f * b for a, b in zip(row_j, row_i)])
        self._rref_cache = work
        return work

    def kernel_basis(self) -> list[Vector]:
        """Basis of {v : row . v = 0 for every row of the span}, free columns ascending."""
        field = self.field
        rref = self.rref_rows()
        pivots = [c for c, _ in rref]
        pivot_set = set(pivots)
        zero, one = field.zero(), field.one()
        basis = []
        for j in range(self.ncols):
            if j in pivot_set:
                continue
            v = [zero] * self.ncols
            v[j] = one
            for c, row in rref:
                if row[j]:
                    v[c] = -row[j]
            basis.append(v)
        return basis


def echelon_from_rows(
    field: NumberField, rows: Iterable[Sequence[FieldElement]], ncols: int, track: bool = False
) -> Echelon:
    ech = Echelon(field, ncols, track=track)
    for r in rows:
        ech.insert(r)
    return ech


# -- public operations -----------------------------------------------------------


def rref(matrix: ExactMatrix) -> RrefResult:
    """Canonical reduced row echelon form with deterministic pivoting."""
    ech = echelon_from_rows(matrix.field, matrix.entries, matrix.cols)
    reduced = [row for _, row in ech.rref_rows()]
    zero_row = [matrix.field.zero()] * matrix.cols
    padded = reduced + [list(zero_row) for _ in range(matrix.rows - len(reduced))]
    return RrefResult(
        rank=ech.rank,
        pivots=tuple(ech.pivot_cols()),
        matrix=ExactMatrix.from_rows(matrix.field, padded, matrix.cols),
    )


def kernel(matrix: ExactMatrix) -> list[Vector]:
    """Exact basis of the null space {v : M v = 0}."""
    ech = echelon_from_rows(matrix.field, matrix.entries, matrix.cols)
    return ech.kernel_basis()


def span_decide(
    target: Sequence[FieldElement],
    span_rows: Sequence[Sequence[FieldElement]],
    field: NumberField,
    ncols: int | None = None,
) -> SpanWitness:
    """Decide membership of target in the row space, with a checked witness.

    Member: combination c with sum(c_k * row_k) == target, exactly.
    NonMember: functional lambda with lambda . row_k == 0 for every row and
    lambda . target != 0.  Both are re-verified here before returning.
    """
    ncols = len(target) if ncols is None else ncols
    ech = echelon_from_rows(field, span_rows, ncols, track=True)
    residual, scalar, comb = ech.reduce(target)
    if _leading_index(residual) is None:
        inv = scalar.inverse()
        combination = [field.zero()] * len(span_rows)
        for k, v in (comb or {}).items():
            combination[k] = v * inv
        recombined = [field.zero()] * ncols
        for k, c in enumerate(combination):
            if c:
                for i, e in enumerate(span_rows[k]):
                    if e:
                        recombined[i] = recombined[i] + c * e
        if any(a != b for a, b in zip(recombined, target)):
            raise LinAlgError("member witness failed re-verification")
        return SpanWitness(member=True, combination=combination)

    rref_rows = ech.rref_rows()
    pivot_set = {c for c, _ in rref_rows}
    t = [field.element(e) for e in target]
    for c, row in rref_rows:
        f = t[c]
        if f:
            t = [a - f * b for a, b in zip(t, row)]
    j = next(i for i in range(ncols) if i not in pivot_set and t[i])
    lam = [field.zero()] * ncols
    lam[j] = field.one()
    for c, row in rref_rows:
        if row[j]:
            lam[c] = -row[j]
    lam, _ = _primitive(lam, field)
    for k, row in enumerate(span_rows):
        if dot(lam, row, field):
            raise LinAlgError(f"dual witness fails to annihilate span row {k}")
    if not dot(lam, target, field):
        raise LinAlgError("dual witness unexpectedly annihilates the target")
    return SpanWitness(member=False, dual=lam)


def row_space_equal(
    field: NumberField,
    rows_a: Sequence[Sequence[FieldElement]],
    rows_b: Sequence[Sequence[FieldElement]],
    ncols: int,
) -> bool:
    """Exact row-space comparison via canonical reduced forms."""
    ra = echelon_from_rows(field, rows_a, ncols).rref_rows()
    rb = echelon_from_rows(field, rows_b, ncols).rref_rows()
    if [c for c, _ in ra] != [c for c, _ in rb]:
        return False
    return all(
        all(a == b for a, b in zip(row_a, row_b))
        for (_, row_a), (_, row_b) in zip(ra, rb)
    )

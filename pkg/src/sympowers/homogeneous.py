"""Sparse homogeneous polynomials in x, y, z over a number field.

Terms are keyed by exponent triples summing to the declared degree; zero
coefficients are never stored, so the zero form is an empty term map with a
degree attached.  All serialized coefficient vectors use graded reverse
lexicographic order with x > y > z, and ``monomial_basis`` is the single
source of truth for that order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .numberfield import FieldElement, FieldError, NumberField, parse_element

Exponent = tuple[int, int, int]

VARIABLES = ("x", "y", "z")


@lru_cache(maxsize=None)
def monomial_basis(d: int) -> tuple[Exponent, ...]:
    """All exponent triples of total degree d, grevlex-descending (x > y > z)."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    exps = [
        (d - ey - ez, ey, ez)
        for ez in range(d + 1)
        for ey in range(d - ez + 1)
    ]
    # grevlex descending == lex ascending on the reversed exponent tuple
    exps.sort(key=lambda e: (e[2], e[1]))
    return tuple(exps)


@lru_cache(maxsize=None)
def monomial_index(d: int) -> dict[Exponent, int]:
    return {e: i for i, e in enumerate(monomial_basis(d))}


def monomial_count(d: int) -> int:
    return (d + 1) * (d + 2) // 2


class HomForm:
    """A homogeneous form; immutable once built."""

    __slots__ = ("field", "degree", "terms")

    def __init__(self, field: NumberField, degree: int, terms: Mapping[Exponent, FieldElement]):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        clean: dict[Exponent, FieldElement] = {}
        for exp, coeff in terms.items():
            if sum(exp) != degree or min(exp) < 0:
                raise ValueError(f"exponent {exp} does not have total degree {degree}")
            c = field.element(coeff)
            if c:
                clean[exp] = c
        self.field = field
        self.degree = degree
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field: NumberField, degree: int) -> "HomForm":
        return cls(field, degree, {})

    @classmethod
    def monomial(cls, field: NumberField, exp: Exponent, coeff=1) -> "HomForm":
        return cls(field, sum(exp), {tuple(exp): field.element(coeff)})

    @classmethod
    def variable(cls, field: NumberField, name: str) -> "HomForm":
        i = VARIABLES.index(name)
        exp = tuple(1 if j == i else 0 for j in range(3))
        return cls(field, 1, {exp: field.one()})

    @classmethod
    def from_coeff_vector(cls, field: NumberField, degree: int, vector) -> "HomForm":
        basis = monomial_basis(degree)
        if len(vector) != len(basis):
            raise ValueError(
                f"coefficient vector has length {len(vector)}, expected {len(basis)}"
            )
        return cls(field, degree, {e: c for e, c in zip(basis, vector)})

    def coeff_vector(self) -> list[FieldElement]:
        zero = self.field.zero()
        return [self.terms.get(e, zero) for e in monomial_basis(self.degree)]

    def coeff(self, exp: Exponent) -> FieldElement:
        return self.terms.get(tuple(exp), self.field.zero())

    # -- arithmetic ------------------------------------------------------------

    def _check_field(self, other: "HomForm"):
        if other.field is not self.field and other.field != self.field:
            raise FieldError("forms over different fields")

    def __add__(self, other: "HomForm") -> "HomForm":
        self._check_field(other)
        if self.degree != other.degree:
            raise ValueError(
                f"degree mismatch in addition: {self.degree} vs {other.degree}"
            )
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            acc = terms.get(exp)
            s = c if acc is None else acc + c
            if s:
                terms[exp] = s
            elif acc is not None:
                del terms[exp]
        return HomForm(self.field, self.degree, terms)

    def __neg__(self) -> "HomForm":
        return HomForm(self.field, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "HomForm") -> "HomForm":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HomForm):
            self._check_field(other)
            terms: dict[Exponent, FieldElement] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                    p = c1 * c2
                    acc = terms.get(e)
                    s = p if acc is None else acc + p
                    if s:
                        terms[e] = s
                    elif acc is not None:
                        del terms[e]
            return HomForm(self.field, self.degree + other.degree, terms)
        scalar = self.field.element(other)
        if not scalar:
            return HomForm.zero(self.field, self.degree)
        return HomForm(self.field, self.degree, {e: c * scalar for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "HomForm":
        if k < 0:
            raise ValueError("negative power of a form")
        acc = HomForm.monomial(self.field, (0, 0, 0))
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def shift(self, exp: Exponent) -> "HomForm":
        """Multiply by the monomial x^e0 y^e1 z^e2 (pure exponent translation)."""
        e0, e1, e2 = exp
        return HomForm(
            self.field,
            self.degree + e0 + e1 + e2,
            {(a + e0, b + e1, c + e2): v for (a, b, c), v in self.terms.items()},
        )

    def diff(self, var: str) -> "HomForm":
        i = VARIABLES.index(var)
        if self.degree == 0:
            return HomForm.zero(self.field, 0)
        terms: dict[Exponent, FieldElement] = {}
        for exp, c in self.terms.items():
            if exp[i] > 0:
                e = list(exp)
                e[i] -= 1
                terms[tuple(e)] = c * exp[i]
        return HomForm(self.field, self.degree - 1, terms)

    def diff_multi(self, order: Exponent) -> "HomForm":
        f = self
        for var, k in zip(VARIABLES, order):
            for _ in range(k):
                f = f.diff(var)
        return f

    def eval_at(self, coords) -> FieldElement:
        """Exact value at homogeneous coordinates (a 3-sequence of field elements)."""
        cx, cy, cz = (self.field.element(c) for c in coords)
        powers: list[dict[int, FieldElement]] = [{}, {}, {}]

        def power(i: int, base: FieldElement, k: int) -> FieldElement:
            cache = powers[i]
            if k not in cache:
                cache[k] = base**k
            return cache[k]

        acc = self.field.zero()
        for (ex, ey, ez), c in self.terms.items():
            acc = acc + c * power(0, cx, ex) * power(1, cy, ey) * power(2, cz, ez)
        return acc

    # -- comparisons and rendering ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomForm):
            return NotImplemented
        return (
            (self.field is other.field or self.field == other.field)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp in monomial_basis(self.degree):
            if exp in self.terms:
                c = self.terms[exp]
                mono = "*".join(
                    v if k == 1 else f"{v}^{k}"
                    for v, k in zip(VARIABLES, exp)
                    if k > 0
                )
                cs = c.as_str()
                if "," in cs:
                    cs = f"({cs})"
                parts.append(f"({cs})*{mono}" if mono else cs if cs != "1" else "1")
        return " + ".join(parts)

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> dict:
        basis = monomial_basis(self.degree)
        return {
            "degree": self.degree,
            "terms": [
                {
                    "exp": list(e),
                    "coeff": [_frac_str(c) for c in self.terms[e].coeffs],
                }
                for e in basis
                if e in self.terms
            ],
        }

    @classmethod
    def from_json(cls, field: NumberField, data: dict) -> "HomForm":
        terms = {
            tuple(t["exp"]): field.element([Fraction(c) for c in t["coeff"]])
            for t in data["terms"]
        }
        return cls(field, data["degree"], terms)


class LinearForm(HomForm):
    """A nonzero degree-1 form, optionally tagged with how it was built."""

    __slots__ = ("provenance",)

    def __init__(self, field, terms, provenance: dict | None = None):
        super().__init__(field, 1, terms)
        if not self.terms:
            raise ValueError("a linear form must not be identically zero")
        self.provenance = provenance or {}

    @classmethod
    def from_coefficients(cls, field, coeffs, provenance=None) -> "LinearForm":
        cx, cy, cz = coeffs
        return cls(
            field,
            {(1, 0, 0): field.element(cx), (0, 1, 0): field.element(cy), (0, 0, 1): field.element(cz)},
            provenance,
        )

    def coefficients(self) -> tuple[FieldElement, FieldElement, FieldElement]:
        z = self.field.zero()
        return (
            self.terms.get((1, 0, 0), z),
            self.terms.get((0, 1, 0), z),
            self.terms.get((0, 0, 1), z),
        )

    def to_json(self) -> dict:
        out = super().to_json()
        if self.provenance:
            out["provenance"] = dict(self.provenance)
        return out

    @classmethod
    def from_json(cls, field: NumberField, data: dict) -> "LinearForm":
        form = HomForm.from_json(field, data)
        return cls(field, form.terms, data.get("provenance"))


def product(forms: Iterable[HomForm], field: NumberField | None = None) -> HomForm:
    """Product of a sequence of forms (the unit form for an empty sequence)."""
    forms = list(forms)
    if not forms:
        if field is None:
            raise ValueError("empty product needs an explicit field")
        return HomForm.monomial(field, (0, 0, 0))
    acc = forms[0]
    for f in forms[1:]:
        acc = acc * f
    return acc


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

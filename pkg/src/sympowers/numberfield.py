"""Exact arithmetic in Q[a]/(m(a)) for a monic rational minimal polynomial m.

Elements live in the power basis 1, a, ..., a^(D-1) and are reduced eagerly,
so equality is plain coefficient comparison.  Internally an element is an
integer coefficient vector over one positive common denominator, which keeps
the hot paths (convolution, reduction, row operations) in machine-integer
arithmetic instead of per-coordinate Fraction churn.

A field may declare ``unit_order = N``, meaning its generator is a primitive
N-th root of unity; that unlocks the exact conjugation map a -> a^(N-1) used
to certify that geometric data is real.  Numeric embeddings go through
mpmath at a caller-chosen precision and carry an error bound; they exist for
rendering only and never feed back into exact computations.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

import mpmath as mp

from . import qpoly

Rationalish = Union[int, Fraction, str]

ROOT_TOLERANCE = 1e-12


class FieldError(ValueError):
    """Construction or arithmetic violated a field contract."""


class NumberField:
    """Q[a]/(m(a)) with a designated complex embedding of the generator."""

    def __init__(
        self,
        minpoly: Sequence[Rationalish],
        root: complex,
        label: str = "",
        unit_order: int | None = None,
    ):
        poly = qpoly.make(minpoly)
        if qpoly.degree(poly) < 1:
            raise FieldError("minimal polynomial must have degree >= 1")
        if poly[-1] != 1:
            raise FieldError(f"minimal polynomial must be monic, got leading {poly[-1]}")
        root = complex(root)
        if abs(qpoly.evaluate(poly, root)) >= ROOT_TOLERANCE:
            raise FieldError(
                f"designated root {root} does not satisfy the minimal polynomial "
                f"(|m(root)| = {abs(qpoly.evaluate(poly, root)):.3g})"
            )
        if qpoly.degree(poly) > 1:
            roots = qpoly.rational_roots(poly)
            if roots:
                r = roots[0]
                raise FieldError(
                    f"minimal polynomial is reducible: (a - {r}) is a factor"
                )
        self.minpoly: qpoly.Poly = poly
        self.degree: int = qpoly.degree(poly)
        self.root: complex = root
        self.label: str = label
        self.unit_order: int | None = unit_order
        self._reduction = self._build_reduction_table()
        self._zero = FieldElement(self, (0,) * self.degree, 1, _raw=True)
        self._one = FieldElement(self, (1,) + (0,) * (self.degree - 1), 1, _raw=True)
        self._gen_powers: dict[int, FieldElement] = {}
        self._root_cache: dict[int, mp.mpc] = {}

    def _build_reduction_table(self):
        """a^k mod m for k = D .. 2D-2, scaled to one integer denominator."""
        d = self.degree
        rows: list[qpoly.Poly] = []
        # a^D = -(c_0 + ... + c_{D-1} a^{D-1})
        power = qpoly.trim([-c for c in self.minpoly[:-1]])
        rows.append(power)
        for _ in range(d - 2):
            shifted = (Fraction(0),) + power
            power = qpoly.poly_mod(shifted, self.minpoly)
            rows.append(power)
        den = 1
        for row in rows:
            for c in row:
                den = lcm(den, c.denominator)
        table = []
        for row in rows:
            nums = [0] * d
            for i, c in enumerate(row):
                nums[i] = int(c * den)
            table.append(tuple(nums))
        return den, table

    # -- constructors ------------------------------------------------------

    def element(self, value) -> FieldElement:
        """Coerce an int, Fraction, string, coefficient sequence, or element."""
        if isinstance(value, FieldElement):
            if value.field is self or value.field == self:
                return value
            raise FieldError(f"element of {value.field} used in {self}")
        if isinstance(value, (int, Fraction, str)):
            return self.from_rational(Fraction(value))
        coeffs = [Fraction(c) for c in value]
        if len(coeffs) > self.degree:
            raise FieldError(
                f"{len(coeffs)} coordinates for a degree-{self.degree} field"
            )
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        den = 1
        for c in coeffs:
            den = lcm(den, c.denominator)
        nums = tuple(int(c * den) for c in coeffs)
        return FieldElement(self, *_normalize(nums, den), _raw=True)

    def from_rational(self, q: Fraction) -> FieldElement:
        q = Fraction(q)
        nums = (q.numerator,) + (0,) * (self.degree - 1)
        return FieldElement(self, nums, q.denominator, _raw=True)

    def zero(self) -> FieldElement:
        return self._zero

    def one(self) -> FieldElement:
        return self._one

    def gen(self) -> FieldElement:
        if self.degree == 1:
            # a is congruent to the rational root of the degree-1 minpoly
            return self.from_rational(-self.minpoly[0])
        return self.element([0, 1])

    def gen_power(self, k: int) -> FieldElement:
        """a^k reduced mod the minimal polynomial (cached)."""
        if k not in self._gen_powers:
            self._gen_powers[k] = self.gen() ** k
        return self._gen_powers[k]

    # -- structure ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NumberField)
            and self.minpoly == other.minpoly
            and self.root == other.root
            and self.unit_order == other.unit_order
        )

    def __hash__(self) -> int:
        return hash((self.minpoly, self.root, self.unit_order))

    def __repr__(self) -> str:
        return f"NumberField({self.label or self.minpoly}, root={self.root})"

    def is_real_embedded(self) -> bool:
        return self.root.imag == 0.0

    def conjugate(self, x: FieldElement) -> FieldElement:
        """Complex conjugation as a field map, where one is available."""
        self._check(x)
        if self.is_real_embedded():
            return x
        if self.unit_order is None:
            raise FieldError(
                "no exact conjugation on this field (set unit_order for roots of unity)"
            )
        conj_gen = self.gen_power(self.unit_order - 1)
        acc = self.zero()
        for c in reversed(x.coeffs):
            acc = acc * conj_gen + self.from_rational(c)
        return acc

    def _check(self, x: FieldElement):
        if x.field is not self and x.field != self:
            raise FieldError(f"element of {x.field} used in {self}")

    # -- numeric embedding ---------------------------------------------------

    def _refined_root(self, work_bits: int) -> mp.mpc:
        if work_bits in self._root_cache:
            return self._root_cache[work_bits]
        poly = self.minpoly
        dpoly = qpoly.derivative(poly)
        with mp.workprec(work_bits + 16):
            z = mp.mpc(self.root.real, self.root.imag)
            for _ in range(200):
                f = _mp_horner(poly, z)
                if f == 0:
                    break
                step = f / _mp_horner(dpoly, z)
                z = z - step
                if abs(step) <= abs(z) * mp.mpf(2) ** (-(work_bits + 8)):
                    break
        self._root_cache[work_bits] = z
        return z

    def embed(self, x: FieldElement, prec_bits: int = 53) -> tuple[mp.mpc, float]:
        """Complex approximation of x under the designated embedding.

        Returns (value, bound) with |value - exact| <= bound.  The bound is
        conservative: evaluation runs with 32 guard bits over a Newton-refined
        root, so rounding stays far below the reported 2^-prec_bits scale.
        """
        self._check(x)
        if prec_bits < 4:
            raise FieldError("embedding precision exhausted: need at least 4 bits")
        work = prec_bits + 32
        root = self._refined_root(work)
        with mp.workprec(work):
            val = mp.mpc(0)
            for c in reversed(x.coeffs):
                val = val * root + mp.mpf(c.numerator) / mp.mpf(c.denominator)
            bound = float(mp.mpf(2) ** (-prec_bits) * max(1, abs(val)))
        return val, bound

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "minpoly": [_frac_str(c) for c in self.minpoly],
            "root": {"re": self.root.real, "im": self.root.imag},
            "label": self.label,
        }
        if self.unit_order is not None:
            out["unit_order"] = self.unit_order
        return out

    @classmethod
    def from_json(cls, data: dict) -> "NumberField":
        return cls(
            [Fraction(c) for c in data["minpoly"]],
            complex(data["root"]["re"], data["root"]["im"]),
            label=data.get("label", ""),
            unit_order=data.get("unit_order"),
        )


def _mp_horner(poly: qpoly.Poly, z):
    acc = mp.mpc(0)
    for c in reversed(poly):
        acc = acc * z + mp.mpf(c.numerator) / mp.mpf(c.denominator)
    return acc


def _normalize(nums: tuple[int, ...], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = tuple(-v for v in nums)
        den = -den
    g = den
    for v in nums:
        g = gcd(g, v)
        if g == 1:
            return nums, den
    if g > 1:
        nums = tuple(v // g for v in nums)
        den //= g
    return nums, den


class FieldElement:
    """One element of a NumberField, stored as integers over a common denominator."""

    __slots__ = ("field", "nums", "den")

    def __init__(self, field: NumberField, nums: tuple[int, ...], den: int = 1, _raw=False):
        self.field = field
        if _raw:
            self.nums = nums
            self.den = den
        else:
            self.nums, self.den = _normalize(tuple(int(v) for v in nums), int(den))

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def conjugate(self) -> "FieldElement":
        return self.field.conjugate(self)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other
            raise FieldError(f"mixed fields: {self.field} vs {other.field}")
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self, o
        if a.den == b.den:
            nums = tuple(x + y for x, y in zip(a.nums, b.nums))
            return FieldElement(self.field, *_normalize(nums, a.den), _raw=True)
        g = gcd(a.den, b.den)
        ma, mb = b.den // g, a.den // g
        nums = tuple(x * ma + y * mb for x, y in zip(a.nums, b.nums))
        return FieldElement(self.field, *_normalize(nums, a.den * ma), _raw=True)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-v for v in self.nums), self.den, _raw=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.field.degree
        a, b = self.nums, o.nums
        if d == 1:
            return FieldElement(
                self.field, *_normalize((a[0] * b[0],), self.den * o.den), _raw=True
            )
        conv = [0] * (2 * d - 1)
        for i, av in enumerate(a):
            if av:
                for j, bv in enumerate(b):
                    if bv:
                        conv[i + j] += av * bv
        red_den, red_rows = self.field._reduction
        low = [c * red_den for c in conv[:d]]
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                row = red_rows[k - d]
                for i in range(d):
                    if row[i]:
                        low[i] += c * row[i]
        return FieldElement(
            self.field, *_normalize(tuple(low), self.den * o.den * red_den), _raw=True
        )

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        if self.is_rational():
            q = self.as_rational()
            return self.field.from_rational(1 / q)
        g, s, _ = qpoly.xgcd(qpoly.trim(self.coeffs), self.field.minpoly)
        if qpoly.degree(g) != 0:
            raise FieldError(
                "element is not invertible: minimal polynomial has factor "
                f"{_poly_str(g)}"
            )
        return self.field.element(s)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        acc = self.field.one()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    # -- comparisons and rendering --------------------------------------------

    def __bool__(self) -> bool:
        return any(self.nums)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return (
                (self.field is other.field or self.field == other.field)
                and self.nums == other.nums
                and self.den == other.den
            )
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.as_rational() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nums, self.den))

    def __repr__(self) -> str:
        return self.as_str()

    def as_str(self) -> str:
        """Exact text form: "p/q" when rational, else comma-joined coordinates."""
        if self.is_rational():
            return _frac_str(self.as_rational())
        return ",".join(_frac_str(c) for c in self.coeffs)


def parse_element(field: NumberField, text: str) -> FieldElement:
    """Inverse of FieldElement.as_str()."""
    parts = text.split(",")
    return field.element([Fraction(p) for p in parts])


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _poly_str(p: qpoly.Poly) -> str:
    terms = []
    for i, c in enumerate(p):
        if c:
            if i == 0:
                terms.append(_frac_str(c))
            elif i == 1:
                terms.append(f"{_frac_str(c)}*a")
            else:
                terms.append(f"{_frac_str(c)}*a^{i}")
    return " + ".join(terms) if terms else "0"


def rational_field(label: str = "QQ") -> NumberField:
    """A degree-1 field whose elements behave exactly like Q."""
    return NumberField([0, 1], 0.0, label=label)


def cyclotomic_field(n: int, label: str = "") -> NumberField:
    """Q(zeta_n) presented by the n-th cyclotomic polynomial, root exp(2*pi*i/n)."""
    import cmath

    poly = qpoly.cyclotomic(n)
    root = cmath.exp(2j * cmath.pi / n)
    return NumberField(
        poly, root, label=label or f"Q(zeta_{n})", unit_order=n
    )

"""Exact truncated formal power series and sequences over rationals.

A :class:`PowerSeries` is a coefficient vector together with an explicit
truncation order (the number of retained coefficients).  Mixed-order
arithmetic always truncates to the smaller operand's order, so precision is
visible in the value itself and never silently invented.  Coefficients are
``fractions.Fraction`` throughout; floats are rejected at the boundary.

Everything here is an immutable value and every operation is a pure
function, so series can be shared freely between concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt


class SeriesError(ValueError):
    pass


class DivisionByNonUnit(SeriesError):
    """Series division needs a divisor with nonzero constant term."""


class CompositionRequiresZeroConstantTerm(SeriesError):
    """outer(inner) is defined only when inner has no constant term."""


class NotRevertible(SeriesError):
    """Compositional reversion needs f(0) = 0 and f'(0) != 0."""


class NonSquareConstantTerm(SeriesError):
    """Square roots are supported only for nonzero rational-square constant terms."""


Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rational(value: int | str | Fraction) -> Fraction:
    """Coerce an int, Fraction or 'p/q' string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(value: Fraction | int) -> str:
    """Render integers bare and proper fractions as 'p/q'."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class PowerSeries:
    """A power series known modulo x**order, where order = len(coeffs)."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) == 0:
            raise SeriesError("a series must retain at least one coefficient")

    # -- construction --------------------------------------------------

    @classmethod
    def of(cls, values, order: int | None = None) -> PowerSeries:
        """Series from explicit coefficients, padded with exact zeros.

        Padding is sound only because the given values are meant to be a
        polynomial (exactly known at every order); ``order`` below the
        value count trims the tail instead.
        """
        vals = [rational(v) for v in values]
        if order is not None:
            if order < 1:
                raise SeriesError("order must be positive")
            vals = vals[:order] + [_ZERO] * (order - len(vals))
        if not vals:
            vals = [_ZERO]
        return cls(tuple(vals))

    @classmethod
    def zero(cls, order: int) -> PowerSeries:
        return cls.of([], order)

    @classmethod
    def one(cls, order: int) -> PowerSeries:
        return cls.of([1], order)

    @classmethod
    def x(cls, order: int) -> PowerSeries:
        return cls.of([0, 1], order)

    # -- inspection -----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def prefix(self, n: int) -> tuple[Fraction, ...]:
        if n > self.order:
            raise SeriesError(f"only {self.order} coefficients retained, asked for {n}")
        return self.coeffs[:n]

    def integers(self, n: int | None = None) -> list[int]:
        """The first n coefficients as ints; raises if any is non-integral."""
        vals = self.coeffs if n is None else self.prefix(n)
        out = []
        for v in vals:
            if v.denominator != 1:
                raise ValueError(f"non-integer coefficient {v}")
            out.append(v.numerator)
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # -- reshaping ------------------------------------------------------

    def truncate(self, order: int) -> PowerSeries:
        if order > self.order:
            raise SeriesError("cannot extend a truncated series")
        return PowerSeries(self.coeffs[:order])

    def mul_x(self) -> PowerSeries:
        """Multiply by x; exact, so the order grows by one."""
        return PowerSeries((_ZERO,) + self.coeffs)

    def div_x(self) -> PowerSeries:
        """Divide by x; needs a zero constant term, order shrinks by one."""
        if self.coeffs[0] != 0:
            raise SeriesError("div_x needs a zero constant term")
        if self.order == 1:
            raise SeriesError("no coefficients would remain")
        return PowerSeries(self.coeffs[1:])

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            c = list(self.coeffs)
            c[0] = c[0] + rational(other)
            return PowerSeries(tuple(c))
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return PowerSeries(tuple(a[i] + b[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-rational(other))
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = rational(other)
            return PowerSeries(tuple(c * q for c in self.coeffs))
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            s = _ZERO
            for i in range(k + 1):
                ai = a[i]
                if ai:
                    bj = b[k - i]
                    if bj:
                        s += ai * bj
            out.append(s)
        return PowerSeries(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = rational(other)
            if q == 0:
                raise DivisionByNonUnit("division by zero scalar")
            return self * (1 / q)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        if other.coeffs[0] == 0:
            raise DivisionByNonUnit("divisor has zero constant term")
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        inv0 = 1 / b[0]
        out: list[Fraction] = []
        for k in range(n):
            s = a[k]
            for i in range(1, k + 1):
                bi = b[i]
                if bi:
                    s -= bi * out[k - i]
            out.append(s * inv0)
        return PowerSeries(tuple(out))

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries.of([other], self.order) / self
        return NotImplemented

    # -- composition, reversion, square root -----------------------------

    def compose(self, inner: PowerSeries) -> PowerSeries:
        """outer(inner(x)) by Horner evaluation over truncated series."""
        if inner.coeffs[0] != 0:
            raise CompositionRequiresZeroConstantTerm(
                "inner series has nonzero constant term"
            )
        n = min(self.order, inner.order)
        inner_t = inner.truncate(n)
        acc = PowerSeries.of([self.coeffs[n - 1]], n)
        for k in range(n - 2, -1, -1):
            acc = acc * inner_t + self.coeffs[k]
        return acc

    def revert(self) -> PowerSeries:
        """Compositional reverse: the series fbar with self(fbar(x)) = x.

        Implemented by Lagrange inversion: the x^m coefficient of fbar is
        (1/m) times the x^(m-1) coefficient of (x/f)^m, so one running
        product gives all coefficients exactly.
        """
        if self.coeffs[0] != 0 or self.order < 2 or self.coeffs[1] == 0:
            raise NotRevertible("need f(0) = 0 and f'(0) != 0 with order >= 2")
        n = self.order
        h = PowerSeries.one(n - 1) / self.div_x()
        out = [_ZERO] * n
        p = PowerSeries.one(n - 1)
        for m in range(1, n):
            p = p * h
            out[m] = p.coeffs[m - 1] / m
        return PowerSeries(tuple(out))

    def sqrt(self) -> PowerSeries:
        """The square root with positive constant term.

        Only nonzero rational-square constant terms are supported; the
        remaining coefficients follow from a triangular recurrence.
        """
        c0 = self.coeffs[0]
        num, den = c0.numerator, c0.denominator
        if num <= 0:
            raise NonSquareConstantTerm(f"constant term {c0} has no usable square root")
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn != num or rd * rd != den:
            raise NonSquareConstantTerm(f"constant term {c0} is not a rational square")
        t0 = Fraction(rn, rd)
        out = [t0]
        half = 1 / (2 * t0)
        for k in range(1, self.order):
            s = self.coeffs[k]
            for i in range(1, k):
                s -= out[i] * out[k - i]
            out.append(s * half)
        return PowerSeries(tuple(out))


def rational_series(num, den, order: int) -> PowerSeries:
    """Expansion of the rational function num(x)/den(x) to the given order."""
    return PowerSeries.of(num, order) / PowerSeries.of(den, order)


def catalan(order: int) -> PowerSeries:
    """Generating function of the Catalan numbers: the solution of c = 1 + x*c**2."""
    if order < 1:
        raise SeriesError("order must be positive")
    c = [_ONE] + [_ZERO] * (order - 1)
    for n in range(1, order):
        c[n] = sum((c[i] * c[n - 1 - i] for i in range(n)), _ZERO)
    return PowerSeries(tuple(c))


@dataclass(frozen=True)
class Sequence:
    """A finite run of exact terms; offset records the index of the first one."""

    terms: tuple[Fraction, ...]
    offset: int = 0

    def __post_init__(self):
        if not isinstance(self.terms, tuple):
            object.__setattr__(self, "terms", tuple(self.terms))
        if len(self.terms) == 0:
            raise ValueError("a sequence needs at least one term")

    @classmethod
    def of(cls, values, offset: int = 0) -> Sequence:
        return cls(tuple(rational(v) for v in values), offset)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, i: int) -> Fraction:
        return self.terms[i]

    def prefix(self, n: int) -> tuple[Fraction, ...]:
        if n > len(self.terms):
            raise ValueError(f"only {len(self.terms)} terms available, asked for {n}")
        return self.terms[:n]

    def integers(self, n: int | None = None) -> list[int]:
        vals = self.terms if n is None else self.prefix(n)
        out = []
        for v in vals:
            if v.denominator != 1:
                raise ValueError(f"non-integer term {v}")
            out.append(v.numerator)
        return out


def binomial_transform(seq: Sequence) -> Sequence:
    """t_n = sum_k C(n, k) s_k, computed exactly."""
    terms = tuple(
        sum((comb(n, k) * seq.terms[k] for k in range(n + 1)), _ZERO)
        for n in range(len(seq))
    )
    return Sequence(terms, seq.offset)

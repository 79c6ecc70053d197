"""Riordan arrays characterized by a coefficient array plus a rho sequence.

The characterizing data is a finite array a[i][j] (optionally with its last
row repeated forever) and a sequence rho[j].  The associated f solves

    f/x = sum_i x^i * R_i(f) + (f^2/x) * rho(f),

where R_i is the generating polynomial of row i.  This module solves that
equation by x-adic fixed-point iteration, builds Bell triangles directly
from the entry recurrence, evaluates the Catalan-composition closed forms
for the two-row and single-row families, and computes A-sequences by the
substitution trick (replace x by fbar in the defining equation).

Everything is a pure function over immutable values; parameter sweeps can
run fully in parallel with no shared state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .series import (
    PowerSeries,
    Sequence,
    catalan,
    rational,
    rational_series,
    _ZERO,
    _ONE,
)
from .core import LowerTriangle


class InvalidSpec(ValueError):
    """The coefficient array violates the characterization hypotheses."""


class NonConvergence(RuntimeError):
    """The fixed-point iteration failed to stabilize; indicates a bug."""


@dataclass(frozen=True)
class AMatrixSpec:
    """Rows a[i][j] of the characterizing array plus the rho coefficients.

    ``repeat_last_row`` models the infinite array whose rows are all equal
    to the last explicit row from that point on.
    """

    rows: tuple[tuple[Fraction, ...], ...]
    rho: tuple[Fraction, ...] = ()
    repeat_last_row: bool = False

    def __post_init__(self):
        rows = tuple(tuple(rational(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "rho", tuple(rational(v) for v in self.rho))
        if not rows or not rows[0] or rows[0][0] == 0:
            raise InvalidSpec("the top-left array entry must be nonzero")

    @classmethod
    def of(cls, rows, rho=(), repeat_last_row: bool = False) -> AMatrixSpec:
        return cls(
            tuple(tuple(rational(v) for v in row) for row in rows),
            tuple(rational(v) for v in rho),
            bool(repeat_last_row),
        )

    @classmethod
    def from_dict(cls, data: dict) -> AMatrixSpec:
        """Parse the JSON shape {"rows": [[...]], "rho": [...], "repeat_last_row": bool}.

        Scalars may be integers or "p/q" strings.
        """
        if not isinstance(data, dict) or "rows" not in data:
            raise InvalidSpec("spec JSON must be an object with a 'rows' key")
        rows = data["rows"]
        rho = data.get("rho", [])
        repeat = data.get("repeat_last_row", False)
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise InvalidSpec("'rows' must be a list of lists")
        if not isinstance(rho, list) or not isinstance(repeat, bool):
            raise InvalidSpec("'rho' must be a list and 'repeat_last_row' a bool")
        try:
            return cls.of(rows, rho, repeat)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InvalidSpec):
                raise
            raise InvalidSpec(str(exc)) from exc

    def to_dict(self) -> dict:
        def plain(q: Fraction):
            return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

        return {
            "rows": [[plain(v) for v in row] for row in self.rows],
            "rho": [plain(v) for v in self.rho],
            "repeat_last_row": self.repeat_last_row,
        }

    def entry(self, i: int, j: int) -> Fraction:
        """a[i][j] with last-row repetition and zero padding applied."""
        rows = self.rows
        if i >= len(rows):
            if not self.repeat_last_row:
                return _ZERO
            i = len(rows) - 1
        row = rows[i]
        return row[j] if j < len(row) else _ZERO


@dataclass(frozen=True)
class SolveReport:
    f: PowerSeries
    iterations: int
    residual_ok: bool


def _poly_at(coeffs, powers, order: int) -> PowerSeries:
    """sum_j coeffs[j] * powers[j], skipping zero terms."""
    acc = PowerSeries.zero(order)
    for j, c in enumerate(coeffs):
        if c:
            acc = acc + powers[j] * c
    return acc


def _shift(s: PowerSeries, k: int, order: int) -> PowerSeries:
    """x^k * s truncated back to the working order."""
    if k >= order:
        return PowerSeries.zero(order)
    return PowerSeries(((_ZERO,) * k + s.coeffs)[:order])


def _equation_rhs(spec: AMatrixSpec, f: PowerSeries) -> PowerSeries:
    """sum_i x^(i+1) R_i(f) + sum_j rho_j f^(j+2) at f's order."""
    order = f.order
    maxpow = max(len(r) for r in spec.rows) - 1
    if spec.rho:
        maxpow = max(maxpow, len(spec.rho) + 1)
    powers = [PowerSeries.one(order)]
    for _ in range(maxpow):
        powers.append(powers[-1] * f if len(powers) > 1 else f)
    total = PowerSeries.zero(order)
    explicit = len(spec.rows) - 1 if spec.repeat_last_row else len(spec.rows)
    for i in range(explicit):
        ri = _poly_at(spec.rows[i], powers, order)
        if not ri.is_zero():
            total = total + _shift(ri, i + 1, order)
    if spec.repeat_last_row:
        last = _poly_at(spec.rows[-1], powers, order)
        geom = rational_series([1], [1, -1], order)
        total = total + _shift(last * geom, len(spec.rows), order)
    for j, r in enumerate(spec.rho):
        if r:
            total = total + powers[j + 2] * r
    return total


def functional_equation_residual(spec: AMatrixSpec, f: PowerSeries) -> PowerSeries:
    """f minus the equation right side; identically zero at a solution."""
    return f - _equation_rhs(spec, f)


def solve_f(spec: AMatrixSpec, order: int) -> SolveReport:
    """The unique solution f with f(0) = 0, f'(0) = a[0][0], to truncation.

    Coefficient n of the equation right side only involves f-coefficients
    below n, so iterating from a[0][0]*x pins at least one new coefficient
    per pass and a fixed point is reached within order + 1 passes.
    """
    if order < 2:
        raise ValueError("order must be at least 2")
    f = PowerSeries.of([0, spec.rows[0][0]], order)
    for iteration in range(1, order + 2):
        nxt = _equation_rhs(spec, f)
        if nxt.coeffs == f.coeffs:
            return SolveReport(f, iteration, residual_ok=True)
        f = nxt
    raise NonConvergence("fixed point not reached; the iteration is miscoded")


def direct_triangle(spec: AMatrixSpec, nrows: int) -> LowerTriangle:
    """Bell triangle built purely from the entry recurrence.

    Seeds are t[0][0] = 1 and t[1][0] = a[0][1] + a[1][0] + rho[0]; rows are
    filled right to left because the rho terms reference entries of the same
    row further right.  The j = 0 term of the recurrence is dropped for
    column k >= 1 by triangularity, but for column 0 the constant entry of
    array row n contributes directly (it multiplies f^0 in the defining
    equation), so it is added back there.
    """
    if nrows < 2:
        raise ValueError("nrows must be at least 2")
    rho = spec.rho
    rho0 = rho[0] if rho else _ZERO
    a00 = spec.rows[0][0]
    rows: list[list[Fraction]] = [[_ONE]]
    seed = spec.entry(0, 1) + spec.entry(1, 0) + rho0
    rows.append([seed, a00])
    width = max(len(r) for r in spec.rows)
    explicit_depth = len(spec.rows)
    for n in range(2, nrows):
        row: list[Fraction] = [_ZERO] * (n + 1)
        rows.append(row)
        depth = n if spec.repeat_last_row else min(n, explicit_depth)
        for k in range(n, -1, -1):
            s = _ZERO
            for i in range(depth):
                prev = rows[n - 1 - i]
                plen = len(prev)
                for j in range(width):
                    col = k - 1 + j
                    if 0 <= col < plen:
                        aij = spec.entry(i, j)
                        if aij:
                            s += aij * prev[col]
            for j, r in enumerate(rho):
                col = k + j + 1
                if r and col <= n:
                    s += r * row[col]
            if k == 0:
                s += spec.entry(n, 0)
            row[k] = s
    return LowerTriangle(tuple(tuple(r) for r in rows))


def closed_form_f_general(a, b, c, d, rho0, order: int) -> PowerSeries:
    """f/x for the two-row array [[1, a, b], [1, c, d]] with rho = (rho0).

    Catalan-composition form:
    (1+x)/(1-ax-cx^2) * C(x(1+x)(rho0 + bx + dx^2) / (1-ax-cx^2)^2),
    where C is the Catalan generating function.  rho0 = 0 gives the pure
    two-row case.
    """
    a, b, c, d, rho0 = (rational(v) for v in (a, b, c, d, rho0))
    den = PowerSeries.of([1, -a, -c], order)
    num = PowerSeries.of([0, rho0, rho0 + b, b + d, d], order)  # x(1+x)(rho0+bx+dx^2)
    inner = num / (den * den)
    cat = catalan(order)
    return (PowerSeries.of([1, 1], order) / den) * cat.compose(inner)


def perturbed_f(a, b, c, order: int) -> PowerSeries:
    """The solution u of u/x = 1 + a*u + b*u^2 + c*u^2/x.

    Catalan-composition form x/(1-ax) * C(x(bx + c)/(1-ax)^2); also equal
    to the reverse of x(1 - cx)/(1 + ax + bx^2).
    """
    a, b, c = (rational(v) for v in (a, b, c))
    den = PowerSeries.of([1, -a], order)
    inner = PowerSeries.of([0, c, b], order) / (den * den)
    cat = catalan(order)
    return (PowerSeries.of([0, 1], order) / den) * cat.compose(inner)


def asequence_by_substitution(spec: AMatrixSpec, order: int) -> Sequence:
    """A-sequence of the Bell matrix of solve_f(spec), as x / fbar.

    Also verifies the substituted identity: writing v = x/fbar and using
    f(fbar) = x, the defining equation transforms into

        v = sum_i fbar^i * R_i(x) + x * v * rho(x),

    whose residual must vanish to truncation.
    """
    f = solve_f(spec, order).f
    fbar = f.revert()
    n = order - 1
    v = PowerSeries.one(n) / fbar.div_x()
    fbar_t = fbar.truncate(n)
    explicit = len(spec.rows) - 1 if spec.repeat_last_row else len(spec.rows)
    rhs = PowerSeries.zero(n)
    fpow = PowerSeries.one(n)
    for i in range(explicit):
        rhs = rhs + PowerSeries.of(spec.rows[i], n) * fpow
        fpow = fpow * fbar_t
    if spec.repeat_last_row:
        tail = fpow / (PowerSeries.one(n) - fbar_t)
        rhs = rhs + PowerSeries.of(spec.rows[-1], n) * tail
    if spec.rho:
        rhs = rhs + (PowerSeries.of(spec.rho, n) * v).mul_x().truncate(n)
    if rhs.coeffs != v.coeffs:
        raise NonConvergence("substituted equation residual is nonzero")
    return Sequence(v.coeffs)


def narayana_poly_coeffs(nrows: int) -> LowerTriangle:
    """Coefficient triangle of the column polynomials P_n(r) of the
    single-row family A = (1, r) with rho(x) = 1 + rx.

    Entry (n, k) is C(2n-k+1, n-k) * C(2n-k, k-1) / k for k >= 1 and
    C(2n+1, n) / (2n+1) for k = 0.
    """
    if nrows < 1:
        raise ValueError("nrows must be positive")

    def ch(n: int, k: int) -> int:
        return comb(n, k) if 0 <= k <= n else 0

    rows = []
    for n in range(nrows):
        row = [Fraction(ch(2 * n + 1, n), 2 * n + 1)]
        for k in range(1, n + 1):
            row.append(Fraction(ch(2 * n - k, k - 1) * ch(2 * n - k + 1, n - k), k))
        rows.append(tuple(row))
    return LowerTriangle(tuple(rows))


def binomial_transform_equation_check(a, b, c, order: int) -> bool:
    """Check that the binomial transform of u/x, with u = perturbed_f(a, b, c),
    satisfies v/x = (1 + a*v + b*v^2)/(1 - x) + c*v^2/x.

    The transform of u/x is v/x with v = u(x/(1-x)); this is also the
    solution of the repeated-row variant of the same equation.
    """
    if order < 4:
        raise ValueError("order must be at least 4")
    u = perturbed_f(a, b, c, order)
    v = u.compose(rational_series([0, 1], [1, -1], order))
    a, b, c = (rational(v_) for v_ in (a, b, c))
    lhs = v.div_x()
    rhs = (1 + v * a + v * v * b) / PowerSeries.of([1, -1], order)
    rhs = rhs + (v * v).div_x() * c
    n = min(lhs.order, rhs.order)
    return lhs.coeffs[:n] == rhs.coeffs[:n]


def orthogonal_poly_coeffs(a, b, nrows: int) -> LowerTriangle:
    """Coefficient triangle of P_n(x) = (x - a) P_(n-1)(x) - b P_(n-2)(x),
    with P_0 = 1 and P_1 = x - a."""
    if nrows < 1:
        raise ValueError("nrows must be positive")
    a, b = rational(a), rational(b)
    rows = [(_ONE,)]
    if nrows > 1:
        rows.append((-a, _ONE))
    for n in range(2, nrows):
        prev, prev2 = rows[n - 1], rows[n - 2]
        row = [_ZERO] * (n + 1)
        for k, v in enumerate(prev):
            row[k + 1] += v
            row[k] -= a * v
        for k, v in enumerate(prev2):
            row[k] -= b * v
        rows.append(tuple(row))
    return LowerTriangle(tuple(rows))

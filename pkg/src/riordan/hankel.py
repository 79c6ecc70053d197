"""Exact Hankel transforms, Somos-4 parameter fitting, and J-fractions.

Determinants are exact: integer matrices go through fraction-free Bareiss
elimination on Python ints, anything else through pivoted Gaussian
elimination over Fraction.  The Somos-4 fitter classifies the full linear
system over every available window instead of trusting the first two, so
hidden inconsistencies surface as data rather than wrong answers.

All functions are pure; the per-index determinants of a Hankel transform
are independent and could be evaluated in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import PowerSeries, Sequence, rational, _ZERO, _ONE


class InsufficientTerms(ValueError):
    """The sequence is too short for the requested transform depth."""


UNIQUE = "Unique"
FAMILY = "Family"
INCONSISTENT = "Inconsistent"
INSUFFICIENT = "InsufficientData"


def _det_int_bareiss(m: list[list[int]]) -> int:
    """Fraction-free determinant; every intermediate division is exact."""
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _det_rat_gauss(m: list[list[Fraction]]) -> Fraction:
    """Exact pivoted Gaussian elimination over Fraction."""
    n = len(m)
    det = _ONE
    for k in range(n):
        pivot_row = None
        for r in range(k, n):
            if m[r][k] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            return _ZERO
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            det = -det
        pivot = m[k][k]
        det *= pivot
        for i in range(k + 1, n):
            factor = m[i][k] / pivot
            if factor:
                row_i = m[i]
                row_k = m[k]
                for j in range(k, n):
                    row_i[j] -= factor * row_k[j]
    return det


def exact_det(matrix) -> Fraction:
    """Exact determinant of a square matrix of rationals (or ints)."""
    rows = [[rational(v) for v in row] for row in matrix]
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix is not square")
    if n == 0:
        return _ONE
    if all(v.denominator == 1 for row in rows for v in row):
        return Fraction(_det_int_bareiss([[v.numerator for v in row] for row in rows]))
    return _det_rat_gauss(rows)


def hankel_transform(s: Sequence, max_n: int) -> Sequence:
    """h_n = det(s[i+j]) for 0 <= i, j <= n, for n = 0..max_n."""
    need = 2 * max_n + 1
    if len(s) < need:
        raise InsufficientTerms(f"need {need} terms for h_{max_n}, have {len(s)}")
    t = s.terms
    out = []
    for n in range(max_n + 1):
        out.append(exact_det([[t[i + j] for j in range(n + 1)] for i in range(n + 1)]))
    return Sequence(tuple(out))


@dataclass(frozen=True)
class SomosFitResult:
    """Classification of the window equations s_n s_(n-4) = alpha s_(n-1) s_(n-3) + beta s_(n-2)^2.

    kind is one of Unique, Family, Inconsistent, InsufficientData.  For
    Unique the pair (alpha, beta) satisfies every window exactly; Family
    carries the single normalized constraint p*alpha + q*beta = r; an
    Inconsistent fit reports the smallest window index with no solution.
    """

    kind: str
    alpha: Fraction | None = None
    beta: Fraction | None = None
    family_description: tuple[Fraction, Fraction, Fraction] | None = None
    failing_index: int | None = None


def _normalize_line(p: Fraction, q: Fraction, r: Fraction):
    lead = p if p != 0 else q
    return (p / lead, q / lead, r / lead)


def somos_fit(h: Sequence) -> SomosFitResult:
    """Fit (alpha, beta) over every window of h, classifying the system.

    Windows whose coefficient row and right side are all zero constrain
    nothing and are skipped.  Fewer than two window equations in total is
    reported as InsufficientData rather than an error.
    """
    t = h.terms
    if len(t) < 6:
        return SomosFitResult(INSUFFICIENT)
    line: tuple[Fraction, Fraction, Fraction] | None = None
    point: tuple[Fraction, Fraction] | None = None
    for n in range(4, len(t)):
        p = t[n - 1] * t[n - 3]
        q = t[n - 2] * t[n - 2]
        r = t[n] * t[n - 4]
        if p == 0 and q == 0:
            if r != 0:
                return SomosFitResult(INCONSISTENT, failing_index=n)
            continue
        if point is not None:
            if p * point[0] + q * point[1] != r:
                return SomosFitResult(INCONSISTENT, failing_index=n)
            continue
        if line is None:
            line = (p, q, r)
            continue
        p0, q0, r0 = line
        cross = p0 * q - p * q0
        if cross == 0:
            if p0 * r != p * r0 or q0 * r != q * r0:
                return SomosFitResult(INCONSISTENT, failing_index=n)
            continue
        alpha = (r0 * q - r * q0) / cross
        beta = (p0 * r - p * r0) / cross
        point = (alpha, beta)
    if point is not None:
        return SomosFitResult(UNIQUE, alpha=point[0], beta=point[1])
    if line is not None:
        return SomosFitResult(FAMILY, family_description=_normalize_line(*line))
    return SomosFitResult(INSUFFICIENT)


def fit_allows(fit: SomosFitResult, alpha, beta) -> bool:
    """True iff the fitted solution set contains the pair (alpha, beta).

    Sequences with degenerate windows (an all-ones Hankel transform, say)
    admit a whole line of valid parameter pairs; a claimed pair then counts
    as confirmed when it lies on that line.
    """
    alpha, beta = rational(alpha), rational(beta)
    if fit.kind == UNIQUE:
        return fit.alpha == alpha and fit.beta == beta
    if fit.kind == FAMILY:
        p, q, r = fit.family_description
        return p * alpha + q * beta == r
    return False


def somos_verify(s: Sequence, alpha, beta) -> bool:
    """Product-form check s_n s_(n-4) = alpha s_(n-1) s_(n-3) + beta s_(n-2)^2
    for every available n >= 4; tolerant of zero terms."""
    if len(s) < 5:
        raise ValueError("need at least five terms")
    alpha, beta = rational(alpha), rational(beta)
    t = s.terms
    return all(
        t[n] * t[n - 4] == alpha * t[n - 1] * t[n - 3] + beta * t[n - 2] * t[n - 2]
        for n in range(4, len(t))
    )


@dataclass(frozen=True)
class JFraction:
    """Coefficients of 1/(1 - b0 x - lam1 x^2/(1 - b1 x - lam2 x^2/(...))).

    The input series is normalized by its constant term first.  A continued
    fraction written with +x^2 numerators corresponds to negative lam here.
    terminated means extraction stopped because a lam vanished.
    """

    b: tuple[Fraction, ...]
    lam: tuple[Fraction, ...]
    terminated: bool = False


def jfraction(s: Sequence, depth: int) -> JFraction:
    """Extract depth + 1 b-coefficients and depth lambdas by repeated
    series inversion; stops early (terminated=True) when a lambda vanishes.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if s.terms[0] == 0:
        raise ValueError("the leading term must be nonzero")
    need = 2 * depth + 2
    if len(s) < need:
        raise InsufficientTerms(f"depth {depth} needs {need} terms, have {len(s)}")
    t = PowerSeries(s.terms) / s.terms[0]
    bs: list[Fraction] = []
    lams: list[Fraction] = []
    for level in range(depth + 1):
        w = 1 - (1 / t)
        bs.append(w.coeffs[1])
        if level == depth:
            break
        rest = list(w.coeffs)
        rest[1] = _ZERO
        w = PowerSeries(tuple(rest))  # w is now lam * x^2 * tail
        lam = w.coeffs[2]
        lams.append(lam)
        if lam == 0:
            return JFraction(tuple(bs), tuple(lams), terminated=True)
        t = w.div_x().div_x() / lam
    return JFraction(tuple(bs), tuple(lams), terminated=False)


def jfraction_series(jf: JFraction, order: int) -> PowerSeries:
    """Rebuild the continued fraction as a power series of the given order."""
    if not jf.b:
        return PowerSeries.one(order)
    t = PowerSeries.one(order)
    for k in range(len(jf.b) - 1, -1, -1):
        den = PowerSeries.of([1, -jf.b[k]], order)
        if k < len(jf.lam) and jf.lam[k] != 0:
            den = den - (t * jf.lam[k]).mul_x().mul_x().truncate(order)
        t = PowerSeries.one(order) / den
    return t

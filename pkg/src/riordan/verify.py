"""Fixture regression harness, conjecture sweep machinery, b-file ingestion.

The bundled corpus (fixtures/corpus.json) holds one entry per check:

    {"id": "<name>.<what>",
     "spec": <builder>,
     "check_kind": "column" | "triangle" | "hankel" | "somos" | "aseq" |
                   "zseq" | "production" | "jfraction" | "quasi_involution" |
                   "diagonal_sums",
     "expected": <literal expected values>}

Builders describe the array under test:

    {"kind": "amatrix", "rows": [[...]], "rho": [...],
     "repeat_last_row": false, "invert": false}
    {"kind": "rational_pair", "g_num": [...], "g_den": [...],
     "f_num": [...], "f_den": [...], "invert": false}
    {"kind": "narayana_coeffs", "nrows": n}

Scalars may be integers or "p/q" strings.  Expected values are literal data
(bundled, never recomputed); comparisons are exact, with no tolerances.

Triangle checks against an amatrix builder run both constructions (series
realization and the direct entry recurrence) so a disagreement between the
two routes is reported rather than masked.

The sweep harness grids the two-row family over a parameter box, evaluates
the conjectured Somos parameters in closed form, and verifies the Hankel
transform against them window by window.  Counterexamples are recorded
output, not assertion failures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import product

from .series import PowerSeries, Sequence, rational
from .core import (
    LowerTriangle,
    RiordanPair,
    bell_from_f,
    diagonal_sums,
    production_matrix,
    a_sequence,
    riordan_inverse,
    riordan_triangle,
    quasi_involution_check,
    z_sequence,
)
from .amatrix import (
    AMatrixSpec,
    closed_form_f_general,
    direct_triangle,
    narayana_poly_coeffs,
    solve_f,
)
from .hankel import hankel_transform, jfraction, somos_fit, somos_verify


class FixtureNotFound(ValueError):
    """No fixture id matched the requested filter."""


class MalformedLine(ValueError):
    """A b-file line is not '# comment' or 'index value'."""


class NonConsecutiveIndices(ValueError):
    """b-file indices must increase by one."""


DEFAULT_ORDER = 32


@dataclass(frozen=True)
class Fixture:
    id: str
    spec: dict
    check_kind: str
    expected: object


@dataclass(frozen=True)
class FixtureOutcome:
    id: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class FixtureReport:
    outcomes: tuple[FixtureOutcome, ...]

    @property
    def total(self) -> int:
        return len(self.outcomes)

    @property
    def failed(self) -> tuple[FixtureOutcome, ...]:
        return tuple(o for o in self.outcomes if not o.ok)

    @property
    def ok(self) -> bool:
        return not self.failed


def load_corpus() -> list[Fixture]:
    raw = resources.files("riordan.fixtures").joinpath("corpus.json").read_text()
    return [
        Fixture(e["id"], e["spec"], e["check_kind"], e["expected"])
        for e in json.loads(raw)
    ]


class _Builder:
    """Build-and-cache the array described by a fixture spec."""

    def __init__(self, order: int):
        self.order = order
        self._pairs: dict[str, RiordanPair] = {}

    def pair(self, spec: dict) -> RiordanPair:
        key = json.dumps(spec, sort_keys=True)
        if key in self._pairs:
            return self._pairs[key]
        kind = spec.get("kind")
        if kind == "amatrix":
            base = {k: v for k, v in spec.items() if k not in ("kind", "invert")}
            amspec = AMatrixSpec.from_dict(base)
            built = bell_from_f(solve_f(amspec, self.order).f)
        elif kind == "rational_pair":
            g = PowerSeries.of(spec["g_num"], self.order) / PowerSeries.of(
                spec["g_den"], self.order
            )
            f = PowerSeries.of(spec["f_num"], self.order) / PowerSeries.of(
                spec["f_den"], self.order
            )
            built = RiordanPair(g, f)
        else:
            raise ValueError(f"builder kind {kind!r} does not describe a pair")
        if spec.get("invert", False):
            built = riordan_inverse(built)
        self._pairs[key] = built
        return built

    def triangle_source(self, spec: dict) -> LowerTriangle | None:
        if spec.get("kind") == "narayana_coeffs":
            return narayana_poly_coeffs(spec["nrows"])
        return None


def _expected_rows(expected) -> list[list[Fraction]]:
    return [[rational(v) for v in row] for row in expected]


def _expected_list(expected) -> list[Fraction]:
    return [rational(v) for v in expected]


def _check_fixture(fx: Fixture, builder: _Builder) -> FixtureOutcome:
    kind = fx.check_kind
    spec = fx.spec
    if kind == "triangle":
        tri = builder.triangle_source(spec)
        want = _expected_rows(fx.expected)
        nrows = len(want)
        if tri is None:
            tri = riordan_triangle(builder.pair(spec), nrows)
        got = [list(row) for row in tri.rows[:nrows]]
        if got != want:
            return FixtureOutcome(fx.id, False, "series triangle mismatch")
        if spec.get("kind") == "amatrix" and not spec.get("invert", False):
            direct = direct_triangle(AMatrixSpec.from_dict(
                {k: v for k, v in spec.items() if k not in ("kind", "invert")}
            ), nrows)
            if [list(r) for r in direct.rows] != want:
                return FixtureOutcome(
                    fx.id, False, "direct recurrence disagrees with series triangle"
                )
        return FixtureOutcome(fx.id, True)
    if kind == "column":
        want = _expected_list(fx.expected)
        col = builder.pair(spec).g
        if list(col.prefix(len(want))) != want:
            return FixtureOutcome(fx.id, False, "column mismatch")
        return FixtureOutcome(fx.id, True)
    if kind == "hankel":
        want = _expected_list(fx.expected)
        col = builder.pair(spec).g
        h = hankel_transform(Sequence(col.coeffs), len(want) - 1)
        if list(h.terms) != want:
            return FixtureOutcome(fx.id, False, "Hankel transform mismatch")
        return FixtureOutcome(fx.id, True)
    if kind == "somos":
        exp = fx.expected
        col = builder.pair(spec).g
        h = hankel_transform(Sequence(col.coeffs), int(exp["depth"]))
        if exp["mode"] == "verify":
            ok = somos_verify(h, rational(exp["alpha"]), rational(exp["beta"]))
            return FixtureOutcome(fx.id, ok, "" if ok else "product-form check failed")
        fit = somos_fit(h)
        ok = (
            fit.kind == exp["kind"]
            and fit.alpha == rational(exp["alpha"])
            and fit.beta == rational(exp["beta"])
        )
        detail = "" if ok else f"fit returned {fit}"
        return FixtureOutcome(fx.id, ok, detail)
    if kind == "aseq":
        want = _expected_list(fx.expected)
        got = a_sequence(builder.pair(spec))
        if list(got.prefix(len(want))) != want:
            return FixtureOutcome(fx.id, False, "A-sequence mismatch")
        return FixtureOutcome(fx.id, True)
    if kind == "zseq":
        want = _expected_list(fx.expected)
        got = z_sequence(builder.pair(spec))
        if list(got.prefix(len(want))) != want:
            return FixtureOutcome(fx.id, False, "Z-sequence mismatch")
        return FixtureOutcome(fx.id, True)
    if kind == "production":
        want = _expected_rows(fx.expected)
        prod = production_matrix(builder.pair(spec), len(want))
        got = [list(row) for row in prod.matrix]
        if got != want:
            return FixtureOutcome(fx.id, False, "production matrix mismatch")
        return FixtureOutcome(fx.id, True)
    if kind == "jfraction":
        exp = fx.expected
        want_b = _expected_list(exp["b"])
        want_lam = _expected_list(exp["lambda"])
        col = builder.pair(spec).g
        jf = jfraction(Sequence(col.coeffs), len(want_lam))
        ok = list(jf.b) == want_b and list(jf.lam) == want_lam
        return FixtureOutcome(fx.id, ok, "" if ok else f"got b={jf.b} lam={jf.lam}")
    if kind == "quasi_involution":
        col = builder.pair(spec).g
        if any(c != 0 for c in col.coeffs[1::2]):
            return FixtureOutcome(fx.id, False, "column is not aerated")
        g = PowerSeries(col.coeffs[0::2])
        ok = quasi_involution_check(g) == bool(fx.expected)
        return FixtureOutcome(fx.id, ok, "" if ok else "inverse law failed")
    if kind == "diagonal_sums":
        want = _expected_list(fx.expected)
        tri = builder.triangle_source(spec)
        if tri is None:
            tri = riordan_triangle(builder.pair(spec), len(want))
        got = diagonal_sums(tri)
        if list(got.prefix(len(want))) != want:
            return FixtureOutcome(fx.id, False, "diagonal sums mismatch")
        return FixtureOutcome(fx.id, True)
    return FixtureOutcome(fx.id, False, f"unknown check kind {kind!r}")


def run_fixtures(filter: str | None = None, order: int = DEFAULT_ORDER) -> FixtureReport:
    """Run the bundled corpus (or the subset whose id contains the filter).

    Every comparison is exact; any mismatch is reported in the outcome list.
    An unmatched filter raises FixtureNotFound.
    """
    corpus = load_corpus()
    if filter:
        corpus = [fx for fx in corpus if filter.lower() in fx.id.lower()]
        if not corpus:
            raise FixtureNotFound(f"no fixture id contains {filter!r}")
    builder = _Builder(order)
    outcomes = []
    for fx in corpus:
        try:
            outcomes.append(_check_fixture(fx, builder))
        except Exception as exc:  # a crashing fixture is a failing fixture
            outcomes.append(FixtureOutcome(fx.id, False, f"{type(exc).__name__}: {exc}"))
    return FixtureReport(tuple(outcomes))


# -- Somos-4 conjecture sweeps -----------------------------------------


def conjectured_somos_rho0(a, b, c, d) -> tuple[Fraction, Fraction]:
    """The conjectured (alpha, beta) for the two-row family with rho = 0."""
    a, b, c, d = (rational(v) for v in (a, b, c, d))
    alpha = (b + a * b + d) ** 2
    beta = (
        b**4
        - b**3 * (2 + 3 * a + a * a - 2 * c)
        + b * (a + a * a - a * c - 2 * d) * d
        + (1 + a - c) * d * d
        - b * b * (c + a * c - c * c + 2 * d + 3 * a * d)
    )
    return alpha, beta


def conjectured_somos_rho_delta(a, b, c, d) -> tuple[Fraction, Fraction]:
    """The conjectured (alpha, beta) for the two-row family with rho = (1, 0, 0, ...)."""
    a, b, c, d = (rational(v) for v in (a, b, c, d))
    alpha = (4 + a * a + 3 * b + a * (4 + b) + c + d) ** 2
    beta = (
        -16
        - a**5
        + b**4
        - 3 * a**4 * (3 + b)
        + 2 * b**3 * (-2 + c)
        - 8 * c
        - 4 * c**2
        - c**3
        + b**2 * (-28 - c + c**2 - 8 * d)
        - 8 * d
        - 6 * c * d
        - 2 * c**2 * d
        - d**2
        - c * d**2
        - a**3 * (32 + 23 * b + 3 * b**2 + c + 2 * d)
        - 2 * b * (20 + c**2 + 9 * d + d**2 + 3 * c * (2 + d))
        - a**2 * (56 + 18 * b**2 + b**3 + 10 * d + c * (6 + d) + b * (66 + c + 5 * d))
        - a
        * (
            48
            + 3 * b**3
            + 2 * c**2
            + 16 * d
            + d**2
            + b**2 * (38 - 2 * c + 3 * d)
            + c * (12 + 5 * d)
            + b * (84 - c**2 + 19 * d + c * (8 + d))
        )
    )
    return alpha, beta


CONFIRMED = "confirmed"
DEGENERATE = "degenerate"
COUNTEREXAMPLE = "counterexample"


def check_conjecture_point(a, b, c, d, rho0: int, order: int) -> tuple[str, int | None]:
    """Evaluate the conjecture at one parameter tuple.

    Returns (status, failing_window).  Tuples with conjectured alpha = 0 or
    with fewer than two usable Hankel windows are degenerate; otherwise the
    product-form relation is checked at every window of the transform.
    """
    if rho0 not in (0, 1):
        raise ValueError("rho0 must be 0 or 1")
    fx = closed_form_f_general(a, b, c, d, rho0, order)
    depth = (order - 1) // 2
    h = hankel_transform(Sequence(fx.coeffs), depth).terms
    if rho0 == 0:
        alpha, beta = conjectured_somos_rho0(a, b, c, d)
    else:
        alpha, beta = conjectured_somos_rho_delta(a, b, c, d)
    usable = 0
    for n in range(4, len(h)):
        if h[n - 1] * h[n - 3] != 0 or h[n - 2] != 0 or h[n] * h[n - 4] != 0:
            usable += 1
    if alpha == 0 or usable < 2:
        return DEGENERATE, None
    for n in range(4, len(h)):
        if h[n] * h[n - 4] != alpha * h[n - 1] * h[n - 3] + beta * h[n - 2] ** 2:
            return COUNTEREXAMPLE, n
    return CONFIRMED, None


@dataclass(frozen=True)
class SweepReport:
    """Outcome tallies for a conjecture sweep over an integer parameter box."""

    family: str  # "rho0" or "rhodelta"
    lo: int
    hi: int
    order: int
    total: int
    confirmed: int
    degenerate: int
    counterexamples: tuple[tuple[tuple[int, int, int, int], int], ...]

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "range": [self.lo, self.hi],
            "order": self.order,
            "total": self.total,
            "confirmed": self.confirmed,
            "degenerate": self.degenerate,
            "counterexamples": [
                {"params": list(params), "failing_window": n}
                for params, n in self.counterexamples
            ],
        }


def _sweep(family: str, rho0: int, lo: int, hi: int, order: int) -> SweepReport:
    if lo > hi:
        raise ValueError(f"empty parameter range {lo}..{hi}")
    if order < 10:
        raise ValueError("sweep order must be at least 10 for two usable windows")
    confirmed = degenerate = 0
    counterexamples = []
    grid = range(lo, hi + 1)
    for a, b, c, d in product(grid, repeat=4):
        status, window = check_conjecture_point(a, b, c, d, rho0, order)
        if status == CONFIRMED:
            confirmed += 1
        elif status == DEGENERATE:
            degenerate += 1
        else:
            counterexamples.append(((a, b, c, d), window))
    total = len(grid) ** 4
    return SweepReport(
        family, lo, hi, order, total, confirmed, degenerate, tuple(counterexamples)
    )


def sweep_conjecture_rho0(lo: int, hi: int, order: int = 14) -> SweepReport:
    """Grid the rho = 0 conjecture over [lo, hi]^4."""
    return _sweep("rho0", 0, lo, hi, order)


def sweep_conjecture_rho_delta(lo: int, hi: int, order: int = 14) -> SweepReport:
    """Grid the rho = (1, 0, 0, ...) conjecture over [lo, hi]^4."""
    return _sweep("rhodelta", 1, lo, hi, order)


# -- OEIS b-file ingestion ----------------------------------------------


def load_bfile(path) -> Sequence:
    """Parse a b-file: '#' comment lines, then 'index value' data lines.

    Indices must be consecutive; the sequence offset is the first index.
    """
    terms: list[Fraction] = []
    first: int | None = None
    prev: int | None = None
    with open(path, "r", encoding="ascii") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise MalformedLine(f"line {lineno}: expected 'index value', got {line!r}")
            try:
                idx = int(parts[0])
                val = Fraction(parts[1])
            except (ValueError, ZeroDivisionError) as exc:
                raise MalformedLine(f"line {lineno}: {exc}") from exc
            if first is None:
                first = idx
            elif idx != prev + 1:
                raise NonConsecutiveIndices(
                    f"line {lineno}: index {idx} does not follow {prev}"
                )
            prev = idx
            terms.append(val)
    if first is None:
        raise MalformedLine("no data lines found")
    return Sequence(tuple(terms), first)

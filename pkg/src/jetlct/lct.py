"""Log-canonical-threshold estimates from jet codimensions, plus the
comparison inequalities they satisfy.

Every ratio here is an exact :class:`~fractions.Fraction`.  An infinite
codimension (empty jet scheme) is stored as ``None``.  The running minimum
of the ratios over ``m <= M`` is an upper bound for the threshold, never
the threshold itself.
"""

from __future__ import annotations

import enum
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import IneligibleIdealError, InvariantViolation, ResourceExhausted
from .fields import PrimeField, Rationals
from .groebner import DegRevLex, Limits, WeightedDegRevLex, krull_dimension
from .ideal import AffineIdeal
from .jets import jet_fiber_origin, jet_ideal, ord_at_origin, restrict_to_hyperplane
from .polynomial import PolyRing

DEFAULT_MMAX = 5


class Mode(str, enum.Enum):
    GLOBAL = "Global"
    FIBER = "FiberAtOrigin"


@dataclass(frozen=True)
class LctRow:
    """One jet level.

    ``dim`` is the dimension of ``Y_m`` (Global) or of the fiber over the
    origin inside its ``n*m`` coordinates (FiberAtOrigin); -1 means empty.
    ``status`` is ``"ok"`` or ``"exhausted"``; exhausted rows carry no numbers.
    """

    m: int
    mode: Mode
    n: int
    dim: int | None
    codim: int | None
    status: str = "ok"
    detail: str = ""
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    @property
    def infinite(self) -> bool:
        return self.ok and self.codim is None

    @property
    def ratio(self) -> Fraction | None:
        """``codim/(m+1)``; ``None`` when infinite or not computed."""
        if not self.ok or self.codim is None:
            return None
        return Fraction(self.codim, self.m + 1)

    def ratio_text(self) -> str:
        if not self.ok:
            return "timeout"
        if self.codim is None:
            return "inf"
        return str(self.ratio)

    def to_dict(self) -> dict:
        r = self.ratio
        return {
            "m": self.m,
            "dim": self.dim,
            "codim": self.codim,
            "ratio_num": None if r is None else r.numerator,
            "ratio_den": None if r is None else r.denominator,
            "infinite": self.infinite,
            "status": self.status,
            "detail": self.detail,
            "elapsed": round(self.elapsed, 6),
        }


@dataclass
class LctReport:
    ideal: AffineIdeal
    mode: Mode
    m_max: int
    rows: list[LctRow]
    running_min: Fraction | None
    argmin: int | None
    convention: str | None = None
    diagnostic: str | None = None

    @property
    def field(self):
        return self.ideal.field

    @property
    def complete(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def infinite(self) -> bool:
        """No finite ratio and nothing missing: the estimate is infinity."""
        return self.running_min is None and self.complete

    def estimate_text(self) -> str:
        if self.running_min is not None:
            return str(self.running_min)
        return "inf" if self.infinite else "none"

    def footer(self) -> str:
        return f"upper bound after {self.m_max} levels: {self.estimate_text()}"

    @property
    def caveat(self) -> str:
        """What the running minimum bounds; it is never the threshold itself."""
        if self.mode is Mode.FIBER:
            return ("fiber bound: codimensions of the jets centred at the origin, "
                    "an upper bound for lct_0 at every finite m")
        return "upper bound for lct at every finite m"

    def row(self, m: int) -> LctRow:
        return self.rows[m]

    def codims(self) -> list[int | None]:
        return [r.codim for r in self.rows]

    def ratios(self) -> list[Fraction | None]:
        return [r.ratio for r in self.rows]

    def to_dict(self) -> dict:
        rm = self.running_min
        return {
            "mode": self.mode.value,
            "m_max": self.m_max,
            "rows": [r.to_dict() for r in self.rows],
            "running_min": None if rm is None else {"num": rm.numerator, "den": rm.denominator},
            "running_min_label": f"upper bound after {self.m_max} levels",
            "caveat": self.caveat,
            "argmin": self.argmin,
            "infinite": self.infinite,
            "convention": self.convention,
            "diagnostic": self.diagnostic,
        }


def _order_for(mode: Mode, weights, weighted: bool):
    if mode is Mode.FIBER and weighted and weights:
        return WeightedDegRevLex(weights)
    return DegRevLex()


def codim_jet(base: AffineIdeal, m: int, mode: Mode = Mode.GLOBAL, limits: Limits | None = None, *,
              weighted: bool = False) -> LctRow:
    """Codimension of ``Y_m`` in ``X_m``, or of its fiber over the origin.

    In FiberAtOrigin mode the codimension is ``n(m+1) - dim`` where ``dim``
    is taken inside the ``n*m`` fiber coordinates.  With ``weighted`` the
    fiber is computed under the weighted order ``w(a_{i,j}) = j``.
    """
    mode = Mode(mode)
    n = base.nvars
    start = time.perf_counter()
    J = jet_ideal(base, m)
    if mode is Mode.GLOBAL:
        I = J.as_ideal()
        order = DegRevLex()
    else:
        I = jet_fiber_origin(J)
        order = _order_for(mode, I.weights, weighted)
    try:
        d = krull_dimension(I, order, limits)
    except ResourceExhausted as exc:
        return LctRow(m, mode, n, None, None, "exhausted", exc.reason, time.perf_counter() - start)
    codim = None if d.dim < 0 else n * (m + 1) - d.dim
    return LctRow(m, mode, n, d.dim, codim, elapsed=time.perf_counter() - start)


def _row_job(args):
    base, m, mode, limits, weighted = args
    return codim_jet(base, m, mode, limits, weighted=weighted)


def default_jobs() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def _compute_rows(base, m_max, mode, limits, jobs, weighted) -> list[LctRow]:
    tasks = [(base, m, mode, limits, weighted) for m in range(m_max + 1)]
    if jobs is None:
        jobs = default_jobs()
    if jobs <= 1 or len(tasks) <= 1:
        rows = [_row_job(t) for t in tasks]
    else:
        # largest levels first so the slowest job starts early
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            futures = {t[1]: pool.submit(_row_job, t) for t in reversed(tasks)}
            rows = [futures[m].result() for m in range(m_max + 1)]
    return sorted(rows, key=lambda r: r.m)


def check_monotone(rows: Sequence[LctRow]) -> None:
    """Raise if a completed codimension decreases with the level."""
    prev = None
    for r in rows:
        if not r.ok:
            continue
        if prev is not None and prev.m == r.m - 1:
            if prev.codim is None and r.codim is not None or (
                prev.codim is not None and r.codim is not None and r.codim < prev.codim
            ):
                raise InvariantViolation(
                    f"codimension drops from {prev.codim} at m={prev.m} to {r.codim} at m={r.m}"
                )
        prev = r


def _minimum(rows: Sequence[LctRow]) -> tuple[Fraction | None, int | None]:
    best, at = None, None
    for r in rows:
        q = r.ratio
        if q is not None and (best is None or q < best):
            best, at = q, r.m
    return best, at


def lct_estimate(base: AffineIdeal, m_max: int = DEFAULT_MMAX, mode: Mode = Mode.GLOBAL,
                 limits: Limits | None = None, *, jobs: int | None = 1, weighted: bool = False) -> LctReport:
    """Table of ``codim/(m+1)`` for ``m = 0..m_max`` and its running minimum.

    The zero ideal (``Y = X``) has threshold 0 by convention; the unit ideal
    yields only infinite rows and an infinite estimate.
    """
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    mode = Mode(mode)
    if mode is Mode.FIBER and not base.at_origin_eligible:
        g, c = base.offending_constant()
        raise IneligibleIdealError(f"generator {g} has nonzero constant term {c}; the origin is not on Y")
    rows = _compute_rows(base, m_max, mode, limits, jobs, weighted)
    check_monotone(rows)
    best, at = _minimum(rows)
    convention = diagnostic = None
    if base.is_zero_ideal:
        best, at = Fraction(0), None
        convention = "Y = X: the threshold is 0 by convention"
    elif not any(r.ok for r in rows):
        diagnostic = "every level exhausted its resource limits; no estimate"
    elif any(not r.ok for r in rows):
        skipped = [str(r.m) for r in rows if not r.ok]
        if len(skipped) == 1:
            diagnostic = f"level {skipped[0]} exhausted its limits and is excluded from the minimum"
        else:
            diagnostic = f"levels {', '.join(skipped)} exhausted their limits and are excluded from the minimum"
    if best is None and all(r.infinite for r in rows):
        convention = "Y is empty: every jet scheme is empty and the threshold is infinite"
    return LctReport(base, mode, m_max, rows, best, at, convention, diagnostic)


# ---------------------------------------------------------------------------
# comparison inequalities


def _check_integral(base: AffineIdeal) -> None:
    if not isinstance(base.field, Rationals):
        raise IneligibleIdealError("reduction mod p needs an ideal declared over Q")
    for g in base.generators:
        for _, c in g.terms.items():
            if c.denominator != 1:
                raise IneligibleIdealError(
                    f"generator {g} has non-integer coefficient {c}; reduction mod p needs integer "
                    "coefficients (no automatic rescaling)"
                )
    bad = base.offending_constant()
    if bad is not None:
        raise IneligibleIdealError(
            f"generator {bad[0]} has nonzero constant term {bad[1]}; reduction mod p needs every "
            "generator inside the maximal ideal (x_1, ..., x_n)"
        )


def reduce_mod_p(base: AffineIdeal, p: int) -> AffineIdeal:
    """Reduce an integer-coefficient ideal to F_p.

    Generators that vanish mod p are kept (as zero polynomials) for the
    audit trail; if all vanish the result is the zero ideal.
    """
    _check_integral(base)
    Fp = PrimeField(p)
    ring = PolyRing(base.ring.names, Fp)
    gens = [g.map_field(ring, lambda c: int(c.numerator) % p) for g in base.generators]
    return AffineIdeal(ring, gens, allow_zero=True)


@dataclass(frozen=True)
class ModPRow:
    p: int
    m: int
    dim_q: int | None
    dim_p: int | None

    @property
    def complete(self) -> bool:
        return self.dim_q is not None and self.dim_p is not None

    @property
    def holds(self) -> bool | None:
        if not self.complete:
            return None
        return self.dim_p >= self.dim_q


@dataclass
class ModPComparison:
    ideal: AffineIdeal
    primes: tuple[int, ...]
    m_max: int
    rows: list[ModPRow]
    report_q: LctReport
    reports_p: dict[int, LctReport]
    reduced: dict[int, AffineIdeal]

    @property
    def verdict(self) -> bool:
        return all(r.holds is not False for r in self.rows)

    @property
    def partial(self) -> bool:
        return any(not r.complete for r in self.rows)

    @property
    def violations(self) -> list[ModPRow]:
        return [r for r in self.rows if r.holds is False]


def compare_mod_p(base: AffineIdeal, primes: Sequence[int], m_max: int = DEFAULT_MMAX,
                  limits: Limits | None = None, *, jobs: int | None = 1) -> ModPComparison:
    """Compare origin-fiber dimensions over Q and over each F_p.

    Semicontinuity predicts ``dim_p >= dim_Q`` at every level; the verdict is
    true iff no computed pair contradicts it.
    """
    _check_integral(base)
    if not primes:
        raise ValueError("at least one prime is required")
    primes = tuple(int(p) for p in primes)
    for p in primes:
        PrimeField(p)  # validates primality
    rq = lct_estimate(base, m_max, Mode.FIBER, limits, jobs=jobs)
    reports, reduced, rows = {}, {}, []
    for p in primes:
        Ip = reduce_mod_p(base, p)
        reduced[p] = Ip
        rp = lct_estimate(Ip, m_max, Mode.FIBER, limits, jobs=jobs)
        reports[p] = rp
        for a, b in zip(rq.rows, rp.rows):
            rows.append(ModPRow(p, a.m, a.dim if a.ok else None, b.dim if b.ok else None))
    return ModPComparison(base, primes, m_max, rows, rq, reports, reduced)


@dataclass(frozen=True)
class IoaRow:
    m: int
    c_x: int | None
    c_h: int | None
    complete: bool

    @property
    def ratio_x(self) -> Fraction | None:
        return None if self.c_x is None else Fraction(self.c_x, self.m + 1)

    @property
    def ratio_h(self) -> Fraction | None:
        return None if self.c_h is None else Fraction(self.c_h, self.m + 1)

    @property
    def holds(self) -> bool | None:
        if not self.complete:
            return None
        if self.c_x is None:  # infinite on the left always wins
            return True
        if self.c_h is None:
            return False
        return self.c_x >= self.c_h


@dataclass
class IoaCheck:
    ideal: AffineIdeal
    hyperplane: str
    restricted: AffineIdeal
    m_max: int
    rows: list[IoaRow]
    report_x: LctReport
    report_h: LctReport | None
    contained: bool

    @property
    def verdict(self) -> bool:
        rows_ok = all(r.holds is not False for r in self.rows)
        ex, eh = self.estimate_x, self.estimate_h
        est_ok = ex is None or eh is None or ex >= eh
        return rows_ok and est_ok

    @property
    def partial(self) -> bool:
        return any(not r.complete for r in self.rows)

    @property
    def estimate_x(self) -> Fraction | None:
        return self.report_x.running_min

    @property
    def estimate_h(self) -> Fraction | None:
        if self.contained:
            return Fraction(0)
        return self.report_h.running_min


def check_inversion_of_adjunction(base: AffineIdeal, hyperplane: int | str, m_max: int = DEFAULT_MMAX,
                                  limits: Limits | None = None, *, jobs: int | None = 1) -> IoaCheck:
    """Per-level comparison of origin-fiber codimensions on X and on H = {x_i = 0}.

    When H lies inside Y the restricted threshold is 0 by convention and the
    H-side codimensions are reported as 0.
    """
    if base.nvars < 2:
        raise ValueError("inversion of adjunction needs at least two variables")
    if not base.at_origin_eligible:
        g, c = base.offending_constant()
        raise IneligibleIdealError(f"generator {g} has nonzero constant term {c}; the origin is not on Y")
    name = hyperplane if isinstance(hyperplane, str) else base.ring.names[hyperplane]
    restricted = restrict_to_hyperplane(base, hyperplane)
    contained = restricted.is_zero_ideal
    rx = lct_estimate(base, m_max, Mode.FIBER, limits, jobs=jobs)
    rh = None if contained else lct_estimate(restricted, m_max, Mode.FIBER, limits, jobs=jobs)
    rows = []
    for m in range(m_max + 1):
        a = rx.rows[m]
        if contained:
            rows.append(IoaRow(m, a.codim, 0, a.ok))
        else:
            b = rh.rows[m]
            rows.append(IoaRow(m, a.codim, b.codim, a.ok and b.ok))
    return IoaCheck(base, name, restricted, m_max, rows, rx, rh, contained)


@dataclass
class MultiplicityCheck:
    ideal: AffineIdeal
    order: int
    report: LctReport

    @property
    def bound(self) -> Fraction:
        return Fraction(1, self.order)

    @property
    def violations(self) -> list[LctRow]:
        return [r for r in self.report.rows if r.ratio is not None and r.ratio < self.bound]

    @property
    def verdict(self) -> bool:
        return not self.violations


def check_multiplicity_bound(base: AffineIdeal, m_max: int = DEFAULT_MMAX, limits: Limits | None = None,
                             *, jobs: int | None = 1) -> MultiplicityCheck:
    """Every finite origin-fiber ratio must be at least ``1/ord_0``."""
    if not base.at_origin_eligible:
        g, c = base.offending_constant()
        raise IneligibleIdealError(f"generator {g} has nonzero constant term {c}; the origin is not on Y")
    q = ord_at_origin(base)
    report = lct_estimate(base, m_max, Mode.FIBER, limits, jobs=jobs)
    return MultiplicityCheck(base, q, report)

"""Zero-free strip, argument-principle zero counting and zero localization.

The winding number of ``zeta_{K,X}`` around a rectangle is the sum of the
argument changes along its four edges.  Each edge is handled by
``kernels.active.edge_arg_change``, which subdivides until every piece is
certified (its image lies in a convex set avoiding 0), so the count is an
exact integer unless the polynomial nearly vanishes on the boundary, in which
case :class:`BoundaryZeroError` is raised and callers move the contour.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, asdict
from typing import NamedTuple

import numpy as np

from . import kernels
from .coefficients import density_scale
from .cyclotomic import CyclotomicField
from .dirichlet_poly import (
    PartialSum,
    _check_range,
    abs_moment,
    build_partial_sum,
    evaluate,
    evaluate_derivative,
    imag_on_horizontal,
)
from .errors import BoundaryZeroError, DomainError, RefinementFailed, ZetaPartialError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Tolerances:
    bisection: float = 1e-12
    residual: float = 1e-9
    boundary: float = 1e-10
    newton: float = 1e-12
    newton_max_iter: int = 50
    edge_depth: int = 60
    quad_depth: int = 40
    nudge: float = 1e-6
    nudge_tries: int = 10
    margin: float = 1.0

    def __post_init__(self):
        for name in ("bisection", "residual", "boundary", "newton", "nudge"):
            if not getattr(self, name) > 0:
                raise DomainError(f"tolerance {name} must be positive")


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class StripBounds:
    alpha: float
    beta: float
    alpha_paper: float | None = None


@dataclass(frozen=True)
class Rectangle:
    sigma_lo: float
    sigma_hi: float
    t_lo: float
    t_hi: float

    def __post_init__(self):
        if not (self.sigma_lo < self.sigma_hi and self.t_lo < self.t_hi):
            raise DomainError(f"degenerate rectangle {self}")

    @property
    def corners(self):
        """Counterclockwise from the bottom-left corner."""
        return (
            complex(self.sigma_lo, self.t_lo),
            complex(self.sigma_hi, self.t_lo),
            complex(self.sigma_hi, self.t_hi),
            complex(self.sigma_lo, self.t_hi),
        )

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.sigma_lo + self.sigma_hi), 0.5 * (self.t_lo + self.t_hi))

    def contains(self, s: complex) -> bool:
        return self.sigma_lo <= s.real <= self.sigma_hi and self.t_lo <= s.imag <= self.t_hi

    def split_t(self, t: float) -> tuple["Rectangle", "Rectangle"]:
        return (
            Rectangle(self.sigma_lo, self.sigma_hi, self.t_lo, t),
            Rectangle(self.sigma_lo, self.sigma_hi, t, self.t_hi),
        )

    def quadrants(self, fs: float = 0.5, ft: float = 0.5) -> list["Rectangle"]:
        sm = self.sigma_lo + fs * (self.sigma_hi - self.sigma_lo)
        tm = self.t_lo + ft * (self.t_hi - self.t_lo)
        return [
            Rectangle(self.sigma_lo, sm, self.t_lo, tm),
            Rectangle(sm, self.sigma_hi, self.t_lo, tm),
            Rectangle(self.sigma_lo, sm, tm, self.t_hi),
            Rectangle(sm, self.sigma_hi, tm, self.t_hi),
        ]


@dataclass(frozen=True)
class ZeroCountResult:
    T: float
    count: int
    N: int
    predicted: float
    discrepancy: float
    X: float
    density_scale: float | None
    T_used: float
    alpha: float | None = None
    beta: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ZeroRecord:
    """A located zero; ``residual`` is the absolute value ``|zeta_{K,X}(s)|``."""

    s: complex
    residual: float
    enclosure: Rectangle


class DescartesResult(NamedTuple):
    zeros_of_im: int
    nonzero_terms: int
    crossings: tuple = ()
    degenerate: bool = False


# -- strip --------------------------------------------------------------------


def _bisect_increasing(h, lo, hi, tol):
    """Root of the increasing function ``h`` inside ``[lo, hi]``; returns ``(lo, hi)``."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if h(mid) < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _safe_exp(x):
    return math.inf if x > 709.0 else math.exp(x)


def beta_bound(P: PartialSum, tol: float = 1e-12) -> float | None:
    """Sharp right edge of the zero strip.

    Solves ``sum_{n >= 2} a(n) n**-beta = 1``.  The left side decreases
    strictly, and for ``sigma > beta`` it is below 1, so ``|zeta_K,X| > 0``
    there.  Returns ``None`` when only the constant term is present (no
    zeros at all).
    """
    if len(P) < 2:
        return None
    a = P.coef[1:].tolist()
    logs = P.log_n[1:].tolist()

    def h(beta):
        # increasing in beta
        return 1.0 - math.fsum(c * _safe_exp(-beta * ln) for c, ln in zip(a, logs))

    lo, hi = 0.0, 1.0
    if h(lo) >= 0:
        return 0.0
    while h(hi) < 0:
        lo, hi = hi, 2 * hi
    return _bisect_increasing(h, lo, hi, tol)[1]


def alpha_bound(P: PartialSum, tol: float = 1e-12) -> float | None:
    """Sharp left edge of the zero strip.

    Solves ``a(N) N**-alpha = sum_{n < N} a(n) n**-alpha``, i.e.
    ``sum_{n < N} (a(n)/a(N)) (N/n)**alpha = 1``; the left side increases
    strictly in ``alpha``.  Left of the root the leading term dominates.
    """
    if len(P) < 2:
        return None
    aN = P.a_N
    lN = float(P.log_n[-1])
    w = [c / aN for c in P.coef[:-1].tolist()]
    gaps = [lN - ln for ln in P.log_n[:-1].tolist()]

    def h(alpha):
        return math.fsum(c * _safe_exp(alpha * g) for c, g in zip(w, gaps)) - 1.0

    lo, hi = -1.0, 1.0
    while h(lo) > 0:
        lo *= 2
    while h(hi) < 0:
        hi *= 2
    return _bisect_increasing(h, lo, hi, tol)[0]


def alpha_paper(N: int, n0: int, delta0: float = 0.1) -> float:
    """Closed-form admissible left bound ``-3 (delta0 + log 2) n0 N log N / log log N``."""
    if N < 3:
        raise DomainError("alpha_paper needs N >= 3")
    if delta0 <= 0:
        raise DomainError("delta0 must be positive")
    return -3.0 * (delta0 + math.log(2.0)) * n0 * N * math.log(N) / math.log(math.log(N))


def strip_bounds(P: PartialSum, n0: int, delta0: float = 0.1, tol: float = 1e-12) -> StripBounds | None:
    alpha = alpha_bound(P, tol)
    if alpha is None:
        return None
    closed = alpha_paper(P.N, n0, delta0) if P.N >= 3 else None
    return StripBounds(alpha, beta_bound(P, tol), closed)


# -- winding ------------------------------------------------------------------


def edge_arg_change(P: PartialSum, a: complex, b: complex, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Continuous change of ``arg zeta_{K,X}`` along the segment ``a -> b``."""
    _check_range(P, min(a.real, b.real))
    delta, status, bre, bim, _ = kernels.active.edge_arg_change(
        P.log_n, P.coef, a.real, a.imag, b.real, b.imag, tol.boundary, tol.edge_depth
    )
    if status != kernels.active.OK:
        why = "vanishes" if status == kernels.active.BOUNDARY_ZERO else "cannot be certified"
        raise BoundaryZeroError(f"zeta_K,X {why} near {complex(bre, bim)} on the contour", complex(bre, bim))
    return delta


def _winding_from_total(total: float) -> int:
    w = total / TWO_PI
    k = round(w)
    if abs(w - k) > 1e-6:
        raise ZetaPartialError(f"argument change {total} is not a multiple of 2*pi")
    return int(k)


class _EdgeCache:
    """Memoizes edge argument changes; ``a -> b`` is the negative of ``b -> a``."""

    def __init__(self, P, tol):
        self.P = P
        self.tol = tol
        self._memo = {}

    def edge(self, a, b):
        key = (a, b)
        if key in self._memo:
            return self._memo[key]
        if (b, a) in self._memo:
            return -self._memo[(b, a)]
        d = edge_arg_change(self.P, a, b, self.tol)
        self._memo[key] = d
        return d

    def winding(self, rect: Rectangle) -> int:
        c = rect.corners
        total = sum(self.edge(c[i], c[(i + 1) % 4]) for i in range(4))
        return _winding_from_total(total)


def winding_number(P: PartialSum, rect: Rectangle, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """Number of zeros of ``zeta_{K,X}`` inside ``rect`` (counterclockwise winding).

    >>> P = PartialSum.from_terms([1, 2], [1, 1])
    >>> winding_number(P, Rectangle(-1.0, 1.0, 1.0, 10.0))
    1
    """
    if len(P) < 2:
        return 0
    return _EdgeCache(P, tol).winding(rect)


# -- counting -----------------------------------------------------------------


def predicted_count(T: float, N: int) -> float:
    """Main term ``(T / 2 pi) log N``."""
    if N < 1 or T < 0:
        raise DomainError("predicted_count needs N >= 1 and T >= 0")
    return T / TWO_PI * math.log(N)


def _density_scale_or_none(X, n0):
    return density_scale(X, n0) if X > math.e else None


def count_zeros(P: PartialSum, T: float, n0: int = 1, tol: Tolerances = DEFAULT_TOLERANCES) -> ZeroCountResult:
    """``N_{K,X}(T)``: zeros with ``0 < Im s <= T`` (right-continuous in ``T``).

    The contour is ``[alpha - margin, beta + margin] x [0, T]``.  The bottom
    edge lies on the real axis, where ``zeta_{K,X}`` is real and positive.
    If a zero sits on the top edge, ``T`` is pushed up by ``tol.nudge``,
    doubling the push up to ``tol.nudge_tries`` times.
    """
    if T < 0:
        raise DomainError("T must be nonnegative")
    N = P.N
    predicted = predicted_count(T, N)
    scale = _density_scale_or_none(P.X, n0)
    alpha, beta = alpha_bound(P, tol.bisection), beta_bound(P, tol.bisection)
    if alpha is None or T == 0:
        return ZeroCountResult(T, 0, N, predicted, -predicted, P.X, scale, T, alpha, beta)
    lo, hi = alpha - tol.margin, beta + tol.margin
    T_used, eps = T, tol.nudge
    for attempt in range(tol.nudge_tries + 1):
        try:
            count = winding_number(P, Rectangle(lo, hi, 0.0, T_used), tol)
            break
        except BoundaryZeroError:
            if attempt == tol.nudge_tries:
                raise
            T_used = T + eps
            eps *= 2
    return ZeroCountResult(T, count, N, predicted, count - predicted, P.X, scale, T_used, alpha, beta)


def count_zeros_to_height(field: CyclotomicField, X, T, tol: Tolerances = DEFAULT_TOLERANCES) -> ZeroCountResult:
    if X < 2:
        raise DomainError("count_zeros_to_height needs X >= 2")
    return count_zeros(build_partial_sum(field, X), T, field.n0, tol)


# -- localization -------------------------------------------------------------

_SPLIT_FRACTIONS = (0.5, 0.4611, 0.5383, 0.4237, 0.5719, 0.3907)


def newton(P: PartialSum, s0: complex, tol: Tolerances = DEFAULT_TOLERANCES, box: Rectangle | None = None) -> complex | None:
    """Plain Newton iteration; ``None`` if it stalls, diverges or leaves ``box``.

    ``box`` is widened by its own size on every side before the escape test.
    """
    if box is not None:
        dw, dh = box.sigma_hi - box.sigma_lo, box.t_hi - box.t_lo
        box = Rectangle(box.sigma_lo - dw, box.sigma_hi + dw, box.t_lo - dh, box.t_hi + dh)
    s = s0
    for _ in range(tol.newton_max_iter):
        d = evaluate_derivative(P, s)
        if d == 0:
            return None
        step = evaluate(P, s) / d
        s -= step
        if not cmath.isfinite(s) or (box is not None and not box.contains(s)):
            return None
        if abs(step) <= tol.newton * max(1.0, abs(s)):
            return _polish(P, s)
    return None


def _polish(P: PartialSum, s: complex, steps: int = 4) -> complex:
    # a few more Newton steps, keeping the iterate with the smallest |f|
    best, fbest = s, abs(evaluate(P, s))
    for _ in range(steps):
        d = evaluate_derivative(P, s)
        if d == 0:
            break
        s = s - evaluate(P, s) / d
        fs = abs(evaluate(P, s))
        if not fs < fbest:
            break
        best, fbest = s, fs
    return best


def locate_zeros(P: PartialSum, rect: Rectangle, tol: Tolerances = DEFAULT_TOLERANCES) -> list[ZeroRecord]:
    """Isolate and refine every zero inside ``rect``.

    Rectangles are quadrisected until each piece has winding 0 or 1.  A
    winding-1 piece is handed to Newton's method from its center; the result
    is kept only if it stays in the piece with residual below
    ``tol.residual``, otherwise the piece is split again.  Split points are
    shifted off-center if a split line runs through a zero.
    """
    if len(P) < 2:
        return []
    cache = _EdgeCache(P, tol)
    total = cache.winding(rect)
    records: list[ZeroRecord] = []
    stack = [(rect, total, 0)]
    while stack:
        box, w, depth = stack.pop()
        if w == 0:
            continue
        if w == 1:
            s = newton(P, box.center, tol, box)
            if s is not None and box.contains(s):
                residual = abs(evaluate(P, s))
                if residual < tol.residual * max(1.0, abs_moment(P, 0, s.real)):
                    records.append(ZeroRecord(s, residual, box))
                    continue
        if depth >= tol.quad_depth:
            raise RefinementFailed(f"no convergence in {box} (winding {w})", box)
        stack.extend((child, cw, depth + 1) for child, cw in _split(cache, box, w))
    if len(records) != total:
        raise RefinementFailed(f"found {len(records)} zeros, winding number is {total}", rect)
    records.sort(key=lambda r: (r.s.imag, r.s.real))
    return records


def _split(cache: _EdgeCache, box: Rectangle, w: int):
    last = None
    for fs in _SPLIT_FRACTIONS:
        for ft in _SPLIT_FRACTIONS:
            if fs != ft and fs != 0.5 and ft != 0.5:
                continue
            kids = box.quadrants(fs, ft)
            try:
                windings = [cache.winding(k) for k in kids]
            except BoundaryZeroError as exc:
                last = exc
                continue
            if sum(windings) != w:
                last = RefinementFailed(f"children of {box} disagree: {windings} vs {w}", box)
                continue
            return list(zip(kids, windings))
    raise RefinementFailed(f"could not split {box}: {last}", box)


# -- top-edge sign structure --------------------------------------------------


def descartes_check(P: PartialSum, T: float, sigma_lo: float, sigma_hi: float, grid: int = 4000, zero_tol: float = 1e-12) -> DescartesResult:
    """Sign changes of ``sigma -> Im zeta_{K,X}(sigma + iT)`` versus its nonzero terms.

    The slice is sampled on a uniform grid; each sign change is refined by
    bisection.  A term counts as nonzero when ``|a(n) sin(T log n)|``
    exceeds ``zero_tol * a(n)``.  At ``T = 0`` the slice vanishes identically
    and the result is flagged degenerate.
    """
    if T == 0:
        return DescartesResult(0, 0, (), True)
    if not sigma_lo < sigma_hi:
        raise DomainError("need sigma_lo < sigma_hi")
    sines = np.sin(T * P.log_n)
    nonzero = int(np.count_nonzero(np.abs(sines) > zero_tol))

    def im(sig):
        return imag_on_horizontal(P, sig, T)

    sigmas = np.linspace(sigma_lo, sigma_hi, grid + 1).tolist()
    crossings = []
    prev_s, prev_v = sigmas[0], im(sigmas[0])
    for sig in sigmas[1:]:
        v = im(sig)
        if v == 0.0:
            crossings.append(sig)
            prev_s, prev_v = sig, v
            continue
        if prev_v != 0.0 and (v > 0) != (prev_v > 0):
            lo, hi, vlo = prev_s, sig, prev_v
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                vm = im(mid)
                if vm == 0.0:
                    lo = hi = mid
                    break
                if (vm > 0) == (vlo > 0):
                    lo, vlo = mid, vm
                else:
                    hi = mid
            crossings.append(0.5 * (lo + hi))
        prev_s, prev_v = sig, v
    return DescartesResult(len(crossings), nonzero, tuple(crossings), False)


# -- verification -------------------------------------------------------------


@dataclass(frozen=True)
class CountingReport:
    q: int
    X: float
    T: float
    N: int
    count: int
    predicted: float
    discrepancy: float
    predicted_floor: float
    discrepancy_floor: float
    lrz2_bound: float
    lrz2_pass: bool
    theorem1_pass: bool
    density_scale: float | None
    theorem1_residual: float | None
    alpha: float | None
    beta: float | None
    alpha_paper: float | None
    alpha_paper_conservative: bool | None
    T_used: float

    def to_dict(self) -> dict:
        return asdict(self)


def verify_counting(field: CyclotomicField, X, T, tol: Tolerances = DEFAULT_TOLERANCES, delta0: float = 0.1) -> CountingReport:
    """Count zeros up to ``T`` and compare with ``(T/2 pi) log N`` and ``(T/2 pi) log [X]``.

    ``lrz2_pass`` tests ``|N(T) - (T/2 pi) log [X]| <= X/2``; ``theorem1_pass``
    the same bound with ``log N``.  The closed-form ``alpha_paper`` is only
    compared with the sharp ``alpha`` when ``N >= 10``.
    """
    if X < 3 or T < 3:
        raise DomainError("verification needs X >= 3 and T >= 3")
    P = build_partial_sum(field, X)
    res = count_zeros(P, T, field.n0, tol)
    floor_x = math.floor(X)
    pred_floor = predicted_count(T, floor_x)
    disc_floor = res.count - pred_floor
    bound = X / 2.0
    closed = alpha_paper(P.N, field.n0, delta0) if P.N >= 3 else None
    conservative = None
    if closed is not None and P.N >= 10 and res.alpha is not None:
        conservative = closed <= res.alpha
    scale = res.density_scale
    return CountingReport(
        q=field.q,
        X=X,
        T=T,
        N=res.N,
        count=res.count,
        predicted=res.predicted,
        discrepancy=res.discrepancy,
        predicted_floor=pred_floor,
        discrepancy_floor=disc_floor,
        lrz2_bound=bound,
        lrz2_pass=abs(disc_floor) <= bound,
        theorem1_pass=abs(res.discrepancy) <= bound,
        density_scale=scale,
        theorem1_residual=None if scale is None else res.discrepancy / scale,
        alpha=res.alpha,
        beta=res.beta,
        alpha_paper=closed,
        alpha_paper_conservative=conservative,
        T_used=res.T_used,
    )
